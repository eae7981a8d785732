//! Computational toolkit for elliptic Calogero–Moser systems attached to
//! simple Lie algebras with nontrivial characteristic classes.
//!
//! The pipeline runs from exact root data ([`rootsys`]) through the
//! extended-diagram automorphism and its grading ([`autgrade`]), explicit or
//! abstract Chevalley bases ([`chevalley`]), graded orbit-sum bases
//! ([`gsbasis`]), elliptic kernels ([`elliptic`]), Lax operators and quadratic
//! Hamiltonians ([`lax`]), to moduli bookkeeping ([`moduli`]).

pub mod autgrade;
pub mod case;
pub mod cli;
pub mod chevalley;
pub mod elliptic;
pub mod gsbasis;
pub mod lax;
pub mod moduli;
pub mod rootsys;
pub mod scalars;
pub mod tolerances;

pub use num_complex::Complex64;
pub use rootsys::{RootDatum, RootType};
pub use scalars::{ExactMatrix, ExactVector, QSqrt2};
