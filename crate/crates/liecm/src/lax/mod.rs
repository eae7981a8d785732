//! Elliptic Lax operators on a graded basis and their quadratic
//! Hamiltonians.
//!
//! For a basis element `x` built on the orbit of a root `β` with grade `k`,
//! the Lax coefficient is
//!
//! ```text
//! S_x · e(a z) · φ(s_u⟨ũ, β⟩ + a τ + s_g k/l, z),    a = ⟨κ, β⟩,
//! ```
//!
//! where the shift `a = ⟨κ, β⟩` is used off the invariant subalgebra only
//! (the `g̃₀` part is the ordinary Calogero–Moser operator of `g̃₀`). Graded
//! Cartan elements carry `S_x φ(s_g k/l, z)` and the invariant Cartan part is
//! `ṽ + Σ_j S_{ẽ_j} E₁(z) ẽ_j`. The signs `s_u`, `s_g` ([`LaxConventions`])
//! fix the per-series orientation of the moduli and of the grading.
//!
//! Because every orbit pairs only with its opposite orbit of opposite grade,
//! and the product `e(az)φ(X,z)·e(−az)φ(−X,z) = E₂(z) − E₂(X)` is insensitive
//! to integer shifts of `a`, `½(L(z), L(z))` equals `c E₂(z) + H` exactly once
//! the invariant-Cartan spins vanish; `H` is the quadratic Hamiltonian.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::case::{Case, CaseId};
use crate::elliptic::{Context, EllipticError};
use crate::gsbasis::{Component, ElementKind, GsBasis};
use crate::rootsys::RootType;

pub mod printed;

pub use printed::{
    deviations_markdown, hamiltonian_printed, printed_hamiltonian, verify_printed, PrintedHamiltonian, PrintedReport,
    TermStatus,
};

/// Errors of Lax evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaxError {
    /// Elliptic failure (pole, modulus).
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    /// State does not fit the case.
    #[error("invalid state: {0}")]
    State(String),
    /// Ill-conditioned fit.
    #[error("ill-conditioned fit: E2(z1) ≈ E2(z2)")]
    IllConditioned,
    /// Unsupported case for printed formulas.
    #[error("no printed Hamiltonian for case {0}")]
    Unsupported(String),
}

/// Complex number as `[re, im]` in JSON.
pub type Pair = [f64; 2];

fn c(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn p(z: Complex64) -> Pair {
    [z.re, z.im]
}

/// Dynamical variables of a case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicalState {
    /// Case identifier.
    pub case: CaseId,
    /// Moduli `ũ` (ambient coordinates, invariant Cartan).
    pub u: Vec<Pair>,
    /// Momenta `ṽ` (ambient coordinates, invariant Cartan).
    pub v: Vec<Pair>,
    /// Spin coefficients by basis label.
    #[serde(rename = "S")]
    pub s: BTreeMap<String, Pair>,
    /// Modulus `τ`.
    pub tau: Pair,
}

impl DynamicalState {
    /// `ũ` as complex numbers.
    pub fn u(&self) -> Vec<Complex64> {
        self.u.iter().copied().map(c).collect()
    }

    /// `ṽ` as complex numbers.
    pub fn v(&self) -> Vec<Complex64> {
        self.v.iter().copied().map(c).collect()
    }

    /// `τ`.
    pub fn tau(&self) -> Complex64 {
        c(self.tau)
    }

    /// Spin coefficient (zero when absent).
    pub fn spin(&self, label: &str) -> Complex64 {
        self.s.get(label).copied().map_or(Complex64::new(0.0, 0.0), c)
    }

    /// Random state: `ũ`, `ṽ` random combinations of the invariant Cartan
    /// basis, all spins random in the unit square, with the moment
    /// constraint applied.
    pub fn random<R: Rng>(case: &Case, basis: &GsBasis, tau: Complex64, rng: &mut R) -> Self {
        let n = case.algebra.ambient_dim();
        let mut u = vec![Complex64::new(0.0, 0.0); n];
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for e in basis.elements.iter() {
            if let ElementKind::InvariantCartan { .. } = e.kind {
                let a = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3) * tau.im);
                let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                for i in 0..n {
                    u[i] += a * e.element.h[i];
                    v[i] += b * e.element.h[i];
                }
            }
        }
        let s = basis
            .elements
            .iter()
            .map(|e| {
                (
                    e.label.clone(),
                    [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
                )
            })
            .collect();
        apply_moment_constraint(
            &Self {
                case: case.id.clone(),
                u: u.into_iter().map(p).collect(),
                v: v.into_iter().map(p).collect(),
                s,
                tau: p(tau),
            },
            basis,
        )
    }

    /// Check dimensions and the invariant-Cartan constraints.
    pub fn validate(&self, case: &Case) -> Result<(), LaxError> {
        let n = case.algebra.ambient_dim();
        if self.case != case.id {
            return Err(LaxError::State(format!("state for {} used with {}", self.case, case.id)));
        }
        if self.u.len() != n || self.v.len() != n {
            return Err(LaxError::State(format!("u, v must have {n} coordinates")));
        }
        let mut normals: Vec<Vec<f64>> = case.cartan.constraints.iter().map(|c| c.to_f64()).collect();
        normals.extend(case.algebra.datum.ambient_constraints.iter().map(|c| c.to_f64()));
        for (name, x) in [("u", self.u()), ("v", self.v())] {
            for nv in &normals {
                let d: Complex64 = nv.iter().zip(&x).map(|(a, b)| b * *a).sum();
                if d.norm() > 1e-9 {
                    return Err(LaxError::State(format!("{name} violates an invariant-Cartan constraint by {:.2e}", d.norm())));
                }
            }
        }
        Ok(())
    }
}

/// Zero the invariant-Cartan spin components.
pub fn apply_moment_constraint(state: &DynamicalState, basis: &GsBasis) -> DynamicalState {
    let mut out = state.clone();
    for e in &basis.elements {
        if matches!(e.kind, ElementKind::InvariantCartan { .. }) {
            out.s.remove(&e.label);
        }
    }
    out
}

/// Orientation conventions of the Lax coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaxConventions {
    /// Sign `s_u` in front of `⟨ũ, β⟩`.
    pub u_sign: f64,
    /// Sign `s_g` in front of `k/l`.
    pub grade_sign: f64,
}

/// Conventions matching the printed Lax operators of each series.
pub fn conventions(case: &Case) -> LaxConventions {
    match case.kind() {
        RootType::A => LaxConventions {
            u_sign: -1.0,
            grade_sign: -1.0,
        },
        RootType::B => LaxConventions {
            u_sign: 1.0,
            grade_sign: 1.0,
        },
        RootType::C | RootType::D | RootType::E6 | RootType::E7 => LaxConventions {
            u_sign: -1.0,
            grade_sign: 1.0,
        },
    }
}

/// Argument data of one basis element's Lax coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coefficient {
    /// `e(a z) φ(X, z)` with `X = x_u + aτ + shift`.
    Kronecker {
        /// `s_u ⟨ũ, β⟩`.
        xu: Complex64,
        /// `a = ⟨κ, β⟩` (0 on `g̃₀`).
        a: f64,
        /// `s_g k / l`.
        shift: f64,
    },
    /// `E₁(z)` (invariant Cartan spins).
    Eisenstein1,
}

impl Coefficient {
    /// The `E₂` argument `X` of the Kronecker product (None for `E₁`).
    pub fn argument(&self, tau: Complex64) -> Option<Complex64> {
        match *self {
            Self::Kronecker { xu, a, shift } => Some(xu + tau * a + shift),
            Self::Eisenstein1 => None,
        }
    }

    /// Value at `z`.
    pub fn eval(&self, ctx: &Context, z: Complex64) -> Result<Complex64, EllipticError> {
        match *self {
            Self::Kronecker { a, .. } => {
                let x = self.argument(ctx.tau).expect("Kronecker argument");
                Ok(crate::elliptic::e(z * a) * ctx.phi(x, z)?)
            }
            Self::Eisenstein1 => ctx.eisenstein1(z),
        }
    }
}

/// Per-element coefficient functions for a state.
pub fn coefficient_functions(case: &Case, basis: &GsBasis, state: &DynamicalState) -> Vec<Coefficient> {
    let conv = conventions(case);
    let u = state.u();
    let kappa = case.algebra.datum.kappa().to_f64();
    let l = basis.order as f64;
    basis
        .elements
        .iter()
        .map(|e| match &e.kind {
            ElementKind::Root { root, .. } => {
                let xu: Complex64 = root.iter().zip(&u).map(|(b, x)| x * *b).sum::<Complex64>() * conv.u_sign;
                let a = if e.component == Component::InvariantPart || case.is_trivial() {
                    0.0
                } else {
                    root.iter().zip(&kappa).map(|(b, k)| b * k).sum()
                };
                Coefficient::Kronecker {
                    xu,
                    a,
                    shift: conv.grade_sign * e.grade as f64 / l,
                }
            }
            ElementKind::GradedCartan { .. } => Coefficient::Kronecker {
                xu: Complex64::new(0.0, 0.0),
                a: 0.0,
                shift: conv.grade_sign * e.grade as f64 / l,
            },
            ElementKind::InvariantCartan { .. } => Coefficient::Eisenstein1,
        })
        .collect()
}

/// Coordinates of an ambient vector in the invariant Cartan basis.
fn invariant_coordinates(basis: &GsBasis, x: &[Complex64]) -> Vec<(usize, Complex64)> {
    let idx: Vec<usize> = basis
        .elements
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e.kind, ElementKind::InvariantCartan { .. }))
        .map(|(i, _)| i)
        .collect();
    if idx.is_empty() {
        return vec![];
    }
    let n = x.len();
    let a = DMatrix::from_fn(n, idx.len(), |r, j| basis.elements[idx[j]].element.h[r]);
    let b = DVector::from_column_slice(x);
    let ata = a.adjoint() * &a;
    let sol = ata.try_inverse().expect("independent invariant Cartan basis") * a.adjoint() * b;
    idx.into_iter().zip(sol.iter().copied()).collect()
}

/// Lax operator evaluated at a point.
#[derive(Debug, Clone)]
pub struct LaxValue {
    /// Coefficient of every basis element, in basis order.
    pub coefficients: Vec<Complex64>,
    /// Materialized matrix (classical types).
    pub matrix: Option<DMatrix<Complex64>>,
}

impl LaxValue {
    /// `(L, L)` through the basis pairing.
    pub fn self_pairing(&self, basis: &GsBasis) -> Complex64 {
        let cv = DVector::from_column_slice(&self.coefficients);
        (cv.transpose() * &basis.gram * &cv)[(0, 0)]
    }

    /// JSON form.
    pub fn to_json(&self, basis: &GsBasis) -> serde_json::Value {
        let coefs: BTreeMap<String, Pair> = basis
            .elements
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, v)| v.norm() > 0.0)
            .map(|(e, v)| (e.label.clone(), p(*v)))
            .collect();
        let mut j = serde_json::json!({ "coefficients": coefs });
        if let Some(m) = &self.matrix {
            let rows: Vec<Vec<Pair>> = (0..m.nrows()).map(|r| (0..m.ncols()).map(|k| p(m[(r, k)])).collect()).collect();
            j["matrix"] = serde_json::json!(rows);
        }
        j
    }
}

/// Evaluate `L(z)` (trivial or nontrivial class alike).
pub fn lax(case: &Case, basis: &GsBasis, state: &DynamicalState, z: Complex64, materialize: bool) -> Result<LaxValue, LaxError> {
    state.validate(case)?;
    let ctx = Context::with_tau(state.tau())?;
    let funcs = coefficient_functions(case, basis, state);
    let mut coefficients = Vec::with_capacity(basis.len());
    for (e, f) in basis.elements.iter().zip(&funcs) {
        let s = state.spin(&e.label);
        coefficients.push(if s.norm() == 0.0 { s } else { s * f.eval(&ctx, z)? });
    }
    for (i, vi) in invariant_coordinates(basis, &state.v()) {
        coefficients[i] += vi;
    }
    let matrix = if materialize && case.algebra.matrices.is_some() {
        let mut x = case.algebra.zero();
        for (e, cf) in basis.elements.iter().zip(&coefficients) {
            x.axpy(*cf, &e.element);
        }
        case.algebra.materialize(&x).ok()
    } else {
        None
    };
    Ok(LaxValue { coefficients, matrix })
}

/// Trivial-class Lax operator (checks the class).
pub fn lax_trivial(case: &Case, basis: &GsBasis, state: &DynamicalState, z: Complex64) -> Result<LaxValue, LaxError> {
    if !case.is_trivial() {
        return Err(LaxError::State("lax_trivial needs the trivial class".into()));
    }
    lax(case, basis, state, z, true)
}

/// Nontrivial-class Lax operator (checks the class).
pub fn lax_nontrivial(case: &Case, basis: &GsBasis, state: &DynamicalState, z: Complex64) -> Result<LaxValue, LaxError> {
    if case.is_trivial() {
        return Err(LaxError::State("lax_nontrivial needs a nontrivial class".into()));
    }
    lax(case, basis, state, z, true)
}

/// Default fit points (scaled with `Im τ`).
pub fn default_fit_points(tau: Complex64) -> [Complex64; 3] {
    let s = tau.im;
    [
        Complex64::new(0.137, 0.211 * s),
        Complex64::new(0.311, 0.083 * s),
        Complex64::new(-0.229, 0.157 * s),
    ]
}

/// Result of the `½(L, L)` fit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleFit {
    /// Constant part `H`.
    #[serde(serialize_with = "ser_c")]
    pub h: Complex64,
    /// Coefficient of `E₂(z)` (the quadratic Casimir part).
    #[serde(serialize_with = "ser_c")]
    pub casimir: Complex64,
    /// `|F(z₃) − c E₂(z₃) − H|`.
    pub residual: f64,
}

fn ser_c<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    p(*z).serialize(s)
}

/// `½(L(z), L(z))` through the pairing table.
pub fn half_pairing(case: &Case, basis: &GsBasis, state: &DynamicalState, z: Complex64) -> Result<Complex64, LaxError> {
    Ok(lax(case, basis, state, z, false)?.self_pairing(basis) * 0.5)
}

/// Fit `½(L(z),L(z)) = c E₂(z) + H` at three points.
pub fn hamiltonian_oracle(case: &Case, basis: &GsBasis, state: &DynamicalState, points: Option<[Complex64; 3]>) -> Result<OracleFit, LaxError> {
    let ctx = Context::with_tau(state.tau())?;
    let [z1, z2, z3] = points.unwrap_or_else(|| default_fit_points(state.tau()));
    let (f1, f2, f3) = (
        half_pairing(case, basis, state, z1)?,
        half_pairing(case, basis, state, z2)?,
        half_pairing(case, basis, state, z3)?,
    );
    let (e1, e2, e3) = (ctx.eisenstein2(z1)?, ctx.eisenstein2(z2)?, ctx.eisenstein2(z3)?);
    let den = e1 - e2;
    if den.norm() < 1e-8 * (e1.norm() + e2.norm()) {
        return Err(LaxError::IllConditioned);
    }
    let casimir = (f1 - f2) / den;
    let h = f1 - casimir * e1;
    let scale = 1.0 + f3.norm();
    Ok(OracleFit {
        h,
        casimir,
        residual: (f3 - casimir * e3 - h).norm() / scale,
    })
}

/// One term `coef · S_x S_y · E₂(X)` of the reduced Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedTerm {
    /// Basis positions `x ≤ y`.
    pub x: usize,
    /// Second position.
    pub y: usize,
    /// Coefficient.
    pub coef: Complex64,
    /// Argument data of `x`.
    pub arg: Coefficient,
}

/// Reduced Hamiltonian read off the pairing table:
/// `H = ½(ṽ,ṽ) − ½ Σ_{x,y} (x,y) S_x S_y E₂(X_x)`, grouped by unordered pairs.
pub fn reduced_terms(case: &Case, basis: &GsBasis, state: &DynamicalState) -> Vec<ReducedTerm> {
    let funcs = coefficient_functions(case, basis, state);
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let g = if i == j {
                basis.gram[(i, i)]
            } else {
                basis.gram[(i, j)] + basis.gram[(j, i)]
            };
            if g.norm() < 1e-12 || matches!(funcs[i], Coefficient::Eisenstein1) {
                continue;
            }
            out.push(ReducedTerm {
                x: i,
                y: j,
                coef: -0.5 * g,
                arg: funcs[i],
            });
        }
    }
    out
}

/// `½(ṽ, ṽ)`.
pub fn kinetic(state: &DynamicalState) -> Complex64 {
    state.v().iter().map(|x| x * x).sum::<Complex64>() * 0.5
}

/// Evaluate the reduced Hamiltonian term by term.
pub fn hamiltonian_reduced(case: &Case, basis: &GsBasis, state: &DynamicalState) -> Result<Complex64, LaxError> {
    let ctx = Context::with_tau(state.tau())?;
    let mut h = kinetic(state);
    for t in reduced_terms(case, basis, state) {
        let sx = state.spin(&basis.elements[t.x].label);
        let sy = state.spin(&basis.elements[t.y].label);
        if sx.norm() == 0.0 || sy.norm() == 0.0 {
            continue;
        }
        let x = t.arg.argument(state.tau()).expect("Kronecker");
        h += t.coef * sx * sy * ctx.eisenstein2(x)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsbasis::gs_basis;
    use rand::SeedableRng;

    #[test]
    fn free_particle_and_fit() {
        let case = Case::from_parts("A", 5, "p3").unwrap();
        let b = gs_basis(&case);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let tau = Complex64::new(0.1, 1.1);
        let mut st = DynamicalState::random(&case, &b, tau, &mut rng);
        let fit = hamiltonian_oracle(&case, &b, &st, None).unwrap();
        assert!(fit.residual < 1e-10, "{fit:?}");
        let red = hamiltonian_reduced(&case, &b, &st).unwrap();
        assert!((fit.h - red).norm() < 1e-9 * (1.0 + red.norm()));
        st.s.clear();
        let fit = hamiltonian_oracle(&case, &b, &st, None).unwrap();
        assert!((fit.h - kinetic(&st)).norm() < 1e-12 && fit.casimir.norm() < 1e-12);
    }
}
