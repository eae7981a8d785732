//! Tolerances used by the verification suite and the command-line front end.
//!
//! | Quantity | Tolerance | Basis |
//! |----------|-----------|-------|
//! | Root data, lattices, automorphisms | exact | `ℚ(√2)` arithmetic |
//! | Matrix identities (brackets, traces, `Ad(M)` eigenvalues) | `1e−12` | sums of `O(N²)` products of unit-size entries |
//! | Elliptic identities | `1e−10` relative | theta series truncated at `1e−18` relative |
//! | `½(L,L)` fit residual | `1e−10` relative | three-point solve, cancellation of `E₂` poles |
//! | Printed vs oracle Hamiltonian | `1e−8` relative | sums of up to ~10² products of `E₂` values |
//! | Default CLI tolerance | `1e−9` | overridable through `LIECM_TOL` |

/// Matrix-level identities in the defining representation.
pub const MATRIX_RESIDUAL: f64 = 1e-12;

/// Kronecker identity and quasi-periodicities of `φ`, relative.
pub const ELLIPTIC_IDENTITY: f64 = 1e-10;

/// Residual of the fit `½(L,L) = c E₂(z) + H` at a third point, relative.
pub const FIT_RESIDUAL: f64 = 1e-10;

/// Agreement between two evaluations of a Hamiltonian, relative.
pub const HAMILTONIAN_AGREEMENT: f64 = crate::lax::printed::NUMERIC_TOLERANCE;

/// Default tolerance of the command-line verbs.
pub const DEFAULT_CLI: f64 = 1e-9;

/// Environment variable overriding [`DEFAULT_CLI`].
pub const TOLERANCE_ENV: &str = "LIECM_TOL";

/// Relative difference `|a − b| / max(1, |b|)`.
pub fn relative(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
