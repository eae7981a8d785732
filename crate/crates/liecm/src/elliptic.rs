//! Odd theta function, Eisenstein functions `E₁`, `E₂` and the Kronecker
//! function `φ(u, z)`, evaluated by truncated theta series.
//!
//! Conventions:
//!
//! * `θ(z|τ) = Σ_{n∈ℤ} e(½(n+½)²τ + (n+½)(z+½))`, `e(x) = exp(2πix)`;
//! * `E₁(z) = θ′(z)/θ(z)`, `E₂(z) = −∂_z E₁(z)`;
//! * `φ(u, z) = θ(u+z) θ′(0) / (θ(u) θ(z))`.
//!
//! With these, `φ(u, z)φ(−u, z) = E₂(z) − E₂(u)`, `φ(u, z+1) = φ(u, z)` and
//! `φ(u, z+τ) = e(−u) φ(u, z)`.
//!
//! Everything is generic over the real type `T: Float + FloatConst`; the
//! crate-wide concrete choice is `f64` (see [`Context`]).

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use thiserror::Error;

/// Failures of elliptic evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EllipticError {
    /// `Im τ` below the supported minimum.
    #[error("modulus Im τ = {0} is below the supported minimum 0.05")]
    Modulus(f64),
    /// Argument within the pole tolerance of the lattice `ℤ + τℤ`.
    #[error("argument {arg} lies within {distance:.3e} of the lattice ℤ+τℤ (pole)")]
    Pole {
        /// Offending argument, formatted.
        arg: String,
        /// Distance to the nearest lattice point.
        distance: f64,
    },
}

/// Smallest supported `Im τ`.
pub const MIN_IM_TAU: f64 = 0.05;
/// Distance to the lattice below which an argument counts as a pole.
pub const POLE_DISTANCE: f64 = 1e-9;

/// Modulus together with series truncation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticContext<T> {
    /// Modulus `τ`, `Im τ > 0`.
    pub tau: Complex<T>,
    /// Base truncation: the series runs over `|n + ½| ≤ truncation + shift(z)`,
    /// where `shift(z) = |Im z| / Im τ` centres the window on the largest term.
    pub truncation: usize,
    /// Relative size of the first neglected term.
    pub tolerance: T,
}

/// Concrete double-precision context.
pub type Context = EllipticContext<f64>;

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("representable constant")
}

/// `e(x) = exp(2πix)`.
pub fn e<T: Float + FloatConst>(x: Complex<T>) -> Complex<T> {
    (Complex::new(T::zero(), T::TAU()) * x).exp()
}

impl<T: Float + FloatConst + std::fmt::Display> EllipticContext<T> {
    /// Context with truncation chosen from `Im τ` so that the tail lies below
    /// `tolerance` relative to the largest term.
    pub fn new(tau: Complex<T>, tolerance: T) -> Result<Self, EllipticError> {
        let im = tau.im.to_f64().unwrap_or(0.0);
        if !(im >= MIN_IM_TAU) {
            return Err(EllipticError::Modulus(im));
        }
        // exp(−π x² Im τ) < tol  ⇔  x > sqrt(−ln tol / (π Im τ)).
        let lt = -tolerance.to_f64().unwrap_or(1e-18).ln();
        let m = (lt / (std::f64::consts::PI * im)).sqrt().ceil() as usize + 2;
        Ok(Self {
            tau,
            truncation: m,
            tolerance,
        })
    }

    /// Context with the default tolerance `1e−18`.
    pub fn with_tau(tau: Complex<T>) -> Result<Self, EllipticError> {
        Self::new(tau, c(1e-18))
    }

    /// Same modulus, explicit base truncation.
    pub fn with_truncation(&self, m: usize) -> Self {
        Self {
            truncation: m,
            ..*self
        }
    }

    /// Distance from `z` to the nearest point of `ℤ + τℤ`.
    pub fn lattice_distance(&self, z: Complex<T>) -> T {
        let b = z.im / self.tau.im;
        let mut best = T::infinity();
        let bf = b.floor();
        for db in [-1.0, 0.0, 1.0, 2.0] {
            let n = bf + c(db);
            let w = z - self.tau * n;
            let af = w.re.floor();
            for da in [-1.0, 0.0, 1.0, 2.0] {
                let d = (w - Complex::new(af + c(da), T::zero())).norm();
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    /// Error when `z` is within [`POLE_DISTANCE`] of the lattice.
    pub fn check_pole(&self, z: Complex<T>) -> Result<(), EllipticError> {
        let d = self.lattice_distance(z);
        if d < c(POLE_DISTANCE) {
            return Err(EllipticError::Pole {
                arg: format!("{}{:+}i", z.re, z.im),
                distance: d.to_f64().unwrap_or(0.0),
            });
        }
        Ok(())
    }

    /// `(θ, θ′, θ″)` at `z` by direct summation.
    pub fn theta_derivatives(&self, z: Complex<T>) -> [Complex<T>; 3] {
        let shift = (z.im.abs() / self.tau.im).ceil().to_usize().unwrap_or(0);
        let m = (self.truncation + shift) as i64;
        let half: T = c(0.5);
        let i2pi = Complex::new(T::zero(), T::TAU());
        let ipi = Complex::new(T::zero(), T::PI());
        let mut out = [Complex::new(T::zero(), T::zero()); 3];
        for n in -m - 1..=m {
            let x = T::from(n).expect("small integer") + half;
            let term = (ipi * self.tau * (x * x) + i2pi * (z + half) * x).exp();
            let d = i2pi * x;
            out[0] = out[0] + term;
            out[1] = out[1] + term * d;
            out[2] = out[2] + term * d * d;
        }
        out
    }

    /// `θ(z|τ)`.
    pub fn theta(&self, z: Complex<T>) -> Complex<T> {
        self.theta_derivatives(z)[0]
    }

    /// `θ′(0|τ)`.
    pub fn theta_prime0(&self) -> Complex<T> {
        self.theta_derivatives(Complex::new(T::zero(), T::zero()))[1]
    }

    /// `E₁(z) = θ′(z)/θ(z)`.
    pub fn eisenstein1(&self, z: Complex<T>) -> Result<Complex<T>, EllipticError> {
        self.check_pole(z)?;
        let [t, t1, _] = self.theta_derivatives(z);
        Ok(t1 / t)
    }

    /// `E₂(z) = −∂_z E₁(z) = (θ′² − θθ″)/θ²`.
    pub fn eisenstein2(&self, z: Complex<T>) -> Result<Complex<T>, EllipticError> {
        self.check_pole(z)?;
        let [t, t1, t2] = self.theta_derivatives(z);
        Ok((t1 * t1 - t * t2) / (t * t))
    }

    /// Kronecker function `φ(u, z) = θ(u+z)θ′(0)/(θ(u)θ(z))`.
    pub fn phi(&self, u: Complex<T>, z: Complex<T>) -> Result<Complex<T>, EllipticError> {
        self.check_pole(u)?;
        self.check_pole(z)?;
        Ok(self.theta(u + z) * self.theta_prime0() / (self.theta(u) * self.theta(z)))
    }

    /// `e(a z) φ(x + aτ + k/l, z)` for precomputed `x = ⟨ũ, β⟩` and
    /// `a = ⟨κ, β⟩`.
    pub fn phi_shifted(&self, x: Complex<T>, a: T, k: i64, l: usize, z: Complex<T>) -> Result<Complex<T>, EllipticError> {
        let shift = T::from(k).expect("small") / T::from(l).expect("small");
        let arg = x + self.tau * a + Complex::new(shift, T::zero());
        Ok(e(z * a) * self.phi(arg, z)?)
    }

    /// `φ^k_β(ũ, z) = e(⟨κ,β⟩z) φ(⟨ũ,β⟩ + ⟨κ,β⟩τ + k/l, z)`.
    #[allow(clippy::too_many_arguments)]
    pub fn phi_k_beta(
        &self,
        kappa: &[T],
        beta: &[T],
        u: &[Complex<T>],
        k: i64,
        l: usize,
        z: Complex<T>,
    ) -> Result<Complex<T>, EllipticError> {
        let a = kappa.iter().zip(beta).fold(T::zero(), |s, (x, y)| s + *x * *y);
        let x = u
            .iter()
            .zip(beta)
            .fold(Complex::new(T::zero(), T::zero()), |s, (x, y)| s + *x * *y);
        self.phi_shifted(x, a, k, l, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn ctx() -> Context {
        Context::with_tau(Complex64::new(0.13, 1.07)).unwrap()
    }

    #[test]
    fn theta_is_odd_and_vanishes_at_zero() {
        let k = ctx();
        let z = Complex64::new(0.31, 0.17);
        assert!((k.theta(z) + k.theta(-z)).norm() < 1e-13);
        assert!(k.theta(Complex64::new(0.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn kronecker_identity_sample() {
        let k = ctx();
        let (u, z) = (Complex64::new(0.21, 0.33), Complex64::new(-0.37, 0.12));
        let lhs = k.phi(u, z).unwrap() * k.phi(-u, z).unwrap();
        let rhs = k.eisenstein2(z).unwrap() - k.eisenstein2(u).unwrap();
        assert!((lhs - rhs).norm() < 1e-11 * rhs.norm());
    }

    #[test]
    fn residue_of_phi_at_zero() {
        let k = ctx();
        let u = Complex64::new(0.3, 0.2);
        let eps = Complex64::new(1e-6, 0.0);
        assert!((k.phi(u, eps).unwrap() * eps - 1.0).norm() < 1e-5);
    }

    #[test]
    fn poles_and_modulus_are_reported() {
        let k = ctx();
        assert!(matches!(k.eisenstein2(k.tau + 1.0), Err(EllipticError::Pole { .. })));
        assert!(matches!(
            Context::with_tau(Complex64::new(0.0, 0.01)),
            Err(EllipticError::Modulus(_))
        ));
    }

    #[test]
    fn generic_in_the_real_type() {
        let k32 = EllipticContext::<f32>::new(Complex::new(0.1f32, 1.0), 1e-9).unwrap();
        let k64 = Context::with_tau(Complex64::new(0.1, 1.0)).unwrap();
        let z32 = Complex::new(0.2f32, 0.1);
        let z64 = Complex64::new(0.2, 0.1);
        let a = k32.eisenstein1(z32).unwrap();
        let b = k64.eisenstein1(z64).unwrap();
        assert!((f64::from(a.re) - b.re).abs() < 1e-4 && (f64::from(a.im) - b.im).abs() < 1e-4);
    }
}
