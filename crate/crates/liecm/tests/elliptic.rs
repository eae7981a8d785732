//! Elliptic kernels against an independent product-formula oracle, plus the
//! functional identities as properties.

use liecm::elliptic::{e, Context, EllipticContext};
use liecm::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

const REL: f64 = 1e-10;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// `E₁` and `E₂` from the Jacobi triple product
/// `θ₁(z) ∝ sin(πz) Π_n (1 − qⁿw)(1 − qⁿ/w)`, `q = e(τ)`, `w = e(z)`.
fn product_e1_e2(z: Complex64, tau: Complex64) -> (Complex64, Complex64) {
    let q = e(tau);
    let w = e(z);
    let i2pi = cx(0.0, 2.0 * PI);
    let s = (z * PI).sin();
    let mut e1 = PI * (z * PI).cos() / s;
    let mut e2 = cx(PI * PI, 0.0) / (s * s);
    let mut qn = q;
    for _ in 0..400 {
        let (a, b) = (qn * w, qn / w);
        e1 += i2pi * (-a / (1.0 - a) + b / (1.0 - b));
        e2 -= 4.0 * PI * PI * (a / ((1.0 - a) * (1.0 - a)) + b / ((1.0 - b) * (1.0 - b)));
        qn *= q;
        if qn.norm() < 1e-300 {
            break;
        }
    }
    (e1, e2)
}

/// `φ(u, z)` from `θ₁(x) = 2q^{1/8} sin(πx) Π(1−qⁿ)(1−qⁿe(x))(1−qⁿe(−x))`;
/// the normalisation cancels in the ratio.
fn product_phi(u: Complex64, z: Complex64, tau: Complex64) -> Complex64 {
    let q = e(tau);
    let core = |x: Complex64| {
        let mut p = (x * PI).sin();
        let mut qn = q;
        for _ in 0..400 {
            p *= (1.0 - qn * e(x)) * (1.0 - qn * e(-x));
            qn *= q;
            if qn.norm() < 1e-300 {
                break;
            }
        }
        p
    };
    let mut prime0 = cx(PI, 0.0);
    let mut qn = q;
    for _ in 0..400 {
        prime0 *= (1.0 - qn) * (1.0 - qn);
        qn *= q;
        if qn.norm() < 1e-300 {
            break;
        }
    }
    core(u + z) * prime0 / (core(u) * core(z))
}

#[test]
fn eisenstein_functions_match_the_product_formula() {
    let tau = cx(0.21, 0.93);
    let ctx = Context::with_tau(tau).unwrap();
    for z in [cx(0.17, 0.05), cx(-0.31, 0.41), cx(0.44, -0.2), cx(0.05, 0.6)] {
        let (e1, e2) = product_e1_e2(z, tau);
        assert!(rel(ctx.eisenstein1(z).unwrap(), e1) < REL, "E1 at {z}");
        assert!(rel(ctx.eisenstein2(z).unwrap(), e2) < REL, "E2 at {z}");
    }
}

#[test]
fn kronecker_function_matches_the_product_formula() {
    let tau = cx(-0.3, 1.4);
    let ctx = Context::with_tau(tau).unwrap();
    for (u, z) in [(cx(0.13, 0.2), cx(-0.27, 0.1)), (cx(0.4, -0.5), cx(0.1, 0.3))] {
        assert!(rel(ctx.phi(u, z).unwrap(), product_phi(u, z, tau)) < REL);
    }
}

#[test]
fn poles_are_rejected() {
    let tau = cx(0.0, 1.0);
    let ctx = Context::with_tau(tau).unwrap();
    assert!(ctx.eisenstein2(cx(1.0, 0.0) + tau).is_err());
    assert!(ctx.phi(cx(0.0, 0.0), cx(0.3, 0.1)).is_err());
    assert!(Context::with_tau(cx(0.0, 0.01)).is_err());
}

#[test]
fn single_precision_context_agrees_coarsely() {
    let tau32 = num_complex::Complex32::new(0.1, 1.1);
    let ctx32 = EllipticContext::<f32>::with_tau(tau32).unwrap();
    let ctx64 = Context::with_tau(cx(0.1, 1.1)).unwrap();
    let z = cx(0.23, 0.11);
    let a = ctx32.eisenstein2(num_complex::Complex32::new(0.23, 0.11)).unwrap();
    let b = ctx64.eisenstein2(z).unwrap();
    assert!(rel(cx(a.re as f64, a.im as f64), b) < 1e-4);
}

fn tau_strategy() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, 0.5f64..2.0).prop_map(|(a, b)| cx(a, b))
}

/// Point of the fundamental parallelogram centred at 0, in lattice units.
fn cell_strategy() -> impl Strategy<Value = (f64, f64)> {
    (-0.45f64..0.45, -0.45f64..0.45)
}

fn point(tau: Complex64, (a, b): (f64, f64)) -> Complex64 {
    cx(a, 0.0) + tau * b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kronecker_identity(tau in tau_strategy(), u in cell_strategy(), z in cell_strategy()) {
        let ctx = Context::with_tau(tau).unwrap();
        let (u, z) = (point(tau, u), point(tau, z));
        prop_assume!(ctx.lattice_distance(u) > 0.05 && ctx.lattice_distance(z) > 0.05);
        let lhs = ctx.phi(u, z).unwrap() * ctx.phi(-u, z).unwrap();
        let rhs = ctx.eisenstein2(z).unwrap() - ctx.eisenstein2(u).unwrap();
        let scale = lhs.norm().max(ctx.eisenstein2(z).unwrap().norm()).max(1.0);
        prop_assert!((lhs - rhs).norm() / scale < REL);
    }

    #[test]
    fn quasi_periodicity(tau in tau_strategy(), u in cell_strategy(), z in cell_strategy()) {
        let ctx = Context::with_tau(tau).unwrap();
        let (u, z) = (point(tau, u), point(tau, z));
        prop_assume!(ctx.lattice_distance(u) > 0.05 && ctx.lattice_distance(z) > 0.05);
        let base = ctx.phi(u, z).unwrap();
        prop_assert!(rel(ctx.phi(u, z + 1.0).unwrap(), base) < REL);
        let shifted = ctx.phi(u, z + tau).unwrap();
        prop_assert!((shifted - e(-u) * base).norm() / shifted.norm().max(base.norm()).max(1.0) < REL);
        prop_assert!(rel(ctx.eisenstein2(z + tau).unwrap(), ctx.eisenstein2(z).unwrap()) < REL);
        prop_assert!(rel(ctx.eisenstein1(z + 1.0).unwrap(), ctx.eisenstein1(z).unwrap()) < REL);
    }

    #[test]
    fn doubling_the_truncation_changes_nothing(tau in tau_strategy(), u in cell_strategy(), z in cell_strategy()) {
        let ctx = Context::with_tau(tau).unwrap();
        let wide = ctx.with_truncation(2 * ctx.truncation);
        let (u, z) = (point(tau, u), point(tau, z));
        prop_assume!(ctx.lattice_distance(u) > 0.05 && ctx.lattice_distance(z) > 0.05);
        prop_assert!(rel(ctx.phi(u, z).unwrap(), wide.phi(u, z).unwrap()) < 1e-12);
        prop_assert!(rel(ctx.eisenstein2(z).unwrap(), wide.eisenstein2(z).unwrap()) < 1e-12);
    }

    #[test]
    fn e2_is_even_and_e1_is_odd(tau in tau_strategy(), z in cell_strategy()) {
        let ctx = Context::with_tau(tau).unwrap();
        let z = point(tau, z);
        prop_assume!(ctx.lattice_distance(z) > 0.05);
        prop_assert!(rel(ctx.eisenstein2(-z).unwrap(), ctx.eisenstein2(z).unwrap()) < REL);
        prop_assert!(rel(-ctx.eisenstein1(-z).unwrap(), ctx.eisenstein1(z).unwrap()) < REL);
    }
}
