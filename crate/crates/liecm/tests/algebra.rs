//! Exact scalars, root data and Chevalley bases.

use liecm::chevalley::{Element, LieAlgebra};
use liecm::rootsys::{RootDatum, RootType};
use liecm::{Complex64, ExactVector, QSqrt2};
use proptest::prelude::*;

fn all_types() -> Vec<(RootType, usize)> {
    let mut v = Vec::new();
    for r in 1..=5 {
        v.push((RootType::A, r));
    }
    for r in 2..=5 {
        v.push((RootType::B, r));
        v.push((RootType::C, r));
    }
    for r in 3..=5 {
        v.push((RootType::D, r));
    }
    v.push((RootType::E6, 6));
    v.push((RootType::E7, 7));
    v
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

#[test]
fn weyl_group_orders_follow_the_classical_formulas() {
    for (t, r) in all_types() {
        let n = r as u128;
        let want = match t {
            RootType::A => factorial(n + 1),
            RootType::B | RootType::C => (1u128 << n) * factorial(n),
            RootType::D => (1u128 << (n - 1)) * factorial(n),
            RootType::E6 => 51_840,
            RootType::E7 => 2_903_040,
        };
        let d = RootDatum::new(t, r).unwrap();
        assert_eq!(d.weyl_order(), want, "{}", d.name());
    }
}

#[test]
fn small_weyl_groups_enumerate_to_their_order() {
    for (t, r) in [(RootType::A, 3), (RootType::B, 3), (RootType::D, 4)] {
        let d = RootDatum::new(t, r).unwrap();
        let words = d.weyl().enumerate(100_000).unwrap();
        assert_eq!(words.len() as u128, d.weyl_order(), "{}", d.name());
    }
}

#[test]
fn simple_reflections_permute_the_roots() {
    for (t, r) in all_types() {
        let d = RootDatum::new(t, r).unwrap();
        let w = d.weyl();
        for i in 0..r {
            for alpha in d.roots() {
                assert!(d.root_index(&w.reflect(i, &alpha)).is_some(), "{}: s{i}({alpha:?})", d.name());
            }
        }
    }
}

#[test]
fn unsupported_ranks_are_rejected() {
    assert!(RootDatum::new(RootType::B, 1).is_err());
    assert!(RootDatum::new(RootType::D, 2).is_err());
    assert!(RootDatum::new(RootType::A, 0).is_err());
}

#[test]
fn chevalley_normalisation() {
    for (t, r) in [(RootType::B, 3), (RootType::C, 3), (RootType::E6, 6)] {
        let g = LieAlgebra::from_type(t, r).unwrap();
        let p = g.datum.num_positive();
        for a in 0..p {
            let alpha = &g.datum.roots()[a];
            let x = g.root_vector(a);
            let y = g.root_vector(a + p);
            let want = 2.0 / alpha.norm2().to_f64();
            assert!((g.pairing(&x, &y) - want).norm() < 1e-12);
            // [E_α, E_{−α}] is the coroot.
            let h = g.bracket(&x, &y);
            let coroot = alpha.coroot().to_f64();
            let err = h.h.iter().zip(&coroot).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-12 && h.e.iter().all(|c| c.norm() < 1e-12), "{}", g.datum.name());
        }
    }
}

fn random_element(g: &LieAlgebra, coeffs: &[f64]) -> Element {
    let mut x = g.zero();
    let n = g.ambient_dim();
    for (i, c) in x.h.iter_mut().enumerate() {
        *c = Complex64::new(coeffs[i % coeffs.len()], 0.0);
    }
    for (a, c) in x.e.iter_mut().enumerate() {
        *c = Complex64::new(coeffs[(n + a) % coeffs.len()], coeffs[(n + 3 * a + 1) % coeffs.len()]);
    }
    // Stay inside the Cartan subalgebra for A-type ambient coordinates.
    let h: Vec<_> = x.h.iter().map(|z| z.re).collect();
    let cartan = g.datum.project_to_cartan(&ExactVector(h.iter().map(|v| QSqrt2::frac((v * 1000.0).round() as i64, 1000)).collect()));
    x.h = cartan.to_f64().into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    x
}

fn sub(a: &Element, b: &Element) -> Element {
    let mut d = a.clone();
    d.axpy(Complex64::new(-1.0, 0.0), b);
    d
}

fn qsqrt2() -> impl Strategy<Value = QSqrt2> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
        .prop_map(|(a, b, c, d)| &QSqrt2::frac(a, b) + &QSqrt2::sqrt2_frac(c, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qsqrt2_field_operations_match_floating_point(x in qsqrt2(), y in qsqrt2()) {
        let (fx, fy) = (x.to_f64(), y.to_f64());
        prop_assert!(((&x + &y).to_f64() - (fx + fy)).abs() < 1e-9);
        prop_assert!(((&x * &y).to_f64() - fx * fy).abs() < 1e-9 * (1.0 + (fx * fy).abs()));
        prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
        if !num_traits::Zero::is_zero(&y) {
            let q = x.checked_div(&y).unwrap();
            prop_assert_eq!(&q * &y, x.clone());
        }
        prop_assert_eq!(x.to_string().parse::<QSqrt2>().unwrap(), x);
    }

    #[test]
    fn jacobi_identity_and_invariance(idx in 0usize..4, coeffs in prop::collection::vec(-2.0f64..2.0, 17)) {
        let (t, r) = [(RootType::A, 3), (RootType::B, 3), (RootType::C, 3), (RootType::D, 4)][idx];
        let g = LieAlgebra::from_type(t, r).unwrap();
        let x = random_element(&g, &coeffs);
        let mut c2 = coeffs.clone();
        c2.rotate_left(5);
        let y = random_element(&g, &c2);
        c2.rotate_left(7);
        let z = random_element(&g, &c2);
        let j1 = g.bracket(&x, &g.bracket(&y, &z));
        let j2 = g.bracket(&y, &g.bracket(&z, &x));
        let j3 = g.bracket(&z, &g.bracket(&x, &y));
        let mut s = j1.clone();
        s.axpy(Complex64::new(1.0, 0.0), &j2);
        s.axpy(Complex64::new(1.0, 0.0), &j3);
        prop_assert!(s.max_abs() < 1e-9 * (1.0 + j1.max_abs()));
        // Antisymmetry and invariance of the form.
        let anti = sub(&g.bracket(&x, &y), &g.bracket(&y, &x).scaled(Complex64::new(-1.0, 0.0)));
        prop_assert!(anti.max_abs() < 1e-12);
        let lhs = g.pairing(&g.bracket(&x, &y), &z);
        let rhs = g.pairing(&x, &g.bracket(&y, &z));
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn random_weyl_words_preserve_the_root_system(idx in 0usize..6, word in prop::collection::vec(0usize..7, 0..12)) {
        let (t, r) = [(RootType::A, 4), (RootType::B, 4), (RootType::C, 3), (RootType::D, 5), (RootType::E6, 6), (RootType::E7, 7)][idx];
        let d = RootDatum::new(t, r).unwrap();
        let w = d.weyl();
        let word: Vec<usize> = word.into_iter().map(|i| i % r).collect();
        for alpha in d.roots() {
            let image = w.apply_word(&word, &alpha);
            prop_assert!(d.root_index(&image).is_some());
            prop_assert_eq!(image.norm2(), alpha.norm2());
        }
        // Dominant representative is dominant and in the same orbit.
        let x = d.kappa().clone();
        let y = w.apply_word(&word, &x);
        let (dom, back) = w.dominant_representative(&y);
        prop_assert!(d.simple_roots.iter().all(|a| !dom.dot(a).is_negative()));
        prop_assert_eq!(w.apply_word(&back, &y), dom.clone());
        prop_assert_eq!(dom, x);
    }
}
