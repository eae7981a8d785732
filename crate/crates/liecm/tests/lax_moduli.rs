//! Graded bases, Lax operators and moduli bookkeeping.

use std::collections::BTreeMap;

use liecm::case::{lax_cases, Case, CaseId};
use liecm::elliptic::Context;
use liecm::gsbasis::gs_basis;
use liecm::lax::{half_pairing, hamiltonian_oracle, hamiltonian_reduced, DynamicalState};
use liecm::moduli::{equivalent_moduli, moduli_menu, reduce_mod_lattice, select_spec, Equivalence};
use liecm::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn pairing_matrix_and_its_inverse_are_dual() {
    for id in lax_cases() {
        let c = Case::new(&id).unwrap();
        let b = gs_basis(&c);
        assert!(b.nondegenerate(), "{id}");
        let prod = &b.gram * &b.inverse;
        let n = b.len();
        let err = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (prod[(i, j)] - if i == j { 1.0 } else { 0.0 }).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "{id}: {err}");
        assert_eq!(n, c.algebra.dim(), "{id}: basis size");
        // Grades pair only with opposite grades.
        for i in 0..n {
            for j in 0..n {
                if b.gram[(i, j)].norm() > 1e-12 {
                    assert_eq!((b.elements[i].grade + b.elements[j].grade) % b.order, 0, "{id}");
                }
            }
        }
        let (_, _, dims) = b.bookkeeping();
        assert_eq!(dims, c.grading.dims, "{id}");
    }
}

/// For `sl(2)`, `½(L,L) = ½(v,v) + S₊S₋(E₂(z) − E₂(u₁−u₂))` by hand, since
/// `(E_α, E_{−α}) = 1` and `φ(x,z)φ(−x,z) = E₂(z) − E₂(x)`.
#[test]
fn sl2_hamiltonian_by_hand() {
    let c = Case::new(&CaseId::new("A", 1, "trivial")).unwrap();
    let b = gs_basis(&c);
    let roots: Vec<String> = b.elements.iter().filter(|e| e.label.starts_with('t')).map(|e| e.label.clone()).collect();
    assert_eq!(roots.len(), 2);
    let (sp, sm) = (cx(0.3, -0.7), cx(-1.1, 0.4));
    let mut s = BTreeMap::new();
    s.insert(roots[0].clone(), [sp.re, sp.im]);
    s.insert(roots[1].clone(), [sm.re, sm.im]);
    let tau = cx(0.1, 1.2);
    let st = DynamicalState {
        case: c.id.clone(),
        u: vec![[0.21, 0.13], [-0.21, -0.13]],
        v: vec![[0.5, 0.2], [-0.5, -0.2]],
        s,
        tau: [tau.re, tau.im],
    };
    let ctx = Context::with_tau(tau).unwrap();
    let x = cx(0.42, 0.26);
    let v2 = cx(0.5, 0.2) * cx(0.5, 0.2) * 2.0;
    let want = 0.5 * v2 - sp * sm * ctx.eisenstein2(x).unwrap();
    let fit = hamiltonian_oracle(&c, &b, &st, None).unwrap();
    assert!((fit.h - want).norm() < 1e-10 * want.norm().max(1.0), "{} vs {want}", fit.h);
    assert!((fit.casimir - sp * sm).norm() < 1e-10);
    assert!((hamiltonian_reduced(&c, &b, &st).unwrap() - want).norm() < 1e-10);
}

#[test]
fn fit_is_independent_of_the_sample_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in lax_cases() {
        let c = Case::new(&id).unwrap();
        let b = gs_basis(&c);
        let tau = cx(-0.2, 1.1);
        let st = DynamicalState::random(&c, &b, tau, &mut rng);
        let a = hamiltonian_oracle(&c, &b, &st, None).unwrap();
        let pts = [cx(0.13, 0.07), cx(-0.29, 0.31), cx(0.37, -0.22)];
        let bfit = hamiltonian_oracle(&c, &b, &st, Some(pts)).unwrap();
        assert!((a.h - bfit.h).norm() < 1e-9 * a.h.norm().max(1.0), "{id}");
        let r = hamiltonian_reduced(&c, &b, &st).unwrap();
        assert!((a.h - r).norm() < 1e-9 * a.h.norm().max(1.0), "{id}");
        // ½(L,L) − c E₂(z) is constant at a fourth point.
        let ctx = Context::with_tau(tau).unwrap();
        let z = cx(0.21, 0.44);
        let f = half_pairing(&c, &b, &st, z).unwrap() - a.casimir * ctx.eisenstein2(z).unwrap();
        assert!((f - a.h).norm() < 1e-9 * a.h.norm().max(f.norm()).max(1.0), "{id}");
    }
}

#[test]
fn moduli_menus_contain_the_extremes() {
    for id in lax_cases() {
        let c = Case::new(&id).unwrap();
        let menu = moduli_menu(&c);
        if menu.is_empty() {
            continue;
        }
        let q = select_spec(&menu, "Q").unwrap();
        assert_eq!(q.index_over_coroot, 1, "{id}");
        assert!(menu.iter().all(|s| s.is_weyl_stable()), "{id}");
        // The coweight lattice is offered whenever P∨/Q∨ is cyclic.
        let max = menu.iter().map(|s| s.index_over_coroot).max().unwrap();
        if let Some(p) = select_spec(&menu, "P") {
            assert_eq!(p.index_over_coroot, max, "{id}");
        } else {
            assert!(menu.len() > 2, "{id}: non-cyclic quotient expected");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_is_idempotent_and_equivalent(
        case_idx in 0usize..6,
        spec_idx in 0usize..4,
        a in prop::collection::vec(-5.0f64..5.0, 4),
        b in prop::collection::vec(-5.0f64..5.0, 4),
        re in -0.5f64..0.5,
        im in 0.6f64..1.8,
    ) {
        let ids = [
            CaseId::new("B", 3, "w1"),
            CaseId::new("C", 4, "wn"),
            CaseId::new("C", 5, "wn"),
            CaseId::new("D", 5, "w1"),
            CaseId::new("A", 3, "p2"),
            CaseId::new("D", 4, "wn"),
        ];
        let c = Case::new(&ids[case_idx]).unwrap();
        let menu = moduli_menu(&c);
        prop_assume!(!menu.is_empty());
        let spec = &menu[spec_idx % menu.len()];
        let tau = cx(re, im);
        let u = spec.from_lattice_coordinates(&a[..spec.dim], &b[..spec.dim], tau);
        let r1 = reduce_mod_lattice(&u, spec, tau).unwrap();
        let r2 = reduce_mod_lattice(&r1, spec, tau).unwrap();
        for (x, y) in r1.iter().zip(&r2) {
            prop_assert!((x - y).norm() < 1e-9);
        }
        let (ra, rb) = spec.lattice_coordinates(&r1, tau).unwrap();
        prop_assert!(ra.iter().chain(&rb).all(|x| (-1e-9..1.0).contains(x)));
        let res = equivalent_moduli(&u, &r1, spec, tau).unwrap();
        prop_assert_eq!(res.equivalent, Equivalence::Equivalent);
    }
}
