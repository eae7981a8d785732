//! Acceptance gate: nine criteria, one pass/fail line each.
//!
//! Exact criteria (root data, automorphisms, invariant subalgebras, grading
//! dimensions) compare against closed-form expectations computed here, not
//! against tables produced by the library. Numeric criteria use the pinned
//! tolerances below.

use std::collections::BTreeMap;
use std::process::ExitCode;

use liecm::autgrade::{matrix_lift, obstruction_cocycle};
use liecm::case::{lax_cases, Case, CaseId};
use liecm::elliptic::{e, Context};
use liecm::gsbasis::{gs_basis, gs_structure_check, sl_printed};
use liecm::lax::{hamiltonian_oracle, verify_printed, DynamicalState};
use liecm::moduli::{equivalent_moduli, moduli_menu, reduce_mod_lattice, verify_witness, Equivalence};
use liecm::rootsys::{RootDatum, RootType};
use liecm::scalars::{ExactMatrix, QSqrt2};
use liecm::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Matrix identities (trace form, brackets, grading closure).
const MATRIX_TOL: f64 = 1e-12;
/// Obstruction scalar `[Λ, 𝒬]`.
const COCYCLE_TOL: f64 = 1e-12;
/// Kronecker identity and quasi-periodicities, relative.
const ELLIPTIC_TOL: f64 = 1e-10;
/// `½(L,L)` fit residual, relative.
const FIT_TOL: f64 = 1e-10;
/// Printed vs oracle Hamiltonian, relative.
const HAMILTONIAN_TOL: f64 = 1e-8;
/// Random states per Lax case.
const STATES: usize = 20;
/// Seed shared with `liecm verify --all`, which writes DEVIATIONS.md.
const SEED: u64 = 2024;
/// Elliptic samples.
const ELLIPTIC_SAMPLES: usize = 1000;
/// Moduli pairs per case.
const MODULI_PAIRS: usize = 1000;
/// Printed-term confirmation target.
const PRINTED_TARGET: f64 = 0.90;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn supported() -> Vec<(RootType, usize)> {
    let mut v = Vec::new();
    for r in 1..=6 {
        v.push((RootType::A, r));
    }
    for r in 2..=6 {
        v.push((RootType::B, r));
        v.push((RootType::C, r));
    }
    for r in 3..=6 {
        v.push((RootType::D, r));
    }
    v.push((RootType::E6, 6));
    v.push((RootType::E7, 7));
    v
}

/// Cartan matrix of a classical series built from its Dynkin diagram.
fn classical_cartan(t: RootType, r: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        m[i][i] = 2;
        if i + 1 < r {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    match t {
        // a_ij = ⟨α_i∨, α_j⟩: short α_r for B, long α_r for C.
        RootType::B => m[r - 1][r - 2] = -2,
        RootType::C => m[r - 2][r - 1] = -2,
        RootType::D => {
            m[r - 2][r - 1] = 0;
            m[r - 1][r - 2] = 0;
            m[r - 3][r - 1] = -1;
            m[r - 1][r - 3] = -1;
        }
        _ => {}
    }
    m
}

/// Arm lengths of a simply-laced tree with one trivalent node.
fn arms(m: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = m.len();
    let nbrs = |i: usize| (0..n).filter(move |&j| j != i && m[i][j] != 0).collect::<Vec<_>>();
    let centre = (0..n).find(|&i| nbrs(i).len() == 3)?;
    let mut out = Vec::new();
    for start in nbrs(centre) {
        let (mut prev, mut cur, mut len) = (centre, start, 1);
        loop {
            let next: Vec<usize> = nbrs(cur).into_iter().filter(|&j| j != prev).collect();
            match next.as_slice() {
                [] => break,
                [j] => {
                    prev = cur;
                    cur = *j;
                    len += 1;
                }
                _ => return None,
            }
        }
        out.push(len);
    }
    out.sort_unstable();
    Some(out)
}

fn coxeter_number(t: RootType, r: usize) -> i64 {
    let r = r as i64;
    match t {
        RootType::A => r + 1,
        RootType::B | RootType::C => 2 * r,
        RootType::D => 2 * r - 2,
        RootType::E6 => 12,
        RootType::E7 => 18,
    }
}

fn root_count(t: RootType, r: usize) -> usize {
    match t {
        RootType::A => r * (r + 1),
        RootType::B | RootType::C => 2 * r * r,
        RootType::D => 2 * r * (r - 1),
        RootType::E6 => 72,
        RootType::E7 => 126,
    }
}

fn center_name(t: RootType, r: usize) -> String {
    match t {
        RootType::A => format!("μ{}", r + 1),
        RootType::B | RootType::C | RootType::E7 => "μ2".into(),
        RootType::D if r % 2 == 1 => "μ4".into(),
        RootType::D => "μ2×μ2".into(),
        RootType::E6 => "μ3".into(),
    }
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for (t, r) in supported() {
        let d = RootDatum::new(t, r).map_err(|e| e.to_string())?;
        let name = d.name();
        ensure(d.roots().len() == root_count(t, r), || format!("{name}: root count {}", d.roots().len()))?;
        let h = coxeter_number(t, r);
        ensure(d.coxeter == h, || format!("{name}: Coxeter number {}", d.coxeter))?;
        match t {
            RootType::E6 | RootType::E7 => {
                let m = &d.cartan_matrix;
                let sym = (0..r).all(|i| (0..r).all(|j| m[i][j] == m[j][i]));
                let want = if t == RootType::E6 { vec![1, 2, 2] } else { vec![1, 2, 3] };
                ensure(sym && arms(m) == Some(want), || format!("{name}: Cartan matrix {m:?}"))?;
            }
            _ => ensure(d.cartan_matrix == classical_cartan(t, r), || format!("{name}: Cartan matrix {:?}", d.cartan_matrix))?,
        }
        // Cartan matrix from the simple roots themselves.
        for (i, ai) in d.simple_roots.iter().enumerate() {
            for (j, aj) in d.simple_roots.iter().enumerate() {
                ensure(ai.coroot().dot(aj) == QSqrt2::int(d.cartan_matrix[i][j]), || format!("{name}: ⟨α{i}∨, α{j}⟩"))?;
            }
        }
        // |P∨/Q∨| = det of the Cartan matrix.
        let det = ExactMatrix::from_ints(&d.cartan_matrix).det();
        let cs = d.center_structure();
        let order: i64 = cs.invariant_factors.iter().product();
        ensure(det == QSqrt2::int(order) && cs.group == center_name(t, r), || {
            format!("{name}: center {} (det {det})", cs.group)
        })?;
        // Marks: θ = Σ m_i α_i is dominant, a root, and 1 + Σ m_i = h.
        let mut theta = liecm::ExactVector::zeros(d.ambient_dim);
        for (m, a) in d.marks.iter().zip(&d.simple_roots) {
            theta = &theta + &a.scale(&QSqrt2::int(*m));
        }
        let dominant = d.simple_roots.iter().all(|a| !theta.dot(&a.coroot()).is_negative());
        ensure(dominant && d.root_index(&theta).is_some() && 1 + d.marks.iter().sum::<i64>() == h, || {
            format!("{name}: marks {:?}", d.marks)
        })?;
        // ⟨κ, α⟩ = f_α / h for every root.
        for alpha in d.roots() {
            let c = d.simple_root_coordinates(&alpha).ok_or_else(|| format!("{name}: root outside span"))?;
            let f = c.0.iter().fold(QSqrt2::int(0), |s, x| s + x.clone());
            ensure(d.kappa().dot(&alpha) == f / QSqrt2::int(h), || format!("{name}: ⟨κ,α⟩ for {alpha:?}"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} root systems, exact"))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    let mut expect: Vec<(&str, usize, String, usize)> = Vec::new();
    for r in 1..=6 {
        for j in 1..=r {
            expect.push(("A", r, format!("w{j}"), (r + 1) / gcd(j, r + 1)));
        }
    }
    for r in 2..=6 {
        expect.push(("B", r, "w1".into(), 2));
        expect.push(("C", r, "wn".into(), 2));
    }
    for r in 4..=7 {
        expect.push(("D", r, "wn".into(), if r % 2 == 1 { 4 } else { 2 }));
        expect.push(("D", r, "w1".into(), 2));
    }
    expect.push(("E6", 6, "w1".into(), 3));
    expect.push(("E7", 7, "w7".into(), 2));
    for (t, r, class, order) in &expect {
        let c = Case::from_parts(t, *r, class).map_err(|e| e.to_string())?;
        ensure(c.order() == *order, || format!("{}: order {} (want {order})", c.id, c.order()))?;
        ensure(c.lambda.preserves_extended_cartan(&c.algebra.datum), || format!("{}: extended Cartan not preserved", c.id))?;
        checked += 1;
    }
    let mut worst = 0.0f64;
    for n in 2..=7usize {
        for p in (1..n).filter(|p| n % p == 0) {
            let c = Case::from_parts("A", n - 1, &format!("p{p}")).map_err(|e| e.to_string())?;
            let lm = matrix_lift(&c.algebra, &c.sigma).map_err(|e| e.to_string())?;
            let (z, dev) = obstruction_cocycle(&c.algebra, &lm).map_err(|e| e.to_string())?;
            let want = e(Complex64::new(p as f64 / n as f64, 0.0));
            let err = dev.max((z - want).norm());
            worst = worst.max(err);
            ensure(err < COCYCLE_TOL, || format!("{}: [Λ,𝒬] = {z} (want ω^{p}), scalar deviation {dev:.1e}", c.id))?;
        }
    }
    Ok(format!("{checked} automorphisms; [Λ,𝒬] = ω^p·Id, worst {worst:.1e}"))
}

/// Components with low-rank coincidences identified (B1 = A1, C2 = B2,
/// D2 = A1+A1, D3 = A3), sorted.
fn canonical(components: &[(char, usize)]) -> Vec<(char, usize)> {
    let mut out = Vec::new();
    for &(s, r) in components {
        match (s, r) {
            (_, 0) => {}
            ('B', 1) | ('C', 1) => out.push(('A', 1)),
            ('C', 2) => out.push(('B', 2)),
            ('D', 2) => out.extend([('A', 1), ('A', 1)]),
            ('D', 3) => out.push(('A', 3)),
            x => out.push(x),
        }
    }
    out.sort_unstable();
    out
}

fn criterion_3() -> Outcome {
    let mut expect: Vec<(&str, usize, &str, Vec<(char, usize)>)> = Vec::new();
    for n in 3..=8 {
        let t = if n % 2 == 1 { ('B', (n - 1) / 2) } else { ('D', n / 2) };
        expect.push(("C", n, "wn", vec![t]));
    }
    for n in 3..=6 {
        expect.push(("B", n, "w1", vec![('B', n - 1)]));
    }
    for n in 4..=8 {
        let t = if n % 2 == 1 { ('B', (n - 3) / 2) } else { ('D', n / 2) };
        expect.push(("D", n, "wn", vec![t]));
        expect.push(("D", n, "w1", vec![('B', n - 2)]));
    }
    expect.push(("E6", 6, "w1", vec![('G', 2)]));
    expect.push(("E7", 7, "w7", vec![('F', 4)]));
    for (t, r, class, want) in &expect {
        let c = Case::from_parts(t, *r, class).map_err(|e| e.to_string())?;
        let got: Vec<(char, usize)> = c.invariant.components.iter().map(|k| (k.series, k.rank)).collect();
        ensure(canonical(&got) == canonical(want), || format!("{}: g̃₀ = {} (want {want:?})", c.id, c.invariant.type_name()))?;
    }
    Ok(format!("{} invariant subalgebras identified", expect.len()))
}

fn criterion_4() -> Outcome {
    let mut expect: Vec<(String, usize, String, Vec<usize>, usize)> = vec![
        ("E6".into(), 6, "w1".into(), vec![30, 24, 24], 14),
        ("E7".into(), 7, "w7".into(), vec![79, 54], 52),
    ];
    for n in 2..=6usize {
        expect.push(("C".into(), n, "wn".into(), vec![n * n, n * (n + 1)], n * (n - 1) / 2));
        expect.push(("B".into(), n, "w1".into(), vec![n * (2 * n - 1), 2 * n], (n - 1) * (2 * n - 1)));
    }
    for n in [5usize, 7] {
        let d = vec![n * n - 3 * n + 3, 2 * n - 2, n * n - 2 * n + 1, 2 * n - 2];
        expect.push(("D".into(), n, "wn".into(), d, (n - 2) * (n - 3) / 2));
    }
    for n in 4..=6usize {
        expect.push(("D".into(), n, "w1".into(), vec![2 * n * n - 5 * n + 4, 4 * n - 4], (n - 2) * (2 * n - 3)));
    }
    for n in 2..=7usize {
        for p in (1..n).filter(|p| n % p == 0) {
            let l = n / p;
            let mut d = vec![n * n / l; l];
            d[0] -= 1;
            expect.push(("A".into(), n - 1, format!("p{p}"), d, p * p - 1));
        }
    }
    for (t, r, class, dims, g0t) in &expect {
        let c = Case::from_parts(t, *r, class).map_err(|e| e.to_string())?;
        ensure(&c.grading.dims == dims && c.grading.g0_tilde_dim == *g0t, || {
            format!("{}: dims {:?}, dim g̃₀ {} (want {dims:?}, {g0t})", c.id, c.grading.dims, c.grading.g0_tilde_dim)
        })?;
    }
    Ok(format!("{} gradings, exact counts", expect.len()))
}

fn classical_cases() -> Vec<CaseId> {
    let mut v = Vec::new();
    for class in ["trivial", "p2", "p3"] {
        v.push(CaseId::new("A", 5, class));
    }
    for class in ["trivial", "w1"] {
        v.push(CaseId::new("B", 3, class));
    }
    for n in [4, 5] {
        for class in ["trivial", "wn"] {
            v.push(CaseId::new("C", n, class));
        }
        for class in ["trivial", "wn", "w1"] {
            v.push(CaseId::new("D", n, class));
        }
    }
    v
}

fn criterion_5_and_6() -> (Outcome, Outcome) {
    let mut trace = 0.0f64;
    let mut closure = 0.0f64;
    let mut failure5 = None;
    let mut failure6 = None;
    for id in classical_cases() {
        let c = match Case::new(&id) {
            Ok(c) => c,
            Err(e) => return (Err(e.to_string()), Err(e.to_string())),
        };
        let b = gs_basis(&c);
        match gs_structure_check(&c, &b) {
            Ok(r) => {
                trace = trace.max(r.trace_residual);
                let cl = r.closure_residual.max(r.eigen_residual).max(r.bracket_residual);
                closure = closure.max(cl);
                if r.trace_residual >= MATRIX_TOL && failure5.is_none() {
                    failure5 = Some(format!("{id}: pairing vs trace {:.2e}", r.trace_residual));
                }
                if cl >= MATRIX_TOL && failure6.is_none() {
                    failure6 = Some(format!("{id}: closure {cl:.2e}"));
                }
            }
            Err(e) => return (Err(e.to_string()), Err(e.to_string())),
        }
    }
    let mut rel = 0.0f64;
    for (n, p) in [(4, 1), (4, 2), (6, 1), (6, 2), (6, 3), (8, 2), (8, 4), (9, 3)] {
        let r = sl_printed::relation_residuals(n, p);
        let m = r.iter().copied().fold(0.0, f64::max);
        rel = rel.max(m);
        if m >= MATRIX_TOL && failure6.is_none() {
            failure6 = Some(format!("sl({n}), p = {p}: relation residuals {r:?}"));
        }
    }
    let c5 = match failure5 {
        Some(f) => Err(f),
        None => Ok(format!("{} cases, max |(x,y) − c·tr XY| = {trace:.1e}", classical_cases().len())),
    };
    let c6 = match failure6 {
        Some(f) => Err(f),
        None => Ok(format!("relations max {rel:.1e}; grading closure / brackets max {closure:.1e}")),
    };
    (c5, c6)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut kron, mut per1, mut pertau) = (0.0f64, 0.0f64, 0.0f64);
    let mut n = 0;
    while n < ELLIPTIC_SAMPLES {
        let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..2.0));
        let ctx = Context::with_tau(tau).map_err(|e| e.to_string())?;
        let pick = |rng: &mut ChaCha8Rng| tau * rng.gen_range(-0.45..0.45) + rng.gen_range(-0.5..0.5);
        let (u, z) = (pick(&mut rng), pick(&mut rng));
        if ctx.lattice_distance(u) < 0.05 || ctx.lattice_distance(z) < 0.05 {
            continue;
        }
        let ev = |x: Result<Complex64, _>| x.map_err(|e: liecm::elliptic::EllipticError| e.to_string());
        let (pp, pm) = (ev(ctx.phi(u, z))?, ev(ctx.phi(-u, z))?);
        let (ez, eu) = (ev(ctx.eisenstein2(z))?, ev(ctx.eisenstein2(u))?);
        let scale = 1.0f64.max((pp * pm).norm()).max(ez.norm()).max(eu.norm());
        kron = kron.max((pp * pm - (ez - eu)).norm() / scale);
        per1 = per1.max((ev(ctx.phi(u, z + 1.0))? - pp).norm() / pp.norm().max(1.0));
        let shifted = ev(ctx.phi(u, z + tau))?;
        pertau = pertau.max((shifted - e(-u) * pp).norm() / pp.norm().max(shifted.norm()).max(1.0));
        n += 1;
    }
    let worst = kron.max(per1).max(pertau);
    let line = format!("{n} samples: Kronecker {kron:.1e}, z→z+1 {per1:.1e}, z→z+τ {pertau:.1e}");
    if worst < ELLIPTIC_TOL {
        Ok(line)
    } else {
        Err(line)
    }
}

/// Per-case section headers and confirmation counts recorded in DEVIATIONS.md.
fn recorded_deviations() -> Result<BTreeMap<String, String>, String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../DEVIATIONS.md");
    let text = std::fs::read_to_string(path).map_err(|e| format!("DEVIATIONS.md: {e}"))?;
    let mut out = BTreeMap::new();
    let mut current: Option<String> = None;
    for line in text.lines() {
        if let Some(h) = line.strip_prefix("## ") {
            current = Some(h.trim().to_string());
        } else if let Some(c) = &current {
            if line.contains("printed items confirmed") {
                out.insert(c.clone(), line.to_string());
            }
        }
    }
    Ok(out)
}

fn criterion_8() -> (Outcome, String) {
    let recorded = match recorded_deviations() {
        Ok(r) => r,
        Err(e) => return (Err(e), String::new()),
    };
    let (mut confirmed, mut total, mut fit_worst) = (0usize, 0usize, 0.0f64);
    let (mut agreeing, mut recorded_cases) = (0, 0);
    for id in lax_cases() {
        let c = match Case::new(&id) {
            Ok(c) => c,
            Err(e) => return (Err(e.to_string()), String::new()),
        };
        let b = gs_basis(&c);
        // Independent fit check on fresh states.
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
        for _ in 0..STATES {
            let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
            let st = DynamicalState::random(&c, &b, tau, &mut rng);
            match hamiltonian_oracle(&c, &b, &st, None) {
                Ok(f) => fit_worst = fit_worst.max(f.residual),
                Err(e) => return (Err(format!("{id}: {e}")), String::new()),
            }
        }
        let rep = match verify_printed(&c, &b, STATES, SEED) {
            Ok(r) => r,
            Err(e) => return (Err(format!("{id}: {e}")), String::new()),
        };
        fit_worst = fit_worst.max(rep.fit_residual);
        confirmed += rep.confirmed;
        total += rep.total;
        if rep.max_relative < HAMILTONIAN_TOL {
            agreeing += 1;
            continue;
        }
        let want = format!("{} of {} printed items confirmed", rep.confirmed, rep.total);
        match recorded.get(&id.to_string()) {
            Some(line) if line.contains(&want) => recorded_cases += 1,
            Some(line) => return (Err(format!("{id}: DEVIATIONS.md is stale (`{line}`, now `{want}`)")), String::new()),
            None => return (Err(format!("{id}: mismatch not recorded in DEVIATIONS.md")), String::new()),
        }
    }
    let rate = confirmed as f64 / total.max(1) as f64;
    let target = format!(
        "{} — {confirmed}/{total} printed items confirmed verbatim ({:.1}%, target {:.0}%)",
        if rate >= PRINTED_TARGET { "MET" } else { "NOT MET" },
        100.0 * rate,
        100.0 * PRINTED_TARGET
    );
    if fit_worst >= FIT_TOL {
        return (Err(format!("fit residual {fit_worst:.2e}")), target);
    }
    (
        Ok(format!(
            "{} cases: fit residual ≤ {fit_worst:.1e}; {agreeing} agree with the printed formula, {recorded_cases} mismatches recorded in DEVIATIONS.md",
            lax_cases().len()
        )),
        target,
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut pairs, mut specs) = (0usize, 0usize);
    let mut negatives = 0usize;
    for id in lax_cases().into_iter().filter(|c| c.rank <= 5) {
        let c = Case::new(&id).map_err(|e| e.to_string())?;
        let menu = moduli_menu(&c);
        for spec in &menu {
            ensure(spec.is_weyl_stable(), || format!("{id}: {} not W̃-stable", spec.name))?;
            specs += 1;
            let w = spec.weyl();
            let per_spec = MODULI_PAIRS.div_ceil(menu.len());
            for k in 0..per_spec {
                let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..2.0));
                let a: Vec<f64> = (0..spec.dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let b: Vec<f64> = (0..spec.dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let u = spec.from_lattice_coordinates(&a, &b, tau);
                // Reduction: idempotent and equivalent to the input with w = id.
                let r1 = reduce_mod_lattice(&u, spec, tau).map_err(|e| e.to_string())?;
                let r2 = reduce_mod_lattice(&r1, spec, tau).map_err(|e| e.to_string())?;
                let drift = r1.iter().zip(&r2).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                ensure(drift < 1e-9, || format!("{id} {}: reduction not idempotent ({drift:.1e})", spec.name))?;
                let res = equivalent_moduli(&u, &r1, spec, tau).map_err(|e| e.to_string())?;
                ensure(res.witness.as_ref().is_some_and(|w| w.word.is_empty()), || {
                    format!("{id} {}: reduction not equivalent to input", spec.name)
                })?;
                // Random Weyl word and lattice shifts.
                let len = rng.gen_range(0..=2 * w.rank());
                let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..w.rank().max(1))).collect();
                let m: Vec<f64> = (0..spec.dim).map(|_| rng.gen_range(-3..=3) as f64).collect();
                let n: Vec<f64> = (0..spec.dim).map(|_| rng.gen_range(-3..=3) as f64).collect();
                let re: Vec<f64> = u.iter().map(|z| z.re).collect();
                let im: Vec<f64> = u.iter().map(|z| z.im).collect();
                let (wre, wim) = if w.rank() == 0 {
                    (re, im)
                } else {
                    (w.apply_word_f64(&word, &re), w.apply_word_f64(&word, &im))
                };
                let shift = spec.from_lattice_coordinates(&m, &n, tau);
                let up: Vec<Complex64> = wre
                    .iter()
                    .zip(&wim)
                    .zip(&shift)
                    .map(|((x, y), s)| Complex64::new(*x, *y) + s)
                    .collect();
                let res = equivalent_moduli(&u, &up, spec, tau).map_err(|e| e.to_string())?;
                let witness = res
                    .witness
                    .as_ref()
                    .ok_or_else(|| format!("{id} {}: no witness for a constructed pair", spec.name))?;
                ensure(verify_witness(&u, &up, spec, tau, witness).map_err(|e| e.to_string())?, || {
                    format!("{id} {}: witness does not verify", spec.name)
                })?;
                // A few unrelated pairs must be rejected after full enumeration.
                if k % 50 == 0 {
                    let a2: Vec<f64> = (0..spec.dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
                    let v = spec.from_lattice_coordinates(&a2, &b, tau);
                    let res = equivalent_moduli(&u, &v, spec, tau).map_err(|e| e.to_string())?;
                    ensure(res.equivalent == Equivalence::NotEquivalent, || {
                        format!("{id} {}: generic pair reported {:?}", spec.name, res.equivalent)
                    })?;
                    negatives += 1;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} constructed pairs over {specs} lattice choices, {negatives} generic pairs rejected"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, o: Outcome| match o {
        Ok(detail) => println!("criterion {n}: PASS — {detail}"),
        Err(detail) => {
            failed += 1;
            println!("criterion {n}: FAIL — {detail}");
        }
    };
    report(1, criterion_1());
    report(2, criterion_2());
    report(3, criterion_3());
    report(4, criterion_4());
    let (c5, c6) = criterion_5_and_6();
    report(5, c5);
    report(6, c6);
    report(7, criterion_7());
    let (c8, target) = criterion_8();
    report(8, c8);
    report(9, criterion_9());
    println!("criterion 8 target: {target}");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
