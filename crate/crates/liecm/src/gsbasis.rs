//! Graded orbit-sum bases ("generalized sin" bases), their invariant
//! pairing, duals and matrix-level checks.
//!
//! For a class automorphism `σ` of order `l` and `ω = e(1/l)`, every
//! `σ`-orbit `β_0 → β_1 → … → β_{m−1}` of root spaces with
//! `σ^j(E_{β_0}) = C_j E_{β_j}` yields, for each admissible grade `k`
//! (`ω^{km} = c_O`), the eigenvector
//!
//! ```text
//! t^k[β_0] = ν · Σ_{j<m} ω^{−kj} C_j E_{β_j},    σ t^k = ω^k t^k,
//! ```
//!
//! with `ν = 1` for the grade-0 orbits inside the invariant subalgebra `g̃₀`
//! (its Chevalley generators) and `ν = 1/√m` otherwise. The representative
//! `β_0` is the lexicographically largest root of the orbit. Graded Cartan
//! elements are `h^k[x] = √l · P_k(x)` with `P_k` the projector onto the
//! `ω^k`-eigenspace of `Λ`, applied to a type-dependent list of seed
//! vectors; the invariant Cartan subalgebra is spanned by orbit sums `ẽ_j`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::autgrade::{defining_lift, independent_subset, project_complex};
use crate::case::Case;
use crate::chevalley::Element;
use crate::rootsys::RootType;
use crate::scalars::{ExactMatrix, ExactVector};

/// Errors of basis queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GsError {
    /// Unknown label.
    #[error("label `{0}` is not in the basis")]
    UnknownLabel(String),
    /// Singular pairing.
    #[error("pairing is degenerate on the basis")]
    Degenerate,
}

/// Which part of `g` an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, PartialOrd, Ord, Hash)]
pub enum Component {
    /// Invariant subalgebra `g̃₀`.
    #[serde(rename = "g0~")]
    InvariantPart,
    /// Complement `V` of `g̃₀` in `g₀`.
    V,
    /// Nonzero grade.
    #[serde(rename = "g_k")]
    Graded,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::InvariantPart => "g0~",
            Self::V => "V",
            Self::Graded => "g_k",
        })
    }
}

/// How a basis element was built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ElementKind {
    /// Orbit sum through a root.
    Root {
        /// Representative root index.
        rep: usize,
        /// Representative root (ambient, doubles).
        root: Vec<f64>,
        /// All roots of the orbit with their coefficients `ν ω^{−kj} C_j`.
        terms: Vec<(usize, Complex64)>,
    },
    /// Graded Cartan element from a seed vector.
    GradedCartan {
        /// Seed vector (ambient).
        seed: Vec<f64>,
    },
    /// Invariant Cartan basis vector `ẽ_j` (0-based `j`).
    InvariantCartan {
        /// Index.
        j: usize,
    },
}

/// One basis element.
#[derive(Debug, Clone, Serialize)]
pub struct GradedBasisElement {
    /// Label such as `t^1[e1-e3]`, `h^1[e1]`, `e~2`.
    pub label: String,
    /// Grade `k mod l`.
    pub grade: usize,
    /// Component tag.
    pub component: Component,
    /// Construction data.
    pub kind: ElementKind,
    /// The element in the Chevalley basis.
    #[serde(skip)]
    pub element: Element,
}

/// A graded basis with its pairing and duals.
#[derive(Debug, Clone)]
pub struct GsBasis {
    /// Order `l`.
    pub order: usize,
    /// Elements in canonical order (grade, then label).
    pub elements: Vec<GradedBasisElement>,
    /// Gram matrix `(x_i, x_j)`.
    pub gram: DMatrix<Complex64>,
    /// Inverse Gram matrix: `dual(x_j) = Σ_i inv[(i, j)] x_i`.
    pub inverse: DMatrix<Complex64>,
    index: BTreeMap<String, usize>,
}

/// Largest modulus of the entries of a complex matrix.
pub fn cmax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `ω^{n} = e(n/l)`.
pub fn omega(n: i64, l: usize) -> Complex64 {
    let l = l as i64;
    Complex64::from_polar(1.0, std::f64::consts::TAU * (n.rem_euclid(l)) as f64 / l as f64)
}

fn lex_greater(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-12 {
            return x > y;
        }
    }
    false
}

/// Seed vectors for the graded Cartan elements.
fn cartan_seeds(case: &Case) -> Vec<Vec<f64>> {
    let d = &case.algebra.datum;
    let n = d.ambient_dim;
    let unit = |i: usize| {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    };
    let simple = |i: usize| d.simple_roots[i].to_f64();
    let mut seeds = match d.kind {
        RootType::E6 => vec![simple(1), unit(4)],
        RootType::E7 => {
            let mut s = vec![0.0; n];
            s[4] = 1.0;
            s[5] = 1.0;
            s[6] = 1.0;
            vec![simple(0), simple(1), s]
        }
        _ => vec![],
    };
    seeds.extend((0..n).map(unit));
    seeds.extend((0..d.rank).map(simple));
    seeds
}

fn cartan_element(case: &Case, h: Vec<Complex64>) -> Element {
    let mut x = case.algebra.zero();
    x.h = h;
    x
}

/// Build the graded basis of a case.
pub fn gs_basis(case: &Case) -> GsBasis {
    let g = &case.algebra;
    let d = &g.datum;
    let l = case.order();
    let sigma = &case.sigma;
    let mut out: Vec<GradedBasisElement> = Vec::new();
    // Root orbits.
    for orbit in &case.grading.orbits {
        let rep = *orbit
            .roots
            .iter()
            .reduce(|a, b| if lex_greater(&g.roots[*b], &g.roots[*a]) { b } else { a })
            .expect("nonempty orbit");
        let m = orbit.roots.len();
        let mut chain = Vec::with_capacity(m);
        let (mut cur, mut acc) = (rep, 1.0);
        for _ in 0..m {
            chain.push((cur, acc));
            acc *= sigma.coef[cur];
            cur = sigma.target[cur];
        }
        for &k in &orbit.grades {
            let invariant = orbit.in_invariant_part && k == 0;
            let nu = if invariant { 1.0 } else { 1.0 / (m as f64).sqrt() };
            let terms: Vec<(usize, Complex64)> = chain
                .iter()
                .enumerate()
                .map(|(j, &(r, c))| (r, omega(-((k * j) as i64), l) * c * nu))
                .collect();
            let mut x = g.zero();
            for &(r, c) in &terms {
                x.e[r] += c;
            }
            let component = if k != 0 {
                Component::Graded
            } else if invariant {
                Component::InvariantPart
            } else {
                Component::V
            };
            out.push(GradedBasisElement {
                label: format!("t^{k}[{}]", g.root_label(rep)),
                grade: k,
                component,
                kind: ElementKind::Root {
                    rep,
                    root: g.roots[rep].clone(),
                    terms,
                },
                element: x,
            });
        }
    }
    // Graded Cartan elements.
    let lam = case.lambda.ambient_f64();
    let n = d.ambient_dim;
    let powers: Vec<DMatrix<f64>> = (0..l)
        .scan(DMatrix::identity(n, n), |acc, _| {
            let cur = acc.clone();
            *acc = &lam * &*acc;
            Some(cur)
        })
        .collect();
    let seeds = cartan_seeds(case);
    for k in 1..l {
        let want = case.grading.cartan[k].len();
        let cands: Vec<(Vec<f64>, Vec<Complex64>)> = seeds
            .iter()
            .map(|s| {
                let mut v = vec![Complex64::new(0.0, 0.0); n];
                for (j, pw) in powers.iter().enumerate() {
                    let ph = omega(-((k * j) as i64), l) / (l as f64).sqrt();
                    let img = pw * nalgebra::DVector::from_column_slice(s);
                    for (vr, x) in v.iter_mut().zip(img.iter()) {
                        *vr += ph * *x;
                    }
                }
                (s.clone(), project_complex(d, &v))
            })
            .collect();
        let mut kept: Vec<Vec<Complex64>> = Vec::new();
        for (seed, v) in cands {
            if kept.len() == want {
                break;
            }
            let mut trial = kept.clone();
            trial.push(v.clone());
            if independent_subset(trial.clone(), 1e-9).len() == trial.len() {
                kept = trial;
                let label = seed_label(case, &seed);
                out.push(GradedBasisElement {
                    label: format!("h^{k}[{label}]"),
                    grade: k,
                    component: Component::Graded,
                    kind: ElementKind::GradedCartan { seed },
                    element: cartan_element(case, v),
                });
            }
        }
        assert_eq!(kept.len(), want, "graded Cartan basis of grade {k}");
    }
    // Invariant Cartan subalgebra.
    let mut fixed: Vec<ExactVector> = Vec::new();
    for b in &case.cartan.basis {
        let pb = d.project_to_cartan(b);
        let mut trial = fixed.clone();
        trial.push(pb);
        if ExactMatrix::from_columns(&trial).rank() == trial.len() {
            fixed = trial;
        }
    }
    for (j, v) in fixed.iter().enumerate() {
        let h: Vec<Complex64> = v.to_f64().into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        out.push(GradedBasisElement {
            label: format!("e~{}", j + 1),
            grade: 0,
            component: Component::InvariantPart,
            kind: ElementKind::InvariantCartan { j },
            element: cartan_element(case, h),
        });
    }
    out.sort_by(|a, b| (a.grade, &a.label).cmp(&(b.grade, &b.label)));
    let dim = out.len();
    let gram = DMatrix::from_fn(dim, dim, |i, j| g.pairing(&out[i].element, &out[j].element));
    let inverse = gram.clone().try_inverse().unwrap_or_else(|| DMatrix::zeros(dim, dim));
    let index = out.iter().enumerate().map(|(i, e)| (e.label.clone(), i)).collect();
    GsBasis {
        order: l,
        elements: out,
        gram,
        inverse,
        index,
    }
}

/// Short label for a Cartan seed: `e5`, `a2` (simple root) or a vector.
fn seed_label(case: &Case, seed: &[f64]) -> String {
    let d = &case.algebra.datum;
    let nz: Vec<usize> = (0..seed.len()).filter(|&i| seed[i].abs() > 1e-12).collect();
    if nz.len() == 1 && (seed[nz[0]] - 1.0).abs() < 1e-12 {
        return format!("e{}", nz[0] + 1);
    }
    for i in 0..d.rank {
        let s = d.simple_roots[i].to_f64();
        if s.iter().zip(seed).all(|(a, b)| (a - b).abs() < 1e-12) {
            return format!("a{}", i + 1);
        }
    }
    nz.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("+")
}

impl GsBasis {
    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Whether the basis is empty.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position of a label.
    pub fn position(&self, label: &str) -> Result<usize, GsError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GsError::UnknownLabel(label.to_string()))
    }

    /// Element by label.
    pub fn get(&self, label: &str) -> Result<&GradedBasisElement, GsError> {
        Ok(&self.elements[self.position(label)?])
    }

    /// Elements of a given grade.
    pub fn of_grade(&self, k: usize) -> impl Iterator<Item = (usize, &GradedBasisElement)> {
        self.elements.iter().enumerate().filter(move |(_, e)| e.grade == k)
    }

    /// Whether the pairing is nondegenerate.
    pub fn nondegenerate(&self) -> bool {
        let id = &self.gram * &self.inverse;
        cmax(&(id - DMatrix::identity(self.len(), self.len()))) < 1e-9
    }

    /// Pairing of two labelled elements.
    pub fn pairing(&self, x: &str, y: &str) -> Result<Complex64, GsError> {
        Ok(self.gram[(self.position(x)?, self.position(y)?)])
    }

    /// Dual element of `y` as coefficients over the basis (nonzero only).
    pub fn dual(&self, y: &str) -> Result<Vec<(String, Complex64)>, GsError> {
        if !self.nondegenerate() {
            return Err(GsError::Degenerate);
        }
        let j = self.position(y)?;
        Ok((0..self.len())
            .filter(|&i| self.inverse[(i, j)].norm() > 1e-12)
            .map(|i| (self.elements[i].label.clone(), self.inverse[(i, j)]))
            .collect())
    }

    /// Nonzero pairing entries as triplets.
    pub fn pairing_table(&self) -> Vec<(String, String, Complex64)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                let v = self.gram[(i, j)];
                if v.norm() > 1e-12 {
                    out.push((self.elements[i].label.clone(), self.elements[j].label.clone(), v));
                }
            }
        }
        out
    }

    /// Grades by component: `(#g̃₀, #V, dims per grade)`.
    pub fn bookkeeping(&self) -> (usize, usize, Vec<usize>) {
        let mut dims = vec![0; self.order];
        let (mut g0, mut v) = (0, 0);
        for e in &self.elements {
            dims[e.grade] += 1;
            match e.component {
                Component::InvariantPart => g0 += 1,
                Component::V => v += 1,
                Component::Graded => {}
            }
        }
        (g0, v, dims)
    }

    /// JSON dump: labels, grades, components and sparse pairing table.
    pub fn to_json(&self, case: &Case, with_matrices: bool) -> serde_json::Value {
        let elems: Vec<serde_json::Value> = self
            .elements
            .iter()
            .map(|e| {
                let mut j = serde_json::json!({
                    "label": e.label,
                    "grade": e.grade,
                    "component": e.component.to_string(),
                });
                if with_matrices {
                    if let Ok(m) = case.algebra.materialize(&e.element) {
                        let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
                            .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
                            .collect();
                        j["matrix"] = serde_json::json!(rows);
                    }
                }
                j
            })
            .collect();
        let table: Vec<serde_json::Value> = self
            .pairing_table()
            .into_iter()
            .map(|(a, b, v)| serde_json::json!([a, b, [v.re, v.im]]))
            .collect();
        serde_json::json!({
            "case": case.id,
            "order": self.order,
            "dim": self.len(),
            "elements": elems,
            "pairing": table,
        })
    }
}

/// Matrix-level verification report.
#[derive(Debug, Clone, Serialize, Default)]
pub struct StructureReport {
    /// `max |M X M⁻¹ − ω^k X|` over the basis.
    pub eigen_residual: f64,
    /// `max |M [X,Y] M⁻¹ − ω^{k_x+k_y}[X,Y]|` over all pairs.
    pub closure_residual: f64,
    /// `max |(x,y) − c·tr XY|` over all pairs.
    pub trace_residual: f64,
    /// `max |[x,y]_abstract − [X,Y]|` (abstract bracket vs matrices).
    pub bracket_residual: f64,
    /// Number of pairs checked.
    pub pairs: usize,
}

/// Matrix checks for classical cases: eigenvalues under `Ad(M)`, grading
/// closure, pairing against the trace form, and abstract vs matrix brackets.
pub fn gs_structure_check(case: &Case, basis: &GsBasis) -> Result<StructureReport, crate::chevalley::ChevalleyError> {
    let g = &case.algebra;
    let rep = g
        .matrices
        .as_ref()
        .ok_or_else(|| crate::chevalley::ChevalleyError::NotMaterialized(g.datum.name()))?;
    let n = rep.dim;
    let (m, mi) = if case.is_trivial() {
        (DMatrix::<Complex64>::identity(n, n), DMatrix::<Complex64>::identity(n, n))
    } else {
        let mf = defining_lift(g, &case.lambda).expect("classical lift");
        let mi = mf.clone().try_inverse().expect("invertible lift");
        (mf.map(|x| Complex64::new(x, 0.0)), mi.map(|x| Complex64::new(x, 0.0)))
    };
    let l = case.order();
    let mats: Vec<DMatrix<Complex64>> = basis
        .elements
        .iter()
        .map(|e| g.materialize(&e.element))
        .collect::<Result<_, _>>()?;
    let mut r = StructureReport::default();
    for (e, x) in basis.elements.iter().zip(&mats) {
        let y = &m * x * &mi - x * omega(e.grade as i64, l);
        r.eigen_residual = r.eigen_residual.max(cmax(&y));
    }
    for i in 0..mats.len() {
        for j in 0..mats.len() {
            let (x, y) = (&mats[i], &mats[j]);
            let tr = (x * y).trace() * rep.trace_factor;
            r.trace_residual = r.trace_residual.max((tr - basis.gram[(i, j)]).norm());
            if j < i {
                continue;
            }
            let c = x * y - y * x;
            let k = (basis.elements[i].grade + basis.elements[j].grade) as i64;
            let res = &m * &c * &mi - &c * omega(k, l);
            r.closure_residual = r.closure_residual.max(cmax(&res));
            let ab = g.materialize(&g.bracket(&basis.elements[i].element, &basis.elements[j].element))?;
            r.bracket_residual = r.bracket_residual.max(cmax(&(ab - c)));
            r.pairs += 1;
        }
    }
    Ok(r)
}

/// Printed generalized sin basis of `sl(N)`, `N = pl`, built directly as
/// matrices: `t^c_{s,k} = l^{−½} Σ_m ω_N^{mpc} E_{s+mp, s+k+mp}`,
/// `h^c_j = l^{−½} Σ_m ω_N^{mpc} e_{j+mp}`, `ẽ_k = Σ_m e_{k+mp}` (indices mod N,
/// 1-based).
pub mod sl_printed {
    use super::*;

    fn idx(i: i64, n: usize) -> usize {
        (i - 1).rem_euclid(n as i64) as usize
    }

    fn wn(x: i64, n: usize) -> Complex64 {
        omega(x, n)
    }

    /// `t^c_{s,k}`.
    pub fn t(n: usize, p: usize, c: i64, s: i64, k: i64) -> DMatrix<Complex64> {
        let l = n / p;
        let mut m = DMatrix::zeros(n, n);
        for mm in 0..l as i64 {
            let r = idx(s + mm * p as i64, n);
            let col = idx(s + k + mm * p as i64, n);
            m[(r, col)] += wn(mm * p as i64 * c, n) / (l as f64).sqrt();
        }
        m
    }

    /// `h^c_j`.
    pub fn h(n: usize, p: usize, c: i64, j: i64) -> DMatrix<Complex64> {
        let l = n / p;
        let mut m = DMatrix::zeros(n, n);
        for mm in 0..l as i64 {
            let r = idx(j + mm * p as i64, n);
            m[(r, r)] += wn(mm * p as i64 * c, n) / (l as f64).sqrt();
        }
        m
    }

    /// `ẽ_k`.
    pub fn e_tilde(n: usize, p: usize, k: i64) -> DMatrix<Complex64> {
        let l = n / p;
        let mut m = DMatrix::zeros(n, n);
        for mm in 0..l as i64 {
            let r = idx(k + mm * p as i64, n);
            m[(r, r)] += Complex64::new(1.0, 0.0);
        }
        m
    }

    fn delta_mod(a: i64, b: i64, p: usize) -> bool {
        (a - b).rem_euclid(p as i64) == 0
    }

    /// Right-hand side of the general commutation relation
    /// `[t^{c1}_{i,a}, t^{c2}_{j,b}] = l^{−½}(ω^{(i−j+a)c2} δ_{j,i+a} t^{c1+c2}_{i,a+b}
    ///  − ω^{(j−i+b)c1} δ_{i,j+b} t^{c1+c2}_{j,a+b})` (`δ` mod `p`, `ω = e(1/N)`).
    pub fn scr_rhs(n: usize, p: usize, (c1, i, a): (i64, i64, i64), (c2, j, b): (i64, i64, i64)) -> DMatrix<Complex64> {
        let l = n / p;
        let mut out = DMatrix::zeros(n, n);
        if delta_mod(j, i + a, p) {
            out += t(n, p, c1 + c2, i, a + b) * wn((i - j + a) * c2, n);
        }
        if delta_mod(i, j + b, p) {
            out -= t(n, p, c1 + c2, j, a + b) * wn((j - i + b) * c1, n);
        }
        out * Complex64::new(1.0 / (l as f64).sqrt(), 0.0)
    }

    /// Right-hand side of `[h^{c1}_i, t^{c2}_{j,b}] = l^{−½}(ω^{(i−j)c2} δ_{j,i}
    /// t^{c1+c2}_{i,b} − ω^{(j−i+b)c1} δ_{i,j+b} t^{c1+c2}_{j,b})`.
    pub fn scr2_rhs(n: usize, p: usize, (c1, i): (i64, i64), (c2, j, b): (i64, i64, i64)) -> DMatrix<Complex64> {
        let l = n / p;
        let mut out = DMatrix::zeros(n, n);
        if delta_mod(j, i, p) {
            out += t(n, p, c1 + c2, i, b) * wn((i - j) * c2, n);
        }
        if delta_mod(i, j + b, p) {
            out -= t(n, p, c1 + c2, j, b) * wn((j - i + b) * c1, n);
        }
        out * Complex64::new(1.0 / (l as f64).sqrt(), 0.0)
    }

    /// Residuals of the printed relations over all index choices:
    /// `(scr, scr1, scr2, [ẽ, Ẽ], zero-Cartan)`; `scr1` is read as
    /// `[ẽ_k, t^c_{i,a}] = (δ_{k,i} − δ_{k,i+a}) t^c_{i,a}` (mod `p`).
    pub fn relation_residuals(n: usize, p: usize) -> [f64; 5] {
        let l = (n / p) as i64;
        let comm = |x: &DMatrix<Complex64>, y: &DMatrix<Complex64>| x * y - y * x;
        let mut res = [0.0f64; 5];
        let (pi, ni) = (p as i64, n as i64);
        for c1 in 0..l {
            for c2 in 0..l {
                for i in 1..=pi {
                    for j in 1..=pi {
                        for a in 1..ni {
                            let x = t(n, p, c1, i, a);
                            for b in 1..ni {
                                let y = t(n, p, c2, j, b);
                                let lhs = comm(&x, &y);
                                if (a + b) % ni != 0 {
                                    let rhs = scr_rhs(n, p, (c1, i, a), (c2, j, b));
                                    res[0] = res[0].max(cmax(&(lhs - rhs)));
                                }
                            }
                        }
                    }
                }
            }
        }
        for c1 in 1..l {
            for c2 in 0..l {
                for i in 1..=pi {
                    for j in 1..=pi {
                        for b in 1..ni {
                            let lhs = comm(&h(n, p, c1, i), &t(n, p, c2, j, b));
                            let rhs = scr2_rhs(n, p, (c1, i), (c2, j, b));
                            res[2] = res[2].max(cmax(&(lhs - rhs)));
                        }
                    }
                }
            }
        }
        for k in 1..=pi {
            for c in 0..l {
                for i in 1..=pi {
                    for a in 1..ni {
                        let x = t(n, p, c, i, a);
                        let lhs = comm(&e_tilde(n, p, k), &x);
                        let f = f64::from(u8::from(delta_mod(k, i, p))) - f64::from(u8::from(delta_mod(k, i + a, p)));
                        res[1] = res[1].max(cmax(&(lhs - x * Complex64::new(f, 0.0))));
                    }
                }
            }
            // [ẽ_k, Ẽ_{i,a}] with Ẽ_{i,a} = √l t^0_{i,a}, a = 1..p−1.
            for i in 1..=pi {
                for a in 1..pi {
                    let e = t(n, p, 0, i, a) * Complex64::new((l as f64).sqrt(), 0.0);
                    let lhs = comm(&e_tilde(n, p, k), &e);
                    let f = f64::from(u8::from(delta_mod(k, i, p))) - f64::from(u8::from(delta_mod(k, i + a, p)));
                    res[3] = res[3].max(cmax(&(lhs - e * Complex64::new(f, 0.0))));
                }
            }
        }
        for c1 in 1..l {
            for c2 in 1..l {
                for i in 1..=pi {
                    for j in 1..=pi {
                        res[4] = res[4].max(cmax(&comm(&h(n, p, c1, i), &h(n, p, c2, j))));
                    }
                }
            }
        }
        res
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_p3_counts_and_pairing() {
        let case = Case::from_parts("A", 5, "p3").unwrap();
        let b = gs_basis(&case);
        assert_eq!(b.len(), 35);
        let (g0, v, dims) = b.bookkeeping();
        assert_eq!(dims, vec![17, 18]);
        assert_eq!((g0, v), (8, 9));
        assert!(b.nondegenerate());
        let r = gs_structure_check(&case, &b).unwrap();
        assert!(r.eigen_residual < 1e-12 && r.closure_residual < 1e-12, "{r:?}");
        assert!(r.trace_residual < 1e-12 && r.bracket_residual < 1e-12, "{r:?}");
    }

    #[test]
    fn e6_cartan_pairing_of_alpha2_elements() {
        let case = Case::from_parts("E6", 6, "w1").unwrap();
        let b = gs_basis(&case);
        assert_eq!(b.bookkeeping().2, vec![30, 24, 24]);
        let v = b.pairing("h^1[a2]", "h^2[a2]").unwrap();
        assert!((v - 2.0).norm() < 1e-12, "{v}");
    }
}
