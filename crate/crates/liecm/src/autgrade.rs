//! Characteristic-class automorphisms and the gradings they induce.
//!
//! A center element `ζ = e(ϖ_j∨)` (with `ϖ_j∨` a minuscule coweight, i.e.
//! the mark `a_j` equals 1) determines the symmetry of the fundamental
//! alcove sending the vertex `ϖ_j∨` to the origin. Its linear part is the
//! Weyl group element `Λ = w_0 · w_0^{(j)}`, where `w_0^{(j)}` is the longest
//! element of the parabolic subgroup omitting `s_j`. `Λ` permutes the
//! extended simple roots `α_0, …, α_r`, and lifts to the canonical Lie algebra
//! automorphism `σ` that permutes the extended Chevalley generators
//! `E_{α_i}` (with `E_{α_0} = E_{−θ}`) with coefficient one.
//!
//! `σ` has the order `l` of the class and grades the algebra into
//! `ω^k`-eigenspaces, `ω = e(1/l)`; root-space orbits of length `m` with
//! orbit sign `c` carry the grades `k` with `ω^{km} = c`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::{Element, LieAlgebra};
use crate::rootsys::{identify_cartan, CartanComponent, RootDatum, RootError, RootType};
use crate::scalars::{ExactMatrix, ExactVector, QSqrt2};

/// Errors raised while building automorphisms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AutError {
    /// The coweight does not represent a center element.
    #[error("ϖ_{0}∨ has mark {1}; only minuscule coweights represent center elements")]
    NotCentral(usize, i64),
    /// Selector out of range or malformed.
    #[error("invalid class selector `{0}`")]
    BadSelector(String),
    /// Matrix data unavailable for the type.
    #[error("{0}: not materialized")]
    NotMaterialized(String),
    /// Root data failure.
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Symbolic class selector: `trivial`, `wn`, `w<j>`, or `p<p>` (`sl(N)`:
/// the class of `ϖ_{N−p}∨`, of order `N/p`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassSelector {
    /// Trivial class.
    Trivial,
    /// `ϖ_r∨` for the last node.
    Last,
    /// `ϖ_j∨` (1-based).
    Coweight(usize),
    /// `sl(N)` divisor selector.
    Divisor(usize),
}

impl FromStr for ClassSelector {
    type Err = AutError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "trivial" | "0" | "id" | "none" => return Ok(Self::Trivial),
            "wn" => return Ok(Self::Last),
            _ => {}
        }
        let bad = || AutError::BadSelector(s.to_string());
        if let Some(j) = t.strip_prefix('w') {
            return j.parse().map(Self::Coweight).map_err(|_| bad());
        }
        if let Some(p) = t.strip_prefix('p') {
            return p.parse().map(Self::Divisor).map_err(|_| bad());
        }
        Err(bad())
    }
}

impl fmt::Display for ClassSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Trivial => write!(f, "trivial"),
            Self::Last => write!(f, "wn"),
            Self::Coweight(j) => write!(f, "w{j}"),
            Self::Divisor(p) => write!(f, "p{p}"),
        }
    }
}

impl ClassSelector {
    /// The 1-based coweight index selected (`None` for the trivial class).
    pub fn resolve(&self, datum: &RootDatum) -> Result<Option<usize>, AutError> {
        let r = datum.rank;
        let j = match *self {
            Self::Trivial => return Ok(None),
            Self::Last => r,
            Self::Coweight(j) => j,
            Self::Divisor(p) => {
                let n = r + 1;
                if datum.kind != RootType::A || p == 0 || p >= n || !n.is_multiple_of(p) {
                    return Err(AutError::BadSelector(self.to_string()));
                }
                n - p
            }
        };
        if j == 0 || j > r {
            return Err(AutError::BadSelector(self.to_string()));
        }
        Ok(Some(j))
    }
}

/// Symmetry of the extended Dynkin diagram attached to a center element.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramAutomorphism {
    /// Type name of the algebra.
    pub algebra: String,
    /// Selector used to build it.
    pub class: String,
    /// 1-based coweight index (0 for the trivial class).
    pub xi_index: usize,
    /// The coweight `ξ`.
    pub xi: ExactVector,
    /// Order `l`.
    pub order: usize,
    /// `node_perm[i] = π(i)` on extended nodes `0..=r` (`Λα_i = α_{π(i)}`).
    pub node_perm: Vec<usize>,
    /// Image of alcove vertex `i` (index 0 is the origin) under `x ↦ Λ(x − ξ)`.
    pub vertex_perm: Vec<usize>,
    /// Ambient orthogonal matrix `Λ`.
    pub ambient: ExactMatrix,
    /// Weyl word of `Λ` (rightmost letter acts first).
    pub word: Vec<usize>,
}

fn perm_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut ord = 1usize;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        ord = num_integer::lcm(ord, len);
    }
    ord
}

/// Build `λ_ξ` for the class selected (identity for the trivial class).
pub fn lambda_from_xi(datum: &RootDatum, class: &ClassSelector) -> Result<DiagramAutomorphism, AutError> {
    let r = datum.rank;
    let weyl = datum.weyl();
    let (xi_index, xi, word) = match class.resolve(datum)? {
        None => (0, ExactVector::zeros(datum.ambient_dim), Vec::new()),
        Some(j) => {
            let mark = datum.marks[j - 1];
            if mark != 1 {
                return Err(AutError::NotCentral(j, mark));
            }
            let others: Vec<usize> = (0..r).filter(|&i| i != j - 1).collect();
            let mut word = weyl.longest_word(None);
            word.extend(weyl.longest_word(Some(&others)));
            (j, datum.fundamental_coweights[j - 1].clone(), word)
        }
    };
    let ambient = weyl.matrix(&word);
    let ext = datum.extended_simple_roots();
    let node_perm: Vec<usize> = ext
        .iter()
        .map(|a| {
            let img = ambient.apply(a);
            ext.iter().position(|b| *b == img).expect("Λ permutes the extended simple roots")
        })
        .collect();
    let verts = datum.alcove_vertices();
    let vertex_perm: Vec<usize> = verts
        .iter()
        .map(|v| {
            let img = ambient.apply(&(v - &xi));
            verts
                .iter()
                .position(|b| *b == img)
                .expect("the alcove symmetry permutes the vertices")
        })
        .collect();
    Ok(DiagramAutomorphism {
        algebra: datum.name(),
        class: class.to_string(),
        xi_index,
        xi,
        order: perm_order(&node_perm),
        node_perm,
        vertex_perm,
        ambient,
        word,
    })
}

impl DiagramAutomorphism {
    /// Whether the node permutation preserves the extended Cartan matrix.
    pub fn preserves_extended_cartan(&self, datum: &RootDatum) -> bool {
        let m = datum.extended_cartan_matrix();
        let p = &self.node_perm;
        (0..m.len()).all(|i| (0..m.len()).all(|j| m[p[i]][p[j]] == m[i][j]))
    }

    /// `Λ^k` exactly.
    pub fn power(&self, k: usize) -> ExactMatrix {
        let mut out = ExactMatrix::identity(self.ambient.nrows());
        for _ in 0..k {
            out = self.ambient.mul(&out);
        }
        out
    }

    /// Ambient matrix as doubles.
    pub fn ambient_f64(&self) -> DMatrix<f64> {
        let n = self.ambient.nrows();
        DMatrix::from_fn(n, n, |i, j| self.ambient.rows[i][j].to_f64())
    }

    /// JSON description.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "algebra": self.algebra,
            "class": self.class,
            "xi_index": self.xi_index,
            "xi": self.xi,
            "order": self.order,
            "node_perm": self.node_perm,
            "vertex_perm": self.vertex_perm,
            "ambient": self.ambient.rows,
            "word": self.word,
        })
    }
}

/// Lie algebra automorphism `σ`: `h ↦ Λh`, `E_α ↦ c_α E_{Λα}`.
#[derive(Debug, Clone)]
pub struct LieAutomorphism {
    /// Root index of `Λα` for every root `α`.
    pub target: Vec<usize>,
    /// Coefficient `c_α`.
    pub coef: Vec<f64>,
    /// `Λ` as doubles.
    pub cartan: DMatrix<f64>,
}

impl LieAutomorphism {
    /// Canonical lift of a diagram automorphism.
    pub fn canonical(g: &LieAlgebra, lam: &DiagramAutomorphism) -> Self {
        let d = &g.datum;
        let all = d.roots();
        let nr = all.len();
        let p = d.num_positive();
        let target: Vec<usize> = all
            .iter()
            .map(|a| d.root_index(&lam.ambient.apply(a)).expect("Λ permutes roots"))
            .collect();
        let mut coef = vec![0.0; nr];
        let simple: Vec<usize> = (0..d.rank)
            .map(|i| d.root_index(&d.simple_roots[i]).expect("simple root"))
            .collect();
        for &s in &simple {
            coef[s] = 1.0;
            coef[d.neg_index(s)] = 1.0;
        }
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by_key(|&i| d.positive_coords[i].iter().sum::<i64>());
        for &gamma in &order {
            if simple.contains(&gamma) {
                continue;
            }
            for sign in [false, true] {
                let gi = if sign { d.neg_index(gamma) } else { gamma };
                let (si, rest) = simple
                    .iter()
                    .find_map(|&s| {
                        let si = if sign { d.neg_index(s) } else { s };
                        g.root_sum(gi, d.neg_index(si)).map(|rest| (si, rest))
                    })
                    .expect("non-simple root splits off a simple root");
                let n0 = g.structure_constant(si, rest);
                let n1 = g.structure_constant(target[si], target[rest]);
                coef[gi] = coef[si] * coef[rest] * n1 / n0;
            }
        }
        Self {
            target,
            coef,
            cartan: lam.ambient_f64(),
        }
    }

    /// Lift realised as `Ad(M)` for a matrix `M` on the defining
    /// representation inducing `Λ` on the weights.
    pub fn from_matrix(g: &LieAlgebra, lam: &DiagramAutomorphism, m: &DMatrix<f64>) -> Result<Self, AutError> {
        let rep = g
            .matrices
            .as_ref()
            .ok_or_else(|| AutError::NotMaterialized(g.datum.name()))?;
        let d = &g.datum;
        let mi = m.clone().try_inverse().ok_or(AutError::NotMaterialized("singular lift".into()))?;
        let mut target = Vec::with_capacity(g.num_roots());
        let mut coef = Vec::with_capacity(g.num_roots());
        for (a, ea) in d.roots().iter().enumerate() {
            let t = d.root_index(&lam.ambient.apply(ea)).expect("Λ permutes roots");
            let x = m * rep.root_mats[a].map(|v| v as f64) * &mi;
            let et = rep.root_mats[t].map(|v| v as f64);
            let c = x.dot(&et) / et.dot(&et);
            if (x - et * c).amax() > 1e-9 {
                return Err(AutError::NotMaterialized(format!("{}: matrix does not induce Λ", d.name())));
            }
            target.push(t);
            coef.push(c);
        }
        Ok(Self {
            target,
            coef,
            cartan: lam.ambient_f64(),
        })
    }

    /// Standard lift: `Ad` of [`defining_lift`] for the classical series,
    /// the canonical lift for the exceptional ones.
    pub fn standard(g: &LieAlgebra, lam: &DiagramAutomorphism) -> Self {
        match defining_lift(g, lam) {
            Ok(m) => Self::from_matrix(g, lam, &m).expect("defining lift induces Λ"),
            Err(_) => Self::canonical(g, lam),
        }
    }

    /// Identity automorphism.
    pub fn identity(g: &LieAlgebra) -> Self {
        let n = g.ambient_dim();
        Self {
            target: (0..g.num_roots()).collect(),
            coef: vec![1.0; g.num_roots()],
            cartan: DMatrix::identity(n, n),
        }
    }

    /// Apply to an element.
    pub fn apply(&self, x: &Element) -> Element {
        let n = x.h.len();
        let mut out = Element::zero(n, x.e.len());
        for i in 0..n {
            out.h[i] = (0..n).map(|j| x.h[j] * self.cartan[(i, j)]).sum();
        }
        for (a, c) in x.e.iter().enumerate() {
            out.e[self.target[a]] += c * self.coef[a];
        }
        out
    }

    /// Largest violation of `σ[E_a, E_b] = [σE_a, σE_b]` over all root pairs.
    pub fn homomorphism_residual(&self, g: &LieAlgebra) -> f64 {
        let nr = g.num_roots();
        let mut worst: f64 = 0.0;
        for a in 0..nr {
            let b = g.datum.neg_index(a);
            worst = worst.max((self.coef[a] * self.coef[b] - 1.0).abs());
            for b in 0..nr {
                if let Some(c) = g.root_sum(a, b) {
                    let lhs = g.structure_constant(a, b) * self.coef[c];
                    let rhs = self.coef[a] * self.coef[b] * g.structure_constant(self.target[a], self.target[b]);
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
        worst
    }
}

/// One `σ`-orbit of root spaces.
#[derive(Debug, Clone, Serialize)]
pub struct RootOrbit {
    /// Root indices `β, Λβ, Λ²β, …` (representative first: smallest index).
    pub roots: Vec<usize>,
    /// `σ^j(E_β) = coefs[j]·E_{Λ^jβ}`.
    pub coefs: Vec<f64>,
    /// Orbit sign `c_O` with `σ^m(E_β) = c_O E_β`.
    pub sign: f64,
    /// Grades `k (mod l)` carried by the orbit.
    pub grades: Vec<usize>,
    /// Whether the orbit lies in the root system spanned by `Π₁`.
    pub in_invariant_part: bool,
}

/// Grading of `g` by a class automorphism.
#[derive(Debug, Clone, Serialize)]
pub struct Grading {
    /// Order `l`.
    pub order: usize,
    /// Root-space orbits.
    pub orbits: Vec<RootOrbit>,
    /// Basis of each Cartan eigenspace (ambient coordinates, grade `k`).
    pub cartan: Vec<Vec<Vec<Complex64>>>,
    /// `dim g_k`.
    pub dims: Vec<usize>,
    /// `Π₁`: 1-based simple roots outside the `π`-orbit of `α_0`.
    pub pi1: Vec<usize>,
    /// `dim g̃₀`.
    pub g0_tilde_dim: usize,
    /// `dim V`.
    pub v_dim: usize,
}

/// Numerically independent subset (Gram–Schmidt with tolerance), keeping the
/// original vectors.
pub(crate) fn independent_subset(vectors: Vec<Vec<Complex64>>, tol: f64) -> Vec<Vec<Complex64>> {
    let mut ortho: Vec<Vec<Complex64>> = Vec::new();
    let mut kept = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for o in &ortho {
            let proj: Complex64 = o.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
            for (wi, oi) in w.iter_mut().zip(o) {
                *wi -= proj * oi;
            }
        }
        let n: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > tol {
            ortho.push(w.iter().map(|x| x / n).collect());
            kept.push(v);
        }
    }
    kept
}

/// Scale so the coordinate of largest modulus becomes exactly 1.
pub(crate) fn normalize_max(v: &[Complex64]) -> Vec<Complex64> {
    let piv = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite"))
        .unwrap_or(Complex64::one());
    // Prefer the first coordinate attaining the maximum, for determinism.
    let m = piv.norm();
    let first = v.iter().copied().find(|x| (x.norm() - m).abs() < 1e-12).unwrap_or(piv);
    v.iter().map(|x| x / first).collect()
}

/// Project a complex ambient vector onto the span of the roots.
pub(crate) fn project_complex(datum: &RootDatum, x: &[Complex64]) -> Vec<Complex64> {
    let mut out = x.to_vec();
    for c in &datum.ambient_constraints {
        let cf = c.to_f64();
        let n2: f64 = cf.iter().map(|v| v * v).sum();
        let f: Complex64 = out.iter().zip(&cf).map(|(a, b)| a * b).sum::<Complex64>() / n2;
        for (o, b) in out.iter_mut().zip(&cf) {
            *o -= f * b;
        }
    }
    out
}

/// Cartan eigenspace bases by twisted orbit sums of the ambient unit vectors.
fn cartan_eigenbases(datum: &RootDatum, lam: &DMatrix<f64>, l: usize) -> Vec<Vec<Vec<Complex64>>> {
    let n = datum.ambient_dim;
    let omega = |x: f64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x);
    let powers: Vec<DMatrix<f64>> = (0..l)
        .scan(DMatrix::identity(n, n), |acc, _| {
            let cur = acc.clone();
            *acc = lam * &*acc;
            Some(cur)
        })
        .collect();
    (0..l)
        .map(|k| {
            let cands: Vec<Vec<Complex64>> = (0..n)
                .map(|i| {
                    let mut v = vec![Complex64::zero(); n];
                    for (j, pw) in powers.iter().enumerate() {
                        let ph = omega(-((k * j) as f64) / l as f64);
                        for (r, vr) in v.iter_mut().enumerate() {
                            *vr += ph * pw[(r, i)];
                        }
                    }
                    project_complex(datum, &v)
                })
                .collect();
            independent_subset(cands, 1e-9).iter().map(|v| normalize_max(v)).collect()
        })
        .collect()
}

/// Orbit decomposition and graded dimensions.
pub fn grading(g: &LieAlgebra, lam: &DiagramAutomorphism, sigma: &LieAutomorphism) -> Grading {
    let d = &g.datum;
    let l = lam.order;
    let nr = g.num_roots();
    // Π₁: simple roots outside the π-orbit of α_0.
    let mut orbit0 = BTreeSet::new();
    let mut x = 0usize;
    loop {
        orbit0.insert(x);
        x = lam.node_perm[x];
        if x == 0 {
            break;
        }
    }
    let pi1: Vec<usize> = (1..=d.rank).filter(|i| !orbit0.contains(i)).collect();
    let in_pi1 = |i: usize| {
        d.root_coords(i)
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || pi1.contains(&(k + 1)))
    };
    let mut seen = vec![false; nr];
    let mut orbits = Vec::new();
    for start in 0..nr {
        if seen[start] {
            continue;
        }
        let mut roots = vec![start];
        let mut coefs = vec![1.0];
        seen[start] = true;
        let mut cur = start;
        let mut acc = 1.0;
        loop {
            acc *= sigma.coef[cur];
            cur = sigma.target[cur];
            if cur == start {
                break;
            }
            seen[cur] = true;
            roots.push(cur);
            coefs.push(acc);
        }
        let m = roots.len();
        let grades: Vec<usize> = (0..l)
            .filter(|&k| {
                // ω^{km} = c_O with ω = e(1/l), c_O = ±1.
                let e = (k * m) % l;
                if acc > 0.0 {
                    e == 0
                } else {
                    2 * e == l
                }
            })
            .collect();
        orbits.push(RootOrbit {
            in_invariant_part: in_pi1(start),
            roots,
            coefs,
            sign: acc,
            grades,
        });
    }
    let cartan = cartan_eigenbases(d, &sigma.cartan, l);
    let mut dims: Vec<usize> = cartan.iter().map(Vec::len).collect();
    for o in &orbits {
        for &k in &o.grades {
            dims[k] += 1;
        }
    }
    let g0_tilde_dim = cartan[0].len()
        + orbits
            .iter()
            .filter(|o| o.in_invariant_part && o.grades.contains(&0))
            .count();
    let v_dim = dims[0] - g0_tilde_dim;
    Grading {
        order: l,
        orbits,
        cartan,
        dims,
        pi1,
        g0_tilde_dim,
        v_dim,
    }
}

/// Root data of the invariant subalgebra `g̃₀`.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantSubalgebra {
    /// Simple roots `α̃_j` (projections onto the fixed Cartan).
    pub simple_roots: Vec<ExactVector>,
    /// Simple coroots `α̃_j∨ = 2α̃_j/|α̃_j|²`.
    pub simple_coroots: Vec<ExactVector>,
    /// Cartan matrix `⟨α̃_i∨, α̃_j⟩`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Identified simple components (empty for an abelian `g̃₀`).
    pub components: Vec<CartanComponent>,
    /// Number of roots of `g̃₀`.
    pub num_roots: usize,
    /// Dimension of the fixed Cartan subalgebra.
    pub cartan_dim: usize,
}

impl InvariantSubalgebra {
    /// Type string such as `G2`, `B2`, `A1+A1` (empty string if abelian).
    pub fn type_name(&self) -> String {
        self.components
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Orbit average `(1/m) Σ Λ^j β` of a root, exactly.
fn orbit_average(lam: &DiagramAutomorphism, beta: &ExactVector) -> ExactVector {
    let mut acc = ExactVector::zeros(beta.dim());
    let mut cur = beta.clone();
    for _ in 0..lam.order {
        acc = &acc + &cur;
        cur = lam.ambient.apply(&cur);
    }
    acc.scale(&(QSqrt2::one() / QSqrt2::int(lam.order as i64)))
}

/// Invariant subalgebra: restricted roots of the grade-0 orbits in `R(Π₁)`.
pub fn invariant_subalgebra(g: &LieAlgebra, lam: &DiagramAutomorphism, gr: &Grading) -> InvariantSubalgebra {
    let d = &g.datum;
    let all = d.roots();
    let p = d.num_positive();
    let mut restricted: Vec<ExactVector> = Vec::new();
    for o in &gr.orbits {
        if o.in_invariant_part && o.grades.contains(&0) && o.roots[0] < p {
            let v = orbit_average(lam, &all[o.roots[0]]);
            if !restricted.contains(&v) {
                restricted.push(v);
            }
        }
    }
    let num_roots = 2 * restricted.len();
    let simple: Vec<ExactVector> = restricted
        .iter()
        .filter(|v| {
            !restricted
                .iter()
                .any(|a| restricted.iter().any(|b| &(a + b) == *v))
        })
        .cloned()
        .collect();
    let coroots: Vec<ExactVector> = simple.iter().map(ExactVector::coroot).collect();
    let cartan_matrix: Vec<Vec<i64>> = coroots
        .iter()
        .map(|c| {
            simple
                .iter()
                .map(|a| c.dot(a).to_i64().expect("integral Cartan matrix"))
                .collect()
        })
        .collect();
    let components = identify_cartan(&cartan_matrix);
    InvariantSubalgebra {
        simple_roots: simple,
        simple_coroots: coroots,
        cartan_matrix,
        components,
        num_roots,
        cartan_dim: gr.cartan[0].len(),
    }
}

/// Basis `ẽ_j` of the fixed Cartan subalgebra together with the linear
/// constraints cutting it out of the ambient space.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantCartan {
    /// Orbit sums `Σ_j Λ^j e_i`, scaled so the largest coordinate is 1,
    /// independent and not orthogonal to the roots.
    pub basis: Vec<ExactVector>,
    /// Normal vectors `n` with `⟨n, u⟩ = 0` on the invariant Cartan
    /// (reduced row echelon form).
    pub constraints: Vec<ExactVector>,
}

/// Invariant Cartan basis from orbit sums of ambient unit vectors.
pub fn invariant_cartan_basis(datum: &RootDatum, lam: &DiagramAutomorphism) -> InvariantCartan {
    let n = datum.ambient_dim;
    let mut basis: Vec<ExactVector> = Vec::new();
    for i in 0..n {
        let mut s = ExactVector::zeros(n);
        let mut cur = ExactVector::unit(n, i);
        for _ in 0..lam.order {
            s = &s + &cur;
            cur = lam.ambient.apply(&cur);
        }
        if datum.project_to_cartan(&s).is_zero() {
            continue;
        }
        let big = s.0.iter().map(QSqrt2::abs).max().expect("nonzero");
        let piv = s.0.iter().find(|x| x.abs() == big).expect("max").clone();
        let s = s.scale(&(QSqrt2::one() / piv));
        let mut trial = basis.clone();
        trial.push(s);
        if ExactMatrix::from_columns(&trial).rank() == trial.len() {
            basis = trial;
        }
    }
    // Fixed subspace inside the root span.
    let fixed: Vec<ExactVector> = basis.iter().map(|v| datum.project_to_cartan(v)).collect();
    let constraints = if fixed.is_empty() {
        (0..n).map(|i| ExactVector::unit(n, i)).collect()
    } else {
        ExactMatrix::from_rows(fixed.iter().map(|v| v.0.clone()).collect()).nullspace()
    };
    InvariantCartan { basis, constraints }
}

/// Matrix realisation of `Λ` on the defining representation of a classical
/// algebra: the weight permutation induced by `Λ` with unit entries, except
/// for `so(2n+1)` where the vectors of weights other than `±e_1` change sign
/// (block form `antidiag(1, −Id, 1)`).
pub fn defining_lift(g: &LieAlgebra, lam: &DiagramAutomorphism) -> Result<DMatrix<f64>, AutError> {
    let rep = g
        .matrices
        .as_ref()
        .ok_or_else(|| AutError::NotMaterialized(g.datum.name()))?;
    let lf = lam.ambient_f64();
    let mut m = DMatrix::zeros(rep.dim, rep.dim);
    for (a, w) in rep.weights.iter().enumerate() {
        let img: Vec<i64> = (0..w.len())
            .map(|i| (0..w.len()).map(|j| lf[(i, j)] * w[j] as f64).sum::<f64>().round() as i64)
            .collect();
        let b = rep.weight_index(&img).expect("Λ permutes weights");
        let flip = g.datum.kind == RootType::B && lam.order > 1 && w[0] == 0;
        m[(b, a)] = if flip { -1.0 } else { 1.0 };
    }
    Ok(m)
}

/// Explicit matrix lift of `σ` on the defining representation of a
/// classical algebra: `Λ_mat E_α Λ_mat⁻¹ = c_α E_{Λα}`, entries `0, ±1`.
pub fn matrix_lift(g: &LieAlgebra, sigma: &LieAutomorphism) -> Result<DMatrix<f64>, AutError> {
    let rep = g
        .matrices
        .as_ref()
        .ok_or_else(|| AutError::NotMaterialized(g.datum.name()))?;
    let dim = rep.dim;
    // Weight permutation.
    let perm: Vec<usize> = rep
        .weights
        .iter()
        .map(|w| {
            let img: Vec<f64> = (0..w.len())
                .map(|i| (0..w.len()).map(|j| sigma.cartan[(i, j)] * w[j] as f64).sum())
                .collect();
            let iw: Vec<i64> = img.iter().map(|x| x.round() as i64).collect();
            rep.weight_index(&iw).expect("Λ permutes weights")
        })
        .collect();
    let mut dvals: Vec<Option<f64>> = vec![None; dim];
    dvals[0] = Some(1.0);
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..g.num_roots() {
            let m = &rep.root_mats[a];
            let t = &rep.root_mats[sigma.target[a]];
            for i in 0..dim {
                for j in 0..dim {
                    if m[(i, j)] == 0 {
                        continue;
                    }
                    let ratio = sigma.coef[a] * t[(perm[i], perm[j])] as f64 / m[(i, j)] as f64;
                    match (dvals[i], dvals[j]) {
                        (None, Some(dj)) => {
                            dvals[i] = Some(dj * ratio);
                            changed = true;
                        }
                        (Some(di), None) => {
                            dvals[j] = Some(di / ratio);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let mut lm = DMatrix::zeros(dim, dim);
    for a in 0..dim {
        lm[(perm[a], a)] = dvals[a].expect("weight graph is connected");
    }
    Ok(lm)
}

/// Obstruction `[Λ, 𝒬] = Λ𝒬Λ⁻¹𝒬⁻¹` with `𝒬 = e(κ)` on the defining
/// representation; returns the scalar and the deviation from scalarity.
pub fn obstruction_cocycle(g: &LieAlgebra, lam_mat: &DMatrix<f64>) -> Result<(Complex64, f64), AutError> {
    let rep = g
        .matrices
        .as_ref()
        .ok_or_else(|| AutError::NotMaterialized(g.datum.name()))?;
    let kappa = g.datum.kappa.to_f64();
    let qd: Vec<Complex64> = rep
        .weights
        .iter()
        .map(|w| {
            let s: f64 = w.iter().zip(&kappa).map(|(&a, b)| a as f64 * b).sum();
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * s)
        })
        .collect();
    let n = rep.dim;
    let q = DMatrix::from_fn(n, n, |i, j| if i == j { qd[i] } else { Complex64::zero() });
    let qi = DMatrix::from_fn(n, n, |i, j| if i == j { qd[i].inv() } else { Complex64::zero() });
    let l = lam_mat.map(|x| Complex64::new(x, 0.0));
    let li = l.clone().try_inverse().expect("Λ invertible");
    let m = &l * &q * &li * &qi;
    let z = m[(0, 0)];
    let dev = (&m - DMatrix::<Complex64>::identity(n, n) * z).norm();
    Ok((z, dev))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(t: RootType, r: usize, class: &str) -> (LieAlgebra, DiagramAutomorphism, LieAutomorphism, Grading) {
        let g = LieAlgebra::from_type(t, r).unwrap();
        let lam = lambda_from_xi(&g.datum, &class.parse().unwrap()).unwrap();
        let sigma = LieAutomorphism::canonical(&g, &lam);
        let gr = grading(&g, &lam, &sigma);
        (g, lam, sigma, gr)
    }

    #[test]
    fn sl_n_shift() {
        let (g, lam, sigma, gr) = setup(RootType::A, 3, "w3");
        assert_eq!(lam.order, 4);
        // e_j → e_{j+1}.
        for j in 0..4 {
            let img = lam.ambient.apply(&ExactVector::unit(4, j));
            assert_eq!(img, ExactVector::unit(4, (j + 1) % 4));
        }
        assert!(sigma.homomorphism_residual(&g) < 1e-12);
        assert_eq!(gr.dims.iter().sum::<usize>(), 15);
        let lm = matrix_lift(&g, &sigma).unwrap();
        let (z, dev) = obstruction_cocycle(&g, &lm).unwrap();
        assert!(dev < 1e-12);
        assert!((z - Complex64::from_polar(1.0, std::f64::consts::PI / 2.0)).norm() < 1e-12, "{z}");
    }

    #[test]
    fn e6_and_e7_grades() {
        let (g, lam, sigma, gr) = setup(RootType::E6, 6, "w1");
        assert_eq!(lam.order, 3);
        assert!(sigma.homomorphism_residual(&g) < 1e-12);
        assert_eq!(gr.dims, vec![30, 24, 24]);
        let inv = invariant_subalgebra(&g, &lam, &gr);
        assert_eq!(inv.type_name(), "G2");
        let (g, lam, sigma, gr) = setup(RootType::E7, 7, "w7");
        assert_eq!(lam.order, 2);
        assert!(sigma.homomorphism_residual(&g) < 1e-12);
        assert_eq!(gr.dims, vec![79, 54]);
        assert_eq!(gr.g0_tilde_dim, 52);
        let inv = invariant_subalgebra(&g, &lam, &gr);
        assert_eq!(inv.type_name(), "F4");
    }
}
