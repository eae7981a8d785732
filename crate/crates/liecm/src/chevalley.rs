//! Chevalley bases: abstract structure constants for every supported type
//! and explicit defining-representation matrices for the classical series.
//!
//! Normalization (all types): `[E_α, E_{−α}] = α∨` (the ambient coroot),
//! `[h, E_α] = ⟨α, h⟩ E_α`, and the invariant form is Euclidean on the
//! Cartan subalgebra with `(E_α, E_{−α}) = 2/|α|²`. For the classical series
//! this form equals `tr XY` for `sl(N)` and `½ tr XY` for `so`/`sp`.
//!
//! Structure constants `N_{α,β}` are read off the defining matrices for
//! `A`–`D`; for `E6`/`E7` they come from a bimultiplicative sign cocycle on
//! the root lattice.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{RootDatum, RootType};

/// Errors raised by the Chevalley engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    /// Matrices requested for an exceptional type.
    #[error("{0} has no materialized matrix representation")]
    NotMaterialized(String),
    /// Matrices of different shapes.
    #[error("shape mismatch: {0}x{0} vs {1}x{1}")]
    Shape(usize, usize),
}

/// Element of the Lie algebra: ambient Cartan vector plus root coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Element {
    /// Cartan part in ambient coordinates.
    pub h: Vec<Complex64>,
    /// Coefficient of `E_α` for every root index.
    pub e: Vec<Complex64>,
}

impl Element {
    /// Zero element with the given sizes.
    pub fn zero(ambient: usize, roots: usize) -> Self {
        Self {
            h: vec![Complex64::new(0.0, 0.0); ambient],
            e: vec![Complex64::new(0.0, 0.0); roots],
        }
    }

    /// `self + c·other`.
    pub fn axpy(&mut self, c: Complex64, other: &Element) {
        for (a, b) in self.h.iter_mut().zip(&other.h) {
            *a += c * b;
        }
        for (a, b) in self.e.iter_mut().zip(&other.e) {
            *a += c * b;
        }
    }

    /// Scalar multiple.
    pub fn scaled(&self, c: Complex64) -> Element {
        Element {
            h: self.h.iter().map(|x| c * x).collect(),
            e: self.e.iter().map(|x| c * x).collect(),
        }
    }

    /// Max-modulus of all coefficients.
    pub fn max_abs(&self) -> f64 {
        self.h.iter().chain(&self.e).map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// Defining-representation matrices for a classical type.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    /// Matrix size.
    pub dim: usize,
    /// Bilinear form `q` with `Zq + qZᵀ = 0` (`None` for `sl(N)`).
    pub q: Option<DMatrix<i64>>,
    /// Root generator `E_α` for every root index.
    pub root_mats: Vec<DMatrix<i64>>,
    /// Weight (ambient vector, as integer coordinates) of each basis vector.
    pub weights: Vec<Vec<i64>>,
    /// Factor `c` in the invariant form `c·tr XY`.
    pub trace_factor: f64,
}

impl MatrixRep {
    /// Diagonal matrix of a Cartan element given in ambient coordinates.
    pub fn cartan_matrix(&self, h: &[Complex64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| {
            if i == j {
                self.weights[i].iter().zip(h).map(|(&w, x)| x * w as f64).sum()
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Invariant form `c·tr XY`.
    pub fn killing(&self, x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> Result<Complex64, ChevalleyError> {
        if x.shape() != y.shape() {
            return Err(ChevalleyError::Shape(x.nrows(), y.nrows()));
        }
        Ok((x * y).trace() * self.trace_factor)
    }

    /// Index of the basis vector of a given weight.
    pub fn weight_index(&self, w: &[i64]) -> Option<usize> {
        self.weights.iter().position(|x| x == w)
    }
}

/// Standard matrix unit `E_{ij}` (0-based).
fn unit(n: usize, i: usize, j: usize) -> DMatrix<i64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1;
    m
}

/// Integer ambient coordinates of a classical root (all entries are integers).
fn int_coords(datum: &RootDatum, i: usize) -> Vec<i64> {
    datum.roots()[i]
        .0
        .iter()
        .map(|x| x.to_i64().expect("classical roots have integer coordinates"))
        .collect()
}

fn classical_rep(datum: &RootDatum) -> Option<MatrixRep> {
    let n = datum.rank;
    let (dim, weights, q, trace_factor): (usize, Vec<Vec<i64>>, Option<DMatrix<i64>>, f64) = match datum.kind {
        RootType::A => {
            let big_n = n + 1;
            let w = (0..big_n)
                .map(|i| (0..big_n).map(|k| i64::from(k == i)).collect())
                .collect();
            (big_n, w, None, 1.0)
        }
        RootType::B | RootType::C | RootType::D => {
            let dim = if datum.kind == RootType::B { 2 * n + 1 } else { 2 * n };
            let mut w: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
            if datum.kind == RootType::B {
                w.push(vec![0; n]);
            }
            w.extend((0..n).rev().map(|i| (0..n).map(|k| -i64::from(k == i)).collect::<Vec<_>>()));
            let q = DMatrix::from_fn(dim, dim, |i, j| {
                if i + j == dim - 1 {
                    if datum.kind == RootType::C && i >= n {
                        -1
                    } else {
                        1
                    }
                } else {
                    0
                }
            });
            (dim, w, Some(q), 0.5)
        }
        _ => return None,
    };
    let s = |i: usize| -> i64 {
        // q_{i,i'} for the C series; +1 otherwise.
        q.as_ref().map_or(1, |q| q[(i, dim - 1 - i)])
    };
    let num_pos = datum.num_positive();
    let mut root_mats = Vec::with_capacity(2 * num_pos);
    for r in 0..num_pos {
        let a = int_coords(datum, r);
        // Find a pair of weights (μ, ν) with μ − ν = α and build the generator.
        let m = match datum.kind {
            RootType::A => {
                let j = a.iter().position(|&x| x == 1).expect("e_j − e_k");
                let k = a.iter().position(|&x| x == -1).expect("e_j − e_k");
                unit(dim, j, k)
            }
            _ => {
                // μ is the first weight for which μ − α is again a weight.
                let (ia, ib) = (0..dim)
                    .find_map(|i| {
                        let nu: Vec<i64> = weights[i].iter().zip(&a).map(|(x, y)| x - y).collect();
                        weights.iter().position(|x| *x == nu).map(|j| (i, j))
                    })
                    .expect("root acts between weights");
                let (ib2, ia2) = (dim - 1 - ib, dim - 1 - ia);
                if (ia, ib) == (ib2, ia2) {
                    // Long roots 2e_j of C_n: a single matrix unit.
                    unit(dim, ia, ib)
                } else {
                    let eps = s(ia) * s(ib);
                    unit(dim, ia, ib) - unit(dim, ib2, ia2) * eps
                }
            }
        };
        root_mats.push(m);
    }
    // E_{−α} = c·E_αᵀ with c fixed by [E_α, E_{−α}] = α∨.
    for r in 0..num_pos {
        let e = &root_mats[r];
        let et = e.transpose();
        let comm = e * &et - &et * e;
        let cor = datum.roots()[r].coroot();
        // Read α∨ off the first weight with nonzero pairing.
        let i = (0..dim).find(|&i| comm[(i, i)] != 0).expect("nonzero bracket");
        let target: i64 = weights[i]
            .iter()
            .zip(&cor.0)
            .map(|(&w, c)| w * c.to_i64().expect("integral coroot"))
            .sum();
        let c = target / comm[(i, i)];
        root_mats.push(et * c);
    }
    Some(MatrixRep {
        dim,
        q,
        root_mats,
        weights,
        trace_factor,
    })
}

/// Bimultiplicative sign `ε(α, β)` on the root lattice of a simply-laced
/// algebra (simple-root coordinates), with `ε(α_i, α_i) = −1` and
/// `ε(α_i, α_j) = −1` for `i < j` adjacent.
fn cocycle(cartan: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut odd = 0i64;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 && (i == j || (i < j && cartan[i][j] == -1)) {
                odd += ai * bj;
            }
        }
    }
    if odd.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A simple Lie algebra with its Chevalley basis.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    /// Root datum.
    pub datum: RootDatum,
    /// Roots (positive then negative), ambient coordinates.
    pub roots: Vec<Vec<f64>>,
    /// Coroots in the same order.
    pub coroots: Vec<Vec<f64>>,
    /// `|α|²` for each root.
    pub norm2: Vec<f64>,
    /// `sum[a][b] = Some(c)` when `α_a + α_b = α_c`.
    sum: Vec<Vec<Option<usize>>>,
    /// Structure constants `N_{α_a, α_b}` (0 where the sum is not a root).
    structure: Vec<Vec<f64>>,
    /// Defining representation for classical types.
    pub matrices: Option<MatrixRep>,
}

impl LieAlgebra {
    /// Chevalley basis of the algebra of a root datum.
    pub fn new(datum: RootDatum) -> Self {
        let all = datum.roots();
        let nr = all.len();
        let coords: Vec<Vec<i64>> = (0..nr).map(|i| datum.root_coords(i)).collect();
        let by_coords: HashMap<Vec<i64>, usize> = coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut sum = vec![vec![None; nr]; nr];
        for a in 0..nr {
            for b in 0..nr {
                let s: Vec<i64> = coords[a].iter().zip(&coords[b]).map(|(x, y)| x + y).collect();
                sum[a][b] = by_coords.get(&s).copied();
            }
        }
        let matrices = classical_rep(&datum);
        let mut structure = vec![vec![0.0f64; nr]; nr];
        match &matrices {
            Some(rep) => {
                for a in 0..nr {
                    for b in 0..nr {
                        if let Some(c) = sum[a][b] {
                            let (x, y, z) = (&rep.root_mats[a], &rep.root_mats[b], &rep.root_mats[c]);
                            let comm = x * y - y * x;
                            let (i, j) = (0..rep.dim)
                                .flat_map(|i| (0..rep.dim).map(move |j| (i, j)))
                                .find(|&(i, j)| z[(i, j)] != 0)
                                .expect("nonzero generator");
                            let n = comm[(i, j)] as f64 / z[(i, j)] as f64;
                            debug_assert!(
                                (comm.map(|v| v as f64) - z.map(|v| v as f64 * n)).norm() < 1e-12,
                                "bracket proportional to E_(α+β)"
                            );
                            structure[a][b] = n;
                        }
                    }
                }
            }
            None => {
                let p = datum.num_positive();
                let sign = |i: usize| if i < p { 1 } else { -1 };
                for a in 0..nr {
                    for b in 0..nr {
                        if let Some(c) = sum[a][b] {
                            let eps = cocycle(&datum.cartan_matrix, &coords[a], &coords[b]);
                            structure[a][b] = (eps * sign(a) * sign(b) * sign(c)) as f64;
                        }
                    }
                }
            }
        }
        let roots: Vec<Vec<f64>> = all.iter().map(|r| r.to_f64()).collect();
        let coroots: Vec<Vec<f64>> = all.iter().map(|r| r.coroot().to_f64()).collect();
        let norm2 = roots.iter().map(|r| r.iter().map(|x| x * x).sum()).collect();
        Self {
            datum,
            roots,
            coroots,
            norm2,
            sum,
            structure,
            matrices,
        }
    }

    /// Convenience constructor from type and rank.
    pub fn from_type(kind: RootType, rank: usize) -> Result<Self, crate::rootsys::RootError> {
        Ok(Self::new(RootDatum::new(kind, rank)?))
    }

    /// Number of roots.
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Ambient dimension of the Cartan coordinates.
    pub fn ambient_dim(&self) -> usize {
        self.datum.ambient_dim
    }

    /// Dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.datum.dim()
    }

    /// Index of `α_a + α_b` if it is a root.
    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a][b]
    }

    /// Structure constant `N_{α_a, α_b}` (`0` when `α_a + α_b` is not a root).
    pub fn structure_constant(&self, a: usize, b: usize) -> f64 {
        self.structure[a][b]
    }

    /// The zero element.
    pub fn zero(&self) -> Element {
        Element::zero(self.ambient_dim(), self.num_roots())
    }

    /// Root generator `E_α` by root index.
    pub fn root_vector(&self, i: usize) -> Element {
        let mut x = self.zero();
        x.e[i] = Complex64::new(1.0, 0.0);
        x
    }

    /// Cartan element with the given ambient coordinates.
    pub fn cartan(&self, h: &[Complex64]) -> Element {
        let mut x = self.zero();
        x.h.copy_from_slice(h);
        x
    }

    fn dot_c(a: &[f64], h: &[Complex64]) -> Complex64 {
        a.iter().zip(h).map(|(x, y)| y * *x).sum()
    }

    /// Lie bracket.
    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero();
        let nr = self.num_roots();
        for b in 0..nr {
            if y.e[b] != Complex64::new(0.0, 0.0) {
                out.e[b] += Self::dot_c(&self.roots[b], &x.h) * y.e[b];
            }
            if x.e[b] != Complex64::new(0.0, 0.0) {
                out.e[b] -= Self::dot_c(&self.roots[b], &y.h) * x.e[b];
            }
        }
        let p = self.datum.num_positive();
        for a in 0..nr {
            let xa = x.e[a];
            if xa == Complex64::new(0.0, 0.0) {
                continue;
            }
            for b in 0..nr {
                let yb = y.e[b];
                if yb == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let neg = if a < p { a + p } else { a - p };
                if b == neg {
                    for (o, c) in out.h.iter_mut().zip(&self.coroots[a]) {
                        *o += xa * yb * *c;
                    }
                } else if let Some(c) = self.sum[a][b] {
                    out.e[c] += xa * yb * self.structure[a][b];
                }
            }
        }
        out
    }

    /// Invariant form: Euclidean on the Cartan part, `(E_α, E_{−α}) = 2/|α|²`.
    pub fn pairing(&self, x: &Element, y: &Element) -> Complex64 {
        let mut s: Complex64 = x.h.iter().zip(&y.h).map(|(a, b)| a * b).sum();
        let p = self.datum.num_positive();
        for a in 0..self.num_roots() {
            let neg = if a < p { a + p } else { a - p };
            s += x.e[a] * y.e[neg] * (2.0 / self.norm2[a]);
        }
        s
    }

    /// Matrix of an element in the defining representation.
    pub fn materialize(&self, x: &Element) -> Result<DMatrix<Complex64>, ChevalleyError> {
        let rep = self
            .matrices
            .as_ref()
            .ok_or_else(|| ChevalleyError::NotMaterialized(self.datum.name()))?;
        let mut m = rep.cartan_matrix(&x.h);
        for (a, c) in x.e.iter().enumerate() {
            if *c != Complex64::new(0.0, 0.0) {
                m += rep.root_mats[a].map(|v| Complex64::new(v as f64, 0.0)) * *c;
            }
        }
        Ok(m)
    }

    /// Human-readable label of a root: `e1-e2` style for classical types,
    /// simple-root coordinates `a[0,1,1,0,0,0]` for exceptional types.
    pub fn root_label(&self, i: usize) -> String {
        match self.datum.kind {
            RootType::E6 | RootType::E7 => {
                let c = self.datum.root_coords(i);
                let body: Vec<String> = c.iter().map(i64::to_string).collect();
                format!("a[{}]", body.join(","))
            }
            _ => {
                let v = int_coords(&self.datum, i);
                let mut s = String::new();
                for (k, &x) in v.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let sign = if x > 0 { "+" } else { "-" };
                    if !(s.is_empty() && x > 0) {
                        s.push_str(sign);
                    }
                    if x.abs() != 1 {
                        s.push_str(&x.abs().to_string());
                    }
                    s.push_str(&format!("e{}", k + 1));
                }
                s
            }
        }
    }

    /// Root index from a label produced by [`Self::root_label`].
    pub fn root_from_label(&self, label: &str) -> Option<usize> {
        (0..self.num_roots()).find(|&i| self.root_label(i) == label)
    }

    /// Pairing table of the Chevalley basis as sparse triplets
    /// `(label, label, value)` (nonzero entries only).
    pub fn pairing_table(&self) -> Vec<(String, String, f64)> {
        let mut out = Vec::new();
        for a in 0..self.num_roots() {
            let b = self.datum.neg_index(a);
            out.push((self.root_label(a), self.root_label(b), 2.0 / self.norm2[a]));
        }
        for j in 0..self.ambient_dim() {
            out.push((format!("h{}", j + 1), format!("h{}", j + 1), 1.0));
        }
        out
    }

    /// JSON description (roots, structure constants, matrices when present).
    pub fn to_json(&self) -> serde_json::Value {
        let nr = self.num_roots();
        let mut consts = Vec::new();
        for a in 0..nr {
            for b in 0..nr {
                if let Some(c) = self.sum[a][b] {
                    consts.push(serde_json::json!([self.root_label(a), self.root_label(b), self.root_label(c), self.structure[a][b]]));
                }
            }
        }
        let mats = self.matrices.as_ref().map(|rep| {
            (0..nr)
                .map(|a| {
                    let m = &rep.root_mats[a];
                    let rows: Vec<Vec<[f64; 2]>> = (0..rep.dim)
                        .map(|i| (0..rep.dim).map(|j| [m[(i, j)] as f64, 0.0]).collect())
                        .collect();
                    serde_json::json!({"root": self.root_label(a), "matrix": rows})
                })
                .collect::<Vec<_>>()
        });
        serde_json::json!({
            "type": self.datum.name(),
            "dim": self.dim(),
            "roots": (0..nr).map(|a| self.root_label(a)).collect::<Vec<_>>(),
            "structure_constants": consts,
            "pairing": self.pairing_table(),
            "matrices": mats,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn b2_counts_and_form_preservation() {
        let g = LieAlgebra::from_type(RootType::B, 2).unwrap();
        let rep = g.matrices.as_ref().unwrap();
        assert_eq!(rep.dim, 5);
        assert_eq!(g.num_roots() + g.datum.rank, 10);
        let q = rep.q.as_ref().unwrap();
        for m in &rep.root_mats {
            assert_eq!(m * q + q * m.transpose(), DMatrix::zeros(5, 5));
        }
    }

    #[test]
    fn coroot_normalization_and_pairing_match_trace() {
        for (t, r) in [(RootType::A, 3), (RootType::B, 3), (RootType::C, 3), (RootType::D, 4)] {
            let g = LieAlgebra::from_type(t, r).unwrap();
            let rep = g.matrices.as_ref().unwrap();
            for a in 0..g.num_roots() {
                let b = g.datum.neg_index(a);
                let x = g.root_vector(a);
                let y = g.root_vector(b);
                let br = g.bracket(&x, &y);
                let h: Vec<Complex64> = g.coroots[a].iter().map(|&v| c(v)).collect();
                assert_eq!(br.h, h);
                let mx = g.materialize(&x).unwrap();
                let my = g.materialize(&y).unwrap();
                let tr = rep.killing(&mx, &my).unwrap();
                assert!((tr - g.pairing(&x, &y)).norm() < 1e-14, "{t:?} {a}");
                assert!((g.materialize(&br).unwrap() - (&mx * &my - &my * &mx)).norm() < 1e-12);
            }
        }
    }

    fn jacobi_residual(g: &LieAlgebra, a: usize, b: usize, cc: usize) -> f64 {
        let (x, y, z) = (g.root_vector(a), g.root_vector(b), g.root_vector(cc));
        let mut s = g.bracket(&x, &g.bracket(&y, &z));
        s.axpy(c(1.0), &g.bracket(&y, &g.bracket(&z, &x)));
        s.axpy(c(1.0), &g.bracket(&z, &g.bracket(&x, &y)));
        s.max_abs()
    }

    #[test]
    fn e6_cocycle_brackets_satisfy_jacobi_and_invariance() {
        let g = LieAlgebra::from_type(RootType::E6, 6).unwrap();
        assert_eq!(g.num_roots(), 72);
        for r in &g.norm2 {
            assert!((r - 2.0).abs() < 1e-12);
        }
        let n = g.num_roots();
        for a in (0..n).step_by(5) {
            for b in (0..n).step_by(3) {
                for cc in (0..n).step_by(7) {
                    assert!(jacobi_residual(&g, a, b, cc) < 1e-12);
                    let (x, y, z) = (g.root_vector(a), g.root_vector(b), g.root_vector(cc));
                    let lhs = g.pairing(&g.bracket(&x, &y), &z);
                    let rhs = g.pairing(&x, &g.bracket(&y, &z));
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn c_series_long_root_generator_is_single_unit() {
        let g = LieAlgebra::from_type(RootType::C, 3).unwrap();
        let rep = g.matrices.as_ref().unwrap();
        let i = g.root_from_label("2e1").unwrap();
        let m = &rep.root_mats[i];
        assert_eq!(m.iter().filter(|&&x| x != 0).count(), 1);
        assert_eq!(m[(0, 5)], 1);
    }
}
