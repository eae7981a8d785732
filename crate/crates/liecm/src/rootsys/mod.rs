//! Root data of the simple Lie algebras `A_{N−1}`, `B_n`, `C_n`, `D_n`, `E6`, `E7`.
//!
//! Ambient coordinates follow the classical conventions: `A_{N−1}` lives in
//! the sum-zero hyperplane of ℂ^N, `B_n`/`C_n`/`D_n` in ℂ^n, and the
//! exceptional algebras in ℂ^7 with the `e5, e6, e7` axes entering through
//! `1/√2` combinations. `E6` additionally satisfies `u5+u6+u7 = 0`.
//!
//! Everything here is exact (see [`crate::scalars`]). Levels are heights
//! (sums of simple-root coefficients) and `κ = ρ∨/h`.

mod cartan;
mod lattice;
mod weyl;

pub use cartan::{identify_cartan, standard_cartan, CartanComponent};
pub use lattice::{integer_hnf, smith_diagonal, Lattice};
pub use weyl::{weyl_group_order, WeylGroup};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{coordinates_in_span, ExactMatrix, ExactVector, QSqrt2, ScalarError};

/// Errors raised while building or querying root data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    /// Type/rank combination outside the supported range.
    #[error("unsupported root system {kind} of rank {rank}")]
    Unsupported {
        /// Requested type.
        kind: String,
        /// Requested rank.
        rank: usize,
    },
    /// Unknown Cartan type name.
    #[error("unknown root system type `{0}` (expected A, B, C, D, E6 or E7)")]
    UnknownType(String),
    /// The vector is not a root of the system.
    #[error("vector {0} is not a root")]
    NotARoot(String),
    /// Wrong ambient dimension.
    #[error("expected a vector of dimension {expected}, found {found}")]
    Dimension {
        /// Expected dimension.
        expected: usize,
        /// Dimension found.
        found: usize,
    },
    /// Exact arithmetic failure.
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Cartan type of a simple Lie algebra handled by the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum RootType {
    /// `sl(N)`, rank `N−1`.
    A,
    /// `so(2n+1)`.
    B,
    /// `sp(2n)`.
    C,
    /// `so(2n)`.
    D,
    /// Exceptional `e6`.
    E6,
    /// Exceptional `e7`.
    E7,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::E6 => "E6",
            RootType::E7 => "E7",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E6" => Ok(RootType::E6),
            "E7" => Ok(RootType::E7),
            _ => Err(RootError::UnknownType(s.trim().to_string())),
        }
    }
}

/// Exact root datum of a simple Lie algebra in ambient coordinates.
///
/// Positive roots are ordered by height and then by their simple-root
/// coordinates; `roots()` lists the positive roots followed by their
/// negatives in the same order.
#[derive(Debug, Clone, Serialize)]
pub struct RootDatum {
    /// Cartan type.
    pub kind: RootType,
    /// Lie rank.
    pub rank: usize,
    /// Dimension of the ambient coordinate space.
    pub ambient_dim: usize,
    /// Simple roots `α_1 … α_r`.
    pub simple_roots: Vec<ExactVector>,
    /// Simple coroots `α_j∨ = 2α_j/(α_j,α_j)`.
    pub simple_coroots: Vec<ExactVector>,
    /// Positive roots.
    pub positive_roots: Vec<ExactVector>,
    /// Simple-root coordinates of the positive roots.
    pub positive_coords: Vec<Vec<i64>>,
    /// Cartan matrix `a_ij = ⟨α_i∨, α_j⟩`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Highest root `θ`.
    pub highest_root: ExactVector,
    /// Minimal root `α_0 = −θ`.
    pub alpha0: ExactVector,
    /// Marks `a_j`: `θ = Σ a_j α_j`.
    pub marks: Vec<i64>,
    /// Coxeter number `h = 1 + height(θ)`.
    pub coxeter: i64,
    /// Half-sum of positive roots.
    pub rho: ExactVector,
    /// Half-sum of positive coroots.
    pub rho_vee: ExactVector,
    /// `κ = ρ∨/h`.
    pub kappa: ExactVector,
    /// Fundamental weights `ϖ_j`, `⟨ϖ_j, α_k∨⟩ = δ_jk`.
    pub fundamental_weights: Vec<ExactVector>,
    /// Fundamental coweights `ϖ_j∨`, `⟨ϖ_j∨, α_k⟩ = δ_jk`.
    pub fundamental_coweights: Vec<ExactVector>,
    /// Normals of linear constraints cutting the Cartan subalgebra out of the
    /// ambient space (e.g. `Σu_j = 0` for `A`, `u5+u6+u7 = 0` for `E6`).
    pub ambient_constraints: Vec<ExactVector>,
    #[serde(skip)]
    index: HashMap<ExactVector, usize>,
}

fn v(xs: &[i64]) -> ExactVector {
    ExactVector::from_ints(xs, 1)
}

fn half(xs: &[i64]) -> ExactVector {
    ExactVector::from_ints(xs, 2)
}

/// `Σ c_k·(1/√2)·e_{k}` on the last three axes of ℂ^7 (indices 4, 5, 6).
fn r2(c5: i64, c6: i64, c7: i64) -> ExactVector {
    let mut out = ExactVector::zeros(7);
    for (i, c) in [(4, c5), (5, c6), (6, c7)] {
        out.0[i] = QSqrt2::sqrt2_frac(c, 2);
    }
    out
}

fn e6_simple_roots() -> Vec<ExactVector> {
    vec![
        &half(&[-1, -1, -1, 1, 0, 0, 0]) + &r2(1, -1, 0),
        v(&[0, 0, 1, -1, 0, 0, 0]),
        v(&[0, 1, -1, 0, 0, 0, 0]),
        v(&[1, -1, 0, 0, 0, 0, 0]),
        &v(&[-1, 0, 0, 0, 0, 0, 0]) + &r2(0, 1, -1),
        v(&[0, 0, 1, 1, 0, 0, 0]),
    ]
}

fn simple_roots_for(kind: RootType, rank: usize) -> Result<(usize, Vec<ExactVector>, Vec<ExactVector>), RootError> {
    let unsupported = || RootError::Unsupported {
        kind: kind.to_string(),
        rank,
    };
    let diff = |n: usize, j: usize| {
        let mut x = ExactVector::zeros(n);
        x.0[j] = QSqrt2::one();
        x.0[j + 1] = QSqrt2::int(-1);
        x
    };
    Ok(match kind {
        RootType::A => {
            if rank < 1 {
                return Err(unsupported());
            }
            let n = rank + 1;
            let simple = (0..rank).map(|j| diff(n, j)).collect();
            (n, simple, vec![ExactVector::from_ints(&vec![1; n], 1)])
        }
        RootType::B | RootType::C => {
            if rank < 2 {
                return Err(unsupported());
            }
            let n = rank;
            let mut simple: Vec<_> = (0..n - 1).map(|j| diff(n, j)).collect();
            let last = if kind == RootType::B { 1 } else { 2 };
            simple.push(ExactVector::unit(n, n - 1).scale(&QSqrt2::int(last)));
            (n, simple, vec![])
        }
        RootType::D => {
            if rank < 3 {
                return Err(unsupported());
            }
            let n = rank;
            let mut simple: Vec<_> = (0..n - 1).map(|j| diff(n, j)).collect();
            let mut last = ExactVector::zeros(n);
            last.0[n - 2] = QSqrt2::one();
            last.0[n - 1] = QSqrt2::one();
            simple.push(last);
            (n, simple, vec![])
        }
        RootType::E6 => {
            if rank != 6 {
                return Err(unsupported());
            }
            (7, e6_simple_roots(), vec![v(&[0, 0, 0, 0, 1, 1, 1])])
        }
        RootType::E7 => {
            if rank != 7 {
                return Err(unsupported());
            }
            let mut simple = e6_simple_roots();
            let mut a7 = ExactVector::zeros(7);
            a7.0[6] = QSqrt2::sqrt2();
            simple.push(a7);
            (7, simple, vec![])
        }
    })
}

/// Positive roots as simple-root coordinate vectors, generated by root
/// strings: for a positive root `β ≠ α_i`, `β+α_i` is a root iff
/// `p − ⟨β, α_i∨⟩ > 0`, where `p` is the length of the downward `α_i`-string.
pub(crate) fn positive_root_coords(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut c = vec![0; r];
            c[i] = 1;
            c
        })
        .collect();
    for c in &layer {
        seen.insert(c.clone());
    }
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let is_simple_i = beta.iter().enumerate().all(|(k, &x)| x == i64::from(k == i));
                if is_simple_i {
                    continue;
                }
                // ⟨β, α_i∨⟩ = Σ_j c_j a_ij
                let pair: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        layer = next;
    }
    all
}

impl RootDatum {
    /// Build the root datum of the given type and Lie rank
    /// (`A`: rank ≥ 1 i.e. `sl(rank+1)`; `B`,`C`: ≥ 2; `D`: ≥ 3; `E6`: 6; `E7`: 7).
    pub fn new(kind: RootType, rank: usize) -> Result<Self, RootError> {
        let (ambient_dim, simple_roots, ambient_constraints) = simple_roots_for(kind, rank)?;
        let simple_coroots: Vec<ExactVector> = simple_roots.iter().map(ExactVector::coroot).collect();
        let cartan_matrix: Vec<Vec<i64>> = simple_coroots
            .iter()
            .map(|ci| {
                simple_roots
                    .iter()
                    .map(|aj| ci.dot(aj).to_i64().expect("Cartan entries are integers"))
                    .collect()
            })
            .collect();
        let positive_coords = positive_root_coords(&cartan_matrix);
        let combine = |c: &[i64], basis: &[ExactVector]| {
            let mut out = ExactVector::zeros(ambient_dim);
            for (k, &x) in c.iter().enumerate() {
                if x != 0 {
                    out = &out + &basis[k].scale(&QSqrt2::int(x));
                }
            }
            out
        };
        let positive_roots: Vec<ExactVector> = positive_coords.iter().map(|c| combine(c, &simple_roots)).collect();
        let top = positive_coords
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .map(|(i, _)| i)
            .expect("nonempty root system");
        let marks = positive_coords[top].clone();
        let highest_root = positive_roots[top].clone();
        let alpha0 = -&highest_root;
        let coxeter = marks.iter().sum::<i64>() + 1;
        let two = QSqrt2::int(2);
        let mut rho = ExactVector::zeros(ambient_dim);
        let mut rho_vee = ExactVector::zeros(ambient_dim);
        for a in &positive_roots {
            rho = &rho + a;
            rho_vee = &rho_vee + &a.coroot();
        }
        rho = rho.scale(&(QSqrt2::one() / two.clone()));
        rho_vee = rho_vee.scale(&(QSqrt2::one() / two));
        let kappa = rho_vee.scale(&(QSqrt2::one() / QSqrt2::int(coxeter)));

        let cm = ExactMatrix::from_ints(&cartan_matrix);
        let inv = cm.inverse()?;
        let fundamental_weights: Vec<ExactVector> = (0..rank)
            .map(|i| {
                let mut out = ExactVector::zeros(ambient_dim);
                for k in 0..rank {
                    // ⟨ϖ_i, α_j∨⟩ = Σ_k M_ik a_jk = δ_ij → M = (A^T)^{-1}.
                    let c = &inv.rows[k][i];
                    if !c.is_zero() {
                        out = &out + &simple_roots[k].scale(c);
                    }
                }
                out
            })
            .collect();
        let fundamental_coweights: Vec<ExactVector> = (0..rank)
            .map(|i| {
                let mut out = ExactVector::zeros(ambient_dim);
                for k in 0..rank {
                    // ⟨α_j, ϖ_i∨⟩ = Σ_k M_ik a_kj = δ_ij → M = A^{-1}.
                    let c = &inv.rows[i][k];
                    if !c.is_zero() {
                        out = &out + &simple_coroots[k].scale(c);
                    }
                }
                out
            })
            .collect();

        let mut datum = Self {
            kind,
            rank,
            ambient_dim,
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_coords,
            cartan_matrix,
            highest_root,
            alpha0,
            marks,
            coxeter,
            rho,
            rho_vee,
            kappa,
            fundamental_weights,
            fundamental_coweights,
            ambient_constraints,
            index: HashMap::new(),
        };
        datum.index = datum.roots().into_iter().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(datum)
    }

    /// Parse a `(type, rank)` pair where `A` rank is the Lie rank.
    pub fn from_name(kind: &str, rank: usize) -> Result<Self, RootError> {
        Self::new(kind.parse()?, rank)
    }

    /// Short name such as `A3`, `E6`.
    pub fn name(&self) -> String {
        match self.kind {
            RootType::E6 | RootType::E7 => self.kind.to_string(),
            k => format!("{k}{}", self.rank),
        }
    }

    /// `N` for `sl(N)`, the matrix size of the defining representation for
    /// classical types, `None` for exceptional types.
    pub fn defining_dim(&self) -> Option<usize> {
        match self.kind {
            RootType::A => Some(self.rank + 1),
            RootType::B => Some(2 * self.rank + 1),
            RootType::C | RootType::D => Some(2 * self.rank),
            _ => None,
        }
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// All roots: positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<ExactVector> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| -r));
        out
    }

    /// Dimension of the Lie algebra.
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.num_positive()
    }

    /// Index of a root in [`Self::roots`].
    pub fn root_index(&self, alpha: &ExactVector) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// Index of `−α` given the index of `α`.
    pub fn neg_index(&self, i: usize) -> usize {
        let p = self.num_positive();
        if i < p {
            i + p
        } else {
            i - p
        }
    }

    /// Simple-root coordinates of the root with index `i` (negative for
    /// negative roots).
    pub fn root_coords(&self, i: usize) -> Vec<i64> {
        let p = self.num_positive();
        if i < p {
            self.positive_coords[i].clone()
        } else {
            self.positive_coords[i - p].iter().map(|x| -x).collect()
        }
    }

    /// Level (height) of a root: sum of its simple-root coefficients.
    pub fn level(&self, alpha: &ExactVector) -> Result<i64, RootError> {
        let i = self
            .root_index(alpha)
            .ok_or_else(|| RootError::NotARoot(format!("{alpha:?}")))?;
        Ok(self.root_coords(i).iter().sum())
    }

    /// `κ = ρ∨/h`.
    pub fn kappa(&self) -> &ExactVector {
        &self.kappa
    }

    /// Coordinates of `x` in the basis of simple roots, if `x` lies in their span.
    pub fn simple_root_coordinates(&self, x: &ExactVector) -> Option<ExactVector> {
        coordinates_in_span(&self.simple_roots, x)
    }

    /// Whether two roots have equal length.
    pub fn is_long(&self, alpha: &ExactVector) -> bool {
        let max = self.highest_root.norm2();
        alpha.norm2() == max
    }

    /// Alcove vertices `0, ϖ_j∨/a_j`.
    pub fn alcove_vertices(&self) -> Vec<ExactVector> {
        let mut out = vec![ExactVector::zeros(self.ambient_dim)];
        for (w, &a) in self.fundamental_coweights.iter().zip(&self.marks) {
            out.push(w.scale(&(QSqrt2::one() / QSqrt2::int(a))));
        }
        out
    }

    /// Extended simple roots `α_0, α_1, …, α_r`.
    pub fn extended_simple_roots(&self) -> Vec<ExactVector> {
        let mut out = vec![self.alpha0.clone()];
        out.extend(self.simple_roots.iter().cloned());
        out
    }

    /// Extended Cartan matrix `a_ij = ⟨α_i∨, α_j⟩` over `α_0 … α_r`.
    pub fn extended_cartan_matrix(&self) -> Vec<Vec<i64>> {
        let ext = self.extended_simple_roots();
        ext.iter()
            .map(|ai| {
                let c = ai.coroot();
                ext.iter().map(|aj| c.dot(aj).to_i64().expect("integral")).collect()
            })
            .collect()
    }

    /// Named lattices: `Q`, `Q∨`, `P`, `P∨`, and the case-specific ones.
    /// `extra` lists `(name, coweight index)` sublattices `Q∨ + ℤϖ_j∨`
    /// requested by the caller (e.g. `P_l` for composite `N`).
    pub fn lattices(&self) -> Vec<Lattice> {
        let mut out = vec![
            Lattice::from_basis("Q", self.simple_roots.clone()),
            Lattice::from_basis("Q∨", self.simple_coroots.clone()),
            Lattice::from_basis("P", self.fundamental_weights.clone()),
            Lattice::from_basis("P∨", self.fundamental_coweights.clone()),
        ];
        let q = &self.simple_roots;
        let with = |name: &str, extra: &ExactVector| {
            let mut gens = q.clone();
            gens.push(extra.clone());
            Lattice::generated_by(name, &gens)
        };
        match self.kind {
            RootType::A => {
                let n = self.rank + 1;
                for p in 2..n {
                    if n.is_multiple_of(p) {
                        let l = n / p;
                        out.push(with(&format!("P_{l}"), &self.fundamental_weights[n - p - 1]));
                    }
                }
            }
            RootType::D => {
                let n = self.rank;
                out.push(with("P₂", &self.fundamental_weights[0]));
                if n.is_multiple_of(2) {
                    out.push(with("P^V", &self.fundamental_weights[0]));
                    out.push(with("P^R", &self.fundamental_weights[n - 2]));
                    out.push(with("P^L", &self.fundamental_weights[n - 1]));
                }
            }
            _ => {}
        }
        out
    }

    /// Lattice by name (see [`Self::lattices`]).
    pub fn lattice(&self, name: &str) -> Option<Lattice> {
        self.lattices().into_iter().find(|l| l.name == name)
    }

    /// Structure of the center `P∨/Q∨` of the simply connected group with the
    /// printed generating coweights.
    pub fn center_structure(&self) -> CenterStructure {
        let factors: Vec<i64> = smith_diagonal(&self.cartan_matrix)
            .into_iter()
            .filter(|&d| d.abs() != 1)
            .map(i64::abs)
            .collect();
        let n = self.rank;
        let gens: Vec<usize> = match self.kind {
            RootType::A => vec![n],
            RootType::B => vec![1],
            RootType::C => vec![n],
            RootType::D if n % 2 == 1 => vec![n],
            RootType::D => vec![1, n],
            RootType::E6 => vec![1],
            RootType::E7 => vec![7],
        };
        let group = if factors.is_empty() {
            "trivial".to_string()
        } else {
            factors.iter().map(|d| format!("μ{d}")).collect::<Vec<_>>().join("×")
        };
        let generators = gens
            .iter()
            .map(|&j| CenterGenerator {
                coweight_index: j,
                coweight: self.fundamental_coweights[j - 1].clone(),
                order: self.coweight_order(&self.fundamental_coweights[j - 1]),
            })
            .collect();
        CenterStructure {
            group,
            invariant_factors: factors,
            generators,
        }
    }

    /// Order of a coweight in `P∨/Q∨`.
    pub fn coweight_order(&self, xi: &ExactVector) -> u64 {
        let qv = Lattice::from_basis("Q∨", self.simple_coroots.clone());
        (1..=64u64)
            .find(|&k| qv.contains(&xi.scale(&QSqrt2::int(k as i64))))
            .unwrap_or(0)
    }

    /// Weyl group generated by the simple reflections.
    pub fn weyl(&self) -> WeylGroup {
        WeylGroup::new(self.simple_roots.clone())
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        weyl_group_order(&identify_cartan(&self.cartan_matrix))
    }

    /// Project an ambient vector onto the span of the roots (orthogonal
    /// complement of the ambient constraints).
    pub fn project_to_cartan(&self, x: &ExactVector) -> ExactVector {
        let mut out = x.clone();
        for c in &self.ambient_constraints {
            let f = out.dot(c) / c.norm2();
            out = &out - &c.scale(&f);
        }
        out
    }

    /// True if `x` satisfies the ambient constraints.
    pub fn in_cartan(&self, x: &ExactVector) -> bool {
        self.ambient_constraints.iter().all(|c| c.dot(x).is_zero())
    }

    /// Serializable summary used by the CLI `info` verb.
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.kind.to_string(),
            "rank": self.rank,
            "name": self.name(),
            "dim": self.dim(),
            "roots": 2 * self.num_positive(),
            "positive_roots": self.num_positive(),
            "h": self.coxeter,
            "ambient_dim": self.ambient_dim,
            "marks": self.marks,
            "cartan_matrix": self.cartan_matrix,
            "kappa": self.kappa,
            "rho": self.rho,
            "rho_vee": self.rho_vee,
            "weyl_order": self.weyl_order().to_string(),
            "center": self.center_structure().group,
        })
    }
}

/// A generator of the center `P∨/Q∨`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterGenerator {
    /// 1-based index `j` of the coweight `ϖ_j∨`.
    pub coweight_index: usize,
    /// The coweight itself.
    pub coweight: ExactVector,
    /// Its order in `P∨/Q∨`.
    pub order: u64,
}

/// Result of [`RootDatum::center_structure`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterStructure {
    /// Group descriptor such as `μ4` or `μ2×μ2`.
    pub group: String,
    /// Nontrivial invariant factors of `P∨/Q∨`.
    pub invariant_factors: Vec<i64>,
    /// Generating coweights.
    pub generators: Vec<CenterGenerator>,
}
