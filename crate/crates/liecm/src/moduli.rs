//! Moduli bookkeeping: reduction of moduli vectors modulo `τΓ + Γ` and
//! equivalence under `W̃ ⋉ (τΓ + Γ)`, for the lattice choices attached to a
//! case.
//!
//! Moduli vectors `ũ` are complex vectors in ambient coordinates lying in the
//! invariant Cartan subalgebra `h̃₀`. A lattice `Γ ⊂ h̃₀` is stored with an
//! exact ℤ-basis `γ_i`; reduction writes `ũ = Σ (a_i + b_i τ) γ_i` with real
//! `a_i, b_i` and replaces both by their fractional parts. `W̃` is the Weyl
//! group of the invariant subalgebra `g̃₀`, generated by reflections in its
//! (restricted) simple roots.
//!
//! Lattice menus: `Q̃∨` is spanned by the simple coroots of `g̃₀`, `P̃∨` is the
//! dual of the root lattice of `g̃₀` inside `h̃₀`, and intermediate lattices
//! are `Q̃∨ + ℤϖ` for the cyclic subgroups of `P̃∨/Q̃∨`. For algebras of type
//! `A` only the two extremes are offered.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::case::{Case, CaseId};
use crate::rootsys::Lattice;
use crate::rootsys::RootType;
use crate::rootsys::{weyl_group_order, WeylGroup};
use crate::scalars::{ExactMatrix, ExactVector, QSqrt2};

/// Largest `|W̃|` enumerated exhaustively by [`equivalent_moduli`].
pub const FULL_ENUMERATION_LIMIT: usize = 2_000_000;
/// Number of elements tried by the bounded search for larger groups.
pub const BOUNDED_SEARCH: usize = 200_000;
/// Tolerance on lattice coefficients being integers, and on membership in `h̃₀`.
pub const MODULI_TOLERANCE: f64 = 1e-8;

/// Failures of moduli operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModuliError {
    /// Vector length differs from the ambient dimension.
    #[error("moduli vector has length {got}, expected {expected}")]
    Dimension {
        /// Supplied length.
        got: usize,
        /// Ambient dimension.
        expected: usize,
    },
    /// Vector not in the invariant Cartan subalgebra.
    #[error("moduli vector is not in the invariant Cartan subalgebra (residual {0:.3e})")]
    NotInCartan(f64),
    /// The lattice basis does not span the invariant Cartan subalgebra.
    #[error("lattice {0} does not span the invariant Cartan subalgebra")]
    NotSpanning(String),
    /// `Im τ ≤ 0`.
    #[error("modulus must have positive imaginary part")]
    Modulus,
}

/// Role of a lattice in the menu.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    /// Coroot lattice `Q̃∨` (simply connected form).
    Coroot,
    /// Intermediate lattice `Q̃∨ ⊊ Γ ⊊ P̃∨`.
    Intermediate,
    /// Coweight lattice `P̃∨` (adjoint form).
    Coweight,
}

/// One admissible moduli space `h̃₀ / (W̃ ⋉ (τΓ + Γ))`.
#[derive(Debug, Clone, Serialize)]
pub struct ModuliSpec {
    /// Case the moduli belong to.
    pub case: CaseId,
    /// Lattice name, e.g. `Q∨(B2)` or `Q∨(D2)+ℤϖ∨1`.
    pub name: String,
    /// Role in the menu.
    pub kind: LatticeKind,
    /// `dim h̃₀`.
    pub dim: usize,
    /// Ambient dimension of the moduli vectors.
    pub ambient_dim: usize,
    /// Exact ℤ-basis of `Γ` (ambient coordinates).
    pub lattice: Lattice,
    /// Index `[Γ : Q̃∨]`.
    pub index_over_coroot: u64,
    /// Type of `g̃₀` (`W̃` is its Weyl group).
    pub weyl_type: String,
    /// Simple roots of `g̃₀` generating `W̃` by reflections.
    pub weyl_generators: Vec<ExactVector>,
    /// `|W̃|`.
    pub weyl_order: u128,
    #[serde(skip)]
    cache: OnceLock<Cache>,
}

/// Precomputed linear algebra of a spec.
#[derive(Debug, Clone)]
struct Cache {
    /// Lattice basis as columns.
    basis: DMatrix<f64>,
    /// Its pseudo-inverse (`None` when the basis does not span `h̃₀`).
    pinv: Option<DMatrix<f64>>,
    /// Enumerated Weyl words (by length) with their ambient matrices.
    words: Vec<Vec<usize>>,
    matrices: Vec<DMatrix<f64>>,
    /// Whether `words` is the whole group.
    complete: bool,
}

impl ModuliSpec {
    /// Weyl group `W̃`.
    pub fn weyl(&self) -> WeylGroup {
        WeylGroup::new(self.weyl_generators.clone())
    }

    /// Exact check that `Γ` is stable under every generator of `W̃`.
    pub fn is_weyl_stable(&self) -> bool {
        let w = self.weyl();
        (0..w.rank()).all(|i| self.lattice.basis.iter().all(|g| self.lattice.contains(&w.reflect(i, g))))
    }

    fn cache(&self) -> &Cache {
        self.cache.get_or_init(|| {
            let cols: Vec<DVector<f64>> = self
                .lattice
                .basis
                .iter()
                .map(|g| DVector::from_vec(g.to_f64()))
                .collect();
            let basis = if cols.is_empty() {
                DMatrix::zeros(self.ambient_dim, 0)
            } else {
                DMatrix::from_columns(&cols)
            };
            let pinv = (basis.ncols() == self.dim)
                .then(|| basis.clone().pseudo_inverse(1e-12).ok())
                .flatten();
            let w = self.weyl();
            let cap = if self.weyl_order <= FULL_ENUMERATION_LIMIT as u128 {
                FULL_ENUMERATION_LIMIT
            } else {
                BOUNDED_SEARCH
            };
            let (words, complete) = w.enumerate_bounded(cap);
            let n = self.ambient_dim;
            let matrices = words
                .iter()
                .map(|word| {
                    let cols: Vec<DVector<f64>> = (0..n)
                        .map(|j| {
                            let mut e = vec![0.0; n];
                            e[j] = 1.0;
                            DVector::from_vec(w.apply_word_f64(word, &e))
                        })
                        .collect();
                    DMatrix::from_columns(&cols)
                })
                .collect();
            Cache {
                basis,
                pinv,
                words,
                matrices,
                complete,
            }
        })
    }

    /// Real lattice coordinates `(a, b)` with `ũ = Σ (a_i + b_i τ) γ_i`.
    pub fn lattice_coordinates(&self, u: &[Complex64], tau: Complex64) -> Result<(Vec<f64>, Vec<f64>), ModuliError> {
        if u.len() != self.ambient_dim {
            return Err(ModuliError::Dimension {
                got: u.len(),
                expected: self.ambient_dim,
            });
        }
        if tau.im <= 0.0 {
            return Err(ModuliError::Modulus);
        }
        let cache = self.cache();
        let (b, pinv) = match &cache.pinv {
            Some(p) => (&cache.basis, p),
            None => return Err(ModuliError::NotSpanning(self.name.clone())),
        };
        let re = DVector::from_iterator(u.len(), u.iter().map(|z| z.re));
        let im = DVector::from_iterator(u.len(), u.iter().map(|z| z.im));
        let c_re = pinv * &re;
        let c_im = pinv * &im;
        let scale = 1.0 + u.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let residual = ((b * &c_re - &re).norm() + (b * &c_im - &im).norm()) / scale;
        if residual > MODULI_TOLERANCE {
            return Err(ModuliError::NotInCartan(residual));
        }
        let bs: Vec<f64> = c_im.iter().map(|x| x / tau.im).collect();
        let as_: Vec<f64> = c_re.iter().zip(&bs).map(|(x, y)| x - y * tau.re).collect();
        Ok((as_, bs))
    }

    /// Vector `Σ (a_i + b_i τ) γ_i`.
    pub fn from_lattice_coordinates(&self, a: &[f64], b: &[f64], tau: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.ambient_dim];
        for ((g, &x), &y) in self.lattice.basis.iter().zip(a).zip(b) {
            let c = Complex64::new(x, 0.0) + tau * y;
            for (o, gi) in out.iter_mut().zip(g.to_f64()) {
                *o += c * gi;
            }
        }
        out
    }
}

/// Fractional part in `[0, 1)`, with values within rounding of 1 sent to 0.
fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f > 1.0 - 1e-12 {
        0.0
    } else {
        f
    }
}

/// Canonical representative of `ũ` modulo `τΓ + Γ`: both real lattice
/// coordinates reduced to `[0, 1)`.
pub fn reduce_mod_lattice(u: &[Complex64], spec: &ModuliSpec, tau: Complex64) -> Result<Vec<Complex64>, ModuliError> {
    let (a, b) = spec.lattice_coordinates(u, tau)?;
    let a: Vec<f64> = a.into_iter().map(frac).collect();
    let b: Vec<f64> = b.into_iter().map(frac).collect();
    Ok(spec.from_lattice_coordinates(&a, &b, tau))
}

/// Outcome of an equivalence search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    /// A witness was found.
    Equivalent,
    /// The full group was searched without success.
    NotEquivalent,
    /// The bounded search for a large group ended without success.
    Unknown,
}

/// Witness `w·ũ − ũ′ = τ·Σ n_i γ_i + Σ m_i γ_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Weyl word `s_{w_1}⋯s_{w_k}` (rightmost acts first; indices into
    /// [`ModuliSpec::weyl_generators`]).
    pub word: Vec<usize>,
    /// Real-shift lattice coordinates `m_i`.
    pub shift: Vec<i64>,
    /// `τ`-shift lattice coordinates `n_i`.
    pub tau_shift: Vec<i64>,
}

/// Result of [`equivalent_moduli`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceResult {
    /// Verdict.
    pub equivalent: Equivalence,
    /// Witness when equivalent.
    pub witness: Option<Witness>,
    /// Number of Weyl elements tried.
    pub searched: usize,
}

fn apply_complex(w: &WeylGroup, word: &[usize], u: &[Complex64]) -> Vec<Complex64> {
    let re: Vec<f64> = u.iter().map(|z| z.re).collect();
    let im: Vec<f64> = u.iter().map(|z| z.im).collect();
    let re = w.apply_word_f64(word, &re);
    let im = w.apply_word_f64(word, &im);
    re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect()
}

fn integral(xs: &[f64]) -> Option<Vec<i64>> {
    xs.iter()
        .map(|x| {
            let r = x.round();
            ((x - r).abs() < MODULI_TOLERANCE).then_some(r as i64)
        })
        .collect()
}

/// Checks whether `word` and the lattice shifts carry `u` to `u′`.
pub fn verify_witness(
    u: &[Complex64],
    u_prime: &[Complex64],
    spec: &ModuliSpec,
    tau: Complex64,
    witness: &Witness,
) -> Result<bool, ModuliError> {
    let wu = apply_complex(&spec.weyl(), &witness.word, u);
    let a: Vec<f64> = witness.shift.iter().map(|&x| x as f64).collect();
    let b: Vec<f64> = witness.tau_shift.iter().map(|&x| x as f64).collect();
    let shift = spec.from_lattice_coordinates(&a, &b, tau);
    let scale = 1.0 + u.iter().chain(u_prime).map(|z| z.norm()).fold(0.0, f64::max);
    spec.lattice_coordinates(u, tau)?;
    spec.lattice_coordinates(u_prime, tau)?;
    Ok(wu
        .iter()
        .zip(u_prime)
        .zip(&shift)
        .all(|((x, y), s)| (x - y - s).norm() < MODULI_TOLERANCE * scale))
}

/// Searches `w ∈ W̃` with `w·ũ − ũ′ ∈ τΓ + Γ`. Groups up to
/// [`FULL_ENUMERATION_LIMIT`] are enumerated completely; larger ones are
/// searched over the first [`BOUNDED_SEARCH`] elements by word length, with
/// an `Unknown` verdict on exhaustion.
pub fn equivalent_moduli(
    u: &[Complex64],
    u_prime: &[Complex64],
    spec: &ModuliSpec,
    tau: Complex64,
) -> Result<EquivalenceResult, ModuliError> {
    spec.lattice_coordinates(u, tau)?;
    let (a0, b0) = spec.lattice_coordinates(u_prime, tau)?;
    let cache = spec.cache();
    let pinv = cache.pinv.as_ref().expect("checked above");
    let re = DVector::from_iterator(u.len(), u.iter().map(|z| z.re));
    let im = DVector::from_iterator(u.len(), u.iter().map(|z| z.im));
    for (k, m) in cache.matrices.iter().enumerate() {
        // Lattice coordinates of w·ũ − ũ′.
        let c_re = pinv * (m * &re);
        let c_im = pinv * (m * &im);
        let b: Vec<f64> = c_im.iter().zip(&b0).map(|(x, y)| x / tau.im - y).collect();
        let a: Vec<f64> = c_re
            .iter()
            .zip(&a0)
            .zip(&b)
            .zip(&b0)
            .map(|(((x, y), bb), bb0)| x - (bb + bb0) * tau.re - y)
            .collect();
        if let (Some(shift), Some(tau_shift)) = (integral(&a), integral(&b)) {
            return Ok(EquivalenceResult {
                equivalent: Equivalence::Equivalent,
                witness: Some(Witness {
                    word: cache.words[k].clone(),
                    shift,
                    tau_shift,
                }),
                searched: k + 1,
            });
        }
    }
    let (words, complete) = (&cache.words, cache.complete);
    Ok(EquivalenceResult {
        equivalent: if complete {
            Equivalence::NotEquivalent
        } else {
            Equivalence::Unknown
        },
        witness: None,
        searched: words.len(),
    })
}

/// Fundamental coweights of `g̃₀` inside `h̃₀`: `⟨ϖ_i, α̃_j⟩ = δ_ij`.
fn fundamental_coweights(coroots: &[ExactVector], cartan: &[Vec<i64>]) -> Vec<ExactVector> {
    let a = ExactMatrix::from_ints(cartan);
    let inv = a.inverse().expect("Cartan matrix is invertible");
    // ϖ_i = Σ_k c_ik α̃_k∨ with Σ_k c_ik A_kj = δ_ij, i.e. c = A⁻¹ (row i).
    (0..coroots.len())
        .map(|i| {
            let mut v = ExactVector::zeros(coroots[0].dim());
            for (k, ck) in coroots.iter().enumerate() {
                v = &v + &ck.scale(&inv.rows[i][k]);
            }
            v
        })
        .collect()
}

/// Menu of moduli spaces for a case.
pub fn moduli_menu(case: &Case) -> Vec<ModuliSpec> {
    let inv = &case.invariant;
    if inv.simple_roots.is_empty() {
        return Vec::new();
    }
    let ambient_dim = case.algebra.datum.ambient_dim;
    let type_name = inv.type_name();
    let weyl_order = weyl_group_order(&inv.components);
    let q = Lattice::generated_by(&format!("Q∨({type_name})"), &inv.simple_coroots);
    let coweights = fundamental_coweights(&inv.simple_coroots, &inv.cartan_matrix);
    let p = Lattice::generated_by(&format!("P∨({type_name})"), &coweights);
    let dim = inv.cartan_dim;

    let mut lattices: Vec<(Lattice, LatticeKind)> = vec![(q.clone(), LatticeKind::Coroot)];
    // For A-type algebras the menu offers the two extremes only.
    let extremes_only = case.kind() == RootType::A;
    if !extremes_only {
        let mut gens: Vec<(String, ExactVector)> = Vec::new();
        for (i, w) in coweights.iter().enumerate() {
            gens.push((format!("ϖ∨{}", i + 1), w.clone()));
        }
        for i in 0..coweights.len() {
            for j in i + 1..coweights.len() {
                gens.push((format!("(ϖ∨{}+ϖ∨{})", i + 1, j + 1), &coweights[i] + &coweights[j]));
            }
        }
        for (label, g) in gens {
            if q.contains(&g) {
                continue;
            }
            let mut all = q.basis.clone();
            all.push(g);
            let cand = Lattice::generated_by(&format!("Q∨({type_name})+ℤ{label}"), &all);
            let known = lattices
                .iter()
                .any(|(l, _)| l.contains_lattice(&cand) && cand.contains_lattice(l));
            if !known {
                let kind = if cand.contains_lattice(&p) {
                    LatticeKind::Coweight
                } else {
                    LatticeKind::Intermediate
                };
                lattices.push((cand, kind));
            }
        }
    }
    if extremes_only && !q.contains_lattice(&p) {
        lattices.push((p.clone(), LatticeKind::Coweight));
    }
    let q_basis = q.clone();
    lattices
        .into_iter()
        .map(|(mut l, kind)| {
            if kind == LatticeKind::Coweight {
                l.name = p.name.clone();
            }
            let index = l.index_of(&q_basis);
            ModuliSpec {
                case: case.id.clone(),
                name: l.name.clone(),
                kind,
                dim,
                ambient_dim,
                lattice: l,
                index_over_coroot: index,
                weyl_type: type_name.clone(),
                weyl_generators: inv.simple_roots.clone(),
                weyl_order,
                cache: OnceLock::new(),
            }
        })
        .collect()
}

/// Menu entry by lattice name or kind (`Q`, `P`, or the full name).
pub fn select_spec(menu: &[ModuliSpec], key: &str) -> Option<ModuliSpec> {
    let k = key.trim();
    menu.iter()
        .find(|s| match k {
            "Q" | "coroot" => s.kind == LatticeKind::Coroot,
            "P" | "coweight" => s.kind == LatticeKind::Coweight,
            _ => s.name == k,
        })
        .or_else(|| {
            // A menu whose coroot and coweight lattices coincide answers both.
            (menu.len() == 1 && (k == "P" || k == "coweight"))
                .then(|| &menu[0])
        })
        .cloned()
}

/// Reflection of an exact lattice vector, for callers outside this module.
pub fn exact_weyl_image(spec: &ModuliSpec, word: &[usize], x: &ExactVector) -> ExactVector {
    spec.weyl().apply_word(word, x)
}

/// Exact lattice membership of an exact vector.
pub fn in_lattice(spec: &ModuliSpec, x: &ExactVector) -> bool {
    spec.lattice.contains(x)
}

/// Convenience: an exact vector from rationals `n/d`.
pub fn exact(xs: &[(i64, i64)]) -> ExactVector {
    ExactVector(xs.iter().map(|&(n, d)| QSqrt2::frac(n, d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    const TAU: Complex64 = Complex64::new(0.1, 1.2);

    #[test]
    fn b_coweight_reduction() {
        let case = Case::from_parts("B", 2, "trivial").unwrap();
        let menu = moduli_menu(&case);
        let p = select_spec(&menu, "P").unwrap();
        let r = reduce_mod_lattice(&c(&[1.5, 0.25]), &p, TAU).unwrap();
        assert!((r[0] - 0.5).norm() < 1e-12 && (r[1] - 0.25).norm() < 1e-12);
    }

    #[test]
    fn lattice_points_reduce_to_zero() {
        let case = Case::from_parts("C", 4, "trivial").unwrap();
        for spec in moduli_menu(&case) {
            let a = [1.0, -2.0, 0.0, 3.0];
            let b = [0.0, 1.0, -1.0, 2.0];
            let u = spec.from_lattice_coordinates(&a, &b, TAU);
            let r = reduce_mod_lattice(&u, &spec, TAU).unwrap();
            assert!(r.iter().all(|z| z.norm() < 1e-9), "{}: {r:?}", spec.name);
        }
    }

    #[test]
    fn d_coroot_lattice_parity() {
        let case = Case::from_parts("D", 4, "trivial").unwrap();
        let q = select_spec(&moduli_menu(&case), "Q").unwrap();
        assert!(in_lattice(&q, &exact(&[(1, 1), (1, 1), (0, 1), (0, 1)])));
        assert!(!in_lattice(&q, &exact(&[(1, 1), (0, 1), (0, 1), (0, 1)])));
        let u = c(&[0.3, 0.1, 0.0, 0.2]);
        let r1 = reduce_mod_lattice(&u, &q, TAU).unwrap();
        let r2 = reduce_mod_lattice(&c(&[1.3, 1.1, 0.0, 0.2]), &q, TAU).unwrap();
        let r3 = reduce_mod_lattice(&c(&[1.3, 0.1, 0.0, 0.2]), &q, TAU).unwrap();
        assert!(r1.iter().zip(&r2).all(|(a, b)| (a - b).norm() < 1e-12));
        assert!(r1.iter().zip(&r3).any(|(a, b)| (a - b).norm() > 1e-6));
    }

    #[test]
    fn menus_have_the_expected_sizes() {
        for (t, r, cl, n) in [
            ("C", 5, "wn", 2),
            ("C", 4, "wn", 4),
            ("C", 6, "wn", 3),
            ("D", 8, "wn", 4),
            ("D", 5, "wn", 2),
            ("D", 5, "w1", 2),
            ("B", 3, "w1", 2),
            ("E6", 6, "w1", 1),
            ("E7", 7, "w7", 1),
            ("E6", 6, "trivial", 2),
            ("A", 5, "trivial", 2),
            ("A", 5, "p3", 2),
            ("D", 5, "trivial", 3),
            ("D", 4, "trivial", 4),
        ] {
            let case = Case::from_parts(t, r, cl).unwrap();
            let menu = moduli_menu(&case);
            let names: Vec<_> = menu.iter().map(|s| s.name.clone()).collect();
            assert_eq!(menu.len(), n, "{t}{r}/{cl}: {names:?}");
            assert!(menu.iter().all(ModuliSpec::is_weyl_stable), "{t}{r}/{cl}");
        }
    }

    #[test]
    fn sign_flipped_permutation_is_equivalent() {
        let case = Case::from_parts("B", 3, "w1").unwrap();
        let spec = select_spec(&moduli_menu(&case), "Q").unwrap();
        let u = c(&[0.0, 0.31, 0.17]);
        let v = c(&[0.0, -0.17, 0.31]);
        let res = equivalent_moduli(&u, &v, &spec, TAU).unwrap();
        assert_eq!(res.equivalent, Equivalence::Equivalent);
        assert!(verify_witness(&u, &v, &spec, TAU, res.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn generic_pair_is_not_equivalent() {
        let case = Case::from_parts("B", 2, "trivial").unwrap();
        let spec = select_spec(&moduli_menu(&case), "Q").unwrap();
        let res = equivalent_moduli(&c(&[0.123, 0.456]), &c(&[0.271, 0.0831]), &spec, TAU).unwrap();
        assert_eq!(res.equivalent, Equivalence::NotEquivalent);
        assert_eq!(res.searched, 8);
    }
}
