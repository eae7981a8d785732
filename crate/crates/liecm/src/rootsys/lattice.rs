//! Exact lattices in the ambient space: bases, membership, indices.

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::scalars::{coordinates_in_span, ExactMatrix, ExactVector, QSqrt2};

/// A full-rank lattice in a subspace of the ambient space, given by a ℤ-basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lattice {
    /// Name such as `Q`, `P∨`, `P^V`.
    pub name: String,
    /// ℤ-basis (linearly independent over ℚ(√2)).
    pub basis: Vec<ExactVector>,
}

/// Row-style Hermite normal form of an integer matrix; zero rows dropped.
pub fn integer_hnf(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        // Euclid on column c below row r.
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).expect("nonempty");
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[r][c]);
                    for j in 0..ncols {
                        let d = q * m[r][j];
                        m[i][j] -= d;
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && m[r][c] != 0 {
            if m[r][c] < 0 {
                for x in m[r].iter_mut() {
                    *x = -*x;
                }
            }
            for i in 0..r {
                let q = m[i][c].div_euclid(m[r][c]);
                if q != 0 {
                    for j in 0..ncols {
                        let d = q * m[r][j];
                        m[i][j] -= d;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Diagonal of the Smith normal form of a square integer matrix.
pub fn smith_diagonal(a: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let n = m.len();
    let mut diag = Vec::new();
    for t in 0..n {
        // Find a nonzero pivot in the remaining block.
        let Some((pi, pj)) = (t..n)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            diag.extend(std::iter::repeat_n(0, n - t));
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..n {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    for j in t..n {
                        let d = q * m[t][j];
                        m[i][j] -= d;
                    }
                }
            }
            for j in t + 1..n {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    for i in t..n {
                        let d = q * m[i][t];
                        m[i][j] -= d;
                    }
                }
            }
            // Pick a smaller remainder as new pivot if one exists.
            let cand = (t + 1..n)
                .map(|i| (i, t))
                .chain((t + 1..n).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            if let Some((i, j)) = cand {
                if i != t {
                    m.swap(t, i);
                } else {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                }
                changed = true;
            } else {
                // Ensure divisibility of the rest of the block.
                let bad = (t + 1..n)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % m[t][t] != 0);
                if let Some((i, _)) = bad {
                    for j in t..n {
                        let d = m[i][j];
                        m[t][j] += d;
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(m[t][t].abs() as i64);
    }
    diag
}

impl Lattice {
    /// Lattice with a given basis (assumed independent).
    pub fn from_basis(name: &str, basis: Vec<ExactVector>) -> Self {
        Self {
            name: name.to_string(),
            basis,
        }
    }

    /// Lattice generated by an arbitrary finite set of vectors whose
    /// coordinates in a maximal independent subset are rational.
    pub fn generated_by(name: &str, gens: &[ExactVector]) -> Self {
        let mut reference: Vec<ExactVector> = Vec::new();
        for g in gens {
            let mut trial = reference.clone();
            trial.push(g.clone());
            if ExactMatrix::from_columns(&trial).rank() == trial.len() {
                reference = trial;
            }
        }
        let coords: Vec<Vec<num_rational::BigRational>> = gens
            .iter()
            .map(|g| {
                coordinates_in_span(&reference, g)
                    .expect("generator lies in span of reference")
                    .0
                    .into_iter()
                    .map(|x| {
                        assert!(x.is_rational(), "lattice generators must have rational coordinates");
                        x.a
                    })
                    .collect()
            })
            .collect();
        let mut den = num_bigint::BigInt::from(1);
        for row in &coords {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let ints: Vec<Vec<i128>> = coords
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x.numer() * (&den / x.denom())).to_i128().expect("small lattice entries"))
                    .collect()
            })
            .collect();
        let hnf = integer_hnf(&ints);
        let den_q = QSqrt2::from_rational(num_rational::BigRational::from_integer(den));
        let basis = hnf
            .iter()
            .map(|row| {
                let mut out = ExactVector::zeros(gens[0].dim());
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        out = &out + &reference[k].scale(&(QSqrt2::int(c as i64) / den_q.clone()));
                    }
                }
                out
            })
            .collect();
        Self::from_basis(name, basis)
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Exact coordinates in the lattice basis (None if outside the span).
    pub fn coordinates(&self, x: &ExactVector) -> Option<ExactVector> {
        coordinates_in_span(&self.basis, x)
    }

    /// Exact membership test.
    pub fn contains(&self, x: &ExactVector) -> bool {
        if x.is_zero() {
            return true;
        }
        self.coordinates(x).is_some_and(|c| c.0.iter().all(QSqrt2::is_integer))
    }

    /// True when every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Index `[self : sub]` for a full-rank sublattice (0 if not a sublattice).
    pub fn index_of(&self, sub: &Lattice) -> u64 {
        if !self.contains_lattice(sub) || sub.rank() != self.rank() {
            return 0;
        }
        let cols: Vec<ExactVector> = sub
            .basis
            .iter()
            .map(|b| self.coordinates(b).expect("sublattice vector"))
            .collect();
        let det = ExactMatrix::from_columns(&cols).det();
        det.a.abs().to_integer().to_u64().unwrap_or(0)
    }

    /// Basis vectors as doubles.
    pub fn basis_f64(&self) -> Vec<Vec<f64>> {
        self.basis.iter().map(ExactVector::to_f64).collect()
    }
}

impl std::ops::Add for Lattice {
    type Output = Lattice;
    /// Sum of lattices (ℤ-span of the union of bases).
    fn add(self, rhs: Lattice) -> Lattice {
        let mut gens = self.basis;
        gens.extend(rhs.basis);
        if gens.is_empty() {
            return Lattice::from_basis("0", vec![]);
        }
        Lattice::generated_by(&format!("{}+{}", self.name, rhs.name), &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_dependent_rows() {
        let h = integer_hnf(&[vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn smith_of_cartan_matrices() {
        assert_eq!(smith_diagonal(&[vec![2, -1], vec![-1, 2]]), vec![1, 3]);
        let d4 = crate::rootsys::standard_cartan('D', 4);
        let mut s = smith_diagonal(&d4);
        s.sort_unstable();
        assert_eq!(s, vec![1, 1, 2, 2]);
        let d5 = crate::rootsys::standard_cartan('D', 5);
        let mut s = smith_diagonal(&d5);
        s.sort_unstable();
        assert_eq!(s, vec![1, 1, 1, 1, 4]);
    }

    #[test]
    fn generated_lattice_membership() {
        let gens = vec![ExactVector::from_ints(&[2, 0], 1), ExactVector::from_ints(&[1, 1], 1)];
        let l = Lattice::generated_by("L", &gens);
        assert!(l.contains(&ExactVector::from_ints(&[0, 2], 1)));
        assert!(!l.contains(&ExactVector::from_ints(&[1, 0], 1)));
        assert!(l.contains(&ExactVector::zeros(2)));
    }
}
