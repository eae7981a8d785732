//! Weyl groups as words in simple reflections.
//!
//! Elements are never stored as a multiplication table; they are evaluated
//! on vectors through their words. Full enumeration is offered only below an
//! explicit size cap.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use super::cartan::CartanComponent;
use crate::scalars::{ExactMatrix, ExactVector, QSqrt2};

/// Order of the Weyl group of a semisimple type.
pub fn weyl_group_order(components: &[CartanComponent]) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    components
        .iter()
        .map(|c| {
            let n = c.rank;
            match (c.series, n) {
                ('A', _) => fact(n + 1),
                ('B', _) | ('C', _) => (1u128 << n) * fact(n),
                ('D', _) => (1u128 << (n - 1)) * fact(n),
                ('E', 6) => 51_840,
                ('E', 7) => 2_903_040,
                ('E', 8) => 696_729_600,
                ('F', 4) => 1_152,
                ('G', 2) => 12,
                _ => 0,
            }
        })
        .product()
}

/// Reflection group generated by reflections in a set of simple roots.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    /// Simple roots (ambient coordinates).
    pub simple: Vec<ExactVector>,
    coroots: Vec<ExactVector>,
    /// Vector pairing to 1 with every simple root; positive on positive roots.
    positivity: ExactVector,
    simple_f64: Vec<Vec<f64>>,
    coroots_f64: Vec<Vec<f64>>,
}

fn dot_f(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl WeylGroup {
    /// Group generated by the reflections in `simple`.
    pub fn new(simple: Vec<ExactVector>) -> Self {
        let coroots: Vec<ExactVector> = simple.iter().map(ExactVector::coroot).collect();
        let r = simple.len();
        let dim = simple.first().map_or(0, ExactVector::dim);
        let positivity = if r == 0 {
            ExactVector::zeros(dim)
        } else {
            let gram = ExactMatrix::from_rows(
                simple.iter().map(|a| simple.iter().map(|b| a.dot(b)).collect()).collect(),
            );
            let c = crate::scalars::exact_linear_solve(&gram, &ExactVector(vec![QSqrt2::one(); r]))
                .expect("simple roots are independent");
            let mut x = ExactVector::zeros(dim);
            for (ck, a) in c.0.iter().zip(&simple) {
                x = &x + &a.scale(ck);
            }
            x
        };
        Self {
            simple_f64: simple.iter().map(ExactVector::to_f64).collect(),
            coroots_f64: coroots.iter().map(ExactVector::to_f64).collect(),
            simple,
            coroots,
            positivity,
        }
    }

    /// Rank (number of generators).
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Apply the simple reflection `s_i` (0-based).
    pub fn reflect(&self, i: usize, x: &ExactVector) -> ExactVector {
        let c = x.dot(&self.coroots[i]);
        if c.is_zero() {
            return x.clone();
        }
        x - &self.simple[i].scale(&c)
    }

    /// Apply a word `s_{w_1} s_{w_2} … s_{w_k}` (rightmost acts first).
    pub fn apply_word(&self, word: &[usize], x: &ExactVector) -> ExactVector {
        word.iter().rev().fold(x.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Float version of [`Self::reflect`].
    pub fn reflect_f64(&self, i: usize, x: &[f64]) -> Vec<f64> {
        let c = dot_f(x, &self.coroots_f64[i]);
        x.iter().zip(&self.simple_f64[i]).map(|(a, b)| a - c * b).collect()
    }

    /// Float version of [`Self::apply_word`].
    pub fn apply_word_f64(&self, word: &[usize], x: &[f64]) -> Vec<f64> {
        word.iter().rev().fold(x.to_vec(), |acc, &i| self.reflect_f64(i, &acc))
    }

    /// Matrix of the element given by a word.
    pub fn matrix(&self, word: &[usize]) -> ExactMatrix {
        let dim = self.positivity.dim();
        let cols: Vec<ExactVector> = (0..dim)
            .map(|j| self.apply_word(word, &ExactVector::unit(dim, j)))
            .collect();
        ExactMatrix::from_columns(&cols)
    }

    /// True if `x` is a positive combination of simple roots (assuming `x` is a root).
    pub fn is_positive_root(&self, x: &ExactVector) -> bool {
        x.dot(&self.positivity).is_positive()
    }

    /// Dominant representative of the orbit of `x` reached by simple
    /// reflections, with a word `w` such that `w·x` is the result.
    pub fn dominant_representative(&self, x: &ExactVector) -> (ExactVector, Vec<usize>) {
        let mut cur = x.clone();
        let mut word: Vec<usize> = Vec::new();
        loop {
            let neg = (0..self.rank()).find(|&i| cur.dot(&self.simple[i]).is_negative());
            match neg {
                Some(i) => {
                    cur = self.reflect(i, &cur);
                    word.insert(0, i);
                }
                None => return (cur, word),
            }
        }
    }

    /// Float version of [`Self::dominant_representative`]; pairings above
    /// `−tol` count as nonnegative.
    pub fn dominant_representative_f64(&self, x: &[f64], tol: f64) -> (Vec<f64>, Vec<usize>) {
        let mut cur = x.to_vec();
        let mut word = Vec::new();
        for _ in 0..100_000 {
            let neg = (0..self.rank()).find(|&i| dot_f(&cur, &self.simple_f64[i]) < -tol);
            match neg {
                Some(i) => {
                    cur = self.reflect_f64(i, &cur);
                    word.insert(0, i);
                }
                None => break,
            }
        }
        (cur, word)
    }

    /// Longest element of the parabolic subgroup generated by `subset`
    /// (all generators when `subset` is `None`), as a reduced word.
    pub fn longest_word(&self, subset: Option<&[usize]>) -> Vec<usize> {
        let gens: Vec<usize> = subset.map_or_else(|| (0..self.rank()).collect(), <[usize]>::to_vec);
        // w·α_i > 0 ⟺ ℓ(w s_i) > ℓ(w); extend w on the right while possible.
        let mut word: Vec<usize> = Vec::new();
        loop {
            let ext = gens
                .iter()
                .copied()
                .find(|&i| self.is_positive_root(&self.apply_word(&word, &self.simple[i])));
            match ext {
                Some(i) => word.push(i),
                None => return word,
            }
        }
    }

    /// All elements as words, by breadth-first search on the orbit of a
    /// regular vector; `None` when the group is larger than `cap`.
    pub fn enumerate(&self, cap: usize) -> Option<Vec<Vec<usize>>> {
        let (words, complete) = self.enumerate_bounded(cap);
        complete.then_some(words)
    }

    /// The first `cap` elements in breadth-first (length) order, and whether
    /// that exhausts the group.
    pub fn enumerate_bounded(&self, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let start: Vec<f64> = self.positivity.to_f64();
        let key = |v: &[f64]| -> Vec<i64> { v.iter().map(|x| (x * 1e6).round() as i64).collect() };
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut points: Vec<Vec<f64>> = vec![start.clone()];
        seen.insert(key(&start), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for i in 0..self.rank() {
                let p = self.reflect_f64(i, &points[idx]);
                let k = key(&p);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                    if words.len() >= cap {
                        return (words, false);
                    }
                    let mut w = vec![i];
                    w.extend(words[idx].iter().copied());
                    e.insert(words.len());
                    words.push(w);
                    points.push(p);
                    queue.push_back(words.len() - 1);
                }
            }
        }
        (words, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{RootDatum, RootType};

    #[test]
    fn b_sign_flip_and_dominant() {
        let d = RootDatum::new(RootType::B, 3).unwrap();
        let w = d.weyl();
        // s_{e1} = s_1 s_2 s_3 s_2 s_1 flips the first coordinate.
        let e1 = ExactVector::from_ints(&[1, 0, 0], 1);
        let word = [0, 1, 2, 1, 0];
        assert_eq!(w.apply_word(&word, &e1), ExactVector::from_ints(&[-1, 0, 0], 1));
        let (dom, wd) = w.dominant_representative(&ExactVector::from_ints(&[-1, 0, 0], 1));
        assert_eq!(dom, e1);
        assert_eq!(w.apply_word(&wd, &ExactVector::from_ints(&[-1, 0, 0], 1)), e1);
        let rho = d.rho.clone();
        assert_eq!(w.dominant_representative(&rho).0, rho);
    }

    #[test]
    fn enumeration_sizes() {
        for (t, r, n) in [(RootType::A, 3, 24), (RootType::B, 3, 48), (RootType::D, 4, 192)] {
            let d = RootDatum::new(t, r).unwrap();
            assert_eq!(d.weyl().enumerate(1_000_000).unwrap().len(), n);
            assert_eq!(d.weyl_order(), n as u128);
        }
        let e6 = RootDatum::new(RootType::E6, 6).unwrap();
        assert_eq!(e6.weyl().enumerate(10), None);
    }

    #[test]
    fn longest_word_negates_positive_chamber_for_b() {
        let d = RootDatum::new(RootType::B, 3).unwrap();
        let w = d.weyl();
        let w0 = w.longest_word(None);
        assert_eq!(w0.len(), d.num_positive());
        assert_eq!(w.apply_word(&w0, &d.rho), -&d.rho);
    }
}
