//! Exact arithmetic in the quadratic field ℚ(√2) and exact linear algebra.
//!
//! Every ambient coordinate of the supported root systems lies in ℚ(√2):
//! the classical series use rationals only, while E6 and E7 carry `1/√2`
//! coefficients on their last three axes. All combinatorial work (lattice
//! membership, weights, Weyl actions) is done here without floating point.
//! Floats enter only through [`QSqrt2::to_f64`] / [`QSqrt2::to_complex`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A linear system had no unique solution.
    #[error("singular matrix")]
    Singular,
    /// Operand shapes do not match.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Expected length.
        expected: usize,
        /// Length found.
        found: usize,
    },
    /// A rational literal could not be parsed.
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

/// Build a rational `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    // `BigRational::to_f64` is correctly rounded for moderate sizes; fall
    // back to numerator/denominator division when it declines.
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

fn parse_rat(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| err())?,
        )),
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `a + b·√2` of ℚ(√2) with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    /// Rational part.
    pub a: BigRational,
    /// Coefficient of √2.
    pub b: BigRational,
}

impl QSqrt2 {
    /// `a + b√2` from rationals.
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// The rational number `n/d`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::new(rat(n, d), BigRational::zero())
    }

    /// The integer `n`.
    pub fn int(n: i64) -> Self {
        Self::frac(n, 1)
    }

    /// `(n/d)·√2`.
    pub fn sqrt2_frac(n: i64, d: i64) -> Self {
        Self::new(BigRational::zero(), rat(n, d))
    }

    /// A rational embedded in the field.
    pub fn from_rational(a: BigRational) -> Self {
        Self::new(a, BigRational::zero())
    }

    /// `√2` itself.
    pub fn sqrt2() -> Self {
        Self::sqrt2_frac(1, 1)
    }

    /// Galois conjugate `a − b√2`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²` (a rational).
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - rat(2, 1) * &self.b * &self.b
    }

    /// True when the √2 part vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True when the value is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// The value as a machine integer when it is a (small) rational integer.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.a.numer().to_i64()
        } else {
            None
        }
    }

    /// Nearest double.
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * std::f64::consts::SQRT_2
    }

    /// Embedding into the complex doubles (real axis).
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    /// Exact reciprocal.
    pub fn checked_recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -(&self.b / &n)))
    }

    /// Exact quotient; errors on a zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.checked_recip()?)
    }

    /// Exact sign of the real number `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            (sa, _) => {
                // Opposite signs: compare a² with 2b².
                let lhs = &self.a * &self.a;
                let rhs = rat(2, 1) * &self.b * &self.b;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// True when strictly positive.
    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// True when strictly negative.
    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.a)),
            (true, false) => write!(f, "{}√2", fmt_rat(&self.b)),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}√2", fmt_rat(&self.a), fmt_rat(&-self.b.clone()))
                } else {
                    write!(f, "{}+{}√2", fmt_rat(&self.a), fmt_rat(&self.b))
                }
            }
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct QSqrt2Repr {
    a: String,
    b: String,
}

impl Serialize for QSqrt2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QSqrt2Repr {
            a: fmt_rat(&self.a),
            b: fmt_rat(&self.b),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSqrt2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = QSqrt2Repr::deserialize(d)?;
        let a = parse_rat(&r.a).map_err(serde::de::Error::custom)?;
        let b = parse_rat(&r.b).map_err(serde::de::Error::custom)?;
        Ok(Self::new(a, b))
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        Self::int(1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a QSqrt2> for &'a QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: &'a QSqrt2) -> QSqrt2 {
                let f: fn(&QSqrt2, &QSqrt2) -> QSqrt2 = $body;
                f(self, rhs)
            }
        }
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: &'a QSqrt2) -> QSqrt2 {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| QSqrt2::new(&x.a + &y.a, &x.b + &y.b));
forward_binop!(Sub, sub, |x, y| QSqrt2::new(&x.a - &y.a, &x.b - &y.b));
forward_binop!(Mul, mul, |x, y| QSqrt2::new(
    &x.a * &y.a + rat(2, 1) * &x.b * &y.b,
    &x.a * &y.b + &x.b * &y.a
));
forward_binop!(Div, div, |x, y| x
    .checked_div(y)
    .expect("QSqrt2 division by zero; use checked_div to handle it"));

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QSqrt2> for QSqrt2 {
    fn sub_assign(&mut self, rhs: &QSqrt2) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl FromStr for QSqrt2 {
    type Err = ScalarError;
    /// Parses `p/q`, `p/q√2`, `p/q+r/s√2` (also `r2` for `√2`).
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let t: String = s.replace("r2", "√2").chars().filter(|c| !c.is_whitespace()).collect();
        if !t.contains('√') {
            return Ok(Self::from_rational(parse_rat(&t)?));
        }
        let body = t.trim_end_matches("√2");
        // Split at the last sign that is not leading.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rat(&body[..i])?, &body[i..]),
            None => (BigRational::zero(), body),
        };
        let b = b.trim_start_matches('+');
        let b = match b {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => parse_rat(b)?,
        };
        Ok(Self::new(a, b))
    }
}

/// A vector with exact ℚ(√2) coordinates in the ambient space.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactVector(pub Vec<QSqrt2>);

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl ExactVector {
    /// Zero vector of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self(vec![QSqrt2::zero(); dim])
    }

    /// Unit vector `e_{i}` (0-based index).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = QSqrt2::one();
        v
    }

    /// Vector of rationals `n_i/d`.
    pub fn from_ints(xs: &[i64], d: i64) -> Self {
        Self(xs.iter().map(|&n| QSqrt2::frac(n, d)).collect())
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Euclidean pairing.
    pub fn dot(&self, other: &Self) -> QSqrt2 {
        let mut s = QSqrt2::zero();
        for (x, y) in self.0.iter().zip(&other.0) {
            if !x.is_zero() && !y.is_zero() {
                s += &(x * y);
            }
        }
        s
    }

    /// Squared length.
    pub fn norm2(&self) -> QSqrt2 {
        self.dot(self)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &QSqrt2) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// True when every coordinate vanishes.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Coordinates as doubles.
    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(QSqrt2::to_f64).collect()
    }

    /// Coroot `2v/(v,v)`.
    pub fn coroot(&self) -> Self {
        let n = self.norm2();
        self.scale(&(QSqrt2::int(2) / n))
    }

    /// Reflection of `x` in the hyperplane orthogonal to `self`.
    pub fn reflect(&self, x: &Self) -> Self {
        let c = x.dot(&self.coroot());
        x - &self.scale(&c)
    }
}

impl<'a> Add<&'a ExactVector> for &'a ExactVector {
    type Output = ExactVector;
    fn add(self, rhs: &'a ExactVector) -> ExactVector {
        ExactVector(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Sub<&'a ExactVector> for &'a ExactVector {
    type Output = ExactVector;
    fn sub(self, rhs: &'a ExactVector) -> ExactVector {
        ExactVector(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        ExactVector(self.0.iter().map(|x| -x).collect())
    }
}

/// Dense square or rectangular matrix over ℚ(√2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ExactMatrix {
    /// Rows of the matrix.
    pub rows: Vec<Vec<QSqrt2>>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{:?}", ExactVector(r.clone()))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    /// Build from rows.
    pub fn from_rows(rows: Vec<Vec<QSqrt2>>) -> Self {
        Self { rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[ExactVector]) -> Self {
        let n = cols.first().map_or(0, ExactVector::dim);
        let rows = (0..n)
            .map(|i| cols.iter().map(|c| c.0[i].clone()).collect())
            .collect();
        Self { rows }
    }

    /// Integer matrix.
    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Self {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&x| QSqrt2::int(x)).collect())
                .collect(),
        }
    }

    /// Identity of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = QSqrt2::one();
        }
        m
    }

    /// Zero matrix.
    pub fn zeros(r: usize, c: usize) -> Self {
        Self {
            rows: vec![vec![QSqrt2::zero(); c]; r],
        }
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> ExactVector {
        ExactVector(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let (r, c) = (self.nrows(), self.ncols());
        let mut t = Self::zeros(c, r);
        for i in 0..r {
            for j in 0..c {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &ExactVector) -> ExactVector {
        ExactVector(self.rows.iter().map(|r| ExactVector(r.clone()).dot(v)).collect())
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let ot = other.transpose();
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    let rv = ExactVector(r.clone());
                    ot.rows.iter().map(|c| rv.dot(&ExactVector(c.clone()))).collect()
                })
                .collect(),
        }
    }

    /// Reduced row echelon form together with pivot columns.
    fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let (r, c) = (m.nrows(), m.ncols());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let Some(p) = (row..r).find(|&i| !m.rows[i][col].is_zero()) else {
                continue;
            };
            m.rows.swap(row, p);
            let inv = m.rows[row][col].checked_recip().expect("pivot is nonzero");
            for x in m.rows[row].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..r {
                if i != row && !m.rows[i][col].is_zero() {
                    let f = m.rows[i][col].clone();
                    for j in 0..c {
                        if !m.rows[row][j].is_zero() {
                            let d = &f * &m.rows[row][j];
                            m.rows[i][j] -= &d;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank over ℚ(√2).
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : M·x = 0}` (RREF basis).
    pub fn nullspace(&self) -> Vec<ExactVector> {
        let (red, piv) = self.rref();
        let c = self.ncols();
        (0..c)
            .filter(|j| !piv.contains(j))
            .map(|free| {
                let mut x = ExactVector::zeros(c);
                x.0[free] = QSqrt2::one();
                for (row, &p) in piv.iter().enumerate() {
                    x.0[p] = -red.rows[row][free].clone();
                }
                x
            })
            .collect()
    }

    /// Exact inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        let n = self.nrows();
        if self.ncols() != n {
            return Err(ScalarError::DimensionMismatch {
                expected: n,
                found: self.ncols(),
            });
        }
        let mut aug = self.clone();
        for (i, r) in aug.rows.iter_mut().enumerate() {
            r.extend((0..n).map(|j| if i == j { QSqrt2::one() } else { QSqrt2::zero() }));
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(ScalarError::Singular);
        }
        Ok(Self {
            rows: red.rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }

    /// Determinant (square matrices).
    pub fn det(&self) -> QSqrt2 {
        let n = self.nrows();
        let mut m = self.clone();
        let mut det = QSqrt2::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.rows[i][col].is_zero()) else {
                return QSqrt2::zero();
            };
            if p != col {
                m.rows.swap(p, col);
                det = -det;
            }
            let piv = m.rows[col][col].clone();
            det = &det * &piv;
            let inv = piv.checked_recip().expect("pivot is nonzero");
            for i in col + 1..n {
                if m.rows[i][col].is_zero() {
                    continue;
                }
                let f = &m.rows[i][col] * &inv;
                for j in col..n {
                    let d = &f * &m.rows[col][j];
                    m.rows[i][j] -= &d;
                }
            }
        }
        det
    }
}

/// Solve `M·x = rhs` exactly for square nonsingular `M`.
pub fn exact_linear_solve(m: &ExactMatrix, rhs: &ExactVector) -> Result<ExactVector, ScalarError> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(ScalarError::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    if rhs.dim() != n {
        return Err(ScalarError::DimensionMismatch {
            expected: n,
            found: rhs.dim(),
        });
    }
    let mut aug = m.clone();
    for (r, b) in aug.rows.iter_mut().zip(&rhs.0) {
        r.push(b.clone());
    }
    let (red, piv) = aug.rref();
    if piv.len() < n || piv.contains(&n) {
        return Err(ScalarError::Singular);
    }
    Ok(ExactVector(red.rows.iter().map(|r| r[n].clone()).collect()))
}

/// Coordinates of `v` in the span of `basis` (not necessarily spanning the
/// ambient space). Returns `None` when `v` is outside the span.
pub fn coordinates_in_span(basis: &[ExactVector], v: &ExactVector) -> Option<ExactVector> {
    let k = basis.len();
    let mut aug = ExactMatrix::from_columns(basis);
    if k == 0 {
        return v.is_zero().then(ExactVector::default);
    }
    for (r, b) in aug.rows.iter_mut().zip(&v.0) {
        r.push(b.clone());
    }
    let (red, piv) = aug.rref();
    if piv.contains(&k) || piv.len() < k {
        return None;
    }
    Some(ExactVector(red.rows[..k].iter().map(|r| r[k].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_reciprocal() {
        let one = QSqrt2::int(1);
        let r2 = QSqrt2::sqrt2();
        assert_eq!(&one * &r2, r2);
        assert_eq!(&r2 * &r2, QSqrt2::int(2));
        let x = QSqrt2::new(rat(1, 1), rat(1, 1));
        let inv = x.checked_recip().unwrap();
        assert_eq!(inv, QSqrt2::new(rat(-1, 1), rat(1, 1)));
        assert_eq!(&inv * &x, one);
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(
            QSqrt2::int(1).checked_div(&QSqrt2::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn solve_a2_cartan() {
        let m = ExactMatrix::from_ints(&[vec![2, -1], vec![-1, 2]]);
        let x = exact_linear_solve(&m, &ExactVector::from_ints(&[1, 0], 1)).unwrap();
        assert_eq!(x, ExactVector::from_ints(&[2, 1], 3));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let rhs = ExactVector(vec![QSqrt2::sqrt2(), QSqrt2::frac(-3, 7), QSqrt2::int(5)]);
        assert_eq!(exact_linear_solve(&ExactMatrix::identity(3), &rhs).unwrap(), rhs);
    }

    #[test]
    fn singular_is_reported() {
        let m = ExactMatrix::from_ints(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(
            exact_linear_solve(&m, &ExactVector::from_ints(&[1, 0], 1)),
            Err(ScalarError::Singular)
        );
        assert_eq!(m.inverse(), Err(ScalarError::Singular));
        assert!(m.det().is_zero());
    }

    #[test]
    fn ordering_is_exact() {
        // 3 − 2√2 ≈ 0.17 > 0 and 1 − √2 < 0.
        assert!(QSqrt2::new(rat(3, 1), rat(-2, 1)).is_positive());
        assert!(QSqrt2::new(rat(1, 1), rat(-1, 1)).is_negative());
        assert!(QSqrt2::sqrt2() > QSqrt2::frac(7, 5));
        assert!(QSqrt2::sqrt2() < QSqrt2::frac(3, 2));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3/8", "-1", "1/2√2", "1/3-2/3√2", "-√2"] {
            let x: QSqrt2 = s.parse().unwrap();
            let back: QSqrt2 = x.to_string().parse().unwrap();
            assert_eq!(x, back, "{s}");
        }
        let j = serde_json::to_string(&QSqrt2::new(rat(1, 2), rat(-2, 3))).unwrap();
        assert_eq!(j, r#"{"a":"1/2","b":"-2/3"}"#);
        let x: QSqrt2 = serde_json::from_str(&j).unwrap();
        assert_eq!(x, QSqrt2::new(rat(1, 2), rat(-2, 3)));
    }

    #[test]
    fn span_coordinates() {
        let b = vec![ExactVector::from_ints(&[1, -1, 0], 1), ExactVector::from_ints(&[0, 1, -1], 1)];
        let c = coordinates_in_span(&b, &ExactVector::from_ints(&[1, 0, -1], 1)).unwrap();
        assert_eq!(c, ExactVector::from_ints(&[1, 1], 1));
        assert!(coordinates_in_span(&b, &ExactVector::from_ints(&[1, 0, 0], 1)).is_none());
    }
}
