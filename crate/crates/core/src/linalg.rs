//! Dense exact-rational vectors and matrices.
//!
//! Everything here is over `BigRational`; there are no tolerances. Matrices act
//! on column vectors (`M · v`).

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(format!("bad rational {s:?}: zero denominator"));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Serde adapter: a rational as a `"p/q"` string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// A dense vector of rationals. Used for homology coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    pub fn zeros(len: usize) -> Self {
        QVector(vec![Rational::zero(); len])
    }

    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[k] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Rational, other: &QVector) {
        assert_eq!(self.len(), other.len());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        assert_eq!(self.len(), rhs.len());
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        assert_eq!(self.len(), rhs.len());
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>().map(QVector).map_err(D::Error::custom)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix whose k-th column is `columns[k]`.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {c} has wrong length");
            for (r, x) in col.0.iter().enumerate() {
                m.data[r * cols + c] = x.clone();
            }
        }
        m
    }

    pub fn from_rows(rows: &[QVector]) -> Self {
        let cols = rows.first().map_or(0, QVector::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.0.iter().cloned());
        }
        QMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> QVector {
        QVector(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = Rational::zero();
            for (a, b) in row.iter().zip(&v.0) {
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            out.push(acc);
        }
        QVector(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<QVector> = (0..self.rows).map(|r| self.row(r)).collect();
        rank_of(&rows)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> = (0..n).map(|r| self.row(r).0).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            let (top, rest) = m.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in rest {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] / &pivot;
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| format_rational(self.get(r, c))).collect()).collect()
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<QVector>::deserialize(d)?;
        if raw.iter().any(|r| r.len() != raw[0].len()) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(QMatrix::from_rows(&raw))
    }
}

/// Rank over Q of a family of equal-length vectors.
pub fn rank_of(vectors: &[QVector]) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v.clone());
    }
    basis.rank()
}

/// Incrementally maintained row-echelon basis of a subspace.
///
/// `insert` reduces a vector against the current pivots and keeps it if a
/// nonzero remainder survives.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    // (pivot column, row with a 1 in the pivot column)
    rows: Vec<(usize, QVector)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: QVector) -> QVector {
        for (pivot, row) in &self.rows {
            if !v.0[*pivot].is_zero() {
                let c = -v.0[*pivot].clone();
                v.axpy(&c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Returns `true` if `v` was independent of the current span.
    pub fn insert(&mut self, v: QVector) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.0.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v.0[pivot].recip();
        v = v.scale(&inv);
        for (_, row) in self.rows.iter_mut() {
            if !row.0[pivot].is_zero() {
                let c = -row.0[pivot].clone();
                row.axpy(&c, &v);
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn signum(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-4/6"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
        assert_eq!(format_rational(&ratio(-4, 6)), "-2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rank_examples() {
        let a = QMatrix::from_rows(&[
            QVector::from_ints(&[1, 2, 3]),
            QVector::from_ints(&[2, 4, 6]),
            QVector::from_ints(&[0, 1, 1]),
        ]);
        assert_eq!(a.rank(), 2);
        assert_eq!(QMatrix::identity(4).rank(), 4);
        assert_eq!(QMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(rank_of(&[]), 0);
    }

    #[test]
    fn determinant_and_pow() {
        let m = QMatrix::from_rows(&[QVector::from_ints(&[1, 1]), QVector::from_ints(&[0, 1])]);
        assert_eq!(m.determinant(), rat(1));
        let m5 = m.pow(5);
        assert_eq!(m5, QMatrix::from_rows(&[QVector::from_ints(&[1, 5]), QVector::from_ints(&[0, 1])]));
        let s = QMatrix::from_rows(&[QVector::from_ints(&[0, 1]), QVector::from_ints(&[1, 0])]);
        assert_eq!(s.determinant(), rat(-1));
        assert!(s.pow(2).is_identity());
    }

    #[test]
    fn echelon_membership() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(QVector::from_ints(&[1, 1, 0])));
        assert!(b.insert(QVector::from_ints(&[0, 1, 1])));
        assert!(!b.insert(QVector::from_ints(&[1, 2, 1])));
        assert!(b.contains(&QVector::from_ints(&[2, 0, -2])));
        assert!(!b.contains(&QVector::from_ints(&[0, 0, 1])));
    }

    #[test]
    fn matrix_json_uses_fraction_strings() {
        let m = QMatrix::from_rows(&[QVector(vec![ratio(1, 2), rat(0)]), QVector(vec![rat(-3), rat(1)])]);
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(js, r#"[["1/2","0"],["-3","1"]]"#);
        let back: QMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
    }
}
