//! Exact rational scalars, vectors and dense matrices.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals kept in
//! lowest terms, and elimination is fraction-free (Bareiss) on integer rows so
//! intermediate values stay small for the 5 to 16 dimensional problems this
//! crate deals with.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AlgebraError, Result};

/// An exact rational number.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// The rational `num / den`, reduced. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (decimal integers, optional sign).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || AlgebraError::Parse(format!("invalid scalar {text:?}"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(AlgebraError::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Scalar::new(num, den))
}

/// Formats a scalar as `"p/q"`; the denominator is always written.
pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// A coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Vector(vec![Scalar::zero(); len])
    }

    /// The `i`th standard basis vector of length `len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&n| int(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        if k.is_zero() {
            return Vector::zeros(self.len());
        }
        Vector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, k: &Scalar, other: &Vector) {
        debug_assert_eq!(self.len(), other.len());
        if k.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Row-vector product `self · m`.
    pub fn mul_matrix(&self, m: &Matrix) -> Result<Vector> {
        if self.len() != m.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: m.rows,
                found: self.len(),
            });
        }
        let mut out = Vector::zeros(m.cols);
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                let entry = m.get(i, j);
                if !entry.is_zero() {
                    out.0[j] += c * entry;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for c in &self.0 {
            seq.serialize_element(&format_scalar(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| parse_scalar(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Vector)
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.len(), rhs.len());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.len(), rhs.len());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

/// A dense row-major matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vector::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.0);
        }
        Matrix::new(n, cols, data)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| Vector::from_ints(r)).collect())
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Exact product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * k).collect();
        Matrix { data, ..*self }
    }

    /// `self^exp` by repeated multiplication.
    pub fn pow(&self, exp: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Rows scaled by the lcm of their denominators, as integers.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
            })
            .collect()
    }

    /// Fraction-free forward elimination. Returns the integer echelon form,
    /// its pivot columns, and the number of row swaps performed.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, usize) {
        let mut a = self.integer_rows();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&p| !a[p][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    debug_assert!((&num % &prev).is_zero());
                    a[i][j] = num / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (a, pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (ints, pivots, _) = self.bareiss_echelon();
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, row) in ints.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.data[i * self.cols + j] = Scalar::from_integer(v.clone());
            }
        }
        for (r, &c) in pivots.iter().enumerate().rev() {
            let lead = m.get(r, c).clone();
            for j in c..self.cols {
                let v = m.get(r, j) / &lead;
                m.set(r, j, v);
            }
            for i in 0..r {
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
        }
        for i in pivots.len()..self.rows {
            for j in 0..self.cols {
                m.set(i, j, Scalar::zero());
            }
        }
        (m, pivots)
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column in
    /// increasing order, each with a 1 in its free column and zeros in the
    /// other free columns.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = Vector::unit(self.cols, f);
                for (r, &p) in pivots.iter().enumerate() {
                    v.0[p] = -rref.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Basis of `{v : v · self = 0}` (row vectors).
    pub fn left_kernel_basis(&self) -> Vec<Vector> {
        self.transpose().kernel_basis()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        let scale: BigInt = (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
            })
            .product();
        let (ints, pivots, swaps) = self.bareiss_echelon();
        if pivots.len() < n {
            return Ok(Scalar::zero());
        }
        let mut det = Scalar::new(ints[n - 1][n - 1].clone(), scale);
        if swaps % 2 == 1 {
            det = -det;
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(tI - M)`, monic, coefficients in
    /// descending degree (Faddeev–LeVerrier).
    pub fn char_poly(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![Scalar::one()];
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m)?;
            let c_prev = coeffs.last().expect("nonempty").clone();
            for i in 0..n {
                next.data[i * n + i] += &c_prev;
            }
            let c = -self.mul(&next)?.trace() / int(k as i64);
            coeffs.push(c);
            m = next;
        }
        Ok(coeffs)
    }

    /// Canonical solution of `self · x = b`: free variables set to zero.
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &Vector) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b.0[i].clone());
        }
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Vector::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x.0[p] = rref.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Exact inverse, `None` if singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rref.get(i, n + j).clone());
            }
        }
        Ok(Some(inv))
    }
}

/// Evaluates a polynomial given by descending coefficients at `t` (Horner).
pub fn eval_poly(coeffs: &[Scalar], t: &Scalar) -> Scalar {
    coeffs.iter().fold(Scalar::zero(), |acc, c| acc * t + c)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &Vector) -> Result<bool> {
    if basis.is_empty() {
        return Ok(v.is_zero());
    }
    let m = Matrix::from_rows(basis.to_vec())?;
    let mut extended = basis.to_vec();
    extended.push(v.clone());
    Ok(Matrix::from_rows(extended)?.rank() == m.rank())
}
