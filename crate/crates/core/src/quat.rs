//! Quaternion scalars, vectors and matrices.
//!
//! A quaternion `q = a + bι + cJ + dκ` multiplies under the Hamilton rules
//! `ι² = J² = κ² = ιJκ = −1`, `ιJ = κ`, `Jκ = ι`, `κι = J`. Besides the
//! Hamilton product this module provides the three perpendicular involutions,
//! conjugation, the squared norm and the componentwise *split product* `⊙`
//! that the split-activation gradients are written in.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Imaginary axis selecting one of the three involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::I, Axis::J, Axis::K];

    /// The unit imaginary quaternion along this axis.
    pub fn unit(self) -> Quaternion {
        match self {
            Axis::I => Quaternion::I,
            Axis::J => Quaternion::J,
            Axis::K => Quaternion::K,
        }
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);
    /// Identity element of the split product.
    pub const SPLIT_ONE: Quaternion = Quaternion::new(1.0, 1.0, 1.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    pub const fn real(a: f64) -> Self {
        Quaternion::new(a, 0.0, 0.0, 0.0)
    }

    /// Quaternion with every component equal to `s`.
    pub const fn splat(s: f64) -> Self {
        Quaternion::new(s, s, s, s)
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Full Hamilton product `self · rhs`. Not commutative.
    #[inline]
    pub fn hamilton(self, rhs: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (rhs.a, rhs.b, rhs.c, rhs.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    /// `q^μ = −μ q μ`: keeps the real part and the `μ` component, flips the other two.
    #[inline]
    pub fn involution(self, axis: Axis) -> Quaternion {
        let Quaternion { a, b, c, d } = self;
        match axis {
            Axis::I => Quaternion::new(a, b, -c, -d),
            Axis::J => Quaternion::new(a, -b, c, -d),
            Axis::K => Quaternion::new(a, -b, -c, d),
        }
    }

    #[inline]
    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Split product `x ⊙ y = xa·ya + ι xb·yb + J xc·yc + κ xd·yd`.
    #[inline]
    pub fn split(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a * rhs.a,
            self.b * rhs.b,
            self.c * rhs.c,
            self.d * rhs.d,
        )
    }

    /// Applies `f` to each of the four components independently.
    #[inline]
    pub fn map(self, f: impl Fn(f64) -> f64) -> Quaternion {
        Quaternion::new(f(self.a), f(self.b), f(self.c), f(self.d))
    }

    pub fn scale(self, s: f64) -> Quaternion {
        self.map(|x| x * s)
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn max_abs(self) -> f64 {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}ι {:+}J {:+}κ", self.a, self.b, self.c, self.d)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a + rhs.a,
            self.b + rhs.b,
            self.c + rhs.c,
            self.d + rhs.d,
        )
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a - rhs.a,
            self.b - rhs.b,
            self.c - rhs.c,
            self.d - rhs.d,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

/// `*` is the Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: Quaternion) -> Quaternion {
        self.hamilton(rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

pub fn hamilton_mul(x: Quaternion, y: Quaternion) -> Quaternion {
    x.hamilton(y)
}

pub fn involution(q: Quaternion, axis: Axis) -> Quaternion {
    q.involution(axis)
}

pub fn conj(q: Quaternion) -> Quaternion {
    q.conj()
}

pub fn norm_sq(q: Quaternion) -> f64 {
    q.norm_sq()
}

pub fn split_product(x: Quaternion, y: Quaternion) -> Quaternion {
    x.split(y)
}

/// Dense quaternion column vector. Never empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QVector(Vec<Quaternion>);

impl QVector {
    pub fn new(elems: Vec<Quaternion>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::InvalidParameter(
                "quaternion vector must be non-empty".into(),
            ));
        }
        Ok(QVector(elems))
    }

    /// # Panics
    /// If `len == 0`.
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "quaternion vector must be non-empty");
        QVector(vec![Quaternion::ZERO; len])
    }

    /// Vector whose `k`-th entry is real 1 and all others zero.
    pub fn basis(len: usize, k: usize) -> Self {
        let mut v = QVector::zeros(len);
        v.0[k] = Quaternion::ONE;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quaternion> {
        self.0.iter()
    }

    pub fn iter_mut(&mut self) -> std::slice::IterMut<'_, Quaternion> {
        self.0.iter_mut()
    }

    pub fn into_vec(self) -> Vec<Quaternion> {
        self.0
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QVector {
        QVector(self.0.iter().copied().map(f).collect())
    }

    /// `self + s·rhs`, elementwise.
    pub fn axpy(&self, s: f64, rhs: &QVector) -> Result<QVector> {
        check_len("axpy", self.len(), rhs.len())?;
        Ok(QVector(
            self.iter()
                .zip(rhs.iter())
                .map(|(&x, &y)| x + y * s)
                .collect(),
        ))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|q| q.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, q| m.max(q.max_abs()))
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Quaternion {
        &mut self.0[i]
    }
}

impl<'a> IntoIterator for &'a QVector {
    type Item = &'a Quaternion;
    type IntoIter = std::slice::Iter<'a, Quaternion>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Dense row-major quaternion matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    elems: Vec<Quaternion>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, elems: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if elems.len() != rows * cols {
            return Err(Error::dim("QMatrix::new", rows * cols, elems.len()));
        }
        Ok(QMatrix { rows, cols, elems })
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        QMatrix {
            rows,
            cols,
            elems: vec![Quaternion::ZERO; rows * cols],
        }
    }

    /// Real 1 on the leading diagonal.
    pub fn identity(rows: usize, cols: usize) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for k in 0..rows.min(cols) {
            m[(k, k)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.elems
    }

    pub fn as_mut_slice(&mut self) -> &mut [Quaternion] {
        &mut self.elems
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector((0..self.rows).map(|r| self[(r, c)]).collect())
    }

    /// `self + s·rhs`, elementwise.
    pub fn axpy(&self, s: f64, rhs: &QMatrix) -> Result<QMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::dim(
                "QMatrix::axpy",
                self.elems.len(),
                rhs.elems.len(),
            ));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            elems: self
                .elems
                .iter()
                .zip(&rhs.elems)
                .map(|(&x, &y)| x + y * s)
                .collect(),
        })
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            elems: self.elems.iter().copied().map(f).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.elems.iter().all(|q| q.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.elems.iter().fold(0.0, |m, q| m.max(q.max_abs()))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &self.elems[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        &mut self.elems[r * self.cols + c]
    }
}

fn check_len(op: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::dim(op, expected, got));
    }
    Ok(())
}

/// Elementwise split product of two equal-length vectors.
pub fn split_product_vec(x: &QVector, y: &QVector) -> Result<QVector> {
    check_len("split_product_vec", x.len(), y.len())?;
    Ok(QVector(
        x.iter().zip(y.iter()).map(|(&p, &q)| p.split(q)).collect(),
    ))
}

/// Split product of every element of `x` with the scalar quaternion `s`.
pub fn split_product_scalar(x: &QVector, s: Quaternion) -> QVector {
    x.map(|q| q.split(s))
}

/// `w^H u = Σ_k conj(w_k)·u_k`, accumulated left to right.
pub fn hermitian_dot(w: &QVector, u: &QVector) -> Result<Quaternion> {
    check_len("hermitian_dot", w.len(), u.len())?;
    Ok(hermitian_dot_unchecked(w.as_slice(), u.as_slice()))
}

#[inline]
pub(crate) fn hermitian_dot_unchecked(w: &[Quaternion], u: &[Quaternion]) -> Quaternion {
    w.iter()
        .zip(u)
        .fold(Quaternion::ZERO, |acc, (&wk, &uk)| acc + wk.conj() * uk)
}

/// `W^H x`: entry `i` is the Hermitian product of column `i` of `W` with `x`.
pub fn matrix_hermitian_apply(w: &QMatrix, x: &QVector) -> Result<QVector> {
    check_len("matrix_hermitian_apply", w.rows(), x.len())?;
    let out = (0..w.cols())
        .map(|c| (0..w.rows()).fold(Quaternion::ZERO, |acc, r| acc + w[(r, c)].conj() * x[r]))
        .collect();
    Ok(QVector(out))
}
