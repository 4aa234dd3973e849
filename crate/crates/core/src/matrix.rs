//! Dense square complex matrices and complex vectors.
//!
//! Both types serialize to the shared JSON layout
//! `{"dim": n, "entries": [[re, im], ...]}` with matrix entries in row-major
//! order. Construction validates shape and finiteness, so every value of
//! these types satisfies its invariants.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Repr {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

fn check_finite(entries: &[Complex64]) -> Result<()> {
    match entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(i) => Err(Error::Malformed(format!("entry {i} is not finite"))),
        None => Ok(()),
    }
}

/// Dense `dim x dim` complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Malformed(format!(
                "expected {} entries for dim {dim}, found {}",
                dim * dim,
                entries.len()
            )));
        }
        check_finite(&entries)?;
        Ok(Self { dim, data: entries })
    }

    /// Builds a matrix from an entry function. Panics on `dim == 0`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Real matrix from rows; panics if the rows are ragged or non-square.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Complex matrix from rows; panics if the rows are ragged or non-square.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn diag(values: &[Complex64]) -> Self {
        Self::from_fn(
            values.len(),
            |i, j| if i == j { values[i] } else { Complex64::new(0.0, 0.0) },
        )
    }

    pub fn diag_real(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            Complex64::new(if i == j { values[i] } else { 0.0 }, 0.0)
        })
    }

    /// The `dim x dim` nilpotent shift with ones on the superdiagonal.
    pub fn shift(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| Complex64::new(if j == i + 1 { 1.0 } else { 0.0 }, 0.0))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `||M - M*||_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Hermitian part `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn mul_vec(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        let n = self.dim;
        let out = (0..n)
            .map(|i| {
                let row = &self.data[i * n..(i + 1) * n];
                row.iter().zip(x.entries()).map(|(a, b)| a * b).sum()
            })
            .collect();
        Ok(ComplexVector { data: out })
    }

    /// `<Mx, x>` for a vector of matching dimension.
    pub fn quadratic_form(&self, x: &ComplexVector) -> Result<Complex64> {
        Ok(self.mul_vec(x)?.inner(x))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.ensure_same_dim(rhs)?;
        Ok(self.matmul_unchecked(rhs))
    }

    pub(crate) fn matmul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    pub(crate) fn ensure_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.ensure_same_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.ensure_same_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    /// Largest entrywise deviation `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

// Operator impls panic on dimension mismatch, like slice indexing; the
// fallible `matmul` / `try_add` / `try_sub` are the checked forms.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        self.matmul_unchecked(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl TryFrom<Repr> for ComplexMatrix {
    type Error = Error;

    fn try_from(repr: Repr) -> Result<Self> {
        let entries = repr.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        Self::new(repr.dim, entries)
    }
}

impl From<ComplexMatrix> for Repr {
    fn from(m: ComplexMatrix) -> Self {
        Repr {
            dim: m.dim,
            entries: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Finite complex vector.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Malformed("vector dimension must be at least 1".into()));
        }
        check_finite(&entries)?;
        Ok(Self { data: entries })
    }

    /// Real vector; panics on empty input.
    pub fn from_real(values: &[f64]) -> Self {
        assert!(!values.is_empty(), "vector dimension must be positive");
        Self {
            data: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    /// Standard basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        Self {
            data: (0..dim)
                .map(|i| Complex64::new(if i == index { 1.0 } else { 0.0 }, 0.0))
                .collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self, other> = sum_i self_i * conj(other_i)`, linear in the first slot.
    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.data.iter().zip(&other.data).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub(crate) fn ensure_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.iter()).finish()
    }
}

impl TryFrom<Repr> for ComplexVector {
    type Error = Error;

    fn try_from(repr: Repr) -> Result<Self> {
        if repr.dim != repr.entries.len() {
            return Err(Error::Malformed(format!(
                "vector dim {} does not match {} entries",
                repr.dim,
                repr.entries.len()
            )));
        }
        Self::new(repr.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
    }
}

impl From<ComplexVector> for Repr {
    fn from(v: ComplexVector) -> Self {
        Repr {
            dim: v.dim(),
            entries: v.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}
