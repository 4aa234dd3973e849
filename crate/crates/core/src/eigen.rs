//! Hermitian eigensolvers.
//!
//! Two independent routes are provided:
//!
//! * [`hermitian_eigen`]: cyclic complex Jacobi producing eigenvalues and a
//!   unitary eigenvector basis. Used for the functional calculus (`|T|`,
//!   fractional powers) where eigenvectors are needed.
//! * [`hermitian_eigenvalues`]: Householder reduction to a real symmetric
//!   tridiagonal matrix followed by implicit QL with Wilkinson shifts.
//!   Eigenvalues only; this is the hot path of the numerical-radius sweep.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative Hermitian tolerance: `||M - M*||_F <= HERMITIAN_TOL * max(1, ||M||_F)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Jacobi sweeps allowed per unit of dimension.
pub const SWEEPS_PER_DIM: usize = 100;

/// Spectral decomposition `M = V diag(eigenvalues) V*`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.min_eigenvalue().abs().max(self.max_eigenvalue().abs())
    }

    /// Spectral mapping `V diag(f(lambda_i)) V*`. The result is Hermitian by
    /// construction (lower triangle mirrored from the upper).
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &fk) in mapped.iter().enumerate() {
                    if fk != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * fk;
                    }
                }
                if i == j {
                    out[(i, i)] = Complex64::new(acc.re, 0.0);
                } else {
                    out[(i, j)] = acc;
                    out[(j, i)] = acc.conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }

    /// `max |(V diag V*)_ij - m_ij| / max(1, max |m_ij|)`.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        let scale = m.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
        self.reconstruct().max_abs_diff(m) / scale
    }

    /// `max |(V* V - I)_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = &self.eigenvectors;
        (&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(self.dim()))
    }
}

pub(crate) fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    let limit = HERMITIAN_TOL * m.frobenius_norm().max(1.0);
    let asymmetry = m.hermitian_defect();
    if asymmetry > limit {
        return Err(Error::NotHermitian { asymmetry, limit });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Fails with [`Error::NotHermitian`] when `||M - M*||_F` exceeds
/// `1e-12 * max(1, ||M||_F)` and with [`Error::NoConvergence`] after
/// `100 * dim` sweeps.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    check_hermitian(m)?;
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let tol = 1e-17 * scale;
    let max_sweeps = SWEEPS_PER_DIM * n;

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > tol {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `a[p][q]` with `U = diag(1, e^{-i phi}) R`, `R` a real plane
/// rotation, updating `a <- U* a U` and `v <- v U`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.5 / theta
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase_conj = (apq / mag).conj();

    let u00 = Complex64::new(c, 0.0);
    let u01 = Complex64::new(s, 0.0);
    let u10 = phase_conj * -s;
    let u11 = phase_conj * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u00 + akq * u10;
        a[(k, q)] = akp * u01 + akq * u11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u00.conj() * apk + u10.conj() * aqk;
        a[(q, k)] = u01.conj() * apk + u11.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u00 + vkq * u10;
        v[(k, q)] = vkp * u01 + vkq * u11;
    }
}

/// Eigenvalues (ascending) of a Hermitian matrix via tridiagonal QL.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let mut vals = eigenvalues_unchecked(m.hermitian_part().into_entries(), m.dim())?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn largest_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    check_hermitian(m)?;
    largest_eigenvalue_unchecked(m.hermitian_part().into_entries(), m.dim())
}

/// Largest eigenvalue of row-major data assumed exactly Hermitian.
pub(crate) fn largest_eigenvalue_unchecked(a: Vec<Complex64>, n: usize) -> Result<f64> {
    let vals = eigenvalues_unchecked(a, n)?;
    Ok(vals.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

pub(crate) fn eigenvalues_unchecked(mut a: Vec<Complex64>, n: usize) -> Result<Vec<f64>> {
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &mut e)?;
    Ok(d)
}

/// Householder reduction of a Hermitian matrix (row-major, overwritten) to
/// a real symmetric tridiagonal `(diagonal, subdiagonal)`. The subdiagonal
/// moduli are returned; the diagonal phase similarity that makes them real
/// does not change the spectrum. `e[n-1]` is zero padding.
fn tridiagonalize(a: &mut [Complex64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut e = vec![0.0; n];
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let sigma: f64 = (lo..n).map(|i| a[i * n + k].norm_sqr()).sum();
        let norm = sigma.sqrt();
        if norm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[lo * n + k];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] -= alpha;
        let vnorm2: f64 = (lo..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            e[k] = norm;
            continue;
        }
        let beta = 2.0 / vnorm2;
        // p = beta * A22 v ; K = (beta / 2) v* p ; w = p - K v
        for i in lo..n {
            let mut acc = ZERO;
            for j in lo..n {
                acc += a[i * n + j] * v[j];
            }
            w[i] = acc * beta;
        }
        let vp: Complex64 = (lo..n).map(|i| v[i].conj() * w[i]).sum();
        let kk = vp * (0.5 * beta);
        for i in lo..n {
            w[i] -= kk * v[i];
        }
        // A22 <- A22 - v w* - w v*
        for i in lo..n {
            for j in lo..n {
                a[i * n + j] -= v[i] * w[j].conj() + w[i] * v[j].conj();
            }
        }
        e[k] = norm;
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1) * n + (n - 2)].norm();
    }
    let d = (0..n).map(|i| a[i * n + i].re).collect();
    (d, e)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix;
/// `d` is overwritten with the eigenvalues (unordered).
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    let max_iter = SWEEPS_PER_DIM * n.max(1);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > max_iter {
                return Err(Error::NoConvergence { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
