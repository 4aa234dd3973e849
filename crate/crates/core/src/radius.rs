//! Numerical radius `w(M) = sup_{||x|| = 1} |<Mx, x>|`.
//!
//! The engine maximizes `theta -> lambda_max((e^{i theta} M + e^{-i theta} M*) / 2)`
//! over the circle: a uniform grid isolates the local maxima, then
//! golden-section search refines each bracketing cell. The oracle is an
//! independent lower bound built from random unit vectors and ascent on the
//! sphere; it never touches the eigensolver.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::eigen::{eigenvalues_unchecked, largest_eigenvalue_unchecked};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ComplexVector};
use crate::search::golden_section_max;

/// Minimum number of grid angles in the theta sweep.
pub const GRID_ANGLES: usize = 720;

/// Default width of the refined theta bracket.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Ascent steps per oracle sample.
pub const ORACLE_STEPS: usize = 100;

/// Numerical radius by theta sweep with golden-section refinement.
pub fn numerical_radius(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    numerical_radius_with_grid(m, tol, GRID_ANGLES)
}

/// As [`numerical_radius`], with an explicit grid size (raised to at least
/// [`GRID_ANGLES`]).
pub fn numerical_radius_with_grid(m: &ComplexMatrix, tol: f64, grid: usize) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let scale = m.frobenius_norm();
    if m.hermitian_defect() <= 1e-14 * scale {
        // Hermitian up to roundoff: w is the spectral radius, no sweep needed
        let vals = eigenvalues_unchecked(m.hermitian_part().into_entries(), m.dim())?;
        return Ok(vals.into_iter().fold(0.0, |acc, v| acc.max(v.abs())));
    }
    let grid = grid.max(GRID_ANGLES);
    let sweep = ThetaSweep::new(m);
    let mut failure = None;
    let mut f = |theta: f64| match sweep.top_eigenvalue(theta) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NEG_INFINITY
        }
    };

    let step = TAU / grid as f64;
    let values: Vec<f64> = (0..grid).map(|k| f(step * k as f64)).collect();
    let (argmax, grid_max) =
        values.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (k, v)| if v > acc.1 { (k, v) } else { acc },
        );
    let grid_min = values.iter().copied().fold(f64::INFINITY, f64::min);

    // The sweep traces the support function of the numerical range, so the
    // peak value w satisfies grid_max >= w cos(step) near the maximizing
    // angle. Local maxima below grid_max * cos(step) cannot hold the peak.
    let candidates: Vec<usize> = if grid_max - grid_min <= 1e-13 * scale {
        vec![argmax]
    } else {
        let floor = grid_max * step.cos() - 1e-15 * scale;
        (0..grid)
            .filter(|&k| {
                let prev = values[(k + grid - 1) % grid];
                let next = values[(k + 1) % grid];
                values[k] >= prev && values[k] >= next && values[k] >= floor
            })
            .collect()
    };

    let mut best = grid_max;
    for k in candidates {
        let centre = step * k as f64;
        let peak = golden_section_max(&mut f, centre - step, centre + step, tol);
        best = best.max(peak.value);
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(best.max(0.0))
}

/// Rotated Hermitian parts `H(theta) = (e^{i theta} M + e^{-i theta} M*) / 2`.
pub(crate) struct ThetaSweep<'a> {
    m: &'a ComplexMatrix,
}

impl<'a> ThetaSweep<'a> {
    pub(crate) fn new(m: &'a ComplexMatrix) -> Self {
        Self { m }
    }

    /// `H(theta)` row-major; exactly Hermitian in floating point because
    /// each mirrored pair is the conjugate of the same two products.
    pub(crate) fn hermitian_part(&self, theta: f64) -> Vec<Complex64> {
        let n = self.m.dim();
        let (s, c) = theta.sin_cos();
        let rot = Complex64::new(c, s);
        let mut h = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                h[i * n + j] = (rot * self.m[(i, j)] + (rot * self.m[(j, i)]).conj()) * 0.5;
            }
        }
        h
    }

    pub(crate) fn top_eigenvalue(&self, theta: f64) -> Result<f64> {
        largest_eigenvalue_unchecked(self.hermitian_part(theta), self.m.dim())
    }
}

/// Lower-bound oracle: best `|<Mx, x>|` over `samples` random unit vectors,
/// each improved by [`ORACLE_STEPS`] steps of projected gradient ascent on
/// the unit sphere. Deterministic for a given seed.
///
/// Panics if `samples == 0`.
pub fn numerical_radius_oracle(m: &ComplexMatrix, samples: usize, seed: u64) -> f64 {
    assert!(samples >= 1, "oracle needs at least one sample");
    let n = m.dim();
    let adj = m.adjoint();
    // Step 1/shift keeps the shifted form positive definite, so each step is
    // a power iteration on H + shift*I and cannot decrease x* H x.
    let shift = m.frobenius_norm();
    if shift == 0.0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut mx = vec![Complex64::new(0.0, 0.0); n];
    let mut ax = vec![Complex64::new(0.0, 0.0); n];
    for _ in 0..samples {
        for xi in x.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *xi = Complex64::new(re, im);
        }
        normalize(&mut x);
        for step in 0..=ORACLE_STEPS {
            apply(m, &x, &mut mx);
            let z: Complex64 = mx.iter().zip(&x).map(|(a, b)| a * b.conj()).sum();
            best = best.max(z.norm());
            if step == ORACLE_STEPS {
                break;
            }
            let u = if z.norm() > 0.0 {
                z.conj() / z.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            apply(&adj, &x, &mut ax);
            for i in 0..n {
                x[i] = (u * mx[i] + u.conj() * ax[i]) * 0.5 + x[i] * shift;
            }
            normalize(&mut x);
        }
    }
    best
}

/// `|<Mx, x>|` for a unit vector, the quantity the oracle maximizes.
pub fn rayleigh_modulus(m: &ComplexMatrix, x: &ComplexVector) -> Result<f64> {
    Ok(m.quadratic_form(x)?.norm())
}

fn apply(m: &ComplexMatrix, x: &[Complex64], out: &mut [Complex64]) {
    let n = x.len();
    let data = m.entries();
    for i in 0..n {
        out[i] = data[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum();
    }
}

fn normalize(x: &mut [Complex64]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in x.iter_mut() {
            *z /= norm;
        }
    }
}
