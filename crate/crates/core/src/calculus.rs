//! Matrix functional calculus: absolute value, powers of positive matrices
//! and the operator norm.

use crate::eigen::{hermitian_eigen, largest_eigenvalue_unchecked, EigenDecomposition};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Eigenvalues below `-PSD_TOL * ||A||` mark a matrix as genuinely indefinite;
/// anything above is clamped to zero as roundoff.
pub const PSD_TOL: f64 = 1e-8;

/// Hermitian tolerance accepted by [`matrix_power_psd`].
pub const PSD_HERMITIAN_TOL: f64 = 1e-10;

pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

/// `|M| = (M* M)^{1/2}`.
pub fn abs_value(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(AbsoluteValue::of(m)?.power(1.0))
}

/// `A^p` for positive semidefinite Hermitian `A` by spectral mapping.
///
/// Eigenvalues are clamped at zero before powering. `p = 0` maps every
/// eigenvalue, including clamped zeros, to one, so the result is the identity.
pub fn matrix_power_psd(a: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "exponent must be finite and non-negative",
        });
    }
    let limit = PSD_HERMITIAN_TOL * a.frobenius_norm().max(1.0);
    let asymmetry = a.hermitian_defect();
    if asymmetry > limit {
        return Err(Error::NotHermitian { asymmetry, limit });
    }
    let eig = hermitian_eigen(&a.hermitian_part())?;
    check_psd(&eig)?;
    Ok(eig.map(|l| l.max(0.0).powf(p)))
}

pub(crate) fn check_psd(eig: &EigenDecomposition) -> Result<()> {
    let limit = -PSD_TOL * eig.spectral_radius();
    let min = eig.min_eigenvalue();
    if min < limit {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
            limit,
        });
    }
    Ok(())
}

/// Largest singular value, `sqrt(lambda_max(M* M))`.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    let gram = &m.adjoint() * m;
    let top = largest_eigenvalue_unchecked(gram.hermitian_part().into_entries(), m.dim())?;
    Ok(top.max(0.0).sqrt())
}

/// Spectral data of `M* M`, from which every power `|M|^p = (M* M)^{p/2}`
/// is read off without compounding roundoff through `|M|` itself.
#[derive(Clone, Debug)]
pub struct AbsoluteValue {
    gram: EigenDecomposition,
}

impl AbsoluteValue {
    /// Absolute value of `m`.
    pub fn of(m: &ComplexMatrix) -> Result<Self> {
        let gram = hermitian_eigen(&(&m.adjoint() * m))?;
        Ok(Self { gram })
    }

    /// Absolute value of a positive semidefinite matrix `a` (so `|a| = a`).
    pub fn of_positive(a: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eigen(a)?;
        check_psd(&eig)?;
        let gram = hermitian_eigen(&eig.map(|l| {
            let c = l.max(0.0);
            c * c
        }))?;
        Ok(Self { gram })
    }

    /// `|M|^p`; `p = 0` gives the identity.
    pub fn power(&self, p: f64) -> ComplexMatrix {
        let half = 0.5 * p;
        self.gram.map(|l| l.max(0.0).powf(half))
    }

    /// Singular values of `M`, ascending.
    pub fn singular_values(&self) -> Vec<f64> {
        self.gram.eigenvalues().iter().map(|l| l.max(0.0).sqrt()).collect()
    }
}
