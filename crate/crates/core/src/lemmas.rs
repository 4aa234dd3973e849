//! Operator-level inequalities used as building blocks by the bound catalog,
//! exposed as predicates on concrete matrices and vectors.

use crate::calculus::{matrix_power_psd, operator_norm, AbsoluteValue};
use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ComplexVector};
use crate::params::{check_alpha, check_power};
use crate::scalar::{InequalityRecord, UNIT_TOL};

fn check_unit(x: &ComplexVector) -> Result<()> {
    let norm = x.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(())
}

fn check_vector(m: &ComplexMatrix, x: &ComplexVector) -> Result<()> {
    if m.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: x.dim(),
        });
    }
    Ok(())
}

/// `<Tx, x>^r <= <T^r x, x>` for positive semidefinite `T`, unit `x`, `r >= 1`.
pub fn mccarthy_check(t: &ComplexMatrix, x: &ComplexVector, r: f64) -> Result<InequalityRecord> {
    check_power(r)?;
    check_vector(t, x)?;
    check_unit(x)?;
    let tr = matrix_power_psd(t, r)?;
    let base = t.quadratic_form(x)?.re.max(0.0);
    let rhs = tr.quadratic_form(x)?.re;
    Ok(InequalityRecord::new("mccarthy", base.powf(r), rhs))
}

/// `||((A + B)/2)^r|| <= ||(A^r + B^r)/2||` for positive semidefinite `A`, `B`.
pub fn convex_norm_check(a: &ComplexMatrix, b: &ComplexMatrix, r: f64) -> Result<InequalityRecord> {
    check_power(r)?;
    a.ensure_same_dim(b)?;
    let ar = matrix_power_psd(a, r)?;
    let br = matrix_power_psd(b, r)?;
    let mid = a.try_add(b)?.scale_real(0.5);
    let lhs = operator_norm(&matrix_power_psd(&mid, r)?)?;
    let rhs = operator_norm(&ar.try_add(&br)?.scale_real(0.5))?;
    Ok(InequalityRecord::new("convex_norm", lhs, rhs))
}

/// `|<Tx, y>| <= || |T|^alpha x || * || |T*|^(1 - alpha) y ||`.
pub fn mixed_schwarz_check(
    t: &ComplexMatrix,
    x: &ComplexVector,
    y: &ComplexVector,
    alpha: f64,
) -> Result<InequalityRecord> {
    check_alpha(alpha)?;
    check_vector(t, x)?;
    check_vector(t, y)?;
    let lhs = t.mul_vec(x)?.inner(y).norm();
    let gx = AbsoluteValue::of(t)?.power(alpha).mul_vec(x)?.norm();
    let hy = AbsoluteValue::of(&t.adjoint())?.power(1.0 - alpha).mul_vec(y)?.norm();
    Ok(InequalityRecord::new("mixed_schwarz", lhs, gx * hy))
}

/// Convex functions available to [`jensen_operator_check`].
pub const JENSEN_FUNCTIONS: [&str; 4] = ["square", "abs", "quartic", "exp"];

fn jensen_function(id: &str) -> Result<fn(f64) -> f64> {
    Ok(match id {
        "square" => |s| s * s,
        "abs" => f64::abs,
        "quartic" => |s| s.powi(4),
        "exp" => f64::exp,
        _ => return Err(Error::UnknownFunction(id.to_owned())),
    })
}

/// `h(<Tx, x>) <= <h(T)x, x>` for Hermitian `T`, unit `x` and convex `h`
/// taken from [`JENSEN_FUNCTIONS`].
pub fn jensen_operator_check(t: &ComplexMatrix, x: &ComplexVector, h_id: &str) -> Result<InequalityRecord> {
    let h = jensen_function(h_id)?;
    check_vector(t, x)?;
    check_unit(x)?;
    let eig = hermitian_eigen(t)?;
    let lhs = h(t.quadratic_form(x)?.re);
    let rhs = eig.map(h).quadratic_form(x)?.re;
    Ok(InequalityRecord::new(format!("jensen_{h_id}"), lhs, rhs))
}
