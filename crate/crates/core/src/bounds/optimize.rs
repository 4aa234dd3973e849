use serde::{Deserialize, Serialize};

use super::form::BoundForm;
use super::{BoundId, BoundMode};
use crate::error::Result;
use crate::search::scan_then_golden_min;

/// Search interval for `s = ln(lambda)`.
pub const LOG_LAMBDA_RANGE: f64 = 20.0;

/// Width of the final `s` bracket.
pub const LOG_LAMBDA_TOL: f64 = 1e-9;

/// Relative gap below which the two limits of a homographic form are equal.
pub const FLAT_TOL: f64 = 1e-12;

/// Where the infimum over lambda sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Attained at a finite positive lambda.
    Interior,
    /// Approached as lambda -> 0.
    ToZero,
    /// Approached as lambda -> infinity.
    ToInfinity,
    /// Independent of lambda; reported at lambda = 1.
    Flat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaOptimum {
    pub bound_name: BoundId,
    pub mode: BoundMode,
    /// Minimizing lambda; `None` when the infimum is only approached at a boundary.
    pub lambda_star: Option<f64>,
    pub boundary: Boundary,
    pub infimum: f64,
}

/// Infimum over lambda of a bound's right-hand side.
///
/// Homographic right-hand sides `(P + Q lambda) / (1 + lambda)` are monotone,
/// so the infimum is `min(P, Q)` at a boundary. That covers every explicit
/// bound and the inequality-check reading of implicit ones. Resolved
/// certificates of implicit bounds are not homographic and go through
/// [`optimize_lambda_numeric`].
pub fn optimize_lambda(form: &BoundForm, mode: BoundMode) -> Result<LambdaOptimum> {
    if form.is_implicit() && mode == BoundMode::ExplicitCertificate {
        return optimize_lambda_numeric(form, mode);
    }
    let mode = if form.is_implicit() {
        mode
    } else {
        BoundMode::ExplicitCertificate
    };
    let (p, q) = form.limits();
    let (lambda_star, boundary, infimum) = if (p - q).abs() <= FLAT_TOL * p.abs().max(q.abs()) {
        (Some(1.0), Boundary::Flat, p.min(q))
    } else if p < q {
        (None, Boundary::ToZero, p)
    } else {
        (None, Boundary::ToInfinity, q)
    };
    Ok(LambdaOptimum {
        bound_name: form.id,
        mode,
        lambda_star,
        boundary,
        infimum,
    })
}

/// Golden-section minimization over `lambda = exp(s)`, `s` in `[-20, 20]`.
pub fn optimize_lambda_numeric(form: &BoundForm, mode: BoundMode) -> Result<LambdaOptimum> {
    let mode = if form.is_implicit() {
        mode
    } else {
        BoundMode::ExplicitCertificate
    };
    let mut failure = None;
    let f = |s: f64| {
        let lambda = s.exp();
        let v = match mode {
            BoundMode::InequalityCheck => Ok(form.check_rhs(lambda)),
            BoundMode::ExplicitCertificate => form.certificate(lambda),
        };
        v.unwrap_or_else(|e| {
            failure.get_or_insert(e);
            f64::INFINITY
        })
    };
    let best = scan_then_golden_min(f, -LOG_LAMBDA_RANGE, LOG_LAMBDA_RANGE, 80, LOG_LAMBDA_TOL);
    if let Some(e) = failure {
        return Err(e);
    }
    let edge = LOG_LAMBDA_RANGE - 1e-6;
    let boundary = if best.x <= -edge {
        Boundary::ToZero
    } else if best.x >= edge {
        Boundary::ToInfinity
    } else {
        Boundary::Interior
    };
    Ok(LambdaOptimum {
        bound_name: form.id,
        mode,
        lambda_star: Some(best.x.exp()),
        boundary,
        infimum: best.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{BoundInputs, SingleOperator};
    use crate::matrix::ComplexMatrix;
    use crate::params::BoundParams;

    #[test]
    fn jordan_th4_goes_to_zero() {
        let t = SingleOperator::new(ComplexMatrix::shift(2)).unwrap();
        let inputs = BoundInputs::single(&t);
        let form = inputs.form(BoundId::BuzanoRefinement, &BoundParams::default()).unwrap();
        let opt = optimize_lambda(&form, BoundMode::ExplicitCertificate).unwrap();
        assert_eq!(opt.boundary, Boundary::ToZero);
        assert!((opt.infimum - 1.0 / 16.0).abs() < 1e-14);
        let (p, q) = form.limits();
        assert!((p - 1.0 / 16.0).abs() < 1e-14 && (q - 3.0 / 32.0).abs() < 1e-14);
        let num = optimize_lambda_numeric(&form, BoundMode::ExplicitCertificate).unwrap();
        assert!((num.infimum - opt.infimum).abs() < 1e-6);
    }

    #[test]
    fn identity_th2_is_flat() {
        let t = SingleOperator::new(ComplexMatrix::identity(2)).unwrap();
        let inputs = BoundInputs::single(&t);
        let form = inputs
            .form(BoundId::ProductRefinement, &BoundParams::default().with_r(1.0))
            .unwrap();
        let opt = optimize_lambda(&form, BoundMode::InequalityCheck).unwrap();
        assert_eq!(opt.boundary, Boundary::Flat);
        assert_eq!(opt.lambda_star, Some(1.0));
        assert!((opt.infimum - 1.0).abs() < 1e-12);
        let cert = optimize_lambda(&form, BoundMode::ExplicitCertificate).unwrap();
        assert!((cert.infimum - 1.0).abs() < 1e-9);
    }
}
