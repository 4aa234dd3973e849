use serde::{Deserialize, Serialize};

use super::{BoundId, BoundMode, BoundResult};
use crate::error::{Error, Result};
use crate::params::{check_lambda, check_lambda_non_negative, BoundParams};

/// Positive root of `u^2 = a u + b`, so that `u^2 <= a u + b` with `u >= 0`
/// implies `u <= (a + sqrt(a^2 + 4b)) / 2`.
pub fn resolve_implicit_quadratic(a: f64, b: f64) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::NegativeCoefficient { a, b });
    }
    Ok(0.5 * (a + (a * a + 4.0 * b).sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// Enters the right-hand side as is.
    Fixed,
    /// Multiplied by the bounded quantity `u`.
    Linear,
}

/// `(p + q lambda) / (1 + lambda) * value`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub p: f64,
    pub q: f64,
    pub kind: TermKind,
    pub value: f64,
}

impl Term {
    pub(crate) fn fixed(label: impl Into<String>, p: f64, q: f64) -> Self {
        Self {
            label: label.into(),
            p,
            q,
            kind: TermKind::Fixed,
            value: f64::NAN,
        }
    }

    pub(crate) fn linear(label: impl Into<String>, p: f64, q: f64) -> Self {
        Self {
            kind: TermKind::Linear,
            ..Self::fixed(label, p, q)
        }
    }

    /// A lambda-free coefficient `c`.
    pub(crate) fn constant(label: impl Into<String>, c: f64) -> Self {
        Self::fixed(label, c, c)
    }

    pub fn coefficient(&self, lambda: f64) -> f64 {
        (self.p + self.q * lambda) / (1.0 + lambda)
    }
}

/// A bound with every matrix-dependent factor evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundForm {
    pub id: BoundId,
    pub params: BoundParams,
    pub terms: Vec<Term>,
    /// `p` in `w^p <= rhs` for the inequality as stated.
    pub exponent: f64,
    /// Engine numerical radius of the bounded operator.
    pub w: f64,
}

impl BoundForm {
    pub fn is_implicit(&self) -> bool {
        self.terms.iter().any(|t| t.kind == TermKind::Linear)
    }

    /// The bounded quantity `u = w^{p/2}` of an implicit bound.
    pub fn u(&self) -> f64 {
        self.w.powf(0.5 * self.exponent)
    }

    fn sum(&self, kind: TermKind, lambda: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.kind == kind)
            .map(|t| t.coefficient(lambda) * t.value)
            .sum()
    }

    /// Coefficient of `u` in the right-hand side.
    pub fn linear_part(&self, lambda: f64) -> f64 {
        self.sum(TermKind::Linear, lambda)
    }

    /// The `u`-free part of the right-hand side.
    pub fn fixed_part(&self, lambda: f64) -> f64 {
        self.sum(TermKind::Fixed, lambda)
    }

    /// Right-hand side as stated, with the engine's `u` substituted.
    pub fn check_rhs(&self, lambda: f64) -> f64 {
        let a = self.linear_part(lambda);
        let b = self.fixed_part(lambda);
        if a == 0.0 {
            b
        } else {
            a * self.u() + b
        }
    }

    /// Bound on `w^{p/2}` for implicit forms, on `w^p` otherwise.
    pub fn certificate(&self, lambda: f64) -> Result<f64> {
        if self.is_implicit() {
            resolve_implicit_quadratic(self.linear_part(lambda), self.fixed_part(lambda))
        } else {
            Ok(self.fixed_part(lambda))
        }
    }

    /// Exponent that [`BoundForm::certificate`] bounds.
    pub fn certificate_exponent(&self) -> f64 {
        if self.is_implicit() {
            0.5 * self.exponent
        } else {
            self.exponent
        }
    }

    /// Limits of [`BoundForm::check_rhs`] as `lambda -> 0` and `lambda -> inf`.
    pub fn limits(&self) -> (f64, f64) {
        let u = self.u();
        self.terms.iter().fold((0.0, 0.0), |(p, q), t| {
            let v = match t.kind {
                TermKind::Fixed => t.value,
                TermKind::Linear => t.value * u,
            };
            (p + t.p * v, q + t.q * v)
        })
    }

    pub(crate) fn check_lambda(&self, lambda: f64) -> Result<()> {
        if !self.id.uses_lambda() {
            return Ok(());
        }
        if self.id.allows_zero_lambda() {
            check_lambda_non_negative(lambda)
        } else {
            check_lambda(lambda)
        }
    }

    /// Results at `lambda`: inequality-check then explicit-certificate for
    /// implicit bounds, a single explicit certificate otherwise.
    pub fn evaluate(&self, lambda: f64) -> Result<Vec<BoundResult>> {
        self.check_lambda(lambda)?;
        let params = self.params.with_lambda(lambda);
        let mut out = Vec::with_capacity(2);
        if self.is_implicit() {
            out.push(BoundResult::new(
                self.id,
                params,
                BoundMode::InequalityCheck,
                self.exponent,
                self.w.powf(self.exponent),
                self.check_rhs(lambda),
            ));
        }
        let p = self.certificate_exponent();
        out.push(BoundResult::new(
            self.id,
            params,
            BoundMode::ExplicitCertificate,
            p,
            self.w.powf(p),
            self.certificate(lambda)?,
        ));
        Ok(out)
    }

    /// Result in one mode; the check mode of an explicit bound is its certificate.
    pub fn evaluate_mode(&self, lambda: f64, mode: BoundMode) -> Result<BoundResult> {
        let mut all = self.evaluate(lambda)?;
        Ok(match mode {
            BoundMode::InequalityCheck => all.swap_remove(0),
            BoundMode::ExplicitCertificate => all.pop().expect("at least one result"),
        })
    }
}
