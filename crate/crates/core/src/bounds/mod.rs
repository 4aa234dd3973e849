//! Numerical-radius upper bounds, refinement chains and the lambda optimizer.
//!
//! Every bound is stored as a list of homographic terms
//! `(p + q lambda) / (1 + lambda) * value`, where `value` depends on the
//! matrices only. Implicit bounds additionally carry terms multiplied by
//! `u`, a power of the bounded numerical radius, and can be read either as
//! an inequality on the engine's `u` or as an explicit certificate
//! `u <= (a + sqrt(a^2 + 4b)) / 2`.

mod catalog;
mod chain;
mod form;
mod optimize;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::BoundParams;

pub use catalog::{
    bound_classical, bound_cor_bomi, bound_product_classical, bound_th2, bound_th3, bound_th4, bound_th5, bound_th6,
    coefficients, evaluate_bound, BoundInputs, SingleOperator,
};
pub(crate) use chain::evaluate_chain;
pub use chain::{refinement_chain, ChainId, ChainResult, CHAIN_TOL};
pub use form::{resolve_implicit_quadratic, BoundForm, Term, TermKind};
pub use optimize::{optimize_lambda, optimize_lambda_numeric, Boundary, LambdaOptimum};

/// Relative tolerance on `rhs - w^p` for a bound to count as holding.
pub const BOUND_TOL: f64 = 1e-8;

/// Stable identifiers of the bound catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum BoundId {
    /// `w(T) <= ||T||`.
    OpNorm,
    /// `w(T) <= ||(|T| + |T*|)|| / 2`.
    Kittaneh,
    /// `w^{2r}(T) <= ||(|T|^{2r} + |T*|^{2r})|| / 2`.
    ElHaddad,
    /// `w^2(T) <= ||(|T|^2 + |T*|^2)|| / 4 + w(T^2) / 2`.
    AbuOmar,
    /// `w^2(T) <= ||(|T|^2 + |T*|^2)|| / 4 + w(|T||T*|) / 2`.
    Bhunia,
    /// `w^r(S*T) <= ||(|T|^{2r} + |S|^{2r})|| / 2`.
    Dragomir,
    /// Implicit product bound in `w(S*T)` with `lambda >= 0`.
    AlDolat,
    /// Implicit product refinement in `w^r(T*S)`.
    ProductRefinement,
    /// Implicit refinement through the mixed Schwarz inequality with `g = s^alpha`.
    MixedSchwarzRefinement,
    /// Fourth-power bound from the refined Buzano inequality.
    BuzanoRefinement,
    /// Fourth-power implicit bound from the split Buzano refinement.
    BuzanoSplitRefinement,
    /// `4n`-th power bound from the binomial Buzano expansion.
    BinomialRefinement,
    /// The binomial bound at `n = 1` after absorbing its cross term.
    BinomialFirstOrder,
}

impl BoundId {
    pub const ALL: [BoundId; 13] = [
        BoundId::OpNorm,
        BoundId::Kittaneh,
        BoundId::ElHaddad,
        BoundId::AbuOmar,
        BoundId::Bhunia,
        BoundId::Dragomir,
        BoundId::AlDolat,
        BoundId::ProductRefinement,
        BoundId::MixedSchwarzRefinement,
        BoundId::BuzanoRefinement,
        BoundId::BuzanoSplitRefinement,
        BoundId::BinomialRefinement,
        BoundId::BinomialFirstOrder,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::OpNorm => "op_norm",
            BoundId::Kittaneh => "kittaneh",
            BoundId::ElHaddad => "el_haddad",
            BoundId::AbuOmar => "abu_omar",
            BoundId::Bhunia => "bhunia",
            BoundId::Dragomir => "dragomir",
            BoundId::AlDolat => "al_dolat",
            BoundId::ProductRefinement => "th2",
            BoundId::MixedSchwarzRefinement => "th3",
            BoundId::BuzanoRefinement => "th4",
            BoundId::BuzanoSplitRefinement => "th5",
            BoundId::BinomialRefinement => "th6",
            BoundId::BinomialFirstOrder => "cor_bomi",
        }
    }

    /// Bounds on a product `T*S` that take a second matrix.
    pub fn is_product(self) -> bool {
        matches!(self, BoundId::Dragomir | BoundId::AlDolat | BoundId::ProductRefinement)
    }

    /// Whether the right-hand side depends on `lambda` at all.
    pub fn uses_lambda(self) -> bool {
        !matches!(
            self,
            BoundId::OpNorm
                | BoundId::Kittaneh
                | BoundId::ElHaddad
                | BoundId::AbuOmar
                | BoundId::Bhunia
                | BoundId::Dragomir
        )
    }

    /// Whether the right-hand side contains the bounded quantity itself.
    pub fn is_implicit(self) -> bool {
        matches!(
            self,
            BoundId::AlDolat
                | BoundId::ProductRefinement
                | BoundId::MixedSchwarzRefinement
                | BoundId::BuzanoSplitRefinement
        )
    }

    /// `lambda = 0` is admissible only where the source inequality allows it.
    pub(crate) fn allows_zero_lambda(self) -> bool {
        matches!(self, BoundId::AlDolat)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownBound(s.to_owned()))
    }
}

impl From<BoundId> for String {
    fn from(id: BoundId) -> Self {
        id.as_str().to_owned()
    }
}

impl TryFrom<String> for BoundId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// How an implicit bound is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    /// The right-hand side is evaluated with the engine's value of the
    /// bounded quantity, exactly as the inequality is stated.
    InequalityCheck,
    /// A bound that needs no knowledge of the bounded quantity.
    ExplicitCertificate,
}

impl BoundMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMode::InequalityCheck => "inequality-check",
            BoundMode::ExplicitCertificate => "explicit-certificate",
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inequality-check" | "inequality" | "check" => Ok(BoundMode::InequalityCheck),
            "explicit-certificate" | "certificate" => Ok(BoundMode::ExplicitCertificate),
            other => Err(Error::InvalidConfig(format!("unknown bound mode {other:?}"))),
        }
    }
}

/// One bound evaluated on concrete matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub bound_name: BoundId,
    pub params: BoundParams,
    /// Upper bound on `w^p`.
    pub rhs_value: f64,
    /// The power `p` of the numerical radius being bounded.
    pub exponent_p: f64,
    /// Engine value of `w^p` for the same input.
    pub w_power_value: f64,
    pub slack: f64,
    pub holds: bool,
    pub mode: BoundMode,
}

impl BoundResult {
    pub(crate) fn new(
        bound_name: BoundId,
        params: BoundParams,
        mode: BoundMode,
        exponent_p: f64,
        w_power_value: f64,
        rhs_value: f64,
    ) -> Self {
        let slack = rhs_value - w_power_value;
        Self {
            bound_name,
            params,
            rhs_value,
            exponent_p,
            w_power_value,
            slack,
            holds: bound_holds(rhs_value, w_power_value),
            mode,
        }
    }
}

/// `rhs - lhs >= -1e-8 max(1, rhs, lhs)`.
pub fn bound_holds(rhs: f64, lhs: f64) -> bool {
    rhs - lhs >= -BOUND_TOL * 1f64.max(rhs).max(lhs)
}
