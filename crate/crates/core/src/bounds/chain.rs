use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::catalog::{BoundInputs, SingleOperator};
use super::BoundId;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::params::BoundParams;

/// Relative tolerance between consecutive chain links.
pub const CHAIN_TOL: f64 = 1e-9;

/// Refinement chains: the bounded power of `w`, one or more refined bounds,
/// and the classical bound they improve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ChainId {
    /// `w^{2r}(T*S) <= th2 <= || |T|^4r + |S|^4r || / 2`.
    Th2Dragomir,
    /// `w^2(T*S) <= th2 (r = 1) <= al_dolat`, both at the same lambda.
    Th2AlDolat,
    /// `w^2(T) <= th3 (alpha = 1/2) <= || |T|^2 + |T*|^2 || / 2`.
    Th3ElHaddad,
    /// `w^4(T) <= th4 <= || |T|^4 + |T*|^4 || / 2`.
    Th4ElHaddad,
    /// `w^4(T) <= th5 <= || |T|^4 + |T*|^4 || / 2`.
    Th5ElHaddad,
    /// `w^4(T) <= th6 (n = 1) <= cor_bomi <= || |T|^4 + |T*|^4 || / 2`.
    BomiElHaddad,
}

impl ChainId {
    pub const ALL: [ChainId; 6] = [
        ChainId::Th2Dragomir,
        ChainId::Th2AlDolat,
        ChainId::Th3ElHaddad,
        ChainId::Th4ElHaddad,
        ChainId::Th5ElHaddad,
        ChainId::BomiElHaddad,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChainId::Th2Dragomir => "th2_dragomir",
            ChainId::Th2AlDolat => "th2_aldolat",
            ChainId::Th3ElHaddad => "th3_elhaddad",
            ChainId::Th4ElHaddad => "th4_elhaddad",
            ChainId::Th5ElHaddad => "th5_elhaddad",
            ChainId::BomiElHaddad => "bomi_elhaddad",
        }
    }

    pub fn is_product(self) -> bool {
        matches!(self, ChainId::Th2Dragomir | ChainId::Th2AlDolat)
    }
}

impl fmt::Display for ChainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChainId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChainId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownChain(s.to_owned()))
    }
}

impl From<ChainId> for String {
    fn from(id: ChainId) -> Self {
        id.as_str().to_owned()
    }
}

impl TryFrom<String> for ChainId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainResult {
    pub chain_name: ChainId,
    pub links: Vec<(String, f64)>,
    pub holds: bool,
}

impl ChainResult {
    fn new(chain_name: ChainId, links: Vec<(String, f64)>) -> Self {
        let holds = links
            .windows(2)
            .all(|w| w[1].1 - w[0].1 >= -CHAIN_TOL * w[0].1.abs().max(w[1].1.abs()));
        Self {
            chain_name,
            links,
            holds,
        }
    }
}

/// Evaluates a chain on `T` (and `S` for product chains; `S = T` if absent).
pub fn refinement_chain(
    t: &ComplexMatrix,
    s: Option<&ComplexMatrix>,
    chain_id: &str,
    params: &BoundParams,
) -> Result<ChainResult> {
    let id: ChainId = chain_id.parse()?;
    let t = SingleOperator::new(t.clone())?;
    let s = match s {
        Some(s) if id.is_product() => Some(SingleOperator::new(s.clone())?),
        _ => None,
    };
    let inputs = match &s {
        Some(s) => BoundInputs::pair(&t, s)?,
        None => BoundInputs::single(&t),
    };
    evaluate_chain(id, &inputs, params)
}

/// Chain evaluation on prepared inputs, sharing cached spectral data.
pub(crate) fn evaluate_chain(id: ChainId, inputs: &BoundInputs<'_>, params: &BoundParams) -> Result<ChainResult> {
    let lambda = params.lambda;
    let check = |bound: BoundId, params: &BoundParams| -> Result<f64> {
        let form = inputs.form(bound, params)?;
        form.check_lambda(lambda)?;
        Ok(form.check_rhs(lambda))
    };
    let link = |label: &str, v: f64| (label.to_owned(), v);
    let half_n4 = || -> Result<f64> { Ok(0.5 * inputs.t().sum_norm(4.0, 4.0)?) };
    let w4 = || -> Result<f64> { Ok(inputs.t().w()?.powi(4)) };
    let links = match id {
        ChainId::Th2Dragomir => {
            let r = params.r;
            vec![
                link("w^2r(T*S)", inputs.w_product()?.powf(2.0 * r)),
                link("th2", check(BoundId::ProductRefinement, params)?),
                link("|| |T|^4r + |S|^4r || / 2", 0.5 * inputs.pair_sum_norm(4.0 * r)?),
            ]
        }
        ChainId::Th2AlDolat => {
            let p = params.with_r(1.0);
            vec![
                link("w^2(T*S)", inputs.w_product()?.powi(2)),
                link("th2", check(BoundId::ProductRefinement, &p)?),
                link("al_dolat", check(BoundId::AlDolat, &p)?),
            ]
        }
        ChainId::Th3ElHaddad => {
            let p = params.with_alpha(0.5);
            vec![
                link("w^2(T)", inputs.t().w()?.powi(2)),
                link("th3", check(BoundId::MixedSchwarzRefinement, &p)?),
                link("|| |T|^2 + |T*|^2 || / 2", 0.5 * inputs.t().sum_norm(2.0, 2.0)?),
            ]
        }
        ChainId::Th4ElHaddad => vec![
            link("w^4(T)", w4()?),
            link("th4", check(BoundId::BuzanoRefinement, params)?),
            link("|| |T|^4 + |T*|^4 || / 2", half_n4()?),
        ],
        ChainId::Th5ElHaddad => vec![
            link("w^4(T)", w4()?),
            link("th5", check(BoundId::BuzanoSplitRefinement, params)?),
            link("|| |T|^4 + |T*|^4 || / 2", half_n4()?),
        ],
        ChainId::BomiElHaddad => vec![
            link("w^4(T)", w4()?),
            link("th6", check(BoundId::BinomialRefinement, &params.with_n(1))?),
            link("cor_bomi", check(BoundId::BinomialFirstOrder, params)?),
            link("|| |T|^4 + |T*|^4 || / 2", half_n4()?),
        ],
    };
    Ok(ChainResult::new(id, links))
}
