use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ensemble::EnsembleConfig;
use crate::bounds::{evaluate_chain, BoundId, BoundInputs, BoundMode, BoundResult, ChainId, SingleOperator};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::params::BoundParams;

/// Lambda values spanning both ends of the homographic family.
pub const DEFAULT_LAMBDA_GRID: [f64; 5] = [0.01, 0.5, 1.0, 2.0, 100.0];

/// What a suite evaluates on each trial matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub bounds: Vec<BoundId>,
    pub chains: Vec<ChainId>,
    pub lambda_grid: Vec<f64>,
    pub r: f64,
    pub n: u32,
    pub alpha: f64,
    /// Evaluate trials on the rayon pool. The report does not depend on it.
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        let p = BoundParams::default();
        Self {
            bounds: BoundId::ALL.to_vec(),
            chains: ChainId::ALL.to_vec(),
            lambda_grid: DEFAULT_LAMBDA_GRID.to_vec(),
            r: p.r,
            n: p.n,
            alpha: p.alpha,
            parallel: false,
        }
    }
}

impl SuiteOptions {
    fn params(&self) -> Result<BoundParams> {
        for &lambda in &self.lambda_grid {
            if !(lambda > 0.0 && lambda.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "lambda grid value {lambda} is not positive"
                )));
            }
        }
        BoundParams::new(1.0, self.r, self.n, self.alpha)
    }
}

/// One bound evaluated on one trial; `lambda` is `None` for lambda-free bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub trial: usize,
    pub bound: BoundId,
    pub mode: BoundMode,
    pub lambda: Option<f64>,
    pub r: f64,
    pub n: u32,
    pub alpha: f64,
    pub exponent_p: f64,
    pub w_power: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

impl BoundRow {
    fn new(trial: usize, res: BoundResult) -> Self {
        Self {
            trial,
            bound: res.bound_name,
            mode: res.mode,
            lambda: res.bound_name.uses_lambda().then_some(res.params.lambda),
            r: res.params.r,
            n: res.params.n,
            alpha: res.params.alpha,
            exponent_p: res.exponent_p,
            w_power: res.w_power_value,
            rhs: res.rhs_value,
            slack: res.slack,
            holds: res.holds,
        }
    }

    /// `slack / max(|rhs|, |w^p|)`, zero when both vanish.
    pub fn relative_slack(&self) -> f64 {
        let scale = self.rhs.abs().max(self.w_power.abs());
        if scale > 0.0 {
            self.slack / scale
        } else {
            0.0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub trial: usize,
    pub chain: ChainId,
    pub lambda: f64,
    pub links: Vec<(String, f64)>,
    pub holds: bool,
}

/// Relative slack statistics of one bound in one mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tightness {
    pub rows: usize,
    pub mean_relative_slack: f64,
    pub min_relative_slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: EnsembleConfig,
    pub options: SuiteOptions,
    pub bound_rows: Vec<BoundRow>,
    pub chain_rows: Vec<ChainRow>,
    /// Failing bound rows plus failing chain rows.
    pub violations: usize,
    /// Keyed by `bound/mode`.
    pub tightness: BTreeMap<String, Tightness>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn cmp_lambda(a: Option<f64>, b: Option<f64>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (a, b) => a.is_some().cmp(&b.is_some()),
    }
}

struct TrialRows {
    bounds: Vec<BoundRow>,
    chains: Vec<ChainRow>,
}

fn run_trial(matrices: &[ComplexMatrix], trial: usize, opts: &SuiteOptions, base: &BoundParams) -> Result<TrialRows> {
    let t = SingleOperator::new(matrices[trial].clone())?;
    // trial 2k pairs with 2k+1; an unpaired last matrix pairs with itself
    let partner = trial ^ 1;
    let needs_pair = opts.bounds.iter().any(|b| b.is_product()) || opts.chains.iter().any(|c| c.is_product());
    let s = if needs_pair && partner < matrices.len() {
        Some(SingleOperator::new(matrices[partner].clone())?)
    } else {
        None
    };
    let inputs = match &s {
        Some(s) => BoundInputs::pair(&t, s)?,
        None => BoundInputs::single(&t),
    };

    let mut bounds = Vec::new();
    for &id in &opts.bounds {
        let form = inputs.form(id, base)?;
        let grid: &[f64] = if id.uses_lambda() { &opts.lambda_grid } else { &[1.0] };
        for &lambda in grid {
            bounds.extend(form.evaluate(lambda)?.into_iter().map(|r| BoundRow::new(trial, r)));
        }
    }
    let mut chains = Vec::new();
    for &id in &opts.chains {
        for &lambda in &opts.lambda_grid {
            let c = evaluate_chain(id, &inputs, &base.with_lambda(lambda))?;
            chains.push(ChainRow {
                trial,
                chain: id,
                lambda,
                links: c.links,
                holds: c.holds,
            });
        }
    }
    Ok(TrialRows { bounds, chains })
}

/// Evaluates every requested bound at every lambda, and every chain, on
/// every trial of the ensemble. Violations are recorded, never fatal.
pub fn run_suite(config: &EnsembleConfig, opts: &SuiteOptions) -> Result<SuiteReport> {
    config.validate()?;
    let base = opts.params()?;
    let matrices = super::generate_ensemble(config)?;
    let per_trial: Vec<TrialRows> = if opts.parallel {
        (0..matrices.len())
            .into_par_iter()
            .map(|k| run_trial(&matrices, k, opts, &base))
            .collect::<Result<_>>()?
    } else {
        (0..matrices.len())
            .map(|k| run_trial(&matrices, k, opts, &base))
            .collect::<Result<_>>()?
    };

    let mut bound_rows = Vec::new();
    let mut chain_rows = Vec::new();
    for t in per_trial {
        bound_rows.extend(t.bounds);
        chain_rows.extend(t.chains);
    }
    bound_rows.sort_by(|a, b| {
        (a.trial, a.bound.as_str())
            .cmp(&(b.trial, b.bound.as_str()))
            .then_with(|| cmp_lambda(a.lambda, b.lambda))
            .then_with(|| a.mode.cmp(&b.mode))
    });
    chain_rows.sort_by(|a, b| {
        (a.trial, a.chain.as_str())
            .cmp(&(b.trial, b.chain.as_str()))
            .then_with(|| a.lambda.total_cmp(&b.lambda))
    });

    let violations = bound_rows.iter().filter(|r| !r.holds).count() + chain_rows.iter().filter(|r| !r.holds).count();
    let tightness = tightness(&bound_rows);
    Ok(SuiteReport {
        config: *config,
        options: SuiteOptions {
            parallel: false,
            ..opts.clone()
        },
        bound_rows,
        chain_rows,
        violations,
        tightness,
    })
}

fn tightness(rows: &[BoundRow]) -> BTreeMap<String, Tightness> {
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in rows {
        groups
            .entry(format!("{}/{}", r.bound, r.mode))
            .or_default()
            .push(r.relative_slack());
    }
    groups
        .into_iter()
        .map(|(k, v)| {
            let t = Tightness {
                rows: v.len(),
                mean_relative_slack: v.iter().sum::<f64>() / v.len() as f64,
                min_relative_slack: v.iter().copied().fold(f64::INFINITY, f64::min),
            };
            (k, t)
        })
        .collect()
}
