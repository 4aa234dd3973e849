//! Vector-level inequalities: Cauchy-Schwarz refinements, Buzano-type
//! bounds and the Young / AM-GM inequality. Every evaluator returns both
//! sides so that fuzz runs and equality-case regressions can inspect slack.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexVector;
use crate::params::{binomial, check_lambda, check_power_index};

/// Relative slack tolerance for vector-level inequalities.
pub const RECORD_TOL: f64 = 1e-10;

/// Tolerance on `||e|| = 1` for the unit vector of Buzano-type bounds.
pub const UNIT_TOL: f64 = 1e-12;

/// One evaluated inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub holds: bool,
    /// Outer bound that `rhs` itself should not exceed, when the inequality
    /// is the first link of a two-step chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<f64>,
}

impl InequalityRecord {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        let holds = slack >= -RECORD_TOL * 1f64.max(lhs.abs()).max(rhs.abs());
        Self {
            name: name.into(),
            lhs,
            rhs,
            slack,
            holds,
            outer: None,
        }
    }

    fn with_outer(mut self, outer: f64) -> Self {
        self.outer = Some(outer);
        self
    }

    /// `rhs <= outer` within the record tolerance; `true` when no outer bound.
    pub fn outer_holds(&self) -> bool {
        self.outer.map_or(true, |o| {
            o - self.rhs >= -RECORD_TOL * 1f64.max(o.abs()).max(self.rhs.abs())
        })
    }
}

/// Norm product `||x|| ||y||` and `|<x, y>|` for a pair of vectors.
struct Pair {
    norms: f64,
    inner: f64,
}

impl Pair {
    fn of(x: &ComplexVector, y: &ComplexVector) -> Result<Self> {
        x.ensure_same_dim(y)?;
        Ok(Self {
            norms: x.norm() * y.norm(),
            inner: x.inner(y).norm(),
        })
    }
}

/// `|<x, e><e, y>|` after checking `e` is a unit vector of matching dimension.
fn projected_product(x: &ComplexVector, y: &ComplexVector, e: &ComplexVector) -> Result<f64> {
    x.ensure_same_dim(e)?;
    y.ensure_same_dim(e)?;
    let norm = e.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitVector { norm });
    }
    Ok((x.inner(e) * e.inner(y)).norm())
}

/// `|<x,y>|^2 <= lambda/(1+lambda) ||x||^2||y||^2 + 1/(1+lambda) |<x,y>| ||x|| ||y||`,
/// with outer bound `||x||^2 ||y||^2`.
pub fn cs_refinement_gen(x: &ComplexVector, y: &ComplexVector, lambda: f64) -> Result<InequalityRecord> {
    check_lambda(lambda)?;
    let Pair { norms, inner } = Pair::of(x, y)?;
    let rhs = (lambda * norms * norms + inner * norms) / (1.0 + lambda);
    Ok(InequalityRecord::new("cs_refinement_gen", inner * inner, rhs).with_outer(norms * norms))
}

/// `|<x,y>|^2 <= lambda/(2(1+lambda)) ||x||^2||y||^2 + (2+lambda)/(2(1+lambda)) |<x,y>| ||x|| ||y||`.
pub fn cs_refinement_two(x: &ComplexVector, y: &ComplexVector, lambda: f64) -> Result<InequalityRecord> {
    check_lambda(lambda)?;
    let Pair { norms, inner } = Pair::of(x, y)?;
    let denom = 2.0 * (1.0 + lambda);
    let rhs = lambda / denom * norms * norms + (2.0 + lambda) / denom * inner * norms;
    Ok(InequalityRecord::new("cs_refinement_two", inner * inner, rhs).with_outer(norms * norms))
}

/// Buzano: `|<x,e><e,y>| <= (||x|| ||y|| + |<x,y>|) / 2` for unit `e`.
pub fn buzano(x: &ComplexVector, y: &ComplexVector, e: &ComplexVector) -> Result<InequalityRecord> {
    let lhs = projected_product(x, y, e)?;
    let Pair { norms, inner } = Pair::of(x, y)?;
    Ok(InequalityRecord::new("buzano", lhs, 0.5 * (norms + inner)))
}

/// Squared Buzano bound with the refined Cauchy-Schwarz step:
/// `|<x,e><e,y>|^2 <= (2+3l)/(8(1+l)) ||x||^2||y||^2 + (6+5l)/(8(1+l)) ||x|| ||y|| |<x,y>|`.
pub fn buzano_refined(
    x: &ComplexVector,
    y: &ComplexVector,
    e: &ComplexVector,
    lambda: f64,
) -> Result<InequalityRecord> {
    check_lambda(lambda)?;
    let p = projected_product(x, y, e)?;
    let Pair { norms, inner } = Pair::of(x, y)?;
    let denom = 8.0 * (1.0 + lambda);
    let rhs = (2.0 + 3.0 * lambda) / denom * norms * norms + (6.0 + 5.0 * lambda) / denom * norms * inner;
    Ok(InequalityRecord::new("buzano_refined", p * p, rhs))
}

/// `|<x,e><e,y>|^2 <= l/(4(1+l)) (||x|| ||y|| + |<x,y>|)^2
///                    + 1/(2(1+l)) |<x,e><e,y>| (||x|| ||y|| + |<x,y>|)`.
///
/// The square is taken of the full sum `||x|| ||y|| + |<x,y>|`.
pub fn buzano_refined_two(
    x: &ComplexVector,
    y: &ComplexVector,
    e: &ComplexVector,
    lambda: f64,
) -> Result<InequalityRecord> {
    check_lambda(lambda)?;
    let p = projected_product(x, y, e)?;
    let Pair { norms, inner } = Pair::of(x, y)?;
    let sum = norms + inner;
    let rhs = lambda / (4.0 * (1.0 + lambda)) * sum * sum + p * sum / (2.0 * (1.0 + lambda));
    Ok(InequalityRecord::new("buzano_refined_two", p * p, rhs))
}

/// `2n`-th power Buzano bound obtained by expanding `(||x|| ||y|| + |<x,y>|)^{2n}`
/// binomially and refining only the pure `|<x,y>|^{2n}` term.
pub fn buzano_power(
    x: &ComplexVector,
    y: &ComplexVector,
    e: &ComplexVector,
    lambda: f64,
    n: u32,
) -> Result<InequalityRecord> {
    check_lambda(lambda)?;
    check_power_index(n)?;
    let p = projected_product(x, y, e)?;
    let Pair { norms, inner } = Pair::of(x, y)?;
    let ni = n as i32;
    let scale = 0.25f64.powi(ni);
    let head = scale * (1.0 + 2.0 * lambda) / (1.0 + lambda) * norms.powi(2 * ni);
    let mixed = scale / (1.0 + lambda) * norms.powi(ni) * inner.powi(ni);
    let cross: f64 = (1..2 * n)
        .map(|r| binomial(2 * n as u64, r as u64) as f64 * norms.powi(r as i32) * inner.powi(2 * ni - r as i32))
        .sum();
    let rhs = head + mixed + scale * cross;
    Ok(InequalityRecord::new("buzano_power", p.powi(2 * ni), rhs))
}

/// Young: `a^t b^(1-t) <= t a + (1-t) b` for `a, b >= 0`, `t in [0, 1]`.
/// `t = 1/2` is the AM-GM inequality.
pub fn young_amgm(a: f64, b: f64, t: f64) -> Result<InequalityRecord> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                reason: "must be finite and non-negative",
            });
        }
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "must lie in [0, 1]",
        });
    }
    // powf gives 0^0 = 1, and 0^s = 0 for s > 0, which is the intended convention
    let lhs = a.powf(t) * b.powf(1.0 - t);
    Ok(InequalityRecord::new("young_amgm", lhs, t * a + (1.0 - t) * b))
}
