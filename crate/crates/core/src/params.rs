use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest power index for which binomial coefficients stay exact.
pub const MAX_POWER_INDEX: u32 = 15;

/// Free scalars shared by the bound families.
///
/// `lambda` is the positive value the parameterizing function takes; every
/// bound depends on that function only through this value. `r` is the
/// operator power (`r >= 1`), `n` the binomial power index and `alpha` the
/// exponent of the power pair `g(s) = s^alpha`, `h(s) = s^(1 - alpha)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub lambda: f64,
    pub r: f64,
    pub n: u32,
    pub alpha: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            r: 1.5,
            n: 2,
            alpha: 0.25,
        }
    }
}

impl BoundParams {
    pub fn new(lambda: f64, r: f64, n: u32, alpha: f64) -> Result<Self> {
        let p = Self { lambda, r, n, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }

    pub fn with_r(self, r: f64) -> Self {
        Self { r, ..self }
    }

    pub fn with_n(self, n: u32) -> Self {
        Self { n, ..self }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        check_lambda(self.lambda)?;
        check_power(self.r)?;
        check_power_index(self.n)?;
        check_alpha(self.alpha)
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            reason: "must be finite and strictly positive",
        })
    }
}

pub(crate) fn check_lambda_non_negative(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            reason: "must be finite and non-negative",
        })
    }
}

pub(crate) fn check_power(r: f64) -> Result<()> {
    if r >= 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "must be finite and at least 1",
        })
    }
}

pub(crate) fn check_power_index(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    if n > MAX_POWER_INDEX {
        return Err(Error::Overflow {
            n,
            max: MAX_POWER_INDEX,
        });
    }
    Ok(())
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must lie strictly between 0 and 1",
        })
    }
}

/// Exact `C(n, k)` in integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // each partial product c * (n - i) / (i + 1) is itself a binomial coefficient
    (0..k).fold(1u64, |c, i| c * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(30, 15), 155_117_520);
        assert_eq!(binomial(2, 0), 1);
        assert_eq!(binomial(2, 3), 0);
        for n in 1..=30u64 {
            let row_sum: u64 = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(row_sum, 1 << n);
        }
    }

    #[test]
    fn validation() {
        assert!(BoundParams::new(1.0, 1.0, 1, 0.5).is_ok());
        assert!(BoundParams::new(0.0, 1.0, 1, 0.5).is_err());
        assert!(BoundParams::new(1.0, 0.5, 1, 0.5).is_err());
        assert!(BoundParams::new(1.0, 1.0, 0, 0.5).is_err());
        assert!(matches!(
            BoundParams::new(1.0, 1.0, 16, 0.5),
            Err(Error::Overflow { .. })
        ));
        assert!(BoundParams::new(1.0, 1.0, 1, 1.0).is_err());
        assert!(BoundParams::default().validate().is_ok());
    }
}
