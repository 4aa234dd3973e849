use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    /// i.i.d. standard complex Gaussian entries.
    Ginibre,
    /// Hermitian with real Gaussian diagonal and complex Gaussian off-diagonals.
    Gue,
    /// Strictly upper-triangular complex Gaussian.
    Nilpotent,
    /// `U diag(d) U*` with `U` from a QR factorization of a Ginibre draw.
    Normal,
    /// `x y*` for complex Gaussian vectors.
    RankOne,
    /// The nilpotent shift with ones on the superdiagonal.
    Jordan,
}

impl Ensemble {
    pub const ALL: [Ensemble; 6] = [
        Ensemble::Ginibre,
        Ensemble::Gue,
        Ensemble::Nilpotent,
        Ensemble::Normal,
        Ensemble::RankOne,
        Ensemble::Jordan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Ensemble::Ginibre => "ginibre",
            Ensemble::Gue => "gue",
            Ensemble::Nilpotent => "nilpotent",
            Ensemble::Normal => "normal",
            Ensemble::RankOne => "rank_one",
            Ensemble::Jordan => "jordan",
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ensemble::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::UnknownEnsemble(s.to_owned()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub ensemble: Ensemble,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(ensemble: Ensemble, dim: usize, trials: usize, seed: u64) -> Result<Self> {
        let config = Self {
            ensemble,
            dim,
            trials,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidConfig(format!(
                "dim must be at least 2, got {}",
                self.dim
            )));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        Ok(())
    }

    /// Generator for one trial: the seed picks the key and the trial index
    /// the stream, so every trial is reproducible on its own.
    fn rng(&self, trial: usize) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    /// Matrix of trial `trial`, independent of every other trial.
    pub fn sample(&self, trial: usize) -> Result<ComplexMatrix> {
        self.validate()?;
        let mut rng = self.rng(trial);
        let n = self.dim;
        Ok(match self.ensemble {
            Ensemble::Ginibre => ginibre(&mut rng, n),
            Ensemble::Gue => {
                let mut m = ComplexMatrix::zeros(n);
                for i in 0..n {
                    m[(i, i)] = Complex64::new(rng.sample(StandardNormal), 0.0);
                    for j in i + 1..n {
                        let z = complex_gaussian(&mut rng);
                        m[(i, j)] = z;
                        m[(j, i)] = z.conj();
                    }
                }
                m
            }
            Ensemble::Nilpotent => {
                let mut m = ComplexMatrix::zeros(n);
                for i in 0..n {
                    for j in i + 1..n {
                        m[(i, j)] = complex_gaussian(&mut rng);
                    }
                }
                m
            }
            Ensemble::Normal => {
                let u = orthonormalize(ginibre(&mut rng, n));
                let d: Vec<Complex64> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
                let ud = ComplexMatrix::from_fn(n, |i, j| u[(i, j)] * d[j]);
                &ud * &u.adjoint()
            }
            Ensemble::RankOne => {
                let x: Vec<Complex64> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
                let y: Vec<Complex64> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
                ComplexMatrix::from_fn(n, |i, j| x[i] * y[j].conj())
            }
            Ensemble::Jordan => ComplexMatrix::shift(n),
        })
    }
}

/// `(a + ib) / sqrt 2` with `a, b` standard normal, so `E|z|^2 = 1`.
fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| complex_gaussian(rng))
}

/// Q factor of a QR factorization by modified Gram-Schmidt on the columns.
/// R has a positive diagonal, which fixes the column phases.
fn orthonormalize(mut a: ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    for k in 0..n {
        for j in 0..k {
            let proj: Complex64 = (0..n).map(|i| a[(i, j)].conj() * a[(i, k)]).sum();
            for i in 0..n {
                let v = a[(i, j)];
                a[(i, k)] -= proj * v;
            }
        }
        let norm = (0..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            a[(i, k)] /= norm;
        }
    }
    a
}

/// All trials of a configuration, in trial order.
pub fn generate_ensemble(config: &EnsembleConfig) -> Result<Vec<ComplexMatrix>> {
    config.validate()?;
    (0..config.trials).map(|k| config.sample(k)).collect()
}
