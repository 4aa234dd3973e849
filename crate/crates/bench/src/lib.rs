//! Shared fixtures for the benchmarks.

use numrad_core::harness::{generate_ensemble, Ensemble, EnsembleConfig};
use numrad_core::ComplexMatrix;

/// Dimensions the engine benchmarks sweep over.
pub const DIMS: [usize; 4] = [2, 4, 8, 16];

/// A fixed Ginibre draw of the given dimension.
pub fn ginibre(dim: usize) -> ComplexMatrix {
    let config = EnsembleConfig::new(Ensemble::Ginibre, dim, 1, 17).expect("valid config");
    generate_ensemble(&config).expect("ginibre sample").remove(0)
}
