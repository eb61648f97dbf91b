//! Eigenvalue-entropy (EVE) evaluation of classifiers from confusion
//! matrices, with the classical comparison measures alongside.
//!
//! Confusion matrices use column = true class, row = predicted class.
//!
//! ```
//! use eve_core::{eve, ConfusionMatrix};
//!
//! let m = ConfusionMatrix::from_dense(&[[45.0, 5.0], [5.0, 45.0]]).unwrap();
//! let score = eve(&m).unwrap();
//! assert!((score - 0.9911).abs() < 1e-4);
//! ```

pub mod confusion;
pub mod convert;
pub mod densemat;
pub mod error;
pub mod fixtures;
pub mod measures;
pub mod spectral;

pub use confusion::ConfusionMatrix;
pub use convert::{one_vs_rest, pairs_binary, pairs_binary_literal, pairs_binary_oracle, BinaryCounts};
pub use densemat::{jacobi_eigenvalues, matrix_rank, symmetric_eigenvalues, EigenResult, Matrix};
pub use error::{Error, Result};
pub use fixtures::Fixture;
pub use measures::{
    binary_measures, evaluate, evaluate_per_class, BinaryMeasures, Measure, MeasureReport, MeasureSelection, Source,
};
pub use spectral::{derive, eve, spectrum, DerivedMatrices, Spectrum};
