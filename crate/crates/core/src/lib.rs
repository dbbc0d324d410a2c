//! Generalized Gaussian distributions and the law of the sum of two
//! independent generalized Gaussian variables.

pub mod approx;
pub mod error;
pub mod ggd;
pub mod ggsum;
pub mod oracle;
pub mod quad;
pub mod specfun;

pub use error::{Divergence, Error, Result};
pub use num_complex::Complex64;
pub use ggd::GGDParams;
pub use ggsum::SumParams;
