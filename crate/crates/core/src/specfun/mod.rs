//! Gamma-function machinery and Mellin–Barnes evaluation of the Fox H
//! function and its two-variable generalization.

pub mod bivariate;
pub mod foxh;
pub mod gamma;
pub mod incgamma;

pub use bivariate::{biv_fox_h, biv_fox_h_eval, biv_fox_h_ln, BivFoxHSpec, BivOrders, BivValue, GammaTriple};
pub use foxh::{fox_h, fox_h_eval, fox_h_ln, ContourConfig, ContourKind, ContourValue, FoxHSpec, GammaPair, ShiftPolicy};
pub use gamma::{gamma, ln_gamma, ln_gamma_complex, ln_gamma_ratio};
pub use incgamma::{gamma_p, gamma_q, upper_incomplete_gamma};
