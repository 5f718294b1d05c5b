//! Complex special functions used by the scattering formulas.

mod gamma;
mod hypergeometric;

pub use gamma::{
    cos_pi, digamma, digamma_over_gamma, gamma, recip_gamma, recip_gamma_derivs,
    recip_gamma_derivs_with, sin_pi, CAUCHY_NODES, CAUCHY_RADIUS, MAX_DERIVATIVE_ORDER,
    POLE_TOLERANCE,
};
pub use hypergeometric::{hyp1f1, hyp1f1_scaled, hyp2f0_asymptotic, SeriesConfig, SeriesEval};

pub(crate) use hypergeometric::hyp2f0_with_log_derivative;
