use thiserror::Error;

/// Failures reported by the numerical routines.
///
/// Complex arguments are carried as `(re, im)` pairs in `f64` so the error
/// type does not depend on the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma function pole at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("{what} did not converge within {terms} terms")]
    NoConvergence { what: &'static str, terms: usize },

    #[error("argument outside the supported domain: {0}")]
    Domain(String),

    #[error("asymptotic series accuracy floor reached: error estimate {err:e} exceeds {limit:e}")]
    AccuracyFloor { err: f64, limit: f64 },

    #[error("energy {re} + {im}i is a pole of S(E); use the Gamow normalization")]
    AtPole { re: f64, im: f64 },

    #[error("S(E) has a pole at E = {re} + {im}i (D(E) vanishes)")]
    SPole { re: f64, im: f64 },

    #[error("phase unwrap failed between E = {from} and E = {to}: jump {jump} rad; reduce the step")]
    UnwrapFailure { from: f64, to: f64, jump: f64 },

    #[error("N(E) vanishes at E = {0}; time delay is indeterminate")]
    TimeDelayIndeterminate(f64),

    #[error("polynomial of degree zero has no roots")]
    NoRoot,

    #[error("two candidate roots tie for the bisector selection: {0}")]
    DegenerateSelection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
