//! Confluent hypergeometric ₁F₁ (Maclaurin series) and the divergent ₂F₀
//! series under optimal truncation.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, real, Real};

/// Result of summing a (possibly asymptotic) series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval<T> {
    pub value: Complex<T>,
    pub terms_used: usize,
    pub converged: bool,
    /// Magnitude of the last added (₁F₁) or first omitted (₂F₀) term.
    pub err_estimate: T,
}

#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig<T> {
    /// Relative size below which a term counts as negligible.
    pub tol: T,
    pub max_terms: usize,
    /// Largest `|z|` accepted by [`hyp1f1`].
    pub max_abs_z: T,
}

impl<T: Real> Default for SeriesConfig<T> {
    fn default() -> Self {
        SeriesConfig {
            tol: T::epsilon(),
            max_terms: 10_000,
            max_abs_z: lit(900.0),
        }
    }
}

/// Consecutive negligible terms required before ₁F₁ is declared converged.
const SMALL_TERMS_IN_A_ROW: usize = 3;

fn is_nonpositive_integer<T: Real>(c: Complex<T>) -> bool {
    c.im == T::zero() && c.re <= T::zero() && c.re == c.re.round()
}

/// ₁F₁(a; c; z) by direct Maclaurin summation.
pub fn hyp1f1<T: Real>(a: Complex<T>, c: Complex<T>, z: Complex<T>) -> Result<SeriesEval<T>> {
    hyp1f1_scaled(a, c, z, real(T::one()), &SeriesConfig::default())
}

/// `scale · ₁F₁(a; c; z)`.
///
/// The prefactor seeds the first term, so an exponential prefactor such as
/// `exp(-z/2)` can be folded in without the bare series overflowing.
pub fn hyp1f1_scaled<T: Real>(
    a: Complex<T>,
    c: Complex<T>,
    z: Complex<T>,
    scale: Complex<T>,
    cfg: &SeriesConfig<T>,
) -> Result<SeriesEval<T>> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!(
            "1F1 lower parameter c = {} is a non-positive integer",
            c.re
        )));
    }
    if z.norm() > cfg.max_abs_z {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds the 1F1 series bound {}",
            z.norm(),
            cfg.max_abs_z
        )));
    }
    let mut term = scale;
    let mut sum = scale;
    let mut small_run = 0usize;
    for k in 0..cfg.max_terms {
        let kk = from_usize::<T>(k);
        term = term * (a + kk) * z / ((c + kk) * (kk + T::one()));
        sum += term;
        if term.norm() <= cfg.tol * sum.norm() {
            small_run += 1;
            if small_run >= SMALL_TERMS_IN_A_ROW {
                return Ok(SeriesEval {
                    value: sum,
                    terms_used: k + 2,
                    converged: true,
                    err_estimate: term.norm(),
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence {
        what: "1F1 Maclaurin series",
        terms: cfg.max_terms,
    })
}

/// Optimally truncated ₂F₀(a1, a2;; w) = Σ (a1)_k (a2)_k w^k / k!.
///
/// Summation stops before the smallest-magnitude term; that term is the
/// error estimate. A terminating series (some `(a)_k = 0`) is exact.
pub fn hyp2f0_asymptotic<T: Real>(a1: Complex<T>, a2: Complex<T>, w: Complex<T>) -> SeriesEval<T> {
    hyp2f0_with_log_derivative(a1, a2, w, &SeriesConfig::default()).eval
}

/// ₂F₀ sum with the extra sums needed by callers that differentiate it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Hyp2f0Parts<T> {
    pub eval: SeriesEval<T>,
    /// `w · d/dw ₂F₀ = Σ k t_k` over the retained terms.
    pub weighted: Complex<T>,
    /// `Σ |t_k|` over the retained terms, for rounding-error bounds.
    pub abs_sum: T,
}

/// Same truncation as [`hyp2f0_asymptotic`].
pub(crate) fn hyp2f0_with_log_derivative<T: Real>(
    a1: Complex<T>,
    a2: Complex<T>,
    w: Complex<T>,
    cfg: &SeriesConfig<T>,
) -> Hyp2f0Parts<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut term = real(T::one());
    let mut sum = zero;
    let mut weighted = zero;
    let mut abs_sum = T::zero();
    let mut used = 0usize;
    let mut err = T::zero();
    for k in 0..cfg.max_terms {
        let kk = from_usize::<T>(k);
        let next = term * (a1 + kk) * (a2 + kk) * w / (kk + T::one());
        if k > 0 && next.norm() >= term.norm() {
            // `term` is the smallest one: leave it out
            err = term.norm();
            break;
        }
        sum += term;
        weighted += term * kk;
        abs_sum += term.norm();
        used = k + 1;
        if next.norm() <= cfg.tol * sum.norm() {
            err = next.norm();
            break;
        }
        term = next;
    }
    let converged = err <= cfg.tol.max(lit(1e-300)) * sum.norm().max(T::min_positive_value());
    Hyp2f0Parts {
        eval: SeriesEval {
            value: sum,
            terms_used: used,
            converged,
            err_estimate: err,
        },
        weighted,
        abs_sum,
    }
}
