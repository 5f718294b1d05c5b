//! Zeros of D(E) (poles of S) and of N(E) (zeros of S).
//!
//! Two routes: Newton iteration on D seeded from grid minima of |D|, and
//! roots of the truncated Maclaurin polynomial of D near the bisector of
//! the fourth quadrant.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, i_unit, is_finite, lit, real, Real};
use crate::scattering::{d_of_e, d_term_scale, dd_de, dn_de, n_of_e, n_term_scale};
use crate::specfun::{recip_gamma_derivs, MAX_DERIVATIVE_ORDER};

/// Largest Taylor order supported by [`taylor_coeff_b`].
pub const MAX_TAYLOR_ORDER: usize = 20;

/// Radius within which two converged roots count as the same.
pub const DEDUP_RADIUS: f64 = 1e-6;

/// Largest |D| (or |N|) accepted at a reported root, unless rounding in
/// the two cancelling terms already exceeds it; see [`residual_limit`].
pub const MAX_RESIDUAL: f64 = 1e-10;

/// Rounding allowance, in units of eps × (sum of term moduli).
const ROUNDING_ULPS: f64 = 64.0;

/// Residual accepted at a root where the two terms have total modulus
/// `term_scale`.
pub fn residual_limit<T: Real>(term_scale: T) -> T {
    lit::<T>(MAX_RESIDUAL).max(lit::<T>(ROUNDING_ULPS) * T::epsilon() * term_scale)
}

const MAX_NEWTON_ITERATIONS: usize = 100;
const MAX_HALVINGS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorCoeff<T> {
    pub m: usize,
    pub b: Complex<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleRecord<T> {
    pub location: Complex<T>,
    /// |D(location)| (|N| for zeros of S).
    pub residual: T,
    pub iterations: usize,
    pub seed: Complex<T>,
}

/// Outcome of a grid-seeded root search.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSearch<T> {
    pub records: Vec<PoleRecord<T>>,
    /// Seeds whose Newton run failed, left the region or stalled above
    /// [`residual_limit`].
    pub dropped: usize,
    pub seeds: usize,
}

/// Newton run with the residual after every accepted step.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonTrace<T> {
    pub root: Complex<T>,
    pub residuals: Vec<T>,
    pub iterations: usize,
}

/// Coefficient `b_m` of `D(E) = Σ b_m E^m`.
pub fn taylor_coeff_b<T: Real>(m: usize) -> Result<TaylorCoeff<T>> {
    Ok(taylor_coeffs::<T>(m)?[m])
}

/// `b_0 … b_{m_max}`.
pub fn taylor_coeffs<T: Real>(m_max: usize) -> Result<Vec<TaylorCoeff<T>>> {
    if m_max > MAX_TAYLOR_ORDER {
        return Err(Error::Domain(format!(
            "Taylor order {m_max} exceeds {MAX_TAYLOR_ORDER}"
        )));
    }
    debug_assert!(m_max <= MAX_DERIVATIVE_ORDER);
    let g3 = recip_gamma_derivs(real(lit::<T>(0.75)), m_max)?;
    let g1 = recip_gamma_derivs(real(lit::<T>(0.25)), m_max)?;
    let mut factorial = vec![T::one(); m_max + 1];
    for k in 1..=m_max {
        factorial[k] = factorial[k - 1] * from_usize(k);
    }
    let i = i_unit::<T>();
    let mut ipow = vec![real(T::one()); m_max + 1];
    for k in 1..=m_max {
        ipow[k] = ipow[k - 1] * i;
    }
    let eighth = T::PI() / lit(8.0);
    let (em, ep) = (cis(-eighth), cis(eighth));
    let mut out = Vec::with_capacity(m_max + 1);
    let mut quarter_pow = T::one();
    for m in 0..=m_max {
        let mut sum = Complex::new(T::zero(), T::zero());
        for n in 0..=m {
            let phase = em * ipow[m - n] + ep * ipow[n];
            sum += phase * g3[n] * g1[m - n] / (factorial[n] * factorial[m - n]);
        }
        out.push(TaylorCoeff {
            m,
            b: sum * quarter_pow,
        });
        quarter_pow = quarter_pow * lit(-0.25);
    }
    Ok(out)
}

/// dD/dE.
pub fn d_prime<T: Real>(e: Complex<T>) -> Complex<T> {
    dd_de(e)
}

/// Root of `Σ_{m≤M} b_m E^m` nearest the ray `arg E = -π/4`.
///
/// Several roots can lie exactly on the ray; the one of smallest modulus is
/// taken.
pub fn bisector_pole_approx<T: Real>(m: usize) -> Result<Complex<T>> {
    if m == 0 {
        return Err(Error::NoRoot);
    }
    let coeffs: Vec<Complex<T>> = taylor_coeffs::<T>(m)?.into_iter().map(|c| c.b).collect();
    let roots = polynomial_roots(&coeffs)?;
    select_bisector_root(&roots)
}

fn select_bisector_root<T: Real>(roots: &[Complex<T>]) -> Result<Complex<T>> {
    let target = -T::FRAC_PI_4();
    let dist = |z: &Complex<T>| {
        let mut d = (z.arg() - target).abs();
        if d > T::PI() {
            d = lit::<T>(2.0) * T::PI() - d;
        }
        d
    };
    let best = roots
        .iter()
        .map(dist)
        .fold(T::infinity(), |a, b| a.min(b));
    let window = lit::<T>(1e-6);
    let mut cands: Vec<Complex<T>> = roots
        .iter()
        .copied()
        .filter(|z| dist(z) <= best + window)
        .collect();
    cands.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal));
    match cands.as_slice() {
        [] => Err(Error::NoRoot),
        [only] => Ok(*only),
        [first, second, ..] => {
            let tie = lit::<T>(1e-9) * second.norm();
            if (second.norm() - first.norm()).abs() <= tie {
                Err(Error::DegenerateSelection(format!(
                    "{first} and {second} are equally close to the bisector"
                )))
            } else {
                Ok(*first)
            }
        }
    }
}

/// All roots of `Σ c_k z^k` (coefficients low to high) by the
/// Aberth–Ehrlich iteration, polished with Newton steps.
pub fn polynomial_roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let mut c: Vec<Complex<T>> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == T::zero()) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Err(Error::NoRoot);
    }
    let lead = c[deg];
    // Fujiwara bound for the initial circle
    let radius = (0..deg)
        .map(|k| (c[k] / lead).norm().powf(T::one() / from_usize(deg - k)))
        .fold(T::zero(), |a, b| a.max(b))
        * lit(2.0);
    let radius = radius.max(lit(1e-3));
    let two_pi = T::PI() * lit(2.0);
    let mut z: Vec<Complex<T>> = (0..deg)
        .map(|k| cis((two_pi * from_usize(k) + lit(0.4)) / from_usize(deg)) * radius)
        .collect();
    let eval = |x: Complex<T>| {
        let mut p = c[deg];
        let mut dp = Complex::new(T::zero(), T::zero());
        for k in (0..deg).rev() {
            dp = dp * x + p;
            p = p * x + c[k];
        }
        (p, dp)
    };
    const MAX_SWEEPS: usize = 500;
    let mut done = false;
    for _ in 0..MAX_SWEEPS {
        let mut biggest = T::zero();
        for k in 0..deg {
            let (p, dp) = eval(z[k]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = p / dp;
            let mut repulsion = Complex::new(T::zero(), T::zero());
            for j in 0..deg {
                if j != k {
                    repulsion += (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (real(T::one()) - ratio * repulsion);
            z[k] -= w;
            biggest = biggest.max(w.norm() / z[k].norm().max(T::one()));
        }
        if biggest <= T::epsilon() * lit(64.0) {
            done = true;
            break;
        }
    }
    if !done {
        return Err(Error::NoConvergence {
            what: "Aberth polynomial root iteration",
            terms: MAX_SWEEPS,
        });
    }
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*root);
            if dp.norm() == T::zero() {
                break;
            }
            *root -= p / dp;
        }
    }
    Ok(z)
}

/// Damped Newton iteration for a zero of `f`.
///
/// A step that increases |f| is halved, up to 20 times. Converged when the
/// step is below `tol·max(1, |E|)`.
pub fn newton<T: Real, F, G>(f: F, df: G, seed: Complex<T>, tol: T) -> Result<NewtonTrace<T>>
where
    F: Fn(Complex<T>) -> Complex<T>,
    G: Fn(Complex<T>) -> Complex<T>,
{
    let mut e = seed;
    let mut fe = f(e);
    let mut residuals = vec![fe.norm()];
    for it in 1..=MAX_NEWTON_ITERATIONS {
        if fe.norm() == T::zero() {
            return Ok(NewtonTrace {
                root: e,
                residuals,
                iterations: it - 1,
            });
        }
        let d = df(e);
        if d.norm() == T::zero() || !is_finite(d) {
            break;
        }
        let mut step = fe / d;
        let mut next = e - step;
        let mut fnext = f(next);
        let mut halvings = 0;
        while !(fnext.norm() <= fe.norm()) && halvings < MAX_HALVINGS {
            step = step * lit::<T>(0.5);
            next = e - step;
            fnext = f(next);
            halvings += 1;
        }
        e = next;
        fe = fnext;
        residuals.push(fe.norm());
        if step.norm() <= tol * e.norm().max(T::one()) {
            return Ok(NewtonTrace {
                root: e,
                residuals,
                iterations: it,
            });
        }
    }
    Err(Error::NoConvergence {
        what: "Newton iteration",
        terms: MAX_NEWTON_ITERATIONS,
    })
}

/// Zeros of D in the rectangle, i.e. poles of S.
pub fn find_poles<T: Real>(
    re_range: (T, T),
    im_range: (T, T),
    grid_n: usize,
    tol: T,
) -> Result<PoleSearch<T>> {
    find_zeros(d_of_e, d_prime, d_term_scale, re_range, im_range, grid_n, tol)
}

/// Zeros of N in the rectangle, i.e. zeros of S.
pub fn find_s_zeros<T: Real>(
    re_range: (T, T),
    im_range: (T, T),
    grid_n: usize,
    tol: T,
) -> Result<PoleSearch<T>> {
    find_zeros(n_of_e, dn_de, n_term_scale, re_range, im_range, grid_n, tol)
}

fn find_zeros<T: Real>(
    f: fn(Complex<T>) -> Complex<T>,
    df: fn(Complex<T>) -> Complex<T>,
    scale: fn(Complex<T>) -> T,
    (re_lo, re_hi): (T, T),
    (im_lo, im_hi): (T, T),
    grid_n: usize,
    tol: T,
) -> Result<PoleSearch<T>> {
    if grid_n < 16 {
        return Err(Error::Domain(format!("grid_n = {grid_n} is below 16")));
    }
    if !(tol >= lit(1e-12)) {
        return Err(Error::Domain(format!("tol = {tol} is below 1e-12")));
    }
    if !(re_lo < re_hi && im_lo < im_hi) {
        return Err(Error::Domain("empty search region".into()));
    }
    let n = grid_n;
    let last = from_usize::<T>(n - 1);
    let node = |i: usize, j: usize| {
        Complex::new(
            re_lo + (re_hi - re_lo) * from_usize(i) / last,
            im_lo + (im_hi - im_lo) * from_usize(j) / last,
        )
    };
    let mut modulus = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            modulus[i * n + j] = f(node(i, j)).norm();
        }
    }
    let mut seeds = Vec::new();
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            let v = modulus[i * n + j];
            let is_min = (i - 1..=i + 1).all(|a| {
                (j - 1..=j + 1).all(|b| (a == i && b == j) || v <= modulus[a * n + b])
            });
            if is_min {
                seeds.push(node(i, j));
            }
        }
    }
    let inside = |z: Complex<T>| re_lo <= z.re && z.re <= re_hi && im_lo <= z.im && z.im <= im_hi;
    let dedup = lit::<T>(DEDUP_RADIUS);
    let mut records: Vec<PoleRecord<T>> = Vec::new();
    let mut dropped = 0usize;
    for &seed in &seeds {
        let trace = match newton(f, df, seed, tol) {
            Ok(t) => t,
            Err(_) => {
                dropped += 1;
                continue;
            }
        };
        let residual = f(trace.root).norm();
        if !inside(trace.root) || !(residual <= residual_limit(scale(trace.root))) {
            dropped += 1;
            continue;
        }
        if records
            .iter()
            .any(|r| (r.location - trace.root).norm() <= dedup)
        {
            continue;
        }
        records.push(PoleRecord {
            location: trace.root,
            residual,
            iterations: trace.iterations,
            seed,
        });
    }
    records.sort_by(|a, b| {
        let key = |r: &PoleRecord<T>| (r.location.im.abs(), r.location.re);
        let (ka, kb) = (key(a), key(b));
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(PoleSearch {
        records,
        dropped,
        seeds: seeds.len(),
    })
}
