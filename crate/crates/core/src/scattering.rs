//! Connection factors, the scattering function `S(E) = i N(E)/D(E)`, the
//! phase shift and the Wigner time delay.
//!
//! Every `1/Γ` is evaluated with [`recip_gamma`], and every `ψ/Γ` with
//! [`digamma_over_gamma`], so `N`, `D` and their derivatives stay finite
//! for all finite `E`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::uniform_grid;
use crate::scalar::{i_unit, lit, real, Real};
use crate::specfun::{digamma_over_gamma, recip_gamma};

/// Largest energy increment used when bridging a scan to the `E = 0` anchor.
pub const BRIDGE_STEP: f64 = 0.01;

/// Coefficients `T_{j,k}^±` in `ψ_j^± ~ T_{j,3}^± ψ_3^± + T_{j,4}^± ψ_4^±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionFactors<T> {
    pub t13p: Complex<T>,
    pub t14p: Complex<T>,
    pub t23p: Complex<T>,
    pub t24p: Complex<T>,
    pub t13m: Complex<T>,
    pub t14m: Complex<T>,
    pub t23m: Complex<T>,
    pub t24m: Complex<T>,
}

/// A point of a real-energy scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterPoint<T> {
    pub energy: T,
    pub s: Complex<T>,
    /// Phase shift in radians, continuous along the scan, `δ(0) ∈ [0, π)`.
    pub delta: T,
    pub time_delay: T,
}

fn quarter<T: Real>(z: Complex<T>) -> Complex<T> {
    z * lit::<T>(0.25)
}

/// `exp(i π z / k)`
fn expi_pi<T: Real>(z: Complex<T>, k: f64) -> Complex<T> {
    (i_unit::<T>() * z * (T::PI() / lit(k))).exp()
}

pub fn connection_factors<T: Real>(e: Complex<T>) -> ConnectionFactors<T> {
    let one = real(T::one());
    let three = real(lit::<T>(3.0));
    let i = i_unit::<T>();
    let ie = i * e;
    let sqrt_pi = T::PI().sqrt();
    let half_sqrt_pi = sqrt_pi * lit(0.5);

    let t13p = expi_pi(-(one - ie), 8.0) * recip_gamma(quarter(one + ie)) * sqrt_pi;
    let t14p = expi_pi(one + ie, 8.0) * recip_gamma(quarter(one - ie)) * sqrt_pi;
    let t23p = expi_pi(-(three - ie), 8.0) * recip_gamma(quarter(three + ie)) * half_sqrt_pi;
    let t24p = expi_pi(three + ie, 8.0) * recip_gamma(quarter(three - ie)) * half_sqrt_pi;

    let ph_minus = expi_pi(one - e, 2.0);
    let ph_plus = expi_pi(one + e, 2.0);
    let cos1 = ((one - e) * (T::PI() * lit(0.25))).cos();
    let cos3 = ((three - e) * (T::PI() * lit(0.25))).cos();
    let t13m = ph_minus * cos1 * recip_gamma(quarter(one + e)) * sqrt_pi;
    let t14m = ph_plus * recip_gamma(quarter(one - e)) * sqrt_pi;
    let t23m = -ph_minus * cos3 * recip_gamma(quarter(three + e)) * half_sqrt_pi;
    let t24m = -ph_plus * recip_gamma(quarter(three - e)) * half_sqrt_pi;

    ConnectionFactors {
        t13p,
        t14p,
        t23p,
        t24p,
        t13m,
        t14m,
        t23m,
        t24m,
    }
}

/// The four reciprocal-Gamma arguments shared by `N` and `D`:
/// `(3-E)/4, (1-E)/4` and, with `s = ±1`, `(1 + s·iE)/4, (3 + s·iE)/4`.
struct Args<T> {
    a3: Complex<T>,
    a1: Complex<T>,
    b1: Complex<T>,
    b3: Complex<T>,
}

fn args<T: Real>(e: Complex<T>, sign: T) -> Args<T> {
    let one = real(T::one());
    let three = real(lit::<T>(3.0));
    let ie = i_unit::<T>() * e * sign;
    Args {
        a3: quarter(three - e),
        a1: quarter(one - e),
        b1: quarter(one + ie),
        b3: quarter(three + ie),
    }
}

/// Numerator `N(E)` of the scattering function.
pub fn n_of_e<T: Real>(e: Complex<T>) -> Complex<T> {
    let a = args(e, T::one());
    let ph = expi_pi(real(T::one()), 8.0);
    ph * recip_gamma(a.a3) * recip_gamma(a.b1) + ph.conj() * recip_gamma(a.a1) * recip_gamma(a.b3)
}

/// Denominator `D(E)`; its zeros are the poles of `S(E)`.
pub fn d_of_e<T: Real>(e: Complex<T>) -> Complex<T> {
    let a = args(e, -T::one());
    let ph = expi_pi(real(T::one()), 8.0);
    ph.conj() * recip_gamma(a.a3) * recip_gamma(a.b1) + ph * recip_gamma(a.a1) * recip_gamma(a.b3)
}

/// `|first term| + |second term|` of [`n_of_e`]: the scale of its rounding error.
pub fn n_term_scale<T: Real>(e: Complex<T>) -> T {
    let a = args(e, T::one());
    (recip_gamma(a.a3) * recip_gamma(a.b1)).norm() + (recip_gamma(a.a1) * recip_gamma(a.b3)).norm()
}

/// Same as [`n_term_scale`] for [`d_of_e`].
pub fn d_term_scale<T: Real>(e: Complex<T>) -> T {
    let a = args(e, -T::one());
    (recip_gamma(a.a3) * recip_gamma(a.b1)).norm() + (recip_gamma(a.a1) * recip_gamma(a.b3)).norm()
}

/// `dN/dE`, written with `ψ/Γ` products so digamma poles never appear.
pub fn dn_de<T: Real>(e: Complex<T>) -> Complex<T> {
    let a = args(e, T::one());
    let i = i_unit::<T>();
    let ph = expi_pi(real(T::one()), 8.0);
    let first = digamma_over_gamma(a.a3) * recip_gamma(a.b1)
        - i * recip_gamma(a.a3) * digamma_over_gamma(a.b1);
    let second = digamma_over_gamma(a.a1) * recip_gamma(a.b3)
        - i * recip_gamma(a.a1) * digamma_over_gamma(a.b3);
    (ph * first + ph.conj() * second) * lit::<T>(0.25)
}

/// `dD/dE`, same structure as [`dn_de`] with `iE → -iE`.
pub(crate) fn dd_de<T: Real>(e: Complex<T>) -> Complex<T> {
    let a = args(e, -T::one());
    let i = i_unit::<T>();
    let ph = expi_pi(real(T::one()), 8.0);
    let first = digamma_over_gamma(a.a3) * recip_gamma(a.b1)
        + i * recip_gamma(a.a3) * digamma_over_gamma(a.b1);
    let second = digamma_over_gamma(a.a1) * recip_gamma(a.b3)
        + i * recip_gamma(a.a1) * digamma_over_gamma(a.b3);
    (ph.conj() * first + ph * second) * lit::<T>(0.25)
}

/// `S(E) = -e^{-iπ/2} N(E)/D(E) = i N(E)/D(E)`.
pub fn s_of_e<T: Real>(e: Complex<T>) -> Result<Complex<T>> {
    let d = d_of_e(e);
    if d.norm() == T::zero() || !(d.norm() > T::min_positive_value()) {
        return Err(s_pole(e));
    }
    Ok(i_unit::<T>() * n_of_e(e) / d)
}

/// `S(E)` from the connection-factor quotient
/// `-(T13⁺T24⁻ - T23⁺T14⁻) / (T14⁺T24⁻ - T24⁺T14⁻)`.
pub fn s_from_connection<T: Real>(e: Complex<T>) -> Result<Complex<T>> {
    let t = connection_factors(e);
    let den = t.t14p * t.t24m - t.t24p * t.t14m;
    if !(den.norm() > T::min_positive_value()) {
        return Err(s_pole(e));
    }
    Ok(-(t.t13p * t.t24m - t.t23p * t.t14m) / den)
}

fn s_pole<T: Real>(e: Complex<T>) -> Error {
    Error::SPole {
        re: e.re.to_f64().unwrap_or(f64::NAN),
        im: e.im.to_f64().unwrap_or(f64::NAN),
    }
}

/// Wigner time delay `Δt = 2 Im[N'(E)/N(E)]` (ħ = 1) at real energy.
pub fn time_delay<T: Real>(e: T) -> Result<T> {
    let ec = real(e);
    let n = n_of_e(ec);
    if n.norm() <= lit(1e-14) {
        return Err(Error::TimeDelayIndeterminate(e.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((dn_de(ec) / n).im * lit(2.0))
}

/// Phase shift at `E = 0`, mapped into `[0, π)`.
pub fn anchor_phase<T: Real>() -> Result<T> {
    let s0 = s_of_e(real(T::zero()))?;
    let half = s0.arg() * lit(0.5);
    Ok(wrap_into_zero_pi(half))
}

fn wrap_into_zero_pi<T: Real>(x: T) -> T {
    let pi = T::PI();
    let mut y = x - pi * (x / pi).floor();
    if y >= pi {
        y -= pi;
    }
    if y < T::zero() {
        y = T::zero();
    }
    y
}

/// Picks the branch of `arg(s)/2 + nπ` nearest to `prev`.
fn continue_phase<T: Real>(prev: T, s: Complex<T>, e_from: T, e_to: T) -> Result<T> {
    let half = s.arg() * lit(0.5);
    let pi = T::PI();
    let n = ((prev - half) / pi).round();
    let next = half + n * pi;
    let jump = (next - prev) * lit(2.0);
    if jump.abs() >= pi * lit(0.5) {
        return Err(Error::UnwrapFailure {
            from: e_from.to_f64().unwrap_or(f64::NAN),
            to: e_to.to_f64().unwrap_or(f64::NAN),
            jump: jump.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(next)
}

/// Continues the phase from `E = 0` to `target` in steps of at most
/// [`BRIDGE_STEP`].
fn bridge_from_zero<T: Real>(target: T) -> Result<T> {
    let mut delta = anchor_phase::<T>()?;
    let steps = (target.abs() / lit(BRIDGE_STEP)).ceil().to_usize().unwrap_or(0);
    let mut e_prev = T::zero();
    for k in 1..=steps {
        let e = target * T::from_usize(k).unwrap() / T::from_usize(steps).unwrap();
        let s = s_of_e(real(e))?;
        delta = continue_phase(delta, s, e_prev, e)?;
        e_prev = e;
    }
    Ok(delta)
}

/// Scan points for an arbitrary ordered grid of real energies.
///
/// The phase is anchored at `E = 0` and carried to the grid point nearest
/// to zero, then unwrapped outward in both directions, so the values do not
/// depend on the direction in which the grid is listed.
pub fn phase_shift_on_grid<T: Real>(energies: &[T]) -> Result<Vec<ScatterPoint<T>>> {
    if energies.is_empty() {
        return Ok(Vec::new());
    }
    let s_values = energies
        .iter()
        .map(|&e| s_of_e(real(e)))
        .collect::<Result<Vec<_>>>()?;
    let pivot = energies
        .iter()
        .enumerate()
        .min_by(|a, b| {
            a.1.abs()
                .partial_cmp(&b.1.abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .map(|(k, _)| k)
        .unwrap();

    let mut delta = vec![T::zero(); energies.len()];
    let bridged = bridge_from_zero(energies[pivot])?;
    delta[pivot] = continue_phase(bridged, s_values[pivot], energies[pivot], energies[pivot])?;
    for k in pivot + 1..energies.len() {
        delta[k] = continue_phase(delta[k - 1], s_values[k], energies[k - 1], energies[k])?;
    }
    for k in (0..pivot).rev() {
        delta[k] = continue_phase(delta[k + 1], s_values[k], energies[k + 1], energies[k])?;
    }

    energies
        .iter()
        .zip(s_values)
        .zip(delta)
        .map(|((&energy, s), delta)| {
            Ok(ScatterPoint {
                energy,
                s,
                delta,
                time_delay: time_delay(energy)?,
            })
        })
        .collect()
}

/// Phase shift, `S` and time delay over `[emin, emax]` with spacing `step`.
pub fn phase_shift_scan<T: Real>(emin: T, emax: T, step: T) -> Result<Vec<ScatterPoint<T>>> {
    phase_shift_on_grid(&uniform_grid(emin, emax, step)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    type C = Complex<f64>;

    #[test]
    fn connection_factors_at_zero() {
        let t = connection_factors::<f64>(cplx(0.0, 0.0));
        let gamma_quarter = 3.625_609_908_221_908;
        let expect = crate::scalar::cis(-std::f64::consts::PI / 8.0) * (std::f64::consts::PI.sqrt() / gamma_quarter);
        assert!((t.t13p - expect).norm() < 1e-14);
        // |T13⁺(0)| = √π/Γ(1/4) = 0.48887053...
        assert!((t.t13p.norm() - 0.488_873_5).abs() < 1e-5);
        assert!((t.t14p - t.t13p.conj()).norm() < 1e-15);
    }

    #[test]
    fn conjugation_for_real_energy() {
        for e in [-7.5, -1.0, 0.3, 2.5, 11.0] {
            let t = connection_factors::<f64>(cplx(e, 0.0));
            assert!((t.t14p - t.t13p.conj()).norm() < 1e-14 * t.t13p.norm().max(1.0));
            assert!((t.t24p - t.t23p.conj()).norm() < 1e-14 * t.t23p.norm().max(1.0));
        }
    }

    #[test]
    fn d_at_zero_and_conjugate_relation() {
        let d0 = d_of_e::<f64>(cplx(0.0, 0.0));
        assert!((d0.re - 0.415_891_908_6).abs() < 1e-10 && d0.im.abs() < 1e-15);
        for e in [-4.0, 0.935, 6.2] {
            let n = n_of_e::<f64>(cplx(e, 0.0));
            let d = d_of_e::<f64>(cplx(e, 0.0));
            assert!((n - d.conj()).norm() < 1e-14);
        }
        let near_pole = d_of_e::<f64>(cplx(0.889605, -0.889605));
        assert!(near_pole.norm() < 1e-5);
    }

    #[test]
    fn s_is_unimodular_and_both_forms_agree() {
        let s0 = s_of_e::<f64>(cplx(0.0, 0.0)).unwrap();
        assert!((s0.norm() - 1.0).abs() < 1e-12);
        for e in [cplx(-3.0, 0.0), cplx(2.0, -1.5), cplx(7.0, -9.0)] {
            let a: C = s_of_e(e).unwrap();
            let b: C = s_from_connection(e).unwrap();
            assert!((a - b).norm() < 1e-9 * a.norm());
        }
    }

    #[test]
    fn saddle_phase() {
        let s = s_of_e::<f64>(cplx(-4.042626, 0.0)).unwrap();
        let want = -0.519712 * std::f64::consts::FRAC_PI_4;
        assert!((s.arg() - want).abs() < 2e-5, "{}", s.arg());
    }

    #[test]
    fn unitarity_off_axis() {
        let e = cplx(3.0, -3.0);
        let prod = s_of_e::<f64>(e).unwrap() * s_of_e::<f64>(e.conj()).unwrap().conj();
        assert!((prod - 1.0).norm() < 1e-10);
    }

    #[test]
    fn dn_de_matches_finite_difference() {
        let h = 1e-5;
        for e in [cplx(0.5, 0.0), cplx(-4.042626, 0.0), cplx(10.0, 0.0), cplx(3.0, 0.0)] {
            let fd = (n_of_e::<f64>(e + h) - n_of_e::<f64>(e - h)) / (2.0 * h);
            let an = dn_de::<f64>(e);
            assert!((fd - an).norm() < 1e-7 * an.norm().max(1.0), "E = {e}: {an} vs {fd}");
        }
    }

    #[test]
    fn time_delay_vanishes_at_saddle() {
        assert!(time_delay(-4.042626f64).unwrap().abs() < 1e-3);
    }

    #[test]
    fn anchor_is_in_range() {
        let d0: f64 = anchor_phase().unwrap();
        assert!((0.0..std::f64::consts::PI).contains(&d0));
    }

    #[test]
    fn coarse_step_fails_to_unwrap() {
        // the resonance rise cannot be followed with 0.8-wide steps
        let r = phase_shift_on_grid(&[0.0f64, 0.8, 1.6]);
        assert!(matches!(r, Err(Error::UnwrapFailure { .. })));
        assert!(phase_shift_on_grid(&[0.0f64, 0.5, 1.0, 1.5]).is_ok());
    }
}
