//! Solutions of `ψ'' + (x² + E)ψ = 0` (x > 0) and `ψ'' + (E - x²)ψ = 0`
//! (x < 0), and the physical solution built from them.
//!
//! Frobenius solutions ψ₁, ψ₂ are exponential × ₁F₁ products; on the
//! positive side the ₁F₁ argument is `-ix²`, whose Maclaurin series loses
//! about `x²/ln 10` digits to cancellation. Beyond [`SolverConfig::series_limit`]
//! the same solutions are therefore carried forward by Taylor-series
//! continuation of the differential equation itself, which is
//! cancellation-free on the real axis.
//!
//! Thomé solutions ψ₃, ψ₄ are exponential × power × optimally truncated
//! ₂F₀. On the negative side they use the phase-explicit forms obtained by
//! writing `x = e^{iπ}|x|`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::uniform_grid;
use crate::scalar::{from_usize, i_unit, lit, real, Real};
use crate::scattering::{connection_factors, ConnectionFactors};
use crate::specfun::{hyp1f1_scaled, hyp2f0_with_log_derivative, SeriesConfig, SeriesEval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Frobenius1,
    Frobenius2,
    Thome3,
    Thome4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolutionId {
    pub family: Family,
    pub side: Side,
}

impl SolutionId {
    pub const fn new(family: Family, side: Side) -> Self {
        SolutionId { family, side }
    }
}

/// Value and x-derivative of a solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiValue<T> {
    pub psi: Complex<T>,
    pub dpsi: Complex<T>,
}

/// A Thomé solution together with the ₂F₀ evaluation behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThomeValue<T> {
    pub psi: Complex<T>,
    pub dpsi: Complex<T>,
    /// Estimated absolute error of `psi`: ₂F₀ truncation plus rounding.
    pub err_estimate: T,
    pub series: SeriesEval<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Unit incoming amplitude: `A1 T14⁺ + A2 T24⁺ = 1`.
    Scattering,
    /// Unit outgoing amplitude: `A1 T13⁺ + A2 T23⁺ = 1`.
    Gamow,
}

/// Coefficients of `ψ_phys = A1 ψ₁ + A2 ψ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysCoeffs<T> {
    pub a1: Complex<T>,
    pub a2: Complex<T>,
    pub normalization: Normalization,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample<T> {
    pub x: T,
    pub psi: Complex<T>,
    pub dpsi: Complex<T>,
    pub density: T,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig<T> {
    /// Largest x > 0 at which the ₁F₁ series is summed directly.
    pub series_limit: T,
    /// Upper bound on a single Taylor continuation step.
    pub continuation_step: T,
    /// Frobenius → Thomé switch on the positive half-axis.
    pub plus_switch: T,
    /// Smallest |x| for the negative-side Thomé anchor.
    pub minus_switch: T,
    /// Smallest |x| at which Thomé solutions may be evaluated.
    pub asymptotic_threshold: T,
    /// Relative error above which a Thomé evaluation is rejected.
    pub accuracy_floor: T,
    pub max_abs_x: T,
    /// `|Δ|/(|T14⁺T24⁻| + |T24⁺T14⁻|)` below which `E` is treated as a pole.
    pub pole_threshold: T,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        SolverConfig {
            series_limit: lit(2.5),
            continuation_step: lit(0.25),
            plus_switch: lit(6.0),
            minus_switch: lit(6.0),
            asymptotic_threshold: lit(2.0),
            accuracy_floor: lit(1e-6),
            max_abs_x: lit(30.0),
            pole_threshold: lit(1e-6),
        }
    }
}

fn check_side<T: Real>(side: Side, x: T, cfg: &SolverConfig<T>) -> Result<()> {
    let ok = match side {
        Side::Plus => x >= T::zero(),
        Side::Minus => x <= T::zero(),
    };
    if !ok {
        return Err(Error::Domain(format!("x = {x} is on the wrong side for {side:?}")));
    }
    if !(x.abs() <= cfg.max_abs_x) {
        return Err(Error::Domain(format!(
            "|x| = {} exceeds {}",
            x.abs(),
            cfg.max_abs_x
        )));
    }
    Ok(())
}

/// Frobenius solution ψ₁ or ψ₂ and its derivative.
pub fn eval_frobenius<T: Real>(id: SolutionId, e: Complex<T>, x: T) -> Result<PsiValue<T>> {
    eval_frobenius_with(id, e, x, &SolverConfig::default())
}

pub fn eval_frobenius_with<T: Real>(
    id: SolutionId,
    e: Complex<T>,
    x: T,
    cfg: &SolverConfig<T>,
) -> Result<PsiValue<T>> {
    let second = match id.family {
        Family::Frobenius1 => false,
        Family::Frobenius2 => true,
        _ => {
            return Err(Error::Domain(format!(
                "{:?} is not a Frobenius solution",
                id.family
            )))
        }
    };
    check_side(id.side, x, cfg)?;
    match id.side {
        Side::Minus => frobenius_series(second, Side::Minus, e, x),
        Side::Plus if x <= cfg.series_limit => frobenius_series(second, Side::Plus, e, x),
        Side::Plus => {
            let start = frobenius_series(second, Side::Plus, e, cfg.series_limit)?;
            continue_ode(e, T::one(), cfg.series_limit, start, x, cfg.continuation_step)
        }
    }
}

/// Direct evaluation from the ₁F₁ Maclaurin series; derivatives use
/// `d/dz ₁F₁(a;c;z) = (a/c) ₁F₁(a+1;c+1;z)`.
fn frobenius_series<T: Real>(second: bool, side: Side, e: Complex<T>, x: T) -> Result<PsiValue<T>> {
    let i = i_unit::<T>();
    let one = real(T::one());
    let x2 = x * x;
    let (a, c) = {
        let shift = if second { lit::<T>(3.0) } else { T::one() };
        let c = if second { lit::<T>(1.5) } else { lit::<T>(0.5) };
        let a = match side {
            Side::Plus => (real(shift) - i * e) * lit::<T>(0.25),
            Side::Minus => (real(shift) - e) * lit::<T>(0.25),
        };
        (a, real(c))
    };
    // z and the prefactor exp(-z/2), plus dz/dx / x
    let (z, pref, dz_over_x) = match side {
        Side::Plus => (-i * x2, (i * (x2 * lit(0.5))).exp(), -i * lit::<T>(2.0)),
        Side::Minus => (real(x2), real((-x2 * lit(0.5)).exp()), real(lit::<T>(2.0))),
    };
    // d/dx of the prefactor, divided by the prefactor and by x
    let dpref_over_x = match side {
        Side::Plus => i,
        Side::Minus => -one,
    };
    let cfg = SeriesConfig::default();
    let f = hyp1f1_scaled(a, c, z, pref, &cfg)?.value;
    let fd = hyp1f1_scaled(a + one, c + one, z, pref * a / c, &cfg)?.value;
    // f = pref·F, fd = pref·F'(z)
    let core = dpref_over_x * f + dz_over_x * fd;
    if second {
        Ok(PsiValue {
            psi: f * x,
            dpsi: f + core * x2,
        })
    } else {
        Ok(PsiValue {
            psi: f,
            dpsi: core * x,
        })
    }
}

/// Continues a solution of `ψ'' = -(σx² + E)ψ` from `x0` to `x1` by
/// re-expanding it in a Taylor series at each step.
pub(crate) fn continue_ode<T: Real>(
    e: Complex<T>,
    sigma: T,
    x0: T,
    start: PsiValue<T>,
    x1: T,
    max_step: T,
) -> Result<PsiValue<T>> {
    let mut x = x0;
    let mut state = start;
    let dir = if x1 >= x0 { T::one() } else { -T::one() };
    let scale = e.norm() + T::one();
    loop {
        let remaining = (x1 - x).abs();
        if remaining == T::zero() {
            return Ok(state);
        }
        // keep |local wavenumber × h| <= 1
        let k_local = (x * x + scale).sqrt();
        let h = remaining.min(max_step).min(k_local.recip());
        let next = if remaining - h <= remaining * T::epsilon() {
            x1
        } else {
            x + dir * h
        };
        state = taylor_step(e, sigma, x, state, next - x)?;
        x = next;
    }
}

fn taylor_step<T: Real>(
    e: Complex<T>,
    sigma: T,
    x0: T,
    start: PsiValue<T>,
    h: T,
) -> Result<PsiValue<T>> {
    const MAX_TERMS: usize = 400;
    let q0 = e + sigma * x0 * x0;
    let q1 = lit::<T>(2.0) * sigma * x0 * h;
    let q2 = sigma * h * h;
    let h2 = h * h;
    let zero = Complex::new(T::zero(), T::zero());

    // d[n] = c_n h^n
    let mut d: Vec<Complex<T>> = Vec::with_capacity(64);
    d.push(start.psi);
    d.push(start.dpsi * h);
    let mut psi = d[0] + d[1];
    let mut dpsi_h = d[1];
    let mut small = 0usize;
    for n in 0..MAX_TERMS {
        let dn1 = if n >= 1 { d[n - 1] } else { zero };
        let dn2 = if n >= 2 { d[n - 2] } else { zero };
        let next = -(q0 * d[n] + dn1 * q1 + dn2 * q2) * h2
            / (from_usize::<T>(n + 2) * from_usize::<T>(n + 1));
        d.push(next);
        psi += next;
        dpsi_h += next * from_usize::<T>(n + 2);
        let tol = T::epsilon() * (psi.norm() + dpsi_h.norm());
        if next.norm() <= tol {
            small += 1;
            if small >= 3 {
                return Ok(PsiValue {
                    psi,
                    dpsi: dpsi_h / h,
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence {
        what: "Taylor continuation step",
        terms: MAX_TERMS,
    })
}

/// Thomé solution ψ₃ or ψ₄ and its derivative.
pub fn eval_thome<T: Real>(id: SolutionId, e: Complex<T>, x: T) -> Result<ThomeValue<T>> {
    eval_thome_with(id, e, x, &SolverConfig::default())
}

pub fn eval_thome_with<T: Real>(
    id: SolutionId,
    e: Complex<T>,
    x: T,
    cfg: &SolverConfig<T>,
) -> Result<ThomeValue<T>> {
    let v = thome_unchecked(id, e, x, cfg)?;
    let limit = cfg.accuracy_floor * v.series.value.norm();
    if v.series.err_estimate > limit {
        return Err(Error::AccuracyFloor {
            err: v.series.err_estimate.to_f64().unwrap_or(f64::NAN),
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(v)
}

fn thome_unchecked<T: Real>(
    id: SolutionId,
    e: Complex<T>,
    x: T,
    cfg: &SolverConfig<T>,
) -> Result<ThomeValue<T>> {
    let third = match id.family {
        Family::Thome3 => true,
        Family::Thome4 => false,
        _ => {
            return Err(Error::Domain(format!(
                "{:?} is not a Thome solution",
                id.family
            )))
        }
    };
    check_side(id.side, x, cfg)?;
    if x.abs() < cfg.asymptotic_threshold {
        return Err(Error::Domain(format!(
            "|x| = {} is below the asymptotic threshold {}",
            x.abs(),
            cfg.asymptotic_threshold
        )));
    }
    let i = i_unit::<T>();
    let one = real(T::one());
    let three = real(lit::<T>(3.0));
    let quarter = lit::<T>(0.25);
    let half = lit::<T>(0.5);
    let r = x.abs();
    let r2 = r * r;
    let ln_r = r.ln();

    // ε·E enters every parameter; s fixes the outgoing/incoming branch
    let (eps_e, s) = match (id.side, third) {
        (Side::Plus, true) => (-i * e, T::one()),
        (Side::Plus, false) => (i * e, -T::one()),
        (Side::Minus, true) => (-e, T::one()),
        (Side::Minus, false) => (e, -T::one()),
    };
    let a1 = (one + eps_e) * quarter;
    let a2 = (three + eps_e) * quarter;
    let p = (one + eps_e) * half;
    let (w, expo) = match id.side {
        // exp(±ix²/2), w = ∓i/x²
        Side::Plus => (-i * (s / r2), i * (s * r2 * half)),
        // exp(∓|x|²/2) e^{-iπ p}, w = ∓1/|x|²
        Side::Minus => (real(-s / r2), real(-s * r2 * half) - i * p * T::PI()),
    };
    let arg = expo - p * ln_r;
    let pref = arg.exp();
    let parts = hyp2f0_with_log_derivative(a1, a2, w, &SeriesConfig::default());
    let series = parts.eval;
    let f = series.value;
    // d/dr [pref F] = pref [(dexpo/dr - p/r) F - (2/r) Σ k t_k]
    let dexpo = match id.side {
        Side::Plus => i * (s * r),
        Side::Minus => real(-s * r),
    };
    let d_dr = pref * ((dexpo - p / r) * f - parts.weighted * (lit::<T>(2.0) / r));
    let dpsi = match id.side {
        Side::Plus => d_dr,
        Side::Minus => -d_dr,
    };
    // truncation plus the rounding floor: the summed terms, and the
    // exponent whose absolute rounding error becomes a relative one
    let rounding = T::epsilon() * (parts.abs_sum + f.norm() * (arg.norm() + T::one()));
    Ok(ThomeValue {
        psi: pref * f,
        dpsi,
        err_estimate: pref.norm() * (series.err_estimate + rounding),
        series,
    })
}

/// Probability flux `-i(ψ*ψ' - ψ'*ψ) = 2 Im(ψ*ψ')`.
pub fn flux<T: Real>(psi: Complex<T>, dpsi: Complex<T>) -> T {
    (psi.conj() * dpsi).im * lit(2.0)
}

pub fn wronskian<T: Real>(f: PsiValue<T>, g: PsiValue<T>) -> Complex<T> {
    f.psi * g.dpsi - g.psi * f.dpsi
}

/// `A1, A2` with the decaying condition `A1 T14⁻ + A2 T24⁻ = 0` and the
/// chosen normalization.
pub fn physical_coefficients<T: Real>(e: Complex<T>, norm: Normalization) -> Result<PhysCoeffs<T>> {
    physical_coefficients_with(e, norm, &SolverConfig::default())
}

pub fn physical_coefficients_with<T: Real>(
    e: Complex<T>,
    norm: Normalization,
    cfg: &SolverConfig<T>,
) -> Result<PhysCoeffs<T>> {
    let t = connection_factors(e);
    coefficients_from_factors(e, &t, norm, cfg)
}

fn coefficients_from_factors<T: Real>(
    e: Complex<T>,
    t: &ConnectionFactors<T>,
    norm: Normalization,
    cfg: &SolverConfig<T>,
) -> Result<PhysCoeffs<T>> {
    let (p1, p2) = match norm {
        Normalization::Scattering => (t.t14p * t.t24m, t.t24p * t.t14m),
        Normalization::Gamow => (t.t13p * t.t24m, t.t23p * t.t14m),
    };
    let den = p1 - p2;
    if den.norm() <= cfg.pole_threshold * (p1.norm() + p2.norm()) {
        let (re, im) = (
            e.re.to_f64().unwrap_or(f64::NAN),
            e.im.to_f64().unwrap_or(f64::NAN),
        );
        return Err(match norm {
            Normalization::Scattering => Error::AtPole { re, im },
            Normalization::Gamow => Error::Domain(format!(
                "outgoing amplitude vanishes at E = {re} + {im}i; Gamow normalization undefined"
            )),
        });
    }
    Ok(PhysCoeffs {
        a1: t.t24m / den,
        a2: -t.t14m / den,
        normalization: norm,
    })
}

/// The physical solution at one energy, with its Thomé amplitudes cached.
///
/// On the negative side the Frobenius assembly cancels like `e^{x²}`, so
/// for x < 0 the decaying ψ₃⁻ term is evaluated at an anchor far enough out
/// for the ₂F₀ series to be exact in working precision and integrated
/// inward, the direction in which it grows.
#[derive(Debug, Clone)]
pub struct PhysicalSolution<T> {
    pub energy: Complex<T>,
    pub coeffs: PhysCoeffs<T>,
    pub factors: ConnectionFactors<T>,
    /// Amplitude of ψ₃⁺ (outgoing) for x → +∞.
    pub outgoing: Complex<T>,
    /// Amplitude of ψ₄⁺ (incoming) for x → +∞.
    pub incoming: Complex<T>,
    /// Amplitude of the decaying ψ₃⁻ for x → -∞.
    pub decaying: Complex<T>,
    /// `|x|` of the negative-side anchor; Thomé is used beyond it.
    pub minus_anchor: T,
    anchor_value: PsiValue<T>,
    pub config: SolverConfig<T>,
}

impl<T: Real> PhysicalSolution<T> {
    pub fn new(e: Complex<T>, norm: Normalization) -> Result<Self> {
        Self::with_config(e, norm, SolverConfig::default())
    }

    pub fn with_config(e: Complex<T>, norm: Normalization, config: SolverConfig<T>) -> Result<Self> {
        let factors = connection_factors(e);
        let coeffs = coefficients_from_factors(e, &factors, norm, &config)?;
        Self::assemble(e, coeffs, factors, config)
    }

    pub fn from_coeffs(e: Complex<T>, coeffs: PhysCoeffs<T>) -> Result<Self> {
        Self::assemble(e, coeffs, connection_factors(e), SolverConfig::default())
    }

    fn assemble(
        e: Complex<T>,
        coeffs: PhysCoeffs<T>,
        t: ConnectionFactors<T>,
        config: SolverConfig<T>,
    ) -> Result<Self> {
        let decaying = coeffs.a1 * t.t13m + coeffs.a2 * t.t23m;
        let id = SolutionId::new(Family::Thome3, Side::Minus);
        // first |x| >= minus_switch where truncation is below rounding
        let mut best: Option<(T, T, ThomeValue<T>)> = None;
        let mut r = config.minus_switch.min(config.max_abs_x);
        while r <= config.max_abs_x {
            let v = thome_unchecked(id, e, -r, &config)?;
            let rel = v.series.err_estimate / v.series.value.norm();
            if best.map_or(true, |(_, b, _)| rel < b) {
                best = Some((r, rel, v));
            }
            if rel <= T::epsilon() {
                break;
            }
            r += T::one();
        }
        let (minus_anchor, _, v) = best.ok_or_else(|| {
            Error::Domain("negative-side anchor lies beyond the x range".into())
        })?;
        Ok(PhysicalSolution {
            energy: e,
            coeffs,
            outgoing: coeffs.a1 * t.t13p + coeffs.a2 * t.t23p,
            incoming: coeffs.a1 * t.t14p + coeffs.a2 * t.t24p,
            decaying,
            minus_anchor,
            anchor_value: PsiValue {
                psi: v.psi * decaying,
                dpsi: v.dpsi * decaying,
            },
            factors: t,
            config,
        })
    }

    /// `S = -(outgoing amplitude)` for the scattering normalization.
    pub fn scattering_function(&self) -> Complex<T> {
        -self.outgoing
    }

    /// Frobenius assembly `A1 ψ₁ + A2 ψ₂`, valid for any |x| ≤ 30 but
    /// ill-conditioned on the negative side far from the origin.
    pub fn frobenius_assembly(&self, x: T) -> Result<PsiValue<T>> {
        let side = if x >= T::zero() { Side::Plus } else { Side::Minus };
        let p1 = eval_frobenius_with(
            SolutionId::new(Family::Frobenius1, side),
            self.energy,
            x,
            &self.config,
        )?;
        let p2 = eval_frobenius_with(
            SolutionId::new(Family::Frobenius2, side),
            self.energy,
            x,
            &self.config,
        )?;
        Ok(PsiValue {
            psi: p1.psi * self.coeffs.a1 + p2.psi * self.coeffs.a2,
            dpsi: p1.dpsi * self.coeffs.a1 + p2.dpsi * self.coeffs.a2,
        })
    }

    /// Thomé representation; on the negative side only the decaying ψ₃⁻
    /// term is kept (the ψ₄⁻ amplitude is zero by construction).
    pub fn thome_assembly(&self, x: T) -> Result<PsiValue<T>> {
        let cfg = &self.config;
        if x >= T::zero() {
            let v3 = thome_unchecked(SolutionId::new(Family::Thome3, Side::Plus), self.energy, x, cfg)?;
            let v4 = thome_unchecked(SolutionId::new(Family::Thome4, Side::Plus), self.energy, x, cfg)?;
            Ok(PsiValue {
                psi: v3.psi * self.outgoing + v4.psi * self.incoming,
                dpsi: v3.dpsi * self.outgoing + v4.dpsi * self.incoming,
            })
        } else {
            let v3 = thome_unchecked(SolutionId::new(Family::Thome3, Side::Minus), self.energy, x, cfg)?;
            Ok(PsiValue {
                psi: v3.psi * self.decaying,
                dpsi: v3.dpsi * self.decaying,
            })
        }
    }

    /// The decaying negative-side solution integrated inward from the anchor.
    pub fn inward_continuation(&self, x: T) -> Result<PsiValue<T>> {
        if x > T::zero() || x < -self.minus_anchor {
            return Err(Error::Domain(format!(
                "x = {x} is outside [-{}, 0]",
                self.minus_anchor
            )));
        }
        continue_ode(
            self.energy,
            -T::one(),
            -self.minus_anchor,
            self.anchor_value,
            x,
            self.config.continuation_step,
        )
    }

    pub fn at(&self, x: T) -> Result<WaveSample<T>> {
        if !(x.abs() <= self.config.max_abs_x) {
            return Err(Error::Domain(format!(
                "|x| = {} exceeds {}",
                x.abs(),
                self.config.max_abs_x
            )));
        }
        let v = if x >= T::zero() {
            if x < self.config.plus_switch {
                self.frobenius_assembly(x)?
            } else {
                self.thome_assembly(x)?
            }
        } else if -x < self.minus_anchor {
            self.inward_continuation(x)?
        } else {
            self.thome_assembly(x)?
        };
        Ok(WaveSample {
            x,
            psi: v.psi,
            dpsi: v.dpsi,
            density: v.psi.norm_sqr(),
        })
    }
}

/// `ψ_phys(x)` for given coefficients.
pub fn physical_psi<T: Real>(e: Complex<T>, x: T, coeffs: PhysCoeffs<T>) -> Result<WaveSample<T>> {
    PhysicalSolution::from_coeffs(e, coeffs)?.at(x)
}

/// `|ψ_phys|²` (with ψ and ψ') on a uniform grid.
pub fn density_scan<T: Real>(
    e: Complex<T>,
    xmin: T,
    xmax: T,
    step: T,
    norm: Normalization,
) -> Result<Vec<WaveSample<T>>> {
    let grid = uniform_grid(xmin, xmax, step)?;
    let sol = PhysicalSolution::new(e, norm)?;
    grid.into_iter().map(|x| sol.at(x)).collect()
}

/// Power-law exponent α of `|ψ₃⁺(x)|² ~ x^α` for large x.
///
/// Fits `ln|ψ|² = α ln x + c + β/x²` by least squares on a uniform grid;
/// the `β/x²` term absorbs the leading ₂F₀ correction, which otherwise
/// biases α at moderate x.
pub fn thome_tail_exponent<T: Real>(e: Complex<T>, xmin: T, xmax: T, step: T) -> Result<T> {
    if !(xmin >= lit(2.0)) {
        return Err(Error::Domain(format!(
            "tail fit must start at x >= 2, got {}",
            xmin.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let grid = uniform_grid(xmin, xmax, step)?;
    if grid.len() < 3 {
        return Err(Error::Domain("tail fit needs at least 3 points".into()));
    }
    let id = SolutionId::new(Family::Thome3, Side::Plus);
    // normal equations for the basis (ln x, 1, 1/x²)
    let mut m = [[T::zero(); 3]; 3];
    let mut r = [T::zero(); 3];
    for x in grid {
        let v = eval_thome(id, e, x)?;
        let y = v.psi.norm_sqr().ln();
        let basis = [x.ln(), T::one(), (x * x).recip()];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = m[i][j] + basis[i] * basis[j];
            }
            r[i] = r[i] + basis[i] * y;
        }
    }
    let det = det3(&m);
    if det == T::zero() {
        return Err(Error::Domain("singular tail fit".into()));
    }
    let mut mx = m;
    for row in 0..3 {
        mx[row][0] = r[row];
    }
    Ok(det3(&mx) / det)
}

fn det3<T: Real>(m: &[[T; 3]; 3]) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
