//! Golden checks of tabulated pole data and spot values.
//!
//! A check passes when `abs_err <= abs_tol + rel_tol·|expected|`. For complex
//! values `abs_err` is the larger of the two component errors.

use serde::{Deserialize, Serialize};

use parabolic_odd::poles::{bisector_pole_approx, find_poles, taylor_coeff_b};
use parabolic_odd::scattering::{phase_shift_scan, s_of_e, time_delay};
use parabolic_odd::solutions::thome_tail_exponent;
use parabolic_odd::C64;

use crate::CliError;

pub const BUILTIN_EXPECTED: &str = include_str!("../data/expected.json");

pub const SADDLE_ENERGY: f64 = -4.042626;
pub const GAMOW_POLE: C64 = C64::new(0.889605216, -0.889605216);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Real(f64),
    Complex([f64; 2]),
}

impl Value {
    fn modulus(self) -> f64 {
        match self {
            Value::Real(v) => v.abs(),
            Value::Complex([re, im]) => re.hypot(im),
        }
    }
}

impl From<C64> for Value {
    fn from(z: C64) -> Self {
        Value::Complex([z.re, z.im])
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub check: String,
    pub expected: Value,
    #[serde(default)]
    pub abs_tol: f64,
    #[serde(default)]
    pub rel_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub check: String,
    pub expected: Value,
    pub computed: Value,
    pub abs_err: f64,
    pub pass: bool,
}

pub fn parse_expected(text: &str) -> Result<Vec<Expected>, CliError> {
    let checks: Vec<Expected> = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("expected-values file: {e}")))?;
    for c in &checks {
        if !(c.abs_tol >= 0.0 && c.rel_tol >= 0.0) {
            return Err(CliError::Config(format!("{}: tolerances must be non-negative", c.check)));
        }
        if c.abs_tol == 0.0 && c.rel_tol == 0.0 {
            return Err(CliError::Config(format!("{}: no tolerance given", c.check)));
        }
        Check::parse(&c.check)?;
    }
    Ok(checks)
}

pub fn builtin_expected() -> Result<Vec<Expected>, CliError> {
    parse_expected(BUILTIN_EXPECTED)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Check {
    Pole,
    TaylorB(usize),
    TaylorBClosedForm,
    BisectorPole(usize),
    SaddleTimeDelay,
    SaddleArgS,
    ResonanceEnergy,
    ResonanceWidth,
    GamowTailExponent,
}

impl Check {
    fn parse(name: &str) -> Result<Check, CliError> {
        let index = |s: &str| s.parse::<usize>().ok();
        let check = match name.split('.').collect::<Vec<_>>().as_slice() {
            ["table1", "pole", k] if index(k).is_some() => Some(Check::Pole),
            ["table2", "b", "0", "closed_form"] => Some(Check::TaylorBClosedForm),
            ["table2", "b", m] => index(m).filter(|&m| m <= 20).map(Check::TaylorB),
            ["table2", "E", m] => index(m).filter(|&m| (1..=20).contains(&m)).map(Check::BisectorPole),
            ["spot", "saddle_time_delay"] => Some(Check::SaddleTimeDelay),
            ["spot", "saddle_arg_s"] => Some(Check::SaddleArgS),
            ["spot", "resonance_energy"] => Some(Check::ResonanceEnergy),
            ["spot", "resonance_width"] => Some(Check::ResonanceWidth),
            ["spot", "gamow_tail_exponent"] => Some(Check::GamowTailExponent),
            _ => None,
        };
        check.ok_or_else(|| CliError::Config(format!("unknown check `{name}`")))
    }
}

/// Computed values shared between checks, filled on first use.
#[derive(Default)]
struct Cache {
    poles: Option<Vec<C64>>,
}

impl Cache {
    fn poles(&mut self) -> Result<&[C64], CliError> {
        if self.poles.is_none() {
            let search = find_poles((0.0, 20.0), (-20.0, 0.0), 200, 1e-12)?;
            self.poles = Some(search.records.iter().map(|r| r.location).collect());
        }
        Ok(self.poles.as_deref().unwrap_or_default())
    }
}

fn wrap_to(angle: f64, target: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    angle - tau * ((angle - target) / tau).round()
}

fn compute(check: Check, expected: Value, cache: &mut Cache) -> Result<Value, CliError> {
    Ok(match check {
        Check::Pole => {
            let Value::Complex([re, im]) = expected else {
                return Err(CliError::Config("pole checks need a complex value".into()));
            };
            let target = C64::new(re, im);
            let nearest = cache
                .poles()?
                .iter()
                .copied()
                .min_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()));
            match nearest {
                Some(p) => p.into(),
                None => Value::Complex([f64::NAN, f64::NAN]),
            }
        }
        Check::TaylorB(m) => taylor_coeff_b::<f64>(m)?.b.into(),
        Check::TaylorBClosedForm => Value::Real(taylor_coeff_b::<f64>(0)?.b.re),
        Check::BisectorPole(m) => bisector_pole_approx::<f64>(m)?.into(),
        Check::SaddleTimeDelay => Value::Real(time_delay(SADDLE_ENERGY)?),
        Check::SaddleArgS => {
            let arg = s_of_e(C64::new(SADDLE_ENERGY, 0.0))?.arg();
            let target = match expected {
                Value::Real(v) => v,
                Value::Complex(_) => arg,
            };
            Value::Real(wrap_to(arg, target))
        }
        Check::ResonanceEnergy => {
            let scan = phase_shift_scan(-10.0f64, 15.0, 0.01)?;
            let peak = scan
                .iter()
                .max_by(|a, b| a.time_delay.total_cmp(&b.time_delay))
                .map_or(f64::NAN, |p| p.energy);
            Value::Real(peak)
        }
        Check::ResonanceWidth => Value::Real(-2.0 * bisector_pole_approx::<f64>(12)?.im),
        Check::GamowTailExponent => Value::Real(thome_tail_exponent(GAMOW_POLE, 10.0, 30.0, 0.01)?),
    })
}

fn abs_err(expected: Value, computed: Value) -> Result<f64, CliError> {
    let err = match (expected, computed) {
        (Value::Real(a), Value::Real(b)) => (a - b).abs(),
        (Value::Complex([ar, ai]), Value::Complex([br, bi])) => (ar - br).abs().max((ai - bi).abs()),
        _ => return Err(CliError::Config("expected value has the wrong shape".into())),
    };
    Ok(if err.is_nan() { f64::INFINITY } else { err })
}

pub fn run_checks(checks: &[Expected]) -> Result<Vec<Outcome>, CliError> {
    let mut cache = Cache::default();
    checks
        .iter()
        .map(|c| {
            let computed = compute(Check::parse(&c.check)?, c.expected, &mut cache)?;
            let abs_err = abs_err(c.expected, computed)?;
            let pass = abs_err <= c.abs_tol + c.rel_tol * c.expected.modulus();
            Ok(Outcome {
                check: c.check.clone(),
                expected: c.expected,
                computed,
                abs_err,
                pass,
            })
        })
        .collect()
}

pub fn report_json(report: &[Outcome]) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(report).expect("serializable report");
    out.push(b'\n');
    out
}
