//! Command-line data emission for the parabolic odd potential.
//!
//! Each subcommand writes one table (CSV or JSON). Configuration is checked
//! before any computation and the output file is written only once the
//! whole table is ready.
//!
//! Exit codes: 0 success, 1 `verify-tables` found a failing check,
//! 2 invalid configuration, 3 numerical failure or I/O error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parabolic_odd::poles::{bisector_pole_approx, find_poles, taylor_coeffs, MAX_TAYLOR_ORDER};
use parabolic_odd::scattering::{d_of_e, d_term_scale, phase_shift_scan, s_of_e, time_delay};
use parabolic_odd::solutions::{density_scan, Normalization};
use parabolic_odd::{grid::uniform_grid, C64};

pub mod table;
pub mod verify;

use table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Largest number of rows any command will produce.
pub const MAX_ROWS: usize = 10_000_000;

/// `|D| / (|term1| + |term2|)` below which an s-chart cell is flagged.
pub const NEAR_POLE_RELATIVE: f64 = 1e-9;

/// Largest |x| accepted for wavefunction scans.
pub const MAX_ABS_X: f64 = 30.0;

#[derive(Debug, Parser)]
#[command(name = "parabolic-odd", version, about = "Scattering data for V(x) = x^2 (x<0), -x^2 (x>0)")]
pub struct Cli {
    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Norm {
    Scattering,
    Gamow,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase shift and S(E) on a real-energy grid.
    PhaseShift(EnergyRange),
    /// Wigner time delay on a real-energy grid.
    TimeDelay(EnergyRange),
    /// log10|S| and arg S over a complex-energy grid.
    SChart(ChartArgs),
    /// Poles of S(E) by grid-seeded Newton iteration.
    Poles(PoleArgs),
    /// Taylor coefficients of D(E) and the bisector pole of each truncation.
    BisectorPole(BisectorArgs),
    /// Physical wavefunction and density on an x grid.
    Wavefunction(WaveArgs),
    /// Compare tabulated reference values with fresh computations.
    VerifyTables(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EnergyRange {
    #[arg(long, default_value_t = -10.0)]
    pub emin: f64,
    #[arg(long, default_value_t = 15.0)]
    pub emax: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ChartArgs {
    #[arg(long, default_value_t = -10.0)]
    pub re_min: f64,
    #[arg(long, default_value_t = 15.0)]
    pub re_max: f64,
    #[arg(long, default_value_t = -15.0)]
    pub im_min: f64,
    #[arg(long, default_value_t = 0.0)]
    pub im_max: f64,
    /// Points per axis.
    #[arg(long, short, default_value_t = 101)]
    pub n: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PoleArgs {
    #[arg(long, default_value_t = 0.0)]
    pub re_min: f64,
    #[arg(long, default_value_t = 20.0)]
    pub re_max: f64,
    #[arg(long, default_value_t = -20.0)]
    pub im_min: f64,
    #[arg(long, default_value_t = 0.0)]
    pub im_max: f64,
    #[arg(long, default_value_t = 200)]
    pub grid_n: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct BisectorArgs {
    #[arg(long, default_value_t = 12)]
    pub m_max: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct WaveArgs {
    #[arg(long, default_value_t = 0.935)]
    pub e_re: f64,
    #[arg(long, default_value_t = 0.0)]
    pub e_im: f64,
    #[arg(long, default_value_t = -5.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = Norm::Scattering)]
    pub norm: Norm,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Reference values to check against instead of the built-in set.
    #[arg(long)]
    pub expected: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(parabolic_odd::Error),
    Io(std::io::Error),
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) | CliError::Io(_) => EXIT_NUMERICAL,
            CliError::ChecksFailed(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<parabolic_odd::Error> for CliError {
    fn from(e: parabolic_odd::Error) -> Self {
        CliError::Numerical(e)
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn check_finite(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(config(format!("{name} must be finite")))
    }
}

fn check_range(lo_name: &str, lo: f64, hi_name: &str, hi: f64, allow_equal: bool) -> Result<(), CliError> {
    check_finite(lo_name, lo)?;
    check_finite(hi_name, hi)?;
    if hi < lo || (!allow_equal && hi == lo) {
        return Err(config(format!("{lo_name} = {lo} must be below {hi_name} = {hi}")));
    }
    Ok(())
}

fn check_grid(lo: f64, hi: f64, step: f64) -> Result<(), CliError> {
    check_finite("step", step)?;
    if step <= 0.0 {
        return Err(config(format!("step = {step} must be positive")));
    }
    let rows = (hi - lo) / step + 1.0;
    if rows > MAX_ROWS as f64 {
        return Err(config(format!("grid would have {rows:.0} rows (limit {MAX_ROWS})")));
    }
    Ok(())
}

/// Checks the configuration of `cmd` without computing anything.
pub fn validate(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::PhaseShift(r) | Command::TimeDelay(r) => {
            check_range("emin", r.emin, "emax", r.emax, true)?;
            check_grid(r.emin, r.emax, r.step)
        }
        Command::SChart(c) => {
            check_range("re-min", c.re_min, "re-max", c.re_max, false)?;
            check_range("im-min", c.im_min, "im-max", c.im_max, false)?;
            if c.n < 2 {
                return Err(config("n must be at least 2"));
            }
            if c.n.saturating_mul(c.n) > MAX_ROWS {
                return Err(config(format!("n = {} gives too many rows", c.n)));
            }
            Ok(())
        }
        Command::Poles(p) => {
            check_range("re-min", p.re_min, "re-max", p.re_max, false)?;
            check_range("im-min", p.im_min, "im-max", p.im_max, false)?;
            if p.grid_n < 16 {
                return Err(config("grid-n must be at least 16"));
            }
            if p.grid_n.saturating_mul(p.grid_n) > MAX_ROWS {
                return Err(config(format!("grid-n = {} is too large", p.grid_n)));
            }
            if !(p.tol >= 1e-12) || !p.tol.is_finite() {
                return Err(config("tol must be finite and at least 1e-12"));
            }
            Ok(())
        }
        Command::BisectorPole(b) => {
            if b.m_max == 0 || b.m_max > MAX_TAYLOR_ORDER {
                return Err(config(format!("m-max must be in 1..={MAX_TAYLOR_ORDER}")));
            }
            Ok(())
        }
        Command::Wavefunction(w) => {
            check_finite("e-re", w.e_re)?;
            check_finite("e-im", w.e_im)?;
            check_range("xmin", w.xmin, "xmax", w.xmax, true)?;
            if w.xmin < -MAX_ABS_X || w.xmax > MAX_ABS_X {
                return Err(config(format!("x range must lie within [-{MAX_ABS_X}, {MAX_ABS_X}]")));
            }
            check_grid(w.xmin, w.xmax, w.step)
        }
        Command::VerifyTables(v) => match &v.expected {
            Some(p) if !p.is_file() => Err(config(format!("{} is not a file", p.display()))),
            _ => Ok(()),
        },
    }
}

/// Validates, computes and writes the output of one invocation.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    validate(&cli.command)?;
    let (bytes, failed) = match &cli.command {
        Command::VerifyTables(v) => {
            let checks = match &v.expected {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(CliError::Io)?;
                    verify::parse_expected(&text)?
                }
                None => verify::builtin_expected()?,
            };
            let report = verify::run_checks(&checks)?;
            let failed = report.iter().filter(|r| !r.pass).count();
            (verify::report_json(&report), failed)
        }
        cmd => {
            let table = compute(cmd)?;
            let bytes = match cli.format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(),
            };
            (bytes, 0)
        }
    };
    emit(cli.out.as_ref(), &bytes)?;
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(CliError::Io),
        None => std::io::stdout().write_all(bytes).map_err(CliError::Io),
    }
}

/// The table for any command other than `verify-tables`.
pub fn compute(cmd: &Command) -> Result<Table, CliError> {
    match cmd {
        Command::PhaseShift(r) => phase_shift_table(r),
        Command::TimeDelay(r) => time_delay_table(r),
        Command::SChart(c) => s_chart_table(c),
        Command::Poles(p) => poles_table(p),
        Command::BisectorPole(b) => bisector_table(b),
        Command::Wavefunction(w) => wavefunction_table(w),
        Command::VerifyTables(_) => Err(config("verify-tables does not produce a table")),
    }
}

fn phase_shift_table(r: &EnergyRange) -> Result<Table, CliError> {
    let points = phase_shift_scan(r.emin, r.emax, r.step)?;
    let mut t = Table::new(&["E", "delta_over_pi", "S_re", "S_im"]);
    for p in points {
        t.push(vec![
            Cell::Num(p.energy),
            Cell::Num(p.delta / std::f64::consts::PI),
            Cell::Num(p.s.re),
            Cell::Num(p.s.im),
        ]);
    }
    Ok(t)
}

fn time_delay_table(r: &EnergyRange) -> Result<Table, CliError> {
    let mut t = Table::new(&["E", "time_delay"]);
    for e in uniform_grid(r.emin, r.emax, r.step)? {
        t.push(vec![Cell::Num(e), Cell::Num(time_delay(e)?)]);
    }
    Ok(t)
}

fn axis(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
    lo + (hi - lo) * k as f64 / (n - 1) as f64
}

fn s_chart_table(c: &ChartArgs) -> Result<Table, CliError> {
    let mut t = Table::new(&["Re_E", "Im_E", "log10_abs_S", "arg_S", "near_pole"]);
    for i in 0..c.n {
        let re = axis(c.re_min, c.re_max, c.n, i);
        for j in 0..c.n {
            let im = axis(c.im_min, c.im_max, c.n, j);
            let e = C64::new(re, im);
            let near = d_of_e(e).norm() <= NEAR_POLE_RELATIVE * d_term_scale(e);
            let s = if near { None } else { s_of_e(e).ok() };
            let row = match s {
                Some(s) if s.norm() > 0.0 && s.norm().is_finite() => vec![
                    Cell::Num(re),
                    Cell::Num(im),
                    Cell::Num(s.norm().log10()),
                    Cell::Num(s.arg()),
                    Cell::Int(0),
                ],
                _ => vec![Cell::Num(re), Cell::Num(im), Cell::Empty, Cell::Empty, Cell::Int(1)],
            };
            t.push(row);
        }
    }
    Ok(t)
}

fn poles_table(p: &PoleArgs) -> Result<Table, CliError> {
    let search = find_poles(
        (p.re_min, p.re_max),
        (p.im_min, p.im_max),
        p.grid_n,
        p.tol,
    )?;
    let mut t = Table::new(&["E_re", "E_im", "residual", "iterations", "seed_re", "seed_im"]);
    for r in search.records {
        t.push(vec![
            Cell::Num(r.location.re),
            Cell::Num(r.location.im),
            Cell::Num(r.residual),
            Cell::Int(r.iterations as i64),
            Cell::Num(r.seed.re),
            Cell::Num(r.seed.im),
        ]);
    }
    Ok(t)
}

fn bisector_table(b: &BisectorArgs) -> Result<Table, CliError> {
    let coeffs = taylor_coeffs::<f64>(b.m_max)?;
    let mut t = Table::new(&["M", "b_re", "b_im", "E_re", "E_im"]);
    for c in coeffs {
        let (er, ei) = if c.m == 0 {
            (Cell::Empty, Cell::Empty)
        } else {
            let e: C64 = bisector_pole_approx(c.m)?;
            (Cell::Num(e.re), Cell::Num(e.im))
        };
        t.push(vec![Cell::Int(c.m as i64), Cell::Num(c.b.re), Cell::Num(c.b.im), er, ei]);
    }
    Ok(t)
}

fn wavefunction_table(w: &WaveArgs) -> Result<Table, CliError> {
    let norm = match w.norm {
        Norm::Scattering => Normalization::Scattering,
        Norm::Gamow => Normalization::Gamow,
    };
    let samples = density_scan(C64::new(w.e_re, w.e_im), w.xmin, w.xmax, w.step, norm)?;
    let mut t = Table::new(&["x", "psi_re", "psi_im", "dpsi_re", "dpsi_im", "density"]);
    for s in samples {
        t.push(vec![
            Cell::Num(s.x),
            Cell::Num(s.psi.re),
            Cell::Num(s.psi.im),
            Cell::Num(s.dpsi.re),
            Cell::Num(s.dpsi.im),
            Cell::Num(s.density),
        ]);
    }
    Ok(t)
}
