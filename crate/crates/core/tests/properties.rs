use parabolic_odd::poles::taylor_coeffs;
use parabolic_odd::scattering::{d_of_e, n_of_e, s_from_connection, s_of_e};
use parabolic_odd::solutions::{eval_frobenius, wronskian, Family, Side, SolutionId};
use parabolic_odd::specfun::{digamma, gamma, hyp1f1, recip_gamma, recip_gamma_derivs};
use parabolic_odd::C64;
use proptest::prelude::*;

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

fn near_pole(e: C64, radius: f64) -> bool {
    TABLE1.iter().any(|&(re, im)| {
        let p = C64::new(re, im);
        (e - p).norm() < radius || (e - p.conj()).norm() < radius
    })
}

fn abs_term_sum(a: C64, c: C64, z: C64) -> f64 {
    let mut t = 1.0;
    let mut sum = 1.0;
    for k in 0..2000 {
        let k = k as f64;
        t *= ((a + k) * z / ((c + k) * (k + 1.0))).norm();
        sum += t;
        if t < 1e-18 * sum {
            break;
        }
    }
    sum
}

fn disk(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r)
        .prop_map(|(a, b)| C64::new(a, b))
        .prop_filter("inside disk", move |z| z.norm() <= r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_times_reciprocal_is_one(z in disk(10.0)) {
        let k = z.re.round();
        prop_assume!(!(k <= 0.0 && (z - C64::new(k, 0.0)).norm() < 0.05));
        let g = gamma(z).unwrap();
        let err = (g * recip_gamma(z) - 1.0).norm();
        prop_assert!(err < 1e-11, "z = {z}: {err:e}");
    }

    #[test]
    fn kummer_transformation(
        a in (-2.0f64..2.0, -2.0f64..2.0),
        c in (0.5f64..3.0, -1.0f64..1.0),
        z in disk(10.0),
    ) {
        let a = C64::new(a.0, a.1);
        let c = C64::new(c.0, c.1);
        let lhs = hyp1f1(a, c, z).unwrap().value;
        let rhs = z.exp() * hyp1f1(c - a, c, -z).unwrap().value;
        // each Maclaurin sum carries rounding ~eps·Σ|t_k|
        let rounding = 16.0 * f64::EPSILON
            * (abs_term_sum(a, c, z) + z.exp().norm() * abs_term_sum(c - a, c, -z));
        let tol = 1e-10 * lhs.norm().max(1.0) + rounding;
        prop_assert!((lhs - rhs).norm() <= tol, "{lhs} vs {rhs}");
    }

    #[test]
    fn digamma_recurrence(z in disk(12.0)) {
        let k = z.re.round();
        prop_assume!(!(k <= 0.0 && (z - C64::new(k, 0.0)).norm() < 0.05));
        let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
        prop_assert!(lhs.norm() <= 1e-10 * digamma(z).unwrap().norm().max(1.0));
    }

    #[test]
    fn quadrant_and_conjugation_symmetries(e in disk(12.0)) {
        let i = C64::new(0.0, 1.0);
        let n = n_of_e(e);
        let d = d_of_e(e);
        prop_assert!((n_of_e(i * e.conj()) - n.conj()).norm() <= 1e-12 * n.norm().max(1.0));
        prop_assert!((d_of_e(-i * e.conj()) - d.conj()).norm() <= 1e-12 * d.norm().max(1.0));
        prop_assert!((n_of_e(e.conj()) - d.conj()).norm() <= 1e-12 * d.norm().max(1.0));
        prop_assert!((d_of_e(e.conj()) - n.conj()).norm() <= 1e-12 * n.norm().max(1.0));
    }

    #[test]
    fn unitarity_off_the_real_axis(e in disk(12.0)) {
        prop_assume!(!near_pole(e, 1e-3));
        let u = s_of_e(e).unwrap() * s_of_e(e.conj()).unwrap().conj();
        prop_assert!((u - 1.0).norm() <= 1e-9, "E = {e}: {u}");
    }

    #[test]
    fn unit_modulus_on_the_real_axis(e in -10.0f64..15.0) {
        let s = s_of_e(C64::new(e, 0.0)).unwrap();
        prop_assert!((s.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn quotient_forms_of_s_agree(re in -10.0f64..15.0, im in -15.0f64..0.0) {
        let e = C64::new(re, im);
        prop_assume!(!near_pole(e, 1e-3));
        let a = s_of_e(e).unwrap();
        let b = s_from_connection(e).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0));
    }

    #[test]
    fn frobenius_pair_matches_at_origin(e in disk(10.0)) {
        for fam in [Family::Frobenius1, Family::Frobenius2] {
            let p = eval_frobenius(SolutionId::new(fam, Side::Plus), e, 0.0).unwrap();
            let m = eval_frobenius(SolutionId::new(fam, Side::Minus), e, 0.0).unwrap();
            prop_assert_eq!(p, m);
        }
    }

    #[test]
    fn wronskian_on_the_positive_side(e in disk(10.0), x in 0.0f64..5.0) {
        let a = eval_frobenius(SolutionId::new(Family::Frobenius1, Side::Plus), e, x).unwrap();
        let b = eval_frobenius(SolutionId::new(Family::Frobenius2, Side::Plus), e, x).unwrap();
        let rounding = 64.0 * f64::EPSILON
            * (a.psi.norm() * b.dpsi.norm() + b.psi.norm() * a.dpsi.norm());
        prop_assert!((wronskian(a, b) - 1.0).norm() <= 1e-9 + rounding);
    }
}

#[test]
fn first_derivative_of_reciprocal_gamma() {
    for z in [C64::new(0.25, 0.0), C64::new(0.75, 0.0), C64::new(1.3, 0.7)] {
        let g = recip_gamma_derivs(z, 1).unwrap();
        let want = -digamma(z).unwrap() * recip_gamma(z);
        assert!((g[1] - want).norm() <= 1e-9 * want.norm().max(1.0));
    }
}

#[test]
fn taylor_series_reproduces_d() {
    let b = taylor_coeffs::<f64>(16).unwrap();
    for k in 0..24 {
        let e = C64::from_polar(1.5 * (k % 4 + 1) as f64 / 4.0, k as f64 * 0.7);
        let series: C64 = b.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * e + c.b);
        assert!((series - d_of_e(e)).norm() < 1e-8, "E = {e}");
    }
}
