//! Transform, translation and convolution identities on the half-line.

use logan_lab::bessel::{b_alpha, j_norm, Order};
use logan_lab::gamma::ln_gamma;
use logan_lab::hankel::{
    convolve, gram_counterexample, hankel_transform, inverse_check, sonine_lower, translate, Measure,
    RadialProfile,
};
use logan_lab::quad::{gauss_legendre, tanh_sinh};
use proptest::prelude::*;
use std::f64::consts::PI;

fn ord(a: f64) -> Order {
    Order::new(a).unwrap()
}

fn measure(a: f64) -> Measure {
    Measure::new(ord(a))
}

fn bump() -> RadialProfile {
    RadialProfile::compact(|t: f64| (1.0 - t * t).powi(2), 1.0).analytic()
}

#[test]
fn gaussian_is_recovered_by_double_transform() {
    for &a in &[-0.5, 0.0, 1.5] {
        let mu = measure(a);
        let g = RadialProfile::gaussian();
        let grid: Vec<f64> = (0..8).map(|i| 0.6 * i as f64).collect();
        let err = inverse_check(&mu, &g, &RadialProfile::gaussian(), &grid).unwrap();
        assert!(err <= 1e-7, "alpha={a} err={err}");
        // the Gaussian is a fixed point of every transform
        for &l in &[0.0, 1.3, 4.0] {
            let h = hankel_transform(&mu, &g, l).unwrap();
            assert!((h - (-0.5 * l * l).exp()).abs() < 1e-12);
        }
    }
}

#[test]
fn zero_profile_inverts_to_zero() {
    let mu = measure(0.3);
    let z = RadialProfile::compact(|_| 0.0, 1.0).analytic();
    assert_eq!(inverse_check(&mu, &z, &RadialProfile::gaussian(), &[0.0, 0.5]).unwrap(), 0.0);
}

#[test]
fn sonine_recovers_indicator_transform() {
    for &a in &[-0.5, 0.0, 0.7, 2.0] {
        let beta = a + 1.0;
        let hb = RadialProfile::bessel(ord(beta + 1.0), 1.0);
        let scale = b_alpha(beta + 1.0);
        let hb = RadialProfile::new(move |s| scale * hb.value(s))
            .with_decay(beta + 1.5)
            .with_half_period(PI);
        for &t in &[0.0, 0.4, 2.5, 7.0] {
            let v = sonine_lower(&measure(a), &measure(beta), &hb, t).unwrap();
            let e = b_alpha(a + 1.0) * j_norm(ord(a + 1.0), t);
            assert!((v - e).abs() < 1e-8, "alpha={a} t={t} {v} {e}");
        }
    }
}

#[test]
fn sonine_with_fractional_gap_matches_direct_transform() {
    // g = H_beta(bump) has H_beta(g) = bump by self-inversion, so lowering the
    // compact bump must reproduce the direct (unbounded) transform H_alpha(g)
    let (a, beta) = (0.0, 0.5);
    let f = bump();
    let g = {
        let f = f.clone();
        RadialProfile::new(move |l| hankel_transform(&measure(beta), &f, l).unwrap())
            .analytic()
            .with_decay(beta + 3.5)
            .with_half_period(PI)
    };
    for &t in &[0.0, 0.3, 0.8] {
        let lowered = sonine_lower(&measure(a), &measure(beta), &f, t).unwrap();
        let direct = hankel_transform(&measure(a), &g, t).unwrap();
        assert!((lowered - direct).abs() < 1e-6, "t={t} {lowered} {direct}");
    }
}

#[test]
fn convolution_support_and_identity() {
    let mu = measure(0.5);
    let chi = RadialProfile::indicator(1.0);
    assert_eq!(convolve(&mu, &chi, &chi, 2.5).unwrap(), 0.0);
    let unbounded = RadialProfile::gaussian().with_decay(10.0);
    let u = RadialProfile::new(move |t| unbounded.value(t));
    assert!(convolve(&mu, &chi, &u, 1.0).is_err());
    // a tight bump of unit mass acts as an approximate identity
    let f1 = bump();
    for &eps in &[0.1, 0.05] {
        let raw = RadialProfile::compact(move |t: f64| (1.0 - (t / eps).powi(2)).powi(2), eps).analytic();
        let mass = hankel_transform(&mu, &raw, 0.0).unwrap();
        let b2 = RadialProfile::compact(move |t: f64| (1.0 - (t / eps).powi(2)).powi(2) / mass, eps).analytic();
        let x = 0.4;
        let c = convolve(&mu, &f1, &b2, x).unwrap();
        assert!((c - f1.value(x)).abs() < 20.0 * eps * eps, "eps={eps} {c} {}", f1.value(x));
    }
}

/// Samples `f` once on a composite Gauss-Legendre grid split at `cuts` and
/// returns `lambda -> int f(t) j_alpha(lambda t) d nu_alpha(t)`.
fn sampled_transform<F: Fn(f64) -> f64>(a: f64, f: F, cuts: &[f64]) -> impl Fn(f64) -> f64 {
    let rule = gauss_legendre(48);
    let mut pts = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
            let t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
            pts.push((t, 0.5 * (hi - lo) * wt * f(t) * t.powf(2.0 * a + 1.0)));
        }
    }
    let b = b_alpha(a);
    move |l: f64| b * pts.iter().map(|&(t, w)| w * j_norm(ord(a), l * t)).sum::<f64>()
}

#[test]
fn convolution_of_indicators_squares_the_kernel() {
    for &a in &[0.0, 0.5] {
        let mu = measure(a);
        let chi = RadialProfile::indicator(1.0);
        // the convolution is smooth on (0, 2) apart from the end points
        let h = sampled_transform(a, |x| convolve(&mu, &chi, &chi, x).unwrap(), &[0.0, 0.5, 1.0, 1.5, 2.0]);
        for &l in &[0.7, 3.0] {
            let b1 = b_alpha(a + 1.0);
            let e = j_norm(ord(a + 1.0), l).powi(2);
            let got = h(l) / (b1 * b1);
            assert!((got - e).abs() < 1e-6, "alpha={a} l={l} {got} {e}");
        }
    }
}

#[test]
fn sonine_first_integral() {
    for &(a, beta) in &[(0.0, 0.5), (-0.5, 1.0), (0.7, 2.2)] {
        for &l in &[0.5, 4.0, 13.0] {
            let k = beta - a;
            let norm = (-(k - 1.0) * 2f64.ln() - ln_gamma(k)).exp() / b_alpha(beta);
            let r = tanh_sinh(
                |t, _, db| {
                    let w = if k == 1.0 { 1.0 } else { (db * (1.0 + t)).powf(k - 1.0) };
                    w * j_norm(ord(a), l * t) * b_alpha(a) * t.powf(2.0 * a + 1.0)
                },
                0.0,
                1.0,
                1e-15,
            );
            let v = norm * r.value;
            assert!((v - j_norm(ord(beta), l)).abs() < 1e-9, "a={a} beta={beta} l={l}");
        }
    }
}

#[test]
fn negative_eigenvalue_for_truncated_eigenfunction() {
    for &a in &[-0.5, 0.0, 1.0] {
        let (x1, x2, v) = gram_counterexample(&measure(a)).unwrap();
        assert!(v < 0.0, "alpha={a} x1={x1} x2={x2} v={v}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homogeneity(a in -0.5f64..2.5, s in 0.3f64..3.0, l in 0.0f64..12.0) {
        let mu = measure(a);
        let f = bump();
        let lhs = hankel_transform(&mu, &f.dilate(s), l).unwrap();
        let rhs = s.powf(-2.0 * a - 2.0) * hankel_transform(&mu, &f, l / s).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn translation_kernel_product(a in -0.5f64..3.0, l in 0.1f64..5.0, t in 0.0f64..4.0, x in 0.0f64..4.0) {
        let mu = measure(a);
        let f = RadialProfile::bessel(ord(a), l);
        let v = translate(&mu, t, &f, x);
        let e = j_norm(ord(a), l * t) * j_norm(ord(a), l * x);
        prop_assert!((v - e).abs() < 1e-9);
    }

    #[test]
    fn translation_preserves_positivity(a in -0.5f64..3.0, t in 0.0f64..2.0, x in 0.0f64..2.0) {
        let mu = measure(a);
        let v = translate(&mu, t, &bump(), x);
        prop_assert!(v >= -1e-14);
    }

    #[test]
    fn transform_intertwines_translation(a in -0.4f64..2.0, t in 0.1f64..0.9, l in 0.0f64..8.0) {
        let mu = measure(a);
        let f = bump();
        let tf = {
            let f = f.clone();
            RadialProfile::compact(move |x| translate(&mu, t, &f, x), 1.0 + t)
                .with_breakpoints(vec![1.0 - t])
        };
        let lhs = hankel_transform(&mu, &tf, l).unwrap();
        let rhs = j_norm(ord(a), t * l) * hankel_transform(&mu, &f, l).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-8, "{} {}", lhs, rhs);
    }
}

#[test]
fn convolution_multiplies_transforms() {
    let a = 0.7;
    let mu = measure(a);
    let f1 = bump();
    let f2 = RadialProfile::compact(|t: f64| 1.0 - t * t, 0.8).analytic();
    let h = sampled_transform(a, |x| convolve(&mu, &f1, &f2, x).unwrap(), &[0.0, 0.2, 0.8, 1.0, 1.4, 1.8]);
    for &l in &[0.0, 2.0, 5.5] {
        let lhs = h(l);
        let rhs = hankel_transform(&mu, &f1, l).unwrap() * hankel_transform(&mu, &f2, l).unwrap();
        assert!((lhs - rhs).abs() < 1e-7, "l={l} {lhs} {rhs}");
    }
}
