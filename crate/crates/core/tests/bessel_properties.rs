//! Property checks for normalized Bessel functions and their zeros.

use logan_lab::bessel::{j_norm, j_norm_derivative, poisson_constant, psi_m, zeros, Order};
use logan_lab::quad::{adaptive, tanh_sinh};
use proptest::prelude::*;

fn ord(a: f64) -> Order {
    Order::new(a).unwrap()
}

#[test]
fn bounded_by_one_on_dense_grid() {
    for &a in &[-0.5, -0.3, 0.0, 0.7, 1.0, 2.5, 9.0] {
        let o = ord(a);
        let mut x = 0.0;
        while x <= 200.0 {
            let v = j_norm(o, x);
            assert!(v.abs() <= 1.0 + 1e-15, "alpha={a} x={x} j={v}");
            x += 0.01;
        }
    }
}

#[test]
fn product_over_zeros_converges_monotonically() {
    for &a in &[-0.5, 0.0, 1.0, 2.5] {
        let o = ord(a);
        let t = zeros(o, 400).unwrap();
        let x = 0.6 * t.q(1);
        let exact = j_norm(o, x);
        let mut prod = 1.0;
        let mut last = f64::INFINITY;
        for k in 1..=400 {
            prod *= 1.0 - x * x / (t.q(k) * t.q(k));
            if k % 50 == 0 {
                let err = (prod - exact).abs() / exact;
                assert!(err < last, "alpha={a} K={k}");
                last = err;
            }
        }
        assert!(last < 1e-2);
    }
}

#[test]
fn psi_remainders_are_nonnegative() {
    for &a in &[-0.5, 0.0, 0.7, 2.5] {
        let o = ord(a);
        for m in 1..=4usize {
            let mut x = 0.0;
            while x <= 30.0 {
                let v = psi_m(o, m, x);
                let floor = -1e-12 * 1f64.max(x.powi(2 * m as i32));
                assert!(v >= floor, "alpha={a} m={m} x={x} psi={v}");
                x += 0.05;
            }
        }
    }
}

// Poisson's integral over the symmetric interval [-1, 1], i.e. twice the
// integral over [0, 1].
fn poisson(a: f64, lambda: f64) -> f64 {
    let c = 2.0 * poisson_constant(a);
    let r = tanh_sinh(
        |t, _da, db| (db * (1.0 + t)).powf(a - 0.5) * (lambda * t).cos(),
        0.0,
        1.0,
        1e-15,
    );
    c * r.value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poisson_representation(a in -0.45f64..6.0, lambda in 0.0f64..60.0) {
        let v = j_norm(ord(a), lambda);
        let p = poisson(a, lambda);
        prop_assert!((v - p).abs() < 1e-8, "alpha={} lambda={} j={} poisson={}", a, lambda, v, p);
    }

    #[test]
    fn derivative_forms_agree(a in 0.5f64..6.0, x in 0.01f64..80.0) {
        let o = ord(a);
        let d = j_norm_derivative(o, x, 1);
        let alt = 2.0 * a / x * (j_norm(ord(a - 1.0), x) - j_norm(o, x));
        prop_assert!((d - alt).abs() < 1e-10 * (1.0 + 2.0 * a / x), "alpha={} x={} {} {}", a, x, d, alt);
    }

    #[test]
    fn closed_form_cross_integral(a in -0.5f64..4.0, p in 0.2f64..6.0, q in 0.2f64..6.0, z in 0.5f64..4.0) {
        prop_assume!((p - q).abs() > 0.05);
        let o = ord(a);
        let lhs = adaptive(|t| j_norm(o, p * t) * j_norm(o, q * t) * t.powf(2.0 * a + 1.0), 0.0, z, 1e-14, 1e-13).value;
        let o1 = ord(a + 1.0);
        let rhs = z.powf(2.0 * a + 2.0)
            * (p * p * j_norm(o1, p * z) * j_norm(o, q * z) - q * q * j_norm(o, p * z) * j_norm(o1, q * z))
            / (2.0 * (a + 1.0) * (p * p - q * q));
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "lhs={} rhs={}", lhs, rhs);
    }

    #[test]
    fn evenness(a in -0.5f64..5.0, x in 0.0f64..50.0) {
        let o = ord(a);
        prop_assert_eq!(j_norm(o, x), j_norm(o, -x));
        let d = j_norm_derivative(o, x, 3);
        prop_assert!((d + j_norm_derivative(o, -x, 3)).abs() <= 1e-15 * (1.0 + d.abs()));
    }
}
