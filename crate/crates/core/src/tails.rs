//! Integrals over [L, infinity) of smooth algebraically decaying weights
//! against `j_alpha` and `j_alpha^2`.
//!
//! For `j_alpha^2` the integrand is split into the non-oscillatory mean
//! `Gamma(alpha+1)^2 (2/x)^{2 alpha} M_alpha(x)^2 / 2`, where `M_alpha` is the
//! Bessel modulus with its asymptotic series, and an oscillating remainder.
//! The mean part is integrated after the substitution `x = L/u`; oscillating
//! parts are summed over half-period panels and accelerated by Wynn's
//! epsilon algorithm.

use crate::bessel::j_raw;
use crate::gamma::ln_gamma;
use crate::quad::{gk21, tanh_sinh, wynn_epsilon, Integral};
use std::f64::consts::{FRAC_PI_2, PI};

/// Smallest start point for which the modulus series reaches double precision.
pub fn min_start(alpha: f64) -> f64 {
    30.0_f64.max(2.0 * alpha * alpha.max(1.0)).max(4.0 * alpha + 10.0)
}

/// Non-oscillatory mean of `j_alpha(x)^2`, or `None` if the modulus series
/// has not converged at this argument.
pub fn j_squared_mean(alpha: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * alpha * alpha;
    let y = 1.0 / (4.0 * x * x);
    let mut term = 1.0;
    let mut s = 1.0;
    let mut ok = false;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = term * (odd / (2.0 * k as f64)) * (mu - odd * odd) * y;
        if next.abs() > term.abs() && next.abs() > 1e-17 {
            break;
        }
        term = next;
        s += term;
        if term.abs() < 1e-18 {
            ok = true;
            break;
        }
    }
    if !ok {
        return None;
    }
    let log_scale = 2.0 * ln_gamma(alpha + 1.0) + 2.0 * alpha * (2.0 / x).ln();
    Some(log_scale.exp() * s / (PI * x))
}

fn accelerate<F: Fn(f64) -> f64>(f: &F, start: f64, half_period: f64, tol: f64) -> Integral {
    let mut partial = Vec::new();
    let mut acc = 0.0;
    let mut acc_abs = 0.0;
    let mut a = start;
    let mut best = (0.0, f64::INFINITY);
    for n in 0..400 {
        let r = gk21(f, a, a + half_period);
        acc += r.value;
        acc_abs += r.abs_value;
        partial.push(acc);
        a += half_period;
        if n >= 20 && n % 10 == 0 {
            let window = &partial[partial.len().saturating_sub(40)..];
            let est = wynn_epsilon(window);
            if est.1 < best.1 {
                best = est;
            }
            if best.1 <= tol * acc_abs.max(1e-300) {
                break;
            }
        }
    }
    Integral { value: best.0, error: best.1, abs_value: acc_abs }
}

/// `int_L^inf w(x) j_alpha(x)^2 dx` for a smooth weight decaying faster
/// than `x^{2 alpha}`. `L` is raised to [`min_start`] if needed; the
/// caller must integrate `[L, min_start]` itself, so pass `L >= min_start`.
pub fn j_squared_tail<W: Fn(f64) -> f64>(alpha: f64, w: W, start: f64, tol: f64) -> Integral {
    assert!(start >= min_start(alpha) - 1e-9, "tail must start beyond the asymptotic range");
    let mean = |x: f64| j_squared_mean(alpha, x).expect("modulus series converges past min_start");
    let smooth = tanh_sinh(
        |u, _, _| {
            let x = start / u;
            if !(x < 1e100) {
                return 0.0;
            }
            let v = w(x) * mean(x) * start / (u * u);
            if v.is_finite() { v } else { 0.0 }
        },
        0.0,
        1.0,
        tol,
    );
    let osc = |x: f64| {
        let j = j_raw(alpha, x);
        w(x) * (j * j - mean(x))
    };
    let wave = accelerate(&osc, start, FRAC_PI_2, tol);
    Integral {
        value: smooth.value + wave.value,
        error: smooth.error + wave.error,
        abs_value: smooth.abs_value + wave.abs_value,
    }
}

/// `int_L^inf w(x) j_alpha(x) dx` for a smooth weight with `w j_alpha`
/// tending to zero; summed over half-period panels with acceleration.
pub fn j_linear_tail<W: Fn(f64) -> f64>(alpha: f64, w: W, start: f64, tol: f64) -> Integral {
    let f = |x: f64| w(x) * j_raw(alpha, x);
    accelerate(&f, start, PI, tol)
}

/// Accelerated sum of panel integrals of an oscillating integrand with the
/// given half period, starting at `start`.
pub fn oscillatory_tail<F: Fn(f64) -> f64>(f: F, start: f64, half_period: f64, tol: f64) -> Integral {
    accelerate(&f, start, half_period, tol)
}

/// `int_L^inf f(x) dx` for a smooth, non-oscillating, algebraically
/// decaying integrand, via the substitution `x = L/u`.
pub fn algebraic_tail<F: Fn(f64) -> f64>(f: F, start: f64, tol: f64) -> Integral {
    tanh_sinh(
        |u, _, _| {
            let x = start / u;
            if !(x < 1e100) {
                return 0.0;
            }
            let v = f(x) * start / (u * u);
            if v.is_finite() { v } else { 0.0 }
        },
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::j_raw;
    use crate::quad::adaptive;

    #[test]
    fn mean_matches_local_average() {
        // averaging j^2 over one period removes the oscillation to O(x^-2)
        for &a in &[-0.5, 0.0, 1.0, 2.5] {
            let x0 = 5000.0;
            let avg = adaptive(|x| j_raw(a, x).powi(2), x0, x0 + PI, 1e-16, 1e-13).value / PI;
            let m = j_squared_mean(a, x0 + FRAC_PI_2).unwrap();
            assert!(((avg - m) / m).abs() < 1e-3, "a={a} {avg} {m}");
        }
        // alpha = -1/2: mean of cos^2 is 1/2 exactly
        assert!((j_squared_mean(-0.5, 40.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn square_tail_of_cosine() {
        // int_L^inf cos^2 x / x^2 dx = 1/(2L) + (1/2) int_L^inf cos 2x / x^2 dx
        let l = 30.0;
        let r = j_squared_tail(-0.5, |x| 1.0 / (x * x), l, 1e-14);
        // integrate cos(2x)/x^2 by parts: [-cos2x/x]... use brute force to 4000 with analytic remainder
        let head = adaptive(|x| (2.0 * x).cos() / (x * x), l, 4000.0, 1e-16, 1e-14).value;
        let rest = -(8000.0f64).sin() / (2.0 * 4000.0f64.powi(2));
        let exact = 0.5 / l + 0.5 * (head + rest);
        assert!((r.value - exact).abs() < 1e-11, "{} {}", r.value, exact);
    }

    #[test]
    fn linear_tail_of_sine_kernel() {
        // int_L^inf sin x / x dx = pi/2 - Si(L)
        let l = 10.0 * PI;
        let r = j_linear_tail(0.5, |_| 1.0, l, 1e-14);
        let si = adaptive(|x: f64| if x == 0.0 { 1.0 } else { x.sin() / x }, 0.0, l, 1e-16, 1e-15).value;
        assert!((r.value - (FRAC_PI_2 - si)).abs() < 1e-12, "{} {}", r.value, FRAC_PI_2 - si);
    }

    #[test]
    fn full_integral_of_shifted_square() {
        // int_0^inf j_{a+1}^2 dnu_a = 2^{a+1} Gamma(a+2), from int J_nu^2 / t = 1/(2 nu)
        for &a in &[-0.5, -0.2, 0.0, 0.7, 2.5] {
            let b = crate::bessel::b_alpha(a);
            let l = min_start(a + 1.0);
            let w = |x: f64| b * x.powf(2.0 * a + 1.0);
            let head = crate::quad::adaptive(|x| w(x) * j_raw(a + 1.0, x).powi(2), 0.0, l, 1e-15, 1e-14);
            let tail = j_squared_tail(a + 1.0, w, l, 1e-14);
            let exact = (2f64.ln() * (a + 1.0) + ln_gamma(a + 2.0)).exp();
            let got = head.value + tail.value;
            assert!(((got - exact) / exact).abs() < 1e-11, "a={a} {got} {exact}");
        }
    }
}
