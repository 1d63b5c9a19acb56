//! Normalized Bessel functions j_alpha, their derivatives and Taylor data,
//! and the positive zeros q_{alpha,k}.
//!
//! `j_alpha(x) = Gamma(alpha+1) (2/x)^alpha J_alpha(x)`, so that
//! `j_alpha(0) = 1`, `j_{-1/2}(x) = cos x` and `j_{1/2}(x) = sin x / x`.

mod cylinder;
mod zeros;

pub use zeros::{first_zero_growth_check, zeros, zeros_with_tol, GrowthRow, ZeroTable};

use crate::error::{LoganError, Result};
use serde::Serialize;
use crate::gamma::{gamma, ln_gamma};

pub(crate) use cylinder::recip_gamma_1p;

/// Hankel order alpha, validated to satisfy alpha >= -1/2.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct Order(f64);

impl Order {
    /// Validates and wraps an order.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha >= -0.5 {
            Ok(Order(alpha))
        } else {
            Err(LoganError::InvalidOrder(alpha))
        }
    }

    /// The raw order.
    pub fn alpha(self) -> f64 {
        self.0
    }

    /// The order alpha + delta for delta >= 0.
    pub fn shift(self, delta: f64) -> Order {
        assert!(delta >= 0.0, "order shifts must be nonnegative");
        Order(self.0 + delta)
    }

    /// `b_alpha = 1 / (2^alpha Gamma(alpha+1))`, the density constant of nu_alpha.
    pub fn b(self) -> f64 {
        b_alpha(self.0)
    }
}

/// `1 / (2^alpha Gamma(alpha+1))` for alpha > -1.
pub fn b_alpha(alpha: f64) -> f64 {
    (-(alpha * std::f64::consts::LN_2) - ln_gamma(alpha + 1.0)).exp()
}

/// Gamma function (thin wrapper so callers need not import statrs).
pub fn gamma_fn(x: f64) -> f64 {
    gamma(x)
}

/// Natural log of the Gamma function for x > 0.
pub fn ln_gamma_fn(x: f64) -> f64 {
    ln_gamma(x)
}

/// Poisson constant `c_alpha = Gamma(alpha+1) / (Gamma(1/2) Gamma(alpha+1/2))`.
pub fn poisson_constant(alpha: f64) -> f64 {
    (ln_gamma(alpha + 1.0) - 0.5 * std::f64::consts::PI.ln() - ln_gamma(alpha + 0.5)).exp()
}

fn use_series(alpha: f64, x: f64) -> bool {
    x <= 4.0 || x * x <= 4.0 * (alpha + 1.0)
}

fn series(alpha: f64, x: f64) -> f64 {
    let z = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= z / (k * (k + alpha));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() && k * k >= -z {
            return sum;
        }
        if k > 500.0 {
            return sum;
        }
    }
}

/// `j_alpha(x)` for any real `alpha >= -1/2` (unchecked) and real `x`.
pub fn j_raw(alpha: f64, x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        return 1.0;
    }
    if alpha == -0.5 {
        return x.cos();
    }
    if alpha == 0.5 && x > 1e-3 {
        return x.sin() / x;
    }
    if use_series(alpha, x) {
        return series(alpha, x);
    }
    let j = cylinder::bessel_j(alpha, x);
    let scale = (ln_gamma(alpha + 1.0) + alpha * (2.0 / x).ln()).exp();
    scale * j
}

/// Normalized Bessel function `j_alpha(x)`; even in `x`, `|j| <= 1`, `j(0) = 1`.
pub fn j_norm(order: Order, x: f64) -> f64 {
    j_raw(order.0, x)
}

/// `(J_nu(x), Y_nu(x))` for `nu >= 0` and `x > 0`; exposed for asymptotic tails.
pub fn cylinder_jy(nu: f64, x: f64) -> (f64, f64) {
    cylinder::bessel_jy(nu, x)
}

/// Coefficient of `x^{2k}` in the power series of `j_alpha`:
/// `(-1/4)^k Gamma(alpha+1) / (k! Gamma(k+alpha+1))`.
pub fn series_coefficient(alpha: f64, k: usize) -> f64 {
    let mut c = 1.0;
    for i in 1..=k {
        let fi = i as f64;
        c *= -0.25 / (fi * (fi + alpha));
    }
    c
}

/// A term `coef * x^power * j_{alpha+shift}(x)` of a derivative expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivTerm {
    /// Multiplier.
    pub coef: f64,
    /// Power of x.
    pub power: u32,
    /// Order shift relative to alpha.
    pub shift: u32,
}

/// Expansion of the n-th derivative of `j_alpha` as a finite combination of
/// `x^p j_{alpha+i}(x)`, obtained by repeated use of
/// `d/dx j_beta(x) = -x j_{beta+1}(x) / (2(beta+1))`.
pub fn derivative_terms(alpha: f64, n: u32) -> Vec<DerivTerm> {
    let mut terms = vec![DerivTerm { coef: 1.0, power: 0, shift: 0 }];
    for _ in 0..n {
        let mut next: Vec<DerivTerm> = Vec::new();
        let mut push = |t: DerivTerm| {
            if let Some(e) = next.iter_mut().find(|e| e.power == t.power && e.shift == t.shift) {
                e.coef += t.coef;
            } else {
                next.push(t);
            }
        };
        for t in &terms {
            if t.power > 0 {
                push(DerivTerm { coef: t.coef * t.power as f64, power: t.power - 1, shift: t.shift });
            }
            let beta = alpha + t.shift as f64;
            push(DerivTerm {
                coef: -t.coef / (2.0 * (beta + 1.0)),
                power: t.power + 1,
                shift: t.shift + 1,
            });
        }
        terms = next;
    }
    terms
}

/// n-th derivative of `j_alpha` at `x` (n = 0 returns the value).
pub fn j_norm_derivative(order: Order, x: f64, n: u32) -> f64 {
    j_derivative_raw(order.0, x, n)
}

pub(crate) fn j_derivative_raw(alpha: f64, x: f64, n: u32) -> f64 {
    if n == 0 {
        return j_raw(alpha, x);
    }
    if x == 0.0 {
        if n % 2 == 1 {
            return 0.0;
        }
        let k = (n / 2) as usize;
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        return fact * series_coefficient(alpha, k);
    }
    let terms = derivative_terms(alpha, n);
    let max_shift = terms.iter().map(|t| t.shift).max().unwrap_or(0);
    let vals: Vec<f64> = (0..=max_shift).map(|i| j_raw(alpha + i as f64, x)).collect();
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    sign * terms
        .iter()
        .map(|t| t.coef * ax.powi(t.power as i32) * vals[t.shift as usize])
        .sum::<f64>()
}

/// Truncated Taylor expansion of `j_alpha` about `center`.
///
/// At `center = 0` the coefficients are those of the power series; at a
/// nonzero center they follow from the Bessel differential equation
/// `x j'' + (2 alpha + 1) j' + x j = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorTail {
    order: Order,
    truncation: usize,
    center: f64,
    coeffs: Vec<f64>,
}

impl TaylorTail {
    /// Builds the expansion with coefficients `a_0..=a_truncation`.
    pub fn new(order: Order, truncation: usize, center: f64) -> Result<Self> {
        if truncation < 1 {
            return Err(LoganError::InvalidArgument("Taylor truncation must be >= 1".into()));
        }
        let alpha = order.0;
        let mut a = vec![0.0; truncation + 1];
        if center == 0.0 {
            for (s, c) in a.iter_mut().enumerate() {
                if s % 2 == 0 {
                    *c = series_coefficient(alpha, s / 2);
                }
            }
        } else {
            let c = center;
            a[0] = j_raw(alpha, c);
            a[1] = -c * j_raw(alpha + 1.0, c) / (2.0 * (alpha + 1.0));
            for s in 0..truncation.saturating_sub(1) {
                let fs = s as f64;
                let prev = if s == 0 { 0.0 } else { a[s - 1] };
                a[s + 2] = -((fs + 1.0) * (fs + 2.0 * alpha + 1.0) * a[s + 1] + c * a[s] + prev)
                    / ((fs + 2.0) * (fs + 1.0) * c);
            }
        }
        Ok(TaylorTail { order, truncation, center, coeffs: a })
    }

    /// The order of the expanded function.
    pub fn order(&self) -> Order {
        self.order
    }

    /// Highest retained power.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Expansion point.
    pub fn center(&self) -> f64 {
        self.center
    }

    /// Coefficients `a_s = j^{(s)}(center) / s!`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Value of the truncated expansion at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let h = x - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }

    /// `(j(x) - a_0) / (x - center)` from the expansion. At a zero of
    /// `j_alpha` this is the regular quotient `j(x)/(x - q)`.
    pub fn eval_quotient(&self, x: f64) -> f64 {
        let h = x - self.center;
        self.coeffs[1..].iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }
}

/// `psi_m(x) = (-1)^m (j_alpha(x) - sum_{k<m} c_k x^{2k})`, the signed
/// remainder of the power series after m terms; nonnegative for x >= 0.
pub fn psi_m(order: Order, m: usize, x: f64) -> f64 {
    let alpha = order.0;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    if use_series(alpha, x) {
        // sum the tail directly to avoid cancellation
        let z = -0.25 * x * x;
        let mut term = series_coefficient(alpha, m) * x.powi(2 * m as i32);
        let mut sum = term;
        let mut k = m as f64;
        loop {
            k += 1.0;
            term *= z / (k * (k + alpha));
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() && k * k >= -z {
                break;
            }
            if k > 500.0 + m as f64 {
                break;
            }
        }
        sign * sum
    } else {
        let partial: f64 = (0..m).map(|k| series_coefficient(alpha, k) * x.powi(2 * k as i32)).sum();
        sign * (j_raw(alpha, x) - partial)
    }
}

/// Relative radius around a zero inside which quotients by `x - q` switch
/// from direct division to the local Taylor expansion.
pub const ZERO_SWITCH_RADIUS: f64 = 1e-3;

/// `j_alpha(x) / (x - q)` at a positive zero `q`, regular at `x = q`.
#[derive(Clone, Debug)]
pub struct ZeroQuotient {
    q: f64,
    radius: f64,
    taylor: TaylorTail,
}

impl ZeroQuotient {
    /// Prepares the quotient for the zero `q` of `j_alpha`.
    pub fn new(order: Order, q: f64) -> Result<Self> {
        if !(q > 0.0) {
            return Err(LoganError::InvalidArgument(format!("zero must be positive, got {q}")));
        }
        let mut taylor = TaylorTail::new(order, 24, q)?;
        // the expansion is about an exact zero
        taylor.coeffs[0] = 0.0;
        Ok(ZeroQuotient { q, radius: ZERO_SWITCH_RADIUS * q, taylor })
    }

    /// The zero.
    pub fn zero(&self) -> f64 {
        self.q
    }

    /// Quotient at `x`, given `jx = j_alpha(x)`.
    pub fn eval_with(&self, x: f64, jx: f64) -> f64 {
        let h = x - self.q;
        if h.abs() < self.radius {
            self.taylor.eval_quotient(x)
        } else {
            jx / h
        }
    }

    /// `j_alpha'(q)`, the value of the quotient at the zero.
    pub fn slope(&self) -> f64 {
        self.taylor.coeffs[1]
    }
}
