//! Gamma function at double precision.
//!
//! The reciprocal Gamma series about 1 covers the reduced interval
//! [1/2, 3/2]; other arguments below 171 are reached by the functional
//! equation, and larger ones use the Stirling series for log Gamma.

use crate::bessel::recip_gamma_1p;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Gamma(x) for real x that is not a nonpositive integer.
pub fn gamma(x: f64) -> f64 {
    if x > 171.7 {
        return f64::INFINITY;
    }
    if x < 0.5 {
        // reflection keeps the product short for negative arguments
        let s = (std::f64::consts::PI * x).sin();
        return std::f64::consts::PI / (s * gamma(1.0 - x));
    }
    let mut y = x;
    let mut prod = 1.0;
    while y > 1.5 {
        y -= 1.0;
        prod *= y;
    }
    prod / recip_gamma_1p(y - 1.0)
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument");
    if x < 30.0 {
        return gamma(x).ln();
    }
    // Stirling series with Bernoulli coefficients B_{2k} / (2k (2k-1))
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let z2 = 1.0 / (x * x);
    let mut series = 0.0;
    for &c in C.iter().rev() {
        series = series * z2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series / x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        let mut f = 1.0;
        for n in 1..25 {
            assert!((gamma(n as f64) - f).abs() <= 2e-16 * f * n as f64, "n={n}");
            f *= n as f64;
        }
        let sp = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5) - sp).abs() < 4e-16);
        assert!((gamma(2.5) - 0.75 * sp).abs() < 4e-16);
        assert!((gamma(-0.5) + 2.0 * sp).abs() < 1e-15);
    }

    #[test]
    fn recurrence_and_log_consistency() {
        for &x in &[0.6, 1.3, 4.2, 7.7, 19.5, 29.9] {
            let r = gamma(x + 1.0) / (x * gamma(x));
            assert!((r - 1.0).abs() < 4e-15, "x={x}");
        }
        // both branches of ln_gamma agree across the switch
        let a = gamma(29.5).ln();
        let b = (29.5 - 0.5) * 29.5_f64.ln() - 29.5 + HALF_LN_2PI;
        assert!((a - b).abs() < 1e-2);
        let lg = ln_gamma(31.0) - ln_gamma(30.0);
        assert!((lg - 30.0_f64.ln()).abs() < 1e-13);
    }
}
