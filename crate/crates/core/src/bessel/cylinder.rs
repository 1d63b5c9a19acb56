//! Ordinary Bessel functions J_nu and Y_nu for real order and positive argument.
//!
//! Three regimes are used: the ascending series for small arguments, the
//! continued-fraction method of Steed with Temme's series for the companion
//! function in the middle range, and the Hankel asymptotic expansion once the
//! argument dominates the square of the order.

use std::f64::consts::PI;

const EPS: f64 = 1.0e-16;
const FPMIN: f64 = 1.0e-300;
const MAXIT: usize = 100_000;
const XMIN: f64 = 2.0;

/// Power-series coefficients of 1/Gamma(z) (Abramowitz and Stegun 6.1.34).
#[allow(clippy::excessive_precision)]
const RECIP_GAMMA: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// 1/Gamma(1+mu) for |mu| <= 1/2.
pub(crate) fn recip_gamma_1p(mu: f64) -> f64 {
    RECIP_GAMMA.iter().rev().fold(0.0, |acc, &c| acc * mu + c)
}

/// Temme's auxiliary functions for |mu| <= 1/2.
///
/// Returns `(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))` where
/// `gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)` and
/// `gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2`.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let mut even = 0.0;
    let mut odd = 0.0;
    for k in (0..RECIP_GAMMA.len()).rev() {
        // c_{k+1} multiplies mu^k in 1/Gamma(1+mu)
        if k % 2 == 1 {
            even = even * mu2 + RECIP_GAMMA[k];
        } else {
            odd = odd * mu2 + RECIP_GAMMA[k];
        }
    }
    let gam1 = -even;
    let gam2 = odd;
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

/// Hankel asymptotic expansion of `(J_nu(x), Y_nu(x))`, or `None` when the
/// series fails to reach double precision before its terms start growing.
pub(crate) fn hankel_asymptotic(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    let mut converged = false;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let a = term.abs();
        if a > last && a > EPS {
            return None;
        }
        last = a;
        // a_k(nu)/x^k enters P for even k and Q for odd k with alternating signs
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if a < EPS * 0.01 {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (2.0 / (PI * x)).sqrt();
    Some((
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    ))
}

/// `(J_nu(x), Y_nu(x))` for `nu >= 0` and `x > 0` by Steed's method.
///
/// The ratio J'_nu/J_nu comes from the first continued fraction, the
/// companion pair at the reduced order |mu| <= 1/2 from Temme's series
/// (x < 2) or the complex continued fraction (x >= 2), and the Wronskian
/// fixes the normalization.
pub(crate) fn steed_jy(nu: f64, x: f64) -> (f64, f64) {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let nl = if x < XMIN {
        (nu + 0.5) as usize
    } else {
        ((nu - x + 1.5).max(0.0)) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // downward recurrence from nu to mu, rescaling to stay in range
    let mut rjl = isign * 1.0e-30;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > 1.0e250 {
            rjl *= 1.0e-250;
            rjpl *= 1.0e-250;
            rjl1 *= 1.0e-250;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, rymu, ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mut jm = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            jm = -jm;
        }
        rjmu = jm;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let rj = rjl1 * (rjmu / rjl);
    let mut ym = rymu;
    let mut y1 = ry1;
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * y1 - ym;
        ym = y1;
        y1 = t;
    }
    (rj, ym)
}

/// `(J_nu(x), Y_nu(x))` for `nu >= 0`, `x > 0`.
pub(crate) fn bessel_jy(nu: f64, x: f64) -> (f64, f64) {
    if x >= 25.0_f64.max(nu * nu) {
        if let Some(v) = hankel_asymptotic(nu, x) {
            return v;
        }
    }
    steed_jy(nu, x)
}

/// J_nu(x) for `nu >= -1/2`, `x > 0`. Negative orders use the reflection
/// J_{-mu} = cos(mu pi) J_mu - sin(mu pi) Y_mu.
pub(crate) fn bessel_j(nu: f64, x: f64) -> f64 {
    if nu >= 0.0 {
        bessel_jy(nu, x).0
    } else {
        let mu = -nu;
        let (j, y) = bessel_jy(mu, x);
        (mu * PI).cos() * j - (mu * PI).sin() * y
    }
}
