//! Positive definiteness of `g_{alpha,m}` through the interval `[-1,1]`:
//! ultraspherical Jacobi polynomials, divided polynomials with nonnegative
//! expansions, the product-formula translation on `[-1,1]`, and the
//! Mehler-Heine limit back to the half-line.

use crate::bessel::{j_raw, poisson_constant, zeros, Order};
use crate::error::{LoganError, Result};
use crate::extremal::ExtremalFunction;
use crate::gamma::gamma;
use crate::hankel::{min_eigenvalue, translate, Measure, RadialProfile};
use crate::quad::gauss_jacobi;
use nalgebra::DMatrix;
use serde::Serialize;

/// Largest degree for which the recurrence is trusted in the limit checks.
pub const MAX_DEGREE: usize = 400;

/// Tolerance (relative to `p(1)`) for nonnegativity of expansion coefficients.
pub const COEFFICIENT_TOL: f64 = 1e-10;

fn check_alpha(alpha: f64) -> Result<()> {
    Order::new(alpha).map(|_| ())
}

/// `R_0, ..., R_n` at `x`, for `R_n = P_n^{(alpha,alpha)} / P_n^{(alpha,alpha)}(1)`,
/// from `(n + 2 alpha) R_n = (2n + 2 alpha - 1) x R_{n-1} - (n - 1) R_{n-2}`.
pub fn jacobi_all(alpha: f64, n: usize, x: f64) -> Vec<f64> {
    let mut r = Vec::with_capacity(n + 1);
    r.push(1.0);
    if n >= 1 {
        r.push(x);
    }
    for k in 2..=n {
        let fk = k as f64;
        let v = ((2.0 * fk + 2.0 * alpha - 1.0) * x * r[k - 1] - (fk - 1.0) * r[k - 2]) / (fk + 2.0 * alpha);
        r.push(v);
    }
    r
}

/// `R_n^{(alpha)}(x)`, normalized to 1 at `x = 1`.
pub fn jacobi_eval(alpha: f64, n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if n == 0 {
        return 1.0;
    }
    for k in 2..=n {
        let fk = k as f64;
        let c = ((2.0 * fk + 2.0 * alpha - 1.0) * x * b - (fk - 1.0) * a) / (fk + 2.0 * alpha);
        a = b;
        b = c;
    }
    b
}

/// `d/dx R_n^{(alpha)} = n (n + 2 alpha + 1) / (2 (alpha + 1)) R_{n-1}^{(alpha+1)}`.
pub fn jacobi_derivative(alpha: f64, n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let fnn = n as f64;
    fnn * (fnn + 2.0 * alpha + 1.0) / (2.0 * (alpha + 1.0)) * jacobi_eval(alpha + 1.0, n - 1, x)
}

/// A normalized ultraspherical Jacobi polynomial with its zeros.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiPoly {
    /// Degree.
    pub n: usize,
    /// Parameter alpha (= beta).
    pub alpha: f64,
    /// Zeros in decreasing order, `r_1 > r_2 > ... > r_n`.
    pub zeros: Vec<f64>,
}

impl JacobiPoly {
    /// Zeros from the Golub-Welsch eigenvalues, Newton-polished.
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if n > MAX_DEGREE {
            return Err(LoganError::InvalidArgument(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut zs: Vec<f64> = if n == 0 { Vec::new() } else { gauss_jacobi(n, alpha, alpha).nodes.clone() };
        for z in zs.iter_mut() {
            for _ in 0..3 {
                let d = jacobi_derivative(alpha, n, *z);
                if d == 0.0 {
                    break;
                }
                *z -= jacobi_eval(alpha, n, *z) / d;
            }
        }
        zs.sort_by(|a, b| b.total_cmp(a));
        Ok(JacobiPoly { n, alpha, zeros: zs })
    }

    /// Value at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        jacobi_eval(self.alpha, self.n, x)
    }
}

/// `p_{n-k}(x) = R_n(x) / ((x - r_1) ... (x - r_k))` expanded as
/// `sum_s a_s R_s(x)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DividedPoly {
    /// Degree of `R_n`.
    pub n: usize,
    /// Number of divided zeros.
    pub k: usize,
    /// Parameter alpha.
    pub alpha: f64,
    /// The divided zeros `r_1 > ... > r_k`.
    pub divided: Vec<f64>,
    /// Coefficients `a_0..=a_{n-k}`.
    pub expansion: Vec<f64>,
}

impl DividedPoly {
    /// `sum_s a_s R_s(x)`, by one pass of the recurrence.
    pub fn eval(&self, x: f64) -> f64 {
        let d = self.expansion.len() - 1;
        let r = jacobi_all(self.alpha, d, x);
        self.expansion.iter().zip(&r).map(|(a, r)| a * r).sum()
    }

    /// `R_n(x) / prod (x - r_i)`, by pointwise division (singular at the `r_i`).
    pub fn eval_by_division(&self, x: f64) -> f64 {
        jacobi_eval(self.alpha, self.n, x) / self.divided.iter().map(|r| x - r).product::<f64>()
    }

    /// `p(1) = sum_s a_s`, the scale of the coefficients.
    pub fn scale(&self) -> f64 {
        self.expansion.iter().sum()
    }

    /// Smallest coefficient relative to the scale.
    pub fn min_relative_coefficient(&self) -> f64 {
        self.expansion.iter().copied().fold(f64::INFINITY, f64::min) / self.scale()
    }
}

/// Expansion `sum_s a_s R_s` of a polynomial of degree at most `deg`, by
/// Gauss-Jacobi projection at `deg + 1` nodes.
pub fn project(alpha: f64, deg: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let rule = gauss_jacobi(deg + 1, alpha, alpha);
    let mut num = vec![0.0; deg + 1];
    let mut den = vec![0.0; deg + 1];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let fx = f(x);
        for (s, r) in jacobi_all(alpha, deg, x).into_iter().enumerate() {
            num[s] += w * fx * r;
            den[s] += w * r * r;
        }
    }
    num.iter().zip(&den).map(|(n, d)| n / d).collect()
}

/// Divides `R_n` by its `k` largest zeros and expands the quotient in the
/// `R_s` basis. A coefficient below `-1e-10 p(1)` is a hard error.
pub fn divided_poly(alpha: f64, n: usize, k: usize) -> Result<DividedPoly> {
    if k > n {
        return Err(LoganError::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    let jp = JacobiPoly::new(alpha, n)?;
    let divided = jp.zeros[..k].to_vec();
    let quotient = |x: f64| jacobi_eval(alpha, n, x) / divided.iter().map(|r| x - r).product::<f64>();
    // n + 1 projection nodes interlace with the zeros of R_n, so the quotient is regular there
    let mut expansion = project(alpha, n, quotient);
    expansion.truncate(n - k + 1);
    let out = DividedPoly { n, k, alpha, divided, expansion };
    let scale = out.scale();
    if let Some((s, a)) = out.expansion.iter().enumerate().find(|(_, &a)| a < -COEFFICIENT_TOL * scale) {
        return Err(LoganError::SignViolation(format!(
            "a_{s} = {a:e} < 0 (scale {scale:e}) for alpha = {alpha}, n = {n}, k = {k}"
        )));
    }
    Ok(out)
}

/// Product-formula translation on `[-1,1]`:
/// `c_alpha int_0^pi f(theta rho + sqrt(1-theta^2) sqrt(1-rho^2) cos phi) sin^{2 alpha} phi d phi`,
/// with `u = cos phi` and Gauss-Jacobi nodes for `(1-u^2)^{alpha-1/2}`;
/// `nodes` should exceed half the degree of `f` for exactness.
pub fn translate_interval_with(alpha: f64, theta: f64, f: &dyn Fn(f64) -> f64, rho: f64, nodes: usize) -> f64 {
    let c = theta * rho;
    let s = ((1.0 - theta * theta).max(0.0) * (1.0 - rho * rho).max(0.0)).sqrt();
    if s == 0.0 {
        return f(c);
    }
    if alpha == -0.5 {
        return 0.5 * (f(c + s) + f(c - s));
    }
    let e = alpha - 0.5;
    let rule = gauss_jacobi(nodes, e, e);
    let sum: f64 = rule.nodes.iter().zip(&rule.weights).map(|(&u, &w)| w * f(c + s * u)).sum();
    poisson_constant(alpha) * sum
}

/// [`translate_interval_with`] with node counts grown until two rules agree.
pub fn translate_interval(alpha: f64, theta: f64, f: &dyn Fn(f64) -> f64, rho: f64) -> f64 {
    let mut n = 16;
    let mut prev = translate_interval_with(alpha, theta, f, rho, n);
    while n < 1024 {
        n *= 2;
        let cur = translate_interval_with(alpha, theta, f, rho, n);
        if (cur - prev).abs() <= 1e-14 * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// The matrix `(tau^{theta_i} p_{n-k}(theta_j))`, symmetrized, scaled by `factor`.
fn interval_gram(p: &DividedPoly, thetas: &[f64], factor: f64) -> DMatrix<f64> {
    let deg = p.expansion.len() - 1;
    let nodes = deg / 2 + 2;
    let f = |x: f64| p.eval(x);
    let n = thetas.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let a = translate_interval_with(p.alpha, thetas[i], &f, thetas[j], nodes);
            let b = translate_interval_with(p.alpha, thetas[j], &f, thetas[i], nodes);
            let v = 0.5 * (a + b) * factor;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Smallest eigenvalue of `(tau^{theta_i} p_{n-k}(theta_j))` relative to the
/// matrix norm (largest absolute eigenvalue bound by the Frobenius norm).
pub fn gram_psd_interval(alpha: f64, n: usize, k: usize, thetas: &[f64]) -> Result<f64> {
    if thetas.is_empty() || thetas.iter().any(|t| !(t.abs() <= 1.0)) {
        return Err(LoganError::InvalidArgument("points must lie in [-1, 1]".into()));
    }
    let p = divided_poly(alpha, n, k)?;
    let m = interval_gram(&p, thetas, 1.0);
    let norm = m.norm();
    Ok(min_eigenvalue(m)? / norm.max(1e-300))
}

/// `g_k(y) = j_alpha(y) / ((q_1^2 - y^2) ... (q_k^2 - y^2))`.
pub fn g_k(alpha: f64, k: usize, y: f64) -> Result<f64> {
    if k == 0 {
        return Ok(j_raw(alpha, y));
    }
    let order = Order::new(alpha)?;
    let g = ExtremalFunction::g(order, k - 1)?;
    let prod: f64 = g.zeros().iter().map(|q| q * q).product();
    Ok(g.eval(y) / prod)
}

/// `sup_y |(2n^2)^{-k} p_{n-k}(1 - y^2/(2n^2)) - g_k(y)|` over the grid.
pub fn mehler_heine_check(alpha: f64, k: usize, n: usize, y_grid: &[f64]) -> Result<f64> {
    let p = divided_poly(alpha, n, k)?;
    let s = 2.0 * (n as f64).powi(2);
    let scale = s.powi(-(k as i32));
    let mut worst: f64 = 0.0;
    for &y in y_grid {
        let lhs = scale * p.eval(1.0 - y * y / s);
        worst = worst.max((lhs - g_k(alpha, k, y)?).abs());
    }
    Ok(worst)
}

/// `2n^2 (1 - r_{i,n}) - q_i^2` for `i = 1..=count`; tends to 0 with n.
pub fn zero_scaling_errors(alpha: f64, n: usize, count: usize) -> Result<Vec<f64>> {
    let jp = JacobiPoly::new(alpha, n)?;
    let q = zeros(Order::new(alpha)?, count)?;
    let s = 2.0 * (n as f64).powi(2);
    Ok((0..count).map(|i| s * (1.0 - jp.zeros[i]) - q.zeros()[i].powi(2)).collect())
}

/// Entrywise comparison of the scaled interval Gram with the half-line Gram.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramLimit {
    /// Degree n.
    pub n: usize,
    /// `(2n^2)^{-k} tau^{theta_i} p_{n-k}(theta_j)` with `theta_i = sqrt(1 - (x_i/n)^2)`.
    pub interval: Vec<Vec<f64>>,
    /// `T^{x_i} g_k(x_j)`.
    pub half_line: Vec<Vec<f64>>,
    /// Largest entrywise difference.
    pub max_error: f64,
}

/// The interval Gram at `theta_i = sqrt(1 - (x_i/n)^2)`, scaled by
/// `(2n^2)^{-k}`, against the half-line Gram of `g_k`.
pub fn gram_limit(alpha: f64, k: usize, n: usize, xs: &[f64]) -> Result<GramLimit> {
    if xs.iter().any(|&x| !(x >= 0.0 && x <= n as f64)) {
        return Err(LoganError::InvalidArgument("points must lie in [0, n]".into()));
    }
    let p = divided_poly(alpha, n, k)?;
    let s = 2.0 * (n as f64).powi(2);
    let thetas: Vec<f64> = xs.iter().map(|x| (1.0 - (x / n as f64).powi(2)).sqrt()).collect();
    let im = interval_gram(&p, &thetas, s.powi(-(k as i32)));
    let order = Order::new(alpha)?;
    let measure = Measure::new(order);
    let prof = if k == 0 {
        RadialProfile::bessel(order, 1.0)
    } else {
        let g = ExtremalFunction::g(order, k - 1)?;
        let prod: f64 = g.zeros().iter().map(|q| q * q).product();
        let base = g.to_profile();
        RadialProfile::new(move |t| base.value(t) / prod).analytic().with_half_period(std::f64::consts::PI)
    };
    let n_pts = xs.len();
    let mut interval = vec![vec![0.0; n_pts]; n_pts];
    let mut half_line = vec![vec![0.0; n_pts]; n_pts];
    let mut max_error: f64 = 0.0;
    for i in 0..n_pts {
        for j in 0..n_pts {
            interval[i][j] = im[(i, j)];
            half_line[i][j] = translate(&measure, xs[i], &prof, xs[j]);
            max_error = max_error.max((interval[i][j] - half_line[i][j]).abs());
        }
    }
    Ok(GramLimit { n, interval, half_line, max_error })
}

/// Partial sums of the dominating series
/// `sum_{s,l} (L^2/4)^{s+l} / (Gamma(s+l+2) Gamma(s+l+alpha+2))`, grouped by
/// `s + l = m`; they increase and stay below `e^{L^2/4}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeCertificate {
    /// Interval length L.
    pub l: f64,
    /// Partial sums through `s + l = 0, 1, ...`.
    pub partial_sums: Vec<f64>,
    /// `e^{L^2/4}`.
    pub envelope: f64,
    /// Partial sums are nondecreasing and below the envelope.
    pub passed: bool,
}

/// Builds the envelope certificate with `terms` diagonal groups.
pub fn envelope_certificate(alpha: f64, l: f64, terms: usize) -> Result<EnvelopeCertificate> {
    check_alpha(alpha)?;
    let z = l * l / 4.0;
    let mut partial_sums = Vec::with_capacity(terms);
    let mut acc = 0.0;
    // t_m = z^m / (Gamma(m+2) Gamma(m+alpha+2)); m + 1 pairs (s, l) share s + l = m
    let mut t = 1.0 / gamma(alpha + 2.0);
    for m in 0..terms {
        if m > 0 {
            t *= z / ((m as f64 + 1.0) * (m as f64 + alpha + 1.0));
        }
        acc += (m as f64 + 1.0) * t;
        partial_sums.push(acc);
    }
    let envelope = z.exp();
    let passed = partial_sums.windows(2).all(|w| w[1] >= w[0]) && partial_sums.iter().all(|&s| s <= envelope);
    Ok(EnvelopeCertificate { l, partial_sums, envelope, passed })
}

/// `j_alpha(y) / (q^2 - y^2)` for a zero `q` of `j_alpha`, summed from the
/// double series `(1/4) sum_{s,l} Gamma(alpha+1) (-y^2/4)^s (-q^2/4)^l /
/// (Gamma(s+l+2) Gamma(s+l+alpha+2))` through `s + l < terms`.
pub fn quotient_double_series(alpha: f64, q: f64, y: f64, terms: usize) -> f64 {
    let (a, b) = (-y * y / 4.0, -q * q / 4.0);
    let ga = gamma(alpha + 1.0);
    let mut total = 0.0;
    // c_m = 1 / (Gamma(m+2) Gamma(m+alpha+2))
    let mut c = 1.0 / gamma(alpha + 2.0);
    for m in 0..terms {
        if m > 0 {
            c /= (m as f64 + 1.0) * (m as f64 + alpha + 1.0);
        }
        // sum_{s+l=m} a^s b^l
        let mut diag = 0.0;
        let mut pa = 1.0;
        for s in 0..=m {
            diag += pa * b.powi((m - s) as i32);
            pa *= a;
        }
        total += diag * c;
    }
    0.25 * ga * total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_low_degrees() {
        for &a in &[-0.5, 0.0, 1.3] {
            assert_eq!(jacobi_eval(a, 0, 0.3), 1.0);
            assert!((jacobi_eval(a, 7, 1.0) - 1.0).abs() < 1e-14);
            assert_eq!(jacobi_eval(a, 1, 0.3), 0.3);
        }
    }

    #[test]
    fn legendre_two() {
        // alpha = 0 gives Legendre: P_2 = (3x^2 - 1)/2
        let x: f64 = 0.37;
        assert!((jacobi_eval(0.0, 2, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_oversized_degree_and_k() {
        assert!(JacobiPoly::new(0.0, MAX_DEGREE + 1).is_err());
        assert!(divided_poly(0.0, 3, 4).is_err());
    }
}
