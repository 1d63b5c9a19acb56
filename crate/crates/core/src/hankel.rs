//! The measure nu_alpha, the Hankel transform, Sonine lowering, and the
//! generalized translation and convolution on the half-line.

use crate::bessel::{b_alpha, j_raw, poisson_constant, zeros, Order};
use crate::error::{LoganError, Result};
use crate::gamma::ln_gamma;
use crate::quad::{adaptive, gauss_jacobi, tanh_sinh, Integral};
use crate::tails::{algebraic_tail, oscillatory_tail};
use nalgebra::{DMatrix, SymmetricEigen};
use std::f64::consts::PI;
use std::sync::Arc;

/// Relative accuracy target of transforms and translations.
pub const TRANSFORM_TOL: f64 = 1e-12;

/// The measure `d nu_alpha(t) = b_alpha t^{2 alpha + 1} dt` on the half-line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measure {
    order: Order,
    b_alpha: f64,
}

impl Measure {
    /// Measure of the given order.
    pub fn new(order: Order) -> Self {
        Measure { order, b_alpha: b_alpha(order.alpha()) }
    }

    /// Hankel order.
    pub fn order(&self) -> Order {
        self.order
    }

    /// Order as a float.
    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    /// `b_alpha = 1/(2^alpha Gamma(alpha+1))`.
    pub fn b_alpha(&self) -> f64 {
        self.b_alpha
    }

    /// Density `b_alpha t^{2 alpha + 1}`.
    pub fn density(&self, t: f64) -> f64 {
        let p = 2.0 * self.alpha() + 1.0;
        if p == 0.0 {
            self.b_alpha
        } else {
            self.b_alpha * t.abs().powf(p)
        }
    }
}

/// Regularity class of a profile, which selects the quadrature path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    /// Restriction of an even analytic function on its support.
    EvenAnalytic,
    /// Piecewise smooth with kinks only at the declared breakpoints.
    Piecewise,
}

/// A radial function on the half-line with the metadata quadrature needs.
#[derive(Clone)]
pub struct RadialProfile {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    support_bound: f64,
    decay_exponent: Option<f64>,
    breakpoints: Vec<f64>,
    smoothness: Smoothness,
    half_period: Option<f64>,
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("support_bound", &self.support_bound)
            .field("decay_exponent", &self.decay_exponent)
            .field("breakpoints", &self.breakpoints)
            .field("smoothness", &self.smoothness)
            .field("half_period", &self.half_period)
            .finish()
    }
}

impl RadialProfile {
    /// Piecewise smooth profile with unbounded support and no declared decay.
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        RadialProfile {
            eval: Arc::new(f),
            support_bound: f64::INFINITY,
            decay_exponent: None,
            breakpoints: Vec::new(),
            smoothness: Smoothness::Piecewise,
            half_period: None,
        }
    }

    /// Profile vanishing beyond `bound`; the evaluator is cut off there.
    pub fn compact<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F, bound: f64) -> Self {
        let mut p = RadialProfile::new(move |t: f64| if t.abs() <= bound { f(t) } else { 0.0 });
        p.support_bound = bound;
        p
    }

    /// Indicator function of `[0, a]`.
    pub fn indicator(a: f64) -> Self {
        RadialProfile::compact(|_| 1.0, a).analytic()
    }

    /// `exp(-t^2/2)`, a fixed point of every H_alpha. Its values fall below
    /// 1e-31 beyond t = 12, which is used as the effective support.
    pub fn gaussian() -> Self {
        RadialProfile::compact(|t: f64| (-0.5 * t * t).exp(), 12.0).analytic()
    }

    /// `j_alpha(lambda t)` as a profile of t.
    pub fn bessel(order: Order, lambda: f64) -> Self {
        let a = order.alpha();
        let mut p = RadialProfile::new(move |t| j_raw(a, lambda * t)).analytic();
        p.decay_exponent = Some(a + 0.5);
        if lambda > 0.0 {
            p.half_period = Some(PI / lambda);
        }
        p
    }

    /// Declares the profile even and analytic on its support.
    pub fn analytic(mut self) -> Self {
        self.smoothness = Smoothness::EvenAnalytic;
        self
    }

    /// Declares `|f(t)| = O(t^{-delta})` as t grows.
    pub fn with_decay(mut self, delta: f64) -> Self {
        self.decay_exponent = Some(delta);
        self
    }

    /// Declares interior points where the profile is not smooth.
    pub fn with_breakpoints(mut self, mut pts: Vec<f64>) -> Self {
        pts.sort_by(f64::total_cmp);
        self.breakpoints = pts;
        self
    }

    /// Declares the half period of the profile's oscillation at infinity.
    pub fn with_half_period(mut self, h: f64) -> Self {
        self.half_period = Some(h);
        self
    }

    /// Value at t (the profile is even).
    pub fn value(&self, t: f64) -> f64 {
        (self.eval)(t.abs())
    }

    /// Support bound (infinite when unbounded).
    pub fn support_bound(&self) -> f64 {
        self.support_bound
    }

    /// Declared algebraic decay exponent.
    pub fn decay_exponent(&self) -> Option<f64> {
        self.decay_exponent
    }

    /// Declared breakpoints.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Regularity class.
    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    /// Declared oscillation half period.
    pub fn half_period(&self) -> Option<f64> {
        self.half_period
    }

    /// The dilation `t -> f(a t)` with metadata rescaled.
    pub fn dilate(&self, a: f64) -> Self {
        let f = self.eval.clone();
        RadialProfile {
            eval: Arc::new(move |t| f(a * t)),
            support_bound: self.support_bound / a,
            decay_exponent: self.decay_exponent,
            breakpoints: self.breakpoints.iter().map(|b| b / a).collect(),
            smoothness: self.smoothness,
            half_period: self.half_period.map(|h| h / a),
        }
    }
}

fn gauss_jacobi_sum<F: Fn(f64) -> f64>(n: usize, a: f64, b: f64, f: &F) -> (f64, f64) {
    let r = gauss_jacobi(n, a, b);
    let mut s = 0.0;
    let mut sa = 0.0;
    for (x, w) in r.nodes.iter().zip(&r.weights) {
        let v = w * f(*x);
        s += v;
        sa += v.abs();
    }
    (s, sa)
}

const RULE_SIZES: [usize; 12] = [16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768];

/// Gauss-Jacobi over growing node counts until two successive rules agree.
fn converged_gauss_jacobi<F: Fn(f64) -> f64>(n0: usize, a: f64, b: f64, f: &F) -> Integral {
    let mut idx = RULE_SIZES.iter().position(|&n| n >= n0).unwrap_or(RULE_SIZES.len() - 2);
    idx = idx.min(RULE_SIZES.len() - 2);
    let (mut prev, _) = gauss_jacobi_sum(RULE_SIZES[idx], a, b, f);
    let mut prev_err = f64::INFINITY;
    loop {
        idx += 1;
        let (cur, abs) = gauss_jacobi_sum(RULE_SIZES[idx], a, b, f);
        let err = (cur - prev).abs();
        let scale = abs.max(1e-300);
        // stop at the target, or once the differences sit at the noise floor
        // of an integrand that is itself only accurate to ~1e-13
        let floor = err <= 1e-12 * scale && err >= 0.25 * prev_err;
        if err <= 4e-15 * scale || floor || idx + 1 == RULE_SIZES.len() {
            return Integral { value: cur, error: err, abs_value: abs };
        }
        prev = cur;
        prev_err = err;
    }
}

/// Integral of `g(t) t^{2 alpha+1}` over `[0, b]` for `g` even analytic,
/// by Gauss-Jacobi quadrature in `u = (t/b)^2` with weight `u^alpha`.
fn origin_weighted_analytic<F: Fn(f64) -> f64>(alpha: f64, b: f64, oscillation: f64, g: &F) -> Integral {
    let n0 = 24 + (1.2 * oscillation * b).ceil() as usize;
    // u = (1+x)/2, t = b sqrt(u); int_0^b g t^{2a+1} dt = b^{2a+2}/2 int_0^1 g(b sqrt u) u^a du
    let scale = 0.5 * b.powf(2.0 * alpha + 2.0) * 0.5_f64.powf(alpha + 1.0);
    let f = |x: f64| g(b * (0.5 * (1.0 + x)).max(0.0).sqrt());
    let r = converged_gauss_jacobi(n0, 0.0, alpha, &f);
    Integral { value: scale * r.value, error: scale * r.error, abs_value: scale * r.abs_value }
}

/// Integral of `g(t) t^{2 alpha+1}` over `[a, b]` split at `pts`, with the
/// first piece done by tanh-sinh when it touches the origin.
pub(crate) fn weighted_pieces<F: Fn(f64) -> f64>(alpha: f64, pts: &[f64], g: &F, tol: f64) -> Integral {
    let p = 2.0 * alpha + 1.0;
    let w = |t: f64| if p == 0.0 { 1.0 } else { t.powf(p) };
    let mut out = Integral::default();
    for win in pts.windows(2) {
        let (a, b) = (win[0], win[1]);
        if b <= a {
            continue;
        }
        let r = if a == 0.0 {
            tanh_sinh(|t, _, _| g(t) * w(t), a, b, tol)
        } else {
            adaptive(|t| g(t) * w(t), a, b, 0.0, tol)
        };
        out = out + r;
    }
    out
}

pub(crate) fn panel_points(start: f64, end: f64, extra: &[f64], spacing: Option<f64>) -> Vec<f64> {
    let mut pts = vec![start, end];
    pts.extend(extra.iter().copied().filter(|&x| x > start && x < end));
    if let Some(h) = spacing {
        let mut x = start + h;
        while x < end {
            pts.push(x);
            x += h;
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (1.0 + b.abs()));
    pts
}

/// `H_alpha(f)(lambda) = int_0^inf f(t) j_alpha(lambda t) d nu_alpha(t)`
/// with an error estimate.
///
/// Compact profiles are integrated panel by panel between zeros of
/// `j_alpha(lambda .)` (Gauss-Jacobi for analytic profiles). Unbounded
/// profiles need a declared decay exponent above `2 alpha + 2`; their tails
/// are summed over half-period panels with acceleration, or by an algebraic
/// substitution when nothing oscillates.
pub fn hankel_transform_detailed(measure: &Measure, f: &RadialProfile, lambda: f64) -> Result<Integral> {
    let alpha = measure.alpha();
    let lambda = lambda.abs();
    let b = measure.b_alpha();
    let g = |t: f64| f.value(t) * j_raw(alpha, lambda * t);
    let tol = TRANSFORM_TOL;
    let support = f.support_bound();
    let scaled = |r: Integral| Integral { value: b * r.value, error: b * r.error, abs_value: b * r.abs_value };
    if support.is_finite() {
        if f.smoothness() == Smoothness::EvenAnalytic && f.breakpoints().is_empty() {
            return Ok(scaled(origin_weighted_analytic(alpha, support, lambda, &g)));
        }
        let spacing = (lambda > 0.0).then(|| PI / lambda);
        let pts = panel_points(0.0, support, f.breakpoints(), spacing);
        return Ok(scaled(weighted_pieces(alpha, &pts, &g, tol)));
    }
    let delta = f.decay_exponent().ok_or_else(|| {
        LoganError::NotIntegrable("profile has unbounded support and no declared decay exponent".into())
    })?;
    if delta <= 2.0 * alpha + 2.0 {
        return Err(LoganError::NotIntegrable(format!(
            "decay exponent {delta} does not exceed 2 alpha + 2 = {}",
            2.0 * alpha + 2.0
        )));
    }
    let freq = lambda + f.half_period().map(|h| PI / h).unwrap_or(0.0);
    let mut head_end = 40.0_f64;
    if let Some(&last) = f.breakpoints().last() {
        head_end = head_end.max(last + 1.0);
    }
    if freq > 0.0 {
        head_end = head_end.max(20.0 * PI / freq);
    }
    let spacing = (freq > 0.0).then(|| PI / freq);
    let pts = panel_points(0.0, head_end, f.breakpoints(), spacing);
    let head = weighted_pieces(alpha, &pts, &g, tol);
    let p = 2.0 * alpha + 1.0;
    let tail_f = |t: f64| g(t) * t.powf(p);
    let tail = if freq > 0.0 {
        oscillatory_tail(tail_f, head_end, PI / freq, tol)
    } else {
        algebraic_tail(tail_f, head_end, tol)
    };
    Ok(scaled(head + tail))
}

/// `H_alpha(f)(lambda)`.
pub fn hankel_transform(measure: &Measure, f: &RadialProfile, lambda: f64) -> Result<f64> {
    hankel_transform_detailed(measure, f, lambda).map(|r| r.value)
}

/// The profile `lambda -> H_alpha(f)(lambda)` evaluated lazily, carrying the
/// support/decay/oscillation metadata supplied for the transform.
pub fn transform_profile(measure: &Measure, f: &RadialProfile, shape: &RadialProfile) -> RadialProfile {
    let m = *measure;
    let f = f.clone();
    let inner = move |l: f64| hankel_transform(&m, &f, l).unwrap_or(f64::NAN);
    RadialProfile {
        eval: Arc::new(inner),
        support_bound: shape.support_bound,
        decay_exponent: shape.decay_exponent,
        breakpoints: shape.breakpoints.clone(),
        smoothness: shape.smoothness,
        half_period: shape.half_period,
    }
}

/// Largest `|H_alpha(H_alpha(f))(t) - f(t)|` over the grid. `shape`
/// describes the transform (support, decay, oscillation); its evaluator is
/// ignored.
pub fn inverse_check(measure: &Measure, f: &RadialProfile, shape: &RadialProfile, grid: &[f64]) -> Result<f64> {
    let h = transform_profile(measure, f, shape);
    let mut worst: f64 = 0.0;
    for &t in grid {
        let back = hankel_transform(measure, &h, t)?;
        worst = worst.max((back - f.value(t)).abs());
    }
    Ok(worst)
}

/// `H_alpha(f)(t)` recovered from `H_beta(f)` (beta > alpha) by Sonine's
/// kernel: `1/(2^{beta-alpha-1} Gamma(beta-alpha)) int_t^inf s (s^2-t^2)^{beta-alpha-1} H_beta(f)(s) ds`.
pub fn sonine_lower(measure_alpha: &Measure, measure_beta: &Measure, hbeta_f: &RadialProfile, t: f64) -> Result<f64> {
    let kappa = measure_beta.alpha() - measure_alpha.alpha();
    if kappa <= 0.0 {
        return Err(LoganError::InvalidArgument(format!(
            "Sonine lowering needs beta > alpha (beta - alpha = {kappa})"
        )));
    }
    let t = t.abs();
    let support = hbeta_f.support_bound();
    if t >= support {
        return Ok(0.0);
    }
    let norm = (-(kappa - 1.0) * std::f64::consts::LN_2 - ln_gamma(kappa)).exp();
    let e = kappa - 1.0;
    let kernel = |s: f64, ds: f64| {
        // s^2 - t^2 = (s - t)(s + t), with s - t passed in exactly
        let k = if e == 0.0 { 1.0 } else { ds.powf(e) * (s + t).powf(e) };
        s * k * hbeta_f.value(s)
    };
    let end = if support.is_finite() { support } else { t + 40.0 };
    let mut pts = panel_points(t, end, hbeta_f.breakpoints(), hbeta_f.half_period());
    if pts.len() < 2 {
        pts = vec![t, end];
    }
    let mut total = Integral::default();
    for (i, w) in pts.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let r = if i == 0 {
            tanh_sinh(|s, da, _| kernel(s, da), a, b, TRANSFORM_TOL)
        } else {
            adaptive(|s| kernel(s, s - t), a, b, 0.0, TRANSFORM_TOL)
        };
        total = total + r;
    }
    if !support.is_finite() {
        let delta = hbeta_f.decay_exponent().ok_or_else(|| {
            LoganError::NotIntegrable("transform has unbounded support and no declared decay".into())
        })?;
        let grow = 2.0 * kappa - 1.0;
        let tail_f = |s: f64| kernel(s, s - t);
        let tail = match hbeta_f.half_period() {
            Some(h) if delta > grow - 1.0 => oscillatory_tail(tail_f, end, h, TRANSFORM_TOL),
            None if delta > grow + 1.0 => algebraic_tail(tail_f, end, TRANSFORM_TOL),
            _ => {
                return Err(LoganError::NotIntegrable(format!(
                    "kernel grows like s^{grow} and the transform decays like s^-{delta}"
                )))
            }
        };
        total = total + tail;
    }
    Ok(norm * total.value)
}

/// Generalized translation `T^t f(x)`.
///
/// For alpha = -1/2 this is `(f(x+t) + f(|x-t|))/2`; otherwise it is the
/// Gegenbauer average `c_alpha int_0^pi f(sqrt(x^2+t^2-2xt cos th)) sin^{2 alpha} th d th`,
/// computed in `u = cos th` by Gauss-Gegenbauer quadrature for analytic
/// profiles and by tanh-sinh on pieces split at the support edge and
/// breakpoints otherwise.
pub fn translate(measure: &Measure, t: f64, f: &RadialProfile, x: f64) -> f64 {
    let alpha = measure.alpha();
    let (t, x) = (t.abs(), x.abs());
    if t == 0.0 {
        return f.value(x);
    }
    if x == 0.0 {
        return f.value(t);
    }
    if alpha == -0.5 {
        return 0.5 * (f.value(x + t) + f.value((x - t).abs()));
    }
    let c = poisson_constant(alpha);
    let e = alpha - 0.5;
    let d2 = (x - t) * (x - t);
    let xt2 = 2.0 * x * t;
    // radius^2 = (x-t)^2 + 2xt(1-u)
    let radius = |one_minus_u: f64| (d2 + xt2 * one_minus_u).max(0.0).sqrt();
    let support = f.support_bound();
    let inside_all = x + t <= support;
    if f.smoothness() == Smoothness::EvenAnalytic && f.breakpoints().is_empty() && inside_all {
        let n0 = 16 + (1.5 * (x + t) / f.half_period().unwrap_or(PI)).ceil() as usize * 2;
        let r = converged_gauss_jacobi(n0, e, e, &|u: f64| f.value(radius(1.0 - u)));
        return c * r.value;
    }
    // split [-1, 1] in u where the radius crosses the support edge or a breakpoint
    let mut cuts: Vec<f64> = f
        .breakpoints()
        .iter()
        .copied()
        .chain(std::iter::once(support))
        .filter(|r| r.is_finite())
        .map(|r| 1.0 - (r * r - d2) / xt2)
        .filter(|u| *u > -1.0 && *u < 1.0)
        .collect();
    cuts.push(-1.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        if radius(1.0 - mid) > support {
            continue;
        }
        let r = tanh_sinh(
            |u, da, db| {
                // (1 - u^2) = (1 - u)(1 + u), each factor from an exact distance when available
                let one_minus = if b == 1.0 { db } else { 1.0 - u };
                let one_plus = if a == -1.0 { da } else { 1.0 + u };
                f.value(radius(one_minus)) * (one_minus * one_plus).powf(e)
            },
            a,
            b,
            1e-14,
        );
        total += r.value;
    }
    c * total
}

/// Generalized convolution `(f1 *_alpha f2)(x) = int T^t f1(x) f2(t) d nu_alpha(t)`
/// for compactly supported profiles.
pub fn convolve(measure: &Measure, f1: &RadialProfile, f2: &RadialProfile, x: f64) -> Result<f64> {
    let (a1, a2) = (f1.support_bound(), f2.support_bound());
    if !a1.is_finite() || !a2.is_finite() {
        return Err(LoganError::InvalidArgument("convolution needs compactly supported profiles".into()));
    }
    let x = x.abs();
    if x > a1 + a2 {
        return Ok(0.0);
    }
    let alpha = measure.alpha();
    let g = |t: f64| translate(measure, t, f1, x) * f2.value(t);
    let mut extra: Vec<f64> = vec![(x - a1).abs(), x + a1];
    extra.extend_from_slice(f2.breakpoints());
    for &bp in f1.breakpoints() {
        extra.push((x - bp).abs());
        extra.push(x + bp);
    }
    let pts = panel_points(0.0, a2, &extra, None);
    let r = weighted_pieces(alpha, &pts, &g, 1e-11);
    Ok(measure.b_alpha() * r.value)
}

/// The matrix `(T^{x_i} f(x_j))`, symmetrized.
pub fn gram_matrix(measure: &Measure, f: &RadialProfile, points: &[f64]) -> DMatrix<f64> {
    let n = points.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = if i == j {
                translate(measure, points[i], f, points[i])
            } else {
                let a = translate(measure, points[i], f, points[j]);
                let b = translate(measure, points[j], f, points[i]);
                0.5 * (a + b)
            };
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Smallest eigenvalue of a symmetric matrix, via Householder
/// tridiagonalization and implicit QR.
pub fn min_eigenvalue(m: DMatrix<f64>) -> Result<f64> {
    let eig = SymmetricEigen::try_new(m, 1e-15, 10_000)
        .ok_or_else(|| LoganError::NoConvergence("symmetric eigen-solver did not converge".into()))?;
    let v = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(LoganError::NoConvergence("non-finite eigenvalue".into()))
    }
}

/// Smallest eigenvalue of the Gram matrix `(T^{x_i} f(x_j))`.
pub fn psd_gram(measure: &Measure, f: &RadialProfile, points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(LoganError::InvalidArgument("at least one point is required".into()));
    }
    min_eigenvalue(gram_matrix(measure, f, points))
}

/// Two points straddling the sign change of the truncated eigenfunction
/// `j_alpha(q_2 t) chi_[0,1](t)` at which its 2x2 Gram matrix has a negative
/// eigenvalue, found by a grid search; returns `(x1, x2, min_eigenvalue)`.
///
/// The untruncated `j_alpha(q_2 .)` cannot serve here: its translates
/// factor as `j(q_2 x) j(q_2 y)`, so every Gram matrix is rank one and
/// positive semidefinite.
pub fn gram_counterexample(measure: &Measure) -> Result<(f64, f64, f64)> {
    let q2 = zeros(measure.order(), 2)?.q(2);
    let a = measure.alpha();
    let f = RadialProfile::compact(move |t| j_raw(a, q2 * t), 1.0);
    let first = zeros(measure.order(), 1)?.q(1) / q2;
    let mut best = (0.0, 0.0, f64::INFINITY);
    for i in 0..=20 {
        for j in 0..=20 {
            let x1 = i as f64 * 0.05 * first;
            let x2 = first + j as f64 * 0.1;
            let v = psd_gram(measure, &f, &[x1, x2])?;
            if v < best.2 {
                best = (x1, x2, v);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: f64) -> Measure {
        Measure::new(Order::new(a).unwrap())
    }

    #[test]
    fn indicator_transform() {
        for &a in &[-0.5, 0.0, 0.7, 2.5] {
            let mu = m(a);
            let chi = RadialProfile::indicator(1.0);
            let h0 = hankel_transform(&mu, &chi, 0.0).unwrap();
            assert!((h0 - b_alpha(a + 1.0)).abs() < 1e-14);
            for &l in &[0.5, 3.0, 17.0, 60.0] {
                let h = hankel_transform(&mu, &chi, l).unwrap();
                let e = b_alpha(a + 1.0) * j_raw(a + 1.0, l);
                assert!((h - e).abs() < 1e-12, "a={a} l={l} {h} {e}");
            }
        }
    }

    #[test]
    fn piecewise_and_analytic_paths_agree() {
        let mu = m(0.3);
        let an = RadialProfile::compact(|t: f64| 1.0 - t * t, 1.5).analytic();
        let pw = RadialProfile::compact(|t: f64| 1.0 - t * t, 1.5);
        for &l in &[0.0, 2.0, 11.0] {
            let a = hankel_transform(&mu, &an, l).unwrap();
            let b = hankel_transform(&mu, &pw, l).unwrap();
            assert!((a - b).abs() < 1e-12, "l={l} {a} {b}");
        }
    }

    #[test]
    fn unbounded_profiles_need_decay() {
        let mu = m(0.0);
        let f = RadialProfile::new(|t: f64| 1.0 / (1.0 + t * t));
        assert!(matches!(hankel_transform(&mu, &f, 1.0), Err(LoganError::NotIntegrable(_))));
        let f = f.with_decay(2.0);
        assert!(matches!(hankel_transform(&mu, &f, 1.0), Err(LoganError::NotIntegrable(_))));
    }

    #[test]
    fn unbounded_algebraic_transform() {
        // alpha = -1/2: int (1+t^2)^-1 cos(l t) sqrt(2/pi) dt = sqrt(pi/2) e^{-l}
        let mu = m(-0.5);
        let f = RadialProfile::new(|t: f64| 1.0 / (1.0 + t * t)).analytic().with_decay(2.0);
        for &l in &[0.0, 0.5, 2.0] {
            let e = (PI / 2.0).sqrt() * (-l as f64).exp();
            let h = hankel_transform(&mu, &f, l).unwrap();
            assert!((h - e).abs() < 1e-10, "l={l} {h} {e}");
        }
    }

    #[test]
    fn translation_basics() {
        let mu = m(-0.5);
        let c = RadialProfile::new(|t: f64| t.cos()).analytic();
        assert!(translate(&mu, PI / 2.0, &c, PI / 2.0).abs() < 1e-15);
        let mu = m(1.2);
        let f = RadialProfile::gaussian();
        assert_eq!(translate(&mu, 0.0, &f, 0.7), f.value(0.7));
        // product formula for the kernel
        for &(l, t, x) in &[(1.0, 0.3, 2.0), (2.5, 1.7, 0.4), (0.8, 6.0, 5.0)] {
            let jb = RadialProfile::bessel(Order::new(1.2).unwrap(), l);
            let v = translate(&mu, t, &jb, x);
            let e = j_raw(1.2, l * t) * j_raw(1.2, l * x);
            assert!((v - e).abs() < 1e-12, "{v} {e}");
        }
    }

    #[test]
    fn translation_of_indicator_matches_piecewise_route() {
        // the compact indicator goes through tanh-sinh pieces; compare with
        // the Gauss-Gegenbauer route applied to a smooth function with the
        // same values inside the support
        let mu = m(0.4);
        let chi = RadialProfile::indicator(1.0);
        let v = translate(&mu, 0.2, &chi, 0.3);
        assert!((v - 1.0).abs() < 1e-13);
        assert_eq!(translate(&mu, 0.6, &chi, 1.7), 0.0);
        let v = translate(&mu, 0.7, &chi, 0.6);
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn gram_examples() {
        let mu = m(0.5);
        let f = RadialProfile::gaussian();
        assert!((psd_gram(&mu, &f, &[0.0]).unwrap() - 1.0).abs() < 1e-15);
        let (_, _, v) = gram_counterexample(&m(0.0)).unwrap();
        assert!(v < -1e-3);
        assert!(psd_gram(&mu, &f, &[]).is_err());
    }

    #[test]
    fn sonine_rejects_bad_orders() {
        let chi = RadialProfile::indicator(1.0);
        assert!(sonine_lower(&m(1.0), &m(1.0), &chi, 0.5).is_err());
        assert_eq!(sonine_lower(&m(0.0), &m(1.0), &chi, 2.0).unwrap(), 0.0);
    }
}
