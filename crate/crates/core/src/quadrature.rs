//! Gauss and Radau quadrature at Bessel zeros, exact for even entire
//! functions of exponential type `tau` integrable against `nu_alpha`.
//!
//! Gauss: `(tau/2)^{2 alpha+2} int f d nu_alpha = sum_k gamma_k f(2 q_{alpha,k} / tau)`.
//!
//! Radau: `sum_{l<r} alpha_{l,r} f^{(2l)}(0) + sum_k gamma_{k,r} f(2 q_{alpha+r,k} / tau)`.
//!
//! Weights are computed, not transcribed. `gamma_k` is the integral of the
//! localized test function `phi_k = j_alpha^2 / (1 - x^2/q_k^2)^2`, which
//! vanishes at every node but the k-th, divided by `phi_k(q_k)`. Radau rules
//! follow by applying the Gauss rule of order `alpha + r` to
//! `x^{-2r} (f - j_{alpha+r}^2 T)`, with `T` the even Taylor polynomial of
//! `f / j_{alpha+r}^2` of degree `2r - 2`.

use crate::bessel::{b_alpha, j_raw, series_coefficient, zeros, Order, ZeroQuotient};
use crate::error::{LoganError, Result};
use crate::hankel::{panel_points, weighted_pieces};
use crate::quad::Integral;
use crate::tails::{j_squared_tail, min_start};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{Mutex, OnceLock};

/// Relative accuracy requested from each weight integral.
pub const WEIGHT_TOL: f64 = 1e-14;

/// Largest supported number of origin terms in a Radau rule.
pub const MAX_RADAU_R: usize = 3;

type WeightCache = Mutex<HashMap<u64, Vec<(f64, f64)>>>;

fn weight_cache() -> &'static WeightCache {
    static CACHE: OnceLock<WeightCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `int_0^inf g(x) x^{2 alpha+1} j_beta(x)^2 dx` with `g` smooth, split into
/// a panelled head on `[0, end]` and an asymptotic tail.
fn weighted_j_squared<G: Fn(f64) -> f64>(alpha: f64, beta: f64, g: &G, end: f64, tol: f64) -> Integral {
    let end = end.max(min_start(beta));
    let pts = panel_points(0.0, end, &[], Some(FRAC_PI_2));
    let head_f = |x: f64| {
        let j = j_raw(beta, x);
        g(x) * j * j
    };
    let head = weighted_pieces(alpha, &pts, &head_f, tol);
    let p = 2.0 * alpha + 1.0;
    let tail = j_squared_tail(beta, |x| g(x) * x.powf(p), end, tol);
    head + tail
}

/// `int_0^inf x^{2l} j_beta(x)^2 d nu_alpha` by direct integration, the
/// reference value for checking the rules.
pub fn square_moment(order: Order, beta: f64, l: u32) -> f64 {
    let alpha = order.alpha();
    let li = l as i32;
    b_alpha(alpha) * weighted_j_squared(alpha, beta, &|x: f64| x.powi(2 * li), 40.0, WEIGHT_TOL).value
}

/// The localized test function `phi_k(x) = j_alpha(x)^2 / (1 - x^2/q^2)^2`.
pub fn localized_test_function(order: Order, q: f64, x: f64) -> Result<f64> {
    let zq = ZeroQuotient::new(order, q)?;
    let jx = j_raw(order.alpha(), x);
    let v = q * q * zq.eval_with(x, jx) / (q + x);
    Ok(v * v)
}

/// Weight `gamma_k` for the zero `q` and its relative error estimate.
fn gauss_weight(order: Order, q: f64) -> Result<(f64, f64)> {
    let alpha = order.alpha();
    let zq = ZeroQuotient::new(order, q)?;
    let quot = |x: f64| q * q * zq.eval_with(x, j_raw(alpha, x)) / (q + x);
    let q4 = q.powi(4);
    // phi_k / j^2 away from the node, used past the head
    let shape = |x: f64| {
        let d = q * q - x * x;
        q4 / (d * d)
    };
    let end = q + 30.0;
    let pts = panel_points(0.0, end.max(min_start(alpha)), &[q], Some(FRAC_PI_2));
    let head_f = |x: f64| {
        let v = quot(x);
        v * v
    };
    let head = weighted_pieces(alpha, &pts, &head_f, WEIGHT_TOL);
    let tail = j_squared_tail(alpha, |x| shape(x) * x.powf(2.0 * alpha + 1.0), *pts.last().unwrap(), WEIGHT_TOL);
    let integral = b_alpha(alpha) * (head + tail).value;
    let err = b_alpha(alpha) * (head + tail).error;
    let peak = {
        let v = 0.5 * q * zq.slope();
        v * v
    };
    let w = integral / peak;
    if !(w > 0.0) {
        return Err(LoganError::SignViolation(format!(
            "computed Gauss weight at node {q} is {w}; the quadrature is broken"
        )));
    }
    Ok((w, err / integral.abs()))
}

/// The first `count` Gauss weights at `tau = 2`, cached per order.
fn gauss_weights(order: Order, count: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let key = order.alpha().to_bits();
    let table = zeros(order, count)?;
    let have = weight_cache().lock().unwrap().get(&key).map_or(0, |v| v.len());
    if have < count {
        let fresh: Result<Vec<(f64, f64)>> =
            (have..count).into_par_iter().map(|i| gauss_weight(order, table.q(i + 1))).collect();
        let fresh = fresh?;
        let mut cache = weight_cache().lock().unwrap();
        let entry = cache.entry(key).or_default();
        if entry.len() == have {
            entry.extend(fresh);
        }
    }
    let cache = weight_cache().lock().unwrap();
    let all = &cache[&key][..count];
    let err = all.iter().map(|w| w.1).fold(0.0, f64::max);
    Ok((table.zeros()[..count].to_vec(), all.iter().map(|w| w.0).collect(), err))
}

/// Gauss rule with nodes `2 q_{alpha,k} / tau`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    order: Order,
    tau: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    weight_error: f64,
    tail_bound: f64,
}

impl GaussRule {
    /// The order alpha.
    pub fn order(&self) -> Order {
        self.order
    }

    /// Exponential type the rule is exact for.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Nodes in increasing order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Positive weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of nodes kept.
    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    /// Largest relative error estimate among the weight integrals.
    pub fn weight_error(&self) -> f64 {
        self.weight_error
    }

    /// Omitted tail `sum_{k > count} gamma_k x_k^{-2 alpha - 3}` for the
    /// slowest in-class envelope, estimated from the last node.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `int f d nu_alpha` from the rule, undoing the `(tau/2)^{2 alpha+2}` scale.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, decay: Option<f64>) -> RuleSum {
        let s = apply_gauss(self, f, decay);
        let scale = (2.0 / self.tau).powf(2.0 * self.order.alpha() + 2.0);
        RuleSum { value: s.value * scale, tail_bound: s.tail_bound * scale, terms: s.terms }
    }
}

fn envelope_tail(alpha: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let n = nodes.len();
    let (x, w) = (nodes[n - 1], weights[n - 1]);
    // terms behave like w (x_k/x)^{-2}; their sum past k = n is about w x / spacing
    let spacing = if n > 1 { x - nodes[n - 2] } else { x };
    w * x.powf(-2.0 * alpha - 3.0) * x / spacing
}

/// Builds the Gauss rule with `count` nodes.
pub fn gauss_rule(order: Order, tau: f64, count: usize) -> Result<GaussRule> {
    if count < 1 {
        return Err(LoganError::InvalidArgument("a Gauss rule needs at least one node".into()));
    }
    if !(tau > 0.0) {
        return Err(LoganError::InvalidArgument(format!("type tau must be positive, got {tau}")));
    }
    let (q, weights, weight_error) = gauss_weights(order, count)?;
    let nodes: Vec<f64> = q.iter().map(|q| 2.0 * q / tau).collect();
    let tail_bound = envelope_tail(order.alpha(), &nodes, &weights);
    Ok(GaussRule { order, tau, nodes, weights, weight_error, tail_bound })
}

/// A truncated node sum with its extrapolated tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RuleSum {
    /// Extrapolated value of the full series.
    pub value: f64,
    /// Estimated error of the extrapolation (or of plain truncation).
    pub tail_bound: f64,
    /// Number of series terms used.
    pub terms: usize,
}

/// Sum of a series whose terms behave like `(k + shift)^{-e0-1}` times a
/// power series in `1/(k + shift)`. Partial sums at `n, n/2, n/4, ...` are
/// fitted to `S + sum_j c_j (N + shift)^{-e0-j}`; the error estimate is the
/// change when the smallest partial sum is dropped. Without `e0` the plain
/// sum is returned with the last halving difference as error.
pub fn extrapolated_series(terms: &[f64], e0: Option<f64>, shift: f64) -> (f64, f64) {
    let n = terms.len();
    let partial = |m: usize| terms[..m].iter().sum::<f64>();
    let Some(e0) = e0 else {
        let s = partial(n);
        let half = partial(n / 2);
        return (s, (s - half).abs());
    };
    let mut sizes = vec![n];
    while sizes.len() < 5 && sizes.last().unwrap() / 2 >= 16 {
        let m = sizes.last().unwrap() / 2;
        sizes.push(m);
    }
    let sums: Vec<f64> = sizes.iter().map(|&m| partial(m)).collect();
    let fit = |k: usize| -> f64 {
        // uses the k largest partial sums
        let dim = k;
        let mut a = DMatrix::zeros(dim, dim);
        let mut rhs = DVector::zeros(dim);
        for i in 0..dim {
            let h = 1.0 / (sizes[i] as f64 + shift);
            a[(i, 0)] = 1.0;
            for j in 1..dim {
                a[(i, j)] = h.powf(e0 + (j - 1) as f64);
            }
            rhs[i] = sums[i];
        }
        a.lu().solve(&rhs).map_or(sums[0], |x| x[0])
    };
    if sizes.len() == 1 {
        return (sums[0], f64::INFINITY);
    }
    let best = fit(sizes.len());
    let prev = fit(sizes.len() - 1);
    (best, (best - prev).abs())
}

/// Node sum `sum_k w_k f(x_k)` extrapolated for a declared decay exponent
/// `delta` of `f` (`|f(x)| ~ x^{-delta}`) against the measure order `alpha`.
fn node_sum<F: Fn(f64) -> f64>(alpha: f64, node_order: f64, nodes: &[f64], weights: &[f64], f: F, decay: Option<f64>) -> RuleSum {
    let terms: Vec<f64> = nodes.iter().zip(weights).map(|(&x, &w)| w * f(x)).collect();
    if terms.iter().all(|&t| t == 0.0) {
        return RuleSum { value: 0.0, tail_bound: 0.0, terms: terms.len() };
    }
    let e0 = decay.map(|d| d - 2.0 * alpha - 2.0);
    // McMahon: q_k is smooth in k + node_order/2 - 1/4; the tail starts half a step on
    let shift = 0.5 * node_order + 0.25;
    let (value, err) = extrapolated_series(&terms, e0, shift);
    RuleSum { value, tail_bound: err, terms: terms.len() }
}

/// `sum_k gamma_k f(node_k)`, which equals `(tau/2)^{2 alpha+2} int f d nu_alpha`
/// for `f` even entire of type at most `tau` and integrable. `decay` is the
/// exponent of the algebraic decay of `f` and drives the tail extrapolation;
/// functions outside the class carry no guarantee.
pub fn apply_gauss<F: Fn(f64) -> f64>(rule: &GaussRule, f: F, decay: Option<f64>) -> RuleSum {
    node_sum(rule.order.alpha(), rule.order.alpha(), &rule.nodes, &rule.weights, f, decay)
}

/// Radau rule with origin derivative terms and nodes `2 q_{alpha+r,k} / tau`.
#[derive(Clone, Debug)]
pub struct RadauRule {
    order: Order,
    tau: f64,
    r: usize,
    origin_weights: Vec<f64>,
    nodes: Vec<f64>,
    node_weights: Vec<f64>,
}

impl RadauRule {
    /// The order alpha of the measure.
    pub fn order(&self) -> Order {
        self.order
    }

    /// Exponential type.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Number of origin derivative terms.
    pub fn r(&self) -> usize {
        self.r
    }

    /// `alpha_{l,r}` for `l = 0..r`, multiplying `f^{(2l)}(0)`.
    pub fn origin_weights(&self) -> &[f64] {
        &self.origin_weights
    }

    /// Nodes `2 q_{alpha+r,k} / tau`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Positive node weights `gamma_{k,r}`.
    pub fn node_weights(&self) -> &[f64] {
        &self.node_weights
    }
}

fn square_series(beta: f64, n: usize) -> Vec<f64> {
    let c: Vec<f64> = (0..n).map(|k| series_coefficient(beta, k)).collect();
    (0..n).map(|k| (0..=k).map(|i| c[i] * c[k - i]).sum()).collect()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Node weights `gamma_{k,r}` at `tau = 2` and the nodes `q_{alpha+r,k}`.
fn radau_nodes(order: Order, r: usize, count: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let alpha = order.alpha();
    let lifted = order.shift(r as f64);
    let (q, g, _) = gauss_weights(lifted, count)?;
    let ratio = b_alpha(alpha) / b_alpha(alpha + r as f64);
    let w = q.iter().zip(&g).map(|(q, g)| ratio * g * q.powi(-2 * r as i32)).collect();
    Ok((q, w))
}

fn check_r(r: usize) -> Result<()> {
    if r == 0 || r > MAX_RADAU_R {
        return Err(LoganError::InvalidArgument(format!(
            "Radau rules are supported for 1 <= r <= {MAX_RADAU_R}, got r = {r}"
        )));
    }
    Ok(())
}

/// Builds the Radau rule. Origin weights are extracted from the probes
/// `x^{2l} j_{alpha+r+1}(x)^2`, `l = 0..r`, whose integrals and node sums
/// determine them through a triangular system.
pub fn radau_rule(order: Order, tau: f64, r: usize, count: usize) -> Result<RadauRule> {
    check_r(r)?;
    if count < 1 || !(tau > 0.0) {
        return Err(LoganError::InvalidArgument("Radau rule needs count >= 1 and tau > 0".into()));
    }
    let alpha = order.alpha();
    let probe_count = count.max(256);
    let (q, w) = radau_nodes(order, r, probe_count)?;
    let beta = alpha + r as f64 + 1.0;
    let sq = square_series(beta, r);
    let b = b_alpha(alpha);
    // residual_l = int P_l d nu_alpha - node sum = sum_{i >= l} alpha_i P_l^{(2i)}(0)
    let residuals: Vec<f64> = (0..r)
        .into_par_iter()
        .map(|l| {
            let lp = l as i32;
            let integral = b * weighted_j_squared(alpha, beta, &|x: f64| x.powi(2 * lp), 40.0, WEIGHT_TOL).value;
            let probe = |x: f64| {
                let j = j_raw(beta, x);
                x.powi(2 * lp) * j * j
            };
            let decay = 2.0 * beta + 1.0 - 2.0 * l as f64;
            integral - node_sum(alpha, alpha + r as f64, &q, &w, probe, Some(decay)).value
        })
        .collect();
    let mut origin = vec![0.0; r];
    for l in (0..r).rev() {
        // P_l^{(2i)}(0) = (2i)! [x^{2(i-l)}] j_beta^2
        let known: f64 = (l + 1..r).map(|i| origin[i] * factorial(2 * i) * sq[i - l]).sum();
        origin[l] = (residuals[l] - known) / (factorial(2 * l) * sq[0]);
    }
    if !(origin[r - 1] > 0.0) {
        return Err(LoganError::SignViolation(format!(
            "leading origin weight alpha_{{r-1,r}} = {} is not positive",
            origin[r - 1]
        )));
    }
    if let Some(bad) = w.iter().find(|&&x| !(x > 0.0)) {
        return Err(LoganError::SignViolation(format!("negative Radau node weight {bad}")));
    }
    let s = 2.0 / tau;
    let origin_weights = origin.iter().enumerate().map(|(l, a)| a * s.powi(2 * l as i32)).collect();
    let nodes = q[..count].iter().map(|q| 2.0 * q / tau).collect();
    Ok(RadauRule { order, tau, r, origin_weights, nodes, node_weights: w[..count].to_vec() })
}

/// Origin weights at `tau = 2` from the closed reduction:
/// `alpha_{l,r} = (1/(2l)!) sum_{j=l}^{r-1} H_{j-l} M_j`, where `H_i` are the
/// series coefficients of `j_{alpha+r}^{-2}` and
/// `M_j = int x^{2j} j_{alpha+r}^2 d nu_alpha`.
pub fn radau_origin_weights_analytic(order: Order, r: usize) -> Result<Vec<f64>> {
    check_r(r)?;
    let alpha = order.alpha();
    let beta = alpha + r as f64;
    let sq = square_series(beta, r);
    let mut inv = vec![0.0; r];
    inv[0] = 1.0 / sq[0];
    for k in 1..r {
        inv[k] = -(1..=k).map(|i| sq[i] * inv[k - i]).sum::<f64>() / sq[0];
    }
    let b = b_alpha(alpha);
    let moments: Vec<f64> = (0..r)
        .map(|j| {
            let jp = j as i32;
            b * weighted_j_squared(alpha, beta, &|x: f64| x.powi(2 * jp), 40.0, WEIGHT_TOL).value
        })
        .collect();
    Ok((0..r)
        .map(|l| (l..r).map(|j| inv[j - l] * moments[j]).sum::<f64>() / factorial(2 * l))
        .collect())
}

/// Value of the Radau formula given the even derivatives `f^{(2l)}(0)`,
/// `l = 0..r`. The result equals `(tau/2)^{2 alpha+2} int f d nu_alpha`.
pub fn apply_radau<F: Fn(f64) -> f64>(rule: &RadauRule, f: F, even_derivatives: &[f64], decay: Option<f64>) -> Result<RuleSum> {
    if even_derivatives.len() < rule.r {
        return Err(LoganError::InvalidArgument(format!(
            "need {} even derivatives at the origin, got {}",
            rule.r,
            even_derivatives.len()
        )));
    }
    let origin: f64 = rule.origin_weights.iter().zip(even_derivatives).map(|(a, d)| a * d).sum();
    let nodes = node_sum(rule.order.alpha(), rule.order.alpha() + rule.r as f64, &rule.nodes, &rule.node_weights, f, decay);
    Ok(RuleSum { value: origin + nodes.value, ..nodes })
}

/// `f^{(2l)}(0)` for `l = 0..r` of an even function, by central differences
/// with step `h` refined by Richardson extrapolation to order 8.
pub fn even_derivatives_at_origin<F: Fn(f64) -> f64>(f: F, r: usize, h: f64) -> Vec<f64> {
    (0..r)
        .map(|l| {
            if l == 0 {
                return f(0.0);
            }
            let n = 2 * l;
            let diff = |h: f64| {
                let mut s = 0.0;
                let mut c = 1.0;
                for i in 0..=n {
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    s += sign * c * f(((l as f64) - i as f64) * h);
                    c = c * (n - i) as f64 / (i + 1) as f64;
                }
                s / h.powi(n as i32)
            };
            let mut row: Vec<f64> = (0..4).map(|k| diff(h / 2f64.powi(k))).collect();
            let mut p = 4.0;
            while row.len() > 1 {
                row = row.windows(2).map(|w| (p * w[1] - w[0]) / (p - 1.0)).collect();
                p *= 4.0;
            }
            row[0]
        })
        .collect()
}
