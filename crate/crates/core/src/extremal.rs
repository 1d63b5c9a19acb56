//! The extremizers of the Logan problem for the Hankel transform and of its
//! uncertainty variants, with sign structure, moments and optimal products.
//!
//! `f_{alpha,m}(t) = j_alpha(t)^2 / prod_{i<=m+1} (1 - t^2/q_{alpha,i}^2)` and
//! `g_{alpha,m}(t) = j_alpha(t) / prod_{i<=m+1} (1 - t^2/q_{alpha,i}^2)`.
//! Near each cancelled zero the quotient `j_alpha(t)/(t - q)` comes from a
//! local Taylor expansion, never from raw division.

use crate::bessel::{b_alpha, j_raw, zeros, Order, ZeroQuotient};
use crate::error::{LoganError, Result};
use crate::eigenpoly::build_p;
use crate::hankel::{panel_points, sonine_lower, weighted_pieces, Measure, RadialProfile};
use crate::quad::Integral;
use crate::quadrature::{even_derivatives_at_origin, gauss_rule};
use crate::tails::{j_linear_tail, j_squared_tail, min_start};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

/// Which member of the extremal families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `f_{alpha,m}`, the Logan extremizer.
    F,
    /// `g_{alpha,m}`, the positive definite factor of `f_{alpha,m}`.
    G,
    /// `t^{2s+2} f_{alpha+s+1,m}(t)`, extremizer with vanishing origin data.
    UncertI,
    /// `f_{alpha+s,m}`, extremizer with shifted moment conditions.
    UncertIII,
}

/// Tolerance for the bisection of the last sign change.
pub const SIGN_CHANGE_TOL: f64 = 1e-10;

/// One extremal function, with the zero data of its Bessel factor.
#[derive(Clone, Debug)]
pub struct ExtremalFunction {
    order: Order,
    m: usize,
    variant: Variant,
    s: usize,
    base: Order,
    zeros: Vec<f64>,
    quotients: Arc<Vec<ZeroQuotient>>,
    scale: f64,
}

impl ExtremalFunction {
    /// Builds a family member for the measure order `order`; `s` is ignored
    /// for the F and G variants.
    pub fn new(order: Order, m: usize, variant: Variant, s: usize) -> Result<Self> {
        let s = match variant {
            Variant::F | Variant::G => 0,
            _ => s,
        };
        let base = match variant {
            Variant::F | Variant::G => order,
            Variant::UncertI => order.shift(s as f64 + 1.0),
            Variant::UncertIII => order.shift(s as f64),
        };
        let table = zeros(base, m + 1)?;
        let zs = table.zeros().to_vec();
        let quotients = zs.iter().map(|&q| ZeroQuotient::new(base, q)).collect::<Result<Vec<_>>>()?;
        Ok(ExtremalFunction { order, m, variant, s, base, zeros: zs, quotients: Arc::new(quotients), scale: 1.0 })
    }

    /// `f_{alpha,m}`.
    pub fn f(order: Order, m: usize) -> Result<Self> {
        Self::new(order, m, Variant::F, 0)
    }

    /// `g_{alpha,m}`.
    pub fn g(order: Order, m: usize) -> Result<Self> {
        Self::new(order, m, Variant::G, 0)
    }

    /// Measure order alpha.
    pub fn order(&self) -> Order {
        self.order
    }

    /// Index m.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Variant.
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Shift s of the uncertainty variants (0 otherwise).
    pub fn s(&self) -> usize {
        self.s
    }

    /// Order of the Bessel factor.
    pub fn base_order(&self) -> Order {
        self.base
    }

    /// Zeros `q_{base,1..=m+1}` cancelled by the denominator.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Dilation factor `a` of `t -> f(a t)` (1 unless dilated).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The dilation `t -> f(a t)`.
    pub fn dilate(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.scale *= a;
        out
    }

    /// Exponential type: 1 for G, 2 otherwise, times the dilation.
    pub fn exponential_type(&self) -> f64 {
        let base = if self.variant == Variant::G { 1.0 } else { 2.0 };
        base * self.scale
    }

    /// Power of `j_base` in the function: 1 for G, 2 otherwise.
    fn j_power(&self) -> i32 {
        if self.variant == Variant::G {
            1
        } else {
            2
        }
    }

    /// Exponent delta of the algebraic decay `O(t^{-delta})`.
    pub fn decay_exponent(&self) -> f64 {
        let b = self.base.alpha();
        let denom = 2.0 * (self.m as f64 + 1.0);
        let jpow = self.j_power() as f64 * (b + 0.5);
        let lift = if self.variant == Variant::UncertI { 2.0 * self.s as f64 + 2.0 } else { 0.0 };
        jpow + denom - lift
    }

    /// The smooth factor `f / j_base^p` away from the cancelled zeros.
    fn weight_factor(&self, t: f64) -> f64 {
        let d: f64 = self.zeros.iter().map(|q| 1.0 - t * t / (q * q)).product();
        let lift = if self.variant == Variant::UncertI { t.powi(2 * self.s as i32 + 2) } else { 1.0 };
        lift / d
    }

    /// `j_base(t) / prod (1 - t^2/q_i^2)` with the cancelled zero handled locally.
    fn g_part(&self, t: f64, j: f64) -> f64 {
        let mut near = None;
        for (i, zq) in self.quotients.iter().enumerate() {
            let q = zq.zero();
            if (t - q).abs() < crate::bessel::ZERO_SWITCH_RADIUS * q {
                near = Some(i);
            }
        }
        match near {
            None => j / self.zeros.iter().map(|q| 1.0 - t * t / (q * q)).product::<f64>(),
            Some(i) => {
                let q = self.zeros[i];
                // j/(1 - t^2/q^2) = -q^2 (j/(t - q)) / (q + t)
                let local = -q * q * self.quotients[i].eval_with(t, j) / (q + t);
                let rest: f64 = self
                    .zeros
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, p)| 1.0 - t * t / (p * p))
                    .product();
                local / rest
            }
        }
    }

    /// Value at `t >= 0` (the function is even).
    pub fn eval(&self, t: f64) -> f64 {
        let t = (t * self.scale).abs();
        let j = j_raw(self.base.alpha(), t);
        let g = self.g_part(t, j);
        match self.variant {
            Variant::G => g,
            Variant::F | Variant::UncertIII => j * g,
            Variant::UncertI => t.powi(2 * self.s as i32 + 2) * j * g,
        }
    }

    /// The function as a radial profile with decay and oscillation metadata.
    pub fn to_profile(&self) -> RadialProfile {
        let me = self.clone();
        let half = if self.variant == Variant::G { PI } else { FRAC_PI_2 } / self.scale;
        RadialProfile::new(move |t| me.eval(t))
            .analytic()
            .with_decay(self.decay_exponent())
            .with_half_period(half)
    }

    /// Whether `(-1)^{m_sign} f` has a fixed nonpositive sign beyond the last
    /// cancelled zero, read off the factorization.
    fn tail_sign_certified(&self, m_sign: usize) -> bool {
        // beyond q_{m+1} the denominator has sign (-1)^{m+1}; j^2 >= 0
        self.variant != Variant::G && (m_sign % 2 == self.m % 2)
    }
}

/// Outcome of the sign-change search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignChange {
    /// `lambda((-1)^{m_sign} f)`.
    pub lambda: f64,
    /// Right end of the scanned window; beyond it the sign is certified.
    pub window_end: f64,
    /// Largest value of `(-1)^{m_sign} f` on the sampled tail past `lambda`.
    pub tail_max: f64,
}

/// `lambda((-1)^{m_sign} f) = sup{t > 0 : (-1)^{m_sign} f(t) > 0}`.
///
/// Scans `[0, q_{m+1} + 50]` (in undilated units), takes the last sample
/// where the signed function is positive above the round-off floor, and
/// bisects the following crossing to [`SIGN_CHANGE_TOL`]. The sign beyond
/// the window is certified from the factorization.
pub fn last_sign_change(ef: &ExtremalFunction, m_sign: usize) -> Result<SignChange> {
    let sign = if m_sign % 2 == 0 { 1.0 } else { -1.0 };
    let h = |t: f64| sign * ef.eval(t);
    let a = ef.scale;
    let q_last = *ef.zeros.last().unwrap();
    let end = (q_last + 50.0) / a;
    let step = (ef.zeros[0] / 200.0).min(0.02) / a;
    let n = (end / step).ceil() as usize;
    let samples: Vec<(f64, f64)> = (0..=n).map(|i| (i as f64 * step, h(i as f64 * step))).collect();
    let peak = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    let floor = 1e-13 * peak;
    let last_pos = samples.iter().rposition(|s| s.1 > floor).ok_or_else(|| {
        LoganError::NoConvergence(format!("no positive values of (-1)^{m_sign} f on [0, {end}]"))
    })?;
    if last_pos + 1 >= samples.len() || !ef.tail_sign_certified(m_sign) {
        return Err(LoganError::NoConvergence(format!(
            "(-1)^{m_sign} f has no certified sign beyond the scan window [0, {end}]"
        )));
    }
    let (mut lo, mut hi) = (samples[last_pos].0, samples[last_pos + 1].0);
    while hi - lo > SIGN_CHANGE_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tail_max = samples[last_pos + 1..].iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(SignChange { lambda: 0.5 * (lo + hi), window_end: end, tail_max })
}

/// The optimal Logan product and its certificate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LoganProduct {
    /// `2 q_{alpha,m+1}`.
    pub product: f64,
    /// `lambda((-1)^m f_{alpha,m}) * tau(f_{alpha,m})`, recomputed numerically.
    pub certificate: f64,
}

/// `2 q_{alpha,m+1}`, the smallest `lambda((-1)^m f) tau(f)` over the class,
/// certified by the sign change of `f_{alpha,m}`.
pub fn logan_product(order: Order, m: usize) -> Result<LoganProduct> {
    let ef = ExtremalFunction::f(order, m)?;
    let sc = last_sign_change(&ef, m)?;
    Ok(LoganProduct { product: 2.0 * ef.zeros[m], certificate: sc.lambda * ef.exponential_type() })
}

/// Moments `int t^{2k} f d nu_alpha` for `k = 0..=k_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    /// Measure order.
    pub alpha: f64,
    /// Family index.
    pub m: usize,
    /// Direct oscillatory-quadrature values.
    pub values: Vec<f64>,
    /// `int t^{2k} |f| d nu_alpha`, the normalization for tolerances.
    pub scale: Vec<f64>,
    /// Values from the Gauss rule at the zeros of `j_alpha` (when in class).
    pub rule_values: Vec<Option<f64>>,
}

impl MomentReport {
    /// Largest `|values[k]| / scale[k]` over `k` in the range.
    pub fn worst_relative(&self, ks: std::ops::RangeInclusive<usize>) -> f64 {
        ks.map(|k| self.values[k].abs() / self.scale[k]).fold(0.0, f64::max)
    }
}

fn moment_direct(ef: &ExtremalFunction, k: usize) -> (Integral, Integral) {
    let alpha = ef.order.alpha();
    let beta = ef.base.alpha();
    let a = ef.scale;
    let q_last = *ef.zeros.last().unwrap();
    let end = (q_last + 20.0).max(min_start(beta)).max(40.0);
    let mut cuts: Vec<f64> = ef.zeros.clone();
    cuts.push(end);
    let pts = panel_points(0.0, end, &cuts, Some(FRAC_PI_2));
    let kp = 2 * k as i32;
    // work in u = a t: int t^{2k} f(a t) t^{2 alpha+1} dt = a^{-2k-2 alpha-2} int u^{2k} f_1(u) u^{2 alpha+1} du
    let unit = ef.dilate(1.0 / a);
    let g = |u: f64| u.powi(kp) * unit.eval(u);
    let g_abs = |u: f64| g(u).abs();
    let head = weighted_pieces(alpha, &pts, &g, 1e-14);
    let head_abs = weighted_pieces(alpha, &pts, &g_abs, 1e-14);
    let p = 2.0 * alpha + 1.0;
    let w = |u: f64| u.powi(kp) * unit.weight_factor(u) * u.powf(p);
    let tail = if ef.variant == Variant::G {
        j_linear_tail(beta, w, end, 1e-14)
    } else {
        j_squared_tail(beta, w, end, 1e-14)
    };
    let tail_abs = if ef.variant == Variant::G {
        // |j| has no simple mean; the oscillating tail's absolute mass is
        // bounded by the panel sums
        Integral { value: tail.abs_value, error: 0.0, abs_value: tail.abs_value }
    } else {
        Integral { value: tail.value.abs(), error: tail.error, abs_value: tail.abs_value }
    };
    let s = b_alpha(alpha) * a.powf(-(2.0 * k as f64) - 2.0 * alpha - 2.0);
    let scale = |r: Integral| Integral { value: s * r.value, error: s * r.error, abs_value: s * r.abs_value };
    (scale(head + tail), scale(head_abs + tail_abs))
}

/// Moments of `f` for `k = 0..=k_max` by direct oscillatory quadrature, with
/// the Gauss rule as a second route when `t^{2k} f` is of type 2.
pub fn moments(ef: &ExtremalFunction, k_max: usize) -> Result<MomentReport> {
    let alpha = ef.order.alpha();
    let delta = ef.decay_exponent();
    for k in 0..=k_max {
        let net = delta - 2.0 * k as f64;
        if net <= 2.0 * alpha + 2.0 {
            return Err(LoganError::NotIntegrable(format!(
                "t^{} f decays like t^-{net}, which does not beat t^{} from the measure",
                2 * k,
                2.0 * alpha + 2.0
            )));
        }
    }
    let mut values = Vec::new();
    let mut scale = Vec::new();
    let mut rule_values = Vec::new();
    let rule = if ef.variant == Variant::G { None } else { Some(gauss_rule(ef.order, ef.exponential_type(), 256)?) };
    for k in 0..=k_max {
        let (v, s) = moment_direct(ef, k);
        values.push(v.value);
        scale.push(s.value);
        let kp = 2 * k as i32;
        rule_values.push(rule.as_ref().map(|r| {
            r.integrate(|t| t.powi(kp) * ef.eval(t), Some(delta - 2.0 * k as f64)).value
        }));
    }
    Ok(MomentReport { alpha, m: ef.m, values, scale, rule_values })
}

/// Which uncertainty problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UncertaintyVariant {
    /// Vanishing origin data of orders `< s` and moments of orders `< m`.
    I,
    /// Vanishing moments of orders `s..m+s`.
    III,
}

/// Certificate data returned with an uncertainty product.
#[derive(Clone, Debug, Serialize)]
pub struct UncertaintyCertificate {
    /// `lambda((-1)^m f) tau(f)` from the sign-change search.
    pub sign_change_product: f64,
    /// `f^{(2l)}(0)` for `l = 0..=s` (variant I; empty for III).
    pub origin_derivatives: Vec<f64>,
    /// Moment report through the orders that must vanish.
    pub moments: MomentReport,
    /// Moment orders that must vanish.
    pub vanishing_orders: Vec<usize>,
}

/// Optimal uncertainty product with its extremizer and certificate:
/// variant I gives `2 q_{alpha+s+1,m+1}` with `t^{2s+2} f_{alpha+s+1,m}`,
/// variant III gives `2 q_{alpha+s,m+1}` with `f_{alpha+s,m}`.
pub fn uncertainty_product(
    order: Order,
    m: usize,
    s: usize,
    variant: UncertaintyVariant,
) -> Result<(f64, ExtremalFunction, UncertaintyCertificate)> {
    let v = match variant {
        UncertaintyVariant::I => Variant::UncertI,
        UncertaintyVariant::III => Variant::UncertIII,
    };
    let ef = ExtremalFunction::new(order, m, v, s)?;
    let product = 2.0 * ef.zeros[m];
    let sc = last_sign_change(&ef, m)?;
    let (origin_derivatives, vanishing_orders, k_max) = match variant {
        UncertaintyVariant::I => {
            let d = even_derivatives_at_origin(|t| ef.eval(t), s + 1, 0.05);
            (d, (0..=m).collect::<Vec<_>>(), m)
        }
        UncertaintyVariant::III => (Vec::new(), (s..=m + s).collect(), m + s),
    };
    let report = moments(&ef, k_max)?;
    let cert = UncertaintyCertificate {
        sign_change_product: sc.lambda * ef.exponential_type(),
        origin_derivatives,
        moments: report,
        vanishing_orders,
    };
    Ok((product, ef, cert))
}

/// Problem solved through the radial reduction of the Dunkl transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DunklVariant {
    /// Logan problem.
    Logan,
    /// Uncertainty problem, variant I.
    UncertI,
    /// Uncertainty problem, variant III.
    UncertIII,
}

/// Optimal product for the `d`-dimensional Dunkl problem with multiplicity
/// sum `kappa_sum`, via the Hankel order `d/2 - 1 + kappa_sum`.
pub fn dunkl_radial_product(d: usize, kappa_sum: f64, m: usize, s: usize, variant: DunklVariant) -> Result<f64> {
    if d < 1 {
        return Err(LoganError::InvalidArgument("dimension must be at least 1".into()));
    }
    if !(kappa_sum >= 0.0) {
        return Err(LoganError::InvalidArgument(format!("multiplicity sum must be >= 0, got {kappa_sum}")));
    }
    let alpha = d as f64 / 2.0 - 1.0 + kappa_sum;
    let shift = match variant {
        DunklVariant::Logan => 0.0,
        DunklVariant::UncertI => s as f64 + 1.0,
        DunklVariant::UncertIII => s as f64,
    };
    let order = Order::new(alpha + shift)?;
    Ok(2.0 * zeros(order, m + 1)?.q(m + 1))
}

/// Positive definiteness of `g_{alpha+theta,m}` at the lower order alpha.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaLift {
    /// Lower order alpha.
    pub alpha: f64,
    /// `alpha + theta`.
    pub beta: f64,
    /// Family index.
    pub m: usize,
    /// Grid on `[0,1]` where `H_alpha(g_{beta,m})` was evaluated.
    pub grid: Vec<f64>,
    /// `H_alpha(g_{beta,m})` on the grid, from `p_{beta,m} chi_[0,1]` by Sonine lowering.
    pub lowered: Vec<f64>,
    /// Smallest lowered value relative to the largest.
    pub min_relative: f64,
}

/// Lifts `g_{alpha+theta,m}` to order alpha: its order-alpha transform is the
/// Sonine lowering of `H_{alpha+theta}(g) = p_{alpha+theta,m} chi_[0,1]`, a
/// nonnegative function, so `g` is positive definite at order alpha.
pub fn theta_lift(order: Order, theta: f64, m: usize, points: usize) -> Result<(ExtremalFunction, ThetaLift)> {
    if !(theta > 0.0) {
        return Err(LoganError::InvalidArgument(format!("theta must be positive, got {theta}")));
    }
    let beta = order.shift(theta);
    let g = ExtremalFunction::g(beta, m)?;
    let p = build_p(beta, m)?.to_compact_profile();
    let (ma, mb) = (Measure::new(order), Measure::new(beta));
    let grid: Vec<f64> = (0..points).map(|i| i as f64 / points as f64).collect();
    let lowered = grid.iter().map(|&t| sonine_lower(&ma, &mb, &p, t)).collect::<Result<Vec<_>>>()?;
    let top = lowered.iter().copied().fold(0.0, f64::max);
    let min_relative = lowered.iter().copied().fold(f64::INFINITY, f64::min) / top;
    Ok((g, ThetaLift { alpha: order.alpha(), beta: beta.alpha(), m, grid, lowered, min_relative }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    #[test]
    fn value_at_origin_is_one() {
        for &a in &[-0.5, 0.0, 1.3] {
            for m in 0..3 {
                assert_eq!(ExtremalFunction::f(ord(a), m).unwrap().eval(0.0), 1.0);
                assert_eq!(ExtremalFunction::g(ord(a), m).unwrap().eval(0.0), 1.0);
            }
        }
    }

    #[test]
    fn local_expansion_matches_division_off_the_zero() {
        let ef = ExtremalFunction::g(ord(0.7), 2).unwrap();
        for &q in ef.zeros() {
            let t = q * (1.0 - 5e-4);
            let d: f64 = ef.zeros().iter().map(|p| 1.0 - t * t / (p * p)).product();
            let direct = j_raw(0.7, t) / d;
            assert!((ef.eval(t) - direct).abs() < 1e-9 * direct.abs(), "q={q}");
            assert!(ef.eval(q).is_finite());
        }
    }

    #[test]
    fn g_has_no_certified_tail() {
        let ef = ExtremalFunction::g(ord(0.0), 1).unwrap();
        assert!(last_sign_change(&ef, 1).is_err());
    }

    #[test]
    fn wrong_parity_is_rejected() {
        let ef = ExtremalFunction::f(ord(0.0), 1).unwrap();
        assert!(last_sign_change(&ef, 0).is_err());
    }

    #[test]
    fn moments_beyond_integrability_are_rejected() {
        let ef = ExtremalFunction::f(ord(0.0), 1).unwrap();
        let e = moments(&ef, 2).unwrap_err();
        assert!(matches!(e, LoganError::NotIntegrable(_)));
    }
}
