//! Polynomials in the Bessel eigenfunctions `j_alpha(q_k t)` of the
//! Sturm-Liouville problem on `[0,1]`, the functions with a minimal zero
//! interval, and zero counting for Chebyshev systems of Bessel functions.

use crate::bessel::{b_alpha, j_norm_derivative, j_raw, zeros, Order, TaylorTail};
use crate::error::{LoganError, Result};
use crate::hankel::RadialProfile;
use crate::quad::gauss_legendre;
use serde::Serialize;
use std::f64::consts::PI;

/// Lower edge of the multiplicity dead-band: relative derivative sizes
/// below it count as zero.
pub const MULTIPLICITY_ZERO_TOL: f64 = 1e-8;
/// Upper edge of the dead-band: sizes above it count as nonzero; sizes in
/// between are reported as ambiguous.
pub const MULTIPLICITY_NONZERO_TOL: f64 = 1e-4;

/// How an [`EigenPolynomial`] was constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    /// `p_{alpha,m}` on `[0,1]`.
    PAlphaM,
    /// `F_{alpha,n}` for odd `n = 2m+1`.
    FOdd,
    /// `F_{alpha,n}` for even `n = 2m+2`.
    FEven,
}

/// `constant + sum_k coef_k j_alpha(freq_k t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPolynomial {
    order: Order,
    terms: Vec<(f64, f64)>,
    constant: f64,
    source: Source,
}

impl EigenPolynomial {
    /// Order alpha of the eigenfunctions.
    pub fn order(&self) -> Order {
        self.order
    }

    /// `(frequency, coefficient)` pairs.
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// Constant term (zero except for even `F_{alpha,n}`).
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Construction route.
    pub fn source(&self) -> Source {
        self.source
    }

    /// Value at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let a = self.order.alpha();
        self.constant + self.terms.iter().map(|&(w, c)| c * j_raw(a, w * t)).sum::<f64>()
    }

    /// n-th derivative at `t`, termwise.
    pub fn derivative(&self, t: f64, n: u32) -> f64 {
        if n == 0 {
            return self.eval(t);
        }
        self.terms.iter().map(|&(w, c)| c * w.powi(n as i32) * j_norm_derivative(self.order, w * t, n)).sum()
    }

    /// `max_k |coef_k| freq_k^n` (plus the constant for n = 0), the scale
    /// against which the n-th derivative is judged zero.
    pub fn derivative_scale(&self, n: u32) -> f64 {
        let s = self.terms.iter().map(|&(w, c)| c.abs() * w.powi(n as i32)).fold(0.0, f64::max);
        if n == 0 {
            s.max(self.constant.abs())
        } else {
            s
        }
    }

    /// Same function divided by its value at the origin.
    pub fn normalized(&self) -> Self {
        let v = self.eval(0.0);
        let mut out = self.clone();
        out.constant /= v;
        for t in &mut out.terms {
            t.1 /= v;
        }
        out
    }

    /// Exponential type: the largest frequency.
    pub fn exponential_type(&self) -> f64 {
        self.terms.iter().map(|t| t.0).fold(0.0, f64::max)
    }

    /// The function on `[0, inf)` as an analytic radial profile.
    pub fn to_profile(&self) -> RadialProfile {
        let me = self.clone();
        let w = self.exponential_type();
        RadialProfile::new(move |t| me.eval(t)).analytic().with_half_period(PI / w)
    }

    /// The restriction `p chi_[0,1]` as a compactly supported profile.
    pub fn to_compact_profile(&self) -> RadialProfile {
        let me = self.clone();
        RadialProfile::compact(move |t| me.eval(t), 1.0).analytic()
    }
}

/// Partial fractions of `1 / prod_{i<=m+1} (1 - l^2/q_i^2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialFraction {
    /// `q_i^2`.
    pub zeros_squared: Vec<f64>,
    /// `A_i = prod_j q_j^2 / prod_{j != i} (q_j^2 - q_i^2)`.
    pub a: Vec<f64>,
}

impl PartialFraction {
    /// `sum_i A_i / (q_i^2 - l^2)`.
    pub fn eval(&self, lambda: f64) -> f64 {
        let l2 = lambda * lambda;
        self.zeros_squared.iter().zip(&self.a).map(|(q2, a)| a / (q2 - l2)).sum()
    }

    /// `1 / prod (1 - l^2/q_i^2)` by direct multiplication.
    pub fn product_form(&self, lambda: f64) -> f64 {
        let l2 = lambda * lambda;
        1.0 / self.zeros_squared.iter().map(|q2| 1.0 - l2 / q2).product::<f64>()
    }
}

fn fractions_from(q: &[f64]) -> PartialFraction {
    let q2: Vec<f64> = q.iter().map(|x| x * x).collect();
    let top: f64 = q2.iter().product();
    let a = (0..q2.len())
        .map(|i| {
            let w: f64 = (0..q2.len()).filter(|&j| j != i).map(|j| q2[j] - q2[i]).product();
            top / w
        })
        .collect();
    PartialFraction { zeros_squared: q2, a }
}

/// Partial fraction coefficients at the zeros `q_{alpha,1..=m+1}`.
pub fn partial_fractions(order: Order, m: usize) -> Result<PartialFraction> {
    Ok(fractions_from(zeros(order, m + 1)?.zeros()))
}

/// `p_{alpha,m}(t) = sum_i B_i j_alpha(q_i t)` with
/// `B_i = -A_i / (b_alpha q_i j_alpha'(q_i))`; every `B_i` must be positive.
pub fn build_p(order: Order, m: usize) -> Result<EigenPolynomial> {
    let pf = partial_fractions(order, m)?;
    let b = b_alpha(order.alpha());
    let mut terms = Vec::with_capacity(m + 1);
    for (i, (&q2, &a)) in pf.zeros_squared.iter().zip(&pf.a).enumerate() {
        let q = q2.sqrt();
        let slope = q * j_norm_derivative(order, q, 1);
        let c = -a / (b * slope);
        if !(c > 0.0) {
            return Err(LoganError::SignViolation(format!(
                "B_{} = {c} is not positive (alpha = {}, m = {m})",
                i + 1,
                order.alpha()
            )));
        }
        terms.push((q, c));
    }
    Ok(EigenPolynomial { order, terms, constant: 0.0, source: Source::PAlphaM })
}

/// Vandermonde product `prod_{j<i} (x_i - x_j)`.
fn vandermonde(x: &[f64]) -> f64 {
    let mut v = 1.0;
    for i in 0..x.len() {
        for j in 0..i {
            v *= x[i] - x[j];
        }
    }
    v
}

/// `p_{alpha,m}` from the determinant form: `-c` times the determinant with
/// first row `phi_i(t)/phi_i'(1)` over the rows `q_i^{2l}`, `l < m`,
/// expanded along the first row into Vandermonde minors, with
/// `c = prod q_j^2 / (b_alpha Delta(q_1^2, ..))`.
pub fn build_p_determinant(order: Order, m: usize) -> Result<EigenPolynomial> {
    let table = zeros(order, m + 1)?;
    let q = table.zeros();
    let q2: Vec<f64> = q.iter().map(|x| x * x).collect();
    let c = q2.iter().product::<f64>() / (b_alpha(order.alpha()) * vandermonde(&q2));
    let terms = (0..=m)
        .map(|i| {
            let minor: Vec<f64> = q2.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let slope = q[i] * j_norm_derivative(order, q[i], 1);
            (q[i], -c * sign * vandermonde(&minor) / slope)
        })
        .collect();
    Ok(EigenPolynomial { order, terms, constant: 0.0, source: Source::PAlphaM })
}

/// Derivatives at a point and the multiplicity read off them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Multiplicity {
    /// Number of leading derivatives judged zero.
    pub multiplicity: usize,
    /// `|p^{(i)}| / scale_i` for `i = 0..=multiplicity`.
    pub ratios: Vec<f64>,
}

/// Multiplicity of the zero of `p` at `point`: the first derivative order
/// whose relative size exceeds the dead-band. Sizes inside the dead-band
/// `[1e-8, 1e-4]` are an error.
pub fn multiplicity_at(p: &EigenPolynomial, point: f64) -> Result<Multiplicity> {
    let max_order = 2 * p.terms.len() as u32 + 4;
    let mut ratios = Vec::new();
    for n in 0..=max_order {
        let d = p.derivative(point, n);
        let r = d.abs() / p.derivative_scale(n);
        ratios.push(r);
        if r > MULTIPLICITY_NONZERO_TOL {
            return Ok(Multiplicity { multiplicity: n as usize, ratios });
        }
        if r > MULTIPLICITY_ZERO_TOL {
            return Err(LoganError::Ambiguous(format!(
                "derivative {n} at {point} has relative size {r:.3e}, inside the dead-band \
                 [{MULTIPLICITY_ZERO_TOL:e}, {MULTIPLICITY_NONZERO_TOL:e}]; ratios so far {ratios:?}"
            )));
        }
    }
    Err(LoganError::Ambiguous(format!("first {max_order} derivatives at {point} all vanish")))
}

/// Multiplicity of the zero of `p_{alpha,m}` at `t = 1`.
pub fn multiplicity_at_one(p: &EigenPolynomial) -> Result<usize> {
    if p.source != Source::PAlphaM {
        return Err(LoganError::InvalidArgument("multiplicity_at_one expects p_{alpha,m}".into()));
    }
    Ok(multiplicity_at(p, 1.0)?.multiplicity)
}

/// Taylor expansion of an [`EigenPolynomial`] about a zero of certified
/// multiplicity `n`, with the first `n` coefficients set to zero.
///
/// Near a zero of high multiplicity the function is far below the
/// round-off of its terms, so direct summation returns noise; the
/// expansion keeps full relative accuracy there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroExpansion {
    /// Expansion point.
    pub point: f64,
    /// Certified multiplicity.
    pub multiplicity: usize,
    /// Coefficients of `(x - point)^k`.
    pub coefficients: Vec<f64>,
    /// Radius within which the expansion is used.
    pub radius: f64,
}

/// Number of Taylor terms kept in a [`ZeroExpansion`].
const EXPANSION_TERMS: usize = 48;

impl ZeroExpansion {
    /// Builds the expansion of `p` about `point`, after certifying the
    /// multiplicity with [`multiplicity_at`].
    pub fn new(p: &EigenPolynomial, point: f64) -> Result<Self> {
        let n = multiplicity_at(p, point)?.multiplicity;
        let mut coefficients = vec![0.0; EXPANSION_TERMS + 1];
        for &(w, c) in &p.terms {
            let tail = TaylorTail::new(p.order, EXPANSION_TERMS, w * point)?;
            let mut wk = 1.0;
            for (k, a) in tail.coefficients().iter().enumerate() {
                if k >= n {
                    coefficients[k] += c * wk * a;
                }
                wk *= w;
            }
        }
        let radius = 1.0 / p.exponential_type().max(1.0);
        Ok(ZeroExpansion { point, multiplicity: n, coefficients, radius })
    }

    /// Whether `x` lies within the expansion radius.
    pub fn covers(&self, x: f64) -> bool {
        (x - self.point).abs() < self.radius
    }

    /// Value at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let h = x - self.point;
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }

    /// First derivative at `x`.
    pub fn derivative(&self, x: f64) -> f64 {
        let h = x - self.point;
        self.coefficients.iter().enumerate().skip(1).rev().fold(0.0, |acc, (k, &c)| acc * h + k as f64 * c)
    }
}

/// `p` evaluated directly, or through its expansion near the zero.
pub fn eval_near_zero(p: &EigenPolynomial, zero: &ZeroExpansion, x: f64) -> (f64, f64) {
    if zero.covers(x) {
        (zero.eval(x), zero.derivative(x))
    } else {
        (p.eval(x), p.derivative(x, 1))
    }
}

/// Grid scan of positivity and monotonicity on `[0,1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport {
    /// Grid spacing.
    pub step: f64,
    /// Smallest value on the grid.
    pub min_value: f64,
    /// Largest derivative on the grid.
    pub max_derivative: f64,
    /// Smallest value on `[0, 1 - delta]`.
    pub min_inner_value: f64,
    /// Largest derivative on `[delta, 1 - delta]`.
    pub max_inner_derivative: f64,
    /// The margin delta.
    pub delta: f64,
    /// `p' <= 1e-12`, `p >= -1e-12`, `p > 0` on `[0,1-delta]` and `p' < 0` on `(delta, 1-delta)`.
    pub passed: bool,
}

/// Checks that `p` is nonnegative and nonincreasing on `[0,1]`, on a grid
/// of spacing `step`, with strict behavior away from the ends. Values near
/// `t = 1` come from the expansion about the zero there.
pub fn monotonicity_check(p: &EigenPolynomial, step: f64, delta: f64) -> Result<MonotonicityReport> {
    let zero = ZeroExpansion::new(p, 1.0)?;
    let n = (1.0 / step).round() as usize;
    let mut rep = MonotonicityReport {
        step,
        min_value: f64::INFINITY,
        max_derivative: f64::NEG_INFINITY,
        min_inner_value: f64::INFINITY,
        max_inner_derivative: f64::NEG_INFINITY,
        delta,
        passed: false,
    };
    for i in 0..=n {
        let t = i as f64 / n as f64;
        let (v, d) = eval_near_zero(p, &zero, t);
        rep.min_value = rep.min_value.min(v);
        rep.max_derivative = rep.max_derivative.max(d);
        if t <= 1.0 - delta {
            rep.min_inner_value = rep.min_inner_value.min(v);
        }
        if t > delta && t < 1.0 - delta {
            rep.max_inner_derivative = rep.max_inner_derivative.max(d);
        }
    }
    rep.passed = rep.max_derivative <= 1e-12
        && rep.min_value >= -1e-12
        && rep.min_inner_value > 0.0
        && rep.max_inner_derivative < 0.0;
    Ok(rep)
}

/// `F_{alpha,n}` and `theta_{alpha,n}`: a positive definite function of
/// type 1 with a zero of multiplicity `n` at `theta` and none on `[0, theta)`.
pub fn thm_hn_function(order: Order, n: usize) -> Result<(EigenPolynomial, f64)> {
    if n == 0 {
        return Err(LoganError::InvalidArgument("n must be at least 1".into()));
    }
    let m = (n - 1) / 2;
    if n % 2 == 1 {
        let p = build_p(order, m)?;
        let theta = p.terms[m].0;
        let terms = p.terms.iter().map(|&(q, b)| (q / theta, b)).collect();
        Ok((EigenPolynomial { order, terms, constant: 0.0, source: Source::FOdd }, theta))
    } else {
        let up = order.shift(1.0);
        let p = build_p(up, m)?;
        let theta = p.terms[m].0;
        let lift = 2.0 * (order.alpha() + 1.0);
        let terms: Vec<(f64, f64)> = p.terms.iter().map(|&(q, b)| (q / theta, lift * b / (q * q))).collect();
        let constant = 1.0 / b_alpha(up.alpha());
        Ok((EigenPolynomial { order, terms, constant, source: Source::FEven }, theta))
    }
}

/// `B_0'' = -2(alpha+1) sum_i B_i' j_alpha(q_i') / q_i'^2`, which must equal
/// `1/b_{alpha+1}`; returned for comparison with the constant of even `F`.
pub fn even_constant_from_sum(order: Order, m: usize) -> Result<f64> {
    let p = build_p(order.shift(1.0), m)?;
    let lift = 2.0 * (order.alpha() + 1.0);
    Ok(-lift * p.terms.iter().map(|&(q, b)| b * j_raw(order.alpha(), q) / (q * q)).sum::<f64>())
}

/// `P(t) = int_t^1 s p_{alpha+1,m}(s) ds` by Gauss-Legendre quadrature.
pub fn p_integral_quadrature(order: Order, m: usize, t: f64) -> Result<f64> {
    let p = build_p(order.shift(1.0), m)?;
    let rule = gauss_legendre(64);
    let (a, b) = (t, 1.0);
    let h = 0.5 * (b - a);
    Ok(rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| {
        let s = a + h * (x + 1.0);
        w * s * p.eval(s)
    }).sum::<f64>() * h)
}

/// `P(t) = 2(alpha+1) sum_i (B_i'/q_i'^2)(j_alpha(q_i' t) - j_alpha(q_i'))`.
pub fn p_integral_closed(order: Order, m: usize, t: f64) -> Result<f64> {
    let p = build_p(order.shift(1.0), m)?;
    let a = order.alpha();
    let lift = 2.0 * (a + 1.0);
    Ok(lift * p.terms.iter().map(|&(q, b)| b / (q * q) * (j_raw(a, q * t) - j_raw(a, q))).sum::<f64>())
}

/// The Bessel systems whose Chebyshev property is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BesselSystem {
    /// `{j_alpha(q_{alpha,k} t)}` on `[0,1)`.
    Dirichlet,
    /// `{1, j_alpha(q_{alpha+1,k} t)}` on `[0,1]`; the constant is index 0.
    Neumann,
    /// `{j_{alpha+1}(q_{alpha,k} t)}` on `(0,1)`.
    Raised,
    /// `{j_alpha(q_{alpha+1,k} t) - j_alpha(q_{alpha+1,k})}` on `(0,1)`.
    NeumannShifted,
}

impl BesselSystem {
    /// The interval on which the system is Chebyshev.
    pub fn natural_interval(self) -> Interval {
        match self {
            BesselSystem::Dirichlet => Interval { lo: 0.0, hi: 1.0, closed_lo: true, closed_hi: false },
            BesselSystem::Neumann => Interval { lo: 0.0, hi: 1.0, closed_lo: true, closed_hi: true },
            _ => Interval { lo: 0.0, hi: 1.0, closed_lo: false, closed_hi: false },
        }
    }
}

/// An interval with open or closed ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    /// Left end.
    pub lo: f64,
    /// Right end.
    pub hi: f64,
    /// Whether `lo` belongs to the interval.
    pub closed_lo: bool,
    /// Whether `hi` belongs to the interval.
    pub closed_hi: bool,
}

/// A finite combination `sum_k c_k phi_{i_k}` from one of the systems.
#[derive(Clone, Debug, PartialEq)]
pub struct BesselCombination {
    system: BesselSystem,
    alpha: f64,
    terms: Vec<(f64, f64, f64)>,
    // NeumannShifted: expansions of j_alpha about each q'_k, used near t = 1
    // where every member has a double zero
    near_one: Vec<TaylorTail>,
}

/// Distance from `t = 1` within which shifted Neumann members are summed
/// from their Taylor expansions.
const NEAR_ONE: f64 = 0.05;

impl BesselCombination {
    /// Builds `sum_k coefficients[k] phi_{indices[k]}`. Index 0 is the
    /// constant of the Neumann system; other systems use indices from 1.
    pub fn new(order: Order, system: BesselSystem, coefficients: &[f64], indices: &[usize]) -> Result<Self> {
        if coefficients.len() != indices.len() || coefficients.is_empty() {
            return Err(LoganError::InvalidArgument("need one coefficient per index".into()));
        }
        if coefficients.iter().all(|&c| c == 0.0) {
            return Err(LoganError::InvalidArgument("combination is trivial".into()));
        }
        let top = *indices.iter().max().unwrap();
        let freq_order = match system {
            BesselSystem::Dirichlet | BesselSystem::Raised => order,
            _ => order.shift(1.0),
        };
        let q = if top == 0 { Vec::new() } else { zeros(freq_order, top)?.zeros().to_vec() };
        let fun_alpha = if system == BesselSystem::Raised { order.alpha() + 1.0 } else { order.alpha() };
        let mut terms = Vec::new();
        for (&c, &i) in coefficients.iter().zip(indices) {
            if i == 0 && system != BesselSystem::Neumann {
                return Err(LoganError::InvalidArgument("index 0 exists only in the Neumann system".into()));
            }
            // (coefficient, frequency, offset); frequency 0 encodes the constant
            let (w, off) = match (system, i) {
                (_, 0) => (0.0, 0.0),
                (BesselSystem::NeumannShifted, _) => (q[i - 1], j_raw(fun_alpha, q[i - 1])),
                _ => (q[i - 1], 0.0),
            };
            terms.push((c, w, off));
        }
        let near_one = if system == BesselSystem::NeumannShifted {
            terms.iter().map(|&(_, w, _)| TaylorTail::new(order, EXPANSION_TERMS, w)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        Ok(BesselCombination { system, alpha: fun_alpha, terms, near_one })
    }

    /// The system the combination is drawn from.
    pub fn system(&self) -> BesselSystem {
        self.system
    }

    /// Value at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        if !self.near_one.is_empty() && (1.0 - t).abs() < NEAR_ONE {
            // j(w t) - j(w) = (w t - w) (j(w t) - j(w)) / (w t - w), without cancellation
            return self.terms.iter().zip(&self.near_one).map(|(&(c, w, _), tail)| c * (w * t - w) * tail.eval_quotient(w * t)).sum();
        }
        self.terms.iter().map(|&(c, w, off)| c * (j_raw(self.alpha, w * t) - off)).sum()
    }

    /// `sum |c_k|`, the scale for zero thresholds.
    pub fn scale(&self) -> f64 {
        self.terms.iter().map(|t| t.0.abs()).sum()
    }

    fn max_frequency(&self) -> f64 {
        self.terms.iter().map(|t| t.1).fold(0.0, f64::max)
    }
}

/// Zeros found on an interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCount {
    /// Sign-change zeros, bisected.
    pub crossings: Vec<f64>,
    /// Touching zeros (local minima of `|P|` at the round-off level).
    pub tangential: Vec<f64>,
    /// Grid size at which the count stabilized.
    pub grid: usize,
}

impl ZeroCount {
    /// Total number of distinct zeros.
    pub fn count(&self) -> usize {
        self.crossings.len() + self.tangential.len()
    }
}

/// Resolution below which two zeros cannot be separated.
pub const ZERO_RESOLUTION: f64 = 1e-7;

fn scan(p: &BesselCombination, iv: Interval, n: usize) -> Result<ZeroCount> {
    let tiny = 1e-10 * p.scale();
    // open ends are sampled just inside
    let lo = if iv.closed_lo { iv.lo } else { iv.lo + ZERO_RESOLUTION };
    let hi = if iv.closed_hi { iv.hi } else { iv.hi - ZERO_RESOLUTION };
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| p.eval(x)).collect();
    let mut crossings = Vec::new();
    let mut tangential = Vec::new();
    for i in 0..n {
        let (a, b) = (vs[i], vs[i + 1]);
        if a == 0.0 {
            if i == 0 {
                if iv.closed_lo {
                    crossings.push(xs[i]);
                }
            } else if vs[i - 1] * b < 0.0 {
                crossings.push(xs[i]);
            } else {
                tangential.push(xs[i]);
            }
            continue;
        }
        if a * b < 0.0 {
            let (mut l, mut r) = (xs[i], xs[i + 1]);
            while r - l > 1e-14 {
                let mid = 0.5 * (l + r);
                if p.eval(mid) * a > 0.0 {
                    l = mid;
                } else {
                    r = mid;
                }
            }
            crossings.push(0.5 * (l + r));
        }
    }
    if vs[n] == 0.0 && iv.closed_hi {
        crossings.push(xs[n]);
    }
    for i in 1..n {
        let (a, b, c) = (vs[i - 1].abs(), vs[i].abs(), vs[i + 1].abs());
        let same_sign = vs[i - 1] * vs[i] > 0.0 && vs[i] * vs[i + 1] > 0.0;
        if same_sign && b <= a && b <= c && b < tiny {
            // confirm with the derivative sign across the minimum
            let h = (hi - lo) / n as f64;
            let d_left = p.eval(xs[i]) - p.eval(xs[i] - 0.5 * h);
            let d_right = p.eval(xs[i] + 0.5 * h) - p.eval(xs[i]);
            if d_left * d_right <= 0.0 {
                tangential.push(xs[i]);
            }
        }
    }
    let mut all: Vec<f64> = crossings.iter().chain(&tangential).copied().collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if let Some(w) = all.windows(2).find(|w| w[1] - w[0] < ZERO_RESOLUTION) {
        return Err(LoganError::Ambiguous(format!(
            "zeros at {} and {} are closer than {ZERO_RESOLUTION:e}; refine with a higher-precision evaluation",
            w[0], w[1]
        )));
    }
    Ok(ZeroCount { crossings, tangential, grid: n })
}

/// Counts the zeros of a combination on an interval: sign changes refined
/// by bisection plus touching zeros, on grids halved until the count agrees
/// across two consecutive refinements.
pub fn count_zeros(p: &BesselCombination, iv: Interval) -> Result<ZeroCount> {
    let mut n = (64.0 * (p.max_frequency() / PI + 1.0)).ceil() as usize;
    let mut prev = scan(p, iv, n)?;
    let mut stable = 0;
    while n < 1 << 20 {
        n *= 2;
        let next = scan(p, iv, n)?;
        if next.count() == prev.count() {
            stable += 1;
            if stable == 2 {
                return Ok(next);
            }
        } else {
            stable = 0;
        }
        prev = next;
    }
    Err(LoganError::NoConvergence(format!("zero count did not stabilize by grid size {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    #[test]
    fn single_fraction() {
        let pf = partial_fractions(ord(0.4), 0).unwrap();
        assert!((pf.a[0] - pf.zeros_squared[0]).abs() < 1e-14 * pf.a[0]);
    }

    #[test]
    fn cosine_polynomial_is_a_cosine() {
        let p = build_p(ord(-0.5), 0).unwrap();
        let c = p.terms()[0].1;
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            assert!((p.eval(t) - c * (PI * t / 2.0).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn vandermonde_of_three() {
        assert_eq!(vandermonde(&[1.0, 2.0, 4.0]), 1.0 * 3.0 * 2.0);
    }

    #[test]
    fn rejects_trivial_and_misindexed_combinations() {
        assert!(BesselCombination::new(ord(0.0), BesselSystem::Dirichlet, &[0.0], &[1]).is_err());
        assert!(BesselCombination::new(ord(0.0), BesselSystem::Dirichlet, &[1.0], &[0]).is_err());
        assert!(BesselCombination::new(ord(0.0), BesselSystem::Neumann, &[1.0], &[0]).is_ok());
    }
}
