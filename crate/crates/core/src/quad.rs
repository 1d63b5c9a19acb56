//! Numerical integration building blocks: adaptive Gauss-Kronrod, tanh-sinh
//! for endpoint singularities, Gauss-Jacobi rules, and Wynn's epsilon
//! algorithm for oscillatory tails.

use crate::gamma::ln_gamma;
use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Value of a definite integral with an error estimate.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Integral {
    /// Approximation of the integral.
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    /// Approximation of the integral of the absolute value.
    pub abs_value: f64,
}

impl std::ops::Add for Integral {
    type Output = Integral;
    fn add(self, o: Integral) -> Integral {
        Integral {
            value: self.value + o.value,
            error: self.error + o.error,
            abs_value: self.abs_value + o.abs_value,
        }
    }
}

#[allow(clippy::excessive_precision)]
const XGK21: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG10: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK21: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// 21-point Gauss-Kronrod rule on [a, b] with the QUADPACK error heuristic.
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Integral {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = 0.0;
    let mut resk = WGK21[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK21[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK21[j] * (f1 + f2);
        resabs += WGK21[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG10[j / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK21[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK21[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let uflow = f64::MIN_POSITIVE;
    if resabs > uflow / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Integral { value: result, error: err, abs_value: resabs }
}

struct Piece {
    a: f64,
    b: f64,
    r: Integral,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.r.error == o.r.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.r.error.total_cmp(&o.r.error)
    }
}

/// Globally adaptive Gauss-Kronrod integration on [a, b]: the interval with
/// the largest error estimate is bisected until the total estimate meets
/// `max(abs_tol, rel_tol |I|)`, the round-off floor, or the subdivision
/// limit is reached.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Integral {
    if a == b {
        return Integral::default();
    }
    let first = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    let mut total = first;
    heap.push(Piece { a, b, r: first });
    let limit = 2000;
    let mut n = 1;
    // the per-panel round-off floor of gk21 makes tighter targets unreachable
    let target = |t: &Integral| abs_tol.max(rel_tol * t.value.abs()).max(60.0 * f64::EPSILON * t.abs_value);
    while total.error > target(&total) && n < limit {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a).abs() <= 1e-14 * (1.0 + mid.abs()) {
            heap.push(worst);
            break;
        }
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        total.value += left.value + right.value - worst.r.value;
        total.error += left.error + right.error - worst.r.error;
        total.abs_value += left.abs_value + right.abs_value - worst.r.abs_value;
        heap.push(Piece { a: worst.a, b: mid, r: left });
        heap.push(Piece { a: mid, b: worst.b, r: right });
        n += 1;
    }
    // re-sum to shed accumulated update round-off
    let mut out = Integral::default();
    for p in heap.iter() {
        out = out + p.r;
    }
    out
}

/// Sum of adaptive integrals over consecutive pieces `[pts[i], pts[i+1]]`.
pub fn adaptive_pieces<F: Fn(f64) -> f64>(f: F, pts: &[f64], abs_tol: f64, rel_tol: f64) -> Integral {
    let mut out = Integral::default();
    let pieces = pts.len().saturating_sub(1).max(1) as f64;
    for w in pts.windows(2) {
        out = out + adaptive(&f, w[0], w[1], abs_tol / pieces, rel_tol);
    }
    out
}

/// Tanh-sinh (double exponential) quadrature on [a, b]. The integrand is
/// called as `f(x, x - a, b - x)` with both endpoint distances computed
/// without cancellation, so algebraic endpoint singularities can be
/// evaluated accurately.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Integral {
    if a == b {
        return Integral::default();
    }
    let half = 0.5 * (b - a);
    let pi2 = std::f64::consts::FRAC_PI_2;
    let tmax = 6.5;
    let eval = |t: f64| -> (f64, f64) {
        let u = pi2 * t.sinh();
        let cu = u.cosh();
        let w = half * pi2 * t.cosh() / (cu * cu);
        // distances from the endpoints: half (1 + tanh u) and half (1 - tanh u)
        let da = half * 2.0 / (1.0 + (-2.0 * u).exp());
        let db = half * 2.0 / (1.0 + (2.0 * u).exp());
        if da <= 0.0 || db <= 0.0 || w == 0.0 {
            return (0.0, 0.0);
        }
        let x = if da < db { a + da } else { b - db };
        let v = f(x, da, db);
        (w * v, w * v.abs())
    };
    let mut h = 0.5;
    let (mut sum, mut sum_abs) = eval(0.0);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > tmax {
            break;
        }
        let (p, pa) = eval(t);
        let (m, ma) = eval(-t);
        sum += p + m;
        sum_abs += pa + ma;
        k += 1;
    }
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for _level in 0..9 {
        h *= 0.5;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > tmax {
                break;
            }
            let (p, pa) = eval(t);
            let (m, ma) = eval(-t);
            sum += p + m;
            sum_abs += pa + ma;
            k += 2;
        }
        let cur = sum * h;
        err = (cur - prev).abs();
        prev = cur;
        if err <= tol * cur.abs().max(1e-300) || err == 0.0 {
            // the step-halving error estimate is very pessimistic
            err *= 1e-2;
            break;
        }
    }
    Integral { value: prev, error: err, abs_value: sum_abs * h }
}

/// Gauss quadrature rule on [-1, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRuleTable {
    /// Nodes in increasing order.
    pub nodes: Vec<f64>,
    /// Positive weights.
    pub weights: Vec<f64>,
}

fn jacobi_cache() -> &'static Mutex<HashMap<(usize, u64, u64), Arc<GaussRuleTable>>> {
    static C: OnceLock<Mutex<HashMap<(usize, u64, u64), Arc<GaussRuleTable>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Recurrence coefficients `(diag, offdiag^2)` of the monic Jacobi
/// polynomials for the weight `(1-x)^a (1+x)^b`.
pub fn jacobi_recurrence(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    for (k, d) in diag.iter_mut().enumerate() {
        let s = 2.0 * k as f64 + a + b;
        *d = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
    }
    for (k, o) in off.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        *o = if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
        };
    }
    (diag, off)
}

/// n-point Gauss-Jacobi rule for the weight `(1-x)^a (1+x)^b` on [-1, 1]
/// (a, b > -1), computed by the Golub-Welsch eigenvalue method and cached.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Arc<GaussRuleTable> {
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(r) = jacobi_cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let (diag, off) = jacobi_recurrence(n, a, b);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i > 0 {
            let s = off[i].sqrt();
            m[(i, i - 1)] = s;
            m[(i - 1, i)] = s;
        }
    }
    let mu0 = ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(a + b + 2.0))
    .exp();
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let rule = Arc::new(GaussRuleTable {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    });
    jacobi_cache().lock().unwrap().insert(key, rule.clone());
    rule
}

/// n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Arc<GaussRuleTable> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
/// Returns the extrapolated limit and an error estimate.
pub fn wynn_epsilon(s: &[f64]) -> (f64, f64) {
    let n = s.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n < 3 {
        let e = if n == 2 { (s[1] - s[0]).abs() } else { f64::INFINITY };
        return (s[n - 1], e);
    }
    // e[k] holds column k of the epsilon table for the current diagonal
    let mut prev2 = vec![0.0; n + 1];
    let mut prev1: Vec<f64> = s.to_vec();
    let mut best = s[n - 1];
    let mut best_err = (s[n - 1] - s[n - 2]).abs();
    let mut col = 1;
    while prev1.len() > 1 {
        let mut next = Vec::with_capacity(prev1.len() - 1);
        for i in 0..prev1.len() - 1 {
            let d = prev1[i + 1] - prev1[i];
            let base = if col == 1 { 0.0 } else { prev2[i + 1] };
            if d == 0.0 {
                next.push(f64::INFINITY);
            } else {
                next.push(base + 1.0 / d);
            }
        }
        if col % 2 == 0 {
            // even columns approximate the limit
            let m = next.len();
            if m >= 2 && next[m - 1].is_finite() && next[m - 2].is_finite() {
                let e = (next[m - 1] - next[m - 2]).abs();
                if e < best_err {
                    best_err = e;
                    best = next[m - 1];
                }
            }
        }
        prev2 = prev1;
        prev1 = next;
        col += 1;
        if prev1.iter().any(|v| !v.is_finite()) {
            break;
        }
    }
    (best, best_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gk21_integrates_polynomials_exactly() {
        let r = gk21(&|x: f64| x.powi(20) + 3.0 * x.powi(7), -1.0, 2.0);
        let exact = (2f64.powi(21) + 1.0) / 21.0 + 3.0 * (2f64.powi(8) - 1.0) / 8.0;
        assert!((r.value - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn adaptive_handles_kinks_and_peaks() {
        let r = adaptive(|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-13, 1e-13);
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-12);
        let r = adaptive(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 1e-12);
        let exact = 2.0 * 100.0 * (100.0f64).atan();
        assert!((r.value - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        // int_0^1 (1-t^2)^{-0.9} dt = B(1/2, 0.1)/2
        let r = tanh_sinh(|t, _da, db| (db * (1.0 + t)).powf(-0.9), 0.0, 1.0, 1e-14);
        let exact = 0.5 * (ln_gamma(0.5) + ln_gamma(0.1) - ln_gamma(0.6)).exp();
        assert!((r.value - exact).abs() < 1e-11 * exact, "{} {}", r.value, exact);
        let r = tanh_sinh(|x, _, _| x.ln(), 0.0, 1.0, 1e-14);
        assert!((r.value + 1.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_jacobi_moments() {
        let g = gauss_legendre(10);
        let s: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-15);
        // weight (1-x^2)^{-1/2}: int T_0 = pi, int x^2 = pi/2
        let c = gauss_jacobi(8, -0.5, -0.5);
        let s0: f64 = c.weights.iter().sum();
        let s2: f64 = c.nodes.iter().zip(&c.weights).map(|(x, w)| w * x * x).sum();
        assert!((s0 - PI).abs() < 1e-14);
        assert!((s2 - PI / 2.0).abs() < 1e-14);
        for (k, x) in c.nodes.iter().enumerate() {
            let expect = -((2 * k + 1) as f64 * PI / 16.0).cos();
            assert!((x - expect).abs() < 1e-14);
        }
        // asymmetric weight (1-x)^0 (1+x)^2 on [-1,1]: int = 8/3
        let j = gauss_jacobi(5, 0.0, 2.0);
        let s: f64 = j.weights.iter().sum();
        assert!((s - 8.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // partial sums of log 2 = 1 - 1/2 + 1/3 - ...
        let mut s = Vec::new();
        let mut acc = 0.0;
        for k in 1..=20 {
            acc += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            s.push(acc);
        }
        let (v, e) = wynn_epsilon(&s);
        assert!((v - 2f64.ln()).abs() < 1e-12, "{v}");
        assert!(e < 1e-10);
    }
}
