//! Positive zeros of j_alpha, cached per order.

use super::{j_raw, Order};
use crate::error::{LoganError, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Default relative accuracy of each zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-13;

/// Scan step when bracketing zeros. Consecutive zeros of j_alpha are more
/// than two units apart for every alpha >= -1/2.
const SCAN_STEP: f64 = 0.5;
/// Largest distance scanned past the previous zero before giving up.
const SCAN_WINDOW: f64 = 20.0;

/// The first `count` positive zeros of `j_alpha`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroTable {
    order: Order,
    zeros: Vec<f64>,
    tol: f64,
}

impl ZeroTable {
    /// Order of the Bessel function.
    pub fn order(&self) -> Order {
        self.order
    }

    /// Zeros in increasing order.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Number of stored zeros.
    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    /// Relative accuracy target of each zero.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The k-th zero, 1-based.
    pub fn q(&self, k: usize) -> f64 {
        self.zeros[k - 1]
    }

    /// Largest residual ratio `|j(q)| / (|j'(q)| q)` over the table.
    pub fn max_residual(&self) -> f64 {
        let a = self.order.alpha();
        self.zeros
            .iter()
            .map(|&q| {
                let d = q * j_raw(a + 1.0, q) / (2.0 * (a + 1.0));
                j_raw(a, q).abs() / (d.abs() * q)
            })
            .fold(0.0, f64::max)
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Vec<f64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<f64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn polish(alpha: f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = j_raw(alpha, lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = j_raw(alpha, x);
        if f == 0.0 {
            return x;
        }
        if (f < 0.0) == (flo < 0.0) {
            lo = x;
            flo = f;
        } else {
            hi = x;
        }
        let d = -x * j_raw(alpha + 1.0, x) / (2.0 * (alpha + 1.0));
        let mut next = x - f / d;
        if !(next > lo && next < hi) || d == 0.0 {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 0.1 * tol * x || hi - lo <= tol * x {
            break;
        }
    }
    // one more Newton step from the converged point
    let f = j_raw(alpha, x);
    let d = -x * j_raw(alpha + 1.0, x) / (2.0 * (alpha + 1.0));
    if d != 0.0 {
        let next = x - f / d;
        if (next - x).abs() <= tol * x {
            x = next;
        }
    }
    x
}

fn extend(alpha: f64, found: &mut Vec<f64>, count: usize, tol: f64) -> Result<()> {
    let mut x = match found.last() {
        Some(&q) => q + 1.0,
        // q_{alpha,1} exceeds both alpha and 3/2
        None => alpha.max(1.0),
    };
    while found.len() < count {
        let mut lo = x;
        let mut flo = j_raw(alpha, lo);
        let mut scanned = 0.0;
        let hi = loop {
            let hi = lo + SCAN_STEP;
            let fhi = j_raw(alpha, hi);
            if fhi == 0.0 || (fhi < 0.0) != (flo < 0.0) {
                break hi;
            }
            lo = hi;
            flo = fhi;
            scanned += SCAN_STEP;
            if scanned > SCAN_WINDOW {
                return Err(LoganError::ZeroSearch(format!(
                    "no sign change of j_{alpha} in [{x}, {}] while seeking zero {}",
                    x + SCAN_WINDOW,
                    found.len() + 1
                )));
            }
        };
        let q = polish(alpha, lo, hi, tol);
        found.push(q);
        x = q + 1.0;
    }
    Ok(())
}

/// First `count` positive zeros of `j_alpha` at the default accuracy.
pub fn zeros(order: Order, count: usize) -> Result<ZeroTable> {
    zeros_with_tol(order, count, DEFAULT_ZERO_TOL)
}

/// First `count` positive zeros of `j_alpha`, each bracketed by a sign change
/// and polished by safeguarded Newton iteration to relative accuracy `tol`.
pub fn zeros_with_tol(order: Order, count: usize, tol: f64) -> Result<ZeroTable> {
    if count == 0 {
        return Err(LoganError::InvalidArgument("zero count must be >= 1".into()));
    }
    let alpha = order.alpha();
    let cacheable = tol == DEFAULT_ZERO_TOL;
    if cacheable {
        if let Some(z) = cache().lock().unwrap().get(&alpha.to_bits()) {
            if z.len() >= count {
                return Ok(ZeroTable { order, zeros: z[..count].to_vec(), tol });
            }
        }
    }
    let mut found = if cacheable {
        cache().lock().unwrap().get(&alpha.to_bits()).cloned().unwrap_or_default()
    } else {
        Vec::new()
    };
    extend(alpha, &mut found, count, tol)?;
    if cacheable {
        let mut c = cache().lock().unwrap();
        let e = c.entry(alpha.to_bits()).or_default();
        if e.len() < found.len() {
            *e = found.clone();
        }
    }
    found.truncate(count);
    Ok(ZeroTable { order, zeros: found, tol })
}

/// One row of the first-zero growth report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    /// Order.
    pub alpha: f64,
    /// First positive zero.
    pub q1: f64,
    /// `(q1 - alpha) / alpha^{1/3}`, absent for alpha <= 0.
    pub ratio: Option<f64>,
}

/// Reports `(q_{alpha,1} - alpha) / alpha^{1/3}`, which tends to 1.8557...
/// as alpha grows.
pub fn first_zero_growth_check(orders: &[f64]) -> Result<Vec<GrowthRow>> {
    orders
        .iter()
        .map(|&a| {
            let o = Order::new(a)?;
            let q1 = zeros(o, 1)?.q(1);
            let ratio = (a > 0.0).then(|| (q1 - a) / a.cbrt());
            Ok(GrowthRow { alpha: a, q1, ratio })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ord(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    #[test]
    fn cosine_and_sine_zeros() {
        let t = zeros(ord(-0.5), 3).unwrap();
        for (k, &q) in t.zeros().iter().enumerate() {
            assert!((q - (k as f64 + 0.5) * PI).abs() < 1e-14);
        }
        let t = zeros(ord(0.5), 2).unwrap();
        assert!((t.q(1) - PI).abs() < 1e-14);
        assert!((t.q(2) - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn order_zero_first_zero_against_bisection() {
        // plain bisection on the power series
        let f = |x: f64| {
            let mut s = 0.0;
            let mut t = 1.0;
            for k in 0..60 {
                if k > 0 {
                    t *= -0.25 * x * x / ((k * k) as f64);
                }
                s += t;
            }
            s
        };
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        let q = zeros(ord(0.0), 1).unwrap().q(1);
        assert!((q - lo).abs() < 1e-13);
        assert!((q - 2.404825557695773).abs() < 1e-14);
    }

    #[test]
    fn residuals_and_interlacing() {
        for &a in &[-0.5, -0.2, 0.0, 0.7, 1.0, 2.5, 6.0] {
            let t = zeros(ord(a), 12).unwrap();
            let t1 = zeros(ord(a + 1.0), 12).unwrap();
            assert!(t.max_residual() < 1e-13, "a={a} res={}", t.max_residual());
            for k in 1..12 {
                assert!(t.q(k) < t1.q(k) && t1.q(k) < t.q(k + 1), "a={a} k={k}");
            }
        }
    }

    #[test]
    fn cache_returns_consistent_prefixes() {
        let long = zeros(ord(1.25), 20).unwrap();
        let short = zeros(ord(1.25), 5).unwrap();
        assert_eq!(&long.zeros()[..5], short.zeros());
        let fresh = zeros_with_tol(ord(1.25), 20, 1e-14).unwrap();
        for k in 1..=20 {
            assert!((fresh.q(k) - long.q(k)).abs() < 1e-12 * long.q(k));
        }
    }

    #[test]
    fn growth_band() {
        let rows = first_zero_growth_check(&[-0.5, 50.0, 200.0]).unwrap();
        assert!((rows[0].q1 - PI / 2.0).abs() < 1e-14);
        assert!(rows[0].ratio.is_none());
        let r50 = rows[1].ratio.unwrap();
        let r200 = rows[2].ratio.unwrap();
        assert!((1.7..=2.0).contains(&r50), "{r50}");
        assert!((1.8..=1.92).contains(&r200), "{r200}");
        assert!((r200 - 1.855_757).abs() < (r50 - 1.855_757).abs());
    }
}
