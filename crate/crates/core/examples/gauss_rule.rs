//! Gauss quadrature at Bessel zeros: exact for integrable even entire
//! functions of exponential type 2.

use logan_lab::bessel::{j_norm, Order};
use logan_lab::gamma::gamma;
use logan_lab::quadrature::{apply_gauss, gauss_rule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for alpha in [0.0, 1.0, 2.5] {
        let o = Order::new(alpha)?;
        let rule = gauss_rule(o, 2.0, 256)?;
        let f = |x: f64| j_norm(o.shift(1.0), x).powi(2);
        let sum = apply_gauss(&rule, f, Some(2.0 * alpha + 3.0));
        let exact = 2f64.powf(alpha + 1.0) * gamma(alpha + 2.0);
        println!(
            "alpha = {alpha}: rule {:.14}, closed form {exact:.14}, first weights {:.6} {:.6}",
            sum.value,
            rule.weights()[0],
            rule.weights()[1]
        );
    }
    Ok(())
}
