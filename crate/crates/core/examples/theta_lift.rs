//! g at a raised order alpha + theta stays positive definite at order alpha.

use logan_lab::bessel::Order;
use logan_lab::extremal::theta_lift;
use logan_lab::hankel::{psd_gram, Measure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [1usize, 3] {
        let alpha = d as f64 / 2.0 - 1.0;
        let o = Order::new(alpha)?;
        for theta in [0.5, 1.3] {
            let (g, lift) = theta_lift(o, theta, 1, 20)?;
            let ev = psd_gram(&Measure::new(o), &g.to_profile(), &[0.0, 0.9, 1.7, 2.8, 4.0])?;
            println!(
                "d = {d}, theta = {theta}: min lowered transform {:.3e} (relative), Gram min eigenvalue {ev:.3e}",
                lift.min_relative
            );
        }
    }
    Ok(())
}
