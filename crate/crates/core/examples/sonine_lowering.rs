//! Sonine lowering: recover H_alpha(f) from H_beta(f) for beta > alpha.

use logan_lab::hankel::{hankel_transform, sonine_lower, Measure, RadialProfile};
use logan_lab::bessel::Order;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (ma, mb) = (Measure::new(Order::new(0.0)?), Measure::new(Order::new(1.3)?));
    // the Gaussian is its own transform at every order
    let hb = RadialProfile::gaussian();
    for t in [0.0, 0.7, 2.0] {
        let lowered = sonine_lower(&ma, &mb, &hb, t)?;
        let direct = hankel_transform(&ma, &RadialProfile::gaussian(), t)?;
        println!("t = {t}: lowered {lowered:.13}, direct {direct:.13}");
    }
    Ok(())
}
