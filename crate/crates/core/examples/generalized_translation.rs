//! Generalized translation and Gram matrices: a positive definite profile
//! against a truncated eigenfunction that is not.

use logan_lab::bessel::Order;
use logan_lab::hankel::{gram_counterexample, psd_gram, translate, Measure, RadialProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let measure = Measure::new(Order::new(0.5)?);
    let gauss = RadialProfile::gaussian();
    println!("T^1 g(2) = {:.12}", translate(&measure, 1.0, &gauss, 2.0));
    let pts = [0.0, 0.4, 1.1, 2.3, 3.0, 4.2];
    println!("Gaussian Gram min eigenvalue: {:.3e}", psd_gram(&measure, &gauss, &pts)?);
    let (x1, x2, ev) = gram_counterexample(&measure)?;
    println!("truncated j(q_2 t): points ({x1:.3}, {x2:.3}) give eigenvalue {ev:.3e}");
    Ok(())
}
