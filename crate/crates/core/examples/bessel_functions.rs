//! The normalized Bessel function j_alpha, its derivatives and the measure
//! constant b_alpha.

use logan_lab::bessel::{b_alpha, j_norm, j_norm_derivative, Order};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cos = Order::new(-0.5)?;
    for x in [0.0, 1.0, 2.5] {
        println!("j_(-1/2)({x}) = {:.15}   cos({x}) = {:.15}", j_norm(cos, x), x.cos());
    }
    let o = Order::new(1.5)?;
    println!("j_1.5(3) = {:.15}", j_norm(o, 3.0));
    for n in 1..=3 {
        println!("d^{n}/dx^{n} j_1.5 at 3 = {:.15}", j_norm_derivative(o, 3.0, n));
    }
    for alpha in [-0.5, 0.0, 1.0] {
        println!("b_{alpha} = {:.15}", b_alpha(alpha));
    }
    Ok(())
}
