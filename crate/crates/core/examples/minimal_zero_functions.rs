//! F_{alpha,n}: positive definite functions with the smallest first zero,
//! which at alpha = -1/2 are cos(x/n)^n.

use logan_lab::bessel::Order;
use logan_lab::eigenpoly::{eval_near_zero, thm_hn_function, ZeroExpansion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for alpha in [-0.5, 0.0, 1.0] {
        for n in 1..=4 {
            let (f, theta) = thm_hn_function(Order::new(alpha)?, n)?;
            let f = f.normalized();
            let zero = ZeroExpansion::new(&f, theta)?;
            let (v, _) = eval_near_zero(&f, &zero, theta * 0.99);
            println!("alpha = {alpha:>4}, n = {n}: theta = {theta:.10}, zero order {}, F(0.99 theta) = {v:.3e}", zero.multiplicity);
        }
    }
    Ok(())
}
