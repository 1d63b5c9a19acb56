//! Uncertainty-type products and their radial Dunkl counterparts.

use logan_lab::bessel::Order;
use logan_lab::extremal::{dunkl_radial_product, uncertainty_product, DunklVariant, UncertaintyVariant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = Order::new(0.0)?;
    for s in 0..3 {
        for m in 0..2 {
            let (p1, _, c1) = uncertainty_product(o, m, s, UncertaintyVariant::I)?;
            let (p3, _, _) = uncertainty_product(o, m, s, UncertaintyVariant::III)?;
            println!("s = {s}, m = {m}: I {p1:.10} (origin derivatives {:?}), III {p3:.10}", c1.origin_derivatives);
        }
    }
    for d in 1..=3 {
        let p = dunkl_radial_product(d, 0.5, 1, 0, DunklVariant::Logan)?;
        println!("d = {d}, kappa sum 0.5, m = 1: {p:.10}");
    }
    Ok(())
}
