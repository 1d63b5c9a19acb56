//! Extremizers f_{alpha,m}: the sign-change radius times the type equals
//! 2 q_{alpha,m+1}.

use logan_lab::bessel::Order;
use logan_lab::extremal::{last_sign_change, logan_product, moments, ExtremalFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for alpha in [-0.5, 0.0, 1.0] {
        let o = Order::new(alpha)?;
        for m in 0..3 {
            let p = logan_product(o, m)?;
            let f = ExtremalFunction::f(o, m)?;
            let sc = last_sign_change(&f, m)?;
            let mo = moments(&f, m)?;
            println!(
                "alpha = {alpha:>4}, m = {m}: product {:.12} (scan {:.12}), lambda {:.10}, moment residual {:.1e}",
                p.product,
                p.certificate,
                sc.lambda,
                mo.worst_relative(0..=m)
            );
        }
    }
    Ok(())
}
