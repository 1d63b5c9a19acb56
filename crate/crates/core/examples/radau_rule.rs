//! Radau-type rules: derivative terms at the origin plus nodes at the
//! zeros of j_{alpha+r}.

use logan_lab::bessel::{j_norm, Order};
use logan_lab::quadrature::{apply_radau, even_derivatives_at_origin, radau_rule, square_moment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = Order::new(0.7)?;
    let f = |x: f64| x * x * j_norm(o.shift(2.0), x).powi(2);
    let direct = square_moment(o, 2.7, 1);
    for r in 1..=3 {
        let rule = radau_rule(o, 2.0, r, 256)?;
        let derivs = even_derivatives_at_origin(f, r, 0.25);
        let got = apply_radau(&rule, f, &derivs, Some(2.0 * 0.7 + 3.0))?;
        println!("r = {r}: origin weights {:?}, rule {:.12}, direct {direct:.12}", rule.origin_weights(), got.value);
    }
    Ok(())
}
