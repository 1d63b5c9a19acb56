//! The Hankel transform H_alpha: the Gaussian is a fixed point and the
//! transform of an indicator has a closed form.

use logan_lab::bessel::{b_alpha, j_norm, Order};
use logan_lab::hankel::{hankel_transform, RadialProfile, Measure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = Order::new(1.0)?;
    let measure = Measure::new(o);
    let gauss = RadialProfile::gaussian();
    for l in [0.0, 1.0, 3.0] {
        let h = hankel_transform(&measure, &gauss, l)?;
        println!("H(exp(-t^2/2))({l}) = {h:.14}   exp(-l^2/2) = {:.14}", (-0.5 * l * l).exp());
    }
    // H(chi_[0,1])(l) = b_alpha j_{alpha+1}(l) / (2 alpha + 2)
    let ind = RadialProfile::indicator(1.0);
    for l in [0.5, 4.0] {
        let h = hankel_transform(&measure, &ind, l)?;
        let want = b_alpha(1.0) * j_norm(o.shift(1.0), l) / 4.0;
        println!("H(chi)({l}) = {h:.14}   closed form {want:.14}");
    }
    Ok(())
}
