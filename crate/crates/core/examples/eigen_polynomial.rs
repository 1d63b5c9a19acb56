//! The polynomial p_{alpha,m} in the Bessel eigenfunctions: its transform is
//! g_{alpha,m}, it is positive and decreasing on [0,1), and it vanishes to
//! order 2m+1 at 1.

use logan_lab::bessel::Order;
use logan_lab::eigenpoly::{build_p, monotonicity_check, multiplicity_at_one};
use logan_lab::extremal::ExtremalFunction;
use logan_lab::hankel::{hankel_transform, Measure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = Order::new(0.7)?;
    let measure = Measure::new(o);
    for m in 0..3 {
        let p = build_p(o, m)?;
        let g = ExtremalFunction::g(o, m)?;
        let prof = p.to_compact_profile();
        let worst = [0.0, 1.0, 4.0, 9.0]
            .iter()
            .map(|&l| hankel_transform(&measure, &prof, l).map(|h| (h - g.eval(l)).abs()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let mono = monotonicity_check(&p, 1e-3, 1e-3)?;
        println!(
            "m = {m}: coefficients {:?}, |H(p) - g| <= {worst:.1e}, multiplicity {}, decreasing {}",
            p.terms().iter().map(|t| t.1).collect::<Vec<_>>(),
            multiplicity_at_one(&p)?,
            mono.passed
        );
    }
    Ok(())
}
