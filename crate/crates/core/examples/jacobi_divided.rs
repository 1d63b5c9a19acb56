//! Jacobi polynomials divided by their largest zeros keep nonnegative
//! coefficients, so their interval Gram matrices are positive semidefinite.

use logan_lab::jacobi_limit::{divided_poly, gram_psd_interval, jacobi_eval, translate_interval, JacobiPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let jp = JacobiPoly::new(1.0, 8)?;
    println!("zeros of R_8 (alpha = 1): {:?}", jp.zeros.iter().map(|z| format!("{z:.6}")).collect::<Vec<_>>());
    let f = |x: f64| jacobi_eval(1.0, 3, x);
    let (t, r) = (0.3, -0.6);
    println!("tau^t R_3(r) = {:.12}, R_3(t) R_3(r) = {:.12}", translate_interval(1.0, t, &f, r), f(t) * f(r));
    for k in 0..=3 {
        let p = divided_poly(1.0, 12, k)?;
        println!(
            "n = 12, k = {k}: min coefficient / p(1) = {:.3e}, Gram min eigenvalue {:.3e}",
            p.min_relative_coefficient(),
            gram_psd_interval(1.0, 12, k, &[0.9, 0.5, -0.2, -0.8])?
        );
    }
    Ok(())
}
