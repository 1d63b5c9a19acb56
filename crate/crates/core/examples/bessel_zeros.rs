//! Positive zeros of the normalized Bessel function j_alpha.

use logan_lab::bessel::{zeros, Order};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for alpha in [-0.5, 0.0, 1.0, 2.5] {
        let table = zeros(Order::new(alpha)?, 5)?;
        let qs: Vec<String> = table.zeros().iter().map(|q| format!("{q:.12}")).collect();
        println!("alpha = {alpha:>4}: {}", qs.join("  "));
        println!("             max residual |j(q)| = {:.1e}", table.max_residual());
    }
    Ok(())
}
