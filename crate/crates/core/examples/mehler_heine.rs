//! Scaled divided Jacobi polynomials approach the Bessel-type limits, and the
//! interval Gram matrices approach the half-line ones.

use logan_lab::jacobi_limit::{envelope_certificate, gram_limit, mehler_heine_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ys: Vec<f64> = (0..=800).map(|i| i as f64 * 0.01).collect();
    let xs = [0.3, 1.1, 2.0, 3.7];
    for k in 0..=2 {
        for n in [50, 100, 200] {
            let sup = mehler_heine_check(1.0, k, n, &ys)?;
            let gram = gram_limit(1.0, k, n, &xs)?.max_error;
            println!("alpha = 1, k = {k}, n = {n:>3}: sup error {sup:.3e}, Gram error {gram:.3e}");
        }
    }
    let cert = envelope_certificate(1.0, 8.0, 40)?;
    println!("envelope e^(L^2/4) = {:.3e}, last partial sum {:.3e}, certified {}", cert.envelope, cert.partial_sums.last().unwrap(), cert.passed);
    Ok(())
}
