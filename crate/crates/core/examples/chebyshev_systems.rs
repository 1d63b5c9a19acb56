//! Zero counts of combinations of Bessel eigenfunctions: n terms never have
//! more than n-1 zeros.

use logan_lab::bessel::Order;
use logan_lab::cli::random_zero_counts;
use logan_lab::eigenpoly::{count_zeros, BesselCombination, BesselSystem, Interval};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = Order::new(0.7)?;
    for system in [BesselSystem::Dirichlet, BesselSystem::Neumann, BesselSystem::Raised, BesselSystem::NeumannShifted] {
        let first = if system == BesselSystem::Neumann { 0 } else { 1 };
        let idx: Vec<usize> = (first..first + 4).collect();
        let counts = random_zero_counts(o, system, &idx, system.natural_interval(), 1, 200)?;
        println!("{system:?}: 4 terms, at most {} zeros over 200 combinations", counts.iter().max().unwrap());
    }
    let open = Interval { lo: 0.0, hi: 1.0, closed_lo: false, closed_hi: false };
    let c = BesselCombination::new(o, BesselSystem::Dirichlet, &[1.0, -0.3, 0.2], &[3, 4, 5])?;
    let z = count_zeros(&c, open)?;
    println!("eigenfunctions 3..5: {} zeros at {:?}", z.count(), z.crossings);
    Ok(())
}
