//! Natural density of large differences for a telescoping crisp sequence.

use fuzzy_bv::sequence::Family;
use fuzzy_bv::{density_table, statistical_density, FuzzySequence, RealSequence, Result};

fn main() -> Result<()> {
    // X_k = 4^{1-k}/3, so d(ΔX_k, 0) = 4^{-k}
    let x = FuzzySequence::new(Family::crisp(RealSequence::geometric(4.0 / 3.0, 0.25)), 0);
    for eps in [0.1, 0.01, 1e-4] {
        println!(
            "eps = {eps:e}: density at n = 10^4 is {:e}",
            statistical_density(&x, eps, 10_000)?
        );
    }
    let table = density_table(&x, 0.01, 10_000)?;
    for row in table.iter().filter(|r| [0, 3, 10, 100, 1_000, 10_000].contains(&r.n)) {
        println!("  n = {:>5}: count {}, density {:e}", row.n, row.count, row.density);
    }
    Ok(())
}
