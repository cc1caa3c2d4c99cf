//! The metrics D on bv(u, v) and rho on c(Δ) under shrinking symmetric perturbations.

use fuzzy_bv::harness::inverse_quartic_scheme;
use fuzzy_bv::sequence::Family;
use fuzzy_bv::{bv_metric_d, c_delta_metric_rho, FuzzySequence, RealSequence, Result};

fn main() -> Result<()> {
    let s = inverse_quartic_scheme();
    let x = FuzzySequence::new(
        Family::triangular(
            RealSequence::Sum {
                terms: vec![RealSequence::constant(1.0), RealSequence::power(-1.0, 0.0, -1.0)],
            },
            RealSequence::constant(1.0),
            RealSequence::Sum {
                terms: vec![RealSequence::constant(1.0), RealSequence::power(1.0, 0.0, -1.0)],
            },
        ),
        1,
    );
    println!("{:>7}  {:>14}  {:>14}", "n", "D(X^n, X)", "rho(X^n, X)");
    for n in [10.0, 100.0, 1_000.0, 10_000.0] {
        let xn = x.perturbed(Family::symmetric_triangle(1.0 / n));
        println!(
            "{n:>7}  {:>14.6e}  {:>14.6e}",
            bv_metric_d(&xn, &x, &s, 10_000)?,
            c_delta_metric_rho(&xn, &x, 10_000)?
        );
    }
    Ok(())
}
