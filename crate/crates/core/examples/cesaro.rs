//! Cesàro means of an oscillating crisp sequence around 5.

use fuzzy_bv::harness::inverse_quartic_scheme;
use fuzzy_bv::sequence::Family;
use fuzzy_bv::{cesaro_means, variation_report, FuzzyNumber, FuzzySequence, Policy, RealSequence, Result};

fn main() -> Result<()> {
    // X_i = 5 + (-1)^i / sqrt(i + 1)
    let wobble = RealSequence::alternating(
        RealSequence::power(1.0, 1.0, -0.5),
        RealSequence::power(-1.0, 1.0, -0.5),
    );
    let x = FuzzySequence::new(
        Family::crisp(RealSequence::Sum {
            terms: vec![RealSequence::constant(5.0), wobble],
        }),
        1,
    );
    let limit = FuzzyNumber::from_crisp(5.0)?;
    let means = cesaro_means(&x, &limit, 1_000)?;
    for k in [1usize, 10, 100, 1_000] {
        let m = means[k - x.start];
        println!(
            "k = {k:>4}: mean distance {m:.6}, times sqrt(k) {:.4}",
            m * (k as f64).sqrt()
        );
    }
    let s = inverse_quartic_scheme();
    let prime = s.uprime()?;
    let policy = Policy::default();
    println!(
        "row sums of G(u', v): {:?}",
        prime.row_sum_diagnostic(1_000, &policy)?.verdict.verdict
    );
    println!(
        "X in bv(u, v): {:?}",
        variation_report(&x, &s, 1_000, &policy)?.verdict.verdict
    );
    Ok(())
}
