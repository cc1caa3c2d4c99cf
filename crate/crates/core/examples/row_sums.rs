//! Row sums of factorable matrices, including geometric weights far outside the f64 range.

use fuzzy_bv::harness::{dyadic_scheme, inverse_quartic_scheme};
use fuzzy_bv::{Policy, Result};

fn main() -> Result<()> {
    let policy = Policy::default();

    let s = inverse_quartic_scheme();
    let diag = s.row_sum_diagnostic(10_000, &policy)?;
    println!("u_k = k^-4, v = 1:   r_k = 1/k^3");
    for k in [1, 2, 10, 100] {
        println!("  r_{k:<4} = {:e}", s.row_sum(k)?);
    }
    println!(
        "  sum |r_k| through 10^4 = {:.10} ({:?})",
        diag.abs_sum, diag.verdict.verdict
    );

    let d = dyadic_scheme();
    let diag = d.row_sum_diagnostic(10_000, &policy)?;
    println!("u_k = 2^-k, v_i = 2^i: r_k = 2 - 2^-k");
    println!(
        "  r_5000 = {}, inf |r_k| = {} at k = {}",
        d.row_sum(5_000)?,
        diag.inf_abs,
        diag.inf_index
    );
    println!("  row sums {:?} (not summable)", diag.verdict.verdict);
    Ok(())
}
