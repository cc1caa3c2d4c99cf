//! Membership of the alternating ramp and the widening triangles in bv(u, v).

use fuzzy_bv::harness::{inverse_quartic_scheme, unit_scheme};
use fuzzy_bv::sequence::{alternating_crisp_ramp, widening_triangles};
use fuzzy_bv::{midpoint_variation_report, sup_norm_partial, variation_report, FuzzySequence, Policy, Result};

fn main() -> Result<()> {
    let policy = Policy::default();

    let x = FuzzySequence::new(alternating_crisp_ramp(), 1);
    let s = inverse_quartic_scheme();
    let var = variation_report(&x, &s, 10_000, &policy)?;
    let sup = sup_norm_partial(&x, 10_000, &policy)?;
    println!("alternating ramp, u_k = k^-4, v = 1");
    println!(
        "  V_K = {:.12}, verdict {:?}, slope {:?}",
        var.total, var.verdict.verdict, var.verdict.slope
    );
    println!("  sup d(X_k, 0) = {} ({:?})", sup.sup, sup.growth);
    for k in [1_001, 5_001, 9_999] {
        println!("  t_{k} k^2 = {:.6}", var.term(k) * (k * k) as f64);
    }

    let y = FuzzySequence::new(widening_triangles(), 0);
    let u = unit_scheme(0);
    let var = variation_report(&y, &u, 1_000, &policy)?;
    let mid = midpoint_variation_report(&y, &u, 1_000, &policy)?;
    println!("widening triangles, u = v = 1");
    println!("  t_1000 = {} , verdict {:?}", var.term(1_000), var.verdict.verdict);
    println!("  midpoint V_K = {}, verdict {:?}", mid.total, mid.verdict.verdict);
    Ok(())
}
