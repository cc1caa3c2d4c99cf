//! Arithmetic, the supremum metric and equivalence on triangular and trapezoidal numbers.

use fuzzy_bv::{are_equivalent, equivalence_witness, is_symmetric, metric_d, FuzzyNumber, Result};

fn main() -> Result<()> {
    let x = FuzzyNumber::from_triangular(1.0, 2.0, 4.0)?;
    let y = FuzzyNumber::from_trapezoidal(-1.0, 0.0, 1.0, 3.0)?;

    let sum = &x + &y;
    let diff = &x - &y;
    println!("X       = {:?}", x.cut(0.0));
    println!("Y       = {:?}", y.cut(0.0));
    println!("X + Y   : 0-cut {:?}, 1-cut {:?}", sum.cut(0.0), sum.cut(1.0));
    println!("X - Y   : 0-cut {:?}, 1-cut {:?}", diff.cut(0.0), diff.cut(1.0));
    println!("d(X, Y) = {}", metric_d(&x, &y));
    println!("d(X, 0) = {}", x.norm());

    // X - X is symmetric but not zero
    let copy = x.clone();
    let self_diff = &x - &copy;
    println!(
        "X - X symmetric: {}, norm {}",
        is_symmetric(&self_diff, 0.0)?,
        self_diff.norm()
    );

    let a = FuzzyNumber::from_triangular(-1.0, 0.0, 1.0)?;
    let b = FuzzyNumber::from_triangular(-3.0, 0.0, 3.0)?;
    println!("a ~ b: {}", are_equivalent(&a, &b, 1e-12)?);
    if let Some((s1, s2)) = equivalence_witness(&a, &b, 1e-12)? {
        println!("a + S1 = b + S2 within {}", metric_d(&(&a + &s1), &(&b + &s2)));
    }
    Ok(())
}
