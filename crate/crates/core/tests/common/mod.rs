//! Shared generators and the dense-level brute-force oracle.
#![allow(dead_code)]

use fuzzy_bv::FuzzyNumber;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Levels `j / DENSE` for `j = 0..=DENSE`.
pub const DENSE: usize = 100_000;

/// A trapezoid `(a, b, c, d)`; triangles have `b == c`.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Shape {
    pub fn lower(&self, alpha: f64) -> f64 {
        self.a + alpha * (self.b - self.a)
    }

    pub fn upper(&self, alpha: f64) -> f64 {
        self.d - alpha * (self.d - self.c)
    }

    pub fn build(&self) -> FuzzyNumber {
        if self.b == self.c {
            FuzzyNumber::from_triangular(self.a, self.b, self.d).unwrap()
        } else {
            FuzzyNumber::from_trapezoidal(self.a, self.b, self.c, self.d).unwrap()
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random triangle or trapezoid with corners in `[-10, 10]`; about one in ten is degenerate.
pub fn random_shape(rng: &mut ChaCha8Rng) -> Shape {
    let mut p: Vec<f64> = (0..4).map(|_| rng.random_range(-10.0..10.0)).collect();
    p.sort_by(f64::total_cmp);
    match rng.random_range(0..10) {
        0 => Shape {
            a: p[1],
            b: p[1],
            c: p[1],
            d: p[1],
        },
        1..=4 => Shape {
            a: p[0],
            b: p[1],
            c: p[1],
            d: p[3],
        },
        _ => Shape {
            a: p[0],
            b: p[1],
            c: p[2],
            d: p[3],
        },
    }
}

pub fn dense_levels() -> impl Iterator<Item = f64> {
    (0..=DENSE).map(|j| j as f64 / DENSE as f64)
}

/// Largest deviation between a library number and oracle envelopes over the dense levels.
pub fn dense_gap(x: &FuzzyNumber, lower: impl Fn(f64) -> f64, upper: impl Fn(f64) -> f64) -> f64 {
    dense_levels()
        .map(|a| (x.lower_at(a) - lower(a)).abs().max((x.upper_at(a) - upper(a)).abs()))
        .fold(0.0, f64::max)
}

/// Brute-force sup metric over the dense levels.
pub fn dense_metric(x: &Shape, y: &Shape) -> f64 {
    dense_levels()
        .map(|a| (x.lower(a) - y.lower(a)).abs().max((x.upper(a) - y.upper(a)).abs()))
        .fold(0.0, f64::max)
}

/// Brute-force `sup_α |(X̲ + X̄)/2|`.
pub fn dense_midpoint_sup(x: &Shape) -> f64 {
    dense_levels()
        .map(|a| ((x.lower(a) + x.upper(a)) / 2.0).abs())
        .fold(0.0, f64::max)
}
