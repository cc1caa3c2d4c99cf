//! Arithmetic and the metric against a brute-force oracle on 10^5 + 1 uniform levels.

mod common;

use common::{dense_gap, dense_metric, dense_midpoint_sup, random_shape, rng, Shape};
use fuzzy_bv::{metric_d, midpoint_profile, profile_sup_distance, validate, MidpointProfile};

const INPUTS: usize = 1_000;
const TOL: f64 = 1e-9;

fn pairs(seed: u64) -> Vec<(Shape, Shape)> {
    let mut r = rng(seed);
    (0..INPUTS)
        .map(|_| (random_shape(&mut r), random_shape(&mut r)))
        .collect()
}

#[test]
fn addition_matches_oracle() {
    for (x, y) in pairs(11) {
        let s = &x.build() + &y.build();
        assert!(validate(s.levels(), s.lower(), s.upper()).is_valid());
        let gap = dense_gap(&s, |a| x.lower(a) + y.lower(a), |a| x.upper(a) + y.upper(a));
        assert!(gap <= TOL, "{x:?} + {y:?}: gap {gap}");
    }
}

#[test]
fn subtraction_matches_oracle() {
    for (x, y) in pairs(12) {
        let s = &x.build() - &y.build();
        assert!(validate(s.levels(), s.lower(), s.upper()).is_valid());
        let gap = dense_gap(&s, |a| x.lower(a) - y.upper(a), |a| x.upper(a) - y.lower(a));
        assert!(gap <= TOL, "{x:?} - {y:?}: gap {gap}");
    }
}

#[test]
fn negation_and_scaling_match_oracle() {
    let mut r = rng(13);
    for (x, _) in pairs(13) {
        let c: f64 = rand::Rng::random_range(&mut r, -3.0..3.0);
        let xn = x.build();
        let neg = -&xn;
        assert!(dense_gap(&neg, |a| -x.upper(a), |a| -x.lower(a)) <= TOL);
        let sc = xn.scale(c).unwrap();
        let gap = if c >= 0.0 {
            dense_gap(&sc, |a| c * x.lower(a), |a| c * x.upper(a))
        } else {
            dense_gap(&sc, |a| c * x.upper(a), |a| c * x.lower(a))
        };
        assert!(gap <= TOL, "{c} * {x:?}: gap {gap}");
    }
}

#[test]
fn metric_matches_oracle() {
    for (x, y) in pairs(14) {
        let got = metric_d(&x.build(), &y.build());
        let want = dense_metric(&x, &y);
        assert!((got - want).abs() <= TOL, "d({x:?}, {y:?}) = {got}, oracle {want}");
    }
}

#[test]
fn midpoint_profile_matches_oracle() {
    for (x, _) in pairs(15) {
        let p = midpoint_profile(&x.build());
        let got = profile_sup_distance(&p, &MidpointProfile::zero());
        let want = dense_midpoint_sup(&x);
        assert!((got - want).abs() <= TOL, "{x:?}: {got} vs {want}");
        for a in [0.0, 0.25, 0.5, 1.0] {
            assert!((p.at(a) - (x.lower(a) + x.upper(a)) / 2.0).abs() <= TOL);
        }
    }
}
