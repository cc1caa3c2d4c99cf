//! Extended-exponent floats for weight products.
//!
//! Geometric weights such as `u_k = 2^{-k}`, `v_i = 2^i` leave the `f64` range long
//! before the horizons used in practice, while their products `u_k Σ v_i` stay
//! moderate. A [`Scaled`] value is `mant · 2^exp` with `mant ∈ [0.5, 1)` in
//! magnitude, so intermediate prefix sums never overflow or flush to zero.

use std::cmp::Ordering;
use std::ops::{Add, Mul};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    mant: f64,
    exp: i64,
}

/// Splits a finite nonzero `x` into `(m, e)` with `x = m · 2^e`, `0.5 ≤ |m| < 1`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal: renormalize first
        let (m, e) = frexp(x * f64::from_bits(0x4350_0000_0000_0000)); // 2^54
        return (m, e - 54);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, biased - 1022)
}

/// `2^e` for `e` in the normal range.
fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

impl Scaled {
    pub(crate) const ZERO: Scaled = Scaled { mant: 0.0, exp: 0 };

    pub(crate) fn from_f64(x: f64) -> Scaled {
        let (mant, exp) = frexp(x);
        Scaled { mant, exp }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.mant.is_finite()
    }

    pub(crate) fn to_f64(self) -> f64 {
        if self.mant == 0.0 || !self.mant.is_finite() {
            return self.mant;
        }
        if self.exp > 1024 {
            return self.mant.signum() * f64::INFINITY;
        }
        if self.exp < -1080 {
            return self.mant.signum() * 0.0;
        }
        // two half steps keep both factors in the normal range
        let h = self.exp / 2;
        self.mant * pow2(h) * pow2(self.exp - h)
    }

    /// `x^n` by repeated squaring with renormalization after every product.
    pub(crate) fn powi(x: f64, mut n: u64) -> Scaled {
        let mut base = Scaled::from_f64(x);
        let mut acc = Scaled::from_f64(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    fn normalize(mant: f64, exp: i64) -> Scaled {
        if mant == 0.0 || !mant.is_finite() {
            return Scaled { mant, exp: 0 };
        }
        let (m, e) = frexp(mant);
        Scaled { mant: m, exp: exp + e }
    }
}

impl Mul for Scaled {
    type Output = Scaled;

    fn mul(self, rhs: Scaled) -> Scaled {
        if self.is_zero() || rhs.is_zero() {
            return Scaled {
                mant: self.mant * rhs.mant,
                exp: 0,
            };
        }
        Scaled::normalize(self.mant * rhs.mant, self.exp + rhs.exp)
    }
}

impl Add for Scaled {
    type Output = Scaled;

    fn add(self, rhs: Scaled) -> Scaled {
        if rhs.is_zero() {
            return self;
        }
        if self.is_zero() {
            return rhs;
        }
        if !self.is_finite() || !rhs.is_finite() {
            return Scaled {
                mant: self.mant + rhs.mant,
                exp: 0,
            };
        }
        let (big, small) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = big.exp - small.exp;
        if shift > 1100 {
            return big;
        }
        let h = shift / 2;
        let aligned = small.mant * pow2(-h) * pow2(-(shift - h));
        Scaled::normalize(big.mant + aligned, big.exp)
    }
}

impl PartialOrd for Scaled {
    fn partial_cmp(&self, other: &Scaled) -> Option<Ordering> {
        let diff = *self
            + Scaled {
                mant: -other.mant,
                exp: other.exp,
            };
        diff.mant.partial_cmp(&0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_ordinary_values() {
        for x in [1.0, -3.75, 1e-300, 5e-324, 1.7e308, 0.0, 123456.789] {
            assert_eq!(Scaled::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn geometric_products_stay_exact() {
        let up = Scaled::powi(2.0, 5000);
        let down = Scaled::powi(0.5, 5000);
        assert_eq!((up * down).to_f64(), 1.0);
        assert_eq!(up.to_f64(), f64::INFINITY);
        assert_eq!(down.to_f64(), 0.0);
        assert_eq!(Scaled::powi(3.0, 7).to_f64(), 2187.0);
    }

    #[test]
    fn sums_across_exponents() {
        let mut acc = Scaled::ZERO;
        for i in 0..=2000u64 {
            acc = acc + Scaled::powi(2.0, i);
        }
        // 2^2001 - 1 rounds to 2^2001
        assert_eq!((acc * Scaled::powi(0.5, 2000)).to_f64(), 2.0);
        assert!(Scaled::from_f64(2.0) > Scaled::from_f64(1.5));
        assert!(Scaled::from_f64(-2.0) < Scaled::from_f64(1e-300));
    }
}
