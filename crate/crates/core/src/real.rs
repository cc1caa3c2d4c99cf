//! Closed-form real sequences `k ↦ f(k)`.
//!
//! These are the building blocks for weight schemes and for the crisp and shaped
//! fuzzy sequence families. They serialize as tagged records
//! (`{"family": "power", "a": 1, "p": -4}`) so configurations stay auditable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scaled::Scaled;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum RealSequence {
    /// `c`
    Const { c: f64 },
    /// `a + b·k`
    Linear { a: f64, b: f64 },
    /// `a·(k + s)^p`
    Power {
        a: f64,
        #[serde(default)]
        s: f64,
        p: f64,
    },
    /// `a·r^k`
    Geometric { a: f64, r: f64 },
    /// `values[k - first]`
    Table {
        values: Vec<f64>,
        #[serde(default)]
        first: usize,
    },
    /// `even(k)` for even `k`, `odd(k)` for odd `k`.
    Alternating {
        even: Box<RealSequence>,
        odd: Box<RealSequence>,
    },
    /// Pointwise sum.
    Sum { terms: Vec<RealSequence> },
    /// `k·of(k)`
    IndexTimes { of: Box<RealSequence> },
}

impl RealSequence {
    pub fn constant(c: f64) -> Self {
        RealSequence::Const { c }
    }

    pub fn linear(a: f64, b: f64) -> Self {
        RealSequence::Linear { a, b }
    }

    pub fn power(a: f64, s: f64, p: f64) -> Self {
        RealSequence::Power { a, s, p }
    }

    pub fn geometric(a: f64, r: f64) -> Self {
        RealSequence::Geometric { a, r }
    }

    pub fn table(values: Vec<f64>, first: usize) -> Self {
        RealSequence::Table { values, first }
    }

    pub fn alternating(even: RealSequence, odd: RealSequence) -> Self {
        RealSequence::Alternating {
            even: Box::new(even),
            odd: Box::new(odd),
        }
    }

    pub fn index_times(of: RealSequence) -> Self {
        RealSequence::IndexTimes { of: Box::new(of) }
    }

    pub(crate) fn eval_scaled(&self, k: usize) -> Result<Scaled> {
        let value = match self {
            RealSequence::Const { c } => Scaled::from_f64(*c),
            RealSequence::Linear { a, b } => Scaled::from_f64(a + b * k as f64),
            RealSequence::Power { a, s, p } => {
                let base = k as f64 + s;
                let pow = if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
                    base.powi(*p as i32)
                } else {
                    base.powf(*p)
                };
                Scaled::from_f64(a * pow)
            }
            RealSequence::Geometric { a, r } => Scaled::from_f64(*a) * Scaled::powi(*r, k as u64),
            RealSequence::Table { values, first } => {
                let end = first + values.len();
                match k.checked_sub(*first).and_then(|j| values.get(j)) {
                    Some(&v) => Scaled::from_f64(v),
                    None => {
                        return Err(Error::TableExhausted {
                            index: k,
                            first: *first,
                            end,
                        })
                    }
                }
            }
            RealSequence::Alternating { even, odd } => {
                if k.is_multiple_of(2) {
                    even.eval_scaled(k)?
                } else {
                    odd.eval_scaled(k)?
                }
            }
            RealSequence::Sum { terms } => {
                let mut acc = Scaled::ZERO;
                for t in terms {
                    acc = acc + t.eval_scaled(k)?;
                }
                acc
            }
            RealSequence::IndexTimes { of } => Scaled::from_f64(k as f64) * of.eval_scaled(k)?,
        };
        if value.to_f64().is_nan() {
            return Err(Error::InvalidValue(format!("sequence value at index {k} is undefined")));
        }
        Ok(value)
    }

    /// The value at `k`; may over- or underflow for geometric families at large `k`.
    pub fn at(&self, k: usize) -> Result<f64> {
        Ok(self.eval_scaled(k)?.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_evaluate() {
        assert_eq!(RealSequence::constant(2.0).at(9).unwrap(), 2.0);
        assert_eq!(RealSequence::linear(1.0, -2.0).at(3).unwrap(), -5.0);
        assert_eq!(RealSequence::power(1.0, 0.0, -4.0).at(3).unwrap(), 1.0 / 81.0);
        assert_eq!(RealSequence::power(2.0, 1.0, 0.5).at(3).unwrap(), 4.0);
        assert_eq!(RealSequence::geometric(1.0, 0.5).at(3).unwrap(), 0.125);
        assert_eq!(RealSequence::geometric(3.0, -2.0).at(3).unwrap(), -24.0);
        let t = RealSequence::table(vec![5.0, 6.0], 1);
        assert_eq!(t.at(2).unwrap(), 6.0);
        assert!(matches!(t.at(0), Err(Error::TableExhausted { .. })));
        assert!(matches!(t.at(3), Err(Error::TableExhausted { .. })));
        let alt = RealSequence::alternating(RealSequence::constant(0.0), RealSequence::linear(0.0, 1.0));
        assert_eq!(alt.at(4).unwrap(), 0.0);
        assert_eq!(alt.at(5).unwrap(), 5.0);
        let sum = RealSequence::Sum {
            terms: vec![RealSequence::constant(5.0), RealSequence::geometric(1.0, -1.0)],
        };
        assert_eq!(sum.at(3).unwrap(), 4.0);
        assert_eq!(
            RealSequence::index_times(RealSequence::power(1.0, 0.0, -1.0))
                .at(7)
                .unwrap(),
            1.0
        );
    }

    #[test]
    fn undefined_power_is_an_error() {
        assert!(RealSequence::power(1.0, -5.0, 0.5).at(1).is_err());
    }

    #[test]
    fn parses_tagged_records() {
        let s: RealSequence = serde_json::from_str(r#"{"family":"power","a":1,"p":-4}"#).unwrap();
        assert_eq!(s, RealSequence::power(1.0, 0.0, -4.0));
        assert!(serde_json::from_str::<RealSequence>(r#"{"family":"const","c":1,"d":2}"#).is_err());
        assert!(serde_json::from_str::<RealSequence>(r#"{"family":"cubic","c":1}"#).is_err());
    }
}
