//! Exact fixed-point view of a rational capacity vector.
//!
//! All capacities are multiplied by the lcm of their denominators, which turns
//! them into integers without losing anything. Cut values then compare as
//! plain `u128`s.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub(crate) struct FixedPoint {
    pub caps: Vec<u128>,
    scale: BigInt,
}

impl FixedPoint {
    pub fn new(caps: &[Rational]) -> Result<Self> {
        if let Some(c) = caps.iter().find(|c| c.is_negative()) {
            return Err(Error::Domain(format!("negative capacity {c}")));
        }
        let mut scale = BigInt::one();
        for c in caps {
            scale = scale.lcm(c.denom());
        }
        let caps = caps
            .iter()
            .map(|c| {
                let v = c.numer() * (&scale / c.denom());
                v.to_u128().ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        // Every cut sum must also fit.
        caps.iter()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow)?;
        Ok(FixedPoint { caps, scale })
    }

    pub fn to_rational(&self, v: u128) -> Rational {
        Rational::new(BigInt::from(v), self.scale.clone()).expect("scale is positive")
    }

    /// Largest scaled value that passes `value < threshold` (strict) or
    /// `value <= threshold`; `None` when nothing non-negative passes.
    pub fn bound(&self, threshold: &Rational, strict: bool) -> Option<u128> {
        let scaled = threshold.clone() * Rational::from_integer(self.scale.clone());
        let limit = if strict {
            scaled.ceil() - BigInt::one()
        } else {
            scaled.floor()
        };
        if limit < BigInt::zero() {
            return None;
        }
        Some(limit.to_u128().unwrap_or(u128::MAX))
    }
}
