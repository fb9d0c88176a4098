//! Packed exponent tuples: up to eight variables, sixteen bits each.
//!
//! Variable `i` occupies bits `16*(7-i)..16*(8-i)`, so comparing the packed
//! integers is the lexicographic order with the first variable most significant.

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;
/// Exponents stay strictly below this bound so a sum of two never carries.
pub const MAX_EXP: u32 = 1 << 15;

const LANE: u32 = 16;
const LANE_MASK: u128 = 0xFFFF;
const HIGH_BITS: u128 = 0x8000_8000_8000_8000_8000_8000_8000_8000;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(pub(crate) u128);

#[inline]
fn shift(i: usize) -> u32 {
    LANE * (MAX_VARS - 1 - i) as u32
}

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(exps: &[u32]) -> Result<Mono> {
        if exps.len() > MAX_VARS {
            return Err(Error::invalid(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            if e >= MAX_EXP {
                return Err(Error::invalid(format!("exponent {e} is too large")));
            }
            m |= (e as u128) << shift(i);
        }
        Ok(Mono(m))
    }

    pub fn var(i: usize, e: u32) -> Mono {
        assert!(e < MAX_EXP);
        Mono((e as u128) << shift(i))
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & LANE_MASK) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn total_degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        let s = self.0 + other.0;
        assert!(s & HIGH_BITS == 0, "exponent overflow in monomial product");
        Mono(s)
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(self, other: Mono) -> Option<Mono> {
        if self.divisible_by(other) {
            Some(Mono(self.0 - other.0))
        } else {
            None
        }
    }

    #[inline]
    pub fn divisible_by(self, other: Mono) -> bool {
        // lanewise a >= b iff the borrow-free subtraction keeps every lane below 2^15
        let d = (self.0 | HIGH_BITS).wrapping_sub(other.0);
        d & HIGH_BITS == HIGH_BITS
    }

    pub fn with_exp(self, i: usize, e: u32) -> Mono {
        assert!(e < MAX_EXP);
        let cleared = self.0 & !(LANE_MASK << shift(i));
        Mono(cleared | ((e as u128) << shift(i)))
    }

    pub fn pow(self, k: u32) -> Mono {
        let mut out = Mono::ONE;
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}
