//! Exact rational values, exponent vectors and the componentwise partial order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::parse(format!("bad rational '{s}'")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::parse(format!("bad rational '{s}'")))?;
            if d.is_zero() {
                return Err(Error::parse(format!("zero denominator in '{s}'")));
            }
            Rat::new(n, d)
        }
        None => Rat::from_integer(s.parse().map_err(|_| Error::parse(format!("bad rational '{s}'")))?),
    };
    Ok(parsed)
}

/// Result of comparing two vectors in the componentwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Comparison {
    pub fn from_ordering(o: Option<Ordering>) -> Self {
        match o {
            Some(Ordering::Less) => Comparison::Less,
            Some(Ordering::Equal) => Comparison::Equal,
            Some(Ordering::Greater) => Comparison::Greater,
            None => Comparison::Incomparable,
        }
    }

    pub fn is_le(self) -> bool {
        matches!(self, Comparison::Less | Comparison::Equal)
    }
}

/// A `d`-tuple of nonnegative rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(Vec<Rat>);

impl ExpVec {
    pub fn new(entries: Vec<Rat>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("exponent vector must have positive dimension"));
        }
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::invalid("exponent vector entries must be nonnegative"));
        }
        Ok(ExpVec(entries))
    }

    pub fn zero(dim: usize) -> Self {
        ExpVec(vec![Rat::zero(); dim])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        ExpVec::new(entries.iter().map(|&e| rat_int(e)).collect()).expect("nonnegative integers")
    }

    /// Builds `(n_1/den, ..., n_d/den)`.
    pub fn from_fraction(numerators: &[i64], den: i64) -> Self {
        ExpVec::new(numerators.iter().map(|&n| rat(n, den)).collect()).expect("nonnegative fraction")
    }

    /// Parses `"(1/4, 1/4)"`, `"1/4,1/4"` or a bare scalar `"3/2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = inner.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?;
        ExpVec::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn partial_leq(&self, other: &ExpVec) -> Result<Comparison> {
        check_dims(self.dim(), other.dim())?;
        Ok(compare_slices(&self.0, &other.0))
    }

    /// Lowest common denominator of the entries.
    pub fn denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        assert_eq!(self.dim(), other.dim());
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`; `None` if some entry would turn negative.
    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        assert_eq!(self.dim(), other.dim());
        let v: Vec<Rat> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        if v.iter().any(|e| e.is_negative()) {
            None
        } else {
            Some(ExpVec(v))
        }
    }

    pub fn scale(&self, factor: &Rat) -> ExpVec {
        assert!(!factor.is_negative());
        ExpVec(self.0.iter().map(|e| e * factor).collect())
    }

    pub fn scale_int(&self, factor: u64) -> ExpVec {
        self.scale(&Rat::from_integer(BigInt::from(factor)))
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

/// Componentwise comparison of equal-length slices.
pub fn compare_slices<T: Ord>(a: &[T], b: &[T]) -> Comparison {
    let mut le = true;
    let mut ge = true;
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
        if !le && !ge {
            return Comparison::Incomparable;
        }
    }
    match (le, ge) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    }
}

/// An exponent vector or the sentinel `∞`, which sits above every vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Height {
    Finite(ExpVec),
    Infinite,
}

impl Height {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Height::Infinite)
    }

    pub fn finite(&self) -> Option<&ExpVec> {
        match self {
            Height::Finite(v) => Some(v),
            Height::Infinite => None,
        }
    }

    pub fn compare(&self, other: &Height) -> Result<Comparison> {
        Ok(match (self, other) {
            (Height::Infinite, Height::Infinite) => Comparison::Equal,
            (Height::Infinite, Height::Finite(_)) => Comparison::Greater,
            (Height::Finite(_), Height::Infinite) => Comparison::Less,
            (Height::Finite(a), Height::Finite(b)) => a.partial_leq(b)?,
        })
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(v) => write!(f, "{v}"),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

impl From<ExpVec> for Height {
    fn from(v: ExpVec) -> Self {
        Height::Finite(v)
    }
}

/// The minimum of a set all of whose elements are pairwise comparable.
pub fn min_of_set<'a, I>(set: I) -> Result<Height>
where
    I: IntoIterator<Item = &'a Height>,
{
    let items: Vec<&Height> = set.into_iter().collect();
    let mut best = *items.first().ok_or_else(|| Error::invalid("minimum of an empty set"))?;
    for h in &items[1..] {
        match best.compare(h)? {
            Comparison::Greater => best = h,
            Comparison::Incomparable => return Err(Error::Incomparable),
            _ => {}
        }
    }
    // every element must be comparable with every other, not only with the running minimum
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            if a.compare(b)? == Comparison::Incomparable {
                return Err(Error::Incomparable);
            }
        }
    }
    Ok(best.clone())
}

/// `Σ c_i a_i`.
pub fn scalar(c: &[i64], a: &ExpVec) -> Result<Rat> {
    check_dims(c.len(), a.dim())?;
    Ok(c.iter().zip(a.entries()).fold(Rat::zero(), |acc, (ci, ai)| acc + ai * BigInt::from(*ci)))
}
