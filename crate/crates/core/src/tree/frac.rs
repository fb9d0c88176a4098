//! Finite fractional power series with exponents in `(1/k) N^d` and
//! coefficients in `Q(ζ_k)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::exact::{min_of_set, parse_rat, ExpVec, Height, Rat};
use crate::poly::Coef;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FracSeries {
    d: usize,
    k: u32,
    terms: BTreeMap<ExpVec, CycloNum>,
}

impl FracSeries {
    pub fn new(d: usize, k: u32, terms: impl IntoIterator<Item = (ExpVec, CycloNum)>) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("denominator k must be positive"));
        }
        let mut out = FracSeries { d, k, terms: BTreeMap::new() };
        let kk = BigInt::from(k);
        for (e, c) in terms {
            if e.dim() != d {
                return Err(Error::DimensionMismatch { left: e.dim(), right: d });
            }
            if !kk.is_multiple_of(&e.denominator()) {
                return Err(Error::invalid(format!("exponent {e} has a denominator not dividing k={k}")));
            }
            if c.k() != k {
                return Err(Error::invalid(format!("coefficient conductor {} differs from k={k}", c.k())));
            }
            match out.terms.get_mut(&e) {
                Some(v) => v.add_assign_ref(&c),
                None => {
                    out.terms.insert(e, c);
                }
            }
        }
        out.terms.retain(|_, c| !Coef::is_zero(c));
        Ok(out)
    }

    pub fn zero(d: usize, k: u32) -> Self {
        FracSeries { d, k, terms: BTreeMap::new() }
    }

    /// `Σ X^{h_i}` with unit coefficients.
    pub fn sum_of_monomials(k: u32, exps: &[ExpVec]) -> Result<Self> {
        let d = exps.first().map_or(0, |e| e.dim());
        Self::new(d, k, exps.iter().map(|e| (e.clone(), CycloNum::one(k))))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, CycloNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExpVec) -> CycloNum {
        self.terms.get(e).cloned().unwrap_or_else(|| CycloNum::zero(self.k))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch { left: self.d, right: other.d });
        }
        if self.k != other.k {
            return Err(Error::invalid(format!("denominators differ: {} vs {}", self.k, other.k)));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.entry(e.clone()).or_insert_with(|| CycloNum::zero(self.k));
            *v = v.sub_ref(c);
        }
        terms.retain(|_, c| !Coef::is_zero(c));
        Ok(FracSeries { d: self.d, k: self.k, terms })
    }

    /// Exponent `λ` with `self = X^λ · unit`, if the support has a least element.
    pub fn order(&self) -> Option<ExpVec> {
        let first = self.terms.keys().next()?;
        let mut best = first.clone();
        for e in self.terms.keys() {
            if e.partial_leq(&best).ok()?.is_le() {
                best = e.clone();
            }
        }
        self.terms.keys().all(|e| best.partial_leq(e).map(|c| c.is_le()).unwrap_or(false)).then_some(best)
    }

    /// `ε * s`: multiplies `c_α` by `ζ_k^{<e, kα>}`.
    pub fn star(&self, eps: &[u32]) -> Result<Self> {
        if eps.len() != self.d {
            return Err(Error::DimensionMismatch { left: eps.len(), right: self.d });
        }
        let k = Rat::from_integer(self.k.into());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut pow = 0i64;
                for (ei, a) in eps.iter().zip(e.entries()) {
                    let ka = (a * &k).to_integer().to_i64().expect("small exponent");
                    pow += *ei as i64 * ka;
                }
                (e.clone(), c.mul_ref(&CycloNum::zeta_pow(self.k, pow)))
            })
            .collect();
        Ok(FracSeries { d: self.d, k: self.k, terms })
    }

    /// Substitutes `X_i = T^{c_i}`, giving a series in one variable.
    pub fn substitute(&self, c: &[u64]) -> Result<Self> {
        if c.len() != self.d {
            return Err(Error::DimensionMismatch { left: c.len(), right: self.d });
        }
        if c.contains(&0) {
            return Err(Error::invalid("substitution exponents must be positive"));
        }
        let terms = self.terms.iter().map(|(e, v)| {
            let s: Rat = e.entries().iter().zip(c).map(|(a, &ci)| a * Rat::from_integer(ci.into())).sum();
            (ExpVec::new(vec![s]).expect("nonnegative"), v.clone())
        });
        Self::new(1, self.k, terms)
    }

    pub fn to_json(&self) -> Vec<RootTerm> {
        self.terms
            .iter()
            .map(|(e, c)| RootTerm {
                exp: e.entries().iter().map(|x| x.to_string()).collect(),
                coef: CoefJson { k: c.k(), c: c.coeffs().iter().map(|x| x.to_string()).collect() },
            })
            .collect()
    }

    pub fn from_json(d: usize, k: u32, terms: &[RootTerm]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| {
                let e = ExpVec::new(t.exp.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?)?;
                let c =
                    CycloNum::from_reduced(t.coef.k, t.coef.c.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?)?;
                Ok((e, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, k, parsed)
    }
}

/// Renders as e.g. `X1^(1/4)*X2^(1/4) + (1 + z)*X1^(3/4)*X2^(1/4)`.
impl fmt::Display for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> =
            if self.d == 1 { vec!["X".into()] } else { (1..=self.d).map(|i| format!("X{i}")).collect() };
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            let mut factors = Vec::new();
            if cs != "1" || e.is_zero() {
                factors.push(if cs.contains([' ']) { format!("({cs})") } else { cs });
            }
            for (name, a) in names.iter().zip(e.entries()) {
                if Zero::is_zero(a) {
                    continue;
                }
                if a.is_integer() {
                    factors.push(if *a == Rat::from_integer(1.into()) { name.clone() } else { format!("{name}^{a}") });
                } else {
                    factors.push(format!("{name}^({a})"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Contact `O(a, b)`: the exponent `λ` with `a - b = X^λ · unit`, or infinity if `a = b`.
pub fn contact(a: &FracSeries, b: &FracSeries) -> Result<Height> {
    let diff = a.sub(b)?;
    if diff.is_zero() {
        return Ok(Height::Infinite);
    }
    match diff.order() {
        Some(l) => Ok(Height::Finite(l)),
        None => Err(Error::NotQuasiOrdinaryRoots(format!("the difference {diff} is not a monomial times a unit"))),
    }
}

/// Least pairwise contact in a set of at least two roots.
pub fn min_contact(roots: &[&FracSeries]) -> Result<Height> {
    let mut all = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            all.push(contact(roots[i], roots[j])?);
        }
    }
    min_of_set(all.iter())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefJson {
    pub k: u32,
    pub c: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTerm {
    pub exp: Vec<String>,
    pub coef: CoefJson,
}

/// On-disk roots file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsFile {
    pub d: usize,
    pub k: u32,
    pub roots: Vec<Vec<RootTerm>>,
}

impl RootsFile {
    pub fn from_roots(d: usize, k: u32, roots: &[FracSeries]) -> Self {
        RootsFile { d, k, roots: roots.iter().map(|r| r.to_json()).collect() }
    }

    pub fn to_roots(&self) -> Result<Vec<FracSeries>> {
        self.roots.iter().map(|r| FracSeries::from_json(self.d, self.k, r)).collect()
    }
}
