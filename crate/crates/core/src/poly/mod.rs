//! Sparse multivariate polynomials over exact coefficient domains.

mod discriminant;
mod json;
mod monomial;
mod parse;
mod resultant;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exact::Rat;

pub use discriminant::{
    discriminant_fv, discriminant_fv_resultant, is_monomial_times_unit, leading_v_coefficient, monomial_substitute,
    slice_v0, weierstrass_check,
};
pub use json::{poly_from_json, poly_to_json, JsonTerm};
pub use monomial::{Mono, MAX_EXP, MAX_VARS};
pub use parse::{infer_dimension, parse_poly, parse_weierstrass, parse_xy};
pub use resultant::{bareiss_det, resultant_bareiss, resultant_cofactor, resultant_y, resultant_y_in};

/// Exact coefficient domain.
pub trait Coef: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_int(&self, n: i64) -> Self;
    /// Exact quotient, `None` when `other` does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    /// A zero with the same ambient parameters as `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

impl Coef for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self * n
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, other);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Coef for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self * BigInt::from(n)
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// Ordered variable names: `X1..Xd`, then optionally `V`, then optionally `Y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarContext {
    names: Vec<String>,
    d: usize,
    has_t: bool,
    has_v: bool,
    has_y: bool,
}

pub type Ctx = Arc<VarContext>;

impl VarContext {
    fn build(d: usize, has_t: bool, has_v: bool, has_y: bool) -> Ctx {
        let mut names = Vec::new();
        if has_t {
            names.push("T".to_string());
        } else if d == 1 {
            names.push("X".to_string());
        } else {
            names.extend((1..=d).map(|i| format!("X{i}")));
        }
        if has_v {
            names.push("V".to_string());
        }
        if has_y {
            names.push("Y".to_string());
        }
        assert!(names.len() <= MAX_VARS, "too many variables");
        Arc::new(VarContext { names, d: if has_t { 1 } else { d }, has_t, has_v, has_y })
    }

    /// `X1..Xd`.
    pub fn x(d: usize) -> Ctx {
        Self::build(d, false, false, false)
    }
    /// `X1..Xd, Y`.
    pub fn xy(d: usize) -> Ctx {
        Self::build(d, false, false, true)
    }
    /// `X1..Xd, V`.
    pub fn xv(d: usize) -> Ctx {
        Self::build(d, false, true, false)
    }
    /// `X1..Xd, V, Y`.
    pub fn xvy(d: usize) -> Ctx {
        Self::build(d, false, true, true)
    }
    /// The one-variable base `T`, with optional `V` and `Y`.
    pub fn t(has_v: bool, has_y: bool) -> Ctx {
        Self::build(1, true, has_v, has_y)
    }

    pub fn with_v(&self) -> Ctx {
        Self::build(self.d, self.has_t, true, self.has_y)
    }
    pub fn without_v(&self) -> Ctx {
        Self::build(self.d, self.has_t, false, self.has_y)
    }
    pub fn without_y(&self) -> Ctx {
        Self::build(self.d, self.has_t, self.has_v, false)
    }
    pub fn with_y(&self) -> Ctx {
        Self::build(self.d, self.has_t, self.has_v, true)
    }
    /// Same shape with the base variables replaced by the single variable `T`.
    pub fn to_t(&self) -> Ctx {
        Self::build(1, true, self.has_v, self.has_y)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    /// Number of base variables (`X1..Xd` or `T`).
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn is_t(&self) -> bool {
        self.has_t
    }
    pub fn v(&self) -> Option<usize> {
        self.has_v.then_some(self.d)
    }
    pub fn y(&self) -> Option<usize> {
        self.has_y.then(|| self.names.len() - 1)
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A polynomial with terms stored in increasing packed-monomial order.
#[derive(Clone, PartialEq)]
pub struct MPoly<C> {
    ctx: Ctx,
    terms: Vec<(Mono, C)>,
}

impl<C: Coef> MPoly<C> {
    pub fn zero(ctx: &Ctx) -> Self {
        MPoly { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Ctx, c: C) -> Self {
        Self::term(ctx, Mono::ONE, c)
    }

    pub fn term(ctx: &Ctx, m: Mono, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(ctx);
        }
        MPoly { ctx: ctx.clone(), terms: vec![(m, c)] }
    }

    /// The variable with index `i`, with coefficient `one`.
    pub fn var(ctx: &Ctx, i: usize, one: C) -> Self {
        assert!(i < ctx.nvars());
        Self::term(ctx, Mono::var(i, 1), one)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut map: BTreeMap<Mono, C> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => acc.add_assign_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        MPoly { ctx: ctx.clone(), terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_exp_terms(ctx: &Ctx, terms: Vec<(Vec<u32>, C)>) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e.len() != ctx.nvars() {
                return Err(Error::DimensionMismatch { left: e.len(), right: ctx.nvars() });
            }
            out.push((Mono::from_exps(&e)?, c));
        }
        Ok(Self::from_terms(ctx, out))
    }

    fn from_sorted(ctx: &Ctx, terms: Vec<(Mono, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }
    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => None,
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Option<&C> {
        self.terms.first().filter(|(m, _)| *m == Mono::ONE).map(|(_, c)| c)
    }

    pub fn coefficient(&self, m: Mono) -> Option<&C> {
        self.terms.binary_search_by(|(t, _)| t.cmp(&m)).ok().map(|i| &self.terms[i].1)
    }

    /// Largest term in the packed (lexicographic) order.
    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Panics on context mismatch.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("context mismatch")
    }
    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("context mismatch")
    }
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("context mismatch")
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if subtract { b[j].1.neg_ref() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if subtract { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self::from_sorted(&self.ctx, out)
    }

    /// Product keeping only terms of weighted degree below `limit`.
    pub fn mul_truncated(&self, other: &Self, weights: &[u32], limit: u32) -> Self {
        assert!(self.ctx == other.ctx, "context mismatch");
        fn by_weight<'a, C>(p: &'a [(Mono, C)], weights: &[u32], limit: u32) -> Vec<(u32, &'a (Mono, C))> {
            let mut v: Vec<(u32, &(Mono, C))> =
                p.iter().map(|t| (weighted_degree(t.0, weights), t)).filter(|(w, _)| *w < limit).collect();
            v.sort_by_key(|(w, _)| *w);
            v
        }
        let (a, b) = (by_weight(&self.terms, weights, limit), by_weight(&other.terms, weights, limit));
        let mut acc: FxHashMap<Mono, C> = FxHashMap::default();
        for &(xa, (ma, ca)) in &a {
            for &(xb, (mb, cb)) in &b {
                if xa + xb >= limit {
                    break;
                }
                let m = ma.mul(*mb);
                let p = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign_ref(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|x| x.0);
        Self::from_sorted(&self.ctx, terms)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(*m, c);
        }
        let mut acc: FxHashMap<Mono, C> = FxHashMap::default();
        acc.reserve(small.len() * large.len() / 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(*mb);
                let p = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign_ref(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|x| x.0);
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn mul_term(&self, m: Mono, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, d)| {
                let p = d.mul_ref(c);
                (!p.is_zero()).then(|| (t.mul(m), p))
            })
            .collect();
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(Mono::ONE, c)
    }

    pub fn mul_int(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c.mul_int(n))).collect();
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect();
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let one = match self.terms.first() {
            Some((_, c)) => c.one_like(),
            None => return if k == 0 { panic!("0^0 requested") } else { self.clone() },
        };
        let mut result = Self::constant(&self.ctx, one);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Exact quotient `self / divisor`, `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?.clone();
        if self.is_zero() {
            return Some(Self::zero(&self.ctx));
        }
        if divisor.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                out.push((m.div(lm)?, c.exact_div(&lc)?));
            }
            return Some(Self::from_sorted(&self.ctx, out));
        }
        let mut rem: BTreeMap<Mono, C> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, C)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm)?;
            let qc = c.exact_div(&lc)?;
            for (dm, dc) in &divisor.terms[..divisor.len() - 1] {
                let t = dm.mul(qm);
                let p = dc.mul_ref(&qc);
                match rem.get_mut(&t) {
                    Some(e) => {
                        *e = e.sub_ref(&p);
                        if e.is_zero() {
                            rem.remove(&t);
                        }
                    }
                    None => {
                        rem.insert(t, p.neg_ref());
                    }
                }
            }
            quot.push((qm, qc));
        }
        quot.reverse();
        Some(Self::from_sorted(&self.ctx, quot))
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), c.mul_int(e as i64))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self::from_sorted(&self.ctx, terms)
    }

    /// Coefficients of the powers of `var`; entry `i` multiplies `var^i` and no longer involves `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Mono, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by_key(|x| x.0);
                Self::from_sorted(&self.ctx, b)
            })
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(ctx: &Ctx, var: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            let vi = Mono::var(var, i as u32);
            terms.extend(c.terms.iter().map(|(m, a)| (m.mul(vi), a.clone())));
        }
        Self::from_terms(ctx, terms)
    }

    /// Rewrites every monomial into `ctx` through `f`, merging collisions.
    pub fn map_monomials(&self, ctx: &Ctx, mut f: impl FnMut(Mono) -> Mono) -> Self {
        Self::from_terms(ctx, self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// Rewrites the polynomial into another context, moving named variables across.
    /// Fails if a variable with nonzero exponent has no counterpart.
    pub fn to_context(&self, ctx: &Ctx) -> Result<Self> {
        let map: Vec<Option<usize>> = self.ctx.names().iter().map(|n| ctx.index_of(n)).collect();
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut out = Mono::ONE;
            for (i, target) in map.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match target {
                    Some(j) => out = out.with_exp(*j, e),
                    None => {
                        return Err(Error::invalid(format!(
                            "variable {} is not available in the target context",
                            self.ctx.names()[i]
                        )))
                    }
                }
            }
            terms.push((out, c.clone()));
        }
        Ok(Self::from_terms(ctx, terms))
    }

    /// Keeps only terms with total degree below `n`.
    pub fn truncate_total(&self, n: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.total_degree() < n).cloned().collect();
        Self::from_sorted(&self.ctx, terms)
    }

    /// Keeps terms whose weighted degree is below `n`.
    pub fn truncate_weighted(&self, weights: &[u32], n: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| weighted_degree(*m, weights) < n).cloned().collect();
        Self::from_sorted(&self.ctx, terms)
    }

    pub fn map_coeffs<D: Coef>(&self, mut f: impl FnMut(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn is_monic_in(&self, var: usize) -> bool {
        match self.degree_in(var) {
            Some(n) => {
                let top = self.coeffs_in(var).swap_remove(n as usize);
                top.as_constant().is_some_and(|c| c.is_one())
            }
            None => false,
        }
    }

    /// Terms sorted by decreasing total degree, ties broken by decreasing lexicographic order.
    pub fn graded_terms(&self) -> Vec<&(Mono, C)> {
        let mut v: Vec<&(Mono, C)> = self.terms.iter().collect();
        v.sort_by(|a, b| (b.0.total_degree(), b.0).cmp(&(a.0.total_degree(), a.0)));
        v
    }
}

pub fn weighted_degree(m: Mono, weights: &[u32]) -> u32 {
    weights.iter().enumerate().map(|(i, w)| m.exp(i) * w).sum()
}

impl MPoly<Rat> {
    /// Clears denominators: returns `(L, L*self)` with `L` the least common denominator.
    pub fn to_integer(&self) -> (BigInt, MPoly<BigInt>) {
        let l = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
        let terms = self.terms.iter().map(|(m, c)| (*m, (c * Rat::from_integer(l.clone())).to_integer())).collect();
        (l, MPoly::from_sorted(&self.ctx, terms))
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rat::one())
    }

    pub fn from_int_terms(ctx: &Ctx, terms: &[(&[u32], i64)]) -> Self {
        Self::from_exp_terms(
            ctx,
            terms.iter().map(|(e, c)| (e.to_vec(), Rat::from_integer(BigInt::from(*c)))).collect(),
        )
        .expect("valid exponents")
    }
}

impl MPoly<BigInt> {
    pub fn to_rational(&self) -> MPoly<Rat> {
        let terms = self.terms.iter().map(|(m, c)| (*m, Rat::from_integer(c.clone()))).collect();
        MPoly::from_sorted(&self.ctx, terms)
    }
}

/// Renders a polynomial as an expression in the parser's grammar.
impl<C: Coef> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ctx.names();
        for (i, (m, c)) in self.graded_terms().into_iter().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let complex = body.contains(['+', '-', '*']);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *m == Mono::ONE || body != "1" {
                factors.push(if complex { format!("({body})") } else { body });
            }
            for (v, name) in names.iter().enumerate() {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coef> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({self})", self.ctx.names().join(","))
    }
}

/// Absolute value of the largest integer coefficient, in bits.
pub fn max_coef_bits(p: &MPoly<BigInt>) -> u64 {
    p.terms().iter().map(|(_, c)| c.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn p(s: &str, ctx: &Ctx) -> MPoly<Rat> {
        parse_poly(s, ctx).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let ctx = VarContext::xvy(1);
        assert_eq!(p("Y^2", &ctx).sub(&p("V", &ctx)), p("Y^2 - V", &ctx));
        assert_eq!(p("Y - X", &ctx).mul(&p("Y + X", &ctx)), p("Y^2 - X^2", &ctx));
        let c2 = VarContext::xy(2);
        assert_eq!(p("X1*X2", &c2).mul(&p("X1^2*X2^2", &c2)), p("X1^3*X2^3", &c2));
        assert_eq!(p("X1", &c2).try_add(&p("X", &ctx)), Err(Error::ContextMismatch));
    }

    #[test]
    fn derivative_examples() {
        let ctx = VarContext::xy(2);
        let y = ctx.y().unwrap();
        assert_eq!(p("Y^8 - 2*X1*X2*Y^4", &ctx).derivative(y), p("8*Y^7 - 8*X1*X2*Y^3", &ctx));
        assert!(p("5", &ctx).derivative(y).is_zero());
        assert_eq!(p("Y", &ctx).derivative(y), p("1", &ctx));
    }

    #[test]
    fn exact_division() {
        let ctx = VarContext::xy(2);
        let a = p("(X1 + 2*X2 - Y)^3*(X1*Y + 1)", &ctx);
        let b = p("X1 + 2*X2 - Y", &ctx);
        assert_eq!(a.exact_div(&b).unwrap(), p("(X1 + 2*X2 - Y)^2*(X1*Y + 1)", &ctx));
        assert!(p("X1 + 1", &ctx).exact_div(&p("X2 + 1", &ctx)).is_none());
        let (_, ai) = a.to_integer();
        let (_, bi) = b.to_integer();
        assert_eq!(ai.exact_div(&bi).unwrap().to_rational(), a.exact_div(&b).unwrap());
    }

    #[test]
    fn coefficient_split_round_trip() {
        let ctx = VarContext::xvy(2);
        let f = p("Y^3 - V*Y + X1^2*Y^2 - 7*X2", &ctx);
        let y = ctx.y().unwrap();
        let cs = f.coeffs_in(y);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[1], p("-V", &ctx));
        assert_eq!(MPoly::from_coeffs_in(&ctx, y, &cs), f);
    }

    #[test]
    fn display_round_trips_through_parser() {
        let ctx = VarContext::xvy(2);
        let f = p("Y^3 - V*Y + 1/2*X1^2*Y^2 - 7*X2 + 3", &ctx);
        assert_eq!(p(&f.to_string(), &ctx), f);
        assert_eq!(p("4*X1^3 + 4*V", &ctx).to_string(), "4*X1^3 + 4*V");
        assert_eq!(MPoly::<Rat>::zero(&ctx).to_string(), "0");
        assert_eq!(MPoly::constant(&ctx, rat_int(-3)).to_string(), "-3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(ctx: Ctx) -> impl Strategy<Value = MPoly<Rat>> {
            proptest::collection::vec((proptest::collection::vec(0u32..4, 3), -5i64..6), 0..6).prop_map(move |ts| {
                MPoly::from_exp_terms(&ctx, ts.into_iter().map(|(e, c)| (e, rat_int(c))).collect()).unwrap()
            })
        }

        proptest! {
            #[test]
            fn ring_laws(a in poly(VarContext::xy(2)), b in poly(VarContext::xy(2)), c in poly(VarContext::xy(2))) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert!(a.sub(&a).is_zero());
                if !b.is_zero() {
                    prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
                }
            }
        }
    }
}
