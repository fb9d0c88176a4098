//! Finitely generated subgroups of `Q^d` and their indices.
//!
//! A lattice is stored as `(1/s) * span(gens)` with integer generators and the
//! smallest such `s`. Indices are computed two ways: as the gcd of the maximal
//! minors of the generator matrix and as the product of its Smith invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{ExpVec, Rat};

/// A positive integer or `∞`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn finite(n: u64) -> Self {
        Index::Finite(BigInt::from(n))
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Index::Finite(n) => n.to_u64(),
            Index::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_u64() {
            Some(n) => s.serialize_u64(n),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

/// Starting lattice for [`Lattice::from_base`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// `Z^d`.
    Zd,
    /// `m * Z^d`.
    ScaledZd(u64),
    /// The zero lattice.
    Zero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    d: usize,
    scale: BigInt,
    gens: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// `base + Z e_1 + ... + Z e_r` for rational extras, with the common denominator pulled out.
    pub fn from_base(d: usize, base: Base, extras: &[Vec<Rat>]) -> Result<Self> {
        for e in extras {
            if e.len() != d {
                return Err(Error::DimensionMismatch { left: e.len(), right: d });
            }
        }
        let s = extras.iter().flatten().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut gens = Vec::new();
        let m = match base {
            Base::Zd => Some(BigInt::one()),
            Base::ScaledZd(m) => Some(BigInt::from(m)),
            Base::Zero => None,
        };
        if let Some(m) = m {
            for i in 0..d {
                let mut v = vec![BigInt::zero(); d];
                v[i] = &m * &s;
                gens.push(v);
            }
        }
        for e in extras {
            gens.push(e.iter().map(|r| (r * Rat::from_integer(s.clone())).to_integer()).collect());
        }
        Ok(Lattice { d, scale: s, gens }.canonical())
    }

    pub fn zd(d: usize) -> Self {
        Self::from_base(d, Base::Zd, &[]).expect("trivial")
    }

    pub fn from_expvecs(d: usize, base: Base, extras: &[ExpVec]) -> Result<Self> {
        let v: Vec<Vec<Rat>> = extras.iter().map(|e| e.entries().to_vec()).collect();
        Self::from_base(d, base, &v)
    }

    /// Integer generators with an explicit scale; the scale is reduced afterwards.
    pub fn from_integer_gens(d: usize, scale: BigInt, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::invalid("lattice scale must be positive"));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != d) {
            return Err(Error::DimensionMismatch { left: g.len(), right: d });
        }
        Ok(Lattice { d, scale, gens }.canonical())
    }

    /// Drops zero generators and divides out any common factor shared by the scale and all entries.
    fn canonical(mut self) -> Self {
        self.gens.retain(|g| g.iter().any(|x| !x.is_zero()));
        let g = self.gens.iter().flatten().fold(self.scale.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            self.scale /= &g;
            for v in self.gens.iter_mut() {
                for x in v.iter_mut() {
                    *x /= &g;
                }
            }
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.d
    }
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }
    pub fn gens(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    pub fn rational_gens(&self) -> Vec<Vec<Rat>> {
        self.gens.iter().map(|g| g.iter().map(|x| Rat::new(x.clone(), self.scale.clone())).collect()).collect()
    }

    /// Adds rational generators.
    pub fn extend(&self, extras: &[Vec<Rat>]) -> Result<Self> {
        let mut all = self.rational_gens();
        all.extend(extras.iter().cloned());
        Self::from_base(self.d, Base::Zero, &all)
    }

    pub fn rank(&self) -> usize {
        hermite_rows(&self.gens).len()
    }

    /// Generators rewritten over the scale `s`, which must be a multiple of the own scale.
    fn gens_at_scale(&self, s: &BigInt) -> Vec<Vec<BigInt>> {
        let f = s / &self.scale;
        self.gens.iter().map(|g| g.iter().map(|x| x * &f).collect()).collect()
    }

    /// Membership of a rational vector.
    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.d {
            return Err(Error::DimensionMismatch { left: v.len(), right: self.d });
        }
        let den = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let s = self.scale.lcm(&den);
        let target: Vec<BigInt> = v.iter().map(|r| (r * Rat::from_integer(s.clone())).to_integer()).collect();
        Ok(in_row_span(&hermite_rows(&self.gens_at_scale(&s)), target))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        if other.d != self.d {
            return Err(Error::DimensionMismatch { left: other.d, right: self.d });
        }
        let s = self.scale.lcm(&other.scale);
        let h = hermite_rows(&self.gens_at_scale(&s));
        Ok(other.gens_at_scale(&s).into_iter().all(|g| in_row_span(&h, g)))
    }

    /// Covolume `[Z^d : span(gens)] / s^d`, or `None` when rank is deficient.
    pub fn covolume(&self) -> Option<Rat> {
        let g = minors_gcd(&self.gens, self.d)?;
        Some(Rat::new(g, self.scale.pow(self.d as u32)))
    }

    /// `[Z^d : M]` from the gcd of the maximal minors.
    pub fn index_in_zd(&self) -> Result<Index> {
        if !self.scale.is_one() {
            return Err(Error::NotContainingZd);
        }
        Ok(match minors_gcd(&self.gens, self.d) {
            Some(g) => Index::Finite(g),
            None => Index::Infinite,
        })
    }

    /// `[Z^d : M]` from the Smith normal form.
    pub fn smith_index(&self) -> Result<Index> {
        if !self.scale.is_one() {
            return Err(Error::NotContainingZd);
        }
        let diag = smith_diagonal(&self.gens, self.d);
        if diag.len() < self.d {
            return Ok(Index::Infinite);
        }
        Ok(Index::Finite(diag.iter().fold(BigInt::one(), |acc, x| acc * x)))
    }

    /// `[N : M]` with `N = self`; `M` must be contained in `N`.
    pub fn relative_index(&self, sub: &Lattice) -> Result<Index> {
        if !self.contains_lattice(sub)? {
            return Err(Error::NotSublattice("the second lattice is not contained in the first".into()));
        }
        let r = self.rank();
        if sub.rank() < r {
            return Ok(Index::Infinite);
        }
        let s = self.scale.lcm(&sub.scale);
        let gn = minors_gcd(&self.gens_at_scale(&s), r).expect("rank r");
        let gm = minors_gcd(&sub.gens_at_scale(&s), r).expect("rank r");
        let (q, rem) = gm.div_rem(&gn);
        if !rem.is_zero() {
            return Err(Error::internal("relative index is not an integer"));
        }
        Ok(Index::Finite(q))
    }

    /// Smallest `m >= 1` with `m v` in the lattice, i.e. `[N + Zv : N]`.
    pub fn order_in_quotient(&self, v: &[Rat]) -> Result<BigInt> {
        let bigger = self.extend(&[v.to_vec()])?;
        match bigger.relative_index(self)? {
            Index::Finite(n) => Ok(n),
            Index::Infinite => Err(Error::invalid("no multiple of the vector lies in the lattice")),
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        if self.scale.is_one() {
            write!(f, "<{}>", gens.join(", "))
        } else {
            write!(f, "1/{} <{}>", self.scale, gens.join(", "))
        }
    }
}

/// Row echelon basis of the integer row span (Hermite form without the off-pivot reduction).
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut col = 0;
    while !m.is_empty() && col < ncols {
        loop {
            let nonzero: Vec<usize> = (0..m.len()).filter(|&i| !m[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| m[i][col].abs()).expect("nonempty");
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = m[i][col].div_floor(&m[p][col]);
                let prow = m[p].clone();
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(p) = (0..m.len()).find(|&i| !m[i][col].is_zero()) {
            let mut row = m.swap_remove(p);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    out
}

fn pivot_col(row: &[BigInt]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("nonzero row")
}

fn in_row_span(echelon: &[Vec<BigInt>], mut v: Vec<BigInt>) -> bool {
    for row in echelon {
        let p = pivot_col(row);
        if v[..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, r) = v[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// gcd of all `r x r` minors of the matrix whose rows are `vectors` restricted to
/// any `r` of the coordinates; `None` if every such minor vanishes.
///
/// With `r = d` this is `[Z^d : span]` for full-rank spans.
pub fn minors_gcd(vectors: &[Vec<BigInt>], r: usize) -> Option<BigInt> {
    let d = vectors.first().map_or(0, |v| v.len());
    if r == 0 {
        return Some(BigInt::one());
    }
    // the gcd is invariant under unimodular row operations, so work from an echelon basis
    let basis = hermite_rows(vectors);
    if basis.len() < r {
        return None;
    }
    let mut g = BigInt::zero();
    for rows in combinations(basis.len(), r) {
        for cols in combinations(d, r) {
            let sub: Vec<Vec<BigInt>> =
                rows.iter().map(|&i| cols.iter().map(|&j| basis[i][j].clone()).collect()).collect();
            g = g.gcd(&int_det(sub));
            if g.is_one() {
                return Some(g);
            }
        }
    }
    (!g.is_zero()).then_some(g)
}

/// gcd of the maximal minors of the raw generator matrix, without any reduction.
pub fn minors_gcd_raw(vectors: &[Vec<BigInt>], d: usize) -> Option<BigInt> {
    if vectors.len() < d {
        return None;
    }
    let mut g = BigInt::zero();
    for rows in combinations(vectors.len(), d) {
        let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| vectors[i].clone()).collect();
        g = g.gcd(&int_det(sub));
    }
    (!g.is_zero()).then_some(g)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Nonzero Smith invariants `a_1 | a_2 | ...` of the matrix with the given rows.
pub fn smith_diagonal(rows: &[Vec<BigInt>], ncols: usize) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut again = false;
        for i in t + 1..nrows {
            if !m[i][t].is_zero() {
                let q = m[i][t].div_floor(&m[t][t]);
                let prow = m[t].clone();
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= &q * y;
                }
                again |= !m[i][t].is_zero();
            }
        }
        for j in t + 1..ncols {
            if !m[t][j].is_zero() {
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                again |= !m[t][j].is_zero();
            }
        }
        if again {
            continue;
        }
        // enforce divisibility of the trailing block by the pivot
        let piv = m[t][t].clone();
        let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&m[i][j] % &piv).is_zero()));
        if let Some(i) = bad {
            let row = m[i].clone();
            for (x, y) in m[t].iter_mut().zip(&row) {
                *x += y;
            }
            continue;
        }
        diag.push(piv.abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lat(gens: &[&[i64]]) -> Lattice {
        Lattice::from_integer_gens(gens[0].len(), BigInt::one(), gens.iter().map(|g| iv(g)).collect()).unwrap()
    }

    #[test]
    fn construction_examples() {
        let w1 = Lattice::from_base(2, Base::ScaledZd(8), &[vec![rat_int(2), rat_int(2)]]).unwrap();
        assert_eq!(w1.scale(), &BigInt::one());
        assert_eq!(w1.gens(), &[iv(&[8, 0]), iv(&[0, 8]), iv(&[2, 2])]);
        let n1 = Lattice::from_base(2, Base::Zd, &[vec![rat(1, 4), rat(1, 4)]]).unwrap();
        assert_eq!(n1.scale(), &BigInt::from(4));
        assert_eq!(n1.gens(), &[iv(&[4, 0]), iv(&[0, 4]), iv(&[1, 1])]);
        assert_eq!(Lattice::zd(3).index_in_zd().unwrap(), Index::finite(1));
    }

    #[test]
    fn index_examples() {
        let w1 = lat(&[&[8, 0], &[0, 8], &[2, 2]]);
        assert_eq!(w1.index_in_zd().unwrap(), Index::finite(16));
        assert_eq!(w1.smith_index().unwrap(), Index::finite(16));
        assert_eq!(smith_diagonal(w1.gens(), 2), vec![BigInt::from(2), BigInt::from(8)]);
        let w2 = lat(&[&[8, 0], &[0, 8], &[2, 2], &[12, 8]]);
        assert_eq!(w2.index_in_zd().unwrap(), Index::finite(8));
        assert_eq!(w2.smith_index().unwrap(), Index::finite(8));
        assert_eq!(lat(&[&[2, 0], &[0, 2]]).smith_index().unwrap(), Index::finite(4));
        assert_eq!(lat(&[&[1, 0]]).smith_index().unwrap(), Index::Infinite);
        assert_eq!(lat(&[&[1, 0]]).index_in_zd().unwrap(), Index::Infinite);
        let scaled = Lattice::from_base(2, Base::Zd, &[vec![rat(1, 4), rat(1, 4)]]).unwrap();
        assert_eq!(scaled.index_in_zd(), Err(Error::NotContainingZd));
        assert_eq!(scaled.covolume(), Some(rat(1, 4)));
    }

    #[test]
    fn relative_index_examples() {
        let w0 = lat(&[&[8, 0], &[0, 8]]);
        let w1 = lat(&[&[8, 0], &[0, 8], &[2, 2]]);
        assert_eq!(w1.relative_index(&w0).unwrap(), Index::finite(4));
        let w1b = lat(&[&[8, 0], &[0, 8], &[2, 2]]);
        let w2b = lat(&[&[8, 0], &[0, 8], &[2, 2], &[16, 8]]);
        assert_eq!(w2b.relative_index(&w1b).unwrap(), Index::finite(1));
        assert_eq!(w1.relative_index(&w1).unwrap(), Index::finite(1));
        assert!(matches!(w0.relative_index(&w1), Err(Error::NotSublattice(_))));
        let line = lat(&[&[2, 2]]);
        assert_eq!(lat(&[&[1, 1]]).relative_index(&line).unwrap(), Index::finite(2));
        assert_eq!(w1.relative_index(&line).unwrap(), Index::Infinite);
    }

    #[test]
    fn order_examples() {
        let z2 = Lattice::zd(2);
        assert_eq!(z2.order_in_quotient(&[rat(1, 4), rat(1, 4)]).unwrap(), BigInt::from(4));
        let n1 = Lattice::from_base(2, Base::Zd, &[vec![rat(1, 4), rat(1, 4)]]).unwrap();
        assert_eq!(n1.order_in_quotient(&[rat(3, 4), rat(1, 4)]).unwrap(), BigInt::from(2));
        assert_eq!(n1.order_in_quotient(&[rat(1, 2), rat(1, 2)]).unwrap(), BigInt::one());
        assert!(lat(&[&[1, 0]]).order_in_quotient(&[rat_int(0), rat(1, 2)]).is_err());
    }

    #[test]
    fn membership() {
        let n1 = Lattice::from_base(2, Base::Zd, &[vec![rat(1, 4), rat(1, 4)]]).unwrap();
        assert!(n1.contains(&[rat(1, 2), rat(1, 2)]).unwrap());
        assert!(n1.contains(&[rat(5, 4), rat(1, 4)]).unwrap());
        assert!(!n1.contains(&[rat(1, 2), rat_int(0)]).unwrap());
        assert!(n1.contains_lattice(&Lattice::zd(2)).unwrap());
        assert!(!Lattice::zd(2).contains_lattice(&n1).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<BigInt>>)> {
            (1usize..=4).prop_flat_map(|d| {
                (Just(d), proptest::collection::vec(proptest::collection::vec(-50i64..=50, d), d..d + 3))
                    .prop_map(|(d, rows)| (d, rows.into_iter().map(|r| iv(&r)).collect()))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn minors_and_smith_agree((d, rows) in matrix()) {
                let l = Lattice::from_integer_gens(d, BigInt::one(), rows.clone()).unwrap();
                prop_assert_eq!(l.index_in_zd().unwrap(), l.smith_index().unwrap());
                let raw = minors_gcd_raw(&rows, d);
                match l.index_in_zd().unwrap() {
                    Index::Finite(n) => prop_assert_eq!(Some(n), raw),
                    Index::Infinite => prop_assert_eq!(None, raw),
                }
            }

            #[test]
            fn index_is_multiplicative((d, rows) in matrix(), k in 1i64..4) {
                let n = Lattice::from_integer_gens(d, BigInt::one(), rows.clone()).unwrap();
                let mut sub_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
                sub_rows.push(rows[0].iter().zip(&rows[rows.len() - 1]).map(|(a, b)| a + b).collect());
                let m = Lattice::from_integer_gens(d, BigInt::one(), sub_rows).unwrap();
                if let (Index::Finite(a), Index::Finite(b)) = (n.index_in_zd().unwrap(), m.index_in_zd().unwrap()) {
                    prop_assert_eq!(n.relative_index(&m).unwrap(), Index::Finite(b / a));
                }
            }

            #[test]
            fn column_operations_preserve_index((d, rows) in matrix(), c in -5i64..5) {
                let l = Lattice::from_integer_gens(d, BigInt::one(), rows.clone()).unwrap();
                let mut ops = rows.clone();
                ops.reverse();
                ops[0] = ops[0].iter().map(|x| -x).collect();
                let last = ops[ops.len() - 1].clone();
                for (x, y) in ops[0].iter_mut().zip(&last) {
                    *x += y * c;
                }
                if ops.len() > 1 {
                    let l2 = Lattice::from_integer_gens(d, BigInt::one(), ops).unwrap();
                    prop_assert_eq!(l.index_in_zd().unwrap(), l2.index_in_zd().unwrap());
                    prop_assert_eq!(l.smith_index().unwrap(), l2.smith_index().unwrap());
                }
            }

            #[test]
            fn order_equals_relative_index(num in proptest::collection::vec(0i64..12, 2), den in 1i64..7) {
                let n = Lattice::from_base(2, Base::Zd, &[vec![rat(1, 3), rat(2, 3)]]).unwrap();
                let v: Vec<Rat> = num.iter().map(|&x| rat(x, den)).collect();
                let ord = n.order_in_quotient(&v).unwrap();
                let brute = (1..=100i64).find(|&m| {
                    n.contains(&v.iter().map(|x| x * Rat::from_integer(BigInt::from(m))).collect::<Vec<_>>()).unwrap()
                }).unwrap();
                prop_assert_eq!(ord, BigInt::from(brute));
            }
        }
    }
}
