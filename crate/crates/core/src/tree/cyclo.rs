//! Exact arithmetic in `Q(ζ_k)`, stored as rational vectors modulo `Φ_k`.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::poly::Coef;

/// Coefficients of `Φ_k`, lowest degree first.
pub fn cyclotomic(k: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<FxHashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(k >= 1, "conductor must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(FxHashMap::default()));
    if let Some(p) = cache.lock().expect("cache poisoned").get(&k) {
        return p.clone();
    }
    // x^k - 1 divided by Φ_j for every proper divisor j
    let mut num = vec![0i64; k as usize + 1];
    num[0] = -1;
    num[k as usize] = 1;
    for j in 1..k {
        if k.is_multiple_of(j) {
            num = divide_monic(&num, &cyclotomic(j));
        }
    }
    let p = Arc::new(num);
    cache.lock().expect("cache poisoned").insert(k, p.clone());
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

/// Euler's totient, the degree of `Φ_k`.
pub fn phi(k: u32) -> usize {
    cyclotomic(k).len() - 1
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    k: u32,
    c: Vec<Rat>,
}

impl CycloNum {
    /// Reduces an arbitrary polynomial in `ζ_k` (lowest degree first).
    pub fn new(k: u32, coeffs: Vec<Rat>) -> Self {
        let modulus = cyclotomic(k);
        let n = modulus.len() - 1;
        let mut c = coeffs;
        for top in (n..c.len()).rev() {
            let lead = std::mem::take(&mut c[top]);
            if Zero::is_zero(&lead) {
                continue;
            }
            for (j, &mj) in modulus[..n].iter().enumerate() {
                if mj != 0 {
                    c[top - n + j] -= &lead * Rat::from_integer(mj.into());
                }
            }
        }
        c.resize(n, Rat::zero());
        CycloNum { k, c }
    }

    pub fn zero(k: u32) -> Self {
        CycloNum { k, c: vec![Rat::zero(); phi(k)] }
    }

    pub fn from_rat(k: u32, r: Rat) -> Self {
        let mut out = Self::zero(k);
        out.c[0] = r;
        out
    }

    pub fn one(k: u32) -> Self {
        Self::from_rat(k, Rat::one())
    }

    /// `ζ_k^j` for any integer `j`.
    pub fn zeta_pow(k: u32, j: i64) -> Self {
        let e = j.mod_floor(&(k as i64)) as usize;
        let mut v = vec![Rat::zero(); e + 1];
        v[e] = Rat::one();
        Self::new(k, v)
    }

    /// Coordinates of length `φ(k)`, already reduced.
    pub fn from_reduced(k: u32, c: Vec<Rat>) -> Result<Self> {
        if c.len() != phi(k) {
            return Err(Error::invalid(format!("expected {} coordinates for conductor {k}, got {}", phi(k), c.len())));
        }
        Ok(CycloNum { k, c })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn same_k(&self, other: &Self) {
        assert_eq!(self.k, other.k, "cyclotomic conductors differ");
    }

    /// Multiplicative inverse by solving the multiplication matrix.
    pub fn inverse(&self) -> Option<Self> {
        if Coef::is_zero(self) {
            return None;
        }
        let n = self.c.len();
        // column j holds self * ζ^j
        let cols: Vec<CycloNum> = (0..n).map(|j| self.mul_ref(&Self::zeta_pow(self.k, j as i64))).collect();
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| cols[j].c[i].clone()).chain([Rat::from_integer((i == 0).into())]).collect())
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !Zero::is_zero(&m[r][col]))?;
            m.swap(col, p);
            let inv = Rat::one() / &m[col][col];
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !Zero::is_zero(&m[r][col]) {
                    let f = m[r][col].clone();
                    let prow = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(&prow) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Some(CycloNum { k: self.k, c: m.into_iter().map(|row| row[n].clone()).collect() })
    }
}

impl Coef for CycloNum {
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.c[0]) && self.c[1..].iter().all(Zero::is_zero)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.same_k(other);
        CycloNum { k: self.k, c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.same_k(other);
        CycloNum { k: self.k, c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.same_k(other);
        let n = self.c.len();
        if n == 1 {
            return CycloNum { k: self.k, c: vec![&self.c[0] * &other.c[0]] };
        }
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::new(self.k, prod)
    }
    fn neg_ref(&self) -> Self {
        CycloNum { k: self.k, c: self.c.iter().map(|a| -a).collect() }
    }
    fn mul_int(&self, n: i64) -> Self {
        CycloNum { k: self.k, c: self.c.iter().map(|a| a * Rat::from_integer(n.into())).collect() }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.mul_ref(&inv))
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.k)
    }
    fn one_like(&self) -> Self {
        Self::one(self.k)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.same_k(other);
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b;
        }
    }
}

/// Written as a polynomial in `z = ζ_k`, e.g. `1 - z^2`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let zpart = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            if zpart.is_empty() {
                write!(f, "{mag}")?;
            } else if One::is_one(&mag) {
                write!(f, "{zpart}")?;
            } else {
                write!(f, "{mag}*{zpart}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{self}]", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(phi(5), 4);
        assert_eq!(phi(30), 8);
    }

    #[test]
    fn roots_of_unity() {
        let z = CycloNum::zeta_pow(4, 1);
        assert_eq!(z.mul_ref(&z), CycloNum::from_rat(4, rat(-1, 1)));
        assert!(CycloNum::zeta_pow(6, 6).is_one());
        assert_eq!(CycloNum::zeta_pow(6, -1), CycloNum::zeta_pow(6, 5));
        // 1 + z + z^2 = 0 in Q(ζ_3)
        let s = CycloNum::new(3, vec![rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert!(Coef::is_zero(&s));
        assert_eq!(CycloNum::zeta_pow(4, 3).to_string(), "-z");
        assert_eq!(CycloNum::new(6, vec![rat(1, 2), rat(0, 1), rat(3, 1)]).to_string(), "-5/2 + 3*z");
    }

    proptest! {
        #[test]
        fn field_laws(k in 1u32..13, a in proptest::collection::vec(-5i64..6, 1..8), b in proptest::collection::vec(-5i64..6, 1..8)) {
            let x = CycloNum::new(k, a.iter().map(|&v| rat(v, 1)).collect());
            let y = CycloNum::new(k, b.iter().map(|&v| rat(v, 1)).collect());
            prop_assert_eq!(x.mul_ref(&y), y.mul_ref(&x));
            prop_assert_eq!(x.add_ref(&y).sub_ref(&y), x.clone());
            if let Some(inv) = y.inverse() {
                prop_assert!(inv.mul_ref(&y).is_one());
                prop_assert_eq!(x.mul_ref(&y).exact_div(&y), Some(x.clone()));
            } else {
                prop_assert!(Coef::is_zero(&y));
            }
        }

        #[test]
        fn power_sum_of_roots_vanishes(k in 2u32..16) {
            let mut s = CycloNum::zero(k);
            for j in 0..k as i64 {
                s.add_assign_ref(&CycloNum::zeta_pow(k, j));
            }
            prop_assert!(Coef::is_zero(&s));
        }
    }
}
