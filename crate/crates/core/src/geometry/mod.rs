//! Newton polytopes in the nonnegative orthant.
//!
//! A polytope here is always an up-set `conv(S) + R_{>=0}^n`; it is stored by
//! its Pareto-minimal generators and its vertices. The last coordinate is the
//! `V` axis when a polytope comes from a discriminant.

pub mod lp;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{compare_slices, rat_int, Comparison, ExpVec, Rat};
use crate::poly::{Coef, MPoly};

pub type Point = Vec<Rat>;

#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    pareto: Vec<Point>,
    vertices: Vec<Point>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

/// Vertices sort by decreasing last coordinate, then lexicographically.
fn vertex_order(a: &Point, b: &Point) -> Ordering {
    let n = a.len();
    b[n - 1].cmp(&a[n - 1]).then_with(|| a.cmp(b))
}

/// Pareto-minimal elements of integer points, in ascending coordinate-sum order.
pub fn pareto_min_int(points: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut pts: Vec<&Vec<u32>> = points.iter().collect();
    pts.sort_by(|a, b| (a.iter().sum::<u32>(), *a).cmp(&(b.iter().sum::<u32>(), *b)));
    pts.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for p in pts {
        if !out.iter().any(|q| compare_slices(q, p).is_le()) {
            out.push(p.clone());
        }
    }
    out
}

/// Pareto-minimal elements of rational points.
pub fn pareto_min(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<(Rat, &Point)> = points.iter().map(|p| (p.iter().sum(), p)).collect();
    pts.sort();
    pts.dedup_by(|a, b| a.1 == b.1);
    let mut out: Vec<Point> = Vec::new();
    for (_, p) in pts {
        if !out.iter().any(|q| compare_slices(q, p).is_le()) {
            out.push(p.clone());
        }
    }
    out
}

/// Whether `p` lies outside `conv(others) + orthant`.
pub fn is_vertex_among(p: &Point, others: &[Point]) -> bool {
    if others.is_empty() {
        return true;
    }
    // λ >= 0, Σλ = 1, Σ λ_j q_j <= p
    let n = p.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n + 2);
    let mut b: Vec<Rat> = Vec::with_capacity(n + 2);
    for i in 0..n {
        a.push(others.iter().map(|q| q[i].clone()).collect());
        b.push(p[i].clone());
    }
    a.push(vec![Rat::one(); others.len()]);
    b.push(Rat::one());
    a.push(vec![-Rat::one(); others.len()]);
    b.push(-Rat::one());
    !lp::feasible(&a, &b)
}

impl Polytope {
    /// Up-set generated by the given points.
    pub fn from_points(dim: usize, points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroSeries);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { left: p.len(), right: dim });
        }
        if points.iter().flatten().any(|x| x.is_negative()) {
            return Err(Error::invalid("polytope generators must be nonnegative"));
        }
        Ok(Self::from_pareto(dim, pareto_min(points)))
    }

    fn from_pareto(dim: usize, pareto: Vec<Point>) -> Self {
        let mut vertices = Vec::new();
        for (i, p) in pareto.iter().enumerate() {
            let others: Vec<Point> =
                pareto.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            if is_vertex_among(p, &others) {
                vertices.push(p.clone());
            }
        }
        vertices.sort_by(vertex_order);
        let mut pareto = pareto;
        pareto.sort_by(vertex_order);
        Polytope { dim, pareto, vertices }
    }

    /// Newton polytope of a polynomial, in the coordinates of its full context.
    pub fn newton<C: Coef>(h: &MPoly<C>) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let n = h.ctx().nvars();
        let pts: Vec<Vec<u32>> = h.terms().iter().map(|(m, _)| m.exps(n)).collect();
        let pareto = pareto_min_int(&pts);
        let pareto: Vec<Point> = pareto.iter().map(|p| p.iter().map(|&e| rat_int(e as i64)).collect()).collect();
        Ok(Self::from_pareto(n, pareto))
    }

    /// `R_{>=0}^dim` itself.
    pub fn orthant(dim: usize) -> Self {
        let o = vec![Rat::zero(); dim];
        Polytope { dim, pareto: vec![o.clone()], vertices: vec![o] }
    }

    /// `{q/k}`: the up-set of `(q, 0)` and `(0, k)`. `k = 0` gives the orthant at the origin.
    pub fn elementary(q: &ExpVec, k: u64) -> Self {
        let d = q.dim();
        if k == 0 {
            return Self::orthant(d + 1);
        }
        let mut a: Point = q.entries().to_vec();
        a.push(Rat::zero());
        let mut b: Point = vec![Rat::zero(); d];
        b.push(rat_int(k as i64));
        Self::from_points(d + 1, &[a, b]).expect("valid points")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }
    pub fn pareto(&self) -> &[Point] {
        &self.pareto
    }

    pub fn has_vertex(&self, p: &Point) -> bool {
        self.vertices.iter().any(|v| v == p)
    }

    /// `p` must be one of the Pareto-minimal generators.
    pub fn is_vertex(&self, p: &Point) -> Result<bool> {
        if !self.pareto.contains(p) {
            return Err(Error::invalid("point is not a Pareto-minimal generator"));
        }
        let others: Vec<Point> = self.pareto.iter().filter(|q| *q != p).cloned().collect();
        Ok(is_vertex_among(p, &others))
    }

    /// `min <c, a>` over the polytope; `c` must be strictly positive.
    pub fn support_fn(&self, c: &[Rat]) -> Result<Rat> {
        if c.len() != self.dim {
            return Err(Error::DimensionMismatch { left: c.len(), right: self.dim });
        }
        if c.iter().any(|x| !x.is_positive()) {
            return Err(Error::invalid("support function needs a strictly positive direction"));
        }
        Ok(self.vertices.iter().map(|v| v.iter().zip(c).map(|(a, b)| a * b).sum::<Rat>()).min().expect("nonempty"))
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::from_points(self.dim, &pts)
    }

    /// Image under `(x, x_last) -> (<c, x>, x_last)`.
    pub fn project(&self, c: &[u64]) -> Result<Self> {
        if c.len() + 1 != self.dim {
            return Err(Error::DimensionMismatch { left: c.len() + 1, right: self.dim });
        }
        if c.contains(&0) {
            return Err(Error::invalid("projection weights must be positive"));
        }
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| {
                let s: Rat = c.iter().zip(v).map(|(ci, x)| x * BigInt::from(*ci)).sum();
                vec![s, v[self.dim - 1].clone()]
            })
            .collect();
        Self::from_points(2, &pts)
    }

    /// Multiplies every coordinate by `s`.
    pub fn scale(&self, s: &Rat) -> Self {
        let f = |pts: &[Point]| pts.iter().map(|p| p.iter().map(|x| x * s).collect()).collect();
        Polytope { dim: self.dim, pareto: f(&self.pareto), vertices: f(&self.vertices) }
    }

    /// Elementary decomposition as a chain `Σ {L_i / M_i}` with increasing slopes.
    pub fn chain_decompose(&self) -> Option<ChainDecomp> {
        self.vertex_chain().ok()
    }

    /// Like [`chain_decompose`](Self::chain_decompose), reporting why it failed.
    pub fn vertex_chain(&self) -> std::result::Result<ChainDecomp, ChainFailure> {
        let n = self.dim;
        let d = n - 1;
        let vs = &self.vertices;
        if vs.windows(2).any(|w| w[0][d] == w[1][d]) {
            return Err(ChainFailure::NotChain);
        }
        let top = &vs[0];
        if top[..d].iter().any(|x| !Zero::is_zero(x)) || !Zero::is_zero(&vs[vs.len() - 1][d]) {
            return Err(ChainFailure::NotChain);
        }
        let m_total = top[d].to_integer();
        let mut pairs = Vec::new();
        for w in vs.windows(2) {
            let mut l = Vec::with_capacity(d);
            for i in 0..d {
                let diff = &w[1][i] - &w[0][i];
                if !diff.is_integer() || diff.is_negative() {
                    return Err(ChainFailure::NotChain);
                }
                l.push(diff.to_integer().to_u64().ok_or(ChainFailure::NotChain)?);
            }
            let m = &w[0][d] - &w[1][d];
            if !m.is_integer() {
                return Err(ChainFailure::NotChain);
            }
            pairs.push((l, m.to_integer().to_u64().ok_or(ChainFailure::NotChain)?));
        }
        let chain = ChainDecomp { pairs, top: m_total.to_u64().ok_or(ChainFailure::NotChain)? };
        for (i, w) in chain.slopes().windows(2).enumerate() {
            if w[0].partial_leq(&w[1]).expect("same dim") != Comparison::Less {
                return Err(ChainFailure::SlopesNotIncreasing { at: i + 2 });
            }
        }
        if chain.to_polytope(d) != *self {
            return Err(ChainFailure::NotChain);
        }
        Ok(chain)
    }

    pub fn to_json(&self) -> Value {
        let rows =
            |pts: &[Point]| Value::Array(pts.iter().map(|p| Value::Array(p.iter().map(rat_json).collect())).collect());
        serde_json::json!({ "dim": self.dim, "vertices": rows(&self.vertices), "pareto": rows(&self.pareto) })
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| point_string(v)).collect();
        write!(f, "{{{}}}", vs.join(", "))
    }
}

pub fn point_string(p: &[Rat]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn rat_json(r: &Rat) -> Value {
    if r.is_integer() {
        if let Some(i) = r.to_integer().to_i64() {
            return Value::from(i);
        }
    }
    Value::String(r.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainFailure {
    NotChain,
    /// Slope `at` (1-based) is not strictly above slope `at - 1`.
    SlopesNotIncreasing {
        at: usize,
    },
}

/// Ordered pairs `(L_i, M_i)` with `Δ = Σ {L_i / M_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDecomp {
    pub pairs: Vec<(Vec<u64>, u64)>,
    /// `Σ M_i`, the last coordinate of the top vertex.
    pub top: u64,
}

impl ChainDecomp {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn slopes(&self) -> Vec<ExpVec> {
        self.pairs
            .iter()
            .map(|(l, m)| {
                ExpVec::new(l.iter().map(|&x| Rat::new(BigInt::from(x), BigInt::from(*m))).collect()).expect("nonneg")
            })
            .collect()
    }

    pub fn to_polytope(&self, d: usize) -> Polytope {
        self.pairs.iter().fold(Polytope::orthant(d + 1), |acc, (l, m)| {
            let q = ExpVec::new(l.iter().map(|&x| rat_int(x as i64)).collect()).expect("nonneg");
            acc.minkowski_sum(&Polytope::elementary(&q, *m)).expect("same dim")
        })
    }

    /// Sum of the `L_i`.
    pub fn bottom(&self, d: usize) -> Vec<u64> {
        let mut s = vec![0u64; d];
        for (l, _) in &self.pairs {
            for (a, b) in s.iter_mut().zip(l) {
                *a += b;
            }
        }
        s
    }
}

impl fmt::Display for ChainDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "{{0}}");
        }
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(l, m)| {
                let q = if l.len() == 1 {
                    l[0].to_string()
                } else {
                    format!("({})", l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                };
                format!("{{{q}/{m}}}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Least common multiple of all denominators of a polytope's vertices.
pub fn vertex_denominator(p: &Polytope) -> BigInt {
    p.vertices().iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::poly::{discriminant_fv, parse_poly, VarContext};

    fn pt(v: &[i64]) -> Point {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    fn disc(f: &str, d: usize) -> MPoly<Rat> {
        discriminant_fv(&parse_poly(f, &VarContext::xy(d)).unwrap()).unwrap()
    }

    const F1: &str = "Y^8 - 2*X1*X2*Y^4 + X1^2*X2^2 - X1^3*X2^2";
    const F3: &str = "Y^8 - 2*X1*X2*Y^4 + X1^3*X2^2 - X1^3*X2^5";

    #[test]
    fn newton_polytope_examples() {
        let p = Polytope::newton(&disc("Y^2 - X^3", 1)).unwrap();
        assert_eq!(p.vertices(), &[pt(&[0, 1]), pt(&[3, 0])]);
        let p1 = Polytope::newton(&disc(F1, 2)).unwrap();
        assert_eq!(p1.vertices(), &[pt(&[0, 0, 7]), pt(&[6, 6, 4]), pt(&[18, 14, 0])]);
        let one = parse_poly("1", &VarContext::xv(2)).unwrap();
        assert_eq!(Polytope::newton(&one).unwrap(), Polytope::orthant(3));
        assert_eq!(Polytope::newton(&MPoly::<Rat>::zero(&VarContext::xv(1))), Err(Error::ZeroSeries));
    }

    #[test]
    fn vertex_examples() {
        let p1 = Polytope::newton(&disc(F1, 2)).unwrap();
        assert!(p1.is_vertex(&pt(&[6, 6, 4])).unwrap());
        let q = Polytope::from_points(2, &[pt(&[0, 2]), pt(&[2, 0]), pt(&[1, 1])]).unwrap();
        assert_eq!(q.pareto().len(), 3);
        assert!(!q.is_vertex(&pt(&[1, 1])).unwrap());
        assert_eq!(q.vertices(), &[pt(&[0, 2]), pt(&[2, 0])]);
        let single = Polytope::from_points(2, &[pt(&[3, 4])]).unwrap();
        assert!(single.is_vertex(&pt(&[3, 4])).unwrap());
    }

    #[test]
    fn support_function_examples() {
        let p1 = Polytope::newton(&disc(F1, 2)).unwrap();
        assert_eq!(p1.support_fn(&pt(&[1, 1, 1])).unwrap(), rat_int(7));
        assert_eq!(Polytope::orthant(3).support_fn(&pt(&[1, 1, 1])).unwrap(), rat_int(0));
        let cusp = Polytope::newton(&disc("Y^2 - X^3", 1)).unwrap();
        assert_eq!(cusp.support_fn(&pt(&[1, 10])).unwrap(), rat_int(3));
        assert!(cusp.support_fn(&pt(&[0, 1])).is_err());
    }

    #[test]
    fn minkowski_examples() {
        let a = Polytope::elementary(&ExpVec::from_ints(&[6, 6]), 3);
        let b = Polytope::elementary(&ExpVec::from_ints(&[12, 8]), 4);
        assert_eq!(a.minkowski_sum(&b).unwrap().vertices(), &[pt(&[0, 0, 7]), pt(&[6, 6, 4]), pt(&[18, 14, 0])]);
        assert_eq!(a.minkowski_sum(&Polytope::orthant(3)).unwrap(), a);
        let c = Polytope::elementary(&ExpVec::from_ints(&[8, 8]), 4);
        let e = Polytope::elementary(&ExpVec::from_ints(&[9, 6]), 3);
        assert_eq!(c.minkowski_sum(&e).unwrap().vertices(), &[pt(&[0, 0, 7]), pt(&[8, 8, 3]), pt(&[17, 14, 0])]);
        assert!(a.minkowski_sum(&Polytope::orthant(2)).is_err());
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(Polytope::elementary(&ExpVec::from_ints(&[2, 1]), 4).vertices(), &[pt(&[0, 0, 4]), pt(&[2, 1, 0])]);
        assert_eq!(Polytope::elementary(&ExpVec::from_ints(&[3, 2]), 1).vertices(), &[pt(&[0, 0, 1]), pt(&[3, 2, 0])]);
        // with q = 0 the origin dominates (0,0,k), leaving the orthant
        assert_eq!(Polytope::elementary(&ExpVec::from_ints(&[0, 0]), 3), Polytope::orthant(3));
        assert_eq!(Polytope::elementary(&ExpVec::from_ints(&[5, 1]), 0), Polytope::orthant(3));
    }

    #[test]
    fn chain_examples() {
        let p1 = Polytope::newton(&disc(F1, 2)).unwrap();
        let c1 = p1.chain_decompose().unwrap();
        assert_eq!(c1.pairs, vec![(vec![6, 6], 3), (vec![12, 8], 4)]);
        assert_eq!(c1.to_string(), "{(6,6)/3} + {(12,8)/4}");
        let p3 = Polytope::newton(&disc(F3, 2)).unwrap();
        assert_eq!(p3.chain_decompose().unwrap().pairs, vec![(vec![8, 8], 4), (vec![9, 6], 3)]);
        let v = Polytope::newton(&disc("Y^2", 1)).unwrap();
        assert_eq!(v.vertex_chain(), Err(ChainFailure::NotChain));
        let bad = Polytope::elementary(&ExpVec::from_ints(&[4, 1]), 2)
            .minkowski_sum(&Polytope::elementary(&ExpVec::from_ints(&[1, 4]), 2))
            .unwrap();
        assert!(bad.chain_decompose().is_none());
    }

    #[test]
    fn projection_examples() {
        let p1 = Polytope::newton(&disc(F1, 2)).unwrap();
        assert_eq!(p1.project(&[1, 1]).unwrap().vertices(), &[pt(&[0, 7]), pt(&[12, 4]), pt(&[32, 0])]);
        assert_eq!(Polytope::orthant(3).project(&[2, 5]).unwrap(), Polytope::orthant(2));
        let e = Polytope::elementary(&ExpVec::from_ints(&[2, 1]), 4).project(&[1, 2]).unwrap();
        assert_eq!(e, Polytope::elementary(&ExpVec::from_ints(&[4]), 4));
    }

    #[test]
    fn json_shape() {
        let e = Polytope::elementary(&ExpVec::new(vec![rat(1, 2)]).unwrap(), 1);
        assert_eq!(e.to_json().to_string(), r#"{"dim":2,"pareto":[[0,1],["1/2",0]],"vertices":[[0,1],["1/2",0]]}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem() -> impl Strategy<Value = Polytope> {
            (proptest::collection::vec(0i64..9, 2), 1u64..5)
                .prop_map(|(q, k)| Polytope::elementary(&ExpVec::from_ints(&q), k))
        }

        fn cloud() -> impl Strategy<Value = Vec<Point>> {
            proptest::collection::vec(proptest::collection::vec(0i64..7, 3), 1..12)
                .prop_map(|ps| ps.into_iter().map(|p| pt(&p)).collect())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn support_function_is_additive(a in elem(), b in elem(), c in proptest::collection::vec(1i64..6, 3)) {
                let c = pt(&c);
                let s = a.minkowski_sum(&b).unwrap();
                prop_assert_eq!(s.support_fn(&c).unwrap(), a.support_fn(&c).unwrap() + b.support_fn(&c).unwrap());
            }

            #[test]
            fn projection_commutes_with_sum(a in elem(), b in elem(), c in proptest::collection::vec(1u64..6, 2)) {
                let lhs = a.minkowski_sum(&b).unwrap().project(&c).unwrap();
                let rhs = a.project(&c).unwrap().minkowski_sum(&b.project(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn vertices_do_not_depend_on_order(mut pts in cloud(), seed in 0usize..100) {
                let p = Polytope::from_points(3, &pts).unwrap();
                let len = pts.len();
                pts.rotate_left(seed % len);
                pts.reverse();
                prop_assert_eq!(Polytope::from_points(3, &pts).unwrap(), p.clone());
                // each vertex minimizes some positive direction over the cloud
                for v in p.vertices() {
                    prop_assert!(p.pareto().contains(v));
                }
            }

            #[test]
            fn increasing_chains_round_trip(l in proptest::collection::vec((proptest::collection::vec(0u64..5, 2), 1u64..4), 1..4)) {
                // build slopes that strictly increase: cumulative componentwise sums scaled by m
                let mut slope = vec![Rat::zero(); 2];
                let mut pairs = Vec::new();
                for (step, m) in &l {
                    let inc: Vec<Rat> = step.iter().map(|&s| rat_int(s as i64 + 1)).collect();
                    slope = slope.iter().zip(&inc).map(|(a, b)| a + b).collect();
                    let lvec: Vec<u64> = slope.iter().map(|x| (x * rat_int(*m as i64)).to_integer().to_u64().unwrap()).collect();
                    pairs.push((lvec, *m));
                }
                let chain = ChainDecomp { top: pairs.iter().map(|p| p.1).sum(), pairs };
                let p = chain.to_polytope(2);
                prop_assert_eq!(p.chain_decompose(), Some(chain));
            }

            #[test]
            fn incomparable_slopes_are_not_chains(a in 1u64..5, b in 1u64..5) {
                let p = Polytope::elementary(&ExpVec::from_ints(&[a as i64 + 1, 0]), 1)
                    .minkowski_sum(&Polytope::elementary(&ExpVec::from_ints(&[0, b as i64 + 1]), 1)).unwrap();
                prop_assert!(p.chain_decompose().is_none());
            }
        }
    }
}
