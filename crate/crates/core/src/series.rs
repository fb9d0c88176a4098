//! Truncated power series, Weierstrass division by `f - V`, and the Fitting
//! discriminant `det Φ_{∂f/∂Y}` of a `Y`-regular series.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::geometry::lp::{maximize, LpResult};
use crate::geometry::{Point, Polytope};
use crate::poly::{bareiss_det, monomial_substitute, poly_to_json, weighted_degree, Coef, Ctx, MPoly, Mono};

/// A series known exactly in total degrees below `trunc`; `None` means exact.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries {
    poly: MPoly<Rat>,
    trunc: Option<u32>,
}

impl TruncSeries {
    pub fn exact(poly: MPoly<Rat>) -> Self {
        TruncSeries { poly, trunc: None }
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncated(poly: MPoly<Rat>, n: u32) -> Self {
        TruncSeries { poly: poly.truncate_total(n), trunc: Some(n) }
    }

    pub fn with_trunc(poly: MPoly<Rat>, trunc: Option<u32>) -> Self {
        match trunc {
            Some(n) => Self::truncated(poly, n),
            None => Self::exact(poly),
        }
    }

    pub fn poly(&self) -> &MPoly<Rat> {
        &self.poly
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn ctx(&self) -> &Ctx {
        self.poly.ctx()
    }

    /// Equality of everything both sides know.
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        match min_trunc(self.trunc, other.trunc) {
            None => self.poly == other.poly,
            Some(n) => self.poly.truncate_total(n) == other.poly.truncate_total(n),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"terms": poly_to_json(&self.poly), "truncOrder": self.trunc})
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.trunc {
            None => write!(f, "{}", self.poly),
            Some(n) => write!(f, "{} + O(deg {n})", self.poly),
        }
    }
}

fn min_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn y_of(ctx: &Ctx) -> Result<usize> {
    ctx.y().ok_or_else(|| Error::invalid("series has no Y variable"))
}

fn check_no_v(f: &MPoly<Rat>) -> Result<()> {
    if let Some(v) = f.ctx().v() {
        if f.terms().iter().any(|(m, _)| m.exp(v) > 0) {
            return Err(Error::invalid("f must not involve V"));
        }
    }
    Ok(())
}

/// `n` with `f(0, Y) = c Y^n + ...`, `c != 0`.
pub fn y_order(f: &MPoly<Rat>) -> Result<u32> {
    let y = y_of(f.ctx())?;
    f.terms()
        .iter()
        .filter(|(m, _)| m.with_exp(y, 0) == Mono::ONE)
        .map(|(m, _)| m.exp(y))
        .min()
        .ok_or(Error::NotRegular)
}

/// `f(0, Y) / Y^n` as a polynomial in `Y`.
fn unit_part<C: Coef>(f: &MPoly<C>, y: usize, n: u32) -> MPoly<C> {
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| m.with_exp(y, 0) == Mono::ONE)
        .map(|(m, c)| (Mono::var(y, m.exp(y) - n), c.clone()));
    MPoly::from_terms(f.ctx(), terms)
}

/// Inverse of a unit polynomial in `Y` modulo `Y^len`; `None` when the
/// constant term is not invertible in the coefficient ring.
fn inverse_in_y<C: Coef>(e: &MPoly<C>, y: usize, len: u32) -> Option<MPoly<C>> {
    let ctx = e.ctx();
    let zero = e.terms().first()?.1.zero_like();
    let mut coeffs = vec![zero.clone(); len as usize];
    for (m, v) in e.terms() {
        if m.exp(y) < len {
            coeffs[m.exp(y) as usize] = v.clone();
        }
    }
    let mut out = vec![zero.clone(); len as usize];
    for i in 0..len as usize {
        let mut s = if i == 0 { zero.one_like() } else { zero.clone() };
        for j in 1..=i {
            s = s.sub_ref(&coeffs[j].mul_ref(&out[i - j]));
        }
        out[i] = s.exact_div(&coeffs[0])?;
    }
    Some(MPoly::from_terms(ctx, out.into_iter().enumerate().map(|(i, c)| (Mono::var(y, i as u32), c))))
}

fn split_below<C: Coef>(h: &MPoly<C>, y: usize, n: u32) -> (MPoly<C>, MPoly<C>) {
    let low = MPoly::from_terms(h.ctx(), h.terms().iter().filter(|(m, _)| m.exp(y) < n).cloned());
    let high = MPoly::from_terms(
        h.ctx(),
        h.terms().iter().filter(|(m, _)| m.exp(y) >= n).map(|(m, c)| (m.with_exp(y, m.exp(y) - n), c.clone())),
    );
    (low, high)
}

/// `g = (f - V) q + Σ a_i Y^i`, with `a_0..a_{n-1}` free of `Y`.
#[derive(Clone, Debug)]
pub struct Division {
    pub q: TruncSeries,
    pub remainder: Vec<TruncSeries>,
    pub order: u32,
}

/// Precision reachable for a series of order `n` given `trunc` on the inputs.
fn reachable(requested: u32, inputs: Option<u32>, n: u32) -> u32 {
    match inputs {
        None => requested,
        Some(t) => requested.min(t.saturating_sub(2 * n) / (n + 1)),
    }
}

/// Weierstrass division by the fixed-point iteration
/// `h ↦ P q_0(h)`, `P = Y^n e(Y) - (f - V)`, which gains one unit of
/// weight per step when `X, V` weigh `n + 1` and `Y` weighs one.
pub fn weierstrass_divide(g: &TruncSeries, f: &TruncSeries, prec: u32) -> Result<Division> {
    check_no_v(f.poly())?;
    let ctx = f.ctx().with_v();
    let y = y_of(&ctx)?;
    let v = ctx.v().expect("has V");
    let fv = f.poly().to_context(&ctx)?;
    let gv = g.poly().to_context(&ctx)?;
    let n = y_order(&fv)?;
    let prec = reachable(prec, min_trunc(f.trunc, g.trunc), n);
    let mut weights = vec![n + 1; ctx.nvars()];
    weights[y] = 1;
    let limit = (n + 1) * prec;

    let e = unit_part(&fv, y, n);
    let einv = inverse_in_y(&e, y, limit.max(1)).expect("nonzero constant");
    let vpoly = MPoly::var(&ctx, v, Rat::one());
    let p = MPoly::term(&ctx, Mono::var(y, n), Rat::one()).mul(&e).sub(&fv.sub(&vpoly));

    let mut h = gv.truncate_weighted(&weights, limit);
    let mut q = MPoly::zero(&ctx);
    let mut r = MPoly::zero(&ctx);
    while !h.is_zero() {
        let (low, high) = split_below(&h, y, n);
        r = r.add(&low);
        let q0 = high.mul_truncated(&einv, &weights, limit);
        q = q.add(&q0);
        h = p.mul_truncated(&q0, &weights, limit);
    }
    let base = ctx.without_y();
    let remainder = r
        .coeffs_in(y)
        .into_iter()
        .chain(std::iter::repeat_with(|| MPoly::zero(&ctx)))
        .take(n as usize)
        .map(|c| Ok(TruncSeries::truncated(c.to_context(&base)?, prec)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Division { q: TruncSeries::truncated(q, prec), remainder, order: n })
}

/// `f / c` when `f` is `c Y^n + (lower in Y)` with `n` its `Y`-order, which
/// makes `f - V` an honest divisor in `Y`.
fn monic_form(f: &MPoly<Rat>, y: usize, n: u32) -> Option<MPoly<Rat>> {
    if f.degree_in(y)? != n {
        return None;
    }
    let top = f.coeffs_in(y).swap_remove(n as usize);
    let c = top.as_constant()?;
    Some(f.scale(&(Rat::one() / c)))
}

/// Weierstrass polynomial of `F = f - V` over `K[[X, V]]`, by linear Hensel
/// lifting of `F(0, 0, Y) = Y^n e(Y)`; coefficients kept below `(X, V)`-degree `prec`.
fn weierstrass_polynomial<C: Coef>(fv: &MPoly<C>, y: usize, n: u32, prec: u32) -> Option<MPoly<C>> {
    let ctx = fv.ctx();
    let mut xv_weights = vec![1; ctx.nvars()];
    xv_weights[y] = 0;
    let e = unit_part(fv, y, n);
    let t = inverse_in_y(&e, y, n)?;
    let one = e.terms()[0].1.one_like();
    let w0 = MPoly::term(ctx, Mono::var(y, n), one);
    let (mut w, mut u) = (w0.clone(), e.clone());
    let mut resid = fv.sub(&w.mul(&u)).truncate_weighted(&xv_weights, prec);
    for k in 1..prec {
        let ek = MPoly::from_terms(
            ctx,
            resid.terms().iter().filter(|(m, _)| weighted_degree(*m, &xv_weights) == k).cloned(),
        );
        if ek.is_zero() {
            continue;
        }
        let (dw, _) = split_below(&t.mul(&ek), y, n);
        let (rest_low, du) = split_below(&ek.sub(&dw.mul(&e)), y, n);
        debug_assert!(rest_low.is_zero(), "Hensel step is not divisible by Y^n");
        let wu = w.sub(&w0);
        let uu = u.sub(&e);
        let correction = ek
            .add(&dw.mul_truncated(&uu, &xv_weights, prec))
            .add(&wu.mul_truncated(&du, &xv_weights, prec))
            .add(&dw.mul_truncated(&du, &xv_weights, prec));
        resid = resid.sub(&correction);
        w = w.add(&dw);
        u = u.add(&du);
    }
    Some(w)
}

/// Weierstrass polynomial `W` of a `Y`-regular `f` (which must not involve `V`),
/// `f = unit · W`, with coefficients known below degree `prec` in `X`.
pub fn weierstrass_preparation(f: &TruncSeries, prec: u32) -> Result<TruncSeries> {
    check_no_v(f.poly())?;
    let g = f.poly();
    let y = y_of(g.ctx())?;
    let n = y_order(g)?;
    let p = reachable(prec, f.trunc, n);
    let (scale, int_g) = g.to_integer();
    let w = if One::is_one(&scale) { weierstrass_polynomial(&int_g, y, n, p).map(|w| w.to_rational()) } else { None };
    let w = match w {
        Some(w) => w,
        None => weierstrass_polynomial(g, y, n, p).expect("nonzero constant"),
    };
    Ok(TruncSeries::truncated(w, p))
}

/// `p mod W` for `W` monic of degree `n` in `Y`, optionally truncating in `(X, V)`.
fn rem_monic<C: Coef>(p: &MPoly<C>, w: &MPoly<C>, y: usize, n: u32, trunc: Option<(&[u32], u32)>) -> MPoly<C> {
    let ctx = p.ctx();
    let top_coef = w.terms().last().expect("monic").1.clone();
    let tail = w.sub(&MPoly::term(ctx, Mono::var(y, n), top_coef));
    let tail_cs = tail.coeffs_in(y);
    let mut cs = p.coeffs_in(y);
    let mut top = cs.len();
    while top > n as usize {
        top -= 1;
        let lc = std::mem::replace(&mut cs[top], MPoly::zero(ctx));
        if lc.is_zero() {
            continue;
        }
        // lc Y^top ≡ -lc Y^(top-n) tail
        let shift = top - n as usize;
        for (j, tc) in tail_cs.iter().enumerate() {
            if tc.is_zero() {
                continue;
            }
            let prod = match trunc {
                Some((wts, lim)) => lc.mul_truncated(tc, wts, lim),
                None => lc.mul(tc),
            };
            cs[shift + j] = cs[shift + j].sub(&prod);
        }
    }
    cs.truncate(n as usize);
    MPoly::from_coeffs_in(ctx, y, &cs)
}

/// Rows of `Y^i ∂F/∂Y mod W` for `i < n`.
fn remainder_rows<C: Coef>(
    deriv: &MPoly<C>,
    w: &MPoly<C>,
    y: usize,
    n: u32,
    trunc: Option<(&[u32], u32)>,
) -> Vec<Vec<MPoly<C>>> {
    let ctx = deriv.ctx();
    let mut rows = Vec::with_capacity(n as usize);
    let mut r = rem_monic(deriv, w, y, n, trunc);
    for i in 0..n {
        if i > 0 {
            let shifted = MPoly::from_terms(ctx, r.terms().iter().map(|(m, c)| (m.mul(Mono::var(y, 1)), c.clone())));
            r = rem_monic(&shifted, w, y, n, trunc);
        }
        let mut cs = r.coeffs_in(y);
        cs.resize(n as usize, MPoly::zero(ctx));
        rows.push(cs);
    }
    rows
}

/// Determinant by expansion along rows with memoized column subsets,
/// truncating every product in total degree.  Denominators are cleared first
/// so the expansion runs over the integers.
fn det_truncated(mat: &[Vec<MPoly<Rat>>], ctx: &Ctx, prec: u32) -> MPoly<Rat> {
    let n = mat.len();
    let weights = vec![1; ctx.nvars()];
    let mut scale = BigInt::one();
    for c in mat.iter().flatten().flat_map(|p| p.terms()) {
        scale = scale.lcm(c.1.denom());
    }
    let int_mat: Vec<Vec<MPoly<BigInt>>> =
        mat.iter().map(|row| row.iter().map(|p| p.map_coeffs(|c| (c * &scale).to_integer())).collect()).collect();
    // minors[mask] = det of rows (n - |mask|).. with columns in mask
    let mut minors: Vec<Option<MPoly<BigInt>>> = vec![None; 1 << n];
    minors[0] = Some(MPoly::from_terms(ctx, [(Mono::ONE, BigInt::one())]));
    for mask in 1usize..(1 << n) {
        let row = n - mask.count_ones() as usize;
        let mut acc = MPoly::zero(ctx);
        let mut sign_neg = false;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &int_mat[row][col];
            if !entry.is_zero() {
                let sub = minors[mask & !(1 << col)].as_ref().expect("computed");
                let term = entry.mul_truncated(sub, &weights, prec);
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_neg = !sign_neg;
        }
        minors[mask] = Some(acc);
    }
    let det = minors[(1 << n) - 1].take().expect("full minor");
    let denom = Rat::from_integer(num_traits::pow(scale, n));
    det.map_coeffs(|c| Rat::from_integer(c.clone()) / &denom)
}

/// Matrix `m_{ij}` of multiplication by `∂f/∂Y` on the basis `1, Y, ..., Y^{n-1}`.
pub fn multiplication_matrix(f: &TruncSeries, prec: u32) -> Result<(Vec<Vec<TruncSeries>>, u32)> {
    let (mat, n, p) = matrix_parts(f, prec)?;
    let base = f.ctx().with_v().without_y();
    let rows = mat
        .into_iter()
        .map(|r| {
            r.into_iter().map(|c| Ok(TruncSeries::with_trunc(c.to_context(&base)?, p))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, n))
}

type Parts = (Vec<Vec<MPoly<Rat>>>, u32, Option<u32>);

fn matrix_parts(f: &TruncSeries, prec: u32) -> Result<Parts> {
    check_no_v(f.poly())?;
    let ctx = f.ctx().with_v();
    let y = y_of(&ctx)?;
    let v = ctx.v().expect("has V");
    let fv = f.poly().to_context(&ctx)?;
    let n = y_order(&fv)?;
    if n == 0 {
        return Err(Error::NotRegular);
    }
    let big_f = fv.sub(&MPoly::var(&ctx, v, Rat::one()));
    let deriv = fv.derivative(y);
    if f.is_exact() {
        if let Some(w) = monic_form(&big_f, y, n) {
            return Ok((remainder_rows(&deriv, &w, y, n, None), n, None));
        }
    }
    let p = reachable(prec, f.trunc, n);
    let mut xv_weights = vec![1; ctx.nvars()];
    xv_weights[y] = 0;
    let tr = Some((xv_weights.as_slice(), p));
    // integral input with e(0) = ±1 stays integral throughout
    let (scale, int_f) = big_f.to_integer();
    if One::is_one(&scale) {
        if let Some(w) = weierstrass_polynomial(&int_f, y, n, p) {
            let rows = remainder_rows(&int_f.derivative(y), &w, y, n, tr);
            let rows = rows.into_iter().map(|r| r.iter().map(MPoly::to_rational).collect()).collect();
            return Ok((rows, n, Some(p)));
        }
    }
    let w = weierstrass_polynomial(&big_f, y, n, p).expect("nonzero constant");
    Ok((remainder_rows(&deriv, &w, y, n, tr), n, Some(p)))
}

/// `(-1)^{n(n-1)/2} det Φ_{∂f/∂Y}`; exact when `f` is exact with `f - V`
/// monic in `Y` up to a constant, otherwise known below total degree `prec`
/// (lowered when `f` itself is truncated).
pub fn fitting_discriminant(f: &TruncSeries, prec: u32) -> Result<TruncSeries> {
    let (mat, n, trunc) = matrix_parts(f, prec)?;
    let base = f.ctx().with_v().without_y();
    let flat: Vec<Vec<MPoly<Rat>>> = mat
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.to_context(&base)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let det = match trunc {
        None => bareiss_det(flat, &base),
        Some(p) => det_truncated(&flat, &base, p),
    };
    let signed = if (n * (n - 1) / 2) % 2 == 1 { det.neg() } else { det };
    Ok(TruncSeries::with_trunc(signed, trunc))
}

/// Newton polytope of a truncated series with the vertices that are
/// guaranteed to survive in the full series.
#[derive(Clone, Debug)]
pub struct CertifiedPolytope {
    /// `None` when no term is known.
    pub polytope: Option<Polytope>,
    pub certified: Vec<Point>,
    pub certified_degree: Option<u32>,
}

impl CertifiedPolytope {
    /// True when some vertex is not certified or nothing is known.
    pub fn flagged(&self) -> bool {
        match &self.polytope {
            None => true,
            Some(p) => p.vertices().len() != self.certified.len(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "polytope": self.polytope.as_ref().map(|p| p.to_json()),
            "certified": self.certified.iter().map(|p| p.iter().map(crate::geometry::rat_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "certifiedDegree": self.certified_degree,
            "flagged": self.flagged(),
        })
    }
}

/// Whether some `c >= 1` has `c.p < n` and `c.p < c.s` for all other `s`.
/// Such a `c` separates `p` from every point of total degree `>= n` as well.
pub fn certify_vertex(p: &Point, others: &[Point], n: u32) -> bool {
    let dim = p.len();
    // variables c_1..c_dim (shifted: c = 1 + x), delta; maximize delta
    let mut a = Vec::new();
    let mut b = Vec::new();
    let one = Rat::one();
    for s in others {
        if s == p {
            continue;
        }
        // c.(p - s) + delta <= 0
        let mut row: Vec<Rat> = p.iter().zip(s).map(|(x, y)| x - y).collect();
        let rhs: Rat = -row.iter().fold(Rat::zero(), |acc, x| acc + x);
        row.push(one.clone());
        a.push(row);
        b.push(rhs);
    }
    // c.p + delta <= n
    let psum: Rat = p.iter().fold(Rat::zero(), |acc, x| acc + x);
    let mut row = p.clone();
    row.push(one.clone());
    a.push(row);
    b.push(Rat::from_integer(BigInt::from(n)) - psum);
    let mut c = vec![Rat::zero(); dim];
    c.push(one);
    match maximize(&c, &a, &b) {
        LpResult::Optimal { value, .. } => value > Rat::zero(),
        LpResult::Unbounded => true,
        LpResult::Infeasible => false,
    }
}

/// Vertices of `poly` that are certified when only degrees `< n` are known.
pub fn certified_vertices(poly: &Polytope, n: Option<u32>) -> Vec<Point> {
    match n {
        None => poly.vertices().to_vec(),
        Some(n) => poly.vertices().iter().filter(|v| certify_vertex(v, poly.pareto(), n)).cloned().collect(),
    }
}

pub fn certified_polytope(d: &TruncSeries) -> Result<CertifiedPolytope> {
    if d.poly().is_zero() {
        if d.is_exact() {
            return Err(Error::ZeroSeries);
        }
        return Ok(CertifiedPolytope { polytope: None, certified: Vec::new(), certified_degree: d.trunc() });
    }
    let p = Polytope::newton(d.poly())?;
    let certified = certified_vertices(&p, d.trunc());
    Ok(CertifiedPolytope { polytope: Some(p), certified, certified_degree: d.trunc() })
}

/// Checks `D_g(T, V) = D_f(T^{c_1}, ..., T^{c_d}, V)` for `g = f(T^c, Y)`.
pub fn substitution_check(f: &TruncSeries, c: &[u32], prec: u32) -> Result<bool> {
    if c.contains(&0) {
        return Err(Error::invalid("substitution exponents must be positive"));
    }
    let df = fitting_discriminant(f, prec)?;
    let lhs = TruncSeries::with_trunc(monomial_substitute(df.poly(), c)?, df.trunc());
    // a term of total degree >= N in X stays of total degree >= N in T
    let g = TruncSeries::with_trunc(monomial_substitute(f.poly(), c)?, f.trunc());
    let rhs = fitting_discriminant(&g, prec)?;
    Ok(lhs.agrees_with(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{discriminant_fv, parse_poly, parse_xy, VarContext};
    use proptest::prelude::*;

    fn xy(s: &str, d: usize) -> TruncSeries {
        TruncSeries::exact(parse_xy(s, Some(d)).unwrap())
    }

    fn xv(s: &str, d: usize) -> MPoly<Rat> {
        parse_poly(s, &VarContext::xv(d)).unwrap()
    }

    #[test]
    fn division_examples() {
        let f = xy("Y^2", 1);
        let div = weierstrass_divide(&xy("Y^2", 1), &f, 6).unwrap();
        assert_eq!(div.q.poly().to_string(), "1");
        assert_eq!(div.remainder[0].poly(), &xv("V", 1));
        assert!(div.remainder[1].poly().is_zero());
        let div = weierstrass_divide(&xy("2*Y^2", 1), &f, 6).unwrap();
        assert_eq!(div.q.poly().to_string(), "2");
        assert_eq!(div.remainder[0].poly(), &xv("2*V", 1));
        // monic polynomial divisor: quotient is a polynomial
        let f = xy("Y^2 - X^3", 1);
        let div = weierstrass_divide(&xy("Y^3", 1), &f, 8).unwrap();
        assert_eq!(div.q.poly().to_string(), "Y");
        assert_eq!(div.remainder[1].poly(), &xv("X^3 + V", 1));
        assert!(weierstrass_divide(&xy("Y", 1), &xy("X", 1), 4).is_err());
    }

    #[test]
    fn fitting_small_cases() {
        let d = fitting_discriminant(&xy("Y^2", 1), 10).unwrap();
        assert!(d.is_exact());
        assert_eq!(d.poly(), &xv("4*V", 1));
        let f = xy("Y^2 - X^3", 1);
        assert_eq!(fitting_discriminant(&f, 10).unwrap().poly(), &discriminant_fv(f.poly()).unwrap());
        assert!(matches!(fitting_discriminant(&xy("X + X*Y", 1), 5), Err(Error::NotRegular)));
    }

    #[test]
    fn fitting_of_a_unit_multiple_is_truncated() {
        let f = xy("(1 + Y)*(Y^2 - X^3)", 1);
        let d = fitting_discriminant(&f, 12).unwrap();
        assert_eq!(d.trunc(), Some(12));
        let cp = certified_polytope(&d).unwrap();
        let exact = Polytope::newton(&discriminant_fv(&parse_xy("Y^2 - X^3", Some(1)).unwrap()).unwrap()).unwrap();
        assert_eq!(cp.certified, exact.vertices().to_vec());
        assert!(!cp.flagged());
    }

    #[test]
    fn rational_units_take_the_rational_route() {
        let base = discriminant_fv(&parse_xy("Y^2 - X^3", Some(1)).unwrap()).unwrap();
        let expected = Polytope::newton(&base).unwrap();
        for g in ["(2 + Y)*(Y^2 - X^3)", "(1/3 + X + Y)*(Y^2 - X^3)"] {
            let d = fitting_discriminant(&xy(g, 1), 10).unwrap();
            assert_eq!(certified_polytope(&d).unwrap().certified, expected.vertices().to_vec(), "{g}");
        }
    }

    #[test]
    fn preparation_recovers_the_weierstrass_factor() {
        let w = weierstrass_preparation(&xy("(1 + X + Y^2)*(Y^2 - X^3)", 1), 9).unwrap();
        assert_eq!(w.poly(), &parse_xy("Y^2 - X^3", Some(1)).unwrap());
        let w = weierstrass_preparation(&xy("Y^2 + Y^3 - X", 1), 6).unwrap();
        // W = Y^2 + a_1 Y + a_0 with a_0 = -X + ..., a_1 = X + ...
        let cs = w.poly().coeffs_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0].terms()[0].0, Mono::var(0, 1));
        assert!(cs[2].as_constant().is_some_and(|c| One::is_one(&c)));
        assert!(weierstrass_preparation(&xy("X + X*Y", 1), 5).is_err());
    }

    #[test]
    fn certification_examples() {
        let d = TruncSeries::truncated(xv("4*V + 4*X^3", 1), 10);
        let cp = certified_polytope(&d).unwrap();
        assert_eq!(cp.certified.len(), 2);
        let empty = TruncSeries::truncated(xv("X^12", 1), 10);
        let cp = certified_polytope(&empty).unwrap();
        assert!(cp.polytope.is_none() && cp.certified.is_empty() && cp.flagged());
        // a vertex of degree 9 with N = 10 is only certified if a separating c keeps c.p below 10
        let d = TruncSeries::truncated(xv("X^9 + V^9", 1), 10);
        assert_eq!(certified_polytope(&d).unwrap().certified.len(), 2);
        // an unseen V^10 would make (1, 8) redundant
        let d = TruncSeries::truncated(xv("X^2 + X*V^8", 1), 10);
        let cp = certified_polytope(&d).unwrap();
        assert_eq!(cp.certified, vec![vec![Rat::from_integer(2.into()), Rat::zero()]]);
        assert!(cp.flagged());
    }

    #[test]
    fn substitution_examples() {
        assert!(substitution_check(&xy("Y^2 - X^3", 1), &[2], 10).unwrap());
        let f = xy("(1 + X1 + Y)*(Y^2 - X1*X2)", 2);
        assert!(substitution_check(&f, &[1, 2], 8).unwrap());
        assert!(substitution_check(&xy("Y^2", 1), &[0], 4).is_err());
    }

    fn small_poly(d: usize) -> impl Strategy<Value = String> {
        let mono = (proptest::collection::vec(0u32..3, d), -3i64..4);
        proptest::collection::vec(mono, 0..4).prop_map(move |ts| {
            let names: Vec<String> = if d == 1 { vec!["X".into()] } else { (1..=d).map(|i| format!("X{i}")).collect() };
            let mut s = String::from("0");
            for (e, c) in ts {
                s.push_str(&format!(" + ({c})"));
                for (n, k) in names.iter().zip(e) {
                    s.push_str(&format!("*{n}^{k}"));
                }
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn division_identity_holds(a in small_poly(1), b in small_poly(1), g in small_poly(1)) {
            let f = xy(&format!("Y^2 + 2*Y^3 + X*({a}) + X*Y*({b})"), 1);
            let gg = xy(&format!("Y^4 + Y*({g}) + X*Y^5"), 1);
            let prec = 6;
            let div = weierstrass_divide(&gg, &f, prec).unwrap();
            let ctx = f.ctx().with_v();
            let y = ctx.y().unwrap();
            let v = MPoly::var(&ctx, ctx.v().unwrap(), Rat::one());
            let fv = f.poly().to_context(&ctx).unwrap().sub(&v);
            let mut rhs = fv.mul(div.q.poly());
            for (i, a) in div.remainder.iter().enumerate() {
                rhs = rhs.add(&a.poly().to_context(&ctx).unwrap().mul_term(Mono::var(y, i as u32), &Rat::one()));
            }
            let lhs = gg.poly().to_context(&ctx).unwrap();
            prop_assert_eq!(lhs.truncate_total(prec), rhs.truncate_total(prec));
        }

        #[test]
        fn fitting_equals_discriminant_on_weierstrass_polynomials(a in small_poly(2), b in small_poly(2)) {
            let f = xy(&format!("Y^3 + X1*({a})*Y + X2*({b})"), 2);
            let exact = discriminant_fv(f.poly()).unwrap();
            let direct = fitting_discriminant(&f, 4).unwrap();
            prop_assert_eq!(direct.poly(), &exact);
            // the same result through the lifting route, truncated
            let lifted = fitting_discriminant(&TruncSeries::truncated(f.poly().clone(), 60), 6).unwrap();
            prop_assert_eq!(lifted.trunc(), Some(6));
            prop_assert!(lifted.agrees_with(&TruncSeries::exact(exact)));
        }

        #[test]
        fn truncated_inputs_agree_with_exact_inputs(a in small_poly(1), b in small_poly(1)) {
            let f = xy(&format!("(1 + Y + X)*(Y^2 + X*({a})*Y + X^2*({b}) + X^3)"), 1);
            let full = fitting_discriminant(&f, 8).unwrap();
            let cut = fitting_discriminant(&TruncSeries::truncated(f.poly().clone(), 20), 8).unwrap();
            prop_assert!(cut.trunc().unwrap() <= 8);
            prop_assert!(cut.agrees_with(&full));
        }

        #[test]
        fn division_and_lifting_agree(a in small_poly(1), b in small_poly(1)) {
            let f = xy(&format!("(1 + 2*Y + X)*(Y^2 + X*({a}) + X^2*Y*({b}) - X^3)"), 1);
            let prec = 5;
            let (mat, n) = multiplication_matrix(&f, prec).unwrap();
            let ctx = f.ctx().with_v();
            let y = ctx.y().unwrap();
            let deriv = f.poly().to_context(&ctx).unwrap().derivative(y);
            for i in 0..n {
                let g = TruncSeries::exact(deriv.mul_term(Mono::var(y, i), &Rat::one()));
                let div = weierstrass_divide(&g, &f, prec).unwrap();
                for j in 0..n as usize {
                    prop_assert!(div.remainder[j].agrees_with(&mat[i as usize][j]));
                }
            }
        }
    }
}
