//! The discriminant of `f(Y) - V` and related structure tests.

use num_bigint::BigInt;
use num_traits::One;

use super::{resultant::resultant_y_in, Coef, Ctx, MPoly, Mono};
use crate::error::{Error, Result};
use crate::exact::{ExpVec, Rat};

fn y_index(f: &MPoly<Rat>) -> Result<usize> {
    f.ctx().y().ok_or_else(|| Error::invalid("polynomial context has no Y"))
}

fn check_no_v(f: &MPoly<Rat>) -> Result<()> {
    if let Some(v) = f.ctx().v() {
        if f.terms().iter().any(|(m, _)| m.exp(v) > 0) {
            return Err(Error::invalid("f must not involve V"));
        }
    }
    Ok(())
}

/// Degree in `Y` after checking that `f` is monic in `Y` of positive degree.
pub(crate) fn monic_degree(f: &MPoly<Rat>) -> Result<u32> {
    let y = y_index(f)?;
    let n = f.degree_in(y).ok_or(Error::NotMonic)?;
    if n == 0 {
        return Err(Error::NotMonic);
    }
    if !f.is_monic_in(y) {
        return Err(Error::NotMonic);
    }
    Ok(n)
}

/// Checks that `f` is monic in `Y` with every lower coefficient vanishing at the origin.
pub fn weierstrass_check(f: &MPoly<Rat>) -> Result<u32> {
    check_no_v(f)?;
    let n = monic_degree(f)?;
    let y = y_index(f)?;
    for (m, _) in f.terms() {
        let e = m.exp(y);
        if e < n && m.with_exp(y, 0) == Mono::ONE {
            return Err(Error::NotWeierstrass(format!("coefficient of Y^{e} does not vanish at the origin")));
        }
    }
    Ok(n)
}

/// `D_f(X, V) = (-1)^(n(n-1)/2) Res_Y(f - V, df/dY)`, in the context of `f` with `V` added and `Y` removed.
///
/// Computed as `(-1)^((n+2)(n-1)/2) n^n χ(V)` with `χ` the characteristic
/// polynomial of multiplication by `f` on `Q[X][Y]/(df/dY)`, so `V` never
/// enters the intermediate arithmetic.
pub fn discriminant_fv(f: &MPoly<Rat>) -> Result<MPoly<Rat>> {
    check_no_v(f)?;
    let n = monic_degree(f)?;
    let ctx = f.ctx().with_v();
    let y = ctx.y().expect("y");
    let v = ctx.v().expect("v");
    if n == 1 {
        return Ok(MPoly::one(&ctx.without_y()));
    }
    let fv = f.to_context(&ctx)?;
    let (scale, fi) = fv.to_integer();
    let chi: Vec<MPoly<Rat>> = if One::is_one(&scale) {
        scaled_charpoly(&fi.coeffs_in(y), n).iter().map(|c| c.to_rational()).collect()
    } else {
        scaled_charpoly(&fv.coeffs_in(y), n)
    };
    // χ~(λ) = n^(n m) χ(λ / n^n), m = n - 1
    let m = n as usize - 1;
    let nn = Rat::from_integer(BigInt::from(n));
    let sign = if ((n + 2) * (n - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
    let lead = sign * nn.pow(n as i32);
    let mut out = MPoly::zero(&ctx);
    for (k, c) in chi.iter().enumerate() {
        let factor = &lead / nn.pow((n as usize * (m - k)) as i32);
        out = out.add(&c.mul_term(Mono::var(v, k as u32), &factor));
    }
    out.to_context(&ctx.without_y())
}

/// Characteristic polynomial (constant term first) of multiplication by
/// `f~(Z) = n^n f(Z/n)` modulo the monic `g(Z) = n^(n-2) df/dY(Z/n)`.
/// `cs` holds the `Y`-coefficients of the monic `f`.
fn scaled_charpoly<C: Coef>(cs: &[MPoly<C>], n: u32) -> Vec<MPoly<C>> {
    let ctx = cs[0].ctx().clone();
    let times_n_pow = |p: &MPoly<C>, k: u32| (0..k).fold(p.clone(), |acc, _| acc.mul_int(n as i64));
    let f_t: Vec<MPoly<C>> = (0..=n).map(|j| times_n_pow(&cs[j as usize], n - j)).collect();
    let g: Vec<MPoly<C>> = (0..n - 1)
        .map(|j| times_n_pow(&cs[j as usize + 1].mul_int(j as i64 + 1), n - 2 - j))
        .chain([cs[n as usize].clone()])
        .collect();
    let m = n as usize - 1;
    let mut rows = Vec::with_capacity(m);
    let mut r = rem_monic(f_t, &g);
    for _ in 0..m {
        rows.push(r.clone());
        let mut shifted = vec![MPoly::zero(&ctx)];
        shifted.extend(r);
        r = rem_monic(shifted, &g);
    }
    berkowitz(&rows, &cs[n as usize])
}

/// Remainder of a univariate coefficient list by a monic one, padded to `deg g` entries.
fn rem_monic<C: Coef>(mut p: Vec<MPoly<C>>, g: &[MPoly<C>]) -> Vec<MPoly<C>> {
    let dg = g.len() - 1;
    while p.len() > dg {
        let lc = p.pop().expect("nonempty");
        if lc.is_zero() {
            continue;
        }
        let shift = p.len() - dg;
        for (j, gc) in g[..dg].iter().enumerate() {
            if !gc.is_zero() {
                p[shift + j] = p[shift + j].sub(&lc.mul(gc));
            }
        }
    }
    let zero = MPoly::zero(g[0].ctx());
    p.resize(dg, zero);
    p
}

/// Coefficients (constant term first) of `det(λ I - A)`, without division.
fn berkowitz<C: Coef>(a: &[Vec<MPoly<C>>], one: &MPoly<C>) -> Vec<MPoly<C>> {
    let ctx = one.ctx().clone();
    let dot =
        |row: &[MPoly<C>], w: &[MPoly<C>]| row.iter().zip(w).fold(MPoly::zero(&ctx), |acc, (x, y)| acc.add(&x.mul(y)));
    // highest degree first while building
    let mut v = vec![one.clone()];
    for r in 0..a.len() {
        // t = [1, -a_rr, -R C, -R B C, ..., -R B^(r-1) C] with B the leading r x r block
        let mut t = vec![one.clone(), a[r][r].neg()];
        let mut w: Vec<MPoly<C>> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            t.push(dot(&a[r][..r], &w).neg());
            w = (0..r).map(|i| dot(&a[i][..r], &w)).collect();
        }
        v = (0..r + 2)
            .map(|i| {
                (i.saturating_sub(t.len() - 1)..=i.min(v.len() - 1))
                    .fold(MPoly::zero(&ctx), |acc, j| acc.add(&t[i - j].mul(&v[j])))
            })
            .collect();
    }
    v.reverse();
    v
}

/// The same discriminant through the subresultant chain of `f - V` and `df/dY`.
pub fn discriminant_fv_resultant(f: &MPoly<Rat>) -> Result<MPoly<Rat>> {
    check_no_v(f)?;
    let n = monic_degree(f)?;
    let ctx: Ctx = f.ctx().with_v();
    let y = ctx.y().expect("y");
    let v = ctx.v().expect("v");
    let fv = f.to_context(&ctx)?;
    let shifted = fv.sub(&MPoly::var(&ctx, v, Rat::one()));
    let deriv = fv.derivative(y);
    let res = if n == 1 { MPoly::one(&ctx) } else { resultant_y_in(&shifted, &deriv, y)? };
    let signed = if (n * (n - 1) / 2) % 2 == 1 { res.neg() } else { res };
    signed.to_context(&ctx.without_y())
}

/// Coefficient of `V^(n-1)` in a discriminant.
pub fn leading_v_coefficient(d: &MPoly<Rat>, n: u32) -> Result<MPoly<Rat>> {
    let v = d.ctx().v().ok_or_else(|| Error::invalid("context has no V"))?;
    let mut cs = d.coeffs_in(v);
    let i = (n - 1) as usize;
    Ok(if i < cs.len() { cs.swap_remove(i) } else { MPoly::zero(d.ctx()) })
}

/// Replaces `X_i` by `T^{c_i}`; `V` and `Y` are carried over.
pub fn monomial_substitute(f: &MPoly<Rat>, c: &[u32]) -> Result<MPoly<Rat>> {
    let src = f.ctx();
    if src.is_t() {
        return Err(Error::invalid("polynomial is already in T"));
    }
    if c.len() != src.d() {
        return Err(Error::DimensionMismatch { left: c.len(), right: src.d() });
    }
    if c.contains(&0) {
        return Err(Error::invalid("substitution exponents must be positive"));
    }
    let dst = src.to_t();
    let mut terms = Vec::with_capacity(f.len());
    for (m, coef) in f.terms() {
        let t: u64 = c.iter().enumerate().map(|(i, &ci)| ci as u64 * m.exp(i) as u64).sum();
        if t >= super::MAX_EXP as u64 {
            return Err(Error::invalid("substituted exponent is too large"));
        }
        let mut out = Mono::var(0, t as u32);
        if let (Some(a), Some(b)) = (src.v(), dst.v()) {
            out = out.with_exp(b, m.exp(a));
        }
        if let (Some(a), Some(b)) = (src.y(), dst.y()) {
            out = out.with_exp(b, m.exp(a));
        }
        terms.push((out, coef.clone()));
    }
    Ok(MPoly::from_terms(&dst, terms))
}

/// `D(X, 0)` in the context without `V`.
pub fn slice_v0(d: &MPoly<Rat>) -> Result<MPoly<Rat>> {
    let v = d.ctx().v().ok_or_else(|| Error::invalid("context has no V"))?;
    let kept = MPoly::from_terms(d.ctx(), d.terms().iter().filter(|(m, _)| m.exp(v) == 0).cloned());
    kept.to_context(&d.ctx().without_v())
}

/// If `h = X^a * u` with `u(0) != 0`, returns `a`.
pub fn is_monomial_times_unit(h: &MPoly<Rat>) -> Option<ExpVec> {
    let first = h.terms().first()?;
    let nv = h.ctx().nvars();
    let mut lo = first.0.exps(nv);
    for (m, _) in h.terms() {
        for (i, l) in lo.iter_mut().enumerate() {
            *l = (*l).min(m.exp(i));
        }
    }
    let corner = Mono::from_exps(&lo).ok()?;
    h.coefficient(corner)?;
    Some(ExpVec::new(lo.iter().map(|&e| Rat::from_integer(BigInt::from(e))).collect()).expect("nonnegative"))
}
