//! Resultants with respect to one variable.
//!
//! The default path is the subresultant pseudo-remainder sequence over the
//! integers. Fraction-free elimination and cofactor expansion of the Sylvester
//! matrix are kept as independent oracles.

use num_traits::One;

use super::{Coef, Ctx, MPoly};
use crate::error::{Error, Result};
use crate::exact::Rat;

/// Polynomial in one distinguished variable; entry `i` multiplies its `i`-th power.
type UPoly<C> = Vec<MPoly<C>>;

fn trim<C: Coef>(p: &mut UPoly<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg<C>(p: &UPoly<C>) -> usize {
    p.len() - 1
}

fn one<C: Coef>(ctx: &Ctx, sample: &C) -> MPoly<C> {
    MPoly::constant(ctx, sample.one_like())
}

fn sample_coef<C: Coef>(p: &UPoly<C>) -> C {
    p.iter().find_map(|c| c.terms().first().map(|t| t.1.clone())).expect("nonzero polynomial")
}

fn pow<C: Coef>(ctx: &Ctx, base: &MPoly<C>, e: usize, sample: &C) -> MPoly<C> {
    if e == 0 {
        one(ctx, sample)
    } else {
        base.pow(e as u32)
    }
}

fn exact<C: Coef>(a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
    a.exact_div(b).expect("subresultant division is exact")
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<C: Coef>(a: &UPoly<C>, b: &UPoly<C>, ctx: &Ctx, sample: &C) -> UPoly<C> {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let t = r[dr].clone();
        let shift = dr - db;
        let mut next: UPoly<C> = r.iter().map(|c| c.mul(lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&t));
        }
        debug_assert!(next[dr].is_zero());
        next.pop();
        trim(&mut next);
        r = next;
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = pow(ctx, lb, e, sample);
        r = r.iter().map(|c| c.mul(&f)).collect();
    }
    r
}

fn negate_if<C: Coef>(p: MPoly<C>, neg: bool) -> MPoly<C> {
    if neg {
        p.neg()
    } else {
        p
    }
}

/// Subresultant remainder sequence without content extraction.
fn subresultant<C: Coef>(a: UPoly<C>, b: UPoly<C>, ctx: &Ctx) -> MPoly<C> {
    let (mut a, mut b) = (a, b);
    if a.is_empty() || b.is_empty() {
        return MPoly::zero(ctx);
    }
    let mut neg = false;
    if deg(&a) < deg(&b) {
        neg = deg(&a) % 2 == 1 && deg(&b) % 2 == 1;
        std::mem::swap(&mut a, &mut b);
    }
    let sample = sample_coef(&a);
    if deg(&b) == 0 {
        return negate_if(pow(ctx, &b[0], deg(&a), &sample), neg);
    }
    let mut g = one(ctx, &sample);
    let mut h = one(ctx, &sample);
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            neg = !neg;
        }
        let r = prem(&a, &b, ctx, &sample);
        if r.is_empty() {
            return MPoly::zero(ctx);
        }
        let divisor = g.mul(&pow(ctx, &h, delta, &sample));
        a = b;
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        g = a[deg(&a)].clone();
        if delta > 0 {
            h = exact(&pow(ctx, &g, delta, &sample), &pow(ctx, &h, delta - 1, &sample));
        }
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a);
    let top = pow(ctx, &b[0], da, &sample);
    negate_if(exact(&top, &pow(ctx, &h, da - 1, &sample)), neg)
}

fn split<C: Coef>(p: &MPoly<C>, var: usize) -> UPoly<C> {
    p.coeffs_in(var)
}

fn check_args<C: Coef>(p: &MPoly<C>, q: &MPoly<C>, var: usize) -> Result<()> {
    if p.ctx() != q.ctx() {
        return Err(Error::ContextMismatch);
    }
    if var >= p.ctx().nvars() {
        return Err(Error::invalid("resultant variable out of range"));
    }
    let dp = p.degree_in(var).unwrap_or(0);
    let dq = q.degree_in(var).unwrap_or(0);
    if dp == 0 && dq == 0 {
        return Err(Error::ConstantResultant);
    }
    Ok(())
}

/// Resultant with respect to variable `var`, as a polynomial in the same context
/// that no longer involves `var`. Standard Sylvester orientation: `Res(Y - a, Y - b) = a - b`.
pub fn resultant_y_in(p: &MPoly<Rat>, q: &MPoly<Rat>, var: usize) -> Result<MPoly<Rat>> {
    check_args(p, q, var)?;
    let dp = p.degree_in(var).unwrap_or(0) as i32;
    let dq = q.degree_in(var).unwrap_or(0) as i32;
    let (lp, pi) = p.to_integer();
    let (lq, qi) = q.to_integer();
    let r = subresultant(split(&pi, var), split(&qi, var), p.ctx());
    let scale = Rat::one() / (Rat::from_integer(lp).pow(dq) * Rat::from_integer(lq).pow(dp));
    Ok(r.to_rational().scale(&scale))
}

/// Resultant with respect to the context's `Y`.
pub fn resultant_y(p: &MPoly<Rat>, q: &MPoly<Rat>) -> Result<MPoly<Rat>> {
    let y = p.ctx().y().ok_or_else(|| Error::invalid("context has no Y"))?;
    resultant_y_in(p, q, y)
}

fn sylvester<C: Coef>(p: &MPoly<C>, q: &MPoly<C>, var: usize) -> Vec<Vec<MPoly<C>>> {
    let ctx = p.ctx();
    let (a, b) = (split(p, var), split(q, var));
    let (m, n) = (a.len().saturating_sub(1), b.len().saturating_sub(1));
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, copies, d) in [(&a, n, m), (&b, m, n)] {
        for r in 0..copies {
            let mut row = vec![MPoly::zero(ctx); size];
            for i in 0..=d {
                if let Some(c) = coeffs.get(d - i) {
                    row[r + i] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by fraction-free Gaussian elimination (Bareiss), smallest pivot first.
pub fn bareiss_det<C: Coef>(mut mat: Vec<Vec<MPoly<C>>>, ctx: &Ctx) -> MPoly<C> {
    let n = mat.len();
    if n == 0 {
        panic!("determinant of an empty matrix needs an explicit one");
    }
    let mut neg = false;
    let mut prev: Option<MPoly<C>> = None;
    for k in 0..n {
        let pivot = (k..n).filter(|&i| !mat[i][k].is_zero()).min_by_key(|&i| mat[i][k].len());
        let Some(pr) = pivot else {
            return MPoly::zero(ctx);
        };
        if pr != k {
            mat.swap(pr, k);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = match &prev {
                    Some(p) => t.exact_div(p).expect("Bareiss division is exact"),
                    None => t,
                };
            }
            mat[i][k] = MPoly::zero(ctx);
        }
        prev = Some(mat[k][k].clone());
    }
    negate_if(mat[n - 1][n - 1].clone(), neg)
}

/// Resultant as the Bareiss determinant of the Sylvester matrix.
pub fn resultant_bareiss<C: Coef>(p: &MPoly<C>, q: &MPoly<C>, var: usize) -> Result<MPoly<C>> {
    check_args(p, q, var)?;
    Ok(bareiss_det(sylvester(p, q, var), p.ctx()))
}

fn cofactor_det<C: Coef>(mat: &[Vec<MPoly<C>>], cols: &mut Vec<usize>, row: usize, ctx: &Ctx) -> MPoly<C> {
    if row == mat.len() {
        let sample = mat.iter().flatten().find_map(|c| c.terms().first().map(|t| t.1.clone()));
        return match sample {
            Some(s) => MPoly::constant(ctx, s.one_like()),
            None => MPoly::zero(ctx),
        };
    }
    let mut acc = MPoly::zero(ctx);
    for pos in 0..cols.len() {
        let c = cols[pos];
        if mat[row][c].is_zero() {
            continue;
        }
        cols.remove(pos);
        let minor = cofactor_det(mat, cols, row + 1, ctx);
        cols.insert(pos, c);
        let t = mat[row][c].mul(&minor);
        acc = if pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Resultant by Laplace expansion of the Sylvester matrix. Exponential; for small cross-checks.
pub fn resultant_cofactor<C: Coef>(p: &MPoly<C>, q: &MPoly<C>, var: usize) -> Result<MPoly<C>> {
    check_args(p, q, var)?;
    let mat = sylvester(p, q, var);
    let mut cols: Vec<usize> = (0..mat.len()).collect();
    Ok(cofactor_det(&mat, &mut cols, 0, p.ctx()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarContext};

    fn p(s: &str, ctx: &Ctx) -> MPoly<Rat> {
        parse_poly(s, ctx).unwrap()
    }

    #[test]
    fn small_resultants() {
        let ctx = VarContext::xvy(1);
        let y = ctx.y().unwrap();
        assert_eq!(resultant_y(&p("Y^2 - V", &ctx), &p("2*Y", &ctx)).unwrap(), p("-4*V", &ctx));
        assert_eq!(resultant_y(&p("Y - X", &ctx), &p("Y - V", &ctx)).unwrap(), p("X - V", &ctx));
        assert_eq!(resultant_y(&p("Y^2 - X^3 - V", &ctx), &p("2*Y", &ctx)).unwrap(), p("-4*X^3 - 4*V", &ctx));
        assert_eq!(resultant_y(&p("3", &ctx), &p("Y^2 + 1", &ctx)).unwrap(), p("9", &ctx));
        assert_eq!(resultant_y(&p("Y + 1", &ctx), &p("Y + 1", &ctx)).unwrap(), p("0", &ctx));
        assert_eq!(resultant_y(&p("3", &ctx), &p("5", &ctx)), Err(Error::ConstantResultant));
        let a = p("Y^2 - X^3 - V", &ctx);
        let b = p("2*Y", &ctx);
        assert_eq!(resultant_bareiss(&a, &b, y).unwrap(), p("-4*X^3 - 4*V", &ctx));
        assert_eq!(resultant_cofactor(&a, &b, y).unwrap(), p("-4*X^3 - 4*V", &ctx));
    }

    #[test]
    fn rational_coefficients_are_scaled_back() {
        let ctx = VarContext::xy(1);
        let y = ctx.y().unwrap();
        let a = p("1/2*Y^2 - 1/3*X*Y + 2", &ctx);
        let b = p("2/5*Y - X^2", &ctx);
        assert_eq!(resultant_y(&a, &b).unwrap(), resultant_bareiss(&a, &b, y).unwrap());
        assert_eq!(resultant_y(&a, &b).unwrap(), resultant_cofactor(&a, &b, y).unwrap());
    }

    mod props {
        use super::*;
        use crate::exact::rat_int;
        use proptest::prelude::*;

        fn ypoly(max_deg: u32) -> impl Strategy<Value = MPoly<Rat>> {
            let ctx = VarContext::xy(2);
            proptest::collection::vec((0u32..3, 0u32..3, 0..=max_deg, -4i64..5), 1..6).prop_map(move |ts| {
                MPoly::from_exp_terms(&ctx, ts.into_iter().map(|(a, b, c, k)| (vec![a, b, c], rat_int(k))).collect())
                    .unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn three_algorithms_agree(a in ypoly(3), b in ypoly(3)) {
                let y = a.ctx().y().unwrap();
                prop_assume!(a.degree_in(y).unwrap_or(0) + b.degree_in(y).unwrap_or(0) > 0);
                let prs = resultant_y(&a, &b).unwrap();
                prop_assert_eq!(&prs, &resultant_bareiss(&a, &b, y).unwrap());
                prop_assert_eq!(&prs, &resultant_cofactor(&a, &b, y).unwrap());
            }

            #[test]
            fn swapping_arguments_flips_sign_by_degree(a in ypoly(3), b in ypoly(3)) {
                let y = a.ctx().y().unwrap();
                let (da, db) = (a.degree_in(y).unwrap_or(0), b.degree_in(y).unwrap_or(0));
                prop_assume!(da + db > 0);
                let ab = resultant_y(&a, &b).unwrap();
                let ba = resultant_y(&b, &a).unwrap();
                if (da * db) % 2 == 0 {
                    prop_assert_eq!(ab, ba);
                } else {
                    prop_assert_eq!(ab, ba.neg());
                }
            }
        }
    }
}
