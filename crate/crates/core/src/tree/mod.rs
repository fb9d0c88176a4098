//! Kuo-Lu tree models of root sets, their polytopes and conjugacy structure,
//! and construction of irreducible polynomials from exponent sequences.

mod cyclo;
mod frac;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde_json::{json, Value};

pub use cyclo::{cyclotomic, phi, CycloNum};
pub use frac::{contact, min_contact, CoefJson, FracSeries, RootTerm, RootsFile};

use crate::error::{Error, Result};
use crate::exact::{min_of_set, Comparison, ExpVec, Height, Rat};
use crate::geometry::Polytope;
use crate::irreducibility::{expvec_json, validate_exponent_sequence};
use crate::lattice::Lattice;
use crate::poly::{Coef, MPoly, Mono, VarContext};

#[derive(Clone, Debug, PartialEq)]
pub struct Bar {
    /// Indices into the tree's root list, ascending.
    pub members: Vec<usize>,
    pub height: Height,
    /// Coefficient of `X^{h(parent)}` shared by the members; `None` on the root bar.
    pub support: Option<CycloNum>,
    pub postbars: Vec<Bar>,
    pub q: Height,
    /// `N(B)`.
    pub char_lattice: Lattice,
}

impl Bar {
    pub fn is_leaf(&self) -> bool {
        self.height.is_infinite()
    }

    /// Number of postbars `t(B)`.
    pub fn t(&self) -> usize {
        self.postbars.len()
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, out: &mut Vec<&'a Bar>) {
        out.push(self);
        for b in &self.postbars {
            b.walk(out);
        }
    }

    /// Number of conjugates `[N(B) : Z^d]`.
    pub fn conjugate_count(&self) -> Result<u64> {
        self.char_lattice
            .relative_index(&Lattice::zd(self.char_lattice.dim()))?
            .as_u64()
            .ok_or_else(|| Error::internal("characteristic lattice does not contain Z^d with finite index"))
    }

    /// Number of postbars of `self` conjugate to `child`.
    pub fn sibling_conjugates(&self, child: &Bar) -> Result<u64> {
        let supported = child.support.as_ref().is_some_and(|c| !Coef::is_zero(c));
        match (supported, self.height.finite()) {
            (true, Some(h)) => self
                .char_lattice
                .order_in_quotient(h.entries())?
                .to_u64()
                .ok_or_else(|| Error::internal("order too large")),
            _ => Ok(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeModel {
    pub root: Bar,
    pub d: usize,
    pub k: u32,
    pub roots: Vec<FracSeries>,
}

impl TreeModel {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn bars(&self) -> Vec<&Bar> {
        let mut out = Vec::new();
        self.root.walk(&mut out);
        out
    }

    /// `Σ_B {(t(B)-1) q(B) / (t(B)-1)}` over bars of finite height.
    pub fn polytope(&self) -> Result<Polytope> {
        let mut acc = Polytope::orthant(self.d + 1);
        for b in self.bars() {
            if let Height::Finite(q) = &b.q {
                let t = b.t() as u64 - 1;
                acc = acc.minkowski_sum(&Polytope::elementary(&q.scale_int(t), t))?;
            }
        }
        Ok(acc)
    }

    /// For every `ε ∈ (Z/k)^d`, the permutation of roots it induces.
    pub fn star_permutations(&self) -> Result<Vec<Vec<usize>>> {
        let index: FxHashMap<&FracSeries, usize> = self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut out = Vec::new();
        for eps in all_eps(self.d, self.k) {
            let perm = self
                .roots
                .iter()
                .map(|r| {
                    let img = r.star(&eps)?;
                    index
                        .get(&img)
                        .copied()
                        .ok_or_else(|| Error::invalid("root set is not closed under the star action"))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(perm);
        }
        Ok(out)
    }

    /// Size of the orbit of `bar` under the star action, by enumeration.
    pub fn orbit_size(&self, bar: &Bar, perms: &[Vec<usize>]) -> usize {
        let images: FxHashSet<Vec<usize>> = perms
            .iter()
            .map(|p| {
                let mut img: Vec<usize> = bar.members.iter().map(|&i| p[i]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        images.len()
    }

    /// Returns `(h_1, ..., h_g)` when the tree is of that type.
    pub fn tree_type(&self) -> Result<Option<Vec<ExpVec>>> {
        let mut level: Vec<&Bar> = vec![&self.root];
        let mut hs = Vec::new();
        let mut n_prev = Lattice::zd(self.d);
        loop {
            if level.iter().all(|b| b.is_leaf()) {
                return Ok(Some(hs));
            }
            let Some(h) = level[0].height.finite() else { return Ok(None) };
            if level.iter().any(|b| b.height.finite() != Some(h)) {
                return Ok(None);
            }
            let n_i = n_prev.order_in_quotient(h.entries())?;
            if level.iter().any(|b| BigInt::from(b.t()) != n_i) {
                return Ok(None);
            }
            n_prev = n_prev.extend(&[h.entries().to_vec()])?;
            hs.push(h.clone());
            level = level.iter().flat_map(|b| b.postbars.iter()).collect();
        }
    }

    pub fn to_json(&self) -> Result<Value> {
        fn bar_json(b: &Bar, parent: Option<&Bar>) -> Result<Value> {
            let h = |x: &Height| match x {
                Height::Finite(v) => expvec_json(v),
                Height::Infinite => Value::String("inf".into()),
            };
            let posts = b.postbars.iter().map(|c| bar_json(c, Some(b))).collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "members": b.members,
                "height": h(&b.height),
                "q": h(&b.q),
                "supportCoef": b.support.as_ref().map(|c| json!({"k": c.k(), "c": c.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>()})),
                "conjugates": b.conjugate_count()?,
                "siblingConjugates": match parent { Some(p) => Value::from(p.sibling_conjugates(b)?), None => Value::Null },
                "postbars": posts,
            }))
        }
        Ok(json!({"d": self.d, "k": self.k, "degree": self.degree(), "root": bar_json(&self.root, None)?}))
    }

    /// Indented bar diagram, one line per bar of finite height.
    pub fn render(&self) -> Result<String> {
        fn go(b: &Bar, parent: Option<&Bar>, depth: usize, out: &mut String) -> Result<()> {
            let pad = "  ".repeat(depth);
            if b.is_leaf() {
                let _ = writeln!(out, "{pad}leaf {}", b.members[0]);
                return Ok(());
            }
            let _ = write!(
                out,
                "{pad}bar h={} q={} #={} postbars={} conjugates={}",
                b.height,
                b.q,
                b.members.len(),
                b.t(),
                b.conjugate_count()?
            );
            if let (Some(p), Some(c)) = (parent, &b.support) {
                let _ = write!(out, " support={c} siblings={}", p.sibling_conjugates(b)?);
            }
            out.push('\n');
            for c in &b.postbars {
                go(c, Some(b), depth + 1, out)?;
            }
            Ok(())
        }
        let mut out = String::new();
        go(&self.root, None, 0, &mut out)?;
        Ok(out)
    }
}

fn all_eps(d: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|e| (0..k).map(move |x| [e.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Builds `T(f)` from the full root set.
pub fn build_tree(roots: Vec<FracSeries>) -> Result<TreeModel> {
    let first = roots.first().ok_or_else(|| Error::invalid("at least one root is required"))?;
    let (d, k) = (first.dim(), first.k());
    let n = roots.len();
    let mut contacts = vec![vec![Height::Infinite; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = contact(&roots[i], &roots[j])?;
            if c.is_infinite() {
                return Err(Error::DuplicateRoots);
            }
            contacts[i][j] = c.clone();
            contacts[j][i] = c;
        }
    }
    let members: Vec<usize> = (0..n).collect();
    let root = build_bar(&roots, &contacts, members, None, None, Lattice::zd(d))?;
    Ok(TreeModel { root, d, k, roots })
}

fn build_bar(
    roots: &[FracSeries],
    contacts: &[Vec<Height>],
    members: Vec<usize>,
    parent: Option<(&Height, &Height)>,
    support: Option<CycloNum>,
    char_lattice: Lattice,
) -> Result<Bar> {
    let size = Rat::from_integer(BigInt::from(members.len()));
    if members.len() == 1 {
        return Ok(Bar {
            members,
            height: Height::Infinite,
            support,
            postbars: Vec::new(),
            q: Height::Infinite,
            char_lattice,
        });
    }
    let pairs: Vec<&Height> =
        members.iter().enumerate().flat_map(|(a, &i)| members[a + 1..].iter().map(move |&j| &contacts[i][j])).collect();
    let height = min_of_set(pairs)?;
    let h = height.finite().ok_or(Error::DuplicateRoots)?.clone();
    let q = match parent {
        None => h.scale(&size),
        Some((ph, pq)) => {
            let (ph, pq) = (ph.finite().expect("finite parent"), pq.finite().expect("finite parent"));
            let diff = h.checked_sub(ph).ok_or_else(|| Error::internal("heights do not increase"))?;
            pq.add(&diff.scale(&size))
        }
    };
    // classes of `contact > h`
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = BTreeSet::new();
    for &i in &members {
        if assigned.contains(&i) {
            continue;
        }
        let class: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&j| j == i || contacts[i][j].compare(&height).map(|c| c == Comparison::Greater).unwrap_or(false))
            .collect();
        for &a in &class {
            for &b in &class {
                if a != b && contacts[a][b].compare(&height)? != Comparison::Greater {
                    return Err(Error::NotQuasiOrdinaryRoots(
                        "contacts violate the strong triangular inequality".into(),
                    ));
                }
            }
        }
        assigned.extend(class.iter().copied());
        classes.push(class);
    }
    let child_lattice_base = char_lattice.clone();
    let hh = Height::Finite(h.clone());
    let qq = Height::Finite(q.clone());
    let mut postbars = Vec::with_capacity(classes.len());
    for class in classes {
        let c = roots[class[0]].coefficient(&h);
        if class.iter().any(|&i| roots[i].coefficient(&h) != c) {
            return Err(Error::internal("members of a postbar disagree at the parent height"));
        }
        let lattice = if Coef::is_zero(&c) {
            child_lattice_base.clone()
        } else {
            child_lattice_base.extend(&[h.entries().to_vec()])?
        };
        postbars.push(build_bar(roots, contacts, class, Some((&hh, &qq)), Some(c), lattice)?);
    }
    Ok(Bar { members, height: hh, support, postbars, q: qq, char_lattice })
}

/// An irreducible polynomial with the given characteristic exponents and its roots.
#[derive(Clone, Debug)]
pub struct Generated {
    pub f: MPoly<Rat>,
    pub roots: Vec<FracSeries>,
    pub k: u32,
    /// `n_i = [N_i : N_{i-1}]`.
    pub n: Vec<u64>,
}

impl Generated {
    pub fn roots_file(&self) -> RootsFile {
        RootsFile::from_roots(self.f.ctx().d(), self.k, &self.roots)
    }
}

pub fn generate_polynomial(h: &[ExpVec]) -> Result<Generated> {
    let ones = vec![Rat::from_integer(1.into()); h.len()];
    generate_with_coefficients(h, &ones)
}

/// Like [`generate_polynomial`] with `Y_1 = Σ c_i X^{h_i}` for nonzero rationals `c_i`.
pub fn generate_with_coefficients(h: &[ExpVec], coeffs: &[Rat]) -> Result<Generated> {
    let check = validate_exponent_sequence(h)?.into_result()?;
    if coeffs.len() != h.len() || coeffs.iter().any(Zero::is_zero) {
        return Err(Error::invalid("need one nonzero coefficient per exponent"));
    }
    let d = h[0].dim();
    let k_big = h.iter().fold(BigInt::from(1), |acc, e| acc.lcm(&e.denominator()));
    let k = k_big.to_u32().filter(|&k| k <= 1 << 12).ok_or_else(|| Error::invalid("common denominator too large"))?;
    let y1 = FracSeries::new(d, k, h.iter().zip(coeffs).map(|(e, c)| (e.clone(), CycloNum::from_rat(k, c.clone()))))?;
    let mut seen = FxHashSet::default();
    let mut roots = Vec::new();
    for eps in all_eps(d, k) {
        let r = y1.star(&eps)?;
        if seen.insert(r.clone()) {
            roots.push(r);
        }
    }
    if roots.len() as u64 != check.degree() {
        return Err(Error::internal("orbit size differs from [N_g : Z^d]"));
    }
    let f = expand_roots(d, k, &roots)?;
    Ok(Generated { f, roots, k, n: check.n })
}

/// `Π (Y - r)` over the roots, which must have rational coefficients in `X1..Xd`.
pub fn expand_roots(d: usize, k: u32, roots: &[FracSeries]) -> Result<MPoly<Rat>> {
    let ctx = VarContext::xy(d);
    let y = ctx.y().expect("has Y");
    let kr = Rat::from_integer(k.into());
    let scaled = |e: &ExpVec| -> Result<Vec<u32>> {
        e.entries()
            .iter()
            .map(|a| (a * &kr).to_integer().to_u32().ok_or_else(|| Error::invalid("exponent too large")))
            .collect()
    };
    let ylin = MPoly::term(&ctx, Mono::var(y, 1), CycloNum::one(k));
    let mut acc = MPoly::constant(&ctx, CycloNum::one(k));
    for r in roots {
        let mut terms = Vec::new();
        for (e, c) in r.terms() {
            let mut ex = scaled(e)?;
            ex.push(0);
            terms.push((ex, c.neg_ref()));
        }
        let factor = ylin.add(&MPoly::from_exp_terms(&ctx, terms)?);
        acc = acc.mul(&factor);
    }
    let mut out = Vec::with_capacity(acc.len());
    for (m, c) in acc.terms() {
        let c = c.as_rational().ok_or_else(|| Error::internal("expanded coefficient is not rational"))?;
        let mut ex = m.exps(d + 1);
        for e in ex.iter_mut().take(d) {
            if *e % k != 0 {
                return Err(Error::internal("expanded exponent is not integral"));
            }
            *e /= k;
        }
        out.push((ex, c));
    }
    MPoly::from_exp_terms(&ctx, out)
}

/// Parses `(1/4,1/4);(3/4,1/4)` or `3/2`.
pub fn parse_sequence(s: &str) -> Result<Vec<ExpVec>> {
    let parts: Vec<ExpVec> =
        s.split(';').filter(|p| !p.trim().is_empty()).map(|p| ExpVec::parse(p.trim())).collect::<Result<_>>()?;
    if parts.is_empty() {
        return Err(Error::parse("empty exponent sequence"));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreducibility::test_polynomial;
    use crate::poly::{discriminant_fv, parse_xy};

    fn ev(n: &[i64], den: i64) -> ExpVec {
        ExpVec::from_fraction(n, den)
    }

    fn first_example() -> Generated {
        generate_polynomial(&[ev(&[1, 1], 4), ev(&[3, 1], 4)]).unwrap()
    }

    #[test]
    fn generates_small_polynomials() {
        let g = generate_polynomial(&[ev(&[3], 2)]).unwrap();
        assert_eq!(g.f, parse_xy("Y^2 - X^3", Some(1)).unwrap());
        assert_eq!(g.roots.len(), 2);
        let g = generate_polynomial(&[ev(&[1, 1], 2)]).unwrap();
        assert_eq!(g.f, parse_xy("Y^2 - X1*X2", Some(2)).unwrap());
        assert!(matches!(
            generate_polynomial(&[ev(&[1, 0], 2), ev(&[2, 0], 2)]),
            Err(Error::InvalidSequence { condition: "C2", at: 2 })
        ));
    }

    #[test]
    fn tree_of_the_first_example() {
        let g = first_example();
        assert_eq!(g.f.ctx().d(), 2);
        assert_eq!(g.roots.len(), 8);
        let t = build_tree(g.roots.clone()).unwrap();
        assert_eq!(t.root.height, Height::Finite(ev(&[1, 1], 4)));
        assert_eq!(t.root.q, Height::Finite(ExpVec::from_ints(&[2, 2])));
        assert_eq!(t.root.t(), 4);
        for b in &t.root.postbars {
            assert_eq!(b.height, Height::Finite(ev(&[3, 1], 4)));
            assert_eq!(b.q, Height::Finite(ExpVec::from_ints(&[3, 2])));
            assert_eq!(b.t(), 2);
            assert_eq!(b.conjugate_count().unwrap(), 4);
            assert_eq!(t.root.sibling_conjugates(b).unwrap(), 4);
            assert!(b.postbars.iter().all(|l| l.is_leaf() && l.conjugate_count().unwrap() == 8));
        }
        assert_eq!(t.root.conjugate_count().unwrap(), 1);
        let p = t.polytope().unwrap();
        assert_eq!(p.chain_decompose().unwrap().to_string(), "{(6,6)/3} + {(12,8)/4}");
        assert_eq!(p, Polytope::newton(&discriminant_fv(&g.f).unwrap()).unwrap());
        assert_eq!(t.tree_type().unwrap(), Some(vec![ev(&[1, 1], 4), ev(&[3, 1], 4)]));
        let perms = t.star_permutations().unwrap();
        for b in t.bars() {
            assert_eq!(t.orbit_size(b, &perms) as u64, b.conjugate_count().unwrap());
        }
        let r = test_polynomial(&g.f).unwrap();
        assert_eq!(r.char_exponents, Some(vec![ev(&[1, 1], 4), ev(&[3, 1], 4)]));
    }

    #[test]
    fn tree_of_third_example_shape() {
        // four roots ζ^j X^{(1/4,1/4)} and four roots ζ^j X^{(1/2,1/4)}
        let mut roots = Vec::new();
        for e in [ev(&[1, 1], 4), ev(&[2, 1], 4)] {
            for j in 0..4 {
                roots.push(FracSeries::new(2, 4, [(e.clone(), CycloNum::zeta_pow(4, j))]).unwrap());
            }
        }
        let t = build_tree(roots.clone()).unwrap();
        assert_eq!(t.root.t(), 5);
        assert_eq!(t.tree_type().unwrap(), None);
        assert_eq!(t.polytope().unwrap().chain_decompose().unwrap().to_string(), "{(8,8)/4} + {(9,6)/3}");
        let f = expand_roots(2, 4, &roots).unwrap();
        assert_eq!(t.polytope().unwrap(), Polytope::newton(&discriminant_fv(&f).unwrap()).unwrap());
        let inner = t.root.postbars.iter().find(|b| !b.is_leaf()).unwrap();
        assert!(Coef::is_zero(inner.support.as_ref().unwrap()));
        assert_eq!(t.root.sibling_conjugates(inner).unwrap(), 1);
    }

    #[test]
    fn degenerate_and_invalid_trees() {
        let one = FracSeries::sum_of_monomials(1, &[ExpVec::from_ints(&[1])]).unwrap();
        let t = build_tree(vec![one.clone()]).unwrap();
        assert!(t.root.is_leaf());
        assert_eq!(t.tree_type().unwrap(), Some(vec![]));
        assert_eq!(t.polytope().unwrap(), Polytope::orthant(2));
        assert!(matches!(build_tree(vec![one.clone(), one]), Err(Error::DuplicateRoots)));
        let cusp = build_tree(generate_polynomial(&[ev(&[3], 2)]).unwrap().roots).unwrap();
        assert_eq!(cusp.root.q, Height::Finite(ExpVec::from_ints(&[3])));
        assert!(cusp.root.postbars.iter().all(|b| b.is_leaf()));
        assert_eq!(cusp.polytope().unwrap().chain_decompose().unwrap().to_string(), "{3/1}");
    }

    #[test]
    fn different_supporting_coefficients_give_the_same_polytope() {
        let h = [ev(&[1, 1], 4), ev(&[3, 1], 4)];
        let a = generate_polynomial(&h).unwrap();
        let b =
            generate_with_coefficients(&h, &[Rat::from_integer(3.into()), Rat::new((-2).into(), 5.into())]).unwrap();
        assert_ne!(a.f, b.f);
        let pa = Polytope::newton(&discriminant_fv(&a.f).unwrap()).unwrap();
        let pb = Polytope::newton(&discriminant_fv(&b.f).unwrap()).unwrap();
        assert_eq!(pa, pb);
        let (ra, rb) = (test_polynomial(&a.f).unwrap(), test_polynomial(&b.f).unwrap());
        assert_eq!(ra, rb);
    }

    #[test]
    fn sequence_parsing() {
        assert_eq!(parse_sequence("(1/4,1/4);(3/4,1/4)").unwrap(), vec![ev(&[1, 1], 4), ev(&[3, 1], 4)]);
        assert_eq!(parse_sequence("3/2").unwrap(), vec![ev(&[3], 2)]);
        assert!(parse_sequence("").is_err());
    }
}
