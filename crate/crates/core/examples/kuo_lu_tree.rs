//! Builds the Kuo-Lu tree of an explicit set of fractional power series roots.

use quasiord::exact::ExpVec;
use quasiord::geometry::Polytope;
use quasiord::poly::discriminant_fv;
use quasiord::tree::{build_tree, expand_roots, CycloNum, FracSeries};

fn main() -> quasiord::Result<()> {
    // the four conjugates of X1^(1/2) + X1^(3/4) X2 over Q(zeta_4)
    let k = 4;
    let e1 = ExpVec::parse("(1/2,0)")?;
    let e2 = ExpVec::parse("(3/4,1)")?;
    let roots: Vec<FracSeries> = (0..4)
        .map(|j| {
            FracSeries::new(
                2,
                k,
                [(e1.clone(), CycloNum::zeta_pow(k, 2 * j)), (e2.clone(), CycloNum::zeta_pow(k, 3 * j))],
            )
        })
        .collect::<quasiord::Result<_>>()?;
    let tree = build_tree(roots.clone())?;
    println!("{}", tree.render()?);
    println!("tree type: {:?}", tree.tree_type()?.map(|t| t.iter().map(|e| e.to_string()).collect::<Vec<_>>()));

    let f = expand_roots(2, k, &roots)?;
    let p = Polytope::newton(&discriminant_fv(&f)?)?;
    println!("f = {f}");
    println!("tree polytope equals discriminant polytope: {}", tree.polytope()? == p);
    Ok(())
}
