//! Newton polytope of a discriminant, its vertex chain, and projections along monomial curves.

use quasiord::geometry::Polytope;
use quasiord::poly::{discriminant_fv, parse_weierstrass};

fn main() -> quasiord::Result<()> {
    let f = parse_weierstrass("Y^8 - 2*X1*X2*Y^4 + X1^2*X2^2 - X1^3*X2^2", None)?;
    let p = Polytope::newton(&discriminant_fv(&f)?)?;
    println!("vertices: {p}");

    match p.vertex_chain() {
        Ok(chain) => {
            println!("chain: {chain}");
            let slopes: Vec<String> = chain.slopes().iter().map(|s| s.to_string()).collect();
            println!("slopes: {}", slopes.join(", "));
            println!("sum of summands reproduces the polytope: {}", chain.to_polytope(p.dim() - 1) == p);
        }
        Err(e) => println!("not a chain: {e:?}"),
    }

    // along X1 = T^a, X2 = T^b the polytope becomes a polygon in (T, V)
    for c in [[1u64, 1], [2, 3], [5, 1]] {
        println!("projection {c:?}: {}", p.project(&c)?);
    }

    let y2 = parse_weierstrass("Y^2 - X1^2 - X2^2", None)?;
    let q = Polytope::newton(&discriminant_fv(&y2)?)?;
    println!("Y^2 - X1^2 - X2^2 gives {q}, chain: {:?}", q.vertex_chain().map(|c| c.to_string()));
    Ok(())
}
