//! Random cross-checks: generated polynomials against the test, the tree and the discriminant.

use quasiord::exact::ExpVec;
use quasiord::geometry::Polytope;
use quasiord::irreducibility::{test_polynomial, validate_exponent_sequence};
use quasiord::poly::{discriminant_fv, discriminant_fv_resultant};
use quasiord::tree::{build_tree, generate_polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sequence(rng: &mut ChaCha8Rng) -> Option<Vec<ExpVec>> {
    let d = rng.gen_range(1..=2);
    let mut h = Vec::new();
    let mut last = vec![0i64; d];
    for _ in 0..rng.gen_range(1..=2) {
        let den = rng.gen_range(2..=3);
        let e: Vec<String> = last.iter().map(|&l| format!("{}/{den}", l * den + rng.gen_range(1..=den))).collect();
        h.push(ExpVec::parse(&format!("({})", e.join(","))).ok()?);
        last = h.last()?.entries().iter().map(|r| r.ceil().to_integer().try_into().unwrap()).collect();
    }
    validate_exponent_sequence(&h).ok()?.ok.then_some(h)
}

fn main() -> quasiord::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut tried, mut agreed) = (0, 0);
    while tried < 10 {
        let Some(h) = random_sequence(&mut rng) else { continue };
        let g = generate_polynomial(&h)?;
        if g.f.degree_in(g.f.ctx().y().unwrap()).unwrap_or(0) > 12 {
            continue;
        }
        tried += 1;
        let d = discriminant_fv(&g.f)?;
        let report = test_polynomial(&g.f)?;
        let tree = build_tree(g.roots.clone())?;
        let checks = [
            report.char_exponents.as_deref() == Some(&h[..]),
            discriminant_fv_resultant(&g.f)? == d,
            tree.polytope()? == Polytope::newton(&d)?,
            tree.tree_type()?.as_deref() == Some(&h[..]),
        ];
        let names: Vec<String> = h.iter().map(|e| e.to_string()).collect();
        println!("{:<24} {:?}", names.join(";"), checks);
        if checks.iter().all(|&c| c) {
            agreed += 1;
        }
    }
    println!("{agreed}/{tried} instances passed every check");
    Ok(())
}
