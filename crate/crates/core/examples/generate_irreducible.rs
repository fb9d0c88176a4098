//! Generates irreducible polynomials from characteristic exponents and tests them.

use quasiord::irreducibility::{test_polynomial, validate_exponent_sequence};
use quasiord::tree::{generate_polynomial, parse_sequence};

fn main() -> quasiord::Result<()> {
    for s in ["3/2", "(1/4,1/4);(3/4,1/4)", "(1/2,0);(1/2,1/3)", "(1/2,0);(1,0)"] {
        let h = parse_sequence(s)?;
        let check = validate_exponent_sequence(&h)?;
        if !check.ok {
            println!("{s}: rejected, {:?}", check.violation);
            continue;
        }
        let g = generate_polynomial(&h)?;
        let report = test_polynomial(&g.f)?;
        let back: Vec<String> = report.char_exponents.iter().flatten().map(|e| e.to_string()).collect();
        println!("{s}: degree {}, n = {:?}", check.degree(), g.n);
        println!("  f = {}", g.f);
        println!("  verdict {}, exponents back: {}", report.verdict.as_str(), back.join(";"));
    }
    Ok(())
}
