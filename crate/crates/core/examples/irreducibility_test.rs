//! Runs the irreducibility test on a few Weierstrass polynomials and prints the reports.
//!
//! Pass a polynomial on the command line to test it instead:
//! `cargo run --example irreducibility_test -- "Y^4 - 2*X^3*Y^2 + X^6 - X^7"`

use quasiord::irreducibility::test_polynomial;
use quasiord::poly::parse_weierstrass;

fn main() -> quasiord::Result<()> {
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(s) => vec![s],
        None => [
            "Y^8 - 2*X1*X2*Y^4 + X1^2*X2^2 - X1^3*X2^2",
            "Y^8 - 2*X1*X2*Y^4 + X1^2*X2^2 - X1^4*X2^2 - X1^5*X2^3",
            "Y^2 - X1^3*X2",
            // (Y - X)(Y + X) is reducible
            "Y^2 - X^2",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    };
    for s in inputs {
        let f = parse_weierstrass(&s, None)?;
        let report = test_polynomial(&f)?;
        println!("f = {f}");
        println!("{report}");
        if let Some(h) = &report.char_exponents {
            let h: Vec<String> = h.iter().map(|e| e.to_string()).collect();
            println!("recovered exponents: {}", h.join("; "));
        }
        println!();
    }
    Ok(())
}
