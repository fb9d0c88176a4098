//! Fitting discriminant of a Y-regular series at finite precision, with certified vertices.

use quasiord::poly::{discriminant_fv, parse_xy};
use quasiord::series::{certified_polytope, fitting_discriminant, weierstrass_preparation, TruncSeries};

fn main() -> quasiord::Result<()> {
    // a unit multiple of Y^2 - X^3
    let f = TruncSeries::exact(parse_xy("(1 + X + Y)*(Y^2 - X^3)", Some(1))?);
    for prec in [6, 12] {
        let d = fitting_discriminant(&f, prec)?;
        let cert = certified_polytope(&d)?;
        println!("precision {prec}: {d}");
        println!("  {}", cert.to_json());
    }

    let w = weierstrass_preparation(&f, 12)?;
    println!("Weierstrass polynomial to degree 12: {w}");
    println!("its discriminant: {}", discriminant_fv(&parse_xy("Y^2 - X^3", Some(1))?)?);

    // a truncated input: only the certified vertices are trustworthy
    let g = TruncSeries::truncated(parse_xy("Y^3 - X^2*Y + X^5 + X^9", Some(1))?, 40);
    let d = fitting_discriminant(&g, 8)?;
    println!("truncated input: {d}");
    println!("  {}", certified_polytope(&d)?.to_json());
    Ok(())
}
