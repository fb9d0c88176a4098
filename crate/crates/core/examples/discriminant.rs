//! Computes `D_f(X, V)` with three independent methods and checks that they agree.

use quasiord::exact::Rat;
use quasiord::poly::{
    discriminant_fv, discriminant_fv_resultant, leading_v_coefficient, parse_weierstrass, resultant_bareiss, slice_v0,
    MPoly,
};

fn main() -> quasiord::Result<()> {
    let f = parse_weierstrass("Y^4 - 2*X1^3*Y^2 + X1^6 - X1^4*X2^3", None)?;
    let n = 4;
    let d = discriminant_fv(&f)?;
    println!("f   = {f}");
    println!("D_f = {d}");

    let by_chain = discriminant_fv_resultant(&f)?;
    println!("subresultant chain agrees: {}", by_chain == d);

    // Sylvester determinant of f - V and df/dY, then the sign (-1)^(n(n-1)/2)
    let ctx = f.ctx().with_v();
    let y = ctx.y().unwrap();
    let v = ctx.v().unwrap();
    let fv = f.to_context(&ctx)?;
    let shifted = fv.sub(&MPoly::var(&ctx, v, Rat::from_integer(1.into())));
    let sylvester = resultant_bareiss(&shifted, &fv.derivative(y), y)?;
    let sylvester = if (n * (n - 1) / 2) % 2 == 1 { sylvester.neg() } else { sylvester };
    println!("Sylvester determinant agrees: {}", sylvester.to_context(&ctx.without_y())? == d);

    println!("coefficient of V^{}: {}", n - 1, leading_v_coefficient(&d, n)?);
    println!("D_f at V = 0: {}", slice_v0(&d)?);
    Ok(())
}
