//! Lattice arithmetic behind the index test: the chain `W_0 ⊂ W_1 ⊂ ...` generated by the slopes.

use quasiord::exact::ExpVec;
use quasiord::lattice::{Base, Lattice};
use quasiord::tree::parse_sequence;

fn main() -> quasiord::Result<()> {
    let h: Vec<ExpVec> = parse_sequence("(1/4,1/4);(3/4,1/4)")?;
    let mut w = Lattice::zd(2);
    println!("W_0 = {w}");
    for (i, e) in h.iter().enumerate() {
        let next = w.extend(&[e.entries().to_vec()])?;
        println!("W_{} = {next}  [W_{}:W_{}] = {}", i + 1, i + 1, i, next.relative_index(&w)?);
        w = next;
    }
    println!("[W : Z^2] = {}", w.relative_index(&Lattice::zd(2))?);

    let scaled = Lattice::from_expvecs(2, Base::ScaledZd(3), &[ExpVec::from_ints(&[1, 2])])?;
    println!(
        "3Z^2 + Z(1,2) = {scaled}, [Z^2 : it] = {} (Smith form: {})",
        scaled.index_in_zd()?,
        scaled.smith_index()?
    );
    println!("order of (1/4,1/4) modulo Z^2: {}", Lattice::zd(2).order_in_quotient(h[0].entries())?);
    Ok(())
}
