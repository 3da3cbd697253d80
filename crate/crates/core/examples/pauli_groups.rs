//! Canonical Pauli subgroups: centralizers, intersections and membership.

use bacon_shor::{GroupBasis, PauliOp, SubsystemCode};

fn main() -> bacon_shor::Result<()> {
    let n = 4;
    let gens: Vec<PauliOp> = ["X0 X1", "X2 X3", "Z0 Z2", "Z1 Z3"]
        .iter()
        .map(|s| PauliOp::parse(s, n))
        .collect::<bacon_shor::Result<_>>()?;
    let g = GroupBasis::generated_by(n, &gens)?;
    let c = g.centralizer();
    let s = g.intersect(&c)?;
    println!("dim G = {}, dim C(G) = {}, dim S = {}", g.dim(), c.dim(), s.dim());
    for p in s.generators() {
        println!("stabilizer {p}");
    }

    let code = SubsystemCode::derive(n, gens, None)?;
    let x_bar = PauliOp::parse("X0 X2", n)?;
    println!("X0 X2 is a dressed logical: {}", code.is_dressed_logical(&x_bar)?);
    println!("X0 X1 X2 X3 is in G: {}", code.gauge().contains(&PauliOp::parse("X0 X1 X2 X3", n)?)?);
    Ok(())
}
