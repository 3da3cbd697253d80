//! Turn a code with long-range generators into a nearest-neighbour one and
//! pad it to fill every slot of the grid.

use bacon_shor::{check_locality, localize, pad_full, BitMatrix, GbsCode};

fn main() -> bacon_shor::Result<()> {
    let a: BitMatrix = "110\n011\n101\n".parse()?;
    let gbs = GbsCode::build(&a)?;
    println!("raw construction local: {}", check_locality(gbs.code()));

    let local = localize(&gbs)?;
    for chain in local.chains() {
        println!("{:?} chain {:?} through ancillas {:?}", chain.kind, chain.endpoints, chain.ancillas);
    }
    let padded = pad_full(&local)?;
    let code = padded.code();
    println!(
        "{} original + {} ancillas + {} padding = {} qubits, k = {}, local = {}",
        padded.original_qubits(),
        padded.ancilla_count(),
        padded.padding_count(),
        code.num_qubits(),
        code.logical_qubits(),
        padded.is_local()
    );
    let d = code.distance_bounded(2)?;
    println!("distance {:?} via {}", d.value, d.witness.unwrap());
    Ok(())
}
