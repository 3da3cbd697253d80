//! Build the code of a binary matrix and compare its parameters with the
//! prediction from the matrix.

use bacon_shor::{theoretical_params, BitMatrix, GbsCode, DEFAULT_CAP};

fn main() -> bacon_shor::Result<()> {
    let a: BitMatrix = "110\n011\n101\n".parse()?;
    let gbs = GbsCode::build(&a)?;
    let code = gbs.code();

    println!("matrix:\n{a}");
    for (q, site) in gbs.layout().sites().iter().enumerate() {
        println!("qubit {q} at cell ({}, {})", site.row, site.col);
    }
    println!("gauge generators:");
    for g in code.generators() {
        println!("  {g}");
    }
    println!("stabilizers:");
    for s in code.stabilizer().generators() {
        println!("  {s}");
    }

    let t = theoretical_params(&a, DEFAULT_CAP)?;
    println!("predicted [[{}, {}, {}]] (d_row = {}, d_col = {})", t.n, t.k, t.d, t.d_row, t.d_col);
    println!("derived   n = {}, k = {}, g = {}", code.num_qubits(), code.logical_qubits(), code.gauge_qubits());

    for (i, (x, z)) in gbs.bare_logical_basis()?.iter().enumerate() {
        println!("logical pair {i}: X = {x}, Z = {z}");
    }
    Ok(())
}
