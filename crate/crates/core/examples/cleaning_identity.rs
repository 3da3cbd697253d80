//! Logical operator counts on a region and its complement.

use bacon_shor::regions::{bare_logical_count, boundary, logical_count};
use bacon_shor::{localize, BitMatrix, GbsCode, Region};

fn main() -> bacon_shor::Result<()> {
    let code = GbsCode::build(&BitMatrix::ones(3, 3))?.into_code();
    let k = code.logical_qubits();
    for members in [vec![], vec![0, 1, 2], vec![0, 3, 6], vec![0, 1, 2, 3, 4, 5]] {
        let m = Region::new(code.num_qubits(), members)?;
        let bare = bare_logical_count(&code, &m)?;
        let dressed_outside = logical_count(&code, &m.complement())?;
        println!("M = {:?}: l_bare(M) + l(M^c) = {bare} + {dressed_outside} = 2k = {}", m.members(), 2 * k);
    }

    let local = localize(&GbsCode::build(&"101\n011\n".parse()?)?)?;
    let m = Region::new(local.code().num_qubits(), [0])?;
    println!("boundary of qubit 0 at range 1: {:?}", boundary(local.layout(), &m, 1)?.members());
    Ok(())
}
