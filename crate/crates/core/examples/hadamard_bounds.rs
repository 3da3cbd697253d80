//! The Hadamard family meets the refined parameter bound with equality.

use bacon_shor::{check_bounds, hadamard_matrix, profile, verify_feasibility};

fn main() -> bacon_shor::Result<()> {
    for k in 1..=5 {
        let h = hadamard_matrix(k)?;
        let r = check_bounds(&h)?;
        let p = profile(&h)?;
        println!(
            "k = {k}: n = {}, d_row = {}, d_col = {}, refined slack = {}, rate slack = {}, profile feasible = {}",
            r.n,
            r.d_row,
            r.d_col,
            r.refined_slack,
            r.rate_slack,
            verify_feasibility(&p, r.n, r.d_row, r.d_col)
        );
    }
    let p = profile(&hadamard_matrix(2)?)?;
    println!("k = 2 column counts: r = {:?}, c = {:?}, total weight = {}", p.r, p.c, p.total_weight());
    Ok(())
}
