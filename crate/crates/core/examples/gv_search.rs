//! Random search for a rank-4 16x16 matrix whose row and column spaces both
//! have distance at least 4.

use bacon_shor::search::{binary_entropy, gv_feasible, gv_search_with, GvQuery};

fn main() -> bacon_shor::Result<()> {
    let query = GvQuery { m: 16, k: 4, beta: 0.25, max_trials: 1000, seed: 2024 };
    println!(
        "alpha = {}, H2(beta) = {:.4}, inside the asymptotic guarantee: {}",
        query.k as f64 / query.m as f64,
        binary_entropy(query.beta)?,
        gv_feasible(query.k as f64 / query.m as f64, query.beta)?
    );
    let one = gv_search_with(&query, 1)?;
    let four = gv_search_with(&query, 4)?;
    assert_eq!(one, four);
    println!("found = {} after {} trials, d_row = {:?}, d_col = {:?}", one.found, one.trials_used, one.d_row, one.d_col);
    if let Some(a) = one.matrix {
        print!("{a}");
    }
    Ok(())
}
