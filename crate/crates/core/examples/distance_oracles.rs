//! Exact and weight-limited distance computations.

use bacon_shor::{BitMatrix, GbsCode, DEFAULT_CAP};

fn main() -> bacon_shor::Result<()> {
    for m in 2..=4 {
        let code = GbsCode::build(&BitMatrix::ones(m, m))?.into_code();
        let bounded = code.distance_bounded(m)?;
        println!(
            "{m}x{m} Bacon-Shor: bounded search up to weight {m} gives {:?}, witness {}",
            bounded.value,
            bounded.witness.map(|w| w.to_string()).unwrap_or_default()
        );
        let lighter = code.distance_bounded(m - 1)?;
        println!("  nothing up to weight {}: {}", m - 1, lighter.value.is_none());
        if m <= 3 {
            let full = code.distance_full_with(DEFAULT_CAP, 4)?;
            println!("  full enumeration over the logical group: {:?}", full.value);
        }
    }
    Ok(())
}
