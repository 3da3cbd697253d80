//! Property suites shared by the test targets and the `verify` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gbs::{theoretical_params, GbsCode};
use crate::gf2::{BitMatrix, BitVector, DEFAULT_CAP};
use crate::localize::extend_with_ancilla;
use crate::random::{random_code, random_local_code};
use crate::regions::{cleaning_check, restriction_check, Region};
use crate::subsystem::SubsystemCode;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    /// Instances that could not be decided, such as an infeasible oracle.
    pub inconclusive: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

/// The worked example matrix with rows `110`, `011`, `101`.
pub fn example_matrix() -> BitMatrix {
    BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
}

/// Every nonzero `rows × cols` matrix, in increasing bitmask order.
pub fn all_matrices(rows: usize, cols: usize) -> impl Iterator<Item = BitMatrix> {
    assert!(rows * cols < 64);
    (1u64..(1 << (rows * cols))).map(move |mask| {
        let rows = (0..rows)
            .map(|i| BitVector::from_u64(cols, (mask >> (i * cols)) & ((1 << cols) - 1)))
            .collect();
        BitMatrix::from_rows(cols, rows).expect("rows have width cols")
    })
}

/// Checks `k = rank(A)` and, when `k ≥ 1`, that the full oracle distance
/// equals `min(d_row, d_col)`.
pub fn theorem2_instance(a: &BitMatrix, cap: u64) -> Result<Option<String>> {
    let t = theoretical_params(a, cap)?;
    let gbs = GbsCode::build(a)?;
    let code = gbs.code();
    if code.logical_qubits() != t.k || code.num_qubits() != t.n {
        return Ok(Some(format!(
            "{a}: derived [n={}, k={}] but theory says [n={}, k={}]",
            code.num_qubits(),
            code.logical_qubits(),
            t.n,
            t.k
        )));
    }
    if t.k >= 1 {
        let d = code.distance_full(cap)?.value.expect("full oracle returns a value");
        if d != t.d {
            return Ok(Some(format!("{a}: oracle distance {d}, theory {}", t.d)));
        }
    }
    Ok(None)
}

pub fn theorem2_shapes(shapes: &[(usize, usize)]) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("theorem2");
    for &(rows, cols) in shapes {
        for a in all_matrices(rows, cols) {
            let failure = theorem2_instance(&a, DEFAULT_CAP)?;
            report.record(failure.is_none(), || failure.unwrap());
        }
    }
    Ok(report)
}

/// All nonzero matrices of every shape up to `m × m`.
pub fn theorem2_exhaustive(m: usize) -> Result<SuiteReport> {
    if m == 0 || m > 3 {
        return Err(Error::OutOfRange(format!("exhaustive sweep supports m in 1..=3, got {m}")));
    }
    let shapes: Vec<(usize, usize)> = (1..=m).flat_map(|r| (1..=m).map(move |c| (r, c))).collect();
    theorem2_shapes(&shapes)
}

fn random_region<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Region {
    Region::from_mask(n, rng.gen_range(0..(1u64 << n)))
}

/// Cleaning identity on every subset of the worked example plus `trials`
/// random codes on `1..=n_max` qubits with random subsets.
pub fn cleaning(n_max: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    if n_max == 0 || n_max > 16 {
        return Err(Error::OutOfRange(format!("n_max {n_max} not in 1..=16")));
    }
    let mut report = SuiteReport::new("cleaning");
    let example = GbsCode::build(&example_matrix())?.into_code();
    for mask in 0..(1u64 << example.num_qubits()) {
        let m = Region::from_mask(example.num_qubits(), mask);
        report.record(cleaning_check(&example, &m)?, || format!("example, region {:?}", m.members()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let n = rng.gen_range(1..=n_max);
        let code = random_code(n, &mut rng);
        let m = random_region(n, &mut rng);
        report.record(cleaning_check(&code, &m)?, || {
            format!("trial {trial}: n={n}, region {:?}, generators {:?}", m.members(), code.generators())
        });
    }
    Ok(report)
}

fn distance_or_none(code: &SubsystemCode) -> Result<Option<usize>> {
    if code.logical_qubits() == 0 {
        return Ok(None);
    }
    Ok(code.distance_full(DEFAULT_CAP)?.value)
}

/// Ancilla extension at every qubit of `trials` random codes on
/// `1..=n_max` qubits must keep `k` and the distance.
pub fn lemma3(n_max: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    if n_max == 0 || n_max > 8 {
        return Err(Error::OutOfRange(format!("n_max {n_max} not in 1..=8")));
    }
    let mut report = SuiteReport::new("lemma3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let n = rng.gen_range(1..=n_max);
        let code = random_code(n, &mut rng);
        let d = distance_or_none(&code)?;
        for q in 0..n {
            let ext = extend_with_ancilla(&code, q)?;
            let same_k = ext.logical_qubits() == code.logical_qubits();
            let d_ext = if same_k { distance_or_none(&ext)? } else { None };
            report.record(same_k && d_ext == d, || {
                format!(
                    "trial {trial}: q={q}, k {}→{}, d {d:?}→{d_ext:?}, generators {:?}",
                    code.logical_qubits(),
                    ext.logical_qubits(),
                    code.generators()
                )
            });
        }
    }
    Ok(report)
}

/// Restriction dichotomy on `trials` random local codes with layouts and
/// random regions, using the code's own interaction range.
pub fn restriction(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("restriction");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < trials {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(2..=3);
        let n = rng.gen_range(2..=rows * cols);
        let code = random_local_code(rows, cols, n, &mut rng);
        if code.logical_qubits() == 0 {
            continue;
        }
        done += 1;
        let m = random_region(n, &mut rng);
        let r = code.interaction_range().expect("random local codes have layouts");
        let check = restriction_check(&code, &m, r, None, DEFAULT_CAP)?;
        match check.holds {
            None => report.inconclusive += 1,
            Some(ok) => report.record(ok, || {
                format!("region {:?}, r={r}, report {check:?}, generators {:?}", m.members(), code.generators())
            }),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let r = theorem2_exhaustive(2).unwrap();
        assert_eq!(r.instances, 1 + 3 + 3 + 15);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(theorem2_exhaustive(4).is_err());
    }

    #[test]
    fn random_suites_pass() {
        let r = cleaning(5, 50, 1).unwrap();
        assert_eq!(r.instances, 64 + 50);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(lemma3(4, 20, 2).unwrap().passed());
        let r = restriction(20, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.instances + r.inconclusive, 20);
    }
}
