//! Random search for fixed-rank matrices whose row and column codes both
//! have large distance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector, DEFAULT_CAP};

/// Identifier of the generator behind [`gv_search`]: trial `t` draws from
/// `ChaCha8Rng::seed_from_u64(seed)` with stream `t`.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64/stream=trial";

const MAX_REJECTIONS: usize = 10_000;

/// `H₂(p) = −p log₂ p − (1−p) log₂(1−p)`, with `H₂(0) = H₂(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("probability {p} not in [0, 1]")));
    }
    let term = |t: f64| if t == 0.0 { 0.0 } else { -t * t.log2() };
    Ok(term(p) + term(1.0 - p))
}

/// Whether `(alpha, beta)` satisfies `alpha < 1 − H₂(beta)`.
pub fn gv_feasible(alpha: f64, beta: f64) -> Result<bool> {
    if alpha <= 0.0 {
        return Err(Error::OutOfRange(format!("alpha {alpha} must be positive")));
    }
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::OutOfRange(format!("beta {beta} not in (0, 1/2)")));
    }
    Ok(alpha < 1.0 - binary_entropy(beta)?)
}

fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> BitMatrix {
    let rows = (0..rows)
        .map(|_| BitVector::from_bools(&(0..cols).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>()))
        .collect();
    BitMatrix::from_rows(cols, rows).expect("rows have width cols")
}

fn random_full_rank<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Result<BitMatrix> {
    let rank = rows.min(cols);
    for _ in 0..MAX_REJECTIONS {
        let m = random_matrix(rows, cols, rng);
        if m.rank() == rank {
            return Ok(m);
        }
    }
    Err(Error::SamplingFailed(MAX_REJECTIONS))
}

/// Uniform sample from the `m × m` binary matrices of rank `k`, as `B·C`
/// with `B` (`m × k`) and `C` (`k × m`) uniform among full-rank factors.
pub fn sample_fixed_rank<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<BitMatrix> {
    if k == 0 || k > m {
        return Err(Error::OutOfRange(format!("rank {k} not in 1..={m}")));
    }
    let b = random_full_rank(m, k, rng)?;
    let c = random_full_rank(k, m, rng)?;
    b.mul(&c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GvQuery {
    pub m: usize,
    pub k: usize,
    pub beta: f64,
    pub max_trials: usize,
    pub seed: u64,
}

impl GvQuery {
    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.m {
            return Err(Error::OutOfRange(format!("rank {} not in 1..={}", self.k, self.m)));
        }
        if !(self.beta > 0.0 && self.beta < 0.5) {
            return Err(Error::OutOfRange(format!("beta {} not in (0, 1/2)", self.beta)));
        }
        Ok(())
    }

    /// `⌈βm⌉`, tolerant of rounding in `β·m` landing just above an integer.
    pub fn target_distance(&self) -> usize {
        (self.beta * self.m as f64 - 1e-9).ceil().max(0.0) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GvResult {
    pub found: bool,
    #[serde(skip)]
    pub matrix: Option<BitMatrix>,
    pub trials_used: usize,
    pub d_row: Option<usize>,
    pub d_col: Option<usize>,
    pub seed: u64,
    pub rng: String,
}

enum Trial {
    Rejected,
    Accepted(BitMatrix, usize, usize),
}

fn run_trial(query: &GvQuery, index: usize, target: usize, cap: u64) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(query.seed);
    rng.set_stream(index as u64);
    let a = sample_fixed_rank(query.m, query.k, &mut rng)?;
    let rows = a.row_space();
    let cols = a.column_space();
    if gf2::codeword_below(&rows, target, cap)?.is_some() || gf2::codeword_below(&cols, target, cap)?.is_some() {
        return Ok(Trial::Rejected);
    }
    let d_row = gf2::min_weight_nonzero(&rows, cap)?.0;
    let d_col = gf2::min_weight_nonzero(&cols, cap)?.0;
    Ok(Trial::Accepted(a, d_row, d_col))
}

/// Samples rank-`k` matrices until one has `d_row, d_col ≥ ⌈βm⌉`.
pub fn gv_search(query: &GvQuery) -> Result<GvResult> {
    gv_search_with(query, 1)
}

/// [`gv_search`] with trials spread over `threads` workers.
///
/// Trials are drawn from per-trial RNG streams and merged by smallest trial
/// index, so every thread count returns the same result.
pub fn gv_search_with(query: &GvQuery, threads: usize) -> Result<GvResult> {
    query.validate()?;
    let target = query.target_distance();
    let threads = threads.max(1);
    let batch = 16 * threads;
    let mut start = 0;
    while start < query.max_trials {
        let end = (start + batch).min(query.max_trials);
        let outcomes: Vec<Result<Trial>> = if threads == 1 {
            (start..end).map(|t| run_trial(query, t, target, DEFAULT_CAP)).collect()
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..threads)
                    .map(|w| {
                        s.spawn(move || {
                            (start + w..end)
                                .step_by(threads)
                                .map(|t| (t, run_trial(query, t, target, DEFAULT_CAP)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                let mut all: Vec<(usize, Result<Trial>)> =
                    handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect();
                all.sort_by_key(|(t, _)| *t);
                all.into_iter().map(|(_, r)| r).collect()
            })
        };
        for (offset, outcome) in outcomes.into_iter().enumerate() {
            if let Trial::Accepted(a, d_row, d_col) = outcome? {
                return Ok(GvResult {
                    found: true,
                    matrix: Some(a),
                    trials_used: start + offset + 1,
                    d_row: Some(d_row),
                    d_col: Some(d_col),
                    seed: query.seed,
                    rng: RNG_ALGORITHM.to_string(),
                });
            }
        }
        start = end;
    }
    Ok(GvResult {
        found: false,
        matrix: None,
        trials_used: query.max_trials,
        d_row: None,
        d_col: None,
        seed: query.seed,
        rng: RNG_ALGORITHM.to_string(),
    })
}
