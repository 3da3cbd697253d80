//! Random instances for fuzzing and the verification suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::layout::{Layout, Site};
use crate::pauli::{Letter, PauliOp};
use crate::subsystem::SubsystemCode;

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

/// Uniformly random phaseless Pauli operator on `n` qubits.
pub fn random_pauli<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PauliOp {
    let mut p = PauliOp::identity(n);
    for q in 0..n {
        p.set(q, LETTERS[rng.gen_range(0..4)]);
    }
    p
}

pub fn random_generators<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<PauliOp> {
    (0..count).map(|_| random_pauli(n, rng)).collect()
}

/// Random gauge group on `n` qubits with between 1 and `2n` generators.
pub fn random_code<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SubsystemCode {
    let count = rng.gen_range(1..=2 * n);
    SubsystemCode::derive(n, random_generators(n, count, rng), None).expect("generators share n")
}

/// Random gauge group with at least one logical qubit.
pub fn random_code_with_logicals<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SubsystemCode {
    loop {
        let c = random_code(n, rng);
        if c.logical_qubits() >= 1 {
            return c;
        }
    }
}

/// Random code whose qubits sit on distinct cells of a `rows × cols` grid
/// and whose generators each act on a qubit and some of its
/// nearest-neighbour cells.
pub fn random_local_code<R: Rng + ?Sized>(rows: usize, cols: usize, n: usize, rng: &mut R) -> SubsystemCode {
    assert!(n <= rows * cols);
    let mut cells: Vec<Site> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| Site::new(r, c, 0)))
        .collect();
    cells.shuffle(rng);
    cells.truncate(n);
    let layout = Layout::new(rows, cols, cells).expect("distinct cells");
    let count = rng.gen_range(1..=2 * n);
    let generators = (0..count)
        .map(|_| {
            let centre = rng.gen_range(0..n);
            let mut p = PauliOp::identity(n);
            for q in 0..n {
                let near = layout.site(q).cell_distance(&layout.site(centre)) <= 1;
                if q == centre || (near && rng.gen_bool(0.5)) {
                    p.set(q, LETTERS[rng.gen_range(1..4)]);
                }
            }
            p
        })
        .collect();
    SubsystemCode::derive(n, generators, Some(layout)).expect("generators share n")
}
