//! Nearest-neighbour form of generalized Bacon-Shor codes.
//!
//! A long-range `X_c X_c'` between two occupied cells of a row is replaced by
//! a chain `X_c X_{c1}, X_{c1} X_{c2}, …, X_{cp} X_c'` through ancillas on the
//! empty cells in between, each ancilla also carrying a one-qubit `Z`. Column
//! gaps are handled the same way with the roles of `X` and `Z` exchanged.
//! Row ancillas occupy layer 0 of their cell, column ancillas layer 1.

use crate::error::{Error, Result};
use crate::gbs::GbsCode;
use crate::gf2::BitMatrix;
use crate::layout::{Layout, Site};
use crate::pauli::{Letter, PauliOp};
use crate::subsystem::SubsystemCode;

/// Adds an ancilla `a = n` and the gauge generators `X_q X_a` and `Z_a`.
///
/// The result has the same `k` and `d`. The layout (if any) is dropped,
/// since the new qubit has no natural position.
pub fn extend_with_ancilla(code: &SubsystemCode, q: usize) -> Result<SubsystemCode> {
    let n = code.num_qubits();
    if q >= n {
        return Err(Error::IndexOutOfRange { index: q, len: n });
    }
    let mut generators: Vec<PauliOp> = code.generators().iter().map(|g| g.extend(n + 1)).collect();
    generators.push(PauliOp::x_on(n + 1, [q, n]));
    generators.push(PauliOp::z_on(n + 1, [n]));
    SubsystemCode::derive(n + 1, generators, None)
}

/// Which coupling a chain replaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// Row gap: `XX` links, one-qubit `Z` on each ancilla.
    Row,
    /// Column gap: `ZZ` links, one-qubit `X` on each ancilla.
    Column,
}

/// One long-range generator and the ancillas that replaced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncillaChain {
    pub kind: ChainKind,
    pub endpoints: (usize, usize),
    pub ancillas: Vec<usize>,
}

/// A code whose gauge generators are all nearest-neighbour or one-qubit.
#[derive(Clone, Debug)]
pub struct LocalCode {
    code: SubsystemCode,
    matrix: BitMatrix,
    chains: Vec<AncillaChain>,
    original_qubits: usize,
    padding: usize,
}

impl LocalCode {
    pub fn code(&self) -> &SubsystemCode {
        &self.code
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn chains(&self) -> &[AncillaChain] {
        &self.chains
    }

    pub fn layout(&self) -> &Layout {
        self.code.layout().expect("local codes always carry a layout")
    }

    /// Qubits of the original GBS code.
    pub fn original_qubits(&self) -> usize {
        self.original_qubits
    }

    pub fn ancilla_count(&self) -> usize {
        self.chains.iter().map(|c| c.ancillas.len()).sum()
    }

    /// Pure gauge qubits added by [`pad_to`].
    pub fn padding_count(&self) -> usize {
        self.padding
    }

    pub fn is_local(&self) -> bool {
        check_locality(&self.code)
    }
}

/// Splits every long-range generator of `gbs` into nearest-neighbour chains.
///
/// Rows are processed top to bottom and left to right, then columns left to
/// right and top to bottom. Ancillas are numbered after the original qubits
/// in that order.
pub fn localize(gbs: &GbsCode) -> Result<LocalCode> {
    let a = gbs.matrix();
    if a.is_zero() {
        return Err(Error::EmptyMatrix);
    }
    let n0 = gbs.code().num_qubits();
    let mut layout = gbs.layout().clone();
    let mut links: Vec<(Letter, Vec<usize>)> = Vec::new();
    let mut chains = Vec::new();

    for i in 0..a.num_rows() {
        let occupied: Vec<usize> = (0..a.num_cols()).filter(|&j| a.get(i, j)).collect();
        for pair in occupied.windows(2) {
            let (c0, c1) = (pair[0], pair[1]);
            let start = gbs.qubit_at(i, c0).expect("occupied");
            let end = gbs.qubit_at(i, c1).expect("occupied");
            let mut ancillas = Vec::new();
            for j in c0 + 1..c1 {
                ancillas.push(layout.push(Site::new(i, j, 0))?);
            }
            push_chain(&mut links, Letter::X, start, end, &ancillas);
            if !ancillas.is_empty() {
                chains.push(AncillaChain {
                    kind: ChainKind::Row,
                    endpoints: (start, end),
                    ancillas,
                });
            }
        }
    }
    for j in 0..a.num_cols() {
        let occupied: Vec<usize> = (0..a.num_rows()).filter(|&i| a.get(i, j)).collect();
        for pair in occupied.windows(2) {
            let (r0, r1) = (pair[0], pair[1]);
            let start = gbs.qubit_at(r0, j).expect("occupied");
            let end = gbs.qubit_at(r1, j).expect("occupied");
            let mut ancillas = Vec::new();
            for i in r0 + 1..r1 {
                ancillas.push(layout.push(Site::new(i, j, 1))?);
            }
            push_chain(&mut links, Letter::Z, start, end, &ancillas);
            if !ancillas.is_empty() {
                chains.push(AncillaChain {
                    kind: ChainKind::Column,
                    endpoints: (start, end),
                    ancillas,
                });
            }
        }
    }

    let n = layout.num_qubits();
    let generators = links
        .into_iter()
        .map(|(letter, qubits)| {
            let mut p = PauliOp::identity(n);
            for q in qubits {
                p.set(q, letter);
            }
            p
        })
        .collect();
    let code = SubsystemCode::derive(n, generators, Some(layout))?;
    Ok(LocalCode {
        code,
        matrix: a.clone(),
        chains,
        original_qubits: n0,
        padding: 0,
    })
}

fn push_chain(links: &mut Vec<(Letter, Vec<usize>)>, link: Letter, start: usize, end: usize, ancillas: &[usize]) {
    let mut path = vec![start];
    path.extend_from_slice(ancillas);
    path.push(end);
    for pair in path.windows(2) {
        links.push((link, pair.to_vec()));
    }
    let single = if link == Letter::X { Letter::Z } else { Letter::X };
    for &q in ancillas {
        links.push((single, vec![q]));
    }
}

/// True iff every generator is one-qubit, an `XX` on horizontally adjacent
/// cells, or a `ZZ` on vertically adjacent cells (layers ignored). Codes
/// without a layout are never local.
pub fn check_locality(code: &SubsystemCode) -> bool {
    let Some(layout) = code.layout() else {
        return false;
    };
    code.generators().iter().all(|g| {
        let support = g.support();
        match support.as_slice() {
            [] | [_] => true,
            [a, b] => {
                let (sa, sb) = (layout.site(*a), layout.site(*b));
                let x_pair = g.letter(*a) == Letter::X && g.letter(*b) == Letter::X;
                let z_pair = g.letter(*a) == Letter::Z && g.letter(*b) == Letter::Z;
                (x_pair && sa.row == sb.row && sa.col.abs_diff(sb.col) <= 1)
                    || (z_pair && sa.col == sb.col && sa.row.abs_diff(sb.row) <= 1)
            }
            _ => false,
        }
    })
}

/// Fills free `(cell, layer)` slots with pure gauge qubits (`X_a` and `Z_a`
/// both in the gauge group) until the code has `target` qubits.
pub fn pad_to(local: &LocalCode, target: usize) -> Result<LocalCode> {
    let n = local.code.num_qubits();
    if target < n {
        return Err(Error::TargetTooSmall { target, current: n });
    }
    let capacity = local.layout().capacity();
    if target > capacity {
        return Err(Error::NoSlots { target, capacity });
    }
    let mut layout = local.layout().clone();
    let slots = layout.free_slots();
    let mut generators: Vec<PauliOp> = local.code.generators().iter().map(|g| g.extend(target)).collect();
    for &site in slots.iter().take(target - n) {
        let q = layout.push(site)?;
        generators.push(PauliOp::x_on(target, [q]));
        generators.push(PauliOp::z_on(target, [q]));
    }
    let code = SubsystemCode::derive(target, generators, Some(layout))?;
    Ok(LocalCode {
        code,
        matrix: local.matrix.clone(),
        chains: local.chains.clone(),
        original_qubits: local.original_qubits,
        padding: local.padding + (target - n),
    })
}

/// Pads to `2 · rows · cols` qubits, the full two-layer grid.
pub fn pad_full(local: &LocalCode) -> Result<LocalCode> {
    pad_to(local, local.layout().capacity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::DEFAULT_CAP;

    fn example() -> BitMatrix {
        BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
    }

    fn code(n: usize, gens: &[&str]) -> SubsystemCode {
        let ops = gens.iter().map(|s| PauliOp::parse(s, n).unwrap()).collect();
        SubsystemCode::derive(n, ops, None).unwrap()
    }

    #[test]
    fn ancilla_extension_examples() {
        let c = code(2, &["Z0 Z1"]);
        let e = extend_with_ancilla(&c, 0).unwrap();
        assert_eq!(e.num_qubits(), 3);
        assert_eq!(e.logical_qubits(), 1);
        assert_eq!(e.distance_full(DEFAULT_CAP).unwrap().value, Some(1));
        assert_eq!(e.gauge().dim(), c.gauge().dim() + 2);
        assert!(extend_with_ancilla(&c, 2).is_err());

        let bs = GbsCode::build(&BitMatrix::ones(2, 2)).unwrap().into_code();
        let e = extend_with_ancilla(&bs, 3).unwrap();
        assert_eq!(e.num_qubits(), 5);
        assert_eq!(e.logical_qubits(), 1);
        assert_eq!(e.distance_full(DEFAULT_CAP).unwrap().value, Some(2));
    }

    #[test]
    fn full_matrix_needs_no_ancillas() {
        let gbs = GbsCode::build(&BitMatrix::ones(3, 3)).unwrap();
        let local = localize(&gbs).unwrap();
        assert_eq!(local.ancilla_count(), 0);
        assert_eq!(local.code().generators(), gbs.code().generators());
        assert!(local.is_local());
    }

    #[test]
    fn single_row_gap() {
        let a = BitMatrix::from_rows_u8(&[&[1, 0, 1]]);
        let gbs = GbsCode::build(&a).unwrap();
        assert!(!check_locality(gbs.code()));
        let local = localize(&gbs).unwrap();
        let rendered: Vec<String> = local.code().generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(rendered, ["X0 X2", "X1 X2", "Z2"]);
        assert_eq!(local.layout().site(2), Site::new(0, 1, 0));
        assert_eq!(local.code().logical_qubits(), 1);
        assert_eq!(local.code().distance_full(DEFAULT_CAP).unwrap().value, Some(1));
        assert!(local.is_local());
    }

    #[test]
    fn example_gap_count() {
        let gbs = GbsCode::build(&example()).unwrap();
        let local = localize(&gbs).unwrap();
        // Row 3 has a gap at (3,2); column 1 has a gap at (2,1).
        assert_eq!(local.ancilla_count(), 2);
        assert_eq!(local.code().num_qubits(), 8);
        assert_eq!(local.chains()[0].kind, ChainKind::Row);
        assert_eq!(local.chains()[1].kind, ChainKind::Column);
        assert_eq!(local.layout().site(7), Site::new(1, 0, 1));
        assert_eq!(local.code().logical_qubits(), 2);
        assert!(local.is_local());
        let padded = pad_full(&local).unwrap();
        assert_eq!(padded.code().num_qubits(), 18);
        assert!(padded.is_local());
    }

    #[test]
    fn mixed_pair_is_not_local() {
        let layout = Layout::new(1, 2, vec![Site::new(0, 0, 0), Site::new(0, 1, 0)]).unwrap();
        let c = SubsystemCode::derive(2, vec![PauliOp::parse("X0 Z1", 2).unwrap()], Some(layout)).unwrap();
        assert!(!check_locality(&c));
        assert!(!check_locality(&code(2, &["X0 X1"])));
    }

    #[test]
    fn padding() {
        let local = localize(&GbsCode::build(&BitMatrix::ones(3, 3)).unwrap()).unwrap();
        let same = pad_to(&local, 9).unwrap();
        assert_eq!(same.code().generators(), local.code().generators());
        let padded = pad_to(&local, 12).unwrap();
        assert_eq!(padded.code().gauge().dim(), local.code().gauge().dim() + 6);
        assert_eq!(padded.code().logical_qubits(), 1);
        assert_eq!(padded.padding_count(), 3);
        let full = pad_to(&local, 18).unwrap();
        assert_eq!(full.code().distance_bounded(3).unwrap().value, Some(3));
        assert_eq!(pad_to(&local, 8).unwrap_err(), Error::TargetTooSmall { target: 8, current: 9 });
        assert_eq!(pad_to(&local, 19).unwrap_err(), Error::NoSlots { target: 19, capacity: 18 });
    }
}
