//! Subsystem codes defined by a gauge group, and brute-force distance
//! oracles.

use crate::error::{Error, Result};
use crate::gf2::DEFAULT_CAP;
use crate::layout::Layout;
use crate::pauli::{self, GroupBasis, Letter, PauliOp};

/// A subsystem code: gauge group `G`, stabilizer `S = G ∩ C(G)`, and the
/// derived counts `k` (logical qubits) and `g` (gauge qubits).
#[derive(Clone, Debug)]
pub struct SubsystemCode {
    n: usize,
    generators: Vec<PauliOp>,
    gauge: GroupBasis,
    stabilizer: GroupBasis,
    k: usize,
    g: usize,
    layout: Option<Layout>,
}

impl SubsystemCode {
    /// Derives the stabilizer group and qubit counts from gauge generators
    /// on `n` qubits. The generator list is kept verbatim for locality
    /// checks and export.
    pub fn derive(n: usize, generators: Vec<PauliOp>, layout: Option<Layout>) -> Result<Self> {
        if let Some(l) = &layout {
            if l.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: l.num_qubits(),
                });
            }
        }
        let gauge = GroupBasis::generated_by(n, &generators)?;
        let centralizer = gauge.centralizer();
        let stabilizer = gauge.intersect(&centralizer)?;
        let dim_s = stabilizer.dim();
        let extra_gauge = gauge.dim() - dim_s;
        let extra_logical = centralizer.dim() - dim_s;
        assert!(
            extra_gauge % 2 == 0 && extra_logical % 2 == 0,
            "symplectic bookkeeping is inconsistent"
        );
        let (g, k) = (extra_gauge / 2, extra_logical / 2);
        assert_eq!(n, dim_s + k + g, "n = dim S + k + g must hold");
        Ok(SubsystemCode {
            n,
            generators,
            gauge,
            stabilizer,
            k,
            g,
            layout,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn gauge(&self) -> &GroupBasis {
        &self.gauge
    }

    pub fn stabilizer(&self) -> &GroupBasis {
        &self.stabilizer
    }

    pub fn logical_qubits(&self) -> usize {
        self.k
    }

    pub fn gauge_qubits(&self) -> usize {
        self.g
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_ref()
    }

    /// `C(S)`: every operator commuting with all stabilizers.
    pub fn logical_group(&self) -> GroupBasis {
        self.stabilizer.centralizer()
    }

    /// Drops or replaces the layout.
    pub fn with_layout(mut self, layout: Option<Layout>) -> Result<Self> {
        if let Some(l) = &layout {
            if l.num_qubits() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: l.num_qubits(),
                });
            }
        }
        self.layout = layout;
        Ok(self)
    }

    /// Largest Chebyshev diameter of any gauge generator's support, or
    /// `None` without a layout.
    pub fn interaction_range(&self) -> Option<usize> {
        let layout = self.layout.as_ref()?;
        Some(
            self.generators
                .iter()
                .map(|g| layout.diameter(&g.support()))
                .max()
                .unwrap_or(0),
        )
    }

    /// True iff `p` commutes with every stabilizer and is not a gauge
    /// operator.
    pub fn is_dressed_logical(&self, p: &PauliOp) -> Result<bool> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        let commutes = self.stabilizer.generators().iter().all(|s| !s.anticommutes(p));
        Ok(commutes && !self.gauge.contains(p)?)
    }

    /// Exact distance by walking all of `C(S)`.
    pub fn distance_full(&self, cap: u64) -> Result<DistanceResult> {
        self.distance_full_with(cap, 1)
    }

    /// [`SubsystemCode::distance_full`] split across `threads` workers.
    ///
    /// The Gray-code sequence over the basis of `C(S)` is cut into
    /// contiguous blocks; the merged witness is the first minimum in
    /// sequence order, so the result does not depend on `threads`.
    pub fn distance_full_with(&self, cap: u64, threads: usize) -> Result<DistanceResult> {
        if self.k == 0 {
            return Err(Error::NoLogicalQubits);
        }
        let logical = self.logical_group();
        let dim = logical.dim();
        if dim >= 64 || (1u64 << dim) > cap {
            return Err(Error::CapExceeded { log2_size: dim, cap });
        }
        let basis: Vec<Vec<u64>> = logical.generators().iter().map(pauli::pack).collect();
        let gauge = self.gauge.packed();
        let total = 1u64 << dim;
        let threads = threads.max(1) as u64;
        let block = total.div_ceil(threads).max(1);
        let ranges: Vec<(u64, u64)> = (0..threads)
            .map(|t| (t * block, ((t + 1) * block).min(total)))
            .filter(|(s, e)| s < e)
            .collect();
        let scan = |&(start, end): &(u64, u64)| gray_block(&basis, &gauge, start.max(1), end);
        let partials: Vec<Option<(usize, Vec<u64>)>> = if ranges.len() <= 1 {
            ranges.iter().map(scan).collect()
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = ranges.iter().map(|r| s.spawn(move || scan(r))).collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            })
        };
        let mut best: Option<(usize, Vec<u64>)> = None;
        for part in partials.into_iter().flatten() {
            if best.as_ref().is_none_or(|(w, _)| part.0 < *w) {
                best = Some(part);
            }
        }
        let (d, words) = best.expect("k >= 1 guarantees a dressed logical operator");
        let witness = pauli::unpack(self.n, &words);
        Ok(DistanceResult {
            mode: DistanceMode::Full,
            value: Some(d),
            certified_lower_bound: d - 1,
            witness: Some(witness),
        })
    }

    /// Weight-limited search over every operator of weight `1..=w_max`.
    ///
    /// Supports are visited in colexicographic order and letters in
    /// `X < Z < Y` order (lowest qubit most significant). The first dressed
    /// logical found gives the exact distance.
    pub fn distance_bounded(&self, w_max: usize) -> Result<DistanceResult> {
        if self.k == 0 {
            return Err(Error::NoLogicalQubits);
        }
        let stabilizers: Vec<Vec<u64>> = self.stabilizer.generators().iter().map(pauli::pack).collect();
        let gauge = self.gauge.packed();
        let mut scratch = Vec::new();
        const LETTERS: [Letter; 3] = [Letter::X, Letter::Z, Letter::Y];
        for w in 1..=w_max.min(self.n) {
            let mut support: Vec<usize> = (0..w).collect();
            loop {
                let mut letters = vec![0usize; w];
                loop {
                    let mut op = PauliOp::identity(self.n);
                    for (&q, &l) in support.iter().zip(&letters) {
                        op.set(q, LETTERS[l]);
                    }
                    let words = pauli::pack(&op);
                    let commutes = stabilizers.iter().all(|s| !pauli::packed_anticommutes(s, &words));
                    if commutes && !gauge.contains_packed(&words, &mut scratch) {
                        return Ok(DistanceResult {
                            mode: DistanceMode::Bounded { w_max },
                            value: Some(w),
                            certified_lower_bound: w - 1,
                            witness: Some(op),
                        });
                    }
                    if !next_letters(&mut letters) {
                        break;
                    }
                }
                if !next_colex(&mut support, self.n) {
                    break;
                }
            }
        }
        Ok(DistanceResult {
            mode: DistanceMode::Bounded { w_max },
            value: None,
            certified_lower_bound: w_max,
            witness: None,
        })
    }
}

/// Scans Gray-code indices `start..end` over `basis`, returning the first
/// minimum-weight element outside the gauge group.
fn gray_block(
    basis: &[Vec<u64>],
    gauge: &pauli::PackedGroup,
    start: u64,
    end: u64,
) -> Option<(usize, Vec<u64>)> {
    if start >= end {
        return None;
    }
    let stride = basis.first().map_or(0, Vec::len);
    let mut current = vec![0u64; stride];
    let code = start ^ (start >> 1);
    for (i, g) in basis.iter().enumerate() {
        if code >> i & 1 == 1 {
            xor(&mut current, g);
        }
    }
    let mut scratch = Vec::with_capacity(stride);
    let mut best: Option<(usize, Vec<u64>)> = None;
    let mut index = start;
    loop {
        let w = pauli::packed_weight(&current);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) && !gauge.contains_packed(&current, &mut scratch) {
            best = Some((w, current.clone()));
            if w <= 1 {
                break;
            }
        }
        index += 1;
        if index >= end {
            break;
        }
        xor(&mut current, &basis[index.trailing_zeros() as usize]);
    }
    best
}

#[inline]
fn xor(acc: &mut [u64], g: &[u64]) {
    for (a, b) in acc.iter_mut().zip(g) {
        *a ^= *b;
    }
}

/// Advances a base-3 counter; position 0 is most significant.
fn next_letters(letters: &mut [usize]) -> bool {
    for l in letters.iter_mut().rev() {
        if *l < 2 {
            *l += 1;
            return true;
        }
        *l = 0;
    }
    false
}

/// Next `k`-subset of `0..n` in colexicographic order.
pub(crate) fn next_colex(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, v) in c.iter_mut().enumerate().take(i) {
                *v = j;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Full,
    Bounded { w_max: usize },
}

/// Outcome of a distance computation.
///
/// `certified_lower_bound` is a weight `w` such that no dressed logical
/// operator has weight `≤ w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub mode: DistanceMode,
    pub value: Option<usize>,
    pub certified_lower_bound: usize,
    pub witness: Option<PauliOp>,
}

/// Default enumeration cap for [`SubsystemCode::distance_full`].
pub const DEFAULT_DISTANCE_CAP: u64 = DEFAULT_CAP;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code(n: usize, gens: &[&str]) -> SubsystemCode {
        let ops = gens.iter().map(|s| PauliOp::parse(s, n).unwrap()).collect();
        SubsystemCode::derive(n, ops, None).unwrap()
    }

    fn example() -> SubsystemCode {
        code(6, &["X0 X1", "X2 X3", "X4 X5", "Z0 Z4", "Z1 Z2", "Z3 Z5"])
    }

    fn bacon_shor_2x2() -> SubsystemCode {
        code(4, &["X0 X1", "X2 X3", "Z0 Z2", "Z1 Z3"])
    }

    #[test]
    fn derive_examples() {
        let c = code(2, &["Z0 Z1"]);
        assert_eq!((c.logical_qubits(), c.gauge_qubits(), c.stabilizer().dim()), (1, 0, 1));
        let c = example();
        assert_eq!((c.logical_qubits(), c.gauge_qubits(), c.stabilizer().dim()), (2, 2, 2));
        let c = code(1, &["X0", "Z0"]);
        assert_eq!((c.logical_qubits(), c.gauge_qubits(), c.stabilizer().dim()), (0, 1, 0));
    }

    #[test]
    fn dressed_logical_examples() {
        let c = code(2, &["Z0 Z1"]);
        assert!(!c.is_dressed_logical(&PauliOp::parse("Z0 Z1", 2).unwrap()).unwrap());
        assert!(c.is_dressed_logical(&PauliOp::parse("Z0", 2).unwrap()).unwrap());
        assert!(!c.is_dressed_logical(&PauliOp::identity(2)).unwrap());
        assert!(c.is_dressed_logical(&PauliOp::identity(3)).is_err());
    }

    #[test]
    fn full_distance_examples() {
        let r = bacon_shor_2x2().distance_full(DEFAULT_CAP).unwrap();
        assert_eq!(r.value, Some(2));
        assert_eq!(example().distance_full(DEFAULT_CAP).unwrap().value, Some(2));
        let c = code(2, &["Z0 Z1"]);
        let r = c.distance_full(DEFAULT_CAP).unwrap();
        assert_eq!(r.value, Some(1));
        assert!(c.is_dressed_logical(r.witness.as_ref().unwrap()).unwrap());
        assert_eq!(code(1, &["X0", "Z0"]).distance_full(DEFAULT_CAP), Err(Error::NoLogicalQubits));
        assert!(matches!(example().distance_full(16), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn bounded_distance_examples() {
        let c = code(2, &["Z0 Z1"]);
        let r = c.distance_bounded(1).unwrap();
        assert_eq!(r.value, Some(1));
        assert_eq!(r.witness.unwrap().to_string(), "Z0");
        let r = example().distance_bounded(0).unwrap();
        assert_eq!((r.value, r.certified_lower_bound, r.witness), (None, 0, None));
        let r = example().distance_bounded(1).unwrap();
        assert_eq!((r.value, r.certified_lower_bound), (None, 1));
    }

    #[test]
    fn threads_do_not_change_result() {
        let c = example();
        let serial = c.distance_full(DEFAULT_CAP).unwrap();
        for t in [2, 3, 7] {
            assert_eq!(c.distance_full_with(DEFAULT_CAP, t).unwrap(), serial);
        }
    }

    #[test]
    fn colex_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_colex(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
    }

    fn op_strategy(n: usize) -> impl Strategy<Value = PauliOp> {
        (prop::collection::vec(0u8..4, n)).prop_map(move |ls| {
            let mut p = PauliOp::identity(n);
            for (q, l) in ls.into_iter().enumerate() {
                p.set(q, [Letter::I, Letter::X, Letter::Y, Letter::Z][l as usize]);
            }
            p
        })
    }

    fn random_code() -> impl Strategy<Value = SubsystemCode> {
        (1usize..=6)
            .prop_flat_map(|n| (Just(n), prop::collection::vec(op_strategy(n), 0..=2 * n)))
            .prop_map(|(n, ops)| SubsystemCode::derive(n, ops, None).unwrap())
    }

    /// Third oracle for stabilizer codes: walk every operator on n qubits.
    fn direct_stabilizer_distance(c: &SubsystemCode) -> usize {
        let n = c.num_qubits();
        let mut best = usize::MAX;
        for code in 1u64..(1 << (2 * n)) {
            let mut p = PauliOp::identity(n);
            for q in 0..n {
                let l = match (code >> (2 * q)) & 3 {
                    0 => Letter::I,
                    1 => Letter::X,
                    2 => Letter::Z,
                    _ => Letter::Y,
                };
                p.set(q, l);
            }
            let commutes = c.stabilizer().generators().iter().all(|s| !s.anticommutes(&p));
            if commutes && !c.stabilizer().contains(&p).unwrap() {
                best = best.min(p.weight());
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn bookkeeping_identity(c in random_code()) {
            prop_assert_eq!(c.num_qubits(), c.stabilizer().dim() + c.logical_qubits() + c.gauge_qubits());
            prop_assert!(c.stabilizer().is_subgroup_of(c.gauge()).unwrap());
        }

        #[test]
        fn oracles_agree(c in random_code()) {
            prop_assume!(c.logical_qubits() >= 1);
            let full = c.distance_full(DEFAULT_CAP).unwrap();
            let bounded = c.distance_bounded(c.num_qubits()).unwrap();
            prop_assert_eq!(full.value, bounded.value);
            prop_assert!(c.is_dressed_logical(full.witness.as_ref().unwrap()).unwrap());
            prop_assert!(c.is_dressed_logical(bounded.witness.as_ref().unwrap()).unwrap());
            prop_assert_eq!(full.witness.unwrap().weight(), full.value.unwrap());
            if c.gauge_qubits() == 0 && c.num_qubits() <= 5 {
                prop_assert_eq!(full.value.unwrap(), direct_stabilizer_distance(&c));
            }
        }
    }
}
