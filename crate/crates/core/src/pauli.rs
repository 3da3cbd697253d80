//! Phaseless Pauli operators and the subgroups they generate.
//!
//! An `n`-qubit Pauli operator is stored as a pair of bit vectors `(x, z)`.
//! Overall phases are never tracked; products correspond to XOR of the pairs.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOp {
    x: BitVector,
    z: BitVector,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn new(x: BitVector, z: BitVector) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliOp { x, z })
    }

    /// `X` on every listed qubit.
    pub fn x_on(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        PauliOp {
            x: BitVector::from_indices(n, qubits),
            z: BitVector::zeros(n),
        }
    }

    /// `Z` on every listed qubit.
    pub fn z_on(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        PauliOp {
            x: BitVector::zeros(n),
            z: BitVector::from_indices(n, qubits),
        }
    }

    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = PauliOp::identity(n);
        p.set(qubit, letter);
        p
    }

    /// Inverse of [`PauliOp::symplectic`]: splits a `2n`-bit vector into
    /// its X half and Z half.
    pub fn from_symplectic(v: &BitVector) -> Self {
        assert!(v.len().is_multiple_of(2));
        let n = v.len() / 2;
        PauliOp {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        }
    }

    /// The `2n`-bit vector `x ‖ z`.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVector {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVector {
        &self.z
    }

    pub fn letter(&self, q: usize) -> Letter {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn set(&mut self, q: usize, letter: Letter) {
        let (x, z) = match letter {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        };
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// True when the operator has no Z component.
    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    /// True when the operator has no X component.
    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    /// Product of two operators, up to phase.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp> {
        check_same(self.num_qubits(), other.num_qubits())?;
        Ok(PauliOp {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    pub(crate) fn mul_assign(&mut self, other: &PauliOp) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Returns `true` when the operators anticommute.
    pub fn symplectic_product(&self, other: &PauliOp) -> Result<bool> {
        check_same(self.num_qubits(), other.num_qubits())?;
        Ok(self.anticommutes(other))
    }

    #[inline]
    pub(crate) fn anticommutes(&self, other: &PauliOp) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    /// Keeps only the listed qubits, renumbered `0..positions.len()`.
    pub fn project(&self, positions: &[usize]) -> PauliOp {
        PauliOp {
            x: self.x.select(positions),
            z: self.z.select(positions),
        }
    }

    /// Places this operator on `n` qubits, sending local qubit `i` to
    /// `positions[i]`.
    pub fn embed(&self, n: usize, positions: &[usize]) -> PauliOp {
        assert_eq!(positions.len(), self.num_qubits());
        let mut out = PauliOp::identity(n);
        for (i, &p) in positions.iter().enumerate() {
            out.set(p, self.letter(i));
        }
        out
    }

    /// Same operator acting on `n ≥ self.num_qubits()` qubits, trivially on
    /// the new ones.
    pub fn extend(&self, n: usize) -> PauliOp {
        assert!(n >= self.num_qubits());
        let positions: Vec<usize> = (0..self.num_qubits()).collect();
        self.embed(n, &positions)
    }

    /// Parses `"X0 Z3 Y5"` (or `"I"`) as an operator on `n` qubits.
    pub fn parse(s: &str, n: usize) -> Result<PauliOp> {
        let mut p = PauliOp::identity(n);
        let s = s.trim();
        if s == "I" {
            return Ok(p);
        }
        if s.is_empty() {
            return Err(Error::parse(0, "empty Pauli string"));
        }
        for token in s.split_whitespace() {
            let mut chars = token.chars();
            let letter = match chars.next() {
                Some('X') => Letter::X,
                Some('Y') => Letter::Y,
                Some('Z') => Letter::Z,
                _ => return Err(Error::parse(0, format!("bad Pauli factor {token:?}"))),
            };
            let q: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad qubit index in {token:?}")))?;
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, len: n });
            }
            if p.letter(q) != Letter::I {
                return Err(Error::parse(0, format!("qubit {q} appears twice")));
            }
            p.set(q, letter);
        }
        Ok(p)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = self.support();
        if support.is_empty() {
            return f.write_str("I");
        }
        for (i, q) in support.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let c = match self.letter(q) {
                Letter::X => 'X',
                Letter::Y => 'Y',
                Letter::Z => 'Z',
                Letter::I => unreachable!(),
            };
            write!(f, "{c}{q}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp[{}]({self})", self.num_qubits())
    }
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// An independent generating set of a Pauli subgroup in canonical form.
///
/// The generators are the rows of the reduced row echelon form of the
/// `2n`-bit symplectic vectors, X columns before Z columns. Two bases
/// compare equal exactly when they generate the same subgroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupBasis {
    n: usize,
    generators: Vec<PauliOp>,
    pivots: Vec<usize>,
}

impl GroupBasis {
    pub fn trivial(n: usize) -> Self {
        GroupBasis {
            n,
            generators: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The full Pauli group on `n` qubits.
    pub fn full(n: usize) -> Self {
        let gens: Vec<PauliOp> = (0..n)
            .map(|q| PauliOp::single(n, q, Letter::X))
            .chain((0..n).map(|q| PauliOp::single(n, q, Letter::Z)))
            .collect();
        Self::from_symplectic_rows(n, gens.iter().map(PauliOp::symplectic).collect())
    }

    /// Canonical basis of the subgroup generated by `generators` on `n`
    /// qubits.
    pub fn generated_by(n: usize, generators: &[PauliOp]) -> Result<Self> {
        for g in generators {
            check_same(n, g.num_qubits())?;
        }
        Ok(Self::from_symplectic_rows(
            n,
            generators.iter().map(PauliOp::symplectic).collect(),
        ))
    }

    fn from_symplectic_rows(n: usize, rows: Vec<BitVector>) -> Self {
        let matrix = BitMatrix::from_rows(2 * n, rows).expect("rows have width 2n");
        let (reduced, pivots) = matrix.rref();
        GroupBasis {
            n,
            generators: reduced.rows().iter().map(PauliOp::from_symplectic).collect(),
            pivots,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    fn symplectic_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(2 * self.n, self.generators.iter().map(PauliOp::symplectic).collect())
            .expect("width 2n")
    }

    /// Reduces `p` against the canonical basis; the remainder is the
    /// identity iff `p` is in the group.
    fn reduce(&self, p: &PauliOp) -> PauliOp {
        let mut r = p.clone();
        for (g, &piv) in self.generators.iter().zip(&self.pivots) {
            let hit = if piv < self.n { r.x.get(piv) } else { r.z.get(piv - self.n) };
            if hit {
                r.mul_assign(g);
            }
        }
        r
    }

    /// Membership test, ignoring phases.
    pub fn contains(&self, p: &PauliOp) -> Result<bool> {
        check_same(self.n, p.num_qubits())?;
        Ok(self.reduce(p).is_identity())
    }

    /// All Pauli operators commuting with every element of the group.
    pub fn centralizer(&self) -> GroupBasis {
        // v commutes with g iff v·(g.z ‖ g.x) = 0, so C(G) is the kernel of
        // the matrix of swapped generators.
        let swapped: Vec<BitVector> = self
            .generators
            .iter()
            .map(|g| g.z.concat(&g.x))
            .collect();
        let m = BitMatrix::from_rows(2 * self.n, swapped).expect("width 2n");
        Self::from_symplectic_rows(self.n, m.kernel())
    }

    /// Intersection of two subgroups.
    pub fn intersect(&self, other: &GroupBasis) -> Result<GroupBasis> {
        check_same(self.n, other.n)?;
        // Combinations (a, b) with a·G + b·H = 0 are the left kernel of the
        // stacked basis; the a-parts generate G ∩ H.
        let a = self.dim();
        let mut stacked = self.symplectic_matrix().into_rows();
        stacked.extend(other.symplectic_matrix().into_rows());
        let m = BitMatrix::from_rows(2 * self.n, stacked).expect("width 2n");
        let rows: Vec<BitVector> = m
            .transpose()
            .kernel()
            .into_iter()
            .map(|combo| {
                let mut acc = BitVector::zeros(2 * self.n);
                for i in combo.iter_ones().filter(|&i| i < a) {
                    acc.xor_assign(&self.generators[i].symplectic());
                }
                acc
            })
            .collect();
        Ok(Self::from_symplectic_rows(self.n, rows))
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &GroupBasis) -> Result<bool> {
        check_same(self.n, other.n)?;
        Ok(self.generators.iter().all(|g| other.reduce(g).is_identity()))
    }

    /// Left kernel of the generators restricted to `positions`: every
    /// element of the group that acts trivially on those qubits.
    pub(crate) fn trivial_on(&self, positions: &[usize]) -> GroupBasis {
        let projected: Vec<BitVector> = self
            .generators
            .iter()
            .map(|g| g.project(positions).symplectic())
            .collect();
        let m = BitMatrix::from_rows(2 * positions.len(), projected).expect("width 2|M|");
        let rows: Vec<BitVector> = m
            .transpose()
            .kernel()
            .into_iter()
            .map(|combo| {
                let mut acc = PauliOp::identity(self.n);
                for i in combo.iter_ones() {
                    acc.mul_assign(&self.generators[i]);
                }
                acc.symplectic()
            })
            .collect();
        Self::from_symplectic_rows(self.n, rows)
    }

    /// Flattened `[x words | z words]` rows plus pivot masks, for hot loops.
    pub(crate) fn packed(&self) -> PackedGroup {
        PackedGroup::new(self)
    }
}

impl fmt::Debug for GroupBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupBasis")
            .field("n", &self.n)
            .field("generators", &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

/// Word-level view of Pauli operators: `nw` X words followed by `nw` Z words.
pub(crate) fn pack(p: &PauliOp) -> Vec<u64> {
    let mut out = p.x.words().to_vec();
    out.extend_from_slice(p.z.words());
    out
}

pub(crate) fn unpack(n: usize, words: &[u64]) -> PauliOp {
    let nw = words.len() / 2;
    PauliOp {
        x: BitVector::from_words(n, words[..nw].to_vec()),
        z: BitVector::from_words(n, words[nw..].to_vec()),
    }
}

#[inline]
pub(crate) fn packed_weight(words: &[u64]) -> usize {
    let nw = words.len() / 2;
    (0..nw).map(|i| (words[i] | words[nw + i]).count_ones() as usize).sum()
}

#[inline]
pub(crate) fn packed_anticommutes(a: &[u64], b: &[u64]) -> bool {
    let nw = a.len() / 2;
    let mut acc = 0u32;
    for i in 0..nw {
        acc ^= (a[i] & b[nw + i]).count_ones() ^ (a[nw + i] & b[i]).count_ones();
    }
    acc & 1 == 1
}

pub(crate) struct PackedGroup {
    stride: usize,
    rows: Vec<u64>,
    pivots: Vec<(usize, u64)>,
}

impl PackedGroup {
    fn new(group: &GroupBasis) -> Self {
        let n = group.n;
        let nw = n.div_ceil(64);
        let mut rows = Vec::with_capacity(2 * nw * group.dim());
        for g in &group.generators {
            rows.extend(pack(g));
        }
        let pivots = group
            .pivots
            .iter()
            .map(|&p| {
                let (half, bit) = if p < n { (0, p) } else { (nw, p - n) };
                (half + bit / 64, 1u64 << (bit % 64))
            })
            .collect();
        PackedGroup {
            stride: 2 * nw,
            rows,
            pivots,
        }
    }

    pub(crate) fn contains_packed(&self, words: &[u64], scratch: &mut Vec<u64>) -> bool {
        scratch.clear();
        scratch.extend_from_slice(words);
        for (r, &(w, mask)) in self.pivots.iter().enumerate() {
            if scratch[w] & mask != 0 {
                let row = &self.rows[r * self.stride..(r + 1) * self.stride];
                for (a, b) in scratch.iter_mut().zip(row) {
                    *a ^= *b;
                }
            }
        }
        scratch.iter().all(|&w| w == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> PauliOp {
        PauliOp::parse(s, n).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> GroupBasis {
        let ops: Vec<PauliOp> = gens.iter().map(|s| p(s, n)).collect();
        GroupBasis::generated_by(n, &ops).unwrap()
    }

    #[test]
    fn symplectic_product_examples() {
        assert!(p("X0", 2).symplectic_product(&p("Z0", 2)).unwrap());
        assert!(!p("X0 X1", 2).symplectic_product(&p("Z0 Z1", 2)).unwrap());
        assert!(!p("Y0", 1).symplectic_product(&p("Y0", 1)).unwrap());
        assert!(matches!(
            p("X0", 1).symplectic_product(&p("X0", 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rendering_roundtrip() {
        let op = p("X0 Z2 Y4", 5);
        assert_eq!(op.to_string(), "X0 Z2 Y4");
        assert_eq!(op.weight(), 3);
        assert_eq!(PauliOp::identity(3).to_string(), "I");
        assert_eq!(p("I", 3), PauliOp::identity(3));
        assert!(PauliOp::parse("X3", 3).is_err());
        assert!(PauliOp::parse("Q1", 3).is_err());
        assert!(PauliOp::parse("X1 Z1", 3).is_err());
    }

    #[test]
    fn group_from_examples() {
        // Gauge generators of [[110],[011],[101]] with row-major qubit order.
        let displayed = [
            "X0 X1", "X2 X3", "X4 X5", "Z0 Z4", "Z1 Z2", "Z3 Z5",
        ];
        assert_eq!(group(6, &displayed).dim(), 6);
        let mut row_triple = vec!["X0 X1", "X1 X2"];
        assert_eq!(group(3, &row_triple).dim(), 2);
        row_triple.push("X0 X2");
        assert_eq!(group(3, &row_triple).dim(), 2);
        assert_eq!(group(4, &[]).dim(), 0);
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(GroupBasis::trivial(3).centralizer(), GroupBasis::full(3));
        assert_eq!(GroupBasis::full(3).centralizer(), GroupBasis::trivial(3));
        assert_eq!(group(1, &["X0", "Z0"]).centralizer().dim(), 0);
    }

    #[test]
    fn intersect_examples() {
        let g = group(6, &["X0 X1", "X2 X3", "X4 X5", "Z0 Z4", "Z1 Z2", "Z3 Z5"]);
        assert_eq!(g.intersect(&g).unwrap(), g);
        assert_eq!(g.intersect(&GroupBasis::trivial(6)).unwrap(), GroupBasis::trivial(6));
        let s = g.intersect(&g.centralizer()).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn contains_examples() {
        let g = group(2, &["X0 X1"]);
        assert!(g.contains(&PauliOp::identity(2)).unwrap());
        assert!(!g.contains(&p("X0", 2)).unwrap());
        assert!(g.contains(&p("X0 X1", 2)).unwrap());
        assert!(g.contains(&p("X0", 3)).is_err());
    }

    #[test]
    fn packed_membership_agrees() {
        let g = group(3, &["X0 Z1", "Y2"]);
        let packed = g.packed();
        let mut scratch = Vec::new();
        for probe in ["X0 Z1 Y2", "X0", "I", "Y2"] {
            let op = p(probe, 3);
            assert_eq!(packed.contains_packed(&pack(&op), &mut scratch), g.contains(&op).unwrap());
        }
    }

    fn arb_ops(n: usize, max: usize) -> impl Strategy<Value = Vec<PauliOp>> {
        prop::collection::vec(
            (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n)),
            0..=max,
        )
        .prop_map(|v| {
            v.into_iter()
                .map(|(x, z)| PauliOp::new(BitVector::from_bools(&x), BitVector::from_bools(&z)).unwrap())
                .collect()
        })
    }

    fn arb_group() -> impl Strategy<Value = (usize, Vec<PauliOp>)> {
        (1usize..=10).prop_flat_map(|n| arb_ops(n, 2 * n + 2).prop_map(move |ops| (n, ops)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn centralizer_dimension((n, ops) in arb_group()) {
            let g = GroupBasis::generated_by(n, &ops).unwrap();
            let c = g.centralizer();
            prop_assert_eq!(c.dim() + g.dim(), 2 * n);
            prop_assert_eq!(c.centralizer(), g.clone());
            for a in c.generators() {
                for b in g.generators() {
                    prop_assert!(!a.anticommutes(b));
                }
            }
        }

        #[test]
        fn intersection_is_contained_in_both((n, ops) in arb_group(), split in 0usize..8) {
            let cut = split.min(ops.len());
            let g = GroupBasis::generated_by(n, &ops[..cut]).unwrap();
            let h = GroupBasis::generated_by(n, &ops[cut..]).unwrap();
            let both = g.intersect(&h).unwrap();
            for e in both.generators() {
                prop_assert!(g.contains(e).unwrap());
                prop_assert!(h.contains(e).unwrap());
            }
            // dim(G ∩ H) = dim G + dim H − dim(G + H)
            let sum = GroupBasis::generated_by(n, &ops).unwrap();
            prop_assert_eq!(both.dim() + sum.dim(), g.dim() + h.dim());
        }

        #[test]
        fn symplectic_form_is_symmetric_and_bilinear(ops in arb_ops(6, 3)) {
            prop_assume!(ops.len() == 3);
            let (a, b, c) = (&ops[0], &ops[1], &ops[2]);
            prop_assert_eq!(a.anticommutes(b), b.anticommutes(a));
            let ab = a.mul(b).unwrap();
            prop_assert_eq!(ab.anticommutes(c), a.anticommutes(c) ^ b.anticommutes(c));
        }

        #[test]
        fn weight_counts_nontrivial_sites(ops in arb_ops(9, 1)) {
            prop_assume!(!ops.is_empty());
            let op = &ops[0];
            let expected = (0..9).filter(|&q| op.letter(q) != Letter::I).count();
            prop_assert_eq!(op.weight(), expected);
            prop_assert_eq!(PauliOp::parse(&op.to_string(), 9).unwrap(), op.clone());
        }
    }
}
