//! Group restrictions to qubit regions and the logical-operator counters
//! built on them.
//!
//! Groups restricted to a region `M` live on `|M|` qubits: qubit `t` of the
//! result is the `t`-th smallest member of `M`. Use [`Region::embed`] to
//! lift operators back.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::pauli::{GroupBasis, PauliOp};
use crate::subsystem::SubsystemCode;

/// A subset of the qubits `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    n: usize,
    members: Vec<usize>,
}

impl Region {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&q| q >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        Ok(Region {
            n,
            members: set.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Region { n, members: Vec::new() }
    }

    pub fn all(n: usize) -> Self {
        Region {
            n,
            members: (0..n).collect(),
        }
    }

    /// Region whose members are the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Region {
            n,
            members: (0..n).filter(|&q| mask >> q & 1 == 1).collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.members.binary_search(&q).is_ok()
    }

    pub fn complement(&self) -> Region {
        Region {
            n: self.n,
            members: (0..self.n).filter(|&q| !self.contains(q)).collect(),
        }
    }

    /// Lifts an operator on `|M|` local qubits to the full system.
    pub fn embed(&self, p: &PauliOp) -> PauliOp {
        p.embed(self.n, &self.members)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.n,
            });
        }
        Ok(())
    }
}

/// `G_M`: the restriction of every element of `G` to `M`, on `|M|` qubits.
pub fn restrict_group(g: &GroupBasis, m: &Region) -> Result<GroupBasis> {
    m.check(g.num_qubits())?;
    let restricted: Vec<PauliOp> = g.generators().iter().map(|p| p.project(&m.members)).collect();
    GroupBasis::generated_by(m.len(), &restricted)
}

/// `G(M)`: elements of `G` supported inside `M`, on `|M|` qubits.
pub fn supported_subgroup(g: &GroupBasis, m: &Region) -> Result<GroupBasis> {
    m.check(g.num_qubits())?;
    let inside = g.trivial_on(m.complement().members());
    let projected: Vec<PauliOp> = inside.generators().iter().map(|p| p.project(&m.members)).collect();
    GroupBasis::generated_by(m.len(), &projected)
}

/// `l(M)`: independent dressed logical operators supported in `M`,
/// `dim (C(S_M) ∩ P(M)) − dim G(M)`.
pub fn logical_count(code: &SubsystemCode, m: &Region) -> Result<usize> {
    let s_m = restrict_group(code.stabilizer(), m)?;
    let g_inside = supported_subgroup(code.gauge(), m)?;
    let commuting = s_m.centralizer();
    debug_assert!(g_inside.is_subgroup_of(&commuting)?);
    Ok(commuting.dim() - g_inside.dim())
}

/// `l_bare(M)`: independent bare logical operators supported in `M`,
/// `dim (C(G_M) ∩ P(M)) − dim S(M)`.
pub fn bare_logical_count(code: &SubsystemCode, m: &Region) -> Result<usize> {
    let g_m = restrict_group(code.gauge(), m)?;
    let s_inside = supported_subgroup(code.stabilizer(), m)?;
    let commuting = g_m.centralizer();
    debug_assert!(s_inside.is_subgroup_of(&commuting)?);
    Ok(commuting.dim() - s_inside.dim())
}

/// `∂M`: qubits outside `M` within Chebyshev cell distance `r` of some
/// member of `M`.
pub fn boundary(layout: &Layout, m: &Region, r: usize) -> Result<Region> {
    if layout.num_qubits() != m.num_qubits() {
        return Err(Error::MissingLayout);
    }
    let members = m.complement().members.into_iter().filter(|&q| {
        let site = layout.site(q);
        m.members.iter().any(|&p| layout.site(p).cell_distance(&site) <= r)
    });
    Region::new(m.num_qubits(), members)
}

/// Checks `l_bare(M) + l(M̄) = 2k`.
pub fn cleaning_check(code: &SubsystemCode, m: &Region) -> Result<bool> {
    let lhs = bare_logical_count(code, m)? + logical_count(code, &m.complement())?;
    Ok(lhs == 2 * code.logical_qubits())
}

/// The subsystem code with gauge group `G_M`, built from the restricted
/// generators, on `|M|` qubits.
pub fn restricted_code(code: &SubsystemCode, m: &Region) -> Result<SubsystemCode> {
    m.check(code.num_qubits())?;
    let generators: Vec<PauliOp> = code.generators().iter().map(|g| g.project(&m.members)).collect();
    SubsystemCode::derive(m.len(), generators, None)
}

/// Outcome of [`restriction_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    /// Distance of the full code.
    pub distance: usize,
    pub boundary_size: usize,
    /// Logical qubits of the restricted code.
    pub restricted_k: usize,
    /// Distance of the restricted code, when it has logical qubits and the
    /// oracle was feasible.
    pub restricted_distance: Option<usize>,
    /// `Some(true)` if `k′ = 0` or `d′ ≥ d − |∂M|`, `Some(false)` if
    /// violated, and `None` if the inner oracle was infeasible.
    pub holds: Option<bool>,
}

/// Evaluates the dichotomy for the code restricted to `M`: either it has no
/// logical qubits, or its distance is at least `d − |∂M|`.
///
/// `distance` may be supplied; otherwise it is computed with the full
/// oracle. An infeasible inner oracle is reported as inconclusive.
pub fn restriction_check(
    code: &SubsystemCode,
    m: &Region,
    r: usize,
    distance: Option<usize>,
    cap: u64,
) -> Result<RestrictionReport> {
    let layout = code.layout().ok_or(Error::MissingLayout)?;
    let d = match distance {
        Some(d) => d,
        None => code
            .distance_full(cap)?
            .value
            .expect("full oracle always returns a value"),
    };
    let boundary_size = boundary(layout, m, r)?.len();
    let restricted = restricted_code(code, m)?;
    let restricted_k = restricted.logical_qubits();
    if restricted_k == 0 {
        return Ok(RestrictionReport {
            distance: d,
            boundary_size,
            restricted_k,
            restricted_distance: None,
            holds: Some(true),
        });
    }
    let (restricted_distance, holds) = match restricted.distance_full(cap) {
        Ok(res) => {
            let d_prime = res.value.expect("full oracle always returns a value");
            (Some(d_prime), Some(d_prime + boundary_size >= d))
        }
        Err(Error::CapExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(RestrictionReport {
        distance: d,
        boundary_size,
        restricted_k,
        restricted_distance,
        holds,
    })
}

/// A non-identity element of `G` acting trivially on `M`, if one exists.
/// One always exists when `2|M| < dim G`.
pub fn fact1_witness(g: &GroupBasis, m: &Region) -> Result<Option<PauliOp>> {
    m.check(g.num_qubits())?;
    Ok(g.trivial_on(&m.members).generators().first().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbs::GbsCode;
    use crate::gf2::{BitMatrix, DEFAULT_CAP};
    use crate::localize::localize;
    use crate::random::random_generators;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn example() -> SubsystemCode {
        GbsCode::build(&BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]))
            .unwrap()
            .into_code()
    }

    fn bacon_shor(m: usize) -> SubsystemCode {
        GbsCode::build(&BitMatrix::ones(m, m)).unwrap().into_code()
    }

    fn elements(g: &GroupBasis) -> HashSet<PauliOp> {
        let n = g.num_qubits();
        (0u64..(1 << g.dim()))
            .map(|mask| {
                let mut acc = PauliOp::identity(n);
                for (i, gen) in g.generators().iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        acc = acc.mul(gen).unwrap();
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn restriction_examples() {
        let c = bacon_shor(2);
        let g = c.gauge();
        assert_eq!(&restrict_group(g, &Region::all(4)).unwrap(), g);
        assert_eq!(restrict_group(g, &Region::empty(4)).unwrap().dim(), 0);
        let top = Region::new(4, [0, 1]).unwrap();
        let r = restrict_group(g, &top).unwrap();
        assert!(r.contains(&PauliOp::parse("X0 X1", 2).unwrap()).unwrap());
        assert!(r.contains(&PauliOp::parse("Z0", 2).unwrap()).unwrap());
        assert!(r.contains(&PauliOp::parse("Z1", 2).unwrap()).unwrap());
        assert_eq!(r.dim(), 3);
    }

    #[test]
    fn supported_subgroup_examples() {
        let g = example();
        assert_eq!(&supported_subgroup(g.gauge(), &Region::all(6)).unwrap(), g.gauge());
        let xx = GroupBasis::generated_by(2, &[PauliOp::parse("X0 X1", 2).unwrap()]).unwrap();
        assert_eq!(supported_subgroup(&xx, &Region::new(2, [0]).unwrap()).unwrap().dim(), 0);
    }

    #[test]
    fn restriction_matches_definition_on_tiny_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=4);
            let gens = random_generators(n, rng.gen_range(0..=n + 2), &mut rng);
            let g = GroupBasis::generated_by(n, &gens).unwrap();
            let all = elements(&g);
            for mask in 0u64..(1 << n) {
                let m = Region::from_mask(n, mask);
                let restricted = restrict_group(&g, &m).unwrap();
                let expected: HashSet<PauliOp> = all.iter().map(|p| p.project(m.members())).collect();
                assert_eq!(elements(&restricted), expected);
                let supported = supported_subgroup(&g, &m).unwrap();
                let inside: HashSet<PauliOp> = all
                    .iter()
                    .filter(|p| p.support().iter().all(|q| m.contains(*q)))
                    .map(|p| p.project(m.members()))
                    .collect();
                assert_eq!(elements(&supported), inside);
                assert!(supported.is_subgroup_of(&restricted).unwrap());
            }
        }
    }

    #[test]
    fn counter_examples() {
        let c = example();
        assert_eq!(logical_count(&c, &Region::empty(6)).unwrap(), 0);
        assert_eq!(bare_logical_count(&c, &Region::empty(6)).unwrap(), 0);
        assert_eq!(logical_count(&c, &Region::all(6)).unwrap(), 4);
        assert_eq!(bare_logical_count(&c, &Region::all(6)).unwrap(), 4);
        for q in 0..6 {
            assert_eq!(logical_count(&c, &Region::new(6, [q]).unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn cleaning_holds_on_every_subset_of_example() {
        let c = example();
        for mask in 0u64..64 {
            let m = Region::from_mask(6, mask);
            assert!(cleaning_check(&c, &m).unwrap(), "failed for {:?}", m.members());
            assert!(bare_logical_count(&c, &m).unwrap() <= logical_count(&c, &m).unwrap());
        }
    }

    #[test]
    fn boundary_examples() {
        let c = bacon_shor(3);
        let layout = c.layout().unwrap();
        assert!(boundary(layout, &Region::all(9), 1).unwrap().is_empty());
        let centre = Region::new(9, [4]).unwrap();
        assert_eq!(boundary(layout, &centre, 1).unwrap().members(), &[0, 1, 2, 3, 5, 6, 7, 8]);
        assert!(boundary(layout, &centre, 0).unwrap().is_empty());

        let local = localize(&GbsCode::build(&BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap()).unwrap();
        // The column ancilla 7 is alone in cell (1,0).
        let layout = local.layout();
        let n = layout.num_qubits();
        assert!(boundary(layout, &Region::new(n, [7]).unwrap(), 0).unwrap().is_empty());
        assert!(boundary(layout, &Region::new(3, [0]).unwrap(), 0).is_err());
    }

    #[test]
    fn same_cell_r0_boundary() {
        let layout = Layout::new(1, 2, vec![
            crate::layout::Site::new(0, 0, 0),
            crate::layout::Site::new(0, 0, 1),
            crate::layout::Site::new(0, 1, 0),
        ])
        .unwrap();
        let b = boundary(&layout, &Region::new(3, [0]).unwrap(), 0).unwrap();
        assert_eq!(b.members(), &[1]);
    }

    #[test]
    fn restriction_report_examples() {
        let c = bacon_shor(2);
        let full = restriction_check(&c, &Region::all(4), 1, None, DEFAULT_CAP).unwrap();
        assert_eq!(full.boundary_size, 0);
        assert_eq!(full.restricted_distance, Some(full.distance));
        assert_eq!(full.holds, Some(true));

        let column = Region::new(4, [0, 2]).unwrap();
        let report = restriction_check(&c, &column, 1, None, DEFAULT_CAP).unwrap();
        assert_eq!(report.holds, Some(true));
        assert_eq!(report.boundary_size, 2);

        let bare = c.clone().with_layout(None).unwrap();
        assert_eq!(restriction_check(&bare, &column, 1, None, DEFAULT_CAP).unwrap_err(), Error::MissingLayout);
    }

    #[test]
    fn fact1_examples() {
        let full = GroupBasis::full(2);
        assert!(fact1_witness(&full, &Region::empty(2)).unwrap().is_some());
        let x = GroupBasis::generated_by(1, &[PauliOp::parse("X0", 1).unwrap()]).unwrap();
        assert_eq!(fact1_witness(&x, &Region::all(1)).unwrap(), None);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut tested = 0;
        while tested < 50 {
            let n = 4;
            let g = GroupBasis::generated_by(n, &random_generators(n, 5, &mut rng)).unwrap();
            if g.dim() != 5 {
                continue;
            }
            let m = Region::new(n, [rng.gen_range(0..2), rng.gen_range(2..4)]).unwrap();
            let w = fact1_witness(&g, &m).unwrap().expect("2|M| < dim G");
            assert!(!w.is_identity());
            assert!(g.contains(&w).unwrap());
            assert!(w.support().iter().all(|q| !m.contains(*q)));
            tested += 1;
        }
    }
}
