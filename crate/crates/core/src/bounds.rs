//! Parameter bounds for generalized Bacon-Shor codes, column profiles of the
//! row and column generating matrices, and the Hadamard family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gbs::{theoretical_params, TheoreticalParams};
use crate::gf2::{BitMatrix, BitVector, DEFAULT_CAP};

const MAX_HADAMARD_K: usize = 12;
const MAX_PROFILE_K: usize = 20;

/// `A[x−1][y−1] = x·y` over the nonzero `x, y ∈ {0,1}^k`.
pub fn hadamard_matrix(k: usize) -> Result<BitMatrix> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    if k > MAX_HADAMARD_K {
        return Err(Error::TooLarge(format!("k = {k} exceeds {MAX_HADAMARD_K}")));
    }
    let size = (1usize << k) - 1;
    let rows = (1..=size)
        .map(|x| BitVector::from_indices(size, (1..=size).filter(|y| (x & y).count_ones() % 2 == 1).map(|y| y - 1)))
        .collect();
    BitMatrix::from_rows(size, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub d_row: usize,
    pub d_col: usize,
    pub d: usize,
    /// `d² ≤ d_row·d_col ≤ n`.
    pub product_bound: bool,
    /// `2·d_row·d_col·(1 − 2^−k) ≤ n`.
    pub refined_bound: bool,
    /// `k·d ≤ n`.
    pub rate_bound: bool,
    /// `n − d_row·d_col`.
    pub product_slack: i128,
    /// `n·2^k − 2·d_row·d_col·(2^k − 1)`, the refined bound with cleared denominators.
    pub refined_slack: i128,
    /// `n − k·d`.
    pub rate_slack: i128,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.product_bound && self.refined_bound && self.rate_bound
    }

    pub fn from_params(p: &TheoreticalParams) -> Result<Self> {
        if p.k == 0 {
            return Err(Error::NoLogicalQubits);
        }
        if p.k > 100 {
            return Err(Error::TooLarge(format!("rank {} is too large for exact bounds", p.k)));
        }
        let n = p.n as i128;
        let dd = (p.d_row * p.d_col) as i128;
        let pow = 1i128 << p.k;
        let product_slack = n - dd;
        let refined_slack = n * pow - 2 * dd * (pow - 1);
        let rate_slack = n - (p.k * p.d) as i128;
        Ok(BoundReport {
            n: p.n,
            k: p.k,
            d_row: p.d_row,
            d_col: p.d_col,
            d: p.d,
            product_bound: p.d * p.d <= p.d_row * p.d_col && product_slack >= 0,
            refined_bound: refined_slack >= 0,
            rate_bound: rate_slack >= 0,
            product_slack,
            refined_slack,
            rate_slack,
        })
    }
}

pub fn check_bounds(a: &BitMatrix) -> Result<BoundReport> {
    check_bounds_with_cap(a, DEFAULT_CAP)
}

pub fn check_bounds_with_cap(a: &BitMatrix, cap: u64) -> Result<BoundReport> {
    BoundReport::from_params(&theoretical_params(a, cap)?)
}

/// Column multiplicities of the row and column generating matrices.
///
/// Patterns are indexed by bitmask: bit `i` of `x` is the entry from the
/// `i`-th selected row (for `r`) or column (for `c`). Counts are signed so
/// that a tampered profile can be represented and rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub k: usize,
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub num_rows: usize,
    pub num_cols: usize,
    pub r: Vec<i64>,
    pub c: Vec<i64>,
    /// Inverse of `A[rows, cols]`; row `i` of `A` has row-space coordinates
    /// `c_pattern(i) · m`.
    pub m: BitMatrix,
}

fn pattern(bits: impl Iterator<Item = bool>) -> usize {
    bits.enumerate().fold(0, |acc, (i, b)| acc | ((b as usize) << i))
}

fn parity(x: usize) -> bool {
    x.count_ones() % 2 == 1
}

pub fn profile(a: &BitMatrix) -> Result<Profile> {
    if a.is_zero() {
        return Err(Error::EmptyMatrix);
    }
    let row_indices = a.independent_rows();
    let col_indices = a.transpose().independent_rows();
    let k = row_indices.len();
    if k > MAX_PROFILE_K {
        return Err(Error::TooLarge(format!("rank {k} exceeds {MAX_PROFILE_K}")));
    }
    let mut r = vec![0i64; 1 << k];
    for j in 0..a.num_cols() {
        r[pattern(row_indices.iter().map(|&i| a.get(i, j)))] += 1;
    }
    let mut c = vec![0i64; 1 << k];
    for i in 0..a.num_rows() {
        c[pattern(col_indices.iter().map(|&j| a.get(i, j)))] += 1;
    }
    let b = BitMatrix::from_rows(k, row_indices.iter().map(|&i| a.row(i).select(&col_indices)).collect())?;
    let m = b.inverse().expect("independent rows and columns meet in an invertible block");
    Ok(Profile {
        k,
        row_indices,
        col_indices,
        num_rows: a.num_rows(),
        num_cols: a.num_cols(),
        r,
        c,
        m,
    })
}

impl Profile {
    /// `x·M` with `x` and the result as bitmasks.
    pub fn change_of_basis(&self, x: usize) -> usize {
        (0..self.k)
            .filter(|&i| x >> i & 1 == 1)
            .fold(0, |acc, i| acc ^ pattern(self.m.row(i).iter()))
    }

    /// `Σ_{x·y=1} counts[x]`, the weight of `y·G` for the generating matrix
    /// whose column profile is `counts`.
    pub fn codeword_weight(counts: &[i64], y: usize) -> i64 {
        counts.iter().enumerate().filter(|&(x, _)| parity(x & y)).map(|(_, &n)| n).sum()
    }

    /// `Σ_{x,y : (xM)·y = 1} c_x r_y`.
    pub fn total_weight(&self) -> i64 {
        let mut total = 0;
        for (x, &cx) in self.c.iter().enumerate().filter(|&(_, &v)| v != 0) {
            let z = self.change_of_basis(x);
            total += cx * Self::codeword_weight(&self.r, z);
        }
        total
    }
}

/// Whether the profile satisfies non-negativity, the length sums, the
/// distance constraints on both sides and the total weight identity.
pub fn verify_feasibility(p: &Profile, n: usize, d_row: usize, d_col: usize) -> bool {
    let size = 1usize << p.k;
    if p.r.len() != size || p.c.len() != size || p.m.num_rows() != p.k || p.m.num_cols() != p.k {
        return false;
    }
    if p.r.iter().chain(&p.c).any(|&v| v < 0) {
        return false;
    }
    if p.r.iter().sum::<i64>() != p.num_cols as i64 || p.c.iter().sum::<i64>() != p.num_rows as i64 {
        return false;
    }
    let r_nonzero: Vec<(usize, i64)> = p.r.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
    let c_nonzero: Vec<(usize, i64)> = p.c.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
    let weight = |nz: &[(usize, i64)], y: usize| -> i64 { nz.iter().filter(|&&(x, _)| parity(x & y)).map(|&(_, v)| v).sum() };
    for y in 1..size {
        if weight(&r_nonzero, y) < d_row as i64 || weight(&c_nonzero, y) < d_col as i64 {
            return false;
        }
    }
    let total: i64 = c_nonzero.iter().map(|&(x, cx)| cx * weight(&r_nonzero, p.change_of_basis(x))).sum();
    total == n as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn example() -> BitMatrix {
        BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
    }

    fn matrix_from_mask(rows: usize, cols: usize, mask: u64) -> BitMatrix {
        let rows = (0..rows)
            .map(|i| BitVector::from_u64(cols, (mask >> (i * cols)) & ((1 << cols) - 1)))
            .collect();
        BitMatrix::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn hadamard_small() {
        let h = hadamard_matrix(1).unwrap();
        assert_eq!(h, BitMatrix::ones(1, 1));
        let h = hadamard_matrix(2).unwrap();
        assert_eq!(h, BitMatrix::from_rows_u8(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0]]));
        assert!(hadamard_matrix(0).is_err());
        assert!(matches!(hadamard_matrix(13), Err(Error::TooLarge(_))));
    }

    #[test]
    fn hadamard_family_meets_refined_bound() {
        for k in 1..=6 {
            let h = hadamard_matrix(k).unwrap();
            assert_eq!(h, h.transpose());
            assert_eq!(h.rank(), k);
            let half = 1usize << (k - 1);
            assert!(h.rows().iter().all(|r| r.weight() == half));
            let report = check_bounds(&h).unwrap();
            assert_eq!(report.n, ((1 << k) - 1) * half);
            assert_eq!((report.d_row, report.d_col), (half, half));
            assert_eq!(report.refined_slack, 0, "k = {k}");
            assert!(report.all_pass());
        }
    }

    #[test]
    fn bound_examples() {
        let r = check_bounds(&BitMatrix::ones(4, 4)).unwrap();
        assert_eq!((r.product_slack, r.refined_slack), (0, 0));
        assert!(r.all_pass());
        let r = check_bounds(&example()).unwrap();
        assert_eq!((r.n, r.k, r.d), (6, 2, 2));
        assert_eq!(r.rate_slack, 2);
        assert_eq!(r.refined_slack, 0);
        assert_eq!(check_bounds(&BitMatrix::zeros(2, 2)), Err(Error::EmptyMatrix));
    }

    #[test]
    fn profile_examples() {
        let p = profile(&BitMatrix::ones(3, 3)).unwrap();
        assert_eq!(p.k, 1);
        assert_eq!((p.r.clone(), p.c.clone()), (vec![0, 3], vec![0, 3]));
        assert!(verify_feasibility(&p, 9, 3, 3));

        let h = hadamard_matrix(2).unwrap();
        let p = profile(&h).unwrap();
        assert_eq!(p.r, vec![0, 1, 1, 1]);
        assert_eq!(p.c, vec![0, 1, 1, 1]);
        assert_eq!(p.total_weight(), 6);
        assert!(verify_feasibility(&p, 6, 2, 2));
        assert!(!verify_feasibility(&p, 6, 3, 2));
    }

    #[test]
    fn zero_columns_land_in_the_zero_pattern() {
        let a = BitMatrix::from_rows_u8(&[&[1, 0, 1], &[1, 0, 1]]);
        let p = profile(&a).unwrap();
        assert_eq!(p.r, vec![1, 2]);
        assert_eq!(p.c, vec![0, 2]);
        assert!(verify_feasibility(&p, 4, 2, 2));
    }

    #[test]
    fn tampered_profile_is_rejected() {
        let p = profile(&example()).unwrap();
        assert!(verify_feasibility(&p, 6, 2, 2));
        for x in 0..p.r.len() {
            if p.r[x] > 0 {
                let mut t = p.clone();
                t.r[x] -= 1;
                assert!(!verify_feasibility(&t, 6, 2, 2));
            }
        }
        let mut t = p.clone();
        t.c[0] = -1;
        assert!(!verify_feasibility(&t, 6, 2, 2));
    }

    #[test]
    fn feasibility_holds_for_all_small_matrices() {
        for m in 1..=3usize {
            for mask in 1u64..(1 << (m * m)) {
                let a = matrix_from_mask(m, m, mask);
                let t = theoretical_params(&a, DEFAULT_CAP).unwrap();
                let p = profile(&a).unwrap();
                assert!(verify_feasibility(&p, t.n, t.d_row, t.d_col), "{a}");
                assert!(BoundReport::from_params(&t).unwrap().all_pass());
            }
        }
    }

    proptest! {
        #[test]
        fn weight_identity(rows in 1usize..7, cols in 1usize..9, mask in any::<u64>()) {
            let a = matrix_from_mask(rows, cols, mask);
            prop_assume!(!a.is_zero());
            let p = profile(&a).unwrap();
            let g_row: Vec<&BitVector> = p.row_indices.iter().map(|&i| a.row(i)).collect();
            for y in 1..(1usize << p.k) {
                let mut word = BitVector::zeros(cols);
                for (i, g) in g_row.iter().enumerate() {
                    if y >> i & 1 == 1 {
                        word.xor_assign(g);
                    }
                }
                prop_assert_eq!(word.weight() as i64, Profile::codeword_weight(&p.r, y));
            }
            prop_assert_eq!(p.total_weight(), a.weight() as i64);
        }

        #[test]
        fn feasibility_and_bounds_on_random_matrices(rows in 1usize..7, cols in 1usize..7, mask in any::<u64>()) {
            let a = matrix_from_mask(rows, cols, mask);
            prop_assume!(!a.is_zero());
            let t = theoretical_params(&a, DEFAULT_CAP).unwrap();
            prop_assert!(verify_feasibility(&profile(&a).unwrap(), t.n, t.d_row, t.d_col));
            prop_assert!(BoundReport::from_params(&t).unwrap().all_pass());
        }
    }
}
