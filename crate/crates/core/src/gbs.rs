//! Generalized Bacon-Shor codes built from a binary matrix.
//!
//! A qubit sits on every cell `(i, j)` with `A[i][j] = 1`. Consecutive
//! occupied cells in a row are coupled by `XX`, consecutive occupied cells in
//! a column by `ZZ`. The code encodes `rank(A)` qubits into `|A|` qubits with
//! distance `min(d_row, d_col)`, where `d_row`/`d_col` are the minimum
//! distances of the classical codes spanned by the rows/columns of `A`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};
use crate::layout::{Layout, Site};
use crate::pauli::PauliOp;
use crate::subsystem::SubsystemCode;

/// A generalized Bacon-Shor code together with the matrix that defines it.
#[derive(Clone, Debug)]
pub struct GbsCode {
    matrix: BitMatrix,
    cell_qubit: Vec<Vec<Option<usize>>>,
    code: SubsystemCode,
}

impl GbsCode {
    /// Builds the gauge group of `matrix`. Qubits are numbered row-major over
    /// occupied cells; all row `XX` generators come first (row by row, left
    /// to right), then the column `ZZ` generators (column by column, top to
    /// bottom).
    pub fn build(matrix: &BitMatrix) -> Result<Self> {
        if matrix.is_zero() {
            return Err(Error::EmptyMatrix);
        }
        let (rows, cols) = (matrix.num_rows(), matrix.num_cols());
        let mut cell_qubit = vec![vec![None; cols]; rows];
        let mut sites = Vec::new();
        for (i, row) in cell_qubit.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if matrix.get(i, j) {
                    *slot = Some(sites.len());
                    sites.push(Site::new(i, j, 0));
                }
            }
        }
        let n = sites.len();
        let mut generators = Vec::new();
        for row in &cell_qubit {
            let occupied: Vec<usize> = row.iter().flatten().copied().collect();
            for pair in occupied.windows(2) {
                generators.push(PauliOp::x_on(n, pair.iter().copied()));
            }
        }
        for j in 0..cols {
            let occupied: Vec<usize> = cell_qubit.iter().filter_map(|row| row[j]).collect();
            for pair in occupied.windows(2) {
                generators.push(PauliOp::z_on(n, pair.iter().copied()));
            }
        }
        let layout = Layout::new(rows, cols, sites)?;
        let code = SubsystemCode::derive(n, generators, Some(layout))?;
        Ok(GbsCode {
            matrix: matrix.clone(),
            cell_qubit,
            code,
        })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn code(&self) -> &SubsystemCode {
        &self.code
    }

    pub fn into_code(self) -> SubsystemCode {
        self.code
    }

    pub fn layout(&self) -> &Layout {
        self.code.layout().expect("GBS codes always carry a layout")
    }

    /// Qubit index at cell `(i, j)`, if occupied.
    pub fn qubit_at(&self, i: usize, j: usize) -> Option<usize> {
        self.cell_qubit.get(i)?.get(j).copied().flatten()
    }

    /// `R_i`: `Z` on every qubit of row `i`.
    pub fn row_operator(&self, i: usize) -> Result<PauliOp> {
        let row = self.cell_qubit.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.matrix.num_rows(),
        })?;
        Ok(PauliOp::z_on(self.code.num_qubits(), row.iter().flatten().copied()))
    }

    /// `C_j`: `X` on every qubit of column `j`.
    pub fn column_operator(&self, j: usize) -> Result<PauliOp> {
        if j >= self.matrix.num_cols() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.matrix.num_cols(),
            });
        }
        Ok(PauliOp::x_on(
            self.code.num_qubits(),
            self.cell_qubit.iter().filter_map(|row| row[j]),
        ))
    }

    /// `∏_j C_j^{x_j}`.
    pub fn x_logical(&self, x: &BitVector) -> Result<PauliOp> {
        let mut acc = PauliOp::identity(self.code.num_qubits());
        for j in x.iter_ones() {
            acc = acc.mul(&self.column_operator(j)?)?;
        }
        Ok(acc)
    }

    /// `∏_i R_i^{z_i}`.
    pub fn z_logical(&self, z: &BitVector) -> Result<PauliOp> {
        let mut acc = PauliOp::identity(self.code.num_qubits());
        for i in z.iter_ones() {
            acc = acc.mul(&self.row_operator(i)?)?;
        }
        Ok(acc)
    }

    /// `k` pairs of bare logical operators `(P^X_a, P^Z_a)` with
    /// anticommutation pattern `δ_{a,b}`.
    ///
    /// Gram-Schmidt over the bilinear form `zᵀAx`: columns `e_j` are tried
    /// in order as X-candidates; each is cleared against earlier pairs and
    /// then paired with the first row candidate `e_i` (also cleared) that
    /// pairs to one with it.
    pub fn bare_logical_basis(&self) -> Result<Vec<(PauliOp, PauliOp)>> {
        let pairs = logical_pairs(&self.matrix);
        if pairs.is_empty() {
            return Err(Error::NoLogicalQubits);
        }
        pairs
            .iter()
            .map(|(x, z)| Ok((self.x_logical(x)?, self.z_logical(z)?)))
            .collect()
    }
}

fn form(a: &BitMatrix, z: &BitVector, x: &BitVector) -> bool {
    a.mul_vec(x).expect("x has width cols").dot(z)
}

fn logical_pairs(a: &BitMatrix) -> Vec<(BitVector, BitVector)> {
    let (rows, cols) = (a.num_rows(), a.num_cols());
    let k = a.rank();
    let mut pairs: Vec<(BitVector, BitVector)> = Vec::with_capacity(k);
    for j in 0..cols {
        if pairs.len() == k {
            break;
        }
        let mut x = BitVector::unit(cols, j);
        for (xa, za) in &pairs {
            if form(a, za, &x) {
                x.xor_assign(xa);
            }
        }
        let partner = (0..rows).find_map(|i| {
            let mut z = BitVector::unit(rows, i);
            for (xa, za) in &pairs {
                if form(a, &z, xa) {
                    z.xor_assign(za);
                }
            }
            form(a, &z, &x).then_some(z)
        });
        if let Some(z) = partner {
            pairs.push((x, z));
        }
    }
    debug_assert_eq!(pairs.len(), k);
    pairs
}

/// Parameters predicted from the matrix alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoreticalParams {
    pub n: usize,
    pub k: usize,
    pub d_row: usize,
    pub d_col: usize,
    pub d: usize,
}

/// `n = |A|`, `k = rank(A)`, `d = min(d_row, d_col)`.
pub fn theoretical_params(a: &BitMatrix, cap: u64) -> Result<TheoreticalParams> {
    if a.is_zero() {
        return Err(Error::EmptyMatrix);
    }
    let (d_row, d_col) = classical_distances(a, cap)?;
    Ok(TheoreticalParams {
        n: a.weight(),
        k: a.rank(),
        d_row,
        d_col,
        d: d_row.min(d_col),
    })
}

/// Minimum distances of the row space and the column space of `a`.
pub fn classical_distances(a: &BitMatrix, cap: u64) -> Result<(usize, usize)> {
    let d_row = gf2::min_weight_nonzero(&a.row_space(), cap)?.0;
    let d_col = gf2::min_weight_nonzero(&a.column_space(), cap)?.0;
    Ok((d_row, d_col))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::DEFAULT_CAP;

    fn example() -> BitMatrix {
        BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
    }

    #[test]
    fn build_reproduces_displayed_gauge_group() {
        let gbs = GbsCode::build(&example()).unwrap();
        let rendered: Vec<String> = gbs.code().generators().iter().map(|g| g.to_string()).collect();
        // Qubits: (1,1)=0 (1,2)=1 (2,2)=2 (2,3)=3 (3,1)=4 (3,3)=5.
        assert_eq!(rendered, ["X0 X1", "X2 X3", "X4 X5", "Z0 Z4", "Z1 Z2", "Z3 Z5"]);
        assert_eq!(gbs.code().num_qubits(), 6);
    }

    #[test]
    fn build_small_cases() {
        let bs = GbsCode::build(&BitMatrix::ones(2, 2)).unwrap();
        let gens = bs.code().generators();
        assert_eq!(gens.len(), 4);
        assert_eq!(gens.iter().filter(|g| g.is_x_type()).count(), 2);

        let single = GbsCode::build(&BitMatrix::ones(1, 1)).unwrap();
        assert!(single.code().generators().is_empty());
        assert_eq!(single.code().logical_qubits(), 1);
        assert_eq!(single.code().distance_full(DEFAULT_CAP).unwrap().value, Some(1));

        assert_eq!(GbsCode::build(&BitMatrix::zeros(2, 2)).unwrap_err(), Error::EmptyMatrix);
    }

    #[test]
    fn theoretical_params_examples() {
        for m in 1..=6 {
            let p = theoretical_params(&BitMatrix::ones(m, m), DEFAULT_CAP).unwrap();
            assert_eq!((p.n, p.k, p.d), (m * m, 1, m));
        }
        let p = theoretical_params(&example(), DEFAULT_CAP).unwrap();
        assert_eq!((p.n, p.k, p.d_row, p.d_col, p.d), (6, 2, 2, 2, 2));
        assert_eq!(theoretical_params(&BitMatrix::zeros(3, 3), DEFAULT_CAP), Err(Error::EmptyMatrix));
    }

    #[test]
    fn row_and_column_operators() {
        let a = BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 0, 0], &[1, 0, 1]]);
        let gbs = GbsCode::build(&a).unwrap();
        assert!(gbs.row_operator(1).unwrap().is_identity());
        assert!(gbs.row_operator(3).is_err());
        assert!(gbs.column_operator(3).is_err());

        let gbs = GbsCode::build(&example()).unwrap();
        let r1 = gbs.row_operator(0).unwrap();
        assert_eq!(r1.to_string(), "Z0 Z1");
        assert!(r1.symplectic_product(&gbs.column_operator(0).unwrap()).unwrap());

        let bs = GbsCode::build(&BitMatrix::ones(3, 3)).unwrap();
        assert_eq!(bs.column_operator(1).unwrap().weight(), 3);
    }

    #[test]
    fn commutation_table_matches_matrix() {
        let a = BitMatrix::from_rows_u8(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 0, 0]]);
        let gbs = GbsCode::build(&a).unwrap();
        let centralizer = gbs.code().gauge().centralizer();
        for i in 0..3 {
            let r = gbs.row_operator(i).unwrap();
            assert!(centralizer.contains(&r).unwrap());
            for j in 0..4 {
                let c = gbs.column_operator(j).unwrap();
                assert!(centralizer.contains(&c).unwrap());
                assert_eq!(r.symplectic_product(&c).unwrap(), a.get(i, j));
            }
        }
    }

    #[test]
    fn bare_logicals() {
        let bs = GbsCode::build(&BitMatrix::ones(3, 3)).unwrap();
        let pairs = bs.bare_logical_basis().unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].0, bs.column_operator(0).unwrap());
        assert_eq!(pairs[0].1, bs.row_operator(0).unwrap());

        let gbs = GbsCode::build(&example()).unwrap();
        let pairs = gbs.bare_logical_basis().unwrap();
        assert_eq!(pairs.len(), 2);
        let code = gbs.code();
        for (a, (xa, _)) in pairs.iter().enumerate() {
            for (b, (_, zb)) in pairs.iter().enumerate() {
                assert_eq!(xa.symplectic_product(zb).unwrap(), a == b);
            }
        }
        for (x, z) in &pairs {
            for g in code.generators() {
                assert!(!x.anticommutes(g) && !z.anticommutes(g));
            }
            assert!(!code.gauge().contains(x).unwrap());
            assert!(!code.gauge().contains(z).unwrap());
        }
    }

    #[test]
    fn stabilizers_come_from_kernels() {
        let a = BitMatrix::from_rows_u8(&[&[1, 1, 0, 1], &[0, 1, 1, 1], &[1, 0, 1, 0], &[0, 0, 0, 0]]);
        let gbs = GbsCode::build(&a).unwrap();
        let s = gbs.code().stabilizer();
        for x in a.kernel() {
            let op = gbs.x_logical(&x).unwrap();
            assert!(s.contains(&op).unwrap());
        }
        for z in a.transpose().kernel() {
            let op = gbs.z_logical(&z).unwrap();
            assert!(s.contains(&op).unwrap());
        }
    }
}
