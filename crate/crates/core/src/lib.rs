//! Generalized Bacon-Shor subsystem codes.
//!
//! A binary matrix `A` defines a subsystem code with one qubit per nonzero
//! entry, `XX` gauge generators along rows and `ZZ` along columns. The code
//! encodes `rank(A)` logical qubits with distance `min(d_row, d_col)`, the
//! minimum distances of the row and column spaces of `A`.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf2`]: bit-packed vectors and matrices over GF(2), and Gray-code
//!   minimum-weight search.
//! - [`pauli`]: phaseless Pauli operators and subgroups in canonical form.
//! - [`subsystem`]: gauge groups, derived stabilizers, and distance oracles.
//! - [`gbs`]: the matrix construction and its predicted parameters.
//! - [`localize`]: nearest-neighbour layouts using ancilla chains.
//! - [`regions`]: restrictions of groups to qubit regions.
//! - [`search`]: random search for matrices with good row and column codes.
//! - [`bounds`]: parameter bounds, column profiles and the Hadamard family.
//!
//! ```
//! use bacon_shor::{BitMatrix, GbsCode};
//!
//! let a = BitMatrix::from_rows_u8(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
//! let code = GbsCode::build(&a).unwrap().into_code();
//! assert_eq!((code.num_qubits(), code.logical_qubits()), (6, 2));
//! assert_eq!(code.distance_full(1 << 20).unwrap().value, Some(2));
//! ```

pub mod bounds;
pub mod codefile;
pub mod error;
pub mod gbs;
pub mod gf2;
pub mod layout;
pub mod localize;
pub mod pauli;
pub mod random;
pub mod regions;
pub mod search;
pub mod subsystem;
pub mod verify;

pub use bounds::{check_bounds, hadamard_matrix, profile, verify_feasibility, BoundReport, Profile};
pub use error::{Error, Result};
pub use gbs::{theoretical_params, GbsCode, TheoreticalParams};
pub use gf2::{BitMatrix, BitVector, DEFAULT_CAP};
pub use layout::{Layout, Site};
pub use localize::{check_locality, extend_with_ancilla, localize, pad_full, pad_to, LocalCode};
pub use pauli::{GroupBasis, Letter, PauliOp};
pub use regions::Region;
pub use search::{gv_search, GvQuery, GvResult};
pub use subsystem::{DistanceMode, DistanceResult, SubsystemCode};
