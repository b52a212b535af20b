//! Exact arithmetic in cyclotomic fields and the linear algebra built on it.

mod cyc;
mod matrix;
pub mod modp;
pub mod sparse;
mod subspace;

pub use cyc::{cyc_arith, cyclotomic_poly, q, totient, ArithOp, CycNum};
pub use matrix::{mat_nullspace, mat_rank, subspace_meet, Matrix};
pub use sparse::{
    sv_axpy, sv_collect, sv_from_dense, sv_get, sv_scale, sv_to_dense, Echelon, SVec,
};
pub use subspace::{nullspace_of_columns, nullspace_rows, Subspace, SubspaceJson};
