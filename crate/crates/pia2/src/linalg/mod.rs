//! Exact scalars over F2 and Q, sparse matrices and row reduction.

mod rref;
mod scalar;
mod sparse;

pub use rref::{rank, rref, Rref};
pub use scalar::{Field, Scalar};
pub use sparse::{mat_mul, SparseMatrix};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("field mismatch")]
    FieldMismatch,
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
}

/// Dot product of two vectors of equal length.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = match a.first() {
        Some(x) => x.field().zero(),
        None => return Field::F2.zero(),
    };
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_assign_ref(&(x * y));
        }
    }
    acc
}
