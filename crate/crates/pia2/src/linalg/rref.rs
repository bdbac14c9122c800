use alloc::vec;
use alloc::vec::Vec;

use super::scalar::{Field, Scalar};
use super::sparse::SparseMatrix;

/// Reduced row-echelon data for a matrix `m`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows of `reduced`.
    pub pivot_cols: Vec<usize>,
    /// Basis of the null space, one vector per non-pivot column.
    pub kernel_basis: Vec<Vec<Scalar>>,
    /// Invertible row operations with `transform * m == reduced`.
    pub transform: SparseMatrix,
    pub reduced: SparseMatrix,
}

/// Gauss-Jordan elimination. Pivots are taken column by column, each from the
/// lowest-index remaining row with a nonzero entry.
pub fn rref(m: &SparseMatrix) -> Rref {
    let field = m.field();
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.to_dense();
    let mut t: Vec<Vec<Scalar>> = (0..nr)
        .map(|i| (0..nr).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        t.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        scale_row(&mut a[r], &inv);
        scale_row(&mut t[r], &inv);
        for i in 0..nr {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (src_a, src_t) = (a[r].clone(), t[r].clone());
                axpy_row(&mut a[i], &f, &src_a);
                axpy_row(&mut t[i], &f, &src_t);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = r;
    let mut kernel_basis = Vec::new();
    let is_pivot = {
        let mut v = vec![false; nc];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    for free in (0..nc).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); nc];
        v[free] = field.one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        kernel_basis.push(v);
    }
    Rref {
        rank,
        pivot_cols,
        kernel_basis,
        transform: dense_to_sparse(field, &t, nr),
        reduced: dense_to_sparse(field, &a, nc),
    }
}

fn scale_row(row: &mut [Scalar], s: &Scalar) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x * s;
        }
    }
}

/// `row -= f * src`.
fn axpy_row(row: &mut [Scalar], f: &Scalar, src: &[Scalar]) {
    for (x, y) in row.iter_mut().zip(src) {
        if !y.is_zero() {
            *x = &*x - &(f * y);
        }
    }
}

fn dense_to_sparse(field: Field, rows: &[Vec<Scalar>], cols: usize) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(field, rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v.clone());
            }
        }
    }
    m
}

impl Rref {
    /// A solution of `m x = b` with free variables zero, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.transform.field();
        let y = self.transform.mul_vec(b);
        if y[self.rank..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![field.zero(); self.reduced.cols()];
        for (row, &pc) in self.pivot_cols.iter().enumerate() {
            x[pc] = y[row].clone();
        }
        Some(x)
    }
}

/// Rank of a matrix.
pub fn rank(m: &SparseMatrix) -> usize {
    rref(m).rank
}
