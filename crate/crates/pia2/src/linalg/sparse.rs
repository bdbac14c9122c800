use alloc::vec;
use alloc::vec::Vec;

use super::scalar::{Field, Scalar};
use super::LinalgError;

/// Row-major sparse matrix with exact entries. Rows keep their entries
/// sorted by column with no zeros stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i].push((i, field.one()));
        }
        m
    }

    /// Builds from triplets; repeated positions are summed.
    pub fn from_triplets<I>(field: Field, rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Self::zeros(field, rows, cols);
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds { row: r, col: c, rows, cols });
            }
            if v.field() != field {
                return Err(LinalgError::FieldMismatch);
            }
            m.add_at(r, c, &v);
        }
        Ok(m)
    }

    pub fn from_dense(field: Field, rows: &[&[i64]]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, nr, nc);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                let s = field.int(v);
                if !s.is_zero() {
                    m.data[i].push((j, s));
                }
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => {
                if v.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (c, v));
                }
            }
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => {
                row[k].1.add_assign_ref(v);
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (c, v.clone())),
        }
    }

    /// Entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for (r, c, v) in self.triplets() {
            t.data[c].push((r, v.clone()));
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zeros(self.field, self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, row) in self.data.iter().enumerate() {
            out.data[r] = row.iter().map(|(c, v)| (*c, v * s)).filter(|e| !e.1.is_zero()).collect();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.triplets() {
            out.add_at(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add(&other.scale(&-self.field.one()))
    }

    fn check_same(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, x) in row {
                    if !v[*c].is_zero() {
                        acc.add_assign_ref(&(x * &v[*c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Places `block` with its top-left corner at `(r0, c0)`, adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &SparseMatrix) {
        for (r, c, v) in block.triplets() {
            self.add_at(r0 + r, c0 + c, v);
        }
    }

    /// Copies out the `rows x cols` block at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> SparseMatrix {
        let mut out = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            for (c, v) in &self.data[r0 + r] {
                if *c >= c0 && *c < c0 + cols {
                    out.data[r].push((*c - c0, v.clone()));
                }
            }
        }
        out
    }
}

/// Exact product `a * b`.
pub fn mat_mul(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
    if a.field != b.field {
        return Err(LinalgError::FieldMismatch);
    }
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch { left: (a.rows, a.cols), right: (b.rows, b.cols) });
    }
    let field = a.field;
    let mut out = SparseMatrix::zeros(field, a.rows, b.cols);
    let mut acc: Vec<Scalar> = vec![field.zero(); b.cols];
    let mut touched: Vec<usize> = Vec::new();
    let mut seen = vec![false; b.cols];
    for (r, row) in a.data.iter().enumerate() {
        for (k, x) in row {
            for (c, y) in &b.data[*k] {
                if !seen[*c] {
                    seen[*c] = true;
                    touched.push(*c);
                }
                acc[*c].add_assign_ref(&(x * y));
            }
        }
        touched.sort_unstable();
        for &c in &touched {
            let v = core::mem::replace(&mut acc[c], field.zero());
            seen[c] = false;
            if !v.is_zero() {
                out.data[r].push((c, v));
            }
        }
        touched.clear();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_times_m() {
        let m = SparseMatrix::from_dense(Field::Q, &[&[1, 2, 0], &[0, -1, 3]]);
        let i = SparseMatrix::identity(Field::Q, 2);
        assert_eq!(mat_mul(&i, &m).unwrap(), m);
    }

    #[test]
    fn zero_times_m() {
        let m = SparseMatrix::from_dense(Field::Q, &[&[1, 2], &[3, 4]]);
        let z = SparseMatrix::zeros(Field::Q, 3, 2);
        let p = mat_mul(&z, &m).unwrap();
        assert!(p.is_zero());
        assert_eq!((p.rows(), p.cols()), (3, 2));
    }

    #[test]
    fn f2_cancellation() {
        let a = SparseMatrix::from_dense(Field::F2, &[&[1, 1], &[1, 1]]);
        let b = SparseMatrix::from_dense(Field::F2, &[&[1], &[1]]);
        let p = mat_mul(&a, &b).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.nnz(), 0);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = SparseMatrix::identity(Field::Q, 2);
        let b = SparseMatrix::identity(Field::Q, 3);
        assert!(matches!(mat_mul(&a, &b), Err(LinalgError::DimensionMismatch { .. })));
        let c = SparseMatrix::identity(Field::F2, 2);
        assert_eq!(mat_mul(&a, &c), Err(LinalgError::FieldMismatch));
    }

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(
            Field::Q,
            2,
            2,
            [(0, 0, Field::Q.one()), (0, 0, -Field::Q.one()), (1, 1, Field::Q.int(2))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert!(SparseMatrix::from_triplets(Field::Q, 1, 1, [(1, 0, Field::Q.one())]).is_err());
    }
}
