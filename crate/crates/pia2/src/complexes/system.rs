use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{Field, Scalar, SparseMatrix};
use crate::quiver::{BoundQuiver, Path, PathElement};

use super::ComplexError;

/// Indecomposable projectives of a bound quiver whose Hom spaces are at most
/// one-dimensional, with the structure constants of composition.
///
/// `Hom(P_a, P_b)` is spanned by the normal-form paths from `b` to `a`.
/// A block matrix between two lists of labels stores, per entry, the
/// coefficient of the basis element of the corresponding Hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSystem {
    field: Field,
    names: Vec<String>,
    hom: Vec<Vec<bool>>,
    gamma: Vec<Scalar>,
}

impl ProjectiveSystem {
    pub fn from_bound_quiver(bq: &BoundQuiver) -> Result<Self, ComplexError> {
        let q = bq.quiver();
        let field = bq.field();
        let k = q.vertices().len();
        let max_len = 2 * k + 2;
        // basis[a][b]: the path spanning Hom(P_a, P_b), a path from b to a
        let mut basis: Vec<Vec<Option<Path>>> = vec![vec![None; k]; k];
        for b in 0..k {
            let paths = bq.normal_paths_from(b, max_len).map_err(|_| ComplexError::NotFinite)?;
            for p in paths {
                let a = p.end(q);
                if basis[a][b].is_some() {
                    return Err(ComplexError::HomTooLarge);
                }
                basis[a][b] = Some(p);
            }
        }
        let mut gamma = vec![field.zero(); k * k * k];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let (Some(f), Some(g), Some(target)) = (&basis[a][b], &basis[b][c], &basis[a][c]) else {
                        continue;
                    };
                    let prod = bq.multiply(&PathElement::path(field, g.clone()), &PathElement::path(field, f.clone()));
                    for (p, coeff) in prod.terms() {
                        if p == target {
                            gamma[(a * k + b) * k + c] = coeff.clone();
                        } else {
                            return Err(ComplexError::HomTooLarge);
                        }
                    }
                }
            }
        }
        let names = q.vertices().iter().map(|v| format!("P{v}")).collect();
        let hom = basis.iter().map(|row| row.iter().map(Option::is_some).collect()).collect();
        Ok(ProjectiveSystem { field, names, hom, gamma })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn has_hom(&self, a: usize, b: usize) -> bool {
        self.hom[a][b]
    }

    /// Coefficient of `(b -> c) . (a -> b)` on the basis element of `Hom(P_a, P_c)`.
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> &Scalar {
        let k = self.names.len();
        &self.gamma[(a * k + b) * k + c]
    }

    /// Composite `g . f` of block matrices, where `f` goes from `a_labels` to
    /// `b_labels` and `g` from `b_labels` to `c_labels`.
    pub fn compose_blocks(
        &self,
        g: &SparseMatrix,
        f: &SparseMatrix,
        a_labels: &[usize],
        b_labels: &[usize],
        c_labels: &[usize],
    ) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.field, c_labels.len(), a_labels.len());
        for (r, row) in (0..g.rows()).map(|r| (r, g.row(r))) {
            for (k, gv) in row {
                for (c, fv) in f.row(*k) {
                    let w = self.gamma(a_labels[*c], b_labels[*k], c_labels[r]);
                    if !w.is_zero() {
                        out.add_at(r, *c, &(&(gv * fv) * w));
                    }
                }
            }
        }
        out
    }

    /// Whether every nonzero entry of a block matrix sits on a nonzero Hom space.
    pub fn supports(&self, m: &SparseMatrix, from: &[usize], to: &[usize]) -> bool {
        m.rows() == to.len() && m.cols() == from.len() && m.triplets().all(|(r, c, _)| self.has_hom(from[c], to[r]))
    }
}
