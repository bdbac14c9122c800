use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{mat_mul, rank, rref, Field, Scalar, SparseMatrix};

use super::path::{BoundQuiver, Path, PathElement, Quiver};
use super::QuiverError;

/// Finite-dimensional representation: a space per vertex and a matrix per edge.
/// The matrix of edge `f` has shape `dims[tail] x dims[start]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<SparseMatrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, field: Field, dims: Vec<usize>, maps: Vec<SparseMatrix>) -> Result<Self, QuiverError> {
        if dims.len() != quiver.vertices().len() || maps.len() != quiver.edges().len() {
            return Err(QuiverError::ShapeMismatch);
        }
        for (e, m) in quiver.edges().iter().zip(&maps) {
            if m.rows() != dims[e.tail] || m.cols() != dims[e.start] || m.field() != field {
                return Err(QuiverError::ShapeMismatch);
            }
        }
        Ok(Representation { quiver, field, dims, maps })
    }

    pub fn simple(quiver: &Quiver, field: Field, v: usize) -> Self {
        let mut dims = vec![0; quiver.vertices().len()];
        dims[v] = 1;
        let maps = quiver
            .edges()
            .iter()
            .map(|e| SparseMatrix::zeros(field, dims[e.tail], dims[e.start]))
            .collect();
        Representation { quiver: quiver.clone(), field, dims, maps }
    }

    /// The projective at `v`: basis the normal-form paths starting at `v`,
    /// edges acting by appending on the right.
    pub fn projective(bq: &BoundQuiver, v: usize) -> Result<Self, QuiverError> {
        let q = bq.quiver();
        let field = bq.field();
        let paths = bq.normal_paths_from(v, 64)?;
        let nv = q.vertices().len();
        let mut by_vertex: Vec<Vec<Path>> = vec![Vec::new(); nv];
        for p in paths {
            let end = p.end(q);
            by_vertex[end].push(p);
        }
        let dims: Vec<usize> = by_vertex.iter().map(Vec::len).collect();
        let mut maps = Vec::new();
        for (ei, e) in q.edges().iter().enumerate() {
            let mut m = SparseMatrix::zeros(field, dims[e.tail], dims[e.start]);
            let step = PathElement::path(field, Path { start: e.start, edges: vec![ei] });
            for (c, p) in by_vertex[e.start].iter().enumerate() {
                let image = bq.multiply(&PathElement::path(field, p.clone()), &step);
                for (path, coeff) in image.terms() {
                    let r = by_vertex[e.tail].iter().position(|b| b == path).ok_or(QuiverError::NotReduced)?;
                    m.add_at(r, c, coeff);
                }
            }
            maps.push(m);
        }
        Ok(Representation { quiver: q.clone(), field, dims, maps })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// Action of `x` on the total space, as a `total x total` matrix.
    pub fn evaluate(&self, x: &PathElement) -> SparseMatrix {
        let n = self.total_dim();
        let off = self.offsets();
        let mut out = SparseMatrix::zeros(self.field, n, n);
        for (p, c) in x.terms() {
            let mut m = SparseMatrix::identity(self.field, self.dims[p.start]);
            for &e in &p.edges {
                m = mat_mul(&self.maps[e], &m).expect("composable path");
            }
            let end = p.end(&self.quiver);
            out.add_block(off[end], off[p.start], &m.scale(c));
        }
        out
    }

    pub fn satisfies(&self, bq: &BoundQuiver) -> bool {
        bq.relations().iter().all(|r| self.evaluate(r).is_zero())
    }

    /// Relabels vertices by the permutation `sigma`, sending each edge to the
    /// unique edge of `target` joining the permuted endpoints.
    pub fn relabel(&self, target: &Quiver, sigma: &[usize]) -> Result<Self, QuiverError> {
        let mut dims = vec![0; self.dims.len()];
        for (v, &d) in self.dims.iter().enumerate() {
            dims[sigma[v]] = d;
        }
        let mut maps = vec![SparseMatrix::zeros(self.field, 0, 0); target.edges().len()];
        for (e, m) in self.quiver.edges().iter().zip(&self.maps) {
            let k = target
                .edges()
                .iter()
                .position(|f| f.start == sigma[e.start] && f.tail == sigma[e.tail])
                .ok_or_else(|| QuiverError::BadEdge(e.name.clone()))?;
            maps[k] = m.clone();
        }
        Representation::new(target.clone(), self.field, dims, maps)
    }
}

/// Morphism of representations, one block per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap {
    pub blocks: Vec<SparseMatrix>,
}

impl RepMap {
    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| SparseMatrix::zeros(source.field, t, s))
            .collect();
        RepMap { blocks }
    }

    pub fn is_homomorphism(&self, source: &Representation, target: &Representation) -> bool {
        if !self.fits(source, target) {
            return false;
        }
        source.quiver.edges().iter().enumerate().all(|(k, e)| {
            let lhs = mat_mul(&self.blocks[e.tail], &source.maps[k]).expect("shapes");
            let rhs = mat_mul(&target.maps[k], &self.blocks[e.start]).expect("shapes");
            lhs == rhs
        })
    }

    fn fits(&self, source: &Representation, target: &Representation) -> bool {
        self.blocks.len() == source.dims.len()
            && self
                .blocks
                .iter()
                .enumerate()
                .all(|(v, b)| b.rows() == target.dims[v] && b.cols() == source.dims[v])
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &RepMap) -> Result<RepMap, QuiverError> {
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(g, f)| mat_mul(g, f).map_err(|_| QuiverError::ShapeMismatch))
            .collect::<Result<_, _>>()?;
        Ok(RepMap { blocks })
    }
}

/// Basis of `Hom(source, target)`, from the kernel of the commutativity equations.
pub fn hom_basis(source: &Representation, target: &Representation) -> Vec<RepMap> {
    let field = source.field;
    let nv = source.dims.len();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + target.dims[v] * source.dims[v];
    }
    let unknowns = offset[nv];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * source.dims[v] + c;
    let mut eqs: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut row = 0;
    for (k, e) in source.quiver.edges().iter().enumerate() {
        let (a, b) = (e.start, e.tail);
        // phi_b * M_f - N_f * phi_a, entry (r, c) with r < dimN_b, c < dimM_a
        for r in 0..target.dims[b] {
            for c in 0..source.dims[a] {
                for (j, m) in source.maps[k].triplets().filter(|t| t.1 == c).map(|t| (t.0, t.2)) {
                    eqs.push((row, var(b, r, j), m.clone()));
                }
                for (j, n) in target.maps[k].row(r) {
                    eqs.push((row, var(a, *j, c), -n));
                }
                row += 1;
            }
        }
    }
    let system = SparseMatrix::from_triplets(field, row, unknowns, eqs).expect("indices in range");
    rref(&system)
        .kernel_basis
        .into_iter()
        .map(|v| {
            let blocks = (0..nv)
                .map(|w| {
                    let mut m = SparseMatrix::zeros(field, target.dims[w], source.dims[w]);
                    for r in 0..target.dims[w] {
                        for c in 0..source.dims[w] {
                            m.set(r, c, v[var(w, r, c)].clone());
                        }
                    }
                    m
                })
                .collect();
            RepMap { blocks }
        })
        .collect()
}

/// Exactness of `0 -> M0 -> M1 -> ... -> Mk -> 0` with `maps[i]: M_i -> M_{i+1}`,
/// checked vertexwise by ranks.
pub fn check_exact(reps: &[Representation], maps: &[RepMap]) -> Result<bool, QuiverError> {
    if reps.is_empty() || maps.len() + 1 != reps.len() {
        return Err(QuiverError::ShapeMismatch);
    }
    for (i, m) in maps.iter().enumerate() {
        if !m.fits(&reps[i], &reps[i + 1]) {
            return Err(QuiverError::ShapeMismatch);
        }
    }
    let nv = reps[0].dims.len();
    for v in 0..nv {
        // incoming rank at each spot, with zero maps at both ends
        let ranks: Vec<usize> = maps.iter().map(|m| rank(&m.blocks[v])).collect();
        for (i, rep) in reps.iter().enumerate() {
            let rank_in = if i == 0 { 0 } else { ranks[i - 1] };
            let rank_out = if i == maps.len() { 0 } else { ranks[i] };
            if rank_in + rank_out != rep.dims[v] {
                return Ok(false);
            }
            if i > 0 && i < maps.len() {
                let comp = mat_mul(&maps[i].blocks[v], &maps[i - 1].blocks[v]).map_err(|_| QuiverError::ShapeMismatch)?;
                if !comp.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
