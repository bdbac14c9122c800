use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{rank, rref, Scalar, SparseMatrix};

use super::complex::{ChainMap, TruncatedComplex};
use super::system::ProjectiveSystem;
use super::ComplexError;

/// Coordinates of `Hom^n(X, Y)`: triples `(i, r, c)` meaning summand `c` at
/// source position `i` to summand `r` at target position `i + n`, ordered with
/// the highest source position first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLayout {
    degree: i64,
    coords: Vec<(i64, usize, usize)>,
    // keyed by (position, source summand, target summand)
    index: BTreeMap<(i64, usize, usize), usize>,
}

impl HomLayout {
    pub fn new(x: &TruncatedComplex, y: &TruncatedComplex, n: i64) -> Self {
        let sys = x.system();
        let mut coords = Vec::new();
        for i in (x.lo()..=x.hi()).rev() {
            for (c, &a) in x.summands(i).iter().enumerate() {
                for (r, &b) in y.summands(i + n).iter().enumerate() {
                    if sys.has_hom(a, b) {
                        coords.push((i, r, c));
                    }
                }
            }
        }
        let index = coords.iter().enumerate().map(|(k, &(i, r, c))| ((i, c, r), k)).collect();
        HomLayout { degree: n, coords, index }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, k: usize) -> (i64, usize, usize) {
        self.coords[k]
    }

    pub fn coords(&self) -> &[(i64, usize, usize)] {
        &self.coords
    }

    pub fn index_of(&self, i: i64, r: usize, c: usize) -> Option<usize> {
        self.index.get(&(i, c, r)).copied()
    }

    /// Coordinates with source position `i` and source summand `c`.
    fn summand_entries(&self, i: i64, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.index.range((i, c, 0)..=(i, c, usize::MAX)).map(|(&(_, _, r), &k)| (r, k))
    }
}

/// Matrix of the differential `Hom^n(X, Y) -> Hom^{n+1}(X, Y)`.
pub fn hom_differential(x: &TruncatedComplex, y: &TruncatedComplex, from: &HomLayout, to: &HomLayout) -> SparseMatrix {
    let sys = x.system();
    let field = sys.field();
    let n = from.degree();
    let sign = -field.sign(n);
    let mut m = SparseMatrix::zeros(field, to.len(), from.len());
    for (k, &(i, r, c)) in from.coords().iter().enumerate() {
        let (a, b) = (x.summands(i)[c], y.summands(i + n)[r]);
        if let Some(dy) = y.differential(i + n) {
            for r2 in 0..dy.rows() {
                let v = dy.get(r2, r);
                if v.is_zero() {
                    continue;
                }
                let b2 = y.summands(i + n + 1)[r2];
                let w = sys.gamma(a, b, b2);
                if let (false, Some(t)) = (w.is_zero(), to.index_of(i, r2, c)) {
                    m.add_at(t, k, &(&v * w));
                }
            }
        }
        if let Some(dx) = x.differential(i - 1) {
            for (c2, v) in dx.row(c) {
                let a2 = x.summands(i - 1)[*c2];
                let w = sys.gamma(a2, a, b);
                if let (false, Some(t)) = (w.is_zero(), to.index_of(i - 1, r, *c2)) {
                    m.add_at(t, k, &(&(v * w) * &sign));
                }
            }
        }
    }
    m
}

/// Element of `Hom^n(objects[x], objects[y])` in layout coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomVector {
    pub x: usize,
    pub y: usize,
    pub n: i64,
    pub v: Vec<Scalar>,
}

impl HomVector {
    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Scalar::is_zero)
    }

    pub fn add_assign(&mut self, other: &HomVector) {
        assert_eq!((self.x, self.y, self.n), (other.x, other.y, other.n), "adding vectors from different Hom spaces");
        for (a, b) in self.v.iter_mut().zip(&other.v) {
            if !b.is_zero() {
                a.add_assign_ref(b);
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> HomVector {
        HomVector { v: self.v.iter().map(|a| a * s).collect(), ..self.clone() }
    }
}

#[derive(Clone, Debug)]
struct HomSpace {
    layout: HomLayout,
    // to degree n + 1
    d: SparseMatrix,
}

/// The dg category on a list of truncated complexes: Hom complexes with
/// their differentials and composition.
#[derive(Clone, Debug)]
pub struct DgCategory {
    system: Arc<ProjectiveSystem>,
    names: Vec<String>,
    objects: Vec<Arc<TruncatedComplex>>,
    spaces: BTreeMap<(usize, usize, i64), HomSpace>,
    empty: HomSpace,
}

impl DgCategory {
    pub fn new(system: Arc<ProjectiveSystem>, objects: Vec<(String, TruncatedComplex)>) -> Result<Self, ComplexError> {
        let (names, objects): (Vec<String>, Vec<Arc<TruncatedComplex>>) =
            objects.into_iter().map(|(n, c)| (n, Arc::new(c))).unzip();
        if objects.iter().any(|c| **c.system() != *system) {
            return Err(ComplexError::Mismatch);
        }
        let field = system.field();
        let mut spaces = BTreeMap::new();
        for (xi, x) in objects.iter().enumerate() {
            for (yi, y) in objects.iter().enumerate() {
                let (lo, hi) = (y.lo() - x.hi(), y.hi() - x.lo());
                for n in lo..=hi {
                    let layout = HomLayout::new(x, y, n);
                    if layout.is_empty() {
                        continue;
                    }
                    let next = HomLayout::new(x, y, n + 1);
                    let d = hom_differential(x, y, &layout, &next);
                    spaces.insert((xi, yi, n), HomSpace { layout, d });
                }
            }
        }
        let empty = HomSpace {
            layout: HomLayout { degree: 0, coords: Vec::new(), index: BTreeMap::new() },
            d: SparseMatrix::zeros(field, 0, 0),
        };
        Ok(DgCategory { system, names, objects, spaces, empty })
    }

    pub fn system(&self) -> &Arc<ProjectiveSystem> {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn object(&self, x: usize) -> &Arc<TruncatedComplex> {
        &self.objects[x]
    }

    pub fn object_index(&self, c: &Arc<TruncatedComplex>) -> Option<usize> {
        self.objects.iter().position(|o| Arc::ptr_eq(o, c) || **o == **c)
    }

    /// Degrees in which `Hom^n(x, y)` is nonzero.
    pub fn degrees(&self, x: usize, y: usize) -> impl Iterator<Item = i64> + '_ {
        self.spaces.range((x, y, i64::MIN)..=(x, y, i64::MAX)).map(|(k, _)| k.2)
    }

    fn space(&self, x: usize, y: usize, n: i64) -> &HomSpace {
        self.spaces.get(&(x, y, n)).unwrap_or(&self.empty)
    }

    pub fn layout(&self, x: usize, y: usize, n: i64) -> &HomLayout {
        &self.space(x, y, n).layout
    }

    pub fn dim(&self, x: usize, y: usize, n: i64) -> usize {
        self.layout(x, y, n).len()
    }

    /// `D_n: Hom^n -> Hom^{n+1}`, of shape `dim(n+1) x dim(n)`.
    pub fn differential_matrix(&self, x: usize, y: usize, n: i64) -> SparseMatrix {
        let s = self.space(x, y, n);
        if s.layout.is_empty() {
            SparseMatrix::zeros(self.system.field(), self.dim(x, y, n + 1), 0)
        } else {
            s.d.clone()
        }
    }

    pub fn zero(&self, x: usize, y: usize, n: i64) -> HomVector {
        HomVector { x, y, n, v: vec![self.system.field().zero(); self.dim(x, y, n)] }
    }

    pub fn d(&self, f: &HomVector) -> HomVector {
        let s = self.space(f.x, f.y, f.n);
        let v = if s.layout.is_empty() { self.zero(f.x, f.y, f.n + 1).v } else { s.d.mul_vec(&f.v) };
        HomVector { x: f.x, y: f.y, n: f.n + 1, v }
    }

    /// `g . f`.
    pub fn compose(&self, g: &HomVector, f: &HomVector) -> Result<HomVector, ComplexError> {
        if f.y != g.x {
            return Err(ComplexError::Mismatch);
        }
        let (x, y, z) = (&self.objects[f.x], &self.objects[f.y], &self.objects[g.y]);
        let fl = self.layout(f.x, f.y, f.n);
        let gl = self.layout(g.x, g.y, g.n);
        let mut out = self.zero(f.x, g.y, f.n + g.n);
        let ol = self.layout(f.x, g.y, f.n + g.n);
        for (k, fv) in f.v.iter().enumerate() {
            if fv.is_zero() {
                continue;
            }
            let (i, r, c) = fl.coord(k);
            let j = i + f.n;
            for (r2, kg) in gl.summand_entries(j, r) {
                let gv = &g.v[kg];
                if gv.is_zero() {
                    continue;
                }
                let w = self.system.gamma(x.summands(i)[c], y.summands(j)[r], z.summands(j + g.n)[r2]);
                if w.is_zero() {
                    continue;
                }
                let t = ol.index_of(i, r2, c).expect("nonzero composite lies in a nonzero Hom space");
                out.v[t].add_assign_ref(&(&(gv * fv) * w));
            }
        }
        Ok(out)
    }

    pub fn to_chain_map(&self, f: &HomVector) -> ChainMap {
        let (x, y) = (&self.objects[f.x], &self.objects[f.y]);
        let mut blocks: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
        let layout = self.layout(f.x, f.y, f.n);
        for (k, v) in f.v.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let (i, r, c) = layout.coord(k);
            blocks
                .entry(i)
                .or_insert_with(|| SparseMatrix::zeros(self.system.field(), y.summands(i + f.n).len(), x.summands(i).len()))
                .set(r, c, v.clone());
        }
        let mut out = ChainMap::zero(x.clone(), y.clone(), f.n);
        for (i, m) in blocks {
            out.set_component(i, m).expect("layout coordinates are supported");
        }
        out
    }

    pub fn from_chain_map(&self, f: &ChainMap) -> Result<HomVector, ComplexError> {
        let x = self.object_index(f.source()).ok_or(ComplexError::Mismatch)?;
        let y = self.object_index(f.target()).ok_or(ComplexError::Mismatch)?;
        let mut out = self.zero(x, y, f.degree());
        let layout = self.layout(x, y, f.degree());
        for (i, m) in f.components() {
            for (r, c, v) in m.triplets() {
                let k = layout.index_of(i, r, c).ok_or(ComplexError::Shape)?;
                out.v[k] = v.clone();
            }
        }
        Ok(out)
    }

    /// Whether coordinate `k` of `Hom^n(x, y)` stays at least `margin`
    /// positions above the bottom of both complexes.
    pub fn trusted(&self, x: usize, y: usize, n: i64, k: usize, margin: i64) -> bool {
        let (i, _, _) = self.layout(x, y, n).coord(k);
        i >= self.objects[x].lo() + margin && i + n >= self.objects[y].lo() + margin
    }

    pub fn agrees_trusted(&self, a: &HomVector, b: &HomVector, margin: i64) -> bool {
        (a.x, a.y, a.n) == (b.x, b.y, b.n)
            && (0..a.v.len()).all(|k| !self.trusted(a.x, a.y, a.n, k, margin) || a.v[k] == b.v[k])
    }

    /// Dimension of `H^n(Hom(x, y))` in the truncated model.
    pub fn hom_homology(&self, x: usize, y: usize, n: i64) -> usize {
        let dim = self.dim(x, y, n);
        if dim == 0 {
            return 0;
        }
        let z = dim - rank(&self.differential_matrix(x, y, n));
        let b = if self.dim(x, y, n - 1) == 0 { 0 } else { rank(&self.differential_matrix(x, y, n - 1)) };
        z - b
    }

    /// Like [`hom_homology`](Self::hom_homology), but cycles supported only on
    /// untrusted coordinates count as zero. This removes the classes created
    /// by cutting the complexes off at the bottom of the window.
    pub fn trusted_homology(&self, x: usize, y: usize, n: i64, margin: i64) -> usize {
        let dim = self.dim(x, y, n);
        if dim == 0 {
            return 0;
        }
        let field = self.system.field();
        let d = self.differential_matrix(x, y, n);
        let z = dim - rank(&d);
        // cycles vanishing on trusted coordinates
        let mut stacked = SparseMatrix::zeros(field, d.rows() + dim, dim);
        stacked.add_block(0, 0, &d);
        for k in (0..dim).filter(|&k| self.trusted(x, y, n, k, margin)) {
            stacked.set(d.rows() + k, k, field.one());
        }
        let junk = rref(&stacked).kernel_basis;
        let below = self.dim(x, y, n - 1);
        let mut span = SparseMatrix::zeros(field, dim, below + junk.len());
        if below > 0 {
            span.add_block(0, 0, &self.differential_matrix(x, y, n - 1));
        }
        for (j, v) in junk.iter().enumerate() {
            for (r, a) in v.iter().enumerate() {
                if !a.is_zero() {
                    span.set(r, below + j, a.clone());
                }
            }
        }
        z - rank(&span)
    }
}

/// Vector-space dimension of the cohomology of a complex at positions
/// `lo + margin ..= hi`, computed as the sum over projectives `P_a` of
/// `H(Hom(P_a, c))`.
pub fn homology(c: &TruncatedComplex, margin: i64) -> Vec<(i64, usize)> {
    let sys = c.system().clone();
    let mut objects = Vec::new();
    for a in 0..sys.len() {
        objects.push((String::from(sys.name(a)), TruncatedComplex::projective(sys.name(a), sys.clone(), a)));
    }
    objects.push((String::from(c.name()), c.clone()));
    let cat = DgCategory::new(sys.clone(), objects).expect("same projective system");
    let target = sys.len();
    (c.lo() + margin..=c.hi())
        .map(|p| (p, (0..sys.len()).map(|a| cat.hom_homology(a, target, p)).sum()))
        .collect()
}
