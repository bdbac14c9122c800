use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{Scalar, SparseMatrix};

use super::system::ProjectiveSystem;
use super::ComplexError;

/// Bounded complex of projectives on positions `lo..=hi`, cohomologically graded.
/// Each position holds a list of projective labels; `diff[k]` maps position
/// `lo + k` to `lo + k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedComplex {
    name: String,
    system: Arc<ProjectiveSystem>,
    lo: i64,
    labels: Vec<Vec<usize>>,
    diff: Vec<SparseMatrix>,
}

impl TruncatedComplex {
    pub fn new(
        name: impl Into<String>,
        system: Arc<ProjectiveSystem>,
        lo: i64,
        labels: Vec<Vec<usize>>,
        diff: Vec<SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        if labels.is_empty() || diff.len() + 1 != labels.len() {
            return Err(ComplexError::Shape);
        }
        for (k, d) in diff.iter().enumerate() {
            if d.field() != system.field() || !system.supports(d, &labels[k], &labels[k + 1]) {
                return Err(ComplexError::Shape);
            }
        }
        let c = TruncatedComplex { name: name.into(), system, lo, labels, diff };
        for p in c.lo..c.hi() - 1 {
            let dd = c.system.compose_blocks(
                &c.diff[(p + 1 - c.lo) as usize],
                &c.diff[(p - c.lo) as usize],
                c.summands(p),
                c.summands(p + 1),
                c.summands(p + 2),
            );
            if !dd.is_zero() {
                return Err(ComplexError::NotAComplex(p));
            }
        }
        Ok(c)
    }

    /// A single projective placed at position 0.
    pub fn projective(name: impl Into<String>, system: Arc<ProjectiveSystem>, label: usize) -> Self {
        TruncatedComplex { name: name.into(), system, lo: 0, labels: vec![vec![label]], diff: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn system(&self) -> &Arc<ProjectiveSystem> {
        &self.system
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.labels.len() as i64 - 1
    }

    pub fn contains(&self, p: i64) -> bool {
        p >= self.lo && p <= self.hi()
    }

    pub fn summands(&self, p: i64) -> &[usize] {
        if self.contains(p) {
            &self.labels[(p - self.lo) as usize]
        } else {
            &[]
        }
    }

    /// Differential from `p` to `p + 1`, when both positions exist.
    pub fn differential(&self, p: i64) -> Option<&SparseMatrix> {
        if p >= self.lo && p < self.hi() {
            Some(&self.diff[(p - self.lo) as usize])
        } else {
            None
        }
    }
}

fn same(a: &Arc<TruncatedComplex>, b: &Arc<TruncatedComplex>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Graded map `source -> target` of degree `degree`; component `i` maps
/// position `i` of the source to position `i + degree` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<TruncatedComplex>,
    target: Arc<TruncatedComplex>,
    degree: i64,
    comps: BTreeMap<i64, SparseMatrix>,
}

impl ChainMap {
    pub fn zero(source: Arc<TruncatedComplex>, target: Arc<TruncatedComplex>, degree: i64) -> Self {
        ChainMap { source, target, degree, comps: BTreeMap::new() }
    }

    pub fn identity(c: Arc<TruncatedComplex>) -> Self {
        let mut f = ChainMap::zero(c.clone(), c.clone(), 0);
        let field = c.system().field();
        for p in c.lo()..=c.hi() {
            let n = c.summands(p).len();
            f.comps.insert(p, SparseMatrix::identity(field, n));
        }
        f
    }

    pub fn source(&self) -> &Arc<TruncatedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedComplex> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &SparseMatrix)> {
        self.comps.iter().map(|(i, m)| (*i, m))
    }

    pub fn component(&self, i: i64) -> Option<&SparseMatrix> {
        self.comps.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn set_component(&mut self, i: i64, m: SparseMatrix) -> Result<(), ComplexError> {
        let from = self.source.summands(i);
        let to = self.target.summands(i + self.degree);
        if !self.source.contains(i) || !self.target.contains(i + self.degree) {
            return Err(ComplexError::OutsideWindow(i));
        }
        if !self.source.system().supports(&m, from, to) {
            return Err(ComplexError::Shape);
        }
        if m.is_zero() {
            self.comps.remove(&i);
        } else {
            self.comps.insert(i, m);
        }
        Ok(())
    }

    fn add_component(&mut self, i: i64, m: SparseMatrix) {
        if m.is_zero() {
            return;
        }
        let merged = match self.comps.remove(&i) {
            Some(old) => old.add(&m).expect("matching shapes"),
            None => m,
        };
        if !merged.is_zero() {
            self.comps.insert(i, merged);
        }
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap, ComplexError> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) || self.degree != other.degree {
            return Err(ComplexError::Mismatch);
        }
        let mut out = self.clone();
        for (i, m) in &other.comps {
            out.add_component(*i, m.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        let mut out = ChainMap::zero(self.source.clone(), self.target.clone(), self.degree);
        for (i, m) in &self.comps {
            out.add_component(*i, m.scale(s));
        }
        out
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap, ComplexError> {
        self.add(&other.scale(&-self.source.system().field().one()))
    }

    /// `(df)_i = d_{i+n} f_i - (-1)^n f_{i+1} d_i`.
    pub fn dg_differential(&self) -> ChainMap {
        let (x, y, n) = (&self.source, &self.target, self.degree);
        let sys = x.system();
        let field = sys.field();
        let sign = -field.sign(n);
        let mut out = ChainMap::zero(x.clone(), y.clone(), n + 1);
        for i in x.lo()..=x.hi() {
            if !y.contains(i + n + 1) {
                continue;
            }
            let (xi, yn, yn1) = (x.summands(i), y.summands(i + n), y.summands(i + n + 1));
            if let (Some(f), Some(d)) = (self.component(i), y.differential(i + n)) {
                out.add_component(i, sys.compose_blocks(d, f, xi, yn, yn1));
            }
            if let (Some(d), Some(f)) = (x.differential(i), self.component(i + 1)) {
                let term = sys.compose_blocks(f, d, xi, x.summands(i + 1), yn1);
                out.add_component(i, term.scale(&sign));
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.dg_differential().is_zero()
    }

    /// `g . f`, componentwise `g_{i+|f|} f_i`.
    pub fn dg_compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap, ComplexError> {
        if !same(&f.target, &g.source) {
            return Err(ComplexError::Mismatch);
        }
        let sys = f.source.system();
        let mut out = ChainMap::zero(f.source.clone(), g.target.clone(), f.degree + g.degree);
        for (i, fm) in &f.comps {
            let j = i + f.degree;
            if let Some(gm) = g.comps.get(&j) {
                let c = sys.compose_blocks(
                    gm,
                    fm,
                    f.source.summands(*i),
                    f.target.summands(j),
                    g.target.summands(j + g.degree),
                );
                out.add_component(*i, c);
            }
        }
        Ok(out)
    }

    /// Equality on components whose source and target positions both lie at
    /// least `margin` above the bottom of their complexes.
    pub fn agrees_above(&self, other: &ChainMap, margin: i64) -> bool {
        if self.degree != other.degree {
            return false;
        }
        let keep = |i: i64| i >= self.source.lo() + margin && i + self.degree >= self.target.lo() + margin;
        let mut keys: Vec<i64> = self.comps.keys().chain(other.comps.keys()).copied().filter(|i| keep(*i)).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.iter().all(|i| self.comps.get(i) == other.comps.get(i))
    }

    pub fn describe(&self) -> String {
        format!("{} -> {} [{}]", self.source.name(), self.target.name(), self.degree)
    }
}

/// Mapping cone of a degree-0 cycle `f: X -> Y`: position `p` holds
/// `X^{p+1} ⊕ Y^p` with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> Result<TruncatedComplex, ComplexError> {
    if f.degree() != 0 {
        return Err(ComplexError::Degree(f.degree()));
    }
    if !f.is_cycle() {
        return Err(ComplexError::NotACycle);
    }
    let (x, y) = (f.source(), f.target());
    let sys = x.system().clone();
    let field = sys.field();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let mut labels = Vec::new();
    for p in lo..=hi {
        let mut l = x.summands(p + 1).to_vec();
        l.extend_from_slice(y.summands(p));
        labels.push(l);
    }
    let mut diff = Vec::new();
    for p in lo..hi {
        let (nx0, nx1) = (x.summands(p + 1).len(), x.summands(p + 2).len());
        let (ny0, ny1) = (y.summands(p).len(), y.summands(p + 1).len());
        let mut d = SparseMatrix::zeros(field, nx1 + ny1, nx0 + ny0);
        if let Some(dx) = x.differential(p + 1) {
            d.add_block(0, 0, &dx.scale(&-field.one()));
        }
        if let Some(fm) = f.component(p + 1) {
            d.add_block(nx1, 0, fm);
        }
        if let Some(dy) = y.differential(p) {
            d.add_block(nx1, nx0, dy);
        }
        diff.push(d);
    }
    TruncatedComplex::new(format!("cone({})", f.describe()), sys, lo, labels, diff)
}
