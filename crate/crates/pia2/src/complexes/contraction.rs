use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{mat_mul, rref, Field, Scalar, SparseMatrix};

use super::hom::{DgCategory, HomVector};
use super::ComplexError;

/// Positions at the bottom of a window that are excluded from comparisons.
pub const TRUST_MARGIN: i64 = 2;

/// How the homotopy `H` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyMode {
    /// Top-down triangular solve against the differential, one summand per
    /// position; projection reads the top coordinate.
    Paper,
    /// Complements picked from rref pivots, then side conditions enforced.
    /// Cycles supported below [`TRUST_MARGIN`] are preferred as complements,
    /// so classes created by the cutoff stay at the bottom of the window, and
    /// the projection reads the highest coordinates that determine a class.
    Generic,
}

/// A named cohomology class in `Hom^degree(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec<S> {
    pub symbol: S,
    pub x: usize,
    pub y: usize,
    pub degree: i64,
}

#[derive(Clone, Debug)]
struct SpaceData<S> {
    // Hom^n -> Hom^{n-1}
    h: SparseMatrix,
    classes: Vec<(S, Vec<Scalar>, Vec<Scalar>)>,
}

/// Inclusion, projection and homotopy for every Hom complex of a [`DgCategory`].
#[derive(Clone, Debug)]
pub struct Contraction<S> {
    cat: DgCategory,
    mode: HomotopyMode,
    spaces: BTreeMap<(usize, usize, i64), SpaceData<S>>,
    reps: BTreeMap<S, HomVector>,
}

/// Solves `d h = rhs` row by row, rows in layout order. In each row, all
/// still-unknown coordinates but the one at the lowest position are set to
/// zero and that one is solved for; rows without unknowns are skipped.
fn greedy_solve(d: &SparseMatrix, rhs: &[Scalar], col_pos: &[i64], mut val: Vec<Option<Scalar>>) -> Vec<Scalar> {
    let field = d.field();
    for (row, b) in rhs.iter().enumerate() {
        let entries = d.row(row);
        let low = entries
            .iter()
            .filter(|(c, _)| val[*c].is_none())
            .min_by_key(|(c, _)| (col_pos[*c], core::cmp::Reverse(*c)));
        let Some(&(low, ref coeff)) = low else { continue };
        let mut acc = b.clone();
        for (c, v) in entries {
            if *c == low {
                continue;
            }
            let x = val[*c].get_or_insert_with(|| field.zero());
            acc = &acc - &(v * &*x);
        }
        val[low] = Some(&acc * &coeff.inv().expect("stored entries are nonzero"));
    }
    val.into_iter().map(|v| v.unwrap_or_else(|| field.zero())).collect()
}

fn positions(cat: &DgCategory, x: usize, y: usize, n: i64) -> Vec<i64> {
    cat.layout(x, y, n).coords().iter().map(|c| c.0).collect()
}

/// The cycle in `Hom^n(x, y)` with top coordinate 1, completed downwards by
/// solving `D_n r = 0` row by row.
pub fn kernel_completion(cat: &DgCategory, x: usize, y: usize, n: i64) -> Result<HomVector, ComplexError> {
    let top = top_coordinate(cat, x, y, n).ok_or(ComplexError::WindowTooSmall)?;
    let field = cat.system().field();
    let d = cat.differential_matrix(x, y, n);
    let mut preset = vec![None; cat.dim(x, y, n)];
    preset[top] = Some(field.one());
    let rhs = vec![field.zero(); d.rows()];
    let v = greedy_solve(&d, &rhs, &positions(cat, x, y, n), preset);
    Ok(HomVector { x, y, n, v })
}

/// Index of the coordinate landing on the top position of `y`, when unique.
pub fn top_coordinate(cat: &DgCategory, x: usize, y: usize, n: i64) -> Option<usize> {
    let top = cat.object(y).hi();
    let mut hits = cat.layout(x, y, n).coords().iter().enumerate().filter(|(_, c)| c.0 + n == top).map(|(k, _)| k);
    let first = hits.next()?;
    if hits.next().is_some() {
        return None;
    }
    Some(first)
}

fn dense_to_sparse(field: Field, rows: usize, cols: usize, entry: impl Fn(usize, usize) -> Scalar) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = entry(r, c);
            if !v.is_zero() {
                m.set(r, c, v);
            }
        }
    }
    m
}

fn mm(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    mat_mul(a, b).expect("compatible shapes")
}

impl<S: Clone + Ord> Contraction<S> {
    pub fn build(cat: DgCategory, classes: Vec<ClassSpec<S>>, mode: HomotopyMode) -> Result<Self, ComplexError> {
        let mut reps = BTreeMap::new();
        let mut by_space: BTreeMap<(usize, usize, i64), Vec<(S, HomVector)>> = BTreeMap::new();
        for spec in classes {
            let r = kernel_completion(&cat, spec.x, spec.y, spec.degree)?;
            if !cat.d(&r).is_zero() {
                return Err(ComplexError::NotACycle);
            }
            reps.insert(spec.symbol.clone(), r.clone());
            by_space.entry((spec.x, spec.y, spec.degree)).or_default().push((spec.symbol, r));
        }
        let mut spaces = BTreeMap::new();
        for x in 0..cat.len() {
            for y in 0..cat.len() {
                let degrees: Vec<i64> = cat.degrees(x, y).collect();
                // generic mode needs the pivot complement of degree n - 1 first
                for &n in &degrees {
                    let named = by_space.remove(&(x, y, n)).unwrap_or_default();
                    let data = match mode {
                        HomotopyMode::Paper => paper_space(&cat, x, y, n, named)?,
                        HomotopyMode::Generic => generic_space(&cat, x, y, n, named)?,
                    };
                    spaces.insert((x, y, n), data);
                }
            }
        }
        if !by_space.is_empty() {
            return Err(ComplexError::WindowTooSmall);
        }
        if mode == HomotopyMode::Generic {
            side_condition(&cat, &mut spaces);
        }
        Ok(Contraction { cat, mode, spaces, reps })
    }

    pub fn category(&self) -> &DgCategory {
        &self.cat
    }

    pub fn mode(&self) -> HomotopyMode {
        self.mode
    }

    pub fn include(&self, s: &S) -> Option<&HomVector> {
        self.reps.get(s)
    }

    pub fn classes(&self) -> impl Iterator<Item = (&S, &HomVector)> {
        self.reps.iter()
    }

    pub fn h(&self, f: &HomVector) -> HomVector {
        match self.spaces.get(&(f.x, f.y, f.n)) {
            Some(s) => HomVector { x: f.x, y: f.y, n: f.n - 1, v: s.h.mul_vec(&f.v) },
            None => self.cat.zero(f.x, f.y, f.n - 1),
        }
    }

    pub fn p(&self, f: &HomVector) -> Vec<(S, Scalar)> {
        let Some(s) = self.spaces.get(&(f.x, f.y, f.n)) else { return Vec::new() };
        s.classes
            .iter()
            .filter_map(|(sym, _, row)| {
                let c = crate::linalg::dot(row, &f.v);
                (!c.is_zero()).then(|| (sym.clone(), c))
            })
            .collect()
    }

    /// `i p f`.
    pub fn ip(&self, f: &HomVector) -> HomVector {
        let mut out = self.cat.zero(f.x, f.y, f.n);
        for (s, c) in self.p(f) {
            out.add_assign(&self.reps[&s].scale(&c));
        }
        out
    }

    /// Checks `p i = 1`, `dH + Hd = 1 - ip`, `H^2 = 0`, `H i = 0` and `p H = 0`
    /// on coordinates at least `margin` above the bottom of the window.
    pub fn verify(&self, margin: i64) -> ContractionReport {
        let mut report = ContractionReport::default();
        let field = self.cat.system().field();
        for (sym, r) in &self.reps {
            let p = self.p(r);
            let ok = p.len() == 1 && p[0].0 == *sym && p[0].1.is_one();
            if !ok {
                report.pi_identity.push(format!("class in Hom^{}({}, {})", r.n, self.cat.name(r.x), self.cat.name(r.y)));
            }
            if !self.h(r).is_zero() {
                report.side_conditions.push(format!("H i != 0 in Hom^{}({}, {})", r.n, self.cat.name(r.x), self.cat.name(r.y)));
            }
        }
        for &(x, y, n) in self.spaces.keys() {
            let dim = self.cat.dim(x, y, n);
            for k in 0..dim {
                if !self.cat.trusted(x, y, n, k, margin) {
                    continue;
                }
                let mut e = self.cat.zero(x, y, n);
                e.v[k] = field.one();
                let hf = self.h(&e);
                let mut lhs = self.cat.d(&hf);
                lhs.add_assign(&self.h(&self.cat.d(&e)));
                lhs.add_assign(&self.ip(&e));
                let here = || format!("Hom^{n}({}, {}) coordinate {k}", self.cat.name(x), self.cat.name(y));
                if !self.cat.agrees_trusted(&lhs, &e, margin) {
                    report.homotopy_formula.push(here());
                }
                if !self.cat.agrees_trusted(&self.h(&hf), &self.cat.zero(x, y, n - 2), margin) {
                    report.h_squared.push(here());
                }
                if !self.p(&hf).is_empty() {
                    report.side_conditions.push(format!("p H != 0 at {}", here()));
                }
            }
        }
        report
    }
}

/// Violations found by [`Contraction::verify`], one message per failing spot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionReport {
    pub pi_identity: Vec<String>,
    pub homotopy_formula: Vec<String>,
    pub h_squared: Vec<String>,
    pub side_conditions: Vec<String>,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.pi_identity.is_empty()
            && self.homotopy_formula.is_empty()
            && self.h_squared.is_empty()
            && self.side_conditions.is_empty()
    }
}

fn paper_space<S>(
    cat: &DgCategory,
    x: usize,
    y: usize,
    n: i64,
    named: Vec<(S, HomVector)>,
) -> Result<SpaceData<S>, ComplexError> {
    let field = cat.system().field();
    let dim = cat.dim(x, y, n);
    let below = cat.dim(x, y, n - 1);
    if named.len() > 1 {
        return Err(ComplexError::AmbiguousProjection);
    }
    let mut classes = Vec::new();
    for (s, r) in named {
        let top = top_coordinate(cat, x, y, n).ok_or(ComplexError::WindowTooSmall)?;
        let mut row = vec![field.zero(); dim];
        row[top] = r.v[top].inv().ok_or(ComplexError::NotACycle)?;
        classes.push((s, r.v, row));
    }
    let mut h = SparseMatrix::zeros(field, below, dim);
    if below > 0 {
        let d = cat.differential_matrix(x, y, n - 1);
        let pos = positions(cat, x, y, n - 1);
        for k in 0..dim {
            let mut e = vec![field.zero(); dim];
            e[k] = field.one();
            let col = greedy_solve(&d, &e, &pos, vec![None; below]);
            for (r, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    h.set(r, k, v);
                }
            }
        }
    }
    Ok(SpaceData { h, classes })
}

fn generic_space<S>(
    cat: &DgCategory,
    x: usize,
    y: usize,
    n: i64,
    named: Vec<(S, HomVector)>,
) -> Result<SpaceData<S>, ComplexError> {
    let field = cat.system().field();
    let dim = cat.dim(x, y, n);
    let below = cat.dim(x, y, n - 1);
    let d_out = cat.differential_matrix(x, y, n);
    let out_rref = rref(&d_out);
    let kernel = out_rref.kernel_basis;
    let w_here = out_rref.pivot_cols;
    let w_below: Vec<usize> = if below > 0 { rref(&cat.differential_matrix(x, y, n - 1)).pivot_cols } else { Vec::new() };
    let d_in = cat.differential_matrix(x, y, n - 1);
    let unit = |k: usize| -> Vec<Scalar> { (0..dim).map(|j| if j == k { field.one() } else { field.zero() }).collect() };
    // cycles vanishing on trusted coordinates: classes made by the cutoff
    let mut stacked = SparseMatrix::zeros(field, d_out.rows() + dim, dim);
    stacked.add_block(0, 0, &d_out);
    for k in (0..dim).filter(|&k| cat.trusted(x, y, n, k, TRUST_MARGIN)) {
        stacked.set(d_out.rows() + k, k, field.one());
    }
    let junk = rref(&stacked).kernel_basis;
    let mut cols: Vec<Vec<Scalar>> = named.iter().map(|(_, r)| r.v.clone()).collect();
    let n_r = cols.len();
    for &k in &w_below {
        let mut e = vec![field.zero(); below];
        e[k] = field.one();
        cols.push(d_in.mul_vec(&e));
    }
    let n_b = w_below.len();
    // extend R + B to a basis of the cycles, cutoff classes first
    let candidates: Vec<Vec<Scalar>> = cols.iter().chain(junk.iter()).chain(kernel.iter()).cloned().collect();
    let cand = dense_to_sparse(field, dim, candidates.len(), |r, c| candidates[c][r].clone());
    let pivots = rref(&cand).pivot_cols;
    if pivots.iter().take_while(|&&p| p < n_r + n_b).count() != n_r + n_b {
        return Err(ComplexError::DependentClasses);
    }
    for &p in pivots.iter().filter(|&&p| p >= n_r + n_b) {
        cols.push(candidates[p].clone());
    }
    for &k in &w_here {
        cols.push(unit(k));
    }
    if cols.len() != dim {
        return Err(ComplexError::Solver);
    }
    let basis = dense_to_sparse(field, dim, dim, |r, c| cols[c][r].clone());
    let inv_data = rref(&basis);
    if inv_data.rank != dim {
        return Err(ComplexError::Solver);
    }
    let inv = inv_data.transform;
    let rows = top_projection(cat, x, y, n, &named, &d_in)?;
    let classes = named.into_iter().zip(rows).map(|((s, r), row)| (s, r.v, row)).collect();
    let mut h = SparseMatrix::zeros(field, below, dim);
    for (b, &k) in w_below.iter().enumerate() {
        for (c, v) in inv.row(n_r + b) {
            h.set(k, *c, v.clone());
        }
    }
    Ok(SpaceData { h, classes })
}

/// Rows of the projection supported on as few of the highest coordinates as
/// possible: dual to the named classes and zero on boundaries. Truncation
/// errors live at the bottom of the window and move up only a few positions
/// per operation, so reading from the top keeps them out of `p`.
fn top_projection<S>(
    cat: &DgCategory,
    x: usize,
    y: usize,
    n: i64,
    named: &[(S, HomVector)],
    d_in: &SparseMatrix,
) -> Result<Vec<Vec<Scalar>>, ComplexError> {
    let field = cat.system().field();
    let dim = cat.dim(x, y, n);
    if named.is_empty() {
        return Ok(Vec::new());
    }
    let (lo_x, lo_y) = (cat.object(x).lo(), cat.object(y).lo());
    let depth: Vec<i64> = (0..dim)
        .map(|k| {
            let (i, _, _) = cat.layout(x, y, n).coord(k);
            (i - lo_x).min(i + n - lo_y)
        })
        .collect();
    let mut levels = depth.clone();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();
    let below = d_in.cols();
    for t in levels {
        let support: Vec<usize> = (0..dim).filter(|&k| depth[k] >= t).collect();
        // constraints: one row per class, one per boundary generator
        let mut a = SparseMatrix::zeros(field, named.len() + below, support.len());
        for (j, (_, r)) in named.iter().enumerate() {
            for (c, &k) in support.iter().enumerate() {
                if !r.v[k].is_zero() {
                    a.set(j, c, r.v[k].clone());
                }
            }
        }
        for (r, row) in (0..d_in.rows()).map(|r| (r, d_in.row(r))) {
            if let Some(c) = support.iter().position(|&k| k == r) {
                for (b, v) in row {
                    a.set(named.len() + b, c, v.clone());
                }
            }
        }
        let red = rref(&a);
        let rows: Option<Vec<Vec<Scalar>>> = (0..named.len())
            .map(|j| {
                let mut e = vec![field.zero(); named.len() + below];
                e[j] = field.one();
                red.solve(&e).map(|u| {
                    let mut row = vec![field.zero(); dim];
                    for (c, &k) in support.iter().enumerate() {
                        row[k] = u[c].clone();
                    }
                    row
                })
            })
            .collect();
        if let Some(rows) = rows {
            return Ok(rows);
        }
    }
    Err(ComplexError::Solver)
}

fn ip_matrix<S>(field: Field, dim: usize, data: Option<&SpaceData<S>>) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(field, dim, dim);
    if let Some(d) = data {
        for (_, rep, row) in &d.classes {
            for (r, a) in rep.iter().enumerate() {
                for (c, b) in row.iter().enumerate() {
                    m.add_at(r, c, &(a * b));
                }
            }
        }
    }
    m
}

/// `H <- (1 - ip) H (1 - ip)`, then `H <- H d H`.
fn side_condition<S: Clone>(cat: &DgCategory, spaces: &mut BTreeMap<(usize, usize, i64), SpaceData<S>>) {
    let field = cat.system().field();
    let keys: Vec<(usize, usize, i64)> = spaces.keys().copied().collect();
    let mut first = BTreeMap::new();
    for &(x, y, n) in &keys {
        let (dim, below) = (cat.dim(x, y, n), cat.dim(x, y, n - 1));
        let id_here = SparseMatrix::identity(field, dim);
        let id_below = SparseMatrix::identity(field, below);
        let q_here = id_here.sub(&ip_matrix(field, dim, spaces.get(&(x, y, n)))).expect("square");
        let q_below = id_below.sub(&ip_matrix(field, below, spaces.get(&(x, y, n - 1)))).expect("square");
        let h1 = mm(&mm(&q_below, &spaces[&(x, y, n)].h), &q_here);
        first.insert((x, y, n), h1);
    }
    for &(x, y, n) in &keys {
        let h1 = &first[&(x, y, n)];
        let d = cat.differential_matrix(x, y, n - 1);
        let h2 = if h1.rows() == 0 { h1.clone() } else { mm(&mm(h1, &d), h1) };
        spaces.get_mut(&(x, y, n)).expect("key present").h = h2;
    }
}
