use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{Field, Scalar};

use super::{inner_edge, leaf_edge, vertex, Backend, Edge, Morphism, TransferError};

/// Scalar combination of basis symbols, sorted, without zero terms.
pub type LinComb<S> = Vec<(S, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMeta {
    pub arity_max: usize,
    pub degree_max: i64,
    pub field: Field,
    pub backend: String,
    pub homotopy: String,
    pub window: Option<i64>,
}

/// Nonzero operations `m_d(f_d, ..., f_1)`, keyed by the input tuple as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationTable<S: Ord> {
    pub meta: TableMeta,
    entries: BTreeMap<Vec<S>, LinComb<S>>,
}

impl<S: Morphism> OperationTable<S> {
    pub fn new(meta: TableMeta) -> Self {
        OperationTable { meta, entries: BTreeMap::new() }
    }

    /// Stores `out` under `inputs`; empty outputs are dropped.
    pub fn insert(&mut self, inputs: Vec<S>, out: LinComb<S>) {
        if out.is_empty() {
            self.entries.remove(&inputs);
        } else {
            self.entries.insert(inputs, out);
        }
    }

    pub fn get(&self, inputs: &[S]) -> Option<&LinComb<S>> {
        self.entries.get(inputs)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<S>, &LinComb<S>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count_by_arity(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for k in self.entries.keys() {
            *out.entry(k.len()).or_insert(0) += 1;
        }
        out
    }

    /// Entries whose inputs all satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(&S) -> bool) -> Self {
        let entries = self.entries.iter().filter(|(k, _)| k.iter().all(&keep)).map(|(k, v)| (k.clone(), v.clone())).collect();
        OperationTable { meta: self.meta.clone(), entries }
    }

    /// Relabels every symbol, inputs and outputs alike.
    pub fn map_symbols(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = OperationTable::new(self.meta.clone());
        for (k, v) in &self.entries {
            let mut lc: LinComb<S> = v.iter().map(|(s, c)| (f(s), c.clone())).collect();
            lc.sort_by(|a, b| a.0.cmp(&b.0));
            out.insert(k.iter().map(&f).collect(), lc);
        }
        out
    }

    /// Entries violating `|out| = sum |in| + 2 - d`.
    pub fn degree_violations(&self) -> Vec<Vec<S>> {
        self.entries
            .iter()
            .filter(|(k, v)| {
                let want = super::sum_degree(k) + 2 - k.len() as i64;
                v.iter().any(|(s, _)| s.degree() != want)
            })
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// All nonzero operations on tuples ending in `first` (the input applied
/// first), of arity `2..=arity_max`, built by extending to the left with
/// `symbols`. Values of every sub-slice of the current tuple are kept on a
/// stack, so each extension costs one pass over its new slices.
pub fn scan_from<B: Backend>(
    b: &B,
    symbols: &[B::Sym],
    first: &B::Sym,
    arity_max: usize,
    cap: usize,
) -> Result<Vec<(Vec<B::Sym>, LinComb<B::Sym>)>, TransferError> {
    struct Scan<'s, B: Backend> {
        b: &'s B,
        symbols: &'s [B::Sym],
        arity_max: usize,
        cap: usize,
        visited: usize,
        stack: Vec<B::Sym>,
        // edges[e][a]: the slice from stack position a to e
        edges: Vec<Vec<Edge<B::Elem>>>,
        found: Vec<(Vec<B::Sym>, super::LinComb<B::Sym>)>,
    }

    impl<B: Backend> Scan<'_, B> {
        fn push(&mut self, g: &B::Sym) -> Result<(), TransferError> {
            let d = self.stack.len();
            self.stack.push(g.clone());
            let mut row: Vec<Option<Edge<B::Elem>>> = vec![None; d + 1];
            row[d] = Some(leaf_edge(self.b, g)?);
            let mut deg = g.degree();
            for a in (0..d).rev() {
                deg += self.stack[a].degree();
                let mut lambda = None;
                for s in a..d {
                    let left = row[s + 1].as_ref().expect("filled above");
                    lambda = vertex(self.b, lambda, left, &self.edges[s][a]);
                }
                if a == 0 {
                    self.visited += 1;
                    if self.visited > self.cap {
                        return Err(TransferError::TupleCap(self.cap));
                    }
                    if let Some(x) = &lambda {
                        let out = self.b.project(x);
                        if !out.is_empty() {
                            self.found.push((self.stack.iter().rev().cloned().collect(), out));
                        }
                    }
                }
                let len = (d - a + 1) as i64;
                row[a] = Some(inner_edge(self.b, lambda.as_ref(), deg + 2 - len));
            }
            self.edges.push(row.into_iter().map(|e| e.expect("filled")).collect());
            Ok(())
        }

        fn pop(&mut self) {
            self.stack.pop();
            self.edges.pop();
        }

        fn extend(&mut self) -> Result<(), TransferError> {
            if self.stack.len() >= self.arity_max {
                return Ok(());
            }
            let end = self.stack.last().expect("nonempty").target();
            for g in self.symbols.iter().filter(|g| g.source() == end) {
                self.push(g)?;
                self.extend()?;
                self.pop();
            }
            Ok(())
        }
    }

    let mut scan = Scan { b, symbols, arity_max, cap, visited: 0, stack: Vec::new(), edges: Vec::new(), found: Vec::new() };
    scan.push(first)?;
    scan.extend()?;
    Ok(scan.found)
}

/// Exhaustive table over composable tuples drawn from `symbols`, which should
/// exclude identities and respect the degree bound recorded in `meta`. The
/// tuple cap applies to each final input separately.
pub fn compute_operation_table<B: Backend>(
    b: &B,
    symbols: &[B::Sym],
    meta: TableMeta,
    cap: usize,
) -> Result<OperationTable<B::Sym>, TransferError> {
    let mut table = OperationTable::new(meta);
    for f in symbols {
        let found = scan_from(b, symbols, f, table.meta.arity_max, cap)?;
        for (k, v) in found {
            table.insert(k, v);
        }
    }
    Ok(table)
}
