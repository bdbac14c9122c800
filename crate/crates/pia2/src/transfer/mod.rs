//! Homotopy transfer: the higher operations of the minimal model as sums over
//! planar binary trees with `i` at the leaves, composition at the vertices,
//! the homotopy on inner edges and `p` at the root.
//!
//! Over Q the recursion uses signed operations: `m2(a, b) = (-1)^|b| a . b` and
//! the edge map `x -> -(-1)^|x| H(x)`, which is a homotopy for the signed
//! differential `(-1)^|x| dx`. With these, the result satisfies the A-infinity
//! relations with sign exponent `|f_1| + ... + |f_n| - n`.

mod backend;
mod table;
mod trees;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::linalg::{Field, Scalar};

pub use backend::{Backend, MatrixBackend, SymbolicBackend};
pub use table::{compute_operation_table, scan_from, LinComb, OperationTable, TableMeta};
pub use trees::{catalan, enumerate_trees, TreeShape};

/// A basis morphism with endpoints and degree.
pub trait Morphism: Clone + Ord + fmt::Debug + fmt::Display {
    type Obj: Clone + Ord + fmt::Debug + fmt::Display;

    fn source(&self) -> Self::Obj;
    fn target(&self) -> Self::Obj;
    fn degree(&self) -> i64;
    fn is_identity(&self) -> bool;
    fn identity(o: Self::Obj) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("trees need at least two leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("inputs are not composable at position {0}")]
    NotComposable(usize),
    #[error("no inclusion for {0}")]
    UnknownSymbol(String),
    #[error("tree has {tree} leaves but {inputs} inputs were given")]
    Arity { tree: usize, inputs: usize },
    #[error("scan exceeded the cap of {0} tuples")]
    TupleCap(usize),
}

/// Inputs are written `f_d, ..., f_1`: `f_1` is applied first.
pub fn check_composable<S: Morphism>(inputs: &[S]) -> Result<(), TransferError> {
    for (k, w) in inputs.windows(2).enumerate() {
        if w[0].source() != w[1].target() {
            return Err(TransferError::NotComposable(k));
        }
    }
    Ok(())
}

pub(crate) fn sum_degree<S: Morphism>(inputs: &[S]) -> i64 {
    inputs.iter().map(Morphism::degree).sum()
}

/// Value of a subtree after its outgoing edge: the inclusion for a leaf, the
/// signed homotopy otherwise. Carries its degree for the signs.
#[derive(Clone, Debug)]
pub(crate) struct Edge<E> {
    pub value: Option<E>,
    pub degree: i64,
}

pub(crate) fn leaf_edge<B: Backend>(b: &B, s: &B::Sym) -> Result<Edge<B::Elem>, TransferError> {
    Ok(Edge { value: Some(b.leaf(s)?), degree: s.degree() })
}

/// Signed edge map on an inner node of degree `degree`.
pub(crate) fn inner_edge<B: Backend>(b: &B, lambda: Option<&B::Elem>, degree: i64) -> Edge<B::Elem> {
    let field = b.field();
    let value = lambda.and_then(|x| b.homotopy(x)).map(|h| {
        let s = -field.sign(degree);
        if s.is_one() {
            h
        } else {
            b.scale(&h, &s)
        }
    });
    Edge { value, degree: degree - 1 }
}

/// Signed vertex `m2(left, right)`, added into `acc`.
pub(crate) fn vertex<B: Backend>(b: &B, acc: Option<B::Elem>, left: &Edge<B::Elem>, right: &Edge<B::Elem>) -> Option<B::Elem> {
    let (Some(l), Some(r)) = (&left.value, &right.value) else { return acc };
    let Some(mut c) = b.compose(l, r) else { return acc };
    let s = b.field().sign(right.degree);
    if !s.is_one() {
        c = b.scale(&c, &s);
    }
    match acc {
        None => Some(c),
        Some(a) => b.add(a, &c),
    }
}

/// Evaluates a single decorated tree, `p` applied at the root.
pub fn evaluate_tree<B: Backend>(b: &B, tree: &TreeShape, inputs: &[B::Sym]) -> Result<LinComb<B::Sym>, TransferError> {
    if tree.leaves() != inputs.len() {
        return Err(TransferError::Arity { tree: tree.leaves(), inputs: inputs.len() });
    }
    check_composable(inputs)?;
    fn go<B: Backend>(b: &B, t: &TreeShape, inputs: &[B::Sym]) -> Result<Option<B::Elem>, TransferError> {
        let TreeShape::Node(l, r) = t else { return Ok(Some(b.leaf(&inputs[0])?)) };
        let k = l.leaves();
        let edge = |t: &TreeShape, part: &[B::Sym]| -> Result<Edge<B::Elem>, TransferError> {
            if t.is_leaf() {
                return leaf_edge(b, &part[0]);
            }
            let v = go(b, t, part)?;
            Ok(inner_edge(b, v.as_ref(), sum_degree(part) + 2 - part.len() as i64))
        };
        let (le, re) = (edge(l, &inputs[..k])?, edge(r, &inputs[k..])?);
        Ok(vertex(b, None, &le, &re))
    }
    let v = go(b, tree, inputs)?;
    Ok(v.map(|x| b.project(&x)).unwrap_or_default())
}

/// Memoized sum over all trees, keyed by input slices.
pub struct Transfer<'a, B: Backend> {
    backend: &'a B,
    memo: RefCell<BTreeMap<Vec<B::Sym>, Option<B::Elem>>>,
}

impl<'a, B: Backend> Transfer<'a, B> {
    pub fn new(backend: &'a B) -> Self {
        Transfer { backend, memo: RefCell::new(BTreeMap::new()) }
    }

    pub fn backend(&self) -> &'a B {
        self.backend
    }

    pub fn field(&self) -> Field {
        self.backend.field()
    }

    pub fn clear(&self) {
        self.memo.borrow_mut().clear();
    }

    fn lambda(&self, inputs: &[B::Sym]) -> Result<Option<B::Elem>, TransferError> {
        if inputs.len() == 1 {
            return Ok(Some(self.backend.leaf(&inputs[0])?));
        }
        if let Some(v) = self.memo.borrow().get(inputs) {
            return Ok(v.clone());
        }
        let mut acc = None;
        for k in 1..inputs.len() {
            let (l, r) = inputs.split_at(k);
            let le = self.edge(l)?;
            if le.value.is_none() {
                continue;
            }
            let re = self.edge(r)?;
            acc = vertex(self.backend, acc, &le, &re);
        }
        self.memo.borrow_mut().insert(inputs.to_vec(), acc.clone());
        Ok(acc)
    }

    fn edge(&self, part: &[B::Sym]) -> Result<Edge<B::Elem>, TransferError> {
        if part.len() == 1 {
            return leaf_edge(self.backend, &part[0]);
        }
        let v = self.lambda(part)?;
        Ok(inner_edge(self.backend, v.as_ref(), sum_degree(part) + 2 - part.len() as i64))
    }

    /// `m_d(f_d, ..., f_1)` for `d >= 2`.
    pub fn m(&self, inputs: &[B::Sym]) -> Result<LinComb<B::Sym>, TransferError> {
        if inputs.len() < 2 {
            return Err(TransferError::TooFewLeaves(inputs.len()));
        }
        check_composable(inputs)?;
        Ok(self.lambda(inputs)?.map(|x| self.backend.project(&x)).unwrap_or_default())
    }
}

/// `m_d = sum over trees`, each tree evaluated separately.
pub fn transfer_mn<B: Backend>(b: &B, inputs: &[B::Sym]) -> Result<LinComb<B::Sym>, TransferError> {
    let field = b.field();
    let mut total: BTreeMap<B::Sym, Scalar> = BTreeMap::new();
    for t in enumerate_trees(inputs.len())? {
        for (s, c) in evaluate_tree(b, &t, inputs)? {
            total.entry(s).or_insert_with(|| field.zero()).add_assign_ref(&c);
        }
    }
    Ok(total.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests;
