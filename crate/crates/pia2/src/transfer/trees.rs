use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::TransferError;

/// Planar rooted binary tree; leaves are read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn node(l: TreeShape, r: TreeShape) -> TreeShape {
        TreeShape::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeShape::Leaf)
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeShape::Leaf => write!(f, "*"),
            TreeShape::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

fn all_shapes(n: usize) -> Vec<TreeShape> {
    if n == 1 {
        return vec![TreeShape::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        let rights = all_shapes(n - k);
        for l in all_shapes(k) {
            for r in &rights {
                out.push(TreeShape::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// All shapes with `n` leaves, ordered by left subtree size, then recursively.
pub fn enumerate_trees(n: usize) -> Result<Vec<TreeShape>, TransferError> {
    if n < 2 {
        return Err(TransferError::TooFewLeaves(n));
    }
    Ok(all_shapes(n))
}

/// `C_n = binom(2n, n) / (n + 1)`, via the product formula.
pub fn catalan(n: u32) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
