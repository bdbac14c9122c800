use core::fmt;

use super::{describe, ExtSymbol, HKind, HSymbol, Obj, SymbolError, Vertex};

/// The non-cycle composites that terminate a tree branch. Each is named by the
/// form of the product that produced it, at vertex `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NonCycleForm {
    /// `h_{S_i S_i} . u_i^k`
    HssU,
    /// `h_{S_i S_i} . a.u`-type odd class into `S_i`
    HssOdd,
    /// `h_{S_i S_{i+1}} . u_{i+1}^k`
    HssnU,
    /// `h_{S_i S_{i+1}} . odd class out of `S_i`
    HssnOdd,
    /// `p_i . h_{P_i S_i}`
    PHps,
    /// `p_{i+1} . h_{P_{i+1} S_i}`
    PHpns,
    /// `h_{S_i P_{i+1}} . h_{P_{i+1} S_i}`
    HspnHpns,
    /// `h_{S_i P_i} . h_{P_i S_i}`
    HspHps,
    /// `h_{S_{i+1} P_{i+1}} . h_{P_{i+1} S_i}`
    HspHpns,
    /// `h_{S_i P_{i+1}} . h_{P_{i+1} S_{i+1}}`
    HspnHps,
}

/// Value of a symbolic tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolicElement {
    Zero,
    Ext(ExtSymbol),
    /// The h-map itself, as a map that is neither a cycle nor a boundary.
    H(HSymbol),
    /// A null-homotopic map `x` with `H(x)` the given h-map.
    Boundary(HSymbol),
    /// A non-cycle killed by `H`; `root` is its projection to Ext, if any.
    NonCycle { form: NonCycleForm, i: Vertex, root: Option<ExtSymbol> },
}

impl SymbolicElement {
    pub fn is_zero(&self) -> bool {
        matches!(self, SymbolicElement::Zero)
    }

    pub fn kappa(&self) -> SymbolicElement {
        match *self {
            SymbolicElement::Zero => SymbolicElement::Zero,
            SymbolicElement::Ext(s) => SymbolicElement::Ext(s.kappa()),
            SymbolicElement::H(h) => SymbolicElement::H(h.kappa()),
            SymbolicElement::Boundary(h) => SymbolicElement::Boundary(h.kappa()),
            SymbolicElement::NonCycle { form, i, root } => {
                SymbolicElement::NonCycle { form, i: i.other(), root: root.map(|r| r.kappa()) }
            }
        }
    }

    pub fn degree(&self) -> Option<i64> {
        match self {
            SymbolicElement::Zero | SymbolicElement::NonCycle { .. } => None,
            SymbolicElement::Ext(s) => Some(s.degree()),
            SymbolicElement::H(h) => Some(h.degree()),
            SymbolicElement::Boundary(h) => Some(h.degree() + 1),
        }
    }

    fn endpoints(&self) -> Option<(Obj, Obj)> {
        match self {
            SymbolicElement::Ext(s) => Some((s.source(), s.target())),
            SymbolicElement::H(h) => Some((h.source(), h.target())),
            _ => None,
        }
    }
}

impl fmt::Display for SymbolicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicElement::Zero => write!(f, "0"),
            SymbolicElement::Ext(s) => write!(f, "{s}"),
            SymbolicElement::H(h) => write!(f, "{h}"),
            SymbolicElement::Boundary(h) => write!(f, "d({h})"),
            SymbolicElement::NonCycle { form, i, .. } => write!(f, "nc:{form:?}@{}", i.number()),
        }
    }
}

use ExtSymbol as E;
use SymbolicElement as S;

fn bd(kind: HKind, i: Vertex, n: u32) -> SymbolicElement {
    S::Boundary(HSymbol::new(kind, i, n))
}

fn nc(form: NonCycleForm, i: Vertex, root: Option<ExtSymbol>) -> SymbolicElement {
    S::NonCycle { form, i, root }
}

/// Product of two basis symbols that are cycles: the Ext product when it is
/// nonzero in cohomology, or the boundary whose `H` is an h-map.
fn ext_ext(a: ExtSymbol, b: ExtSymbol) -> SymbolicElement {
    match (a, b) {
        (E::Id(_), x) | (x, E::Id(_)) => S::Ext(x),
        (E::P(i), E::J(k)) if i == k => bd(HKind::SSn, i, 0),
        (E::J(i), E::Odd(k, n)) if i == k => bd(HKind::PS, i, n),
        (E::P(i), E::Arrow(k)) if k == i.other() => bd(HKind::SPn, i, 0),
        (E::J(k), E::U(i, n)) if k == i.other() => bd(HKind::PnS, i, n - 1),
        (E::J(i), E::P(k)) if k == i.other() => S::Ext(E::Arrow(k)),
        (E::U(i, n), E::U(k, m)) if i == k => S::Ext(E::U(i, n + m)),
        (E::Odd(i, a), E::U(k, b)) if i == k => S::Ext(E::Odd(i, a + b)),
        (E::U(k, a), E::Odd(i, b)) if k == i.other() => S::Ext(E::Odd(i, a + b)),
        (E::Odd(k, a), E::Odd(i, b)) if k == i.other() => S::Ext(E::U(i, a + b + 1)),
        _ => S::Zero,
    }
}

fn h_ext(h: HSymbol, b: ExtSymbol) -> SymbolicElement {
    let HSymbol { kind, i, n } = h;
    let j = i.other();
    match (kind, b) {
        (_, E::Id(_)) => S::H(h),
        (HKind::SPn, E::J(k)) if k == j => bd(HKind::SS, i, n + 1),
        (HKind::SPn, E::Arrow(k)) if k == i => bd(HKind::SP, i, n + 1),
        (HKind::SP, E::J(k)) if k == i => bd(HKind::SSn, i, n),
        (HKind::SP, E::Arrow(k)) if k == j => bd(HKind::SPn, i, n),
        (HKind::PS, E::P(k)) if k == i && n == 0 => S::Ext(E::Id(Obj::P(i))),
        (HKind::SS, E::U(k, _)) if k == i => nc(NonCycleForm::HssU, i, None),
        (HKind::SS, E::Odd(k, _)) if k == j => nc(NonCycleForm::HssOdd, i, None),
        (HKind::SSn, E::U(k, _)) if k == j => nc(NonCycleForm::HssnU, i, None),
        (HKind::SSn, E::Odd(k, _)) if k == i => nc(NonCycleForm::HssnOdd, i, None),
        _ => S::Zero,
    }
}

fn ext_h(a: ExtSymbol, h: HSymbol) -> SymbolicElement {
    let HSymbol { kind, i, n } = h;
    let j = i.other();
    match (a, kind) {
        (E::Id(_), _) => S::H(h),
        (E::Arrow(k), HKind::PS) if k == i && n >= 1 => bd(HKind::PnS, i, n - 1),
        (E::Arrow(k), HKind::PS) if k == i => S::Ext(E::J(j)),
        (E::Arrow(k), HKind::PnS) if k == j => bd(HKind::PS, i, n),
        (E::U(k, m), HKind::SSn) if k == i && m > n => S::Ext(E::Odd(j, m - n - 1)),
        (E::Odd(k, m), HKind::SSn) if k == i && m >= n => S::Ext(E::u(j, m - n)),
        (E::Odd(k, m), HKind::SPn) if k == i && m == n => S::Ext(E::P(j)),
        (E::U(k, m), HKind::SS) if k == i && m >= n => S::Ext(E::u(i, m - n)),
        (E::U(k, m), HKind::SP) if k == i && m == n => S::Ext(E::P(i)),
        (E::Odd(k, m), HKind::SS) if k == i && m >= n => S::Ext(E::Odd(i, m - n)),
        (E::P(k), HKind::PS) if k == i => nc(NonCycleForm::PHps, i, Some(E::u(i, n))),
        (E::P(k), HKind::PnS) if k == j => nc(NonCycleForm::PHpns, i, Some(E::Odd(i, n))),
        _ => S::Zero,
    }
}

fn h_h(a: HSymbol, b: HSymbol) -> SymbolicElement {
    use HKind::*;
    match (a.kind, b.kind) {
        (PnS, SPn) if a.i == b.i => {
            if a.n == b.n {
                S::Ext(E::Id(Obj::P(a.i.other())))
            } else {
                S::Zero
            }
        }
        (PS, SP) if a.i == b.i => {
            if a.n == b.n {
                S::Ext(E::Id(Obj::P(a.i)))
            } else {
                S::Zero
            }
        }
        (SPn, PnS) if a.i == b.i => nc(NonCycleForm::HspnHpns, b.i, None),
        (SP, PS) if a.i == b.i => nc(NonCycleForm::HspHps, b.i, None),
        (SP, PnS) if a.i == b.i.other() => nc(NonCycleForm::HspHpns, b.i, None),
        (SPn, PS) if b.i == a.i.other() => nc(NonCycleForm::HspnHps, a.i, None),
        _ => S::Zero,
    }
}

/// The composite `a . b` (apply `b` first). Operands must be basis symbols or
/// h-maps; `Zero` absorbs.
pub fn mu(a: &SymbolicElement, b: &SymbolicElement) -> Result<SymbolicElement, SymbolError> {
    if a.is_zero() || b.is_zero() {
        return Ok(S::Zero);
    }
    let (Some((sa, _)), Some((_, tb))) = (a.endpoints(), b.endpoints()) else {
        let bad = if a.endpoints().is_none() { a } else { b };
        return Err(SymbolError::NotAnOperand(describe(bad)));
    };
    if sa != tb {
        return Err(SymbolError::NotComposable(describe(a), describe(b)));
    }
    Ok(match (*a, *b) {
        (S::Ext(x), S::Ext(y)) => ext_ext(x, y),
        (S::H(h), S::Ext(y)) => h_ext(h, y),
        (S::Ext(x), S::H(h)) => ext_h(x, h),
        (S::H(g), S::H(h)) => h_h(g, h),
        _ => unreachable!("operands checked above"),
    })
}

/// The homotopy applied to a product: the h-map for boundaries, zero otherwise.
pub fn h_apply(x: &SymbolicElement) -> SymbolicElement {
    match x {
        S::Boundary(h) => S::H(*h),
        _ => S::Zero,
    }
}

/// Projection to the Ext basis.
pub fn project(x: &SymbolicElement) -> Option<ExtSymbol> {
    match x {
        S::Ext(s) => Some(*s),
        S::NonCycle { root, .. } => *root,
        _ => None,
    }
}
