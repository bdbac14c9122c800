use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::linalg::{Field, SparseMatrix};
use crate::quiver::{preprojective_algebra, BoundQuiver, Quiver};
use crate::symbols::{self, SymbolError, h_apply, hom_basis, mu, project, ExtSymbol, HSymbol, Obj, SymbolicElement, Vertex};

use super::complex::{ChainMap, TruncatedComplex};
use super::contraction::{kernel_completion, ClassSpec, Contraction, HomotopyMode};
use super::hom::{DgCategory, HomVector};
use super::system::ProjectiveSystem;
use super::ComplexError;

pub use super::contraction::TRUST_MARGIN;

pub const DEFAULT_WINDOW: i64 = 24;

pub fn pia2_system(field: Field) -> Arc<ProjectiveSystem> {
    let bq = preprojective_algebra(&Quiver::linear(2), field);
    Arc::new(ProjectiveSystem::from_bound_quiver(&bq).expect("one-dimensional Hom spaces"))
}

fn label(v: Vertex) -> usize {
    match v {
        Vertex::One => 0,
        Vertex::Two => 1,
    }
}

/// The periodic resolution of `S_i` on positions `-window..=0`: `P_i` at even
/// positions, the other projective at odd ones, arrows as differentials.
pub fn build_resolution(system: &Arc<ProjectiveSystem>, simple: Vertex, window: i64) -> Result<TruncatedComplex, ComplexError> {
    if window < 2 {
        return Err(ComplexError::WindowTooSmall);
    }
    let field = system.field();
    let labels = (-window..=0)
        .map(|p| vec![label(if p % 2 == 0 { simple } else { simple.other() })])
        .collect();
    let diff = (-window..0).map(|_| SparseMatrix::identity(field, 1)).collect();
    TruncatedComplex::new(format!("Q{}", simple.number()), system.clone(), -window, labels, diff)
}

pub fn obj_index(o: Obj) -> usize {
    match o {
        Obj::S(Vertex::One) => 0,
        Obj::S(Vertex::Two) => 1,
        Obj::P(Vertex::One) => 2,
        Obj::P(Vertex::Two) => 3,
    }
}

/// Resolutions of `S1`, `S2` and the projectives `P1`, `P2`, in that order.
pub fn pia2_category(field: Field, window: i64) -> Result<DgCategory, ComplexError> {
    let sys = pia2_system(field);
    let mut objects = Vec::new();
    for o in Obj::ALL {
        let c = match o {
            Obj::S(v) => build_resolution(&sys, v, window)?,
            Obj::P(v) => TruncatedComplex::projective(o.to_string(), sys.clone(), label(v)),
        };
        objects.push((o.to_string(), c));
    }
    DgCategory::new(sys, objects)
}

fn window_of(cat: &DgCategory) -> i64 {
    -cat.object(0).lo()
}

pub fn realize_ext_vector(cat: &DgCategory, s: ExtSymbol) -> Result<HomVector, ComplexError> {
    if window_of(cat) < s.degree() + 2 {
        return Err(ComplexError::WindowTooSmall);
    }
    kernel_completion(cat, obj_index(s.source()), obj_index(s.target()), s.degree())
}

/// Canonical cycle for a basis symbol: the shift by its degree with unit top
/// component, completed to a cycle.
pub fn realize_ext_symbol(cat: &DgCategory, s: ExtSymbol) -> Result<ChainMap, ComplexError> {
    Ok(cat.to_chain_map(&realize_ext_vector(cat, s)?))
}

pub fn realize_h_vector(cat: &DgCategory, h: HSymbol) -> Result<HomVector, ComplexError> {
    if window_of(cat) < 2 * h.n as i64 + 6 {
        return Err(ComplexError::WindowTooSmall);
    }
    let (x, y) = (obj_index(h.source()), obj_index(h.target()));
    let mut v = cat.zero(x, y, h.degree());
    for s in v.v.iter_mut() {
        *s = cat.system().field().one();
    }
    Ok(v)
}

/// The h-map as a partial identity: every component where both positions exist.
pub fn realize_h_symbol(cat: &DgCategory, h: HSymbol) -> Result<ChainMap, ComplexError> {
    Ok(cat.to_chain_map(&realize_h_vector(cat, h)?))
}

/// Every Ext basis symbol, identities included, whose class fits the window.
pub fn pia2_classes(window: i64) -> Vec<ClassSpec<ExtSymbol>> {
    let mut out = Vec::new();
    for x in Obj::ALL {
        for y in Obj::ALL {
            for s in hom_basis(x, y, window - 2) {
                out.push(ClassSpec { symbol: s, x: obj_index(x), y: obj_index(y), degree: s.degree() });
            }
        }
    }
    out
}

pub fn pia2_contraction(field: Field, window: i64, mode: HomotopyMode) -> Result<Contraction<ExtSymbol>, ComplexError> {
    if window < 8 {
        return Err(ComplexError::WindowTooSmall);
    }
    let cat = pia2_category(field, window)?;
    Contraction::build(cat, pia2_classes(window), mode)
}

/// Basis symbols of the A2 model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum A2Symbol {
    Id(A2Obj),
    /// `S2 -> P`
    Alpha,
    /// `P -> S1`
    Beta,
    /// `S1 -> S2`, degree 1
    Gamma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum A2Obj {
    S2,
    P,
    S1,
}

impl A2Obj {
    pub const ALL: [A2Obj; 3] = [A2Obj::S2, A2Obj::P, A2Obj::S1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            A2Obj::S2 => "S2",
            A2Obj::P => "P",
            A2Obj::S1 => "S1",
        }
    }
}

impl A2Symbol {
    pub fn source(&self) -> A2Obj {
        match self {
            A2Symbol::Id(o) => *o,
            A2Symbol::Alpha => A2Obj::S2,
            A2Symbol::Beta => A2Obj::P,
            A2Symbol::Gamma => A2Obj::S1,
        }
    }

    pub fn target(&self) -> A2Obj {
        match self {
            A2Symbol::Id(o) => *o,
            A2Symbol::Alpha => A2Obj::P,
            A2Symbol::Beta => A2Obj::S1,
            A2Symbol::Gamma => A2Obj::S2,
        }
    }

    pub fn degree(&self) -> i64 {
        i64::from(*self == A2Symbol::Gamma)
    }

}

impl fmt::Display for A2Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for A2Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A2Symbol::Id(o) => write!(f, "1_{o}"),
            A2Symbol::Alpha => f.write_str("alpha"),
            A2Symbol::Beta => f.write_str("beta"),
            A2Symbol::Gamma => f.write_str("gamma"),
        }
    }
}

impl FromStr for A2Symbol {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, SymbolError> {
        Ok(match s {
            "alpha" => A2Symbol::Alpha,
            "beta" => A2Symbol::Beta,
            "gamma" => A2Symbol::Gamma,
            _ => {
                let o = s.strip_prefix("1_").and_then(|o| A2Obj::ALL.into_iter().find(|x| x.name() == o));
                A2Symbol::Id(o.ok_or_else(|| SymbolError::Parse(s.into()))?)
            }
        })
    }
}

/// Objects `S2 = P_Y`, `P = P_X` and `S1 = [P_Y -> P_X]` over `X --f--> Y`.
pub fn a2_category(field: Field) -> Result<DgCategory, ComplexError> {
    let bq = BoundQuiver::free(Quiver::a2(), field);
    let sys = Arc::new(ProjectiveSystem::from_bound_quiver(&bq)?);
    let (px, py) = (0, 1);
    let q = TruncatedComplex::new("S1", sys.clone(), -1, vec![vec![py], vec![px]], vec![SparseMatrix::identity(field, 1)])?;
    let objects = vec![
        ("S2".into(), TruncatedComplex::projective("S2", sys.clone(), py)),
        ("P".into(), TruncatedComplex::projective("P", sys.clone(), px)),
        ("S1".into(), q),
    ];
    DgCategory::new(sys, objects)
}

pub fn a2_classes() -> Vec<ClassSpec<A2Symbol>> {
    let mut syms: Vec<A2Symbol> = A2Obj::ALL.iter().map(|o| A2Symbol::Id(*o)).collect();
    syms.extend([A2Symbol::Alpha, A2Symbol::Beta, A2Symbol::Gamma]);
    syms.into_iter()
        .map(|s| ClassSpec { symbol: s, x: s.source().index(), y: s.target().index(), degree: s.degree() })
        .collect()
}

/// The resolution is finite, so the generic homotopy is exact everywhere.
/// The paper-style homotopy is not defined here and `Paper` falls back to it.
pub fn a2_contraction(field: Field, _mode: HomotopyMode) -> Result<Contraction<A2Symbol>, ComplexError> {
    Contraction::build(a2_category(field)?, a2_classes(), HomotopyMode::Generic)
}

/// Compares the symbolic composition table with matrix composites for all
/// operand pairs with parameters up to `n_max`. Returns one message per
/// disagreement. Over Q, h-maps are realized with unit components and agree
/// with the solved homotopy only up to sign, so comparisons there are up to sign.
pub fn audit_symbolic_table(c: &Contraction<ExtSymbol>, n_max: u32) -> Vec<String> {
    let cat = c.category();
    let mut operands: Vec<SymbolicElement> =
        symbols::basis_symbols(2 * n_max as i64 + 1).into_iter().map(SymbolicElement::Ext).collect();
    operands.extend(Obj::ALL.map(|o| SymbolicElement::Ext(ExtSymbol::Id(o))));
    operands.extend(HSymbol::all(n_max).into_iter().map(SymbolicElement::H));
    let realize = |e: &SymbolicElement| -> Option<HomVector> {
        match e {
            SymbolicElement::Ext(s) => c.include(s).cloned(),
            SymbolicElement::H(h) => realize_h_vector(cat, *h).ok(),
            _ => None,
        }
    };
    // coordinatewise, since signs may alternate along the window
    let same_up_to_sign = |a: &HomVector, b: &HomVector, margin: i64| {
        (a.x, a.y, a.n) == (b.x, b.y, b.n)
            && (0..a.v.len()).all(|k| !cat.trusted(a.x, a.y, a.n, k, margin) || a.v[k] == b.v[k] || a.v[k] == -&b.v[k])
    };
    let mut bad = Vec::new();
    for a in &operands {
        for b in &operands {
            let Ok(r) = mu(a, b) else { continue };
            let (Some(ra), Some(rb)) = (realize(a), realize(b)) else { continue };
            let comp = cat.compose(&ra, &rb).expect("composable");
            let got_p = c.p(&comp);
            let want_p = project(&r);
            let p_ok = match (want_p, got_p.as_slice()) {
                (None, []) => true,
                (Some(s), [(t, k)]) => s == *t && (k.is_one() || (-k).is_one()),
                _ => false,
            };
            let got_h = c.h(&comp);
            let h_ok = match h_apply(&r) {
                SymbolicElement::H(h) => match realize_h_vector(cat, h) {
                    Ok(v) => same_up_to_sign(&got_h, &v, TRUST_MARGIN),
                    Err(_) => true,
                },
                _ => cat.agrees_trusted(&got_h, &cat.zero(got_h.x, got_h.y, got_h.n), TRUST_MARGIN),
            };
            // products against an h-map that land in Ext must match as matrices,
            // away from where the h-map runs off the window
            let edge = TRUST_MARGIN + ra.n.abs().max(rb.n.abs());
            let exact_ok = match (a, b, r) {
                (SymbolicElement::H(_), _, SymbolicElement::Ext(s)) | (_, SymbolicElement::H(_), SymbolicElement::Ext(s)) => {
                    c.include(&s).is_none_or(|v| same_up_to_sign(&comp, v, edge))
                }
                _ => true,
            };
            if !(p_ok && h_ok && exact_ok) {
                bad.push(format!("{a} . {b} -> {r}: p {p_ok}, H {h_ok}, composite {exact_ok}"));
            }
        }
    }
    bad
}
