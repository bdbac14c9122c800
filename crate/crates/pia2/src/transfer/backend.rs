use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::complexes::instances::{A2Obj, A2Symbol};
use crate::complexes::{Contraction, HomVector};
use crate::linalg::{Field, Scalar};
use crate::symbols::{h_apply, mu, project, ExtSymbol, Obj, SymbolicElement};

use super::{Morphism, TransferError};

/// What a tree is evaluated with. `None` stands for the zero element, so
/// backends never need to know the ambient Hom space of a zero.
pub trait Backend {
    type Sym: Morphism;
    type Elem: Clone;

    fn field(&self) -> Field;
    fn name(&self) -> &'static str;
    /// The inclusion `i` of a basis symbol.
    fn leaf(&self, s: &Self::Sym) -> Result<Self::Elem, TransferError>;
    /// `a . b`, unsigned.
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// The contraction homotopy, unsigned.
    fn homotopy(&self, x: &Self::Elem) -> Option<Self::Elem>;
    fn add(&self, acc: Self::Elem, x: &Self::Elem) -> Option<Self::Elem>;
    fn scale(&self, x: &Self::Elem, s: &Scalar) -> Self::Elem;
    /// The projection `p` to the basis.
    fn project(&self, x: &Self::Elem) -> Vec<(Self::Sym, Scalar)>;
}

impl Morphism for ExtSymbol {
    type Obj = Obj;

    fn source(&self) -> Obj {
        ExtSymbol::source(self)
    }

    fn target(&self) -> Obj {
        ExtSymbol::target(self)
    }

    fn degree(&self) -> i64 {
        ExtSymbol::degree(self)
    }

    fn is_identity(&self) -> bool {
        ExtSymbol::is_identity(self)
    }

    fn identity(o: Obj) -> Self {
        ExtSymbol::Id(o)
    }
}

impl Morphism for A2Symbol {
    type Obj = A2Obj;

    fn source(&self) -> A2Obj {
        A2Symbol::source(self)
    }

    fn target(&self) -> A2Obj {
        A2Symbol::target(self)
    }

    fn degree(&self) -> i64 {
        A2Symbol::degree(self)
    }

    fn is_identity(&self) -> bool {
        matches!(self, A2Symbol::Id(_))
    }

    fn identity(o: A2Obj) -> Self {
        A2Symbol::Id(o)
    }
}

/// Formal sums of table symbols over F2. Only meaningful in characteristic 2,
/// since the composition table carries no signs.
#[derive(Clone, Copy, Debug, Default)]
pub struct SymbolicBackend;

fn toggle(set: &mut BTreeSet<SymbolicElement>, e: SymbolicElement) {
    if !e.is_zero() && !set.remove(&e) {
        set.insert(e);
    }
}

fn nonempty(set: BTreeSet<SymbolicElement>) -> Option<BTreeSet<SymbolicElement>> {
    (!set.is_empty()).then_some(set)
}

impl Backend for SymbolicBackend {
    type Sym = ExtSymbol;
    type Elem = BTreeSet<SymbolicElement>;

    fn field(&self) -> Field {
        Field::F2
    }

    fn name(&self) -> &'static str {
        "symbolic"
    }

    fn leaf(&self, s: &ExtSymbol) -> Result<Self::Elem, TransferError> {
        Ok(BTreeSet::from([SymbolicElement::Ext(*s)]))
    }

    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let mut out = BTreeSet::new();
        for x in a {
            for y in b {
                toggle(&mut out, mu(x, y).expect("tree operands are composable basis symbols or h-maps"));
            }
        }
        nonempty(out)
    }

    fn homotopy(&self, x: &Self::Elem) -> Option<Self::Elem> {
        let mut out = BTreeSet::new();
        for e in x {
            toggle(&mut out, h_apply(e));
        }
        nonempty(out)
    }

    fn add(&self, mut acc: Self::Elem, x: &Self::Elem) -> Option<Self::Elem> {
        for e in x {
            toggle(&mut acc, *e);
        }
        nonempty(acc)
    }

    fn scale(&self, x: &Self::Elem, _: &Scalar) -> Self::Elem {
        x.clone()
    }

    fn project(&self, x: &Self::Elem) -> Vec<(ExtSymbol, Scalar)> {
        let mut count: BTreeMap<ExtSymbol, bool> = BTreeMap::new();
        for e in x {
            if let Some(s) = project(e) {
                let c = count.entry(s).or_insert(false);
                *c = !*c;
            }
        }
        count.into_iter().filter(|(_, odd)| *odd).map(|(s, _)| (s, Field::F2.one())).collect()
    }
}

/// Chain-level evaluation with an explicit contraction.
#[derive(Clone, Debug)]
pub struct MatrixBackend<S> {
    contraction: Contraction<S>,
}

impl<S: Clone + Ord> MatrixBackend<S> {
    pub fn new(contraction: Contraction<S>) -> Self {
        MatrixBackend { contraction }
    }

    pub fn contraction(&self) -> &Contraction<S> {
        &self.contraction
    }
}

fn nonzero(v: HomVector) -> Option<HomVector> {
    (!v.is_zero()).then_some(v)
}

impl<S: Morphism> Backend for MatrixBackend<S> {
    type Sym = S;
    type Elem = HomVector;

    fn field(&self) -> Field {
        self.contraction.category().system().field()
    }

    fn name(&self) -> &'static str {
        "matrix"
    }

    fn leaf(&self, s: &S) -> Result<HomVector, TransferError> {
        self.contraction.include(s).cloned().ok_or_else(|| TransferError::UnknownSymbol(s.to_string()))
    }

    fn compose(&self, a: &HomVector, b: &HomVector) -> Option<HomVector> {
        nonzero(self.contraction.category().compose(a, b).expect("composable by construction"))
    }

    fn homotopy(&self, x: &HomVector) -> Option<HomVector> {
        nonzero(self.contraction.h(x))
    }

    fn add(&self, mut acc: HomVector, x: &HomVector) -> Option<HomVector> {
        acc.add_assign(x);
        nonzero(acc)
    }

    fn scale(&self, x: &HomVector, s: &Scalar) -> HomVector {
        x.scale(s)
    }

    fn project(&self, x: &HomVector) -> Vec<(S, Scalar)> {
        self.contraction.p(x)
    }
}
