use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ainf::{m, unit_rule, AInfCategory, AInfError};
use crate::linalg::Field;
use crate::symbols::{ExtSymbol, Obj, Vertex};
use crate::transfer::{LinComb, Morphism};

/// Objects of the category with `P = P1 + P2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiPrimeObj {
    S(Vertex),
    P,
}

impl PiPrimeObj {
    pub fn of(x: Obj) -> PiPrimeObj {
        match x {
            Obj::S(v) => PiPrimeObj::S(v),
            Obj::P(_) => PiPrimeObj::P,
        }
    }

    /// The summands of `self` among the original objects.
    pub fn summands(self) -> Vec<Obj> {
        match self {
            PiPrimeObj::S(v) => Vec::from([Obj::S(v)]),
            PiPrimeObj::P => Vec::from([Obj::P(Vertex::One), Obj::P(Vertex::Two)]),
        }
    }
}

impl fmt::Display for PiPrimeObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiPrimeObj::S(v) => write!(f, "S{}", v.number()),
            PiPrimeObj::P => write!(f, "P"),
        }
    }
}

impl FromStr for PiPrimeObj {
    type Err = AInfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "P" {
            return Ok(PiPrimeObj::P);
        }
        match s.parse::<Obj>() {
            Ok(Obj::S(v)) => Ok(PiPrimeObj::S(v)),
            _ => Err(AInfError::Invalid(format!("unknown object {s:?}"))),
        }
    }
}

/// A basis morphism of one block. `Ext(1_P1)` and `Ext(1_P2)` are the block
/// idempotents of `End(P)`; the identity of `P` is their sum, kept as `IdP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiPrimeSym {
    Ext(ExtSymbol),
    IdP,
}

impl Morphism for PiPrimeSym {
    type Obj = PiPrimeObj;

    fn source(&self) -> PiPrimeObj {
        match self {
            PiPrimeSym::Ext(s) => PiPrimeObj::of(s.source()),
            PiPrimeSym::IdP => PiPrimeObj::P,
        }
    }

    fn target(&self) -> PiPrimeObj {
        match self {
            PiPrimeSym::Ext(s) => PiPrimeObj::of(s.target()),
            PiPrimeSym::IdP => PiPrimeObj::P,
        }
    }

    fn degree(&self) -> i64 {
        match self {
            PiPrimeSym::Ext(s) => s.degree(),
            PiPrimeSym::IdP => 0,
        }
    }

    fn is_identity(&self) -> bool {
        matches!(self, PiPrimeSym::IdP | PiPrimeSym::Ext(ExtSymbol::Id(Obj::S(_))))
    }

    fn identity(o: PiPrimeObj) -> Self {
        match o {
            PiPrimeObj::S(v) => PiPrimeSym::Ext(ExtSymbol::Id(Obj::S(v))),
            PiPrimeObj::P => PiPrimeSym::IdP,
        }
    }
}

impl fmt::Display for PiPrimeSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiPrimeSym::Ext(s) => write!(f, "{s}"),
            PiPrimeSym::IdP => write!(f, "1_P"),
        }
    }
}

impl FromStr for PiPrimeSym {
    type Err = AInfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "1_P" {
            return Ok(PiPrimeSym::IdP);
        }
        s.parse().map(PiPrimeSym::Ext).map_err(|e| AInfError::Invalid(format!("{e}")))
    }
}

/// The minimal model with the two projectives merged into one object. Hom
/// spaces are the direct sums of the blocks and the operations act block by
/// block: a tuple whose blocks do not chain is sent to zero.
pub struct PiPrime<'a, C: AInfCategory<Sym = ExtSymbol>> {
    inner: &'a C,
}

impl<'a, C: AInfCategory<Sym = ExtSymbol>> PiPrime<'a, C> {
    pub fn new(inner: &'a C) -> Self {
        PiPrime { inner }
    }
}

impl<C: AInfCategory<Sym = ExtSymbol>> AInfCategory for PiPrime<'_, C> {
    type Sym = PiPrimeSym;

    fn name(&self) -> String {
        format!("{}'", self.inner.name())
    }

    fn field(&self) -> Field {
        self.inner.field()
    }

    fn objects(&self) -> Vec<PiPrimeObj> {
        Vec::from([PiPrimeObj::S(Vertex::One), PiPrimeObj::S(Vertex::Two), PiPrimeObj::P])
    }

    fn basis(&self, x: &PiPrimeObj, y: &PiPrimeObj, degree_max: i64) -> Vec<PiPrimeSym> {
        let mut out = Vec::new();
        for a in x.summands() {
            for b in y.summands() {
                if a == b && !a.is_simple() {
                    out.push(PiPrimeSym::Ext(ExtSymbol::Id(a)));
                }
                out.extend(self.inner.basis(&a, &b, degree_max).into_iter().map(PiPrimeSym::Ext));
            }
        }
        out.sort();
        out
    }

    fn operation(&self, inputs: &[PiPrimeSym]) -> Result<LinComb<PiPrimeSym>, AInfError> {
        if inputs.iter().any(Morphism::is_identity) {
            return Ok(unit_rule(self.field(), inputs));
        }
        let exts: Vec<ExtSymbol> = inputs
            .iter()
            .map(|s| match s {
                PiPrimeSym::Ext(e) => *e,
                PiPrimeSym::IdP => unreachable!("identities handled above"),
            })
            .collect();
        if exts.windows(2).any(|w| w[0].source() != w[1].target()) {
            return Ok(Vec::new());
        }
        Ok(m(self.inner, &exts)?.into_iter().map(|(s, c)| (PiPrimeSym::Ext(s), c)).collect())
    }
}
