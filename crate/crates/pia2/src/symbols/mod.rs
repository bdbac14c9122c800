//! Symbolic grammar for the Ext-algebra of the preprojective algebra of A2:
//! basis symbols, homotopy symbols, and the composition and homotopy tables.

mod table;

pub use table::{h_apply, mu, project, NonCycleForm, SymbolicElement};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("cannot parse symbol {0:?}")]
    Parse(String),
    #[error("{0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("{0} cannot be an argument of mu")]
    NotAnOperand(String),
}

/// Vertex of the A2 quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    One,
    Two,
}

impl Vertex {
    pub fn other(self) -> Vertex {
        match self {
            Vertex::One => Vertex::Two,
            Vertex::Two => Vertex::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Vertex::One => 1,
            Vertex::Two => 2,
        }
    }

    fn from_char(c: char) -> Option<Vertex> {
        match c {
            '1' => Some(Vertex::One),
            '2' => Some(Vertex::Two),
            _ => None,
        }
    }
}

/// Objects: the two simples (through their resolutions) and the two projectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    S(Vertex),
    P(Vertex),
}

impl Obj {
    pub const ALL: [Obj; 4] = [Obj::S(Vertex::One), Obj::S(Vertex::Two), Obj::P(Vertex::One), Obj::P(Vertex::Two)];

    pub fn kappa(self) -> Obj {
        match self {
            Obj::S(v) => Obj::S(v.other()),
            Obj::P(v) => Obj::P(v.other()),
        }
    }

    pub fn is_simple(self) -> bool {
        matches!(self, Obj::S(_))
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::S(v) => write!(f, "S{}", v.number()),
            Obj::P(v) => write!(f, "P{}", v.number()),
        }
    }
}

impl FromStr for Obj {
    type Err = SymbolError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut it = s.chars();
        let (kind, v) = (it.next(), it.next().and_then(Vertex::from_char));
        match (kind, v, it.next()) {
            (Some('S'), Some(v), None) => Ok(Obj::S(v)),
            (Some('P'), Some(v), None) => Ok(Obj::P(v)),
            _ => Err(SymbolError::Parse(s.into())),
        }
    }
}

/// Basis element of the Ext-algebra.
///
/// `Arrow(One)` is `(12): P1 -> P2`; `Odd(One, n)` is `b.u1^n: S1 -> S2` and
/// `Odd(Two, n)` is `a.u2^n: S2 -> S1`. Powers `U(i, n)` have `n >= 1`; use
/// [`ExtSymbol::u`] to get the identity at `n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtSymbol {
    Id(Obj),
    /// `j_i: S_{i+1} -> P_i`
    J(Vertex),
    /// `p_i: P_i -> S_i`
    P(Vertex),
    Arrow(Vertex),
    U(Vertex, u32),
    Odd(Vertex, u32),
}

impl ExtSymbol {
    pub fn u(i: Vertex, n: u32) -> ExtSymbol {
        if n == 0 {
            ExtSymbol::Id(Obj::S(i))
        } else {
            ExtSymbol::U(i, n)
        }
    }

    pub fn source(&self) -> Obj {
        match *self {
            ExtSymbol::Id(x) => x,
            ExtSymbol::J(i) => Obj::S(i.other()),
            ExtSymbol::P(i) => Obj::P(i),
            ExtSymbol::Arrow(i) => Obj::P(i),
            ExtSymbol::U(i, _) => Obj::S(i),
            ExtSymbol::Odd(i, _) => Obj::S(i),
        }
    }

    pub fn target(&self) -> Obj {
        match *self {
            ExtSymbol::Id(x) => x,
            ExtSymbol::J(i) => Obj::P(i),
            ExtSymbol::P(i) => Obj::S(i),
            ExtSymbol::Arrow(i) => Obj::P(i.other()),
            ExtSymbol::U(i, _) => Obj::S(i),
            ExtSymbol::Odd(i, _) => Obj::S(i.other()),
        }
    }

    pub fn degree(&self) -> i64 {
        match *self {
            ExtSymbol::U(_, n) => 2 * n as i64,
            ExtSymbol::Odd(_, n) => 2 * n as i64 + 1,
            _ => 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ExtSymbol::Id(_))
    }

    pub fn kappa(&self) -> ExtSymbol {
        match *self {
            ExtSymbol::Id(x) => ExtSymbol::Id(x.kappa()),
            ExtSymbol::J(i) => ExtSymbol::J(i.other()),
            ExtSymbol::P(i) => ExtSymbol::P(i.other()),
            ExtSymbol::Arrow(i) => ExtSymbol::Arrow(i.other()),
            ExtSymbol::U(i, n) => ExtSymbol::U(i.other(), n),
            ExtSymbol::Odd(i, n) => ExtSymbol::Odd(i.other(), n),
        }
    }
}

impl fmt::Display for ExtSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExtSymbol::Id(x) => write!(f, "1_{x}"),
            ExtSymbol::J(i) => write!(f, "j{}", i.number()),
            ExtSymbol::P(i) => write!(f, "p{}", i.number()),
            ExtSymbol::Arrow(i) => write!(f, "({}{})", i.number(), i.other().number()),
            ExtSymbol::U(i, n) => write!(f, "u{}^{n}", i.number()),
            ExtSymbol::Odd(Vertex::One, n) => write!(f, "b.u1^{n}"),
            ExtSymbol::Odd(Vertex::Two, n) => write!(f, "a.u2^{n}"),
        }
    }
}

fn parse_power(s: &str, prefix: &str) -> Option<(Vertex, u32)> {
    let rest = s.strip_prefix(prefix)?;
    let (v, n) = rest.split_once('^')?;
    let mut vc = v.chars();
    let vertex = Vertex::from_char(vc.next()?)?;
    if vc.next().is_some() {
        return None;
    }
    Some((vertex, n.parse().ok()?))
}

impl FromStr for ExtSymbol {
    type Err = SymbolError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SymbolError::Parse(s.into());
        let fixed = match s {
            "j1" => Some(ExtSymbol::J(Vertex::One)),
            "j2" => Some(ExtSymbol::J(Vertex::Two)),
            "p1" => Some(ExtSymbol::P(Vertex::One)),
            "p2" => Some(ExtSymbol::P(Vertex::Two)),
            "(12)" => Some(ExtSymbol::Arrow(Vertex::One)),
            "(21)" => Some(ExtSymbol::Arrow(Vertex::Two)),
            _ => None,
        };
        if let Some(x) = fixed {
            return Ok(x);
        }
        if let Some(obj) = s.strip_prefix("1_") {
            return Ok(ExtSymbol::Id(obj.parse()?));
        }
        if let Some((i, n)) = parse_power(s, "b.u") {
            return if i == Vertex::One { Ok(ExtSymbol::Odd(i, n)) } else { Err(err()) };
        }
        if let Some((i, n)) = parse_power(s, "a.u") {
            return if i == Vertex::Two { Ok(ExtSymbol::Odd(i, n)) } else { Err(err()) };
        }
        if let Some((i, n)) = parse_power(s, "u") {
            return if n >= 1 { Ok(ExtSymbol::U(i, n)) } else { Err(err()) };
        }
        Err(err())
    }
}

/// Basis of `Hom(x, y)` up to degree `degree_max`, in degree order.
pub fn hom_basis(x: Obj, y: Obj, degree_max: i64) -> Vec<ExtSymbol> {
    let mut out = Vec::new();
    match (x, y) {
        (Obj::S(a), Obj::S(b)) if a == b => {
            out.push(ExtSymbol::Id(x));
            let mut n = 1;
            while 2 * n as i64 <= degree_max {
                out.push(ExtSymbol::U(a, n));
                n += 1;
            }
        }
        (Obj::S(a), Obj::S(_)) => {
            let mut n = 0;
            while (2 * n as i64) < degree_max {
                out.push(ExtSymbol::Odd(a, n));
                n += 1;
            }
        }
        (Obj::P(a), Obj::P(b)) => out.push(if a == b { ExtSymbol::Id(x) } else { ExtSymbol::Arrow(a) }),
        (Obj::P(a), Obj::S(b)) if a == b => out.push(ExtSymbol::P(a)),
        (Obj::S(a), Obj::P(b)) if a != b => out.push(ExtSymbol::J(b)),
        _ => {}
    }
    out.retain(|s| s.degree() <= degree_max);
    out
}

/// All non-identity basis symbols of degree at most `degree_max`.
pub fn basis_symbols(degree_max: i64) -> Vec<ExtSymbol> {
    let mut out = Vec::new();
    for x in Obj::ALL {
        for y in Obj::ALL {
            out.extend(hom_basis(x, y, degree_max).into_iter().filter(|s| !s.is_identity()));
        }
    }
    out.sort();
    out
}

/// The six families of homotopy symbols `h_{XY}: Y -> X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HKind {
    /// `h_{S_i S_i}: S_i -> S_i`, degree `-2n`, `n >= 1`
    SS,
    /// `h_{S_i S_{i+1}}: S_{i+1} -> S_i`, degree `-2n-1`
    SSn,
    /// `h_{S_i P_i}: P_i -> S_i`, degree `-2n`, `n >= 1`
    SP,
    /// `h_{S_i P_{i+1}}: P_{i+1} -> S_i`, degree `-2n-1`
    SPn,
    /// `h_{P_i S_i}: S_i -> P_i`, degree `2n`
    PS,
    /// `h_{P_{i+1} S_i}: S_i -> P_{i+1}`, degree `2n+1`
    PnS,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HSymbol {
    pub kind: HKind,
    pub i: Vertex,
    pub n: u32,
}

impl HSymbol {
    pub fn new(kind: HKind, i: Vertex, n: u32) -> HSymbol {
        HSymbol { kind, i, n }
    }

    pub fn source(&self) -> Obj {
        let (i, j) = (self.i, self.i.other());
        match self.kind {
            HKind::SS => Obj::S(i),
            HKind::SSn => Obj::S(j),
            HKind::SP => Obj::P(i),
            HKind::SPn => Obj::P(j),
            HKind::PS | HKind::PnS => Obj::S(i),
        }
    }

    pub fn target(&self) -> Obj {
        let (i, j) = (self.i, self.i.other());
        match self.kind {
            HKind::SS | HKind::SSn | HKind::SP | HKind::SPn => Obj::S(i),
            HKind::PS => Obj::P(i),
            HKind::PnS => Obj::P(j),
        }
    }

    pub fn degree(&self) -> i64 {
        let n = self.n as i64;
        match self.kind {
            HKind::SS | HKind::SP => -2 * n,
            HKind::SSn | HKind::SPn => -2 * n - 1,
            HKind::PS => 2 * n,
            HKind::PnS => 2 * n + 1,
        }
    }

    pub fn kappa(&self) -> HSymbol {
        HSymbol { i: self.i.other(), ..*self }
    }

    /// All h-symbols with parameter at most `n_max`.
    pub fn all(n_max: u32) -> Vec<HSymbol> {
        let mut out = Vec::new();
        for kind in [HKind::SS, HKind::SSn, HKind::SP, HKind::SPn, HKind::PS, HKind::PnS] {
            let lo = if matches!(kind, HKind::SS | HKind::SP) { 1 } else { 0 };
            for i in [Vertex::One, Vertex::Two] {
                for n in lo..=n_max {
                    out.push(HSymbol::new(kind, i, n));
                }
            }
        }
        out
    }
}

impl fmt::Display for HSymbol {
    // h^n_XY names the map Y -> X
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h^{}_{}{}", self.n, self.target(), self.source())
    }
}

impl FromStr for HSymbol {
    type Err = SymbolError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SymbolError::Parse(s.into());
        let rest = s.strip_prefix("h^").ok_or_else(err)?;
        let (n, objs) = rest.split_once('_').ok_or_else(err)?;
        let n: u32 = n.parse().map_err(|_| err())?;
        if objs.len() != 4 || !objs.is_ascii() {
            return Err(err());
        }
        let x: Obj = objs[..2].parse()?;
        let y: Obj = objs[2..].parse()?;
        let h = match (x, y) {
            (Obj::S(a), Obj::S(b)) if a == b => HSymbol::new(HKind::SS, a, n),
            (Obj::S(a), Obj::S(_)) => HSymbol::new(HKind::SSn, a, n),
            (Obj::S(a), Obj::P(b)) if a == b => HSymbol::new(HKind::SP, a, n),
            (Obj::S(a), Obj::P(_)) => HSymbol::new(HKind::SPn, a, n),
            (Obj::P(a), Obj::S(b)) if a == b => HSymbol::new(HKind::PS, a, n),
            (Obj::P(_), Obj::S(b)) => HSymbol::new(HKind::PnS, b, n),
            _ => return Err(err()),
        };
        if matches!(h.kind, HKind::SS | HKind::SP) && n == 0 {
            return Err(err());
        }
        Ok(h)
    }
}

pub(crate) fn describe<T: fmt::Display>(x: &T) -> String {
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn degrees_and_endpoints() {
        let b = ExtSymbol::Odd(Vertex::One, 2);
        assert_eq!((b.source(), b.target(), b.degree()), (Obj::S(Vertex::One), Obj::S(Vertex::Two), 5));
        let j1 = ExtSymbol::J(Vertex::One);
        assert_eq!((j1.source(), j1.target()), (Obj::S(Vertex::Two), Obj::P(Vertex::One)));
        let a = ExtSymbol::Arrow(Vertex::Two);
        assert_eq!((a.source(), a.target(), a.to_string()), (Obj::P(Vertex::Two), Obj::P(Vertex::One), "(21)".into()));
    }

    #[test]
    fn hom_bases() {
        let (s1, p1, p2) = (Obj::S(Vertex::One), Obj::P(Vertex::One), Obj::P(Vertex::Two));
        assert_eq!(hom_basis(p1, p2, 5), [ExtSymbol::Arrow(Vertex::One)]);
        assert_eq!(
            hom_basis(s1, s1, 4),
            [ExtSymbol::Id(s1), ExtSymbol::U(Vertex::One, 1), ExtSymbol::U(Vertex::One, 2)]
        );
        assert!(hom_basis(s1, p1, 4).is_empty());
        assert_eq!(hom_basis(s1, p2, 0), [ExtSymbol::J(Vertex::Two)]);
    }

    #[test]
    fn ext_strings_round_trip() {
        for s in basis_symbols(7).into_iter().chain(Obj::ALL.map(ExtSymbol::Id)) {
            assert_eq!(s.to_string().parse::<ExtSymbol>().unwrap(), s);
        }
        assert_eq!(ExtSymbol::Odd(Vertex::Two, 0).to_string(), "a.u2^0");
        assert!("u1^0".parse::<ExtSymbol>().is_err());
        assert!("b.u2^1".parse::<ExtSymbol>().is_err());
    }

    #[test]
    fn h_strings_round_trip() {
        for h in HSymbol::all(3) {
            assert_eq!(h.to_string().parse::<HSymbol>().unwrap(), h);
        }
        assert_eq!(HSymbol::new(HKind::SSn, Vertex::One, 0).to_string(), "h^0_S1S2");
        assert_eq!(HSymbol::new(HKind::PnS, Vertex::One, 2).to_string(), "h^2_P2S1");
    }

    #[test]
    fn kappa_is_an_involution() {
        for s in basis_symbols(6) {
            assert_eq!(s.kappa().kappa(), s);
            assert_eq!(s.kappa().degree(), s.degree());
            assert_eq!(s.kappa().source(), s.source().kappa());
        }
    }
}
