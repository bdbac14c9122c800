use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ainf::{unit_rule, AInfCategory, AInfError};
use crate::linalg::Field;
use crate::transfer::{LinComb, Morphism};

/// Object `X_i`, `i` in `Z/3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PantsObj(pub u8);

impl fmt::Display for PantsObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

impl FromStr for PantsObj {
    type Err = AInfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "X0" => Ok(PantsObj(0)),
            "X1" => Ok(PantsObj(1)),
            "X2" => Ok(PantsObj(2)),
            _ => Err(AInfError::Invalid(format!("unknown object {s:?}"))),
        }
    }
}

/// Basis morphisms: alternating paths on the edge `e` joining `X_e` and
/// `X_{e+1}`, built from `u_{e,e+1}: X_e -> X_{e+1}` and
/// `v_{e+1,e}: X_{e+1} -> X_e`. The loops are `x_{e+1} = u v` at `X_{e+1}`
/// and `y_e = v u` at `X_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PantsSym {
    Id(PantsObj),
    Path { edge: u8, start: u8, len: u32 },
}

fn next(i: u8) -> u8 {
    (i + 1) % 3
}

impl PantsSym {
    /// `u_{e,e+1}`
    pub fn u(edge: u8) -> PantsSym {
        PantsSym::Path { edge, start: edge, len: 1 }
    }

    /// `v_{e+1,e}`
    pub fn v(edge: u8) -> PantsSym {
        PantsSym::Path { edge, start: next(edge), len: 1 }
    }

    /// `x_i^k`, the loop on the edge ending at `X_i`.
    pub fn x(i: u8, k: u32) -> PantsSym {
        if k == 0 {
            return PantsSym::Id(PantsObj(i));
        }
        PantsSym::Path { edge: (i + 2) % 3, start: i, len: 2 * k }
    }

    /// `y_i^k`, the loop on the edge starting at `X_i`.
    pub fn y(i: u8, k: u32) -> PantsSym {
        if k == 0 {
            return PantsSym::Id(PantsObj(i));
        }
        PantsSym::Path { edge: i, start: i, len: 2 * k }
    }

    /// Half the path length, rounded down.
    pub fn exponent(&self) -> u32 {
        match self {
            PantsSym::Id(_) => 0,
            PantsSym::Path { len, .. } => len / 2,
        }
    }
}

impl Morphism for PantsSym {
    type Obj = PantsObj;

    fn source(&self) -> PantsObj {
        match *self {
            PantsSym::Id(x) => x,
            PantsSym::Path { start, .. } => PantsObj(start),
        }
    }

    fn target(&self) -> PantsObj {
        match *self {
            PantsSym::Id(x) => x,
            PantsSym::Path { edge, start, len } => {
                let other = if start == edge { next(edge) } else { edge };
                PantsObj(if len % 2 == 0 { start } else { other })
            }
        }
    }

    fn degree(&self) -> i64 {
        match *self {
            PantsSym::Path { edge: 0, len, .. } => len as i64,
            _ => 0,
        }
    }

    fn is_identity(&self) -> bool {
        matches!(self, PantsSym::Id(_))
    }

    fn identity(o: PantsObj) -> Self {
        PantsSym::Id(o)
    }
}

impl fmt::Display for PantsSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let PantsSym::Path { edge: e, start, len } = *self else {
            return write!(f, "1_{}", self.source());
        };
        let (e1, k) = (next(e), len / 2);
        match (len % 2, start == e) {
            (0, false) => write!(f, "x{e1}^{k}"),
            (0, true) => write!(f, "y{e}^{k}"),
            (_, true) if k == 0 => write!(f, "u{e}{e1}"),
            (_, true) => write!(f, "x{e1}^{k}.u{e}{e1}"),
            (_, false) if k == 0 => write!(f, "v{e1}{e}"),
            (_, false) => write!(f, "v{e1}{e}.x{e1}^{k}"),
        }
    }
}

impl FromStr for PantsSym {
    type Err = AInfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AInfError::Invalid(format!("cannot parse pants symbol {s:?}"));
        if let Some(o) = s.strip_prefix("1_") {
            return Ok(PantsSym::Id(o.parse()?));
        }
        let digit = |c: char| c.to_digit(10).filter(|&d| d < 3).map(|d| d as u8);
        let letter = |w: &str| -> Option<PantsSym> {
            let mut c = w.chars();
            let (l, a, b) = (c.next()?, digit(c.next()?)?, digit(c.next()?)?);
            if c.next().is_some() {
                return None;
            }
            match l {
                'u' if b == next(a) => Some(PantsSym::u(a)),
                'v' if a == next(b) => Some(PantsSym::v(b)),
                _ => None,
            }
        };
        let power = |w: &str| -> Option<(char, u8, u32)> {
            let (head, k) = w.split_once('^')?;
            let mut c = head.chars();
            let (l, i) = (c.next()?, digit(c.next()?)?);
            if c.next().is_some() || !matches!(l, 'x' | 'y') {
                return None;
            }
            Some((l, i, k.parse().ok()?))
        };
        let parsed = match s.split_once('.') {
            None => letter(s).or_else(|| {
                let (l, i, k) = power(s)?;
                (k >= 1).then(|| if l == 'x' { PantsSym::x(i, k) } else { PantsSym::y(i, k) })
            }),
            Some((a, b)) => match (power(a), letter(b), letter(a), power(b)) {
                (Some(('x', i, k)), Some(PantsSym::Path { edge, start, .. }), _, _) if start == edge && next(edge) == i && k >= 1 => {
                    Some(PantsSym::Path { edge, start, len: 2 * k + 1 })
                }
                (_, _, Some(PantsSym::Path { edge, start, .. }), Some(('x', i, k))) if start == i && next(edge) == i && k >= 1 => {
                    Some(PantsSym::Path { edge, start, len: 2 * k + 1 })
                }
                _ => None,
            },
        };
        parsed.ok_or_else(err)
    }
}

/// The pants category with Hom bases truncated at `exponent_max`. Composition
/// concatenates paths on one edge and kills composites across edges; the
/// only higher operations are the `m3` of three consecutive `u`'s or three
/// consecutive `v`'s around the triangle, equal to the identity.
#[derive(Clone, Copy, Debug)]
pub struct PantsCategory {
    pub field: Field,
    pub exponent_max: u32,
}

impl PantsCategory {
    pub fn new(field: Field, exponent_max: u32) -> Self {
        PantsCategory { field, exponent_max }
    }

    /// The six paths of length one.
    pub fn generators() -> Vec<PantsSym> {
        (0..3).flat_map(|e| [PantsSym::u(e), PantsSym::v(e)]).collect()
    }

    fn m2(&self, a: PantsSym, b: PantsSym) -> LinComb<PantsSym> {
        let (PantsSym::Path { edge: ea, len: la, .. }, PantsSym::Path { edge: eb, start, len: lb }) = (a, b) else {
            return unit_rule(self.field, &[a, b]);
        };
        if ea != eb {
            return Vec::new();
        }
        vec![(PantsSym::Path { edge: ea, start, len: la + lb }, self.field.sign(b.degree()))]
    }
}

impl AInfCategory for PantsCategory {
    type Sym = PantsSym;

    fn name(&self) -> String {
        "pants".into()
    }

    fn field(&self) -> Field {
        self.field
    }

    fn objects(&self) -> Vec<PantsObj> {
        (0..3).map(PantsObj).collect()
    }

    fn basis(&self, x: &PantsObj, y: &PantsObj, degree_max: i64) -> Vec<PantsSym> {
        let mut out = Vec::new();
        for edge in 0..3u8 {
            for start in [edge, next(edge)] {
                for len in 1..=2 * self.exponent_max + 1 {
                    let s = PantsSym::Path { edge, start, len };
                    if s.source() == *x && s.target() == *y && s.degree() <= degree_max {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    fn operation(&self, inputs: &[PantsSym]) -> Result<LinComb<PantsSym>, AInfError> {
        if inputs.iter().any(Morphism::is_identity) {
            return Ok(unit_rule(self.field, inputs));
        }
        match inputs {
            [a, b] => Ok(self.m2(*a, *b)),
            [a, b, c] => {
                // composable triples of u's (or of v's) go once around the triangle
                let is_u = |s: &PantsSym| matches!(*s, PantsSym::Path { edge, start, len: 1 } if edge == start);
                let is_v = |s: &PantsSym| matches!(*s, PantsSym::Path { edge, start, len: 1 } if edge != start);
                if [a, b, c].iter().all(|s| is_u(s)) || [a, b, c].iter().all(|s| is_v(s)) {
                    Ok(vec![(PantsSym::Id(c.source()), self.field.one())])
                } else {
                    Ok(Vec::new())
                }
            }
            _ => Ok(Vec::new()),
        }
    }
}
