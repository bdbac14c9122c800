use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::ainf::{all_symbols, format_lincomb, m, AInfCategory, AInfError, FinSym, Report, TableCategory, TransferredCategory, Violation};
use crate::linalg::Field;
use crate::symbols::{basis_symbols, ExtSymbol, Obj, Vertex};
use crate::transfer::{LinComb, SymbolicBackend};

use super::{build_delta, build_fukaya, tuples_over, verify_functor, AInfFunctorData, FormalSimples, PantsCategory, PantsObj, PantsSym, PiPrime, PiPrimeObj, PiPrimeSym};

use ExtSymbol::{Arrow, Odd, J, P};
use Vertex::{One, Two};

/// The minimal model over F2 from the symbolic backend, on all four objects.
pub fn pia2_f2(backend: &SymbolicBackend, degree_max: i64) -> TransferredCategory<'_, SymbolicBackend> {
    TransferredCategory::new("pia2", backend, basis_symbols(degree_max)).with_objects(Obj::ALL.to_vec())
}

fn one<T>(s: T) -> LinComb<T> {
    vec![(s, Field::F2.one())]
}

/// A functor out of a finite category given by names, strict (`F^d = 0` for `d >= 2`).
fn named(name: &str, source: &TableCategory, objects: &[(&str, Obj)], maps: &[(&str, ExtSymbol)]) -> AInfFunctorData<FinSym, ExtSymbol> {
    let objects = objects.iter().map(|(x, y)| (String::from(*x), *y)).collect();
    let table: BTreeMap<FinSym, LinComb<ExtSymbol>> =
        maps.iter().map(|(x, y)| (source.sym(x).expect("morphism of the source"), one(*y))).collect();
    AInfFunctorData::from_table(name, Field::F2, objects, table)
}

/// The inclusion of the simples.
pub fn iota() -> AInfFunctorData<ExtSymbol, ExtSymbol> {
    let objects = [One, Two].map(|v| (Obj::S(v), Obj::S(v))).into_iter().collect();
    AInfFunctorData::new("iota", Field::F2, objects, |s: &ExtSymbol| (s.source().is_simple() && s.target().is_simple()).then(|| one(*s)))
}

/// The triangle `S2 -> P1 -> S1 -> S2[1]`.
pub fn iota1() -> AInfFunctorData<FinSym, ExtSymbol> {
    let d = build_delta(Field::F2);
    let objs = [("A", Obj::S(Two)), ("B", Obj::P(One)), ("C", Obj::S(One))];
    named("iota1", &d, &objs, &[("alpha", J(One)), ("beta", P(One)), ("gamma", Odd(One, 0))])
}

/// The triangle `S1 -> P2 -> S2 -> S1[1]`.
pub fn iota2() -> AInfFunctorData<FinSym, ExtSymbol> {
    let d = build_delta(Field::F2);
    let objs = [("A", Obj::S(One)), ("B", Obj::P(Two)), ("C", Obj::S(Two))];
    named("iota2", &d, &objs, &[("alpha", J(Two)), ("beta", P(Two)), ("gamma", Odd(Two, 0))])
}

/// Grading of the quadrilateral used by both `kappa` functors.
pub const KAPPA_GRADING: [i64; 4] = [2, 0, 0, 0];

/// The quadrilateral `S1 -> S1 -> P2 -> P1 -> S1` with `m4(p1, (21), j2, u1) = 1`.
pub fn kappa1() -> AInfFunctorData<FinSym, ExtSymbol> {
    let f = build_fukaya(Field::F2, &KAPPA_GRADING).expect("grading adds up");
    let objs = [("X1", Obj::S(One)), ("X2", Obj::S(One)), ("X3", Obj::P(Two)), ("X4", Obj::P(One))];
    named("kappa1", &f, &objs, &[("f1", ExtSymbol::U(One, 1)), ("f2", J(Two)), ("f3", Arrow(Two)), ("f4", P(One))])
}

/// The image of `kappa1` under the symmetry exchanging the vertices.
pub fn kappa2() -> AInfFunctorData<FinSym, ExtSymbol> {
    let k1 = kappa1();
    let f = build_fukaya(Field::F2, &KAPPA_GRADING).expect("grading adds up");
    let objs: Vec<(String, Obj)> = k1.objects.iter().map(|(x, y)| (x.clone(), y.kappa())).collect();
    let objs: Vec<(&str, Obj)> = objs.iter().map(|(x, y)| (x.as_str(), *y)).collect();
    let maps: Vec<(String, ExtSymbol)> =
        f.symbols().iter().map(|s| (s.name.clone(), k1.f1(s).expect("defined")[0].0.kappa())).collect();
    let maps: Vec<(&str, ExtSymbol)> = maps.iter().map(|(x, y)| (x.as_str(), *y)).collect();
    named("kappa2", &f, &objs, &maps)
}

/// `G^1` on a pants path: polynomial loops and odd paths on the edge of
/// degree one go to the powers of `u` and the odd classes, the two other edges
/// go to the triangles through `P`, with every path longer than two to zero.
fn g1(s: &PantsSym) -> Option<LinComb<PiPrimeSym>> {
    let PantsSym::Path { edge, start, len } = *s else {
        return None;
    };
    let k = len / 2;
    let img = match (edge, len % 2, start == edge) {
        (0, 0, false) => Some(ExtSymbol::U(Two, k)),
        (0, 0, true) => Some(ExtSymbol::U(One, k)),
        (0, _, true) => Some(Odd(One, k)),
        (0, _, false) => Some(Odd(Two, k)),
        (1, 0, false) if k == 1 => Some(Arrow(Two)),
        (1, _, true) if len == 1 => Some(J(One)),
        (1, _, false) if len == 1 => Some(P(Two)),
        (2, 0, true) if k == 1 => Some(Arrow(One)),
        (2, _, true) if len == 1 => Some(P(One)),
        (2, _, false) if len == 1 => Some(J(Two)),
        _ => None,
    };
    Some(img.map(|e| one(PiPrimeSym::Ext(e))).unwrap_or_default())
}

/// The functor from the pants category to the model with `P = P1 + P2`.
pub fn g_functor() -> AInfFunctorData<PantsSym, PiPrimeSym> {
    let objects = [(0, PiPrimeObj::S(One)), (1, PiPrimeObj::S(Two)), (2, PiPrimeObj::P)]
        .into_iter()
        .map(|(i, y)| (PantsObj(i), y))
        .collect();
    AInfFunctorData::new("G", Field::F2, objects, g1)
}

/// The name of a built-in functor with its verification report.
#[derive(Clone, Debug)]
pub struct BuiltinReport {
    pub functor: String,
    pub report: Report,
}

/// `m2(G x_i, G y_i)` and `m2(G y_i, G x_i)` at each object, which must vanish
/// since `x_i y_i = 0`.
pub fn pants_relation_images<C: AInfCategory<Sym = ExtSymbol>>(
    target: &PiPrime<'_, C>,
) -> Result<Vec<(Vec<String>, LinComb<PiPrimeSym>)>, AInfError> {
    let g = g_functor();
    let mut out = Vec::new();
    for i in 0..3 {
        let (x, y) = (PantsSym::x(i, 1), PantsSym::y(i, 1));
        for (a, b) in [(x, y), (y, x)] {
            let (ga, gb) = (g.f1(&a)?, g.f1(&b)?);
            let mut acc = BTreeMap::new();
            for (sa, ca) in &ga {
                for (sb, cb) in &gb {
                    crate::ainf::accumulate(&mut acc, &m(target, &[*sa, *sb])?, &(ca * cb));
                }
            }
            out.push((vec![a.to_string(), b.to_string()], acc.into_iter().collect()));
        }
    }
    Ok(out)
}

/// The pants tuples a functor out of the pants category is checked on: pairs
/// of basis morphisms of degree at most `degree_max`, and composable tuples of
/// the six generators up to `arity_max`. Longer tuples of longer paths are not
/// covered, since only the listed `m3`'s are modelled.
pub fn pants_scope(pants: &PantsCategory, arity_max: usize, degree_max: i64) -> Vec<Vec<PantsSym>> {
    let mut tuples: Vec<Vec<PantsSym>> =
        tuples_over(&all_symbols(pants, degree_max), 2.min(arity_max)).into_iter().filter(|t| t.len() == 2).collect();
    tuples.extend(tuples_over(&PantsCategory::generators(), arity_max).into_iter().filter(|t| t.len() >= 3));
    tuples
}

/// Runs the six built-in functors against their targets over F2: every
/// composable tuple of basis morphisms of degree at most `degree_max` up to
/// `arity_max` inputs, except for the pants category, where pairs of basis
/// morphisms (exponent at most `degree_max`) and tuples of the six generators
/// are checked, together with the images of the relations `x_i y_i = 0`.
pub fn builtin_suite(arity_max: usize, degree_max: i64) -> Result<Vec<BuiltinReport>, AInfError> {
    let backend = SymbolicBackend;
    let pi = pia2_f2(&backend, degree_max);
    let mut out = Vec::new();
    let mut push = |name: &str, report: Report| out.push(BuiltinReport { functor: name.into(), report });

    let simples = FormalSimples;
    let tuples = tuples_over(&all_symbols(&simples, degree_max), arity_max);
    push("iota", verify_functor(&iota(), &simples, &pi, &tuples)?);

    let delta = build_delta(Field::F2);
    let tuples = tuples_over(&delta.symbols(), arity_max);
    push("iota1", verify_functor(&iota1(), &delta, &pi, &tuples)?);
    push("iota2", verify_functor(&iota2(), &delta, &pi, &tuples)?);

    let quad = build_fukaya(Field::F2, &KAPPA_GRADING)?;
    let tuples = tuples_over(&quad.symbols(), arity_max);
    push("kappa1", verify_functor(&kappa1(), &quad, &pi, &tuples)?);
    push("kappa2", verify_functor(&kappa2(), &quad, &pi, &tuples)?);

    let pants = PantsCategory::new(Field::F2, degree_max.max(1) as u32);
    let pi_prime = PiPrime::new(&pi);
    let tuples = pants_scope(&pants, arity_max, degree_max);
    let mut r = verify_functor(&g_functor(), &pants, &pi_prime, &tuples)?;
    let mut bad = r.violations.clone();
    let relations = pants_relation_images(&pi_prime)?;
    for (t, v) in &relations {
        if !v.is_empty() {
            bad.push(Violation { tuple: t.clone(), expected: "0".into(), got: format_lincomb(v) });
        }
    }
    r = Report::new(r.check, r.examined + relations.len(), bad);
    push("G", r);
    Ok(out)
}
