use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Scalar;
use crate::symbols::{ExtSymbol, Vertex};
use crate::transfer::{LinComb, Morphism, OperationTable};

use super::{accumulate, format_lincomb, m, names, AInfCategory, AInfError, Report, Violation};

/// Composable identity-free tuples `f_d, ..., f_1` with `f_1 = first`, every
/// input of degree at most `degree_max` and `2 <= d <= d_max` (length 1 is
/// skipped). Listed depth first in basis order.
pub fn composable_tuples<C: AInfCategory>(c: &C, first: &C::Sym, d_max: usize, degree_max: i64) -> Vec<Vec<C::Sym>> {
    let objects = c.objects();
    let mut out = Vec::new();
    let mut stack = vec![first.clone()];
    fn go<C: AInfCategory>(
        c: &C,
        objects: &[<C::Sym as Morphism>::Obj],
        stack: &mut Vec<C::Sym>,
        d_max: usize,
        degree_max: i64,
        out: &mut Vec<Vec<C::Sym>>,
    ) {
        if stack.len() >= 2 {
            out.push(stack.iter().rev().cloned().collect());
        }
        if stack.len() >= d_max {
            return;
        }
        let end = stack.last().expect("nonempty").target();
        for y in objects {
            for g in c.basis(&end, y, degree_max) {
                stack.push(g);
                go(c, objects, stack, d_max, degree_max, out);
                stack.pop();
            }
        }
    }
    go(c, &objects, &mut stack, d_max, degree_max, &mut out);
    out
}

/// Non-identity basis morphisms of degree at most `degree_max`.
pub fn all_symbols<C: AInfCategory>(c: &C, degree_max: i64) -> Vec<C::Sym> {
    let objects = c.objects();
    let mut out = Vec::new();
    for x in &objects {
        for y in &objects {
            out.extend(c.basis(x, y, degree_max).into_iter().filter(|s| !s.is_identity()));
        }
    }
    out
}

/// The left side of the A-infinity relation on `f_d, ..., f_1`:
/// the sum over `n, k` of `(-1)^(|f_1| + ... + |f_n| - n) m(f_d, ..., m_k(f_{n+k}, ..., f_{n+1}), f_n, ..., f_1)`
/// with `2 <= k <= d - 1`, since `m_1 = 0`.
pub fn stasheff_tuple<C: AInfCategory>(c: &C, inputs: &[C::Sym]) -> Result<LinComb<C::Sym>, AInfError> {
    let d = inputs.len();
    let field = c.field();
    let mut acc: BTreeMap<C::Sym, Scalar> = BTreeMap::new();
    for k in 2..d {
        for n in 0..=d - k {
            // f_1..f_n are the last n entries
            let right = &inputs[d - n..];
            let inner = &inputs[d - n - k..d - n];
            let exp: i64 = right.iter().map(Morphism::degree).sum::<i64>() - n as i64;
            let sign = field.sign(exp);
            for (s, coeff) in m(c, inner)? {
                let mut outer: Vec<C::Sym> = inputs[..d - n - k].to_vec();
                outer.push(s);
                outer.extend_from_slice(right);
                let val = m(c, &outer)?;
                accumulate(&mut acc, &val, &(&coeff * &sign));
            }
        }
    }
    Ok(acc.into_iter().collect())
}

/// Relation check on every tuple starting with one of `firsts`, arity
/// `3..=d_max`. Returns the number of tuples examined and the violations.
pub fn stasheff_partial<C: AInfCategory>(
    c: &C,
    firsts: &[C::Sym],
    d_max: usize,
    degree_max: i64,
) -> Result<(usize, Vec<Violation>), AInfError> {
    let mut examined = 0;
    let mut bad = Vec::new();
    for f in firsts {
        for t in composable_tuples(c, f, d_max, degree_max) {
            if t.len() < 3 {
                continue;
            }
            examined += 1;
            let r = stasheff_tuple(c, &t)?;
            if !r.is_empty() {
                bad.push(Violation { tuple: names(&t), expected: "0".into(), got: format_lincomb(&r) });
            }
        }
    }
    Ok((examined, bad))
}

pub fn stasheff_check<C: AInfCategory>(c: &C, d_max: usize, degree_max: i64) -> Result<Report, AInfError> {
    let firsts = all_symbols(c, degree_max);
    let (examined, bad) = stasheff_partial(c, &firsts, d_max, degree_max)?;
    Ok(Report::new("stasheff", examined, bad))
}

/// Compares the model's own operations on tuples containing identities with
/// the unit laws: both m2 laws on every basis morphism, and vanishing of every
/// operation of arity `3..=d_max` with one identity inserted into a composable
/// tuple.
pub fn unitality_check<C: AInfCategory>(c: &C, d_max: usize, degree_max: i64) -> Result<Report, AInfError> {
    let field = c.field();
    let mut examined = 0;
    let mut bad = Vec::new();
    let mut test = |t: Vec<C::Sym>, want: LinComb<C::Sym>| -> Result<(), AInfError> {
        examined += 1;
        let got = c.operation(&t)?;
        if got != want {
            bad.push(Violation { tuple: names(&t), expected: format_lincomb(&want), got: format_lincomb(&got) });
        }
        Ok(())
    };
    let symbols = all_symbols(c, degree_max);
    for f in &symbols {
        let (one_s, one_t) = (C::Sym::identity(f.source()), C::Sym::identity(f.target()));
        test(vec![f.clone(), one_s], vec![(f.clone(), field.one())])?;
        test(vec![one_t, f.clone()], vec![(f.clone(), field.sign(f.degree()))])?;
    }
    for f in &symbols {
        for t in composable_tuples(c, f, d_max.saturating_sub(1), degree_max) {
            for pos in 0..=t.len() {
                let obj = if pos == t.len() { t[pos - 1].source() } else { t[pos].target() };
                let mut u = t.clone();
                u.insert(pos, C::Sym::identity(obj));
                test(u, Vec::new())?;
            }
        }
    }
    for x in c.objects() {
        let one = C::Sym::identity(x);
        test(vec![one.clone(), one.clone()], vec![(one, field.one())])?;
    }
    Ok(Report::new("unitality", examined, bad))
}

fn entry_str<S: Morphism>(e: Option<&LinComb<S>>) -> alloc::string::String {
    e.map_or_else(|| "0".into(), format_lincomb)
}

/// Entry by entry comparison: tuples only in `a`, only in `b`, and with
/// different values. With `support_only`, coefficients are compared up to
/// sign (for tables over Q whose signs are convention dependent).
pub fn diff_tables<S: Morphism>(a: &OperationTable<S>, b: &OperationTable<S>, support_only: bool) -> Result<Report, AInfError> {
    let (ma, mb) = (&a.meta, &b.meta);
    if ma.arity_max != mb.arity_max || ma.degree_max != mb.degree_max || ma.field != mb.field {
        return Err(AInfError::BoundMismatch(format!(
            "arity {} vs {}, degree {} vs {}, field {} vs {}",
            ma.arity_max,
            mb.arity_max,
            ma.degree_max,
            mb.degree_max,
            ma.field.name(),
            mb.field.name()
        )));
    }
    let same = |x: &LinComb<S>, y: &LinComb<S>| {
        if support_only {
            x.len() == y.len() && x.iter().zip(y).all(|(p, q)| p.0 == q.0 && (p.1 == q.1 || p.1 == -q.1.clone()))
        } else {
            x == y
        }
    };
    let mut bad = Vec::new();
    let mut keys: Vec<&Vec<S>> = a.entries().map(|(k, _)| k).chain(b.entries().map(|(k, _)| k)).collect();
    keys.sort();
    keys.dedup();
    for k in &keys {
        let (x, y) = (a.get(k), b.get(k));
        let ok = match (x, y) {
            (Some(x), Some(y)) => same(x, y),
            _ => false,
        };
        if !ok {
            bad.push(Violation { tuple: names(k), expected: entry_str(x), got: entry_str(y) });
        }
    }
    Ok(Report::new("diff", keys.len(), bad))
}

/// Invariance under the symmetry exchanging the vertices 1 and 2.
pub fn kappa_symmetry_check(table: &OperationTable<ExtSymbol>) -> Report {
    let mut bad = Vec::new();
    for (k, v) in table.entries() {
        let kk: Vec<ExtSymbol> = k.iter().map(ExtSymbol::kappa).collect();
        let mut want: LinComb<ExtSymbol> = v.iter().map(|(s, c)| (s.kappa(), c.clone())).collect();
        want.sort_by_key(|x| x.0);
        let got = table.get(&kk);
        if got != Some(&want) {
            bad.push(Violation { tuple: names(&kk), expected: format_lincomb(&want), got: entry_str(got) });
        }
    }
    Report::new("kappa", table.len(), bad)
}

/// Consecutive factors one of which every higher operation is predicted to
/// contain, for a given repetition count: `p2 (121)^n j2`, `p2 (121)^(n+1)`,
/// `p2 (121)^n (12)`, `p2 (121)^n (12) j1` and their images under the symmetry.
pub const HIGHER_FORMS: usize = 8;

fn listed_forms(n_max: usize) -> Vec<Vec<ExtSymbol>> {
    use ExtSymbol::{Arrow, J, P};
    use Vertex::{One, Two};
    let mut out = Vec::new();
    for n in 0..=n_max {
        let r = |k: usize| [Arrow(One), Arrow(Two)].repeat(k);
        let forms = [
            [vec![P(Two)], r(n), vec![J(Two)]].concat(),
            [vec![P(Two)], r(n + 1)].concat(),
            [vec![P(Two)], r(n), vec![Arrow(One)]].concat(),
            [vec![P(Two)], r(n), vec![Arrow(One), J(One)]].concat(),
        ];
        debug_assert_eq!(2 * forms.len(), HIGHER_FORMS);
        for f in forms {
            out.push(f.iter().map(ExtSymbol::kappa).collect());
            out.push(f);
        }
    }
    out
}

/// `j1` followed (as the next input applied) by `b.u1^k` or `u2^k`, and its
/// image under the symmetry. Every entry missed by the listed forms has one.
fn has_unit_seed(t: &[ExtSymbol]) -> bool {
    t.windows(2).any(|w| {
        matches!(
            (w[0], w[1]),
            (ExtSymbol::J(Vertex::One), ExtSymbol::Odd(Vertex::One, _) | ExtSymbol::U(Vertex::Two, _))
                | (ExtSymbol::J(Vertex::Two), ExtSymbol::Odd(Vertex::Two, _) | ExtSymbol::U(Vertex::One, _))
        )
    })
}

/// Every operation of arity at least 3 must contain one of the listed forms
/// as consecutive inputs; with `extended`, containing `j1, b.u1^k`,
/// `j1, u2^k` or their symmetric images also suffices.
pub fn classification_check(table: &OperationTable<ExtSymbol>, extended: bool) -> Report {
    let forms = listed_forms(table.meta.arity_max);
    let mut bad = Vec::new();
    let mut examined = 0;
    for (k, v) in table.entries() {
        if k.len() < 3 {
            continue;
        }
        examined += 1;
        let listed = forms.iter().any(|f| f.len() <= k.len() && k.windows(f.len()).any(|w| w == f.as_slice()));
        if !listed && !(extended && has_unit_seed(k)) {
            bad.push(Violation { tuple: names(k), expected: "a listed form".to_string(), got: format_lincomb(v) });
        }
    }
    Report::new(if extended { "classification-extended" } else { "classification" }, examined, bad)
}
