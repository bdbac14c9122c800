//! Small A-infinity categories given by generators (the triangle category, the
//! disk categories `F_n`, the formal subcategory on the simples, the pants
//! category and the category with `P1 + P2` merged) and A-infinity functors
//! between them and the minimal model.

mod builtin;
mod categories;
mod pants;
mod pi_prime;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::ainf::{accumulate, format_lincomb, m, AInfCategory, AInfError, Report, Violation};
use crate::linalg::{Field, Scalar};
use crate::transfer::{LinComb, Morphism};

pub use builtin::{
    builtin_suite, g_functor, iota, iota1, iota2, kappa1, kappa2, pants_relation_images, pants_scope, pia2_f2, BuiltinReport, KAPPA_GRADING,
};
pub use categories::{build_delta, build_fukaya, FormalSimples};
pub use pants::{PantsCategory, PantsObj, PantsSym};
pub use pi_prime::{PiPrime, PiPrimeObj, PiPrimeSym};

type F1Fn<S, T> = Box<dyn Fn(&S) -> Option<LinComb<T>>>;

/// An A-infinity functor: object map, `F^1` on basis morphisms and the
/// nonzero higher components on identity-free tuples.
pub struct AInfFunctorData<S: Morphism, T: Morphism> {
    pub name: String,
    pub field: Field,
    pub objects: BTreeMap<S::Obj, T::Obj>,
    f1: F1Fn<S, T>,
    pub higher: BTreeMap<Vec<S>, LinComb<T>>,
}

impl<S: Morphism, T: Morphism> AInfFunctorData<S, T> {
    /// `f1` returns `None` where the functor is undefined. Identities are
    /// handled here and never passed to it.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        objects: BTreeMap<S::Obj, T::Obj>,
        f1: impl Fn(&S) -> Option<LinComb<T>> + 'static,
    ) -> Self {
        AInfFunctorData { name: name.into(), field, objects, f1: Box::new(f1), higher: BTreeMap::new() }
    }

    /// `F^1` given by a finite table.
    pub fn from_table(name: impl Into<String>, field: Field, objects: BTreeMap<S::Obj, T::Obj>, table: BTreeMap<S, LinComb<T>>) -> Self
    where
        S: 'static,
        T: 'static,
    {
        Self::new(name, field, objects, move |s| table.get(s).cloned())
    }

    pub fn object(&self, x: &S::Obj) -> Option<&T::Obj> {
        self.objects.get(x)
    }

    pub fn f1(&self, s: &S) -> Result<LinComb<T>, AInfError> {
        if s.is_identity() {
            let y = self.object(&s.source()).ok_or_else(|| AInfError::Invalid(format!("no image for object {}", s.source())))?;
            return Ok(vec![(T::identity(y.clone()), self.field.one())]);
        }
        (self.f1)(s).ok_or_else(|| AInfError::Invalid(format!("F1 undefined on {s}")))
    }

    /// `F^d` for `d >= 2`; zero on tuples containing identities.
    pub fn fd(&self, inputs: &[S]) -> LinComb<T> {
        if inputs.iter().any(Morphism::is_identity) {
            return Vec::new();
        }
        self.higher.get(inputs).cloned().unwrap_or_default()
    }
}

/// `m_d` of the target on linear combinations, expanded multilinearly.
fn m_multi<D: AInfCategory>(d: &D, args: &[LinComb<D::Sym>]) -> Result<LinComb<D::Sym>, AInfError> {
    let field = d.field();
    let mut acc: BTreeMap<D::Sym, Scalar> = BTreeMap::new();
    let mut idx = vec![0usize; args.len()];
    if args.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    loop {
        let syms: Vec<D::Sym> = idx.iter().zip(args).map(|(&i, a)| a[i].0.clone()).collect();
        let mut c = field.one();
        for (&i, a) in idx.iter().zip(args) {
            c = &c * &a[i].1;
        }
        let out = m(d, &syms)?;
        accumulate(&mut acc, &out, &c);
        // next multi-index
        let mut k = args.len();
        loop {
            if k == 0 {
                return Ok(acc.into_iter().collect());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < args[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Compositions of `d` into at least two positive parts, parts listed from
/// the input applied first.
fn compositions(d: usize, only_ones: bool) -> Vec<Vec<usize>> {
    if only_ones {
        return if d >= 2 { vec![vec![1; d]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << (d - 1)) {
        let mut parts = Vec::new();
        let mut len = 1;
        for b in 0..d - 1 {
            if mask & (1 << b) != 0 {
                parts.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        parts.push(len);
        if parts.len() >= 2 {
            out.push(parts);
        }
    }
    out
}

/// Value of `F^k` on `part` (inputs as written), `k = part.len()`.
fn component<C: AInfCategory, D: AInfCategory>(
    f: &AInfFunctorData<C::Sym, D::Sym>,
    part: &[C::Sym],
) -> Result<LinComb<D::Sym>, AInfError> {
    if part.len() == 1 {
        return f.f1(&part[0]);
    }
    Ok(f.fd(part))
}

/// Both sides of the functor equation on `f_d, ..., f_1`, `d >= 2`:
/// `sum m_r(F(..), ..., F(..))` and `sum (-1)^(|f_1| + ... + |f_n| - n) F(f_d, .., m_k(..), f_n, .., f_1)`.
pub fn functor_sides<C: AInfCategory, D: AInfCategory>(
    f: &AInfFunctorData<C::Sym, D::Sym>,
    c: &C,
    d: &D,
    inputs: &[C::Sym],
) -> Result<(LinComb<D::Sym>, LinComb<D::Sym>), AInfError> {
    let n_in = inputs.len();
    let field = d.field();
    let mut lhs: BTreeMap<D::Sym, Scalar> = BTreeMap::new();
    for parts in compositions(n_in, f.higher.is_empty()) {
        let mut args = Vec::with_capacity(parts.len());
        let mut end = n_in;
        for &p in &parts {
            args.push(component::<C, D>(f, &inputs[end - p..end])?);
            end -= p;
        }
        args.reverse();
        let out = m_multi(d, &args)?;
        accumulate(&mut lhs, &out, &field.one());
    }
    let mut rhs: BTreeMap<D::Sym, Scalar> = BTreeMap::new();
    for k in 2..=n_in {
        for n in 0..=n_in - k {
            let outer_len = n_in - k + 1;
            if outer_len >= 2 && f.higher.is_empty() {
                continue;
            }
            let right = &inputs[n_in - n..];
            let exp: i64 = right.iter().map(Morphism::degree).sum::<i64>() - n as i64;
            let sign = field.sign(exp);
            for (s, coeff) in m(c, &inputs[n_in - n - k..n_in - n])? {
                let mut outer: Vec<C::Sym> = inputs[..n_in - n - k].to_vec();
                outer.push(s);
                outer.extend_from_slice(right);
                let val = component::<C, D>(f, &outer)?;
                accumulate(&mut rhs, &val, &(&coeff * &sign));
            }
        }
    }
    Ok((lhs.into_iter().collect(), rhs.into_iter().collect()))
}

/// Composable tuples `f_d, ..., f_1` of length `1..=arity_max` drawn from `symbols`.
pub fn tuples_over<S: Morphism>(symbols: &[S], arity_max: usize) -> Vec<Vec<S>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<S>> = symbols.iter().map(|s| vec![s.clone()]).collect();
    for len in 1..=arity_max {
        if len > 1 {
            let mut next = Vec::new();
            for t in &layer {
                for s in symbols.iter().filter(|s| s.source() == t[0].target()) {
                    let mut u = vec![s.clone()];
                    u.extend_from_slice(t);
                    next.push(u);
                }
            }
            layer = next;
        }
        out.extend(layer.iter().cloned());
    }
    out
}

/// Checks the object map, degrees and endpoints of `F^1`, unit preservation,
/// and the functor equation on every tuple of length at least 2.
pub fn verify_functor<C: AInfCategory, D: AInfCategory>(
    f: &AInfFunctorData<C::Sym, D::Sym>,
    c: &C,
    d: &D,
    tuples: &[Vec<C::Sym>],
) -> Result<Report, AInfError> {
    let mut bad = Vec::new();
    let mut examined = 0;
    let viol = |t: &[C::Sym], e: String, g: String| Violation { tuple: t.iter().map(ToString::to_string).collect(), expected: e, got: g };
    for x in c.objects() {
        examined += 1;
        let Some(y) = f.object(&x) else {
            bad.push(Violation { tuple: vec![x.to_string()], expected: "an object".into(), got: "none".into() });
            continue;
        };
        let one = f.f1(&C::Sym::identity(x.clone()))?;
        let want = vec![(D::Sym::identity(y.clone()), d.field().one())];
        if one != want {
            bad.push(viol(&[C::Sym::identity(x)], format_lincomb(&want), format_lincomb(&one)));
        }
    }
    let mut seen = alloc::collections::BTreeSet::new();
    for t in tuples {
        for s in t {
            if !seen.insert(s.clone()) {
                continue;
            }
            examined += 1;
            let img = match f.f1(s) {
                Ok(v) => v,
                Err(e) => {
                    bad.push(viol(core::slice::from_ref(s), "a value".into(), e.to_string()));
                    continue;
                }
            };
            let (fx, fy) = (f.object(&s.source()), f.object(&s.target()));
            for (g, _) in &img {
                if Some(&g.source()) != fx || Some(&g.target()) != fy || g.degree() != s.degree() {
                    bad.push(viol(core::slice::from_ref(s), format!("degree {} map {:?} -> {:?}", s.degree(), fx, fy), g.to_string()));
                }
            }
        }
    }
    if !bad.is_empty() {
        return Ok(Report::new(format!("functor {}", f.name), examined, bad));
    }
    for t in tuples.iter().filter(|t| t.len() >= 2) {
        examined += 1;
        let (lhs, rhs) = functor_sides(f, c, d, t)?;
        if lhs != rhs {
            bad.push(viol(t, format_lincomb(&rhs), format_lincomb(&lhs)));
        }
    }
    Ok(Report::new(format!("functor {}", f.name), examined, bad))
}
