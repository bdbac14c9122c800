//! A-infinity categories given by their operations on basis morphisms, and
//! checks on them: the A-infinity relations, strict unitality, the 1 <-> 2
//! symmetry, the classification of higher operations and table comparison.

mod checks;
mod expected;
mod finite;
mod transferred;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::linalg::{Field, Scalar};
use crate::transfer::{LinComb, Morphism, TransferError};

pub use checks::{
    classification_check, composable_tuples, diff_tables, kappa_symmetry_check, stasheff_check, stasheff_partial, stasheff_tuple,
    unitality_check, HIGHER_FORMS,
};
pub use expected::{expected_table, ExpectedTable};
pub use finite::{FinSym, TableCategory};
pub use transferred::TransferredCategory;
pub use checks::all_symbols;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AInfError {
    #[error(transparent)]
    Transfer(#[from] TransferError),
    #[error("operation outside the computed range: {0}")]
    OutOfRange(String),
    #[error("inputs are not composable")]
    NotComposable,
    #[error("table bounds differ: {0}")]
    BoundMismatch(String),
    #[error("{0}")]
    Invalid(String),
}

/// An A-infinity category with `m_1 = 0`, presented on a basis.
pub trait AInfCategory {
    type Sym: Morphism;

    fn name(&self) -> String;
    fn field(&self) -> Field;
    fn objects(&self) -> Vec<<Self::Sym as Morphism>::Obj>;
    /// Non-identity basis morphisms `x -> y` of degree at most `degree_max`.
    fn basis(&self, x: &<Self::Sym as Morphism>::Obj, y: &<Self::Sym as Morphism>::Obj, degree_max: i64) -> Vec<Self::Sym>;
    /// `m_d(f_d, ..., f_1)` as computed by the model, identities allowed.
    fn operation(&self, inputs: &[Self::Sym]) -> Result<LinComb<Self::Sym>, AInfError>;
}

/// `m_d` with strict unitality imposed: `m2(f, 1) = f`, `m2(1, g) = (-1)^|g| g`,
/// and every higher operation with a unit argument vanishes.
pub fn m<C: AInfCategory>(c: &C, inputs: &[C::Sym]) -> Result<LinComb<C::Sym>, AInfError> {
    crate::transfer::check_composable(inputs).map_err(|_| AInfError::NotComposable)?;
    if inputs.iter().any(Morphism::is_identity) {
        return Ok(unit_rule(c.field(), inputs));
    }
    c.operation(inputs)
}

pub fn unit_rule<S: Morphism>(field: Field, inputs: &[S]) -> LinComb<S> {
    match inputs {
        [f, one] if one.is_identity() => alloc::vec![(f.clone(), field.one())],
        [one, g] if one.is_identity() => alloc::vec![(g.clone(), field.sign(g.degree()))],
        _ => Vec::new(),
    }
}

/// Adds `c * x` into a sparse accumulator, dropping zero entries.
pub fn accumulate<S: Ord + Clone>(acc: &mut BTreeMap<S, Scalar>, x: &LinComb<S>, c: &Scalar) {
    for (s, v) in x {
        let add = v * c;
        let slot = acc.entry(s.clone()).or_insert_with(|| add.field().zero());
        slot.add_assign_ref(&add);
    }
    acc.retain(|_, v| !v.is_zero());
}

pub fn format_lincomb<S: Morphism>(x: &LinComb<S>) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> =
        x.iter().map(|(s, c)| if c.is_one() { s.to_string() } else { alloc::format!("{c}*{s}") }).collect();
    parts.join(" + ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub tuple: Vec<String>,
    pub expected: String,
    pub got: String,
}

/// Outcome of a check; never stops at the first violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub violations: Vec<Violation>,
    /// Number of instances examined.
    pub examined: usize,
}

impl Report {
    pub fn new(check: impl Into<String>, examined: usize, mut violations: Vec<Violation>) -> Self {
        violations.sort();
        let status = if violations.is_empty() { Status::Pass } else { Status::Fail };
        Report { check: check.into(), status, violations, examined }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub(crate) fn names<S: Morphism>(t: &[S]) -> Vec<String> {
    t.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests;
