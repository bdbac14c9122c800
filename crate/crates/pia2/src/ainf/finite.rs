use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Field;
use crate::transfer::{LinComb, Morphism};

use super::{AInfCategory, AInfError};

/// A named basis morphism of a finite category.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSym {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
}

impl FinSym {
    pub fn new(name: impl Into<String>, source: impl Into<String>, target: impl Into<String>, degree: i64) -> Self {
        FinSym { name: name.into(), source: source.into(), target: target.into(), degree }
    }
}

impl fmt::Display for FinSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Morphism for FinSym {
    type Obj = String;

    fn source(&self) -> String {
        self.source.clone()
    }

    fn target(&self) -> String {
        self.target.clone()
    }

    fn degree(&self) -> i64 {
        self.degree
    }

    fn is_identity(&self) -> bool {
        self.source == self.target && self.degree == 0 && self.name.strip_prefix("1_") == Some(self.source.as_str())
    }

    fn identity(o: String) -> Self {
        FinSym { name: format!("1_{o}"), degree: 0, target: o.clone(), source: o }
    }
}

/// A category with finitely many basis morphisms and every nonzero operation
/// listed explicitly. Unlisted operations on identity-free tuples are zero.
#[derive(Clone, Debug)]
pub struct TableCategory {
    name: String,
    field: Field,
    objects: Vec<String>,
    symbols: BTreeMap<String, FinSym>,
    ops: BTreeMap<Vec<FinSym>, LinComb<FinSym>>,
}

impl TableCategory {
    pub fn new(name: impl Into<String>, field: Field, objects: &[&str]) -> Self {
        TableCategory {
            name: name.into(),
            field,
            objects: objects.iter().map(|s| String::from(*s)).collect(),
            symbols: BTreeMap::new(),
            ops: BTreeMap::new(),
        }
    }

    pub fn add_morphism(&mut self, name: &str, source: &str, target: &str, degree: i64) -> Result<FinSym, AInfError> {
        if !self.objects.iter().any(|o| o == source) || !self.objects.iter().any(|o| o == target) {
            return Err(AInfError::Invalid(format!("{name}: unknown endpoint")));
        }
        if self.symbols.contains_key(name) || name.starts_with("1_") {
            return Err(AInfError::Invalid(format!("duplicate or reserved name {name}")));
        }
        let s = FinSym::new(name, source, target, degree);
        self.symbols.insert(name.into(), s.clone());
        Ok(s)
    }

    /// Looks up a basis morphism or identity by name.
    pub fn sym(&self, name: &str) -> Option<FinSym> {
        if let Some(o) = name.strip_prefix("1_") {
            return self.objects.iter().any(|x| x == o).then(|| FinSym::identity(o.into()));
        }
        self.symbols.get(name).cloned()
    }

    /// Records `m_d(inputs) = out`, checking composability and degree.
    pub fn set_operation(&mut self, inputs: &[&str], out: &[(&str, i64)]) -> Result<(), AInfError> {
        let tuple = inputs
            .iter()
            .map(|n| self.sym(n).ok_or_else(|| AInfError::Invalid(format!("unknown morphism {n}"))))
            .collect::<Result<Vec<_>, _>>()?;
        crate::transfer::check_composable(&tuple).map_err(|_| AInfError::NotComposable)?;
        if tuple.len() < 2 || tuple.iter().any(Morphism::is_identity) {
            return Err(AInfError::Invalid("operations are set on identity-free tuples of arity at least 2".into()));
        }
        let want = crate::transfer::sum_degree(&tuple) + 2 - tuple.len() as i64;
        let (src, tgt) = (tuple.last().expect("nonempty").source(), tuple[0].target());
        let mut lc = Vec::new();
        for (n, c) in out {
            let s = self.sym(n).ok_or_else(|| AInfError::Invalid(format!("unknown morphism {n}")))?;
            if s.degree != want || s.source != src || s.target != tgt {
                return Err(AInfError::Invalid(format!("{n} does not fit m_{}", tuple.len())));
            }
            let c = self.field.int(*c);
            if !c.is_zero() {
                lc.push((s, c));
            }
        }
        lc.sort_by(|a, b| a.0.cmp(&b.0));
        if lc.is_empty() {
            self.ops.remove(&tuple);
        } else {
            self.ops.insert(tuple, lc);
        }
        Ok(())
    }

    pub fn symbols(&self) -> Vec<FinSym> {
        self.symbols.values().cloned().collect()
    }

    pub fn operations(&self) -> impl Iterator<Item = (&Vec<FinSym>, &LinComb<FinSym>)> {
        self.ops.iter()
    }
}

impl AInfCategory for TableCategory {
    type Sym = FinSym;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn field(&self) -> Field {
        self.field
    }

    fn objects(&self) -> Vec<String> {
        self.objects.clone()
    }

    fn basis(&self, x: &String, y: &String, degree_max: i64) -> Vec<FinSym> {
        self.symbols.values().filter(|s| &s.source == x && &s.target == y && s.degree <= degree_max).cloned().collect()
    }

    fn operation(&self, inputs: &[FinSym]) -> Result<LinComb<FinSym>, AInfError> {
        if inputs.iter().any(Morphism::is_identity) {
            return Ok(super::unit_rule(self.field, inputs));
        }
        Ok(self.ops.get(inputs).cloned().unwrap_or_default())
    }
}
