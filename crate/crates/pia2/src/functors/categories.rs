use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ainf::{unit_rule, AInfCategory, AInfError, TableCategory};
use crate::linalg::Field;
use crate::symbols::{hom_basis, mu, project, ExtSymbol, Obj, SymbolicElement, Vertex};
use crate::transfer::{LinComb, Morphism};

/// The triangle category: `alpha: A -> B`, `beta: B -> C` of degree 0,
/// `gamma: C -> A` of degree 1, composites of neighbours zero and the three
/// rotations of `m3(gamma, beta, alpha)` equal to identities.
pub fn build_delta(field: Field) -> TableCategory {
    let mut c = TableCategory::new("delta", field, &["A", "B", "C"]);
    let ok = "fixed data is consistent";
    c.add_morphism("alpha", "A", "B", 0).expect(ok);
    c.add_morphism("beta", "B", "C", 0).expect(ok);
    c.add_morphism("gamma", "C", "A", 1).expect(ok);
    c.set_operation(&["gamma", "beta", "alpha"], &[("1_A", 1)]).expect(ok);
    c.set_operation(&["alpha", "gamma", "beta"], &[("1_B", 1)]).expect(ok);
    c.set_operation(&["beta", "alpha", "gamma"], &[("1_C", 1)]).expect(ok);
    c
}

/// The disk with `n` boundary points: `f_i: X_i -> X_{i+1}` (indices mod n)
/// of degree `grading[i - 1]`, and `m_n(f_{i-1}, ..., f_{i+1}, f_i) = 1_{X_i}`
/// for every rotation. The degrees must add up to `n - 2`.
pub fn build_fukaya(field: Field, grading: &[i64]) -> Result<TableCategory, AInfError> {
    let n = grading.len();
    if n < 3 {
        return Err(AInfError::Invalid(format!("need at least 3 boundary points, got {n}")));
    }
    let total: i64 = grading.iter().sum();
    if total != n as i64 - 2 {
        return Err(AInfError::Invalid(format!("degrees add up to {total}, not {}", n - 2)));
    }
    let objects: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let obj_refs: Vec<&str> = objects.iter().map(String::as_str).collect();
    let mut c = TableCategory::new(format!("F{n}"), field, &obj_refs);
    let names: Vec<String> = (1..=n).map(|i| format!("f{i}")).collect();
    for i in 0..n {
        c.add_morphism(&names[i], &objects[i], &objects[(i + 1) % n], grading[i])?;
    }
    for i in 0..n {
        // f_i applied first, written last
        let tuple: Vec<&str> = (0..n).map(|k| names[(i + n - 1 - k) % n].as_str()).collect();
        let one = format!("1_{}", objects[i]);
        c.set_operation(&tuple, &[(one.as_str(), 1)])?;
    }
    Ok(c)
}

/// The full subcategory of the simples with its composition only. Over F2,
/// since the composition table carries no signs.
#[derive(Clone, Copy, Debug, Default)]
pub struct FormalSimples;

impl AInfCategory for FormalSimples {
    type Sym = ExtSymbol;

    fn name(&self) -> String {
        "simples".into()
    }

    fn field(&self) -> Field {
        Field::F2
    }

    fn objects(&self) -> Vec<Obj> {
        Vec::from([Obj::S(Vertex::One), Obj::S(Vertex::Two)])
    }

    fn basis(&self, x: &Obj, y: &Obj, degree_max: i64) -> Vec<ExtSymbol> {
        if !x.is_simple() || !y.is_simple() {
            return Vec::new();
        }
        hom_basis(*x, *y, degree_max).into_iter().filter(|s| !s.is_identity()).collect()
    }

    fn operation(&self, inputs: &[ExtSymbol]) -> Result<LinComb<ExtSymbol>, AInfError> {
        if inputs.iter().any(|s| !s.source().is_simple() || !s.target().is_simple()) {
            return Err(AInfError::Invalid("only the simples are objects".into()));
        }
        if inputs.iter().any(Morphism::is_identity) {
            return Ok(unit_rule(Field::F2, inputs));
        }
        if inputs.len() != 2 {
            return Ok(Vec::new());
        }
        let e = mu(&SymbolicElement::Ext(inputs[0]), &SymbolicElement::Ext(inputs[1]))
            .map_err(|e| AInfError::Invalid(format!("{e}")))?;
        Ok(project(&e).map(|s| Vec::from([(s, Field::F2.one())])).unwrap_or_default())
    }
}
