use super::*;
use crate::complexes::instances::{pia2_contraction, DEFAULT_WINDOW};
use crate::complexes::HomotopyMode;
use crate::symbols::{basis_symbols, ExtSymbol, Obj};
use crate::transfer::{compute_operation_table, MatrixBackend, OperationTable, SymbolicBackend, TableMeta};
use alloc::vec;

fn syms(names: &[&str]) -> Vec<ExtSymbol> {
    names.iter().map(|s| s.parse().unwrap()).collect()
}

fn sym(name: &str) -> ExtSymbol {
    name.parse().unwrap()
}

fn meta(arity_max: usize, degree_max: i64) -> TableMeta {
    TableMeta { arity_max, degree_max, field: Field::F2, backend: "symbolic".into(), homotopy: "paper".into(), window: None }
}

fn computed(arity_max: usize, degree_max: i64) -> OperationTable<ExtSymbol> {
    compute_operation_table(&SymbolicBackend, &basis_symbols(degree_max), meta(arity_max, degree_max), 1 << 24).unwrap()
}

fn value(t: &OperationTable<ExtSymbol>, inputs: &[&str]) -> Option<String> {
    t.get(&syms(inputs)).map(format_lincomb)
}

#[test]
fn expected_families_instantiate_cleanly() {
    let e = expected_table(11, 6, None);
    assert!(e.alerts.is_empty(), "{:?}", e.alerts);
    assert!(e.table.degree_violations().is_empty());
    let t = &e.table;
    assert_eq!(value(t, &["u1^1", "p1", "(21)", "(12)"]).as_deref(), Some("p1"));
    assert_eq!(value(t, &["p2", "j2", "a.u2^0"]).as_deref(), Some("1_S2"));
    assert_eq!(value(t, &["j2", "p1"]).as_deref(), Some("(12)"));
    assert_eq!(value(t, &["j1", "p2"]).as_deref(), Some("(21)"));
}

#[test]
fn computed_table_matches_expected() {
    let c = computed(7, 4);
    let e = expected_table(7, 4, None);
    let r = diff_tables(&e.table, &c, false).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    assert_eq!(r.examined, c.len());
}

#[test]
fn stasheff_symbolic() {
    let b = SymbolicBackend;
    let cat = TransferredCategory::new("pia2", &b, basis_symbols(4));
    let r = stasheff_check(&cat, 5, 4).unwrap();
    assert!(r.passed(), "{:?}", &r.violations[..r.violations.len().min(5)]);
    assert!(r.examined > 1000);
    // the instance giving m3(a, p2, (12)) = p1 from m3(a, p2, j2) = 1 and (12) = m2(j2, p1)
    assert_eq!(format_lincomb(&m(&cat, &syms(&["a.u2^0", "p2", "(12)"])).unwrap()), "p1");
    assert!(stasheff_tuple(&cat, &syms(&["a.u2^0", "p2", "j2", "p1"])).unwrap().is_empty());
}

#[test]
fn stasheff_over_q_both_modes() {
    for mode in [HomotopyMode::Paper, HomotopyMode::Generic] {
        let mb = MatrixBackend::new(pia2_contraction(Field::Q, DEFAULT_WINDOW, mode).unwrap());
        let cat = TransferredCategory::new("pia2", &mb, basis_symbols(4));
        let r = stasheff_check(&cat, 4, 2).unwrap();
        assert!(r.passed(), "{mode:?}: {:?}", &r.violations[..r.violations.len().min(5)]);
        let r = unitality_check(&cat, 4, 2).unwrap();
        assert!(r.passed(), "{mode:?}: {:?}", r.violations);
        // both modes share m2 and the basic triple products
        assert_eq!(format_lincomb(&m(&cat, &syms(&["j1", "p2"])).unwrap()), "(21)");
        let m3 = m(&cat, &syms(&["a.u2^0", "p2", "j2"])).unwrap();
        assert_eq!(m3.len(), 1, "{mode:?}");
        assert_eq!(m3[0].0, sym("1_S1"));
    }
}

#[test]
fn generic_mode_is_window_independent_at_low_arity() {
    let tables: Vec<_> = [18, 24]
        .iter()
        .map(|&w| {
            let mb = MatrixBackend::new(pia2_contraction(Field::F2, w, HomotopyMode::Generic).unwrap());
            compute_operation_table(&mb, &basis_symbols(2), meta(4, 2), 1 << 20).unwrap()
        })
        .collect();
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn strict_units() {
    let b = SymbolicBackend;
    let cat = TransferredCategory::new("pia2", &b, basis_symbols(4));
    let r = unitality_check(&cat, 5, 4).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    let f = sym("b.u1^1");
    let one = ExtSymbol::Id;
    assert_eq!(m(&cat, &[f, one(f.source())]).unwrap(), vec![(f, Field::F2.one())]);
    let mq = MatrixBackend::new(pia2_contraction(Field::Q, DEFAULT_WINDOW, HomotopyMode::Paper).unwrap());
    let cq = TransferredCategory::new("pia2", &mq, basis_symbols(4));
    assert_eq!(m(&cq, &[one(f.target()), f]).unwrap(), vec![(f, -Field::Q.one())]);
    assert!(m(&cq, &[sym("j1"), one(Obj::S(crate::symbols::Vertex::Two)), sym("b.u1^0")]).unwrap().is_empty());
}

#[test]
fn formal_category_passes() {
    let mut c = TableCategory::new("formal", Field::Q, &["X", "Y"]);
    c.add_morphism("f", "X", "Y", 1).unwrap();
    c.add_morphism("g", "Y", "X", 1).unwrap();
    assert!(stasheff_check(&c, 6, 1).unwrap().passed());
    assert!(unitality_check(&c, 4, 1).unwrap().passed());

    let mut bad = TableCategory::new("bad", Field::Q, &["X"]);
    bad.add_morphism("a", "X", "X", 1).unwrap();
    bad.add_morphism("e", "X", "X", 2).unwrap();
    bad.add_morphism("c", "X", "X", 3).unwrap();
    bad.set_operation(&["a", "a"], &[("e", 1)]).unwrap();
    bad.set_operation(&["a", "e"], &[("c", 1)]).unwrap();
    // m2(a, m2(a, a)) = c but m2(m2(a, a), a) = 0
    let r = stasheff_check(&bad, 3, 1).unwrap();
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].tuple, ["a", "a", "a"]);
    assert!(c.set_operation(&["f", "f"], &[]).is_err());
    assert!(c.set_operation(&["g", "f"], &[("f", 1)]).is_err());
}

#[test]
fn restrictions() {
    let c = computed(7, 4);
    let simples = c.restrict(|s| s.source().is_simple() && s.target().is_simple());
    assert!(simples.entries().all(|(k, _)| k.len() == 2));
    assert!(!simples.is_empty());
    let tri = c.restrict(|s| ["j1", "p1", "b.u1^0"].contains(&s.to_string().as_str()));
    let got: Vec<(Vec<String>, String)> = tri.entries().map(|(k, v)| (names(k), format_lincomb(v))).collect();
    let want: Vec<(Vec<String>, String)> = [
        (["j1", "b.u1^0", "p1"], "1_P1"),
        (["p1", "j1", "b.u1^0"], "1_S1"),
        (["b.u1^0", "p1", "j1"], "1_S2"),
    ]
    .iter()
    .map(|(k, v)| (k.iter().map(|s| String::from(*s)).collect(), String::from(*v)))
    .collect();
    assert_eq!(got, want);
}

#[test]
fn kappa_symmetry() {
    assert!(kappa_symmetry_check(&computed(6, 4)).passed());
    let mut one = OperationTable::new(meta(2, 0));
    one.insert(syms(&["j1", "p2"]), vec![(sym("(21)"), Field::F2.one())]);
    let r = kappa_symmetry_check(&one);
    assert!(!r.passed());
    assert_eq!(r.violations[0].tuple, ["j2", "p1"]);
    assert!(kappa_symmetry_check(&OperationTable::new(meta(2, 0))).passed());
}

#[test]
fn diffs() {
    let a = expected_table(7, 4, Some(1)).table;
    let b = expected_table(7, 4, Some(2)).table;
    assert!(diff_tables(&a, &a, false).unwrap().passed());
    let r = diff_tables(&a, &b, false).unwrap();
    assert!(!r.passed());
    // strict inclusion: only entries missing from the smaller table
    assert!(r.violations.iter().all(|v| v.expected == "0" && v.got != "0"));
    assert_eq!(r.violations.len(), b.len() - a.len());
    assert!(matches!(diff_tables(&a, &expected_table(6, 4, None).table, false), Err(AInfError::BoundMismatch(_))));

    let mut q = OperationTable::new(TableMeta { field: Field::Q, ..meta(2, 0) });
    let mut q2 = q.clone();
    q.insert(syms(&["j1", "p2"]), vec![(sym("(21)"), Field::Q.one())]);
    q2.insert(syms(&["j1", "p2"]), vec![(sym("(21)"), -Field::Q.one())]);
    assert!(!diff_tables(&q, &q2, false).unwrap().passed());
    assert!(diff_tables(&q, &q2, true).unwrap().passed());
}

#[test]
fn classification_forms() {
    let c = computed(9, 4);
    let listed = classification_check(&c, false);
    // the listed forms miss operations such as m3(j1, b.u1^0, p1) = 1_P1
    assert_eq!(listed.violations.len(), 16);
    assert!(listed.violations.iter().any(|v| v.tuple == ["j1", "b.u1^0", "p1"]));
    let extended = classification_check(&c, true);
    assert!(extended.passed(), "{:?}", extended.violations);
}
