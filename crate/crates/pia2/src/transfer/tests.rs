use super::*;
use crate::complexes::instances::{pia2_contraction, DEFAULT_WINDOW};
use crate::complexes::HomotopyMode;
use crate::symbols::{basis_symbols, ExtSymbol};
use alloc::vec;

fn syms(names: &[&str]) -> Vec<ExtSymbol> {
    names.iter().map(|s| s.parse().unwrap()).collect()
}

fn single(out: LinComb<ExtSymbol>) -> Option<ExtSymbol> {
    match out.as_slice() {
        [] => None,
        [(s, c)] if c.is_one() => Some(*s),
        other => panic!("unexpected output {other:?}"),
    }
}

fn paper_backend() -> MatrixBackend<ExtSymbol> {
    MatrixBackend::new(pia2_contraction(Field::F2, DEFAULT_WINDOW, HomotopyMode::Paper).unwrap())
}

#[test]
fn known_operations_symbolic() {
    let b = SymbolicBackend;
    let t = Transfer::new(&b);
    let cases: &[(&[&str], Option<&str>)] = &[
        (&["j1", "p2"], Some("(21)")),
        (&["a.u2^0", "p2", "j2"], Some("1_S1")),
        (&["p1", "(21)", "j2", "u1^1"], Some("1_S1")),
        (&["u1^2", "p1", "(21)", "(12)", "j1"], Some("a.u2^0")),
        (&["b.u1^0", "a.u2^0", "b.u1^0"], None),
        (&["u1^1", "p1", "(21)", "(12)"], Some("p1")),
    ];
    for (inputs, want) in cases {
        let inputs = syms(inputs);
        let got = single(t.m(&inputs).unwrap());
        assert_eq!(got, want.map(|w| w.parse().unwrap()), "{inputs:?}");
        assert_eq!(single(transfer_mn(&b, &inputs).unwrap()), got, "tree-by-tree sum for {inputs:?}");
    }
}

#[test]
fn known_operations_matrix() {
    let b = paper_backend();
    let t = Transfer::new(&b);
    let m4 = syms(&["p1", "(21)", "j2", "u1^1"]);
    assert_eq!(single(t.m(&m4).unwrap()), Some(ExtSymbol::Id(crate::symbols::Obj::S(crate::symbols::Vertex::One))));
    let m3 = syms(&["a.u2^0", "p2", "j2"]);
    assert_eq!(single(transfer_mn(&b, &m3).unwrap()), Some("1_S1".parse().unwrap()));
}

#[test]
fn rejects_bad_inputs() {
    let b = SymbolicBackend;
    let t = Transfer::new(&b);
    assert_eq!(t.m(&syms(&["j1", "j1"])), Err(TransferError::NotComposable(0)));
    assert_eq!(t.m(&syms(&["j1"])), Err(TransferError::TooFewLeaves(1)));
    let tree = &enumerate_trees(3).unwrap()[0];
    assert!(matches!(evaluate_tree(&b, tree, &syms(&["j1", "p2"])), Err(TransferError::Arity { .. })));
}

#[test]
fn scan_matches_direct_evaluation() {
    let b = SymbolicBackend;
    let t = Transfer::new(&b);
    let symbols = basis_symbols(3);
    let meta = TableMeta {
        arity_max: 4,
        degree_max: 3,
        field: Field::F2,
        backend: "symbolic".into(),
        homotopy: "paper".into(),
        window: None,
    };
    let table = compute_operation_table(&b, &symbols, meta, 1 << 20).unwrap();
    assert!(table.degree_violations().is_empty());
    // every tuple, hit or miss, agrees with the memoized recursion
    let mut checked = 0;
    let mut stack = vec![vec![]];
    while let Some(tup) = stack.pop() {
        if tup.len() >= 2 {
            let direct = t.m(&tup).unwrap();
            assert_eq!(table.get(&tup).cloned().unwrap_or_default(), direct, "{tup:?}");
            checked += 1;
        }
        if tup.len() < 4 {
            for s in &symbols {
                if tup.first().is_none_or(|f: &ExtSymbol| s.source() == f.target()) {
                    let mut next = vec![*s];
                    next.extend_from_slice(&tup);
                    stack.push(next);
                }
            }
        }
    }
    assert!(checked > 500);
    assert_eq!(
        compute_operation_table(&b, &symbols, table.meta.clone(), 10).unwrap_err(),
        TransferError::TupleCap(10)
    );
}

#[test]
fn backends_agree_on_small_tuples() {
    let sym = SymbolicBackend;
    let mat = paper_backend();
    let symbols = basis_symbols(3);
    let meta = |name: &str| TableMeta {
        arity_max: 4,
        degree_max: 3,
        field: Field::F2,
        backend: name.into(),
        homotopy: "paper".into(),
        window: None,
    };
    let a = compute_operation_table(&sym, &symbols, meta("x"), 1 << 20).unwrap();
    let b = compute_operation_table(&mat, &symbols, meta("x"), 1 << 20).unwrap();
    assert_eq!(a, b);
}
