use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::Field;
use crate::symbols::{ExtSymbol, Obj, Vertex};
use crate::transfer::{OperationTable, TableMeta};

use super::names;

/// The operations predicted by the closed-form families, with any internal
/// inconsistencies found while instantiating them.
#[derive(Clone, Debug)]
pub struct ExpectedTable {
    pub table: OperationTable<ExtSymbol>,
    /// Arity subscripts that disagree with the instantiated tuple length, and
    /// tuples assigned two different values.
    pub alerts: Vec<String>,
}

use ExtSymbol::{Arrow, Odd, J, P};
use Vertex::{One, Two};

fn u1(k: usize) -> ExtSymbol {
    ExtSymbol::u(One, k as u32)
}
fn u2(k: usize) -> ExtSymbol {
    ExtSymbol::u(Two, k as u32)
}
fn b(k: usize) -> ExtSymbol {
    Odd(One, k as u32)
}
fn a(k: usize) -> ExtSymbol {
    Odd(Two, k as u32)
}

const A12: ExtSymbol = Arrow(One);
const A21: ExtSymbol = Arrow(Two);
const J1: ExtSymbol = J(One);
const J2: ExtSymbol = J(Two);
const P1: ExtSymbol = P(One);
const P2: ExtSymbol = P(Two);
const ONE_P1: ExtSymbol = ExtSymbol::Id(Obj::P(One));
const ONE_P2: ExtSymbol = ExtSymbol::Id(Obj::P(Two));

/// `(21),(12)` repeated `n` times.
fn r212(n: usize) -> Vec<ExtSymbol> {
    [A21, A12].repeat(n)
}
/// `(12),(21)` repeated `n` times.
fn r121(n: usize) -> Vec<ExtSymbol> {
    [A12, A21].repeat(n)
}

fn cat(parts: &[&[ExtSymbol]]) -> Vec<ExtSymbol> {
    parts.concat()
}

struct Builder {
    arity_max: usize,
    degree_max: i64,
    table: OperationTable<ExtSymbol>,
    alerts: Vec<String>,
}

impl Builder {
    fn put(&mut self, tuple: Vec<ExtSymbol>, out: ExtSymbol, arity: Option<usize>) {
        if let Some(d) = arity {
            if d != tuple.len() {
                self.alerts.push(format!("subscript {d} but {} inputs: {:?}", tuple.len(), names(&tuple)));
            }
        }
        if tuple.len() < 2 || tuple.len() > self.arity_max {
            return;
        }
        if tuple.iter().any(|s| s.is_identity() || s.degree() > self.degree_max) {
            return;
        }
        let kt: Vec<ExtSymbol> = tuple.iter().map(ExtSymbol::kappa).collect();
        self.set(kt, out.kappa());
        self.set(tuple, out);
    }

    fn set(&mut self, tuple: Vec<ExtSymbol>, out: ExtSymbol) {
        if let Some(old) = self.table.get(&tuple) {
            if old[0].0 != out {
                self.alerts.push(format!("conflict at {:?}: {} vs {}", names(&tuple), old[0].0, out));
            }
        }
        self.table.insert(tuple, alloc::vec![(out, Field::F2.one())]);
    }
}

/// Instantiates every family with all parameters at most `param_max` (or
/// unbounded) and keeps the instances within the arity and per-input degree
/// bounds. `(212)^n` stands for `2n` inputs. The m2 table and the images under
/// the 1 <-> 2 symmetry are included.
pub fn expected_table(arity_max: usize, degree_max: i64, param_max: Option<usize>) -> ExpectedTable {
    let meta = TableMeta {
        arity_max,
        degree_max,
        field: Field::F2,
        backend: "expected".into(),
        homotopy: "paper".into(),
        window: None,
    };
    let mut bld = Builder { arity_max, degree_max, table: OperationTable::new(meta), alerts: Vec::new() };
    // Every family has its length or one of its degrees growing with each parameter.
    let bound = arity_max + degree_max.max(0) as usize + 2;
    let kmax = param_max.map_or(bound, |p| p.min(bound));
    let put = |bld: &mut Builder, t: Vec<ExtSymbol>, out: ExtSymbol, d: Option<usize>| bld.put(t, out, d);

    put(&mut bld, alloc::vec![J1, P2], A21, None);
    for n in 0..=kmax {
        for m in 0..=kmax {
            if n >= 1 && m >= 1 {
                put(&mut bld, alloc::vec![u1(n), u1(m)], u1(n + m), None);
            }
            if n >= 1 {
                put(&mut bld, alloc::vec![b(m), u1(n)], b(n + m), None);
            }
            if m >= 1 {
                put(&mut bld, alloc::vec![u2(m), b(n)], b(n + m), None);
            }
            put(&mut bld, alloc::vec![a(m), b(n)], u1(n + m + 1), None);
        }
    }

    for n in 0..=kmax {
        for k in 0..=kmax {
            put(&mut bld, cat(&[&[A12], &r212(k), &[J1, b(n + k + 1), P1], &r212(n), &[A21]]), ONE_P2, Some(2 * n + 2 * k + 5));
            if k == 0 {
                put(&mut bld, cat(&[&[A12], &r212(n), &[J1, b(n)]]), J2, Some(2 * n + 3));
            }
            if k <= n {
                put(&mut bld, cat(&[&r212(k), &[J1, b(n), P1], &r212(n - k)]), ONE_P1, Some(2 * n + 3));
            }
            if k > n {
                put(&mut bld, cat(&[&[u1(k), P1], &r212(n), &[J1]]), a(k - n - 1), Some(2 * n + 3));
            }
            if k >= n {
                put(&mut bld, cat(&[&[b(k), P1], &r212(n), &[J1]]), u2(k - n), Some(2 * n + 3));
            }
            if k > n {
                put(&mut bld, cat(&[&[u1(k), P1], &r212(n), &[A21, J2]]), u1(k - n - 1), Some(2 * n + 4));
                put(&mut bld, cat(&[&[P1], &r212(n), &[A21, J2, u1(k)]]), u1(k - n - 1), Some(2 * n + 4));
                put(&mut bld, cat(&[&[b(k), P1], &r212(n), &[A21, J2]]), b(k - n - 1), Some(2 * n + 4));
            }
            if k == 0 {
                put(&mut bld, cat(&[&[b(n), P1], &r212(n), &[A21]]), P2, Some(2 * n + 3));
            }
            if k == 0 && n >= 1 {
                put(&mut bld, cat(&[&[u1(n), P1], &r212(n)]), P1, Some(2 * n + 2));
            }
            put(&mut bld, cat(&[&r121(k), &[J2, u1(n + k + 1), P1], &r212(n), &[A21]]), ONE_P2, Some(2 * k + 2 * n + 4));
            if k == 0 {
                put(&mut bld, cat(&[&r121(n + 1), &[J2, u1(n + 1)]]), J2, Some(2 * n + 4));
            }
            if k <= n {
                put(&mut bld, cat(&[&r212(k), &[A21, J2, u1(n + 1), P1], &r212(n - k)]), ONE_P1, Some(2 * n + 4));
            }
        }
    }

    for m in 0..=kmax {
        for n in 0..=kmax {
            if n >= m {
                put(&mut bld, cat(&[&[P2], &r121(m), &[J2, a(n)]]), u2(n - m), Some(2 * m + 3));
            }
            if n > m {
                put(&mut bld, cat(&[&[P2], &r121(m), &[J2, u1(n)]]), b(n - m - 1), Some(2 * m + 3));
            }
            if n >= m {
                put(&mut bld, cat(&[&[P1, A21], &r121(m), &[J2, a(n + 1)]]), a(n - m), Some(2 * m + 4));
            }
        }
    }
    ExpectedTable { table: bld.table, alerts: bld.alerts }
}
