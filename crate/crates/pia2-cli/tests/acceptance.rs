//! The ten acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always printed; exits nonzero if any
//! criterion fails.

#![allow(clippy::type_complexity)]

use std::time::{Duration, Instant};

use pia2::ainf::{diff_tables, expected_table, stasheff_partial, TransferredCategory};
use pia2::complexes::instances::{
    a2_contraction, audit_symbolic_table, obj_index, pia2_category, pia2_contraction, realize_ext_vector, TRUST_MARGIN,
};
use pia2::complexes::{cone, HomotopyMode};
use pia2::linalg::Field;
use pia2::quiver::{a2_modules, check_exact, pia2_modules, RepMap};
use pia2::symbols::{basis_symbols, hom_basis, ExtSymbol, Obj};
use pia2::transfer::{catalan, enumerate_trees, OperationTable, SymbolicBackend};
use pia2_cli::commands::{compute_table, verify_reports, Which};
use pia2_cli::config::{Algebra, BackendKind, FieldArg, RunConfig};
use pia2_cli::json::{table_from_json, table_json, to_pretty, TableJson};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn cfg(arity_max: usize, degree_max: i64) -> RunConfig {
    RunConfig { arity_max, degree_max, ..RunConfig::default() }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("{what} took {t:.1?}, budget {budget:?}"))
}

fn table(c: &RunConfig) -> Result<TableJson, String> {
    compute_table(c).map_err(|e| e.to_string())
}

fn typed(j: &TableJson) -> Result<OperationTable<ExtSymbol>, String> {
    table_from_json(j).map_err(|e| e.to_string())
}

fn m2_table() -> Outcome {
    let start = Instant::now();
    let c = cfg(2, 6);
    let symbolic = to_pretty(&table(&c)?).map_err(|e| e.to_string())?;
    let matrix = to_pretty(&table(&RunConfig { backend: BackendKind::Matrix, ..c })?).map_err(|e| e.to_string())?;
    let expected = to_pretty(&table_json("pia2", &expected_table(2, 6, None).table)).map_err(|e| e.to_string())?;
    ensure(symbolic == matrix, || "symbolic and matrix JSON differ".into())?;
    ensure(symbolic == expected, || "computed m2 differs from the closed-form table".into())?;
    within(start, Duration::from_secs(5), "m2 table")?;
    let n = symbolic.matches("\"arity\"").count();
    Ok(format!("{n} entries, byte-identical from both backends and the closed form"))
}

/// `(inputs, output)` with symbols spelled as in the tables, written out by
/// hand from the published identities.
fn published_m3_m4() -> Vec<(Vec<String>, String)> {
    let mut out: Vec<(Vec<String>, String)> = Vec::new();
    let mut add = |inputs: &[&str], output: &str| out.push((inputs.iter().map(|s| s.to_string()).collect(), output.to_string()));
    let u = |i: u32, n: u32| if n == 0 { format!("1_S{i}") } else { format!("u{i}^{n}") };
    // basic triangles
    add(&["a.u2^0", "p2", "j2"], "1_S1");
    add(&["b.u1^0", "p1", "j1"], "1_S2");
    add(&["p2", "j2", "a.u2^0"], "1_S2");
    add(&["p1", "j1", "b.u1^0"], "1_S1");
    add(&["j2", "a.u2^0", "p2"], "1_P2");
    add(&["j1", "b.u1^0", "p1"], "1_P1");
    // the twelve families derived from them
    add(&["a.u2^0", "p2", "(12)"], "p1");
    add(&["b.u1^0", "p1", "(21)"], "p2");
    add(&["(21)", "j2", "a.u2^0"], "j1");
    add(&["(12)", "j1", "b.u1^0"], "j2");
    for n in 1..=3u32 {
        add(&[&u(2, n), "p2", "j2"], &format!("b.u1^{}", n - 1));
        add(&[&u(1, n), "p1", "j1"], &format!("a.u2^{}", n - 1));
        add(&["p2", "j2", &u(1, n)], &format!("b.u1^{}", n - 1));
        add(&["p1", "j1", &u(2, n)], &format!("a.u2^{}", n - 1));
    }
    for n in 0..=3u32 {
        add(&[&format!("a.u2^{n}"), "p2", "j2"], &u(1, n));
        add(&[&format!("b.u1^{n}"), "p1", "j1"], &u(2, n));
        add(&["p2", "j2", &format!("a.u2^{n}")], &u(2, n));
        add(&["p1", "j1", &format!("b.u1^{n}")], &u(1, n));
    }
    // basic quadrilaterals
    add(&["p1", "(21)", "j2", "u1^1"], "1_S1");
    add(&["p2", "(12)", "j1", "u2^1"], "1_S2");
    add(&["u1^1", "p1", "(21)", "j2"], "1_S1");
    add(&["u2^1", "p2", "(12)", "j1"], "1_S2");
    add(&["j2", "u1^1", "p1", "(21)"], "1_P2");
    add(&["j1", "u2^1", "p2", "(12)"], "1_P1");
    add(&["(21)", "j2", "u1^1", "p1"], "1_P1");
    add(&["(12)", "j1", "u2^1", "p2"], "1_P2");
    // the twelve families derived from them
    add(&["(12)", "(21)", "j2", "u1^1"], "j2");
    add(&["(21)", "(12)", "j1", "u2^1"], "j1");
    add(&["u1^1", "p1", "(21)", "(12)"], "p1");
    add(&["u2^1", "p2", "(12)", "(21)"], "p2");
    for n in 0..=2u32 {
        add(&["p1", "(21)", "j2", &u(1, n + 1)], &u(1, n));
        add(&["p2", "(12)", "j1", &u(2, n + 1)], &u(2, n));
        add(&["p1", "(21)", "j2", &format!("a.u2^{}", n + 1)], &format!("a.u2^{n}"));
        add(&["p2", "(12)", "j1", &format!("b.u1^{}", n + 1)], &format!("b.u1^{n}"));
        add(&[&u(1, n + 1), "p1", "(21)", "j2"], &u(1, n));
        add(&[&u(2, n + 1), "p2", "(12)", "j1"], &u(2, n));
        add(&[&format!("b.u1^{}", n + 1), "p1", "(21)", "j2"], &format!("b.u1^{n}"));
        add(&[&format!("a.u2^{}", n + 1), "p2", "(12)", "j1"], &format!("a.u2^{n}"));
    }
    out
}

fn m3_m4_families() -> Outcome {
    let start = Instant::now();
    let j = table(&cfg(4, 7))?;
    let mut missing = Vec::new();
    let cases = published_m3_m4();
    for (inputs, output) in &cases {
        let found = j.entries.iter().find(|e| &e.inputs == inputs);
        let ok = found.is_some_and(|e| e.output.len() == 1 && e.output[0].coeff == "1" && &e.output[0].symbol == output);
        if !ok {
            missing.push(format!("m{}({}) = {output}", inputs.len(), inputs.join(",")));
        }
    }
    ensure(missing.is_empty(), || format!("{} identities missing, first: {}", missing.len(), missing[0]))?;
    within(start, Duration::from_secs(30), "m3/m4 table")?;
    Ok(format!("all {} instances present with coefficient 1", cases.len()))
}

fn big_theorem() -> Outcome {
    let start = Instant::now();
    let computed = typed(&table(&cfg(9, 4))?)?;
    let expected = expected_table(9, 4, None);
    ensure(expected.alerts.is_empty(), || format!("closed form raised alerts: {:?}", expected.alerts))?;
    let r = diff_tables(&computed, &expected.table, false).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{} differences, first {:?}", r.violations.len(), r.violations[0]))?;
    within(start, Duration::from_secs(300), "arity 9 table and diff")?;
    Ok(format!("{} operations, no difference in either direction", computed.len()))
}

fn stasheff() -> Outcome {
    let reports = verify_reports(Which::Stasheff, &cfg(7, 4)).map_err(|e| e.to_string())?;
    let r = &reports[0];
    ensure(r.passed(), || format!("{} violations, first {:?}", r.violations.len(), r.violations[0]))?;
    // the serial check on a slice of first inputs gives the same verdict
    let b = SymbolicBackend;
    let symbols = basis_symbols(4);
    let cat = TransferredCategory::new("model", &b, symbols.clone());
    let (n, bad) = stasheff_partial(&cat, &symbols[..4], 5, 4).map_err(|e| e.to_string())?;
    ensure(bad.is_empty() && n > 0, || "serial spot check failed".into())?;
    Ok(format!("{} tuples, no violations", r.examined))
}

fn contraction() -> Outcome {
    let c24 = pia2_contraction(Field::F2, 24, HomotopyMode::Paper).map_err(|e| e.to_string())?;
    let r = c24.verify(TRUST_MARGIN);
    ensure(r.passed(), || format!("contraction identities fail: {r:?}"))?;
    let audit = audit_symbolic_table(&c24, 3);
    ensure(audit.is_empty(), || format!("homotopy table audit: {}", audit[0]))?;
    let c26 = pia2_contraction(Field::F2, 26, HomotopyMode::Paper).map_err(|e| e.to_string())?;
    ensure(c26.verify(TRUST_MARGIN).passed() && audit_symbolic_table(&c26, 3).is_empty(), || "window 26 fails".into())?;
    let m = |w| table(&RunConfig { backend: BackendKind::Matrix, window: w, ..cfg(5, 3) });
    ensure(m(24)? == m(26)?, || "tables at windows 24 and 26 differ".into())?;
    Ok("identities and homotopy tables hold at L = 24 and 26; tables agree".into())
}

fn a2_oracle() -> Outcome {
    let mut notes = Vec::new();
    for field in [FieldArg::F2, FieldArg::Q] {
        let c = RunConfig { algebra: Algebra::A2, backend: BackendKind::Matrix, field, ..cfg(6, 2) };
        let ctr = a2_contraction(c.field(), c.mode()).map_err(|e| e.to_string())?;
        ensure(ctr.verify(TRUST_MARGIN).passed(), || "A2 contraction fails".into())?;
        let j = table(&c)?;
        let mut got: Vec<(Vec<String>, Vec<(String, String)>)> = j
            .entries
            .iter()
            .map(|e| (e.inputs.clone(), e.output.iter().map(|t| (t.coeff.clone(), t.symbol.clone())).collect()))
            .collect();
        got.sort();
        // adjacent m2's vanish, the three rotations of m3 are identities, nothing else
        let one = |o: &str| vec![("1".to_string(), o.to_string())];
        let v = |s: [&str; 3]| s.map(String::from).to_vec();
        let mut want = vec![
            (v(["alpha", "gamma", "beta"]), one("1_P")),
            (v(["beta", "alpha", "gamma"]), one("1_S1")),
            (v(["gamma", "beta", "alpha"]), one("1_S2")),
        ];
        want.sort();
        if got == want {
            notes.push(format!("{:?}", field).to_lowercase());
            continue;
        }
        // over Q a rotation may carry a sign; the support must still match
        let support = |t: &Vec<(Vec<String>, Vec<(String, String)>)>| -> Vec<(Vec<String>, Vec<String>)> {
            t.iter().map(|(k, o)| (k.clone(), o.iter().map(|x| x.1.clone()).collect())).collect()
        };
        let signs_only = field == FieldArg::Q
            && support(&got) == support(&want)
            && got.iter().all(|(_, o)| o.iter().all(|x| x.0 == "1" || x.0 == "-1"));
        ensure(signs_only, || format!("A2 model over {field:?} is {got:?}"))?;
        notes.push("q (up to sign)".into());
    }
    Ok(format!("matches the triangle category over {}", notes.join(" and ")))
}

fn formality() -> Outcome {
    let t = typed(&table(&cfg(7, 4))?)?;
    let simple = |s: &ExtSymbol| s.source().is_simple() && s.target().is_simple();
    let higher: Vec<_> = t.entries().filter(|(k, _)| k.len() >= 3 && k.iter().all(simple)).collect();
    ensure(higher.is_empty(), || format!("{} higher operations on the simples, first {:?}", higher.len(), higher[0].0))?;
    let m2 = t.entries().filter(|(k, _)| k.len() == 2 && k.iter().all(simple)).count();
    ensure(m2 > 0, || "no products on the simples at all".into())?;
    Ok(format!("{m2} products and no higher operations on S1, S2"))
}

fn functors() -> Outcome {
    let reports = verify_reports(Which::Functors, &cfg(6, 4)).map_err(|e| e.to_string())?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let v = &r.violations[0];
            format!("{} ({} violations, e.g. m({}) gives {} instead of {})", r.check, r.violations.len(), v.tuple.join(","), v.got, v.expected)
        })
        .collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} functors pass", reports.len()))
}

fn kappa() -> Outcome {
    let reports = verify_reports(Which::Kappa, &cfg(7, 4)).map_err(|e| e.to_string())?;
    let r = &reports[0];
    ensure(r.passed(), || format!("{} entries break the symmetry", r.violations.len()))?;
    // independent of the check: relabel by hand and compare
    let t = typed(&table(&cfg(7, 4))?)?;
    let swapped = t.map_symbols(ExtSymbol::kappa);
    ensure(swapped == t, || "relabelled table differs".into())?;
    Ok(format!("{} entries invariant", t.len()))
}

fn combinatorics() -> Outcome {
    // C_{n-1} by the recurrence, independent of the closed form
    let mut c = vec![1u128];
    for k in 1..12usize {
        c.push((0..k).map(|i| c[i] * c[k - 1 - i]).sum());
    }
    for n in 2..=12usize {
        let count = enumerate_trees(n).map_err(|e| e.to_string())?.len() as u128;
        ensure(count == c[n - 1] && catalan(n as u32 - 1) == c[n - 1], || format!("{n} leaves: {count} trees, want {}", c[n - 1]))?;
    }
    ensure(c[11] == 58786, || "C_11 != 58786".into())?;

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let cat = pia2_category(Field::Q, 10).map_err(|e| e.to_string())?;
    let sys = cat.system().clone();
    let mut nonzero = 0;
    for trial in 0..100 {
        let (x, y) = (Obj::ALL[rng.gen_range(0..4)], Obj::ALL[rng.gen_range(0..4)]);
        let (xi, yi) = (obj_index(x), obj_index(y));
        let mut f = cat.zero(xi, yi, 0);
        let mut classes = hom_basis(x, y, 0);
        if x == y {
            classes.push(ExtSymbol::Id(x));
        }
        for s in classes {
            let v = realize_ext_vector(&cat, s).map_err(|e| e.to_string())?;
            f.add_assign(&v.scale(&Field::Q.int(rng.gen_range(-3..=3))));
        }
        let mut h = cat.zero(xi, yi, -1);
        for a in h.v.iter_mut() {
            *a = Field::Q.int(rng.gen_range(-3..=3));
        }
        f.add_assign(&cat.d(&h));
        ensure(cat.d(&f).is_zero(), || format!("trial {trial}: not a cycle"))?;
        nonzero += usize::from(!f.is_zero());
        let k = cone(&cat.to_chain_map(&f)).map_err(|e| format!("trial {trial}: {e}"))?;
        for p in k.lo()..k.hi() - 1 {
            let (d0, d1) = (k.differential(p).unwrap(), k.differential(p + 1).unwrap());
            let dd = sys.compose_blocks(d1, d0, k.summands(p), k.summands(p + 1), k.summands(p + 2));
            ensure(dd.is_zero(), || format!("trial {trial}: d^2 != 0 at {p}"))?;
        }
    }

    for field in [Field::F2, Field::Q] {
        let m = pia2_modules(field).map_err(|e| e.to_string())?;
        let first = check_exact(&[m.s1.clone(), m.p2.clone(), m.s2.clone()], &[m.j2.clone(), m.p2_map.clone()]);
        let second = check_exact(&[m.s2.clone(), m.p1.clone(), m.s1.clone()], &[m.j1.clone(), m.p1_map.clone()]);
        let broken = check_exact(&[m.s1.clone(), m.p2.clone(), m.s2.clone()], &[RepMap::zero(&m.s1, &m.p2), m.p2_map.clone()]);
        let a = a2_modules(field).map_err(|e| e.to_string())?;
        let a2 = check_exact(&[a.s2.clone(), a.p.clone(), a.s1.clone()], &[a.incl.clone(), a.proj.clone()]);
        ensure(first == Ok(true) && second == Ok(true) && a2 == Ok(true), || format!("{field:?}: a sequence is not exact"))?;
        ensure(broken == Ok(false), || "a non-exact sequence passed".into())?;
    }
    Ok(format!("tree counts to 12 leaves, 100 cones ({nonzero} nonzero maps), three exact sequences"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("m2 table", m2_table),
        ("m3/m4 families", m3_m4_families),
        ("full table to arity 9", big_theorem),
        ("A-infinity relations", stasheff),
        ("contraction audit", contraction),
        ("A2 triangle", a2_oracle),
        ("formality on the simples", formality),
        ("functor suite", functors),
        ("1-2 symmetry", kappa),
        ("combinatorics", combinatorics),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{t:.1?}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{t:.1?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
