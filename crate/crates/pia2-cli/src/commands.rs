use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use pia2::ainf::{
    all_symbols, classification_check, composable_tuples, diff_tables, expected_table, kappa_symmetry_check, m, unitality_check,
    AInfCategory, AInfError, FinSym, Report, TableCategory, TransferredCategory, Violation,
};
use pia2::complexes::instances::{a2_contraction, audit_symbolic_table, pia2_contraction, A2Symbol};
use pia2::complexes::{ContractionReport, HomotopyMode};
use pia2::functors::{
    build_delta, build_fukaya, builtin_suite, pants_scope, pia2_f2, tuples_over, verify_functor, AInfFunctorData, FormalSimples,
    PantsCategory, PiPrime,
};
use pia2::linalg::Field;
use pia2::symbols::{basis_symbols, ExtSymbol};
use pia2::transfer::{Backend, MatrixBackend, Morphism, OperationTable, SymbolicBackend, TableMeta};

use crate::config::{Algebra, BackendKind, RunConfig};
use crate::json::{parse_image, report_json, table_from_json, table_json, to_pretty, FunctorJson, TableJson};
use crate::scan::{par_stasheff, par_table};
use crate::CliError;

/// Bound on the tuples visited per first input in one table scan.
pub const TUPLE_CAP: usize = 1 << 28;

/// Where human-readable lines go; JSON goes to stdout only when no path is given.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Io<'_> {
    /// Writes `text` to `path`, or to stdout. Returns the stream for the summary.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<&mut dyn Write, CliError> {
        match path {
            Some(p) => {
                std::fs::write(p, text)?;
                Ok(&mut *self.out)
            }
            None => {
                self.out.write_all(text.as_bytes())?;
                Ok(&mut *self.err)
            }
        }
    }
}

enum Model {
    Symbolic(SymbolicBackend),
    Pia2(MatrixBackend<ExtSymbol>),
    A2(MatrixBackend<A2Symbol>),
}

fn build_model(cfg: &RunConfig) -> Result<Model, CliError> {
    cfg.validate()?;
    Ok(match (cfg.algebra, cfg.backend) {
        (Algebra::Pia2, BackendKind::Symbolic) => Model::Symbolic(SymbolicBackend),
        (Algebra::Pia2, BackendKind::Matrix) => Model::Pia2(MatrixBackend::new(pia2_contraction(cfg.field(), cfg.window, cfg.mode())?)),
        (Algebra::A2, _) => Model::A2(MatrixBackend::new(a2_contraction(cfg.field(), cfg.mode())?)),
    })
}

fn a2_symbols(degree_max: i64) -> Vec<A2Symbol> {
    [A2Symbol::Alpha, A2Symbol::Beta, A2Symbol::Gamma].into_iter().filter(|s| s.degree() <= degree_max).collect()
}

fn meta(cfg: &RunConfig) -> TableMeta {
    TableMeta {
        arity_max: cfg.arity_max,
        degree_max: cfg.degree_max,
        field: cfg.field(),
        backend: cfg.backend_name().into(),
        homotopy: format!("{:?}", cfg.mode()).to_lowercase(),
        window: (cfg.backend == BackendKind::Matrix && cfg.algebra == Algebra::Pia2).then_some(cfg.window),
    }
}

fn table_of<B>(b: &B, symbols: &[B::Sym], cfg: &RunConfig) -> Result<OperationTable<B::Sym>, CliError>
where
    B: Backend + Sync,
    B::Sym: Send + Sync,
{
    if cfg.arity_max < 2 {
        return Ok(OperationTable::new(meta(cfg)));
    }
    Ok(par_table(b, symbols, meta(cfg), TUPLE_CAP)?)
}

/// The minimal model table for `cfg`, as JSON.
pub fn compute_table(cfg: &RunConfig) -> Result<TableJson, CliError> {
    let name = cfg.algebra_name();
    Ok(match build_model(cfg)? {
        Model::Symbolic(b) => table_json(name, &table_of(&b, &basis_symbols(cfg.degree_max), cfg)?),
        Model::Pia2(b) => table_json(name, &table_of(&b, &basis_symbols(cfg.degree_max), cfg)?),
        Model::A2(b) => table_json(name, &table_of(&b, &a2_symbols(cfg.degree_max), cfg)?),
    })
}

fn summary(t: &TableJson) -> String {
    let mut by_arity: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &t.entries {
        *by_arity.entry(e.arity).or_default() += 1;
    }
    let parts: Vec<String> = by_arity.iter().map(|(a, n)| format!("m{a}: {n}")).collect();
    let detail = if parts.is_empty() { String::new() } else { format!(" ({})", parts.join(", ")) };
    format!("{} nonzero operations{detail}", t.entries.len())
}

pub fn minimal_model(cfg: &RunConfig, io: &mut Io) -> Result<i32, CliError> {
    let t = compute_table(cfg)?;
    let line = format!("{} {} {}: {}", cfg.algebra_name(), cfg.backend_name(), crate::json::field_name(cfg.field()), summary(&t));
    let w = io.emit(cfg.output.as_deref(), &to_pretty(&t)?)?;
    writeln!(w, "{line}")?;
    Ok(0)
}

pub fn expected(arity_max: usize, degree_max: i64, param_max: Option<usize>, output: Option<&Path>, io: &mut Io) -> Result<i32, CliError> {
    let e = expected_table(arity_max, degree_max, param_max);
    let t = table_json("pia2", &e.table);
    let w = io.emit(output, &to_pretty(&t)?)?;
    writeln!(w, "expected: {}", summary(&t))?;
    for a in &e.alerts {
        writeln!(w, "alert: {a}")?;
    }
    Ok(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Stasheff,
    Unital,
    Kappa,
    Classification,
    Contraction,
    Functors,
    All,
}

fn contraction_report(name: &str, r: &ContractionReport) -> Report {
    let parts = [
        ("p i = 1", &r.pi_identity),
        ("dH + Hd = 1 - ip", &r.homotopy_formula),
        ("H H = 0", &r.h_squared),
        ("side conditions", &r.side_conditions),
    ];
    let examined = parts.len();
    let bad = parts
        .iter()
        .flat_map(|(what, msgs)| msgs.iter().map(|m| Violation { tuple: vec![(*what).into()], expected: "0".into(), got: m.clone() }))
        .collect();
    Report::new(name, examined, bad)
}

fn stasheff_report(cfg: &RunConfig) -> Result<Report, CliError> {
    Ok(match build_model(cfg)? {
        Model::Symbolic(b) => par_stasheff(&b, &basis_symbols(cfg.degree_max), cfg.arity_max, cfg.degree_max)?,
        Model::Pia2(b) => par_stasheff(&b, &basis_symbols(cfg.degree_max), cfg.arity_max, cfg.degree_max)?,
        Model::A2(b) => par_stasheff(&b, &a2_symbols(cfg.degree_max), cfg.arity_max, cfg.degree_max)?,
    })
}

fn unital_report(cfg: &RunConfig) -> Result<Report, CliError> {
    fn run<B: Backend>(b: &B, symbols: Vec<B::Sym>, cfg: &RunConfig) -> Result<Report, AInfError> {
        unitality_check(&TransferredCategory::new("model", b, symbols), cfg.arity_max, cfg.degree_max)
    }
    Ok(match build_model(cfg)? {
        Model::Symbolic(b) => run(&b, basis_symbols(cfg.degree_max), cfg)?,
        Model::Pia2(b) => run(&b, basis_symbols(cfg.degree_max), cfg)?,
        Model::A2(b) => run(&b, a2_symbols(cfg.degree_max), cfg)?,
    })
}

fn pia2_table(cfg: &RunConfig, check: &str) -> Result<OperationTable<ExtSymbol>, CliError> {
    if cfg.algebra != Algebra::Pia2 {
        return Err(CliError::Usage(format!("the {check} check needs --algebra pia2")));
    }
    let t = compute_table(cfg)?;
    table_from_json(&t)
}

fn contraction_reports(cfg: &RunConfig) -> Result<Vec<Report>, CliError> {
    cfg.validate()?;
    let margin = pia2::complexes::instances::TRUST_MARGIN;
    Ok(match cfg.algebra {
        Algebra::A2 => vec![contraction_report("contraction a2", &a2_contraction(cfg.field(), cfg.mode())?.verify(margin))],
        Algebra::Pia2 => {
            let c = pia2_contraction(cfg.field(), cfg.window, cfg.mode())?;
            let mut out = vec![contraction_report(&format!("contraction pia2 window {}", cfg.window), &c.verify(margin))];
            if cfg.mode() == HomotopyMode::Paper {
                let msgs = audit_symbolic_table(&c, 3);
                let bad = msgs.into_iter().map(|m| Violation { tuple: vec!["table".into()], expected: "agreement".into(), got: m }).collect();
                out.push(Report::new("homotopy tables", 1, bad));
            }
            out
        }
    })
}

/// The reports for one `--which` choice. Checks that need pia2 are skipped
/// under `all` for a2.
pub fn verify_reports(which: Which, cfg: &RunConfig) -> Result<Vec<Report>, CliError> {
    let all = which == Which::All;
    let pia2 = cfg.algebra == Algebra::Pia2;
    let mut out = Vec::new();
    if which == Which::Contraction || all {
        out.extend(contraction_reports(cfg)?);
    }
    if which == Which::Stasheff || all {
        out.push(stasheff_report(cfg)?);
    }
    if which == Which::Unital || all {
        out.push(unital_report(cfg)?);
    }
    if which == Which::Kappa || (all && pia2) {
        out.push(kappa_symmetry_check(&pia2_table(cfg, "kappa")?));
    }
    if which == Which::Classification || (all && pia2) {
        let t = pia2_table(cfg, "classification")?;
        out.push(classification_check(&t, false));
        out.push(classification_check(&t, true));
    }
    if which == Which::Functors || (all && pia2) {
        if cfg.field() != Field::F2 {
            return Err(CliError::Usage("the functor suite runs over f2".into()));
        }
        out.extend(builtin_suite(cfg.arity_max, cfg.degree_max)?.into_iter().map(|r| r.report));
    }
    Ok(out)
}

/// One line per report, followed by at most `shown` violations.
pub fn print_reports(w: &mut dyn Write, reports: &[Report], shown: usize) -> std::io::Result<()> {
    for r in reports {
        if r.passed() {
            writeln!(w, "PASS {} ({} examined)", r.check, r.examined)?;
        } else {
            writeln!(w, "FAIL {} ({} of {} examined)", r.check, r.violations.len(), r.examined)?;
            for v in r.violations.iter().take(shown) {
                writeln!(w, "  [{}]: got {}, expected {}", v.tuple.join(", "), v.got, v.expected)?;
            }
            if r.violations.len() > shown {
                writeln!(w, "  ... {} more", r.violations.len() - shown)?;
            }
        }
    }
    Ok(())
}

fn finish(reports: &[Report], report_path: Option<&Path>, io: &mut Io) -> Result<i32, CliError> {
    print_reports(io.out, reports, 5)?;
    if let Some(p) = report_path {
        let j: Vec<_> = reports.iter().map(report_json).collect();
        std::fs::write(p, to_pretty(&j)?)?;
    }
    Ok(if reports.iter().all(Report::passed) { 0 } else { 1 })
}

pub fn verify(which: Which, cfg: &RunConfig, io: &mut Io) -> Result<i32, CliError> {
    let reports = verify_reports(which, cfg)?;
    finish(&reports, cfg.output.as_deref(), io)
}

fn read_table(p: &Path) -> Result<TableJson, CliError> {
    let text = std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Exit 0 iff the two tables agree entry by entry.
pub fn diff(a: &Path, b: &Path, support_only: bool, report: Option<&Path>, io: &mut Io) -> Result<i32, CliError> {
    let (ja, jb) = (read_table(a)?, read_table(b)?);
    if ja.meta.algebra != jb.meta.algebra {
        return Err(CliError::Usage(format!("cannot compare {} with {}", ja.meta.algebra, jb.meta.algebra)));
    }
    fn typed<S: Morphism + FromStr>(ja: &TableJson, jb: &TableJson, support_only: bool) -> Result<Result<Report, AInfError>, CliError> {
        let (ta, tb) = (table_from_json::<S>(ja)?, table_from_json::<S>(jb)?);
        Ok(diff_tables(&ta, &tb, support_only))
    }
    let r = match ja.meta.algebra.as_str() {
        "pia2" => typed::<ExtSymbol>(&ja, &jb, support_only)?,
        "a2" => typed::<A2Symbol>(&ja, &jb, support_only)?,
        other => return Err(CliError::Usage(format!("diff supports pia2 and a2 tables, not {other}"))),
    };
    match r {
        Ok(r) => finish(&[r], report, io),
        Err(AInfError::BoundMismatch(m)) => {
            writeln!(io.out, "FAIL diff: bounds differ: {m}")?;
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CategoryName {
    Delta,
    Fukaya,
    Simples,
    Pants,
    Pia2Prime,
}

/// Every nonzero operation of `c` on identity-free tuples within the bounds.
pub fn category_table<C: AInfCategory>(c: &C, cfg: &RunConfig) -> Result<OperationTable<C::Sym>, AInfError> {
    let mut t = OperationTable::new(TableMeta { backend: "category".into(), ..meta(cfg) });
    for f in all_symbols(c, cfg.degree_max) {
        for tuple in composable_tuples(c, &f, cfg.arity_max, cfg.degree_max) {
            let v = m(c, &tuple)?;
            t.insert(tuple, v);
        }
    }
    Ok(t)
}

fn f2_only(cfg: &RunConfig, what: &str) -> Result<(), CliError> {
    if cfg.field() == Field::F2 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} is defined over f2 only")))
    }
}

pub fn export_category(name: CategoryName, grading: &[i64], cfg: &RunConfig, io: &mut Io) -> Result<i32, CliError> {
    let field = cfg.field();
    let (label, t) = match name {
        CategoryName::Delta => ("delta".to_string(), table_json("delta", &category_table(&build_delta(field), cfg)?)),
        CategoryName::Fukaya => {
            let c = build_fukaya(field, grading)?;
            let label = format!("fukaya:{}", grading.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            (label.clone(), table_json(&label, &category_table(&c, cfg)?))
        }
        CategoryName::Simples => {
            f2_only(cfg, "the formal category on the simples")?;
            ("simples".into(), table_json("simples", &category_table(&FormalSimples, cfg)?))
        }
        CategoryName::Pants => {
            let c = PantsCategory::new(field, cfg.degree_max.max(1) as u32);
            ("pants".into(), table_json("pants", &category_table(&c, cfg)?))
        }
        CategoryName::Pia2Prime => {
            f2_only(cfg, "the merged category")?;
            let b = SymbolicBackend;
            let pi = pia2_f2(&b, cfg.degree_max);
            ("pia2-prime".into(), table_json("pia2-prime", &category_table(&PiPrime::new(&pi), cfg)?))
        }
    };
    let w = io.emit(cfg.output.as_deref(), &to_pretty(&t)?)?;
    writeln!(w, "{label}: {}", summary(&t))?;
    Ok(0)
}

type Parse<'a, T> = &'a dyn Fn(&str) -> Option<T>;

fn functor_from_json<S, T>(
    j: &FunctorJson,
    parse_sym: Parse<S>,
    parse_obj: Parse<S::Obj>,
) -> Result<AInfFunctorData<S, T>, CliError>
where
    S: Morphism + 'static,
    T: Morphism + FromStr + 'static,
    T::Obj: FromStr,
{
    let bad = |what: &str, s: &str| CliError::Format(format!("unknown {what} {s:?}"));
    let mut objects = BTreeMap::new();
    for (x, y) in &j.object_map {
        let y: T::Obj = y.parse().map_err(|_| bad("target object", y))?;
        objects.insert(parse_obj(x).ok_or_else(|| bad("source object", x))?, y);
    }
    let mut table = BTreeMap::new();
    for e in &j.f1 {
        let s = parse_sym(&e.from).ok_or_else(|| bad("source morphism", &e.from))?;
        table.insert(s, parse_image::<T>(Field::F2, &e.to)?);
    }
    let name = j.name.clone().unwrap_or_else(|| format!("{} -> {}", j.source, j.target));
    let mut f = AInfFunctorData::from_table(name, Field::F2, objects, table);
    for h in &j.higher {
        let inputs = h.inputs.iter().map(|s| parse_sym(s).ok_or_else(|| bad("source morphism", s))).collect::<Result<Vec<S>, _>>()?;
        if inputs.len() < 2 {
            return Err(CliError::Format("higher components need at least two inputs".into()));
        }
        f.higher.insert(inputs, parse_image::<T>(Field::F2, &h.to)?);
    }
    Ok(f)
}

fn check_into<C>(c: &C, j: &FunctorJson, parse_sym: Parse<C::Sym>, parse_obj: Parse<<C::Sym as Morphism>::Obj>, tuples: &[Vec<C::Sym>], degree_max: i64) -> Result<Report, CliError>
where
    C: AInfCategory,
    C::Sym: 'static,
{
    let b = SymbolicBackend;
    let pi = pia2_f2(&b, degree_max);
    match j.target.as_str() {
        "pia2" => {
            let f = functor_from_json::<C::Sym, ExtSymbol>(j, parse_sym, parse_obj)?;
            Ok(verify_functor(&f, c, &pi, tuples)?)
        }
        "pia2-prime" => {
            let f = functor_from_json(j, parse_sym, parse_obj)?;
            Ok(verify_functor(&f, c, &PiPrime::new(&pi), tuples)?)
        }
        other => Err(CliError::Usage(format!("unknown target {other:?}; use pia2 or pia2-prime"))),
    }
}

fn parsed<T: FromStr>(s: &str) -> Option<T> {
    s.parse().ok()
}

fn fin_parsers(c: &TableCategory) -> (impl Fn(&str) -> Option<FinSym> + '_, impl Fn(&str) -> Option<String> + '_) {
    let objects: Vec<String> = c.objects();
    (move |s: &str| c.sym(s), move |s: &str| objects.iter().find(|o| o.as_str() == s).cloned())
}

/// Checks a user-supplied functor over F2 on every composable tuple within
/// the bounds (the pants category uses the same tuples as the built-in check).
pub fn functor_report(j: &FunctorJson, cfg: &RunConfig) -> Result<Report, CliError> {
    f2_only(cfg, "functor verification")?;
    let (arity, deg) = (cfg.arity_max, cfg.degree_max);
    if j.source == "delta" || j.source.starts_with("fukaya:") {
        let c = if j.source == "delta" {
            build_delta(Field::F2)
        } else {
            let grading = j.source["fukaya:".len()..]
                .split(',')
                .map(|g| g.trim().parse::<i64>().map_err(|_| CliError::Format(format!("bad grading in {:?}", j.source))))
                .collect::<Result<Vec<_>, _>>()?;
            build_fukaya(Field::F2, &grading)?
        };
        let tuples = tuples_over(&all_symbols(&c, deg), arity);
        let (ps, po) = fin_parsers(&c);
        return check_into(&c, j, &ps, &po, &tuples, deg);
    }
    match j.source.as_str() {
        "simples" => {
            let c = FormalSimples;
            let tuples = tuples_over(&all_symbols(&c, deg), arity);
            let po = |s: &str| parsed::<pia2::symbols::Obj>(s).filter(|o| o.is_simple());
            check_into(&c, j, &parsed::<ExtSymbol>, &po, &tuples, deg)
        }
        "pants" => {
            let c = PantsCategory::new(Field::F2, deg.max(1) as u32);
            let tuples = pants_scope(&c, arity, deg);
            check_into(&c, j, &parsed, &parsed, &tuples, deg)
        }
        other => Err(CliError::Usage(format!("unknown source {other:?}; use delta, fukaya:<grading>, simples or pants"))),
    }
}

pub fn verify_functor_file(file: &Path, cfg: &RunConfig, io: &mut Io) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    let j: FunctorJson = serde_json::from_str(&text)?;
    let r = functor_report(&j, cfg)?;
    finish(&[r], cfg.output.as_deref(), io)
}
