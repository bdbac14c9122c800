//! JSON forms of operation tables, reports and functor data. Keys are
//! emitted in sorted order and entries in table order, so equal inputs give
//! byte-identical files.

use std::str::FromStr;

use pia2::ainf::{Report, Status};
use pia2::linalg::{Field, Scalar};
use pia2::transfer::{LinComb, Morphism, OperationTable, TableMeta};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub symbol: String,
}

/// One nonzero operation. `objects` lists the target of each input as
/// written, then the source of the last one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub arity: usize,
    pub degree: i64,
    pub inputs: Vec<String>,
    pub objects: Vec<String>,
    pub output: Vec<TermJson>,
}

/// The bounds a table is complete for. How it was computed is not recorded,
/// so tables from different backends compare byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaJson {
    pub algebra: String,
    pub arity_max: usize,
    pub degree_max: i64,
    pub field: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub entries: Vec<EntryJson>,
    pub meta: MetaJson,
}

pub fn field_name(f: Field) -> &'static str {
    match f {
        Field::F2 => "f2",
        Field::Q => "q",
    }
}

pub fn parse_field(s: &str) -> Result<Field, CliError> {
    match s {
        "f2" => Ok(Field::F2),
        "q" => Ok(Field::Q),
        _ => Err(CliError::Format(format!("unknown field {s:?}"))),
    }
}

pub fn parse_scalar(field: Field, s: &str) -> Result<Scalar, CliError> {
    let bad = || CliError::Format(format!("bad coefficient {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    match field {
        Field::F2 if d % 2 != 0 => Ok(field.int(n)),
        Field::F2 => Err(bad()),
        Field::Q => Ok(Scalar::rational(n, d)),
    }
}

pub fn terms_json<S: Morphism>(v: &LinComb<S>) -> Vec<TermJson> {
    v.iter().map(|(s, c)| TermJson { coeff: c.to_string(), symbol: s.to_string() }).collect()
}

fn chain_objects<S: Morphism>(k: &[S]) -> Vec<String> {
    let mut objects: Vec<String> = k.iter().map(|s| s.target().to_string()).collect();
    objects.extend(k.last().map(|s| s.source().to_string()));
    objects
}

/// Degree of `m_d` on `k`.
fn output_degree<S: Morphism>(k: &[S]) -> i64 {
    k.iter().map(Morphism::degree).sum::<i64>() + 2 - k.len() as i64
}

pub fn table_json<S: Morphism>(algebra: &str, t: &OperationTable<S>) -> TableJson {
    let entries = t
        .entries()
        .map(|(k, v)| EntryJson {
            arity: k.len(),
            degree: output_degree(k),
            inputs: k.iter().map(ToString::to_string).collect(),
            objects: chain_objects(k),
            output: terms_json(v),
        })
        .collect();
    let m = &t.meta;
    TableJson {
        entries,
        meta: MetaJson {
            algebra: algebra.into(),
            arity_max: m.arity_max,
            degree_max: m.degree_max,
            field: field_name(m.field).into(),
        },
    }
}

fn parse_sym<S: FromStr>(s: &str) -> Result<S, CliError> {
    s.parse().map_err(|_| CliError::Format(format!("unknown symbol {s:?}")))
}

/// Reads a table back, checking that each entry is composable and that its
/// recorded arity, objects and degree match its inputs.
pub fn table_from_json<S: Morphism + FromStr>(j: &TableJson) -> Result<OperationTable<S>, CliError> {
    let field = parse_field(&j.meta.field)?;
    let meta = TableMeta {
        arity_max: j.meta.arity_max,
        degree_max: j.meta.degree_max,
        field,
        backend: "file".into(),
        homotopy: String::new(),
        window: None,
    };
    let mut t = OperationTable::new(meta);
    for e in &j.entries {
        let inputs: Vec<S> = e.inputs.iter().map(|s| parse_sym(s)).collect::<Result<_, _>>()?;
        let composable = inputs.len() >= 2 && inputs.windows(2).all(|w| w[0].source() == w[1].target());
        if !composable || e.arity != inputs.len() || e.objects != chain_objects(&inputs) || e.degree != output_degree(&inputs) {
            return Err(CliError::Format(format!("inconsistent entry {:?}", e.inputs)));
        }
        let mut out: LinComb<S> = Vec::new();
        for term in &e.output {
            out.push((parse_sym(&term.symbol)?, parse_scalar(field, &term.coeff)?));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        t.insert(inputs, out);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub expected: String,
    pub got: String,
    pub tuple: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub check: String,
    pub examined: usize,
    pub status: String,
    pub violations: Vec<ViolationJson>,
}

pub fn report_json(r: &Report) -> ReportJson {
    ReportJson {
        check: r.check.clone(),
        examined: r.examined,
        status: if r.status == Status::Pass { "pass" } else { "fail" }.into(),
        violations: r
            .violations
            .iter()
            .map(|v| ViolationJson { expected: v.expected.clone(), got: v.got.clone(), tuple: v.tuple.clone() })
            .collect(),
    }
}

/// Image of a morphism under `F^1`: a single symbol (`"0"` for zero) or a list
/// of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageJson {
    Symbol(String),
    Terms(Vec<TermJson>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F1Json {
    pub from: String,
    pub to: ImageJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HigherJson {
    pub inputs: Vec<String>,
    pub to: ImageJson,
}

/// A functor data file. `source` is `delta`, `simples`, `pants` or
/// `fukaya:<g1>,...,<gn>`; `target` is `pia2` or `pia2-prime`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    #[serde(rename = "F1")]
    pub f1: Vec<F1Json>,
    #[serde(default)]
    pub higher: Vec<HigherJson>,
    #[serde(default)]
    pub name: Option<String>,
    pub object_map: std::collections::BTreeMap<String, String>,
    pub source: String,
    pub target: String,
}

pub fn parse_image<T: Morphism + FromStr>(field: Field, img: &ImageJson) -> Result<LinComb<T>, CliError> {
    let mut out: LinComb<T> = match img {
        ImageJson::Symbol(s) if s == "0" => Vec::new(),
        ImageJson::Symbol(s) => vec![(parse_sym(s)?, field.one())],
        ImageJson::Terms(ts) => ts.iter().map(|t| Ok((parse_sym(&t.symbol)?, parse_scalar(field, &t.coeff)?))).collect::<Result<_, CliError>>()?,
    };
    out.retain(|(_, c)| !c.is_zero());
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

pub fn to_pretty<T: Serialize>(x: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(x)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pia2::ainf::expected_table;
    use pia2::symbols::ExtSymbol;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar(Field::Q, "-3/6").unwrap(), Scalar::rational(-1, 2));
        assert_eq!(parse_scalar(Field::F2, "1").unwrap(), Field::F2.one());
        assert!(parse_scalar(Field::F2, "1/2").is_err());
        assert!(parse_scalar(Field::Q, "1/0").is_err());
        assert!(parse_scalar(Field::Q, "x").is_err());
        assert_eq!(parse_scalar(Field::Q, "-1/2").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn tables_round_trip() {
        let t = expected_table(5, 3, None).table;
        let j = table_json("pia2", &t);
        let back: OperationTable<ExtSymbol> = table_from_json(&j).unwrap();
        assert_eq!(table_json("pia2", &back), j);
        let text = to_pretty(&j).unwrap();
        let parsed: TableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, j);
        // keys come out sorted
        let first = &text[text.find("\"arity\"").unwrap()..];
        let order = ["\"arity\"", "\"degree\"", "\"inputs\"", "\"objects\"", "\"output\""].map(|k| first.find(k).unwrap());
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn inconsistent_entries_are_rejected() {
        let t = expected_table(3, 1, None).table;
        let mut j = table_json("pia2", &t);
        j.entries[0].degree += 1;
        assert!(table_from_json::<ExtSymbol>(&j).is_err());
        let mut j = table_json("pia2", &t);
        j.entries[0].inputs.reverse();
        assert!(table_from_json::<ExtSymbol>(&j).is_err());
        let mut j = table_json("pia2", &t);
        j.entries[0].output[0].symbol = "nope".into();
        assert!(table_from_json::<ExtSymbol>(&j).is_err());
    }
}
