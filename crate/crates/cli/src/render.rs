use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use bigraded_core::cohomology::{
    abc_groups, aeppli, anti_dolbeault, bott_chern, derham, dolbeault, CohomologyTable, Flavor,
};
use bigraded_core::models::ModelSpec;

use crate::checks::CheckResult;
use crate::config::{FlavorSet, LoadedModel};
use crate::Output;

pub const INVARIANT_MODEL: &str = "invariant-model";

pub fn compute_tables(model: &LoadedModel, flavors: &FlavorSet) -> anyhow::Result<Vec<CohomologyTable>> {
    let b = &model.built.bicomplex;
    let mut abc = None;
    let mut out = Vec::with_capacity(flavors.0.len());
    for &f in &flavors.0 {
        let t = match f {
            Flavor::Dolbeault => dolbeault(b)?,
            Flavor::AntiDolbeault => anti_dolbeault(b)?,
            Flavor::DeRham => derham(b)?,
            Flavor::BottChern => bott_chern(b)?,
            Flavor::Aeppli => aeppli(b)?,
            Flavor::A | Flavor::B | Flavor::C | Flavor::CAeppli => {
                if abc.is_none() {
                    abc = Some(abc_groups(b)?);
                }
                let g = abc.as_ref().expect("just computed");
                match f {
                    Flavor::A => g.a.clone(),
                    Flavor::B => g.b.clone(),
                    Flavor::C => g.c.clone(),
                    _ => g.c_aeppli.clone(),
                }
            }
        };
        out.push(t);
    }
    Ok(out)
}

/// Flavors whose groups on a vaisman model are those of the invariant
/// model only.
fn qualifier(model: &LoadedModel, flavor: Flavor) -> Option<&'static str> {
    let qualified = matches!(flavor, Flavor::BottChern | Flavor::Aeppli);
    (model.is_vaisman() && qualified).then_some(INVARIANT_MODEL)
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    model: &'a str,
    n: usize,
    tables: BTreeMap<String, BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    qualifiers: BTreeMap<String, &'static str>,
    checks: &'a [CheckResult],
}

fn json_output<'a>(model: &'a LoadedModel, tables: &[CohomologyTable], checks: &'a [CheckResult]) -> JsonOutput<'a> {
    JsonOutput {
        model: model.name(),
        n: model.built.n(),
        tables: tables
            .iter()
            .map(|t| (t.flavor().to_string(), t.dims_by_name()))
            .collect(),
        qualifiers: tables
            .iter()
            .filter_map(|t| qualifier(model, t.flavor()).map(|q| (t.flavor().to_string(), q)))
            .collect(),
        checks,
    }
}

fn to_json(value: &impl Serialize) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn render_compute(model: &LoadedModel, tables: &[CohomologyTable], output: Output) -> anyhow::Result<String> {
    match output {
        Output::Json => to_json(&json_output(model, tables, &[])),
        Output::Csv => csv_string(
            &["flavor", "key", "dim", "qualifier"],
            tables.iter().flat_map(|t| {
                let q = qualifier(model, t.flavor()).unwrap_or("").to_string();
                t.dims_by_name()
                    .into_iter()
                    .map(move |(k, d)| vec![t.flavor().to_string(), k, d.to_string(), q.clone()])
            }),
        ),
        Output::Table => {
            let mut s = header(model);
            for t in tables {
                write!(s, "{t}")?;
                if let Some(q) = qualifier(model, t.flavor()) {
                    writeln!(s, "  ({q}: groups of the invariant model)")?;
                }
            }
            Ok(s)
        }
    }
}

fn header(model: &LoadedModel) -> String {
    format!(
        "model {} ({}, n = {})\n",
        model.name(),
        model.spec.kind(),
        model.built.n()
    )
}

pub fn render_verify(model: &LoadedModel, results: &[CheckResult], output: Output) -> anyhow::Result<String> {
    match output {
        Output::Json => to_json(&json_output(model, &[], results)),
        Output::Csv => csv_string(
            &["name", "verdict", "detail"],
            results
                .iter()
                .map(|r| vec![r.name.clone(), r.verdict.to_string(), r.detail.clone()]),
        ),
        Output::Table => {
            let mut s = header(model);
            for r in results {
                writeln!(s, "{} {}: {}", r.verdict, r.name, r.detail)?;
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ListEntry<'a> {
    name: &'a str,
    kind: String,
    n: usize,
    contractions: Vec<&'a str>,
}

pub fn render_list(specs: &[ModelSpec], output: Output) -> anyhow::Result<String> {
    let entries: Vec<ListEntry> = specs
        .iter()
        .map(|s| ListEntry {
            name: &s.name,
            kind: s.kind().to_string(),
            n: s.n(),
            contractions: s.contraction_names(),
        })
        .collect();
    match output {
        Output::Json => to_json(&entries),
        Output::Csv => csv_string(
            &["name", "kind", "n", "contractions"],
            entries.iter().map(|e| {
                vec![
                    e.name.to_string(),
                    e.kind.clone(),
                    e.n.to_string(),
                    e.contractions.join(" "),
                ]
            }),
        ),
        Output::Table => {
            let mut s = String::new();
            for e in &entries {
                writeln!(
                    s,
                    "{:<18} {:<8} n={}  contractions: {}",
                    e.name,
                    e.kind,
                    e.n,
                    e.contractions.join(", ")
                )?;
            }
            Ok(s)
        }
    }
}
