//! Serialization of survey tables as Markdown, CSV or JSON.
//!
//! Three tables are emitted per survey: census counts, index statistics over
//! all signable graphs, and the same statistics restricted to signable
//! graphs with `det = ±1`. Orders are columns in Markdown; CSV is long
//! format, one value per line.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};
use specgraph_core::stats::{kind_bit, DescriptiveStats, Extreme};
use specgraph_core::survey::{IndexSelector, IndexStats, OrderCounts, SignCounts};
use specgraph_core::SignabilityKind;

use crate::pipeline::SurveyTables;

pub const SCHEMA: &str = "specgraph/1";
pub const CSV_HEADER: &str = "table,row,m,value,graph6,class";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv, md or json)")),
        }
    }
}

const KINDS: [SignabilityKind; 3] = [SignabilityKind::PositiveOnly, SignabilityKind::NegativeOnly, SignabilityKind::Both];

/// Count rows as `(key, label, value)`.
fn count_rows(c: &OrderCounts) -> [(&'static str, &'static str, u64); 11] {
    let s = &c.signable;
    let u = &c.unit_signable;
    [
        ("all", "all graphs", c.all),
        ("det_nonzero", "det ≠ 0", c.det_nonzero),
        ("det_unit", "det = ±1", c.det_unit),
        ("pos_only", "+", s.pos_only),
        ("neg_only", "−", s.neg_only),
        ("both", "±", s.both),
        ("signable", "all signable", s.signable()),
        ("unit_pos_only", "+ (det = ±1)", u.pos_only),
        ("unit_neg_only", "− (det = ±1)", u.neg_only),
        ("unit_both", "± (det = ±1)", u.both),
        ("unit_signable", "all signable (det = ±1)", u.signable()),
    ]
}

fn sign_counts_json(s: &SignCounts) -> Value {
    json!({"pos_only": s.pos_only, "neg_only": s.neg_only, "both": s.both, "signable": s.signable()})
}

/// Section title, JSON key and per-order statistics.
type Population<'a> = (&'static str, &'static str, Vec<(usize, &'a IndexStats)>);

fn populations(tables: &SurveyTables) -> [Population<'_>; 2] {
    let pick = |unit: bool| {
        tables.orders.iter().map(|(m, a)| (*m, if unit { &a.unit_signable } else { &a.signable })).collect()
    };
    [
        ("signable", "Signable graphs", pick(false)),
        ("unit_signable", "Signable graphs with det = ±1", pick(true)),
    ]
}

/// Renders reals to 4 decimals, or to the shortest round-trip form.
fn real(x: f64, full: bool) -> String {
    if full {
        return format!("{x}");
    }
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn tie_tags(e: &Extreme) -> Vec<&'static str> {
    KINDS.iter().filter(|k| e.tie_classes & kind_bit(**k) != 0).map(|k| k.tag()).collect()
}

/// Markdown cell for an extreme: the value and its witness tag, plus any
/// other classes attaining it within tolerance.
fn extreme_cell(e: &Extreme, full: bool) -> String {
    let own = e.witness.class.tag();
    let others: Vec<_> = tie_tags(e).into_iter().filter(|t| *t != own).collect();
    if others.is_empty() {
        format!("{} ({own})", real(e.value, full))
    } else {
        format!("{} ({own}; also {})", real(e.value, full), others.join(" "))
    }
}

type StatCell = fn(&DescriptiveStats, bool) -> Option<String>;

fn stat_rows() -> Vec<(IndexSelector, &'static str, StatCell)> {
    let mut rows: Vec<(IndexSelector, &'static str, StatCell)> = Vec::new();
    for sel in IndexSelector::ALL {
        rows.push((sel, "E", |d, f| Some(real(d.mean, f))));
        rows.push((sel, "σ", |d, f| d.std.map(|x| real(x, f))));
        rows.push((sel, "𝒮", |d, f| d.skew.map(|x| real(x, f))));
        rows.push((sel, "𝒦", |d, f| d.kurt.map(|x| real(x, f))));
        rows.push((sel, "max", |d, f| Some(extreme_cell(&d.max, f))));
        rows.push((sel, "min", |d, f| Some(extreme_cell(&d.min, f))));
    }
    rows
}

fn md_header(out: &mut String, orders: &[usize]) {
    out.push_str("| m |");
    for m in orders {
        let _ = write!(out, " {m} |");
    }
    out.push_str("\n|---|");
    for _ in orders {
        out.push_str("---|");
    }
    out.push('\n');
}

fn markdown(tables: &SurveyTables, full: bool) -> String {
    let orders: Vec<usize> = tables.orders.keys().copied().collect();
    let mut out = String::from("## Counts\n\n");
    md_header(&mut out, &orders);
    let labels = count_rows(&OrderCounts::default());
    let counts: Vec<_> = tables.orders.values().map(|a| count_rows(&a.counts)).collect();
    for (row, (_, label, _)) in labels.iter().enumerate() {
        let _ = write!(out, "| {label} |");
        for c in &counts {
            let _ = write!(out, " {} |", c[row].2);
        }
        out.push('\n');
    }
    for (_, title, pop) in populations(tables) {
        let _ = write!(out, "\n## {title}\n\n");
        md_header(&mut out, &orders);
        let stats: Vec<_> = pop.iter().map(|(_, s)| IndexSelector::ALL.map(|sel| s.descriptive(sel))).collect();
        for (sel, stat, cell) in stat_rows() {
            let label = match stat {
                "max" | "min" => format!("{stat} {}", sel.label()),
                _ => format!("{stat}({})", sel.label()),
            };
            let _ = write!(out, "| {label} |");
            for s in &stats {
                let v = s[sel as usize].as_ref().and_then(|d| cell(d, full));
                let _ = write!(out, " {} |", v.as_deref().unwrap_or("--"));
            }
            out.push('\n');
        }
    }
    out
}

fn csv_line(out: &mut String, table: &str, row: &str, m: usize, value: &str, witness: Option<&Extreme>) {
    let (g6, class) = match witness {
        Some(e) => (String::from_utf8_lossy(&e.witness.graph6).into_owned(), e.witness.class.tag()),
        None => (String::new(), ""),
    };
    let _ = writeln!(out, "{table},{row},{m},{value},{g6},{class}");
}

fn csv(tables: &SurveyTables) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (m, acc) in &tables.orders {
        for (key, _, v) in count_rows(&acc.counts) {
            csv_line(&mut out, "counts", key, *m, &v.to_string(), None);
        }
    }
    for (name, _, pop) in populations(tables) {
        for (m, s) in pop {
            for sel in IndexSelector::ALL {
                let Some(d) = s.descriptive(sel) else { continue };
                let key = sel.key();
                csv_line(&mut out, name, &format!("{key}.count"), m, &d.count.to_string(), None);
                csv_line(&mut out, name, &format!("{key}.mean"), m, &real(d.mean, true), None);
                for (stat, v) in [("std", d.std), ("skew", d.skew), ("kurt", d.kurt)] {
                    if let Some(v) = v {
                        csv_line(&mut out, name, &format!("{key}.{stat}"), m, &real(v, true), None);
                    }
                }
                csv_line(&mut out, name, &format!("{key}.max"), m, &real(d.max.value, true), Some(&d.max));
                csv_line(&mut out, name, &format!("{key}.min"), m, &real(d.min.value, true), Some(&d.min));
            }
        }
    }
    out
}

fn extreme_json(e: &Extreme) -> Value {
    json!({
        "value": e.value,
        "graph6": String::from_utf8_lossy(&e.witness.graph6),
        "class": e.witness.class.tag(),
        "ties": tie_tags(e),
    })
}

/// JSON object for one statistics row.
pub fn stats_json(d: &DescriptiveStats) -> Value {
    json!({
        "count": d.count,
        "mean": d.mean,
        "std": d.std,
        "skew": d.skew,
        "kurt": d.kurt,
        "min": extreme_json(&d.min),
        "max": extreme_json(&d.max),
    })
}

fn index_stats_json(s: &IndexStats) -> Value {
    let mut map = serde_json::Map::new();
    for sel in IndexSelector::ALL {
        map.insert(sel.key().into(), s.descriptive(sel).as_ref().map_or(Value::Null, stats_json));
    }
    Value::Object(map)
}

pub fn to_json(tables: &SurveyTables) -> Value {
    let orders: Vec<Value> = tables
        .orders
        .iter()
        .map(|(m, a)| {
            let c = &a.counts;
            json!({
                "m": m,
                "counts": {
                    "all": c.all,
                    "det_nonzero": c.det_nonzero,
                    "det_unit": c.det_unit,
                    "signable": sign_counts_json(&c.signable),
                    "unit_signable": sign_counts_json(&c.unit_signable),
                },
                "stats": {
                    "signable": index_stats_json(&a.signable),
                    "unit_signable": index_stats_json(&a.unit_signable),
                },
            })
        })
        .collect();
    json!({"schema": SCHEMA, "moment_decimals": tables.moment_decimals, "orders": orders})
}

/// Serializes `tables`. `full_precision` only affects Markdown; CSV and
/// JSON always carry full precision.
pub fn render(tables: &SurveyTables, format: Format, full_precision: bool) -> String {
    match format {
        Format::Markdown => markdown(tables, full_precision),
        Format::Csv => csv(tables),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(tables)).expect("serializable");
            s.push('\n');
            s
        }
    }
}
