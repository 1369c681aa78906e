//! Plain-text renderings for `--pretty`.

use std::fmt::Write;

use nilcoh_core::catalog::{CatalogEntry, ScanRow, SuiteSummary};
use nilcoh_core::metrics::ConditionResult;
use nilcoh_core::obstructions::JostYau;
use nilcoh_core::report::TableKind;
use nilcoh_core::{AlgebraSpec, Condition, MetricForm, ObstructionReport, Report, Theory};
use serde::Serialize;

/// The serialized name of a unit enum value.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

pub fn validation(r: &Report) -> String {
    let mut s = format!("{} (n = {})\n", r.name, r.n);
    if let Some(v) = &r.valid {
        if v.jacobi_ok {
            s.push_str("d^2 = 0: ok\n");
        } else {
            for f in &v.failures {
                let _ = writeln!(s, "d^2 a{} = {}", f.generator, f.d_squared);
            }
        }
    }
    if let Some(nil) = r.nilpotent_j {
        let _ = writeln!(s, "nilpotent J: {}", if nil { "yes" } else { "no" });
    }
    if let Some(f) = &r.filtration {
        let dims: Vec<String> = f.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "filtration: {}", dims.join(" "));
    }
    s
}

fn grid(rows: &[Vec<usize>]) -> String {
    let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut s = String::new();
    for (p, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(s, "p={p}  {}", cells.join(" "));
    }
    s
}

pub fn table(r: &Report, kind: TableKind) -> String {
    let mut s = format!("{} (n = {})\n", r.name, r.n);
    let Some(h) = &r.hodge else { return s };
    match kind {
        TableKind::Derham => {
            let b: Vec<String> = h.derham.iter().flatten().map(ToString::to_string).collect();
            let _ = writeln!(s, "betti: {}", b.join(" "));
        }
        TableKind::Hodge(t) => {
            let rows = match t {
                Theory::BottChern => &h.bc,
                Theory::Aeppli => &h.aeppli,
                Theory::Dolbeault | Theory::ConjDolbeault => &h.dolbeault,
            };
            let _ = writeln!(s, "{} numbers h^(p,q), q across:", t.key());
            s.push_str(&grid(rows.as_deref().unwrap_or(&[])));
        }
    }
    s
}

pub fn metric(m: &MetricForm, cond: Condition, r: &ConditionResult) -> String {
    let mut s = format!("omega = {}\npositive definite: {}\n", m.omega, m.positive);
    if r.holds {
        let _ = writeln!(s, "{cond}: holds");
    } else {
        let _ = writeln!(s, "{cond}: fails\nwitness: {}", r.witness);
    }
    s
}

pub fn obstruction(spec: &AlgebraSpec, r: &ObstructionReport) -> String {
    let mut s = format!("{} (n = {}), validity {}\n", spec.name(), spec.n(), tag(&r.validity));
    let _ = writeln!(s, "h01_bc = {}, h01_a = {}, gap = {} ({})", r.h01_bc, r.h01_a, r.gap, tag(&r.gap_verdict));
    match &r.jost_yau {
        JostYau::Pass => s.push_str("holomorphic 1-forms: all closed\n"),
        JostYau::Fail { witness } => {
            let _ = writeln!(s, "holomorphic 1-form with nonzero d: {witness}");
        }
    }
    let _ = writeln!(s, "torality: {}", tag(&r.torality));
    if let Some(l) = r.l_rank {
        let _ = writeln!(s, "L rank: {l}");
    }
    if let Some(a) = r.astheno {
        let _ = writeln!(s, "metric astheno: {a}");
    }
    let _ = writeln!(s, "obstructed: {}", r.obstructed());
    s
}

pub fn entry(e: &CatalogEntry) -> String {
    let mut s = format!("{}\n{}", e.key, e.spec.to_dsl());
    for f in &e.fixtures {
        let _ = writeln!(s, "  {} = {} [{}]", f.name, f.expected, tag(&f.provenance));
    }
    for n in &e.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn suite(summary: &SuiteSummary) -> String {
    let mut s = String::new();
    for c in &summary.checks {
        let status = if c.pass { "ok  " } else { "FAIL" };
        let _ = write!(s, "{status} {} {} [{}]", c.key, c.fixture, tag(&c.provenance));
        if !c.pass {
            let _ = write!(s, " expected {} computed {}", c.expected, c.computed);
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{} passed, {} failed", summary.passed, summary.failed);
    s
}

pub fn scan(rows: &[ScanRow]) -> String {
    rows.iter().map(|r| format!("{}  {}\n", r.diag.join(","), if r.holds { "holds" } else { "fails" })).collect()
}
