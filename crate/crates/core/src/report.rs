//! The JSON report: stable keys, absent fields omitted.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::AlgebraSpec;
use crate::cohomology::{Bicomplex, Theory};
use crate::error::Result;
use crate::exterior::{validate, GeneratorFailure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validity {
    pub jacobi_ok: bool,
    pub failures: Vec<GeneratorFailure>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HodgeSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aeppli: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dolbeault: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derham: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid: Option<Validity>,
    #[serde(rename = "nilpotent_J", skip_serializing_if = "Option::is_none")]
    pub nilpotent_j: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeSection>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<String, Value>,
}

/// Which cohomology a report should include.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Hodge(Theory),
    Derham,
}

impl std::str::FromStr for TableKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "derham" | "de_rham" => Ok(TableKind::Derham),
            "conj_dolbeault" => Err("conj_dolbeault has no report slot".into()),
            other => other.parse().map(TableKind::Hodge),
        }
    }
}

impl Report {
    pub fn new(spec: &AlgebraSpec) -> Self {
        Report {
            name: spec.name().to_string(),
            n: spec.n(),
            valid: None,
            nilpotent_j: None,
            filtration: None,
            hodge: None,
            verdicts: BTreeMap::new(),
        }
    }

    /// Report with the validation fields filled in.
    pub fn validation(spec: &AlgebraSpec) -> Self {
        let v = validate(spec);
        let mut r = Report::new(spec);
        r.valid = Some(Validity { jacobi_ok: v.jacobi_ok, failures: v.failures });
        r.nilpotent_j = Some(v.nilpotent_j);
        r.filtration = Some(v.filtration);
        r
    }

    pub fn add_table(&mut self, bc: &Bicomplex, kind: TableKind) -> Result<()> {
        let hodge = self.hodge.get_or_insert_with(HodgeSection::default);
        match kind {
            TableKind::Derham => hodge.derham = Some(bc.derham_table()?),
            TableKind::Hodge(t) => {
                let entries = Some(bc.hodge_table(t)?.entries);
                match t {
                    Theory::BottChern => hodge.bc = entries,
                    Theory::Aeppli => hodge.aeppli = entries,
                    Theory::Dolbeault => hodge.dolbeault = entries,
                    Theory::ConjDolbeault => {}
                }
            }
        }
        Ok(())
    }

    pub fn add_verdict(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.verdicts.insert(key.into(), value);
    }
}

/// Compact JSON for any report value; identical inputs give identical bytes.
pub fn emit_report<T: Serialize>(report: &T) -> String {
    serde_json::to_string(report).expect("report values serialize")
}

pub fn emit_report_pretty<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("report values serialize")
}
