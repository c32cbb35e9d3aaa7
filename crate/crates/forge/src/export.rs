//! Per-number records for `query`, and CSV export of the sorted defect list.

use std::io::Write;

use defect_forge_core::defect::{defect_class, is_leader, stability, DefectEntry};
use defect_forge_core::{defect_key, ComplexityTable};
use serde::Serialize;

use crate::error::Result;

/// Defects are always shown with six fractional digits.
pub fn format_defect(d: f64) -> String {
    format!("{d:.6}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryRecord {
    pub n: u64,
    pub complexity: u32,
    pub defect: String,
    pub class: String,
    pub leader: bool,
    pub stability: String,
    pub k_checked: u32,
    pub witness: Option<u32>,
}

pub fn query(table: &ComplexityTable, n: u64) -> Result<QueryRecord> {
    let key = defect_key(table, n)?;
    let status = stability(table, n)?;
    Ok(QueryRecord {
        n,
        complexity: key.complexity as u32,
        defect: format_defect(key.to_f64()),
        class: defect_class(table, n)?.to_string(),
        leader: is_leader(table, n)?,
        stability: status.verdict.to_string(),
        k_checked: status.k_checked,
        witness: status.witness,
    })
}

impl QueryRecord {
    pub fn text(&self) -> String {
        let mut s = format!(
            "n={} complexity={} defect={} class={} leader={} stability={} k_checked={}",
            self.n, self.complexity, self.defect, self.class, self.leader, self.stability, self.k_checked
        );
        if let Some(k) = self.witness {
            s.push_str(&format!(" witness={k}"));
        }
        s
    }
}

pub fn write_defects_csv<W: Write>(out: W, entries: &[DefectEntry]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| crate::error::ForgeError::Format(e.to_string());
    w.write_record(["n", "complexity", "defect_float", "class", "stable_status"])
        .map_err(io)?;
    for e in entries {
        w.write_record([
            e.leader.to_string(),
            e.key.complexity.to_string(),
            format_defect(e.key.to_f64()),
            e.class.to_string(),
            e.status.verdict.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| crate::error::ForgeError::io("<csv>", e))?;
    Ok(())
}
