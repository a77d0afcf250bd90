//! `topogame census`: invariants and minimal horizons for every space on n
//! labeled points, with the expected identities checked row by row.

use crate::{format_horizon, options, output, CensusArgs, CensusFormat, CliError, CliResult};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use topogame_core::checks::HorizonProfile;
use topogame_core::spacegen::{enumerate_topologies, MAX_ENUMERATION_POINTS};

/// A horizon cell: a number, or `none@<max_h>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horizon {
    pub value: Option<usize>,
    pub max_h: usize,
}

impl Serialize for Horizon {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.value {
            Some(h) => serializer.serialize_u64(h as u64),
            None => serializer.collect_str(&format_horizon(None, self.max_h)),
        }
    }
}

/// One census line, in the fixed column order.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub space_id: String,
    pub n: usize,
    pub cellularity: usize,
    pub density: usize,
    pub pi_weight: usize,
    pub wl_degree: usize,
    #[serde(rename = "h_two_SelOOD")]
    pub h_two_sel_o_od: Horizon,
    #[serde(rename = "h_two_SelCOD")]
    pub h_two_sel_c_od: Horizon,
    #[serde(rename = "h_two_SelODOD")]
    pub h_two_sel_od_od: Horizon,
    #[serde(rename = "h_one_OpenOpen")]
    pub h_one_open_open: Horizon,
    #[serde(rename = "h_one_PointOpen")]
    pub h_one_point_open: Horizon,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub space_id: String,
    pub assertion: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssertionCount {
    pub assertion: &'static str,
    pub failing_rows: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub max_h: usize,
    pub rows: usize,
    pub violations: usize,
    /// Every assertion in a fixed order, including those that hold.
    pub by_assertion: Vec<AssertionCount>,
    pub failures: Vec<Violation>,
}

/// Computes every row, sorted by space id, and the assertion report.
pub fn compute(
    n: usize,
    max_h: usize,
    mode: topogame_core::Mode,
) -> CliResult<(Vec<CensusRow>, CensusReport)> {
    if n == 0 || n > MAX_ENUMERATION_POINTS {
        return Err(CliError::usage(format!(
            "--n must be between 1 and {MAX_ENUMERATION_POINTS}"
        )));
    }
    if max_h == 0 {
        return Err(CliError::usage("--max-h must be at least 1"));
    }
    let entries = enumerate_topologies(n, false)?;
    let mut results = entries
        .par_iter()
        .map(|e| HorizonProfile::compute(&e.space, max_h, options(mode)).map(|p| (e.id.clone(), p)))
        .collect::<topogame_core::Result<Vec<_>>>()?;
    results.sort_by(|a, b| a.0.cmp(&b.0));

    let mut by_assertion: Vec<AssertionCount> = HorizonProfile::LEGS
        .iter()
        .map(|&assertion| AssertionCount {
            assertion,
            failing_rows: 0,
        })
        .collect();
    let mut failures = Vec::new();
    let rows: Vec<CensusRow> = results
        .into_iter()
        .map(|(space_id, p)| {
            for (i, (leg, holds)) in p.assertions().into_iter().enumerate() {
                if !holds {
                    by_assertion[i].failing_rows += 1;
                    failures.push(Violation {
                        space_id: space_id.clone(),
                        assertion: leg,
                    });
                }
            }
            let h = |value| Horizon { value, max_h };
            CensusRow {
                space_id,
                n,
                cellularity: p.invariants.cellularity,
                density: p.invariants.density,
                pi_weight: p.invariants.pi_weight,
                wl_degree: p.invariants.wl_degree,
                h_two_sel_o_od: h(p.h_two_sel_o_od),
                h_two_sel_c_od: h(p.h_two_sel_c_od),
                h_two_sel_od_od: h(p.h_two_sel_od_od),
                h_one_open_open: h(p.h_one_open_open),
                h_one_point_open: h(p.h_one_point_open),
            }
        })
        .collect();
    let report = CensusReport {
        n,
        max_h,
        rows: rows.len(),
        violations: failures.len(),
        by_assertion,
        failures,
    };
    Ok((rows, report))
}

pub fn run(a: CensusArgs) -> CliResult {
    let (rows, report) = compute(a.n, a.max_h, a.mode)?;
    let mut out = output(a.out.as_deref())?;
    match a.format {
        CensusFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        CensusFormat::Jsonl => {
            for row in &rows {
                writeln!(out, "{}", serde_json::to_string(row)?)?;
            }
        }
    }
    out.flush()?;
    eprintln!(
        "census: {} rows, {} assertion failures",
        report.rows, report.violations
    );
    for c in &report.by_assertion {
        eprintln!("  {}: {} failing rows", c.assertion, c.failing_rows);
    }
    if report.violations > 0 {
        let text = serde_json::to_string_pretty(&report)?;
        match &a.report {
            Some(p) => std::fs::write(p, text + "\n")?,
            None => eprintln!("{text}"),
        }
    }
    Ok(u8::from(report.violations > 0))
}
