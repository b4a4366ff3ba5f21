//! Construct-and-verify over an instance family, with CSV and JSON reports.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{construct_with, ConstructError, ConstructOptions};
use crate::graph::CaterpillarSpec;
use crate::oracle::{enumerate_specs, SpecBounds};
use crate::verify::verify_antimagic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowResult {
    Pass,
    /// The construction produced a labeling that is not antimagic.
    Fail,
    /// The construction gave up (search failure or broken invariant).
    Error,
}

impl RowResult {
    pub fn as_str(self) -> &'static str {
        match self {
            RowResult::Pass => "Pass",
            RowResult::Fail => "Fail",
            RowResult::Error => "Error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub spec_id: usize,
    pub spec: CaterpillarSpec,
    pub m: usize,
    pub result: RowResult,
    pub branch: Option<String>,
    pub swap: bool,
    /// Wall time, only when timing was requested.
    pub elapsed_ms: Option<u64>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOptions {
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub construct: ConstructOptions,
    /// Record per-row wall time. Off by default so reports are reproducible.
    pub timing: bool,
}

fn run_one(spec_id: usize, spec: CaterpillarSpec, opts: &SweepOptions) -> SweepRow {
    let started = opts.timing.then(Instant::now);
    let outcome = construct_with(&spec, &opts.construct);
    let elapsed_ms = started.map(|t| t.elapsed().as_millis() as u64);
    let (result, branch, swap, detail) = match outcome {
        // checked once more here, outside the constructor
        Ok((lo, trace)) => match verify_antimagic(&spec, &lo) {
            Ok(()) => (
                RowResult::Pass,
                Some(trace.branch.to_string()),
                trace.swap_applied(),
                None,
            ),
            Err(v) => (
                RowResult::Fail,
                Some(trace.branch.to_string()),
                trace.swap_applied(),
                Some(v.to_string()),
            ),
        },
        Err(ConstructError::NotAntimagic(v)) => (RowResult::Fail, None, false, Some(v.to_string())),
        Err(e) => (RowResult::Error, None, false, Some(e.to_string())),
    };
    SweepRow {
        spec_id,
        m: spec.edge_count(),
        spec,
        result,
        branch,
        swap,
        elapsed_ms,
        detail,
    }
}

/// Runs every enumerated instance. Rows come back in enumeration order for
/// any number of workers.
pub fn run_sweep(bounds: SpecBounds, opts: &SweepOptions) -> SweepReport {
    let specs: Vec<(usize, CaterpillarSpec)> = enumerate_specs(bounds).enumerate().collect();
    let work = || -> Vec<SweepRow> {
        specs
            .into_par_iter()
            .map(|(id, spec)| run_one(id, spec, opts))
            .collect()
    };
    let rows = match rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
    {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let passed = rows.iter().filter(|r| r.result == RowResult::Pass).count();
    SweepReport {
        summary: SweepSummary {
            total: rows.len(),
            passed,
            failed: rows.len() - passed,
        },
        rows,
    }
}

pub const CSV_HEADER: [&str; 9] = [
    "spec_id",
    "p",
    "k",
    "legs",
    "m",
    "result",
    "branch",
    "swap",
    "elapsed_ms",
];

impl SweepReport {
    /// Legs are `;`-separated within their column; untimed rows leave
    /// `elapsed_ms` empty.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.rows {
            let legs: Vec<String> = r.spec.legs().iter().map(|h| h.to_string()).collect();
            w.write_record([
                r.spec_id.to_string(),
                r.spec.p().to_string(),
                r.spec.k().to_string(),
                legs.join(";"),
                r.m.to_string(),
                r.result.as_str().to_string(),
                r.branch.clone().unwrap_or_default(),
                r.swap.to_string(),
                r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_sweep() {
        let report = run_sweep(
            SpecBounds {
                p_max: 2,
                k_max: 2,
                s_max: 1,
            },
            &SweepOptions::default(),
        );
        assert_eq!(
            report.summary,
            SweepSummary {
                total: 1,
                passed: 1,
                failed: 0
            }
        );
        assert_eq!(report.rows[0].result, RowResult::Pass);
        let csv = report.to_csv();
        assert_eq!(
            csv,
            "spec_id,p,k,legs,m,result,branch,swap,elapsed_ms\n0,2,2,1,4,Pass,single-leg-high,false,\n"
        );
    }

    #[test]
    fn report_independent_of_jobs() {
        let bounds = SpecBounds {
            p_max: 6,
            k_max: 4,
            s_max: 3,
        };
        let one = run_sweep(
            bounds,
            &SweepOptions {
                jobs: 1,
                ..Default::default()
            },
        );
        let many = run_sweep(
            bounds,
            &SweepOptions {
                jobs: 8,
                ..Default::default()
            },
        );
        assert_eq!(one.to_csv(), many.to_csv());
        assert_eq!(one.to_json(), many.to_json());
        assert_eq!(one.summary.failed, 0);
    }

    #[test]
    fn timing_fills_elapsed() {
        let opts = SweepOptions {
            timing: true,
            ..Default::default()
        };
        let report = run_sweep(
            SpecBounds {
                p_max: 3,
                k_max: 2,
                s_max: 1,
            },
            &opts,
        );
        assert!(report.rows.iter().all(|r| r.elapsed_ms.is_some()));
    }
}
