use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::output::{exact_table, CaseRun, SnapshotTable};
use crate::error::{Error, Result};
use crate::fv::Mesh1D;

/// What the runs are measured against.
#[derive(Debug, Clone, Copy)]
pub enum Reference<'a> {
    /// Exact Riemann solution of the first run's case.
    Exact,
    /// A (finer) run of the same problem, averaged onto each run's cells.
    Run(&'a CaseRun),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub run: String,
    pub solver: String,
    pub cells: usize,
    pub field: String,
    pub l1: f64,
}

/// L1 ratio between consecutive mesh levels of one solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub solver: String,
    pub field: String,
    pub coarse: usize,
    pub fine: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTable {
    pub reference: String,
    pub time: f64,
    pub rows: Vec<ErrorRow>,
    pub convergence: Vec<ConvergenceRow>,
}

impl ErrorTable {
    pub fn l1(&self, run: &str, field: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.run == run && r.field == field)
            .map(|r| r.l1)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("L1 errors at t = {:e} s against {}\n", self.time, self.reference);
        let _ = writeln!(
            s,
            "{:<32} {:>14} {:>7} {:>8} {:>14}",
            "run", "solver", "cells", "field", "L1"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<32} {:>14} {:>7} {:>8} {:>14.6e}",
                r.run, r.solver, r.cells, r.field, r.l1
            );
        }
        if !self.convergence.is_empty() {
            let _ = writeln!(s, "\nconvergence ratios L1(coarse)/L1(fine)");
            for c in &self.convergence {
                let _ = writeln!(
                    s,
                    "{:<14} {:>8} {:>6} -> {:<6} {:>8.3}",
                    c.solver, c.field, c.coarse, c.fine, c.ratio
                );
            }
        }
        s
    }
}

/// Cell averages of a fine profile over the cells of `coarse`; coarser
/// references are sampled at the cell centres.
pub fn project(values: &[f64], from: &Mesh1D, to: &Mesh1D) -> Vec<f64> {
    (0..to.n_cells)
        .map(|i| {
            let (a, b) = (to.x_min + i as f64 * to.dx, to.x_min + (i + 1) as f64 * to.dx);
            let inside: Vec<f64> = (0..from.n_cells)
                .filter(|&j| {
                    let x = from.center(j);
                    x >= a && x < b
                })
                .map(|j| values[j])
                .collect();
            if inside.is_empty() {
                let j = (((to.center(i) - from.x_min) / from.dx).floor() as usize).min(from.n_cells - 1);
                values[j]
            } else {
                inside.iter().sum::<f64>() / inside.len() as f64
            }
        })
        .collect()
}

/// `sum |a - b| dx`.
pub fn l1_distance(a: &[f64], b: &[f64], dx: f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() * dx).sum()
}

/// Per-run, per-field L1 errors of the final snapshots.
pub fn compare(runs: &[CaseRun], reference: Reference<'_>) -> Result<ErrorTable> {
    let first = runs
        .first()
        .ok_or_else(|| Error::IncompatibleRuns("no runs to compare".into()))?;
    let time = first.last().time;
    for r in runs {
        let (m, f) = (&r.case.mesh, &first.case.mesh);
        if r.manifest.model != first.manifest.model || m.x_min != f.x_min || m.x_max != f.x_max {
            return Err(Error::IncompatibleRuns(format!(
                "{} and {} differ in model or domain",
                r.manifest.case, first.manifest.case
            )));
        }
        if r.last().time != time {
            return Err(Error::IncompatibleRuns(format!(
                "{} ends at t = {:e}, {} at t = {time:e}",
                r.manifest.case,
                r.last().time,
                first.manifest.case
            )));
        }
    }
    let label = match reference {
        Reference::Exact => "exact Riemann solution".to_string(),
        Reference::Run(r) => {
            if r.last().time != time || r.manifest.model != first.manifest.model {
                return Err(Error::IncompatibleRuns(
                    "reference run does not match the compared runs".into(),
                ));
            }
            format!(
                "{} ({} cells, {})",
                r.manifest.case, r.manifest.cells, r.manifest.solver
            )
        }
    };

    let mut rows = Vec::new();
    for r in runs {
        let table = r.last();
        let reference_table: SnapshotTable = match reference {
            Reference::Exact => exact_table(&r.case, time)?,
            Reference::Run(fine) => {
                let ft = fine.last();
                SnapshotTable {
                    time,
                    headers: ft.headers.clone(),
                    columns: ft
                        .columns
                        .iter()
                        .map(|c| project(c, &fine.case.mesh, &r.case.mesh))
                        .collect(),
                }
            }
        };
        for (k, field) in table.headers.iter().enumerate().skip(1) {
            rows.push(ErrorRow {
                run: run_label(r),
                solver: r.manifest.solver.clone(),
                cells: r.manifest.cells,
                field: field.to_string(),
                l1: l1_distance(&table.columns[k], &reference_table.columns[k], r.case.mesh.dx),
            });
        }
    }

    let mut convergence = Vec::new();
    let mut solvers: Vec<&str> = rows.iter().map(|r| r.solver.as_str()).collect();
    solvers.dedup();
    for solver in solvers {
        let mut levels: Vec<usize> = rows.iter().filter(|r| r.solver == solver).map(|r| r.cells).collect();
        levels.sort_unstable();
        levels.dedup();
        for pair in levels.windows(2) {
            for field in &first.last().headers[1..] {
                let get = |n: usize| {
                    rows.iter()
                        .find(|r| r.solver == solver && r.cells == n && r.field == *field)
                };
                if let (Some(c), Some(f)) = (get(pair[0]), get(pair[1])) {
                    convergence.push(ConvergenceRow {
                        solver: solver.to_string(),
                        field: field.to_string(),
                        coarse: pair[0],
                        fine: pair[1],
                        ratio: c.l1 / f.l1,
                    });
                }
            }
        }
    }
    Ok(ErrorTable {
        reference: label,
        time,
        rows,
        convergence,
    })
}

/// `case/solver[beta]/cells`.
pub fn run_label(r: &CaseRun) -> String {
    let m = &r.manifest;
    match m.beta {
        Some(b) => format!("{}/{}[{b}]/{}", m.case, m.solver, m.cells),
        None => format!("{}/{}/{}", m.case, m.solver, m.cells),
    }
}
