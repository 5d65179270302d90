use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{Case, Physics};
use crate::error::{Error, Result};
use crate::fv::{run, ConservationDefect, EulerModel, Model, RunOutput, RunState, TwoPhaseModel};
use crate::twophase::TwoPhasePrim;

pub const EULER_COLUMNS: [&str; 5] = ["x", "rho", "u", "p", "e"];
pub const TWO_PHASE_COLUMNS: [&str; 9] = ["x", "alpha1", "rho1", "u1", "p1", "rho2", "u2", "p2", "rho_mix"];

/// Cell-centre values of one snapshot, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotTable {
    pub time: f64,
    pub headers: Vec<&'static str>,
    pub columns: Vec<Vec<f64>>,
}

impl SnapshotTable {
    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.headers
            .iter()
            .position(|h| *h == name)
            .map(|i| self.columns[i].as_slice())
    }

    /// Header row plus one row per cell, every value with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = self.headers.join(",");
        s.push('\n');
        for r in 0..self.n_rows() {
            for (c, col) in self.columns.iter().enumerate() {
                if c > 0 {
                    s.push(',');
                }
                write!(s, "{:.16e}", col[r]).expect("writing to a String cannot fail");
            }
            s.push('\n');
        }
        s
    }
}

/// Run metadata written next to the snapshots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub case: String,
    pub description: String,
    pub model: String,
    pub solver: String,
    pub beta: Option<f64>,
    pub cfl: f64,
    pub limiter: String,
    pub boundary: String,
    pub cells: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub x0: f64,
    pub output_times: Vec<f64>,
    pub steps: usize,
    pub dt_rejections: usize,
    pub fallbacks: usize,
    pub alpha_clamps: usize,
    pub min_dt: f64,
    pub max_dt: f64,
    pub conservation: Vec<ConservationDefect>,
    pub wall_time_s: f64,
    #[serde(default)]
    pub snapshots: Vec<String>,
}

impl Manifest {
    pub fn max_defect(&self) -> f64 {
        self.conservation.iter().map(|d| d.max_relative).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseRun {
    pub case: Case,
    pub snapshots: Vec<SnapshotTable>,
    pub manifest: Manifest,
}

impl CaseRun {
    pub fn last(&self) -> &SnapshotTable {
        self.snapshots.last().expect("runs always have a snapshot")
    }

    pub fn at(&self, time: f64) -> Option<&SnapshotTable> {
        self.snapshots.iter().find(|s| s.time == time)
    }
}

fn initial_field<M: Model<N>, const N: usize>(
    model: &M,
    case: &Case,
    wl: [f64; N],
    wr: [f64; N],
) -> Result<RunState<N>> {
    let ul = model.cons_from_prim(&wl)?;
    let ur = model.cons_from_prim(&wr)?;
    Ok(RunState::new(
        (0..case.mesh.n_cells)
            .map(|i| if case.mesh.center(i) < case.x0 { ul } else { ur })
            .collect(),
    ))
}

/// Runs a validated case and tabulates its snapshots.
pub fn run_case(case: &Case) -> Result<CaseRun> {
    let clock = Instant::now();
    let xs = case.mesh.centers();
    let (snapshots, stats) = match case.physics {
        Physics::Euler {
            eos,
            solver,
            left,
            right,
        } => {
            let model = EulerModel { eos, solver };
            let init = initial_field(&model, case, left.to_array(), right.to_array())?;
            let RunOutput { snapshots, stats } = run(&model, &case.mesh, &case.scheme, init, &case.output_times)?;
            let tables = snapshots
                .iter()
                .map(|s| {
                    let mut cols = vec![xs.clone(), vec![], vec![], vec![], vec![]];
                    for w in &s.prims {
                        let e = eos.internal_energy(w[0], w[2])?;
                        for (k, v) in [w[0], w[1], w[2], e].into_iter().enumerate() {
                            cols[k + 1].push(v);
                        }
                    }
                    Ok(SnapshotTable {
                        time: s.time,
                        headers: EULER_COLUMNS.to_vec(),
                        columns: cols,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (tables, stats)
        }
        Physics::TwoPhase {
            eos,
            solver,
            relax,
            left,
            right,
        } => {
            let model = TwoPhaseModel { eos, solver, relax };
            let init = initial_field(&model, case, left.to_array(), right.to_array())?;
            let RunOutput { snapshots, stats } = run(&model, &case.mesh, &case.scheme, init, &case.output_times)?;
            let tables = snapshots
                .iter()
                .map(|s| {
                    let mut cols = vec![Vec::new(); 9];
                    cols[0] = xs.clone();
                    for w in &s.prims {
                        let rho_mix = TwoPhasePrim::from_array(*w).mixture_density();
                        for (k, v) in w.iter().chain([rho_mix].iter()).enumerate() {
                            cols[k + 1].push(*v);
                        }
                    }
                    SnapshotTable {
                        time: s.time,
                        headers: TWO_PHASE_COLUMNS.to_vec(),
                        columns: cols,
                    }
                })
                .collect();
            (tables, stats)
        }
    };
    let cfg = &case.config;
    let manifest = Manifest {
        case: cfg.name.clone(),
        description: cfg.description.clone(),
        model: match case.physics {
            Physics::Euler { .. } => "euler".into(),
            Physics::TwoPhase { .. } => "two-phase".into(),
        },
        solver: case.solver_name().into(),
        beta: case.beta(),
        cfl: case.scheme.cfl,
        limiter: format!("{:?}", case.scheme.limiter).to_lowercase(),
        boundary: format!("{:?}", case.scheme.boundary).to_lowercase(),
        cells: case.mesh.n_cells,
        x_min: case.mesh.x_min,
        x_max: case.mesh.x_max,
        x0: case.x0,
        output_times: case.output_times.clone(),
        steps: stats.steps,
        dt_rejections: stats.dt_rejections,
        fallbacks: stats.fallbacks,
        alpha_clamps: stats.alpha_clamps,
        min_dt: stats.min_dt,
        max_dt: stats.max_dt,
        conservation: stats.conservation,
        wall_time_s: clock.elapsed().as_secs_f64(),
        snapshots: Vec::new(),
    };
    log::info!(
        "{}: {} steps, {} fallbacks, max conservation defect {:e}",
        manifest.case,
        manifest.steps,
        manifest.fallbacks,
        manifest.max_defect()
    );
    Ok(CaseRun {
        case: case.clone(),
        snapshots,
        manifest,
    })
}

/// Exact-solution table on the case mesh, for Euler cases with a stiffened
/// or ideal gas.
pub fn exact_table(case: &Case, time: f64) -> Result<SnapshotTable> {
    let Physics::Euler { eos, left, right, .. } = case.physics else {
        return Err(Error::IncompatibleRuns(
            "the exact solution is only available for Euler cases".into(),
        ));
    };
    let sol = crate::exact::solve_exact(&left, &right, &eos)?;
    let xs = case.mesh.centers();
    let mut cols = vec![xs.clone(), vec![], vec![], vec![], vec![]];
    for x in &xs {
        let w = sol.sample((x - case.x0) / time);
        for (k, v) in [w.rho, w.u, w.p, eos.internal_energy(w.rho, w.p)?]
            .into_iter()
            .enumerate()
        {
            cols[k + 1].push(v);
        }
    }
    Ok(SnapshotTable {
        time,
        headers: EULER_COLUMNS.to_vec(),
        columns: cols,
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(io_err(path))
}

pub fn emit_csv(table: &SnapshotTable, path: &Path) -> Result<()> {
    write_file(path, &table.to_csv())
}

/// Gnuplot script with one panel per field, overlaying every snapshot.
pub fn plot_script(manifest: &Manifest, headers: &[&str]) -> String {
    let fields = &headers[1..];
    let cols = if fields.len() > 4 { 4 } else { 2 };
    let rows = fields.len().div_ceil(cols);
    let mut s = String::new();
    let _ = writeln!(s, "# {} ({}, {} cells)", manifest.case, manifest.solver, manifest.cells);
    let _ = writeln!(s, "set terminal pngcairo size {},{}", 400 * cols, 320 * rows);
    let _ = writeln!(s, "set output '{}.png'", manifest.case);
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set key off");
    let _ = writeln!(
        s,
        "set multiplot layout {rows},{cols} title '{}'",
        manifest.description.replace('\'', "")
    );
    for (k, field) in fields.iter().enumerate() {
        let _ = writeln!(s, "set title '{field}'");
        let _ = writeln!(s, "set xlabel 'x (m)'");
        let plots: Vec<String> = manifest
            .snapshots
            .iter()
            .map(|f| format!("'{f}' skip 1 using 1:{} with linespoints pt 7 ps 0.4", k + 2))
            .collect();
        let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    }
    let _ = writeln!(s, "unset multiplot");
    s
}

/// Writes snapshots, manifest, plot script and the case document into `dir`.
pub fn emit(run: &mut CaseRun, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let name = run.manifest.case.clone();
    let mut written = Vec::new();
    run.manifest.snapshots.clear();
    for (i, table) in run.snapshots.iter().enumerate() {
        let file = format!("{name}-{i:02}.csv");
        let path = dir.join(&file);
        emit_csv(table, &path)?;
        run.manifest.snapshots.push(file);
        written.push(path);
    }
    let headers = run.snapshots[0].headers.clone();
    let plot = dir.join(format!("{name}.gp"));
    write_file(&plot, &plot_script(&run.manifest, &headers))?;
    written.push(plot);
    let manifest = dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&run.manifest).expect("manifests always serialize");
    write_file(&manifest, &json)?;
    written.push(manifest);
    let case = dir.join("case.toml");
    write_file(&case, &run.case.config.to_toml())?;
    written.push(case);
    Ok(written)
}
