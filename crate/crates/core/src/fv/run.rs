use serde::{Deserialize, Serialize};

use super::mesh::Mesh1D;
use super::model::Model;
use super::step::{cfl_dt, clip_dt, muscl_step, Scheme, StepReport};
use crate::error::{Error, Result};

const MAX_STEPS: usize = 10_000_000;

/// Conserved field with its clock.
#[derive(Debug, Clone, PartialEq)]
pub struct RunState<const N: usize> {
    pub cells: Vec<[f64; N]>,
    pub time: f64,
    pub steps: usize,
}

impl<const N: usize> RunState<N> {
    pub fn new(cells: Vec<[f64; N]>) -> Self {
        Self {
            cells,
            time: 0.0,
            steps: 0,
        }
    }

    pub fn totals(&self) -> [f64; N] {
        std::array::from_fn(|k| self.cells.iter().map(|c| c[k]).sum())
    }

    /// Largest local wave speed over the cells.
    pub fn max_speed<M: Model<N>>(&self, model: &M) -> Result<f64> {
        let mut s = 0.0f64;
        for (i, u) in self.cells.iter().enumerate() {
            let w = model
                .prim_from_cons(u)
                .map_err(|e| Error::StepRejected {
                    cell: i,
                    time: self.time,
                    reason: e.to_string(),
                })?
                .0;
            s = s.max(model.max_speed(&w)?);
        }
        Ok(s)
    }

    pub fn prims<M: Model<N>>(&self, model: &M) -> Result<Vec<[f64; N]>> {
        self.cells
            .iter()
            .map(|u| model.prim_from_cons(u).map(|p| p.0))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot<const N: usize> {
    pub time: f64,
    pub prims: Vec<[f64; N]>,
    pub cons: Vec<[f64; N]>,
}

/// Largest per-step relative defect of one audited quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservationDefect {
    pub quantity: String,
    pub max_relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub steps: usize,
    pub dt_rejections: usize,
    pub fallbacks: usize,
    pub alpha_clamps: usize,
    pub min_dt: f64,
    pub max_dt: f64,
    pub conservation: Vec<ConservationDefect>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput<const N: usize> {
    pub snapshots: Vec<Snapshot<N>>,
    pub stats: RunStats,
}

/// Integrates `state` through the increasing `output_times`, taking a
/// snapshot at each. A rejected step is retried once with half the time step.
pub fn run<M: Model<N>, const N: usize>(
    model: &M,
    mesh: &Mesh1D,
    scheme: &Scheme,
    mut state: RunState<N>,
    output_times: &[f64],
) -> Result<RunOutput<N>> {
    if state.cells.len() != mesh.n_cells {
        return Err(Error::config(format!(
            "initial field has {} cells, mesh has {}",
            state.cells.len(),
            mesh.n_cells
        )));
    }
    if output_times.is_empty() || output_times.windows(2).any(|w| !(w[0] < w[1])) || !(output_times[0] > state.time) {
        return Err(Error::config(
            "output times must be increasing and after the start time",
        ));
    }

    let mut stats = RunStats {
        steps: 0,
        dt_rejections: 0,
        fallbacks: 0,
        alpha_clamps: 0,
        min_dt: f64::INFINITY,
        max_dt: 0.0,
        conservation: M::AUDIT
            .iter()
            .map(|(q, _)| ConservationDefect {
                quantity: q.to_string(),
                max_relative: 0.0,
            })
            .collect(),
    };
    let mut snapshots = Vec::with_capacity(output_times.len());
    for &t_out in output_times {
        while state.time < t_out {
            if state.steps >= MAX_STEPS {
                return Err(Error::TimeStep(format!(
                    "step limit {MAX_STEPS} reached at t = {:e}",
                    state.time
                )));
            }
            let dt = cfl_dt(state.max_speed(model)?, mesh.dx, scheme.cfl)?;
            let (mut dt, mut hit) = clip_dt(state.time, dt, t_out);
            let (cells, report) = match muscl_step(model, mesh, scheme, &state.cells, state.time, dt) {
                Ok(r) => r,
                Err(e @ Error::StepRejected { .. }) => {
                    log::warn!("{e}; retrying with dt/2");
                    stats.dt_rejections += 1;
                    dt *= 0.5;
                    hit = false;
                    muscl_step(model, mesh, scheme, &state.cells, state.time, dt)?
                }
                Err(e) => return Err(e),
            };
            audit::<M, N>(&mut stats, &state.cells, &cells, &report, dt / mesh.dx);
            stats.fallbacks += report.fallbacks;
            stats.alpha_clamps += report.clamps;
            stats.min_dt = stats.min_dt.min(dt);
            stats.max_dt = stats.max_dt.max(dt);
            state.cells = cells;
            state.time = if hit { t_out } else { state.time + dt };
            state.steps += 1;
        }
        log::debug!("snapshot at t = {t_out:e} after {} steps", state.steps);
        snapshots.push(Snapshot {
            time: state.time,
            prims: state.prims(model)?,
            cons: state.cells.clone(),
        });
    }
    stats.steps = state.steps;
    Ok(RunOutput { snapshots, stats })
}

fn audit<M: Model<N>, const N: usize>(
    stats: &mut RunStats,
    before: &[[f64; N]],
    after: &[[f64; N]],
    report: &StepReport<N>,
    lambda: f64,
) {
    for ((_, slots), defect) in M::AUDIT.iter().zip(stats.conservation.iter_mut()) {
        let sum = |cells: &[[f64; N]]| -> f64 { cells.iter().map(|c| slots.iter().map(|&k| c[k]).sum::<f64>()).sum() };
        let abs = |cells: &[[f64; N]]| -> f64 {
            cells
                .iter()
                .map(|c| slots.iter().map(|&k| c[k].abs()).sum::<f64>())
                .sum()
        };
        let boundary: f64 = slots
            .iter()
            .map(|&k| lambda * (report.flux_in[k] - report.flux_out[k]))
            .sum();
        let scale = abs(before).max(abs(after)) + slots.iter().map(|&k| lambda * report.flux_scale[k]).sum::<f64>();
        let drift = (sum(after) - sum(before) - boundary).abs();
        let rel = if scale > 0.0 { drift / scale } else { drift };
        defect.max_relative = defect.max_relative.max(rel);
    }
}
