//! One-dimensional finite-volume driver: MUSCL-Hancock reconstruction with a
//! minmod limiter on primitive variables, CFL time stepping, ghost-cell
//! boundaries, and split sources.

mod mesh;
mod model;
mod run;
mod step;

pub use mesh::Mesh1D;
pub use model::{EulerModel, Face, Model, TwoPhaseModel};
pub use run::{run, ConservationDefect, RunOutput, RunState, RunStats, Snapshot};
pub use step::{apply_boundary, cfl_dt, clip_dt, minmod, muscl_step, Boundary, Limiter, Scheme, StepReport, GHOSTS};
