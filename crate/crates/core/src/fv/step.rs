use serde::{Deserialize, Serialize};

use super::mesh::Mesh1D;
use super::model::{Face, Model};
use crate::error::{Error, Result};

/// Number of ghost layers on each side.
pub const GHOSTS: usize = 2;

/// Zero on a sign change, otherwise the argument of smaller magnitude.
pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Limiter {
    #[default]
    Minmod,
    /// Zero slopes: first-order Godunov.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    #[default]
    Transmissive,
    Reflective,
    Periodic,
}

/// Fills the `GHOSTS` layers at both ends of `ext`, whose interior is
/// `ext[GHOSTS..len - GHOSTS]`.
pub fn apply_boundary<T: Copy>(ext: &mut [T], kind: Boundary, reflect: impl Fn(&T) -> T) {
    let n = ext.len() - 2 * GHOSTS;
    assert!(n >= GHOSTS, "too few interior cells for the ghost layers");
    for g in 0..GHOSTS {
        let (left, right) = match kind {
            Boundary::Transmissive => (ext[GHOSTS], ext[GHOSTS + n - 1]),
            Boundary::Reflective => (reflect(&ext[GHOSTS + g]), reflect(&ext[GHOSTS + n - 1 - g])),
            Boundary::Periodic => (ext[GHOSTS + n - 1 - g], ext[GHOSTS + g]),
        };
        ext[GHOSTS - 1 - g] = left;
        ext[GHOSTS + n + g] = right;
    }
}

/// `cfl dx / max_speed`.
pub fn cfl_dt(max_speed: f64, dx: f64, cfl: f64) -> Result<f64> {
    if !(max_speed > 0.0) || !max_speed.is_finite() {
        return Err(Error::TimeStep(format!("global wave speed is {max_speed}")));
    }
    Ok(cfl * dx / max_speed)
}

/// Shortens `dt` so that `t + dt` does not pass `t_out`. The flag tells the
/// caller to set the clock to `t_out` exactly after the step.
pub fn clip_dt(t: f64, dt: f64, t_out: f64) -> (f64, bool) {
    if t + dt >= t_out {
        (t_out - t, true)
    } else {
        (dt, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scheme {
    pub cfl: f64,
    pub limiter: Limiter,
    pub boundary: Boundary,
}

impl Default for Scheme {
    fn default() -> Self {
        Self {
            cfl: 0.5,
            limiter: Limiter::Minmod,
            boundary: Boundary::Transmissive,
        }
    }
}

/// By-products of one step used for diagnostics and the conservation audit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport<const N: usize> {
    pub fallbacks: usize,
    pub clamps: usize,
    /// Fluxes through the left and right domain boundaries.
    pub flux_in: [f64; N],
    pub flux_out: [f64; N],
    /// Sum of `|F|` over all faces, per slot.
    pub flux_scale: [f64; N],
}

/// One MUSCL-Hancock step of length `dt` over the interior `cells`
/// (conserved variables), including the split sources.
pub fn muscl_step<M: Model<N>, const N: usize>(
    model: &M,
    mesh: &Mesh1D,
    scheme: &Scheme,
    cells: &[[f64; N]],
    time: f64,
    dt: f64,
) -> Result<(Vec<[f64; N]>, StepReport<N>)> {
    let n = cells.len();
    let reject = |cell: usize, e: Error| Error::StepRejected {
        cell,
        time,
        reason: e.to_string(),
    };
    let interior = |j: usize| j.saturating_sub(GHOSTS).min(n - 1);

    let mut w = vec![[0.0; N]; n + 2 * GHOSTS];
    for (i, u) in cells.iter().enumerate() {
        w[i + GHOSTS] = model.prim_from_cons(u).map_err(|e| reject(i, e))?.0;
    }
    apply_boundary(&mut w, scheme.boundary, |x| model.reflect(x));

    // face states of ext cells 1..=n+2
    let half = 0.5 * dt / mesh.dx;
    let mut states = vec![([0.0; N], [0.0; N]); n + 2 * GHOSTS];
    for j in 1..=n + 2 {
        let wc = w[j];
        let slope: [f64; N] = match scheme.limiter {
            Limiter::None => [0.0; N],
            Limiter::Minmod => std::array::from_fn(|k| minmod(wc[k] - w[j - 1][k], w[j + 1][k] - wc[k])),
        };
        if slope.iter().all(|s| *s == 0.0) {
            states[j] = (wc, wc);
            continue;
        }
        let wl: [f64; N] = std::array::from_fn(|k| wc[k] - 0.5 * slope[k]);
        let wr: [f64; N] = std::array::from_fn(|k| wc[k] + 0.5 * slope[k]);
        let ul = model.cons_from_prim(&wl).map_err(|e| reject(interior(j), e))?;
        let ur = model.cons_from_prim(&wr).map_err(|e| reject(interior(j), e))?;
        let fl = model.predictor_flux(&wl, &ul, &wc);
        let fr = model.predictor_flux(&wr, &ur, &wc);
        let ul: [f64; N] = std::array::from_fn(|k| ul[k] + half * (fl[k] - fr[k]));
        let ur: [f64; N] = std::array::from_fn(|k| ur[k] + half * (fl[k] - fr[k]));
        states[j] = (
            model.prim_from_cons(&ul).map_err(|e| reject(interior(j), e))?.0,
            model.prim_from_cons(&ur).map_err(|e| reject(interior(j), e))?.0,
        );
    }

    // face f sits between ext cells f+1 and f+2
    let mut faces: Vec<Face<N>> = Vec::with_capacity(n + 1);
    for f in 0..=n {
        let face = model
            .face(&states[f + 1].1, &states[f + 2].0)
            .map_err(|e| reject(f.min(n - 1), e))?;
        faces.push(face);
    }

    let lambda = dt / mesh.dx;
    let mut out = Vec::with_capacity(n);
    let mut clamps = 0;
    for i in 0..n {
        let (fl, fr) = (&faces[i], &faces[i + 1]);
        let h = model.cell_terms(fl, fr, &w[i + GHOSTS], mesh.dx);
        let u: [f64; N] = std::array::from_fn(|k| {
            let v = cells[i][k] - lambda * (fr.flux[k] - fl.flux[k]);
            match &h {
                Some(h) => v + dt * h[k],
                None => v,
            }
        });
        model.prim_from_cons(&u).map_err(|e| reject(i, e))?;
        let u = model.sources(&u, dt).map_err(|e| reject(i, e))?;
        if model.prim_from_cons(&u).map_err(|e| reject(i, e))?.1 {
            clamps += 1;
        }
        out.push(u);
    }

    let report = StepReport {
        fallbacks: faces.iter().filter(|f| f.fallback).count(),
        clamps,
        flux_in: faces[0].flux,
        flux_out: faces[n].flux,
        flux_scale: std::array::from_fn(|k| faces.iter().map(|f| f.flux[k].abs()).sum()),
    };
    Ok((out, report))
}
