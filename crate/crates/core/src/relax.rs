//! Source operators applied after each hyperbolic step: stiff pressure
//! relaxation, velocity relaxation with a constant coefficient, and
//! Clift-Gauvin drag.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::twophase::{tp_prim_from_cons, TwoPhaseCons, TwoPhaseEos, ALPHA_FLOOR};

/// Outcome of one pressure relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxReport {
    pub p_eq: f64,
    pub iterations: usize,
    /// `|p1 - p2| / max(|p1|, |p2|)` after relaxation.
    pub residual: f64,
    /// Relative mixture-energy drift.
    pub conservation_defect: f64,
}

const RELAX_TOL: f64 = 1e-8;

/// Brings both phases to a common pressure at fixed phase masses and
/// momenta. Each phase is compressed or expanded along
/// `de_k = -p dv_k` with the final pressure `p`, which for stiffened gases
/// gives `alpha_k(p) = (n_k + m_k p) / (p + p_inf_k)`; saturation then fixes
/// `p` as the root of a quadratic.
pub fn pressure_relax_stiff(state: &TwoPhaseCons, eos: &TwoPhaseEos) -> Result<(TwoPhaseCons, RelaxReport)> {
    let (w, _) = tp_prim_from_cons(state, eos)?;
    let scale = w.p1.abs().max(w.p2.abs()).max(f64::MIN_POSITIVE);
    if w.p1 == w.p2 || (w.p1 - w.p2).abs() <= 1e-14 * scale {
        return Ok((
            *state,
            RelaxReport {
                p_eq: w.p1,
                iterations: 0,
                residual: (w.p1 - w.p2).abs() / scale,
                conservation_defect: 0.0,
            },
        ));
    }
    let c = &state.0;
    let failure = |reason: String| Error::RelaxationFailure { reason, state: *c };

    let phases = [
        Phase::new(w.alpha1, w.p1, eos.phase1.gamma, eos.phase1.p_inf),
        Phase::new(w.alpha2(), w.p2, eos.phase2.gamma, eos.phase2.p_inf),
    ];
    let lower = -phases[0].pi.min(phases[1].pi);
    let (mut p, mut iterations) = match quadratic_root(&phases, lower) {
        Some(p) => (p, 1),
        None => safeguarded_newton(&phases, lower, w.p1.max(w.p2)).map_err(failure)?,
    };
    // Newton polish of the closed-form root
    for _ in 0..3 {
        let (f, df) = saturation(&phases, p);
        let next = p - f / df;
        if !(next > lower) || !next.is_finite() {
            break;
        }
        iterations += 1;
        let done = (next - p).abs() <= 1e-15 * next.abs().max(1.0);
        p = next;
        if done {
            break;
        }
    }
    if !(p > lower) || !p.is_finite() {
        return Err(failure(format!("no admissible root (p = {p})")));
    }

    let a1 = phases[0].alpha_at(p);
    if !(a1 > 0.0 && a1 < 1.0) {
        return Err(failure(format!("relaxed alpha1 = {a1} outside (0, 1)")));
    }
    let kin1 = 0.5 * c[2] * c[2] / c[1];
    let e_mix = c[3] + c[6];
    let int1 = (c[3] - kin1) - p * (a1 - c[0]);
    let etot1 = int1 + kin1;
    let out = TwoPhaseCons([a1, c[1], c[2], etot1, c[4], c[5], e_mix - etot1]);

    let (w2, _) = tp_prim_from_cons(&out, eos).map_err(|e| failure(e.to_string()))?;
    let residual = (w2.p1 - w2.p2).abs() / w2.p1.abs().max(w2.p2.abs()).max(f64::MIN_POSITIVE);
    // pressures recovered from stiffened energies carry round-off relative to p + gamma p_inf
    let resolution = 64.0
        * f64::EPSILON
        * (w2.p1.abs() + eos.phase1.gamma * eos.phase1.p_inf).max(w2.p2.abs() + eos.phase2.gamma * eos.phase2.p_inf)
        / w2.p1.abs().max(w2.p2.abs()).max(f64::MIN_POSITIVE);
    if residual > RELAX_TOL.max(resolution) {
        return Err(failure(format!("pressure residual {residual:e} after relaxation")));
    }
    let conservation_defect = ((out.0[3] + out.0[6]) - e_mix).abs() / e_mix.abs().max(f64::MIN_POSITIVE);
    Ok((
        out,
        RelaxReport {
            p_eq: p,
            iterations,
            residual,
            conservation_defect,
        },
    ))
}

#[derive(Debug, Clone, Copy)]
struct Phase {
    n: f64,
    m: f64,
    pi: f64,
}

impl Phase {
    fn new(alpha: f64, p: f64, gamma: f64, pi: f64) -> Self {
        Self {
            n: alpha * (p + gamma * pi) / gamma,
            m: alpha * (gamma - 1.0) / gamma,
            pi,
        }
    }

    fn alpha_at(&self, p: f64) -> f64 {
        (self.n + self.m * p) / (p + self.pi)
    }
}

/// `sum alpha_k(p) - 1` and its derivative; strictly decreasing in `p`.
fn saturation(ph: &[Phase; 2], p: f64) -> (f64, f64) {
    let mut f = -1.0;
    let mut df = 0.0;
    for k in ph {
        f += k.alpha_at(p);
        df += (k.m * k.pi - k.n) / ((p + k.pi) * (p + k.pi));
    }
    (f, df)
}

fn quadratic_root(ph: &[Phase; 2], lower: f64) -> Option<f64> {
    let [k1, k2] = ph;
    let a = k1.m + k2.m - 1.0;
    let b = k1.n + k1.m * k2.pi + k2.n + k2.m * k1.pi - k1.pi - k2.pi;
    let c = k1.n * k2.pi + k2.n * k1.pi - k1.pi * k2.pi;
    let disc = b * b - 4.0 * a * c;
    if !(disc >= 0.0) || a == 0.0 {
        return None;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = [q / a, if q != 0.0 { c / q } else { f64::NAN }];
    roots.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    roots.into_iter().find(|r| r.is_finite() && *r > lower)
}

fn safeguarded_newton(ph: &[Phase; 2], lower: f64, guess: f64) -> std::result::Result<(f64, usize), String> {
    let mut lo = lower;
    let mut hi = guess.max(lower + 1.0);
    let mut grow = 0;
    while saturation(ph, hi).0 > 0.0 {
        hi = lower + 2.0 * (hi - lower);
        grow += 1;
        if grow > 200 {
            return Err("no sign change of the saturation residual".into());
        }
    }
    let mut p = 0.5 * (lo + hi);
    for it in 1..=200 {
        let (f, df) = saturation(ph, p);
        if f > 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let newton = p - f / df;
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - p).abs() <= 1e-15 * next.abs().max(1.0) {
            return Ok((next, it));
        }
        p = next;
    }
    Err("safeguarded Newton did not converge".into())
}

/// Exponential relaxation of `u1 - u2` towards the mixture velocity with
/// momentum exchange `lambda (u2 - u1)`. The work done on phase 1 equals its
/// kinetic energy change (interface velocity `u1`), so phase 1 keeps its
/// internal energy and the dissipated kinetic energy heats phase 2.
pub fn velocity_relax(state: &TwoPhaseCons, lambda: f64, dt: f64) -> TwoPhaseCons {
    if lambda == 0.0 || dt == 0.0 {
        return *state;
    }
    let c = &state.0;
    let (m1, m2) = (c[1], c[4]);
    let u1 = c[2] / m1;
    let u2 = c[5] / m2;
    let mom = c[2] + c[5];
    let u_mix = mom / (m1 + m2);
    let du = (u1 - u2) * (-lambda * dt * (1.0 / m1 + 1.0 / m2)).exp();
    let new_u1 = u_mix + m2 / (m1 + m2) * du;
    let mom1 = m1 * new_u1;
    let mom2 = mom - mom1;
    let e_mix = c[3] + c[6];
    let etot1 = c[3] + 0.5 * m1 * (new_u1 * new_u1 - u1 * u1);
    TwoPhaseCons([c[0], m1, mom1, etot1, m2, mom2, e_mix - etot1])
}

/// Sphere drag coefficient of Clift and Gauvin,
/// `24/Re (1 + 0.15 Re^0.687)` below `Re = 800` and 0.438 above. The first
/// branch is evaluated as `24/Re + 3.6 Re^-0.313`, which is exact at `Re = 1`.
pub fn clift_gauvin_cd(re: f64) -> f64 {
    if re < 800.0 {
        24.0 / re + 3.6 * re.powf(-0.313)
    } else {
        0.438
    }
}

/// Drag force per unit volume on phase 1,
/// `3/(8 R) alpha1 Cd rho2 |u2 - u1| (u2 - u1)`.
pub fn drag_force(state: &TwoPhaseCons, radius: f64, mu2: f64) -> f64 {
    let c = &state.0;
    let du = c[5] / c[4] - c[2] / c[1];
    if du == 0.0 {
        return 0.0;
    }
    let a1 = c[0].clamp(ALPHA_FLOOR, 1.0 - ALPHA_FLOOR);
    let rho2 = c[4] / (1.0 - a1);
    let re = 2.0 * radius * rho2 * du.abs() / mu2;
    3.0 / (8.0 * radius) * a1 * clift_gauvin_cd(re) * rho2 * du.abs() * du
}

/// Advances the drag source over `dt`. Each sub-step freezes the exchange
/// coefficient `F_D / (u2 - u1)` and integrates the velocity difference
/// exactly, which keeps the update stable for stiff drag.
pub fn drag_clift_gauvin(state: &TwoPhaseCons, radius: f64, mu2: f64, dt: f64) -> TwoPhaseCons {
    const MAX_SUBSTEPS: usize = 1000;
    let mut s = *state;
    let mut t = 0.0;
    let mut n = 0;
    while t < dt && n < MAX_SUBSTEPS {
        let c = &s.0;
        let du = c[5] / c[4] - c[2] / c[1];
        if du == 0.0 {
            break;
        }
        let k = drag_force(&s, radius, mu2) / du;
        let rate = k * (1.0 / c[1] + 1.0 / c[4]);
        // sub-step so the coefficient changes little within it
        let h = if rate > 0.0 { (0.5 / rate).min(dt - t) } else { dt - t };
        let h = if n + 1 == MAX_SUBSTEPS { dt - t } else { h };
        s = velocity_relax(&s, k, h);
        t += h;
        n += 1;
    }
    s
}

/// Source settings applied after each hyperbolic step of a two-phase run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxSettings {
    pub pressure: bool,
    pub velocity: VelocityCoupling,
}

impl Default for RelaxSettings {
    fn default() -> Self {
        Self {
            pressure: true,
            velocity: VelocityCoupling::None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum VelocityCoupling {
    None,
    Constant { lambda: f64 },
    CliftGauvin { radius: f64, mu2: f64 },
}

impl VelocityCoupling {
    pub fn apply(&self, state: &TwoPhaseCons, dt: f64) -> TwoPhaseCons {
        match *self {
            VelocityCoupling::None => *state,
            VelocityCoupling::Constant { lambda } => velocity_relax(state, lambda, dt),
            VelocityCoupling::CliftGauvin { radius, mu2 } => drag_clift_gauvin(state, radius, mu2, dt),
        }
    }
}
