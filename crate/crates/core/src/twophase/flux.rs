//! Interface fluxes for the two-phase model.
//!
//! Every solver returns a [`TwoPhaseFace`]: the flux of the 7-slot
//! non-conservative form together with the face volume fraction and the face
//! value of the `(alpha u)1` flux. The same two face values enter both the
//! `p_I`-corrections of the flux and the cell terms of [`h_terms`]; using one
//! pair for both is what keeps a state with uniform pressure and velocity in
//! equilibrium.

use serde::{Deserialize, Serialize};

use super::{
    interfacial_pressure, local_flux_of, physical_flux_of, rusanov_speed, tp_cons_from_prim, tp_wave_bounds,
    LocalConsVec, TwoPhaseEos, TwoPhasePrim, ALPHA_FLOOR,
};
use crate::error::{Error, Result};
use crate::vecops;

/// Flux and face data needed by the cell update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhaseFace {
    pub flux: [f64; 7],
    pub alpha_face: f64,
    pub phi_alpha_face: f64,
    /// The reconstruction was inadmissible and the HLL state was used.
    pub fallback: bool,
}

/// Per-interface record of a two-state (or single-state) two-phase solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhaseFan {
    pub s_l: f64,
    pub s_r: f64,
    pub s_m1: f64,
    pub s_m2: f64,
    pub p_i: f64,
    pub u_hll: [f64; 8],
    pub u_star_l: LocalConsVec,
    pub u_star_r: LocalConsVec,
    pub beta: f64,
    pub flux_l: [f64; 8],
    pub flux_r: [f64; 8],
    pub face: TwoPhaseFace,
}

impl TwoPhaseFan {
    pub fn omega_l(&self) -> f64 {
        (self.s_m1 - self.s_l) / (self.s_r - self.s_l)
    }

    pub fn omega_r(&self) -> f64 {
        (self.s_r - self.s_m1) / (self.s_r - self.s_l)
    }
}

/// Assembles the 7-slot flux from a sampled 8-slot flux and face values.
fn assemble(phi: &[f64; 8], p_i: f64, alpha_face: f64, phi_alpha_face: f64) -> [f64; 7] {
    [
        phi[0],
        phi[1],
        phi[2] + p_i * alpha_face,
        phi[3] + p_i * phi_alpha_face,
        phi[5],
        phi[6] + p_i * (1.0 - alpha_face),
        phi[7] - p_i * phi_alpha_face,
    ]
}

/// Rusanov flux of the non-conservative form, with arithmetic face averages
/// of `alpha1` and `(alpha u)1` for the cell terms.
pub fn rusanov_basic_flux(wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<TwoPhaseFace> {
    let ul = tp_cons_from_prim(wl, eos)?;
    let ur = tp_cons_from_prim(wr, eos)?;
    let fl = physical_flux_of(wl, &ul);
    let fr = physical_flux_of(wr, &ur);
    let s = rusanov_speed(wl, wr, eos)?;
    Ok(TwoPhaseFace {
        flux: std::array::from_fn(|i| 0.5 * (fr[i] + fl[i] - s * (ur.0[i] - ul.0[i]))),
        alpha_face: 0.5 * (wl.alpha1 + wr.alpha1),
        phi_alpha_face: 0.5 * (wl.alpha1 * wl.u1 + wr.alpha1 * wr.u1),
        fallback: false,
    })
}

struct Sides {
    p_i: f64,
    vl: LocalConsVec,
    vr: LocalConsVec,
    fl: [f64; 8],
    fr: [f64; 8],
}

impl Sides {
    fn new(wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<Self> {
        let p_i = interfacial_pressure(wl, wr);
        let cl = tp_cons_from_prim(wl, eos)?;
        let cr = tp_cons_from_prim(wr, eos)?;
        Ok(Self {
            p_i,
            vl: LocalConsVec::new(&cl, p_i),
            vr: LocalConsVec::new(&cr, p_i),
            fl: local_flux_of(wl, &cl, p_i),
            fr: local_flux_of(wr, &cr, p_i),
        })
    }
}

/// Rusanov flux of the locally conservative image; the face volume fraction
/// is the `alpha1` slot of the Rusanov state.
pub fn rusanov_local_flux(wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<TwoPhaseFan> {
    let sd = Sides::new(wl, wr, eos)?;
    let s = rusanov_speed(wl, wr, eos)?;
    let (ul, ur) = (&sd.vl.u, &sd.vr.u);
    let phi: [f64; 8] = std::array::from_fn(|i| 0.5 * (sd.fr[i] + sd.fl[i] - s * (ur[i] - ul[i])));
    let star: [f64; 8] = std::array::from_fn(|i| 0.5 * (ur[i] + ul[i] - (sd.fr[i] - sd.fl[i]) / s));
    let alpha_face = star[0];
    let face = TwoPhaseFace {
        flux: assemble(&phi, sd.p_i, alpha_face, phi[0]),
        alpha_face,
        phi_alpha_face: phi[0],
        fallback: false,
    };
    let v = LocalConsVec { u: star, p_i: sd.p_i };
    Ok(TwoPhaseFan {
        s_l: -s,
        s_r: s,
        s_m1: star[2] / star[1],
        s_m2: star[6] / star[5],
        p_i: sd.p_i,
        u_hll: star,
        u_star_l: v,
        u_star_r: v,
        beta: 0.0,
        flux_l: phi,
        flux_r: phi,
        face,
    })
}

/// HLL average of the 8-slot image with the derived contact data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TpHllState {
    pub u_hll: [f64; 8],
    pub s_l: f64,
    pub s_r: f64,
    /// Phase-1 contact speed, limited to `[s_l, s_r]`.
    pub s_m1: f64,
    pub s_m2: f64,
    /// Carrier density shared by both intermediate states.
    pub rho2_bar: f64,
}

pub fn tp_hll_state(
    vl: &LocalConsVec,
    vr: &LocalConsVec,
    fl: &[f64; 8],
    fr: &[f64; 8],
    s_l: f64,
    s_r: f64,
) -> Result<TpHllState> {
    if !(s_l < s_r) {
        return Err(Error::DegenerateFan(format!("s_l = {s_l} is not below s_r = {s_r}")));
    }
    let u = vecops::hll_average(&vl.u, &vr.u, fl, fr, s_l, s_r);
    for (k, m) in [(1, u[1]), (2, u[5])] {
        if !(m > 0.0) {
            return Err(Error::Positivity(format!("HLL apparent density of phase {k} is {m}")));
        }
    }
    Ok(TpHllState {
        u_hll: u,
        s_l,
        s_r,
        s_m1: (u[2] / u[1]).clamp(s_l, s_r),
        s_m2: u[6] / u[5],
        rho2_bar: u[5] / u[4],
    })
}

/// Jump `U*_R - U*_L` of the 8-slot image and the two intermediate states.
///
/// Phase 1 keeps its volume fraction, density and velocity across the outer
/// waves, so its jump is the scaled data jump, with the energy jump fixed by
/// the momentum balance across the contact once the star apparent densities
/// are known. Phase 2 shares the density `rho2_bar` and velocity `s_m2` in
/// both intermediate states and jumps only through `alpha2 = 1 - alpha1`.
pub fn rsir_reconstruct(
    vl: &LocalConsVec,
    vr: &LocalConsVec,
    hll: &TpHllState,
    beta: f64,
    eos: &TwoPhaseEos,
) -> ([f64; 8], [f64; 8], [f64; 8]) {
    let (s_l, s_r, s_m1, s_m2) = (hll.s_l, hll.s_r, hll.s_m1, hll.s_m2);
    let w_l = (s_m1 - s_l) / (s_r - s_l);
    let w_r = (s_r - s_m1) / (s_r - s_l);
    let p_i = vl.p_i;
    let u = &hll.u_hll;
    let (ul, ur) = (&vl.u, &vr.u);
    let (g1, pi1) = (eos.phase1.gamma, eos.phase1.p_inf);
    let (g2, pi2) = (eos.phase2.gamma, eos.phase2.p_inf);

    let mut psi = [0.0; 8];
    psi[0] = beta * (ur[0] - ul[0]);
    psi[1] = beta * (ur[1] - ul[1]);
    psi[2] = psi[1] * s_m1;
    let m_star_l = u[1] - w_r * psi[1];
    let m_star_r = u[1] + w_l * psi[1];
    let u1l = ul[2] / ul[1];
    let u1r = ur[2] / ur[1];
    psi[3] = psi[0] * (p_i + g1 * pi1) / (g1 - 1.0)
        + psi[1] * (0.5 * s_m1 * s_m1)
        + beta * (m_star_l * u1l * (u1l - s_m1) - m_star_r * u1r * (u1r - s_m1)) / (g1 - 1.0);

    psi[4] = -psi[0];
    psi[5] = psi[4] * hll.rho2_bar;
    psi[6] = psi[5] * s_m2;
    psi[7] = psi[5] * (0.5 * s_m2 * s_m2 - s_m2 * (s_m2 - s_m1) / (g2 - 1.0)) + psi[4] * (p_i + g2 * pi2) / (g2 - 1.0);

    let star_l = vecops::axpy(u, -w_r, &psi);
    let star_r = vecops::axpy(u, w_l, &psi);
    (star_l, star_r, psi)
}

fn admissible_star(v: &[f64; 8]) -> bool {
    (ALPHA_FLOOR..=1.0 - ALPHA_FLOOR).contains(&v[0]) && v[1] > 0.0 && v[5] > 0.0
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::Inadmissible(format!("beta must lie in [0,1], got {beta}")))
    }
}

/// Two-state internally reconstructed solver for the two-phase model. An
/// inadmissible intermediate state sends the interface back to `beta = 0`,
/// which is flagged in the returned face.
pub fn rsir_tp_flux(wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos, beta: f64) -> Result<TwoPhaseFan> {
    check_beta(beta)?;
    let sd = Sides::new(wl, wr, eos)?;
    let (s_l, s_r) = tp_wave_bounds(wl, wr, eos)?;
    let hll = tp_hll_state(&sd.vl, &sd.vr, &sd.fl, &sd.fr, s_l, s_r)?;

    let (mut star_l, mut star_r, mut psi) = rsir_reconstruct(&sd.vl, &sd.vr, &hll, beta, eos);
    let mut used_beta = beta;
    let fallback = !(admissible_star(&star_l) && admissible_star(&star_r));
    if fallback {
        log::debug!("two-phase reconstruction inadmissible (beta = {beta}); using HLL state");
        (star_l, star_r, psi) = rsir_reconstruct(&sd.vl, &sd.vr, &hll, 0.0, eos);
        used_beta = 0.0;
    }

    let w_l = (hll.s_m1 - s_l) / (s_r - s_l);
    let w_r = (s_r - hll.s_m1) / (s_r - s_l);
    let f_hll = vecops::hll_flux(&sd.vl.u, &sd.vr.u, &sd.fl, &sd.fr, s_l, s_r);
    let flux_l = vecops::axpy(&f_hll, -s_l * w_r, &psi);
    let flux_r = vecops::axpy(&f_hll, s_r * w_l, &psi);

    let (phi, state) = if s_l >= 0.0 {
        (sd.fl, sd.vl.u)
    } else if s_r <= 0.0 {
        (sd.fr, sd.vr.u)
    } else if hll.s_m1 >= 0.0 {
        (flux_l, star_l)
    } else {
        (flux_r, star_r)
    };
    let face = TwoPhaseFace {
        flux: assemble(&phi, sd.p_i, state[0], phi[0]),
        alpha_face: state[0],
        phi_alpha_face: phi[0],
        fallback,
    };
    Ok(TwoPhaseFan {
        s_l,
        s_r,
        s_m1: hll.s_m1,
        s_m2: hll.s_m2,
        p_i: sd.p_i,
        u_hll: hll.u_hll,
        u_star_l: LocalConsVec { u: star_l, p_i: sd.p_i },
        u_star_r: LocalConsVec { u: star_r, p_i: sd.p_i },
        beta: used_beta,
        flux_l,
        flux_r,
        face,
    })
}

/// Plain HLL flux of the locally conservative image.
pub fn hll_tp_flux(wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<TwoPhaseFace> {
    let sd = Sides::new(wl, wr, eos)?;
    let (s_l, s_r) = tp_wave_bounds(wl, wr, eos)?;
    let hll = tp_hll_state(&sd.vl, &sd.vr, &sd.fl, &sd.fr, s_l, s_r)?;
    let (phi, alpha) = if s_l >= 0.0 {
        (sd.fl, sd.vl.u[0])
    } else if s_r <= 0.0 {
        (sd.fr, sd.vr.u[0])
    } else {
        (
            vecops::hll_flux(&sd.vl.u, &sd.vr.u, &sd.fl, &sd.fr, s_l, s_r),
            hll.u_hll[0],
        )
    };
    Ok(TwoPhaseFace {
        flux: assemble(&phi, sd.p_i, alpha, phi[0]),
        alpha_face: alpha,
        phi_alpha_face: phi[0],
        fallback: false,
    })
}

/// Rate of change of a cell from the `p_I d(alpha1)/dx` and
/// `p_I d(alpha u)1/dx` products, using the cell's phase-1 pressure and the
/// face values at its left and right interfaces. Phase 2 receives the
/// opposite increments.
pub fn h_terms(left: &TwoPhaseFace, right: &TwoPhaseFace, p_cell: f64, dx: f64) -> [f64; 7] {
    let h_u = p_cell * (right.alpha_face - left.alpha_face) / dx;
    let h_e = p_cell * (right.phi_alpha_face - left.phi_alpha_face) / dx;
    [0.0, 0.0, h_u, h_e, 0.0, -h_u, -h_e]
}

/// Interface solver selection for two-phase runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum TwoPhaseSolver {
    RusanovBasic,
    RusanovLocal,
    Hll,
    Rsir { beta: f64 },
}

impl TwoPhaseSolver {
    pub fn face(&self, wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<TwoPhaseFace> {
        match *self {
            TwoPhaseSolver::RusanovBasic => rusanov_basic_flux(wl, wr, eos),
            TwoPhaseSolver::RusanovLocal => rusanov_local_flux(wl, wr, eos).map(|f| f.face),
            TwoPhaseSolver::Hll => hll_tp_flux(wl, wr, eos),
            TwoPhaseSolver::Rsir { beta } => rsir_tp_flux(wl, wr, eos, beta).map(|f| f.face),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TwoPhaseSolver::RusanovBasic => "rusanov-basic",
            TwoPhaseSolver::RusanovLocal => "rusanov-local",
            TwoPhaseSolver::Hll => "hll",
            TwoPhaseSolver::Rsir { .. } => "rsir-tp",
        }
    }
}
