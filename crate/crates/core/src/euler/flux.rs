//! Interface fluxes for the Euler equations.
//!
//! All two-state solvers (Linde, RSIR, HLLC) share the same skeleton: Davis
//! bounds `s_l`, `s_r`, the HLL average state, a contact speed `s_m`, and two
//! star states whose fluxes follow from the Rankine-Hugoniot relations across
//! the outer waves. For the reconstructed solvers the star states are
//!
//! ```text
//! U*_L = U_HLL - w_R J,   U*_R = U_HLL + w_L J,
//! w_R = (s_r - s_m)/(s_r - s_l),   w_L = (s_m - s_l)/(s_r - s_l)
//! ```
//!
//! for a jump vector `J = U*_R - U*_L`, and the star fluxes
//! `F_K + s_K (U*_K - U_K)` are evaluated as `F_HLL - s_l w_R J` and
//! `F_HLL + s_r w_L J`, which is the same algebra but makes a vanishing jump
//! return the HLL flux exactly.

use serde::{Deserialize, Serialize};

use super::{cons_from_prim, flux_of, EulerCons, EulerFlux, EulerPrim};
use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::vecops;

/// Per-interface record of a two-state solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerFan {
    pub s_l: f64,
    pub s_m: f64,
    pub s_r: f64,
    pub u_hll: EulerCons,
    pub u_star_l: EulerCons,
    pub u_star_r: EulerCons,
    pub beta: f64,
    /// Sampled interface flux at `x/t = 0`.
    pub flux: EulerFlux,
}

impl EulerFan {
    pub fn omega_l(&self) -> f64 {
        (self.s_m - self.s_l) / (self.s_r - self.s_l)
    }

    pub fn omega_r(&self) -> f64 {
        (self.s_r - self.s_m) / (self.s_r - self.s_l)
    }
}

/// Signed Davis bounds `min(u - c)`, `max(u + c)` over both states.
pub fn davis_wave_speeds(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams) -> Result<(f64, f64)> {
    let cl = wl.sound_speed(eos)?;
    let cr = wr.sound_speed(eos)?;
    Ok(((wl.u - cl).min(wr.u - cr), (wl.u + cl).max(wr.u + cr)))
}

pub fn hll_state(
    ul: &EulerCons,
    ur: &EulerCons,
    fl: &EulerFlux,
    fr: &EulerFlux,
    s_l: f64,
    s_r: f64,
) -> Result<EulerCons> {
    check_fan(s_l, s_r)?;
    Ok(EulerCons::from_array(vecops::hll_average(
        &ul.to_array(),
        &ur.to_array(),
        &fl.to_array(),
        &fr.to_array(),
        s_l,
        s_r,
    )))
}

pub fn contact_speed(wl: &EulerPrim, wr: &EulerPrim, s_l: f64, s_r: f64) -> Result<f64> {
    let ml = wl.rho * (s_l - wl.u);
    let mr = wr.rho * (s_r - wr.u);
    let den = ml - mr;
    if den == 0.0 || !den.is_finite() {
        return Err(Error::DegenerateFan(format!(
            "contact speed denominator vanishes (s_l = {s_l}, s_r = {s_r})"
        )));
    }
    Ok((wr.p - wl.p + wl.u * ml - wr.u * mr) / den)
}

fn check_fan(s_l: f64, s_r: f64) -> Result<()> {
    if s_l < s_r {
        Ok(())
    } else {
        Err(Error::DegenerateFan(format!("s_l = {s_l} is not below s_r = {s_r}")))
    }
}

pub fn rusanov_flux(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams) -> Result<EulerFlux> {
    let ul = cons_from_prim(wl, eos)?;
    let ur = cons_from_prim(wr, eos)?;
    let fl = flux_of(wl, &ul).to_array();
    let fr = flux_of(wr, &ur).to_array();
    let s = (wl.u.abs() + wl.sound_speed(eos)?).max(wr.u.abs() + wr.sound_speed(eos)?);
    let (ul, ur) = (ul.to_array(), ur.to_array());
    Ok(EulerFlux::from_array(std::array::from_fn(|i| {
        0.5 * (fr[i] + fl[i] - s * (ur[i] - ul[i]))
    })))
}

/// Shared left/right data of one interface.
struct Sides {
    ul: [f64; 3],
    ur: [f64; 3],
    fl: [f64; 3],
    fr: [f64; 3],
    s_l: f64,
    s_r: f64,
}

impl Sides {
    fn new(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams) -> Result<Self> {
        let ul = cons_from_prim(wl, eos)?;
        let ur = cons_from_prim(wr, eos)?;
        let (s_l, s_r) = davis_wave_speeds(wl, wr, eos)?;
        check_fan(s_l, s_r)?;
        Ok(Self {
            fl: flux_of(wl, &ul).to_array(),
            fr: flux_of(wr, &ur).to_array(),
            ul: ul.to_array(),
            ur: ur.to_array(),
            s_l,
            s_r,
        })
    }

    fn u_hll(&self) -> [f64; 3] {
        vecops::hll_average(&self.ul, &self.ur, &self.fl, &self.fr, self.s_l, self.s_r)
    }

    fn f_hll(&self) -> [f64; 3] {
        vecops::hll_flux(&self.ul, &self.ur, &self.fl, &self.fr, self.s_l, self.s_r)
    }

    /// Four-branch sampling at `x/t = 0`; `s_m = 0` goes to the left star flux.
    fn sample(&self, s_m: f64, f_star_l: [f64; 3], f_star_r: [f64; 3]) -> [f64; 3] {
        if self.s_l >= 0.0 {
            self.fl
        } else if self.s_r <= 0.0 {
            self.fr
        } else if s_m >= 0.0 {
            f_star_l
        } else {
            f_star_r
        }
    }

    /// Builds the fan from a reconstruction jump `J = U*_R - U*_L`.
    fn reconstructed(&self, s_m: f64, jump: [f64; 3], beta: f64) -> EulerFan {
        let (s_l, s_r) = (self.s_l, self.s_r);
        let w_l = (s_m - s_l) / (s_r - s_l);
        let w_r = (s_r - s_m) / (s_r - s_l);
        let u_hll = self.u_hll();
        let f_hll = self.f_hll();
        let f_star_l = vecops::axpy(&f_hll, -s_l * w_r, &jump);
        let f_star_r = vecops::axpy(&f_hll, s_r * w_l, &jump);
        EulerFan {
            s_l,
            s_m,
            s_r,
            u_hll: EulerCons::from_array(u_hll),
            u_star_l: EulerCons::from_array(vecops::axpy(&u_hll, -w_r, &jump)),
            u_star_r: EulerCons::from_array(vecops::axpy(&u_hll, w_l, &jump)),
            beta,
            flux: EulerFlux::from_array(self.sample(s_m, f_star_l, f_star_r)),
        }
    }
}

/// Plain HLL flux with Davis bounds.
pub fn hll_flux(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams) -> Result<EulerFlux> {
    let sides = Sides::new(wl, wr, eos)?;
    let f = if sides.s_l >= 0.0 {
        sides.fl
    } else if sides.s_r <= 0.0 {
        sides.fr
    } else {
        sides.f_hll()
    };
    Ok(EulerFlux::from_array(f))
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::Inadmissible(format!("beta must lie in [0,1], got {beta}")))
    }
}

/// Original two-state reconstruction `U*_R - U*_L = beta (U_R - U_L)`.
pub fn linde_flux(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams, beta: f64) -> Result<EulerFan> {
    check_beta(beta)?;
    let sides = Sides::new(wl, wr, eos)?;
    let s_m = contact_speed(wl, wr, sides.s_l, sides.s_r)?;
    let jump = vecops::scale(beta, &vecops::sub(&sides.ur, &sides.ul));
    Ok(sides.reconstructed(s_m, jump, beta))
}

/// Quasi-isentropic density jump across the contact, scaled by `beta`.
fn contact_density_jump(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams, beta: f64) -> Result<f64> {
    let c2_bar = 0.5 * (eos.sound_speed_squared(wl.rho, wl.p)? + eos.sound_speed_squared(wr.rho, wr.p)?);
    Ok(beta * (wr.rho - wl.rho + (wl.p - wr.p) / c2_bar))
}

/// Internal reconstruction for ideal-gas and stiffened-gas fluids: the star
/// states share pressure and velocity `s_m`, and since `rho e` depends only on
/// pressure the jump is `psi (1, s_m, s_m^2/2)`.
pub fn rsir_flux(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams, beta: f64) -> Result<EulerFan> {
    check_beta(beta)?;
    if !eos.is_stiffened() {
        return Err(Error::WrongClosure { b: eos.b });
    }
    let sides = Sides::new(wl, wr, eos)?;
    let s_m = contact_speed(wl, wr, sides.s_l, sides.s_r)?;
    let psi = contact_density_jump(wl, wr, eos, beta)?;
    let jump = [psi, psi * s_m, psi * (0.5 * s_m * s_m)];
    Ok(sides.reconstructed(s_m, jump, beta))
}

/// Internal reconstruction for any EOS of [`EosParams`], including the
/// covolume family. Star densities come from the HLL split of the density
/// jump; both sides then get a pressure from `p*_K = p_K + c_K^2 (rho*_K - rho_K)`
/// and the contact condition is imposed by sharing their mean. The energy jump
/// is the internal-energy difference at that pressure plus the kinetic part.
/// Star densities are checked only when `b > 0`, where `rho e` depends on
/// them; without covolume the result coincides with [`rsir_flux`].
pub fn rsir_flux_general(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams, beta: f64) -> Result<EulerFan> {
    check_beta(beta)?;
    let sides = Sides::new(wl, wr, eos)?;
    let s_m = contact_speed(wl, wr, sides.s_l, sides.s_r)?;
    let psi = contact_density_jump(wl, wr, eos, beta)?;

    let (s_l, s_r) = (sides.s_l, sides.s_r);
    let w_l = (s_m - s_l) / (s_r - s_l);
    let w_r = (s_r - s_m) / (s_r - s_l);
    let rho_hll = sides.u_hll()[0];
    let rho_star_l = rho_hll - w_r * psi;
    let rho_star_r = rho_hll + w_l * psi;
    let p_star_l = wl.p + eos.sound_speed_squared(wl.rho, wl.p)? * (rho_star_l - wl.rho);
    let p_star_r = wr.p + eos.sound_speed_squared(wr.rho, wr.p)? * (rho_star_r - wr.rho);
    let p_star = 0.5 * (p_star_l + p_star_r);
    let rho_e_at = |side: &str, rho: f64| {
        if eos.b > 0.0 && !(rho > 0.0) {
            return Err(Error::Positivity(format!("{side} star density {rho} is not positive")));
        }
        eos.rho_e(rho, p_star)
            .map_err(|e| Error::Positivity(format!("{side} star state (rho = {rho}): {e}")))
    };
    let de = rho_e_at("right", rho_star_r)? - rho_e_at("left", rho_star_l)?;
    let jump = [psi, psi * s_m, de + psi * (0.5 * s_m * s_m)];
    Ok(sides.reconstructed(s_m, jump, beta))
}

/// HLLC with Davis bounds, the usual comparison baseline.
pub fn hllc_flux(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams) -> Result<EulerFan> {
    let sides = Sides::new(wl, wr, eos)?;
    let (s_l, s_r) = (sides.s_l, sides.s_r);
    let s_m = contact_speed(wl, wr, s_l, s_r)?;
    let star = |w: &EulerPrim, u: &[f64; 3], s_k: f64| -> [f64; 3] {
        let factor = w.rho * (s_k - w.u) / (s_k - s_m);
        [
            factor,
            factor * s_m,
            factor * (u[2] / w.rho + (s_m - w.u) * (s_m + w.p / (w.rho * (s_k - w.u)))),
        ]
    };
    let u_star_l = star(wl, &sides.ul, s_l);
    let u_star_r = star(wr, &sides.ur, s_r);
    let f_star_l = vecops::axpy(&sides.fl, s_l, &vecops::sub(&u_star_l, &sides.ul));
    let f_star_r = vecops::axpy(&sides.fr, s_r, &vecops::sub(&u_star_r, &sides.ur));
    Ok(EulerFan {
        s_l,
        s_m,
        s_r,
        u_hll: EulerCons::from_array(sides.u_hll()),
        u_star_l: EulerCons::from_array(u_star_l),
        u_star_r: EulerCons::from_array(u_star_r),
        beta: 1.0,
        flux: EulerFlux::from_array(sides.sample(s_m, f_star_l, f_star_r)),
    })
}

/// Interface solver selection for single-phase runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum EulerSolver {
    Rusanov,
    Hll,
    Hllc,
    Linde {
        beta: f64,
    },
    /// Picks the covolume-aware reconstruction automatically when `b > 0`.
    Rsir {
        beta: f64,
    },
}

impl EulerSolver {
    pub fn flux(&self, wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams) -> Result<EulerFlux> {
        match *self {
            EulerSolver::Rusanov => rusanov_flux(wl, wr, eos),
            EulerSolver::Hll => hll_flux(wl, wr, eos),
            EulerSolver::Hllc => hllc_flux(wl, wr, eos).map(|f| f.flux),
            EulerSolver::Linde { beta } => linde_flux(wl, wr, eos, beta).map(|f| f.flux),
            EulerSolver::Rsir { beta } if eos.is_stiffened() => rsir_flux(wl, wr, eos, beta).map(|f| f.flux),
            EulerSolver::Rsir { beta } => rsir_flux_general(wl, wr, eos, beta).map(|f| f.flux),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EulerSolver::Rusanov => "rusanov",
            EulerSolver::Hll => "hll",
            EulerSolver::Hllc => "hllc",
            EulerSolver::Linde { .. } => "linde",
            EulerSolver::Rsir { .. } => "rsir",
        }
    }
}
