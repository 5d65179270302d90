//! Single-phase Euler equations: state algebra and interface flux kernels.

mod flux;

pub use flux::{
    contact_speed, davis_wave_speeds, hll_flux, hll_state, hllc_flux, linde_flux, rsir_flux, rsir_flux_general,
    rusanov_flux, EulerFan, EulerSolver,
};

use serde::{Deserialize, Serialize};

use crate::eos::EosParams;
use crate::error::{Error, Result};

/// Primitive state: density, velocity, pressure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerPrim {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

/// Conserved state `(rho, rho u, rho E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerCons {
    pub rho: f64,
    pub mom: f64,
    pub etot: f64,
}

/// Flux vector `(rho u, rho u^2 + p, (rho E + p) u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerFlux {
    pub mass: f64,
    pub mom: f64,
    pub energy: f64,
}

impl EulerPrim {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, p }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.u, self.p]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn check(&self, eos: &EosParams) -> Result<()> {
        if !self.u.is_finite() {
            return Err(Error::Inadmissible(format!("velocity {} is not finite", self.u)));
        }
        eos.check_state(self.rho, self.p)
    }

    pub fn sound_speed(&self, eos: &EosParams) -> Result<f64> {
        eos.sound_speed(self.rho, self.p)
    }
}

impl EulerCons {
    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.mom, self.etot]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self {
            rho: a[0],
            mom: a[1],
            etot: a[2],
        }
    }
}

impl EulerFlux {
    pub fn to_array(self) -> [f64; 3] {
        [self.mass, self.mom, self.energy]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self {
            mass: a[0],
            mom: a[1],
            energy: a[2],
        }
    }
}

pub fn cons_from_prim(w: &EulerPrim, eos: &EosParams) -> Result<EulerCons> {
    w.check(eos)?;
    let rho_e = eos.rho_e(w.rho, w.p)?;
    Ok(EulerCons {
        rho: w.rho,
        mom: w.rho * w.u,
        etot: rho_e + 0.5 * w.rho * w.u * w.u,
    })
}

pub fn prim_from_cons(u: &EulerCons, eos: &EosParams) -> Result<EulerPrim> {
    if !(u.rho > 0.0) || !u.rho.is_finite() {
        return Err(Error::Inadmissible(format!("density {} is not positive", u.rho)));
    }
    let vel = u.mom / u.rho;
    let rho_e = u.etot - 0.5 * u.mom * vel;
    let p = eos.pressure_from_rho_e(u.rho, rho_e)?;
    let w = EulerPrim::new(u.rho, vel, p);
    w.check(eos)?;
    Ok(w)
}

pub fn physical_flux(w: &EulerPrim, eos: &EosParams) -> Result<EulerFlux> {
    let u = cons_from_prim(w, eos)?;
    Ok(flux_of(w, &u))
}

pub(crate) fn flux_of(w: &EulerPrim, u: &EulerCons) -> EulerFlux {
    EulerFlux {
        mass: u.mom,
        mom: u.mom * w.u + w.p,
        energy: (u.etot + w.p) * w.u,
    }
}
