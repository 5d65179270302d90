//! Dense-dilute two-phase model: a dispersed phase 1 travelling in a carrier
//! phase 2, with a single velocity per phase and interfacial pressure taken
//! from phase 1.
//!
//! Conserved vector (7 slots):
//! `[alpha1, (a rho)1, (a rho u)1, (a rho E)1, (a rho)2, (a rho u)2, (a rho E)2]`.
//! Across one interface the interfacial pressure is frozen, which makes the
//! system conservative in the 8-slot image that adds `alpha2` after the
//! phase-1 block.

mod flux;

pub use flux::{
    h_terms, hll_tp_flux, rsir_reconstruct, rsir_tp_flux, rusanov_basic_flux, rusanov_local_flux, tp_hll_state,
    TpHllState, TwoPhaseFace, TwoPhaseFan, TwoPhaseSolver,
};

use serde::{Deserialize, Serialize};

use crate::eos::EosParams;
use crate::error::{Error, Result};

/// Volume fractions are kept inside `[ALPHA_FLOOR, 1 - ALPHA_FLOOR]`.
pub const ALPHA_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPhaseEos {
    pub phase1: EosParams,
    pub phase2: EosParams,
}

impl TwoPhaseEos {
    pub fn new(phase1: EosParams, phase2: EosParams) -> Self {
        Self { phase1, phase2 }
    }

    /// Stiffened water droplets in ideal-gas air.
    pub fn water_air() -> Self {
        Self::new(EosParams::water_sg(), EosParams::air())
    }

    pub fn validate(&self) -> Result<()> {
        self.phase1.validate()?;
        self.phase2.validate()?;
        for (k, eos) in [(1, &self.phase1), (2, &self.phase2)] {
            if !eos.is_stiffened() {
                return Err(Error::config(format!(
                    "phase {k}: the two-phase model supports ideal-gas and stiffened-gas fluids only (b = {})",
                    eos.b
                )));
            }
        }
        Ok(())
    }
}

/// Primitive two-phase state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPhasePrim {
    pub alpha1: f64,
    pub rho1: f64,
    pub u1: f64,
    pub p1: f64,
    pub rho2: f64,
    pub u2: f64,
    pub p2: f64,
}

impl TwoPhasePrim {
    pub fn to_array(self) -> [f64; 7] {
        [self.alpha1, self.rho1, self.u1, self.p1, self.rho2, self.u2, self.p2]
    }

    pub fn from_array(a: [f64; 7]) -> Self {
        Self {
            alpha1: a[0],
            rho1: a[1],
            u1: a[2],
            p1: a[3],
            rho2: a[4],
            u2: a[5],
            p2: a[6],
        }
    }

    pub fn alpha2(&self) -> f64 {
        1.0 - self.alpha1
    }

    pub fn mixture_density(&self) -> f64 {
        self.alpha1 * self.rho1 + self.alpha2() * self.rho2
    }

    pub fn check(&self, eos: &TwoPhaseEos) -> Result<()> {
        if !(self.alpha1 > 0.0 && self.alpha1 < 1.0) {
            return Err(Error::Inadmissible(format!("alpha1 = {} outside (0, 1)", self.alpha1)));
        }
        if !self.u1.is_finite() || !self.u2.is_finite() {
            return Err(Error::Inadmissible("non-finite phase velocity".into()));
        }
        eos.phase1.check_state(self.rho1, self.p1)?;
        eos.phase2.check_state(self.rho2, self.p2)
    }

    /// Carrier sound speed, the only acoustic speed of the model.
    pub fn c2(&self, eos: &TwoPhaseEos) -> Result<f64> {
        eos.phase2.sound_speed(self.rho2, self.p2)
    }

    /// `max(|u1|, |u2| + c2)`.
    pub fn max_speed(&self, eos: &TwoPhaseEos) -> Result<f64> {
        Ok(self.u1.abs().max(self.u2.abs() + self.c2(eos)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhaseCons(pub [f64; 7]);

impl TwoPhaseCons {
    pub fn alpha1(&self) -> f64 {
        self.0[0]
    }

    pub fn mixture_momentum(&self) -> f64 {
        self.0[2] + self.0[5]
    }

    pub fn mixture_energy(&self) -> f64 {
        self.0[3] + self.0[6]
    }
}

/// 8-slot image of a state for a frozen interfacial pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalConsVec {
    pub u: [f64; 8],
    pub p_i: f64,
}

impl LocalConsVec {
    pub fn new(u: &TwoPhaseCons, p_i: f64) -> Self {
        let c = &u.0;
        Self {
            u: [c[0], c[1], c[2], c[3], 1.0 - c[0], c[4], c[5], c[6]],
            p_i,
        }
    }

    /// Drops the `alpha2` slot.
    pub fn to_cons(&self) -> TwoPhaseCons {
        let v = &self.u;
        TwoPhaseCons([v[0], v[1], v[2], v[3], v[5], v[6], v[7]])
    }
}

pub fn tp_cons_from_prim(w: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<TwoPhaseCons> {
    w.check(eos)?;
    let a1 = w.alpha1;
    let a2 = w.alpha2();
    let rho_e1 = eos.phase1.rho_e(w.rho1, w.p1)?;
    let rho_e2 = eos.phase2.rho_e(w.rho2, w.p2)?;
    Ok(TwoPhaseCons([
        a1,
        a1 * w.rho1,
        a1 * w.rho1 * w.u1,
        a1 * (rho_e1 + 0.5 * w.rho1 * w.u1 * w.u1),
        a2 * w.rho2,
        a2 * w.rho2 * w.u2,
        a2 * (rho_e2 + 0.5 * w.rho2 * w.u2 * w.u2),
    ]))
}

/// Recovers the primitive state. A volume fraction outside
/// `[ALPHA_FLOOR, 1 - ALPHA_FLOOR]` is clamped and reported by the flag.
pub fn tp_prim_from_cons(u: &TwoPhaseCons, eos: &TwoPhaseEos) -> Result<(TwoPhasePrim, bool)> {
    let c = &u.0;
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Inadmissible(format!("non-finite conserved state {c:?}")));
    }
    for (k, m) in [(1, c[1]), (2, c[4])] {
        if !(m > 0.0) {
            return Err(Error::Positivity(format!("apparent density of phase {k} is {m}")));
        }
    }
    let a1 = c[0].clamp(ALPHA_FLOOR, 1.0 - ALPHA_FLOOR);
    let clamped = a1 != c[0];
    let a2 = 1.0 - a1;
    let rho1 = c[1] / a1;
    let u1 = c[2] / c[1];
    let p1 = eos.phase1.pressure_from_rho_e(rho1, (c[3] - 0.5 * c[2] * u1) / a1)?;
    let rho2 = c[4] / a2;
    let u2 = c[5] / c[4];
    let p2 = eos.phase2.pressure_from_rho_e(rho2, (c[6] - 0.5 * c[5] * u2) / a2)?;
    let w = TwoPhasePrim {
        alpha1: a1,
        rho1,
        u1,
        p1,
        rho2,
        u2,
        p2,
    };
    w.check(eos)?;
    Ok((w, clamped))
}

/// Phase-1 pressure on the side where phase 1 is more abundant; the mean on
/// a tie.
pub fn interfacial_pressure(wl: &TwoPhasePrim, wr: &TwoPhasePrim) -> f64 {
    if wl.alpha1 > wr.alpha1 {
        wl.p1
    } else if wl.alpha1 < wr.alpha1 {
        wr.p1
    } else {
        0.5 * (wl.p1 + wr.p1)
    }
}

/// Locally conservative flux of the 8-slot image for interfacial pressure `p_i`.
pub fn local_flux_prim(w: &TwoPhasePrim, p_i: f64, eos: &TwoPhaseEos) -> Result<[f64; 8]> {
    let c = tp_cons_from_prim(w, eos)?;
    Ok(local_flux_of(w, &c, p_i))
}

pub fn local_flux(v: &LocalConsVec, eos: &TwoPhaseEos) -> Result<[f64; 8]> {
    let cons = v.to_cons();
    let (w, _) = tp_prim_from_cons(&cons, eos)?;
    Ok(local_flux_of(&w, &cons, v.p_i))
}

pub(crate) fn local_flux_of(w: &TwoPhasePrim, c: &TwoPhaseCons, p_i: f64) -> [f64; 8] {
    let c = &c.0;
    let a1 = w.alpha1;
    let a2 = w.alpha2();
    let au1 = a1 * w.u1;
    [
        au1,
        c[2],
        c[2] * w.u1 + a1 * (w.p1 - p_i),
        (c[3] + a1 * (w.p1 - p_i)) * w.u1,
        -au1,
        c[5],
        c[5] * w.u2 + a2 * (w.p2 - p_i),
        (c[6] + a2 * w.p2) * w.u2 + p_i * au1,
    ]
}

/// Physical flux of the non-conservative form, without the `p_I d(alpha)/dx`
/// products.
pub(crate) fn physical_flux_of(w: &TwoPhasePrim, c: &TwoPhaseCons) -> [f64; 7] {
    let c = &c.0;
    let a1 = w.alpha1;
    let a2 = w.alpha2();
    [
        a1 * w.u1,
        c[2],
        c[2] * w.u1 + a1 * w.p1,
        (c[3] + a1 * w.p1) * w.u1,
        c[5],
        c[5] * w.u2 + a2 * w.p2,
        (c[6] + a2 * w.p2) * w.u2,
    ]
}

pub fn physical_flux(w: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<[f64; 7]> {
    let c = tp_cons_from_prim(w, eos)?;
    Ok(physical_flux_of(w, &c))
}

/// Outer wave bounds over the eigenvalues `u1`, `u2 - c2`, `u2 + c2` of both
/// states.
pub fn tp_wave_bounds(wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<(f64, f64)> {
    let cl = wl.c2(eos)?;
    let cr = wr.c2(eos)?;
    let s_l = wl.u1.min(wl.u2 - cl).min(wr.u1).min(wr.u2 - cr);
    let s_r = wl.u1.max(wl.u2 + cl).max(wr.u1).max(wr.u2 + cr);
    Ok((s_l, s_r))
}

pub fn rusanov_speed(wl: &TwoPhasePrim, wr: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<f64> {
    Ok(wl.max_speed(eos)?.max(wr.max_speed(eos)?))
}

/// `alpha1 rho1 s1 + alpha2 rho2 s2`.
pub fn mixture_entropy(w: &TwoPhasePrim, eos: &TwoPhaseEos) -> Result<f64> {
    Ok(w.alpha1 * w.rho1 * eos.phase1.entropy(w.rho1, w.p1)?
        + w.alpha2() * w.rho2 * eos.phase2.entropy(w.rho2, w.p2)?)
}
