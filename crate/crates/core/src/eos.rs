//! Convex equations of state: ideal gas, stiffened gas (SG) and Noble-Abel
//! stiffened gas (NASG).
//!
//! A single parameter record covers the three families:
//!
//! ```text
//! p(rho, e) = (gamma - 1) rho e / (1 - rho b) - gamma p_inf
//! ```
//!
//! `b = 0` gives the stiffened gas, `b = 0, p_inf = 0` the ideal gas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EosParams {
    pub gamma: f64,
    /// Pressure offset, Pa.
    pub p_inf: f64,
    /// Covolume, m^3/kg.
    pub b: f64,
    /// Reference heat capacity, only used by the entropy diagnostic.
    pub cv: f64,
}

impl EosParams {
    pub fn ideal(gamma: f64) -> Self {
        Self::nasg(gamma, 0.0, 0.0)
    }

    pub fn stiffened(gamma: f64, p_inf: f64) -> Self {
        Self::nasg(gamma, p_inf, 0.0)
    }

    pub fn nasg(gamma: f64, p_inf: f64, b: f64) -> Self {
        Self {
            gamma,
            p_inf,
            b,
            cv: 1.0,
        }
    }

    pub fn with_cv(mut self, cv: f64) -> Self {
        self.cv = cv;
        self
    }

    /// Air as an ideal gas, gamma = 1.4.
    pub fn air() -> Self {
        Self::ideal(1.4)
    }

    /// Liquid water as a stiffened gas.
    pub fn water_sg() -> Self {
        Self::stiffened(4.4, 6.0e8)
    }

    /// Liquid water with the covolume correction.
    pub fn water_nasg() -> Self {
        Self::nasg(4.4, 6.0e8, 5.0e-5)
    }

    /// Looks up one of the named presets `air-ideal`, `water-sg`, `water-nasg`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "air-ideal" => Some(Self::air()),
            "water-sg" => Some(Self::water_sg()),
            "water-nasg" => Some(Self::water_nasg()),
            _ => None,
        }
    }

    pub const PRESETS: [&'static str; 3] = ["air-ideal", "water-sg", "water-nasg"];

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0) || !self.gamma.is_finite() {
            return Err(Error::Inadmissible(format!("gamma must exceed 1, got {}", self.gamma)));
        }
        if !(self.p_inf >= 0.0) || !(self.b >= 0.0) || !(self.cv > 0.0) {
            return Err(Error::Inadmissible(format!(
                "EOS constants out of range: p_inf = {}, b = {}, cv = {}",
                self.p_inf, self.b, self.cv
            )));
        }
        Ok(())
    }

    /// True when the covolume vanishes, i.e. SG or ideal gas.
    pub fn is_stiffened(&self) -> bool {
        self.b == 0.0
    }

    fn free_volume_fraction(&self, rho: f64) -> Result<f64> {
        let phi = 1.0 - rho * self.b;
        if phi > 0.0 {
            Ok(phi)
        } else {
            Err(Error::CovolumeSaturation { rho, b: self.b })
        }
    }

    pub fn pressure(&self, rho: f64, e: f64) -> Result<f64> {
        let phi = self.free_volume_fraction(rho)?;
        Ok((self.gamma - 1.0) * rho * e / phi - self.gamma * self.p_inf)
    }

    /// Pressure from the volumetric internal energy `rho_e = rho * e`.
    pub fn pressure_from_rho_e(&self, rho: f64, rho_e: f64) -> Result<f64> {
        let phi = self.free_volume_fraction(rho)?;
        Ok((self.gamma - 1.0) * rho_e / phi - self.gamma * self.p_inf)
    }

    pub fn internal_energy(&self, rho: f64, p: f64) -> Result<f64> {
        let phi = self.free_volume_fraction(rho)?;
        Ok((p + self.gamma * self.p_inf) * phi / ((self.gamma - 1.0) * rho))
    }

    /// Volumetric internal energy `rho * e`. Independent of `rho` when `b = 0`,
    /// which keeps stationary contacts exact in floating point.
    pub fn rho_e(&self, rho: f64, p: f64) -> Result<f64> {
        let phi = self.free_volume_fraction(rho)?;
        Ok((p + self.gamma * self.p_inf) * phi / (self.gamma - 1.0))
    }

    pub fn sound_speed_squared(&self, rho: f64, p: f64) -> Result<f64> {
        let phi = self.free_volume_fraction(rho)?;
        let c2 = self.gamma * (p + self.p_inf) / (rho * phi);
        if c2 > 0.0 && c2.is_finite() {
            Ok(c2)
        } else {
            Err(Error::Inadmissible(format!(
                "non-positive squared sound speed {c2} at rho = {rho}, p = {p}"
            )))
        }
    }

    pub fn sound_speed(&self, rho: f64, p: f64) -> Result<f64> {
        self.sound_speed_squared(rho, p).map(f64::sqrt)
    }

    /// Diagnostic specific entropy `cv ln((p + p_inf) v^gamma)` with
    /// `v = 1/rho - b`. Defined up to an additive constant.
    pub fn entropy(&self, rho: f64, p: f64) -> Result<f64> {
        self.check_state(rho, p)?;
        let v = 1.0 / rho - self.b;
        Ok(self.cv * ((p + self.p_inf).ln() + self.gamma * v.ln()))
    }

    /// Checks `rho > 0`, `1 - rho b > 0` and `p + p_inf > 0`.
    pub fn check_state(&self, rho: f64, p: f64) -> Result<()> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Inadmissible(format!("density {rho} is not positive")));
        }
        self.free_volume_fraction(rho)?;
        if !(p + self.p_inf > 0.0) || !p.is_finite() {
            return Err(Error::Inadmissible(format!(
                "pressure {p} violates p + p_inf > 0 (p_inf = {})",
                self.p_inf
            )));
        }
        Ok(())
    }
}
