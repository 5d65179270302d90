use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform 1D mesh of `n_cells` interior cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mesh1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub dx: f64,
}

impl Mesh1D {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if n_cells < 4 {
            return Err(Error::config(format!("mesh needs at least 4 cells, got {n_cells}")));
        }
        let dx = (x_max - x_min) / n_cells as f64;
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::config(format!("empty or inverted domain [{x_min}, {x_max}]")));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
            dx,
        })
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }
}
