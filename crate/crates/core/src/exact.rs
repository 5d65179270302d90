//! Exact Riemann solution of the Euler equations for ideal and stiffened
//! gases, used as a verification oracle.
//!
//! The stiffened gas enters through the shifted pressure `P = p + p_inf`, in
//! terms of which every ideal-gas relation carries over unchanged.

use serde::Serialize;

use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::euler::EulerPrim;
use crate::fv::Mesh1D;

const MAX_ITER: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

/// Scalar field extracted from a primitive state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Density,
    Velocity,
    Pressure,
    InternalEnergy,
}

impl Field {
    pub const ALL: [Field; 4] = [Field::Density, Field::Velocity, Field::Pressure, Field::InternalEnergy];

    pub fn name(self) -> &'static str {
        match self {
            Field::Density => "rho",
            Field::Velocity => "u",
            Field::Pressure => "p",
            Field::InternalEnergy => "e",
        }
    }

    pub fn of(self, w: &EulerPrim, eos: &EosParams) -> f64 {
        match self {
            Field::Density => w.rho,
            Field::Velocity => w.u,
            Field::Pressure => w.p,
            Field::InternalEnergy => eos.internal_energy(w.rho, w.p).unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExactSolution {
    pub left: EulerPrim,
    pub right: EulerPrim,
    pub eos: EosParams,
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_l: f64,
    pub rho_star_r: f64,
    pub left_wave: WaveKind,
    pub right_wave: WaveKind,
    /// `|f_L(p*) + f_R(p*) + u_R - u_L|` at the returned pressure.
    pub residual: f64,
    pub iterations: usize,
}

struct Side {
    rho: f64,
    u: f64,
    big_p: f64,
    c: f64,
}

impl Side {
    fn new(w: &EulerPrim, eos: &EosParams) -> Result<Self> {
        Ok(Self {
            rho: w.rho,
            u: w.u,
            big_p: w.p + eos.p_inf,
            c: w.sound_speed(eos)?,
        })
    }

    /// Pressure function and its derivative in the shifted pressure.
    fn f(&self, big_p: f64, g: f64) -> (f64, f64) {
        if big_p > self.big_p {
            let a = 2.0 / ((g + 1.0) * self.rho);
            let b = (g - 1.0) / (g + 1.0) * self.big_p;
            let q = (a / (big_p + b)).sqrt();
            let f = (big_p - self.big_p) * q;
            (f, q * (1.0 - 0.5 * (big_p - self.big_p) / (big_p + b)))
        } else {
            let z = (g - 1.0) / (2.0 * g);
            let ratio = big_p / self.big_p;
            let f = 2.0 * self.c / (g - 1.0) * (ratio.powf(z) - 1.0);
            (f, ratio.powf(-(g + 1.0) / (2.0 * g)) / (self.rho * self.c))
        }
    }

    fn star_density(&self, big_p: f64, g: f64) -> f64 {
        let ratio = big_p / self.big_p;
        if big_p > self.big_p {
            let k = (g - 1.0) / (g + 1.0);
            self.rho * (ratio + k) / (k * ratio + 1.0)
        } else {
            self.rho * ratio.powf(1.0 / g)
        }
    }
}

pub fn solve_exact(wl: &EulerPrim, wr: &EulerPrim, eos: &EosParams) -> Result<ExactSolution> {
    if eos.b != 0.0 {
        return Err(Error::WrongClosure { b: eos.b });
    }
    wl.check(eos)?;
    wr.check(eos)?;
    let g = eos.gamma;
    let l = Side::new(wl, eos)?;
    let r = Side::new(wr, eos)?;
    let du = r.u - l.u;
    let critical = 2.0 * (l.c + r.c) / (g - 1.0);
    if du >= critical {
        return Err(Error::Vacuum { du, critical });
    }

    let residual_of = |big_p: f64| {
        let (fl, dl) = l.f(big_p, g);
        let (fr, dr) = r.f(big_p, g);
        (fl + fr + du, dl + dr)
    };
    let tol = 1e-12 * l.c.max(r.c);

    // two-rarefaction initial guess
    let z = (g - 1.0) / (2.0 * g);
    let mut big_p =
        ((l.c + r.c - 0.5 * (g - 1.0) * du) / (l.c / l.big_p.powf(z) + r.c / r.big_p.powf(z))).powf(1.0 / z);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITER {
        iterations += 1;
        let (f, df) = residual_of(big_p);
        if f.abs() <= tol {
            converged = true;
            break;
        }
        let mut next = big_p - f / df;
        if !(next > 0.0) || !next.is_finite() {
            next = 0.5 * big_p;
        }
        let change = (next - big_p).abs() / (next + big_p);
        big_p = next;
        if change < 1e-15 {
            converged = residual_of(big_p).0.abs() <= 1e-10 * l.c.max(r.c);
            break;
        }
    }
    if !converged {
        let (p, it) = bisect(&residual_of, l.big_p.max(r.big_p), tol)?;
        big_p = p;
        iterations += it;
    }
    let residual = residual_of(big_p).0.abs();
    if residual > 1e-10 * l.c.max(r.c) {
        return Err(Error::NoConvergence {
            what: "exact Riemann pressure iteration",
            iterations,
            residual,
        });
    }

    let (fl, _) = l.f(big_p, g);
    let (fr, _) = r.f(big_p, g);
    Ok(ExactSolution {
        left: *wl,
        right: *wr,
        eos: *eos,
        p_star: big_p - eos.p_inf,
        u_star: 0.5 * (l.u + r.u) + 0.5 * (fr - fl),
        rho_star_l: l.star_density(big_p, g),
        rho_star_r: r.star_density(big_p, g),
        left_wave: if big_p > l.big_p {
            WaveKind::Shock
        } else {
            WaveKind::Rarefaction
        },
        right_wave: if big_p > r.big_p {
            WaveKind::Shock
        } else {
            WaveKind::Rarefaction
        },
        residual,
        iterations,
    })
}

fn bisect(f: &impl Fn(f64) -> (f64, f64), start: f64, tol: f64) -> Result<(f64, usize)> {
    let mut lo = 0.0;
    let mut hi = start;
    let mut it = 0;
    while f(hi).0 < 0.0 {
        lo = hi;
        hi *= 2.0;
        it += 1;
        if it > 2000 {
            return Err(Error::NoConvergence {
                what: "exact Riemann bracket search",
                iterations: it,
                residual: f(hi).0,
            });
        }
    }
    for _ in 0..400 {
        it += 1;
        let mid = 0.5 * (lo + hi);
        let fm = f(mid).0;
        if fm.abs() <= tol || mid == lo || mid == hi {
            return Ok((mid, it));
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), it))
}

impl ExactSolution {
    /// State at similarity coordinate `xi = x/t`.
    pub fn sample(&self, xi: f64) -> EulerPrim {
        let g = self.eos.gamma;
        let pinf = self.eos.p_inf;
        let big_star = self.p_star + pinf;
        if xi <= self.u_star {
            let w = self.left;
            let big_l = w.p + pinf;
            let c = (g * big_l / w.rho).sqrt();
            match self.left_wave {
                WaveKind::Shock => {
                    let s = w.u - c * ((g + 1.0) / (2.0 * g) * big_star / big_l + (g - 1.0) / (2.0 * g)).sqrt();
                    if xi <= s {
                        w
                    } else {
                        EulerPrim::new(self.rho_star_l, self.u_star, self.p_star)
                    }
                }
                WaveKind::Rarefaction => {
                    let c_star = c * (big_star / big_l).powf((g - 1.0) / (2.0 * g));
                    if xi <= w.u - c {
                        w
                    } else if xi >= self.u_star - c_star {
                        EulerPrim::new(self.rho_star_l, self.u_star, self.p_star)
                    } else {
                        let u = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + xi);
                        let cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (w.u - xi));
                        fan_state(w.rho, big_l, c, u, cf, g, pinf)
                    }
                }
            }
        } else {
            let w = self.right;
            let big_r = w.p + pinf;
            let c = (g * big_r / w.rho).sqrt();
            match self.right_wave {
                WaveKind::Shock => {
                    let s = w.u + c * ((g + 1.0) / (2.0 * g) * big_star / big_r + (g - 1.0) / (2.0 * g)).sqrt();
                    if xi >= s {
                        w
                    } else {
                        EulerPrim::new(self.rho_star_r, self.u_star, self.p_star)
                    }
                }
                WaveKind::Rarefaction => {
                    let c_star = c * (big_star / big_r).powf((g - 1.0) / (2.0 * g));
                    if xi >= w.u + c {
                        w
                    } else if xi <= self.u_star + c_star {
                        EulerPrim::new(self.rho_star_r, self.u_star, self.p_star)
                    } else {
                        let u = 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + xi);
                        let cf = 2.0 / (g + 1.0) * (c - 0.5 * (g - 1.0) * (w.u - xi));
                        fan_state(w.rho, big_r, c, u, cf, g, pinf)
                    }
                }
            }
        }
    }

    /// Exact field at time `t` on the cell centres of `mesh`, with the
    /// initial discontinuity at `x0`.
    pub fn profile(&self, mesh: &Mesh1D, x0: f64, t: f64, field: Field) -> Vec<f64> {
        (0..mesh.n_cells)
            .map(|i| field.of(&self.sample((mesh.center(i) - x0) / t), &self.eos))
            .collect()
    }
}

fn fan_state(rho_k: f64, big_k: f64, c_k: f64, u: f64, c: f64, g: f64, pinf: f64) -> EulerPrim {
    let ratio = c / c_k;
    EulerPrim::new(
        rho_k * ratio.powf(2.0 / (g - 1.0)),
        u,
        big_k * ratio.powf(2.0 * g / (g - 1.0)) - pinf,
    )
}

/// `sum_i |q_i - q_exact(x_i)| dx` with the exact field sampled at cell centres.
pub fn l1_error(numerical: &[f64], field: Field, sol: &ExactSolution, mesh: &Mesh1D, x0: f64, t: f64) -> f64 {
    assert_eq!(numerical.len(), mesh.n_cells, "field length does not match the mesh");
    sol.profile(mesh, x0, t, field)
        .iter()
        .zip(numerical)
        .map(|(e, q)| (q - e).abs() * mesh.dx)
        .sum()
}
