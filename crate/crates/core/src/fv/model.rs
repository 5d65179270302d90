use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::euler::{cons_from_prim, flux_of, hll_flux, prim_from_cons, EulerCons, EulerPrim, EulerSolver};
use crate::relax::{pressure_relax_stiff, RelaxSettings};
use crate::twophase::{
    h_terms, local_flux_of, tp_cons_from_prim, tp_prim_from_cons, TwoPhaseCons, TwoPhaseEos, TwoPhaseFace,
    TwoPhasePrim, TwoPhaseSolver,
};

/// Interface data handed from the flux kernel to the cell update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Face<const N: usize> {
    pub flux: [f64; N],
    /// Face volume fraction (two-phase only).
    pub alpha: f64,
    /// Face value of the `(alpha u)1` flux (two-phase only).
    pub phi: f64,
    pub fallback: bool,
}

/// A conservation law the driver can integrate. Primitive and conserved
/// vectors have the same length `N`.
pub trait Model<const N: usize> {
    /// Conserved quantities audited by the driver, as sums of slots.
    const AUDIT: &'static [(&'static str, &'static [usize])];

    /// Primitive vector and whether a volume fraction had to be clamped.
    fn prim_from_cons(&self, u: &[f64; N]) -> Result<([f64; N], bool)>;
    fn cons_from_prim(&self, w: &[f64; N]) -> Result<[f64; N]>;
    fn max_speed(&self, w: &[f64; N]) -> Result<f64>;
    /// Cell-local flux used by the half-step predictor; `w_cell` is the
    /// cell-average primitive state.
    fn predictor_flux(&self, w: &[f64; N], u: &[f64; N], w_cell: &[f64; N]) -> [f64; N];
    fn face(&self, wl: &[f64; N], wr: &[f64; N]) -> Result<Face<N>>;
    /// Rate of change from non-conservative products, if the model has any.
    fn cell_terms(&self, left: &Face<N>, right: &Face<N>, w_cell: &[f64; N], dx: f64) -> Option<[f64; N]>;
    /// Mirror image of a primitive state for reflective walls.
    fn reflect(&self, w: &[f64; N]) -> [f64; N];
    /// Split source operators applied after the hyperbolic update.
    fn sources(&self, u: &[f64; N], dt: f64) -> Result<[f64; N]>;
}

/// Single-phase Euler equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerModel {
    pub eos: EosParams,
    pub solver: EulerSolver,
}

impl Model<3> for EulerModel {
    const AUDIT: &'static [(&'static str, &'static [usize])] = &[("mass", &[0]), ("momentum", &[1]), ("energy", &[2])];

    fn prim_from_cons(&self, u: &[f64; 3]) -> Result<([f64; 3], bool)> {
        Ok((prim_from_cons(&EulerCons::from_array(*u), &self.eos)?.to_array(), false))
    }

    fn cons_from_prim(&self, w: &[f64; 3]) -> Result<[f64; 3]> {
        Ok(cons_from_prim(&EulerPrim::from_array(*w), &self.eos)?.to_array())
    }

    fn max_speed(&self, w: &[f64; 3]) -> Result<f64> {
        let w = EulerPrim::from_array(*w);
        Ok(w.u.abs() + w.sound_speed(&self.eos)?)
    }

    fn predictor_flux(&self, w: &[f64; 3], u: &[f64; 3], _: &[f64; 3]) -> [f64; 3] {
        flux_of(&EulerPrim::from_array(*w), &EulerCons::from_array(*u)).to_array()
    }

    fn face(&self, wl: &[f64; 3], wr: &[f64; 3]) -> Result<Face<3>> {
        let (l, r) = (EulerPrim::from_array(*wl), EulerPrim::from_array(*wr));
        let (flux, fallback) = match self.solver.flux(&l, &r, &self.eos) {
            Ok(f) => (f, false),
            Err(e @ (Error::Positivity(_) | Error::CovolumeSaturation { .. }))
                if matches!(self.solver, EulerSolver::Rsir { .. } | EulerSolver::Linde { .. }) =>
            {
                log::debug!("{} reconstruction rejected ({e}); using HLL", self.solver.name());
                (hll_flux(&l, &r, &self.eos)?, true)
            }
            Err(e) => return Err(e),
        };
        Ok(Face {
            flux: flux.to_array(),
            alpha: 0.0,
            phi: 0.0,
            fallback,
        })
    }

    fn cell_terms(&self, _: &Face<3>, _: &Face<3>, _: &[f64; 3], _: f64) -> Option<[f64; 3]> {
        None
    }

    fn reflect(&self, w: &[f64; 3]) -> [f64; 3] {
        [w[0], -w[1], w[2]]
    }

    fn sources(&self, u: &[f64; 3], _: f64) -> Result<[f64; 3]> {
        Ok(*u)
    }
}

/// Two-phase model with its interface solver and source settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhaseModel {
    pub eos: TwoPhaseEos,
    pub solver: TwoPhaseSolver,
    pub relax: RelaxSettings,
}

fn tp_face(f: &Face<7>) -> TwoPhaseFace {
    TwoPhaseFace {
        flux: f.flux,
        alpha_face: f.alpha,
        phi_alpha_face: f.phi,
        fallback: f.fallback,
    }
}

impl Model<7> for TwoPhaseModel {
    const AUDIT: &'static [(&'static str, &'static [usize])] = &[
        ("phase-1 mass", &[1]),
        ("phase-2 mass", &[4]),
        ("mixture momentum", &[2, 5]),
        ("mixture energy", &[3, 6]),
    ];

    fn prim_from_cons(&self, u: &[f64; 7]) -> Result<([f64; 7], bool)> {
        let (w, clamped) = tp_prim_from_cons(&TwoPhaseCons(*u), &self.eos)?;
        Ok((w.to_array(), clamped))
    }

    fn cons_from_prim(&self, w: &[f64; 7]) -> Result<[f64; 7]> {
        Ok(tp_cons_from_prim(&TwoPhasePrim::from_array(*w), &self.eos)?.0)
    }

    fn max_speed(&self, w: &[f64; 7]) -> Result<f64> {
        TwoPhasePrim::from_array(*w).max_speed(&self.eos)
    }

    /// Locally conservative flux with the interfacial pressure frozen at the
    /// cell's phase-1 pressure, so the predictor carries the non-conservative
    /// products of a uniform-pressure cell exactly.
    fn predictor_flux(&self, w: &[f64; 7], u: &[f64; 7], w_cell: &[f64; 7]) -> [f64; 7] {
        let phi = local_flux_of(&TwoPhasePrim::from_array(*w), &TwoPhaseCons(*u), w_cell[3]);
        [phi[0], phi[1], phi[2], phi[3], phi[5], phi[6], phi[7]]
    }

    fn face(&self, wl: &[f64; 7], wr: &[f64; 7]) -> Result<Face<7>> {
        let f = self.solver.face(
            &TwoPhasePrim::from_array(*wl),
            &TwoPhasePrim::from_array(*wr),
            &self.eos,
        )?;
        Ok(Face {
            flux: f.flux,
            alpha: f.alpha_face,
            phi: f.phi_alpha_face,
            fallback: f.fallback,
        })
    }

    fn cell_terms(&self, left: &Face<7>, right: &Face<7>, w_cell: &[f64; 7], dx: f64) -> Option<[f64; 7]> {
        Some(h_terms(&tp_face(left), &tp_face(right), w_cell[3], dx))
    }

    fn reflect(&self, w: &[f64; 7]) -> [f64; 7] {
        [w[0], w[1], -w[2], w[3], w[4], -w[5], w[6]]
    }

    fn sources(&self, u: &[f64; 7], dt: f64) -> Result<[f64; 7]> {
        let mut s = self.relax.velocity.apply(&TwoPhaseCons(*u), dt);
        if self.relax.pressure {
            s = pressure_relax_stiff(&s, &self.eos)?.0;
        }
        Ok(s.0)
    }
}
