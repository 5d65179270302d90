//! Shared fixtures for the benchmarks.

use rsir_core::cases::{builtin_case_with, Case};
use rsir_core::euler::EulerPrim;
use rsir_core::twophase::{TwoPhaseEos, TwoPhasePrim};
use rsir_core::EosParams;

/// Left/right states of a strong air shock tube.
pub fn euler_pair() -> (EosParams, EulerPrim, EulerPrim) {
    (
        EosParams::air(),
        EulerPrim::new(1.0, 0.0, 1.0e5),
        EulerPrim::new(0.125, 0.0, 1.0e4),
    )
}

/// The same pressure ratio in NASG water, which uses the covolume-aware reconstruction.
pub fn nasg_pair() -> (EosParams, EulerPrim, EulerPrim) {
    (
        EosParams::water_nasg(),
        EulerPrim::new(1050.0, 0.0, 1.0e9),
        EulerPrim::new(1000.0, 0.0, 1.0e5),
    )
}

/// Droplet-laden shock tube states with phase-1 slip.
pub fn two_phase_pair() -> (TwoPhaseEos, TwoPhasePrim, TwoPhasePrim) {
    let left = TwoPhasePrim {
        alpha1: 0.3,
        rho1: 1000.0,
        u1: 5.0,
        p1: 1.0e6,
        rho2: 10.0,
        u2: 20.0,
        p2: 1.0e6,
    };
    let right = TwoPhasePrim {
        alpha1: 0.1,
        rho1: 1000.0,
        u1: 0.0,
        p1: 1.0e5,
        rho2: 1.0,
        u2: 0.0,
        p2: 1.0e5,
    };
    (TwoPhaseEos::water_air(), left, right)
}

/// Catalog case with the solver and mesh size replaced.
pub fn case(name: &str, solver: &str, cells: usize) -> Case {
    builtin_case_with(name, &[("solver.kind", solver), ("cells", &cells.to_string())])
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}
