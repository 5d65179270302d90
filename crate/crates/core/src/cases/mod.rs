//! Case catalog, configuration documents, snapshot tables and error
//! comparisons.

mod compare;
mod config;
mod output;

pub use compare::{compare, l1_distance, project, run_label, ConvergenceRow, ErrorRow, ErrorTable, Reference};
pub use config::{
    Case, CaseConfig, DragKind, EosSpec, ExplicitEos, ModelKind, ModelSection, Physics, RelaxSection, SolverKind,
    SolverSection, StateSpec,
};
pub use output::{
    emit, emit_csv, exact_table, plot_script, run_case, CaseRun, Manifest, SnapshotTable, EULER_COLUMNS,
    TWO_PHASE_COLUMNS,
};

use crate::error::{Error, Result};

/// Built-in case documents, in catalog order.
pub const CATALOG: [(&str, &str); 11] = [
    ("euler-contact-rest", include_str!("catalog/euler-contact-rest.toml")),
    (
        "euler-contact-transport",
        include_str!("catalog/euler-contact-transport.toml"),
    ),
    ("euler-shock-tube", include_str!("catalog/euler-shock-tube.toml")),
    (
        "euler-double-expansion",
        include_str!("catalog/euler-double-expansion.toml"),
    ),
    ("euler-double-shock", include_str!("catalog/euler-double-shock.toml")),
    (
        "water-nasg-transport",
        include_str!("catalog/water-nasg-transport.toml"),
    ),
    (
        "water-nasg-shock-tube",
        include_str!("catalog/water-nasg-shock-tube.toml"),
    ),
    ("tp-alpha-rest", include_str!("catalog/tp-alpha-rest.toml")),
    ("tp-alpha-transport", include_str!("catalog/tp-alpha-transport.toml")),
    ("tp-shock-tube", include_str!("catalog/tp-shock-tube.toml")),
    ("tp-shock-tube-long", include_str!("catalog/tp-shock-tube-long.toml")),
];

pub fn case_names() -> Vec<String> {
    CATALOG.iter().map(|(n, _)| n.to_string()).collect()
}

/// Source document of a built-in case.
pub fn builtin_source(name: &str) -> Result<&'static str> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::UnknownCase {
            name: name.to_string(),
            available: case_names(),
        })
}

pub fn builtin_case(name: &str) -> Result<Case> {
    CaseConfig::parse(builtin_source(name)?)
}

/// Built-in case with `key = value` overrides applied.
pub fn builtin_case_with(name: &str, overrides: &[(&str, &str)]) -> Result<Case> {
    let sets: Vec<(String, String)> = overrides.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    CaseConfig::parse_with_overrides(builtin_source(name)?, &sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twophase::TwoPhaseSolver;

    #[test]
    fn every_catalog_entry_parses_and_names_itself() {
        for (name, _) in CATALOG {
            let case = builtin_case(name).unwrap();
            assert_eq!(case.name(), name);
            assert!(!case.config.description.is_empty());
        }
    }

    #[test]
    fn contact_rest_entry() {
        let case = builtin_case("euler-contact-rest").unwrap();
        let Physics::Euler { left, right, .. } = case.physics else {
            panic!("euler case expected")
        };
        assert_eq!((left.u, right.u), (0.0, 0.0));
        assert_eq!(left.p, right.p);
        assert_ne!(left.rho, right.rho);
        assert_eq!(case.output_times, vec![6e-3]);
        assert_eq!(case.mesh.n_cells, 100);
        assert_eq!(case.scheme.cfl, 0.5);
    }

    #[test]
    fn two_phase_shock_tube_entry() {
        let case = builtin_case("tp-shock-tube").unwrap();
        let Physics::TwoPhase { eos, relax, solver, .. } = case.physics else {
            panic!("two-phase case expected")
        };
        assert_eq!(eos.phase1, crate::eos::EosParams::water_sg());
        assert_eq!(eos.phase2, crate::eos::EosParams::air());
        assert!(relax.pressure);
        assert_eq!(solver, TwoPhaseSolver::Rsir { beta: 1.0 });
    }

    #[test]
    fn unknown_case_lists_catalog() {
        let err = builtin_case("nope").unwrap_err();
        let msg = err.to_string();
        for (name, _) in CATALOG {
            assert!(msg.contains(name));
        }
    }
}
