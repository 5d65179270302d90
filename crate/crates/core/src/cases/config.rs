//! Case configuration documents.
//!
//! A case is a TOML document with top-level run keys and the sections
//! `model`, `left`, `right`, `solver` and `relax`; dotted keys such as
//! `left.rho = 1.0` are equivalent to the table form.
//!
//! ```toml
//! end_time = 6e-3
//! [left]
//! rho = 1.0
//! u = 0.0
//! p = 1e5
//! [right]
//! rho = 0.125
//! u = 0.0
//! p = 1e5
//! ```

use serde::{Deserialize, Serialize};

use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::euler::{EulerPrim, EulerSolver};
use crate::fv::{Boundary, Limiter, Mesh1D, Scheme};
use crate::relax::{RelaxSettings, VelocityCoupling};
use crate::twophase::{TwoPhaseEos, TwoPhasePrim, TwoPhaseSolver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    #[default]
    Euler,
    TwoPhase,
}

/// Preset name or explicit constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EosSpec {
    Preset(String),
    Explicit(ExplicitEos),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitEos {
    pub gamma: f64,
    #[serde(default)]
    pub p_inf: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default = "one")]
    pub cv: f64,
}

fn one() -> f64 {
    1.0
}

impl EosSpec {
    pub fn resolve(&self) -> Result<EosParams> {
        let eos = match self {
            EosSpec::Preset(name) => EosParams::preset(name).ok_or_else(|| {
                Error::config(format!(
                    "unknown EOS preset `{name}` (known: {})",
                    EosParams::PRESETS.join(", ")
                ))
            })?,
            EosSpec::Explicit(e) => EosParams::nasg(e.gamma, e.p_inf, e.b).with_cv(e.cv),
        };
        eos.validate()?;
        Ok(eos)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    #[serde(default)]
    pub kind: ModelKind,
    /// Single-phase fluid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eos: Option<EosSpec>,
    /// Dispersed phase.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase1: Option<EosSpec>,
    /// Carrier phase.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase2: Option<EosSpec>,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            kind: ModelKind::Euler,
            eos: None,
            phase1: None,
            phase2: None,
        }
    }
}

/// Primitive state; `rho, u, p` for Euler, the phase-indexed keys for the
/// two-phase model.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Rusanov,
    Hll,
    Hllc,
    Linde,
    Rsir,
    RusanovBasic,
    RusanovLocal,
    RsirTp,
}

impl SolverKind {
    pub const ALL: [SolverKind; 8] = [
        SolverKind::Rusanov,
        SolverKind::Hll,
        SolverKind::Hllc,
        SolverKind::Linde,
        SolverKind::Rsir,
        SolverKind::RusanovBasic,
        SolverKind::RusanovLocal,
        SolverKind::RsirTp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Rusanov => "rusanov",
            SolverKind::Hll => "hll",
            SolverKind::Hllc => "hllc",
            SolverKind::Linde => "linde",
            SolverKind::Rsir => "rsir",
            SolverKind::RusanovBasic => "rusanov-basic",
            SolverKind::RusanovLocal => "rusanov-local",
            SolverKind::RsirTp => "rsir-tp",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// `hll` serves both models; `rsir` is accepted for two-phase runs as an
    /// alias of `rsir-tp`.
    fn supports(self, model: ModelKind) -> bool {
        match model {
            ModelKind::Euler => matches!(
                self,
                SolverKind::Rusanov | SolverKind::Hll | SolverKind::Hllc | SolverKind::Linde | SolverKind::Rsir
            ),
            ModelKind::TwoPhase => matches!(
                self,
                SolverKind::Hll
                    | SolverKind::Rsir
                    | SolverKind::RusanovBasic
                    | SolverKind::RusanovLocal
                    | SolverKind::RsirTp
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<SolverKind>,
    #[serde(default = "one")]
    pub beta: f64,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    #[serde(default)]
    pub limiter: Limiter,
    #[serde(default)]
    pub boundary: Boundary,
}

fn default_cfl() -> f64 {
    0.5
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            kind: None,
            beta: 1.0,
            cfl: 0.5,
            limiter: Limiter::Minmod,
            boundary: Boundary::Transmissive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DragKind {
    #[default]
    None,
    Constant,
    CliftGauvin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelaxSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pressure: Option<bool>,
    #[serde(default)]
    pub drag: DragKind,
    /// Exchange coefficient for `drag = "constant"`, kg/(m^3 s).
    #[serde(default)]
    pub lambda: f64,
    /// Particle radius, m.
    #[serde(default = "default_radius")]
    pub radius: f64,
    /// Carrier dynamic viscosity, Pa s.
    #[serde(default = "default_mu2")]
    pub mu2: f64,
}

fn default_radius() -> f64 {
    5.0e-4
}

fn default_mu2() -> f64 {
    18.0e-6
}

impl Default for RelaxSection {
    fn default() -> Self {
        Self {
            pressure: None,
            drag: DragKind::None,
            lambda: 0.0,
            radius: default_radius(),
            mu2: default_mu2(),
        }
    }
}

/// Raw case document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default = "zero")]
    pub x_min: f64,
    #[serde(default = "one")]
    pub x_max: f64,
    /// Initial discontinuity position; defaults to mid-domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default = "default_cells")]
    pub cells: usize,
    pub end_time: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub output_times: Vec<f64>,
    #[serde(default)]
    pub model: ModelSection,
    pub left: StateSpec,
    pub right: StateSpec,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub relax: RelaxSection,
}

fn default_name() -> String {
    "case".into()
}

fn zero() -> f64 {
    0.0
}

fn default_cells() -> usize {
    100
}

/// Fully resolved physics of a case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Physics {
    Euler {
        eos: EosParams,
        solver: EulerSolver,
        left: EulerPrim,
        right: EulerPrim,
    },
    TwoPhase {
        eos: TwoPhaseEos,
        solver: TwoPhaseSolver,
        relax: RelaxSettings,
        left: TwoPhasePrim,
        right: TwoPhasePrim,
    },
}

/// Validated case: everything a run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub config: CaseConfig,
    pub mesh: Mesh1D,
    pub x0: f64,
    pub scheme: Scheme,
    pub output_times: Vec<f64>,
    pub physics: Physics,
}

impl Case {
    pub fn name(&self) -> &str {
        &self.config.name
    }

    pub fn solver_name(&self) -> &'static str {
        match &self.physics {
            Physics::Euler { solver, .. } => solver.name(),
            Physics::TwoPhase { solver, .. } => solver.name(),
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match self.physics {
            Physics::Euler {
                solver: EulerSolver::Rsir { beta } | EulerSolver::Linde { beta },
                ..
            } => Some(beta),
            Physics::TwoPhase {
                solver: TwoPhaseSolver::Rsir { beta },
                ..
            } => Some(beta),
            _ => None,
        }
    }
}

/// 1-based line of a byte offset.
fn line_at(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

/// First line assigning `key` (bare or dotted under `section`).
fn line_of_key(text: &str, section: Option<&str>, key: &str) -> Option<usize> {
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('[') {
            current = Some(rest.trim_end_matches(']').trim().to_string());
            continue;
        }
        let Some((lhs, _)) = line.split_once('=') else { continue };
        let lhs: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
        let full = match &current {
            Some(s) => format!("{s}.{lhs}"),
            None => lhs,
        };
        let wanted = match section {
            Some(s) => format!("{s}.{key}"),
            None => key.to_string(),
        };
        if full == wanted {
            return Some(i + 1);
        }
    }
    None
}

impl CaseConfig {
    /// Parses and validates a case document.
    pub fn parse(text: &str) -> Result<Case> {
        let cfg: CaseConfig = toml::from_str(text).map_err(|e| Error::Config {
            line: e.span().map(|s| line_at(text, s.start)),
            message: e.message().trim().to_string(),
        })?;
        cfg.validate().map_err(|e| match e {
            Error::Config { line: None, message } => {
                let line = located_key(&message).and_then(|(s, k)| line_of_key(text, s, k));
                Error::Config { line, message }
            }
            other => other,
        })
    }

    /// Parses a document after applying `key = value` overrides, where keys
    /// may be dotted (`solver.beta`) and values are TOML literals; bare words
    /// are taken as strings.
    pub fn parse_with_overrides(text: &str, overrides: &[(String, String)]) -> Result<Case> {
        if overrides.is_empty() {
            return Self::parse(text);
        }
        let mut doc: toml::Table = toml::from_str(text).map_err(|e| Error::Config {
            line: e.span().map(|s| line_at(text, s.start)),
            message: e.message().trim().to_string(),
        })?;
        for (key, value) in overrides {
            set_dotted(&mut doc, key, parse_literal(value))?;
        }
        let text = toml::to_string(&doc).map_err(|e| Error::config(e.to_string()))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("case configs always serialize")
    }

    pub fn validate(&self) -> Result<Case> {
        let mesh = Mesh1D::new(self.x_min, self.x_max, self.cells)?;
        let x0 = self.x0.unwrap_or(0.5 * (self.x_min + self.x_max));
        if !(x0 > self.x_min && x0 < self.x_max) {
            return Err(Error::config(format!("x0 = {x0} lies outside the domain")));
        }
        if !(self.end_time > 0.0) || !self.end_time.is_finite() {
            return Err(Error::config(format!(
                "end_time must be positive, got {}",
                self.end_time
            )));
        }
        let mut output_times = self.output_times.clone();
        if output_times.is_empty() {
            output_times.push(self.end_time);
        }
        if output_times.iter().any(|t| !(*t > 0.0 && *t <= self.end_time)) {
            return Err(Error::config("output_times must lie in (0, end_time]"));
        }
        output_times.sort_by(f64::total_cmp);
        output_times.dedup();
        if *output_times.last().unwrap() < self.end_time {
            output_times.push(self.end_time);
        }

        let s = &self.solver;
        if !(0.0..=1.0).contains(&s.beta) {
            return Err(Error::config(format!(
                "solver.beta: beta must lie in [0,1], got {}",
                s.beta
            )));
        }
        if !(s.cfl > 0.0 && s.cfl <= 1.0) {
            return Err(Error::config(format!(
                "solver.cfl: CFL must lie in (0, 1], got {}",
                s.cfl
            )));
        }
        let scheme = Scheme {
            cfl: s.cfl,
            limiter: s.limiter,
            boundary: s.boundary,
        };

        let model = self.model.kind;
        let kind = s.kind.unwrap_or(match model {
            ModelKind::Euler => SolverKind::Rsir,
            ModelKind::TwoPhase => SolverKind::RsirTp,
        });
        if !kind.supports(model) {
            return Err(Error::config(format!(
                "solver.kind: solver `{}` is not available for the {} model",
                kind.name(),
                match model {
                    ModelKind::Euler => "euler",
                    ModelKind::TwoPhase => "two-phase",
                }
            )));
        }

        let physics = match model {
            ModelKind::Euler => {
                if self.model.phase1.is_some() || self.model.phase2.is_some() {
                    return Err(Error::config(
                        "model.phase1: phase EOS keys need model.kind = \"two-phase\"",
                    ));
                }
                if self.relax != RelaxSection::default() {
                    return Err(Error::config(
                        "relax: relaxation settings need model.kind = \"two-phase\"",
                    ));
                }
                let eos = self
                    .model
                    .eos
                    .clone()
                    .unwrap_or(EosSpec::Preset("air-ideal".into()))
                    .resolve()?;
                let solver = match kind {
                    SolverKind::Rusanov => EulerSolver::Rusanov,
                    SolverKind::Hll => EulerSolver::Hll,
                    SolverKind::Hllc => EulerSolver::Hllc,
                    SolverKind::Linde => EulerSolver::Linde { beta: s.beta },
                    _ => EulerSolver::Rsir { beta: s.beta },
                };
                let left = euler_state(&self.left, "left", &eos)?;
                let right = euler_state(&self.right, "right", &eos)?;
                Physics::Euler {
                    eos,
                    solver,
                    left,
                    right,
                }
            }
            ModelKind::TwoPhase => {
                if self.model.eos.is_some() {
                    return Err(Error::config(
                        "model.eos: two-phase cases set model.phase1 and model.phase2",
                    ));
                }
                let eos = TwoPhaseEos::new(
                    self.model
                        .phase1
                        .clone()
                        .unwrap_or(EosSpec::Preset("water-sg".into()))
                        .resolve()?,
                    self.model
                        .phase2
                        .clone()
                        .unwrap_or(EosSpec::Preset("air-ideal".into()))
                        .resolve()?,
                );
                eos.validate()?;
                let solver = match kind {
                    SolverKind::RusanovBasic => TwoPhaseSolver::RusanovBasic,
                    SolverKind::RusanovLocal => TwoPhaseSolver::RusanovLocal,
                    SolverKind::Hll => TwoPhaseSolver::Hll,
                    _ => TwoPhaseSolver::Rsir { beta: s.beta },
                };
                let r = &self.relax;
                let velocity = match r.drag {
                    DragKind::None => VelocityCoupling::None,
                    DragKind::Constant => {
                        if !(r.lambda >= 0.0) {
                            return Err(Error::config(format!(
                                "relax.lambda must be non-negative, got {}",
                                r.lambda
                            )));
                        }
                        VelocityCoupling::Constant { lambda: r.lambda }
                    }
                    DragKind::CliftGauvin => {
                        if !(r.radius > 0.0 && r.mu2 > 0.0) {
                            return Err(Error::config(
                                "relax.radius: particle radius and viscosity must be positive",
                            ));
                        }
                        VelocityCoupling::CliftGauvin {
                            radius: r.radius,
                            mu2: r.mu2,
                        }
                    }
                };
                let relax = RelaxSettings {
                    pressure: r.pressure.unwrap_or(true),
                    velocity,
                };
                let left = tp_state(&self.left, "left", &eos)?;
                let right = tp_state(&self.right, "right", &eos)?;
                Physics::TwoPhase {
                    eos,
                    solver,
                    relax,
                    left,
                    right,
                }
            }
        };
        Ok(Case {
            config: self.clone(),
            mesh,
            x0,
            scheme,
            output_times,
            physics,
        })
    }
}

/// Recovers `(section, key)` from messages of the form `section.key: ...`.
fn located_key(message: &str) -> Option<(Option<&str>, &str)> {
    let head = message.split(':').next()?;
    if head.contains(' ') {
        return None;
    }
    Some(match head.split_once('.') {
        Some((s, k)) => (Some(s), k),
        None => (None, head),
    })
}

fn require(v: Option<f64>, side: &str, key: &str) -> Result<f64> {
    v.ok_or_else(|| Error::config(format!("{side}.{key}: missing value")))
}

fn euler_state(s: &StateSpec, side: &str, eos: &EosParams) -> Result<EulerPrim> {
    if s.alpha1
        .or(s.rho1)
        .or(s.u1)
        .or(s.p1)
        .or(s.rho2)
        .or(s.u2)
        .or(s.p2)
        .is_some()
    {
        return Err(Error::config(format!(
            "{side}: phase-indexed keys need model.kind = \"two-phase\""
        )));
    }
    let w = EulerPrim::new(
        require(s.rho, side, "rho")?,
        require(s.u, side, "u")?,
        require(s.p, side, "p")?,
    );
    w.check(eos).map_err(|e| Error::config(format!("{side}.rho: {e}")))?;
    Ok(w)
}

fn tp_state(s: &StateSpec, side: &str, eos: &TwoPhaseEos) -> Result<TwoPhasePrim> {
    if s.rho.is_some() {
        return Err(Error::config(format!("{side}.rho: two-phase states use rho1 and rho2")));
    }
    // `u` and `p` set both phases unless the phase keys are given
    let w = TwoPhasePrim {
        alpha1: require(s.alpha1, side, "alpha1")?,
        rho1: require(s.rho1, side, "rho1")?,
        u1: require(s.u1.or(s.u), side, "u1")?,
        p1: require(s.p1.or(s.p), side, "p1")?,
        rho2: require(s.rho2, side, "rho2")?,
        u2: require(s.u2.or(s.u), side, "u2")?,
        p2: require(s.p2.or(s.p), side, "p2")?,
    };
    w.check(eos).map_err(|e| Error::config(format!("{side}.alpha1: {e}")))?;
    Ok(w)
}

fn parse_literal(value: &str) -> toml::Value {
    let doc = format!("v = {value}");
    toml::from_str::<toml::Table>(&doc)
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(value.to_string()))
}

fn set_dotted(doc: &mut toml::Table, key: &str, value: toml::Value) -> Result<()> {
    let parts: Vec<&str> = key.split('.').collect();
    let (last, path) = parts.split_last().expect("split yields at least one part");
    let mut table = doc;
    for p in path {
        let entry = table
            .entry(p.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry
            .as_table_mut()
            .ok_or_else(|| Error::config(format!("cannot set `{key}`: `{p}` is not a section")))?;
    }
    table.insert(last.to_string(), value);
    Ok(())
}
