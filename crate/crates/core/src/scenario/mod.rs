//! Scenario files, runs and reports.
//!
//! A scenario is a sectioned `key = value` file (see [`config`]):
//!
//! ```text
//! [scenario]
//! name = spreading
//! kind = propagate          # verify | propagate | frame
//! seed = 42
//!
//! [constants]
//! units = natural           # natural | si | custom (custom needs hbar and c)
//!
//! [grid]
//! n = 1024
//! x_min = -40
//! x_max = 40
//!
//! [particle]
//! mass = 1
//!
//! [initial]
//! center = 0
//! width = 1
//! momentum = 0
//!
//! [propagator]
//! kind = schrodinger        # schrodinger | relativistic | dirac | proper_time
//! dt = 0.005
//! steps = 1000
//!
//! [output]
//! every = 100
//! ```
//!
//! Frame scenarios use `[trajectory]`, `[quadrature]` and `[output] times`
//! or `samples`; verify scenarios accept an optional `[verify]` section.

pub mod config;
pub mod report;
mod run;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::frames::{
    Interpolation, Quadrature, QuadratureOptions, Trajectory, UniformAcceleration, UniformVelocity,
    VelocityProfile,
};
use crate::grid::{PhysicalConstants, SpatialGrid};
use crate::operators::ParticleSpec;
use crate::propagators::PropagatorKind;

pub use config::{Config, ConfigError};
pub use report::{
    emit, parse_json, render, CheckResult, Comparison, OutputFormat, RunReport, SampleTable, Timing,
};
pub use run::{run, RunError};
pub use verify::VerifyFamily;

/// `ħ` in J·s.
pub const SI_HBAR: f64 = 1.054_571_817e-34;
/// `c` in m/s.
pub const SI_C: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Verify,
    Propagate,
    Frame,
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Verify => "verify",
            ScenarioKind::Propagate => "propagate",
            ScenarioKind::Frame => "frame",
        }
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "verify" => Ok(ScenarioKind::Verify),
            "propagate" => Ok(ScenarioKind::Propagate),
            "frame" => Ok(ScenarioKind::Frame),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Natural,
    Si,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySettings {
    pub families: Vec<VerifyFamily>,
    /// Grid size of the randomized commutator family.
    pub commutator_n: usize,
    pub commutator_states: usize,
    /// Grid size of the dense-matrix commutator oracle.
    pub oracle_n: usize,
    pub squaring_points: usize,
    pub alpha_values: usize,
    pub spectrum_n: usize,
    pub kernel_nodes: usize,
    pub propagator_steps: usize,
    pub frame_trajectories: usize,
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self {
            families: VerifyFamily::ALL.to_vec(),
            commutator_n: 512,
            commutator_states: 20,
            oracle_n: 64,
            squaring_points: 100,
            alpha_values: 10,
            spectrum_n: 512,
            kernel_nodes: 2001,
            propagator_steps: 1000,
            frame_trajectories: 20,
        }
    }
}

/// Position-space Gaussian initial state; `width` is the density standard
/// deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialGaussian {
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagateSettings {
    pub grid: SpatialGrid,
    pub particle: ParticleSpec,
    pub kind: PropagatorKind,
    pub dt: f64,
    pub steps: usize,
    /// Sample every this many steps (the initial and final states are
    /// always sampled).
    pub every: usize,
    pub initial: InitialGaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectorySource {
    Sampled {
        path: PathBuf,
        trajectory: Trajectory,
    },
    UniformVelocity {
        velocity: f64,
        profile: UniformVelocity,
    },
    UniformAcceleration {
        acceleration: f64,
        profile: UniformAcceleration,
    },
}

impl TrajectorySource {
    pub fn name(&self) -> &'static str {
        match self {
            TrajectorySource::Sampled { .. } => "file",
            TrajectorySource::UniformVelocity { .. } => "uniform_velocity",
            TrajectorySource::UniformAcceleration { .. } => "uniform_acceleration",
        }
    }
}

impl VelocityProfile for TrajectorySource {
    fn velocity(&self, t: f64) -> crate::Result<f64> {
        match self {
            TrajectorySource::Sampled { trajectory, .. } => trajectory.velocity(t),
            TrajectorySource::UniformVelocity { profile, .. } => profile.velocity(t),
            TrajectorySource::UniformAcceleration { profile, .. } => profile.velocity(t),
        }
    }

    fn horizon(&self) -> f64 {
        match self {
            TrajectorySource::Sampled { trajectory, .. } => trajectory.horizon(),
            TrajectorySource::UniformVelocity { profile, .. } => profile.horizon(),
            TrajectorySource::UniformAcceleration { profile, .. } => profile.horizon(),
        }
    }

    fn speed_of_light(&self) -> f64 {
        match self {
            TrajectorySource::Sampled { trajectory, .. } => trajectory.speed_of_light(),
            TrajectorySource::UniformVelocity { profile, .. } => profile.speed_of_light(),
            TrajectorySource::UniformAcceleration { profile, .. } => profile.speed_of_light(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameSettings {
    pub particle: ParticleSpec,
    pub trajectory: TrajectorySource,
    pub quadrature: QuadratureOptions,
    pub times: Vec<f64>,
    /// Tolerance for the closed-form proper-time comparison.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSetup {
    Verify(VerifySettings),
    Propagate(PropagateSettings),
    Frame(FrameSettings),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub units: Units,
    pub constants: PhysicalConstants,
    pub setup: ScenarioSetup,
    /// Every key in the file as `section.key`, echoed into reports.
    pub settings: BTreeMap<String, String>,
}

impl Scenario {
    pub fn kind(&self) -> ScenarioKind {
        match self.setup {
            ScenarioSetup::Verify(_) => ScenarioKind::Verify,
            ScenarioSetup::Propagate(_) => ScenarioKind::Propagate,
            ScenarioSetup::Frame(_) => ScenarioKind::Frame,
        }
    }

    /// Parses scenario text; relative trajectory paths resolve against
    /// `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let cfg = Config::parse(text)?;
        cfg.check_known(KNOWN_KEYS)?;
        Parser {
            cfg: &cfg,
            base_dir,
        }
        .scenario()
    }
}

#[derive(Debug)]
pub enum ScenarioError {
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Config {
        path: PathBuf,
        source: ConfigError,
    },
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            ScenarioError::Config { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for ScenarioError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ScenarioError::Io { source, .. } => Some(source),
            ScenarioError::Config { source, .. } => Some(source),
        }
    }
}

pub fn parse_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Scenario::parse(&text, base).map_err(|source| ScenarioError::Config {
        path: path.to_path_buf(),
        source,
    })
}

const KNOWN_KEYS: &[(&str, &[&str])] = &[
    ("scenario", &["name", "kind", "seed"]),
    ("constants", &["units", "hbar", "c"]),
    ("grid", &["n", "x_min", "x_max"]),
    ("particle", &["mass"]),
    ("initial", &["center", "width", "momentum"]),
    ("propagator", &["kind", "dt", "steps"]),
    ("output", &["every", "times", "samples"]),
    (
        "trajectory",
        &[
            "source",
            "path",
            "interpolation",
            "velocity",
            "acceleration",
            "horizon",
        ],
    ),
    ("quadrature", &["rule", "panels", "tolerance"]),
    (
        "verify",
        &[
            "families",
            "commutator_n",
            "commutator_states",
            "oracle_n",
            "squaring_points",
            "alpha_values",
            "spectrum_n",
            "kernel_nodes",
            "propagator_steps",
            "frame_trajectories",
        ],
    ),
];

/// Sections each kind may use, beyond `[scenario]` and `[constants]`.
fn allowed_sections(kind: ScenarioKind) -> &'static [&'static str] {
    match kind {
        ScenarioKind::Verify => &["verify"],
        ScenarioKind::Propagate => &["grid", "particle", "initial", "propagator", "output"],
        ScenarioKind::Frame => &["particle", "trajectory", "quadrature", "output"],
    }
}

struct Parser<'a> {
    cfg: &'a Config,
    base_dir: &'a Path,
}

impl Parser<'_> {
    fn err(&self, section: &str, key: &str, message: impl Into<String>) -> ConfigError {
        let line = self
            .cfg
            .line_of(section, key)
            .or_else(|| self.cfg.section_line(section));
        ConfigError::new(line, format!("{section}.{key}"), message)
    }

    fn core_err(&self, section: &str, key: &str, e: Error) -> ConfigError {
        self.err(section, key, e.to_string())
    }

    fn positive(&self, section: &str, key: &str, default: Option<f64>) -> Result<f64, ConfigError> {
        let v = match default {
            Some(d) => self.cfg.get_or(section, key, d)?,
            None => self.cfg.require(section, key)?,
        };
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(self.err(
                section,
                key,
                format!("must be positive and finite, got {v}"),
            ))
        }
    }

    fn finite(&self, section: &str, key: &str, default: f64) -> Result<f64, ConfigError> {
        let v: f64 = self.cfg.get_or(section, key, default)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.err(section, key, "must be finite"))
        }
    }

    fn count(
        &self,
        section: &str,
        key: &str,
        default: usize,
        min: usize,
    ) -> Result<usize, ConfigError> {
        let v: usize = self.cfg.get_or(section, key, default)?;
        if v >= min {
            Ok(v)
        } else {
            Err(self.err(section, key, format!("must be at least {min}, got {v}")))
        }
    }

    fn scenario(&self) -> Result<Scenario, ConfigError> {
        if !self.cfg.has_section("scenario") {
            return Err(ConfigError::new(
                None,
                "[scenario]",
                "missing required section",
            ));
        }
        let name: String = self.cfg.require("scenario", "name")?;
        if !name
            .chars()
            .all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-' || ch == '.')
        {
            return Err(self.err(
                "scenario",
                "name",
                "must be an identifier (letters, digits, '_', '-', '.')",
            ));
        }
        let kind_text: String = self.cfg.require("scenario", "kind")?;
        let kind: ScenarioKind = kind_text.parse().map_err(|_| {
            self.err(
                "scenario",
                "kind",
                format!("unknown kind {kind_text:?} (expected verify, propagate or frame)"),
            )
        })?;
        let seed: u64 = self.cfg.get_or("scenario", "seed", 0)?;

        let allowed = allowed_sections(kind);
        for section in self.cfg.sections() {
            if section != "scenario" && section != "constants" && !allowed.contains(&section) {
                return Err(ConfigError::new(
                    self.cfg.section_line(section),
                    format!("[{section}]"),
                    format!("section not used by {} scenarios", kind.name()),
                ));
            }
        }

        let (units, constants) = self.constants()?;
        if kind == ScenarioKind::Verify && units != Units::Natural {
            return Err(self.err(
                "constants",
                "units",
                "verification suites are defined in natural units",
            ));
        }
        let setup = match kind {
            ScenarioKind::Verify => ScenarioSetup::Verify(self.verify()?),
            ScenarioKind::Propagate => ScenarioSetup::Propagate(self.propagate(constants)?),
            ScenarioKind::Frame => ScenarioSetup::Frame(self.frame(constants)?),
        };
        Ok(Scenario {
            name,
            seed,
            units,
            constants,
            setup,
            settings: self.cfg.flatten(),
        })
    }

    fn constants(&self) -> Result<(Units, PhysicalConstants), ConfigError> {
        let units_text: String = self
            .cfg
            .get_or("constants", "units", "natural".to_string())?;
        let hbar: Option<f64> = self.cfg.get("constants", "hbar")?;
        let c: Option<f64> = self.cfg.get("constants", "c")?;
        let (units, fixed) = match units_text.as_str() {
            "natural" => (Units::Natural, Some((1.0, 1.0))),
            "si" => (Units::Si, Some((SI_HBAR, SI_C))),
            "custom" => (Units::Custom, None),
            other => {
                return Err(self.err(
                    "constants",
                    "units",
                    format!("unknown units {other:?} (expected natural, si or custom)"),
                ))
            }
        };
        let (hbar, c) = match fixed {
            Some((h0, c0)) => {
                if let Some(h) = hbar.filter(|&h| h != h0) {
                    return Err(self.err(
                        "constants",
                        "hbar",
                        format!("{h} contradicts units = {units_text} (hbar = {h0})"),
                    ));
                }
                if let Some(cv) = c.filter(|&cv| cv != c0) {
                    return Err(self.err(
                        "constants",
                        "c",
                        format!("{cv} contradicts units = {units_text} (c = {c0})"),
                    ));
                }
                (h0, c0)
            }
            None => (
                self.cfg.require("constants", "hbar")?,
                self.cfg.require("constants", "c")?,
            ),
        };
        let constants = PhysicalConstants::new(hbar, c).map_err(|e| match e {
            Error::BadConstant { name, .. } => self.core_err("constants", name, e),
            other => self.core_err("constants", "units", other),
        })?;
        Ok((units, constants))
    }

    fn particle(&self, constants: PhysicalConstants) -> Result<ParticleSpec, ConfigError> {
        let mass: f64 = self.cfg.require("particle", "mass")?;
        ParticleSpec::new(mass, constants).map_err(|e| self.core_err("particle", "mass", e))
    }

    fn verify(&self) -> Result<VerifySettings, ConfigError> {
        let d = VerifySettings::default();
        let families = match self.cfg.get_list::<String>("verify", "families")? {
            None => d.families,
            Some(names) => {
                let mut out = Vec::new();
                for name in names {
                    let fam = VerifyFamily::from_name(&name).ok_or_else(|| {
                        self.err("verify", "families", format!("unknown family {name:?}"))
                    })?;
                    if !out.contains(&fam) {
                        out.push(fam);
                    }
                }
                if out.is_empty() {
                    return Err(self.err("verify", "families", "empty family list"));
                }
                out
            }
        };
        let commutator_n = self.count("verify", "commutator_n", d.commutator_n, 64)?;
        let oracle_n = self.count("verify", "oracle_n", d.oracle_n, 16)?;
        let spectrum_n = self.count("verify", "spectrum_n", d.spectrum_n, 8)?;
        for (key, n) in [
            ("commutator_n", commutator_n),
            ("oracle_n", oracle_n),
            ("spectrum_n", spectrum_n),
        ] {
            if !n.is_power_of_two() {
                return Err(self.err(
                    "verify",
                    key,
                    format!("grid size {n} is not a power of two"),
                ));
            }
        }
        if oracle_n > 256 {
            return Err(self.err("verify", "oracle_n", "dense oracle limited to n <= 256"));
        }
        Ok(VerifySettings {
            families,
            commutator_n,
            commutator_states: self.count("verify", "commutator_states", d.commutator_states, 1)?,
            oracle_n,
            squaring_points: self.count("verify", "squaring_points", d.squaring_points, 1)?,
            alpha_values: self.count("verify", "alpha_values", d.alpha_values, 1)?,
            spectrum_n,
            kernel_nodes: self.count("verify", "kernel_nodes", d.kernel_nodes, 16)?,
            propagator_steps: self.count("verify", "propagator_steps", d.propagator_steps, 1)?,
            frame_trajectories: self.count(
                "verify",
                "frame_trajectories",
                d.frame_trajectories,
                1,
            )?,
        })
    }

    fn propagate(&self, constants: PhysicalConstants) -> Result<PropagateSettings, ConfigError> {
        let n: usize = self.cfg.require("grid", "n")?;
        if !n.is_power_of_two() || n < 8 {
            return Err(self.err(
                "grid",
                "n",
                format!("grid size {n} must be a power of two and at least 8"),
            ));
        }
        let x_min: f64 = self.cfg.require("grid", "x_min")?;
        let x_max: f64 = self.cfg.require("grid", "x_max")?;
        let grid = SpatialGrid::new(n, x_min, x_max, constants)
            .map_err(|e| self.core_err("grid", "x_max", e))?;
        let particle = self.particle(constants)?;

        let kind_text: String = self
            .cfg
            .get_or("propagator", "kind", "schrodinger".to_string())?;
        let kind = match kind_text.as_str() {
            "schrodinger" => PropagatorKind::Schrodinger,
            "relativistic" => PropagatorKind::RelativisticSqrt,
            "dirac" => PropagatorKind::Dirac1D,
            "proper_time" => PropagatorKind::ProperTimePhase,
            other => {
                return Err(self.err(
                    "propagator",
                    "kind",
                    format!(
                        "unknown propagator {other:?} (expected schrodinger, relativistic, dirac or proper_time)"
                    ),
                ))
            }
        };
        if kind == PropagatorKind::Schrodinger && particle.is_massless() {
            return Err(self.err("particle", "mass", "schrodinger propagation needs mass > 0"));
        }
        let dt = self.positive("propagator", "dt", None)?;
        let steps = self.count("propagator", "steps", 1, 1)?;
        let every = self.count("output", "every", steps, 1)?;
        if every > steps {
            return Err(self.err(
                "output",
                "every",
                format!("sampling interval {every} exceeds the {steps} simulated steps"),
            ));
        }

        let center = self.finite("initial", "center", 0.5 * (x_min + x_max))?;
        if !(x_min..x_max).contains(&center) {
            return Err(self.err("initial", "center", "outside the grid"));
        }
        let width = self.positive("initial", "width", Some(grid.length() / 32.0))?;
        let momentum = self.finite("initial", "momentum", 0.0)?;
        if momentum.abs() >= grid.p_max() {
            return Err(self.err(
                "initial",
                "momentum",
                format!("|momentum| must be below the grid cutoff {}", grid.p_max()),
            ));
        }
        Ok(PropagateSettings {
            grid,
            particle,
            kind,
            dt,
            steps,
            every,
            initial: InitialGaussian {
                center,
                width,
                momentum,
            },
        })
    }

    fn frame(&self, constants: PhysicalConstants) -> Result<FrameSettings, ConfigError> {
        let particle = self.particle(constants)?;
        if particle.is_massless() {
            return Err(self.err("particle", "mass", "frame phases need mass > 0"));
        }
        let c = constants.c;
        let trajectory = self.trajectory(c)?;
        let horizon = trajectory.horizon();

        let rule = match self
            .cfg
            .get_or("quadrature", "rule", "simpson".to_string())?
            .as_str()
        {
            "simpson" => Quadrature::Simpson,
            "trapezoid" => Quadrature::Trapezoid,
            other => {
                return Err(self.err(
                    "quadrature",
                    "rule",
                    format!("unknown rule {other:?} (expected simpson or trapezoid)"),
                ))
            }
        };
        let panels: usize = self.cfg.get_or("quadrature", "panels", 256)?;
        let quadrature = QuadratureOptions::new(rule, panels)
            .map_err(|e| self.core_err("quadrature", "panels", e))?;
        let tolerance = self.positive("quadrature", "tolerance", Some(1e-9))?;

        let times = match (
            self.cfg.get_list::<f64>("output", "times")?,
            self.cfg.get::<usize>("output", "samples")?,
        ) {
            (Some(_), Some(_)) => {
                return Err(self.err(
                    "output",
                    "samples",
                    "give either times or samples, not both",
                ))
            }
            (Some(times), None) => {
                if times.is_empty() {
                    return Err(self.err("output", "times", "empty list"));
                }
                for &t in &times {
                    if !(t.is_finite() && (0.0..=horizon).contains(&t)) {
                        return Err(self.err(
                            "output",
                            "times",
                            format!(
                                "sample time {t} outside the trajectory horizon [0, {horizon}]"
                            ),
                        ));
                    }
                }
                times
            }
            (None, samples) => {
                let samples = samples.unwrap_or(11);
                if samples < 2 {
                    return Err(self.err("output", "samples", "need at least 2 samples"));
                }
                (0..samples)
                    .map(|i| {
                        if i + 1 == samples {
                            horizon
                        } else {
                            horizon * i as f64 / (samples - 1) as f64
                        }
                    })
                    .collect()
            }
        };
        Ok(FrameSettings {
            particle,
            trajectory,
            quadrature,
            times,
            tolerance,
        })
    }

    fn trajectory(&self, c: f64) -> Result<TrajectorySource, ConfigError> {
        if !self.cfg.has_section("trajectory") {
            return Err(ConfigError::new(
                None,
                "[trajectory]",
                "missing required section",
            ));
        }
        let source: String = self
            .cfg
            .get_or("trajectory", "source", "file".to_string())?;
        let only = |allowed: &[&str]| -> Result<(), ConfigError> {
            for (key, line) in self.cfg.keys("trajectory") {
                if key != "source" && !allowed.contains(&key) {
                    return Err(ConfigError::new(
                        Some(line),
                        format!("trajectory.{key}"),
                        format!("not used by source = {source}"),
                    ));
                }
            }
            Ok(())
        };
        match source.as_str() {
            "file" => {
                only(&["path", "interpolation"])?;
                let rel: String = self.cfg.require("trajectory", "path")?;
                let path = self.base_dir.join(&rel);
                let interpolation = match self
                    .cfg
                    .get_or("trajectory", "interpolation", "cubic_hermite".to_string())?
                    .as_str()
                {
                    "linear" => Interpolation::Linear,
                    "cubic_hermite" => Interpolation::CubicHermite,
                    other => {
                        return Err(self.err(
                            "trajectory",
                            "interpolation",
                            format!("unknown interpolation {other:?} (expected linear or cubic_hermite)"),
                        ))
                    }
                };
                if !path.is_file() {
                    return Err(self.err(
                        "trajectory",
                        "path",
                        format!("trajectory file {} does not exist", path.display()),
                    ));
                }
                let trajectory = Trajectory::from_file(&path, interpolation, c).map_err(|e| {
                    self.err("trajectory", "path", format!("{}: {e}", path.display()))
                })?;
                Ok(TrajectorySource::Sampled { path, trajectory })
            }
            "uniform_velocity" => {
                only(&["velocity", "horizon"])?;
                let velocity: f64 = self.cfg.require("trajectory", "velocity")?;
                let horizon = self.positive("trajectory", "horizon", None)?;
                let profile = UniformVelocity::new(velocity, horizon, c)
                    .map_err(|e| self.core_err("trajectory", "velocity", e))?;
                Ok(TrajectorySource::UniformVelocity { velocity, profile })
            }
            "uniform_acceleration" => {
                only(&["acceleration", "horizon"])?;
                let acceleration: f64 = self.cfg.require("trajectory", "acceleration")?;
                let horizon = self.positive("trajectory", "horizon", None)?;
                let profile = UniformAcceleration::new(acceleration, horizon, c)
                    .map_err(|e| self.core_err("trajectory", "acceleration", e))?;
                Ok(TrajectorySource::UniformAcceleration {
                    acceleration,
                    profile,
                })
            }
            other => Err(self.err(
                "trajectory",
                "source",
                format!("unknown source {other:?} (expected file, uniform_velocity or uniform_acceleration)"),
            )),
        }
    }
}
