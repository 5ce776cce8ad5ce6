//! Proper time and semiclassical phases along accelerating trajectories.
//!
//! For a frame moving with velocity `v(t)` relative to the reference frame,
//!
//! ```text
//! t_s(t)   = ∫₀ᵗ √(1 − v²/c²) dt′
//! S(t)     = ∫₀ᵗ L dt′,          L = −E_s √(1 − v²/c²)
//! Φ_E(t)   = ∫₀ᵗ E(t′) dt′,      E = E_s / √(1 − v²/c²)
//! Φ_x(t)   = ∫₀ˣ p dx′ = ∫₀ᵗ p v dt′,   p = E v / c²
//! ```
//!
//! and `−E_s t_s = S = −Φ_E + Φ_x`. Phases in radians are these divided
//! by ħ. The spatial integral is taken in the time parameterization, which
//! stays valid for trajectories that turn around.

use std::path::Path;

use crate::error::{Error, Result};
use crate::operators::ParticleSpec;

/// A velocity history `v(t)` on `[0, horizon]` with `|v| < c`.
pub trait VelocityProfile {
    fn velocity(&self, t: f64) -> Result<f64>;
    fn horizon(&self) -> f64;
    fn speed_of_light(&self) -> f64;
}

fn check_range(t: f64, horizon: f64) -> Result<()> {
    if t.is_finite() && (0.0..=horizon).contains(&t) {
        Ok(())
    } else {
        Err(Error::OutOfRange { t, horizon })
    }
}

fn check_subluminal(t: f64, v: f64, c: f64) -> Result<f64> {
    if v.is_finite() && v.abs() < c {
        Ok(v)
    } else {
        Err(Error::Superluminal {
            t,
            speed: v.abs(),
            c,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    Linear,
    CubicHermite,
}

impl Interpolation {
    pub fn name(&self) -> &'static str {
        match self {
            Interpolation::Linear => "linear",
            Interpolation::CubicHermite => "cubic_hermite",
        }
    }
}

/// Sampled velocity table `(t_i, v_i)`, starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    velocities: Vec<f64>,
    slopes: Vec<f64>,
    interpolation: Interpolation,
    c: f64,
}

impl Trajectory {
    pub fn new(samples: Vec<(f64, f64)>, interpolation: Interpolation, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::BadConstant {
                name: "c",
                value: c,
            });
        }
        if samples.len() < 2 {
            return Err(Error::InvalidTrajectory(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        if samples[0].0 != 0.0 {
            return Err(Error::InvalidTrajectory(format!(
                "first sample must be at t = 0, got {}",
                samples[0].0
            )));
        }
        for w in samples.windows(2) {
            if w[1].0.partial_cmp(&w[0].0) != Some(std::cmp::Ordering::Greater)
                || !w[1].0.is_finite()
            {
                return Err(Error::InvalidTrajectory(format!(
                    "sample times must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(t, v) in &samples {
            check_subluminal(t, v, c)?;
        }
        let (times, velocities): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
        let slopes = hermite_slopes(&times, &velocities);
        Ok(Self {
            times,
            velocities,
            slopes,
            interpolation,
            c,
        })
    }

    /// Parses the plain-text table: one `t v` pair per line, `#` starts a
    /// comment.
    pub fn parse(text: &str, interpolation: Interpolation, c: f64) -> Result<Self> {
        let mut samples = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::InvalidTrajectory(format!(
                    "line {}: expected `t v`, got {:?}",
                    idx + 1,
                    line
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidTrajectory(format!("line {}: not a number: {s:?}", idx + 1))
                })
            };
            let t = parse(fields[0])?;
            let v = parse(fields[1])?;
            if !(v.is_finite() && v.abs() < c) {
                return Err(Error::InvalidTrajectory(format!(
                    "line {}: speed |{v}| is not below c = {c}",
                    idx + 1
                )));
            }
            samples.push((t, v));
        }
        Self::new(samples, interpolation, c)
    }

    pub fn from_file(path: &Path, interpolation: Interpolation, c: f64) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidTrajectory(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse(&text, interpolation, c)
    }

    /// Samples `v(t)` at `count` evenly spaced times on `[0, horizon]`.
    pub fn sample(
        profile: &impl VelocityProfile,
        count: usize,
        interpolation: Interpolation,
    ) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidTrajectory("need at least 2 samples".into()));
        }
        let h = profile.horizon();
        let samples = (0..count)
            .map(|i| {
                let t = if i + 1 == count {
                    h
                } else {
                    h * i as f64 / (count - 1) as f64
                };
                profile.velocity(t).map(|v| (t, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(samples, interpolation, profile.speed_of_light())
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times
            .iter()
            .copied()
            .zip(self.velocities.iter().copied())
    }

    fn segment(&self, t: f64) -> usize {
        match self.times.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(i) => i.min(self.times.len() - 2),
            Err(i) => (i - 1).min(self.times.len() - 2),
        }
    }
}

/// Three-point derivative estimates at each sample.
fn hermite_slopes(t: &[f64], v: &[f64]) -> Vec<f64> {
    let n = t.len();
    if n == 2 {
        let s = (v[1] - v[0]) / (t[1] - t[0]);
        return vec![s, s];
    }
    let parabola = |i0: usize, at: f64| {
        // derivative at `at` of the parabola through samples i0, i0+1, i0+2
        let (x0, x1, x2) = (t[i0], t[i0 + 1], t[i0 + 2]);
        let (y0, y1, y2) = (v[i0], v[i0 + 1], v[i0 + 2]);
        y0 * (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2))
            + y1 * (2.0 * at - x0 - x2) / ((x1 - x0) * (x1 - x2))
            + y2 * (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1))
    };
    (0..n)
        .map(|i| match i {
            0 => parabola(0, t[0]),
            i if i == n - 1 => parabola(n - 3, t[n - 1]),
            i => parabola(i - 1, t[i]),
        })
        .collect()
}

impl VelocityProfile for Trajectory {
    fn velocity(&self, t: f64) -> Result<f64> {
        check_range(t, self.horizon())?;
        let i = self.segment(t);
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let (v0, v1) = (self.velocities[i], self.velocities[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let v = match self.interpolation {
            Interpolation::Linear => v0 + (v1 - v0) * s,
            Interpolation::CubicHermite => {
                let s2 = s * s;
                let s3 = s2 * s;
                (2.0 * s3 - 3.0 * s2 + 1.0) * v0
                    + (s3 - 2.0 * s2 + s) * h * self.slopes[i]
                    + (-2.0 * s3 + 3.0 * s2) * v1
                    + (s3 - s2) * h * self.slopes[i + 1]
            }
        };
        check_subluminal(t, v, self.c)
    }

    fn horizon(&self) -> f64 {
        *self.times.last().expect("at least two samples")
    }

    fn speed_of_light(&self) -> f64 {
        self.c
    }
}

/// Constant velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformVelocity {
    v: f64,
    horizon: f64,
    c: f64,
}

impl UniformVelocity {
    pub fn new(v: f64, horizon: f64, c: f64) -> Result<Self> {
        check_subluminal(0.0, v, c)?;
        if !(horizon.is_finite() && horizon >= 0.0) {
            return Err(Error::InvalidArgument(format!("horizon {horizon}")));
        }
        Ok(Self { v, horizon, c })
    }
}

impl VelocityProfile for UniformVelocity {
    fn velocity(&self, t: f64) -> Result<f64> {
        check_range(t, self.horizon)?;
        Ok(self.v)
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn speed_of_light(&self) -> f64 {
        self.c
    }
}

/// Constant proper acceleration from rest: `v(t) = c·tanh(a t/c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformAcceleration {
    acceleration: f64,
    horizon: f64,
    c: f64,
}

impl UniformAcceleration {
    pub fn new(acceleration: f64, horizon: f64, c: f64) -> Result<Self> {
        if !acceleration.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "acceleration {acceleration}"
            )));
        }
        if !(horizon.is_finite() && horizon >= 0.0) {
            return Err(Error::InvalidArgument(format!("horizon {horizon}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::BadConstant {
                name: "c",
                value: c,
            });
        }
        Ok(Self {
            acceleration,
            horizon,
            c,
        })
    }

    /// Closed form `t_s = (c/a)·gd(a t/c)`, with `gd(x) = 2 atan(tanh(x/2))`.
    pub fn exact_proper_time(&self, t: f64) -> f64 {
        if self.acceleration == 0.0 {
            return t;
        }
        let x = self.acceleration * t / self.c;
        self.c / self.acceleration * 2.0 * (x / 2.0).tanh().atan()
    }
}

impl VelocityProfile for UniformAcceleration {
    fn velocity(&self, t: f64) -> Result<f64> {
        check_range(t, self.horizon)?;
        check_subluminal(t, self.c * (self.acceleration * t / self.c).tanh(), self.c)
    }

    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn speed_of_light(&self) -> f64 {
        self.c
    }
}

impl<P: VelocityProfile + ?Sized> VelocityProfile for &P {
    fn velocity(&self, t: f64) -> Result<f64> {
        (**self).velocity(t)
    }

    fn horizon(&self) -> f64 {
        (**self).horizon()
    }

    fn speed_of_light(&self) -> f64 {
        (**self).speed_of_light()
    }
}

impl VelocityProfile for Box<dyn VelocityProfile + Send + Sync> {
    fn velocity(&self, t: f64) -> Result<f64> {
        (**self).velocity(t)
    }

    fn horizon(&self) -> f64 {
        (**self).horizon()
    }

    fn speed_of_light(&self) -> f64 {
        (**self).speed_of_light()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    Trapezoid,
    Simpson,
}

impl Quadrature {
    pub fn order(&self) -> i32 {
        match self {
            Quadrature::Trapezoid => 2,
            Quadrature::Simpson => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Quadrature::Trapezoid => "trapezoid",
            Quadrature::Simpson => "simpson",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureOptions {
    pub rule: Quadrature,
    pub panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rule: Quadrature::Simpson,
            panels: 256,
        }
    }
}

impl QuadratureOptions {
    pub fn new(rule: Quadrature, panels: usize) -> Result<Self> {
        let opts = Self { rule, panels };
        opts.validate()?;
        Ok(opts)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.panels >= 4
            && (self.rule == Quadrature::Trapezoid || self.panels.is_multiple_of(2));
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPanels {
                panels: self.panels,
                rule: self.rule.name(),
            })
        }
    }
}

/// Composite quadrature of several integrands sharing the same nodes on
/// `[0, t]`.
fn integrate_many<const K: usize>(
    t: f64,
    opts: QuadratureOptions,
    f: impl Fn(f64) -> Result<[f64; K]>,
) -> Result<[f64; K]> {
    opts.validate()?;
    let n = opts.panels;
    let h = t / n as f64;
    let mut acc = [0.0; K];
    for i in 0..=n {
        let x = if i == n { t } else { i as f64 * h };
        let w = match opts.rule {
            Quadrature::Trapezoid => {
                if i == 0 || i == n {
                    0.5
                } else {
                    1.0
                }
            }
            Quadrature::Simpson => {
                if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                }
            }
        };
        let values = f(x)?;
        for (a, v) in acc.iter_mut().zip(values) {
            *a += w * v;
        }
    }
    let scale = match opts.rule {
        Quadrature::Trapezoid => h,
        Quadrature::Simpson => h / 3.0,
    };
    Ok(acc.map(|a| a * scale))
}

/// `√(1 − v²/c²)` at time `t`, in `(0, 1]`.
pub fn velocity_of_time(profile: &impl VelocityProfile, t: f64) -> Result<f64> {
    let v = profile.velocity(t)?;
    let beta = v / profile.speed_of_light();
    Ok((1.0 - beta * beta).sqrt())
}

pub fn proper_time_of(
    profile: &impl VelocityProfile,
    t: f64,
    opts: QuadratureOptions,
) -> Result<f64> {
    check_range(t, profile.horizon())?;
    let [ts] = integrate_many(t, opts, |x| Ok([velocity_of_time(profile, x)?]))?;
    Ok(ts)
}

/// `∫₀ᵗ L dt′` with `L = −E_s √(1 − v²/c²)`.
pub fn action_phase(
    profile: &impl VelocityProfile,
    particle: &ParticleSpec,
    t: f64,
    opts: QuadratureOptions,
) -> Result<f64> {
    check_range(t, profile.horizon())?;
    let es = particle.rest_energy();
    let [s] = integrate_many(t, opts, |x| Ok([-es * velocity_of_time(profile, x)?]))?;
    Ok(s)
}

/// Accumulated proper time, action and phase integrals at each output time.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePhaseResult {
    pub t_grid: Vec<f64>,
    pub proper_time: Vec<f64>,
    pub action: Vec<f64>,
    pub energy_phase: Vec<f64>,
    pub spatial_phase: Vec<f64>,
    pub position: Vec<f64>,
    /// `|(−E_s t_s) − (−Φ_E + Φ_x)|` per output time.
    pub factorization_residual: Vec<f64>,
    pub rest_energy: f64,
}

impl FramePhaseResult {
    /// `−Φ_E + Φ_x` at output index `i`.
    pub fn total_phase(&self, i: usize) -> f64 {
        -self.energy_phase[i] + self.spatial_phase[i]
    }

    pub fn max_factorization_residual(&self) -> f64 {
        self.factorization_residual
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }
}

pub fn semiclassical_phase(
    profile: &impl VelocityProfile,
    particle: &ParticleSpec,
    times: &[f64],
    opts: QuadratureOptions,
) -> Result<FramePhaseResult> {
    if particle.is_massless() {
        return Err(Error::InvalidMass(particle.mass()));
    }
    opts.validate()?;
    let c = profile.speed_of_light();
    let es = particle.rest_energy();
    let mut out = FramePhaseResult {
        t_grid: Vec::with_capacity(times.len()),
        proper_time: Vec::with_capacity(times.len()),
        action: Vec::with_capacity(times.len()),
        energy_phase: Vec::with_capacity(times.len()),
        spatial_phase: Vec::with_capacity(times.len()),
        position: Vec::with_capacity(times.len()),
        factorization_residual: Vec::with_capacity(times.len()),
        rest_energy: es,
    };
    for &t in times {
        check_range(t, profile.horizon())?;
        let [ts, x, e_int, px_int] = integrate_many(t, opts, |s| {
            let v = profile.velocity(s)?;
            let dilation = velocity_of_time(profile, s)?;
            let energy = es / dilation;
            let momentum = energy * v / (c * c);
            Ok([dilation, v, energy, momentum * v])
        })?;
        let action = -es * ts;
        out.t_grid.push(t);
        out.proper_time.push(ts);
        out.action.push(action);
        out.energy_phase.push(e_int);
        out.spatial_phase.push(px_int);
        out.position.push(x);
        out.factorization_residual
            .push((action - (-e_int + px_int)).abs());
    }
    Ok(out)
}

/// Inertial plane-wave phase `−E t + p x` (action units) for constant `v`.
pub fn plane_wave_phase(particle: &ParticleSpec, v: f64, t: f64) -> f64 {
    let c = particle.constants().c;
    let beta = v / c;
    let energy = particle.rest_energy() / (1.0 - beta * beta).sqrt();
    let p = energy * v / (c * c);
    -energy * t + p * (v * t)
}
