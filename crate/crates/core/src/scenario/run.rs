use std::fmt;
use std::time::Instant;

use crate::error::Error;
use crate::frames::{
    action_phase, plane_wave_phase, proper_time_of, semiclassical_phase, velocity_of_time,
    QuadratureOptions, VelocityProfile,
};
use crate::grid::WaveFunction;
use crate::propagators::{
    gaussian_width, DiracPropagator, PropagatorKind, PropagatorSpec, ScalarPropagator,
    SpinorWaveFunction,
};

use super::report::{CheckResult, RunReport, SampleTable, Timing};
use super::{
    FrameSettings, PropagateSettings, Scenario, ScenarioSetup, TrajectorySource, VerifySettings,
};

/// A computational failure inside a scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunError {
    pub scenario: String,
    pub stage: String,
    pub source: Error,
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "scenario {} ({}): {}",
            self.scenario, self.stage, self.source
        )
    }
}

impl std::error::Error for RunError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

/// Runs a validated scenario. Reports are deterministic apart from
/// `timings`.
pub fn run(scenario: &Scenario) -> Result<RunReport, RunError> {
    let started = Instant::now();
    let mut report = RunReport::new(
        &scenario.name,
        scenario.kind().name(),
        scenario.seed,
        scenario.constants,
    );
    report.settings = scenario.settings.clone();
    let annotate = |stage: &str| {
        let scenario = scenario.name.clone();
        let stage = stage.to_string();
        move |source| RunError {
            scenario,
            stage,
            source,
        }
    };
    match &scenario.setup {
        ScenarioSetup::Verify(settings) => {
            run_verify(settings, scenario.seed, &mut report, &annotate)?;
        }
        ScenarioSetup::Propagate(settings) => {
            run_propagate(settings, &mut report).map_err(annotate("propagate"))?;
        }
        ScenarioSetup::Frame(settings) => {
            run_frame(settings, &mut report).map_err(annotate("frame"))?;
        }
    }
    report.finalize();
    report.timings.push(Timing {
        label: "total".into(),
        seconds: started.elapsed().as_secs_f64(),
    });
    Ok(report)
}

fn run_verify<F, G>(
    settings: &VerifySettings,
    seed: u64,
    report: &mut RunReport,
    annotate: &F,
) -> Result<(), RunError>
where
    F: Fn(&str) -> G,
    G: FnOnce(Error) -> RunError,
{
    let names: Vec<&str> = settings.families.iter().map(|f| f.name()).collect();
    report
        .settings
        .insert("resolved.families".into(), names.join(","));
    for family in &settings.families {
        let started = Instant::now();
        let checks = family
            .run(settings, seed)
            .map_err(annotate(family.name()))?;
        report.checks.extend(checks);
        report.timings.push(Timing {
            label: family.name().into(),
            seconds: started.elapsed().as_secs_f64(),
        });
    }
    Ok(())
}

/// `(norm², ⟨x⟩, ⟨p⟩, width)` of a scalar or two-component state.
fn observables(components: &[&WaveFunction]) -> (f64, f64, f64, f64) {
    let mut n = 0.0;
    let mut sx = 0.0;
    let mut sxx = 0.0;
    let mut sp = 0.0;
    for psi in components {
        let pos = psi.to_position();
        let grid = pos.grid();
        let dx = grid.dx();
        for (j, z) in pos.amplitudes().iter().enumerate() {
            let w = z.norm_sqr() * dx;
            let x = grid.position(j);
            n += w;
            sx += w * x;
            sxx += w * x * x;
        }
        let mom = psi.to_momentum();
        let dp = grid.dp();
        for (k, z) in mom.amplitudes().iter().enumerate() {
            sp += z.norm_sqr() * dp * grid.momentum(k);
        }
    }
    let mean = sx / n;
    let var = (sxx / n - mean * mean).max(0.0);
    (n, mean, sp / n, var.sqrt())
}

fn run_propagate(s: &PropagateSettings, report: &mut RunReport) -> crate::Result<()> {
    let init = s.initial;
    let psi0 = WaveFunction::gaussian(&s.grid, init.center, init.width, init.momentum)?;
    let spec = PropagatorSpec::new(s.kind, s.particle, s.dt)?;
    let schrodinger = s.kind == PropagatorKind::Schrodinger;
    let mut columns = vec!["t", "norm", "mean_x", "mean_p", "width"];
    if schrodinger {
        columns.push("width_oracle");
    }
    let mut table = SampleTable::new(&columns);
    report.settings.insert(
        "resolved.initial_edge_ratio".into(),
        format!("{:?}", psi0.edge_ratio()),
    );

    let record = |table: &mut SampleTable, step: usize, obs: (f64, f64, f64, f64)| {
        let t = step as f64 * s.dt;
        let mut row = vec![t, obs.0, obs.1, obs.2, obs.3];
        if schrodinger {
            row.push(gaussian_width(
                init.width,
                s.particle.mass(),
                s.grid.hbar(),
                t,
            ));
        }
        table.push(row);
    };

    let mut step = 0;
    if s.kind == PropagatorKind::Dirac1D {
        let prop = DiracPropagator::new(&s.grid, spec)?;
        let mut state = SpinorWaveFunction::positive_energy(&psi0, &s.particle)?;
        record(&mut table, 0, observables(&[state.upper(), state.lower()]));
        while step < s.steps {
            let k = s.every.min(s.steps - step);
            state = prop.evolve(&state, k)?;
            step += k;
            record(
                &mut table,
                step,
                observables(&[state.upper(), state.lower()]),
            );
        }
    } else {
        let prop = ScalarPropagator::new(&s.grid, spec)?;
        let mut state = psi0.clone();
        record(&mut table, 0, observables(&[&state]));
        while step < s.steps {
            let k = s.every.min(s.steps - step);
            state = prop.evolve(&state, k)?;
            step += k;
            record(&mut table, step, observables(&[&state]));
        }
    }

    let norms = table.column("norm").expect("norm column");
    let n0 = norms[0];
    let drift = norms
        .iter()
        .map(|n| (n - n0).abs() / n0)
        .fold(0.0, f64::max);
    report
        .checks
        .push(CheckResult::at_most("norm_drift", drift, 1e-9));

    let means = table.column("mean_p").expect("mean_p column");
    let p_scale = means[0].abs().max(s.grid.dp());
    let p_drift = means
        .iter()
        .map(|p| (p - means[0]).abs())
        .fold(0.0, f64::max)
        / p_scale;
    report
        .checks
        .push(CheckResult::at_most("momentum_conservation", p_drift, 1e-9));

    if schrodinger {
        let widths = table.column("width").expect("width column");
        let oracle = table.column("width_oracle").expect("oracle column");
        let err = widths
            .iter()
            .zip(&oracle)
            .map(|(w, o)| (w - o).abs() / o)
            .fold(0.0, f64::max);
        report
            .checks
            .push(CheckResult::at_most("width_law", err, 1e-6));
    }
    report.samples = table;
    Ok(())
}

fn run_frame(s: &FrameSettings, report: &mut RunReport) -> crate::Result<()> {
    let profile = &s.trajectory;
    let opts = s.quadrature;
    let particle = &s.particle;
    let es = particle.rest_energy();
    let hbar = particle.constants().hbar;

    report
        .settings
        .insert("resolved.source".into(), profile.name().into());
    report.settings.insert(
        "resolved.quadrature".into(),
        format!("{}:{}", opts.rule.name(), opts.panels),
    );
    if let TrajectorySource::Sampled { trajectory, path } = profile {
        report.settings.insert(
            "resolved.interpolation".into(),
            trajectory.interpolation().name().into(),
        );
        report
            .settings
            .insert("resolved.path".into(), path.display().to_string());
    }

    let result = semiclassical_phase(profile, particle, &s.times, opts)?;
    let mut table = SampleTable::new(&[
        "t",
        "proper_time",
        "velocity_of_time",
        "action",
        "energy_phase",
        "spatial_phase",
        "total_phase",
        "phase_rad",
        "position",
        "factorization_residual",
    ]);
    for i in 0..result.t_grid.len() {
        let t = result.t_grid[i];
        table.push(vec![
            t,
            result.proper_time[i],
            velocity_of_time(profile, t)?,
            result.action[i],
            result.energy_phase[i],
            result.spatial_phase[i],
            result.total_phase(i),
            result.action[i] / hbar,
            result.position[i],
            result.factorization_residual[i],
        ]);
    }

    let scale = result
        .energy_phase
        .iter()
        .zip(&result.spatial_phase)
        .map(|(e, x)| e.abs() + x.abs())
        .fold(f64::MIN_POSITIVE, f64::max);
    report.checks.push(CheckResult::at_most(
        "factorization",
        result.max_factorization_residual(),
        1e-12 * scale,
    ));

    let excess = result
        .t_grid
        .iter()
        .zip(&result.proper_time)
        .map(|(t, ts)| ts - t)
        .fold(f64::NEG_INFINITY, f64::max);
    let t_max = result.t_grid.iter().copied().fold(0.0, f64::max);
    report.checks.push(CheckResult::at_most(
        "time_dilation_bound",
        excess.max(0.0),
        1e-15 * t_max,
    ));

    let horizon = profile.horizon();
    let half = QuadratureOptions::new(opts.rule, (opts.panels / 2).max(4) & !1)?;
    let ts = proper_time_of(profile, horizon, opts)?;
    let ts_half = proper_time_of(profile, horizon, half)?;
    let action = action_phase(profile, particle, horizon, opts)?;
    let bound = 1e-12 * es * horizon + es * (ts - ts_half).abs();
    report.checks.push(CheckResult::at_most(
        "action_identity",
        (action + es * ts).abs(),
        bound,
    ));

    match profile {
        TrajectorySource::UniformVelocity { velocity, .. } => {
            let c = particle.constants().c;
            let beta = velocity / c;
            let dilation = (1.0 - beta * beta).sqrt();
            let err = result
                .t_grid
                .iter()
                .zip(&result.proper_time)
                .map(|(t, ts)| (ts - t * dilation).abs())
                .fold(0.0, f64::max);
            report.checks.push(CheckResult::at_most(
                "proper_time_closed_form",
                err,
                s.tolerance * t_max.max(1.0),
            ));
            let mut worst = 0.0f64;
            for (i, &t) in result.t_grid.iter().enumerate() {
                let reference = plane_wave_phase(particle, *velocity, t);
                let energy = es / dilation;
                let scale = (energy * t).abs() + (energy * beta * beta * t).abs();
                if scale > 0.0 {
                    worst = worst.max((result.total_phase(i) - reference).abs() / scale);
                }
            }
            report
                .checks
                .push(CheckResult::at_most("inertial_phase", worst, 1e-13));
        }
        TrajectorySource::UniformAcceleration { profile: accel, .. } => {
            let err = result
                .t_grid
                .iter()
                .zip(&result.proper_time)
                .map(|(&t, ts)| (ts - accel.exact_proper_time(t)).abs())
                .fold(0.0, f64::max);
            report.checks.push(CheckResult::at_most(
                "proper_time_gudermannian",
                err,
                s.tolerance,
            ));
        }
        TrajectorySource::Sampled { .. } => {}
    }
    report.samples = table;
    Ok(())
}
