//! Seeded verification families run by `verify` scenarios.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canonical::{
    check_alpha_imaginary, check_energy_as_time_derivative, check_special_case_t, check_squaring,
    check_squaring_xp, extract_alpha, log_quadratic_coefficient, time_derivative_convergence,
    AlphaStencil, AmplitudeKernel, KernelAxis, KernelMatrix, ProperTimeAxis, SquaringVariant,
};
use crate::error::Result;
use crate::frames::{
    action_phase, plane_wave_phase, proper_time_of, semiclassical_phase, velocity_of_time,
    Interpolation, Quadrature, QuadratureOptions, Trajectory, UniformAcceleration, UniformVelocity,
};
use crate::grid::{make_grid, SpatialGrid, WaveFunction};
use crate::operators::{commutator_xp_expectation, proper_time_op, ParticleSpec};
use crate::propagators::{
    dirac_step_matrix, gaussian_width, positive_energy_spinor, DiracPropagator, PropagatorKind,
    PropagatorSpec, ScalarPropagator, SpinorWaveFunction,
};

use super::report::CheckResult;
use super::VerifySettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VerifyFamily {
    Commutator,
    Functional,
    Spectrum,
    Kernel,
    Propagators,
    Frames,
}

impl VerifyFamily {
    pub const ALL: [VerifyFamily; 6] = [
        VerifyFamily::Commutator,
        VerifyFamily::Functional,
        VerifyFamily::Spectrum,
        VerifyFamily::Kernel,
        VerifyFamily::Propagators,
        VerifyFamily::Frames,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            VerifyFamily::Commutator => "commutator",
            VerifyFamily::Functional => "functional",
            VerifyFamily::Spectrum => "spectrum",
            VerifyFamily::Kernel => "kernel",
            VerifyFamily::Propagators => "propagators",
            VerifyFamily::Frames => "frames",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Independent random stream per family, so adding or removing a
    /// family leaves the others' draws unchanged.
    fn rng(&self, seed: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(*self as u64 + 1);
        rng
    }

    pub fn run(&self, settings: &VerifySettings, seed: u64) -> Result<Vec<CheckResult>> {
        let mut rng = self.rng(seed);
        match self {
            VerifyFamily::Commutator => commutator(settings, &mut rng),
            VerifyFamily::Functional => functional(settings, &mut rng),
            VerifyFamily::Spectrum => spectrum(settings, &mut rng),
            VerifyFamily::Kernel => kernel(settings, &mut rng),
            VerifyFamily::Propagators => propagators(settings),
            VerifyFamily::Frames => frames(settings, &mut rng),
        }
    }
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Gaussian parameters `(x0, σ, p0)` with amplitude below ~1e-11 at both
/// the periodic boundary and the momentum cutoff.
pub(crate) fn random_edge_decayed(rng: &mut impl Rng, grid: &SpatialGrid) -> (f64, f64, f64) {
    let l = grid.length();
    let mid = 0.5 * (grid.x_min() + grid.x_max());
    let p_max = grid.p_max() / grid.hbar();
    let s_lo = (l / 40.0).max(6.0 / p_max);
    let s_hi = (l / 24.0).max(s_lo);
    let sigma = rng.gen_range(s_lo..=s_hi);
    let x0 = mid + rng.gen_range(-l / 16.0..=l / 16.0);
    let p_room = (p_max - 5.0 / sigma).clamp(0.0, 10.0);
    let p0 = rng.gen_range(-p_room..=p_room) * grid.hbar();
    (x0, sigma, p0)
}

/// `⟨ψ|[X, P]|ψ⟩/⟨ψ|ψ⟩` with `P` assembled as a dense trigonometric
/// differentiation matrix, independent of the FFT path.
pub(crate) fn dense_commutator(psi: &WaveFunction) -> Complex64 {
    let grid = psi.grid();
    let n = grid.len();
    let hbar = grid.hbar();
    let xs = grid.positions();
    let ps = grid.momenta();
    let amps = psi.to_position().into_amplitudes();
    let mut p_mat = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for l in 0..n {
            p_mat[j * n + l] = ps
                .iter()
                .map(|&p| Complex64::cis(p * (xs[j] - xs[l]) / hbar) * p)
                .sum::<Complex64>()
                / n as f64;
        }
    }
    let apply = |v: &[Complex64]| -> Vec<Complex64> {
        (0..n)
            .map(|j| (0..n).map(|l| p_mat[j * n + l] * v[l]).sum())
            .collect()
    };
    let p_psi = apply(&amps);
    let x_psi: Vec<Complex64> = amps.iter().zip(&xs).map(|(a, &x)| a * x).collect();
    let p_x_psi = apply(&x_psi);
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for j in 0..n {
        num += amps[j].conj() * (xs[j] * p_psi[j] - p_x_psi[j]);
        den += amps[j].norm_sqr();
    }
    num / den
}

fn commutator(s: &VerifySettings, rng: &mut ChaCha8Rng) -> Result<Vec<CheckResult>> {
    let hbar = 1.0;
    let grid = make_grid(s.commutator_n, -8.0, 8.0)?;
    let mut worst = 0.0f64;
    for _ in 0..s.commutator_states {
        let (x0, sigma, p0) = random_edge_decayed(rng, &grid);
        let psi = WaveFunction::gaussian(&grid, x0, sigma, p0)?;
        let z = commutator_xp_expectation(&psi)?;
        worst = worst.max((z - I * hbar).norm());
    }

    let small = make_grid(s.oracle_n, -8.0, 8.0)?;
    let mut oracle_gap = 0.0f64;
    let mut oracle_identity = 0.0f64;
    for _ in 0..3 {
        let (x0, sigma, p0) = random_edge_decayed(rng, &small);
        let psi = WaveFunction::gaussian(&small, x0, sigma, p0)?;
        let dense = dense_commutator(&psi);
        let fast = commutator_xp_expectation(&psi)?;
        oracle_gap = oracle_gap.max((dense - fast).norm());
        oracle_identity = oracle_identity.max((dense - I * hbar).norm());
    }
    Ok(vec![
        CheckResult::at_most("commutator.random_states", worst, 1e-8),
        CheckResult::at_most("commutator.dense_oracle_agreement", oracle_gap, 1e-10),
        CheckResult::at_most("commutator.dense_oracle_identity", oracle_identity, 1e-8),
    ])
}

fn functional(s: &VerifySettings, rng: &mut ChaCha8Rng) -> Result<Vec<CheckResult>> {
    let xp = AmplitudeKernel::position_momentum(1.0);
    let te = AmplitudeKernel::proper_time_energy(1.0, Complex64::new(0.7, -0.2))?;
    let mut sq_xp = 0.0f64;
    let mut sq_te = 0.0f64;
    for _ in 0..s.squaring_points {
        let x = rng.gen_range(-3.0..=3.0);
        let p = rng.gen_range(-3.0..=3.0);
        sq_xp = sq_xp.max(check_squaring_xp(&xp, x, p));
        let ts = rng.gen_range(0.0..=2.0);
        let e = rng.gen_range(0.0..=3.0);
        for variant in [
            SquaringVariant::DoubledCoordinate,
            SquaringVariant::DoubledConjugate,
        ] {
            sq_te = sq_te.max(check_squaring(&te, ts, -e, variant));
        }
    }

    let mut alpha_err = 0.0f64;
    for _ in 0..s.alpha_values {
        let r = 10f64.powf(rng.gen_range(-1.0..=1.0));
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let alpha = Complex64::from_polar(r, theta);
        let kernel = AmplitudeKernel::new(alpha, Complex64::new(1.3, 0.4))?;
        let found = extract_alpha(&kernel, AlphaStencil::default())?;
        alpha_err = alpha_err.max((found - alpha).norm());
    }

    let axis = ProperTimeAxis::new(1.0, 64)?;
    let energies: Vec<f64> = (0..8).map(|_| rng.gen_range(0.1..=5.0)).collect();
    let gamma = rng.gen_range(0.5..=2.0);
    let imaginary = AmplitudeKernel::new(Complex64::new(0.0, gamma), Complex64::new(1.0, 0.0))?;
    let flat = check_alpha_imaginary(&KernelMatrix::from_kernel(
        axis.clone(),
        energies.clone(),
        &imaginary,
    )?)?;

    let mut checks = vec![
        CheckResult::at_most("functional.squaring_xp", sq_xp, 1e-12),
        CheckResult::at_most("functional.squaring_time_energy", sq_te, 1e-12),
        CheckResult::at_most("functional.alpha_recovery", alpha_err, 1e-8),
        CheckResult::at_most("functional.modulus_ratio_imaginary", flat - 1.0, 1e-12),
    ];
    for re in [-0.2, -0.05, 0.05, 0.2] {
        let planted = AmplitudeKernel::new(Complex64::new(re, gamma), Complex64::new(1.0, 0.0))?;
        let ratio = check_alpha_imaginary(&KernelMatrix::from_kernel(
            axis.clone(),
            energies.clone(),
            &planted,
        )?)?;
        checks.push(CheckResult::at_least(
            format!("functional.planted_re_alpha_{re:+}"),
            ratio - 1.0,
            1e-3,
        ));
    }

    let mut quad = 0.0f64;
    for axis in [KernelAxis::Coordinate, KernelAxis::Conjugate] {
        for fixed in [-1.5, 0.5, 2.0] {
            quad = quad.max(log_quadratic_coefficient(&xp, axis, fixed, 1.0, 21)?);
        }
    }
    checks.push(CheckResult::at_most(
        "functional.log_linearity",
        quad,
        1e-10,
    ));
    Ok(checks)
}

fn spectrum(s: &VerifySettings, rng: &mut ChaCha8Rng) -> Result<Vec<CheckResult>> {
    let t = 2.0;
    let particle = ParticleSpec::natural(1.0)?;
    let half = s.spectrum_n as f64 / 16.0;
    let grid = make_grid(s.spectrum_n, -half, half)?;
    let values = proper_time_op(&grid, &particle, t).real_values();
    let momenta = grid.momenta();

    let range = values
        .iter()
        .map(|&v| (-v).max(v - t).max(0.0))
        .fold(0.0, f64::max);

    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| momenta[a].abs().total_cmp(&momenta[b].abs()));
    let mut rise = 0.0f64;
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        if momenta[b].abs() > momenta[a].abs() {
            rise = rise.max(values[b] - values[a]);
        } else {
            rise = rise.max((values[b] - values[a]).abs());
        }
    }

    let zero = momenta
        .iter()
        .position(|&p| p == 0.0)
        .expect("grid contains p = 0");
    let edge = *order.last().expect("nonempty grid");
    let p_edge = momenta[edge].abs();

    let mut spot = 0.0f64;
    for _ in 0..10 {
        let j = rng.gen_range(0..values.len());
        let p = momenta[j];
        let exact = t / (1.0 + p * p).sqrt();
        spot = spot.max((values[j] - exact).abs());
    }
    Ok(vec![
        CheckResult::at_most("spectrum.range", range, 0.0),
        CheckResult::at_most("spectrum.monotone_in_abs_p", rise, 0.0),
        CheckResult::at_most("spectrum.rest_value", (values[zero] - t).abs(), 0.0),
        CheckResult::at_most(
            "spectrum.cutoff_decay",
            values[edge],
            t / p_edge * (1.0 + 1e-12),
        ),
        CheckResult::at_most("spectrum.spot_values", spot, 1e-14),
    ])
}

fn kernel(s: &VerifySettings, rng: &mut ChaCha8Rng) -> Result<Vec<CheckResult>> {
    let energies = vec![0.5, 1.0, 2.0];
    let coeffs: Vec<Complex64> = (0..energies.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    let a = Complex64::new(1.0, 0.0);
    let matrix = KernelMatrix::standard(
        ProperTimeAxis::new(1.0, s.kernel_nodes)?,
        energies.clone(),
        a,
        1.0,
    )?;
    let residual = check_energy_as_time_derivative(&matrix, &coeffs, 1.0)?;
    let coarse = s.kernel_nodes.div_ceil(2).max(ProperTimeAxis::MIN_NODES);
    let (_, _, ratio) = time_derivative_convergence(1.0, coarse, &energies, &coeffs, a, 1.0)?;
    let reference = if check_special_case_t(&matrix, 1.0) {
        0.0
    } else {
        1.0
    };
    let flat = check_alpha_imaginary(&matrix)?;
    Ok(vec![
        CheckResult::at_most("kernel.time_derivative_residual", residual, 1e-6),
        CheckResult::at_most("kernel.convergence_order", (ratio - 4.0).abs(), 0.5),
        CheckResult::at_most("kernel.reference_row", reference, 0.0),
        CheckResult::at_most("kernel.modulus_flat", flat - 1.0, 1e-12),
    ])
}

fn propagators(s: &VerifySettings) -> Result<Vec<CheckResult>> {
    let steps = s.propagator_steps;
    let particle = ParticleSpec::natural(1.0)?;
    let mut checks = Vec::new();

    let grid = make_grid(1024, -40.0, 40.0)?;
    let sigma0 = 1.0;
    let total_time = 5.0;
    let dt = total_time / steps as f64;
    let psi0 = WaveFunction::gaussian(&grid, 0.0, sigma0, 0.0)?;
    let schr = ScalarPropagator::new(
        &grid,
        PropagatorSpec::new(PropagatorKind::Schrodinger, particle, dt)?,
    )?;
    let chunk = (steps / 10).max(1);
    let mut psi = psi0.clone();
    let mut done = 0;
    let mut width_err = 0.0f64;
    while done < steps {
        let k = chunk.min(steps - done);
        psi = schr.evolve(&psi, k)?;
        done += k;
        let oracle = gaussian_width(sigma0, 1.0, 1.0, done as f64 * dt);
        width_err = width_err.max((psi.width() - oracle).abs() / oracle);
    }
    checks.push(CheckResult::at_most(
        "propagators.schrodinger_width_law",
        width_err,
        1e-6,
    ));

    let moving = WaveFunction::gaussian(&grid, -5.0, 1.5, 1.0)?;
    let n0 = moving.norm_sqr();
    for (label, kind) in [
        ("schrodinger", PropagatorKind::Schrodinger),
        ("relativistic", PropagatorKind::RelativisticSqrt),
        ("proper_time", PropagatorKind::ProperTimePhase),
    ] {
        let spec = PropagatorSpec::new(kind, particle, 0.01)?;
        let prop = ScalarPropagator::new(&grid, spec)?;
        let mut worst = 0.0f64;
        let mut state = moving.clone();
        for _ in 0..steps {
            state = prop.step(&state)?;
            worst = worst.max((state.norm_sqr() - n0).abs() / n0);
        }
        checks.push(CheckResult::at_most(
            format!("propagators.norm_drift_{label}"),
            worst,
            1e-9,
        ));

        let a = prop.evolve(
            &ScalarPropagator::new(&grid, spec.with_dt(0.013)?)?.step(&moving)?,
            1,
        )?;
        let b = ScalarPropagator::new(&grid, spec.with_dt(0.023)?)?.step(&moving)?;
        checks.push(CheckResult::at_most(
            format!("propagators.semigroup_{label}"),
            a.distance(&b)? / n0.sqrt(),
            1e-12,
        ));
    }

    let dirac_spec = PropagatorSpec::new(PropagatorKind::Dirac1D, particle, 0.01)?;
    let dirac = DiracPropagator::new(&grid, dirac_spec)?;
    let spinor0 = SpinorWaveFunction::positive_energy(&moving, &particle)?;
    let s0 = spinor0.norm_sqr();
    let mut worst = 0.0f64;
    let mut spinor = spinor0.clone();
    for _ in 0..steps {
        spinor = dirac.step(&spinor)?;
        worst = worst.max((spinor.norm_sqr() - s0).abs() / s0);
    }
    checks.push(CheckResult::at_most(
        "propagators.norm_drift_dirac",
        worst,
        1e-9,
    ));
    let a = DiracPropagator::new(&grid, dirac_spec.with_dt(0.013)?)?.step(&spinor0)?;
    let a = DiracPropagator::new(&grid, dirac_spec.with_dt(0.01)?)?.step(&a)?;
    let b = DiracPropagator::new(&grid, dirac_spec.with_dt(0.023)?)?.step(&spinor0)?;
    checks.push(CheckResult::at_most(
        "propagators.semigroup_dirac",
        a.distance(&b)? / s0.sqrt(),
        1e-12,
    ));

    let rel = ScalarPropagator::new(
        &grid,
        PropagatorSpec::new(PropagatorKind::RelativisticSqrt, particle, 0.37)?,
    )?;
    let via_scalar = SpinorWaveFunction::positive_energy(&rel.step(&moving)?, &particle)?;
    let via_dirac = DiracPropagator::new(&grid, dirac_spec.with_dt(0.37)?)?.step(&spinor0)?;
    checks.push(CheckResult::at_most(
        "propagators.dirac_positive_sector",
        via_dirac.distance(&via_scalar)? / s0.sqrt(),
        1e-12,
    ));

    let mut phase_err = 0.0f64;
    let dt = 0.37;
    for p in grid.momenta() {
        let m = dirac_step_matrix(&particle, p, dt);
        let (u, l) = positive_energy_spinor(&particle, p);
        let energy = (1.0 + p * p).sqrt();
        let phase = Complex64::cis(-energy * dt);
        let du = m[0][0] * u + m[0][1] * l - phase * u;
        let dl = m[1][0] * u + m[1][1] * l - phase * l;
        phase_err = phase_err.max(du.norm().max(dl.norm()));
    }
    checks.push(CheckResult::at_most(
        "propagators.dirac_phase_per_node",
        phase_err,
        1e-12,
    ));

    let (slope, budget) = nonrelativistic_exponent()?;
    checks.push(CheckResult::at_most(
        "propagators.nonrelativistic_exponent",
        (slope - 4.0).abs(),
        0.5,
    ));
    checks.push(CheckResult::at_most(
        "propagators.nonrelativistic_budget",
        budget,
        1.0 + 1e-9,
    ));

    let massless = ParticleSpec::natural(0.0)?;
    let packet = WaveFunction::gaussian(&grid, -10.0, 1.0, 6.0)?;
    let t_total = 20.0;
    let prop = ScalarPropagator::new(
        &grid,
        PropagatorSpec::new(
            PropagatorKind::RelativisticSqrt,
            massless,
            t_total / steps as f64,
        )?,
    )?;
    let moved = prop.evolve(&packet, steps)?;
    let shift = moved.mean_position() - packet.mean_position();
    checks.push(CheckResult::at_most(
        "propagators.massless_transport",
        (shift - t_total).abs(),
        1e-8,
    ));
    Ok(checks)
}

/// Fitted exponent of `‖(U_rel e^{i mc² dt/ħ} − U_nr) φ‖` against the
/// momentum spread `s = σ_p/mc`, and the largest ratio of that deviation to
/// the bound `‖(p⁴ dt/(8 m³c² ħ)) φ‖`.
pub(crate) fn nonrelativistic_exponent() -> Result<(f64, f64)> {
    let particle = ParticleSpec::natural(1.0)?;
    let grid = make_grid(8192, -1024.0, 1024.0)?;
    let dt = 1.0;
    let rel = ScalarPropagator::new(
        &grid,
        PropagatorSpec::new(PropagatorKind::RelativisticSqrt, particle, dt)?,
    )?;
    let nr = ScalarPropagator::new(
        &grid,
        PropagatorSpec::new(PropagatorKind::Schrodinger, particle, dt)?,
    )?;
    let rest = Complex64::cis(dt);
    let mut logs = Vec::new();
    let mut budget = 0.0f64;
    for s in [0.02, 0.04, 0.08] {
        let phi = WaveFunction::momentum_gaussian(&grid, 0.0, 0.0, s)?;
        let a = rel.step(&phi)?.scale(rest);
        let b = nr.step(&phi)?;
        let dev = a.distance(&b)? / phi.norm();
        let bound = phi
            .amplitudes()
            .iter()
            .zip(grid.momenta())
            .map(|(z, p)| z.norm_sqr() * (p.powi(4) * dt / 8.0).powi(2))
            .sum::<f64>()
            .sqrt()
            * phi.weight().sqrt()
            / phi.norm();
        budget = budget.max(dev / bound);
        logs.push((s.ln(), dev.ln()));
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|l| l.0).sum::<f64>() / n;
    let my = logs.iter().map(|l| l.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|l| (l.0 - mx) * (l.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|l| (l.0 - mx).powi(2)).sum();
    Ok((sxy / sxx, budget))
}

/// Smooth subluminal velocity table built from a few random sinusoids.
pub(crate) fn random_trajectory(
    rng: &mut impl Rng,
    horizon: f64,
    samples: usize,
) -> Result<Trajectory> {
    let terms: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(0.2..=3.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let table = (0..samples)
        .map(|i| {
            let t = horizon * i as f64 / (samples - 1) as f64;
            let arg: f64 = terms.iter().map(|(a, w, ph)| a * (w * t + ph).sin()).sum();
            (t, 0.9 * arg.tanh())
        })
        .collect();
    Trajectory::new(table, Interpolation::CubicHermite, 1.0)
}

fn frames(s: &VerifySettings, rng: &mut ChaCha8Rng) -> Result<Vec<CheckResult>> {
    let opts = QuadratureOptions::default();
    let particle = ParticleSpec::natural(1.0)?;
    let es = particle.rest_energy();
    let mut checks = Vec::new();

    let t = 1.7;
    let mut constant = 0.0f64;
    let mut inertial = 0.0f64;
    for v in [0.0, 0.3, -0.45, 0.6, 0.8, 0.99] {
        let profile = UniformVelocity::new(v, t, 1.0)?;
        let exact = t * (1.0 - v * v).sqrt();
        constant = constant.max((proper_time_of(&profile, t, opts)? - exact).abs());
        let result = semiclassical_phase(&profile, &particle, &[t], opts)?;
        let reference = plane_wave_phase(&particle, v, t);
        let energy = es / (1.0 - v * v).sqrt();
        let scale = energy * t + (energy * v * v * t).abs();
        inertial = inertial.max((result.total_phase(0) - reference).abs() / scale);
    }
    checks.push(CheckResult::at_most(
        "frames.constant_velocity",
        constant,
        1e-12,
    ));
    checks.push(CheckResult::at_most(
        "frames.inertial_phase",
        inertial,
        1e-13,
    ));

    let accel = UniformAcceleration::new(1.0, 2.0, 1.0)?;
    let exact = accel.exact_proper_time(2.0);
    let coarse = proper_time_of(
        &accel,
        2.0,
        QuadratureOptions::new(Quadrature::Simpson, 32)?,
    )?;
    let fine = proper_time_of(
        &accel,
        2.0,
        QuadratureOptions::new(Quadrature::Simpson, 64)?,
    )?;
    let default = proper_time_of(&accel, 2.0, opts)?;
    checks.push(CheckResult::at_most(
        "frames.gudermannian",
        (default - exact).abs(),
        1e-9,
    ));
    checks.push(CheckResult::at_most(
        "frames.simpson_order",
        ((coarse - exact).abs() / (fine - exact).abs() - 16.0).abs(),
        2.0,
    ));
    let result = semiclassical_phase(&accel, &particle, &[0.5, 1.0, 2.0], opts)?;
    let scale = result
        .energy_phase
        .iter()
        .zip(&result.spatial_phase)
        .map(|(e, x)| e.abs() + x.abs())
        .fold(0.0, f64::max);
    checks.push(CheckResult::at_most(
        "frames.factorization",
        result.max_factorization_residual(),
        1e-12 * scale,
    ));

    let h = 1e-3;
    let fd = (proper_time_of(&accel, 0.5 + h, opts)? - proper_time_of(&accel, 0.5 - h, opts)?)
        / (2.0 * h);
    checks.push(CheckResult::at_most(
        "frames.velocity_of_time_derivative",
        (fd - velocity_of_time(&accel, 0.5)?).abs(),
        1e-6,
    ));

    let horizon = 3.0;
    let half = QuadratureOptions::new(opts.rule, opts.panels / 2)?;
    let mut action_residual = 0.0f64;
    let mut action_bound = f64::INFINITY;
    let mut dilation = 0.0f64;
    let mut monotone = 0.0f64;
    for _ in 0..s.frame_trajectories {
        let traj = random_trajectory(rng, horizon, 61)?;
        let ts = proper_time_of(&traj, horizon, opts)?;
        let ts_half = proper_time_of(&traj, horizon, half)?;
        let action = action_phase(&traj, &particle, horizon, opts)?;
        let bound = 1e-12 * es * horizon + es * (ts - ts_half).abs();
        action_residual = action_residual.max((action + es * ts).abs());
        action_bound = action_bound.min(bound);
        let mut prev = 0.0;
        for k in 1..=6 {
            let tk = horizon * k as f64 / 6.0;
            let v = proper_time_of(&traj, tk, opts)?;
            dilation = dilation.max(v - tk);
            monotone = monotone.max(prev - v);
            prev = v;
        }
    }
    checks.push(CheckResult::at_most(
        "frames.action_identity",
        action_residual,
        action_bound,
    ));
    checks.push(CheckResult::at_most(
        "frames.time_dilation_bound",
        dilation,
        1e-15 * horizon,
    ));
    checks.push(CheckResult::at_most(
        "frames.monotone_proper_time",
        monotone,
        0.0,
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Representation;

    #[test]
    fn family_names_round_trip() {
        for f in VerifyFamily::ALL {
            assert_eq!(VerifyFamily::from_name(f.name()), Some(f));
        }
        assert_eq!(VerifyFamily::from_name("nope"), None);
    }

    #[test]
    fn dense_oracle_matches_fft_commutator() {
        let grid = make_grid(32, -8.0, 8.0).unwrap();
        let psi = WaveFunction::gaussian(&grid, 0.3, 0.6, 0.7).unwrap();
        let dense = dense_commutator(&psi);
        let fast = commutator_xp_expectation(&psi).unwrap();
        assert!((dense - fast).norm() < 1e-10, "{dense} vs {fast}");
    }

    #[test]
    fn random_states_are_edge_decayed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [64, 512] {
            let grid = make_grid(n, -8.0, 8.0).unwrap();
            for _ in 0..50 {
                let (x0, s, p0) = random_edge_decayed(&mut rng, &grid);
                let psi = WaveFunction::gaussian(&grid, x0, s, p0).unwrap();
                assert!(psi.edge_ratio() <= 1e-10);
                assert_eq!(psi.representation(), Representation::Position);
            }
        }
    }
}
