//! Acceptance suite: one PASS/FAIL line per criterion, checked against
//! oracles written here rather than the library's own checks.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use propertime::canonical::{
    check_alpha_imaginary, check_energy_as_time_derivative, check_squaring, extract_alpha,
    time_derivative_convergence, AlphaStencil, AmplitudeKernel, KernelMatrix, ProperTimeAxis,
    SquaringVariant,
};
use propertime::frames::{
    action_phase, proper_time_of, semiclassical_phase, Interpolation, Quadrature,
    QuadratureOptions, Trajectory, UniformAcceleration, UniformVelocity,
};
use propertime::operators::{commutator_xp_expectation, proper_time_op};
use propertime::propagators::{
    dirac_step_matrix, DiracPropagator, PropagatorKind, PropagatorSpec, ScalarPropagator,
    SpinorWaveFunction,
};
use propertime::scenario::parse_json;
use propertime::scenario::report::render_json;
use propertime::{make_grid, ParticleSpec, SpatialGrid, WaveFunction};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: String) -> Result<String, String> {
    if ok {
        Ok(what)
    } else {
        Err(what)
    }
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// Symmetric integer modes `−n/2 … n/2 − 1` and their momenta.
fn momenta(n: usize, length: f64, hbar: f64) -> Vec<f64> {
    (0..n as i64)
        .map(|m| m - n as i64 / 2)
        .map(|m| 2.0 * PI * hbar * m as f64 / length)
        .collect()
}

/// `⟨ψ|[x, p]|ψ⟩/⟨ψ|ψ⟩` with `p = F† diag(p_k) F` built as a dense matrix.
fn dense_commutator(xs: &[f64], psi: &[Complex64], length: f64, hbar: f64) -> Complex64 {
    let n = xs.len();
    let ps = momenta(n, length, hbar);
    let f: Vec<Complex64> = (0..n * n)
        .map(|idx| Complex64::cis(-ps[idx / n] * xs[idx % n] / hbar) / (n as f64).sqrt())
        .collect();
    let p_apply = |v: &[Complex64]| -> Vec<Complex64> {
        let fv: Vec<Complex64> = (0..n)
            .map(|k| (0..n).map(|j| f[k * n + j] * v[j]).sum::<Complex64>() * ps[k])
            .collect();
        (0..n)
            .map(|j| (0..n).map(|k| f[k * n + j].conj() * fv[k]).sum())
            .collect()
    };
    let xpsi: Vec<Complex64> = psi.iter().zip(xs).map(|(a, x)| a * x).collect();
    let ppsi = p_apply(psi);
    let pxpsi = p_apply(&xpsi);
    let num: Complex64 = (0..n)
        .map(|j| psi[j].conj() * (xs[j] * ppsi[j] - pxpsi[j]))
        .sum();
    num / psi.iter().map(|a| a.norm_sqr()).sum::<f64>()
}

fn gaussian_samples(grid: &SpatialGrid, x0: f64, sigma: f64, p0: f64) -> Vec<Complex64> {
    grid.positions()
        .iter()
        .map(|&x| Complex64::from_polar((-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp(), p0 * x))
        .collect()
}

fn criterion_commutator() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let small = make_grid(64, -8.0, 8.0).map_err(|e| e.to_string())?;
    let mut oracle_gap = 0.0f64;
    let mut oracle_identity = 0.0f64;
    for _ in 0..5 {
        let (x0, sigma, p0) = (
            rng.gen_range(-0.5..=0.5),
            rng.gen_range(0.5..=0.6),
            rng.gen_range(-2.0..=2.0),
        );
        let samples = gaussian_samples(&small, x0, sigma, p0);
        let oracle = dense_commutator(&small.positions(), &samples, small.length(), 1.0);
        let psi = WaveFunction::gaussian(&small, x0, sigma, p0).map_err(|e| e.to_string())?;
        let lib = commutator_xp_expectation(&psi).map_err(|e| e.to_string())?;
        oracle_gap = oracle_gap.max((lib - oracle).norm());
        oracle_identity = oracle_identity.max((oracle - i()).norm());
    }

    let grid = make_grid(512, -8.0, 8.0).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let psi = WaveFunction::gaussian(
            &grid,
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(0.3..=0.6),
            rng.gen_range(-10.0..=10.0),
        )
        .map_err(|e| e.to_string())?;
        let value = commutator_xp_expectation(&psi).map_err(|e| e.to_string())?;
        worst = worst.max((value - i()).norm());
    }
    let elapsed = started.elapsed().as_secs_f64();
    ensure(
        worst <= 1e-8 && oracle_gap <= 1e-8 && oracle_identity <= 1e-8 && elapsed < 5.0,
        format!(
            "n=512 worst |<[x,p]> - i| = {worst:.2e} (tol 1e-8); n=64 dense oracle gap {oracle_gap:.2e}, oracle identity {oracle_identity:.2e}; {elapsed:.3} s (< 5 s)"
        ),
    )
}

fn criterion_functional() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let xp = AmplitudeKernel::position_momentum(1.0);
    let te = AmplitudeKernel::proper_time_energy(1.0, Complex64::new(0.7, -0.2))
        .map_err(|e| e.to_string())?;
    let mut squaring = 0.0f64;
    for _ in 0..100 {
        let (x, p) = (rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0));
        let (ts, es) = (rng.gen_range(0.0..=2.0), rng.gen_range(0.0..=3.0));
        squaring = squaring
            .max(check_squaring(&xp, x, p, SquaringVariant::Symmetric))
            .max(check_squaring(&te, ts, -es, SquaringVariant::Symmetric));
        let direct = (Complex64::cis(2.0 * x * p) - Complex64::cis(x * p).powi(2)).norm();
        squaring = squaring.max(direct);
    }

    let mut alpha_err = 0.0f64;
    for k in 0..10 {
        let alpha = Complex64::new(0.0, 0.25 + 0.5 * k as f64) + if k % 3 == 0 { 0.1 } else { 0.0 };
        let kernel = |u: f64, w: f64| Complex64::new(1.3, 0.4) * (alpha * u * w).exp();
        let found = extract_alpha(&kernel, AlphaStencil::default()).map_err(|e| e.to_string())?;
        alpha_err = alpha_err.max((found - alpha).norm());
    }

    let axis = || ProperTimeAxis::new(2.0, 65);
    let energies = vec![0.5, 1.0, 2.0, 3.0];
    let span = 2.0 * (3.0 - 0.0);
    let mut detected = true;
    let mut ratio_gap = 0.0f64;
    for re in [0.05, -0.05, 0.2, -0.2] {
        let kernel = AmplitudeKernel::new(Complex64::new(re, 1.0), Complex64::new(1.0, 0.0))
            .map_err(|e| e.to_string())?;
        let matrix = KernelMatrix::from_kernel(
            axis().map_err(|e| e.to_string())?,
            energies.clone(),
            &kernel,
        )
        .map_err(|e| e.to_string())?;
        let ratio = check_alpha_imaginary(&matrix).map_err(|e| e.to_string())?;
        let exact = (re.abs() * span).exp();
        ratio_gap = ratio_gap.max((ratio - exact).abs() / exact);
        detected &= ratio > 1.0 + 1e-3;
    }
    let flat = AmplitudeKernel::new(Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0))
        .map_err(|e| e.to_string())?;
    let matrix = KernelMatrix::from_kernel(axis().map_err(|e| e.to_string())?, energies, &flat)
        .map_err(|e| e.to_string())?;
    let flat_ratio = check_alpha_imaginary(&matrix).map_err(|e| e.to_string())? - 1.0;

    ensure(
        squaring <= 1e-12 && alpha_err <= 1e-8 && detected && ratio_gap <= 1e-10 && flat_ratio <= 1e-12,
        format!(
            "squaring {squaring:.2e} (tol 1e-12, 100 points, both variants); alpha error {alpha_err:.2e} (tol 1e-8, 10 values); planted Re detected {detected} (ratio vs exp(|Re a| span) gap {ratio_gap:.1e}); Re=0 ratio-1 {flat_ratio:.1e} (tol 1e-12)"
        ),
    )
}

fn criterion_spectrum() -> Outcome {
    let grid = make_grid(512, -8.0, 8.0).map_err(|e| e.to_string())?;
    let particle = ParticleSpec::natural(1.0).map_err(|e| e.to_string())?;
    let t = 2.0;
    let values = proper_time_op(&grid, &particle, t).real_values();
    let ps = grid.momenta();
    let in_range = values.iter().all(|&v| (0.0..=t).contains(&v));

    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by(|&a, &b| ps[a].abs().total_cmp(&ps[b].abs()));
    let monotone = order.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        ps[a].abs() == ps[b].abs() || values[b] <= values[a]
    });
    let zero = order[0];
    let at_zero = (values[zero] - t).abs();
    let p_max = ps.iter().fold(0.0f64, |m, p| m.max(p.abs()));
    let edge = values[*order.last().unwrap()];
    let decays = edge <= t * 1.0 / p_max;

    let mut spot = 0.0f64;
    for k in (0..512).step_by(51).take(10) {
        let p = ps[k];
        let exact = t * 1.0 / (p * p + 1.0).sqrt();
        spot = spot.max((values[k] - exact).abs());
    }
    ensure(
        in_range && monotone && at_zero <= 1e-15 && decays && spot <= 1e-14,
        format!(
            "in [0,2] {in_range}; monotone in |p| {monotone}; |t_s(0) - 2| {at_zero:.1e}; t_s(p_max={p_max:.1}) = {edge:.3e} (<= t mc/p_max); spot error {spot:.1e} (tol 1e-14)"
        ),
    )
}

fn criterion_kernel() -> Outcome {
    let energies = vec![0.5, 1.0, 2.0];
    let coeffs = vec![
        Complex64::new(0.3, -0.8),
        Complex64::new(-0.6, 0.1),
        Complex64::new(0.9, 0.4),
    ];
    let a = Complex64::new(1.0, 0.0);
    let matrix = KernelMatrix::standard(
        ProperTimeAxis::new(1.0, 2001).map_err(|e| e.to_string())?,
        energies.clone(),
        a,
        1.0,
    )
    .map_err(|e| e.to_string())?;
    let residual =
        check_energy_as_time_derivative(&matrix, &coeffs, 1.0).map_err(|e| e.to_string())?;
    let (_, _, ratio) = time_derivative_convergence(1.0, 1001, &energies, &coeffs, a, 1.0)
        .map_err(|e| e.to_string())?;

    // A single energy has residual |1 − sin(Eh)/(Eh)| exactly.
    let single = KernelMatrix::standard(
        ProperTimeAxis::new(1.0, 2001).map_err(|e| e.to_string())?,
        vec![2.0],
        a,
        1.0,
    )
    .map_err(|e| e.to_string())?;
    let got = check_energy_as_time_derivative(&single, &[Complex64::new(1.0, 0.0)], 1.0)
        .map_err(|e| e.to_string())?;
    let eh: f64 = 2.0 * 1.0 / 2000.0;
    let exact = 1.0 - eh.sin() / eh;
    let oracle_gap = (got - exact).abs() / exact;
    ensure(
        residual <= 1e-6 && (3.5..=4.5).contains(&ratio) && oracle_gap <= 1e-4,
        format!(
            "residual {residual:.2e} at 2001 nodes (tol 1e-6); doubling ratio {ratio:.3} (in [3.5,4.5]); single-energy oracle gap {oracle_gap:.1e}"
        ),
    )
}

fn density_width(psi: &WaveFunction) -> f64 {
    let pos = psi.to_position();
    let xs = pos.grid().positions();
    let w: Vec<f64> = pos.amplitudes().iter().map(|z| z.norm_sqr()).collect();
    let n: f64 = w.iter().sum();
    let mean: f64 = w.iter().zip(&xs).map(|(w, x)| w * x).sum::<f64>() / n;
    (w.iter()
        .zip(&xs)
        .map(|(w, x)| w * (x - mean).powi(2))
        .sum::<f64>()
        / n)
        .sqrt()
}

fn grid_norm(psi: &WaveFunction) -> f64 {
    let pos = psi.to_position();
    pos.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>() * pos.grid().dx()
}

fn criterion_propagators() -> Outcome {
    let e = |e: propertime::Error| e.to_string();
    let particle = ParticleSpec::natural(1.0).map_err(e)?;
    let grid = make_grid(1024, -40.0, 40.0).map_err(e)?;
    let steps = 1000;
    let dt = 5.0 / steps as f64;
    let sigma0 = 1.0;
    let psi0 = WaveFunction::gaussian(&grid, 0.0, sigma0, 0.0).map_err(e)?;

    let schr = ScalarPropagator::new(
        &grid,
        PropagatorSpec::new(PropagatorKind::Schrodinger, particle, dt).map_err(e)?,
    )
    .map_err(e)?;
    let mut psi = psi0.clone();
    let mut width_err = 0.0f64;
    for chunk in 1..=10 {
        psi = schr.evolve(&psi, steps / 10).map_err(e)?;
        let t = (chunk * steps / 10) as f64 * dt;
        let exact = sigma0 * (1.0 + (t / (2.0 * sigma0 * sigma0)).powi(2)).sqrt();
        width_err = width_err.max((density_width(&psi) - exact).abs() / exact);
    }

    let n0 = grid_norm(&psi0);
    let mut drift = 0.0f64;
    let moving = WaveFunction::gaussian(&grid, -5.0, 1.0, 2.0).map_err(e)?;
    for kind in [
        PropagatorKind::Schrodinger,
        PropagatorKind::RelativisticSqrt,
        PropagatorKind::ProperTimePhase,
    ] {
        let prop =
            ScalarPropagator::new(&grid, PropagatorSpec::new(kind, particle, dt).map_err(e)?)
                .map_err(e)?;
        let mut psi = moving.clone();
        for _ in 0..steps {
            psi = prop.step(&psi).map_err(e)?;
        }
        drift = drift.max((grid_norm(&psi) - n0).abs() / n0);
    }
    let dirac = DiracPropagator::new(
        &grid,
        PropagatorSpec::new(PropagatorKind::Dirac1D, particle, dt).map_err(e)?,
    )
    .map_err(e)?;
    let spinor0 = SpinorWaveFunction::positive_energy(&moving, &particle).map_err(e)?;
    let mut spinor = spinor0.clone();
    for _ in 0..steps {
        spinor = dirac.step(&spinor).map_err(e)?;
    }
    let dirac_norm = grid_norm(spinor.upper()) + grid_norm(spinor.lower());
    drift = drift.max((dirac_norm - n0).abs() / n0);

    let (slope, model_gap) = nonrelativistic_slope().map_err(e)?;

    let mut phase_err = 0.0f64;
    let tau = 0.37;
    for p in grid.momenta() {
        let energy = (1.0 + p * p).sqrt();
        let (a, b) = (energy + 1.0, p);
        let norm = a.hypot(b);
        let (u, l) = (Complex64::new(a / norm, 0.0), Complex64::new(b / norm, 0.0));
        let m = dirac_step_matrix(&particle, p, tau);
        let phase = Complex64::cis(-energy * tau);
        let out_u = m[0][0] * u + m[0][1] * l;
        let out_l = m[1][0] * u + m[1][1] * l;
        phase_err = phase_err
            .max((out_u - phase * u).norm())
            .max((out_l - phase * l).norm());
    }
    let t_total = steps as f64 * dt;
    let evolved = spinor.to_momentum();
    let start = spinor0.to_momentum();
    for (k, p) in grid.momenta().into_iter().enumerate() {
        let phase = Complex64::cis(-(1.0 + p * p).sqrt() * t_total);
        let err = (evolved.upper().amplitudes()[k] - phase * start.upper().amplitudes()[k]).norm()
            + (evolved.lower().amplitudes()[k] - phase * start.lower().amplitudes()[k]).norm();
        phase_err = phase_err.max(err);
    }

    ensure(
        width_err <= 1e-6 && drift <= 1e-9 && (slope - 4.0).abs() <= 0.5 && model_gap <= 1.0 && phase_err <= 1e-12,
        format!(
            "width law {width_err:.2e} (tol 1e-6); norm drift {drift:.2e} over 1000 steps (tol 1e-9); exponent {slope:.3} (4 +/- 0.5, closed-form gap/allowance {model_gap:.2}); Dirac phase {phase_err:.1e} (tol 1e-12)"
        ),
    )
}

/// Fits `log deviation` against `log(p-scale/mc)` between one relativistic
/// and one Schrödinger step, for momentum Gaussians of width `s·mc`. Also
/// returns the largest gap to the closed-form deviation, in units of
/// `1e-6·model + 1e-10` (an FFT round-trip floor).
fn nonrelativistic_slope() -> propertime::Result<(f64, f64)> {
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
    let mut points = Vec::new();
    let mut gap = 0.0f64;
    for s in [0.02, 0.04, 0.08] {
        let phi = WaveFunction::momentum_gaussian(&grid, 0.0, 0.0, s)?;
        let a = rel.step(&phi)?.to_momentum();
        let b = nr.step(&phi)?.to_momentum();
        let weights: Vec<f64> = phi.amplitudes().iter().map(|z| z.norm_sqr()).collect();
        let total: f64 = weights.iter().sum();
        let measured = (a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x * Complex64::cis(dt) - y).norm_sqr())
            .sum::<f64>()
            / total)
            .sqrt();
        let model = (weights
            .iter()
            .zip(grid.momenta())
            .map(|(w, p)| {
                let diff = ((1.0 + p * p).sqrt() - 1.0 - p * p / 2.0) * dt;
                w * (2.0 - 2.0 * diff.cos())
            })
            .sum::<f64>()
            / total)
            .sqrt();
        gap = gap.max((measured - model).abs() / (1e-6 * model + 1e-10));
        points.push((s.ln(), measured.ln()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok((sxy / sxx, gap))
}

fn simpson(f: impl Fn(f64) -> f64, t: f64, panels: usize) -> f64 {
    let h = t / panels as f64;
    let inner: f64 = (1..panels)
        .map(|k| f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(0.0) + f(t) + inner) * h / 3.0
}

fn criterion_frames() -> Outcome {
    let e = |e: propertime::Error| e.to_string();
    let opts = QuadratureOptions::default();
    let particle = ParticleSpec::natural(1.0).map_err(e)?;
    let t = 1.7;

    let mut constant = 0.0f64;
    let mut inertial = 0.0f64;
    for v in [0.0, 0.25, -0.5, 0.75, 0.95] {
        let profile = UniformVelocity::new(v, t, 1.0).map_err(e)?;
        let exact = t * (1.0 - v * v).sqrt();
        constant = constant.max((proper_time_of(&profile, t, opts).map_err(e)? - exact).abs());
        let result = semiclassical_phase(&profile, &particle, &[t], opts).map_err(e)?;
        let energy = 1.0 / (1.0 - v * v).sqrt();
        let momentum = energy * v;
        let reference = -energy * t + momentum * v * t;
        let scale = energy * t + (momentum * v * t).abs();
        inertial = inertial.max((result.total_phase(0) - reference).abs() / scale);
    }

    let horizon = 2.0;
    let accel = UniformAcceleration::new(1.0, horizon, 1.0).map_err(e)?;
    let gd = 2.0 * (horizon / 2.0).tanh().atan();
    let err = |panels| -> Result<f64, String> {
        let opts = QuadratureOptions::new(Quadrature::Simpson, panels).map_err(e)?;
        Ok((proper_time_of(&accel, horizon, opts).map_err(e)? - gd).abs())
    };
    let (e32, e64) = (err(32)?, err(64)?);
    let ratio = e32 / e64;

    let mut rng = ChaCha8Rng::seed_from_u64(6006);
    let mut action_worst = 0.0f64;
    for _ in 0..20 {
        let terms: Vec<(f64, f64, f64)> = (0..3)
            .map(|_| {
                (
                    rng.gen_range(-1.0..=1.0),
                    rng.gen_range(0.2..=3.0),
                    rng.gen_range(0.0..2.0 * PI),
                )
            })
            .collect();
        let velocity = |s: f64| -> f64 {
            0.9 * terms
                .iter()
                .map(|(a, w, ph)| a * (w * s + ph).sin())
                .sum::<f64>()
                .tanh()
        };
        let horizon = 3.0;
        let table: Vec<(f64, f64)> = (0..=300)
            .map(|k| k as f64 * 0.01)
            .map(|s| (s, velocity(s)))
            .collect();
        let traj = Trajectory::new(table, Interpolation::CubicHermite, 1.0).map_err(e)?;
        let action = action_phase(&traj, &particle, horizon, opts).map_err(e)?;
        let coarse = QuadratureOptions::new(Quadrature::Simpson, opts.panels / 2).map_err(e)?;
        let ts = proper_time_of(&traj, horizon, opts).map_err(e)?;
        let ts_coarse = proper_time_of(&traj, horizon, coarse).map_err(e)?;
        let oracle = simpson(|s| (1.0 - velocity(s).powi(2)).sqrt(), horizon, 20000);
        let bound = 1e-12 * horizon + (ts - ts_coarse).abs() + (oracle - ts).abs();
        action_worst = action_worst.max((action + ts).abs() / bound);
        let oracle_gap = (ts - oracle).abs();
        if oracle_gap > 1e-5 {
            return Err(format!(
                "sampled trajectory proper time off its oracle by {oracle_gap:.2e}"
            ));
        }
    }

    ensure(
        constant <= 1e-12 && (ratio - 16.0).abs() <= 2.0 && action_worst <= 1.0 && inertial <= 1e-13,
        format!(
            "constant v {constant:.1e} (tol 1e-12); gudermannian error ratio {ratio:.3} at 32->64 panels (~16); action identity worst residual/bound {action_worst:.2e} over 20 trajectories (<= 1); inertial phase {inertial:.1e} (tol 1e-13)"
        ),
    )
}

fn criterion_determinism() -> Outcome {
    let scenario = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/verify.scenario");
    let run = || -> Result<(Vec<u8>, f64), String> {
        let started = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_propertime"))
            .args(["verify", scenario, "--seed", "42", "--quiet"])
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = started.elapsed().as_secs_f64();
        if out.status.code() != Some(0) {
            return Err(format!(
                "default verify run exited {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        Ok((out.stdout, elapsed))
    };
    let (a, elapsed) = run()?;
    let (b, _) = run()?;
    let identical = a == b;
    let text = String::from_utf8(a).map_err(|e| e.to_string())?;
    let report = parse_json(&text).map_err(|e| e.to_string())?;
    let reparsed = parse_json(&render_json(&report)).map_err(|e| e.to_string())?;
    let exact = reparsed == report
        && report.checks.iter().zip(&reparsed.checks).all(|(x, y)| {
            x.residual.to_bits() == y.residual.to_bits()
                && x.tolerance.to_bits() == y.tolerance.to_bits()
        });
    let rerendered = render_json(&report) == text;
    ensure(
        identical && exact && rerendered && elapsed < 60.0,
        format!(
            "seed 42 byte-identical {identical}; JSON numerics bit-exact {exact}; re-render identical {rerendered}; default verify run {elapsed:.2} s (< 60 s)"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 commutator", criterion_commutator),
        ("2 functional-equation", criterion_functional),
        ("3 proper-time spectrum", criterion_spectrum),
        ("4 kernel time derivative", criterion_kernel),
        ("5 propagator oracles", criterion_propagators),
        ("6 frames", criterion_frames),
        ("7 determinism and round-trip", criterion_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
