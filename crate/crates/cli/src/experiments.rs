//! The four experiment runners: direct Caputo error curves, auxiliary
//! function stability, the toy interval PDE, and the dampened disk wave.
//! Each writes CSV files into the output directory for external plotting.

use crate::config::{DiskCfg, ExperimentConfig, ExperimentKind, TestFunctionTag, ToyCfg};
use crate::csvout::{Cell, CsvFile};
use fracspec_core::caputo::{psi_fulldomain_oracle, AuxState};
use fracspec_core::disk::{disk_synth, DiskBasis};
use fracspec_core::orthopoly1d::{CoeffVec, Jacobi};
use fracspec_core::quadrature::build_rule;
use fracspec_core::solvers::{
    solve_disk_wave, solve_toy_interval, toy_reference, DiskWaveParams, ToyProblemParams,
};
use fracspec_core::specialfns::{erf, lgamma, mittag_leffler, MlParams, SpecialFnError};
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub enum RunError {
    Io(std::io::Error),
    Numerical(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Io(e) => write!(f, "io error: {e}"),
            RunError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<SpecialFnError> for RunError {
    fn from(e: SpecialFnError) -> Self {
        RunError::Numerical(e.to_string())
    }
}

impl From<fracspec_core::solvers::SolverError> for RunError {
    fn from(e: fracspec_core::solvers::SolverError) -> Self {
        RunError::Numerical(e.to_string())
    }
}

impl From<fracspec_core::quadrature::QuadError> for RunError {
    fn from(e: fracspec_core::quadrature::QuadError) -> Self {
        RunError::Numerical(e.to_string())
    }
}

impl From<fracspec_core::caputo::CaputoError> for RunError {
    fn from(e: fracspec_core::caputo::CaputoError) -> Self {
        RunError::Numerical(e.to_string())
    }
}

/// Test functions with explicitly known Caputo derivatives.
struct TestFunction {
    tag: TestFunctionTag,
    ml_a: f64,
}

impl TestFunction {
    fn from_cfg(cfg: &ExperimentConfig) -> Self {
        let block = cfg.caputo_direct.as_ref().expect("validated");
        Self {
            tag: block.test_function,
            ml_a: block.ml_a.unwrap_or(0.5),
        }
    }

    fn eval(&self, t: f64) -> Result<f64, RunError> {
        Ok(match self.tag {
            TestFunctionTag::Tsquared => t * t,
            TestFunctionTag::Exp => t.exp(),
            TestFunctionTag::Mittag => mittag_leffler(MlParams::new(self.ml_a, 1.0)?, t)?,
        })
    }

    fn deriv(&self, t: f64) -> Result<f64, RunError> {
        Ok(match self.tag {
            TestFunctionTag::Tsquared => 2.0 * t,
            TestFunctionTag::Exp => t.exp(),
            TestFunctionTag::Mittag => {
                // term-wise derivative of Σ t^k / Γ(ak+1)
                let mut sum = 0.0;
                for k in 1..10_000u32 {
                    let kf = f64::from(k);
                    let term = kf
                        * ((kf - 1.0) * t.max(1e-300).ln() - lgamma(self.ml_a * kf + 1.0)?).exp();
                    sum += term;
                    if term.abs() < 1e-16 * (1.0 + sum.abs()) {
                        return Ok(sum);
                    }
                }
                return Err(RunError::Numerical(
                    "Mittag-Leffler derivative series did not converge".into(),
                ));
            }
        })
    }

    /// Closed-form D^α of the test function (α = 1/2 for exp and mittag).
    fn reference(&self, alpha: f64, t: f64) -> Result<f64, RunError> {
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(match self.tag {
            TestFunctionTag::Tsquared => {
                2.0 * t.powf(2.0 - alpha) / lgamma(3.0 - alpha)?.exp()
            }
            TestFunctionTag::Exp => t.exp() * erf(t.sqrt()),
            TestFunctionTag::Mittag => {
                // Σ_{k>=1} k! t^{k-1/2} / (Γ(k+1/2) Γ(1+ak)); the k = 0 term
                // cancels the -1/√(tπ) part of the printed formula exactly
                let mut sum = 0.0;
                for k in 1..10_000u32 {
                    let kf = f64::from(k);
                    let term = (lgamma(kf + 1.0)? - lgamma(kf + 0.5)?
                        + (kf - 0.5) * t.ln()
                        - lgamma(1.0 + self.ml_a * kf)?)
                    .exp();
                    sum += term;
                    if term < 1e-16 * (1.0 + sum) {
                        return Ok(sum);
                    }
                }
                return Err(RunError::Numerical(
                    "Mittag-Leffler reference series did not converge".into(),
                ));
            }
        })
    }
}

fn steps_for(t_final: f64, dt: f64) -> u64 {
    (t_final / dt).round().max(1.0) as u64
}

/// Error curves for the recursive Caputo computation against closed forms:
/// one file per configured step size with rows (t, numeric, reference,
/// abs_err, rel_err).
pub fn run_caputo_direct(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let tf = TestFunction::from_cfg(cfg);
    let stamp = cfg.to_json();
    let mut files = Vec::new();
    for (idx, dt) in cfg.dts().into_iter().enumerate() {
        let steps = steps_for(cfg.t_final, dt);
        let sample = cfg
            .sample_every
            .unwrap_or_else(|| (steps / 256).max(1) as usize) as u64;
        let rule = build_rule(cfg.method.to_quad(), cfg.alpha, cfg.l)?;
        let mut state = AuxState::new(rule, dt, vec![tf.eval(0.0)?]);
        let path = out_dir.join(format!("caputo_direct_dt{idx}.csv"));
        let mut csv = CsvFile::create(&path, &stamp, &["t", "numeric", "reference", "abs_err", "rel_err"])?;
        for n in 1..=steps {
            let t = n as f64 * dt;
            let f = [tf.eval(t)?];
            let numeric = state.caputo_apply(&f)?[0];
            state.psi_step(&f)?;
            if n % sample == 0 || n == steps {
                let reference = tf.reference(cfg.alpha, t)?;
                let abs = (numeric - reference).abs();
                let rel = if reference == 0.0 { 0.0 } else { abs / reference.abs() };
                csv.row(&[t.into(), numeric.into(), reference.into(), abs.into(), rel.into()])?;
            }
        }
        csv.finish()?;
        files.push(path);
    }
    Ok(files)
}

/// Stability of the auxiliary-function recurrence against full-domain
/// quadrature: one file per step size with rows (n, t, max_discrepancy).
pub fn run_psi_stability(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let tf = TestFunction::from_cfg(cfg);
    let stamp = cfg.to_json();
    let mut files = Vec::new();
    for (idx, dt) in cfg.dts().into_iter().enumerate() {
        let steps = steps_for(cfg.t_final, dt);
        let sample = cfg
            .sample_every
            .unwrap_or_else(|| (steps / 100).max(1) as usize) as u64;
        let rule = build_rule(cfg.method.to_quad(), cfg.alpha, cfg.l)?;
        let mut state = AuxState::new(rule.clone(), dt, vec![tf.eval(0.0)?]);
        let path = out_dir.join(format!("psi_stability_dt{idx}.csv"));
        let mut csv = CsvFile::create(&path, &stamp, &["n", "t", "max_discrepancy"])?;
        for n in 1..=steps {
            let t = n as f64 * dt;
            state.psi_step(&[tf.eval(t)?])?;
            if n % sample == 0 || n == steps {
                let deriv = |tau: f64| tf.deriv(tau).unwrap_or(f64::NAN);
                let oracle = psi_fulldomain_oracle(&rule, deriv, t, 64);
                let disc = (0..cfg.l)
                    .map(|j| (state.psi_row(j)[0] - oracle[j]).abs())
                    .fold(0.0f64, f64::max);
                if disc.is_nan() {
                    return Err(RunError::Numerical("oracle integrand evaluation failed".into()));
                }
                csv.row(&[Cell::Int(n), t.into(), disc.into()])?;
            }
        }
        csv.finish()?;
        files.push(path);
    }
    Ok(files)
}

/// Toy interval PDE: one file of rows (t, x, numeric, reference, abs_err,
/// rel_err) on a 64x64 spacetime sampling.
pub fn run_toy_pde(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let ToyCfg { k_coeff, c_coeff } = cfg.toy.clone().expect("validated");
    let steps = steps_for(cfg.t_final, cfg.dt);
    let params = ToyProblemParams {
        k: k_coeff,
        c: c_coeff,
        alpha: cfg.alpha,
        degree: cfg.k.expect("validated"),
        quad_points: cfg.l,
        dt: cfg.dt,
        t_final: cfg.t_final,
        method: cfg.method.to_quad(),
        sample_every: cfg.sample_every.unwrap_or_else(|| (steps / 63).max(1) as usize),
    };
    let out = solve_toy_interval(&params)?;
    let path = out_dir.join("toy_pde.csv");
    let mut csv = CsvFile::create(
        &path,
        &cfg.to_json(),
        &["t", "x", "numeric", "reference", "abs_err", "rel_err"],
    )?;
    for (ti, &t) in out.times.iter().enumerate() {
        let coeffs = CoeffVec::new(Jacobi::LEGENDRE, out.snapshots[ti].clone());
        for i in 0..64 {
            let x = -1.0 + 2.0 * i as f64 / 63.0;
            let numeric = coeffs.eval(x);
            let reference = toy_reference(&params, t, x)?;
            let abs = (numeric - reference).abs();
            let rel = if reference == 0.0 { 0.0 } else { abs / reference.abs() };
            csv.row(&[t.into(), x.into(), numeric.into(), reference.into(), abs.into(), rel.into()])?;
        }
    }
    csv.finish()?;
    Ok(vec![path])
}

/// Disk wave experiment: Cartesian field snapshots (empty cells outside the
/// disk), sensor traces, and a coefficient-decay table.
pub fn run_disk_wave(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    let disk: DiskCfg = cfg.disk.clone().expect("validated");
    let steps = steps_for(cfg.t_final, cfg.dt);
    let sensors = fracspec_core::solvers::sensor_ring(disk.sensor_count, disk.sensor_radius);
    let params = DiskWaveParams {
        c0: disk.c0,
        tau: disk.tau,
        alpha: cfg.alpha,
        degree: cfg.k.expect("validated"),
        quad_points: cfg.l,
        dt: cfg.dt,
        steps,
        method: cfg.method.to_quad(),
        paper_literal_scheme: disk.paper_literal_scheme,
        sample_every: disk.snapshot_every,
        sensors,
        sensor_every: disk.sensor_every,
    };
    let amp = disk.initial_amplitude;
    let f0 = move |x: f64, y: f64| amp * 4.0 * y * (1.0 - x * x - y * y).powi(2);
    let out = solve_disk_wave(&params, f0, |_, _| 0.0)?;
    let stamp = cfg.to_json();
    let mut files = Vec::new();

    let basis = DiskBasis::weighted_zernike(1.0);
    let grid_labels: Vec<String> = (0..101).map(|i| format!("x{i}")).collect();
    let grid_header: Vec<&str> = grid_labels.iter().map(String::as_str).collect();
    for (ti, &t) in out.times.iter().enumerate() {
        let step = (t / cfg.dt).round() as u64;
        let path = out_dir.join(format!("disk_snapshot_step{step}.csv"));
        let mut csv = CsvFile::create(&path, &stamp, &grid_header)?;
        for iy in 0..101 {
            let y = -1.0 + 2.0 * iy as f64 / 100.0;
            let cells: Vec<Cell> = (0..101)
                .map(|ix| {
                    let x = -1.0 + 2.0 * ix as f64 / 100.0;
                    if x * x + y * y > 1.0 {
                        Cell::Empty
                    } else {
                        Cell::Num(
                            disk_synth(&out.snapshots[ti], basis, x, y)
                                .expect("grid point inside the disk"),
                        )
                    }
                })
                .collect();
            csv.row(&cells)?;
        }
        csv.finish()?;
        files.push(path);
    }

    if let Some(trace) = &out.sensors {
        let path = out_dir.join("sensors.csv");
        let labels: Vec<String> = std::iter::once("t".to_string())
            .chain((1..=trace.positions.len()).map(|i| format!("s{i}")))
            .collect();
        let header: Vec<&str> = labels.iter().map(String::as_str).collect();
        let mut csv = CsvFile::create(&path, &stamp, &header)?;
        for (t, row) in trace.times.iter().zip(&trace.rows) {
            let mut cells = vec![Cell::Num(*t)];
            cells.extend(row.iter().map(|&v| Cell::Num(v)));
            csv.row(&cells)?;
        }
        csv.finish()?;
        files.push(path);
    }

    let path = out_dir.join("coeff_decay.csv");
    let mut csv = CsvFile::create(&path, &stamp, &["degree", "initial_max_abs", "final_max_abs"])?;
    let first = out.snapshots.first().expect("at least the initial snapshot").decay_profile();
    let last = out.snapshots.last().expect("at least one snapshot").decay_profile();
    for (deg, (a, b)) in first.iter().zip(&last).enumerate() {
        csv.row(&[Cell::Int(deg as u64), (*a).into(), (*b).into()])?;
    }
    csv.finish()?;
    files.push(path);
    Ok(files)
}

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>, RunError> {
    match cfg.experiment {
        ExperimentKind::CaputoDirect => run_caputo_direct(cfg, out_dir),
        ExperimentKind::PsiStability => run_psi_stability(cfg, out_dir),
        ExperimentKind::ToyPde => run_toy_pde(cfg, out_dir),
        ExperimentKind::DiskWave => run_disk_wave(cfg, out_dir),
    }
}
