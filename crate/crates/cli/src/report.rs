//! Machine-readable report of a single solver run.

use std::fmt::Write as _;
use std::time::Duration;

use fracjac::{Error, MeshSpec, SolverConfig, SolverRun};
use serde::{Deserialize, Serialize};

use crate::format::sci_full;

/// Bumped whenever a field of [`RunReport`] changes meaning or is removed.
pub const SCHEMA_VERSION: u32 = 1;

/// Dense-output samples per step used for `max_dense_error`.
pub const DENSE_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeshEcho {
    Graded { h1: f64, r: f64 },
    Uniform { n: usize },
}

impl From<MeshSpec> for MeshEcho {
    fn from(mesh: MeshSpec) -> Self {
        match mesh {
            MeshSpec::Graded { h1, r } => MeshEcho::Graded { h1, r },
            MeshSpec::Uniform { n } => MeshEcho::Uniform { n },
        }
    }
}

impl From<MeshEcho> for MeshSpec {
    fn from(mesh: MeshEcho) -> Self {
        match mesh {
            MeshEcho::Graded { h1, r } => MeshSpec::Graded { h1, r },
            MeshEcho::Uniform { n } => MeshSpec::Uniform { n },
        }
    }
}

/// The solver parameters of a run, exactly as used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub s: usize,
    pub k: usize,
    pub p: usize,
    pub mesh: MeshEcho,
    pub fp_tol: f64,
    pub fp_max_iters: usize,
    pub j_threshold: f64,
}

impl From<&SolverConfig> for ConfigEcho {
    fn from(cfg: &SolverConfig) -> Self {
        Self {
            s: cfg.s,
            k: cfg.k,
            p: cfg.p,
            mesh: cfg.mesh.into(),
            fp_tol: cfg.fp_tol,
            fp_max_iters: cfg.fp_max_iters,
            j_threshold: cfg.j_threshold,
        }
    }
}

impl From<&ConfigEcho> for SolverConfig {
    fn from(echo: &ConfigEcho) -> Self {
        SolverConfig {
            s: echo.s,
            k: echo.k,
            p: echo.p,
            fp_tol: echo.fp_tol,
            fp_max_iters: echo.fp_max_iters,
            mesh: echo.mesh.into(),
            j_threshold: echo.j_threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub n: usize,
    pub t: f64,
    pub h: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureReport {
    /// Step whose fixed-point iteration did not converge.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub last_increment: Option<f64>,
    pub message: String,
}

impl From<&Error> for FailureReport {
    fn from(err: &Error) -> Self {
        let message = err.to_string();
        match *err {
            Error::FixedPoint {
                step,
                iterations,
                last_increment,
            } => Self {
                step: Some(step),
                iterations: Some(iterations),
                last_increment: Some(last_increment),
                message,
            },
            _ => Self {
                step: None,
                iterations: None,
                last_increment: None,
                message,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub problem: String,
    pub alpha: f64,
    pub horizon: f64,
    pub config: ConfigEcho,
    pub status: RunStatus,
    /// Steps in the mesh.
    pub n_steps: usize,
    pub steps_completed: usize,
    pub steps: Vec<StepRecord>,
    /// Grid values `y_bar_n` for `n = 0..=steps_completed`, one row per point.
    pub values: Vec<Vec<f64>>,
    /// Max-norm error over the completed grid points. Present iff the problem
    /// has an exact solution.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_error: Option<f64>,
    /// Max-norm error of the dense output, when requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_dense_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<FailureReport>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn from_run(run: &SolverRun, dense_error: bool, wall_time: Duration) -> Self {
        let problem = run.problem();
        let steps = run
            .records()
            .iter()
            .map(|info| StepRecord {
                n: info.n,
                t: info.t,
                h: info.h,
                iterations: info.iterations,
            })
            .collect();
        let values = (0..=run.steps_done())
            .map(|n| run.y_bar(n).expect("completed step").to_vec())
            .collect();
        let max_dense_error = if dense_error {
            run.max_dense_error(DENSE_SAMPLES).and_then(|r| r.ok())
        } else {
            None
        };
        Self {
            schema_version: SCHEMA_VERSION,
            problem: problem.id().to_string(),
            alpha: problem.alpha(),
            horizon: problem.horizon(),
            config: run.config().into(),
            status: if run.succeeded() { RunStatus::Ok } else { RunStatus::Failed },
            n_steps: run.mesh().n_steps(),
            steps_completed: run.steps_done(),
            steps,
            values,
            max_error: run.max_grid_error(),
            max_dense_error,
            failure: run.failure().map(FailureReport::from),
            wall_time_s: wall_time.as_secs_f64(),
        }
    }

    pub fn succeeded(&self) -> bool {
        self.status == RunStatus::Ok
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// One row per completed step: `n,t,h,iterations,y1..ym`, plus the
    /// pointwise max-norm error when an exact solution is known. Timing is
    /// left out so that identical runs give identical bytes.
    pub fn to_csv(&self, errors: Option<&[f64]>) -> String {
        let dim = self.values.first().map_or(0, Vec::len);
        let mut out = String::from("n,t,h,iterations");
        for i in 1..=dim {
            write!(out, ",y{i}").unwrap();
        }
        if errors.is_some() {
            out.push_str(",error");
        }
        out.push('\n');
        for (idx, step) in self.steps.iter().enumerate() {
            write!(
                out,
                "{},{},{},{}",
                step.n,
                sci_full(step.t),
                sci_full(step.h),
                step.iterations
            )
            .unwrap();
            for v in &self.values[step.n] {
                write!(out, ",{}", sci_full(*v)).unwrap();
            }
            if let Some(errors) = errors {
                write!(out, ",{}", sci_full(errors[idx])).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Pointwise grid errors `||y_bar_n - y(t_n)||_inf` for `n = 1..=steps_done`.
pub fn grid_errors(run: &SolverRun) -> Option<Vec<f64>> {
    let problem = run.problem();
    if !problem.has_exact() {
        return None;
    }
    let errors = (1..=run.steps_done())
        .map(|n| {
            let exact = problem.exact_at(run.mesh().point(n)).unwrap();
            run.y_bar(n)
                .unwrap()
                .iter()
                .zip(&exact)
                .fold(0.0_f64, |acc, (a, e)| acc.max((a - e).abs()))
        })
        .collect();
    Some(errors)
}
