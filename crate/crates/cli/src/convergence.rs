//! Observed convergence orders from a sequence of resolutions.

use std::fmt::Write as _;

use fracjac::{solve, MeshSpec, Problem, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::format::sci3;
use crate::report::{MeshEcho, SCHEMA_VERSION};

/// Errors below this are treated as rounding noise and give no order.
pub const ROUNDOFF_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Ok,
    AtRoundoff,
    Failed,
    NoReference,
}

impl PointStatus {
    fn note(self) -> &'static str {
        match self {
            PointStatus::Ok => "",
            PointStatus::AtRoundoff => "at roundoff",
            PointStatus::Failed => "failed",
            PointStatus::NoReference => "no reference",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub mesh: MeshEcho,
    /// Step size used for the order: `T/N` for uniform meshes, `h1` for graded ones.
    pub h: f64,
    pub n_steps: usize,
    pub error: Option<f64>,
    pub status: PointStatus,
    /// Order against the previous resolution, when both errors are usable.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub schema_version: u32,
    pub problem: String,
    pub s: usize,
    pub k: usize,
    pub points: Vec<ConvergencePoint>,
}

/// `log(e_prev / e) / log(h_prev / h)`.
pub fn observed_order(h_prev: f64, e_prev: f64, h: f64, e: f64) -> f64 {
    (e_prev / e).ln() / (h_prev / h).ln()
}

/// Runs `base` on each mesh (at least three) and estimates orders from
/// successive error ratios.
pub fn study(problem: &Problem, base: SolverConfig, meshes: &[MeshSpec]) -> Result<ConvergenceStudy, CliError> {
    if meshes.len() < 3 {
        return Err(CliError::InvalidArguments(format!(
            "a convergence study needs at least 3 resolutions, got {}",
            meshes.len()
        )));
    }
    let mut points = meshes
        .par_iter()
        .map(|&mesh| {
            let cfg = SolverConfig { mesh, ..base };
            let run = solve(problem, cfg)?;
            let h = match mesh {
                MeshSpec::Uniform { n } => problem.horizon() / n as f64,
                MeshSpec::Graded { h1, .. } => h1,
            };
            let (error, status) = if !run.succeeded() {
                (None, PointStatus::Failed)
            } else {
                match run.max_grid_error() {
                    None => (None, PointStatus::NoReference),
                    Some(e) if e < ROUNDOFF_THRESHOLD => (Some(e), PointStatus::AtRoundoff),
                    Some(e) => (Some(e), PointStatus::Ok),
                }
            };
            Ok(ConvergencePoint {
                mesh: mesh.into(),
                h,
                n_steps: run.mesh().n_steps(),
                error,
                status,
                order: None,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    for i in 1..points.len() {
        let (prev, cur) = (&points[i - 1], &points[i]);
        if prev.status == PointStatus::Ok && cur.status == PointStatus::Ok {
            let order = observed_order(prev.h, prev.error.unwrap(), cur.h, cur.error.unwrap());
            points[i].order = Some(order);
        }
    }
    Ok(ConvergenceStudy {
        schema_version: SCHEMA_VERSION,
        problem: problem.id().to_string(),
        s: base.s,
        k: base.k,
        points,
    })
}

impl ConvergenceStudy {
    /// Orders that could be estimated.
    pub fn orders(&self) -> Vec<f64> {
        self.points.iter().filter_map(|p| p.order).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("mesh,N,h,error,order,note\n");
        for p in &self.points {
            let mesh = match p.mesh {
                MeshEcho::Uniform { n } => format!("uniform N={n}"),
                MeshEcho::Graded { h1, r } => format!("graded h1={} r={r}", sci3(h1)),
            };
            writeln!(
                out,
                "{mesh},{},{},{},{},{}",
                p.n_steps,
                sci3(p.h),
                p.error.map_or(String::new(), sci3),
                p.order.map_or(String::new(), |o| format!("{o:.3}")),
                p.status.note()
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}
