//! The benchmark error tables: rows are basis sizes `s`, columns are mesh
//! parameters (or problems), cells are maximum errors.

use std::fmt::Write as _;

use fracjac::{solve, MeshSpec, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::find_problem;
use crate::format::sci3;
use crate::report::{MeshEcho, DENSE_SAMPLES, SCHEMA_VERSION};

/// Cell content for a run whose fixed-point iteration failed.
pub const FAILURE_MARKER: &str = "***";

/// Basis sizes listed in every table.
pub const ROW_S: [usize; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20];

/// Fixed-point iteration cap used for table cells. Low-order runs on the
/// long-horizon problem need a few hundred iterations in their first steps.
pub const TABLE_FP_MAX_ITERS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum KPolicy {
    Fixed(usize),
    EqualToS,
    SPlus(usize),
}

impl KPolicy {
    pub fn k_for(self, s: usize) -> usize {
        match self {
            KPolicy::Fixed(k) => k.max(s),
            KPolicy::EqualToS => s,
            KPolicy::SPlus(extra) => s + extra,
        }
    }

    pub fn describe(self) -> String {
        match self {
            KPolicy::Fixed(k) => format!("k={k}"),
            KPolicy::EqualToS => "k=s".to_string(),
            KPolicy::SPlus(extra) => format!("k=s+{extra}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableColumn {
    pub label: String,
    pub problem: String,
    pub mesh: MeshEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableSpec {
    pub id: u8,
    pub title: String,
    /// Header of the first column, e.g. `s\N`.
    pub corner: String,
    pub k_policy: KPolicy,
    pub columns: Vec<TableColumn>,
    /// Whether a row with the step count of each column follows the header.
    pub show_step_counts: bool,
}

impl TableSpec {
    pub fn get(id: u8) -> Result<Self, CliError> {
        let h1_sweep = |k_policy: KPolicy, what: &str| TableSpec {
            id,
            title: format!("Maximum error for prob1, r=1.01 and {what}"),
            corner: "s\\h1".to_string(),
            k_policy,
            columns: [1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9]
                .iter()
                .map(|&h1| TableColumn {
                    label: sci3(h1),
                    problem: "prob1".to_string(),
                    mesh: MeshEcho::Graded { h1, r: 1.01 },
                })
                .collect(),
            show_step_counts: true,
        };
        let n_sweep = |problem: &str, ns: &[usize]| TableSpec {
            id,
            title: format!("Maximum error for {problem}, constant timestep h=1/N, k=30"),
            corner: "s\\N".to_string(),
            k_policy: KPolicy::Fixed(30),
            columns: ns
                .iter()
                .map(|&n| TableColumn {
                    label: n.to_string(),
                    problem: problem.to_string(),
                    mesh: MeshEcho::Uniform { n },
                })
                .collect(),
            show_step_counts: false,
        };
        let spec = match id {
            1 => h1_sweep(KPolicy::Fixed(30), "k=30"),
            2 => h1_sweep(KPolicy::EqualToS, "k=s"),
            3 => h1_sweep(KPolicy::SPlus(5), "k=s+5"),
            4 => n_sweep("prob2", &[2, 4, 8, 16, 32]),
            5 => TableSpec {
                id,
                title: "Maximum error for prob3 and prob34, r=1.2 and h1=1e-11, k=30".to_string(),
                corner: "s".to_string(),
                k_policy: KPolicy::Fixed(30),
                columns: ["prob3", "prob34"]
                    .iter()
                    .map(|p| TableColumn {
                        label: p.to_string(),
                        problem: p.to_string(),
                        mesh: MeshEcho::Graded { h1: 1e-11, r: 1.2 },
                    })
                    .collect(),
                show_step_counts: true,
            },
            6 => n_sweep("prob4", &[2, 4, 8, 16, 32, 64]),
            other => {
                return Err(CliError::InvalidArguments(format!(
                    "table id must be between 1 and 6, got {other}"
                )))
            }
        };
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableOptions {
    pub p: usize,
    pub fp_tol: f64,
    pub fp_max_iters: usize,
    /// Report the dense-output error instead of the grid error.
    pub dense_error: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        let base = SolverConfig::uniform(1, 1);
        Self {
            p: base.p,
            fp_tol: base.fp_tol,
            fp_max_iters: TABLE_FP_MAX_ITERS,
            dense_error: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Error(f64),
    Marker(&'static str),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Error(e) => sci3(*e),
            Cell::Marker(m) => m.to_string(),
        }
    }

    pub fn error(&self) -> Option<f64> {
        match self {
            Cell::Error(e) => Some(*e),
            Cell::Marker(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub s: usize,
    pub k: usize,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableResult {
    pub schema_version: u32,
    pub spec: TableSpec,
    /// Mesh steps of each column.
    pub step_counts: Vec<usize>,
    pub rows: Vec<TableRow>,
}

/// Computes the table, restricted to the basis sizes in `rows` if given.
/// Cells are independent runs and are evaluated in parallel.
pub fn compute(spec: &TableSpec, rows: Option<&[usize]>, opts: TableOptions) -> Result<TableResult, CliError> {
    let row_s: Vec<usize> = rows.map_or_else(|| ROW_S.to_vec(), <[usize]>::to_vec);
    if row_s.is_empty() || row_s.contains(&0) {
        return Err(CliError::InvalidArguments("row values of s must be positive".into()));
    }
    let problems = spec
        .columns
        .iter()
        .map(|c| find_problem(&c.problem))
        .collect::<Result<Vec<_>, _>>()?;
    let config_for = |s: usize, col: usize| {
        SolverConfig::new(s, MeshSpec::from(spec.columns[col].mesh))
            .with_k(spec.k_policy.k_for(s))
            .with_p(opts.p)
            .with_fp_tol(opts.fp_tol)
            .with_fp_max_iters(opts.fp_max_iters)
    };
    let step_counts = (0..spec.columns.len())
        .map(|col| Ok(config_for(1, col).build_mesh(problems[col].horizon())?.n_steps()))
        .collect::<Result<Vec<_>, CliError>>()?;

    let jobs: Vec<(usize, usize)> = row_s
        .iter()
        .flat_map(|&s| (0..spec.columns.len()).map(move |col| (s, col)))
        .collect();
    let cells = jobs
        .par_iter()
        .map(|&(s, col)| {
            let run = solve(&problems[col], config_for(s, col))?;
            if !run.succeeded() {
                return Ok(Cell::Marker(FAILURE_MARKER));
            }
            let err = if opts.dense_error {
                run.max_dense_error(DENSE_SAMPLES).transpose()?
            } else {
                run.max_grid_error()
            };
            Ok(err.map_or(Cell::Marker("n/a"), Cell::Error))
        })
        .collect::<Result<Vec<Cell>, CliError>>()?;

    let width = spec.columns.len();
    let rows = row_s
        .iter()
        .enumerate()
        .map(|(i, &s)| TableRow {
            s,
            k: spec.k_policy.k_for(s),
            cells: cells[i * width..(i + 1) * width].to_vec(),
        })
        .collect();
    Ok(TableResult {
        schema_version: SCHEMA_VERSION,
        spec: spec.clone(),
        step_counts,
        rows,
    })
}

impl TableResult {
    pub fn to_csv(&self) -> String {
        let mut out = self.spec.corner.clone();
        for col in &self.spec.columns {
            write!(out, ",{}", col.label).unwrap();
        }
        out.push('\n');
        if self.spec.show_step_counts {
            out.push('N');
            for n in &self.step_counts {
                write!(out, ",{n}").unwrap();
            }
            out.push('\n');
        }
        for row in &self.rows {
            write!(out, "{}", row.s).unwrap();
            for cell in &row.cells {
                write!(out, ",{}", cell.render()).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn cell(&self, s: usize, column_label: &str) -> Option<&Cell> {
        let col = self.spec.columns.iter().position(|c| c.label == column_label)?;
        self.rows.iter().find(|r| r.s == s).map(|r| &r.cells[col])
    }
}
