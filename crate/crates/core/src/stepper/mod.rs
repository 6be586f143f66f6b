//! The step-by-step method.
//!
//! On step `n + 1` the solution is sought in the form
//!
//! ```text
//! sigma_{n+1}(c h) = phi_n(c) + h^alpha sum_{j<s} gamma_j I^alpha P_j(c),   c in [0, 1],
//! ```
//!
//! where the history term `phi_n` collects the contribution of steps
//! `1..=n`. The coefficients solve the block-`s` system
//!
//! ```text
//! gamma = (P_s^T Omega (x) I_m) f(phi + h^alpha (I_s (x) I_m) gamma),
//! ```
//!
//! handled here by plain fixed-point iteration from `gamma = 0`.

mod history;
mod mesh;

pub use history::HistoryStore;
pub use mesh::GradedMesh;

use crate::error::{domain_err, Error, Result};
use crate::frac_ops::{local_frac_at, JEvaluator, JTable, LocalFracTable};
use crate::jacobi::JacobiBasis;
use crate::quadrature::QuadratureRule;
use crate::reference::Problem;
use crate::special::gamma;

/// Default fixed-point tolerance: four unit roundoffs.
pub const DEFAULT_FP_TOL: f64 = 2.0 * f64::EPSILON;
pub const DEFAULT_FP_MAX_ITERS: usize = 100;

/// An increment that stops shrinking while below this multiple of the
/// tolerance is accepted as converged at round-off level.
const STAGNATION_FACTOR: f64 = 1024.0;

/// Matrices of the per-step discrete problem.
#[derive(Debug, Clone)]
pub struct StepOperator {
    alpha: f64,
    s: usize,
    k: usize,
    nodes: Vec<f64>,
    /// `k x s`: `P_j(c_i)`.
    ps: Vec<f64>,
    omega: Vec<f64>,
    /// `k x s`: `I^alpha P_j(c_i)`.
    ialpha: LocalFracTable,
    /// `s x k`: `P_s^T Omega`.
    transfer: Vec<f64>,
}

impl StepOperator {
    pub fn new(basis: &JacobiBasis, rule: &QuadratureRule) -> Result<Self> {
        let ialpha = LocalFracTable::new(basis, rule)?;
        let (s, k) = (basis.len(), rule.len());
        let mut ps = vec![0.0; k * s];
        for (row, &c) in ps.chunks_mut(s).zip(rule.nodes()) {
            basis.eval_into(c, row);
        }
        let omega = rule.weights().to_vec();
        let mut transfer = vec![0.0; s * k];
        for j in 0..s {
            for i in 0..k {
                transfer[j * k + i] = ps[i * s + j] * omega[i];
            }
        }
        Ok(Self {
            alpha: basis.alpha(),
            s,
            k,
            nodes: rule.nodes().to_vec(),
            ps,
            omega,
            ialpha,
            transfer,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `P_s`, `k x s` row-major.
    pub fn ps(&self) -> &[f64] {
        &self.ps
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// `I_s^alpha`, `k x s` row-major.
    pub fn ialpha(&self) -> &LocalFracTable {
        &self.ialpha
    }

    /// `P_s^T Omega`, `s x k` row-major.
    pub fn transfer(&self) -> &[f64] {
        &self.transfer
    }

    /// `I_s^alpha P_s^T Omega`, the `k x k` coefficient matrix of the
    /// equivalent Runge-Kutta stage formulation.
    pub fn rk_matrix(&self) -> Vec<f64> {
        let (s, k) = (self.s, self.k);
        let mut out = vec![0.0; k * k];
        for i in 0..k {
            let row = self.ialpha.row(i);
            for l in 0..k {
                out[i * k + l] = (0..s).map(|j| row[j] * self.transfer[j * k + l]).sum();
            }
        }
        out
    }

    /// `h^alpha L ||P_s^T Omega||_inf ||I_s^alpha||_inf`; the iteration
    /// contracts when this is below one.
    pub fn contraction_bound(&self, h: f64, lipschitz: f64) -> f64 {
        let (s, k) = (self.s, self.k);
        let transfer_norm = (0..s)
            .map(|j| self.transfer[j * k..(j + 1) * k].iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let ialpha_norm = (0..k)
            .map(|i| self.ialpha.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        h.powf(self.alpha) * lipschitz * transfer_norm * ialpha_norm
    }
}

/// Stopping parameters of the fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointSettings {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for FixedPointSettings {
    fn default() -> Self {
        Self {
            tol: DEFAULT_FP_TOL,
            max_iters: DEFAULT_FP_MAX_ITERS,
        }
    }
}

/// Converged coefficients of one step.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointOutcome {
    /// `s x m`, coefficient-major.
    pub gamma: Vec<f64>,
    pub iterations: usize,
    /// `||gamma^l - gamma^(l-1)||_inf` for every iteration.
    pub increments: Vec<f64>,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Solves one step's coefficient system by fixed-point iteration.
///
/// `phi` holds the history term at the `k` nodes (`k x m` row-major),
/// `t_start` is the left end of the step and `step` its 1-based index (used
/// for error reporting only).
pub fn fixed_point_step<F>(
    op: &StepOperator,
    phi: &[f64],
    t_start: f64,
    h: f64,
    field: F,
    settings: FixedPointSettings,
    step: usize,
) -> Result<FixedPointOutcome>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let (s, k) = (op.s, op.k);
    if !phi.len().is_multiple_of(k) || phi.is_empty() {
        return Err(Error::Usage("history values must be k x m".into()));
    }
    let dim = phi.len() / k;
    let h_alpha = h.powf(op.alpha);

    let mut gamma = vec![0.0; s * dim];
    let mut next = vec![0.0; s * dim];
    let mut stage = vec![0.0; dim];
    let mut fval = vec![0.0; dim];
    let mut increments = Vec::new();
    let mut prev_inc = f64::INFINITY;

    for it in 1..=settings.max_iters {
        next.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..k {
            let irow = op.ialpha.row(i);
            stage.copy_from_slice(&phi[i * dim..(i + 1) * dim]);
            for (comp, st) in stage.iter_mut().enumerate() {
                let local: f64 = (0..s).map(|j| irow[j] * gamma[j * dim + comp]).sum();
                *st += h_alpha * local;
            }
            field(t_start + op.nodes[i] * h, &stage, &mut fval);
            for j in 0..s {
                let w = op.transfer[j * k + i];
                for (acc, &fv) in next[j * dim..(j + 1) * dim].iter_mut().zip(&fval) {
                    *acc += w * fv;
                }
            }
        }

        let inc = if next.iter().all(|v| v.is_finite()) {
            gamma
                .iter()
                .zip(&next)
                .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
        } else {
            f64::NAN
        };
        std::mem::swap(&mut gamma, &mut next);
        increments.push(inc);

        if !inc.is_finite() {
            return Err(Error::FixedPoint {
                step,
                iterations: it,
                last_increment: inc,
            });
        }
        let scale = settings.tol * inf_norm(&gamma).max(1.0);
        if inc <= scale || (inc >= prev_inc && inc <= STAGNATION_FACTOR * scale) {
            return Ok(FixedPointOutcome {
                gamma,
                iterations: it,
                increments,
            });
        }
        prev_inc = inc;
    }

    Err(Error::FixedPoint {
        step,
        iterations: settings.max_iters,
        last_increment: prev_inc,
    })
}

/// How the time grid is built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshSpec {
    /// First step `h1`, ratio `r`; the step count is chosen to end closest to the horizon.
    Graded { h1: f64, r: f64 },
    /// `n` equal steps.
    Uniform { n: usize },
}

/// Method parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Number of basis polynomials kept.
    pub s: usize,
    /// Gauss-Jacobi nodes per step (`k >= s`).
    pub k: usize,
    /// Gauss-Legendre nodes for the history integrals.
    pub p: usize,
    pub fp_tol: f64,
    pub fp_max_iters: usize,
    pub mesh: MeshSpec,
    /// Switch point of the history-integral branches.
    pub j_threshold: f64,
}

impl SolverConfig {
    pub fn new(s: usize, mesh: MeshSpec) -> Self {
        Self {
            s,
            k: 30,
            p: 30,
            fp_tol: DEFAULT_FP_TOL,
            fp_max_iters: DEFAULT_FP_MAX_ITERS,
            mesh,
            j_threshold: crate::frac_ops::DEFAULT_RECURRENCE_THRESHOLD,
        }
    }

    pub fn graded(s: usize, h1: f64, r: f64) -> Self {
        Self::new(s, MeshSpec::Graded { h1, r })
    }

    pub fn uniform(s: usize, n: usize) -> Self {
        Self::new(s, MeshSpec::Uniform { n })
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.p = p;
        self
    }

    pub fn with_fp_tol(mut self, tol: f64) -> Self {
        self.fp_tol = tol;
        self
    }

    pub fn with_fp_max_iters(mut self, iters: usize) -> Self {
        self.fp_max_iters = iters;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(domain_err!("s must be at least 1"));
        }
        if self.k < self.s {
            return Err(domain_err!("need k >= s, got k = {} and s = {}", self.k, self.s));
        }
        if self.p == 0 {
            return Err(domain_err!("p must be at least 1"));
        }
        if !(self.fp_tol > 0.0) {
            return Err(domain_err!("fixed-point tolerance must be positive"));
        }
        if self.fp_max_iters == 0 {
            return Err(domain_err!("fixed-point iteration cap must be positive"));
        }
        if !(self.j_threshold > 1.0) {
            return Err(domain_err!("branch threshold must exceed 1"));
        }
        Ok(())
    }

    pub fn build_mesh(&self, horizon: f64) -> Result<GradedMesh> {
        match self.mesh {
            MeshSpec::Graded { h1, r } => GradedMesh::graded(h1, r, horizon),
            MeshSpec::Uniform { n } => GradedMesh::uniform(n, horizon),
        }
    }

    fn fixed_point(&self) -> FixedPointSettings {
        FixedPointSettings {
            tol: self.fp_tol,
            max_iters: self.fp_max_iters,
        }
    }
}

/// Per-step record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub n: usize,
    pub t: f64,
    pub h: f64,
    pub iterations: usize,
}

/// Marches a problem across its mesh one step at a time.
pub struct Integrator {
    problem: Problem,
    config: SolverConfig,
    mesh: GradedMesh,
    basis: JacobiBasis,
    rule: QuadratureRule,
    op: StepOperator,
    evaluator: JEvaluator,
    history: HistoryStore,
    inv_gamma_alpha1: f64,
    records: Vec<StepInfo>,
}

impl Integrator {
    pub fn new(problem: &Problem, config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let alpha = problem.alpha();
        let mesh = config.build_mesh(problem.horizon())?;
        let basis = JacobiBasis::new(alpha, config.s)?;
        let rule = QuadratureRule::gauss_jacobi(alpha, config.k)?;
        let gl = QuadratureRule::gauss_legendre(config.p)?;
        let op = StepOperator::new(&basis, &rule)?;
        let evaluator = JEvaluator::new(&basis, &gl)?.with_threshold(config.j_threshold);
        let table = JTable::new(&evaluator, rule.nodes(), mesh.ratio());
        let history = HistoryStore::new(problem.y0(), table);
        Ok(Self {
            problem: problem.clone(),
            config,
            mesh,
            basis,
            rule,
            op,
            evaluator,
            history,
            inv_gamma_alpha1: 1.0 / gamma(alpha + 1.0),
            records: Vec::new(),
        })
    }

    pub fn mesh(&self) -> &GradedMesh {
        &self.mesh
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn operator(&self) -> &StepOperator {
        &self.op
    }

    pub fn history(&self) -> &HistoryStore {
        &self.history
    }

    pub fn evaluator(&self) -> &JEvaluator {
        &self.evaluator
    }

    /// Steps completed so far.
    pub fn steps_done(&self) -> usize {
        self.history.steps()
    }

    pub fn is_finished(&self) -> bool {
        self.steps_done() == self.mesh.n_steps()
    }

    pub fn records(&self) -> &[StepInfo] {
        &self.records
    }

    /// Grid value `y_bar_n`.
    pub fn y_bar(&self, n: usize) -> Option<&[f64]> {
        self.history.y_bar(n)
    }

    /// Computes the next step.
    pub fn advance(&mut self) -> Result<StepInfo> {
        let n = self.steps_done();
        if n >= self.mesh.n_steps() {
            return Err(Error::Usage("the mesh has been fully traversed".into()));
        }
        self.history.ensure_offsets(n, &self.evaluator)?;
        let phi = self.history.phi_at_nodes(n)?;
        let h = self.mesh.step(n + 1);
        let t_start = self.mesh.point(n);
        let field = self.problem.field().clone();
        let outcome = fixed_point_step(
            &self.op,
            &phi,
            t_start,
            h,
            |t, y, out| field(t, y, out),
            self.config.fixed_point(),
            n + 1,
        )?;

        let dim = self.problem.dim();
        let mut y_next = self.history.phi_at_end(n)?;
        let local = h.powf(self.problem.alpha()) * self.inv_gamma_alpha1;
        for (y, &g0) in y_next.iter_mut().zip(&outcome.gamma[..dim]) {
            *y += local * g0;
        }
        self.history.push_step(outcome.gamma, h, y_next)?;

        let info = StepInfo {
            n: n + 1,
            t: self.mesh.point(n + 1),
            h,
            iterations: outcome.iterations,
        };
        self.records.push(info);
        Ok(info)
    }

    /// `sigma_n(c h_n)` on a completed step `n`; `c = 1` returns `y_bar_n`.
    pub fn dense_output(&self, n: usize, c: f64) -> Result<Vec<f64>> {
        if !(0.0..=1.0).contains(&c) {
            return Err(domain_err!("c must lie in [0, 1], got {c}"));
        }
        if n == 0 || n > self.steps_done() {
            return Err(Error::Usage(format!("step {n} has not been computed")));
        }
        if c == 1.0 {
            return Ok(self.history.y_bar(n).expect("step exists").to_vec());
        }
        let dim = self.problem.dim();
        let mut out = self.history.phi_at(n - 1, c, &self.evaluator)?;
        let local = local_frac_at(&self.basis, &self.rule, c)?;
        let h_alpha = self.mesh.step(n).powf(self.problem.alpha());
        let block = self.history.gamma_block(n).expect("step exists");
        for (j, &lj) in local.iter().enumerate() {
            for comp in 0..dim {
                out[comp] += h_alpha * lj * block[j * dim + comp];
            }
        }
        Ok(out)
    }

    /// History term `phi_n(0)`, the value the next piece starts from.
    pub fn next_start_value(&self, n: usize) -> Result<Vec<f64>> {
        self.history.phi_at(n, 0.0, &self.evaluator)
    }
}

/// Outcome of a full run. A failed step stops the run; the trajectory up to
/// the last good step is kept.
pub struct SolverRun {
    integrator: Integrator,
    failure: Option<Error>,
}

impl SolverRun {
    pub fn problem(&self) -> &Problem {
        &self.integrator.problem
    }

    pub fn config(&self) -> &SolverConfig {
        &self.integrator.config
    }

    pub fn mesh(&self) -> &GradedMesh {
        &self.integrator.mesh
    }

    pub fn integrator(&self) -> &Integrator {
        &self.integrator
    }

    pub fn failure(&self) -> Option<&Error> {
        self.failure.as_ref()
    }

    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }

    /// Steps completed.
    pub fn steps_done(&self) -> usize {
        self.integrator.steps_done()
    }

    pub fn records(&self) -> &[StepInfo] {
        self.integrator.records()
    }

    /// `t_0..t_n` for the completed steps.
    pub fn times(&self) -> &[f64] {
        &self.integrator.mesh.points()[..=self.steps_done()]
    }

    pub fn y_bar(&self, n: usize) -> Option<&[f64]> {
        self.integrator.y_bar(n)
    }

    pub fn dense_output(&self, n: usize, c: f64) -> Result<Vec<f64>> {
        self.integrator.dense_output(n, c)
    }

    /// `max_n ||y_bar_n - y(t_n)||_inf` over the computed grid, if the
    /// problem has a reference solution.
    pub fn max_grid_error(&self) -> Option<f64> {
        let problem = self.problem();
        problem.has_exact().then(|| {
            (1..=self.steps_done())
                .map(|n| {
                    let exact = problem.exact_at(self.integrator.mesh.point(n)).unwrap();
                    let approx = self.y_bar(n).unwrap();
                    approx
                        .iter()
                        .zip(&exact)
                        .fold(0.0_f64, |acc, (a, e)| acc.max((a - e).abs()))
                })
                .fold(0.0, f64::max)
        })
    }

    /// Maximum error of the dense output sampled at `c = i / samples`,
    /// `i = 1..=samples`, on every computed step.
    pub fn max_dense_error(&self, samples: usize) -> Option<Result<f64>> {
        let problem = self.problem();
        if !problem.has_exact() {
            return None;
        }
        let mut worst = 0.0_f64;
        for n in 1..=self.steps_done() {
            let t0 = self.integrator.mesh.point(n - 1);
            let h = self.integrator.mesh.step(n);
            for i in 1..=samples {
                let c = i as f64 / samples as f64;
                let approx = match self.dense_output(n, c) {
                    Ok(v) => v,
                    Err(e) => return Some(Err(e)),
                };
                let exact = problem.exact_at(t0 + c * h).unwrap();
                for (a, e) in approx.iter().zip(&exact) {
                    worst = worst.max((a - e).abs());
                }
            }
        }
        Some(Ok(worst))
    }
}

/// Solves `problem` across the whole mesh described by `config`.
///
/// Invalid configurations are reported as errors; a step that fails is
/// recorded in the returned run.
pub fn solve(problem: &Problem, config: SolverConfig) -> Result<SolverRun> {
    let mut integrator = Integrator::new(problem, config)?;
    let mut failure = None;
    while !integrator.is_finished() {
        if let Err(e) = integrator.advance() {
            failure = Some(e);
            break;
        }
    }
    Ok(SolverRun {
        integrator,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::problems;

    fn operator(alpha: f64, s: usize, k: usize) -> StepOperator {
        let basis = JacobiBasis::new(alpha, s).unwrap();
        let rule = QuadratureRule::gauss_jacobi(alpha, k).unwrap();
        StepOperator::new(&basis, &rule).unwrap()
    }

    #[test]
    fn transfer_annihilates_all_but_the_constant() {
        let op = operator(0.4, 6, 12);
        for j in 0..6 {
            let row_sum: f64 = op.transfer()[j * 12..(j + 1) * 12].iter().sum();
            let expected = if j == 0 { 1.0 } else { 0.0 };
            assert!((row_sum - expected).abs() < 1e-14, "row {j}: {row_sum}");
        }
    }

    #[test]
    fn zero_field_converges_immediately() {
        let op = operator(0.5, 4, 8);
        let phi = vec![0.3; 8];
        let out = fixed_point_step(
            &op,
            &phi,
            0.0,
            0.1,
            |_, _, o: &mut [f64]| o[0] = 0.0,
            FixedPointSettings::default(),
            1,
        )
        .unwrap();
        assert_eq!(out.iterations, 1);
        assert!(out.gamma.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn constant_field_has_single_coefficient() {
        let op = operator(0.7, 5, 9);
        let phi = vec![0.0; 9 * 2];
        let out = fixed_point_step(
            &op,
            &phi,
            0.0,
            0.3,
            |_, _, o: &mut [f64]| {
                o[0] = 2.5;
                o[1] = -1.0;
            },
            FixedPointSettings::default(),
            1,
        )
        .unwrap();
        assert!((out.gamma[0] - 2.5).abs() < 1e-14);
        assert!((out.gamma[1] + 1.0).abs() < 1e-14);
        for &g in &out.gamma[2..] {
            assert!(g.abs() < 1e-14);
        }
    }

    #[test]
    fn divergence_is_reported_with_step_index() {
        let op = operator(0.6, 1, 30);
        let phi = vec![1.0; 30];
        let err = fixed_point_step(
            &op,
            &phi,
            0.0,
            0.5,
            |_, y: &[f64], o: &mut [f64]| o[0] = -10.0 * y[0],
            FixedPointSettings::default(),
            17,
        )
        .unwrap_err();
        match err {
            Error::FixedPoint { step, .. } => assert_eq!(step, 17),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::uniform(0, 4).validate().is_err());
        assert!(SolverConfig::uniform(5, 4).with_k(4).validate().is_err());
        assert!(SolverConfig::uniform(2, 4).with_p(0).validate().is_err());
        assert!(SolverConfig::uniform(2, 4).with_fp_tol(0.0).validate().is_err());
        assert!(SolverConfig::uniform(2, 4).with_fp_max_iters(0).validate().is_err());
        assert!(SolverConfig::uniform(2, 4).validate().is_ok());
    }

    #[test]
    fn zero_field_keeps_initial_value() {
        let field: crate::reference::VectorField = std::sync::Arc::new(|_, _, o| o[0] = 0.0);
        let p = Problem::new("flat", 0.4, vec![3.0], 1.0, field).unwrap();
        let run = solve(&p, SolverConfig::graded(3, 0.01, 1.2).with_k(6)).unwrap();
        assert!(run.succeeded());
        for n in 0..=run.steps_done() {
            assert_eq!(run.y_bar(n).unwrap(), &[3.0]);
        }
    }

    #[test]
    fn first_step_formula() {
        let p = problems::prob1();
        let cfg = SolverConfig::uniform(3, 500).with_k(8);
        let mut integ = Integrator::new(&p, cfg).unwrap();
        integ.advance().unwrap();
        let h: f64 = 5.0 / 500.0;
        let g0 = integ.history().gamma_block(1).unwrap()[0];
        let expected = 1.0 + h.powf(0.6) * g0 / gamma(1.6);
        assert!((integ.y_bar(1).unwrap()[0] - expected).abs() < 1e-15);
    }

    #[test]
    fn dense_output_domain() {
        let p = problems::prob4();
        let run = solve(&p, SolverConfig::uniform(2, 4).with_k(4)).unwrap();
        assert!(run.dense_output(1, 1.5).is_err());
        assert!(run.dense_output(0, 0.5).is_err());
        assert!(run.dense_output(9, 0.5).is_err());
        assert_eq!(run.dense_output(3, 1.0).unwrap(), run.y_bar(3).unwrap());
    }
}
