//! Step-by-step spectral solver for Caputo fractional initial value problems
//!
//! ```text
//! D^alpha y(t) = f(t, y(t)),   t in [0, T],   y(0) = y0,   0 < alpha <= 1,
//! ```
//!
//! on graded (geometrically growing) or uniform time meshes. On each step the
//! vector field is expanded along shifted orthonormal Jacobi polynomials,
//! truncated after `s` terms, and the expansion coefficients are found by a
//! fixed-point iteration on a system of block size `s`, whatever the number
//! `k` of Gauss-Jacobi nodes used to approximate them. The contribution of
//! earlier steps (the memory of the fractional operator) is accumulated
//! through the integrals `J_j^alpha(x)` of the basis against the kernel.
//!
//! Module map:
//! - [`jacobi`]: the orthonormal basis and its three-term recurrence
//! - [`quadrature`]: Gauss-Jacobi and Gauss-Legendre rules on `[0, 1]`
//! - [`frac_ops`]: local fractional integrals and the history integrals
//! - [`stepper`]: mesh, per-step solve, history accumulation, dense output
//! - [`reference`]: Mittag-Leffler function and the benchmark problems

pub mod error;
pub mod extended;
pub mod frac_ops;
pub(crate) mod integrate;
pub mod jacobi;
pub mod quadrature;
pub mod reference;
pub mod special;
pub mod stepper;

pub use error::{Error, Result};
pub use extended::ExtendedReal;
pub use frac_ops::{JEvaluator, JTable, LocalFracTable};
pub use jacobi::JacobiBasis;
pub use quadrature::{QuadratureRule, RuleKind};
pub use reference::{mittag_leffler, Problem, ProblemRegistry};
pub use stepper::{
    fixed_point_step, solve, FixedPointOutcome, FixedPointSettings, GradedMesh, HistoryStore, Integrator,
    MeshSpec, SolverConfig, SolverRun, StepInfo, StepOperator,
};
