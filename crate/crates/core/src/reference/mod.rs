//! Ground truth: Mittag-Leffler evaluation and the benchmark problems.

pub mod mittag_leffler;
pub mod problems;

pub use mittag_leffler::{mittag_leffler, MittagLeffler};
pub use problems::{builtin_problems, ExactSolution, Problem, ProblemRegistry, VectorField};
