//! Command-line harness around the `fracjac` solver: single runs with a JSON
//! or CSV report, the benchmark error tables and convergence studies.

pub mod convergence;
pub mod error;
pub mod format;
pub mod report;
pub mod table;

pub use error::CliError;

use fracjac::reference::problems::builtin_problems;
use fracjac::Problem;

/// Looks up a built-in problem by id.
pub fn find_problem(id: &str) -> Result<Problem, CliError> {
    let registry = builtin_problems();
    registry.get(id).cloned().ok_or_else(|| {
        let known: Vec<&str> = registry.ids().collect();
        CliError::UnknownProblem {
            id: id.to_string(),
            known: known.join(", "),
        }
    })
}
