//! Test problems with known solutions, plus a registry for user problems.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain_err, Error, Result};
use crate::jacobi::check_alpha;
use crate::reference::mittag_leffler::MittagLeffler;
use crate::special::gamma;

/// Right-hand side `f(t, y)`, written into the output slice.
pub type VectorField = Arc<dyn Fn(f64, &[f64], &mut [f64]) + Send + Sync>;

/// Reference solution `t -> y(t)`, written into the output slice.
pub type ExactSolution = Arc<dyn Fn(f64, &mut [f64]) + Send + Sync>;

/// A Caputo initial value problem `D^alpha y = f(t, y)`, `y(0) = y0`, on `[0, horizon]`.
#[derive(Clone)]
pub struct Problem {
    id: String,
    description: String,
    alpha: f64,
    y0: Vec<f64>,
    horizon: f64,
    field: VectorField,
    exact: Option<ExactSolution>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("id", &self.id)
            .field("alpha", &self.alpha)
            .field("y0", &self.y0)
            .field("horizon", &self.horizon)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

impl Problem {
    pub fn new(
        id: impl Into<String>,
        alpha: f64,
        y0: Vec<f64>,
        horizon: f64,
        field: VectorField,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        if y0.is_empty() {
            return Err(domain_err!("problem dimension must be at least 1"));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(domain_err!("horizon must be positive, got {horizon}"));
        }
        Ok(Self {
            id: id.into(),
            description: String::new(),
            alpha,
            y0,
            horizon,
            field,
            exact: None,
        })
    }

    pub fn with_exact(mut self, exact: ExactSolution) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.y0.len()
    }

    pub fn y0(&self) -> &[f64] {
        &self.y0
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn field(&self) -> &VectorField {
        &self.field
    }

    pub fn rhs(&self, t: f64, y: &[f64], out: &mut [f64]) {
        (self.field)(t, y, out)
    }

    pub fn exact_at(&self, t: f64) -> Option<Vec<f64>> {
        self.exact.as_ref().map(|g| {
            let mut out = vec![0.0; self.dim()];
            g(t, &mut out);
            out
        })
    }
}

/// Named problems, ordered by id.
#[derive(Debug, Clone, Default)]
pub struct ProblemRegistry {
    problems: BTreeMap<String, Problem>,
}

impl ProblemRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry preloaded with the five benchmark problems.
    pub fn builtin() -> Self {
        let mut reg = Self::new();
        for p in builtin_list() {
            reg.register(p).expect("builtin ids are distinct");
        }
        reg
    }

    pub fn register(&mut self, problem: Problem) -> Result<()> {
        if self.problems.contains_key(problem.id()) {
            return Err(Error::Usage(format!(
                "problem '{}' is already registered",
                problem.id()
            )));
        }
        self.problems.insert(problem.id().to_string(), problem);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&Problem> {
        self.problems.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.problems.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.problems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }
}

/// The five benchmark problems.
pub fn builtin_problems() -> ProblemRegistry {
    ProblemRegistry::builtin()
}

fn builtin_list() -> Vec<Problem> {
    vec![prob1(), prob2(), prob3(), prob4(), prob34()]
}

/// `D^0.6 y = -10 y`, `y(0) = 1` on `[0, 5]`; `y = E_0.6(-10 t^0.6)`.
pub fn prob1() -> Problem {
    let ml = Arc::new(MittagLeffler::new(0.6).expect("valid alpha"));
    let field: VectorField = Arc::new(|_t, y, out| out[0] = -10.0 * y[0]);
    Problem::new("prob1", 0.6, vec![1.0], 5.0, field)
        .expect("valid problem")
        .with_description("linear test equation, Mittag-Leffler solution")
        .with_exact(Arc::new(move |t, out| {
            out[0] = ml
                .eval(-10.0 * t.powf(0.6))
                .expect("argument is non-positive");
        }))
}

/// Forced nonlinear problem of order 1/2 on `[0, 1]` with
/// `y = t^8 - 3 t^4.25 + (9/4) t^0.5`.
pub fn prob2() -> Problem {
    let c8 = 40320.0 / gamma(8.5);
    let c4 = 3.0 * gamma(5.25) / gamma(4.75);
    let c0 = 2.25 * gamma(1.5);
    let field: VectorField = Arc::new(move |t, y, out| {
        let cubic = 1.5 * t.powf(0.25) - t.powi(4);
        out[0] = -y[0].powf(1.5) + c8 * t.powf(7.5) - c4 * t.powf(3.75)
            + cubic * cubic * cubic
            + c0;
    });
    Problem::new("prob2", 0.5, vec![0.0], 1.0, field)
        .expect("valid problem")
        .with_description("order 1/2, non-smooth solution, smooth vector field")
        .with_exact(Arc::new(|t, out| {
            out[0] = t.powi(8) - 3.0 * t.powf(4.25) + 2.25 * t.sqrt();
        }))
}

/// Order 1/3 on `[0, 1]`, `y = t^(2/3) + 1`.
pub fn prob3() -> Problem {
    let ratio = gamma(5.0 / 3.0) / gamma(4.0 / 3.0);
    let field: VectorField = Arc::new(move |t, y, out| {
        let target = t.powf(2.0 / 3.0) + 1.0;
        out[0] = t / 10.0 * (y[0].powi(3) - target.powi(3)) + ratio * t.powf(1.0 / 3.0);
    });
    Problem::new("prob3", 1.0 / 3.0, vec![1.0], 1.0, field)
        .expect("valid problem")
        .with_description("order 1/3, y = t^(2/3) + 1")
        .with_exact(Arc::new(|t, out| out[0] = t.powf(2.0 / 3.0) + 1.0))
}

/// Order 1/3 on `[0, 1]`, `y = t^(4/3)`.
pub fn prob4() -> Problem {
    let g = gamma(7.0 / 3.0);
    let field: VectorField = Arc::new(move |t, y, out| {
        out[0] = (y[0].powi(3) - t.powi(4)) / 3.0 + g * t;
    });
    Problem::new("prob4", 1.0 / 3.0, vec![0.0], 1.0, field)
        .expect("valid problem")
        .with_description("order 1/3, y = t^(4/3)")
        .with_exact(Arc::new(|t, out| out[0] = t.powf(4.0 / 3.0)))
}

/// `prob3` and `prob4` coupled into one two-dimensional system with the
/// same component solutions.
pub fn prob34() -> Problem {
    let ratio = gamma(5.0 / 3.0) / gamma(4.0 / 3.0);
    let g = gamma(7.0 / 3.0);
    let field: VectorField = Arc::new(move |t, y, out| {
        let shifted = y[1].sqrt() + 1.0;
        out[0] = t / 10.0 * (y[0].powi(3) - shifted.powi(3)) + ratio * t.powf(1.0 / 3.0);
        out[1] = (y[1].powi(3) - (y[0] - 1.0).powi(6)) / 3.0 + g * t;
    });
    Problem::new("prob34", 1.0 / 3.0, vec![1.0, 0.0], 1.0, field)
        .expect("valid problem")
        .with_description("prob3 and prob4 coupled as a 2-dimensional system")
        .with_exact(Arc::new(|t, out| {
            out[0] = t.powf(2.0 / 3.0) + 1.0;
            out[1] = t.powf(4.0 / 3.0);
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_contents() {
        let reg = builtin_problems();
        let ids: Vec<_> = reg.ids().collect();
        assert_eq!(ids, ["prob1", "prob2", "prob3", "prob34", "prob4"]);
        assert_eq!(reg.get("prob34").unwrap().dim(), 2);
        assert!(reg.get("nope").is_none());
    }

    #[test]
    fn duplicate_registration_fails() {
        let mut reg = builtin_problems();
        assert!(matches!(reg.register(prob1()), Err(Error::Usage(_))));
    }

    #[test]
    fn spot_values() {
        let reg = builtin_problems();
        let p2 = reg.get("prob2").unwrap();
        let mut out = [0.0];
        p2.rhs(0.0, &[0.0], &mut out);
        assert!((out[0] - 2.25 * gamma(1.5)).abs() < 1e-15);

        assert_eq!(reg.get("prob3").unwrap().exact_at(1.0).unwrap(), vec![2.0]);
        assert_eq!(reg.get("prob1").unwrap().exact_at(0.0).unwrap(), vec![1.0]);
    }

    #[test]
    fn invalid_problems() {
        let field: VectorField = Arc::new(|_, _, out| out[0] = 0.0);
        assert!(Problem::new("x", 1.5, vec![0.0], 1.0, field.clone()).is_err());
        assert!(Problem::new("x", 0.5, vec![], 1.0, field.clone()).is_err());
        assert!(Problem::new("x", 0.5, vec![0.0], -1.0, field).is_err());
    }
}
