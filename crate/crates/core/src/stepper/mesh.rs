use crate::error::{domain_err, Result};

/// Time grid `t_0 = 0 < t_1 < ... < t_N` with steps `h_n = r^(n-1) h_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedMesh {
    h1: f64,
    r: f64,
    steps: Vec<f64>,
    points: Vec<f64>,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain_err!("{name} must be positive and finite, got {v}"))
    }
}

impl GradedMesh {
    /// Graded mesh with first step `h1` and ratio `r`; the step count is the
    /// one whose end point lands closest to `horizon`.
    pub fn graded(h1: f64, r: f64, horizon: f64) -> Result<Self> {
        check_positive("h1", h1)?;
        check_positive("horizon", horizon)?;
        if !(r >= 1.0) || !r.is_finite() {
            return Err(domain_err!("grading ratio must be >= 1, got {r}"));
        }
        if h1 > horizon {
            return Err(domain_err!("h1 = {h1} exceeds the horizon {horizon}"));
        }

        let n = if r == 1.0 {
            ((horizon / h1).round() as usize).max(1)
        } else {
            let end = |n: usize| h1 * (r.powi(n as i32) - 1.0) / (r - 1.0);
            let x = (1.0 + horizon * (r - 1.0) / h1).ln() / r.ln();
            let lo = (x.floor() as usize).max(1);
            let hi = (x.ceil() as usize).max(1);
            if (end(hi) - horizon).abs() <= (end(lo) - horizon).abs() {
                hi
            } else {
                lo
            }
        };

        let steps: Vec<f64> = (0..n).map(|i| h1 * r.powi(i as i32)).collect();
        let mut points = Vec::with_capacity(n + 1);
        let mut t = 0.0;
        points.push(t);
        for &h in &steps {
            t += h;
            points.push(t);
        }
        Ok(Self {
            h1,
            r,
            steps,
            points,
        })
    }

    /// `n` equal steps covering `[0, horizon]`; the last point is `horizon` exactly.
    pub fn uniform(n: usize, horizon: f64) -> Result<Self> {
        check_positive("horizon", horizon)?;
        if n == 0 {
            return Err(domain_err!("a uniform mesh needs at least one step"));
        }
        let h = horizon / n as f64;
        let points = (0..=n)
            .map(|i| horizon * (i as f64 / n as f64))
            .collect();
        Ok(Self {
            h1: h,
            r: 1.0,
            steps: vec![h; n],
            points,
        })
    }

    pub fn h1(&self) -> f64 {
        self.h1
    }

    pub fn ratio(&self) -> f64 {
        self.r
    }

    /// Number of steps `N`.
    pub fn n_steps(&self) -> usize {
        self.steps.len()
    }

    /// Number of grid points, `N + 1`.
    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// `h_n` for `n = 1..=N`.
    pub fn step(&self, n: usize) -> f64 {
        self.steps[n - 1]
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    /// `t_n` for `n = 0..=N`.
    pub fn point(&self, n: usize) -> f64 {
        self.points[n]
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn end(&self) -> f64 {
        *self.points.last().expect("mesh has at least one point")
    }
}
