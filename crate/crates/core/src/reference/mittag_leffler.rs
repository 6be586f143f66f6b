//! One-parameter Mittag-Leffler function `E_alpha(z) = sum_j z^j / Gamma(alpha j + 1)`
//! on the non-positive real axis.
//!
//! Two routes:
//! * the power series, summed in double-double with double-double
//!   reciprocal gammas, for moderate `|z|`;
//! * for `0 < alpha < 1` the real-axis Laplace-type representation
//!
//!   ```text
//!   E_alpha(-x) = sin(alpha pi) / (alpha pi) * int_0^inf exp(-v^(1/alpha)) x / (v^2 + 2 x v cos(alpha pi) + x^2) dv
//!   ```
//!
//!   whose integrand is smooth and positive, handled by adaptive Gauss-Kronrod.

use crate::error::{domain_err, Error, Result};
use crate::extended::ExtendedReal;
use crate::integrate::adaptive_gk15;
use crate::jacobi::check_alpha;

/// Series is used for `|z|` up to this radius.
pub const SERIES_RADIUS: f64 = 5.0;

const MAX_TERMS: usize = 400;
/// Largest partial term the double-double sum tolerates before handing over
/// to the integral (keeps the cancellation error near 1e-16).
const MAX_TERM_MAGNITUDE: f64 = 1e16;

/// Reusable evaluator with cached `1 / Gamma(alpha j + 1)`.
#[derive(Debug, Clone)]
pub struct MittagLeffler {
    alpha: f64,
    inv_gamma: Vec<ExtendedReal>,
}

impl MittagLeffler {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let a = ExtendedReal::from_f64(alpha);
        let inv_gamma = (0..MAX_TERMS)
            .map(|j| (a * j as f64 + 1.0).gamma().recip())
            .collect();
        Ok(Self { alpha, inv_gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `E_alpha(z)` for `z <= 0`.
    pub fn eval(&self, z: f64) -> Result<f64> {
        if z.is_nan() {
            return Err(domain_err!("Mittag-Leffler argument is NaN"));
        }
        if z > 0.0 {
            return Err(Error::Unsupported(format!(
                "Mittag-Leffler evaluation is provided for z <= 0 only, got {z}"
            )));
        }
        if z == 0.0 {
            return Ok(1.0);
        }
        if z.abs() <= SERIES_RADIUS {
            if let Some(v) = self.series(z) {
                return Ok(v);
            }
        }
        if self.alpha == 1.0 {
            return Ok(z.exp());
        }
        self.integral(z)
    }

    /// Power series in double-double. `None` when the partial terms grow too
    /// large for the sum to hold ~16 digits, or the series has not converged
    /// within the cached number of terms.
    pub fn series(&self, z: f64) -> Option<f64> {
        let mut sum = ExtendedReal::ZERO;
        let mut power = ExtendedReal::ONE;
        let mut peaked = false;
        let mut prev = f64::INFINITY;
        for inv in &self.inv_gamma {
            let term = power * *inv;
            let mag = term.hi().abs();
            if mag > MAX_TERM_MAGNITUDE {
                return None;
            }
            sum += term;
            if mag < prev {
                peaked = true;
            }
            if peaked && mag <= 1e-34 * sum.hi().abs().max(1e-300) {
                return Some(sum.to_f64());
            }
            if mag == 0.0 {
                return Some(sum.to_f64());
            }
            prev = mag;
            power *= z;
        }
        None
    }

    /// Integral representation; requires `alpha < 1` and `z < 0`.
    pub fn integral(&self, z: f64) -> Result<f64> {
        if self.alpha >= 1.0 {
            return Err(Error::Unsupported(
                "integral representation degenerates at alpha = 1".into(),
            ));
        }
        if !(z < 0.0) {
            return Err(domain_err!("integral representation needs z < 0, got {z}"));
        }
        let x = -z;
        let alpha = self.alpha;
        let angle = alpha * std::f64::consts::PI;
        let (sin, cos) = angle.sin_cos();
        let inv_alpha = 1.0 / alpha;
        // exp(-v^(1/alpha)) < 1e-21 beyond v = 48^alpha
        let upper = 48.0_f64.powf(alpha);
        let integrand = |v: f64| (-v.powf(inv_alpha)).exp() * x / (v * v + 2.0 * x * v * cos + x * x);
        // split at the peak of the rational factor
        let peak = (-x * cos).clamp(0.0, upper);
        let mut total = 0.0;
        let mut lo = 0.0;
        for hi in [peak, upper] {
            if hi > lo {
                total += adaptive_gk15(integrand, lo, hi, 1e-18, 1e-15, 4000);
                lo = hi;
            }
        }
        Ok(sin / angle * total)
    }
}

/// `E_alpha(z)` for `0 < alpha <= 1`, `z <= 0`.
pub fn mittag_leffler(alpha: f64, z: f64) -> Result<f64> {
    MittagLeffler::new(alpha)?.eval(z)
}
