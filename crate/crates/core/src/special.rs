//! Gamma function in double precision.

/// `Gamma(x)`.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}
