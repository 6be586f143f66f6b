//! Shifted orthonormal Jacobi polynomials on `[0, 1]`.
//!
//! The family `P_0, P_1, ...` is orthonormal with respect to the unit-mass
//! weight `alpha * (1 - c)^(alpha - 1)`, i.e. it is the classical
//! Jacobi-`(alpha - 1, 0)` family mapped to `[0, 1]` and normalized. For
//! `alpha = 1` the weight is constant and the family reduces to the shifted
//! orthonormal Legendre polynomials.
//!
//! Polynomials are evaluated through the three-term recurrence
//!
//! ```text
//! P_{j+1}(c) = (a_j c - b_j) P_j(c) - d_j P_{j-1}(c),   P_0 = 1,  P_{-1} = 0.
//! ```

use crate::error::{domain_err, Result};
use crate::extended::ExtendedReal;

/// The first `s` shifted orthonormal Jacobi polynomials for a given `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiBasis {
    alpha: f64,
    s: usize,
    monic_alpha: Vec<f64>,
    monic_beta: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    d: Vec<f64>,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(domain_err!("alpha must lie in (0, 1], got {alpha}"))
    }
}

impl JacobiBasis {
    /// Builds the basis `P_0..P_{s-1}`.
    ///
    /// Recurrence coefficients come in closed form from the classical monic
    /// Jacobi recurrence on `[-1, 1]`, mapped affinely to `[0, 1]`.
    pub fn new(alpha: f64, s: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if s == 0 {
            return Err(domain_err!("basis size s must be at least 1"));
        }

        // Classical parameters (1 - x)^pa (1 + x)^pb with pa = alpha - 1, pb = 0.
        let pa = alpha - 1.0;
        let pb = 0.0_f64;
        let ab = pa + pb;

        let mut monic_alpha = Vec::with_capacity(s);
        let mut monic_beta = Vec::with_capacity(s);
        for n in 0..s {
            let nf = n as f64;
            let center = if n == 0 {
                (pb - pa) / (ab + 2.0)
            } else {
                let t = 2.0 * nf + ab;
                (pb * pb - pa * pa) / (t * (t + 2.0))
            };
            monic_alpha.push(0.5 * (center + 1.0));

            let beta = if n == 0 {
                // the mapped weight has unit mass
                1.0
            } else {
                let t = 2.0 * nf + ab;
                let classical = 4.0 * nf * (nf + pa) * (nf + pb) * (nf + ab)
                    / (t * t * (t + 1.0) * (t - 1.0));
                0.25 * classical
            };
            monic_beta.push(beta);
        }

        let mut a = Vec::with_capacity(s.saturating_sub(1));
        let mut b = Vec::with_capacity(s.saturating_sub(1));
        let mut d = Vec::with_capacity(s.saturating_sub(1));
        for j in 0..s.saturating_sub(1) {
            let root_next = monic_beta[j + 1].sqrt();
            a.push(1.0 / root_next);
            b.push(monic_alpha[j] / root_next);
            d.push(if j == 0 {
                0.0
            } else {
                monic_beta[j].sqrt() / root_next
            });
        }

        Ok(Self {
            alpha,
            s,
            monic_alpha,
            monic_beta,
            a,
            b,
            d,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Number of polynomials in the basis.
    pub fn len(&self) -> usize {
        self.s
    }

    pub fn is_empty(&self) -> bool {
        self.s == 0
    }

    /// Centers of the monic recurrence on `[0, 1]`.
    pub fn monic_alpha(&self) -> &[f64] {
        &self.monic_alpha
    }

    /// Norm ratios of the monic recurrence on `[0, 1]`; `monic_beta()[0]` is the weight mass.
    pub fn monic_beta(&self) -> &[f64] {
        &self.monic_beta
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Returns `P_0(c), ..., P_{s-1}(c)`.
    pub fn eval(&self, c: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.s];
        self.eval_into(c, &mut out);
        out
    }

    /// Writes `P_0(c), ..., P_{n-1}(c)` into `out`, with `n = out.len() <= s`.
    pub fn eval_into(&self, c: f64, out: &mut [f64]) {
        assert!(out.len() <= self.s, "requested more polynomials than the basis holds");
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        let mut prev = 0.0;
        for j in 0..out.len() - 1 {
            let next = (self.a[j] * c - self.b[j]) * out[j] - self.d[j] * prev;
            prev = out[j];
            out[j + 1] = next;
        }
    }
}

/// Monic recurrence coefficients in double-double, used to refine Gauss rules.
#[derive(Debug, Clone)]
pub(crate) struct ExtendedRecurrence {
    pub centers: Vec<ExtendedReal>,
    pub betas: Vec<ExtendedReal>,
}

impl ExtendedRecurrence {
    /// Coefficients for `n = 0..len`.
    pub fn new(alpha: f64, len: usize) -> Self {
        let pa = ExtendedReal::from_f64(alpha) - 1.0;
        let centers = (0..len)
            .map(|n| {
                let c = if n == 0 {
                    -pa / (pa + 2.0)
                } else {
                    let t = pa + 2.0 * n as f64;
                    -(pa * pa) / (t * (t + 2.0))
                };
                (c + 1.0) * 0.5
            })
            .collect();
        let betas = (0..len)
            .map(|n| {
                if n == 0 {
                    return ExtendedReal::ONE;
                }
                let nf = n as f64;
                let t = pa + 2.0 * nf;
                ((pa + nf) * nf).sqr() / (t.sqr() * (t + 1.0) * (t - 1.0))
            })
            .collect();
        Self { centers, betas }
    }

    /// Orthonormal `P_0(c), ..., P_{len-1}(c)`.
    pub fn orthonormal_values(&self, c: ExtendedReal, out: &mut [ExtendedReal]) {
        let (mut p_prev, mut p) = (ExtendedReal::ZERO, ExtendedReal::ONE);
        let mut norm = self.betas[0];
        for (n, slot) in out.iter_mut().enumerate() {
            *slot = p / norm.sqrt();
            if n + 1 == self.centers.len() {
                break;
            }
            let back = if n == 0 { ExtendedReal::ZERO } else { self.betas[n] };
            let p_next = (c - self.centers[n]) * p - back * p_prev;
            p_prev = p;
            p = p_next;
            norm *= self.betas[n + 1];
        }
    }
}
