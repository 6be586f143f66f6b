//! Test-side oracles that share no code with the library.

#![allow(dead_code)]

pub mod oracle_data;

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// three-term recurrence.
pub fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            deriv = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / deriv;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
    }
    (nodes, weights)
}

pub struct Integrator {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Integrator {
    pub fn new() -> Self {
        let (nodes, weights) = legendre_rule(20);
        Self { nodes, weights }
    }

    fn panel<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    fn recurse<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let mid = 0.5 * (a + b);
        let left = self.panel(f, a, mid);
        let right = self.panel(f, mid, b);
        let diff = (left + right - whole).abs();
        if depth == 0 || diff <= tol || diff <= 8.0 * f64::EPSILON * (left.abs() + right.abs()) {
            return left + right;
        }
        self.recurse(f, a, mid, left, 0.5 * tol, depth - 1)
            + self.recurse(f, mid, b, right, 0.5 * tol, depth - 1)
    }

    /// Adaptive bisection with a 20-point panel rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, tol: f64) -> f64 {
        let whole = self.panel(&f, a, b);
        // absolute floor relative to the magnitude of the whole integral
        let floor = 1e-15 * self.panel(&|x| f(x).abs(), a, b);
        self.recurse(&f, a, b, whole, tol.max(floor), 20)
    }
}

/// `(1 / Gamma(alpha)) int_0^c (c - x)^(alpha - 1) g(x) dx`, integrated after
/// the substitution `v = (c - x)^alpha`, which removes the endpoint singularity.
pub fn riemann_liouville<G: Fn(f64) -> f64>(g: G, alpha: f64, c: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    let quad = Integrator::new();
    let top = c.powf(alpha);
    let val = quad.integrate(|v| g(c - v.powf(1.0 / alpha)), 0.0, top, 1e-16);
    val / (alpha * libm::tgamma(alpha))
}

/// `int_0^1 (x - tau)^(alpha - 1) g(tau) dtau` for `x > 1`.
pub fn shifted_kernel_integral<G: Fn(f64) -> f64>(g: G, alpha: f64, x: f64) -> f64 {
    let quad = Integrator::new();
    let lo = (x - 1.0).powf(alpha);
    let hi = x.powf(alpha);
    quad.integrate(|v| g(x - v.powf(1.0 / alpha)), lo, hi, 1e-16) / alpha
}

/// Weighted moments `alpha int_0^1 (1 - c)^(alpha - 1) c^l dc`, `l = 0..=n`.
pub fn jacobi_moments(alpha: f64, n: usize) -> Vec<f64> {
    let mut m = vec![1.0; n + 1];
    for l in 1..=n {
        m[l] = m[l - 1] * l as f64 / (alpha + l as f64);
    }
    m
}

/// Caputo derivative of `t^beta` (zero for `beta = 0`).
pub fn caputo_power(alpha: f64, beta: f64, t: f64) -> f64 {
    if beta == 0.0 {
        return 0.0;
    }
    libm::tgamma(beta + 1.0) / libm::tgamma(beta + 1.0 - alpha) * t.powf(beta - alpha)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Orders from successive error ratios.
pub fn observed_orders(hs: &[f64], errs: &[f64]) -> Vec<f64> {
    hs.windows(2)
        .zip(errs.windows(2))
        .map(|(h, e)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
        .collect()
}
