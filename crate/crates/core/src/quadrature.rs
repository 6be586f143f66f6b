//! Gauss rules on `[0, 1]`: Gauss-Jacobi for the weight
//! `alpha * (1 - c)^(alpha - 1)` and plain Gauss-Legendre.
//!
//! Both start from the Golub-Welsch algorithm on the monic recurrence held by
//! [`JacobiBasis`]: the nodes are the eigenvalues of the symmetric tridiagonal
//! Jacobi matrix. Each node is then polished by Newton steps on the
//! recurrence in double-double, and the weights come from the Christoffel
//! function `1 / sum_j P_j(c_i)^2` evaluated at the polished node. Squared
//! eigenvector components lose relative accuracy on the small weights.

use nalgebra::DMatrix;

use crate::error::{domain_err, Error, Result};
use crate::extended::ExtendedReal;
use crate::jacobi::{ExtendedRecurrence, JacobiBasis};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    GaussJacobi { alpha: f64 },
    GaussLegendre,
}

/// Nodes and weights of a Gauss rule on `[0, 1]`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// `k`-node Gauss-Jacobi rule, exact on polynomials of degree `2k - 1`
    /// against `alpha * (1 - c)^(alpha - 1)`.
    pub fn gauss_jacobi(alpha: f64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(domain_err!("a Gauss rule needs at least one node"));
        }
        let basis = JacobiBasis::new(alpha, k)?;
        let (nodes, weights): (Vec<_>, Vec<_>) = golub_welsch(&basis)?
            .into_iter()
            .map(|(c, w)| (c.to_f64(), w))
            .unzip();
        Ok(Self {
            kind: RuleKind::GaussJacobi { alpha },
            nodes,
            weights,
        })
    }

    /// `p`-node Gauss-Legendre rule on `[0, 1]`.
    pub fn gauss_legendre(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(domain_err!("a Gauss rule needs at least one node"));
        }
        let basis = JacobiBasis::new(1.0, p)?;
        let refined = golub_welsch(&basis)?;
        // The exact rule is symmetric about 1/2: keep the lower half and mirror it.
        let mut nodes = vec![0.5; p];
        let mut weights = vec![0.0; p];
        for i in 0..p.div_ceil(2) {
            let j = p - 1 - i;
            let (c, w) = refined[i];
            weights[i] = w;
            weights[j] = w;
            if i != j {
                nodes[i] = c.to_f64();
                nodes[j] = (ExtendedReal::ONE - c).to_f64();
            }
        }
        Ok(Self {
            kind: RuleKind::GaussLegendre,
            nodes,
            weights,
        })
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    /// The `alpha` of a Gauss-Jacobi rule; `1` for Gauss-Legendre.
    pub fn alpha(&self) -> f64 {
        match self.kind {
            RuleKind::GaussJacobi { alpha } => alpha,
            RuleKind::GaussLegendre => 1.0,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule to `g`: `sum_i w_i g(c_i)`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| w * g(c))
            .sum()
    }
}

/// Nodes (extended precision) and weights, ascending.
fn golub_welsch(basis: &JacobiBasis) -> Result<Vec<(ExtendedReal, f64)>> {
    let k = basis.len();
    let centers = basis.monic_alpha();
    let betas = basis.monic_beta();

    let mut jac = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        jac[(i, i)] = centers[i];
        if i + 1 < k {
            let off = betas[i + 1].sqrt();
            jac[(i, i + 1)] = off;
            jac[(i + 1, i)] = off;
        }
    }

    let eig = nalgebra::SymmetricEigen::try_new(jac, f64::EPSILON, 10_000)
        .ok_or(Error::EigenSolver { nodes: k })?;
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);

    let recurrence = ExtendedRecurrence::new(basis.alpha(), k);
    let rule: Vec<(ExtendedReal, f64)> = eigenvalues
        .into_iter()
        .map(|c| {
            let node = polish_node(ExtendedReal::from_f64(c), &recurrence);
            (node, christoffel_weight(node, &recurrence).to_f64())
        })
        .collect();

    if rule.iter().any(|&(c, w)| !(c.hi() > 0.0 && c.hi() < 1.0 && w > 0.0)) {
        return Err(Error::EigenSolver { nodes: k });
    }
    if rule.windows(2).any(|p| p[0].0.hi() >= p[1].0.hi()) {
        return Err(Error::EigenSolver { nodes: k });
    }
    Ok(rule)
}

/// Monic `p_k(c)` and its derivative.
fn monic_value(c: ExtendedReal, rec: &ExtendedRecurrence) -> (ExtendedReal, ExtendedReal) {
    let (mut p_prev, mut p) = (ExtendedReal::ZERO, ExtendedReal::ONE);
    let (mut dp_prev, mut dp) = (ExtendedReal::ZERO, ExtendedReal::ZERO);
    for (n, (&center, &beta)) in rec.centers.iter().zip(&rec.betas).enumerate() {
        let back = if n == 0 { ExtendedReal::ZERO } else { beta };
        let shift = c - center;
        let p_next = shift * p - back * p_prev;
        let dp_next = p + shift * dp - back * dp_prev;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp)
}

/// Newton steps on `p_k` starting from the eigenvalue.
fn polish_node(mut c: ExtendedReal, rec: &ExtendedRecurrence) -> ExtendedReal {
    for _ in 0..3 {
        let (p, dp) = monic_value(c, rec);
        if !(dp.hi() != 0.0 && dp.is_finite()) {
            break;
        }
        c -= p / dp;
    }
    c
}

/// `1 / sum_{j<k} P_j(c)^2` with `P_j = p_j / sqrt(beta_1 ... beta_j)`.
fn christoffel_weight(c: ExtendedReal, rec: &ExtendedRecurrence) -> ExtendedReal {
    let (mut p_prev, mut p) = (ExtendedReal::ZERO, ExtendedReal::ONE);
    let mut norm = ExtendedReal::ONE;
    let mut total = ExtendedReal::ONE;
    let k = rec.centers.len();
    for n in 0..k - 1 {
        let back = if n == 0 { ExtendedReal::ZERO } else { rec.betas[n] };
        let p_next = (c - rec.centers[n]) * p - back * p_prev;
        p_prev = p;
        p = p_next;
        norm *= rec.betas[n + 1];
        total += p.sqr() / norm;
    }
    rec.betas[0] / total
}

/// Extended-precision nodes and weights of the Gauss-Legendre rule whose
/// rounded nodes are `nodes`.
pub(crate) fn extended_legendre(nodes: &[f64]) -> Vec<(ExtendedReal, ExtendedReal)> {
    let recurrence = ExtendedRecurrence::new(1.0, nodes.len());
    nodes
        .iter()
        .map(|&c| {
            let node = polish_node(ExtendedReal::from_f64(c), &recurrence);
            (node, christoffel_weight(node, &recurrence))
        })
        .collect()
}
