//! Fractional integrals of the Jacobi basis.
//!
//! Two families are needed by the stepper:
//!
//! * the local integrals `I^alpha P_j(c)` (Riemann-Liouville, including the
//!   `1 / Gamma(alpha)` factor), evaluated through the substitution
//!   `x = c u`, which turns them into Gauss-Jacobi integrals of the
//!   polynomials `u -> P_j(c u)`:
//!
//!   ```text
//!   I^alpha P_j(c) = c^alpha / Gamma(alpha + 1) * sum_l b_l P_j(c c_l)
//!   ```
//!
//!   exact as long as `j <= 2k - 1`;
//!
//! * the history integrals `J_j^alpha(x) = int_0^1 (x - tau)^(alpha - 1) P_j(tau) dtau`
//!   for `x > 1`. Away from the endpoint singularity (`x >= 1.5`) a
//!   Gauss-Legendre rule reaches round-off; closer to 1 they come from a
//!   triangular three-term recurrence carried out in 192-bit binary floating point.

use dashu_float::{round::mode::HalfEven, FBig};

use crate::error::{domain_err, Error, Result};
use crate::extended::ExtendedReal;
use crate::jacobi::{ExtendedRecurrence, JacobiBasis};
use crate::quadrature::{extended_legendre, QuadratureRule, RuleKind};
use crate::special::gamma;

/// Below this argument the history integrals switch to the recurrence.
pub const DEFAULT_RECURRENCE_THRESHOLD: f64 = 1.5;

fn check_rule(basis: &JacobiBasis, rule: &QuadratureRule) -> Result<()> {
    if rule.alpha() != basis.alpha() {
        return Err(domain_err!(
            "rule alpha {} does not match basis alpha {}",
            rule.alpha(),
            basis.alpha()
        ));
    }
    if rule.len() < basis.len() {
        return Err(domain_err!(
            "need k >= s, got k = {} and s = {}",
            rule.len(),
            basis.len()
        ));
    }
    Ok(())
}

fn local_frac_into(basis: &JacobiBasis, rule: &QuadratureRule, c: f64, out: &mut [f64]) {
    let s = basis.len();
    out.iter_mut().for_each(|v| *v = 0.0);
    if c == 0.0 {
        return;
    }
    let mut p = vec![0.0; s];
    for (&node, &w) in rule.nodes().iter().zip(rule.weights()) {
        basis.eval_into(c * node, &mut p);
        for (acc, &pj) in out.iter_mut().zip(&p) {
            *acc += w * pj;
        }
    }
    let scale = c.powf(basis.alpha()) / gamma(basis.alpha() + 1.0);
    out.iter_mut().for_each(|v| *v *= scale);
}

/// `I^alpha P_j(c)` for `j = 0..s` at an arbitrary `c` in `[0, 1]`.
pub fn local_frac_at(basis: &JacobiBasis, rule: &QuadratureRule, c: f64) -> Result<Vec<f64>> {
    check_rule(basis, rule)?;
    if !(0.0..=1.0).contains(&c) {
        return Err(domain_err!("c must lie in [0, 1], got {c}"));
    }
    let mut out = vec![0.0; basis.len()];
    local_frac_into(basis, rule, c, &mut out);
    Ok(out)
}

/// The `k x s` matrix `I^alpha P_j(c_i)` at the nodes of a Gauss-Jacobi rule.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFracTable {
    alpha: f64,
    s: usize,
    k: usize,
    values: Vec<f64>,
}

impl LocalFracTable {
    pub fn new(basis: &JacobiBasis, rule: &QuadratureRule) -> Result<Self> {
        check_rule(basis, rule)?;
        let s = basis.len();
        let k = rule.len();
        let mut values = vec![0.0; k * s];
        for (row, &c) in values.chunks_mut(s).zip(rule.nodes()) {
            local_frac_into(basis, rule, c, row);
        }
        Ok(Self {
            alpha: basis.alpha(),
            s,
            k,
            values,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.s + j]
    }

    /// Row `i`: `I^alpha P_0(c_i), ..., I^alpha P_{s-1}(c_i)`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.s..(i + 1) * self.s]
    }

    /// Row-major `k x s` storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Evaluates `J_0^alpha(x), ..., J_{s-1}^alpha(x)` for `x >= 1`.
#[derive(Debug, Clone)]
pub struct JEvaluator {
    alpha: f64,
    s: usize,
    /// Recurrence coefficients carried in wide precision.
    a: Vec<Wide>,
    b: Vec<Wide>,
    d: Vec<Wide>,
    /// Nodes, weights and basis values of the quadrature branch are kept in
    /// double-double; the integrals can be much smaller than the summands.
    gl_nodes: Vec<ExtendedReal>,
    gl_weights: Vec<ExtendedReal>,
    /// `p x s`, row-major: `P_j(xi_i)`.
    p_at_gl: Vec<ExtendedReal>,
    threshold: f64,
}

impl JEvaluator {
    /// `gl_rule` must be a Gauss-Legendre rule.
    pub fn new(basis: &JacobiBasis, gl_rule: &QuadratureRule) -> Result<Self> {
        if gl_rule.kind() != RuleKind::GaussLegendre {
            return Err(domain_err!("history integrals need a Gauss-Legendre rule"));
        }
        let s = basis.len();
        let rec = ExtendedRecurrence::new(basis.alpha(), s);
        let gl = extended_legendre(gl_rule.nodes());
        let mut p_at_gl = vec![ExtendedReal::ZERO; gl.len() * s];
        for (row, &(xi, _)) in p_at_gl.chunks_mut(s).zip(&gl) {
            rec.orthonormal_values(xi, row);
        }
        let (a, b, d) = wide_coefficients(basis.alpha(), s);
        Ok(Self {
            alpha: basis.alpha(),
            s,
            a,
            b,
            d,
            gl_nodes: gl.iter().map(|&(c, _)| c).collect(),
            gl_weights: gl.iter().map(|&(_, w)| w).collect(),
            p_at_gl,
            threshold: DEFAULT_RECURRENCE_THRESHOLD,
        })
    }

    /// Overrides the switch point between the two branches (expert setting).
    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `J_j^alpha(x)`, `j = 0..s`, choosing the branch by `x`.
    pub fn eval(&self, x: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.s];
        self.eval_into(x, &mut out)?;
        Ok(out)
    }

    /// At `x = 1` the integrals reduce to weighted moments, so only `J_0 = 1 / alpha` survives.
    pub fn eval_into(&self, x: f64, out: &mut [f64]) -> Result<()> {
        if !(x >= 1.0) || !x.is_finite() {
            return Err(domain_err!("J integrals need x >= 1, got {x}"));
        }
        if x == 1.0 {
            out.iter_mut().for_each(|v| *v = 0.0);
            out[0] = 1.0 / self.alpha;
        } else if x >= self.threshold {
            self.gauss_legendre_into(x, out);
        } else {
            self.recurrence_into(x, out);
        }
        Ok(())
    }

    /// Gauss-Legendre branch, accurate for `x` bounded away from 1.
    pub fn eval_gauss_legendre(&self, x: f64) -> Result<Vec<f64>> {
        if !(x > 1.0) {
            return Err(domain_err!("J integrals need x > 1, got {x}"));
        }
        let mut out = vec![0.0; self.s];
        self.gauss_legendre_into(x, &mut out);
        Ok(out)
    }

    /// Wide-precision recurrence branch.
    pub fn eval_recurrence(&self, x: f64) -> Result<Vec<f64>> {
        if !(x > 1.0) {
            return Err(domain_err!("J integrals need x > 1, got {x}"));
        }
        let mut out = vec![0.0; self.s];
        self.recurrence_into(x, &mut out);
        Ok(out)
    }

    fn gauss_legendre_into(&self, x: f64, out: &mut [f64]) {
        let s = self.s;
        let xd = ExtendedReal::from_f64(x);
        let mut acc = [ExtendedReal::ZERO; MAX_EXTENDED_LEN];
        let mut heap;
        let acc: &mut [ExtendedReal] = if s <= MAX_EXTENDED_LEN {
            &mut acc[..s]
        } else {
            heap = vec![ExtendedReal::ZERO; s];
            &mut heap
        };
        for (i, (&xi, &w)) in self.gl_nodes.iter().zip(&self.gl_weights).enumerate() {
            let kernel = w * (xd - xi).to_f64().powf(self.alpha - 1.0);
            for (a, &pj) in acc.iter_mut().zip(&self.p_at_gl[i * s..(i + 1) * s]) {
                *a += kernel * pj;
            }
        }
        for (o, a) in out.iter_mut().zip(acc.iter()) {
            *o = a.to_f64();
        }
    }

    /// Triangular recurrence
    ///
    /// ```text
    /// J_0^{beta}(x)     = (x^beta - (x - 1)^beta) / beta
    /// J_{j+1}^{beta}(x) = (a_j x - b_j) J_j^{beta}(x) - a_j J_j^{beta + 1}(x) - d_j J_{j-1}^{beta}(x)
    /// ```
    ///
    /// seeded with `beta = alpha, alpha + 1, ..., alpha + s - 1`; each level
    /// consumes one order of `beta`.
    fn recurrence_into(&self, x: f64, out: &mut [f64]) {
        let s = self.s;
        let xw = wide(x);
        let xm1 = &xw - wide(1.0);

        // level j holds J_j^{alpha + l} for l = 0..s-j. The seeds share the
        // factors x^alpha and (x - 1)^alpha; independent roundings of each
        // seed would be strongly amplified by the recurrence.
        let alpha = wide(self.alpha);
        let mut upper = xw.powf(&alpha);
        let mut lower = xm1.powf(&alpha);
        let mut cur = Vec::with_capacity(s);
        for l in 0..s {
            cur.push((&upper - &lower) / (&alpha + wide(l as f64)));
            upper = &upper * &xw;
            lower = &lower * &xm1;
        }
        let mut prev: Vec<Wide> = Vec::new();
        out[0] = cur[0].to_f64().value();

        for j in 0..s.saturating_sub(1) {
            let a = &self.a[j];
            let lead = &xw * a - &self.b[j];
            let dj = &self.d[j];
            let width = s - j - 1;
            let next: Vec<Wide> = (0..width)
                .map(|l| {
                    let v = &lead * &cur[l] - &cur[l + 1] * a;
                    if j > 0 {
                        v - &prev[l] * dj
                    } else {
                        v
                    }
                })
                .collect();
            out[j + 1] = next[0].to_f64().value();
            prev = std::mem::replace(&mut cur, next);
        }
    }
}

/// Stack space for the double-double accumulators of the quadrature branch.
const MAX_EXTENDED_LEN: usize = 32;

/// Binary floats with `WIDE_BITS` of mantissa for the triangular recurrence.
type Wide = FBig<HalfEven, 2>;

/// The recurrence amplifies rounding by up to ~1e30 for `s = 20`, `x <= 3`.
const WIDE_BITS: usize = 192;

fn wide(v: f64) -> Wide {
    Wide::try_from(v).expect("finite value").with_precision(WIDE_BITS).value()
}

/// Orthonormal `a_j, b_j, d_j`, `j < s - 1`, from the closed-form shifted
/// Jacobi recurrence with parameter `alpha - 1`.
fn wide_coefficients(alpha: f64, s: usize) -> (Vec<Wide>, Vec<Wide>, Vec<Wide>) {
    let one = wide(1.0);
    let two = wide(2.0);
    let pa = wide(alpha) - &one;
    let center = |n: usize| -> Wide {
        let c = if n == 0 {
            -(&pa / (&pa + &two))
        } else {
            let t = &pa + wide(2.0 * n as f64);
            -(&pa * &pa) / (&t * (&t + &two))
        };
        (c + &one) / &two
    };
    let beta = |n: usize| -> Wide {
        if n == 0 {
            return one.clone();
        }
        let nf = wide(n as f64);
        let t = &pa + wide(2.0 * n as f64);
        let num = (&pa + &nf) * &nf;
        &num * &num / (&t * &t * (&t + &one) * (&t - &one))
    };
    let n = s.saturating_sub(1);
    let (mut a, mut b, mut d) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for j in 0..n {
        let root_next = beta(j + 1).sqrt();
        a.push(&one / &root_next);
        b.push(center(j) / &root_next);
        d.push(if j == 0 { wide(0.0) } else { beta(j).sqrt() / &root_next });
    }
    (a, b, d)
}

/// `(r^m - 1) / (r - 1)`, i.e. `1 + r + ... + r^(m-1)`, which is `m` when `r = 1`.
pub fn geometric_sum(r: f64, m: usize) -> f64 {
    if r == 1.0 {
        m as f64
    } else {
        (r.powi(m as i32) - 1.0) / (r - 1.0)
    }
}

/// Kernel argument, in units of the earlier step, seen from a point `c` of
/// the step `m` positions later on a mesh with ratio `r`.
pub fn history_argument(r: f64, m: usize, c: f64) -> f64 {
    geometric_sum(r, m) + c * r.powi(m as i32)
}

/// One cached offset: `J_j^alpha` at every node and at `c = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JBlock {
    at_nodes: Vec<f64>,
    at_end: Vec<f64>,
}

impl JBlock {
    /// Row `i`: `J_j^alpha(history_argument(r, m, c_i))` for `j = 0..s`.
    pub fn node_row(&self, i: usize, s: usize) -> &[f64] {
        &self.at_nodes[i * s..(i + 1) * s]
    }

    pub fn at_nodes(&self) -> &[f64] {
        &self.at_nodes
    }

    /// `J_j^alpha(history_argument(r, m, 1))`.
    pub fn at_end(&self) -> &[f64] {
        &self.at_end
    }
}

/// Append-only cache of history integrals, indexed by step offset `m >= 1`.
#[derive(Debug, Clone)]
pub struct JTable {
    alpha: f64,
    s: usize,
    r: f64,
    nodes: Vec<f64>,
    blocks: Vec<JBlock>,
}

impl JTable {
    pub fn new(evaluator: &JEvaluator, nodes: &[f64], r: f64) -> Self {
        Self {
            alpha: evaluator.alpha(),
            s: evaluator.s(),
            r,
            nodes: nodes.to_vec(),
            blocks: Vec::new(),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn k(&self) -> usize {
        self.nodes.len()
    }

    pub fn ratio(&self) -> f64 {
        self.r
    }

    /// Largest offset stored.
    pub fn max_offset(&self) -> usize {
        self.blocks.len()
    }

    /// Block for offset `m` (1-based).
    pub fn block(&self, m: usize) -> Option<&JBlock> {
        m.checked_sub(1).and_then(|i| self.blocks.get(i))
    }

    /// Appends the block for offset `m`. Offsets already present are left
    /// untouched; skipping an offset is an error.
    pub fn extend(&mut self, m: usize, evaluator: &JEvaluator) -> Result<()> {
        if m == 0 {
            return Err(Error::Usage("offsets start at 1".into()));
        }
        if m <= self.blocks.len() {
            return Ok(());
        }
        if m != self.blocks.len() + 1 {
            return Err(Error::Usage(format!(
                "cannot add offset {m}: offsets 1..={} present",
                self.blocks.len()
            )));
        }
        if evaluator.s() != self.s || evaluator.alpha() != self.alpha {
            return Err(domain_err!("evaluator does not match the table"));
        }
        let s = self.s;
        let mut at_nodes = vec![0.0; self.nodes.len() * s];
        for (row, &c) in at_nodes.chunks_mut(s).zip(&self.nodes) {
            evaluator.eval_into(history_argument(self.r, m, c), row)?;
        }
        let mut at_end = vec![0.0; s];
        evaluator.eval_into(history_argument(self.r, m, 1.0), &mut at_end)?;
        if at_nodes.iter().chain(&at_end).any(|v| !v.is_finite()) {
            return Err(domain_err!("non-finite history integral at offset {m}"));
        }
        self.blocks.push(JBlock { at_nodes, at_end });
        Ok(())
    }
}
