use crate::error::{Error, Result};
use crate::frac_ops::{history_argument, JEvaluator, JTable};
use crate::special::gamma;

/// Everything earlier steps leave behind for later ones: the coefficient
/// blocks `gamma^nu` (each `s x m`, coefficient-major), the step sizes, the
/// grid values and the cached history integrals.
#[derive(Debug, Clone)]
pub struct HistoryStore {
    alpha: f64,
    s: usize,
    dim: usize,
    y0: Vec<f64>,
    inv_gamma_alpha: f64,
    gamma_blocks: Vec<Vec<f64>>,
    h_pow: Vec<f64>,
    y_bar: Vec<Vec<f64>>,
    j_table: JTable,
}

impl HistoryStore {
    pub fn new(y0: &[f64], j_table: JTable) -> Self {
        let alpha = j_table.alpha();
        Self {
            alpha,
            s: j_table.s(),
            dim: y0.len(),
            y0: y0.to_vec(),
            inv_gamma_alpha: 1.0 / gamma(alpha),
            gamma_blocks: Vec::new(),
            h_pow: Vec::new(),
            y_bar: vec![y0.to_vec()],
            j_table,
        }
    }

    /// Completed steps.
    pub fn steps(&self) -> usize {
        self.gamma_blocks.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn y0(&self) -> &[f64] {
        &self.y0
    }

    pub fn j_table(&self) -> &JTable {
        &self.j_table
    }

    /// Coefficients `gamma^nu` of step `nu` (1-based), `s x m` coefficient-major.
    pub fn gamma_block(&self, nu: usize) -> Option<&[f64]> {
        nu.checked_sub(1)
            .and_then(|i| self.gamma_blocks.get(i))
            .map(Vec::as_slice)
    }

    /// Grid value `y_bar_n`, `n = 0..=steps()`.
    pub fn y_bar(&self, n: usize) -> Option<&[f64]> {
        self.y_bar.get(n).map(Vec::as_slice)
    }

    /// Freezes the coefficients of the step just completed.
    pub fn push_step(&mut self, gamma: Vec<f64>, h: f64, y_bar: Vec<f64>) -> Result<()> {
        if gamma.len() != self.s * self.dim || y_bar.len() != self.dim {
            return Err(Error::Usage("coefficient block has the wrong shape".into()));
        }
        self.gamma_blocks.push(gamma);
        self.h_pow.push(h.powf(self.alpha));
        self.y_bar.push(y_bar);
        Ok(())
    }

    /// Makes offsets `1..=n` of the history integral table available.
    pub fn ensure_offsets(&mut self, n: usize, evaluator: &JEvaluator) -> Result<()> {
        for m in self.j_table.max_offset() + 1..=n {
            self.j_table.extend(m, evaluator)?;
        }
        Ok(())
    }

    fn check_steps(&self, n: usize) -> Result<()> {
        if n > self.steps() {
            return Err(Error::Usage(format!(
                "history of {n} steps requested, only {} stored",
                self.steps()
            )));
        }
        Ok(())
    }

    /// Adds `(1 / Gamma(alpha)) sum_nu h_nu^alpha sum_j J_j(...) gamma_j^nu` to
    /// `out`, with the `J` row for offset `m` supplied by `row(m)`.
    fn accumulate<'a, F>(&self, n: usize, out: &mut [f64], mut row: F) -> Result<()>
    where
        F: FnMut(usize) -> Result<&'a [f64]>,
    {
        let (s, dim) = (self.s, self.dim);
        for nu in 1..=n {
            let j_row = row(n - nu + 1)?;
            let weight = self.h_pow[nu - 1] * self.inv_gamma_alpha;
            let block = &self.gamma_blocks[nu - 1];
            for j in 0..s {
                let coef = weight * j_row[j];
                for (acc, &g) in out.iter_mut().zip(&block[j * dim..(j + 1) * dim]) {
                    *acc += coef * g;
                }
            }
        }
        Ok(())
    }

    fn missing_offset(m: usize) -> Error {
        Error::Usage(format!("history integral table lacks offset {m}"))
    }

    /// `phi_n^alpha(c_i)` at every quadrature node of step `n + 1`, `k x m` row-major.
    pub fn phi_at_nodes(&self, n: usize) -> Result<Vec<f64>> {
        self.check_steps(n)?;
        let (k, s, dim) = (self.j_table.k(), self.s, self.dim);
        let mut phi = vec![0.0; k * dim];
        for i in 0..k {
            let out = &mut phi[i * dim..(i + 1) * dim];
            self.accumulate(n, out, |m| {
                self.j_table
                    .block(m)
                    .map(|b| b.node_row(i, s))
                    .ok_or_else(|| Self::missing_offset(m))
            })?;
            for (v, &y) in out.iter_mut().zip(&self.y0) {
                *v += y;
            }
        }
        Ok(phi)
    }

    /// `phi_n^alpha(1)`.
    pub fn phi_at_end(&self, n: usize) -> Result<Vec<f64>> {
        self.check_steps(n)?;
        let mut phi = vec![0.0; self.dim];
        self.accumulate(n, &mut phi, |m| {
            self.j_table
                .block(m)
                .map(|b| b.at_end())
                .ok_or_else(|| Self::missing_offset(m))
        })?;
        for (v, &y) in phi.iter_mut().zip(&self.y0) {
            *v += y;
        }
        Ok(phi)
    }

    /// `phi_n^alpha(c)` at an arbitrary `c` in `[0, 1]`, with the history
    /// integrals computed on the spot.
    pub fn phi_at(&self, n: usize, c: f64, evaluator: &JEvaluator) -> Result<Vec<f64>> {
        self.check_steps(n)?;
        let r = self.j_table.ratio();
        let rows: Vec<Vec<f64>> = (1..=n)
            .map(|m| evaluator.eval(history_argument(r, m, c)))
            .collect::<Result<_>>()?;
        let mut phi = vec![0.0; self.dim];
        self.accumulate(n, &mut phi, |m| Ok(rows[m - 1].as_slice()))?;
        for (v, &y) in phi.iter_mut().zip(&self.y0) {
            *v += y;
        }
        Ok(phi)
    }
}
