//! Dense two-phase simplex with Bland's rule, sized for the covering LPs
//! behind the fractional chromatic number (a few dozen rows).

const EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,
    // (rows + 1) x (cols + 1); last column is the right-hand side, last row
    // the reduced costs with the negated objective value in the corner.
    a: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.a[r * (self.cols + 1) + c]
    }

    #[inline]
    fn at_mut(&mut self, r: usize, c: usize) -> &mut f64 {
        &mut self.a[r * (self.cols + 1) + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.cols + 1;
        let p = self.at(row, col);
        for c in 0..w {
            *self.at_mut(row, c) /= p;
        }
        let pivot_row: Vec<f64> = self.a[row * w..(row + 1) * w].to_vec();
        for r in 0..=self.rows {
            if r == row {
                continue;
            }
            let f = self.at(r, col);
            if f != 0.0 {
                for c in 0..w {
                    *self.at_mut(r, c) -= f * pivot_row[c];
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations over columns `0..allowed`. Returns `false` if
    /// the objective is unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            // Bland: smallest index with negative reduced cost enters.
            let Some(col) = (0..allowed).find(|&c| self.at(self.rows, c) < -EPS) else {
                return true;
            };
            // Ratio test, ties broken by smallest basic variable index.
            let mut best: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let coef = self.at(r, col);
                if coef > EPS {
                    let ratio = self.rhs(r) / coef;
                    best = match best {
                        None => Some((r, ratio)),
                        Some((br, bv)) => {
                            if ratio < bv - EPS || (ratio <= bv + EPS && self.basis[r] < self.basis[br]) {
                                Some((r, ratio))
                            } else {
                                Some((br, bv))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

/// Solves `min cᵀx` subject to `A x ≥ b`, `x ≥ 0` with `b ≥ 0`.
///
/// `a` is row-major, `rows x c.len()`.
pub fn minimize_covering(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(b.iter().all(|&x| x >= 0.0), "right-hand side must be nonnegative");
    // Columns: x (n), surplus (m), artificial (m).
    let cols = n + 2 * m;
    let mut t = Tableau {
        rows: m,
        cols,
        a: vec![0.0; (m + 1) * (cols + 1)],
        basis: (n + m..n + 2 * m).collect(),
    };
    for r in 0..m {
        assert_eq!(a[r].len(), n);
        for j in 0..n {
            *t.at_mut(r, j) = a[r][j];
        }
        *t.at_mut(r, n + r) = -1.0;
        *t.at_mut(r, n + m + r) = 1.0;
        *t.at_mut(r, cols) = b[r];
    }
    // Phase one: minimize the sum of artificials.
    for j in 0..cols {
        let cost = if j >= n + m { 1.0 } else { 0.0 };
        let s: f64 = (0..m).map(|r| t.at(r, j)).sum();
        *t.at_mut(m, j) = cost - s;
    }
    *t.at_mut(m, cols) = -(0..m).map(|r| t.rhs(r)).sum::<f64>();
    t.optimize(cols);
    if -t.at(m, cols) > 1e-9 {
        return LpOutcome::Infeasible;
    }
    // Drive leftover artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] >= n + m {
            if let Some(col) = (0..n + m).find(|&c| t.at(r, c).abs() > EPS) {
                t.pivot(r, col);
            }
        }
    }
    // Phase two on the original columns.
    for j in 0..=cols {
        *t.at_mut(m, j) = 0.0;
    }
    for j in 0..n {
        *t.at_mut(m, j) = c[j];
    }
    for r in 0..m {
        let bj = t.basis[r];
        let cost = if bj < n { c[bj] } else { 0.0 };
        if cost != 0.0 {
            for j in 0..=cols {
                let v = t.at(r, j);
                *t.at_mut(m, j) -= cost * v;
            }
        }
    }
    if !t.optimize(n + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for r in 0..m {
        if t.basis[r] < n {
            x[t.basis[r]] = t.rhs(r);
        }
    }
    LpOutcome::Optimal {
        value: -t.at(m, cols),
        x,
    }
}
