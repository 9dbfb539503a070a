//! Dense two-phase simplex for the tiny linear programs produced by
//! worst-case linear fits: a handful of variables, up to a few hundred rows.
//!
//! Pivoting follows Bland's rule throughout (lowest-index entering column,
//! lowest-index basic variable on ratio ties), which rules out cycling on the
//! highly degenerate programs minimax fitting generates.

/// Solves `min c.x  s.t.  a x <= b, x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

const ENTER_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;

struct Tableau {
    /// m rows of [structural | slack | artificial | rhs].
    rows: Vec<Vec<f64>>,
    /// Reduced-cost row, same column layout, rhs cell unused.
    cost: Vec<f64>,
    /// Column index of the basic variable of each row.
    basis: Vec<usize>,
    n_structural: usize,
    n_artificial_start: usize,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, row: usize) -> f64 {
        self.rows[row][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = 1.0 / self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v *= inv;
        }
        for r in 0..self.rows.len() {
            if r != row {
                let factor = self.rows[r][col];
                if factor != 0.0 {
                    for k in 0..=self.ncols {
                        let delta = factor * self.rows[row][k];
                        self.rows[r][k] -= delta;
                    }
                }
            }
        }
        let factor = self.cost[col];
        if factor != 0.0 {
            for k in 0..=self.ncols {
                self.cost[k] -= factor * self.rows[row][k];
            }
        }
        self.basis[row] = col;
    }

    /// Bland iteration loop over the allowed column range. Returns false on
    /// an unbounded direction.
    fn iterate(&mut self, allowed_cols: usize) -> bool {
        loop {
            let entering = (0..allowed_cols).find(|&j| self.cost[j] < -ENTER_TOL);
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, f64)> = None;
            for row in 0..self.rows.len() {
                let coeff = self.rows[row][col];
                if coeff > PIVOT_TOL {
                    let ratio = self.rhs(row) / coeff;
                    let replace = match leaving {
                        None => true,
                        Some((best_row, best_ratio)) => {
                            ratio < best_ratio - 1e-12
                                || (ratio <= best_ratio + 1e-12
                                    && self.basis[row] < self.basis[best_row])
                        }
                    };
                    if replace {
                        leaving = Some((row, ratio));
                    }
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    /// Rebuilds the reduced-cost row for the given objective coefficients.
    fn set_objective(&mut self, c: &[f64]) {
        self.cost = vec![0.0; self.ncols + 1];
        self.cost[..c.len()].copy_from_slice(c);
        for row in 0..self.rows.len() {
            let cb = if self.basis[row] < c.len() {
                c[self.basis[row]]
            } else {
                0.0
            };
            if cb != 0.0 {
                for k in 0..=self.ncols {
                    self.cost[k] -= cb * self.rows[row][k];
                }
            }
        }
    }
}

pub(crate) fn solve_lp(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    debug_assert_eq!(b.len(), m);
    debug_assert!(a.iter().all(|row| row.len() == n));

    let needs_artificial: Vec<bool> = b.iter().map(|&v| v < 0.0).collect();
    let n_artificial = needs_artificial.iter().filter(|&&v| v).count();
    let n_art_start = n + m;
    let ncols = n + m + n_artificial;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 0usize;
    for i in 0..m {
        let mut row = vec![0.0; ncols + 1];
        let flip = if needs_artificial[i] { -1.0 } else { 1.0 };
        for j in 0..n {
            row[j] = flip * a[i][j];
        }
        row[n + i] = flip;
        row[ncols] = flip * b[i];
        if needs_artificial[i] {
            row[n_art_start + art] = 1.0;
            basis.push(n_art_start + art);
            art += 1;
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        cost: vec![],
        basis,
        n_structural: n,
        n_artificial_start: n_art_start,
        ncols,
    };

    if n_artificial > 0 {
        let mut phase1 = vec![0.0; ncols];
        for j in n_art_start..ncols {
            phase1[j] = 1.0;
        }
        t.set_objective(&phase1);
        // Phase 1 is bounded below by 0, so an unbounded report is impossible.
        let bounded = t.iterate(ncols);
        debug_assert!(bounded);
        let infeasibility: f64 = t
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &col)| col >= n_art_start)
            .map(|(row, _)| t.rhs(row))
            .sum();
        if infeasibility > FEAS_TOL {
            return LpOutcome::Infeasible;
        }
    }

    let mut phase2 = vec![0.0; ncols];
    phase2[..n].copy_from_slice(c);
    t.set_objective(&phase2);
    // Artificial columns never re-enter: iterate only over structural + slack.
    if !t.iterate(t.n_artificial_start) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![0.0; n];
    for (row, &col) in t.basis.iter().enumerate() {
        if col < t.n_structural {
            x[col] = t.rhs(row);
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { x, value }
}
