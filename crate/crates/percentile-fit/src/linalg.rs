//! Minimal dense linear algebra for the tiny systems the fits produce.
//! Matrices here are at most (d+1) x (d+1) with d the parameter count.

/// Relative pivot threshold below which a matrix is treated as rank-deficient.
const PIVOT_REL_TOL: f64 = 1e-11;

fn max_abs(rows: &[Vec<f64>]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below the relative threshold.
pub(crate) fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), n);
    let scale = max_abs(&a).max(1e-300);
    let tol = scale * PIVOT_REL_TOL;

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty pivot range");
        if a[pivot_row][col].abs() <= tol {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }

    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// For a `d x (d+1)` matrix of full row rank, returns a non-zero vector in its
/// null space. Returns `None` when the rank is below `d`, in which case the
/// null space is not one-dimensional and the caller treats the configuration
/// as degenerate.
pub(crate) fn null_vector(a: &[Vec<f64>]) -> Option<Vec<f64>> {
    let rows = a.len();
    let cols = rows + 1;
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let scale = max_abs(a);
    if scale == 0.0 {
        return None;
    }
    let tol = scale * PIVOT_REL_TOL;

    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut pivot_cols = Vec::with_capacity(rows);
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot_row = (r..rows)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("non-empty pivot range");
        if m[pivot_row][col].abs() <= tol {
            continue;
        }
        m.swap(r, pivot_row);
        let inv = 1.0 / m[r][col];
        for k in col..cols {
            m[r][k] *= inv;
        }
        for row in 0..rows {
            if row != r {
                let factor = m[row][col];
                if factor != 0.0 {
                    for k in col..cols {
                        m[row][k] -= factor * m[r][k];
                    }
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }

    if r < rows {
        return None;
    }
    let free_col = (0..cols)
        .find(|c| !pivot_cols.contains(c))
        .expect("exactly one free column at full row rank");
    let mut lambda = vec![0.0; cols];
    lambda[free_col] = 1.0;
    for (row, &col) in pivot_cols.iter().enumerate() {
        lambda[col] = -m[row][free_col];
    }
    Some(lambda)
}
