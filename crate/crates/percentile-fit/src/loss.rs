//! Scalar aggregations of a residual vector.
//!
//! The robust objective used throughout this crate keeps the `(O+1)`-th
//! largest residual: the `O` worst residuals are written off as outliers and
//! the fit is judged by the worst of the rest. `quad_loss` and `max_loss` are
//! the two classical aggregations it interpolates between.

use crate::combinations::Combinations;
use crate::error::{Error, Result};

/// Validated residual vector: non-empty, every entry finite.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualVector(Vec<f64>);

impl ResidualVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyResiduals);
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "residual vector",
            });
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Deref for ResidualVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Sum of squares of all residuals.
pub fn quad_loss(z: &[f64]) -> f64 {
    z.iter().map(|v| v * v).sum()
}

/// Largest residual.
pub fn max_loss(z: &[f64]) -> Result<f64> {
    z.iter()
        .copied()
        .max_by(f64::total_cmp)
        .ok_or(Error::EmptyResiduals)
}

/// The `(outliers + 1)`-th largest residual.
///
/// Equivalently: discard the `outliers` largest entries and take the maximum
/// of what remains. `outliers = 0` reduces to `max_loss`. Runs in expected
/// O(len) time via partial selection; no full sort.
pub fn percentile_loss(z: &[f64], outliers: usize) -> Result<f64> {
    if z.is_empty() {
        return Err(Error::EmptyResiduals);
    }
    if outliers >= z.len() {
        return Err(Error::OutlierCountOutOfRange {
            outliers,
            len: z.len(),
        });
    }
    let mut scratch = z.to_vec();
    Ok(percentile_select(&mut scratch, outliers))
}

/// Selection core shared with hot loops that reuse a scratch buffer.
/// `scratch` is reordered in place.
pub(crate) fn percentile_select(scratch: &mut [f64], outliers: usize) -> f64 {
    let pos = scratch.len() - 1 - outliers;
    let (_, pivot, _) = scratch.select_nth_unstable_by(pos, f64::total_cmp);
    *pivot
}

/// The same quantity as [`percentile_loss`], computed by explicit subset
/// enumeration: the minimum over all subsets of size `len - outliers` of the
/// subset maximum.
///
/// This is the reformulation the exact solvers are built on, and it doubles
/// as an independent oracle for `percentile_loss`: the two must agree to the
/// last bit. Cost grows as C(len, outliers); keep `len` small.
pub fn percentile_loss_by_subsets(z: &[f64], outliers: usize) -> Result<f64> {
    if z.is_empty() {
        return Err(Error::EmptyResiduals);
    }
    if outliers >= z.len() {
        return Err(Error::OutlierCountOutOfRange {
            outliers,
            len: z.len(),
        });
    }
    let keep = z.len() - outliers;
    let mut best = f64::INFINITY;
    let mut iter = Combinations::new(z.len(), keep);
    while let Some(subset) = iter.current() {
        let worst = subset
            .iter()
            .map(|&i| z[i])
            .max_by(f64::total_cmp)
            .expect("subset is non-empty");
        if worst < best {
            best = worst;
        }
        iter.advance();
    }
    Ok(best)
}
