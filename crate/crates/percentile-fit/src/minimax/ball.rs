//! Smallest enclosing ball of a point subset, reported as a worst-case fit:
//! the center minimizes the largest squared distance, so `value` is the
//! squared radius. Squared distance to a point is strictly convex, which makes
//! this fit unique for every subset.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg;
use crate::minimax::SubsetFit;
use crate::util::splitmix64;

/// Relative slack on squared-radius containment checks. Keeps the incremental
/// construction from chasing floating-point dust while staying two orders of
/// magnitude below the 1e-9 certification tolerance.
const CONTAIN_REL_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
struct Ball {
    center: Vec<f64>,
    r2: f64,
}

impl Ball {
    fn empty(dim: usize) -> Self {
        Self {
            center: vec![0.0; dim],
            r2: -1.0,
        }
    }

    fn contains(&self, p: &[f64]) -> bool {
        dist2(&self.center, p) <= self.r2 + CONTAIN_REL_TOL * self.r2.max(1.0)
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Ball with every point of `support` on its boundary: the circumcenter
/// restricted to the affine hull of the support.
fn circumball(points: &[&[f64]], support: &[usize]) -> Option<Ball> {
    match support.len() {
        1 => Some(Ball {
            center: points[support[0]].to_vec(),
            r2: 0.0,
        }),
        _ => {
            let base = points[support[0]];
            let spans: Vec<Vec<f64>> = support[1..]
                .iter()
                .map(|&i| {
                    points[i]
                        .iter()
                        .zip(base)
                        .map(|(a, b)| a - b)
                        .collect::<Vec<f64>>()
                })
                .collect();
            let k = spans.len();
            let mut gram = vec![vec![0.0; k]; k];
            let mut rhs = vec![0.0; k];
            for i in 0..k {
                for j in 0..k {
                    gram[i][j] = spans[i].iter().zip(&spans[j]).map(|(a, b)| a * b).sum();
                }
                rhs[i] = 0.5 * gram[i][i];
            }
            let alpha = linalg::solve(gram, rhs)?;
            let mut center = base.to_vec();
            for (a, span) in alpha.iter().zip(&spans) {
                for (c, s) in center.iter_mut().zip(span) {
                    *c += a * s;
                }
            }
            Some(Ball {
                center: center.clone(),
                r2: dist2(&center, base),
            })
        }
    }
}

/// Exact ball of an affinely dependent support set: smallest circumball of
/// any sub-support that still covers the whole support.
fn ball_of_support_subsets(points: &[&[f64]], support: &[usize]) -> Ball {
    let mut best: Option<Ball> = None;
    let n = support.len();
    for mask in 1u32..(1 << n) {
        let chosen: Vec<usize> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| support[i])
            .collect();
        if let Some(ball) = circumball(points, &chosen) {
            if support.iter().all(|&i| ball.contains(points[i])) {
                match &best {
                    Some(b) if b.r2 <= ball.r2 => {}
                    _ => best = Some(ball),
                }
            }
        }
    }
    best.expect("a pair or singleton circumball always exists")
}

fn ball_of_support(points: &[&[f64]], support: &[usize], dim: usize) -> Ball {
    if support.is_empty() {
        return Ball::empty(dim);
    }
    match circumball(points, support) {
        Some(ball) if support.iter().all(|&i| ball.contains(points[i])) => ball,
        _ => ball_of_support_subsets(points, support),
    }
}

/// Welzl's randomized incremental construction with move-to-front reordering.
/// `order[..end]` is scanned; points outside the current ball are promoted to
/// the support and moved to the front so later passes test them early.
fn welzl(
    points: &[&[f64]],
    order: &mut [usize],
    end: usize,
    support: &mut Vec<usize>,
    dim: usize,
) -> Ball {
    let mut ball = ball_of_support(points, support, dim);
    if support.len() == dim + 1 {
        return ball;
    }
    for i in 0..end {
        let p = order[i];
        if !ball.contains(points[p]) {
            support.push(p);
            ball = welzl(points, order, i, support, dim);
            support.pop();
            order[..=i].rotate_right(1);
        }
    }
    ball
}

/// Smallest enclosing ball of the subset, as a worst-case fit.
///
/// The scan order is shuffled with a generator seeded from the subset indices
/// alone, so repeated calls (from any thread) visit points identically and
/// return bit-identical results.
pub fn enclosing_ball_fit(dataset: &Dataset, subset: &[usize]) -> Result<SubsetFit> {
    if dataset.labeled() {
        return Err(Error::LabelsUnexpected {
            family: "sq_distance",
        });
    }
    dataset.check_subset(subset)?;
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    let dim = dataset.feature_dim();

    let points: Vec<&[f64]> = subset.iter().map(|&i| dataset.point(i).feature()).collect();
    let seed = subset
        .iter()
        .fold(splitmix64(subset.len() as u64), |acc, &i| {
            splitmix64(acc ^ (i as u64))
        });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut rng);

    let mut support = Vec::with_capacity(dim + 1);
    let ball = welzl(&points, &mut order, points.len(), &mut support, dim);
    debug_assert!(ball.r2 >= 0.0);

    Ok(SubsetFit::Unique {
        subset,
        theta: ball.center,
        value: ball.r2.max(0.0),
    })
}
