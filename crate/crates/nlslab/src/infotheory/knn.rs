//! Kozachenko–Leonenko k-nearest-neighbor differential entropy estimator.
//!
//! For `N` samples in `d` real dimensions with Chebyshev (max-norm)
//! distances, the estimate in nats is
//!
//! ```text
//! ĥ = ψ(N) - ψ(k) + d·ln 2 + (d/N) Σ_i ln r_i
//! ```
//!
//! where `r_i` is the distance from sample `i` to its k-th nearest
//! neighbor (self excluded) and `d·ln 2` is the log-volume of the unit
//! max-norm ball. The standard error comes from splitting the sample into
//! interleaved subsamples and treating their estimates as i.i.d.
//!
//! Exact duplicate points would produce `r_i = 0`; when any are detected,
//! every coordinate is perturbed by a deterministic jitter of magnitude
//! 1e-12 before distances are computed.

use rayon::prelude::*;

use super::{EntropyEstimate, Estimator, EstimatorError};
use crate::grid::Ensemble;

/// Flat row-major sample matrix.
#[derive(Debug, Clone)]
pub struct RealSamples {
    dims: usize,
    data: Vec<f64>,
}

impl RealSamples {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, EstimatorError> {
        let dims = rows.first().map(|r| r.len()).unwrap_or(0);
        if dims == 0 {
            return Err(EstimatorError::EmptyInput);
        }
        let mut data = Vec::with_capacity(rows.len() * dims);
        for r in rows {
            if r.len() != dims {
                return Err(EstimatorError::DimensionMismatch {
                    got: r.len(),
                    expected: dims,
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { dims, data })
    }

    /// Complex ensemble as `2n` real coordinates per member.
    pub fn from_ensemble(e: &Ensemble) -> Self {
        let dims = 2 * e.grid().n();
        let mut data = Vec::with_capacity(e.len() * dims);
        for m in e.members() {
            for c in m.coeffs() {
                data.push(c.re);
                data.push(c.im);
            }
        }
        Self { dims, data }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dims..(i + 1) * self.dims]
    }

    fn subset(&self, indices: impl Iterator<Item = usize>) -> Self {
        let mut data = Vec::new();
        for i in indices {
            data.extend_from_slice(self.row(i));
        }
        Self {
            dims: self.dims,
            data,
        }
    }
}

/// Digamma at integer arguments: exact harmonic form for small `m`,
/// asymptotic series beyond.
pub(crate) fn digamma_int(m: usize) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if m == 0 {
        return f64::NEG_INFINITY;
    }
    if m < 64 {
        let mut s = -EULER_GAMMA;
        for i in 1..m {
            s += 1.0 / i as f64;
        }
        s
    } else {
        let x = m as f64;
        let x2 = 1.0 / (x * x);
        x.ln() - 0.5 / x - x2 * (1.0 / 12.0 - x2 * (1.0 / 120.0 - x2 / 252.0))
    }
}

fn chebyshev(a: &[f64], b: &[f64], cutoff: f64) -> f64 {
    let mut m = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = (x - y).abs();
        if d > m {
            m = d;
            if m >= cutoff {
                return m;
            }
        }
    }
    m
}

struct KdNode {
    axis: usize,
    split: f64,
    left: usize,
    right: usize,
    /// Leaf payload: range into `order`.
    start: usize,
    end: usize,
}

struct KdTree<'a> {
    samples: &'a RealSamples,
    nodes: Vec<KdNode>,
    order: Vec<u32>,
}

const LEAF_SIZE: usize = 24;

impl<'a> KdTree<'a> {
    fn build(samples: &'a RealSamples) -> Self {
        let mut order: Vec<u32> = (0..samples.len() as u32).collect();
        let mut nodes = Vec::new();
        let n = order.len();
        Self::split_range(samples, &mut order, &mut nodes, 0, n);
        Self {
            samples,
            nodes,
            order,
        }
    }

    fn split_range(
        samples: &RealSamples,
        order: &mut [u32],
        nodes: &mut Vec<KdNode>,
        start: usize,
        end: usize,
    ) -> usize {
        let id = nodes.len();
        nodes.push(KdNode {
            axis: 0,
            split: 0.0,
            left: usize::MAX,
            right: usize::MAX,
            start,
            end,
        });
        if end - start <= LEAF_SIZE {
            return id;
        }
        // Split on the axis with the widest spread over this range.
        let dims = samples.dims();
        let mut best_axis = 0;
        let mut best_spread = -1.0;
        for axis in 0..dims {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &i in &order[start..end] {
                let v = samples.row(i as usize)[axis];
                lo = lo.min(v);
                hi = hi.max(v);
            }
            if hi - lo > best_spread {
                best_spread = hi - lo;
                best_axis = axis;
            }
        }
        let mid = (start + end) / 2;
        order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
            samples.row(a as usize)[best_axis]
                .total_cmp(&samples.row(b as usize)[best_axis])
        });
        let split = samples.row(order[mid] as usize)[best_axis];
        let left = Self::split_range(samples, order, nodes, start, mid);
        let right = Self::split_range(samples, order, nodes, mid, end);
        let node = &mut nodes[id];
        node.axis = best_axis;
        node.split = split;
        node.left = left;
        node.right = right;
        id
    }

    /// Distance to the k-th nearest neighbor of `order`-member `query`,
    /// excluding the query point itself.
    fn kth_distance(&self, query: usize, k: usize) -> f64 {
        let q = self.samples.row(query);
        // Bounded max-"heap" over the k best distances; k ≤ 20 so a linear
        // update is faster than a real heap.
        let mut best = vec![f64::INFINITY; k];
        let mut worst = f64::INFINITY;
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            if node.left == usize::MAX {
                for &i in &self.order[node.start..node.end] {
                    let i = i as usize;
                    if i == query {
                        continue;
                    }
                    let d = chebyshev(q, self.samples.row(i), worst);
                    if d < worst {
                        // Replace the current maximum.
                        let mut max_at = 0;
                        for (j, b) in best.iter().enumerate() {
                            if *b > best[max_at] {
                                max_at = j;
                            }
                        }
                        best[max_at] = d;
                        worst = best.iter().cloned().fold(0.0, f64::max);
                    }
                }
            } else {
                let delta = q[node.axis] - node.split;
                let (near, far) = if delta <= 0.0 {
                    (node.left, node.right)
                } else {
                    (node.right, node.left)
                };
                if delta.abs() < worst {
                    stack.push(far);
                }
                stack.push(near);
            }
        }
        worst
    }
}

fn hash2(a: u64, b: u64) -> u64 {
    let mut x = a
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(b)
        .wrapping_add(0x2545_F491_4F6C_DD1D);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn has_duplicates(samples: &RealSamples) -> bool {
    let mut idx: Vec<u32> = (0..samples.len() as u32).collect();
    idx.sort_unstable_by(|&a, &b| {
        let (ra, rb) = (samples.row(a as usize), samples.row(b as usize));
        ra.iter()
            .zip(rb)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    idx.windows(2)
        .any(|w| samples.row(w[0] as usize) == samples.row(w[1] as usize))
}

fn jitter(samples: &RealSamples) -> RealSamples {
    let dims = samples.dims();
    let data = samples
        .data
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let u = hash2(i as u64 / dims as u64, (i % dims) as u64) as f64
                / u64::MAX as f64;
            v + (2.0 * u - 1.0) * 1e-12
        })
        .collect();
    RealSamples { dims, data }
}

fn kl_point_estimate(samples: &RealSamples, k: usize) -> f64 {
    let n = samples.len();
    let d = samples.dims() as f64;
    let tree = KdTree::build(samples);
    let log_sum: f64 = (0..n)
        .into_par_iter()
        .map(|i| tree.kth_distance(i, k).max(1e-300).ln())
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    digamma_int(n) - digamma_int(k) + d * std::f64::consts::LN_2 + d / n as f64 * log_sum
}

/// Number of interleaved splits used for the stderr estimate.
fn split_count(n: usize) -> usize {
    if n >= 800 {
        8
    } else {
        4
    }
}

/// Kozachenko–Leonenko estimate over raw real-vector samples.
pub fn knn_entropy(samples: &RealSamples, k: usize) -> Result<EntropyEstimate, EstimatorError> {
    let n = samples.len();
    if n < 100 {
        return Err(EstimatorError::TooFewSamples { got: n, need: 100 });
    }
    if !(3..=20).contains(&k) {
        return Err(EstimatorError::InvalidNeighborCount(k));
    }

    // Degenerate (zero-variance) input: every sample identical.
    let first = samples.row(0);
    if (1..n).all(|i| samples.row(i) == first) {
        return Ok(EntropyEstimate {
            value: f64::NEG_INFINITY,
            stderr: 0.0,
            estimator: Estimator::Knn,
            sample_count: n,
            real_dims: samples.dims(),
            degenerate: true,
        });
    }

    let jittered;
    let samples = if has_duplicates(samples) {
        jittered = jitter(samples);
        &jittered
    } else {
        samples
    };

    let value = kl_point_estimate(samples, k);

    let s = split_count(n);
    let split_values: Vec<f64> = (0..s)
        .map(|j| {
            let sub = samples.subset((j..n).step_by(s));
            kl_point_estimate(&sub, k)
        })
        .collect();
    let mean: f64 = split_values.iter().sum::<f64>() / s as f64;
    let var: f64 =
        split_values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (s - 1) as f64;
    let stderr = (var / s as f64).sqrt();

    Ok(EntropyEstimate {
        value,
        stderr,
        estimator: Estimator::Knn,
        sample_count: n,
        real_dims: samples.dims(),
        degenerate: false,
    })
}

/// Convenience adapter: entropy of a complex ensemble over 2n real dims.
pub fn ensemble_entropy(e: &Ensemble, k: usize) -> Result<EntropyEstimate, EstimatorError> {
    knn_entropy(&RealSamples::from_ensemble(e), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_distr::StandardNormal;

    use crate::sampling::NoiseStream;

    #[test]
    fn digamma_matches_reference_values() {
        // ψ(1) = -γ, ψ(2) = 1-γ, and the asymptotic branch must join the
        // harmonic branch smoothly.
        assert!((digamma_int(1) + 0.5772156649015329).abs() < 1e-15);
        assert!((digamma_int(2) - (1.0 - 0.5772156649015329)).abs() < 1e-15);
        let exact_63 = digamma_int(63);
        let asym_64 = digamma_int(64);
        assert!((asym_64 - (exact_63 + 1.0 / 63.0)).abs() < 1e-12);
        assert!((digamma_int(100_000) - (100_000f64).ln()).abs() < 1e-5);
    }

    #[test]
    fn uniform_entropy_is_near_zero() {
        let mut rng = NoiseStream::new(31, 0).rng();
        let rows: Vec<Vec<f64>> = (0..100_000).map(|_| vec![rng.gen::<f64>()]).collect();
        let est = knn_entropy(&RealSamples::from_rows(&rows).unwrap(), 5).unwrap();
        assert!(est.value.abs() < 0.02, "h = {} ± {}", est.value, est.stderr);
    }

    #[test]
    fn complex_gaussian_entropy_matches_closed_form() {
        // Scalar circularly symmetric Gaussian of variance 1 over 2 real
        // dims: h = ln(πe) ≈ 2.1447 nats.
        let mut rng = NoiseStream::new(32, 0).rng();
        let s = (0.5f64).sqrt();
        let rows: Vec<Vec<f64>> = (0..100_000)
            .map(|_| {
                vec![
                    s * rng.sample::<f64, _>(StandardNormal),
                    s * rng.sample::<f64, _>(StandardNormal),
                ]
            })
            .collect();
        let est = knn_entropy(&RealSamples::from_rows(&rows).unwrap(), 5).unwrap();
        let expect = (std::f64::consts::PI * std::f64::consts::E).ln();
        assert!(
            (est.value - expect).abs() < 0.02,
            "h = {} vs {expect}",
            est.value
        );
    }

    #[test]
    fn unitary_rotation_leaves_estimate_unchanged() {
        let mut rng = NoiseStream::new(33, 0).rng();
        let rows: Vec<Vec<f64>> = (0..20_000)
            .map(|_| {
                vec![
                    rng.sample::<f64, _>(StandardNormal),
                    2.0 * rng.sample::<f64, _>(StandardNormal),
                ]
            })
            .collect();
        let (c, s) = (0.6f64, 0.8f64); // rotation by atan2(0.8, 0.6)
        let rotated: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| vec![c * r[0] - s * r[1], s * r[0] + c * r[1]])
            .collect();
        let a = knn_entropy(&RealSamples::from_rows(&rows).unwrap(), 5).unwrap();
        let b = knn_entropy(&RealSamples::from_rows(&rotated).unwrap(), 5).unwrap();
        let tol = 2.0 * (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.value - b.value).abs() < tol.max(0.02));
    }

    #[test]
    fn degenerate_input_reports_sentinel() {
        let rows = vec![vec![1.0, 2.0]; 500];
        let est = knn_entropy(&RealSamples::from_rows(&rows).unwrap(), 5).unwrap();
        assert!(est.degenerate);
        assert_eq!(est.value, f64::NEG_INFINITY);
    }

    #[test]
    fn duplicates_are_jittered_not_fatal() {
        let mut rng = NoiseStream::new(34, 0).rng();
        let mut rows: Vec<Vec<f64>> = (0..1000).map(|_| vec![rng.gen::<f64>()]).collect();
        for i in 0..500 {
            rows[999 - i] = rows[i].clone(); // half the set duplicated
        }
        let est = knn_entropy(&RealSamples::from_rows(&rows).unwrap(), 5).unwrap();
        assert!(est.value.is_finite());
    }

    #[test]
    fn preconditions_are_enforced() {
        let rows = vec![vec![0.0]; 50];
        assert!(matches!(
            knn_entropy(&RealSamples::from_rows(&rows).unwrap(), 5),
            Err(EstimatorError::TooFewSamples { .. })
        ));
        let rows = vec![vec![0.0]; 500];
        let s = RealSamples::from_rows(&rows).unwrap();
        assert!(matches!(
            knn_entropy(&s, 2),
            Err(EstimatorError::InvalidNeighborCount(2))
        ));
        assert!(matches!(
            knn_entropy(&s, 21),
            Err(EstimatorError::InvalidNeighborCount(21))
        ));
    }
}
