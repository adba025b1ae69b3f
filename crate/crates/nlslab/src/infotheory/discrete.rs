//! Exact discrete entropy and the sumset entropy inequality.
//!
//! For independent discrete `X` and `Y` with finite supports `A` and `B`,
//! the distribution of `X+Y` is the exact convolution of their pmfs and
//! satisfies `H(X+Y) ≤ H(X) + H(Y)`; on the support side,
//! `|A+B| ≤ |A|·|B|`. Entropies are in bits.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiscreteError {
    #[error("support and probability lists differ in length: {support} vs {probs}")]
    LengthMismatch { support: usize, probs: usize },
    #[error("empty support")]
    EmptySupport,
    #[error("support points differ in dimension")]
    MixedDimensions,
    #[error("duplicate support point")]
    DuplicateSupport,
    #[error("negative or non-finite probability {0}")]
    BadProbability(f64),
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),
}

/// Probability mass function over integer lattice points (dimension 1
/// covers plain integer alphabets).
#[derive(Debug, Clone)]
pub struct Pmf {
    support: Vec<Vec<i64>>,
    probs: Vec<f64>,
    dims: usize,
}

impl Pmf {
    pub fn new(support: Vec<Vec<i64>>, probs: Vec<f64>) -> Result<Self, DiscreteError> {
        if support.len() != probs.len() {
            return Err(DiscreteError::LengthMismatch {
                support: support.len(),
                probs: probs.len(),
            });
        }
        if support.is_empty() {
            return Err(DiscreteError::EmptySupport);
        }
        let dims = support[0].len();
        if dims == 0 || support.iter().any(|p| p.len() != dims) {
            return Err(DiscreteError::MixedDimensions);
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &support {
            if !seen.insert(p.clone()) {
                return Err(DiscreteError::DuplicateSupport);
            }
        }
        let mut total = 0.0;
        for &p in &probs {
            if !(p.is_finite() && p >= 0.0) {
                return Err(DiscreteError::BadProbability(p));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(DiscreteError::NotNormalized(total));
        }
        Ok(Self {
            support,
            probs,
            dims,
        })
    }

    /// Scalar convenience constructor.
    pub fn scalar(support: &[i64], probs: &[f64]) -> Result<Self, DiscreteError> {
        Self::new(support.iter().map(|&v| vec![v]).collect(), probs.to_vec())
    }

    /// Uniform distribution over the given points.
    pub fn uniform(support: Vec<Vec<i64>>) -> Result<Self, DiscreteError> {
        let p = 1.0 / support.len() as f64;
        let probs = vec![p; support.len()];
        Self::new(support, probs)
    }

    pub fn support(&self) -> &[Vec<i64>] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }
}

/// Shannon entropy in bits.
pub fn discrete_entropy(p: &Pmf) -> f64 {
    p.probs
        .iter()
        .map(|&q| if q > 0.0 { -q * q.log2() } else { 0.0 })
        .sum()
}

/// Exact pmf of `X+Y` for independent `X`, `Y`.
pub fn convolve(x: &Pmf, y: &Pmf) -> Result<Pmf, DiscreteError> {
    if x.dims != y.dims {
        return Err(DiscreteError::MixedDimensions);
    }
    let mut acc: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    for (a, &pa) in x.support.iter().zip(&x.probs) {
        for (b, &pb) in y.support.iter().zip(&y.probs) {
            let sum: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
            *acc.entry(sum).or_insert(0.0) += pa * pb;
        }
    }
    let (support, probs): (Vec<_>, Vec<_>) = acc.into_iter().unzip();
    // Convolution of valid pmfs is a valid pmf up to rounding; bypass the
    // sum re-check to avoid spurious 1e-16 failures.
    let dims = x.dims;
    Ok(Pmf {
        support,
        probs,
        dims,
    })
}

#[derive(Debug, Clone)]
pub struct SumsetEntropyReport {
    pub h_x: f64,
    pub h_y: f64,
    pub h_sum: f64,
    /// `H(X+Y) ≤ H(X) + H(Y)` (bits, exact convolution).
    pub entropy_subadditive: bool,
    pub card_x: usize,
    pub card_y: usize,
    pub card_sum: usize,
    /// `|A+B| ≤ |A|·|B|`.
    pub cardinality_subadditive: bool,
}

const ROUNDING_SLACK: f64 = 1e-12;

/// Verify the entropy and cardinality sumset inequalities exactly.
pub fn sumset_entropy_check(x: &Pmf, y: &Pmf) -> Result<SumsetEntropyReport, DiscreteError> {
    let sum = convolve(x, y)?;
    let h_x = discrete_entropy(x);
    let h_y = discrete_entropy(y);
    let h_sum = discrete_entropy(&sum);
    Ok(SumsetEntropyReport {
        h_x,
        h_y,
        h_sum,
        entropy_subadditive: h_sum <= h_x + h_y + ROUNDING_SLACK,
        card_x: x.support_size(),
        card_y: y.support_size(),
        card_sum: sum.support_size(),
        cardinality_subadditive: sum.support_size() <= x.support_size() * y.support_size(),
    })
}

/// Enumerate every pmf on `support` whose probabilities are multiples of
/// `1/grid_steps`, as integer numerators summing to `grid_steps`.
pub fn enumerate_grid_pmfs(support: &[i64], grid_steps: u32) -> Vec<Pmf> {
    fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=total {
            prefix.push(v);
            compositions(total - v, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    compositions(grid_steps, support.len(), &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|nums| {
            let pairs: Vec<(i64, f64)> = support
                .iter()
                .zip(&nums)
                .filter(|(_, &c)| c > 0)
                .map(|(&s, &c)| (s, c as f64 / grid_steps as f64))
                .collect();
            let (sup, probs): (Vec<i64>, Vec<f64>) = pairs.into_iter().unzip();
            Pmf::scalar(&sup, &probs).expect("grid pmf is valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fair_coin_convolution_matches_hand_computation() {
        let x = Pmf::scalar(&[0, 1], &[0.5, 0.5]).unwrap();
        let y = Pmf::scalar(&[0, 1], &[0.5, 0.5]).unwrap();
        let r = sumset_entropy_check(&x, &y).unwrap();
        // Convolution (¼, ½, ¼): H = 1.5 bits ≤ 2 bits.
        assert!((r.h_sum - 1.5).abs() < 1e-12);
        assert!((r.h_x + r.h_y - 2.0).abs() < 1e-12);
        assert!(r.entropy_subadditive);
    }

    #[test]
    fn singletons_give_zero_entropy_equality() {
        let x = Pmf::scalar(&[3], &[1.0]).unwrap();
        let y = Pmf::scalar(&[-7], &[1.0]).unwrap();
        let r = sumset_entropy_check(&x, &y).unwrap();
        assert_eq!(r.h_x, 0.0);
        assert_eq!(r.h_sum, 0.0);
        assert!(r.entropy_subadditive && r.cardinality_subadditive);
        assert_eq!(r.card_sum, 1);
    }

    #[test]
    fn spread_supports_reach_the_cardinality_maximum() {
        let x = Pmf::uniform(vec![vec![0], vec![1], vec![2]]).unwrap();
        let y = Pmf::uniform(vec![vec![0], vec![10]]).unwrap();
        let r = sumset_entropy_check(&x, &y).unwrap();
        assert_eq!(r.card_sum, 6);
        assert_eq!(r.card_x * r.card_y, 6);
    }

    #[test]
    fn invalid_pmfs_are_rejected() {
        assert!(matches!(
            Pmf::scalar(&[0, 1], &[0.7, 0.7]),
            Err(DiscreteError::NotNormalized(_))
        ));
        assert!(matches!(
            Pmf::scalar(&[0, 1], &[-0.5, 1.5]),
            Err(DiscreteError::BadProbability(_))
        ));
        assert!(matches!(
            Pmf::scalar(&[0, 0], &[0.5, 0.5]),
            Err(DiscreteError::DuplicateSupport)
        ));
        assert!(matches!(
            Pmf::new(vec![], vec![]),
            Err(DiscreteError::EmptySupport)
        ));
    }

    #[test]
    fn small_grid_enumeration_satisfies_both_inequalities() {
        // Supports ⊂ {0,1,2} on a 0.2-probability grid: quick exhaustive
        // sweep; the acceptance suite runs the full {0..4}/0.1 version.
        let pmfs = enumerate_grid_pmfs(&[0, 1, 2], 5);
        assert_eq!(pmfs.len(), 21); // C(7,2) compositions of 5 into 3 parts
        for x in &pmfs {
            for y in &pmfs {
                let r = sumset_entropy_check(x, y).unwrap();
                assert!(r.entropy_subadditive, "H violated for {x:?}, {y:?}");
                assert!(r.cardinality_subadditive);
            }
        }
    }
}
