//! Classical ROC curve, AUC and Somers' D for a binary outcome.

use crate::error::{Error, Result};
use crate::ratio::ExactRatio;
use crate::sample::{ascending_order, canonical, check_finite, s_twice};

/// One ROC vertex as exact counts of instances scoring above the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RocVertex {
    pub false_positives: u64,
    pub true_positives: u64,
}

/// Piecewise-linear ROC curve running from (0,0) to (1,1).
///
/// Vertex `k < len - 1` is the classifier "positive iff x > thresholds[k]",
/// thresholds descending; the last vertex is the anchor below every feature
/// value and always sits at (1,1).
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    vertices: Vec<RocVertex>,
    thresholds: Vec<f64>,
    n_pos: u64,
    n_neg: u64,
    twice_area: u128,
}

impl RocCurve {
    pub(crate) fn from_parts(vertices: Vec<RocVertex>, thresholds: Vec<f64>, n_pos: u64, n_neg: u64) -> Self {
        debug_assert_eq!(vertices.len(), thresholds.len() + 1);
        let twice_area = twice_trapezoid(&vertices);
        Self { vertices, thresholds, n_pos, n_neg, twice_area }
    }

    pub fn vertices(&self) -> &[RocVertex] {
        &self.vertices
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn n_pos(&self) -> u64 {
        self.n_pos
    }

    pub fn n_neg(&self) -> u64 {
        self.n_neg
    }

    pub fn fpr(&self, k: usize) -> f64 {
        self.vertices[k].false_positives as f64 / self.n_neg as f64
    }

    pub fn tpr(&self, k: usize) -> f64 {
        self.vertices[k].true_positives as f64 / self.n_pos as f64
    }

    /// `(false positive rate, true positive rate)` pairs.
    pub fn points(&self) -> Vec<(f64, f64)> {
        (0..self.vertices.len()).map(|k| (self.fpr(k), self.tpr(k))).collect()
    }

    pub fn auc(&self) -> f64 {
        self.auc_exact().to_f64()
    }

    /// Trapezoidal area over the integer vertex counts.
    pub fn auc_exact(&self) -> ExactRatio {
        ExactRatio::new(self.twice_area as i128, 2 * self.n_pos as i128 * self.n_neg as i128)
    }
}

/// `sum (FP_k - FP_{k-1}) * (TP_k + TP_{k-1})`, i.e. twice the area in count units.
pub(crate) fn twice_trapezoid(vertices: &[RocVertex]) -> u128 {
    vertices
        .windows(2)
        .map(|w| {
            let dx = (w[1].false_positives - w[0].false_positives) as u128;
            dx * (w[0].true_positives + w[1].true_positives) as u128
        })
        .sum()
}

fn check_binary(features: &[f64], labels: &[bool]) -> Result<(u64, u64)> {
    if features.len() != labels.len() {
        return Err(Error::LengthMismatch { features: features.len(), outcomes: labels.len() });
    }
    check_finite(features)?;
    let n_pos = labels.iter().filter(|&&l| l).count() as u64;
    let n_neg = labels.len() as u64 - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::SingleClassOutcome);
    }
    Ok((n_pos, n_neg))
}

/// ROC curve of `features` as a predictor of `labels` (`true` = positive).
pub fn roc_curve(features: &[f64], labels: &[bool]) -> Result<RocCurve> {
    let (n_pos, n_neg) = check_binary(features, labels)?;
    let order = ascending_order(features);
    let mut vertices = vec![RocVertex { false_positives: 0, true_positives: 0 }];
    let mut thresholds = Vec::new();
    let (mut fp, mut tp) = (0u64, 0u64);
    let mut end = order.len();
    while end > 0 {
        let v = canonical(features[order[end - 1] as usize]);
        thresholds.push(v);
        let mut start = end - 1;
        while start > 0 && canonical(features[order[start - 1] as usize]) == v {
            start -= 1;
        }
        for &i in &order[start..end] {
            if labels[i as usize] {
                tp += 1;
            } else {
                fp += 1;
            }
        }
        vertices.push(RocVertex { false_positives: fp, true_positives: tp });
        end = start;
    }
    Ok(RocCurve::from_parts(vertices, thresholds, n_pos, n_neg))
}

/// AUC as the mean of `s(x_neg, x_pos)` over all cross-class pairs. Quadratic.
pub fn auc_pairwise(features: &[f64], labels: &[bool]) -> Result<f64> {
    auc_pairwise_exact(features, labels).map(|r| r.to_f64())
}

pub fn auc_pairwise_exact(features: &[f64], labels: &[bool]) -> Result<ExactRatio> {
    let (n_pos, n_neg) = check_binary(features, labels)?;
    let pos: Vec<f64> = features.iter().zip(labels).filter(|(_, &l)| l).map(|(&x, _)| x).collect();
    let neg: Vec<f64> = features.iter().zip(labels).filter(|(_, &l)| !l).map(|(&x, _)| x).collect();
    let mut twice: u128 = 0;
    for &a in &neg {
        for &b in &pos {
            twice += s_twice(a, b) as u128;
        }
    }
    Ok(ExactRatio::new(twice as i128, 2 * (n_pos * n_neg) as i128))
}

/// Cross-class pair counts: concordant, discordant, and tied in the feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    pub concordant: u64,
    pub discordant: u64,
    pub tied: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.concordant + self.discordant + self.tied
    }
}

pub fn pair_counts(features: &[f64], labels: &[bool]) -> Result<PairCounts> {
    let (n_pos, n_neg) = check_binary(features, labels)?;
    let order = ascending_order(features);
    let (mut concordant, mut tied, mut neg_below) = (0u64, 0u64, 0u64);
    let mut start = 0;
    while start < order.len() {
        let v = canonical(features[order[start] as usize]);
        let mut end = start + 1;
        while end < order.len() && canonical(features[order[end] as usize]) == v {
            end += 1;
        }
        let pos_here = order[start..end].iter().filter(|&&i| labels[i as usize]).count() as u64;
        let neg_here = (end - start) as u64 - pos_here;
        concordant += pos_here * neg_below;
        tied += pos_here * neg_here;
        neg_below += neg_here;
        start = end;
    }
    let discordant = n_pos * n_neg - concordant - tied;
    Ok(PairCounts { concordant, discordant, tied })
}

/// Somers' D = (concordant - discordant) / (n_0 n_1).
pub fn somers_d(features: &[f64], labels: &[bool]) -> Result<f64> {
    somers_d_exact(features, labels).map(|r| r.to_f64())
}

pub fn somers_d_exact(features: &[f64], labels: &[bool]) -> Result<ExactRatio> {
    let c = pair_counts(features, labels)?;
    Ok(ExactRatio::new(c.concordant as i128 - c.discordant as i128, c.total() as i128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(y: &[u8]) -> Vec<bool> {
        y.iter().map(|&v| v == 1).collect()
    }

    #[test]
    fn three_of_four_pairs() {
        let x = [0.1, 0.4, 0.35, 0.8];
        let y = labels(&[0, 0, 1, 1]);
        assert_eq!(roc_curve(&x, &y).unwrap().auc(), 0.75);
        assert_eq!(auc_pairwise(&x, &y).unwrap(), 0.75);
        assert_eq!(somers_d(&x, &y).unwrap(), 0.5);
        assert_eq!(pair_counts(&x, &y).unwrap(), PairCounts { concordant: 3, discordant: 1, tied: 0 });
    }

    #[test]
    fn perfect_feature_vertices() {
        let c = roc_curve(&[1.0, 2.0, 3.0, 4.0], &labels(&[0, 0, 1, 1])).unwrap();
        assert_eq!(c.points(), vec![(0.0, 0.0), (0.0, 0.5), (0.0, 1.0), (0.5, 1.0), (1.0, 1.0)]);
        assert_eq!(c.thresholds(), &[4.0, 3.0, 2.0, 1.0]);
        assert_eq!(c.auc(), 1.0);
        assert_eq!(somers_d(&[1.0, 2.0, 3.0, 4.0], &labels(&[0, 0, 1, 1])).unwrap(), 1.0);
        assert_eq!(auc_pairwise(&[4.0, 3.0, 2.0, 1.0], &labels(&[0, 0, 1, 1])).unwrap(), 0.0);
    }

    #[test]
    fn constant_feature_is_diagonal() {
        let x = [2.0; 4];
        let y = labels(&[0, 1, 0, 1]);
        let c = roc_curve(&x, &y).unwrap();
        assert_eq!(c.points(), vec![(0.0, 0.0), (1.0, 1.0)]);
        assert_eq!(c.auc(), 0.5);
        assert_eq!(somers_d(&x, &y).unwrap(), 0.0);
    }

    #[test]
    fn single_class_is_rejected() {
        assert_eq!(roc_curve(&[1.0, 2.0], &[true, true]), Err(Error::SingleClassOutcome));
        assert_eq!(auc_pairwise(&[1.0, 2.0], &[false, false]), Err(Error::SingleClassOutcome));
        assert_eq!(somers_d(&[1.0, 2.0], &[false, false]), Err(Error::SingleClassOutcome));
        assert_eq!(roc_curve(&[1.0, f64::NAN], &[true, false]), Err(Error::NonFiniteValue(2)));
    }

    fn binary_data() -> impl Strategy<Value = (Vec<f64>, Vec<bool>)> {
        (2usize..80).prop_flat_map(|n| {
            (prop::collection::vec(-6i32..6, n), prop::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(x, mut y)| {
            y[0] = true;
            y[1] = false;
            (x.into_iter().map(|v| f64::from(v) * 0.5).collect(), y)
        })
    }

    proptest! {
        #[test]
        fn curve_matches_pairwise_oracle((x, y) in binary_data()) {
            let c = roc_curve(&x, &y).unwrap();
            let oracle = auc_pairwise_exact(&x, &y).unwrap();
            prop_assert_eq!(c.auc_exact(), oracle);
            prop_assert!((c.auc() - oracle.to_f64()).abs() <= 1e-12);
            // AUC = (D + 1) / 2 exactly
            let d = somers_d_exact(&x, &y).unwrap();
            prop_assert_eq!(
                ExactRatio::new(d.numerator + d.denominator, 2 * d.denominator),
                oracle
            );
        }

        #[test]
        fn curve_shape((x, y) in binary_data()) {
            let c = roc_curve(&x, &y).unwrap();
            let v = c.vertices();
            prop_assert_eq!(v[0], RocVertex { false_positives: 0, true_positives: 0 });
            prop_assert_eq!(*v.last().unwrap(), RocVertex { false_positives: c.n_neg(), true_positives: c.n_pos() });
            for w in v.windows(2) {
                prop_assert!(w[0].false_positives <= w[1].false_positives);
                prop_assert!(w[0].true_positives <= w[1].true_positives);
            }
            let mut uniq = x.clone();
            uniq.sort_by(f64::total_cmp);
            uniq.dedup();
            prop_assert!(v.len() <= uniq.len() + 1);
        }

        #[test]
        fn monotone_invariance((x, y) in binary_data()) {
            let a = roc_curve(&x, &y).unwrap();
            let xt: Vec<f64> = x.iter().map(|&v| (v * 0.7).exp() + 3.0).collect();
            let b = roc_curve(&xt, &y).unwrap();
            prop_assert_eq!(a.vertices(), b.vertices());
            prop_assert_eq!(a.auc().to_bits(), b.auc().to_bits());
        }
    }
}
