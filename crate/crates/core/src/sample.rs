//! Validated paired data and the rank/class machinery shared by every metric.
//!
//! Ties are detected by exact equality of finite doubles. Negative zero is
//! folded into positive zero on the way in so that equality, sorting and any
//! strictly increasing transform agree on what a tie is.

use crate::error::{Error, Result};
use std::cmp::Ordering;

#[inline]
pub(crate) fn canonical(x: f64) -> f64 {
    // -0.0 + 0.0 == +0.0
    x + 0.0
}

#[inline]
pub(crate) fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.total_cmp(&b)
}

pub(crate) fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFiniteValue(i + 1)),
        None => Ok(()),
    }
}

/// Integer key whose unsigned order is the numeric order of `canonical(x)`.
#[inline]
pub(crate) fn order_key(x: f64) -> u64 {
    let bits = canonical(x).to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

/// `(order_key, index)` pairs sorted ascending; equal values keep input order.
pub(crate) fn sorted_keys(values: &[f64]) -> Vec<(u64, u32)> {
    let mut keyed: Vec<(u64, u32)> = values.iter().enumerate().map(|(i, &v)| (order_key(v), i as u32)).collect();
    sort_by_order_key(&mut keyed);
    keyed
}

/// Sorts pairs ascending; a no-op when the keys are already in order.
/// Pairs built in index order therefore keep input order among equal keys.
pub(crate) fn sort_by_order_key(keyed: &mut [(u64, u32)]) {
    if keyed.windows(2).any(|w| w[0].0 > w[1].0) {
        keyed.sort_unstable();
    }
}

/// Indices of `values` in ascending order; equal values keep input order.
pub(crate) fn ascending_order(values: &[f64]) -> Vec<u32> {
    sorted_keys(values).into_iter().map(|(_, i)| i).collect()
}


/// Feature/outcome pairs `(x_i, y_i)`, all finite, with at least two distinct outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    features: Vec<f64>,
    outcomes: Vec<f64>,
}

impl PairedSample {
    pub fn new(features: Vec<f64>, outcomes: Vec<f64>) -> Result<Self> {
        if features.len() != outcomes.len() {
            return Err(Error::LengthMismatch { features: features.len(), outcomes: outcomes.len() });
        }
        let n = features.len();
        if n < 2 {
            return Err(Error::TooFewInstances(n));
        }
        for i in 0..n {
            if !features[i].is_finite() || !outcomes[i].is_finite() {
                return Err(Error::NonFiniteValue(i + 1));
            }
        }
        let features: Vec<f64> = features.into_iter().map(canonical).collect();
        let outcomes: Vec<f64> = outcomes.into_iter().map(canonical).collect();
        let first = outcomes[0];
        if outcomes.iter().all(|&y| y == first) {
            return Err(Error::DegenerateOutcomes);
        }
        Ok(Self { features, outcomes })
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn outcomes(&self) -> &[f64] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    /// The same sample with features and outcomes swapped.
    pub fn transposed(&self) -> Result<Self> {
        Self::new(self.outcomes.clone(), self.features.clone())
    }
}

/// Validates a pair of sequences into a [`PairedSample`].
pub fn validate(features: &[f64], outcomes: &[f64]) -> Result<PairedSample> {
    PairedSample::new(features.to_vec(), outcomes.to_vec())
}

/// Unique outcome values `z_1 < ... < z_m`, their counts, and each instance's class.
///
/// Class indices are 1-based, so `class_of()[i] == j` means `y_i == z_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDecomposition {
    unique_outcomes: Vec<f64>,
    class_counts: Vec<u64>,
    class_of: Vec<u32>,
}

impl ClassDecomposition {
    pub(crate) fn from_values(values: &[f64]) -> Self {
        let keyed = sorted_keys(values);
        let mut unique_outcomes = Vec::new();
        let mut class_counts: Vec<u64> = Vec::new();
        let mut class_of = vec![0u32; values.len()];
        let mut previous = None;
        for &(key, i) in &keyed {
            if previous != Some(key) {
                previous = Some(key);
                unique_outcomes.push(canonical(values[i as usize]));
                class_counts.push(0);
            }
            *class_counts.last_mut().unwrap() += 1;
            class_of[i as usize] = unique_outcomes.len() as u32;
        }
        Self { unique_outcomes, class_counts, class_of }
    }

    pub fn unique_outcomes(&self) -> &[f64] {
        &self.unique_outcomes
    }

    pub fn class_counts(&self) -> &[u64] {
        &self.class_counts
    }

    pub fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    /// Number of classes `m`.
    pub fn m(&self) -> usize {
        self.unique_outcomes.len()
    }

    pub fn n(&self) -> u64 {
        self.class_of.len() as u64
    }
}

/// Splits the outcomes of a sample into classes.
pub fn decompose(sample: &PairedSample) -> ClassDecomposition {
    ClassDecomposition::from_values(sample.outcomes())
}

/// A run of `multiplicity >= 2` equal values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TieGroup {
    pub value: f64,
    pub multiplicity: u64,
}

/// Mid ranks of a sequence, stored doubled so they are exact integers.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    twice_mid_ranks: Vec<u64>,
    tie_groups: Vec<TieGroup>,
}

impl RankVector {
    /// `2 * mrk(x_i)` for each position.
    pub fn twice_mid_ranks(&self) -> &[u64] {
        &self.twice_mid_ranks
    }

    pub fn mid_rank(&self, i: usize) -> f64 {
        self.twice_mid_ranks[i] as f64 / 2.0
    }

    pub fn mid_ranks(&self) -> Vec<f64> {
        self.twice_mid_ranks.iter().map(|&r| r as f64 / 2.0).collect()
    }

    pub fn tie_groups(&self) -> &[TieGroup] {
        &self.tie_groups
    }

    /// Number of tie groups `p`.
    pub fn tie_group_count(&self) -> usize {
        self.tie_groups.len()
    }

    pub fn len(&self) -> usize {
        self.twice_mid_ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twice_mid_ranks.is_empty()
    }
}

/// Mid ranks: tied values share the average of the integer ranks they occupy.
pub fn mid_rank(values: &[f64]) -> Result<RankVector> {
    check_finite(values)?;
    Ok(mid_rank_unchecked(values))
}

pub(crate) fn mid_rank_unchecked(values: &[f64]) -> RankVector {
    let keyed = sorted_keys(values);
    let n = keyed.len();
    let mut twice_mid_ranks = vec![0u64; n];
    let mut tie_groups = Vec::new();
    let mut start = 0usize;
    while start < n {
        let key = keyed[start].0;
        let mut end = start + 1;
        while end < n && keyed[end].0 == key {
            end += 1;
        }
        let twice = (start + 1 + end) as u64;
        for &(_, i) in &keyed[start..end] {
            twice_mid_ranks[i as usize] = twice;
        }
        if end - start >= 2 {
            let value = canonical(values[keyed[start].1 as usize]);
            tie_groups.push(TieGroup { value, multiplicity: (end - start) as u64 });
        }
        start = end;
    }
    RankVector { twice_mid_ranks, tie_groups }
}

pub(crate) fn mid_rank_from_order(values: &[f64], order: &[u32]) -> RankVector {
    let n = values.len();
    let mut twice_mid_ranks = vec![0u64; n];
    let mut tie_groups = Vec::new();
    let mut start = 0usize;
    while start < n {
        let v = canonical(values[order[start] as usize]);
        let mut end = start + 1;
        while end < n && canonical(values[order[end] as usize]) == v {
            end += 1;
        }
        // positions start+1 ..= end share (start + 1 + end) / 2
        let twice = (start + 1 + end) as u64;
        for &i in &order[start..end] {
            twice_mid_ranks[i as usize] = twice;
        }
        let multiplicity = (end - start) as u64;
        if multiplicity >= 2 {
            tie_groups.push(TieGroup { value: v, multiplicity });
        }
        start = end;
    }
    RankVector { twice_mid_ranks, tie_groups }
}

/// `s(x, x')`: 1 if `x < x'`, ½ on a tie, 0 otherwise.
pub fn s_function(x: f64, x_prime: f64) -> f64 {
    s_twice(x, x_prime) as f64 / 2.0
}

/// `2 * s(x, x')`, exact.
#[inline]
pub(crate) fn s_twice(x: f64, x_prime: f64) -> u8 {
    match cmp_f64(canonical(x), canonical(x_prime)) {
        Ordering::Less => 2,
        Ordering::Equal => 1,
        Ordering::Greater => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validate_accepts_minimal_input() {
        let s = validate(&[1.0, 2.0], &[0.0, 1.0]).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn validate_errors() {
        assert_eq!(validate(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]), Err(Error::DegenerateOutcomes));
        assert_eq!(validate(&[1.0, f64::NAN], &[0.0, 1.0]), Err(Error::NonFiniteValue(2)));
        assert_eq!(validate(&[1.0], &[0.0]), Err(Error::TooFewInstances(1)));
        assert_eq!(
            validate(&[1.0, 2.0], &[0.0]),
            Err(Error::LengthMismatch { features: 2, outcomes: 1 })
        );
        assert_eq!(validate(&[1.0, 2.0], &[0.0, f64::INFINITY]), Err(Error::NonFiniteValue(2)));
    }

    #[test]
    fn decompose_examples() {
        let s = validate(&[0.0; 4], &[3.0, 1.0, 3.0, 2.0]).unwrap();
        let d = decompose(&s);
        assert_eq!(d.unique_outcomes(), &[1.0, 2.0, 3.0]);
        assert_eq!(d.class_counts(), &[1, 1, 2]);
        assert_eq!(d.class_of(), &[3, 1, 3, 2]);

        let d = decompose(&validate(&[0.0, 0.0], &[0.0, 1.0]).unwrap());
        assert_eq!(d.m(), 2);
        assert_eq!(d.class_counts(), &[1, 1]);

        let y = [2.0, 2.0, 2.0, 7.0];
        let d = decompose(&validate(&[0.0; 4], &y).unwrap());
        assert_eq!(d.unique_outcomes(), &[2.0, 7.0]);
        // brute-force count of equal values
        let counts: Vec<u64> = d
            .unique_outcomes()
            .iter()
            .map(|z| y.iter().filter(|&&v| v == *z).count() as u64)
            .collect();
        assert_eq!(d.class_counts(), counts.as_slice());
        assert_eq!(d.class_counts(), &[3, 1]);
    }

    #[test]
    fn negative_zero_ties_with_zero() {
        let d = decompose(&validate(&[0.0; 3], &[-0.0, 0.0, 1.0]).unwrap());
        assert_eq!(d.m(), 2);
        let r = mid_rank(&[0.0, -0.0]).unwrap();
        assert_eq!(r.mid_ranks(), vec![1.5, 1.5]);
    }

    #[test]
    fn mid_rank_examples() {
        assert_eq!(mid_rank(&[10.0, 20.0, 30.0]).unwrap().mid_ranks(), vec![1.0, 2.0, 3.0]);
        assert_eq!(mid_rank(&[5.0, 5.0, 1.0]).unwrap().mid_ranks(), vec![2.5, 2.5, 1.0]);
        // positions 3..=7 tied share mid rank 5
        let v = [4.0, 1.0, 4.0, 4.0, 0.0, 4.0, 4.0, 9.0];
        let r = mid_rank(&v).unwrap();
        for (i, &x) in v.iter().enumerate() {
            if x == 4.0 {
                assert_eq!(r.mid_rank(i), 5.0);
            }
        }
        assert_eq!(r.tie_groups(), &[TieGroup { value: 4.0, multiplicity: 5 }]);
        assert_eq!(mid_rank(&[1.0, f64::NAN]), Err(Error::NonFiniteValue(2)));
    }

    #[test]
    fn s_function_values() {
        assert_eq!(s_function(1.0, 2.0), 1.0);
        assert_eq!(s_function(3.0, 3.0), 0.5);
        assert_eq!(s_function(2.0, 1.0), 0.0);
    }

    fn tied_values() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-5i32..5, 1..60).prop_map(|v| v.into_iter().map(f64::from).collect())
    }

    proptest! {
        #[test]
        fn rank_sum_is_exact(v in tied_values()) {
            let r = mid_rank(&v).unwrap();
            let n = v.len() as u64;
            prop_assert_eq!(r.twice_mid_ranks().iter().sum::<u64>(), n * (n + 1));
        }

        #[test]
        fn s_is_antisymmetric_and_rank_invariant(v in tied_values(), i in 0usize..60, j in 0usize..60) {
            let (i, j) = (i % v.len(), j % v.len());
            prop_assert_eq!(s_function(v[i], v[j]) + s_function(v[j], v[i]), 1.0);
            let r = mid_rank(&v).unwrap();
            prop_assert_eq!(s_function(v[i], v[j]), s_function(r.mid_rank(i), r.mid_rank(j)));
        }

        #[test]
        fn mid_ranks_order_and_ties(v in tied_values()) {
            let r = mid_rank(&v).unwrap();
            for i in 0..v.len() {
                for j in 0..v.len() {
                    let lhs = v[i].partial_cmp(&v[j]).unwrap();
                    let rhs = r.twice_mid_ranks()[i].cmp(&r.twice_mid_ranks()[j]);
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }

        #[test]
        fn monotone_transform_invariance(x in tied_values(), y in tied_values()) {
            let n = x.len().min(y.len());
            let (x, mut y) = (x[..n].to_vec(), y[..n].to_vec());
            if n < 2 { return Ok(()); }
            if y.iter().all(|&v| v == y[0]) { y[0] += 100.0; }
            let s = validate(&x, &y).unwrap();
            let phi = |v: f64| (v / 3.0).exp();
            let xt: Vec<f64> = x.iter().map(|&v| phi(v)).collect();
            let yt: Vec<f64> = y.iter().map(|&v| v.cbrt() * 7.0 - 2.0).collect();
            let t = validate(&xt, &yt).unwrap();
            let (ds, dt) = (decompose(&s), decompose(&t));
            prop_assert_eq!(ds.class_of(), dt.class_of());
            let (rs, rt) = (mid_rank(&x).unwrap(), mid_rank(&xt).unwrap());
            prop_assert_eq!(rs.twice_mid_ranks(), rt.twice_mid_ranks());
        }

        #[test]
        fn order_key_matches_numeric_order(a in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
                                           b in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
            prop_assert_eq!(order_key(a).cmp(&order_key(b)), a.partial_cmp(&b).unwrap());
        }
    }
}
