//! Coefficient of predictive ability (CPA) and the C index.
//!
//! CPA is available by four routes that must agree: the O(n log n) rank/class
//! formula, the weighted pairwise concordance (quadratic, an oracle), the
//! ratio of class/mid-rank covariances, and the weighted mean of the movie's
//! AUCs. All integer sums are kept in half units (mid ranks doubled).

use crate::error::{Error, Result};
use crate::movie::build_movie;
use crate::ratio::ExactRatio;
use crate::sample::{
    ascending_order, canonical, decompose, mid_rank_unchecked, order_key, s_twice, sort_by_order_key, sorted_keys, PairedSample,
};

/// Default size cap for the quadratic pairwise route.
pub const PAIRWISE_CAP: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpaMethod {
    Fast,
    Pairwise,
    Covariance,
    WeightedAuc,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpaResult {
    pub value: f64,
    pub numerator: i128,
    pub denominator: i128,
    pub method: CpaMethod,
}

impl CpaResult {
    fn from_ratio(numerator: i128, denominator: i128, method: CpaMethod) -> Self {
        let value = ExactRatio::new(numerator, denominator).to_f64();
        Self { value, numerator, denominator, method }
    }

    pub fn exact(&self) -> ExactRatio {
        ExactRatio::new(self.numerator, self.denominator)
    }
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("cpa sums"))
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("cpa sums"))
}

/// CPA from mid ranks and classes in O(n log n).
///
/// numerator   = sum_k cl_k mrk(x_k) + sum_i i n_i (N_{<i} + n_i/2 - n - 1/2)
/// denominator = sum_i i n_i (2 N_{<i} + n_i - n)
///
/// where `N_{<i}` counts instances in lower classes. Both are doubled here.
pub fn cpa_fast(sample: &PairedSample) -> Result<CpaResult> {
    let features = sample.features();
    let n = sample.len() as i128;

    // sort by outcome, then reuse the buffer for (feature key, class)
    let mut keyed = sorted_keys(sample.outcomes());
    let mut class_counts: Vec<u64> = Vec::new();
    let mut previous = None;
    for slot in keyed.iter_mut() {
        let (key, i) = *slot;
        if previous != Some(key) {
            previous = Some(key);
            class_counts.push(0);
        }
        *class_counts.last_mut().expect("class opened above") += 1;
        *slot = (order_key(features[i as usize]), class_counts.len() as u32);
    }
    sort_by_order_key(&mut keyed);

    // each feature tie group adds (sum of its classes) * (doubled mid rank)
    let mut numerator: i128 = 0;
    let mut start = 0;
    while start < keyed.len() {
        let key = keyed[start].0;
        let mut class_sum = 0i128;
        let mut end = start;
        while end < keyed.len() && keyed[end].0 == key {
            class_sum += keyed[end].1 as i128;
            end += 1;
        }
        numerator = add(numerator, mul(class_sum, (start + 1 + end) as i128)?)?;
        start = end;
    }
    let mut denominator: i128 = 0;
    let mut below: i128 = 0;
    for (i, &count) in class_counts.iter().enumerate() {
        let (class, count) = (i as i128 + 1, count as i128);
        let weight = mul(class, count)?;
        numerator = add(numerator, mul(weight, 2 * below + count - 2 * n - 1)?)?;
        denominator = add(denominator, mul(weight, 2 * below + count - n)?)?;
        below += count;
    }
    if denominator == 0 {
        return Err(Error::DegenerateOutcomes);
    }
    Ok(CpaResult::from_ratio(numerator, mul(2, denominator)?, CpaMethod::Fast))
}

/// CPA as a concordance probability weighted by class distance. Quadratic;
/// refuses samples larger than [`PAIRWISE_CAP`].
pub fn cpa_pairwise(sample: &PairedSample) -> Result<CpaResult> {
    cpa_pairwise_with_cap(sample, Some(PAIRWISE_CAP))
}

/// As [`cpa_pairwise`]; `None` lifts the size cap.
pub fn cpa_pairwise_with_cap(sample: &PairedSample, cap: Option<usize>) -> Result<CpaResult> {
    let n = sample.len();
    if let Some(cap) = cap {
        if n > cap {
            return Err(Error::PairwiseTooLarge { n, cap });
        }
    }
    let decomposition = decompose(sample);
    let class_of = decomposition.class_of();
    let x = sample.features();
    let (mut numerator, mut denominator) = (0i128, 0i128);
    for a in 0..n {
        for b in 0..n {
            if class_of[a] < class_of[b] {
                let distance = (class_of[b] - class_of[a]) as i128;
                numerator += distance * s_twice(x[a], x[b]) as i128;
                denominator += distance;
            }
        }
    }
    if denominator == 0 {
        return Err(Error::DegenerateOutcomes);
    }
    Ok(CpaResult::from_ratio(numerator, 2 * denominator, CpaMethod::Pairwise))
}

/// CPA = ½ (cov(cl(Y), mrk(X)) / cov(cl(Y), mrk(Y)) + 1) under the empirical law.
pub fn cpa_covariance(sample: &PairedSample) -> Result<CpaResult> {
    let decomposition = decompose(sample);
    let class_of = decomposition.class_of();
    let rx = mid_rank_unchecked(sample.features());
    let ry = mid_rank_unchecked(sample.outcomes());
    let n = sample.len() as i128;

    // n^2 * 2 * cov(a, b) = n * sum(a * 2b) - sum(a) * sum(2b)
    let scaled_cov = |ranks: &[u64]| -> Result<i128> {
        let (mut cross, mut sum_cl, mut sum_rank) = (0i128, 0i128, 0i128);
        for (&c, &r) in class_of.iter().zip(ranks) {
            cross = add(cross, mul(c as i128, r as i128)?)?;
            sum_cl += c as i128;
            sum_rank += r as i128;
        }
        Ok(mul(n, cross)? - mul(sum_cl, sum_rank)?)
    };
    let cov_x = scaled_cov(rx.twice_mid_ranks())?;
    let cov_y = scaled_cov(ry.twice_mid_ranks())?;
    if cov_y == 0 {
        return Err(Error::DegenerateOutcomes);
    }
    Ok(CpaResult::from_ratio(add(cov_x, cov_y)?, mul(2, cov_y)?, CpaMethod::Covariance))
}

/// CPA as `sum_c w_c AUC_c` over the full ROC movie.
pub fn cpa_weighted_auc(sample: &PairedSample) -> Result<CpaResult> {
    let r = build_movie(sample).weighted_auc_exact();
    Ok(CpaResult::from_ratio(r.numerator, r.denominator, CpaMethod::WeightedAuc))
}

/// Unweighted concordance probability over all pairs with distinct outcomes.
pub fn c_index(sample: &PairedSample) -> Result<f64> {
    c_index_exact(sample).map(|r| r.to_f64())
}

/// C index via a Fenwick tree over dense feature ranks, O(n log n).
pub fn c_index_exact(sample: &PairedSample) -> Result<ExactRatio> {
    let x = sample.features();
    let n = x.len();
    let decomposition = decompose(sample);

    let order = ascending_order(x);
    let mut dense = vec![0usize; n];
    let mut rank = 0;
    for (k, &i) in order.iter().enumerate() {
        if k == 0 || canonical(x[order[k - 1] as usize]) != canonical(x[i as usize]) {
            rank += 1;
        }
        dense[i as usize] = rank;
    }

    // ascending outcomes visit the classes in order
    let by_class = ascending_order(sample.outcomes());

    let mut tree = Fenwick::new(rank);
    let mut twice: u128 = 0;
    let mut start = 0;
    while start < n {
        let class = decomposition.class_of()[by_class[start] as usize];
        let mut end = start;
        while end < n && decomposition.class_of()[by_class[end] as usize] == class {
            let r = dense[by_class[end] as usize];
            let less = tree.prefix(r - 1);
            let equal = tree.prefix(r) - less;
            twice += 2 * less as u128 + equal as u128;
            end += 1;
        }
        for &i in &by_class[start..end] {
            tree.add(dense[i as usize]);
        }
        start = end;
    }
    let n2 = (n as u128) * (n as u128);
    let same: u128 = decomposition.class_counts().iter().map(|&c| c as u128 * c as u128).sum();
    let pairs_twice = n2 - same;
    if pairs_twice == 0 {
        return Err(Error::DegenerateOutcomes);
    }
    Ok(ExactRatio::new(twice as i128, pairs_twice as i128))
}

struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(size: usize) -> Self {
        Self { tree: vec![0; size + 1] }
    }

    fn add(&mut self, mut i: usize) {
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of inserted ranks `<= i`.
    fn prefix(&self, mut i: usize) -> u64 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}
