//! Spearman's rank correlation, its mid-rank adjusted variant, and the
//! Gaussian link between Pearson's and Spearman's coefficients.

use crate::error::{Error, Result};
use crate::ratio::ExactRatio;
use crate::sample::{mid_rank_unchecked, PairedSample, RankVector};

/// `V = (1/12) sum_j (v_j^3 - v_j)` over the tie groups of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TieCorrection {
    /// `sum_j (v_j^3 - v_j)`, i.e. `12 V`.
    pub twelve_v: u128,
    /// Number of tie groups `p`.
    pub groups: usize,
}

impl TieCorrection {
    pub fn from_ranks(ranks: &RankVector) -> Self {
        let twelve_v = ranks
            .tie_groups()
            .iter()
            .map(|g| {
                let v = g.multiplicity as u128;
                v * v * v - v
            })
            .sum();
        Self { twelve_v, groups: ranks.tie_group_count() }
    }

    pub fn value(&self) -> ExactRatio {
        ExactRatio::new(self.twelve_v as i128, 12)
    }
}

pub fn tie_correction(values: &[f64]) -> Result<TieCorrection> {
    Ok(TieCorrection::from_ranks(&crate::sample::mid_rank(values)?))
}

/// `sum_i (2a_i - 2b_i)^2` over doubled ranks.
fn squared_rank_gap(a: &RankVector, b: &RankVector) -> u128 {
    a.twice_mid_ranks()
        .iter()
        .zip(b.twice_mid_ranks())
        .map(|(&p, &q)| {
            let d = p as i128 - q as i128;
            (d * d) as u128
        })
        .sum()
}

/// Spearman's rho for tie-free data: `1 - 6 sum d_i^2 / (n (n^2 - 1))`.
pub fn spearman_rho(sample: &PairedSample) -> Result<f64> {
    spearman_rho_exact(sample).map(|r| r.to_f64())
}

pub fn spearman_rho_exact(sample: &PairedSample) -> Result<ExactRatio> {
    let rx = mid_rank_unchecked(sample.features());
    let ry = mid_rank_unchecked(sample.outcomes());
    if rx.tie_group_count() > 0 {
        return Err(Error::TiesPresent("features"));
    }
    if ry.tie_group_count() > 0 {
        return Err(Error::TiesPresent("outcomes"));
    }
    Ok(rho_from_parts(sample.len(), squared_rank_gap(&rx, &ry), 0))
}

/// Mid-rank adjusted rho: feature ties allowed, outcomes must be distinct.
///
/// `1 - 6 (sum (mrk(x_i) - rk(y_i))^2 + V) / (n (n^2 - 1))`
pub fn spearman_rho_mid(sample: &PairedSample) -> Result<f64> {
    spearman_rho_mid_exact(sample).map(|r| r.to_f64())
}

pub fn spearman_rho_mid_exact(sample: &PairedSample) -> Result<ExactRatio> {
    let ry = mid_rank_unchecked(sample.outcomes());
    if ry.tie_group_count() > 0 {
        return Err(Error::TiesInOutcomes);
    }
    let rx = mid_rank_unchecked(sample.features());
    let v = TieCorrection::from_ranks(&rx);
    Ok(rho_from_parts(sample.len(), squared_rank_gap(&rx, &ry), v.twelve_v))
}

/// `1 - (3 D + T) / (2 n (n^2 - 1))` with `D` the doubled-rank gap and `T = 12 V`.
fn rho_from_parts(n: usize, doubled_gap: u128, twelve_v: u128) -> ExactRatio {
    let n = n as i128;
    let scale = 2 * n * (n * n - 1);
    ExactRatio::new(scale - 3 * doubled_gap as i128 - twelve_v as i128, scale)
}

/// Population Spearman correlation of a bivariate normal with Pearson correlation `r`.
pub fn gaussian_spearman_from_pearson(r: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&r) {
        return Err(Error::OutOfRange(r));
    }
    Ok(6.0 / std::f64::consts::PI * (r / 2.0).asin())
}

/// Population CPA of a bivariate normal with Pearson correlation `r`.
pub fn gaussian_cpa_from_pearson(r: f64) -> Result<f64> {
    Ok((gaussian_spearman_from_pearson(r)? + 1.0) / 2.0)
}
