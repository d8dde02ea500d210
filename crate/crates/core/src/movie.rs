//! ROC movies: one classical ROC curve per nontrivial binarization
//! `1{y >= z_{c+1}}`, `c = 1..m-1`, plus frame thinning for very long movies.
//!
//! Instances are sorted by feature once. Frame AUCs come from per-class
//! sums of doubled mid ranks, updated as each class moves from the positive
//! to the negative side, so building a movie costs one sort plus O(n + m).
//! Vertex lists are materialized per frame on demand from the shared sorted
//! order; storing every vertex of every frame up front would need O(n m)
//! memory.

use crate::error::{Error, Result};
use crate::ratio::ExactRatio;
use crate::roc::{RocCurve, RocVertex};
use crate::sample::{ascending_order, decompose, mid_rank_from_order, ClassDecomposition, PairedSample};
use crate::uroc::{weights, WeightVector};
use std::collections::BTreeSet;

/// Summary of frame `c`: the binary problem `1{y >= threshold_value}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MovieFrame {
    pub threshold_value: f64,
    /// 1-based frame index `c`.
    pub class_index: usize,
    pub weight: f64,
    /// `weight / max weight`, always against the full movie.
    pub relative_weight: f64,
    pub auc: f64,
    pub auc_exact: ExactRatio,
    pub n_pos: u64,
    pub n_neg: u64,
}

#[derive(Debug, Clone)]
pub struct RocMovie {
    decomposition: ClassDecomposition,
    weights: WeightVector,
    /// Class of each instance, instances in descending feature order.
    sorted_classes: Vec<u32>,
    /// Exclusive end offset of each equal-feature group in `sorted_classes`.
    group_ends: Vec<u32>,
    /// Feature value of each group, descending.
    group_values: Vec<f64>,
    frames: Vec<MovieFrame>,
    retained: Option<Vec<usize>>,
}

/// Builds the full (unthinned) movie of a sample.
pub fn build_movie(sample: &PairedSample) -> RocMovie {
    let decomposition = decompose(sample);
    let features = sample.features();
    let class_of = decomposition.class_of();
    let m = decomposition.m();

    let order = ascending_order(features);
    let ranks = mid_rank_from_order(features, &order);

    // per-class sums of doubled mid ranks
    let mut rank_sums = vec![0u128; m + 1];
    for (i, &r) in ranks.twice_mid_ranks().iter().enumerate() {
        rank_sums[class_of[i] as usize] += r as u128;
    }

    let weights = weights(&decomposition);
    let max_weight = weights.max_weight();
    let n = decomposition.n();
    let counts = decomposition.class_counts();
    let mut frames = Vec::with_capacity(m - 1);
    let mut n_pos = n;
    let mut pos_rank_sum: u128 = rank_sums.iter().sum();
    for c in 1..m {
        // class c leaves the positive side
        n_pos -= counts[c - 1];
        pos_rank_sum -= rank_sums[c];
        let n_neg = n - n_pos;
        let twice_u = pos_rank_sum - n_pos as u128 * (n_pos as u128 + 1);
        let auc_exact = ExactRatio::new(twice_u as i128, 2 * n_pos as i128 * n_neg as i128);
        let weight = weights.weights()[c - 1];
        frames.push(MovieFrame {
            threshold_value: decomposition.unique_outcomes()[c],
            class_index: c,
            weight,
            relative_weight: weight / max_weight,
            auc: auc_exact.to_f64(),
            auc_exact,
            n_pos,
            n_neg,
        });
    }

    let mut sorted_classes = Vec::with_capacity(order.len());
    let mut group_ends = Vec::new();
    let mut group_values = Vec::new();
    for &i in order.iter().rev() {
        let v = features[i as usize];
        if group_values.last() != Some(&v) {
            if !group_values.is_empty() {
                group_ends.push(sorted_classes.len() as u32);
            }
            group_values.push(v);
        }
        sorted_classes.push(class_of[i as usize]);
    }
    group_ends.push(sorted_classes.len() as u32);

    RocMovie { decomposition, weights, sorted_classes, group_ends, group_values, frames, retained: None }
}

impl RocMovie {
    pub fn decomposition(&self) -> &ClassDecomposition {
        &self.decomposition
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Every frame, `c = 1..m-1`, regardless of thinning.
    pub fn all_frames(&self) -> &[MovieFrame] {
        &self.frames
    }

    /// Frames in playback order: the retained set if thinned, else all.
    pub fn frames(&self) -> Vec<&MovieFrame> {
        match &self.retained {
            Some(c) => c.iter().map(|&c| &self.frames[c - 1]).collect(),
            None => self.frames.iter().collect(),
        }
    }

    /// Frame `c` (1-based).
    pub fn frame(&self, c: usize) -> &MovieFrame {
        &self.frames[c - 1]
    }

    pub fn is_thinned(&self) -> bool {
        self.retained.is_some()
    }

    pub fn retained(&self) -> Option<&[usize]> {
        self.retained.as_deref()
    }

    /// Number of unique feature values.
    pub fn feature_groups(&self) -> usize {
        self.group_values.len()
    }

    /// Vertices of frame `c` in curve order, without allocating the curve.
    pub fn vertices(&self, c: usize) -> FrameVertices<'_> {
        assert!(c >= 1 && c < self.decomposition.m(), "frame index {c} out of range");
        FrameVertices { movie: self, c: c as u32, group: 0, fp: 0, tp: 0, started: false }
    }

    /// The ROC curve of frame `c` (1-based).
    pub fn curve(&self, c: usize) -> RocCurve {
        let frame = &self.frames[c - 1];
        let vertices: Vec<RocVertex> = self.vertices(c).collect();
        RocCurve::from_parts(vertices, self.group_values.clone(), frame.n_pos, frame.n_neg)
    }

    /// `sum_c w_c AUC_c`, exactly: the weighted AUC numerators share the
    /// weight denominator, so the sum collapses to one ratio.
    pub fn weighted_auc_exact(&self) -> ExactRatio {
        let twice: i128 = self.frames.iter().map(|f| {
            // w_c * AUC_c = (n_neg n_pos / D) * (2U / (2 n_neg n_pos))
            let r = f.auc_exact;
            debug_assert_eq!(r.denominator, 2 * f.n_pos as i128 * f.n_neg as i128);
            r.numerator
        }).sum();
        ExactRatio::new(twice, 2 * self.weights.denominator() as i128)
    }

    pub fn weighted_auc(&self) -> f64 {
        self.weighted_auc_exact().to_f64()
    }

    /// Restricts playback to the thinned index set `C_a ∪ C_b`.
    pub fn thinned(mut self, a: usize, b: usize) -> Result<Self> {
        self.retained = Some(thin_index_set(&self.decomposition, a, b)?);
        Ok(self)
    }

    /// Thins according to `policy` when the movie is longer than its cap.
    pub fn with_policy(self, policy: &ThinningPolicy) -> Result<Self> {
        if self.frames.len() > policy.cap {
            self.thinned(policy.a, policy.b)
        } else {
            Ok(self)
        }
    }
}

/// Streaming vertex walk over one frame.
pub struct FrameVertices<'a> {
    movie: &'a RocMovie,
    c: u32,
    group: usize,
    fp: u64,
    tp: u64,
    started: bool,
}

impl Iterator for FrameVertices<'_> {
    type Item = RocVertex;

    fn next(&mut self) -> Option<RocVertex> {
        if !self.started {
            self.started = true;
            return Some(RocVertex { false_positives: 0, true_positives: 0 });
        }
        let ends = &self.movie.group_ends;
        if self.group >= ends.len() {
            return None;
        }
        let start = if self.group == 0 { 0 } else { ends[self.group - 1] as usize };
        let end = ends[self.group] as usize;
        for &cls in &self.movie.sorted_classes[start..end] {
            if cls > self.c {
                self.tp += 1;
            } else {
                self.fp += 1;
            }
        }
        self.group += 1;
        Some(RocVertex { false_positives: self.fp, true_positives: self.tp })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.movie.group_ends.len() - self.group + usize::from(!self.started);
        (left, Some(left))
    }
}

impl ExactSizeIterator for FrameVertices<'_> {}

/// When and how to thin a movie for display.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThinningPolicy {
    pub a: usize,
    pub b: usize,
    /// Thin only when the movie has more than `cap` frames.
    pub cap: usize,
}

impl Default for ThinningPolicy {
    fn default() -> Self {
        Self { a: 400, b: 100, cap: 500 }
    }
}

/// Frame index set `C = C_a ∪ C_b` (1-based, ascending).
///
/// `C_a = {1, 1+s, ..., 1+(a-1)s}` is an evenly spaced grid of `a` frames and
/// `C_b = {c <= m-1 : n_c >= n/b}` adds every heavily populated class.
/// `s` is the largest step that keeps `C_a` inside `1..=m-1`.
pub fn thin_index_set(decomposition: &ClassDecomposition, a: usize, b: usize) -> Result<Vec<usize>> {
    let frames = decomposition.m() - 1;
    if a < 1 || b < 1 || a > frames {
        return Err(Error::InvalidThinningParams { a, b, frames });
    }
    let step = if a == 1 { 0 } else { (frames - 1) / (a - 1) };
    let mut set: BTreeSet<usize> = (0..a).map(|k| 1 + k * step).collect();
    let n = decomposition.n() as u128;
    for (i, &count) in decomposition.class_counts()[..frames].iter().enumerate() {
        if count as u128 * b as u128 >= n {
            set.insert(i + 1);
        }
    }
    Ok(set.into_iter().collect())
}
