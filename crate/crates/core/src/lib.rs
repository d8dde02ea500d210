//! Generalized ROC analysis for real-valued outcomes.
//!
//! A real-valued outcome `y` with `m` distinct values defines `m - 1` binary
//! problems `1{y >= z_{c+1}}`. Their ROC curves form a *ROC movie*; the
//! weighted vertical average of the frames is the *universal ROC* (UROC)
//! curve, and its area is the *coefficient of predictive ability* (CPA).
//! For a binary outcome all three reduce to the classical ROC curve and AUC.
//!
//! ```
//! use uroc::{cpa_fast, validate};
//!
//! let sample = validate(&[2.0, 1.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
//! assert_eq!(cpa_fast(&sample).unwrap().value, 0.75);
//! ```

pub mod assoc;
pub mod cli;
pub mod cpa;
pub mod error;
pub mod export;
pub mod gaussian;
pub mod io;
pub mod movie;
pub mod ratio;
pub mod roc;
pub mod sample;
pub mod svg;
pub mod uroc;

pub use assoc::{
    gaussian_cpa_from_pearson, gaussian_spearman_from_pearson, spearman_rho, spearman_rho_exact, spearman_rho_mid,
    spearman_rho_mid_exact, tie_correction, TieCorrection,
};
pub use cpa::{
    c_index, c_index_exact, cpa_covariance, cpa_fast, cpa_pairwise, cpa_pairwise_with_cap, cpa_weighted_auc,
    CpaMethod, CpaResult, PAIRWISE_CAP,
};
pub use error::{Error, Result};
pub use gaussian::{sample_gaussian, threshold_event, GaussianSample, GaussianSpec, DEFAULT_COVARIANCE};
pub use movie::{build_movie, thin_index_set, FrameVertices, MovieFrame, RocMovie, ThinningPolicy};
pub use ratio::ExactRatio;
pub use roc::{
    auc_pairwise, auc_pairwise_exact, pair_counts, roc_curve, somers_d, somers_d_exact, PairCounts, RocCurve,
    RocVertex,
};
pub use sample::{decompose, mid_rank, s_function, validate, ClassDecomposition, PairedSample, RankVector, TieGroup};
pub use uroc::{area_under_uroc, uroc_curve, weights, UrocCurve, WeightVector, DEFAULT_GRID};
