pub mod analysis;
pub mod battery;
pub mod error;
pub mod grid;
pub mod io;
pub mod params;
pub mod quaternion;
pub mod signals;
pub mod time_frequency;
pub mod transforms;

pub use error::{Error, Result};
pub use grid::{lp_norm_4d, scalar_inner_4d, FreqGridSpec, GridSpec, QSignal2D, TFGrid4D, TfField, TfKind};
pub use params::{ParamPair, ParamSet};
pub use quaternion::{Axis, Quaternion};
pub use transforms::{
    canonical_freq, qft_fast, qqpft_at, qqpft_canonical, qqpft_direct, qqpft_fast, qqpft_inverse, QQPFTResult,
};
pub use time_frequency::{
    dilate, qqpaf, qqpwvd, reflect, stqqpft, stqqpft_inverse, stqqpft_point, translate, Method, TfPlan,
    WindowedPair,
};
pub use analysis::{
    check_concentration_up, check_entropy_up_tf, check_hausdorff_young, check_lieb_inequality, check_parseval,
    check_renyi_up, check_shannon_up, essential_support_measure, renyi_entropy, shannon_entropy, DensityGrid,
    VerificationReport,
};
