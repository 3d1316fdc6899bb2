//! Frobenius data from elliptic curves over prime fields, and dataset files.

mod builders;
mod curve;
mod dataset;

pub use builders::{
    build_cm_system, build_curve_system, cm_split, rational_trace, CmConfig, CurveConfig, SheetSpec,
};
pub use curve::{
    count_points, extension_trace, frobenius_poly, least_nonresidue, legendre, weil_poly,
    EllipticCurve, MAX_COUNT_PRIME,
};
pub use dataset::{
    dataset_from_str, dataset_to_string, decode_value, encode_value, load_dataset, store_dataset,
};
