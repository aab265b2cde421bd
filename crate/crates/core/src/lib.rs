//! Sparse extremely-large antenna array design and near-field analysis.
//!
//! The crate builds one-dimensional sparse array geometries (dense uniform,
//! nested, coprime, non-redundant, and several multi-subarray families),
//! analyzes their difference co-arrays (degrees of freedom, holes, lag
//! weights, exhaustive max-DoF search), models spherical-wavefront steering
//! with Fresnel and planar reductions, evaluates Cramér–Rao bounds for
//! joint angle/range estimation with an unknown complex gain, and
//! constructs line-of-sight MIMO channels whose singular-value spectra
//! quantify near-field spatial multiplexing.
//!
//! All numeric output formatting is deterministic (17 significant digits)
//! so serialized artifacts are byte-identical across reruns.
//!
//! # Example
//!
//! ```
//! use xlsparse_core::{difference_coarray, ArrayLayout, SPEED_OF_LIGHT_M_PER_S};
//!
//! let wavelength = SPEED_OF_LIGHT_M_PER_S / 100e9;
//! let layout = ArrayLayout::nested(8, wavelength)?;
//! assert_eq!(layout.indices(), &[0, 1, 2, 3, 4, 9, 14, 19]);
//!
//! let coarray = difference_coarray(&layout);
//! assert_eq!(coarray.dof(), 39);
//! assert!(coarray.is_hole_free());
//! # Ok::<(), xlsparse_core::Error>(())
//! ```

pub use num_complex::Complex64;

pub mod channel;
pub mod coarray;
pub mod crb;
pub mod error;
pub mod geometry;
pub mod layout_spec;
pub mod nearfield;
pub mod output;
pub mod reference;

pub use channel::{
    effective_rank, los_channel, pairwise_distances, rank_vs_distance, spectrum_csv, LosChannel,
    RankReport, RankRow,
};
pub use coarray::{
    difference_coarray, dof_report, dof_report_csv, search_max_dof, Coarray, DofRow,
};
pub use crb::{crb, crb_range_sweep, fim, sweep_csv, CellOutcome, CrbResult, SweepRow};
pub use error::{Error, Result};
pub use geometry::{
    ArrayKind, ArrayLayout, MultiSubarraySpec, SubarrayBase, SPEED_OF_LIGHT_M_PER_S,
};
pub use layout_spec::LayoutSpec;
pub use nearfield::{
    aligned_phase_deviation, beampattern, fresnel_steering, max_phase_error, planar_steering,
    spherical_steering, steering_derivatives, SourceParams, SteeringDerivatives, SteeringModel,
    SteeringVector,
};
pub use output::fmt_f64;
pub use reference::{
    mismatched_rows, reference_csv, reference_report, reference_rows, ReferenceRow, VerifiedRow,
};
