//! Computable content for p-harmonic mappings of the unit disk.
//!
//! A p-harmonic map is stored as `p` truncated harmonic layers, layer `k`
//! carrying the weight `|z|^{2(k-1)}`. Everything else (Wirtinger calculus,
//! the operator `D = z∂_z − z̄∂_z̄`, starlike/convex predicates, Landau radii,
//! Bloch bounds and the region of variability) is built on that
//! representation.

pub mod bipoly;
pub mod bloch;
pub mod error;
pub mod format;
pub mod geometry;
pub mod landau;
pub mod mapfile;
pub mod series;
pub mod variability;

pub use num_complex::Complex64;

pub use bipoly::BiPolynomial;
pub use bloch::{BlochBound, BlochEstimate, CriticalPoint};
pub use error::{Error, Result};
pub use geometry::{PredicateReport, SamplingGrid};
pub use landau::{LandauConstants, LandauResult, Theorem};
pub use series::{HarmonicSeries, Metrics, PHarmonicMap, WirtingerJet};
pub use variability::{MobiusFamilyMember, RegionSample};

/// Threshold below which a quantity is treated as zero in "≠ 0" conditions.
pub const ZERO_THRESHOLD: f64 = 1e-12;
