//! Bishop frames of space curves and the Smarandache ruled surfaces built on them.
//!
//! The crate is organized bottom-up:
//!
//! - [`curve`]: parametric curves, arclength reparametrization and curve synthesis
//!   from prescribed Bishop curvatures.
//! - [`framing`]: Frenet and Bishop frames, slant-helix and planarity tests.
//! - [`smarandache`]: the `TN1`, `TN2` and `N1N2` ruled surfaces, their points,
//!   partial derivatives and unit normals.
//! - [`geometry`]: a generic pipeline for fundamental forms, Gaussian and mean
//!   curvature, striction curves and curve-on-surface invariants.
//! - [`closedform`]: the closed-form curvature expressions for the three surfaces,
//!   kept separate so they can be checked against [`geometry`].
//! - [`verify`]: cross-validation of the closed forms against the numeric pipeline.
//!
//! The crate is `no_std` compatible (with `alloc`). Disable the default `std`
//! feature and enable `libm` to build without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod float;
pub mod numeric;

pub mod closedform;
pub mod curve;
pub mod framing;
pub mod geometry;
pub mod reference;
pub mod smarandache;
pub mod verify;

pub use error::{Error, Result};

/// Vector in Euclidean 3-space.
pub type Vec3 = nalgebra::Vector3<f64>;

pub use closedform::BishopJet1;
pub use curve::{ArcLengthCurve, CurvatureProfile, Frame, ParamCurve};
pub use framing::{BishopData, FrenetData};
pub use geometry::{FundamentalForms, PointAnalysis, PointClass, SurfaceGrid, SurfaceReport};
pub use smarandache::{JetMode, RuledSurface, SurfaceJet, SurfaceKind};
