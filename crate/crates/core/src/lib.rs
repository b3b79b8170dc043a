//! Distance-from-flat persistent homology transform.
//!
//! Shapes are finite cubical or simplicial complexes. Every affine m-flat `P`
//! of the ambient space induces the lower-star filtration of `x ↦ dist(x, P)`,
//! and the transform records the persistence diagrams of those filtrations in
//! degrees `0..m`.
//!
//! The crate is split along the same lines as the computation:
//!
//! * [`linalg`] and [`grassmann`]: flats, principal angles, and the metric on
//!   the affine Grassmannian.
//! * [`complex`] and [`shapes`]: cell complexes, lower-star filtrations, slices.
//! * [`persistence`] and [`distance`]: diagrams and the bottleneck/Wasserstein
//!   metrics between them.
//! * [`transform`]: scans, Euler curves, Radon-style slice counts and probes.
//! * [`json`]: the on-disk result format.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod complex;
pub mod distance;
pub mod error;
pub mod grassmann;
pub mod json;
pub mod linalg;
pub mod persistence;
pub mod shapes;
pub mod transform;

pub use complex::{CellKind, FiltrationValues, Shape};
pub use error::{Error, Result};
pub use grassmann::{Flat, PrincipalAngles};
pub use linalg::Matrix;
pub use persistence::PersistenceDiagram;
