// SPDX-License-Identifier: Apache-2.0

//! Exact peeling of lattice points above parabolas.
//!
//! The lower convex hull of the integer points above a parabola with
//! rational coefficients is a periodic polygonal chain. Repeatedly removing
//! its vertices and re-taking the hull moves the chain upward; this crate
//! computes that process exactly, detects its eventual periodicity and
//! checks the structure of the grid parabolas `P_t` that drive it.

pub mod error;
pub mod experiments;
pub mod fraction;
pub mod geometry;
pub mod gridparabola;
pub mod numtheory;
pub mod parallel;
pub mod peeler;

pub use error::{Error, Result};
pub use fraction::Fraction;
pub use geometry::{AffinePeriodMap, LatticeChain, Point, RationalParabola, VerticalDistance};
pub use parallel::Execution;
