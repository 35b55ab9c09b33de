//! Layout optimization over variable-size design spaces.
//!
//! A component catalog describes parts that may be subdivided into a variable
//! number of sub-components, so the set of placement variables itself depends
//! on decisions taken during the search. The crate implements the
//! hidden-variables approach: chromosomes carry placement genes for *every*
//! subdivision option, an activation record (tag vector or dimensional
//! variables) picks one option per component, and genes of unselected options
//! are simply ignored during evaluation.
//!
//! Modules follow the pipeline:
//!
//! * [`geometry`]: exact area kernels for disks, rectangles and a circular
//!   container.
//! * [`catalog`]: component catalog, subdivision expansion, gene layout and
//!   chromosome decoding.
//! * [`physics`]: planar inertia model used as the objective.
//! * [`constraints`]: overlap, exclusion-zone, containment, centroid and
//!   functional-distance violations.
//! * [`evolution`]: the genetic algorithm (SBX, polynomial mutation, tag and
//!   dimensional-variable operators, constraint-dominance and stochastic
//!   ranking).
//! * [`experiments`]: ready-made problem instances and multi-run batches.
//! * [`report`]: deterministic CSV / SVG / JSON artifact writers.
//!
//! All numeric code is generic over [`Scalar`] (any `num_traits::Float` with
//! the few extra bounds the crate needs); the crate root exports `f64`-based
//! aliases which are what the binaries and most tests use.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

pub mod catalog;
pub mod constraints;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod geometry;
pub mod physics;
pub mod problem;
pub mod report;

/// Floating-point scalar used by every numeric routine in the crate.
///
/// Implemented by `f32` and `f64`. The bounds beyond `Float` exist so that
/// code can convert literals (`FromPrimitive`), round-trip through `f64` for
/// RNG draws and reporting (`ToPrimitive`), sum iterators and print values.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64`, panicking only for exotic types that cannot
    /// represent it; `f32`/`f64` always succeed (possibly with rounding).
    #[inline]
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("f64 must convert into Scalar")
    }

    /// Lossy view as `f64`, used by reporting and RNG plumbing.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar must convert into f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Default concrete scalar.
pub type Real = f64;
/// Two-dimensional vector over [`Real`].
pub type Vec2 = geometry::Vec2<Real>;
/// Placed shape over [`Real`].
pub type PlacedShape = geometry::PlacedShape<Real>;
/// Circular container over [`Real`].
pub type ContainerDisk = geometry::ContainerDisk<Real>;
/// Component catalog over [`Real`].
pub type Catalog = catalog::Catalog<Real>;
/// Decoded layout over [`Real`].
pub type LayoutInstance = catalog::LayoutInstance<Real>;
/// Constraint evaluation result over [`Real`].
pub type Violations = constraints::Violations<Real>;
/// GA configuration over [`Real`].
pub type GaConfig = evolution::GaConfig<Real>;
/// Problem instance over [`Real`].
pub type ProblemInstance = problem::ProblemInstance<Real>;

pub use error::Error;
