//! Generalized blancmange functions B(s,c) = Σ_{k≥0} s(b^k t)/b^k built
//! from piecewise-linear generators, with b = c·p.
//!
//! Everything that certifies runs on exact rationals: evaluation on the
//! b-adic lattice is a finite exact sum, off-lattice evaluation returns a
//! certified enclosure, non-affineness is witnessed by three exact graph
//! points with a nonzero determinant, and the density pipeline bounds the
//! uniform error of blancmange approximants with the geometric-series
//! formula M/(b−1).

pub mod approximate;
pub mod certify;
pub mod corpus;
pub mod error;
pub mod generator;
pub mod io;
pub mod numeric;
pub mod series;
pub mod zoom;

pub use approximate::{ApproximationResult, SampledFunction};
pub use certify::{AffinePiece, GridInterval, NonAffineWitness};
pub use error::{Error, Result};
pub use generator::{Generator, SupNorm};
pub use numeric::{Enclosure, Rational};
pub use series::{BAdicPoint, BlancmangeSpec, SeriesValue};
pub use zoom::{DefectReport, ScanSide, SlopeSample};
