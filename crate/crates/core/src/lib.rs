//! Toric line arrangements on the 2-torus: exact vertex/edge/chamber counts
//! by two independent routes (half-edge subdivision and intersection-poset
//! Möbius values), explicit constructions for every realizable `(f0, f2)`,
//! bounded exhaustive census, and profile checks for higher-genus surfaces.

pub mod analysis;
pub mod arrangement;
pub mod census;
pub mod cli;
pub mod genus;
pub mod lattice;
pub mod poset;
pub mod torus_geometry;

pub use arrangement::{parse_arrangement, Arrangement, ArrangementError, Rational, ToricLine};
pub use torus_geometry::{FaceProfile, FaceVector, TorusPoint};
