//! Exact Galois group classification for monic integer cubics and quartics,
//! exhaustive censuses over coefficient boxes, and the supporting exact
//! identities, parametrizations and constructions.

pub mod arith;
pub mod asymptotics;
pub mod census;
pub mod constructions;
pub mod eisenstein;
pub mod error;
pub mod galois;
pub mod identities;

pub use error::{Error, Result};
pub use galois::{
    classify_cubic, classify_quartic, CubicClass, GaloisClass, MonicCubic, MonicQuartic,
    QuarticClass,
};
