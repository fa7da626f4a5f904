//! Schobers on a disk, decategorified: monodromy data with a braid action,
//! the one-point quiver presentation, and linear spherical pairs.

pub mod gmv;
pub mod ks;
pub mod pair;

pub use gmv::{cotwist, monodromy_of, GmvData, GmvPoint, GmvReport};
pub use ks::{KsQuiverData, KsReport};
pub use pair::{LinearSphericalPair, PairReport};
