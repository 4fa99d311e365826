//! Dendrite dynamics toolkit: finite metric-tree dendrites, piecewise-linear
//! self-maps, cell decompositions with step observables, Mobius/Liouville
//! sieves, weighted ergodic-average experiments, and Gehman-style subshift
//! realizations.

pub mod arith;
pub mod decomposition;
pub mod dendrite;
pub mod disjointness;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod gehman;
pub mod map;
pub mod samples;
pub mod subdendrite;

pub use dendrite::{ArcPath, ArcStep, DPoint, Dendrite, Edge};
pub use error::{Error, Result};
pub use map::DendriteMap;
pub use subdendrite::Subdendrite;
