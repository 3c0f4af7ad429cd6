//! Capacitated set cover via max-flow greedy, and small ε-nets for axis-parallel
//! rectangles with the weight-doubling hitting-set reduction built on them.

pub mod error;
pub mod epsnet;
pub mod exact;
pub mod experiments;
pub mod fixtures;
pub mod flowcheck;
pub mod generate;
pub mod geometry;
pub mod hitting;
pub mod io;
pub mod maxflow;
pub mod setsystem;
pub mod wolsey;

pub use error::{Error, Result};
pub use geometry::{AnchorSide, Point, PointSet, Rect, Strip};
pub use setsystem::{AssignmentCover, Cost, SetCoverInstance, SetEntry, ValidityReport, Violation};
