//! Finds and certifies crossing limit cycles of planar piecewise
//! differential systems separated by the line `x = 0`, where each half is an
//! affine image of a linear center or of a cubic isochronous center.
//!
//! The pipeline is exact-first: first integrals restricted to the switching
//! line become polynomial closing equations solved with resultants and
//! Sturm-sequence root isolation over big rationals; algebraic candidates
//! are then accepted or rejected by integrating the actual half-plane flows
//! and checking that the two arcs close up.

pub mod builtin;
pub mod centers;
pub mod closing;
pub mod plot;
pub mod poly;
pub mod rat;
pub mod report;
pub mod scenario;
pub mod sim;
pub mod sweep;
pub mod verify;

pub use rat::Rat;

/// Which half-plane of the switching line `x = 0` is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x >= 0`
    Right,
    /// `x <= 0`
    Left,
}

impl Side {
    /// Sign of `x` in the half-plane interior.
    pub fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Right => write!(f, "right"),
            Side::Left => write!(f, "left"),
        }
    }
}
