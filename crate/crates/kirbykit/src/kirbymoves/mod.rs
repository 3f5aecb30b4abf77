//! The move engine: primitive Kirby moves with exact linking-matrix
//! semantics, replayable and invertible move scripts, and the delta-move and
//! cork-twist composites.
//!
//! Moves act on the algebraic layer and mark planar data stale; they never
//! rewrite PD codes.

mod delta;
mod moves;
mod script;

pub use delta::{
    cork_twist, delta_move, CorkSide, CorkTwistError, DeltaData, DeltaError,
};
pub use moves::{
    add_23_pair, blow_down, blow_up, cancel_12, cancel_23, handle_slide, twist_region, MoveError,
    Multiplicities,
};
pub use script::{Move, MoveScript, ScriptError};
