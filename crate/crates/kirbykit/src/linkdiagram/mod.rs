//! Framed-link handlebody diagrams.
//!
//! A diagram always carries the algebraic layer (framings and pairwise
//! linking numbers). The planar layer (PD crossing data) is optional and is
//! what enables Seifert-matrix and Alexander-polynomial computations. Handle
//! moves act on the algebraic layer and mark planar data stale.

mod diagram;
pub(crate) mod planar;
pub mod seifert;
mod textfmt;
mod twist;

pub use diagram::{Component, Diagram, DiagramError, DottedAs, HandleKind};
pub use planar::{figure_eight_pd, hopf_pd, trefoil_pd, PdCrossing, PlanarData, PlanarError};
pub use seifert::{
    alexander_from_seifert, congruent_2x2, seifert_matrix, SeifertError, SeifertMatrix,
};
pub use textfmt::ParseError;
pub use twist::{twist_knot, TwistKnotError};
