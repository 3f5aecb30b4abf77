//! kirbykit: computational Kirby calculus for 4-manifold handlebody diagrams.
//!
//! The crate is organized in layers:
//! - [`intalg`]: exact integer matrices, Smith normal form, Laurent polynomials
//! - [`linkdiagram`]: framed-link diagrams with an algebraic layer (framings +
//!   linking numbers) and an optional planar layer (PD crossing data)
//! - [`kirbymoves`]: primitive handle moves, replayable move scripts, and the
//!   delta-move / cork-twist composites
//! - [`invariants`]: homology, Euler characteristic, signature, Alexander
//!   polynomials (two independent algorithms), and the knot-surgery
//!   Seiberg-Witten bookkeeping
//! - [`monodromy`]: SL(2,Z) twist words, centralizers, torus-bundle homology
//! - [`registry`]: named diagram templates

pub mod intalg;
pub mod invariants;
pub mod kirbymoves;
pub mod linkdiagram;
pub mod monodromy;
pub mod registry;
