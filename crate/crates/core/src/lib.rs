//! Marked graph diagrams of surface links in 4-space.
//!
//! Diagrams are combinatorial maps on the sphere ([`Diagram`]). From a
//! diagram the crate computes its two resolutions, the thickened ab-surface
//! and the invariants of the capped closed surface, checks that both
//! resolutions are unlinks, and applies or searches for Yoshikawa moves.

// dart arrays are indexed in parallel throughout
#![allow(clippy::needless_range_loop)]

pub mod codec;
pub mod diagram;
pub mod link;
pub mod moves;
pub mod poly;
pub mod render;
pub mod search;
pub mod surface;
mod util;

use thiserror::Error;

pub use codec::{emit_mgd, parse_link, parse_mgd, MgdDocument, ParseError, Statement};
pub use diagram::{parse_diagram, validate, BuildError, Dart, Diagram, MarkedGraphDiagram, Region, ValidationReport, Validity, VertexKind};
pub use link::{
    component_count, is_trivial_unlink, kauffman_bracket, resolve, Label, LinkDiagram, LinkError, TrivialityBudget,
    TrivialityVerdict,
};
pub use moves::{apply_move, find_moves, inverse, scramble, Direction, MoveError, MoveKind, MoveSite, MoveTrace};
pub use search::{distinguish, search_equivalence, SearchBounds, SearchError, SearchOutcome};
pub use surface::{cap_invariants, is_2link, AbSurfaceComplex, SurfaceInvariants, TwoLink};
pub use util::UnionFind;

/// Integer bracket polynomial.
pub type Bracket = poly::LaurentPoly<i64>;
/// Layout with `f64` coordinates.
pub type Layout = render::ForceLayout<f64>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Search(#[from] SearchError),
}
