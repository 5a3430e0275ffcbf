//! Classical link diagrams: resolutions, Reidemeister moves, the Kauffman
//! bracket and the unlink oracle.

mod bracket;
mod oracle;

use std::ops::Deref;
use std::sync::OnceLock;

use thiserror::Error;

use crate::diagram::rewrite::{replace, End, Replacement, TVertex, Tangle};
use crate::diagram::{Diagram, VertexKind};
use crate::moves::{apply_move, find_moves, Direction, MoveError, MoveKind, MoveSite};
use crate::util::UnionFind;

pub use bracket::{kauffman_bracket, kauffman_bracket_generic, kauffman_bracket_with_cap, DEFAULT_BRACKET_CAP};
pub use oracle::{is_trivial_unlink, unlink_bracket_matches, TrivialityBudget, TrivialityVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("marked vertex not allowed in a link diagram")]
    MarkedVertex,
    #[error("{crossings} crossings exceed the bracket cap of {cap}")]
    TooLarge { crossings: usize, cap: usize },
}

/// Diagram without marked vertices.
#[derive(Clone, Debug)]
pub struct LinkDiagram(Diagram);

impl LinkDiagram {
    pub fn new(d: Diagram) -> Result<Self, LinkError> {
        if d.marked_count() > 0 {
            return Err(LinkError::MarkedVertex);
        }
        Ok(LinkDiagram(d))
    }

    pub fn parse(text: &str) -> Result<Self, crate::Error> {
        let doc = crate::codec::parse_link(text.as_bytes())?;
        Ok(LinkDiagram(Diagram::build(&doc)?))
    }

    pub fn diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn into_diagram(self) -> Diagram {
        self.0
    }
}

impl Deref for LinkDiagram {
    type Target = Diagram;

    fn deref(&self) -> &Diagram {
        &self.0
    }
}

/// Resolution label. `A` joins the marker corners `d1-d2`, `d3-d4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A,
    B,
}

impl Label {
    pub fn swap(self) -> Label {
        match self {
            Label::A => Label::B,
            Label::B => Label::A,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Label::A => 'a',
            Label::B => 'b',
        }
    }
}

fn smoothing(label: Label) -> &'static Tangle {
    static T: OnceLock<[Tangle; 2]> = OnceLock::new();
    let t = T.get_or_init(|| {
        let strand = |a: usize, b: usize| TVertex {
            kind: VertexKind::Loop,
            ends: vec![End::Slot(a), End::Slot(b)],
        };
        [
            Tangle {
                vertices: vec![strand(0, 1), strand(2, 3)],
                slots: 4,
            },
            Tangle {
                vertices: vec![strand(1, 2), strand(3, 0)],
                slots: 4,
            },
        ]
    });
    &t[label as usize]
}

/// Smooths every marked vertex.
pub fn resolve(d: &Diagram, label: Label) -> LinkDiagram {
    let reps: Vec<Replacement> = (0..d.num_nodes())
        .filter(|&v| d.kind(v) == VertexKind::Marked)
        .map(|v| Replacement {
            removed: vec![v],
            slots: d.darts_of(v).collect(),
            tangle: smoothing(label),
        })
        .collect();
    if reps.is_empty() {
        return LinkDiagram(d.clone());
    }
    let (out, _) = replace(d, &reps, None).expect("smoothing keeps the map planar");
    LinkDiagram(out)
}

/// Number of closed strands, following straight through crossings.
pub fn component_count(d: &Diagram) -> usize {
    let mut uf = UnionFind::new(d.num_darts());
    for x in 0..d.num_darts() as u32 {
        uf.union(x as usize, d.mate(x) as usize);
    }
    for v in 0..d.num_nodes() {
        let f = d.first_dart(v) as usize;
        match d.kind(v) {
            VertexKind::Loop => {
                uf.union(f, f + 1);
            }
            _ => {
                uf.union(f, f + 2);
                uf.union(f + 1, f + 3);
            }
        }
    }
    uf.count_sets()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RMove {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
}

impl RMove {
    pub fn of(site: &MoveSite) -> Option<RMove> {
        use Direction::*;
        Some(match (site.kind, site.direction) {
            (MoveKind::O1, Forward) => RMove::R1Plus,
            (MoveKind::O1, Backward) => RMove::R1Minus,
            (MoveKind::O2, Forward) => RMove::R2Plus,
            (MoveKind::O2, Backward) => RMove::R2Minus,
            (MoveKind::O3, _) => RMove::R3,
            _ => return None,
        })
    }
}

pub fn reidemeister_sites(l: &LinkDiagram) -> Vec<(RMove, MoveSite)> {
    find_moves(l, &MoveKind::REIDEMEISTER)
        .into_iter()
        .map(|s| (RMove::of(&s).expect("Reidemeister kind"), s))
        .collect()
}

pub fn apply_reidemeister(l: &LinkDiagram, site: &MoveSite) -> Result<LinkDiagram, MoveError> {
    if RMove::of(site).is_none() {
        return Err(MoveError::StaleSite(format!("{} is not a Reidemeister move", site.kind)));
    }
    apply_move(l, site).map(LinkDiagram)
}
