//! Bounded bidirectional breadth-first search for move sequences between
//! two diagrams, with invariant-based refutation up front.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::Diagram;
use crate::link::{component_count, kauffman_bracket, resolve, Label};
use crate::moves::{apply_move, find_moves, Direction, MoveError, MoveKind, MoveSite, MoveTrace};
use crate::surface::cap_invariants;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_ch: usize,
    pub max_moves: usize,
    /// Diagrams expanded, over both directions.
    pub max_nodes: usize,
    pub kinds: Vec<MoveKind>,
    /// Worker threads for child generation; the outcome does not depend
    /// on it.
    pub threads: usize,
}

impl SearchBounds {
    pub fn new(max_ch: usize, max_moves: usize, max_nodes: usize) -> Self {
        SearchBounds {
            max_ch,
            max_moves,
            max_nodes,
            kinds: MoveKind::ALL.to_vec(),
            threads: 1,
        }
    }
}

/// An invariant that differs, with both values rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub invariant: &'static str,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} vs {}", self.invariant, self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Equivalent(MoveTrace),
    Distinguished(Witness),
    Unknown { nodes: usize },
}

impl SearchOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            SearchOutcome::Equivalent(_) => "equivalent",
            SearchOutcome::Distinguished(_) => "distinguished",
            SearchOutcome::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: usize,
    /// Codes expanded more than once; stays zero.
    pub repeated: usize,
    /// Some input has a capped component that is not a sphere.
    pub outside_hypothesis: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("ch-index bound {max_ch} is below the endpoint ch-index {needed}")]
    BoundsTooTight { max_ch: usize, needed: usize },
    #[error("certificate failed to replay: {0}")]
    Replay(MoveError),
}

fn check<T: PartialEq + fmt::Debug>(name: &'static str, a: T, b: T) -> Option<Witness> {
    (a != b).then(|| Witness {
        invariant: name,
        left: format!("{a:?}"),
        right: format!("{b:?}"),
    })
}

/// First differing invariant of the capped surfaces.
pub fn distinguish(d1: &Diagram, d2: &Diagram) -> Option<Witness> {
    let (a, b) = (cap_invariants(d1), cap_invariants(d2));
    check("components", a.component_count, b.component_count).or_else(|| {
        let key = |s: &crate::surface::SurfaceInvariants| {
            s.per_component
                .iter()
                .map(|c| (c.chi, c.orientable, c.genus))
                .collect::<Vec<_>>()
        };
        check("chi/orientable/genus", key(&a), key(&b))
    })
}

fn resolution_counts(d: &Diagram) -> (usize, usize) {
    let a = component_count(&resolve(d, Label::A));
    let b = component_count(&resolve(d, Label::B));
    (a.min(b), a.max(b))
}

fn resolution_brackets(d: &Diagram) -> Option<Vec<String>> {
    let mut out = Vec::new();
    for label in [Label::A, Label::B] {
        let p = kauffman_bracket(&resolve(d, label)).ok()?;
        out.push(p.normalize_framing().0.to_string());
    }
    out.sort();
    Some(out)
}

/// As [`distinguish`]; when every kind is Type I the resolution component
/// counts and framing-normalized brackets are compared as well, since
/// only those moves keep the resolutions' link types.
pub fn distinguish_with(d1: &Diagram, d2: &Diagram, kinds: &[MoveKind]) -> Option<Witness> {
    distinguish(d1, d2).or_else(|| {
        if !kinds.iter().all(|k| k.is_type_i()) {
            return None;
        }
        check("resolution components", resolution_counts(d1), resolution_counts(d2)).or_else(|| {
            match (resolution_brackets(d1), resolution_brackets(d2)) {
                (Some(a), Some(b)) => check("resolution brackets", a, b),
                _ => None,
            }
        })
    })
}

struct Node {
    diagram: Diagram,
    parent: usize,
    site: Option<MoveSite>,
    depth: usize,
}

struct Side {
    nodes: Vec<Node>,
    index: HashMap<Vec<u8>, usize>,
    frontier: Vec<usize>,
    levels: usize,
}

impl Side {
    fn new(d: &Diagram) -> Self {
        Side {
            nodes: vec![Node {
                diagram: d.clone(),
                parent: usize::MAX,
                site: None,
                depth: 0,
            }],
            index: HashMap::from([(d.canonical_code(), 0)]),
            frontier: vec![0],
            levels: 0,
        }
    }

    fn path(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![i];
        while self.nodes[i].parent != usize::MAX {
            i = self.nodes[i].parent;
            out.push(i);
        }
        out.reverse();
        out
    }
}

const CHUNK: usize = 64;

type Child = (MoveSite, Diagram, Vec<u8>);

fn children(d: &Diagram, b: &SearchBounds) -> Vec<Child> {
    let ch = d.ch_index() as i64;
    find_moves(d, &b.kinds)
        .into_iter()
        .filter(|s| ch + s.ch_delta() <= b.max_ch as i64)
        .filter_map(|s| {
            let next = apply_move(d, &s).ok()?;
            let code = next.canonical_code();
            Some((s, next, code))
        })
        .collect()
}

fn expand_chunk(diagrams: &[&Diagram], b: &SearchBounds) -> Vec<Vec<Child>> {
    if b.threads <= 1 || diagrams.len() < 2 {
        return diagrams.iter().map(|d| children(d, b)).collect();
    }
    let per = diagrams.len().div_ceil(b.threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = diagrams
            .chunks(per)
            .map(|part| scope.spawn(move || part.iter().map(|d| children(d, b)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Site on `x` that turns it into a diagram with code `target`.
fn step_towards(x: &Diagram, kind: MoveKind, dir: Direction, target: &[u8]) -> Option<(MoveSite, Diagram)> {
    find_moves(x, &[kind])
        .into_iter()
        .filter(|s| s.direction == dir)
        .find_map(|s| {
            let y = apply_move(x, &s).ok()?;
            (y.canonical_code() == target).then_some((s, y))
        })
}

/// Trace from `d1` through the forward path to the meeting code, then
/// back along the backward path to `d2`.
fn certificate(d1: &Diagram, fwd: &Side, fi: usize, bwd: &Side, bi: usize) -> Result<MoveTrace, SearchError> {
    let mut trace = MoveTrace::new(d1);
    let mut cur = d1.clone();
    for &k in fwd.path(fi).iter().skip(1) {
        let site = fwd.nodes[k].site.clone().expect("non-root");
        cur = fwd.nodes[k].diagram.clone();
        trace.push(site, cur.canonical_code());
    }
    let back = bwd.path(bi);
    for w in back.windows(2).rev() {
        let (parent, child) = (w[0], w[1]);
        let site = bwd.nodes[child].site.as_ref().expect("non-root");
        let target = bwd.nodes[parent].diagram.canonical_code();
        let (s, next) = step_towards(&cur, site.kind, site.direction.flip(), &target)
            .ok_or(SearchError::Replay(MoveError::StaleSite("no inverse step".into())))?;
        cur = next;
        trace.push(s, target);
    }
    Ok(trace)
}

/// Bidirectional search from `d1` and `d2`.
pub fn search_equivalence(d1: &Diagram, d2: &Diagram, b: &SearchBounds) -> Result<SearchOutcome, SearchError> {
    search_with_stats(d1, d2, b).map(|r| r.outcome)
}

pub fn search_with_stats(d1: &Diagram, d2: &Diagram, b: &SearchBounds) -> Result<SearchReport, SearchError> {
    let needed = d1.ch_index().max(d2.ch_index());
    if b.max_ch < needed {
        return Err(SearchError::BoundsTooTight {
            max_ch: b.max_ch,
            needed,
        });
    }
    let sphere = |d: &Diagram| cap_invariants(d).per_component.iter().all(|c| c.is_sphere());
    let outside_hypothesis = !(sphere(d1) && sphere(d2));
    let report = |outcome, nodes, repeated| SearchReport {
        outcome,
        nodes,
        repeated,
        outside_hypothesis,
    };
    if let Some(w) = distinguish_with(d1, d2, &b.kinds) {
        return Ok(report(SearchOutcome::Distinguished(w), 0, 0));
    }
    let mut sides = [Side::new(d1), Side::new(d2)];
    if let Some(&j) = sides[1].index.get(&d1.canonical_code()) {
        let trace = certificate(d1, &sides[0], 0, &sides[1], j)?;
        return Ok(report(SearchOutcome::Equivalent(trace), 0, 0));
    }
    let mut nodes = 0;
    let mut expanded_codes: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut repeated = 0;
    loop {
        if sides[0].levels + sides[1].levels >= b.max_moves {
            break;
        }
        let live: Vec<usize> = (0..2).filter(|&s| !sides[s].frontier.is_empty()).collect();
        let Some(&s) = live.iter().min_by_key(|&&s| (sides[s].frontier.len(), s)) else {
            break;
        };
        let other = 1 - s;
        let frontier = std::mem::take(&mut sides[s].frontier);
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            if nodes >= b.max_nodes {
                return Ok(report(SearchOutcome::Unknown { nodes }, nodes, repeated));
            }
            let take = chunk.len().min(b.max_nodes - nodes);
            let chunk = &chunk[..take];
            let diagrams: Vec<&Diagram> = chunk.iter().map(|&i| &sides[s].nodes[i].diagram).collect();
            for &i in chunk {
                let c = sides[s].nodes[i].diagram.canonical_code();
                let e = expanded_codes.entry(c).or_insert(0);
                *e += 1;
                if *e > 1 {
                    repeated += 1;
                }
            }
            let kids = expand_chunk(&diagrams, b);
            nodes += chunk.len();
            for (&i, list) in chunk.iter().zip(kids) {
                let depth = sides[s].nodes[i].depth + 1;
                for (site, diagram, code) in list {
                    if sides[s].index.contains_key(&code) {
                        continue;
                    }
                    let meet = sides[other].index.get(&code).copied();
                    let k = sides[s].nodes.len();
                    sides[s].nodes.push(Node {
                        diagram,
                        parent: i,
                        site: Some(site),
                        depth,
                    });
                    sides[s].index.insert(code, k);
                    if let Some(j) = meet {
                        let (fi, bi) = if s == 0 { (k, j) } else { (j, k) };
                        let trace = certificate(d1, &sides[0], fi, &sides[1], bi)?;
                        trace.replay(d1).map_err(SearchError::Replay)?;
                        if trace.steps.last().map_or(trace.start.clone(), |t| t.code.clone())
                            != d2.canonical_code()
                        {
                            return Err(SearchError::Replay(MoveError::ReplayMismatch { step: trace.len() }));
                        }
                        return Ok(report(SearchOutcome::Equivalent(trace), nodes, repeated));
                    }
                    next.push(k);
                }
            }
        }
        sides[s].frontier = next;
        sides[s].levels += 1;
    }
    Ok(report(SearchOutcome::Unknown { nodes }, nodes, repeated))
}
