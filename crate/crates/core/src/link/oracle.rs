//! Three-valued unlink oracle: greedy Reidemeister reduction, a bracket
//! refutation, then a breadth-limited search.

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use super::{component_count, kauffman_bracket_with_cap, LinkDiagram};
use crate::diagram::Diagram;
use crate::moves::{apply_move, find_sites, Direction, MoveKind, MoveSite, MoveTrace};
use crate::poly::BracketPolynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct TrivialityBudget {
    /// Diagrams expanded by the search phase.
    pub max_nodes: usize,
    /// Wall-clock limit; `None` keeps the verdict a function of the input.
    pub max_seconds: Option<f64>,
    /// Temporary crossing increase allowed during search.
    pub extra_crossings: usize,
    pub bracket_cap: usize,
}

impl Default for TrivialityBudget {
    fn default() -> Self {
        TrivialityBudget {
            max_nodes: 100_000,
            max_seconds: Some(5.0),
            extra_crossings: 2,
            bracket_cap: super::DEFAULT_BRACKET_CAP,
        }
    }
}

impl TrivialityBudget {
    pub fn nodes(max_nodes: usize) -> Self {
        TrivialityBudget {
            max_nodes,
            max_seconds: None,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TrivialityVerdict {
    /// Moves taking the input to a crossing-free diagram.
    Trivial(MoveTrace),
    /// Bracket of a diagram Reidemeister-equivalent to the input that no
    /// unlink diagram with that many crossings can have.
    Nontrivial {
        bracket: BracketPolynomial,
        components: usize,
        crossings: usize,
    },
    Unknown { nodes: usize },
}

impl TrivialityVerdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityVerdict::Trivial(_))
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, TrivialityVerdict::Nontrivial { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            TrivialityVerdict::Trivial(_) => "trivial",
            TrivialityVerdict::Nontrivial { .. } => "nontrivial",
            TrivialityVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// True when `bracket = d^n (-A^3)^k` for some `|k| <= crossings`, which
/// every diagram of the `n`-component unlink satisfies.
pub fn unlink_bracket_matches(bracket: &BracketPolynomial, components: usize, crossings: usize) -> bool {
    let unlink = BracketPolynomial::loop_value().pow(components as u32);
    match bracket.framing_ratio(&unlink) {
        Some(k) => k.unsigned_abs() as usize <= crossings,
        None => false,
    }
}

fn reducing(d: &Diagram) -> Option<MoveSite> {
    find_sites(d, &[MoveKind::O1, MoveKind::O2], false)
        .into_iter()
        .find(|s| s.direction == Direction::Backward)
}

/// Applies R1-/R2- while possible, appending to `steps`.
fn greedy(d: &Diagram, steps: &mut Vec<(MoveSite, Vec<u8>)>) -> Diagram {
    let mut cur = d.clone();
    while let Some(site) = reducing(&cur) {
        cur = apply_move(&cur, &site).expect("site was just found");
        steps.push((site, cur.canonical_code()));
    }
    cur
}

/// Sites that do not lower the crossing count: R3, R1+, R2+.
fn widening(d: &Diagram) -> Vec<MoveSite> {
    let mut out: Vec<MoveSite> = find_sites(d, &[MoveKind::O3], false);
    out.extend(
        crate::moves::find_moves(d, &[MoveKind::O1, MoveKind::O2])
            .into_iter()
            .filter(|s| s.direction == Direction::Forward),
    );
    out
}

struct Node {
    diagram: Diagram,
    parent: Option<usize>,
    steps: Vec<(MoveSite, Vec<u8>)>,
}

fn trace_to(l: &Diagram, nodes: &[Node], mut i: usize) -> MoveTrace {
    let mut chunks = Vec::new();
    loop {
        chunks.push(i);
        match nodes[i].parent {
            Some(p) => i = p,
            None => break,
        }
    }
    let mut trace = MoveTrace::new(l);
    for &k in chunks.iter().rev() {
        for (s, c) in &nodes[k].steps {
            trace.push(s.clone(), c.clone());
        }
    }
    trace
}

pub fn is_trivial_unlink(l: &LinkDiagram, budget: &TrivialityBudget) -> TrivialityVerdict {
    let start = Instant::now();
    let mut steps = Vec::new();
    let root = greedy(l, &mut steps);
    let mut nodes = vec![Node {
        diagram: root,
        parent: None,
        steps,
    }];
    if nodes[0].diagram.crossing_count() == 0 {
        return TrivialityVerdict::Trivial(trace_to(l, &nodes, 0));
    }
    {
        let r = &nodes[0].diagram;
        let reduced = LinkDiagram(r.clone());
        if let Ok(b) = kauffman_bracket_with_cap(&reduced, budget.bracket_cap) {
            let n = component_count(r);
            if !unlink_bracket_matches(&b, n, r.crossing_count()) {
                return TrivialityVerdict::Nontrivial {
                    bracket: b,
                    components: n,
                    crossings: r.crossing_count(),
                };
            }
        }
    }
    let bound = nodes[0].diagram.crossing_count() + budget.extra_crossings;
    let mut seen: HashSet<Vec<u8>> = HashSet::from([nodes[0].diagram.canonical_code()]);
    let mut queue = VecDeque::from([0usize]);
    let mut expanded = 0;
    while let Some(i) = queue.pop_front() {
        if expanded >= budget.max_nodes {
            break;
        }
        if let Some(t) = budget.max_seconds {
            if start.elapsed().as_secs_f64() > t {
                break;
            }
        }
        expanded += 1;
        let cur = nodes[i].diagram.clone();
        for site in widening(&cur) {
            let Ok(next) = apply_move(&cur, &site) else {
                continue;
            };
            if next.crossing_count() > bound {
                continue;
            }
            let mut steps = vec![(site, next.canonical_code())];
            let next = greedy(&next, &mut steps);
            if !seen.insert(next.canonical_code()) {
                continue;
            }
            let done = next.crossing_count() == 0;
            nodes.push(Node {
                diagram: next,
                parent: Some(i),
                steps,
            });
            if done {
                return TrivialityVerdict::Trivial(trace_to(l, &nodes, nodes.len() - 1));
            }
            queue.push_back(nodes.len() - 1);
        }
    }
    TrivialityVerdict::Unknown { nodes: expanded }
}
