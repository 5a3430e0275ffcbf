//! Loader for the move pattern table.

use std::collections::HashMap;
use std::sync::OnceLock;

use thiserror::Error;

use super::MoveKind;
use crate::diagram::rewrite::{End, TVertex, Tangle};
use crate::diagram::VertexKind;
use crate::util::UnionFind;

const TABLE: &str = include_str!("../../data/moves.mgdp");

#[derive(Clone, Debug)]
pub(crate) struct Rule {
    pub kind: MoveKind,
    pub variant: u8,
    pub lhs: Pattern,
    pub rhs: Pattern,
}

impl Rule {
    pub fn side(&self, forward: bool) -> (&Pattern, &Pattern) {
        if forward {
            (&self.lhs, &self.rhs)
        } else {
            (&self.rhs, &self.lhs)
        }
    }
}

/// One side of a rule with the lookups the matcher needs.
#[derive(Clone, Debug)]
pub(crate) struct Pattern {
    pub tangle: Tangle,
    /// Offset of each vertex's first dart in vertex-major numbering.
    pub start: Vec<usize>,
    /// Partner dart of each internal dart.
    pub partner: Vec<Option<usize>>,
    /// Pattern dart sitting at each slot.
    pub slot_dart: Vec<usize>,
    /// One pattern dart per face that avoids the boundary.
    pub internal_faces: Vec<usize>,
}

impl Pattern {
    pub fn dart_count(&self) -> usize {
        self.partner.len()
    }

    pub fn vertex_of(&self, k: usize) -> usize {
        self.start.partition_point(|&s| s <= k) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{kind} variant {variant}: {msg}")]
    Invalid {
        kind: MoveKind,
        variant: u8,
        msg: String,
    },
}

fn parse_side(text: &str, line: usize) -> Result<Tangle, TableError> {
    let err = |msg: String| TableError::Syntax { line, msg };
    let mut vertices = Vec::new();
    let mut max_slot = 0;
    for stmt in text.split(';') {
        let toks: Vec<&str> = stmt.split_whitespace().collect();
        let (kw, ends) = toks
            .split_first()
            .ok_or_else(|| err("empty vertex statement".into()))?;
        let (kind, deg) = match *kw {
            "x" => (VertexKind::Crossing, 4),
            "m" => (VertexKind::Marked, 4),
            "s" => (VertexKind::Loop, 2),
            k => return Err(err(format!("unknown vertex `{k}`"))),
        };
        if ends.len() != deg {
            return Err(err(format!("`{kw}` takes {deg} ends")));
        }
        let ends = ends
            .iter()
            .map(|t| {
                let (head, num) = t.split_at(1);
                let k: usize = num.parse().map_err(|_| err(format!("bad end `{t}`")))?;
                match head {
                    "b" if k >= 1 => {
                        max_slot = max_slot.max(k);
                        Ok(End::Slot(k - 1))
                    }
                    "i" => Ok(End::Internal(k as u32)),
                    _ => Err(err(format!("bad end `{t}`"))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        vertices.push(TVertex { kind, ends });
    }
    Ok(Tangle {
        vertices,
        slots: max_slot,
    })
}

/// Checks the side is a tangle in a disk and precomputes matcher data.
fn compile(t: Tangle) -> Result<Pattern, String> {
    let mut start = Vec::new();
    let mut ends = Vec::new();
    let mut owner = Vec::new();
    for (v, tv) in t.vertices.iter().enumerate() {
        start.push(ends.len());
        for e in &tv.ends {
            ends.push(*e);
            owner.push(v);
        }
    }
    let n = ends.len();
    let mut partner = vec![None; n];
    let mut slot_dart = vec![usize::MAX; t.slots];
    let mut by_id: HashMap<u32, Vec<usize>> = HashMap::new();
    for (k, e) in ends.iter().enumerate() {
        match *e {
            End::Slot(i) => {
                if slot_dart[i] != usize::MAX {
                    return Err(format!("slot b{} used twice", i + 1));
                }
                slot_dart[i] = k;
            }
            End::Internal(id) => by_id.entry(id).or_default().push(k),
        }
    }
    if let Some(i) = slot_dart.iter().position(|&s| s == usize::MAX) {
        return Err(format!("slot b{} unused", i + 1));
    }
    for (id, ks) in &by_id {
        if ks.len() != 2 {
            return Err(format!("internal edge i{id} used {} times", ks.len()));
        }
        partner[ks[0]] = Some(ks[1]);
        partner[ks[1]] = Some(ks[0]);
    }
    let deg = |k: usize| t.vertices[owner[k]].ends.len();
    let sigma = |k: usize| {
        let v = owner[k];
        start[v] + (k - start[v] + 1) % deg(k)
    };
    // close the disk with an outer vertex whose darts run clockwise
    let s = t.slots;
    let outer = |i: usize| n + i;
    let mate = |k: usize| -> usize {
        if k >= n {
            return slot_dart[k - n];
        }
        match (partner[k], ends[k]) {
            (Some(p), _) => p,
            (None, End::Slot(i)) => outer(i),
            _ => unreachable!(),
        }
    };
    let sig = |k: usize| -> usize {
        if k >= n {
            let i = k - n;
            n + (i + s - 1) % s
        } else {
            sigma(k)
        }
    };
    let total = n + s;
    let mut seen = vec![false; total];
    let mut faces = 0;
    let mut internal_faces = Vec::new();
    for k0 in 0..total {
        if seen[k0] {
            continue;
        }
        faces += 1;
        let mut k = k0;
        let mut inner = true;
        while !seen[k] {
            seen[k] = true;
            if k >= n {
                inner = false;
            }
            k = sig(mate(k));
        }
        if inner {
            internal_faces.push(k0);
        }
    }
    let verts = t.vertices.len() + 1;
    let edges = total / 2;
    if verts as i64 - edges as i64 + faces as i64 != 2 {
        return Err("side is not a tangle in a disk".into());
    }
    let mut uf = UnionFind::new(t.vertices.len() + 1);
    for k in 0..n {
        let other = match partner[k] {
            Some(p) => owner[p],
            None => t.vertices.len(),
        };
        uf.union(owner[k], other);
    }
    if uf.count_sets() != 1 {
        return Err("closed piece inside the disk".into());
    }
    Ok(Pattern {
        tangle: t,
        start,
        partner,
        slot_dart,
        internal_faces,
    })
}

pub fn parse_table(text: &str) -> Result<Vec<Rule>, TableError> {
    let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header = None;
    let mut rules = Vec::new();
    let mut kind: Option<MoveKind> = None;
    let mut variant = 0u8;
    let mut lhs: Option<Tangle> = None;
    let mut rhs: Option<Tangle> = None;
    let flush = |kind: Option<MoveKind>,
                     variant: u8,
                     lhs: &mut Option<Tangle>,
                     rhs: &mut Option<Tangle>,
                     rules: &mut Vec<Rule>|
     -> Result<(), TableError> {
        if let (Some(k), Some(l), Some(r)) = (kind, lhs.take(), rhs.take()) {
            let bad = |msg: String| TableError::Invalid {
                kind: k,
                variant,
                msg,
            };
            if l.slots != r.slots {
                return Err(bad("sides have different slot counts".into()));
            }
            let ch = |t: &Tangle| t.real_vertices() as i64;
            if ch(&r) - ch(&l) != k.ch_delta() {
                return Err(bad("ch-index change does not match the move".into()));
            }
            rules.push(Rule {
                kind: k,
                variant,
                lhs: compile(l).map_err(bad)?,
                rhs: compile(r).map_err(bad)?,
            });
        }
        Ok(())
    };
    for (no, raw) in lines {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if header.is_none() {
            if body != "mgdp v1" {
                return Err(TableError::Syntax {
                    line: no,
                    msg: "expected `mgdp v1`".into(),
                });
            }
            header = Some(());
            continue;
        }
        let (kw, rest) = body.split_once(' ').unwrap_or((body, ""));
        match kw {
            "move" => {
                flush(kind, variant, &mut lhs, &mut rhs, &mut rules)?;
                kind = Some(rest.trim().parse().map_err(|_| TableError::Syntax {
                    line: no,
                    msg: format!("unknown move `{rest}`"),
                })?);
                variant = 0;
            }
            "variant" => {
                flush(kind, variant, &mut lhs, &mut rhs, &mut rules)?;
                variant += 1;
            }
            "lhs" => lhs = Some(parse_side(rest, no)?),
            "rhs" => rhs = Some(parse_side(rest, no)?),
            _ => {
                return Err(TableError::Syntax {
                    line: no,
                    msg: format!("unknown record `{kw}`"),
                })
            }
        }
    }
    flush(kind, variant, &mut lhs, &mut rhs, &mut rules)?;
    Ok(rules)
}

pub(crate) fn rules() -> &'static [Rule] {
    static RULES: OnceLock<Vec<Rule>> = OnceLock::new();
    RULES.get_or_init(|| parse_table(TABLE).expect("shipped move table is valid"))
}

/// Loads and validates the shipped table; returns the number of rules.
pub fn check_shipped_table() -> Result<usize, TableError> {
    parse_table(TABLE).map(|r| r.len())
}
