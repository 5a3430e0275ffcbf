//! Yoshikawa moves: site enumeration, application, inverses, traces.
//!
//! Local pictures live in `data/moves.mgdp`. A side made of real vertices
//! is matched against the diagram vertex by vertex; a side made only of
//! strand pieces is a creating move, located by edge occurrences: a dart
//! `f` stands for the part of its edge next to `f`, with the face of `f`
//! on the tangle's slot-1/slot-2 side.

mod table;
mod trace;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::rewrite::{replace, subdivide, Replacement, SplitHint};
use crate::diagram::{Dart, Diagram, NONE};
use table::{Pattern, Rule};

pub use table::{check_shipped_table, TableError};
pub use trace::{MoveTrace, TraceStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    O1,
    O2,
    O3,
    O4,
    O5,
    O6a,
    O6b,
    O7,
    O8,
}

impl MoveKind {
    pub const ALL: [MoveKind; 9] = [
        MoveKind::O1,
        MoveKind::O2,
        MoveKind::O3,
        MoveKind::O4,
        MoveKind::O5,
        MoveKind::O6a,
        MoveKind::O6b,
        MoveKind::O7,
        MoveKind::O8,
    ];
    pub const TYPE_I: [MoveKind; 5] = [
        MoveKind::O1,
        MoveKind::O2,
        MoveKind::O3,
        MoveKind::O4,
        MoveKind::O5,
    ];
    pub const TYPE_II: [MoveKind; 4] = [MoveKind::O6a, MoveKind::O6b, MoveKind::O7, MoveKind::O8];
    /// The moves available on link diagrams.
    pub const REIDEMEISTER: [MoveKind; 3] = [MoveKind::O1, MoveKind::O2, MoveKind::O3];

    pub fn is_type_i(self) -> bool {
        Self::TYPE_I.contains(&self)
    }

    /// Change of crossings plus marked vertices under the forward move.
    pub fn ch_delta(self) -> i64 {
        match self {
            MoveKind::O1 | MoveKind::O6a | MoveKind::O6b => 1,
            MoveKind::O2 => 2,
            _ => 0,
        }
    }

    /// ASCII name used in files.
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::O1 => "O1",
            MoveKind::O2 => "O2",
            MoveKind::O3 => "O3",
            MoveKind::O4 => "O4",
            MoveKind::O5 => "O5",
            MoveKind::O6a => "O6a",
            MoveKind::O6b => "O6b",
            MoveKind::O7 => "O7",
            MoveKind::O8 => "O8",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ω{}", &self.name()[1..])
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s
            .strip_prefix('O')
            .or_else(|| s.strip_prefix('o'))
            .or_else(|| s.strip_prefix('Ω'))
            .ok_or_else(|| format!("unknown move `{s}`"))?;
        Self::ALL
            .into_iter()
            .find(|k| &k.name()[1..] == t)
            .ok_or_else(|| format!("unknown move `{s}`"))
    }
}

/// Parses a comma-separated kind list; `all`, `I` and `II` are accepted.
pub fn parse_kinds(s: &str) -> Result<Vec<MoveKind>, String> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "all" => out.extend(MoveKind::ALL),
            "I" => out.extend(MoveKind::TYPE_I),
            "II" => out.extend(MoveKind::TYPE_II),
            p => {
                out.insert(p.parse()?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// A located move. For matched sides `anchors` lists the image of every
/// pattern dart (vertex-major); for creating moves it lists the edge
/// occurrences, and `upper` names (by their lowest dart) the components
/// that end up on the far side of a cut face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub direction: Direction,
    pub variant: u8,
    pub anchors: Vec<Dart>,
    pub upper: Vec<Dart>,
    pub regions: Vec<u32>,
}

impl MoveSite {
    pub fn ch_delta(&self) -> i64 {
        self.kind.ch_delta() * self.direction.sign()
    }

    fn rule(&self) -> Result<&'static Rule, MoveError> {
        table::rules()
            .iter()
            .find(|r| r.kind == self.kind && r.variant == self.variant)
            .ok_or_else(|| MoveError::StaleSite(format!("no variant {} of {}", self.variant, self.kind)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("stale site: {0}")]
    StaleSite(String),
    #[error("no applicable move site")]
    ExhaustedSites,
    #[error("trace step {step}: resulting code differs from the recorded one")]
    ReplayMismatch { step: usize },
    #[error("trace format: {0}")]
    TraceFormat(String),
    #[error("rewrite failed: {0}")]
    Invalid(String),
}

/// Number of faces carrying each region label.
fn faces_per_label(d: &Diagram) -> HashMap<u32, usize> {
    let mut m = HashMap::new();
    for walk in d.faces() {
        *m.entry(d.region_label(walk[0])).or_insert(0) += 1;
    }
    m
}

/// Matches `p` with pattern vertex 0 on diagram vertex `v0` turned by `off`.
fn match_at(
    d: &Diagram,
    p: &Pattern,
    v0: usize,
    off0: usize,
    per_label: &HashMap<u32, usize>,
) -> Option<Vec<Dart>> {
    let tv = &p.tangle.vertices;
    if d.kind(v0) != tv[0].kind {
        return None;
    }
    let mut map: Vec<Option<(usize, usize)>> = vec![None; tv.len()];
    map[0] = Some((v0, off0));
    let mut stack = vec![0usize];
    while let Some(a) = stack.pop() {
        let (va, oa) = map[a].expect("mapped");
        for i in 0..tv[a].ends.len() {
            let Some(q) = p.partner[p.start[a] + i] else {
                continue;
            };
            let x = d.first_dart(va) + ((i + oa) % 4) as u32;
            let y = d.mate(x);
            let b = p.vertex_of(q);
            let j = q - p.start[b];
            let w = d.vertex_of(y);
            if d.kind(w) != tv[b].kind {
                return None;
            }
            let o = (d.pos(y) + 4 - j) % 4;
            if !o.is_multiple_of(2) {
                return None;
            }
            match map[b] {
                Some((wb, ob)) => {
                    if wb != w || ob != o {
                        return None;
                    }
                }
                None => {
                    if map.iter().flatten().any(|&(u, _)| u == w) {
                        return None;
                    }
                    map[b] = Some((w, o));
                    stack.push(b);
                }
            }
        }
    }
    let mut anchors = Vec::with_capacity(p.dart_count());
    for (b, v) in tv.iter().enumerate() {
        let (w, o) = map[b]?;
        for i in 0..v.ends.len() {
            anchors.push(d.first_dart(w) + ((i + o) % 4) as u32);
        }
    }
    for &k in &p.internal_faces {
        if per_label[&d.region_label(anchors[k])] != 1 {
            return None;
        }
    }
    Some(anchors)
}

fn strand_count(p: &Pattern) -> usize {
    p.tangle.vertices.len()
}

/// Other components sharing the region of face `f`, by lowest dart.
fn region_mates(d: &Diagram, f: Dart) -> Vec<Dart> {
    let label = d.region_label(f);
    let own = d.comp_of_dart(f);
    let mut lowest: HashMap<usize, Dart> = HashMap::new();
    for x in 0..d.num_darts() as u32 {
        let c = d.comp_of_dart(x);
        if c != own {
            let e = lowest.entry(c).or_insert(x);
            *e = (*e).min(x);
        }
    }
    let mut out: Vec<Dart> = d
        .faces()
        .iter()
        .filter(|w| d.region_label(w[0]) == label && d.comp_of_dart(w[0]) != own)
        .map(|w| lowest[&d.comp_of_dart(w[0])])
        .collect();
    out.sort_unstable();
    out
}

const MAX_SPLIT_CHOICES: usize = 6;

fn creating_sites(d: &Diagram, rule: &Rule, dir: Direction, p: &Pattern, out: &mut Vec<MoveSite>) {
    let n = d.num_darts() as u32;
    let site = |anchors: Vec<Dart>, upper: Vec<Dart>| MoveSite {
        kind: rule.kind,
        direction: dir,
        variant: rule.variant,
        regions: vec![d.region_label(anchors[0])],
        anchors,
        upper,
    };
    match strand_count(p) {
        1 => {
            for f in 0..n {
                out.push(site(vec![f], vec![]));
            }
        }
        2 => {
            for f in 0..n {
                for g in f..n {
                    if d.region_label(f) != d.region_label(g) {
                        continue;
                    }
                    if d.face_of(f) != d.face_of(g) {
                        out.push(site(vec![f, g], vec![]));
                        continue;
                    }
                    let others = region_mates(d, f);
                    let m = others.len().min(MAX_SPLIT_CHOICES);
                    for mask in 0..1usize << m {
                        let upper = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| others[i]).collect();
                        out.push(site(vec![f, g], upper));
                    }
                }
            }
        }
        _ => unreachable!("creating sides have one or two strands"),
    }
}

/// All sites of the requested kinds, both directions, in a fixed order.
pub fn find_moves(d: &Diagram, kinds: &[MoveKind]) -> Vec<MoveSite> {
    find_sites(d, kinds, true)
}

/// As [`find_moves`], optionally skipping the creating sides.
pub(crate) fn find_sites(d: &Diagram, kinds: &[MoveKind], creating: bool) -> Vec<MoveSite> {
    let per_label = faces_per_label(d);
    let mut out = Vec::new();
    for rule in table::rules().iter().filter(|r| kinds.contains(&r.kind)) {
        for dir in [Direction::Forward, Direction::Backward] {
            let (p, _) = rule.side(dir == Direction::Forward);
            if p.tangle.is_strands() {
                if creating {
                    creating_sites(d, rule, dir, p, &mut out);
                }
                continue;
            }
            let mut seen = BTreeSet::new();
            for v0 in 0..d.num_nodes() {
                for off in [0, 2] {
                    if let Some(anchors) = match_at(d, p, v0, off, &per_label) {
                        let mut key = anchors.clone();
                        key.sort_unstable();
                        if !seen.insert(key) {
                            continue;
                        }
                        let mut regions: Vec<u32> =
                            anchors.iter().map(|&x| d.region_label(x)).collect();
                        regions.sort_unstable();
                        regions.dedup();
                        out.push(MoveSite {
                            kind: rule.kind,
                            direction: dir,
                            variant: rule.variant,
                            anchors,
                            upper: vec![],
                            regions,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Applies a site; also returns the final darts of the inserted tangle.
fn apply_tracked(d: &Diagram, site: &MoveSite) -> Result<(Diagram, Vec<Dart>), MoveError> {
    let rule = site.rule()?;
    let (p, rep) = rule.side(site.direction == Direction::Forward);
    let stale = |m: &str| MoveError::StaleSite(m.to_string());
    let n = d.num_darts() as u32;
    if site.anchors.iter().chain(&site.upper).any(|&x| x >= n) {
        return Err(stale("dart out of range"));
    }
    let (work, removed, pattern_darts, split) = if p.tangle.is_strands() {
        let occ = &site.anchors;
        if occ.len() != strand_count(p) {
            return Err(stale("wrong number of occurrences"));
        }
        let mut split = None;
        if occ.len() == 2 {
            let (f, g) = (occ[0], occ[1]);
            if d.region_label(f) != d.region_label(g) {
                return Err(stale("occurrences in different regions"));
            }
            if d.face_of(f) == d.face_of(g) {
                let others = region_mates(d, f);
                if site.upper.iter().any(|u| !others.contains(u)) {
                    return Err(stale("upper component not in the region"));
                }
                split = Some(SplitHint {
                    lower_slot: 1,
                    upper_slot: 3,
                    upper: site.upper.clone(),
                });
            } else if !site.upper.is_empty() {
                return Err(stale("no face is cut"));
            }
        }
        let (work, temps) = subdivide(d, occ);
        let darts: Vec<Dart> = temps
            .iter()
            .flat_map(|&t| work.darts_of(t))
            .collect();
        (work, temps, darts, split)
    } else {
        let v0 = d.vertex_of(site.anchors[0]);
        let off = d.pos(site.anchors[0]);
        let found = match_at(d, p, v0, off, &faces_per_label(d));
        if found.as_deref() != Some(&site.anchors[..]) {
            return Err(stale("pattern no longer matches"));
        }
        let mut removed: Vec<usize> = site.anchors.iter().map(|&x| d.vertex_of(x)).collect();
        removed.dedup();
        (d.clone(), removed, site.anchors.clone(), None)
    };
    let slots: Vec<Dart> = p.slot_dart.iter().map(|&k| pattern_darts[k]).collect();
    let reps = [Replacement {
        removed,
        slots,
        tangle: &rep.tangle,
    }];
    let (out, mut darts) =
        replace(&work, &reps, split.as_ref()).map_err(|e| MoveError::Invalid(e.to_string()))?;
    Ok((out, darts.remove(0)))
}

pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram, MoveError> {
    apply_tracked(d, site).map(|(x, _)| x)
}

/// A site on `after = apply_move(before, site)` that restores `before`.
pub fn inverse(site: &MoveSite, before: &Diagram, after: &Diagram) -> Result<MoveSite, MoveError> {
    let rule = site.rule()?;
    let (_, rep) = rule.side(site.direction == Direction::Forward);
    let target = before.canonical_code();
    if !rep.tangle.is_strands() {
        let (again, darts) = apply_tracked(before, site)?;
        if again.canonical_code() != after.canonical_code() || darts.contains(&NONE) {
            return Err(MoveError::StaleSite("`after` is not the result of the site".into()));
        }
        let mut regions: Vec<u32> = darts.iter().map(|&x| after.region_label(x)).collect();
        regions.sort_unstable();
        regions.dedup();
        return Ok(MoveSite {
            kind: site.kind,
            direction: site.direction.flip(),
            variant: site.variant,
            anchors: darts,
            upper: vec![],
            regions,
        });
    }
    find_moves(after, &[site.kind])
        .into_iter()
        // the occurrence order decides which variant draws the same picture
        .filter(|s| s.direction != site.direction)
        .find(|s| apply_move(after, s).map(|r| r.canonical_code() == target).unwrap_or(false))
        .ok_or_else(|| MoveError::StaleSite("no inverse site found".into()))
}

/// Applies `k` uniformly chosen sites. With `max_ch`, sites that would
/// exceed it are skipped.
pub fn scramble(
    d: &Diagram,
    k: usize,
    seed: u64,
    kinds: &[MoveKind],
    max_ch: Option<usize>,
) -> Result<(Diagram, MoveTrace), MoveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut trace = MoveTrace::new(d);
    for _ in 0..k {
        let ch = cur.ch_index() as i64;
        let sites: Vec<MoveSite> = find_moves(&cur, kinds)
            .into_iter()
            .filter(|s| max_ch.is_none_or(|m| ch + s.ch_delta() <= m as i64))
            .collect();
        if sites.is_empty() {
            return Err(MoveError::ExhaustedSites);
        }
        let site = sites[rng.gen_range(0..sites.len())].clone();
        cur = apply_move(&cur, &site)?;
        trace.push(site, cur.canonical_code());
    }
    Ok((cur, trace))
}
