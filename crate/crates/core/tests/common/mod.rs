#![allow(dead_code)]

use std::collections::BTreeMap;

use mgk::codec::{FaceToken, MgdDocument, Statement};
use mgk::{parse_diagram, scramble, Bracket, Diagram, MoveKind, VertexKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LOOP: &str = "mgd v1\nloop 1\n";
pub const TWO_LOOPS: &str = "mgd v1\nloop 1\nloop 2\n";
pub const KINK: &str = "mgd v1\nx 1 1 2 2\n";
pub const BIGON: &str = "mgd v1\nm 1 2 3 4\nm 3 2 1 4\n";
pub const MONOGON_M: &str = "mgd v1\nm 1 1 2 2\n";
pub const TREFOIL: &str = "mgd v1\nx 1 5 2 4\nx 3 1 4 6\nx 5 3 6 2\n";
pub const HOPF: &str = "mgd v1\nx 4 1 3 2\nx 2 3 1 4\n";
pub const FIGURE8: &str = "mgd v1\nx 4 2 5 1\nx 8 6 1 5\nx 6 3 7 4\nx 2 7 3 8\n";
pub const PROJECTIVE: &str = "mgd v1\nm 1 2 3 4\nx 1 4 3 2\n";
pub const TREFOIL_MARKED: &str = "mgd v1\nx 1 5 2 4\nx 3 1 4 6\nx 5 3 8 2\nm 6 7 7 8\n";
/// Unknot diagram with no R1/R2 reductions that a 10-node search does
/// not untangle.
pub const HARD_UNKNOT_14: &str = include_str!("../data/hard_unknot14.mgd");

pub fn diag(text: &str) -> Diagram {
    parse_diagram(text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

pub const MARKED_SEEDS: [&str; 6] = [LOOP, TWO_LOOPS, BIGON, MONOGON_M, PROJECTIVE, KINK];

/// Scrambles of the marked seeds with at most 10 crossings and 6 marked
/// vertices.
pub fn marked_corpus(n: usize, seed: u64) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<Diagram> = MARKED_SEEDS.iter().map(|t| diag(t)).collect();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let d = &seeds[out.len() % seeds.len()];
        let k = rng.gen_range(1..=8);
        let Ok((e, _)) = scramble(d, k, rng.gen(), &MoveKind::ALL, Some(10)) else {
            continue;
        };
        if e.crossing_count() <= 10 && e.marked_count() <= 6 {
            out.push(e);
        }
    }
    out
}

/// Reidemeister scrambles of `seed` with at most `max_crossings`.
pub fn link_corpus(seed_text: &str, n: usize, max_crossings: usize, seed: u64) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = diag(seed_text);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=10);
            scramble(&d, k, rng.gen(), &MoveKind::REIDEMEISTER, Some(max_crossings))
                .expect("creating moves always apply")
                .0
        })
        .collect()
}

/// State sum over all `2^n` smoothings, loops counted by following darts.
/// Unknot value `-A^2 - A^-2`.
pub fn brute_bracket(d: &Diagram) -> BTreeMap<i32, i64> {
    let crossings: Vec<usize> = (0..d.num_nodes()).filter(|&v| d.kind(v) == VertexKind::Crossing).collect();
    assert!(d.marked_count() == 0);
    let n = d.num_darts();
    let mut total = BTreeMap::new();
    for state in 0..1u64 << crossings.len() {
        let mut partner = vec![u32::MAX; n];
        let mut exp = 0i32;
        for (i, &v) in crossings.iter().enumerate() {
            let f = d.first_dart(v);
            let pairs = if state >> i & 1 == 0 {
                exp += 1;
                [(0, 1), (2, 3)]
            } else {
                exp -= 1;
                [(1, 2), (3, 0)]
            };
            for (a, b) in pairs {
                partner[(f + a) as usize] = f + b;
                partner[(f + b) as usize] = f + a;
            }
        }
        // free loops: their two darts are mates, partner them to each other
        for v in 0..d.num_nodes() {
            if d.kind(v) == VertexKind::Loop {
                let f = d.first_dart(v);
                partner[f as usize] = f + 1;
                partner[f as usize + 1] = f;
            }
        }
        let mut seen = vec![false; n];
        let mut loops = 0u32;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                let y = d.mate(x as u32) as usize;
                seen[y] = true;
                x = partner[y] as usize;
            }
        }
        // (-A^2 - A^-2)^loops * A^exp
        let mut term: BTreeMap<i32, i64> = BTreeMap::from([(exp, 1)]);
        for _ in 0..loops {
            let mut next = BTreeMap::new();
            for (&e, &c) in &term {
                *next.entry(e + 2).or_insert(0) -= c;
                *next.entry(e - 2).or_insert(0) -= c;
            }
            term = next;
        }
        for (e, c) in term {
            *total.entry(e).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

pub fn as_map(p: &Bracket) -> BTreeMap<i32, i64> {
    p.terms().map(|(e, &c)| (e, c)).collect()
}

/// Renames edge ids. With `shuffle`, also turns vertices by a half turn and
/// permutes the statements; only sound for connected diagrams, since the
/// default placement reads the first dart of each component.
pub fn relabel(doc: &MgdDocument, shuffle: bool, rng: &mut impl Rng) -> MgdDocument {
    let mut ids: Vec<u32> = Vec::new();
    for st in &doc.statements {
        match st {
            Statement::Crossing(e) | Statement::Marked(e) => ids.extend(e),
            Statement::Loop(e) => ids.push(*e),
            Statement::Place { .. } => {}
        }
    }
    ids.sort_unstable();
    ids.dedup();
    let mut fresh: Vec<u32> = (1..=1000).collect();
    fresh.shuffle(rng);
    let map: BTreeMap<u32, u32> = ids.iter().copied().zip(fresh).collect();
    let tok = |t: &FaceToken| FaceToken {
        edge: map[&t.edge],
        side: t.side,
    };
    let turn = |e: &[u32; 4], half: bool| {
        let r = e.map(|x| map[&x]);
        if half && shuffle {
            [r[2], r[3], r[0], r[1]]
        } else {
            r
        }
    };
    let mut statements: Vec<Statement> = doc
        .statements
        .iter()
        .map(|st| match st {
            Statement::Crossing(e) => Statement::Crossing(turn(e, rng.gen())),
            Statement::Marked(e) => Statement::Marked(turn(e, rng.gen())),
            Statement::Loop(e) => Statement::Loop(map[e]),
            Statement::Place { component, face, own } => Statement::Place {
                component: *component,
                face: tok(face),
                own: own.as_ref().map(tok),
            },
        })
        .collect();
    if shuffle {
        statements.shuffle(rng);
    }
    MgdDocument {
        version: doc.version,
        statements,
    }
}
