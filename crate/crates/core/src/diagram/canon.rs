//! Relabelling-invariant codes.
//!
//! A component is encoded by breadth-first labelling from a start dart:
//! for each dart in label order we record its attribute and the labels of
//! its `sigma` and `mate` images. The code of a rooted connected map
//! determines it, so the minimum over start darts is a complete invariant.
//! Split components are attached through the region tree: a component
//! hanging in a face is encoded from a start dart on that face, and the
//! children of each face are sorted by code.

use std::collections::HashMap;

use super::{Dart, Diagram, VertexKind, NONE};

struct Canon<'a> {
    d: &'a Diagram,
    comp_darts: Vec<Vec<Dart>>,
    comp_faces: Vec<Vec<usize>>,
    by_label: HashMap<u32, Vec<(usize, usize)>>,
    lab: Vec<u32>,
}

fn attr(d: &Diagram, x: Dart) -> u32 {
    let p = d.pos(x) as u32 % 2;
    match d.kind(d.vertex_of(x)) {
        VertexKind::Crossing => p,
        VertexKind::Marked => 2 + p,
        VertexKind::Loop => 4,
    }
}

impl<'a> Canon<'a> {
    fn new(d: &'a Diagram) -> Self {
        let mut comp_darts = vec![Vec::new(); d.component_count()];
        for x in 0..d.num_darts() as u32 {
            comp_darts[d.comp_of_dart(x)].push(x);
        }
        let mut comp_faces = vec![Vec::new(); d.component_count()];
        let mut by_label: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (f, walk) in d.faces().iter().enumerate() {
            let c = d.comp_of_dart(walk[0]);
            comp_faces[c].push(f);
            by_label
                .entry(d.region_label(walk[0]))
                .or_default()
                .push((c, f));
        }
        Canon {
            d,
            comp_darts,
            comp_faces,
            by_label,
            lab: vec![NONE; d.num_darts()],
        }
    }

    /// Breadth-first code from `start`. Gives up as soon as the partial code
    /// exceeds `bound`.
    fn bfs(&mut self, start: Dart, n: usize, bound: Option<&[u32]>) -> Option<(Vec<u32>, Vec<Dart>)> {
        let d = self.d;
        let mut code = Vec::with_capacity(1 + 3 * n);
        let mut order = Vec::with_capacity(n);
        code.push(n as u32);
        self.lab[start as usize] = 0;
        order.push(start);
        let mut less = bound.is_none();
        let mut i = 0;
        let mut ok = true;
        while i < order.len() {
            let x = order[i];
            for y in [d.sigma(x), d.mate(x)] {
                if self.lab[y as usize] == NONE {
                    self.lab[y as usize] = order.len() as u32;
                    order.push(y);
                }
            }
            let words = [attr(d, x), self.lab[d.sigma(x) as usize], self.lab[d.mate(x) as usize]];
            for w in words {
                if !less {
                    let b = bound.expect("bound")[code.len()];
                    if w > b {
                        ok = false;
                        break;
                    }
                    if w < b {
                        less = true;
                    }
                }
                code.push(w);
            }
            if !ok {
                break;
            }
            i += 1;
        }
        for &x in &order {
            self.lab[x as usize] = NONE;
        }
        ok.then_some((code, order))
    }

    fn encode(&mut self, c: usize, entry: Option<usize>) -> Vec<u32> {
        let d = self.d;
        let key = |x: Dart| (attr(d, x), d.faces()[d.face_of(x)].len(), d.faces()[d.face_of(d.mate(x))].len());
        let pool: Vec<Dart> = match entry {
            Some(f) => d.faces()[f].clone(),
            None => self.comp_darts[c].clone(),
        };
        let kmin = pool.iter().map(|&x| key(x)).min().expect("darts");
        let n = self.comp_darts[c].len();
        let mut best: Option<Vec<u32>> = None;
        let mut ties: Vec<Vec<Dart>> = Vec::new();
        for &s in pool.iter().filter(|&&x| key(x) == kmin) {
            if let Some((code, order)) = self.bfs(s, n, best.as_deref()) {
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                    ties.clear();
                }
                ties.push(order);
            }
        }
        let best = best.expect("start dart");
        let has_children = self.comp_faces[c].iter().any(|&f| {
            Some(f) != entry && self.by_label[&d.region_label(d.faces()[f][0])].len() > 1
        });
        if !has_children {
            let mut out = best;
            out.push(0);
            return out;
        }
        let mut full_best: Option<Vec<u32>> = None;
        for order in ties {
            let mut seen = vec![false; d.faces().len()];
            let mut face_order = Vec::new();
            for &x in &order {
                let f = d.face_of(x);
                if !seen[f] {
                    seen[f] = true;
                    face_order.push(f);
                }
            }
            let mut tail = Vec::new();
            let mut groups = 0;
            for (rank, &f) in face_order.iter().enumerate() {
                if Some(f) == entry {
                    continue;
                }
                let label = d.region_label(d.faces()[f][0]);
                let others: Vec<(usize, usize)> = self.by_label[&label]
                    .iter()
                    .copied()
                    .filter(|&(q, _)| q != c)
                    .collect();
                if others.is_empty() {
                    continue;
                }
                let mut kids: Vec<Vec<u32>> =
                    others.into_iter().map(|(q, g)| self.encode(q, Some(g))).collect();
                kids.sort();
                groups += 1;
                tail.push(rank as u32);
                tail.push(kids.len() as u32);
                for k in kids {
                    tail.push(k.len() as u32);
                    tail.extend(k);
                }
            }
            let mut full = best.clone();
            full.push(groups);
            full.extend(tail);
            if full_best.as_ref().is_none_or(|b| full < *b) {
                full_best = Some(full);
            }
        }
        full_best.expect("tie")
    }
}

impl Diagram {
    pub(crate) fn canonical_words(&self) -> Vec<u32> {
        let mut c = Canon::new(self);
        let mut best: Option<Vec<u32>> = None;
        for k in 0..self.component_count() {
            let code = c.encode(k, None);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        let mut out = vec![self.component_count() as u32];
        out.extend(best.expect("non-empty diagram"));
        out
    }

    /// Byte string equal for diagrams that differ only by relabelling
    /// darts, edges and vertices.
    pub fn canonical_code(&self) -> Vec<u8> {
        self.canonical_words()
            .into_iter()
            .flat_map(u32::to_le_bytes)
            .collect()
    }
}
