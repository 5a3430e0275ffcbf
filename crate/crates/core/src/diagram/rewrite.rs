//! Tangle replacement.
//!
//! A replacement removes a set of vertices and glues a tangle into the
//! hole. The removed vertices expose boundary darts `p_1..p_n`, read
//! counterclockwise around the hole; the tangle's slot darts `r_i` take
//! their place and inherit their region labels. Faces that lose all their
//! labelled darts get fresh labels, faces that absorb several labels merge
//! the corresponding regions. Two-valent vertices that are not closed loops
//! are spliced out at the end.

use std::collections::HashMap;

use thiserror::Error;

use super::{Dart, Diagram, VertexKind, NONE};
use crate::util::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum End {
    Slot(usize),
    Internal(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TVertex {
    pub kind: VertexKind,
    pub ends: Vec<End>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Tangle {
    pub vertices: Vec<TVertex>,
    pub slots: usize,
}

impl Tangle {
    pub fn real_vertices(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind != VertexKind::Loop).count()
    }

    pub fn is_strands(&self) -> bool {
        self.real_vertices() == 0
    }
}

pub(crate) struct Replacement<'t> {
    pub removed: Vec<usize>,
    pub slots: Vec<Dart>,
    pub tangle: &'t Tangle,
}

/// Side assignment when a face of one component is cut in two.
pub(crate) struct SplitHint {
    pub lower_slot: usize,
    pub upper_slot: usize,
    /// One dart of every component that goes to the upper side.
    pub upper: Vec<Dart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub(crate) enum RewriteError {
    #[error("rewrite produced an invalid map: {0}")]
    Invalid(String),
}

/// Applies the replacements. Returns the new diagram and, per replacement,
/// the final darts of the tangle's vertices (vertex-major; `NONE` where a
/// strand vertex was spliced away).
pub(crate) fn replace(
    d: &Diagram,
    reps: &[Replacement<'_>],
    split: Option<&SplitHint>,
) -> Result<(Diagram, Vec<Vec<Dart>>), RewriteError> {
    let nv = d.num_nodes();
    let mut removed = vec![false; nv];
    for r in reps {
        for &v in &r.removed {
            removed[v] = true;
        }
    }
    let mut kinds = Vec::new();
    let mut old_to_new = vec![NONE; d.num_darts()];
    let mut next = 0u32;
    for v in 0..nv {
        if removed[v] {
            continue;
        }
        kinds.push(d.kind(v));
        for x in d.darts_of(v) {
            old_to_new[x as usize] = next;
            next += 1;
        }
    }
    let mut slot_new: HashMap<Dart, Dart> = HashMap::new();
    let mut tangle_darts: Vec<Vec<Dart>> = Vec::new();
    let mut internal: Vec<(u32, Dart)> = Vec::new();
    for (ri, r) in reps.iter().enumerate() {
        let mut td = Vec::new();
        for tv in &r.tangle.vertices {
            kinds.push(tv.kind);
            for e in &tv.ends {
                match *e {
                    End::Slot(i) => {
                        slot_new.insert(r.slots[i], next);
                    }
                    End::Internal(id) => internal.push(((ri as u32) << 16 | id, next)),
                }
                td.push(next);
                next += 1;
            }
        }
        tangle_darts.push(td);
    }
    let n = next as usize;
    let mut mate = vec![NONE; n];
    let mut label = vec![NONE; n];
    let lookup = |x: Dart| -> Result<Dart, RewriteError> {
        let y = old_to_new[x as usize];
        if y != NONE {
            return Ok(y);
        }
        slot_new
            .get(&x)
            .copied()
            .ok_or_else(|| RewriteError::Invalid(format!("dart {x} has no image")))
    };
    for x in 0..d.num_darts() as u32 {
        let y = old_to_new[x as usize];
        if y == NONE {
            continue;
        }
        mate[y as usize] = lookup(d.mate(x))?;
        label[y as usize] = d.region_label(x);
    }
    for r in reps {
        for (i, &p) in r.slots.iter().enumerate() {
            let _ = i;
            let y = slot_new[&p];
            mate[y as usize] = lookup(d.mate(p))?;
            label[y as usize] = d.region_label(p);
        }
    }
    internal.sort();
    for pair in internal.chunks(2) {
        match pair {
            [(a, x), (b, y)] if a == b => {
                mate[*x as usize] = *y;
                mate[*y as usize] = *x;
            }
            _ => return Err(RewriteError::Invalid("unpaired internal edge".into())),
        }
    }
    if mate.contains(&NONE) {
        return Err(RewriteError::Invalid("dangling dart".into()));
    }
    let split = split.map(|s| {
        let r0 = &reps[0];
        (
            slot_new[&r0.slots[s.lower_slot]],
            slot_new[&r0.slots[s.upper_slot]],
            s.upper
                .iter()
                .map(|&x| old_to_new[x as usize])
                .collect::<Vec<_>>(),
        )
    });
    let (d2, map) = finish(kinds, mate, label, split)?;
    let tangle_darts = tangle_darts
        .into_iter()
        .map(|td| td.into_iter().map(|x| map[x as usize]).collect())
        .collect();
    Ok((d2, tangle_darts))
}

/// Merges region labels along the new faces, splits a cut region, splices
/// strand vertices, compacts. Returns the diagram and the dart map.
pub(crate) fn finish(
    kinds: Vec<VertexKind>,
    mut mate: Vec<u32>,
    label: Vec<u32>,
    split: Option<(Dart, Dart, Vec<Dart>)>,
) -> Result<(Diagram, Vec<Dart>), RewriteError> {
    let tmp = Diagram::from_parts_unchecked(kinds, mate.clone(), label.clone());
    let mut index: HashMap<u32, usize> = HashMap::new();
    for &l in &label {
        if l != NONE {
            let k = index.len();
            index.entry(l).or_insert(k);
        }
    }
    let nf = tmp.faces().len();
    let mut uf = UnionFind::new(index.len() + nf);
    let mut face_label = vec![NONE as usize; nf];
    for (f, walk) in tmp.faces().iter().enumerate() {
        let mut first = None;
        for &x in walk {
            let l = label[x as usize];
            if l == NONE {
                continue;
            }
            let k = index[&l];
            match first {
                None => first = Some(k),
                Some(f0) => {
                    uf.union(f0, k);
                }
            }
        }
        // fresh label for a face that kept none
        face_label[f] = first.unwrap_or(index.len() + f);
    }
    let mut cls: Vec<usize> = face_label.iter().map(|&k| uf.find(k)).collect();
    let mut key_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (f, walk) in tmp.faces().iter().enumerate() {
        key_faces
            .entry((cls[f], tmp.comp_of_dart(walk[0])))
            .or_default()
            .push(f);
    }
    if key_faces.values().any(|v| v.len() > 1) {
        let (lo, up, kids) =
            split.ok_or_else(|| RewriteError::Invalid("region cut without a split rule".into()))?;
        let (flo, fup) = (tmp.face_of(lo), tmp.face_of(up));
        let old = cls[flo];
        if cls[fup] != old || flo == fup {
            return Err(RewriteError::Invalid("split faces do not share a region".into()));
        }
        let fresh = index.len() + nf + 1;
        cls[fup] = fresh;
        for k in kids {
            let q = tmp.comp_of_dart(k);
            if let Some(fs) = key_faces.get(&(old, q)) {
                for &f in fs {
                    cls[f] = fresh;
                }
            }
        }
        let mut seen = HashMap::new();
        for (f, walk) in tmp.faces().iter().enumerate() {
            if seen.insert((cls[f], tmp.comp_of_dart(walk[0])), f).is_some() {
                return Err(RewriteError::Invalid("region still cut after split".into()));
            }
        }
    }
    let nv = tmp.num_nodes();
    let mut gone = vec![false; nv];
    for v in 0..nv {
        if tmp.kind(v) != VertexKind::Loop {
            continue;
        }
        let u = tmp.first_dart(v);
        let w = u + 1;
        if mate[u as usize] == w {
            continue;
        }
        let (x, y) = (mate[u as usize], mate[w as usize]);
        mate[x as usize] = y;
        mate[y as usize] = x;
        gone[v] = true;
    }
    let mut map = vec![NONE; mate.len()];
    let mut kinds = Vec::new();
    let mut next = 0;
    for v in 0..nv {
        if gone[v] {
            continue;
        }
        kinds.push(tmp.kind(v));
        for x in tmp.darts_of(v) {
            map[x as usize] = next;
            next += 1;
        }
    }
    let mut new_mate = vec![NONE; next as usize];
    let mut new_label = vec![NONE; next as usize];
    let mut canon: HashMap<usize, u32> = HashMap::new();
    for x in 0..mate.len() {
        let y = map[x];
        if y == NONE {
            continue;
        }
        new_mate[y as usize] = map[mate[x] as usize];
        let c = cls[tmp.face_of(x as u32)];
        let k = canon.len() as u32;
        new_label[y as usize] = *canon.entry(c).or_insert(k);
    }
    // labels are renumbered by first appearance in dart order
    let mut order: HashMap<u32, u32> = HashMap::new();
    for l in new_label.iter_mut() {
        let k = order.len() as u32;
        *l = *order.entry(*l).or_insert(k);
    }
    let d = Diagram::from_parts(kinds, new_mate, new_label)
        .map_err(|e| RewriteError::Invalid(e.to_string()))?;
    Ok((d, map))
}

/// Inserts a two-valent vertex `(t_a, t_b)` into each listed edge
/// occurrence; `t_a` points back towards the occurrence's vertex, `t_b`
/// forward. Repeated occurrences insert consecutive vertices. Returns the
/// unchecked intermediate map and the new vertex ids in input order.
pub(crate) fn subdivide(d: &Diagram, occ: &[Dart]) -> (Diagram, Vec<usize>) {
    let n0 = d.num_darts() as u32;
    let nv0 = d.num_nodes();
    let mut kinds = d.kinds().to_vec();
    let mut mate = d.mates().to_vec();
    let mut label = d.region_labels().to_vec();
    let mut per_dart: HashMap<Dart, Vec<usize>> = HashMap::new();
    let mut temps = Vec::new();
    for (i, &f) in occ.iter().enumerate() {
        kinds.push(VertexKind::Loop);
        let a = n0 + 2 * i as u32;
        mate.push(NONE);
        mate.push(NONE);
        label.push(d.region_label(d.mate(f)));
        label.push(d.region_label(f));
        per_dart.entry(f).or_default().push(i);
        temps.push(nv0 + i);
        let _ = a;
    }
    let link = |mate: &mut Vec<u32>, x: Dart, y: Dart| {
        mate[x as usize] = y;
        mate[y as usize] = x;
    };
    let mut done = std::collections::HashSet::new();
    let mut keys: Vec<Dart> = per_dart.keys().copied().collect();
    keys.sort_unstable();
    for f in keys {
        let g = d.mate(f);
        let (f, g) = (f.min(g), f.max(g));
        if !done.insert(f) {
            continue;
        }
        let empty = Vec::new();
        let from_f = per_dart.get(&f).unwrap_or(&empty);
        let from_g = per_dart.get(&g).unwrap_or(&empty);
        let mut cur = f;
        for &i in from_f {
            let a = n0 + 2 * i as u32;
            link(&mut mate, cur, a);
            cur = a + 1;
        }
        for &i in from_g.iter().rev() {
            let a = n0 + 2 * i as u32;
            link(&mut mate, cur, a + 1);
            cur = a;
        }
        if f == g {
            unreachable!("mate is fixed-point free");
        }
        link(&mut mate, cur, g);
    }
    (Diagram::from_parts_unchecked(kinds, mate, label), temps)
}
