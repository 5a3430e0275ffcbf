//! Combinatorial-map model of marked graph diagrams.
//!
//! Darts are numbered contiguously per vertex in counterclockwise order.
//! `sigma` is the next dart counterclockwise around a vertex and `mate`
//! the other end of the edge. The face permutation is `sigma . mate`; the
//! orbit of `d` is the face on the right of `d` read as leaving its vertex,
//! so the corner `(sigma_inv(d), d)` lies on `face(d)`.
//!
//! A closed edge without vertices is stored as a two-dart `Loop` vertex
//! whose darts are mates of each other.
//!
//! Split components sit on a common sphere. Each face carries a region
//! label; faces of different components that share a label bound the same
//! region of the sphere. The component/region incidence is a tree.

mod canon;
pub(crate) mod rewrite;
mod validate;

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::codec::{FaceToken, MgdDocument, Side, Statement, FORMAT_VERSION};
use crate::util::UnionFind;

pub use validate::{validate, ValidationReport, Validity};

pub type Dart = u32;

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Crossing,
    Marked,
    Loop,
}

impl VertexKind {
    pub fn degree(self) -> usize {
        match self {
            VertexKind::Loop => 2,
            _ => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("empty diagram")]
    Empty,
    #[error("edge {edge} has {count} endpoints")]
    DanglingDart { edge: u32, count: usize },
    #[error("component {component} is not planar: V - E + F = {euler}")]
    NonPlanar { component: usize, euler: i64 },
    #[error("bad placement: {0}")]
    BadPlacement(String),
}

/// A face of the map together with the components sharing its region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    pub label: u32,
    pub boundary: Vec<Dart>,
    pub component: usize,
    pub contained_components: Vec<usize>,
}

/// Marked graph diagram on the sphere. Link diagrams are the special case
/// without marked vertices.
#[derive(Clone, Debug)]
pub struct Diagram {
    kinds: Vec<VertexKind>,
    first: Vec<u32>,
    vert: Vec<u32>,
    mate: Vec<u32>,
    region: Vec<u32>,
    face: Vec<u32>,
    faces: Vec<Vec<Dart>>,
    comp: Vec<u32>,
    n_comp: usize,
}

pub type MarkedGraphDiagram = Diagram;

impl Diagram {
    /// Assembles a diagram from per-vertex kinds (darts laid out
    /// contiguously), a mate involution and per-dart region labels.
    pub(crate) fn from_parts(
        kinds: Vec<VertexKind>,
        mate: Vec<u32>,
        region: Vec<u32>,
    ) -> Result<Diagram, BuildError> {
        let d = Self::from_parts_unchecked(kinds, mate, region);
        d.check_euler()?;
        Ok(d)
    }

    pub(crate) fn from_parts_unchecked(
        kinds: Vec<VertexKind>,
        mate: Vec<u32>,
        region: Vec<u32>,
    ) -> Diagram {
        let mut first = Vec::with_capacity(kinds.len());
        let mut vert = Vec::with_capacity(mate.len());
        for (v, k) in kinds.iter().enumerate() {
            first.push(vert.len() as u32);
            vert.extend(std::iter::repeat_n(v as u32, k.degree()));
        }
        debug_assert_eq!(vert.len(), mate.len());
        let mut d = Diagram {
            kinds,
            first,
            vert,
            mate,
            region,
            face: Vec::new(),
            faces: Vec::new(),
            comp: Vec::new(),
            n_comp: 0,
        };
        d.trace_faces();
        d.find_components();
        d
    }

    fn trace_faces(&mut self) {
        let n = self.mate.len();
        let mut face = vec![NONE; n];
        let mut faces = Vec::new();
        for s in 0..n as u32 {
            if face[s as usize] != NONE {
                continue;
            }
            let id = faces.len() as u32;
            let mut walk = Vec::new();
            let mut x = s;
            while face[x as usize] == NONE {
                face[x as usize] = id;
                walk.push(x);
                x = self.phi(x);
            }
            faces.push(walk);
        }
        self.face = face;
        self.faces = faces;
    }

    fn find_components(&mut self) {
        let mut uf = UnionFind::new(self.kinds.len());
        for d in 0..self.mate.len() {
            uf.union(self.vert[d] as usize, self.vert[self.mate[d] as usize] as usize);
        }
        let mut id = HashMap::new();
        self.comp = (0..self.kinds.len())
            .map(|v| {
                let r = uf.find(v);
                let next = id.len() as u32;
                *id.entry(r).or_insert(next)
            })
            .collect();
        self.n_comp = id.len();
    }

    fn check_euler(&self) -> Result<(), BuildError> {
        let mut chi = vec![0i64; self.n_comp];
        for v in 0..self.kinds.len() {
            chi[self.comp[v] as usize] += 1;
        }
        for d in 0..self.mate.len() {
            // each edge has two darts
            if (d as u32) < self.mate[d] {
                chi[self.comp_of_dart(d as u32)] -= 1;
            }
        }
        for f in &self.faces {
            chi[self.comp_of_dart(f[0])] += 1;
        }
        match chi.iter().position(|&c| c != 2) {
            Some(component) => Err(BuildError::NonPlanar {
                component,
                euler: chi[component],
            }),
            None => Ok(()),
        }
    }

    /// Builds the map described by a parsed document.
    pub fn build(doc: &MgdDocument) -> Result<Diagram, BuildError> {
        let mut kinds = Vec::new();
        let mut occ: HashMap<u32, Vec<Dart>> = HashMap::new();
        let mut loops = HashSet::new();
        let mut n_darts = 0u32;
        for st in &doc.statements {
            match st {
                Statement::Crossing(e) | Statement::Marked(e) => {
                    kinds.push(if matches!(st, Statement::Crossing(_)) {
                        VertexKind::Crossing
                    } else {
                        VertexKind::Marked
                    });
                    for &id in e {
                        occ.entry(id).or_default().push(n_darts);
                        n_darts += 1;
                    }
                }
                Statement::Loop(id) => {
                    kinds.push(VertexKind::Loop);
                    let o = occ.entry(*id).or_default();
                    o.push(n_darts);
                    o.push(n_darts + 1);
                    if !loops.insert(*id) {
                        return Err(BuildError::DanglingDart {
                            edge: *id,
                            count: o.len(),
                        });
                    }
                    n_darts += 2;
                }
                Statement::Place { .. } => {}
            }
        }
        if kinds.is_empty() {
            return Err(BuildError::Empty);
        }
        let mut mate = vec![NONE; n_darts as usize];
        let mut ids: Vec<_> = occ.iter().collect();
        ids.sort();
        for (&edge, ds) in ids {
            if ds.len() != 2 {
                return Err(BuildError::DanglingDart {
                    edge,
                    count: ds.len(),
                });
            }
            mate[ds[0] as usize] = ds[1];
            mate[ds[1] as usize] = ds[0];
        }
        let mut d = Diagram::from_parts(kinds, mate, vec![0; n_darts as usize])?;
        let token = |t: &FaceToken| -> Result<u32, BuildError> {
            let ds = occ
                .get(&t.edge)
                .ok_or_else(|| BuildError::BadPlacement(format!("unknown edge {}", t.edge)))?;
            Ok(match t.side {
                Side::Right => d.face[ds[0] as usize],
                Side::Left => d.face[d.mate[ds[0] as usize] as usize],
            })
        };
        let mut placed: HashMap<usize, (u32, u32)> = HashMap::new();
        for st in &doc.statements {
            if let Statement::Place {
                component,
                face,
                own,
            } = st
            {
                let k = *component as usize;
                if k == 0 || k >= d.n_comp {
                    return Err(BuildError::BadPlacement(format!(
                        "component {k} cannot be placed"
                    )));
                }
                let target = token(face)?;
                if d.comp_of_face(target) == k {
                    return Err(BuildError::BadPlacement(format!(
                        "component {k} placed into its own face"
                    )));
                }
                let own = match own {
                    Some(t) => token(t)?,
                    None => d.outer_face(k),
                };
                if d.comp_of_face(own) != k {
                    return Err(BuildError::BadPlacement(format!(
                        "face {} is not on component {k}",
                        own
                    )));
                }
                if placed.insert(k, (target, own)).is_some() {
                    return Err(BuildError::BadPlacement(format!("component {k} placed twice")));
                }
            }
        }
        let mut uf = UnionFind::new(d.faces.len());
        let root = d.outer_face(0) as usize;
        for c in 0..d.n_comp {
            let (t, o) = placed.get(&c).copied().unwrap_or((d.outer_face(c), root as u32));
            uf.union(t as usize, o as usize);
        }
        let class: Vec<usize> = (0..d.faces.len()).map(|f| uf.find(f)).collect();
        d.region = d.labels_from_classes(&class)?;
        Ok(d)
    }

    /// Turns a face partition into region labels after checking that it
    /// forms a tree with the components.
    fn labels_from_classes(&self, class: &[usize]) -> Result<Vec<u32>, BuildError> {
        let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
        for (f, &c) in class.iter().enumerate() {
            members.entry(c).or_default().push(f);
        }
        let mut conn = UnionFind::new(self.n_comp);
        let mut links = 0;
        for fs in members.values() {
            let comps: Vec<usize> = fs.iter().map(|&f| self.comp_of_face(f as u32)).collect();
            let uniq: HashSet<_> = comps.iter().collect();
            if uniq.len() != comps.len() {
                return Err(BuildError::BadPlacement(
                    "two faces of one component share a region".into(),
                ));
            }
            for w in comps.windows(2) {
                conn.union(w[0], w[1]);
            }
            links += comps.len() - 1;
        }
        if links != self.n_comp - 1 || (0..self.n_comp).any(|c| conn.find(c) != conn.find(0)) {
            return Err(BuildError::BadPlacement("placement is not a tree".into()));
        }
        let mut label = HashMap::new();
        let mut out = vec![0; self.mate.len()];
        for d in 0..self.mate.len() {
            let c = class[self.face[d] as usize];
            let next = label.len() as u32;
            out[d] = *label.entry(c).or_insert(next);
        }
        Ok(out)
    }

    // ---- accessors ----

    pub fn num_darts(&self) -> usize {
        self.mate.len()
    }

    /// Number of stored vertices, free-loop pseudo-vertices included.
    pub fn num_nodes(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn darts_of(&self, v: usize) -> std::ops::Range<Dart> {
        let f = self.first[v];
        f..f + self.kinds[v].degree() as u32
    }

    pub fn first_dart(&self, v: usize) -> Dart {
        self.first[v]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vert[d as usize] as usize
    }

    pub fn pos(&self, d: Dart) -> usize {
        (d - self.first[self.vert[d as usize] as usize]) as usize
    }

    pub fn mate(&self, d: Dart) -> Dart {
        self.mate[d as usize]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        let v = self.vert[d as usize] as usize;
        let f = self.first[v];
        let deg = self.kinds[v].degree() as u32;
        f + (d - f + 1) % deg
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        let v = self.vert[d as usize] as usize;
        let f = self.first[v];
        let deg = self.kinds[v].degree() as u32;
        f + (d - f + deg - 1) % deg
    }

    /// Dart `k` steps counterclockwise from `d`.
    pub fn rotate(&self, d: Dart, k: usize) -> Dart {
        let v = self.vert[d as usize] as usize;
        let f = self.first[v];
        let deg = self.kinds[v].degree() as u32;
        f + (d - f + k as u32) % deg
    }

    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma(self.mate[d as usize])
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face[d as usize] as usize
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn region_label(&self, d: Dart) -> u32 {
        self.region[d as usize]
    }

    pub(crate) fn region_labels(&self) -> &[u32] {
        &self.region
    }

    pub(crate) fn mates(&self) -> &[u32] {
        &self.mate
    }

    pub fn component_count(&self) -> usize {
        self.n_comp
    }

    pub fn component_of_vertex(&self, v: usize) -> usize {
        self.comp[v] as usize
    }

    pub fn comp_of_dart(&self, d: Dart) -> usize {
        self.comp[self.vert[d as usize] as usize] as usize
    }

    fn comp_of_face(&self, f: u32) -> usize {
        self.comp_of_dart(self.faces[f as usize][0])
    }

    /// Default face of a component: the face on the right of its first dart.
    fn outer_face(&self, c: usize) -> u32 {
        let v = self.comp.iter().position(|&x| x as usize == c).expect("component");
        self.face[self.first[v] as usize]
    }

    pub fn crossing_count(&self) -> usize {
        self.kinds.iter().filter(|&&k| k == VertexKind::Crossing).count()
    }

    pub fn marked_count(&self) -> usize {
        self.kinds.iter().filter(|&&k| k == VertexKind::Marked).count()
    }

    pub fn loop_count(&self) -> usize {
        self.kinds.iter().filter(|&&k| k == VertexKind::Loop).count()
    }

    /// Crossings and marked vertices.
    pub fn vertex_count(&self) -> usize {
        self.crossing_count() + self.marked_count()
    }

    pub fn edge_count(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn ch_index(&self) -> usize {
        self.vertex_count()
    }

    /// Faces in order of their lowest dart, with the components sharing
    /// each face's region.
    pub fn regions(&self) -> Vec<Region> {
        let mut by_label: HashMap<u32, Vec<usize>> = HashMap::new();
        for f in &self.faces {
            by_label
                .entry(self.region[f[0] as usize])
                .or_default()
                .push(self.comp_of_dart(f[0]));
        }
        self.faces
            .iter()
            .enumerate()
            .map(|(id, walk)| {
                let label = self.region[walk[0] as usize];
                let component = self.comp_of_dart(walk[0]);
                let mut contained: Vec<usize> = by_label[&label]
                    .iter()
                    .copied()
                    .filter(|&c| c != component)
                    .collect();
                contained.sort_unstable();
                Region {
                    id,
                    label,
                    boundary: walk.clone(),
                    component,
                    contained_components: contained,
                }
            })
            .collect()
    }

    /// Connected components as standalone diagrams, in order of their first
    /// vertex.
    pub fn components(&self) -> Vec<Diagram> {
        (0..self.n_comp)
            .map(|c| {
                let verts: Vec<usize> =
                    (0..self.kinds.len()).filter(|&v| self.comp[v] as usize == c).collect();
                self.induced(&verts)
            })
            .collect()
    }

    fn induced(&self, verts: &[usize]) -> Diagram {
        let mut map = vec![NONE; self.mate.len()];
        let mut next = 0;
        for &v in verts {
            for d in self.darts_of(v) {
                map[d as usize] = next;
                next += 1;
            }
        }
        let mut mate = vec![NONE; next as usize];
        for &v in verts {
            for d in self.darts_of(v) {
                mate[map[d as usize] as usize] = map[self.mate[d as usize] as usize];
            }
        }
        let kinds = verts.iter().map(|&v| self.kinds[v]).collect();
        let mut d = Diagram::from_parts_unchecked(kinds, mate, vec![0; next as usize]);
        d.region = (0..d.mate.len()).map(|x| d.face[x]).collect();
        d
    }

    /// Emits a document that rebuilds this diagram.
    pub fn to_document(&self) -> MgdDocument {
        let mut edge = vec![0u32; self.mate.len()];
        let mut next = 1;
        let mut statements = Vec::new();
        for v in 0..self.kinds.len() {
            let mut ids = [0u32; 4];
            for (i, d) in self.darts_of(v).enumerate() {
                if edge[d as usize] == 0 {
                    edge[d as usize] = next;
                    edge[self.mate[d as usize] as usize] = next;
                    next += 1;
                }
                ids[i] = edge[d as usize];
            }
            statements.push(match self.kinds[v] {
                VertexKind::Crossing => Statement::Crossing(ids),
                VertexKind::Marked => Statement::Marked(ids),
                VertexKind::Loop => Statement::Loop(ids[0]),
            });
        }
        let token = |f: usize| -> FaceToken {
            let x = *self.faces[f].iter().min().expect("face");
            FaceToken {
                edge: edge[x as usize],
                side: if x < self.mate[x as usize] {
                    Side::Right
                } else {
                    Side::Left
                },
            }
        };
        if self.n_comp > 1 {
            let mut faces_of_label: HashMap<u32, Vec<usize>> = HashMap::new();
            for (f, walk) in self.faces.iter().enumerate() {
                faces_of_label
                    .entry(self.region[walk[0] as usize])
                    .or_default()
                    .push(f);
            }
            let root_label = self.region[self.faces[self.outer_face(0) as usize][0] as usize];
            let mut done = vec![false; self.n_comp];
            done[0] = true;
            let mut queue = std::collections::VecDeque::from([0usize]);
            let mut places = Vec::new();
            while let Some(p) = queue.pop_front() {
                for (f, walk) in self.faces.iter().enumerate() {
                    if self.comp_of_dart(walk[0]) != p {
                        continue;
                    }
                    let label = self.region[walk[0] as usize];
                    for &g in &faces_of_label[&label] {
                        let q = self.comp_of_face(g as u32);
                        if done[q] {
                            continue;
                        }
                        done[q] = true;
                        queue.push_back(q);
                        let default = label == root_label && g as u32 == self.outer_face(q);
                        if !default {
                            places.push(Statement::Place {
                                component: q as u32,
                                face: token(f),
                                own: Some(token(g)),
                            });
                        }
                    }
                }
            }
            places.sort_by_key(|s| match s {
                Statement::Place { component, .. } => *component,
                _ => 0,
            });
            statements.extend(places);
        }
        MgdDocument {
            version: FORMAT_VERSION,
            statements,
        }
    }

    /// True when the two diagrams have identical canonical codes.
    pub fn same_as(&self, other: &Diagram) -> bool {
        self.canonical_code() == other.canonical_code()
    }
}

/// Parses and builds in one step.
pub fn parse_diagram(text: &str) -> Result<Diagram, crate::Error> {
    let doc = crate::codec::parse_mgd(text.as_bytes())?;
    Ok(Diagram::build(&doc)?)
}
