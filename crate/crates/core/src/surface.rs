//! Abstract ab-surfaces: the thickening of a marked graph, its boundary
//! links and the invariants of the capped closed surface.
//!
//! A marked vertex becomes a disk with four band arcs; corner `c` of the
//! disk sits between arcs `c` and `c + 1` and carries label `a` when `c` is
//! even, i.e. the marker corners. Bands follow strands straight through
//! crossings from one marked dart to the next. A band whose ends sit at
//! positions of equal parity carries a half twist, otherwise the corner
//! labels could not match along its sides. Closed strands that meet no
//! marked vertex become annuli with one `a` and one `b` boundary circle.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::diagram::rewrite::{replace, End, Replacement, TVertex, Tangle};
use crate::diagram::{validate, Dart, Diagram, Validity, VertexKind};
use crate::link::{component_count, Label, LinkDiagram, TrivialityBudget};
use crate::util::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BandEnd {
    pub disk: usize,
    pub arc: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Band {
    pub ends: [BandEnd; 2],
    /// Half twist: reverses the co-orientation between its two disks.
    pub twisted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCircle {
    pub label: Label,
    /// Disk corners `(disk, corner)` visited; empty for annulus circles.
    pub corners: Vec<(usize, usize)>,
    /// Index of the annulus for annulus circles.
    pub annulus: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("surface was not produced from this diagram")]
    MismatchedInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbSurfaceComplex {
    /// Number of band arcs on each disk.
    arcs: Vec<usize>,
    bands: Vec<Band>,
    annuli: usize,
    circles: Vec<BoundaryCircle>,
    /// Marked vertex behind each disk, when built by `thicken`.
    disk_vertex: Vec<usize>,
    source: Option<u64>,
}

fn fingerprint(d: &Diagram) -> u64 {
    let mut h = DefaultHasher::new();
    d.kinds().hash(&mut h);
    (0..d.num_darts() as Dart).map(|x| d.mate(x)).collect::<Vec<_>>().hash(&mut h);
    h.finish()
}

/// Darts `x` where a band starts, paired with the dart where it ends, and
/// the number of closed strands without marked vertices.
fn strands(d: &Diagram) -> (Vec<(Dart, Dart)>, usize) {
    let n = d.num_darts();
    let mut uf = UnionFind::new(n);
    for x in 0..n as Dart {
        uf.union(x as usize, d.mate(x) as usize);
        match d.kind(d.vertex_of(x)) {
            VertexKind::Crossing => {
                uf.union(x as usize, d.rotate(x, 2) as usize);
            }
            VertexKind::Loop => {
                uf.union(x as usize, d.rotate(x, 1) as usize);
            }
            VertexKind::Marked => {}
        }
    }
    let mut has_marked = vec![false; n];
    for x in 0..n as Dart {
        if d.kind(d.vertex_of(x)) == VertexKind::Marked {
            let r = uf.find(x as usize);
            has_marked[r] = true;
        }
    }
    let mut annuli = 0;
    for x in 0..n {
        if uf.find(x) == x && !has_marked[x] {
            annuli += 1;
        }
    }
    let mut bands = Vec::new();
    for x in 0..n as Dart {
        if d.kind(d.vertex_of(x)) != VertexKind::Marked {
            continue;
        }
        let mut y = d.mate(x);
        while d.kind(d.vertex_of(y)) == VertexKind::Crossing {
            y = d.mate(d.rotate(y, 2));
        }
        if x < y {
            bands.push((x, y));
        }
    }
    (bands, annuli)
}

fn corner_label(c: usize) -> Label {
    if c.is_multiple_of(2) {
        Label::A
    } else {
        Label::B
    }
}

impl AbSurfaceComplex {
    /// Complex from explicit cells. Corners are labelled by parity.
    pub fn from_parts(arcs: Vec<usize>, bands: Vec<Band>, annuli: usize) -> Self {
        let mut s = AbSurfaceComplex {
            arcs,
            bands,
            annuli,
            circles: Vec::new(),
            disk_vertex: Vec::new(),
            source: None,
        };
        s.trace_boundary();
        s
    }

    /// One disk with a single twisted band joining two of its arcs.
    pub fn mobius() -> Self {
        let e = |arc| BandEnd { disk: 0, arc };
        Self::from_parts(
            vec![2],
            vec![Band {
                ends: [e(0), e(1)],
                twisted: true,
            }],
            0,
        )
    }

    pub fn thicken(d: &Diagram) -> Self {
        let disks: Vec<usize> = (0..d.num_nodes()).filter(|&v| d.kind(v) == VertexKind::Marked).collect();
        let mut index = vec![usize::MAX; d.num_nodes()];
        for (i, &v) in disks.iter().enumerate() {
            index[v] = i;
        }
        let (pairs, annuli) = strands(d);
        let bands = pairs
            .into_iter()
            .map(|(x, y)| {
                let end = |z: Dart| BandEnd {
                    disk: index[d.vertex_of(z)],
                    arc: d.pos(z),
                };
                Band {
                    ends: [end(x), end(y)],
                    twisted: d.pos(x) % 2 == d.pos(y) % 2,
                }
            })
            .collect();
        let mut s = AbSurfaceComplex {
            arcs: vec![4; disks.len()],
            bands,
            annuli,
            circles: Vec::new(),
            disk_vertex: disks,
            source: Some(fingerprint(d)),
        };
        s.trace_boundary();
        s
    }

    fn corner_ids(&self) -> Vec<usize> {
        let mut base = Vec::with_capacity(self.arcs.len() + 1);
        let mut t = 0;
        for &k in &self.arcs {
            base.push(t);
            t += k;
        }
        base.push(t);
        base
    }

    fn trace_boundary(&mut self) {
        let base = self.corner_ids();
        let total = *base.last().unwrap_or(&0);
        let corner = |disk: usize, c: isize| -> usize {
            let k = self.arcs[disk] as isize;
            base[disk] + c.rem_euclid(k) as usize
        };
        let mut uf = UnionFind::new(total);
        for b in &self.bands {
            let [BandEnd { disk: v, arc: p }, BandEnd { disk: w, arc: q }] = b.ends;
            let (p, q) = (p as isize, q as isize);
            // left side of the band leaving arc p, then its right side
            let (l, r) = if b.twisted { (q, q - 1) } else { (q - 1, q) };
            uf.union(corner(v, p), corner(w, l));
            uf.union(corner(v, p - 1), corner(w, r));
        }
        let mut circles: Vec<BoundaryCircle> = Vec::new();
        let mut slot = vec![usize::MAX; total];
        for (disk, &k) in self.arcs.iter().enumerate() {
            for c in 0..k {
                let r = uf.find(base[disk] + c);
                if slot[r] == usize::MAX {
                    slot[r] = circles.len();
                    circles.push(BoundaryCircle {
                        label: corner_label(c),
                        corners: Vec::new(),
                        annulus: None,
                    });
                }
                circles[slot[r]].corners.push((disk, c));
            }
        }
        for i in 0..self.annuli {
            for label in [Label::A, Label::B] {
                circles.push(BoundaryCircle {
                    label,
                    corners: Vec::new(),
                    annulus: Some(i),
                });
            }
        }
        self.circles = circles;
    }

    pub fn disk_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn annulus_count(&self) -> usize {
        self.annuli
    }

    pub fn boundary_circles(&self) -> &[BoundaryCircle] {
        &self.circles
    }

    pub fn boundary_count(&self, label: Label) -> usize {
        self.circles.iter().filter(|c| c.label == label).count()
    }

    /// True when every boundary circle meets corners of one label only.
    pub fn labels_consistent(&self) -> bool {
        self.circles
            .iter()
            .all(|c| c.corners.iter().all(|&(_, k)| corner_label(k) == c.label))
    }

    /// `V - E + F` of the cell structure: a disk with `k` arcs has `2k`
    /// vertices, `2k` edges and one face; a band adds its two sides and a
    /// face; an annulus is two vertices, three edges and one face.
    pub fn euler_characteristic(&self) -> i64 {
        let (mut v, mut e, mut f) = (0i64, 0i64, 0i64);
        for &k in &self.arcs {
            v += 2 * k as i64;
            e += 2 * k as i64;
            f += 1;
        }
        e += 2 * self.bands.len() as i64;
        f += self.bands.len() as i64;
        v += 2 * self.annuli as i64;
        e += 3 * self.annuli as i64;
        f += self.annuli as i64;
        v - e + f
    }

    /// Euler characteristic after capping every boundary circle.
    pub fn capped_euler_characteristic(&self) -> i64 {
        self.euler_characteristic() + self.circles.len() as i64
    }

    /// Connected parts: disk classes in order of their lowest disk, then
    /// one part per annulus.
    fn parts(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.arcs.len());
        for b in &self.bands {
            uf.union(b.ends[0].disk, b.ends[1].disk);
        }
        let mut part = vec![usize::MAX; self.arcs.len()];
        let mut id = vec![usize::MAX; self.arcs.len()];
        let mut count = 0;
        for i in 0..self.arcs.len() {
            let r = uf.find(i);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            part[i] = id[r];
        }
        (part, count)
    }

    pub fn component_count(&self) -> usize {
        self.parts().1 + self.annuli
    }

    /// Per component, in the order of [`Self::component_count`]: whether a
    /// sign per disk exists that every band respects.
    pub fn orientability(&self) -> Vec<bool> {
        let (part, n) = self.parts();
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.arcs.len()];
        for b in &self.bands {
            let (u, v) = (b.ends[0].disk, b.ends[1].disk);
            adj[u].push((v, b.twisted));
            adj[v].push((u, b.twisted));
        }
        let mut sign: Vec<Option<bool>> = vec![None; self.arcs.len()];
        let mut ok = vec![true; n];
        for s in 0..self.arcs.len() {
            if sign[s].is_some() {
                continue;
            }
            sign[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = sign[u].expect("assigned");
                for &(v, t) in &adj[u] {
                    match sign[v] {
                        None => {
                            sign[v] = Some(su ^ t);
                            stack.push(v);
                        }
                        Some(sv) => {
                            if sv != su ^ t {
                                ok[part[u]] = false;
                            }
                        }
                    }
                }
            }
        }
        // self-bands are seen twice above; a twisted one always conflicts
        ok.extend(std::iter::repeat_n(true, self.annuli));
        ok
    }

    /// Invariants of the closed surface obtained by capping every circle.
    pub fn capped_invariants(&self) -> SurfaceInvariants {
        let (part, n) = self.parts();
        let mut chi = vec![0i64; n];
        for disk in 0..self.arcs.len() {
            chi[part[disk]] += 1;
        }
        for b in &self.bands {
            chi[part[b.ends[0].disk]] -= 1;
        }
        for c in &self.circles {
            if let Some(&(disk, _)) = c.corners.first() {
                chi[part[disk]] += 1;
            }
        }
        let orient = self.orientability();
        let mut per: Vec<ComponentInvariants> = chi
            .into_iter()
            .chain(std::iter::repeat_n(2, self.annuli))
            .zip(orient)
            .map(|(chi, orientable)| ComponentInvariants::closed(chi, orientable))
            .collect();
        per.sort();
        SurfaceInvariants {
            component_count: per.len(),
            per_component: per,
            boundary_a: 0,
            boundary_b: 0,
        }
    }

    /// Label-selected boundary circles drawn as a link diagram: at every
    /// disk the corners of that label are joined.
    pub fn boundary_link(&self, from: &Diagram, label: Label) -> Result<LinkDiagram, SurfaceError> {
        if self.source != Some(fingerprint(from)) {
            return Err(SurfaceError::MismatchedInput);
        }
        let mut tangles = Vec::with_capacity(self.disk_vertex.len());
        for disk in 0..self.disk_vertex.len() {
            let mut vertices = Vec::new();
            for c in &self.circles {
                if c.label != label {
                    continue;
                }
                for &(k, corner) in &c.corners {
                    if k == disk {
                        vertices.push(TVertex {
                            kind: VertexKind::Loop,
                            ends: vec![End::Slot(corner), End::Slot((corner + 1) % 4)],
                        });
                    }
                }
            }
            if vertices.len() != 2 {
                return Err(SurfaceError::MismatchedInput);
            }
            tangles.push(Tangle { vertices, slots: 4 });
        }
        let reps: Vec<Replacement> = self
            .disk_vertex
            .iter()
            .zip(&tangles)
            .map(|(&v, t)| Replacement {
                removed: vec![v],
                slots: from.darts_of(v).collect(),
                tangle: t,
            })
            .collect();
        let out = if reps.is_empty() {
            from.clone()
        } else {
            replace(from, &reps, None).map_err(|_| SurfaceError::MismatchedInput)?.0
        };
        let expected = self.boundary_count(label);
        if component_count(&out) != expected {
            return Err(SurfaceError::MismatchedInput);
        }
        Ok(LinkDiagram::new(out).expect("no marked vertices remain"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentInvariants {
    pub chi: i64,
    pub orientable: bool,
    /// Genus when orientable, crosscap number otherwise.
    pub genus: u64,
}

impl ComponentInvariants {
    pub fn closed(chi: i64, orientable: bool) -> Self {
        let genus = if orientable { (2 - chi) / 2 } else { 2 - chi };
        ComponentInvariants {
            chi,
            orientable,
            genus: genus.max(0) as u64,
        }
    }

    pub fn is_sphere(&self) -> bool {
        self.orientable && self.chi == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceInvariants {
    pub component_count: usize,
    /// Sorted, so equal invariants compare equal as multisets.
    pub per_component: Vec<ComponentInvariants>,
    pub boundary_a: usize,
    pub boundary_b: usize,
}

impl SurfaceInvariants {
    pub fn euler_characteristic(&self) -> i64 {
        self.per_component.iter().map(|c| c.chi).sum()
    }

    pub fn orientable(&self) -> bool {
        self.per_component.iter().all(|c| c.orientable)
    }

    pub fn genera(&self) -> Vec<u64> {
        self.per_component.iter().map(|c| c.genus).collect()
    }
}

/// Capped-surface invariants, whether or not the resolutions are trivial.
pub fn cap_invariants(d: &Diagram) -> SurfaceInvariants {
    AbSurfaceComplex::thicken(d).capped_invariants()
}

/// Capped-surface invariants together with the validity of `d`; anything
/// but [`Validity::ValidMarkedGraph`] means the triviality is unverified.
pub fn cap_invariants_checked(d: &Diagram, budget: &TrivialityBudget) -> (SurfaceInvariants, Validity) {
    (cap_invariants(d), validate(d, budget).overall)
}

/// `c(G_a) + c(G_b) - v`.
pub fn closed_form_euler(d: &Diagram) -> i64 {
    use crate::link::resolve;
    component_count(&resolve(d, Label::A)) as i64 + component_count(&resolve(d, Label::B)) as i64
        - d.marked_count() as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoLink {
    Yes,
    No,
    Unknown,
}

impl TwoLink {
    pub fn name(self) -> &'static str {
        match self {
            TwoLink::Yes => "yes",
            TwoLink::No => "no",
            TwoLink::Unknown => "unknown",
        }
    }
}

/// Whether `d` presents a surface link all of whose components are spheres.
pub fn is_2link(d: &Diagram, budget: &TrivialityBudget) -> TwoLink {
    let inv = cap_invariants(d);
    if !inv.per_component.iter().all(|c| c.is_sphere()) {
        return TwoLink::No;
    }
    match validate(d, budget).overall {
        Validity::ValidMarkedGraph => TwoLink::Yes,
        Validity::NotValid => TwoLink::No,
        Validity::Unknown => TwoLink::Unknown,
    }
}
