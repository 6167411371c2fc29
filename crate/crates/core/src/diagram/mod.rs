//! Oriented link and tangle diagrams in PD form.
//!
//! Each crossing lists four edge labels counterclockwise, starting at the
//! incoming under-strand. Slots 0 and 2 carry the under-strand (in, out);
//! slots 1 and 3 carry the over-strand, directed 3 → 1 when the sign is +1
//! and 1 → 3 when it is −1.
//!
//! Faces are traced on the sphere from the rotation system. A dart arriving
//! at a vertex is followed by the dart leaving through the clockwise-next
//! slot, so every face lies to the left of its darts. The left side of an
//! edge is the side its normal points to.
//!
//! A tangle's boundary circle is part of the traced graph; each endpoint is a
//! trivalent vertex and the face outside the circle is discarded.
//!
//! Diagrams whose underlying graph is disconnected need a placement. By
//! default every component sits in the region to the right of its smallest
//! label, and these regions are merged; an explicit `face_joins` list
//! overrides this.

pub mod build;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    Link,
    Tangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub sign: i8,
    pub arcs: [u64; 4],
}

impl Crossing {
    /// Slots holding the incoming and outgoing end of the over-strand.
    pub fn over_in_out(&self) -> (usize, usize) {
        if self.sign > 0 {
            (3, 1)
        } else {
            (1, 3)
        }
    }

    fn is_head_slot(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            s => s == self.over_in_out().0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Endpoint {
    pub arc: u64,
    pub dir: Dir,
}

/// One side of one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceRef {
    pub arc: u64,
    pub side: Side,
}

/// A face of the diagram: the edge sides that bound it, and the tangle
/// boundary segments it touches (segment `k` runs from endpoint `k` to `k+1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub sides: Vec<FaceRef>,
    pub segments: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    #[serde(rename = "type")]
    kind: DiagramKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    #[serde(default)]
    crossings: Vec<Crossing>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    closed_components: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary: Option<Vec<Endpoint>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    face_joins: Vec<[FaceRef; 2]>,
}

/// Where an edge end sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Crossing { index: usize, slot: usize },
    Boundary(usize),
    Loop { index: usize, vertex: usize },
}

/// A validated link or tangle diagram with derived components, arcs and faces.
#[derive(Clone, Debug)]
pub struct Diagram {
    kind: DiagramKind,
    name: Option<String>,
    comment: Option<String>,
    crossings: Vec<Crossing>,
    loops: Vec<Vec<u64>>,
    boundary: Vec<Endpoint>,
    face_joins: Vec<[FaceRef; 2]>,
    split: bool,

    labels: Vec<u64>,
    index: HashMap<u64, usize>,
    tail: Vec<End>,
    head: Vec<End>,
    components: Vec<Vec<u64>>,
    component_of: Vec<usize>,
    arcs: Vec<Vec<u64>>,
    arc_of: Vec<usize>,
    regions: Vec<Region>,
    left: Vec<usize>,
    right: Vec<usize>,
    corners: Vec<[usize; 4]>,
    segment_regions: Vec<usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDiagram(msg.into())
}

/// Half-edge: (edge id, is head end). Label edges come first, then boundary segments.
type Half = (usize, bool);

struct Traced {
    faces: Vec<Vec<usize>>,
    face_of_dart: Vec<usize>,
    vertex_count: usize,
    edge_count: usize,
    /// (tail vertex, head vertex) per edge.
    endpoints: Vec<(usize, usize)>,
    /// Departing dart per crossing slot.
    crossing_darts: Vec<[usize; 4]>,
}

fn trace(rotation: &[Vec<Half>], edge_count: usize) -> Result<Traced> {
    let mut pos = vec![None; edge_count * 2];
    for (v, rot) in rotation.iter().enumerate() {
        for (s, &(e, h)) in rot.iter().enumerate() {
            let slot = &mut pos[e * 2 + h as usize];
            if slot.is_some() {
                return Err(Error::Internal(format!("half-edge of edge {e} placed twice")));
            }
            *slot = Some((v, s));
        }
    }
    let pos: Vec<(usize, usize)> = pos
        .into_iter()
        .map(|p| p.ok_or_else(|| Error::Internal("unplaced half-edge".into())))
        .collect::<Result<_>>()?;
    let departing = |(e, h): Half| e * 2 + h as usize;
    let next = |d: usize| {
        let (e, forward) = (d / 2, d % 2 == 0);
        let (v, s) = pos[e * 2 + forward as usize];
        let deg = rotation[v].len();
        departing(rotation[v][(s + deg - 1) % deg])
    };
    let mut face_of_dart = vec![usize::MAX; edge_count * 2];
    let mut faces = Vec::new();
    for start in 0..edge_count * 2 {
        if face_of_dart[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut face = Vec::new();
        let mut d = start;
        loop {
            face_of_dart[d] = id;
            face.push(d);
            d = next(d);
            if d == start {
                break;
            }
            if face_of_dart[d] != usize::MAX {
                return Err(Error::Internal("face tracing did not close".into()));
            }
        }
        faces.push(face);
    }
    let endpoints = (0..edge_count).map(|e| (pos[e * 2].0, pos[e * 2 + 1].0)).collect();
    Ok(Traced {
        faces,
        face_of_dart,
        vertex_count: rotation.len(),
        edge_count,
        endpoints,
        crossing_darts: Vec::new(),
    })
}

impl Diagram {
    /// Validates the records and derives components, arcs and faces.
    pub fn new(
        kind: DiagramKind,
        crossings: Vec<Crossing>,
        closed_components: Vec<Vec<u64>>,
        boundary: Vec<Endpoint>,
        face_joins: Vec<[FaceRef; 2]>,
    ) -> Result<Self> {
        for (i, c) in crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(invalid(format!("crossing {i} has sign {}, expected 1 or -1", c.sign)));
            }
            if c.arcs.contains(&0) {
                return Err(invalid(format!("crossing {i} uses label 0; labels must be positive")));
            }
        }
        match kind {
            DiagramKind::Link if !boundary.is_empty() => {
                return Err(invalid("a link diagram cannot have boundary endpoints"))
            }
            DiagramKind::Tangle if boundary.is_empty() => {
                return Err(invalid("a tangle diagram needs boundary endpoints"))
            }
            DiagramKind::Tangle if !closed_components.is_empty() => {
                return Err(invalid("crossingless closed components inside a tangle are not supported"))
            }
            _ => {}
        }
        if closed_components.iter().any(Vec::is_empty) {
            return Err(invalid("empty closed component"));
        }

        // Every edge end, keyed by label.
        let mut tails: BTreeMap<u64, Vec<End>> = BTreeMap::new();
        let mut heads: BTreeMap<u64, Vec<End>> = BTreeMap::new();
        for (index, c) in crossings.iter().enumerate() {
            for slot in 0..4 {
                let end = End::Crossing { index, slot };
                let map = if c.is_head_slot(slot) { &mut heads } else { &mut tails };
                map.entry(c.arcs[slot]).or_default().push(end);
            }
        }
        for (k, ep) in boundary.iter().enumerate() {
            if ep.arc == 0 {
                return Err(invalid("boundary uses label 0; labels must be positive"));
            }
            let map = if ep.dir == Dir::In { &mut tails } else { &mut heads };
            map.entry(ep.arc).or_default().push(End::Boundary(k));
        }
        for (index, lp) in closed_components.iter().enumerate() {
            let m = lp.len();
            for (i, &label) in lp.iter().enumerate() {
                if label == 0 {
                    return Err(invalid("closed component uses label 0; labels must be positive"));
                }
                tails.entry(label).or_default().push(End::Loop { index, vertex: i });
                heads.entry(label).or_default().push(End::Loop { index, vertex: (i + 1) % m });
            }
        }
        let all: BTreeSet<u64> = tails.keys().chain(heads.keys()).copied().collect();
        if all.is_empty() {
            return Err(invalid("diagram has no arcs"));
        }
        let labels: Vec<u64> = all.into_iter().collect();
        let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut tail = Vec::with_capacity(labels.len());
        let mut head = Vec::with_capacity(labels.len());
        for &l in &labels {
            let t = tails.get(&l).map(Vec::as_slice).unwrap_or(&[]);
            let h = heads.get(&l).map(Vec::as_slice).unwrap_or(&[]);
            if t.len() + h.len() != 2 {
                return Err(invalid(format!("label {l} occurs {} times; every label must occur exactly twice", t.len() + h.len())));
            }
            if t.len() != 1 {
                let what = if t.is_empty() { "two incoming ends" } else { "two outgoing ends" };
                return Err(invalid(format!(
                    "label {l} has {what}; orientation is inconsistent or a crossing sign contradicts the slot convention"
                )));
            }
            tail.push(t[0]);
            head.push(h[0]);
        }
        let ins = boundary.iter().filter(|e| e.dir == Dir::In).count();
        if ins * 2 != boundary.len() {
            return Err(invalid(format!("boundary has {ins} in-endpoints and {} out-endpoints", boundary.len() - ins)));
        }

        let mut d = Diagram {
            kind,
            name: None,
            comment: None,
            crossings,
            loops: closed_components,
            boundary,
            face_joins,
            split: false,
            labels,
            index,
            tail,
            head,
            components: Vec::new(),
            component_of: Vec::new(),
            arcs: Vec::new(),
            arc_of: Vec::new(),
            regions: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            corners: Vec::new(),
            segment_regions: Vec::new(),
        };
        d.derive_components();
        d.derive_arcs();
        d.derive_faces()?;
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: DiagramFile = serde_json::from_str(text)?;
        let boundary = match (f.kind, f.boundary) {
            (DiagramKind::Link, Some(b)) if !b.is_empty() => {
                return Err(invalid("a link diagram cannot have a boundary list"))
            }
            (DiagramKind::Tangle, None) => return Err(invalid("a tangle diagram needs a boundary list")),
            (_, b) => b.unwrap_or_default(),
        };
        let mut d = Diagram::new(f.kind, f.crossings, f.closed_components, boundary, f.face_joins)?;
        d.name = f.name;
        d.comment = f.comment;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        let f = DiagramFile {
            kind: self.kind,
            name: self.name.clone(),
            comment: self.comment.clone(),
            crossings: self.crossings.clone(),
            closed_components: self.loops.clone(),
            boundary: (self.kind == DiagramKind::Tangle).then(|| self.boundary.clone()),
            face_joins: if self.split { self.face_joins.clone() } else { Vec::new() },
        };
        serde_json::to_string_pretty(&f).expect("diagram serialization cannot fail")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn is_tangle(&self) -> bool {
        self.kind == DiagramKind::Tangle
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn closed_components(&self) -> &[Vec<u64>] {
        &self.loops
    }

    pub fn boundary(&self) -> &[Endpoint] {
        &self.boundary
    }

    /// Edge labels in increasing order.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label_index(&self, label: u64) -> Option<usize> {
        self.index.get(&label).copied()
    }

    fn idx(&self, label: u64) -> usize {
        self.index[&label]
    }

    pub fn tail_of(&self, label: u64) -> End {
        self.tail[self.idx(label)]
    }

    pub fn head_of(&self, label: u64) -> End {
        self.head[self.idx(label)]
    }

    /// Components as label sequences in the direction of travel.
    pub fn components(&self) -> &[Vec<u64>] {
        &self.components
    }

    pub fn component_of(&self, label: u64) -> usize {
        self.component_of[self.idx(label)]
    }

    /// Over-arcs: maximal label sets joined through over-passes.
    pub fn arcs(&self) -> &[Vec<u64>] {
        &self.arcs
    }

    pub fn arc_of(&self, label: u64) -> usize {
        self.arc_of[self.idx(label)]
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_of(&self, side: FaceRef) -> usize {
        match side.side {
            Side::Left => self.left[self.idx(side.arc)],
            Side::Right => self.right[self.idx(side.arc)],
        }
    }

    pub fn left_region(&self, label: u64) -> usize {
        self.left[self.idx(label)]
    }

    pub fn right_region(&self, label: u64) -> usize {
        self.right[self.idx(label)]
    }

    /// Region in the corner between slot `s` and slot `s+1` of crossing `c`.
    pub fn corner_region(&self, c: usize, s: usize) -> usize {
        self.corners[c][s]
    }

    /// Region from which both strand normals point away at crossing `c`.
    pub fn source_region(&self, c: usize) -> usize {
        if self.crossings[c].sign > 0 {
            self.corners[c][0]
        } else {
            self.corners[c][1]
        }
    }

    /// Region just inside boundary segment `k` (tangles only).
    pub fn segment_region(&self, k: usize) -> usize {
        self.segment_regions[k]
    }

    /// Labels of edges with an end on the tangle boundary.
    pub fn boundary_labels(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self.boundary.iter().map(|e| e.arc).collect();
        set.into_iter().collect()
    }

    /// Whether the underlying graph has more than one connected piece.
    pub fn is_split(&self) -> bool {
        self.split
    }

    fn next_label(&self, i: usize) -> Option<usize> {
        match self.head[i] {
            End::Crossing { index, slot } => {
                let l = self.crossings[index].arcs[(slot + 2) % 4];
                Some(self.idx(l))
            }
            End::Boundary(_) => None,
            End::Loop { index, vertex } => Some(self.idx(self.loops[index][vertex])),
        }
    }

    fn derive_components(&mut self) {
        let n = self.labels.len();
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        let mut walk = |start: usize, comp: &mut Vec<usize>| {
            let id = components.len();
            let mut seq = Vec::new();
            let mut cur = Some(start);
            while let Some(i) = cur {
                if comp[i] != usize::MAX {
                    break;
                }
                comp[i] = id;
                seq.push(self.labels[i]);
                cur = self.next_label(i);
            }
            components.push(seq);
        };
        for ep in &self.boundary {
            if ep.dir == Dir::In {
                let i = self.index[&ep.arc];
                if comp[i] == usize::MAX {
                    walk(i, &mut comp);
                }
            }
        }
        for i in 0..n {
            if comp[i] == usize::MAX {
                walk(i, &mut comp);
            }
        }
        self.components = components;
        self.component_of = comp;
    }

    fn derive_arcs(&mut self) {
        let n = self.labels.len();
        let mut uf = UnionFind::<usize>::new(n);
        for c in &self.crossings {
            uf.union(self.index[&c.arcs[1]], self.index[&c.arcs[3]]);
        }
        for lp in &self.loops {
            for w in lp.windows(2) {
                uf.union(self.index[&w[0]], self.index[&w[1]]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
        for i in 0..n {
            groups.entry(uf.find(i)).or_default().push(self.labels[i]);
        }
        let mut arcs: Vec<Vec<u64>> = groups.into_values().collect();
        arcs.sort();
        let mut arc_of = vec![0; n];
        for (a, ls) in arcs.iter().enumerate() {
            for l in ls {
                arc_of[self.index[l]] = a;
            }
        }
        self.arcs = arcs;
        self.arc_of = arc_of;
    }

    fn derive_faces(&mut self) -> Result<()> {
        let nl = self.labels.len();
        let nb = self.boundary.len();
        let nc = self.crossings.len();
        let edge_count = nl + nb;
        let seg = |k: usize| nl + k % nb.max(1);

        let mut rotation: Vec<Vec<Half>> = Vec::new();
        for c in &self.crossings {
            rotation.push((0..4).map(|s| (self.index[&c.arcs[s]], c.is_head_slot(s))).collect());
        }
        for (k, ep) in self.boundary.iter().enumerate() {
            let strand = (self.index[&ep.arc], ep.dir == Dir::Out);
            rotation.push(vec![strand, (seg(k + nb - 1), true), (seg(k), false)]);
        }
        for lp in &self.loops {
            let m = lp.len();
            for v in 0..m {
                rotation.push(vec![(self.index[&lp[(v + m - 1) % m]], true), (self.index[&lp[v]], false)]);
            }
        }
        let mut traced = trace(&rotation, edge_count)?;
        traced.crossing_darts = (0..nc)
            .map(|c| {
                let mut ds = [0; 4];
                for (s, d) in ds.iter_mut().enumerate() {
                    let (e, h) = rotation[c][s];
                    *d = e * 2 + h as usize;
                }
                ds
            })
            .collect();

        // Graph components, Euler characteristic per component.
        let mut uf = UnionFind::<usize>::new(traced.vertex_count);
        for &(a, b) in &traced.endpoints {
            uf.union(a, b);
        }
        let mut stats: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
        for v in 0..traced.vertex_count {
            stats.entry(uf.find(v)).or_default().0 += 1;
        }
        for &(a, _) in &traced.endpoints {
            stats.entry(uf.find(a)).or_default().1 += 1;
        }
        for face in &traced.faces {
            let (a, _) = traced.endpoints[face[0] / 2];
            stats.entry(uf.find(a)).or_default().2 += 1;
        }
        for (v, e, f) in stats.values() {
            if v - e + f != 2 {
                return Err(invalid(format!(
                    "rotation system is not planar: V - E + F = {} - {} + {} ≠ 2",
                    v, e, f
                )));
            }
        }
        let pieces = stats.len();
        if self.is_tangle() && pieces > 1 {
            return Err(invalid("tangle diagram is disconnected from its boundary circle"));
        }
        self.split = pieces > 1;

        // Merge faces: explicit joins, or the default placement for split links.
        let nf = traced.faces.len();
        let mut merge = UnionFind::<usize>::new(nf);
        let dart_of = |d: &Diagram, r: &FaceRef| -> Result<usize> {
            let i = d.label_index(r.arc).ok_or_else(|| invalid(format!("face join names unknown label {}", r.arc)))?;
            Ok(i * 2 + (r.side == Side::Right) as usize)
        };
        if !self.face_joins.is_empty() {
            for [a, b] in &self.face_joins {
                merge.union(traced.face_of_dart[dart_of(self, a)?], traced.face_of_dart[dart_of(self, b)?]);
            }
        } else if self.split {
            let mut first_label_of_piece: BTreeMap<usize, usize> = BTreeMap::new();
            for i in 0..nl {
                first_label_of_piece.entry(uf.find(traced.endpoints[i].0)).or_insert(i);
            }
            let outer: Vec<usize> = first_label_of_piece.values().map(|&i| traced.face_of_dart[i * 2 + 1]).collect();
            for w in outer.windows(2) {
                merge.union(w[0], w[1]);
            }
        }
        let outer_face = (nb > 0).then(|| traced.face_of_dart[seg(0) * 2 + 1]);

        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for f in 0..nf {
            if Some(f) == outer_face {
                continue;
            }
            classes.entry(merge.find(f)).or_default().push(f);
        }
        if let Some(of) = outer_face {
            if classes.values().flatten().any(|&f| merge.find(f) == merge.find(of)) {
                return Err(invalid("face joins merge an interior face with the outside of the tangle"));
            }
        }
        let total_faces = classes.len() as i64 + outer_face.is_some() as i64;
        let (v, e) = (traced.vertex_count as i64, traced.edge_count as i64);
        if v - e + total_faces != 1 + pieces as i64 {
            return Err(invalid(format!(
                "face placement is inconsistent: V - E + F = {} but {} was expected",
                v - e + total_faces,
                1 + pieces
            )));
        }

        // Number regions by their smallest dart.
        let mut ordered: Vec<Vec<usize>> = classes.into_values().collect();
        for class in ordered.iter_mut() {
            class.sort_by_key(|&f| traced.faces[f].iter().min().copied());
        }
        ordered.sort_by_key(|class| class.iter().flat_map(|&f| traced.faces[f].iter()).min().copied());
        let mut region_of_face = vec![usize::MAX; nf];
        let mut regions = Vec::with_capacity(ordered.len());
        for (r, class) in ordered.iter().enumerate() {
            let mut region = Region { sides: Vec::new(), segments: Vec::new() };
            for &f in class {
                region_of_face[f] = r;
                for &d in &traced.faces[f] {
                    let e = d / 2;
                    if e < nl {
                        let side = if d % 2 == 0 { Side::Left } else { Side::Right };
                        region.sides.push(FaceRef { arc: self.labels[e], side });
                    } else if d % 2 == 0 {
                        region.segments.push(e - nl);
                    }
                }
            }
            region.segments.sort_unstable();
            regions.push(region);
        }
        let region_of_dart = |d: usize| region_of_face[traced.face_of_dart[d]];
        self.left = (0..nl).map(|i| region_of_dart(i * 2)).collect();
        self.right = (0..nl).map(|i| region_of_dart(i * 2 + 1)).collect();
        self.corners = traced
            .crossing_darts
            .iter()
            .map(|ds| [region_of_dart(ds[0]), region_of_dart(ds[1]), region_of_dart(ds[2]), region_of_dart(ds[3])])
            .collect();
        self.segment_regions = (0..nb).map(|k| region_of_dart(seg(k) * 2)).collect();
        self.regions = regions;
        Ok(())
    }

    /// Symmetric 0/1 matrix of linking numbers mod 2 between link components.
    pub fn linking_matrix_mod2(&self) -> Vec<Vec<u8>> {
        let k = self.components.len();
        let mut sums = vec![vec![0i64; k]; k];
        for c in &self.crossings {
            let under = self.component_of(c.arcs[0]);
            let over = self.component_of(c.arcs[1]);
            if under != over {
                sums[under][over] += c.sign as i64;
                sums[over][under] += c.sign as i64;
            }
        }
        sums.iter()
            .map(|row| row.iter().map(|&s| ((s / 2).rem_euclid(2)) as u8).collect())
            .collect()
    }

    /// All closures of a tangle by non-crossing, orientation-consistent
    /// matchings of its endpoints outside the disk.
    pub fn closures(&self) -> Result<Vec<Closure>> {
        if !self.is_tangle() {
            return Err(invalid("closures are defined for tangles only"));
        }
        let points: Vec<usize> = (0..self.boundary.len()).collect();
        non_crossing_matchings(&points)
            .into_iter()
            .filter(|m| m.iter().all(|&(a, b)| self.boundary[a].dir != self.boundary[b].dir))
            .map(|m| self.close(m))
            .collect()
    }

    fn close(&self, matching: Vec<(usize, usize)>) -> Result<Closure> {
        let nb = self.boundary.len();
        let nl = self.labels.len();
        let mut partner = vec![0; nb];
        for &(a, b) in &matching {
            partner[a] = b;
            partner[b] = a;
        }

        let mut strands = UnionFind::<usize>::new(nl);
        for &(a, b) in &matching {
            strands.union(self.idx(self.boundary[a].arc), self.idx(self.boundary[b].arc));
        }
        let mut rep: HashMap<usize, u64> = HashMap::new();
        for i in 0..nl {
            let r = strands.find(i);
            let e = rep.entry(r).or_insert(self.labels[i]);
            *e = (*e).min(self.labels[i]);
        }
        let label_map: BTreeMap<u64, u64> = (0..nl).map(|i| (self.labels[i], rep[&strands.find(i)])).collect();

        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing { sign: c.sign, arcs: c.arcs.map(|l| label_map[&l]) })
            .collect();
        let used: BTreeSet<u64> = crossings.iter().flat_map(|c| c.arcs).collect();
        let loops: Vec<Vec<u64>> = label_map
            .values()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|l| !used.contains(l))
            .map(|l| vec![l])
            .collect();

        // Regions outside the disk: the one along segment k continues past
        // endpoint k+1 to its partner m and on along segment m.
        let nr = self.regions.len();
        let mut outside = UnionFind::<usize>::new(nr);
        for k in 0..nb {
            let m = partner[(k + 1) % nb];
            outside.union(self.segment_regions[k], self.segment_regions[m]);
        }
        let mut groups: BTreeMap<usize, Vec<FaceRef>> = BTreeMap::new();
        for (r, region) in self.regions.iter().enumerate() {
            let g = groups.entry(outside.find(r)).or_default();
            g.extend(region.sides.iter().map(|s| FaceRef { arc: label_map[&s.arc], side: s.side }));
        }
        let mut joins = Vec::new();
        for sides in groups.values() {
            let mut seen = BTreeSet::new();
            for s in sides {
                if seen.insert(*s) && seen.len() > 1 {
                    joins.push([sides[0], *s]);
                }
            }
        }
        let diagram = Diagram::new(DiagramKind::Link, crossings, loops, Vec::new(), joins)?;

        let mut region_map = Vec::with_capacity(nr);
        for region in &self.regions {
            let targets: BTreeSet<usize> = region
                .sides
                .iter()
                .map(|s| diagram.region_of(FaceRef { arc: label_map[&s.arc], side: s.side }))
                .collect();
            if targets.len() != 1 {
                return Err(Error::Internal("tangle region splits in its closure".into()));
            }
            region_map.push(*targets.iter().next().expect("nonempty"));
        }
        Ok(Closure { matching, diagram, label_map, region_map })
    }
}

/// A closure of a tangle together with the correspondence of labels and regions.
#[derive(Clone, Debug)]
pub struct Closure {
    /// Pairs of boundary endpoint positions joined outside the disk.
    pub matching: Vec<(usize, usize)>,
    pub diagram: Diagram,
    /// Tangle label → closure label.
    pub label_map: BTreeMap<u64, u64>,
    /// Tangle region → closure region.
    pub region_map: Vec<usize>,
}

/// Non-crossing perfect matchings of points on a circle, in a fixed order.
pub fn non_crossing_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    if points.len() % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in (1..points.len()).step_by(2) {
        let inner = non_crossing_matchings(&points[1..j]);
        let outer = non_crossing_matchings(&points[j + 1..]);
        for a in &inner {
            for b in &outer {
                let mut m = vec![(points[0], points[j])];
                m.extend(a.iter().copied());
                m.extend(b.iter().copied());
                out.push(m);
            }
        }
    }
    out
}
