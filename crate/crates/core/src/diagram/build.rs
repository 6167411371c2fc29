//! Programmatic construction of PD diagrams.
//!
//! A [`Builder`] holds abstract crossings, each with four ports listed
//! counterclockwise (ports 0 and 2 on the under-strand, 1 and 3 on the
//! over-strand), tangle boundary points in counterclockwise order, and
//! degree-2 joints. Undirected connections between these nodes describe a
//! planar drawing; [`Builder::build`] orients every component, labels the
//! edges along each component and emits validated PD records.
//!
//! A component's default direction is the direction of its first connection
//! in insertion order.

use std::collections::HashMap;

use crate::diagram::{Crossing, Diagram, DiagramKind, Dir, Endpoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Port(usize, usize),
    Boundary(usize),
    Joint(usize),
}

#[derive(Clone, Debug, Default)]
pub struct Builder {
    crossings: usize,
    boundary: usize,
    joints: usize,
    links: Vec<(Node, Node)>,
}

/// Traversal of connection `.0`, towards its second node when `.1` is true.
type State = (usize, bool);

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing(&mut self) -> usize {
        self.crossings += 1;
        self.crossings - 1
    }

    pub fn boundary_point(&mut self) -> Node {
        self.boundary += 1;
        Node::Boundary(self.boundary - 1)
    }

    pub fn joint(&mut self) -> Node {
        self.joints += 1;
        Node::Joint(self.joints - 1)
    }

    pub fn connect(&mut self, a: Node, b: Node) {
        self.links.push((a, b));
    }

    /// Lays a braid word upwards on top of `bottom` (one node per strand,
    /// left to right) and returns fresh top joints.
    pub fn braid(&mut self, strands: usize, word: &[i32], bottom: &[Node]) -> Result<Vec<Node>> {
        if bottom.len() != strands {
            return Err(Error::InvalidDiagram(format!("{} bottom nodes for {strands} strands", bottom.len())));
        }
        let mut current = bottom.to_vec();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(Error::InvalidDiagram(format!("braid generator {g} on {strands} strands")));
            }
            let [bl, br, tl, tr] = braid_ports(g > 0);
            let c = self.crossing();
            self.connect(current[i - 1], Node::Port(c, bl));
            self.connect(current[i], Node::Port(c, br));
            current[i - 1] = Node::Port(c, tl);
            current[i] = Node::Port(c, tr);
        }
        let top: Vec<Node> = (0..strands).map(|_| self.joint()).collect();
        for i in 0..strands {
            self.connect(current[i], top[i]);
        }
        Ok(top)
    }

    fn incidences(&self) -> Result<HashMap<Node, Vec<(usize, usize)>>> {
        let mut inc: HashMap<Node, Vec<(usize, usize)>> = HashMap::new();
        for (i, &(a, b)) in self.links.iter().enumerate() {
            inc.entry(a).or_default().push((i, 0));
            inc.entry(b).or_default().push((i, 1));
        }
        let bad = |what: String| Err(Error::InvalidDiagram(format!("builder: {what}")));
        for c in 0..self.crossings {
            for p in 0..4 {
                let n = inc.get(&Node::Port(c, p)).map_or(0, Vec::len);
                if n != 1 {
                    return bad(format!("port {p} of crossing {c} has {n} connections"));
                }
            }
        }
        for k in 0..self.boundary {
            let n = inc.get(&Node::Boundary(k)).map_or(0, Vec::len);
            if n != 1 {
                return bad(format!("boundary point {k} has {n} connections"));
            }
        }
        for j in 0..self.joints {
            let n = inc.get(&Node::Joint(j)).map_or(0, Vec::len);
            if n != 2 {
                return bad(format!("joint {j} has {n} connections"));
            }
        }
        Ok(inc)
    }

    fn arrival(&self, (l, fwd): State) -> Node {
        if fwd {
            self.links[l].1
        } else {
            self.links[l].0
        }
    }

    fn departure(&self, (l, fwd): State) -> Node {
        self.arrival((l, !fwd))
    }

    fn step(&self, inc: &HashMap<Node, Vec<(usize, usize)>>, s: State) -> Option<State> {
        let arrived_end = s.1 as usize;
        let leave = |n: Node, skip: Option<(usize, usize)>| {
            let &(l, e) = inc[&n].iter().find(|&&x| Some(x) != skip).expect("validated incidence");
            (l, e == 0)
        };
        match self.arrival(s) {
            Node::Boundary(_) => None,
            Node::Port(c, p) => Some(leave(Node::Port(c, (p + 2) % 4), None)),
            j @ Node::Joint(_) => Some(leave(j, Some((s.0, arrived_end)))),
        }
    }

    /// Orients and labels the drawing. `reversed[i]` flips the `i`-th
    /// component (components are numbered by their first connection).
    pub fn build(&self, reversed: &[bool]) -> Result<Diagram> {
        let inc = self.incidences()?;
        let mut visited = vec![false; self.links.len()];
        let mut components: Vec<Vec<State>> = Vec::new();
        for i in 0..self.links.len() {
            if visited[i] {
                continue;
            }
            let s0 = (i, true);
            // walk backwards to find the start of a path, if any
            let rev = |s: State| (s.0, !s.1);
            let mut back = rev(s0);
            let mut closed = false;
            loop {
                match self.step(&inc, back) {
                    None => break,
                    Some(n) if n == rev(s0) => {
                        closed = true;
                        break;
                    }
                    Some(n) => back = n,
                }
            }
            let start = if closed { s0 } else { rev(back) };
            let mut seq = vec![start];
            let mut cur = start;
            while let Some(n) = self.step(&inc, cur) {
                if n == start {
                    break;
                }
                seq.push(n);
                cur = n;
            }
            if reversed.get(components.len()).copied().unwrap_or(false) {
                seq.reverse();
                for s in seq.iter_mut() {
                    *s = rev(*s);
                }
            }
            if closed {
                // start right after a crossing when there is one
                if let Some(k) = seq.iter().position(|&s| matches!(self.departure(s), Node::Port(..))) {
                    seq.rotate_left(k);
                }
            }
            for s in &seq {
                visited[s.0] = true;
            }
            components.push(seq);
        }

        let mut next_label = 1u64;
        let mut port_label: HashMap<Node, (u64, bool)> = HashMap::new();
        let mut loops = Vec::new();
        for seq in &components {
            let has_ports = seq
                .iter()
                .any(|&s| matches!(self.departure(s), Node::Port(..) | Node::Boundary(_)));
            if !has_ports {
                loops.push(vec![next_label]);
                next_label += 1;
                continue;
            }
            let mut label = next_label;
            next_label += 1;
            for (k, &s) in seq.iter().enumerate() {
                let from = self.departure(s);
                if k > 0 && matches!(from, Node::Port(..)) {
                    label = next_label;
                    next_label += 1;
                }
                if matches!(from, Node::Port(..) | Node::Boundary(_)) {
                    port_label.insert(from, (label, false));
                }
                let to = self.arrival(s);
                if matches!(to, Node::Port(..) | Node::Boundary(_)) {
                    port_label.insert(to, (label, true));
                }
            }
        }

        let mut crossings = Vec::with_capacity(self.crossings);
        for c in 0..self.crossings {
            let at = |p: usize| port_label[&Node::Port(c, p % 4)];
            let a = if at(0).1 { 0 } else { 2 };
            if !at(a).1 || at(a + 2).1 {
                return Err(Error::Internal(format!("builder: under-strand of crossing {c} is not traversed")));
            }
            let sign = if at(a + 3).1 { 1 } else { -1 };
            crossings.push(Crossing { sign, arcs: [at(a).0, at(a + 1).0, at(a + 2).0, at(a + 3).0] });
        }
        let boundary: Vec<Endpoint> = (0..self.boundary)
            .map(|k| {
                let (arc, is_head) = port_label[&Node::Boundary(k)];
                Endpoint { arc, dir: if is_head { Dir::Out } else { Dir::In } }
            })
            .collect();
        let kind = if boundary.is_empty() { DiagramKind::Link } else { DiagramKind::Tangle };
        Diagram::new(kind, crossings, loops, boundary, Vec::new())
    }
}

/// Port indices (bottom-left, bottom-right, top-left, top-right) of a braid
/// crossing; a positive generator has the over-strand from bottom-left to top-right.
fn braid_ports(positive: bool) -> [usize; 4] {
    if positive {
        [3, 0, 2, 1]
    } else {
        [0, 1, 3, 2]
    }
}

struct Strands {
    bottom: Vec<Node>,
    top: Vec<Node>,
}

fn lay_braid(b: &mut Builder, strands: usize, word: &[i32], bottom: Vec<Node>) -> Result<Strands> {
    let top = b.braid(strands, word, &bottom)?;
    Ok(Strands { bottom, top })
}

/// Closure of a braid word; generator `i` is `σ_i`, `-i` its inverse. Strands run upwards.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Builder> {
    let mut b = Builder::new();
    let bottom: Vec<Node> = (0..strands).map(|_| b.joint()).collect();
    let s = lay_braid(&mut b, strands, word, bottom)?;
    for i in 0..strands {
        b.connect(s.top[i], s.bottom[i]);
    }
    Ok(b)
}

/// A braid as a tangle: bottom endpoints left to right, then top endpoints
/// right to left (counterclockwise around the disk).
pub fn braid_tangle(strands: usize, word: &[i32]) -> Result<Builder> {
    let mut b = Builder::new();
    let points: Vec<Node> = (0..2 * strands).map(|_| b.boundary_point()).collect();
    let bottom: Vec<Node> = (0..strands).map(|_| b.joint()).collect();
    for i in 0..strands {
        b.connect(points[i], bottom[i]);
    }
    let s = lay_braid(&mut b, strands, word, bottom)?;
    for i in 0..strands {
        b.connect(s.top[i], points[2 * strands - 1 - i]);
    }
    Ok(b)
}

/// Plat closure of a braid on an even number of strands: neighbouring pairs
/// are capped at the top and cupped at the bottom.
pub fn plat_closure(strands: usize, word: &[i32]) -> Result<Builder> {
    if strands % 2 == 1 {
        return Err(Error::InvalidDiagram("plat closure needs an even number of strands".into()));
    }
    let mut b = Builder::new();
    let bottom: Vec<Node> = (0..strands).map(|_| b.joint()).collect();
    for i in (0..strands).step_by(2) {
        b.connect(bottom[i + 1], bottom[i]);
    }
    let s = lay_braid(&mut b, strands, word, bottom)?;
    for i in (0..strands).step_by(2) {
        b.connect(s.top[i], s.top[i + 1]);
    }
    Ok(b)
}

/// Pretzel link with vertical twist boxes of the given half-twist counts,
/// side by side. Positive entries put the over-strand from top-left to
/// bottom-right.
pub fn pretzel(twists: &[i32]) -> Result<Builder> {
    if twists.is_empty() || twists.contains(&0) {
        return Err(Error::InvalidDiagram("pretzel twist counts must be nonzero".into()));
    }
    let mut b = Builder::new();
    let mut ends = Vec::new();
    for &t in twists {
        // ports as (NW, NE, SW, SE)
        let ports = if t > 0 { [1, 0, 2, 3] } else { [0, 3, 1, 2] };
        let (tl, tr) = (b.joint(), b.joint());
        let (mut left, mut right) = (tl, tr);
        for _ in 0..t.unsigned_abs() {
            let c = b.crossing();
            b.connect(left, Node::Port(c, ports[0]));
            b.connect(right, Node::Port(c, ports[1]));
            left = Node::Port(c, ports[2]);
            right = Node::Port(c, ports[3]);
        }
        let (bl, br) = (b.joint(), b.joint());
        b.connect(left, bl);
        b.connect(right, br);
        ends.push((tl, tr, bl, br));
    }
    for w in ends.windows(2) {
        b.connect(w[0].1, w[1].0);
        b.connect(w[0].3, w[1].2);
    }
    let (first, last) = (ends[0], ends[ends.len() - 1]);
    b.connect(first.0, last.1);
    b.connect(first.2, last.3);
    Ok(b)
}
