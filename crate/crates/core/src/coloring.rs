//! Quandle colorings and shadow colorings of diagrams, and the chains they
//! represent.
//!
//! At a crossing the under-arc on the side the over-arc's normal points away
//! from is `r₁`, the other under-arc is `r₂`, and `C(r₂) = C(r₁) * C(over)`.
//! With the slot convention of [`crate::diagram`] this reads
//! `C(slot 2) = C(slot 0) * C(over)` at positive crossings and
//! `C(slot 0) = C(slot 2) * C(over)` at negative ones.
//!
//! Region colors obey `color(left of e) = color(right of e) * C(e)`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::diagram::{Closure, Diagram};
use crate::error::{Error, Result};
use crate::homology::{boundary, Chain, HomologyClass, HomologyPresentation, Theory};
use crate::quandle::Quandle;

/// Colors of the over-arcs of a diagram, indexed like [`Diagram::arcs`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    arc_colors: Vec<usize>,
}

impl Coloring {
    pub fn from_arc_colors(arc_colors: Vec<usize>) -> Self {
        Coloring { arc_colors }
    }

    /// Builds a coloring from colors of individual labels; labels on one arc must agree.
    pub fn from_label_colors(d: &Diagram, colors: &BTreeMap<u64, usize>) -> Result<Self> {
        let mut arc_colors = vec![None; d.arcs().len()];
        for (&label, &x) in colors {
            if d.label_index(label).is_none() {
                return Err(Error::InvalidDiagram(format!("unknown label {label}")));
            }
            let slot = &mut arc_colors[d.arc_of(label)];
            match slot {
                Some(y) if *y != x => {
                    return Err(Error::InvalidDiagram(format!("label {label} colored {x} but its arc has {y}")))
                }
                _ => *slot = Some(x),
            }
        }
        let arc_colors = arc_colors
            .into_iter()
            .enumerate()
            .map(|(a, c)| c.ok_or_else(|| Error::InvalidDiagram(format!("arc {a} has no color"))))
            .collect::<Result<_>>()?;
        Ok(Coloring { arc_colors })
    }

    pub fn arc_colors(&self) -> &[usize] {
        &self.arc_colors
    }

    pub fn color_of(&self, d: &Diagram, label: u64) -> usize {
        self.arc_colors[d.arc_of(label)]
    }

    pub fn is_monochromatic(&self) -> bool {
        self.arc_colors.windows(2).all(|w| w[0] == w[1])
    }

    /// Distinct colors used.
    pub fn used_colors(&self) -> Vec<usize> {
        let mut v = self.arc_colors.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn label_colors(&self, d: &Diagram) -> BTreeMap<u64, usize> {
        d.labels().iter().map(|&l| (l, self.color_of(d, l))).collect()
    }
}

/// A coloring with region colors, indexed like [`Diagram::regions`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShadowColoring {
    pub coloring: Coloring,
    pub region_colors: Vec<usize>,
}

/// (incoming under-arc, outgoing under-arc, over-arc) as arc indices, with `out = in * over`.
fn relations(d: &Diagram) -> Vec<(usize, usize, usize)> {
    d.crossings()
        .iter()
        .map(|c| {
            let (i, o) = if c.sign > 0 { (0, 2) } else { (2, 0) };
            (d.arc_of(c.arcs[i]), d.arc_of(c.arcs[o]), d.arc_of(c.arcs[1]))
        })
        .collect()
}

pub fn is_valid_coloring(d: &Diagram, q: &Quandle, c: &Coloring) -> bool {
    c.arc_colors.len() == d.arcs().len()
        && c.arc_colors.iter().all(|&x| x < q.order())
        && relations(d).iter().all(|&(i, o, r)| q.op(c.arc_colors[i], c.arc_colors[r]) == c.arc_colors[o])
}

fn propagate(q: &Quandle, rels: &[(usize, usize, usize)], a: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for &(i, o, r) in rels {
            let Some(y) = a[r] else { continue };
            match (a[i], a[o]) {
                (Some(x), Some(z)) => {
                    if q.op(x, y) != z {
                        return false;
                    }
                }
                (Some(x), None) => {
                    a[o] = Some(q.op(x, y));
                    changed = true;
                }
                (None, Some(z)) => {
                    a[i] = Some(q.op_inverse(z, y));
                    changed = true;
                }
                (None, None) => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(q: &Quandle, rels: &[(usize, usize, usize)], mut a: Vec<Option<usize>>, out: &mut Vec<Coloring>) {
    if !propagate(q, rels, &mut a) {
        return;
    }
    match a.iter().position(Option::is_none) {
        None => out.push(Coloring { arc_colors: a.into_iter().map(|x| x.expect("assigned")).collect() }),
        Some(k) => {
            for x in 0..q.order() {
                let mut next = a.clone();
                next[k] = Some(x);
                search(q, rels, next, out);
            }
        }
    }
}

fn enumerate_with(d: &Diagram, q: &Quandle, fixed: &[(usize, usize)]) -> Vec<Coloring> {
    let rels = relations(d);
    let mut a = vec![None; d.arcs().len()];
    for &(arc, x) in fixed {
        match a[arc] {
            Some(y) if y != x => return Vec::new(),
            _ => a[arc] = Some(x),
        }
    }
    let mut out = Vec::new();
    search(q, &rels, a, &mut out);
    out
}

/// All colorings, sorted lexicographically by arc colors.
pub fn enumerate_colorings(d: &Diagram, q: &Quandle) -> Vec<Coloring> {
    let mut out = enumerate_with(d, q, &[]);
    out.sort();
    out
}

/// Colorings of a tangle in which every boundary endpoint carries one color.
pub fn enumerate_boundary_mono(t: &Diagram, q: &Quandle) -> Result<Vec<Coloring>> {
    if !t.is_tangle() {
        return Err(Error::InvalidDiagram("boundary-monochromatic colorings need a tangle".into()));
    }
    let arcs: Vec<usize> = t.boundary_labels().iter().map(|&l| t.arc_of(l)).collect();
    let mut out = Vec::new();
    for x in 0..q.order() {
        let fixed: Vec<(usize, usize)> = arcs.iter().map(|&a| (a, x)).collect();
        out.extend(enumerate_with(t, q, &fixed));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn is_boundary_monochromatic(t: &Diagram, c: &Coloring) -> bool {
    let colors: Vec<usize> = t.boundary_labels().iter().map(|&l| c.color_of(t, l)).collect();
    colors.windows(2).all(|w| w[0] == w[1])
}

/// The unique shadow coloring extending `c` with `base_region` colored `base_color`.
pub fn shadow_extend(d: &Diagram, q: &Quandle, c: &Coloring, base_region: usize, base_color: usize) -> Result<ShadowColoring> {
    let nr = d.regions().len();
    if base_region >= nr {
        return Err(Error::InvalidDiagram(format!("region {base_region} does not exist")));
    }
    q.check_element(base_color)?;
    let mut adj: Vec<Vec<(usize, u64, bool)>> = vec![Vec::new(); nr];
    for &l in d.labels() {
        let (left, right) = (d.left_region(l), d.right_region(l));
        adj[right].push((left, l, true));
        adj[left].push((right, l, false));
    }
    let mut colors = vec![None; nr];
    colors[base_region] = Some(base_color);
    let mut queue = VecDeque::from([base_region]);
    while let Some(r) = queue.pop_front() {
        let w = colors[r].expect("queued regions are colored");
        for &(n, l, to_left) in &adj[r] {
            if colors[n].is_none() {
                let x = c.color_of(d, l);
                colors[n] = Some(if to_left { q.op(w, x) } else { q.op_inverse(w, x) });
                queue.push_back(n);
            }
        }
    }
    let region_colors: Vec<usize> = colors
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::Internal("region not reachable in the dual graph".into())))
        .collect::<Result<_>>()?;
    for &l in d.labels() {
        let x = c.color_of(d, l);
        if q.op(region_colors[d.right_region(l)], x) != region_colors[d.left_region(l)] {
            return Err(Error::Internal(format!("region colors disagree across label {l}")));
        }
    }
    Ok(ShadowColoring { coloring: c.clone(), region_colors })
}

pub fn is_valid_shadow(d: &Diagram, q: &Quandle, s: &ShadowColoring) -> bool {
    is_valid_coloring(d, q, &s.coloring)
        && s.region_colors.len() == d.regions().len()
        && d.labels().iter().all(|&l| {
            q.op(s.region_colors[d.right_region(l)], s.coloring.color_of(d, l)) == s.region_colors[d.left_region(l)]
        })
}

/// All shadow extensions of `c`, one per color of region 0.
pub fn shadow_colorings(d: &Diagram, q: &Quandle, c: &Coloring) -> Result<Vec<ShadowColoring>> {
    (0..q.order()).map(|w| shadow_extend(d, q, c, 0, w)).collect()
}

fn check_cycle(d: &Diagram, q: &Quandle, z: &Chain) -> Result<()> {
    if d.is_tangle() {
        return Ok(());
    }
    let b = boundary(q, Theory::Quandle, z)?;
    if !b.is_zero() {
        return Err(Error::Internal(format!("coloring chain {z} has boundary {b}")));
    }
    Ok(())
}

/// `Σ ε (C(r₁), C(over))` over crossings, with degenerate pairs dropped.
/// For links the result is checked to be a cycle.
pub fn coloring_cycle(d: &Diagram, q: &Quandle, c: &Coloring) -> Result<Chain> {
    if !is_valid_coloring(d, q, c) {
        return Err(Error::InvalidDiagram("not a valid coloring of this diagram".into()));
    }
    let mut z = Chain::zero(2);
    for cr in d.crossings() {
        let r1 = if cr.sign > 0 { cr.arcs[0] } else { cr.arcs[2] };
        z.add_term(vec![c.color_of(d, r1), c.color_of(d, cr.arcs[1])], cr.sign as i64);
    }
    let z = z.normalized();
    check_cycle(d, q, &z)?;
    Ok(z)
}

/// Like [`coloring_cycle`], without dropping degenerate tuples.
pub fn raw_coloring_chain(d: &Diagram, c: &Coloring) -> Chain {
    let mut z = Chain::zero(2);
    for cr in d.crossings() {
        let r1 = if cr.sign > 0 { cr.arcs[0] } else { cr.arcs[2] };
        z.add_term(vec![c.color_of(d, r1), c.color_of(d, cr.arcs[1])], cr.sign as i64);
    }
    z
}

/// `Σ ε (w, C(r₁), C(over))` with `w` the source-region color, before normalization.
pub fn raw_shadow_chain(d: &Diagram, s: &ShadowColoring) -> Chain {
    let mut z = Chain::zero(3);
    for (i, cr) in d.crossings().iter().enumerate() {
        let r1 = if cr.sign > 0 { cr.arcs[0] } else { cr.arcs[2] };
        let w = s.region_colors[d.source_region(i)];
        z.add_term(vec![w, s.coloring.color_of(d, r1), s.coloring.color_of(d, cr.arcs[1])], cr.sign as i64);
    }
    z
}

/// Quandle 3-chain of a shadow coloring; checked to be a cycle for links.
pub fn shadow_cycle(d: &Diagram, q: &Quandle, s: &ShadowColoring) -> Result<Chain> {
    if !is_valid_shadow(d, q, s) {
        return Err(Error::InvalidDiagram("not a valid shadow coloring of this diagram".into()));
    }
    let z = raw_shadow_chain(d, s).normalized();
    check_cycle(d, q, &z)?;
    Ok(z)
}

/// Carries a boundary-monochromatic coloring of `t` to its closure.
pub fn transport_coloring(t: &Diagram, closure: &Closure, c: &Coloring) -> Result<Coloring> {
    if !is_boundary_monochromatic(t, c) {
        return Err(Error::NotBoundaryMonochromatic);
    }
    let colors: BTreeMap<u64, usize> = closure
        .label_map
        .iter()
        .map(|(&tl, &cl)| (cl, c.color_of(t, tl)))
        .collect();
    Coloring::from_label_colors(&closure.diagram, &colors)
}

/// Carries a boundary-monochromatic shadow coloring of `t` to its closure.
pub fn transport_shadow(t: &Diagram, closure: &Closure, q: &Quandle, s: &ShadowColoring) -> Result<ShadowColoring> {
    let c = transport_coloring(t, closure, &s.coloring)?;
    let ext = shadow_extend(&closure.diagram, q, &c, closure.region_map[0], s.region_colors[0])?;
    for (r, &cr) in closure.region_map.iter().enumerate() {
        if ext.region_colors[cr] != s.region_colors[r] {
            return Err(Error::Internal(format!("region {r} changes color in the closure")));
        }
    }
    Ok(ext)
}

fn first_closure(t: &Diagram) -> Result<Closure> {
    t.closures()?.into_iter().next().ok_or(Error::NoClosure)
}

/// Homology class in degree 2 of a boundary-monochromatic coloring of a tangle.
pub fn tangle_class(t: &Diagram, q: &Quandle, c: &Coloring, pres: &HomologyPresentation) -> Result<HomologyClass> {
    expect_degree(pres, 2)?;
    let closure = first_closure(t)?;
    let cc = transport_coloring(t, &closure, c)?;
    pres.reduce_cycle(&coloring_cycle(&closure.diagram, q, &cc)?)
}

/// Homology class in degree 3 of a boundary-monochromatic shadow coloring of a tangle.
pub fn tangle_shadow_class(t: &Diagram, q: &Quandle, s: &ShadowColoring, pres: &HomologyPresentation) -> Result<HomologyClass> {
    expect_degree(pres, 3)?;
    let closure = first_closure(t)?;
    let sc = transport_shadow(t, &closure, q, s)?;
    pres.reduce_cycle(&shadow_cycle(&closure.diagram, q, &sc)?)
}

fn expect_degree(pres: &HomologyPresentation, degree: usize) -> Result<()> {
    if pres.degree() != degree {
        return Err(Error::DegreeMismatch { expected: degree, found: pres.degree() });
    }
    Ok(())
}

fn big_to_json(v: &BigInt) -> Value {
    v.to_i64().map(Value::from).unwrap_or_else(|| Value::String(v.to_string()))
}

/// JSON form of a class: canonical free coordinates and torsion residues.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassJson {
    pub free: Vec<Value>,
    pub torsion: Vec<Value>,
}

impl From<&HomologyClass> for ClassJson {
    fn from(c: &HomologyClass) -> Self {
        ClassJson { free: c.free.iter().map(big_to_json).collect(), torsion: c.torsion.iter().map(big_to_json).collect() }
    }
}

/// One entry of a coloring report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColoringRecord {
    pub arcs: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassJson>,
}

impl ColoringRecord {
    pub fn plain(d: &Diagram, c: &Coloring, class: Option<&HomologyClass>) -> Self {
        ColoringRecord {
            arcs: c.label_colors(d).into_iter().map(|(l, x)| (l.to_string(), x)).collect(),
            regions: None,
            class: class.map(ClassJson::from),
        }
    }

    pub fn shadow(d: &Diagram, s: &ShadowColoring, class: Option<&HomologyClass>) -> Self {
        let mut r = Self::plain(d, &s.coloring, class);
        r.regions = Some(s.region_colors.iter().enumerate().map(|(i, &x)| (i.to_string(), x)).collect());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::braid_closure;
    use crate::diagram::{Crossing, DiagramKind};
    use crate::homology::homology_group;

    fn trefoil() -> Diagram {
        let x = |arcs| Crossing { sign: 1, arcs };
        Diagram::new(DiagramKind::Link, vec![x([1, 5, 2, 4]), x([3, 1, 4, 6]), x([5, 3, 6, 2])], vec![], vec![], vec![])
            .unwrap()
    }

    #[test]
    fn trefoil_colorings() {
        let t = trefoil();
        let r3 = Quandle::dihedral(3).unwrap();
        let cs = enumerate_colorings(&t, &r3);
        assert_eq!(cs.len(), 9);
        assert_eq!(cs.iter().filter(|c| c.is_monochromatic()).count(), 3);
        for c in &cs {
            assert!(is_valid_coloring(&t, &r3, c));
            coloring_cycle(&t, &r3, c).unwrap();
            for s in shadow_colorings(&t, &r3, c).unwrap() {
                shadow_cycle(&t, &r3, &s).unwrap();
            }
        }
        // arcs {1,6}, {2,3}, {4,5} colored 0, 1, 2
        let c = Coloring::from_arc_colors(vec![0, 1, 2]);
        let z = coloring_cycle(&t, &r3, &c).unwrap();
        assert_eq!(z.len(), 3);
        assert_eq!(z.terms().values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn trefoil_shadow_generates_h3() {
        let t = trefoil();
        let r3 = Quandle::dihedral(3).unwrap();
        let h3 = homology_group(&r3, Theory::Quandle, 3).unwrap();
        let c = Coloring::from_arc_colors(vec![0, 1, 2]);
        let s = shadow_extend(&t, &r3, &c, 0, 0).unwrap();
        let class = h3.reduce_cycle(&shadow_cycle(&t, &r3, &s).unwrap()).unwrap();
        assert_eq!(class.order(), Some(BigInt::from(3)));
    }

    #[test]
    fn hopf_colorings() {
        let h = braid_closure(2, &[1, 1]).unwrap().build(&[]).unwrap();
        let r4 = Quandle::dihedral(4).unwrap();
        let cs = enumerate_colorings(&h, &r4);
        assert_eq!(cs.len(), 8);
        let orbits = r4.orbits();
        for c in &cs {
            let used = c.used_colors();
            assert!(used.iter().all(|&x| orbits.block_of(x) == orbits.block_of(used[0])));
        }
    }

    #[test]
    fn unknot_shadow() {
        let u = Diagram::new(DiagramKind::Link, vec![], vec![vec![1]], vec![], vec![]).unwrap();
        let r3 = Quandle::dihedral(3).unwrap();
        let c = Coloring::from_arc_colors(vec![1]);
        let s = shadow_extend(&u, &r3, &c, u.right_region(1), 0).unwrap();
        assert_eq!(s.region_colors[u.left_region(1)], r3.op(0, 1));
        assert!(shadow_cycle(&u, &r3, &s).unwrap().is_zero());
    }

    #[test]
    fn record_json_shape() {
        let t = trefoil();
        let c = Coloring::from_arc_colors(vec![0, 1, 2]);
        let v = serde_json::to_value(ColoringRecord::plain(&t, &c, None)).unwrap();
        assert_eq!(v["arcs"]["1"], 0);
        assert_eq!(v["arcs"]["2"], 1);
        assert!(v.get("class").is_none());
    }
}
