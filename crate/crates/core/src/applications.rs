//! Decision procedures built on homology classes of colorings: tangle
//! embedding obstructions, a lower bound for the 4-move distance, and
//! exclusion of prime periods.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::coloring::{
    coloring_cycle, enumerate_boundary_mono, enumerate_colorings, shadow_colorings, shadow_cycle, ClassJson,
    ColoringRecord, Coloring, ShadowColoring,
};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::homology::{
    boundary, cocycle_evaluate, cocycle_verify, divide_class, homology_group, is_prime, Chain, Cocycle,
    HomologyClass, HomologyPresentation, Theory,
};
use crate::quandle::Quandle;

/// Plain colorings live in degree 2, shadow colorings in degree 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Shadow,
}

impl Mode {
    pub fn degree(self) -> usize {
        match self {
            Mode::Plain => 2,
            Mode::Shadow => 3,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Mode::Plain),
            "shadow" => Ok(Mode::Shadow),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Shadow => "shadow",
        })
    }
}

/// Generators of `H₂` of `R₄` for `a = 0`, `b = 1`.
#[derive(Clone, Debug)]
pub struct R4Basis {
    pub quandle: Quandle,
    pub presentation: HomologyPresentation,
    pub f1_chain: Chain,
    pub f2_chain: Chain,
    pub t1_chain: Chain,
    pub t2_chain: Chain,
    pub f1: HomologyClass,
    pub f2: HomologyClass,
    pub t1: HomologyClass,
    pub t2: HomologyClass,
    /// Shift class `f₁ + f₂ + t₁ + t₂` of a single 4-move.
    pub g: HomologyClass,
}

pub const A: usize = 0;
pub const B: usize = 1;

fn pairs(list: &[[usize; 2]]) -> Vec<Vec<usize>> {
    list.iter().map(|p| p.to_vec()).collect()
}

/// The two integral cocycles dual to `f₁`, `f₂`.
pub fn r4_integral_cocycles(q: &Quandle) -> Result<[Cocycle; 2]> {
    let (a, b) = (A, B);
    let (ab, ba) = (q.op(a, b), q.op(b, a));
    Ok([
        Cocycle::characteristic_sum(2, 0, &pairs(&[[a, b], [a, ba]]))?,
        Cocycle::characteristic_sum(2, 0, &pairs(&[[b, a], [b, ab]]))?,
    ])
}

/// The two mod-2 cocycles dual to `t₁`, `t₂`.
pub fn r4_mod2_cocycles(q: &Quandle) -> Result<[Cocycle; 2]> {
    let (a, b) = (A, B);
    let (ab, ba) = (q.op(a, b), q.op(b, a));
    Ok([
        Cocycle::characteristic_sum(2, 2, &pairs(&[[a, b], [ab, b], [a, ab], [ab, a]]))?,
        Cocycle::characteristic_sum(2, 2, &pairs(&[[b, a], [ba, a], [b, ba], [ba, b]]))?,
    ])
}

/// 3-chains whose boundaries are `2t₁` and `2t₂`.
pub fn r4_torsion_witnesses(q: &Quandle) -> Result<[Chain; 2]> {
    let (a, b) = (A, B);
    let (ab, ba) = (q.op(a, b), q.op(b, a));
    Ok([
        Chain::from_terms(3, [(vec![ab, b, ab], -1), (vec![ab, ba, ab], -1)])?,
        Chain::from_terms(3, [(vec![ba, a, ba], -1), (vec![ba, ab, ba], -1)])?,
    ])
}

fn verify(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(format!("R4 basis check failed: {what}")))
    }
}

/// Computes `H₂Q(R₄)`, the classes of `f₁, f₂, t₁, t₂, g`, and checks the
/// cocycle pairings and torsion witnesses.
pub fn r4_basis() -> Result<R4Basis> {
    let q = Quandle::dihedral(4)?.with_name("R4");
    let pres = homology_group(&q, Theory::Quandle, 2)?;
    let (a, b) = (A, B);
    let (ab, ba) = (q.op(a, b), q.op(b, a));
    let f1_chain = Chain::from_terms(2, [(vec![a, b], 1), (vec![ab, b], 1)])?;
    let f2_chain = Chain::from_terms(2, [(vec![b, a], 1), (vec![ba, a], 1)])?;
    let t1_chain = Chain::from_terms(2, [(vec![a, ab], 1)])?;
    let t2_chain = Chain::from_terms(2, [(vec![b, ba], 1)])?;

    let [phi1, phi2] = r4_integral_cocycles(&q)?;
    let [c1, c2] = r4_mod2_cocycles(&q)?;
    for f in [&phi1, &phi2, &c1, &c2] {
        verify(cocycle_verify(&q, f), "cocycle condition")?;
    }
    let ev = |f: &Cocycle, z: &Chain| cocycle_evaluate(f, z);
    verify(
        [ev(&phi1, &f1_chain)?, ev(&phi1, &f2_chain)?, ev(&phi2, &f1_chain)?, ev(&phi2, &f2_chain)?] == [1, 0, 0, 1],
        "integral pairing",
    )?;
    verify(
        [ev(&c1, &t1_chain)?, ev(&c1, &t2_chain)?, ev(&c2, &t1_chain)?, ev(&c2, &t2_chain)?] == [1, 0, 0, 1],
        "mod 2 pairing",
    )?;
    let [w1, w2] = r4_torsion_witnesses(&q)?;
    verify(boundary(&q, Theory::Quandle, &w1)? == t1_chain.scaled(2), "2t1 witness")?;
    verify(boundary(&q, Theory::Quandle, &w2)? == t2_chain.scaled(2), "2t2 witness")?;

    let f1 = pres.reduce_cycle(&f1_chain)?;
    let f2 = pres.reduce_cycle(&f2_chain)?;
    let t1 = pres.reduce_cycle(&t1_chain)?;
    let t2 = pres.reduce_cycle(&t2_chain)?;
    let g = f1.add(&f2).add(&t1).add(&t2);
    verify(f1.order().is_none() && f2.order().is_none(), "f1, f2 of infinite order")?;
    let det = &f1.free[0] * &f2.free[1] - &f1.free[1] * &f2.free[0];
    verify(pres.free_rank() == 2 && !det.is_zero(), "f1, f2 independent")?;
    verify(t1.order() == Some(BigInt::from(2)) && t2.order() == Some(BigInt::from(2)), "t1, t2 of order 2")?;
    for p in [2, 3, 5, 7] {
        verify(divide_class(&g, p)?.is_none(), "g not divisible")?;
    }
    Ok(R4Basis { quandle: q, presentation: pres, f1_chain, f2_chain, t1_chain, t2_chain, f1, f2, t1, t2, g })
}

impl R4Basis {
    /// Integer `k` with `c = k·g`, if any.
    pub fn multiple_of_g(&self, c: &HomologyClass) -> Option<i64> {
        let k = c.multiple_of(&self.g)?.to_i64()?;
        if self.g.scale(k) == *c {
            Some(k)
        } else {
            Some(-k)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Obstructed,
    Inconclusive,
}

/// Tangle coloring with its class and the link coloring realizing the same class, if any.
#[derive(Clone, Debug, Serialize)]
pub struct TangleClassRecord {
    pub coloring: ColoringRecord,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ColoringRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCount {
    pub class: ClassJson,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub mode: Mode,
    pub quandle: String,
    pub homology: String,
    pub tangle_nontrivial_colorings: usize,
    pub link_nontrivial_colorings: usize,
    pub count_obstruction: bool,
    pub class_obstruction: bool,
    pub tangle_colorings: Vec<TangleClassRecord>,
    pub link_classes: Vec<ClassCount>,
}

enum AnyColoring {
    Plain(Coloring),
    Shadow(ShadowColoring),
}

impl AnyColoring {
    fn record(&self, d: &Diagram, class: &HomologyClass) -> ColoringRecord {
        match self {
            AnyColoring::Plain(c) => ColoringRecord::plain(d, c, Some(class)),
            AnyColoring::Shadow(s) => ColoringRecord::shadow(d, s, Some(class)),
        }
    }
}

/// Every (shadow) coloring of a link with its class.
fn link_classes(l: &Diagram, q: &Quandle, mode: Mode, pres: &HomologyPresentation) -> Result<Vec<(AnyColoring, HomologyClass)>> {
    let mut out = Vec::new();
    for c in enumerate_colorings(l, q) {
        match mode {
            Mode::Plain => {
                let class = pres.reduce_cycle(&coloring_cycle(l, q, &c)?)?;
                out.push((AnyColoring::Plain(c), class));
            }
            Mode::Shadow => {
                for s in shadow_colorings(l, q, &c)? {
                    let class = pres.reduce_cycle(&shadow_cycle(l, q, &s)?)?;
                    out.push((AnyColoring::Shadow(s), class));
                }
            }
        }
    }
    Ok(out)
}

/// Class of each boundary-monochromatic (shadow) coloring of a tangle.
fn tangle_classes(t: &Diagram, q: &Quandle, mode: Mode, pres: &HomologyPresentation) -> Result<Vec<(AnyColoring, HomologyClass)>> {
    use crate::coloring::{transport_coloring, transport_shadow};
    let closure = t.closures()?.into_iter().next().ok_or(Error::NoClosure)?;
    let mut out = Vec::new();
    for c in enumerate_boundary_mono(t, q)? {
        match mode {
            Mode::Plain => {
                let cc = transport_coloring(t, &closure, &c)?;
                let class = pres.reduce_cycle(&coloring_cycle(&closure.diagram, q, &cc)?)?;
                out.push((AnyColoring::Plain(c), class));
            }
            Mode::Shadow => {
                for s in shadow_colorings(t, q, &c)? {
                    let sc = transport_shadow(t, &closure, q, &s)?;
                    let class = pres.reduce_cycle(&shadow_cycle(&closure.diagram, q, &sc)?)?;
                    out.push((AnyColoring::Shadow(s), class));
                }
            }
        }
    }
    Ok(out)
}

/// Tests whether tangle `t` can embed in link `l`: every class of a
/// boundary-monochromatic (shadow) coloring of `t` must be realized by some
/// coloring of `l`, and `l` needs at least as many nontrivial colorings.
pub fn tangle_obstruction(t: &Diagram, l: &Diagram, q: &Quandle, mode: Mode) -> Result<ObstructionReport> {
    if !t.is_tangle() {
        return Err(Error::InvalidDiagram("first argument must be a tangle".into()));
    }
    if l.is_tangle() {
        return Err(Error::InvalidDiagram("second argument must be a link".into()));
    }
    let pres = homology_group(q, Theory::Quandle, mode.degree())?;
    let tangle = tangle_classes(t, q, mode, &pres)?;
    let link = link_classes(l, q, mode, &pres)?;

    let tangle_nontrivial = enumerate_boundary_mono(t, q)?.iter().filter(|c| !c.is_monochromatic()).count();
    let link_nontrivial = enumerate_colorings(l, q).iter().filter(|c| !c.is_monochromatic()).count();
    let count_obstruction = tangle_nontrivial > link_nontrivial;

    let mut by_class: BTreeMap<Vec<BigInt>, (usize, usize)> = BTreeMap::new();
    let key = |c: &HomologyClass| c.free.iter().chain(&c.torsion).cloned().collect::<Vec<_>>();
    for (i, (_, class)) in link.iter().enumerate() {
        by_class.entry(key(class)).or_insert((i, 0)).1 += 1;
    }
    let mut records = Vec::with_capacity(tangle.len());
    let mut class_obstruction = false;
    for (c, class) in &tangle {
        let hit = by_class.get(&key(class)).map(|&(i, _)| i);
        class_obstruction |= hit.is_none();
        records.push(TangleClassRecord {
            coloring: c.record(t, class),
            matched: hit.is_some(),
            witness: hit.map(|i| link[i].0.record(l, &link[i].1)),
        });
    }
    let link_classes = by_class
        .values()
        .map(|&(i, count)| ClassCount { class: ClassJson::from(&link[i].1), count })
        .collect();
    let verdict = if count_obstruction || class_obstruction { Verdict::Obstructed } else { Verdict::Inconclusive };
    Ok(ObstructionReport {
        verdict,
        mode,
        quandle: q.name().to_string(),
        homology: pres.to_string(),
        tangle_nontrivial_colorings: tangle_nontrivial,
        link_nontrivial_colorings: link_nontrivial,
        count_obstruction,
        class_obstruction,
        tangle_colorings: records,
        link_classes,
    })
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", if self.verdict == Verdict::Obstructed { "OBSTRUCTED" } else { "INCONCLUSIVE" })?;
        writeln!(f, "mode: {}, quandle: {}, homology: {}", self.mode, self.quandle, self.homology)?;
        writeln!(
            f,
            "nontrivial colorings: tangle {} (boundary-monochromatic), link {}{}",
            self.tangle_nontrivial_colorings,
            self.link_nontrivial_colorings,
            if self.count_obstruction { " -> count obstruction" } else { "" }
        )?;
        let unmatched = self.tangle_colorings.iter().filter(|r| !r.matched).count();
        writeln!(f, "tangle colorings: {}, without a matching link class: {}", self.tangle_colorings.len(), unmatched)?;
        if let Some(r) = self.tangle_colorings.iter().find(|r| !r.matched) {
            writeln!(f, "first unmatched tangle coloring: arcs {}", fmt_map(&r.coloring.arcs))?;
            if let Some(c) = &r.coloring.class {
                writeln!(f, "  class {}", fmt_class(c))?;
            }
        }
        writeln!(f, "link classes:")?;
        for c in &self.link_classes {
            writeln!(f, "  {} x{}", fmt_class(&c.class), c.count)?;
        }
        Ok(())
    }
}

pub fn fmt_map(m: &BTreeMap<String, usize>) -> String {
    let mut items: Vec<(u64, usize)> = m.iter().map(|(k, &v)| (k.parse().unwrap_or(0), v)).collect();
    items.sort();
    let parts: Vec<String> = items.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn fmt_class(c: &ClassJson) -> String {
    let show = |v: &[serde_json::Value]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    format!("free [{}] torsion [{}]", show(&c.free), show(&c.torsion))
}

/// Lower bound for the 4-move distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Bound {
    Finite(u64),
    #[serde(serialize_with = "ser_infinite")]
    Infinite,
}

fn ser_infinite<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("INFINITE")
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(k) => write!(f, "{k}"),
            Bound::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// The coloring classes realizing the max-min shift.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftWitness {
    /// 1 or 2: which link the maximizing class belongs to.
    pub from: usize,
    pub class: ClassJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<ClassJson>,
    /// `k` with `class − partner = k·g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourMoveReport {
    pub bound: Bound,
    pub linking_matrices: [Vec<Vec<u8>>; 2],
    pub linking_mismatch: bool,
    pub coloring_counts: [usize; 2],
    pub count_mismatch: bool,
    pub orbit_usage_mismatch: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftWitness>,
}

fn matrices_equivalent(m1: &[Vec<u8>], m2: &[Vec<u8>]) -> bool {
    let n = m1.len();
    if n != m2.len() {
        return false;
    }
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n).iter().any(|p| (0..n).all(|i| (0..n).all(|j| m1[i][j] == m2[p[i]][p[j]])))
}

fn orbit_usage(q: &Quandle, colorings: &[Coloring]) -> Vec<Vec<usize>> {
    let orbits = q.orbits();
    let mut usage: Vec<Vec<usize>> = colorings
        .iter()
        .map(|c| {
            let mut blocks: Vec<usize> = c.used_colors().iter().filter_map(|&x| orbits.block_of(x)).collect();
            blocks.sort_unstable();
            blocks.dedup();
            blocks
        })
        .collect();
    usage.sort();
    usage
}

/// Lower bound for the 4-move distance between two links, from `R₄` colorings.
pub fn four_move_bound(l1: &Diagram, l2: &Diagram) -> Result<FourMoveReport> {
    if l1.is_tangle() || l2.is_tangle() {
        return Err(Error::InvalidDiagram("4-move bound needs link diagrams".into()));
    }
    let basis = r4_basis()?;
    let q = &basis.quandle;
    let m1 = l1.linking_matrix_mod2();
    let m2 = l2.linking_matrix_mod2();
    let linking_mismatch = !matrices_equivalent(&m1, &m2);
    let c1 = enumerate_colorings(l1, q);
    let c2 = enumerate_colorings(l2, q);
    let count_mismatch = c1.len() != c2.len();
    let orbit_usage_mismatch = orbit_usage(q, &c1) != orbit_usage(q, &c2);
    let mut report = FourMoveReport {
        bound: Bound::Infinite,
        linking_matrices: [m1, m2],
        linking_mismatch,
        coloring_counts: [c1.len(), c2.len()],
        count_mismatch,
        orbit_usage_mismatch,
        shift: None,
    };
    if linking_mismatch || count_mismatch || orbit_usage_mismatch {
        return Ok(report);
    }
    let classes = |l: &Diagram, cs: &[Coloring]| -> Result<Vec<HomologyClass>> {
        let mut v = cs
            .iter()
            .map(|c| basis.presentation.reduce_cycle(&coloring_cycle(l, q, c)?))
            .collect::<Result<Vec<_>>>()?;
        v.sort_by(|a, b| (&a.free, &a.torsion).cmp(&(&b.free, &b.torsion)));
        v.dedup();
        Ok(v)
    };
    let s1 = classes(l1, &c1)?;
    let s2 = classes(l2, &c2)?;

    let mut best: Option<(u64, ShiftWitness)> = None;
    for (from, a, b) in [(1, &s1, &s2), (2, &s2, &s1)] {
        for c in a.iter() {
            let nearest = b
                .iter()
                .filter_map(|d| basis.multiple_of_g(&c.sub(d)).map(|k| (k.unsigned_abs(), k, d)))
                .min_by_key(|&(abs, _, _)| abs);
            let (abs, witness) = match nearest {
                Some((abs, k, d)) => {
                    (abs, ShiftWitness { from, class: c.into(), partner: Some(d.into()), k: Some(k) })
                }
                None => {
                    report.shift = Some(ShiftWitness { from, class: c.into(), partner: None, k: None });
                    return Ok(report);
                }
            };
            if best.as_ref().map_or(true, |(b, _)| abs > *b) {
                best = Some((abs, witness));
            }
        }
    }
    let (bound, witness) = best.map_or((0, None), |(b, w)| (b, Some(w)));
    report.bound = Bound::Finite(bound);
    report.shift = witness;
    Ok(report)
}

impl fmt::Display for FourMoveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "4-move distance lower bound: {}", self.bound)?;
        writeln!(
            f,
            "linking matrices mod 2: {:?} vs {:?}{}",
            self.linking_matrices[0],
            self.linking_matrices[1],
            if self.linking_mismatch { " (mismatch)" } else { "" }
        )?;
        writeln!(
            f,
            "R4 colorings: {} vs {}{}",
            self.coloring_counts[0],
            self.coloring_counts[1],
            if self.count_mismatch { " (mismatch)" } else { "" }
        )?;
        if self.orbit_usage_mismatch {
            writeln!(f, "orbit usage of colorings differs")?;
        }
        if let Some(w) = &self.shift {
            match (&w.partner, w.k) {
                (Some(p), Some(k)) => writeln!(
                    f,
                    "extremal class (link {}): {} = {} + {}·g",
                    w.from,
                    fmt_class(&w.class),
                    fmt_class(p),
                    k
                )?,
                _ => writeln!(f, "class {} of link {} differs from every class of the other link by a non-multiple of g", fmt_class(&w.class), w.from)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PeriodStatus {
    Excluded,
    Candidate,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeVerdict {
    pub prime: u64,
    pub status: PeriodStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicityReport {
    pub mode: Mode,
    pub quandle: String,
    pub homology: String,
    pub colorings: usize,
    pub classes: Vec<ClassCount>,
    pub primes: Vec<PrimeVerdict>,
}

impl PeriodicityReport {
    pub fn candidates(&self) -> Vec<u64> {
        self.primes.iter().filter(|v| v.status == PeriodStatus::Candidate).map(|v| v.prime).collect()
    }

    pub fn excluded(&self) -> Vec<u64> {
        self.primes.iter().filter(|v| v.status == PeriodStatus::Excluded).map(|v| v.prime).collect()
    }
}

/// For each prime `p`, excludes period `p` when some class not divisible by
/// `p` is represented by a number of (shadow) colorings not divisible by `p`.
pub fn periodicity_candidates(l: &Diagram, q: &Quandle, mode: Mode, primes: &[u64]) -> Result<PeriodicityReport> {
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    if l.is_tangle() {
        return Err(Error::InvalidDiagram("periodicity needs a link diagram".into()));
    }
    let pres = homology_group(q, Theory::Quandle, mode.degree())?;
    let all = link_classes(l, q, mode, &pres)?;
    let mut counts: Vec<(HomologyClass, usize)> = Vec::new();
    for (_, c) in &all {
        match counts.iter_mut().find(|(k, _)| k == c) {
            Some(e) => e.1 += 1,
            None => counts.push((c.clone(), 1)),
        }
    }
    counts.sort_by(|a, b| (&a.0.free, &a.0.torsion).cmp(&(&b.0.free, &b.0.torsion)));
    let mut verdicts = Vec::new();
    for &p in primes {
        let mut violation = None;
        for (c, n) in &counts {
            if n % p as usize != 0 && divide_class(c, p)?.is_none() {
                violation = Some((c, *n));
                break;
            }
        }
        verdicts.push(match violation {
            Some((c, n)) => PrimeVerdict { prime: p, status: PeriodStatus::Excluded, class: Some(c.into()), count: Some(n) },
            None => PrimeVerdict { prime: p, status: PeriodStatus::Candidate, class: None, count: None },
        });
    }
    Ok(PeriodicityReport {
        mode,
        quandle: q.name().to_string(),
        homology: pres.to_string(),
        colorings: all.len(),
        classes: counts.iter().map(|(c, n)| ClassCount { class: c.into(), count: *n }).collect(),
        primes: verdicts,
    })
}

impl fmt::Display for PeriodicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {}, quandle: {}, homology: {}", self.mode, self.quandle, self.homology)?;
        writeln!(f, "colorings: {}", self.colorings)?;
        for c in &self.classes {
            writeln!(f, "  {} x{}", fmt_class(&c.class), c.count)?;
        }
        for v in &self.primes {
            match (&v.class, v.count) {
                (Some(c), Some(n)) => writeln!(f, "p = {}: EXCLUDED ({} represented {} times)", v.prime, fmt_class(c), n)?,
                _ => writeln!(f, "p = {}: CANDIDATE", v.prime)?,
            }
        }
        let cands: Vec<String> = self.candidates().iter().map(ToString::to_string).collect();
        writeln!(f, "CANDIDATE: {{{}}}", cands.join(", "))
    }
}

impl From<HomologyClass> for ClassJson {
    fn from(c: HomologyClass) -> Self {
        ClassJson::from(&c)
    }
}
