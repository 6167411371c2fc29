//! Rack, degenerate and quandle chain complexes of a finite quandle, their
//! integral homology, and evaluation of cocycles on cycles.
//!
//! The boundary of a generator `(x_1, …, x_n)` is
//!
//! ```text
//! Σ_{i=2..n} (-1)^i [ (x_1, …, x̂_i, …, x_n) - (x_1*x_i, …, x_{i-1}*x_i, x_{i+1}, …, x_n) ]
//! ```
//!
//! Degenerate generators (two equal neighbours) span a subcomplex; the quandle
//! complex is the quotient, realised here by dropping degenerate tuples.
//!
//! Class coordinates depend on the pivot order of the Smith normal form. They
//! are stable for identical inputs, but only class equality, order and
//! divisibility carry meaning.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::quandle::Quandle;

pub const MAX_DEGREE: usize = 5;

/// A formal integer combination of `degree`-tuples. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, i64)>,
    {
        let mut c = Chain::zero(degree);
        for (t, k) in terms {
            if t.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: t.len() });
            }
            c.add_term(t, k);
        }
        Ok(c)
    }

    /// A single generator with coefficient 1.
    pub fn generator(tuple: &[usize]) -> Self {
        let mut c = Chain::zero(tuple.len());
        c.add_term(tuple.to_vec(), 1);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, i64> {
        &self.terms
    }

    pub fn coefficient(&self, tuple: &[usize]) -> i64 {
        self.terms.get(tuple).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * tuple`. The tuple length must match the degree.
    pub fn add_term(&mut self, tuple: Vec<usize>, coeff: i64) {
        debug_assert_eq!(tuple.len(), self.degree);
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(tuple);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().checked_add(coeff).expect("chain coefficient overflow");
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_chain(&mut self, other: &Chain, factor: i64) {
        for (t, &k) in &other.terms {
            self.add_term(t.clone(), k * factor);
        }
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_chain(other, 1);
        c
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_chain(other, -1);
        c
    }

    pub fn scaled(&self, k: i64) -> Chain {
        let mut c = Chain::zero(self.degree);
        c.add_chain(self, k);
        c
    }

    /// Image in the quandle complex: degenerate tuples are dropped.
    pub fn normalized(&self) -> Chain {
        Chain {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| !is_degenerate(t))
                .map(|(t, &k)| (t.clone(), k))
                .collect(),
        }
    }

    /// Line-oriented text form, `<sign><coeff> (x1,…,xn)` per term.
    pub fn to_text(&self) -> String {
        self.terms
            .iter()
            .map(|(t, k)| format!("{k:+} ({})\n", join(t)))
            .collect()
    }

    /// Parses the line-oriented form. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Chain> {
        let mut degree = None;
        let mut chain = Chain::zero(0);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected `<coeff> (x1,...,xn)`, got `{line}`", lineno + 1));
            let open = line.find('(').ok_or_else(bad)?;
            let close = line.rfind(')').ok_or_else(bad)?;
            if close < open || !line[close + 1..].trim().is_empty() {
                return Err(bad());
            }
            let coeff_text: String = line[..open].chars().filter(|c| !c.is_whitespace()).collect();
            let coeff = match coeff_text.as_str() {
                "" | "+" => 1,
                "-" => -1,
                s => i64::from_str(s).map_err(|_| bad())?,
            };
            let tuple = line[open + 1..close]
                .split(',')
                .map(|s| usize::from_str(s.trim()).map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            match degree {
                None => {
                    degree = Some(tuple.len());
                    chain = Chain::zero(tuple.len());
                }
                Some(d) if d != tuple.len() => {
                    return Err(Error::DegreeMismatch { expected: d, found: tuple.len() })
                }
                _ => {}
            }
            chain.add_term(tuple, coeff);
        }
        if degree.is_none() {
            return Err(Error::Parse("chain text contains no terms".into()));
        }
        Ok(chain)
    }

    fn check_elements(&self, q: &Quandle) -> Result<()> {
        for t in self.terms.keys() {
            for &x in t {
                q.check_element(x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, &k)) in self.terms.iter().enumerate() {
            let sign = if k < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let gap = if i > 0 { " " } else { "" };
            let mag = k.unsigned_abs();
            let mag = if mag == 1 { String::new() } else { mag.to_string() };
            write!(f, "{sep}{sign}{gap}{mag}({})", join(t))?;
        }
        Ok(())
    }
}

fn join(t: &[usize]) -> String {
    t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn is_degenerate(tuple: &[usize]) -> bool {
    tuple.windows(2).any(|w| w[0] == w[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Rack,
    Degenerate,
    Quandle,
}

impl Theory {
    fn admits(self, tuple: &[usize]) -> bool {
        match self {
            Theory::Rack => true,
            Theory::Degenerate => is_degenerate(tuple),
            Theory::Quandle => !is_degenerate(tuple),
        }
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rack" => Ok(Theory::Rack),
            "degenerate" => Ok(Theory::Degenerate),
            "quandle" => Ok(Theory::Quandle),
            other => Err(Error::Parse(format!("unknown theory `{other}`"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Rack => "rack",
            Theory::Degenerate => "degenerate",
            Theory::Quandle => "quandle",
        })
    }
}

/// Ordered generators of one chain group, in lexicographic order.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    theory: Theory,
    degree: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ChainBasis {
    pub fn new(order: usize, theory: Theory, degree: usize) -> Self {
        let mut tuples = Vec::new();
        let mut current = vec![0usize; degree];
        let total = order.checked_pow(degree as u32).expect("basis size overflow");
        for _ in 0..total {
            if theory.admits(&current) {
                tuples.push(current.clone());
            }
            // odometer increment
            for pos in (0..degree).rev() {
                current[pos] += 1;
                if current[pos] < order {
                    break;
                }
                current[pos] = 0;
            }
        }
        let index = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        ChainBasis { theory, degree, tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// Coordinates of `chain`; every tuple must belong to this basis.
    pub fn to_vector(&self, chain: &Chain) -> Result<Vec<BigInt>> {
        if chain.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: chain.degree() });
        }
        let mut v = vec![BigInt::zero(); self.len()];
        for (t, &k) in chain.terms() {
            let i = self.index_of(t).ok_or_else(|| {
                Error::Parse(format!("tuple ({}) is not a {} generator", join(t), self.theory))
            })?;
            v[i] = BigInt::from(k);
        }
        Ok(v)
    }

    pub fn to_chain(&self, v: &[BigInt]) -> Result<Chain> {
        let mut c = Chain::zero(self.degree);
        for (t, k) in self.tuples.iter().zip(v) {
            let k = k.to_i64().ok_or_else(|| Error::Internal("coefficient exceeds i64".into()))?;
            c.add_term(t.clone(), k);
        }
        Ok(c)
    }
}

fn rack_boundary_of_tuple(q: &Quandle, tuple: &[usize], coeff: i64, out: &mut Chain) {
    let n = tuple.len();
    for i in 1..n {
        // position i is x_{i+1} in 1-based terms, sign (-1)^(i+1)
        let sign = if (i + 1) % 2 == 0 { coeff } else { -coeff };
        let xi = tuple[i];
        let mut face = Vec::with_capacity(n - 1);
        let mut twisted = Vec::with_capacity(n - 1);
        for (j, &x) in tuple.iter().enumerate() {
            if j == i {
                continue;
            }
            face.push(x);
            twisted.push(if j < i { q.op(x, xi) } else { x });
        }
        out.add_term(face, sign);
        out.add_term(twisted, -sign);
    }
}

/// Boundary of `chain` in the given theory. In the quandle theory both the
/// input and the output are taken modulo degenerate tuples.
pub fn boundary(q: &Quandle, theory: Theory, chain: &Chain) -> Result<Chain> {
    if chain.degree() == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    chain.check_elements(q)?;
    let input = match theory {
        Theory::Quandle => chain.normalized(),
        Theory::Degenerate => {
            if let Some(t) = chain.terms().keys().find(|t| !is_degenerate(t)) {
                return Err(Error::Parse(format!("tuple ({}) is not degenerate", join(t))));
            }
            chain.clone()
        }
        Theory::Rack => chain.clone(),
    };
    let mut out = Chain::zero(chain.degree() - 1);
    for (t, &k) in input.terms() {
        rack_boundary_of_tuple(q, t, k, &mut out);
    }
    Ok(match theory {
        Theory::Quandle => out.normalized(),
        _ => out,
    })
}

fn check_degree(degree: usize) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&degree) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(degree))
    }
}

/// Matrix of `∂_degree` from the degree basis to the degree-1 basis.
pub fn boundary_matrix(q: &Quandle, theory: Theory, degree: usize) -> Result<IntMatrix> {
    if !(1..=MAX_DEGREE + 1).contains(&degree) {
        return Err(Error::UnsupportedDegree(degree));
    }
    let source = ChainBasis::new(q.order(), theory, degree);
    let target = ChainBasis::new(q.order(), theory, degree - 1);
    boundary_matrix_between(q, theory, &source, &target)
}

fn boundary_matrix_between(q: &Quandle, theory: Theory, source: &ChainBasis, target: &ChainBasis) -> Result<IntMatrix> {
    if source.degree() == 1 {
        return Ok(IntMatrix::zeros(0, source.len()));
    }
    let mut m = IntMatrix::zeros(target.len(), source.len());
    for (j, t) in source.tuples().iter().enumerate() {
        let b = boundary(q, theory, &Chain::generator(t))?;
        for (face, &k) in b.terms() {
            let i = target
                .index_of(face)
                .ok_or_else(|| Error::Internal(format!("boundary face ({}) outside the {theory} basis", join(face))))?;
            m[(i, j)] = BigInt::from(k);
        }
    }
    Ok(m)
}

/// `H_n` presented as `Z^r ⊕ ⊕ Z_{d_i}`, together with the data needed to
/// send any cycle to canonical coordinates.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    quandle: Quandle,
    theory: Theory,
    degree: usize,
    basis: ChainBasis,
    /// Inverse of the right transform of the Smith form of `∂_n`.
    cycle_coords: IntMatrix,
    boundary_rank: usize,
    /// Left transform of the Smith form of `im ∂_{n+1}` in cycle coordinates.
    class_transform: IntMatrix,
    /// Invariant factors of `im ∂_{n+1}` inside `ker ∂_n`, units included.
    factors: Vec<BigInt>,
    cycle_rank: usize,
}

/// Canonical coordinates of a homology class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub free: Vec<BigInt>,
    /// Residues, `torsion[i]` in `0..orders[i]`.
    pub torsion: Vec<BigInt>,
    pub orders: Vec<BigInt>,
}

/// Computes `H_degree` of `q` in the given theory.
pub fn homology_group(q: &Quandle, theory: Theory, degree: usize) -> Result<HomologyPresentation> {
    check_degree(degree)?;
    let order = q.order();
    let lower = ChainBasis::new(order, theory, degree - 1);
    let basis = ChainBasis::new(order, theory, degree);
    let upper = ChainBasis::new(order, theory, degree + 1);

    let d_n = if degree == 1 {
        IntMatrix::zeros(0, basis.len())
    } else {
        boundary_matrix_between(q, theory, &basis, &lower)?
    };
    let d_up = boundary_matrix_between(q, theory, &upper, &basis)?;

    let snf_n = smith_normal_form(&d_n);
    let boundary_rank = snf_n.rank();
    let cycle_rank = basis.len() - boundary_rank;

    // Boundaries written in the kernel basis given by the trailing columns of v.
    let in_v = snf_n.v_inv.mul(&d_up)?;
    if !in_v.row_range(0..boundary_rank).is_zero() {
        return Err(Error::Internal("∂∘∂ ≠ 0".into()));
    }
    let image = in_v.row_range(boundary_rank..basis.len());
    let snf_img = smith_normal_form(&image);
    let factors = snf_img.invariant_factors();

    Ok(HomologyPresentation {
        quandle: q.clone(),
        theory,
        degree,
        basis,
        cycle_coords: snf_n.v_inv,
        boundary_rank,
        class_transform: snf_img.u,
        factors,
        cycle_rank,
    })
}

impl HomologyPresentation {
    pub fn quandle(&self) -> &Quandle {
        &self.quandle
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn free_rank(&self) -> usize {
        self.cycle_rank - self.factors.len()
    }

    /// Invariant factors greater than one, in divisibility order.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank() == 0 && self.torsion().is_empty()
    }

    /// Rank of the cycle group `Z_n`.
    pub fn cycle_rank(&self) -> usize {
        self.cycle_rank
    }

    pub fn zero_class(&self) -> HomologyClass {
        let orders = self.torsion();
        HomologyClass {
            free: vec![BigInt::zero(); self.free_rank()],
            torsion: vec![BigInt::zero(); orders.len()],
            orders,
        }
    }

    fn prepare(&self, z: &Chain) -> Result<Chain> {
        if z.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: z.degree() });
        }
        let z = match self.theory {
            Theory::Quandle => z.normalized(),
            _ => z.clone(),
        };
        let b = if self.degree == 1 { Chain::zero(0) } else { boundary(&self.quandle, self.theory, &z)? };
        if !b.is_zero() {
            return Err(Error::NotACycle { boundary: b.to_string() });
        }
        Ok(z)
    }

    /// Canonical coordinates of the class of the cycle `z`.
    pub fn reduce_cycle(&self, z: &Chain) -> Result<HomologyClass> {
        let z = self.prepare(z)?;
        let v = self.basis.to_vector(&z)?;
        let y = self.cycle_coords.mul_vec(&v)?;
        let c = &y[self.boundary_rank..];
        let w = self.class_transform.mul_vec(c)?;
        let mut class = self.zero_class();
        let mut t = 0;
        for (i, d) in self.factors.iter().enumerate() {
            if !d.is_one() {
                class.torsion[t] = w[i].mod_floor(d);
                t += 1;
            }
        }
        for (k, i) in (self.factors.len()..self.cycle_rank).enumerate() {
            class.free[k] = w[i].clone();
        }
        Ok(class)
    }

    pub fn classes_equal(&self, z1: &Chain, z2: &Chain) -> Result<bool> {
        Ok(self.reduce_cycle(z1)? == self.reduce_cycle(z2)?)
    }

    /// Some `c̃` with `p · c̃ = c`, if one exists.
    pub fn divide_class(&self, c: &HomologyClass, p: u64) -> Result<Option<HomologyClass>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        divide_class(c, p)
    }
}

impl fmt::Display for HomologyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion().iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// Divides a class by the prime `p` coordinate-wise: the free part must be
/// divisible and each torsion equation `p x ≡ r (mod d)` solvable.
pub fn divide_class(c: &HomologyClass, p: u64) -> Result<Option<HomologyClass>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigInt::from(p);
    let mut out = c.clone();
    for (slot, v) in out.free.iter_mut().zip(&c.free) {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return Ok(None);
        }
        *slot = q;
    }
    for i in 0..c.torsion.len() {
        let d = &c.orders[i];
        let r = &c.torsion[i];
        let g = p.gcd(d);
        if !r.is_multiple_of(&g) {
            return Ok(None);
        }
        let m = d / &g;
        let x = if m.is_one() {
            BigInt::zero()
        } else {
            let inv = mod_inverse(&(&p / &g).mod_floor(&m), &m).expect("p/g is a unit mod d/g");
            ((r / &g) * inv).mod_floor(&m)
        };
        out.torsion[i] = x;
    }
    Ok(Some(out))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    fn combine(&self, other: &HomologyClass, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> HomologyClass {
        assert_eq!(self.orders, other.orders, "classes from different presentations");
        HomologyClass {
            free: self.free.iter().zip(&other.free).map(|(a, b)| f(a, b)).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&other.torsion)
                .zip(&self.orders)
                .map(|((a, b), d)| f(a, b).mod_floor(d))
                .collect(),
            orders: self.orders.clone(),
        }
    }

    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &HomologyClass) -> HomologyClass {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, k: i64) -> HomologyClass {
        let k = BigInt::from(k);
        HomologyClass {
            free: self.free.iter().map(|a| a * &k).collect(),
            torsion: self.torsion.iter().zip(&self.orders).map(|(a, d)| (a * &k).mod_floor(d)).collect(),
            orders: self.orders.clone(),
        }
    }

    pub fn neg(&self) -> HomologyClass {
        self.scale(-1)
    }

    /// Order of the class; `None` when it has infinite order.
    pub fn order(&self) -> Option<BigInt> {
        if self.free.iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .zip(&self.orders)
                .map(|(r, d)| d / r.gcd(d))
                .fold(BigInt::one(), |acc, o| acc.lcm(&o)),
        )
    }

    /// Smallest `|k|` with `self = k · g`, or `None` if `self` is not a multiple of `g`.
    pub fn multiple_of(&self, g: &HomologyClass) -> Option<BigInt> {
        assert_eq!(self.orders, g.orders, "classes from different presentations");
        let pivot = g.free.iter().position(|v| !v.is_zero());
        if let Some(i) = pivot {
            let (k, r) = self.free[i].div_rem(&g.free[i]);
            if !r.is_zero() {
                return None;
            }
            let k_small = k.to_i64()?;
            return (g.scale(k_small) == *self).then(|| k.abs());
        }
        // g is torsion: search k within one period, both signs.
        let period = g.order().expect("torsion class has finite order");
        let period = period.to_i64()?;
        (0..period)
            .flat_map(|k| [k, -k])
            .find(|&k| g.scale(k) == *self)
            .map(|k| BigInt::from(k.abs()))
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        let tors: Vec<String> = self
            .torsion
            .iter()
            .zip(&self.orders)
            .map(|(r, d)| format!("{r} mod {d}"))
            .collect();
        write!(f, "free [{}] torsion [{}]", free.join(", "), tors.join(", "))
    }
}

/// A cochain with values in `Z` (modulus 0) or `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub degree: usize,
    pub modulus: u64,
    pub values: BTreeMap<Vec<usize>, i64>,
}

impl Cocycle {
    /// Sum of characteristic functions `χ_t` over `tuples`.
    pub fn characteristic_sum(degree: usize, modulus: u64, tuples: &[Vec<usize>]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for t in tuples {
            if t.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: t.len() });
            }
            *values.entry(t.clone()).or_insert(0) += 1;
        }
        Ok(Cocycle { degree, modulus, values })
    }

    fn reduce(&self, v: i64) -> i64 {
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i64)
        }
    }

    pub fn value(&self, tuple: &[usize]) -> i64 {
        self.values.get(tuple).copied().unwrap_or(0)
    }
}

/// Checks `f(∂τ) ≡ 0` for every quandle generator `τ` of degree `n + 1`, and
/// that `f` vanishes on degenerate tuples.
pub fn cocycle_verify(q: &Quandle, f: &Cocycle) -> bool {
    if f.degree == 0 || f.degree > MAX_DEGREE {
        return false;
    }
    let in_range = f.values.keys().all(|t| t.iter().all(|&x| x < q.order()));
    let vanishes = f.values.iter().all(|(t, &v)| !is_degenerate(t) || f.reduce(v) == 0);
    if !in_range || !vanishes {
        return false;
    }
    let upper = ChainBasis::new(q.order(), Theory::Quandle, f.degree + 1);
    upper.tuples().iter().all(|t| {
        let b = boundary(q, Theory::Quandle, &Chain::generator(t)).expect("basis tuples are in range");
        cocycle_evaluate(f, &b).map(|v| v == 0).unwrap_or(false)
    })
}

/// Linear pairing `f(z)`, reduced modulo the cocycle's modulus when positive.
pub fn cocycle_evaluate(f: &Cocycle, z: &Chain) -> Result<i64> {
    if f.degree != z.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree, found: z.degree() });
    }
    let total = z.terms().iter().map(|(t, &k)| k * f.value(t)).sum();
    Ok(f.reduce(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize) -> Quandle {
        Quandle::dihedral(n).unwrap()
    }

    fn ch(degree: usize, terms: &[(&[usize], i64)]) -> Chain {
        Chain::from_terms(degree, terms.iter().map(|(t, k)| (t.to_vec(), *k))).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let r3 = r(3);
        assert!(boundary(&r3, Theory::Quandle, &Chain::generator(&[1])).unwrap().is_zero());
        assert_eq!(
            boundary(&r3, Theory::Quandle, &Chain::generator(&[0, 1])).unwrap(),
            ch(1, &[(&[0], 1), (&[2], -1)])
        );
        // a = 0, b = 1 in R4: a*b = 2, b*a = 3
        let r4 = r(4);
        let w = ch(3, &[(&[2, 1, 2], -1), (&[2, 3, 2], -1)]);
        assert_eq!(boundary(&r4, Theory::Quandle, &w).unwrap(), ch(2, &[(&[0, 2], 2)]));
    }

    #[test]
    fn boundary_matrix_shapes() {
        let r4 = r(4);
        let m1 = boundary_matrix(&r4, Theory::Quandle, 1).unwrap();
        assert_eq!((m1.rows(), m1.cols()), (0, 4));
        let m2 = boundary_matrix(&r4, Theory::Quandle, 2).unwrap();
        assert_eq!((m2.rows(), m2.cols()), (4, 12));
        for theory in [Theory::Rack, Theory::Degenerate, Theory::Quandle] {
            for n in 2..=4 {
                let a = boundary_matrix(&r4, theory, n - 1).unwrap();
                let b = boundary_matrix(&r4, theory, n).unwrap();
                assert!(a.mul(&b).unwrap().is_zero(), "{theory} degree {n}");
            }
        }
    }

    #[test]
    fn basis_sizes() {
        for n in 1..=4 {
            let rack = ChainBasis::new(4, Theory::Rack, n).len();
            let q = ChainBasis::new(4, Theory::Quandle, n).len();
            let d = ChainBasis::new(4, Theory::Degenerate, n).len();
            assert_eq!(rack, 4usize.pow(n as u32));
            assert_eq!(q, 4 * 3usize.pow(n as u32 - 1));
            assert_eq!(rack, q + d);
        }
    }

    #[test]
    fn homology_examples() {
        let h = homology_group(&r(4), Theory::Quandle, 2).unwrap();
        assert_eq!(h.free_rank(), 2);
        assert_eq!(h.torsion(), vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(h.to_string(), "Z^2 (+) Z_2 (+) Z_2");

        let h = homology_group(&r(3), Theory::Quandle, 3).unwrap();
        assert_eq!(h.free_rank(), 0);
        assert_eq!(h.torsion(), vec![BigInt::from(3)]);

        let h = homology_group(&r(1), Theory::Quandle, 2).unwrap();
        assert!(h.is_trivial());
        assert_eq!(h.to_string(), "0");
    }

    #[test]
    fn degree_limits() {
        assert!(matches!(homology_group(&r(3), Theory::Quandle, 0), Err(Error::UnsupportedDegree(0))));
        assert!(matches!(homology_group(&r(3), Theory::Quandle, 6), Err(Error::UnsupportedDegree(6))));
    }

    #[test]
    fn reduce_examples() {
        let r4 = r(4);
        let h = homology_group(&r4, Theory::Quandle, 2).unwrap();
        assert!(h.reduce_cycle(&Chain::zero(2)).unwrap().is_zero());
        let t1 = ch(2, &[(&[0, 2], 1)]);
        assert!(!h.reduce_cycle(&t1).unwrap().is_zero());
        assert!(h.reduce_cycle(&t1.scaled(2)).unwrap().is_zero());
        let not_cycle = ch(2, &[(&[0, 1], 1)]);
        assert!(matches!(h.reduce_cycle(&not_cycle), Err(Error::NotACycle { .. })));
    }

    #[test]
    fn divide_examples() {
        let r4 = r(4);
        let h = homology_group(&r4, Theory::Quandle, 2).unwrap();
        let z = h.zero_class();
        assert_eq!(h.divide_class(&z, 3).unwrap(), Some(z.clone()));
        assert!(matches!(h.divide_class(&z, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn cocycle_examples() {
        let r4 = r(4);
        let (a, b) = (0, 1);
        let ab = r4.op(a, b);
        let ba = r4.op(b, a);
        let c1 = Cocycle::characteristic_sum(2, 2, &[vec![a, b], vec![ab, b], vec![a, ab], vec![ab, a]]).unwrap();
        assert!(cocycle_verify(&r4, &c1));
        let phi1 = Cocycle::characteristic_sum(2, 0, &[vec![a, b], vec![a, ba]]).unwrap();
        assert!(cocycle_verify(&r4, &phi1));
        let bare = Cocycle::characteristic_sum(2, 0, &[vec![0, 1]]).unwrap();
        assert!(!cocycle_verify(&r4, &bare));

        let t1 = ch(2, &[(&[a, ab], 1)]);
        let f1 = ch(2, &[(&[a, b], 1), (&[ab, b], 1)]);
        assert_eq!(cocycle_evaluate(&c1, &t1).unwrap(), 1);
        assert_eq!(cocycle_evaluate(&c1, &f1).unwrap(), 0);
        assert_eq!(cocycle_evaluate(&phi1, &f1).unwrap(), 1);
        assert!(cocycle_evaluate(&phi1, &Chain::zero(3)).is_err());
    }

    #[test]
    fn chain_text_round_trip() {
        let c = ch(3, &[(&[0, 1, 2], -1), (&[0, 2, 0], -1), (&[1, 0, 1], 3)]);
        assert_eq!(Chain::parse(&c.to_text()).unwrap(), c);
        assert_eq!(Chain::parse("-1 (0,1,2)\n# note\n\n+2 (1, 2, 0)").unwrap().len(), 2);
        assert!(Chain::parse("1 (0,1)\n1 (0,1,2)").is_err());
        assert!(Chain::parse("x (0,1)").is_err());
        assert_eq!(c.to_string(), "-(0,1,2) - (0,2,0) + 3(1,0,1)");
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
