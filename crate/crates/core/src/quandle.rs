//! Finite quandles given by operation tables.
//!
//! Elements are always `0..n`. The table stores `table[i][j] = i * j`.

use std::collections::BTreeMap;

use num_integer::Integer;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::Chain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quandle {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

/// Which axiom a violation refers to: 1 idempotence, 2 right invertibility,
/// 3 right self-distributivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: u8,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }
}

/// Raw contents of a quandle file, before axiom checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuandleFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl QuandleFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: QuandleFile = serde_json::from_str(text)?;
        if file.order != file.table.len() {
            return Err(Error::DimensionMismatch { expected: file.order, found: file.table.len() });
        }
        Ok(file)
    }
}

/// Exhaustive check of the three axioms. Each failing axiom is reported once,
/// with the first witness in lexicographic scan order.
pub fn verify_axioms(table: &[Vec<usize>]) -> Result<AxiomReport> {
    let n = table.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::MalformedTable { row: i, col: j, value: v, order: n });
        }
    }
    let mut violations = Vec::new();

    if let Some(i) = (0..n).find(|&i| table[i][i] != i) {
        violations.push(Violation { axiom: 1, witness: vec![i] });
    }

    'ax2: for j in 0..n {
        let mut seen: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let v = table[i][j];
            if let Some(prev) = seen[v] {
                violations.push(Violation { axiom: 2, witness: vec![prev, i, j] });
                break 'ax2;
            }
            seen[v] = Some(i);
        }
    }

    'ax3: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[table[i][k]][table[j][k]] {
                    violations.push(Violation { axiom: 3, witness: vec![i, j, k] });
                    break 'ax3;
                }
            }
        }
    }

    Ok(AxiomReport { passed: violations.is_empty(), violations })
}

fn describe(report: &AxiomReport) -> String {
    report
        .violations
        .iter()
        .map(|v| format!("axiom {} fails at {:?}", v.axiom, v.witness))
        .collect::<Vec<_>>()
        .join("; ")
}

impl Quandle {
    /// Validates `table` and builds the quandle.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::EmptyQuandle);
        }
        let report = verify_axioms(&table)?;
        if !report.passed {
            return Err(Error::AxiomViolation(describe(&report)));
        }
        let order = table.len();
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mut inverse = vec![0; order * order];
        for i in 0..order {
            for j in 0..order {
                inverse[flat[i * order + j] * order + j] = i;
            }
        }
        Ok(Quandle { name: name.into(), order, table: flat, inverse })
    }

    /// Dihedral quandle `R_n`: `i * j = 2j - i mod n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyQuandle);
        }
        let table = (0..n)
            .map(|i| (0..n).map(|j| (2 * j + n - i) % n).collect())
            .collect();
        Self::from_table(format!("R{n}"), table)
    }

    /// Alexander quandle on `Z_m` with `a * b = t a + (1 - t) b`.
    pub fn alexander(m: u64, t: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyQuandle);
        }
        let t = t % m;
        if t.gcd(&m) != 1 {
            return Err(Error::NotInvertible { t, modulus: m });
        }
        let one_minus_t = (1 + m - t) % m;
        let table = (0..m)
            .map(|a| (0..m).map(|b| ((t * a + one_minus_t * b) % m) as usize).collect())
            .collect();
        Self::from_table(format!("Alex(Z{m}, t={t})"), table)
    }

    /// Conjugation quandle `a * b = b⁻¹ a b`. Elements keep the group's numbering.
    pub fn conjugation(group: &[Vec<usize>], inverses: &[usize]) -> Result<Self> {
        check_group(group, inverses)?;
        let n = group.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| group[group[inverses[b]][a]][b]).collect())
            .collect();
        Self::from_table("Conj", table)
    }

    /// Core quandle `g * h = h g⁻¹ h`.
    pub fn core(group: &[Vec<usize>], inverses: &[usize]) -> Result<Self> {
        check_group(group, inverses)?;
        let n = group.len();
        let table = (0..n)
            .map(|g| (0..n).map(|h| group[group[h][inverses[g]]][h]).collect())
            .collect();
        Self::from_table("Core", table)
    }

    /// Parses the JSON quandle format and validates the table.
    pub fn from_json(text: &str) -> Result<Self> {
        let file = QuandleFile::parse(text)?;
        Self::from_table(file.name, file.table)
    }

    pub fn to_json(&self) -> String {
        let file = QuandleFile { name: self.name.clone(), order: self.order, table: self.table_rows() };
        serde_json::to_string(&file).expect("quandle serializes")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// `a * b`. Panics if either element is out of range.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// The unique `c` with `c * b = x`.
    #[inline]
    pub fn op_inverse(&self, x: usize, b: usize) -> usize {
        self.inverse[x * self.order + b]
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, order: self.order })
        }
    }

    /// Connected components under the right translations `x ↦ x * j`.
    pub fn orbits(&self) -> OrbitPartition {
        let n = self.order;
        let mut uf = UnionFind::<usize>::new(n);
        for i in 0..n {
            for j in 0..n {
                uf.union(i, self.op(i, j));
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            blocks.entry(uf.find(x)).or_default().push(x);
        }
        let mut blocks: Vec<Vec<usize>> = blocks.into_values().collect();
        blocks.sort();
        OrbitPartition { blocks }
    }

    /// Applies `* a` to every entry of every tuple in `chain`.
    pub fn act_chain(&self, chain: &Chain, a: usize) -> Result<Chain> {
        self.check_element(a)?;
        let mut out = Chain::zero(chain.degree());
        for (tuple, &coeff) in chain.terms() {
            let mut moved = Vec::with_capacity(tuple.len());
            for &x in tuple {
                self.check_element(x)?;
                moved.push(self.op(x, a));
            }
            out.add_term(moved, coeff);
        }
        Ok(out)
    }
}

fn check_group(group: &[Vec<usize>], inverses: &[usize]) -> Result<()> {
    let n = group.len();
    if n == 0 {
        return Err(Error::EmptyQuandle);
    }
    if inverses.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: inverses.len() });
    }
    for row in group {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        if row.iter().any(|&v| v >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| group[e][x] == x && group[x][e] == x))
        .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
    for x in 0..n {
        let y = inverses[x];
        if y >= n || group[x][y] != identity || group[y][x] != identity {
            return Err(Error::InvalidGroup(format!("{y} is not an inverse of {x}")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if group[group[a][b]][c] != group[a][group[b][c]] {
                    return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    Ok(())
}

/// Cayley table and inverses of the cyclic group `Z_n`.
pub fn cyclic_group(n: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let inverses = (0..n).map(|a| (n - a) % n).collect();
    (table, inverses)
}

/// Cayley table of the symmetric group on `k` letters, with permutations
/// numbered in lexicographic order (0 is the identity). Product `p * q`
/// means "apply `p`, then `q`".
pub fn symmetric_group(k: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
    let mut current: Vec<usize> = (0..k).collect();
    while next_permutation(&mut current) {
        perms.push(current.clone());
    }
    let index: BTreeMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..k).map(|x| q[p[x]]).collect() };
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| index[&compose(p, q)]).collect())
        .collect();
    let inverses = perms
        .iter()
        .map(|p| {
            let mut inv = vec![0; k];
            for (x, &y) in p.iter().enumerate() {
                inv[y] = x;
            }
            index[&inv]
        })
        .collect();
    (table, inverses)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_values() {
        let r4 = Quandle::dihedral(4).unwrap();
        assert_eq!(r4.op(0, 1), 2);
        assert_eq!(r4.op(1, 0), 3);
        let r1 = Quandle::dihedral(1).unwrap();
        assert_eq!(r1.op(0, 0), 0);
        assert!(matches!(Quandle::dihedral(0), Err(Error::EmptyQuandle)));
    }

    #[test]
    fn alexander_values() {
        let q = Quandle::alexander(4, 3).unwrap();
        assert_eq!(q.op(0, 1), 2);
        assert_eq!(q.table_rows(), Quandle::dihedral(4).unwrap().table_rows());
        let q = Quandle::alexander(5, 2).unwrap();
        assert_eq!(q.op(1, 3), 4);
        let trivial = Quandle::alexander(6, 1).unwrap();
        assert!((0..6).all(|a| (0..6).all(|b| trivial.op(a, b) == a)));
        assert!(matches!(Quandle::alexander(6, 2), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn conjugation_of_s3() {
        let (g, inv) = symmetric_group(3);
        let q = Quandle::conjugation(&g, &inv).unwrap();
        let orbits = q.orbits();
        // identity, three transpositions, two 3-cycles
        let mut sizes: Vec<usize> = orbits.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let (z5, zinv) = cyclic_group(5);
        let ab = Quandle::conjugation(&z5, &zinv).unwrap();
        assert!((0..5).all(|a| (0..5).all(|b| ab.op(a, b) == a)));
        let (z1, z1inv) = cyclic_group(1);
        assert_eq!(Quandle::conjugation(&z1, &z1inv).unwrap().order(), 1);
    }

    #[test]
    fn core_of_cyclic() {
        let (z4, inv) = cyclic_group(4);
        let q = Quandle::core(&z4, &inv).unwrap();
        assert_eq!(q.table_rows(), Quandle::dihedral(4).unwrap().table_rows());
        let (z2, inv2) = cyclic_group(2);
        let q2 = Quandle::core(&z2, &inv2).unwrap();
        assert_eq!(q2.table_rows(), vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn bad_group_rejected() {
        let table = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(Quandle::core(&table, &[0, 1]), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn axiom_reports() {
        let r3 = Quandle::dihedral(3).unwrap();
        assert!(verify_axioms(&r3.table_rows()).unwrap().passed);

        let mut t = r3.table_rows();
        t[0][0] = 1;
        let rep = verify_axioms(&t).unwrap();
        assert!(!rep.passed);
        assert_eq!(rep.violations[0], Violation { axiom: 1, witness: vec![0] });

        let rep = verify_axioms(&[vec![0, 0], vec![0, 0]]).unwrap();
        let axioms: Vec<u8> = rep.violations.iter().map(|v| v.axiom).collect();
        assert_eq!(axioms, vec![1, 2]);

        assert!(matches!(
            verify_axioms(&[vec![0, 5], vec![1, 1]]),
            Err(Error::MalformedTable { .. })
        ));
    }

    #[test]
    fn orbit_examples() {
        let r4 = Quandle::dihedral(4).unwrap();
        assert_eq!(r4.orbits().blocks, vec![vec![0, 2], vec![1, 3]]);
        let r3 = Quandle::dihedral(3).unwrap();
        assert_eq!(r3.orbits().blocks, vec![vec![0, 1, 2]]);
        let trivial = Quandle::alexander(3, 1).unwrap();
        assert_eq!(trivial.orbits().blocks.len(), 3);
    }

    #[test]
    fn inverse_operation() {
        let r4 = Quandle::dihedral(4).unwrap();
        assert_eq!(r4.op_inverse(2, 1), 0);
        for n in 1..8 {
            let q = Quandle::dihedral(n).unwrap();
            for x in 0..n {
                for b in 0..n {
                    assert_eq!(q.op_inverse(x, b), q.op(x, b));
                }
            }
        }
        let q = Quandle::alexander(7, 3).unwrap();
        for x in 0..7 {
            for b in 0..7 {
                assert_eq!(q.op_inverse(q.op(x, b), b), x);
                assert_eq!(q.op(q.op_inverse(x, b), b), x);
            }
        }
    }

    #[test]
    fn act_chain_examples() {
        let r4 = Quandle::dihedral(4).unwrap();
        let c = Chain::from_terms(2, [(vec![0, 2], 1)]).unwrap();
        assert_eq!(r4.act_chain(&c, 1).unwrap(), Chain::from_terms(2, [(vec![2, 0], 1)]).unwrap());
        assert!(r4.act_chain(&Chain::zero(2), 3).unwrap().is_zero());
        // (b*a, a) + (b, a*b) with a = 0, b = 1
        let (a, b) = (0, 1);
        let c2p = Chain::from_terms(2, [(vec![r4.op(b, a), a], 1), (vec![b, r4.op(a, b)], 1)]).unwrap();
        let moved = r4.act_chain(&c2p, a).unwrap();
        assert_eq!(moved, Chain::from_terms(2, [(vec![1, 0], 1), (vec![3, 2], 1)]).unwrap());
        assert!(r4.act_chain(&c, 9).is_err());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let r5 = Quandle::dihedral(5).unwrap();
        let back = Quandle::from_json(&r5.to_json()).unwrap();
        assert_eq!(back.table_rows(), r5.table_rows());
        let bad = r#"{"name":"bad","order":2,"table":[[1,1],[0,0]]}"#;
        assert!(matches!(Quandle::from_json(bad), Err(Error::AxiomViolation(_))));
    }
}
