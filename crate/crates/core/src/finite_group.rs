//! Finite groups given by full multiplication tables, plus the subgroup and
//! coset machinery the cover constructions need.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order for which associativity is checked exhaustively.
pub const ASSOCIATIVITY_CHECK_BOUND: usize = 256;

/// Largest order a builtin family may produce.
pub const BUILTIN_ORDER_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotAGroup {
    #[error("table is not square (row {row} has length {len}, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table is empty")]
    Empty,
    #[error("entry mul[{row}][{col}] = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("row {row} is not a permutation (value {value} repeats)")]
    RowNotPermutation { row: usize, value: usize },
    #[error("column {col} is not a permutation (value {value} repeats)")]
    ColumnNotPermutation { col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse (x*y = e but y*x = {witness})")]
    NoInverse { element: usize, witness: usize },
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("order {order} exceeds the associativity check bound; construct with trusted = true")]
    Untrusted { order: usize },
    #[error("labels: expected {expected}, got {got}")]
    LabelCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(#[from] NotAGroup),
    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),
    #[error("element {element} out of range for group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
}

/// A finite group as a validated multiplication table. The identity is always
/// element 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    // row-major: mul[x * order + y] = x*y
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish_non_exhaustive()
    }
}

impl FiniteGroup {
    pub const IDENTITY: usize = 0;

    pub fn from_mul_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_table_with(table, None, false)
    }

    /// Validates `table` and relabels so that the identity becomes element 0.
    ///
    /// Associativity is only checked when the order is at most
    /// [`ASSOCIATIVITY_CHECK_BOUND`]; larger tables are rejected unless
    /// `trusted` is set.
    pub fn from_table_with(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        trusted: bool,
    ) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(NotAGroup::Empty.into());
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != m {
                return Err(NotAGroup::NotSquare { row, len: r.len(), expected: m }.into());
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= m) {
                return Err(NotAGroup::EntryOutOfRange { row, col, value }.into());
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != m {
                return Err(NotAGroup::LabelCount { expected: m, got: labels.len() }.into());
            }
        }
        for (row, r) in table.iter().enumerate() {
            let mut seen = vec![false; m];
            for &v in r {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(NotAGroup::RowNotPermutation { row, value: v }.into());
                }
            }
        }
        for col in 0..m {
            let mut seen = vec![false; m];
            for r in &table {
                let v = r[col];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(NotAGroup::ColumnNotPermutation { col, value: v }.into());
                }
            }
        }
        let e = (0..m).find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x)).ok_or(NotAGroup::NoIdentity)?;

        // Swap e and 0 so the identity sits at index 0.
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mul = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                mul[relabel(x) * m + relabel(y)] = relabel(table[x][y]);
            }
        }
        let labels = labels.map(|mut l| {
            l.swap(0, e);
            l
        });

        let mut inv = vec![0; m];
        for x in 0..m {
            let y = (0..m).find(|&y| mul[x * m + y] == 0).expect("rows are permutations");
            if mul[y * m + x] != 0 {
                return Err(NotAGroup::NoInverse { element: x, witness: mul[y * m + x] }.into());
            }
            inv[x] = y;
        }

        if m > ASSOCIATIVITY_CHECK_BOUND {
            if !trusted {
                return Err(NotAGroup::Untrusted { order: m }.into());
            }
        } else {
            for x in 0..m {
                for y in 0..m {
                    let xy = mul[x * m + y];
                    for z in 0..m {
                        if mul[xy * m + z] != mul[x * m + mul[y * m + z]] {
                            return Err(NotAGroup::NotAssociative { x, y, z }.into());
                        }
                    }
                }
            }
        }

        Ok(FiniteGroup { order: m, mul, inv, labels })
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, mul: vec![0], inv: vec![0], labels: Some(vec!["e".into()]) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        Self::IDENTITY
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(Self::IDENTITY, |acc, _| self.mul(acc, base))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves an element written either as an index or as a label.
    pub fn parse_element(&self, s: &str) -> Result<usize, GroupError> {
        let s = s.trim();
        if let Ok(x) = s.parse::<usize>() {
            return self.check_element(x);
        }
        self.labels
            .as_ref()
            .and_then(|l| l.iter().position(|t| t == s))
            .ok_or_else(|| GroupError::UnknownLabel(s.to_string()))
    }

    pub fn check_element(&self, x: usize) -> Result<usize, GroupError> {
        if x < self.order {
            Ok(x)
        } else {
            Err(GroupError::ElementOutOfRange { element: x, order: self.order })
        }
    }

    /// Least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != Self::IDENTITY {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut in_set = vec![false; self.order];
        in_set[Self::IDENTITY] = true;
        let mut members = vec![Self::IDENTITY];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !in_set[y] {
                    in_set[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members }
    }

    /// Left cosets `gH`, identity block first, every block sorted, blocks
    /// ordered by their smallest element (which is the representative).
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut blocks = Vec::with_capacity(self.order / h.len().max(1));
        for g in self.elements() {
            if assigned[g] {
                continue;
            }
            let mut block: Vec<usize> = h.members.iter().map(|&x| self.mul(g, x)).collect();
            block.sort_unstable();
            for &x in &block {
                assigned[x] = true;
            }
            blocks.push(block);
        }
        blocks
    }

    pub fn is_exponent_two_abelian(&self) -> bool {
        self.elements().all(|x| self.mul(x, x) == Self::IDENTITY)
    }
}

/// A subgroup, stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_whole(&self, group: &FiniteGroup) -> bool {
        self.members.len() == group.order()
    }
}

/// The images `q(a_1), ..., q(a_n)` of the free generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImages(Vec<usize>);

impl GeneratorImages {
    pub fn new(group: &FiniteGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        for &x in &images {
            group.check_element(x)?;
        }
        Ok(GeneratorImages(images))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Image of petal `i` (1-based).
    pub fn of(&self, petal: usize) -> usize {
        self.0[petal - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn generate(&self, group: &FiniteGroup) -> bool {
        group.subgroup_generated(&self.0).is_whole(group)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupJson { order: self.order, mul: self.table(), labels: self.labels.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = GroupJson::deserialize(d)?;
        if raw.order != raw.mul.len() {
            return Err(D::Error::custom(format!("order {} does not match table size {}", raw.order, raw.mul.len())));
        }
        FiniteGroup::from_table_with(raw.mul, raw.labels, false).map_err(D::Error::custom)
    }
}

/// Named group families, written on the command line as `cyclic:5`,
/// `elementary_abelian:2,3`, `dihedral:4`, `symmetric:3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    Cyclic(usize),
    ElementaryAbelian {
        p: usize,
        k: usize,
    },
    /// Symmetries of a regular `m`-gon, order `2m`.
    Dihedral(usize),
    Symmetric(usize),
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupFamily::ElementaryAbelian { p, k } => write!(f, "elementary_abelian:{p},{k}"),
            GroupFamily::Dihedral(m) => write!(f, "dihedral:{m}"),
            GroupFamily::Symmetric(k) => write!(f, "symmetric:{k}"),
        }
    }
}

impl FromStr for GroupFamily {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::UnsupportedFamily(s.to_string());
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let params: Vec<usize> = if params.is_empty() {
            vec![]
        } else {
            params.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        match (name.trim(), params.as_slice()) {
            ("cyclic", [m]) => Ok(GroupFamily::Cyclic(*m)),
            ("elementary_abelian", [p, k]) => Ok(GroupFamily::ElementaryAbelian { p: *p, k: *k }),
            ("dihedral", [m]) => Ok(GroupFamily::Dihedral(*m)),
            ("symmetric", [k]) => Ok(GroupFamily::Symmetric(*k)),
            ("trivial", []) => Ok(GroupFamily::Cyclic(1)),
            _ => Err(bad()),
        }
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl GroupFamily {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let unsupported = || GroupError::UnsupportedFamily(self.to_string());
        let (table, labels): (Vec<Vec<usize>>, Vec<String>) = match *self {
            GroupFamily::Cyclic(m) => {
                if m == 0 || m > BUILTIN_ORDER_LIMIT {
                    return Err(unsupported());
                }
                let table = (0..m).map(|x| (0..m).map(|y| (x + y) % m).collect()).collect();
                let labels = (0..m).map(|k| power_label("g", k)).collect();
                (table, labels)
            }
            GroupFamily::ElementaryAbelian { p, k } => {
                if !is_prime(p) || k == 0 || p.checked_pow(k as u32).is_none_or(|o| o > BUILTIN_ORDER_LIMIT) {
                    return Err(unsupported());
                }
                let m = p.pow(k as u32);
                let digits = |mut x: usize| {
                    (0..k)
                        .map(|_| {
                            let d = x % p;
                            x /= p;
                            d
                        })
                        .collect::<Vec<_>>()
                };
                let table = (0..m)
                    .map(|x| {
                        let dx = digits(x);
                        (0..m)
                            .map(|y| {
                                let dy = digits(y);
                                (0..k).rev().fold(0, |acc, i| acc * p + (dx[i] + dy[i]) % p)
                            })
                            .collect()
                    })
                    .collect();
                let labels = (0..m)
                    .map(|x| {
                        let parts: String = digits(x)
                            .iter()
                            .enumerate()
                            .filter(|(_, &d)| d != 0)
                            .map(|(i, &d)| power_label(&format!("x{}", i + 1), d))
                            .collect();
                        if parts.is_empty() {
                            "e".to_string()
                        } else {
                            parts
                        }
                    })
                    .collect();
                (table, labels)
            }
            GroupFamily::Dihedral(m) => {
                if m == 0 || 2 * m > BUILTIN_ORDER_LIMIT {
                    return Err(unsupported());
                }
                // r^a s^f  <->  a + m f ;  s r = r^-1 s
                let decode = |x: usize| (x % m, x / m);
                let table = (0..2 * m)
                    .map(|x| {
                        let (a1, f1) = decode(x);
                        (0..2 * m)
                            .map(|y| {
                                let (a2, f2) = decode(y);
                                let a = if f1 == 0 { (a1 + a2) % m } else { (a1 + m - a2) % m };
                                a + m * ((f1 + f2) % 2)
                            })
                            .collect()
                    })
                    .collect();
                let labels = (0..2 * m)
                    .map(|x| {
                        let (a, f) = decode(x);
                        match (a, f) {
                            (0, 0) => "e".to_string(),
                            (0, 1) => "s".to_string(),
                            (a, 0) => power_label("r", a),
                            (a, _) => format!("{}s", power_label("r", a)),
                        }
                    })
                    .collect();
                (table, labels)
            }
            GroupFamily::Symmetric(k) => {
                if k == 0 || k > 5 {
                    return Err(unsupported());
                }
                let perms = permutations(k);
                let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
                // (x*y)(i) = x(y(i))
                let table = perms
                    .iter()
                    .map(|x| perms.iter().map(|y| index(&y.iter().map(|&i| x[i]).collect::<Vec<_>>())).collect())
                    .collect();
                let labels = perms.iter().map(|p| cycle_label(p)).collect();
                (table, labels)
            }
        };
        // builtin tables are correct by construction, but still go through the
        // validator when small enough to check
        let order = table.len();
        FiniteGroup::from_table_with(table, Some(labels), order > ASSOCIATIVITY_CHECK_BOUND)
    }

    /// A generating set, in the order used for default images.
    pub fn standard_generators(&self) -> Vec<usize> {
        match *self {
            GroupFamily::Cyclic(1) => vec![],
            GroupFamily::Cyclic(_) => vec![1],
            GroupFamily::ElementaryAbelian { p, k } => (0..k).map(|i| p.pow(i as u32)).collect(),
            GroupFamily::Dihedral(1) => vec![1],
            GroupFamily::Dihedral(m) => vec![1, m],
            GroupFamily::Symmetric(k) if k <= 1 => vec![],
            GroupFamily::Symmetric(k) => {
                let perms = permutations(k);
                let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
                let mut transposition: Vec<usize> = (0..k).collect();
                transposition.swap(0, 1);
                let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
                let mut gens = vec![index(&transposition)];
                if k > 2 {
                    gens.push(index(&cycle));
                }
                gens
            }
        }
    }
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        k => format!("{base}^{k}"),
    }
}

/// All permutations of `0..k` in lexicographic order; the identity is first.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Cycle notation on points `1..=k`, e.g. `(12)(34)`.
fn cycle_label(p: &[usize]) -> String {
    let mut seen = BTreeSet::new();
    let mut out = String::new();
    for start in 0..p.len() {
        if seen.contains(&start) || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while seen.insert(i) {
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        GroupFamily::ElementaryAbelian { p: 2, k: 2 }.build().unwrap()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_mul_table(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn klein_four_from_table() {
        let t = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let g = FiniteGroup::from_mul_table(t).unwrap();
        assert_eq!(g.order(), 4);
        assert!((1..4).all(|x| g.element_order(x) == 2));
        assert_eq!(g, FiniteGroup { labels: None, ..klein() });
    }

    #[test]
    fn rejects_non_permutation_row() {
        let err = FiniteGroup::from_mul_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NotAGroup(NotAGroup::RowNotPermutation { row: 1, value: 1 }));
    }

    #[test]
    fn rejects_other_malformed_tables() {
        let e = |t: Vec<Vec<usize>>| FiniteGroup::from_mul_table(t).unwrap_err();
        assert!(matches!(e(vec![]), GroupError::NotAGroup(NotAGroup::Empty)));
        assert!(matches!(e(vec![vec![0, 1], vec![1]]), GroupError::NotAGroup(NotAGroup::NotSquare { .. })));
        assert!(matches!(e(vec![vec![0, 2], vec![1, 0]]), GroupError::NotAGroup(NotAGroup::EntryOutOfRange { .. })));
        // Latin square without identity: x*y = -x-y mod 3
        assert!(matches!(
            e(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]),
            GroupError::NotAGroup(NotAGroup::NoIdentity)
        ));
        // Latin square with identity but not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(e(loop5), GroupError::NotAGroup(NotAGroup::NotAssociative { .. })));
    }

    #[test]
    fn identity_is_relocated() {
        // Z/3 with identity stored at index 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table_with(t, Some(vec!["a".into(), "b".into(), "e".into()]), false).unwrap();
        assert_eq!(g.label(0), "e");
        assert!(g.elements().all(|x| g.mul(0, x) == x && g.mul(x, 0) == x));
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn large_tables_need_trust() {
        let m = 257;
        let t: Vec<Vec<usize>> = (0..m).map(|x| (0..m).map(|y| (x + y) % m).collect()).collect();
        assert!(matches!(
            FiniteGroup::from_mul_table(t.clone()),
            Err(GroupError::NotAGroup(NotAGroup::Untrusted { order: 257 }))
        ));
        assert_eq!(FiniteGroup::from_table_with(t, None, true).unwrap().order(), 257);
    }

    #[test]
    fn builtin_families() {
        assert_eq!(GroupFamily::Cyclic(1).build().unwrap().order(), 1);
        let s3 = GroupFamily::Symmetric(3).build().unwrap();
        assert_eq!(s3.order(), 6);
        // brute-force powering
        let mut orders: Vec<usize> =
            s3.elements().map(|x| (1..=6).find(|&k| s3.pow(x, k as i64) == 0).unwrap()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        assert!(!s3.is_abelian());
        assert_eq!(GroupFamily::Dihedral(4).build().unwrap().order(), 8);
        assert_eq!(GroupFamily::Symmetric(5).build().unwrap().order(), 120);
        assert!(GroupFamily::Symmetric(6).build().is_err());
        assert!(GroupFamily::ElementaryAbelian { p: 4, k: 2 }.build().is_err());
        assert!(GroupFamily::Cyclic(0).build().is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("cyclic:5".parse::<GroupFamily>().unwrap(), GroupFamily::Cyclic(5));
        assert_eq!(
            "elementary_abelian:2,3".parse::<GroupFamily>().unwrap(),
            GroupFamily::ElementaryAbelian { p: 2, k: 3 }
        );
        assert!("quaternion:8".parse::<GroupFamily>().is_err());
        assert!("cyclic:x".parse::<GroupFamily>().is_err());
        for f in ["cyclic:4", "dihedral:3", "symmetric:4", "elementary_abelian:3,2"] {
            assert_eq!(f.parse::<GroupFamily>().unwrap().to_string(), f);
        }
    }

    #[test]
    fn standard_generators_generate() {
        for f in [
            GroupFamily::Cyclic(1),
            GroupFamily::Cyclic(6),
            GroupFamily::ElementaryAbelian { p: 2, k: 3 },
            GroupFamily::ElementaryAbelian { p: 3, k: 2 },
            GroupFamily::Dihedral(1),
            GroupFamily::Dihedral(5),
            GroupFamily::Symmetric(1),
            GroupFamily::Symmetric(2),
            GroupFamily::Symmetric(4),
        ] {
            let g = f.build().unwrap();
            assert!(g.subgroup_generated(&f.standard_generators()).is_whole(&g), "{f}");
        }
    }

    #[test]
    fn elementary_abelian_labels_and_generators() {
        let g = klein();
        assert_eq!(g.labels().unwrap(), &["e", "x1", "x2", "x1x2"]);
        assert_eq!(GroupFamily::ElementaryAbelian { p: 2, k: 2 }.standard_generators(), vec![1, 2]);
        assert_eq!(g.parse_element("x1x2").unwrap(), 3);
        assert_eq!(g.parse_element("2").unwrap(), 2);
        assert!(g.parse_element("7").is_err());
        assert!(g.parse_element("y").is_err());
    }

    #[test]
    fn symmetric_labels() {
        let s3 = GroupFamily::Symmetric(3).build().unwrap();
        assert_eq!(s3.label(0), "e");
        let gens = GroupFamily::Symmetric(3).standard_generators();
        assert_eq!(s3.label(gens[0]), "(12)");
        assert_eq!(s3.label(gens[1]), "(123)");
    }

    #[test]
    fn subgroups_and_cosets() {
        let g = klein();
        assert_eq!(g.subgroup_generated(&[]).members(), &[0]);
        let hb = g.subgroup_generated(&[2]);
        assert_eq!(hb.members(), &[0, 2]);
        assert!(g.subgroup_generated(&[1, 2]).is_whole(&g));
        assert_eq!(g.left_cosets(&hb), vec![vec![0, 2], vec![1, 3]]);
        let whole = g.subgroup_generated(&[1, 2]);
        assert_eq!(g.left_cosets(&whole), vec![vec![0, 1, 2, 3]]);
        let triv = g.subgroup_generated(&[]);
        assert_eq!(g.left_cosets(&triv).len(), 4);
        let z6 = GroupFamily::Cyclic(6).build().unwrap();
        assert_eq!(z6.element_order(1), 6);
        assert_eq!(z6.element_order(0), 1);
    }

    #[test]
    fn json_round_trip_validates() {
        let s3 = GroupFamily::Symmetric(3).build().unwrap();
        let js = serde_json::to_string(&s3).unwrap();
        let back: FiniteGroup = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s3);
        let bad = r#"{"order": 2, "mul": [[0,1],[1,1]]}"#;
        assert!(serde_json::from_str::<FiniteGroup>(bad).is_err());
        let mismatch = r#"{"order": 3, "mul": [[0,1],[1,0]]}"#;
        assert!(serde_json::from_str::<FiniteGroup>(mismatch).is_err());
    }
}
