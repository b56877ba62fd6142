//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`, and index 0 is always the identity. All
//! constructors go through [`FiniteGroup::new`], which re-checks every axiom.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, GroupAxiom, Result};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

/// On-disk shape of a group: `{"order": n, "table": [[...]], "names": [...]}`.
#[derive(Serialize, Deserialize)]
struct GroupRepr {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl TryFrom<GroupRepr> for FiniteGroup {
    type Error = Error;

    fn try_from(repr: GroupRepr) -> Result<Self> {
        if repr.table.len() != repr.order {
            return Err(Error::Shape(format!(
                "order is {} but table has {} rows",
                repr.order,
                repr.table.len()
            )));
        }
        FiniteGroup::new(repr.table, repr.names)
    }
}

impl From<FiniteGroup> for GroupRepr {
    fn from(g: FiniteGroup) -> Self {
        GroupRepr {
            order: g.order(),
            table: g.table,
            names: g.names,
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("names", &self.names)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `table` as a Cayley table with identity at index 0.
    ///
    /// Checks run in the order range, inverses (Latin square), identity,
    /// associativity, and the error carries the first failing tuple.
    pub fn new(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Shape("a group needs at least one element".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some((b, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::NotAGroup {
                    reason: GroupAxiom::Range,
                    witness: vec![a, b],
                    detail: format!("table[{a}][{b}] = {v} is not below {n}"),
                });
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::Shape(format!(
                    "{} names given for a group of order {n}",
                    names.len()
                )));
            }
        }
        let mut seen = vec![false; n];
        for (a, row) in table.iter().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            for (b, &v) in row.iter().enumerate() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotAGroup {
                        reason: GroupAxiom::Inverses,
                        witness: vec![a, b],
                        detail: format!("row {a} repeats {v} at column {b}"),
                    });
                }
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let v = table[a][b];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotAGroup {
                        reason: GroupAxiom::Inverses,
                        witness: vec![a, b],
                        detail: format!("column {b} repeats {v} at row {a}"),
                    });
                }
            }
        }
        for b in 0..n {
            if table[0][b] != b || table[b][0] != b {
                return Err(Error::NotAGroup {
                    reason: GroupAxiom::Identity,
                    witness: vec![b],
                    detail: format!("index 0 does not act as identity on {b}"),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup {
                            reason: GroupAxiom::Associativity,
                            witness: vec![a, b, c],
                            detail: format!("(a b) c != a (b c) at ({a}, {b}, {c})"),
                        });
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("latin square row"))
            .collect();
        Ok(FiniteGroup {
            table,
            inverses,
            names,
        })
    }

    /// Cyclic group of order `m` written additively.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1, "cyclic group needs m >= 1");
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        let names = (0..m).map(|a| a.to_string()).collect();
        Self::new(table, Some(names)).expect("cyclic table is a group")
    }

    /// Dihedral group `<r, s | r^m = s^2 = e, s r s = r^-1>` of order `2m`.
    ///
    /// Index `k` is `r^k` and index `m + k` is `s r^k`, so `r` sits at index 1
    /// and `s` at index `m`.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 2, "dihedral group needs m >= 2");
        let decode = |i: usize| (i / m, i % m);
        let encode = |s: usize, k: usize| s * m + k;
        let n = 2 * m;
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (sa, i) = decode(a);
                        let (sb, j) = decode(b);
                        // s^a r^i s^b r^j = s^(a+b) r^((-1)^b i + j)
                        let i = if sb == 1 { (m - i) % m } else { i };
                        encode((sa + sb) % 2, (i + j) % m)
                    })
                    .collect()
            })
            .collect();
        let rot = |k: usize| match k {
            0 => String::new(),
            1 => "r".to_string(),
            k => format!("r^{k}"),
        };
        let names = (0..n)
            .map(|i| match decode(i) {
                (0, 0) => "e".to_string(),
                (0, k) => rot(k),
                (_, k) => format!("s{}", rot(k)),
            })
            .collect();
        Self::new(table, Some(names)).expect("dihedral table is a group")
    }

    /// Symmetric group on `n` letters. Elements are permutations in
    /// lexicographic order of their one-line notation, so the identity comes
    /// first. The product `a b` is the composition "apply `b`, then `a`".
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        Self::from_permutations(&perms)
    }

    /// Group generated by a closed list of permutations (one-line notation),
    /// with `perms[0]` the identity. The product `a b` applies `b` first.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Self {
        let index = |p: &Vec<usize>| {
            perms
                .iter()
                .position(|q| q == p)
                .expect("permutation list is closed under composition")
        };
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&y| a[y]).collect()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<String>())
            .collect();
        Self::new(table, Some(names)).expect("closed permutation list is a group")
    }

    /// Direct product `a x b`, element `(i, j)` at index `i * |b| + j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let names = (0..n)
            .map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb)))
            .collect();
        Self::new(table, Some(names)).expect("direct product is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a b a^-1`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order() {
            return Err(Error::Shape(format!(
                "{} names given for a group of order {}",
                names.len(),
                self.order()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != 0 {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
        }
    }

    /// Smallest subgroup containing `gens`, computed as a fixed point of
    /// right multiplication by generators starting from the identity.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<Subgroup> {
        let n = self.order();
        if let Some(&g) = gens.iter().find(|&&g| g >= n) {
            return Err(Error::OutOfRange {
                what: "group",
                index: g,
                size: n,
            });
        }
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut frontier = vec![0];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !inside[b] {
                    inside[b] = true;
                    frontier.push(b);
                }
            }
        }
        // In a finite group closure under products already gives inverses.
        Ok(Subgroup {
            members: (0..n).filter(|&a| inside[a]).collect(),
        })
    }

    /// Validates an explicit member list as a subgroup.
    pub fn subgroup(&self, members: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        let closure = self.subgroup_closure(members)?;
        if closure.members.len() != set.len() || !closure.members.iter().eq(set.iter()) {
            return Err(Error::Shape(format!(
                "{members:?} is not a subgroup (closure is {:?})",
                closure.members
            )));
        }
        Ok(closure)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order()).all(|g| h.members.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// All subgroups, ordered by (size, members).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut layer: Vec<Subgroup> = (0..n)
            .map(|a| self.subgroup_closure(&[a]).expect("in range"))
            .collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for s in layer {
                if found.insert(s.members.clone()) {
                    next.push(s);
                }
            }
            layer = next
                .iter()
                .flat_map(|s| {
                    (0..n).filter(|a| !s.contains(*a)).map(|a| {
                        let mut gens = s.members.clone();
                        gens.push(a);
                        self.subgroup_closure(&gens).expect("in range")
                    })
                })
                .filter(|s| !found.contains(&s.members))
                .collect();
        }
        let mut all: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups()
            .into_iter()
            .filter(|h| self.is_normal(h))
            .collect()
    }

    /// Left cosets `gH`, ordered by smallest member.
    pub fn coset_space(&self, h: &Subgroup) -> CosetSpace {
        let n = self.order();
        let mut rep = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        for g in 0..n {
            if rep[g] != usize::MAX {
                continue;
            }
            let mut coset: Vec<usize> = h.members.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            for &c in &coset {
                rep[c] = cosets.len();
            }
            cosets.push(coset);
        }
        CosetSpace {
            subgroup: h.clone(),
            cosets,
            rep,
        }
    }
}

/// A subgroup as a sorted member list; always contains 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
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

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpace {
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    rep: Vec<usize>,
}

impl CosetSpace {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Index of the coset containing element `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.rep[g]
    }

    /// Smallest member of coset `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.cosets[c][0]
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
