//! Exhaustive enumeration of binary actions of a small group on a small carrier.
//!
//! The two action laws say exactly that, for each fixed `x`, the map
//! `g -> g(x, ·)` is a homomorphism into the symmetric group of the carrier.
//! So the binary actions on `m` points are in bijection with `m`-tuples of
//! homomorphisms `G -> Sym(m)`, and enumerating those tuples is complete.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::action::{BinaryGSpace, PointSet};
use crate::error::{Error, Result};
use crate::group::{permutations, FiniteGroup};
use crate::morphism::classify_transitive_distributive;
use crate::orbit::orbit;
use crate::perm::Perm;

/// Size guards and the candidate budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_points: usize,
    pub max_order: usize,
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 5,
            max_order: 12,
            budget: 10_000_000,
        }
    }
}

/// A homomorphism `G -> Sym(m)`, stored as one permutation per group element.
pub type Homomorphism = Vec<Perm>;

/// A generating set picked greedily: each element not already in the span
/// of earlier picks is added.
pub fn greedy_generators(group: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = group.trivial_subgroup();
    for a in 0..group.order() {
        if !span.contains(a) {
            gens.push(a);
            span = group.subgroup_closure(&gens).expect("in range");
        }
    }
    gens
}

/// Extends generator images to the whole group by walking the Cayley graph,
/// rejecting the assignment if two words for the same element disagree.
fn extend(group: &FiniteGroup, gens: &[usize], images: &[&Perm], m: usize) -> Option<Homomorphism> {
    let mut phi: Vec<Option<Perm>> = vec![None; group.order()];
    phi[0] = Some(Perm::identity(m));
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        for (&s, img) in gens.iter().zip(images) {
            let b = group.mul(a, s);
            let candidate = phi[a].as_ref().expect("visited").compose(img);
            match &phi[b] {
                Some(existing) if *existing != candidate => return None,
                Some(_) => {}
                None => {
                    phi[b] = Some(candidate);
                    queue.push(b);
                }
            }
        }
    }
    phi.into_iter().collect()
}

/// All homomorphisms `G -> Sym(m)`, ordered lexicographically by the tuple of
/// generator images (each image in lexicographic one-line order).
pub fn enumerate_homomorphisms(group: &FiniteGroup, m: usize, limits: Limits) -> Result<Vec<Homomorphism>> {
    if m > limits.max_points || group.order() > limits.max_order {
        return Err(Error::BudgetExceeded {
            budget: limits.budget,
            needed: u64::MAX,
        });
    }
    let gens = greedy_generators(group);
    let perms: Vec<Perm> = permutations(m)
        .into_iter()
        .map(|p| Perm::from_vec(p).expect("permutation"))
        .collect();
    // generator images must satisfy s^ord(s) = e, which prunes most of Sym(m)
    let per_gen: Vec<Vec<&Perm>> = gens
        .iter()
        .map(|&s| {
            let k = group.element_order(s);
            perms
                .iter()
                .filter(|p| {
                    let mut q = Perm::identity(m);
                    for _ in 0..k {
                        q = p.compose(&q);
                    }
                    q.is_identity()
                })
                .collect()
        })
        .collect();
    let candidates = per_gen
        .iter()
        .try_fold(1u64, |acc, v| acc.checked_mul(v.len() as u64))
        .unwrap_or(u64::MAX);
    if candidates > limits.budget {
        return Err(Error::BudgetExceeded {
            budget: limits.budget,
            needed: candidates,
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let images: Vec<&Perm> = idx.iter().zip(&per_gen).map(|(&i, v)| v[i]).collect();
        if let Some(h) = extend(group, &gens, &images, m) {
            out.push(h);
        }
        // odometer, last generator fastest
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_gen[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Builds `mu[g][x][y] = phi_x(g)(y)` from one homomorphism per carrier point.
pub fn action_from_homomorphisms(group: &FiniteGroup, slices: &[&Homomorphism]) -> BinaryGSpace {
    let m = slices.len();
    let mut mu = Vec::with_capacity(group.order() * m * m);
    for g in 0..group.order() {
        for phi in slices {
            mu.extend_from_slice(phi[g].as_slice());
        }
    }
    BinaryGSpace::from_flat_unchecked(group.clone(), m, mu)
}

/// Lazy stream over every binary action of `group` on `m` points, one per
/// `m`-tuple of homomorphisms, with `x = 0` the most significant position.
pub struct ActionIter {
    group: FiniteGroup,
    homs: Vec<Homomorphism>,
    idx: Vec<usize>,
    done: bool,
    total: u64,
}

impl ActionIter {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn homomorphisms(&self) -> &[Homomorphism] {
        &self.homs
    }
}

impl Iterator for ActionIter {
    type Item = BinaryGSpace;

    fn next(&mut self) -> Option<BinaryGSpace> {
        if self.done {
            return None;
        }
        let slices: Vec<&Homomorphism> = self.idx.iter().map(|&i| &self.homs[i]).collect();
        let space = action_from_homomorphisms(&self.group, &slices);
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.homs.len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(space)
    }
}

pub fn enumerate_binary_actions(group: &FiniteGroup, m: usize, limits: Limits) -> Result<ActionIter> {
    if m == 0 {
        return Err(Error::Shape("carrier must be non-empty".into()));
    }
    let homs = enumerate_homomorphisms(group, m, limits)?;
    let total = (homs.len() as u64)
        .checked_pow(m as u32)
        .unwrap_or(u64::MAX);
    if total > limits.budget {
        return Err(Error::BudgetExceeded {
            budget: limits.budget,
            needed: total,
        });
    }
    Ok(ActionIter {
        group: group.clone(),
        idx: vec![0; m],
        homs,
        done: false,
        total,
    })
}

/// A uniformly random binary action: each point draws its homomorphism
/// independently from `homs`.
pub fn random_action<R: Rng + ?Sized>(
    group: &FiniteGroup,
    m: usize,
    homs: &[Homomorphism],
    rng: &mut R,
) -> BinaryGSpace {
    let slices: Vec<&Homomorphism> = (0..m).map(|_| &homs[rng.gen_range(0..homs.len())]).collect();
    action_from_homomorphisms(group, &slices)
}

/// `count` random actions from one seeded stream; the `i`-th space depends
/// only on `(seed, i)`.
pub fn seeded_random_actions(
    group: &FiniteGroup,
    m: usize,
    count: usize,
    seed: u64,
    limits: Limits,
) -> Result<Vec<BinaryGSpace>> {
    use rand::SeedableRng;
    let homs = enumerate_homomorphisms(group, m, limits)?;
    Ok((0..count)
        .map(|i| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            random_action(group, m, &homs, &mut rng)
        })
        .collect())
}

/// Hex SHA-256 prefix over `(order, carrier, mu...)` as little-endian u32s.
pub fn space_id(space: &BinaryGSpace) -> String {
    let mut h = Sha256::new();
    h.update((space.group().order() as u32).to_le_bytes());
    h.update((space.carrier_size() as u32).to_le_bytes());
    for &v in space.table() {
        h.update((v as u32).to_le_bytes());
    }
    h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flags {
    pub distributive: bool,
    pub transitive: bool,
    pub homogeneous: bool,
    pub free: bool,
}

impl Flags {
    /// Compact key such as `D-T-H-f`: upper case for true.
    pub fn key(&self) -> String {
        let c = |b: bool, t: char| if b { t } else { t.to_ascii_lowercase() };
        format!(
            "{}-{}-{}-{}",
            c(self.distributive, 'D'),
            c(self.transitive, 'T'),
            c(self.homogeneous, 'H'),
            c(self.free, 'F')
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitPartition {
    Partition(Vec<PointSet>),
    Overlapping,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub space_id: String,
    pub flags: Flags,
    pub steps: Vec<Option<usize>>,
    pub orbit_partition: OrbitPartition,
}

/// Orbits of every point; a partition if any two are equal or disjoint.
pub fn orbit_partition(space: &BinaryGSpace) -> OrbitPartition {
    let orbits: Vec<PointSet> = (0..space.carrier_size())
        .map(|x| orbit(space, x).expect("in range").orbit().clone())
        .collect();
    let mut blocks: Vec<PointSet> = Vec::new();
    for o in orbits {
        if blocks.iter().any(|b| *b != o && !b.is_disjoint(&o)) {
            return OrbitPartition::Overlapping;
        }
        if !blocks.contains(&o) {
            blocks.push(o);
        }
    }
    blocks.sort();
    OrbitPartition::Partition(blocks)
}

pub fn census_row(space: &BinaryGSpace) -> CensusRow {
    let steps = crate::orbit::all_steps(space);
    CensusRow {
        space_id: space_id(space),
        flags: Flags {
            distributive: space.is_distributive(),
            transitive: space.is_transitive(),
            homogeneous: steps.iter().any(Option::is_some),
            free: space.is_free(),
        },
        steps,
        orbit_partition: orbit_partition(space),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub group_order: usize,
    pub carrier: usize,
    pub rows: Vec<CensusRow>,
    /// Row count per [`Flags::key`].
    pub summary: BTreeMap<String, usize>,
    /// How many distributive transitive rows classified successfully.
    pub classified: usize,
}

pub fn census(group: &FiniteGroup, m: usize, limits: Limits) -> Result<Census> {
    let mut rows = Vec::new();
    let mut summary = BTreeMap::new();
    let mut classified = 0;
    for space in enumerate_binary_actions(group, m, limits)? {
        let row = census_row(&space);
        if row.flags.distributive && row.flags.transitive {
            classify_transitive_distributive(&space, 0)?;
            classified += 1;
        }
        *summary.entry(row.flags.key()).or_insert(0) += 1;
        rows.push(row);
    }
    Ok(Census {
        group_order: group.order(),
        carrier: m,
        rows,
        summary,
        classified,
    })
}
