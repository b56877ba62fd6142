//! Orbit closure, stabilization steps and point translations.
//!
//! The orbit of `x` is computed as the chain
//!
//! ```text
//! G^1(x) = G(x, x),    G^(n+1)(x) = G(G^n(x), G^n(x))
//! ```
//!
//! run to its fixed point. Because `e(a, a') = a'`, every level contains the
//! previous one, so the chain is monotone and stops after at most
//! `carrier_size` levels. The fixed point `A` satisfies `G(A, A) = A` and is
//! the smallest such set containing `x`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::{BinaryGSpace, PointSet};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// How a point entered the chain: `point = g(a1, a2)` with `a1`, `a2` in the
/// level before `level` (the base point itself for level 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub g: usize,
    pub a1: usize,
    pub a2: usize,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub base: usize,
    /// `[G^1(x), G^2(x), ...]`, strictly increasing, last element a fixed point.
    pub chain: Vec<PointSet>,
    pub witnesses: BTreeMap<usize, Witness>,
    /// Least `n` with `G^n(x) = X`, or `None` when the orbit is a proper subset.
    pub step: Option<usize>,
}

impl OrbitReport {
    pub fn orbit(&self) -> &PointSet {
        self.chain.last().expect("chain is never empty")
    }

    /// Re-evaluates every witness and checks it lands on its point and draws
    /// its arguments from the previous level.
    pub fn witnesses_sound(&self, space: &BinaryGSpace) -> bool {
        self.witnesses.iter().all(|(&p, w)| {
            let prev_ok = if w.level == 1 {
                w.a1 == self.base && w.a2 == self.base
            } else {
                let prev = &self.chain[w.level - 2];
                prev.contains(w.a1) && prev.contains(w.a2)
            };
            prev_ok && space.mu(w.g, w.a1, w.a2) == p && self.chain[w.level - 1].contains(p)
        })
    }
}

/// Runs the closure from `x`. Ties between witnesses for the same new point
/// resolve to the lexicographically smallest `(g, a1, a2)`.
pub fn orbit(space: &BinaryGSpace, x: usize) -> Result<OrbitReport> {
    space.check_point(x)?;
    let n = space.group().order();
    let size = space.carrier_size();
    let mut seen = vec![false; size];
    let mut witnesses = BTreeMap::new();

    for g in 0..n {
        let p = space.mu(g, x, x);
        if !seen[p] {
            seen[p] = true;
            witnesses.insert(p, Witness { g, a1: x, a2: x, level: 1 });
        }
    }
    let mut chain = vec![PointSet::from_mask(&seen)];

    loop {
        let level = chain.len() + 1;
        let prev = chain.last().expect("non-empty");
        let mut grew = false;
        for g in 0..n {
            for a1 in prev.iter() {
                for a2 in prev.iter() {
                    let p = space.mu(g, a1, a2);
                    if !seen[p] {
                        seen[p] = true;
                        grew = true;
                        witnesses.insert(p, Witness { g, a1, a2, level });
                    }
                }
            }
        }
        if !grew {
            break;
        }
        chain.push(PointSet::from_mask(&seen));
    }

    let step = chain.iter().position(|a| a.len() == size).map(|i| i + 1);
    Ok(OrbitReport {
        base: x,
        chain,
        witnesses,
        step,
    })
}

pub fn stabilization_step(space: &BinaryGSpace, x: usize) -> Result<Option<usize>> {
    Ok(orbit(space, x)?.step)
}

/// Per-point stabilization steps, indexed by carrier point.
pub fn all_steps(space: &BinaryGSpace) -> Vec<Option<usize>> {
    (0..space.carrier_size())
        .map(|x| orbit(space, x).expect("in range").step)
        .collect()
}

/// Homogeneity verdict and the list of stabilization points.
pub fn homogeneity(space: &BinaryGSpace) -> (bool, Vec<usize>) {
    let points: Vec<usize> = all_steps(space)
        .iter()
        .enumerate()
        .filter_map(|(x, s)| s.map(|_| x))
        .collect();
    (!points.is_empty(), points)
}

pub fn is_homogeneous(space: &BinaryGSpace) -> bool {
    (0..space.carrier_size()).any(|x| orbit(space, x).expect("in range").step.is_some())
}

/// One factor `y -> g(anchor, y)` of a translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SliceFactor {
    pub g: usize,
    pub anchor: usize,
}

/// A bijection of the carrier sending `from` to `to`, written as a
/// composition of slice maps.
///
/// `factors[0]` is applied last: the map is `factors[0] ∘ factors[1] ∘ ...`.
/// `trail[i]` is the image of `from` under the innermost `i` factors, so the
/// trail starts at `from` and ends at `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Translation {
    pub from: usize,
    pub to: usize,
    pub factors: Vec<SliceFactor>,
    pub trail: Vec<usize>,
    pub map: Perm,
}

impl Translation {
    pub fn depth(&self) -> usize {
        self.factors.len()
    }

    /// Rebuilds the map from its factors and checks it is a bijection taking
    /// `from` to `to`.
    pub fn verify(&self, space: &BinaryGSpace) -> bool {
        let rebuilt = compose_factors(space, &self.factors);
        rebuilt == self.map && self.map.apply(self.from) == self.to
    }
}

fn compose_factors(space: &BinaryGSpace, factors: &[SliceFactor]) -> Perm {
    factors.iter().rev().fold(
        Perm::identity(space.carrier_size()),
        |acc, f| space.slice(f.g, f.anchor).compose(&acc),
    )
}

/// Builds a carrier bijection sending `report.base` to `target` by replaying
/// witnesses: a level-1 witness `(g, x0, x0)` gives `y -> g(x0, y)`; a deeper
/// witness `(g, a1, a2)` gives `(y -> g(a1, y)) ∘ phi'` where `phi'` sends
/// `x0` to `a2`.
pub fn translation_from_report(
    space: &BinaryGSpace,
    report: &OrbitReport,
    target: usize,
) -> Result<Translation> {
    let from = report.base;
    let not_in_orbit = || Error::NotInOrbit { base: from, target };
    let mut factors = Vec::new();
    let mut cur = target;
    loop {
        let w = report.witnesses.get(&cur).ok_or_else(not_in_orbit)?;
        factors.push(SliceFactor { g: w.g, anchor: w.a1 });
        if w.level == 1 {
            break;
        }
        cur = w.a2;
    }
    let mut trail = vec![from];
    for f in factors.iter().rev() {
        let last = *trail.last().expect("non-empty");
        trail.push(space.mu(f.g, f.anchor, last));
    }
    let map = compose_factors(space, &factors);
    let t = Translation {
        from,
        to: target,
        factors,
        trail,
        map,
    };
    if !t.verify(space) || *t.trail.last().expect("non-empty") != target {
        return Err(Error::Refuted(format!(
            "translation {from} -> {target} does not replay"
        )));
    }
    Ok(t)
}

pub fn point_translation(space: &BinaryGSpace, from: usize, to: usize) -> Result<Translation> {
    space.check_point(to)?;
    let report = orbit(space, from)?;
    translation_from_report(space, &report, to)
}
