//! Binary G-spaces on finite carriers.
//!
//! A binary action is a map `mu: G x X x X -> X` with
//!
//! * `mu(e, x, y) = y`
//! * `mu(g h, x, y) = mu(g, x, mu(h, x, y))`
//!
//! for all group elements and carrier points. The table is stored flat in
//! `[g][x][y]` order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ActionLaw, Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Perm;

/// Sorted set of carrier points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(Vec<usize>);

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl PointSet {
    pub fn new(mut points: Vec<usize>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet(points)
    }

    pub fn singleton(x: usize) -> Self {
        PointSet(vec![x])
    }

    pub fn full(n: usize) -> Self {
        PointSet((0..n).collect())
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        PointSet(
            mask.iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.0.iter().all(|&x| !other.contains(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

/// Counts of law instances checked by [`BinaryGSpace::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationCertificate {
    pub identity_checks: u64,
    pub composition_checks: u64,
}

/// A tuple `(g, h, x, x', x'')` where `g(h(x,x'), h(x,x'')) != h(x, g(x',x''))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistributivityFailure {
    pub g: usize,
    pub h: usize,
    pub x: usize,
    pub x1: usize,
    pub x2: usize,
}

impl From<DistributivityFailure> for Error {
    fn from(f: DistributivityFailure) -> Self {
        Error::NotDistributive {
            g: f.g,
            h: f.h,
            x: f.x,
            x1: f.x1,
            x2: f.x2,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryGSpace {
    group: FiniteGroup,
    carrier: usize,
    mu: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for BinaryGSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryGSpace")
            .field("group_order", &self.group.order())
            .field("carrier", &self.carrier)
            .field("labels", &self.labels)
            .finish()
    }
}

/// Checks the identity and composition laws on a flat `[g][x][y]` table.
///
/// Shape and range problems come back as [`Error::Shape`] / [`Error::OutOfRange`];
/// the first failing law instance as [`Error::AxiomViolation`].
pub fn validate_table(
    group: &FiniteGroup,
    carrier: usize,
    mu: &[usize],
) -> Result<ValidationCertificate> {
    let n = group.order();
    if carrier == 0 {
        return Err(Error::Shape("carrier must be non-empty".into()));
    }
    if mu.len() != n * carrier * carrier {
        return Err(Error::Shape(format!(
            "action table has {} entries, expected {n}x{carrier}x{carrier}",
            mu.len()
        )));
    }
    if let Some(&v) = mu.iter().find(|&&v| v >= carrier) {
        return Err(Error::OutOfRange {
            what: "carrier",
            index: v,
            size: carrier,
        });
    }
    let at = |g: usize, x: usize, y: usize| mu[(g * carrier + x) * carrier + y];
    let mut cert = ValidationCertificate {
        identity_checks: 0,
        composition_checks: 0,
    };
    for x in 0..carrier {
        for y in 0..carrier {
            cert.identity_checks += 1;
            if at(0, x, y) != y {
                return Err(Error::AxiomViolation {
                    law: ActionLaw::Identity,
                    g: 0,
                    h: 0,
                    x,
                    y,
                });
            }
        }
    }
    for g in 0..n {
        for h in 0..n {
            let gh = group.mul(g, h);
            for x in 0..carrier {
                for y in 0..carrier {
                    cert.composition_checks += 1;
                    if at(gh, x, y) != at(g, x, at(h, x, y)) {
                        return Err(Error::AxiomViolation {
                            law: ActionLaw::Composition,
                            g,
                            h,
                            x,
                            y,
                        });
                    }
                }
            }
        }
    }
    Ok(cert)
}

impl BinaryGSpace {
    /// Builds a space from a nested `[g][x][y]` table and validates both laws.
    pub fn new(
        group: FiniteGroup,
        carrier: usize,
        mu: Vec<Vec<Vec<usize>>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if mu.len() != group.order()
            || mu.iter().any(|plane| {
                plane.len() != carrier || plane.iter().any(|row| row.len() != carrier)
            })
        {
            return Err(Error::Shape(format!(
                "action table must be {}x{carrier}x{carrier}",
                group.order()
            )));
        }
        let flat = mu.into_iter().flatten().flatten().collect();
        Self::from_flat(group, carrier, flat, labels)
    }

    pub fn from_flat(
        group: FiniteGroup,
        carrier: usize,
        mu: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        validate_table(&group, carrier, &mu)?;
        if let Some(l) = &labels {
            if l.len() != carrier {
                return Err(Error::Shape(format!(
                    "{} labels for a carrier of size {carrier}",
                    l.len()
                )));
            }
        }
        Ok(BinaryGSpace {
            group,
            carrier,
            mu,
            labels,
        })
    }

    /// Tabulates `rule(g, x, y)` and validates the result.
    pub fn from_fn(
        group: FiniteGroup,
        carrier: usize,
        labels: Option<Vec<String>>,
        rule: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let n = group.order();
        let mut mu = Vec::with_capacity(n * carrier * carrier);
        for g in 0..n {
            for x in 0..carrier {
                for y in 0..carrier {
                    mu.push(rule(g, x, y));
                }
            }
        }
        Self::from_flat(group, carrier, mu, labels)
    }

    /// Skips validation; for enumerators that build lawful tables by construction.
    pub(crate) fn from_flat_unchecked(group: FiniteGroup, carrier: usize, mu: Vec<usize>) -> Self {
        debug_assert!(validate_table(&group, carrier, &mu).is_ok());
        BinaryGSpace {
            group,
            carrier,
            mu,
            labels: None,
        }
    }

    /// Re-runs the law checks.
    pub fn validate(&self) -> Result<ValidationCertificate> {
        validate_table(&self.group, self.carrier, &self.mu)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier
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

    /// Resolves a point by label first, then by decimal index.
    pub fn point_by_name(&self, name: &str) -> Option<usize> {
        self.labels
            .as_ref()
            .and_then(|l| l.iter().position(|s| s == name))
            .or_else(|| name.parse().ok().filter(|&i: &usize| i < self.carrier))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.carrier {
            return Err(Error::Shape(format!(
                "{} labels for a carrier of size {}",
                labels.len(),
                self.carrier
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn table(&self) -> &[usize] {
        &self.mu
    }

    /// Nested `[g][x][y]` copy of the table.
    pub fn nested_table(&self) -> Vec<Vec<Vec<usize>>> {
        self.mu
            .chunks(self.carrier * self.carrier)
            .map(|plane| plane.chunks(self.carrier).map(<[usize]>::to_vec).collect())
            .collect()
    }

    /// `g(x, y)` without range checks.
    #[inline]
    pub fn mu(&self, g: usize, x: usize, y: usize) -> usize {
        self.mu[(g * self.carrier + x) * self.carrier + y]
    }

    /// `g(x, y)` with range checks.
    pub fn apply(&self, g: usize, x: usize, y: usize) -> Result<usize> {
        self.check_group(g)?;
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.mu(g, x, y))
    }

    pub(crate) fn check_point(&self, x: usize) -> Result<()> {
        if x < self.carrier {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "carrier",
                index: x,
                size: self.carrier,
            })
        }
    }

    fn check_group(&self, g: usize) -> Result<()> {
        if g < self.group.order() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "group",
                index: g,
                size: self.group.order(),
            })
        }
    }

    /// `K(A, A) = { g(a1, a2) : g in K, a1, a2 in A }`.
    pub fn image_set(&self, elements: &[usize], points: &PointSet) -> PointSet {
        let mut mask = vec![false; self.carrier];
        for &g in elements {
            for a1 in points.iter() {
                for a2 in points.iter() {
                    mask[self.mu(g, a1, a2)] = true;
                }
            }
        }
        PointSet::from_mask(&mask)
    }

    /// `G(x, x)` for the whole group.
    pub fn diagonal_image(&self, x: usize) -> PointSet {
        let mut mask = vec![false; self.carrier];
        for g in 0..self.group.order() {
            mask[self.mu(g, x, x)] = true;
        }
        PointSet::from_mask(&mask)
    }

    /// Isotropy subgroup `{ g : g(x, x) = x }`.
    pub fn isotropy(&self, x: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.mu(g, x, x) == x)
            .collect();
        self.group
            .subgroup(&members)
            .expect("isotropy of a lawful action is a subgroup")
    }

    /// First `(x, missing)` with `missing` outside `G(x, x)`.
    pub fn transitivity_failure(&self) -> Option<(usize, usize)> {
        (0..self.carrier).find_map(|x| {
            let img = self.diagonal_image(x);
            (0..self.carrier)
                .find(|&y| !img.contains(y))
                .map(|y| (x, y))
        })
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_failure().is_none()
    }

    /// First `(x, g)` with `g != e` fixing `x` in `g(x, x)`.
    pub fn freeness_failure(&self) -> Option<(usize, usize)> {
        (0..self.carrier).find_map(|x| {
            (1..self.group.order())
                .find(|&g| self.mu(g, x, x) == x)
                .map(|g| (x, g))
        })
    }

    pub fn is_free(&self) -> bool {
        self.freeness_failure().is_none()
    }

    /// First counterexample to `g(h(x,x'), h(x,x'')) = h(x, g(x',x''))`,
    /// scanning `(g, h, x, x', x'')` lexicographically.
    pub fn distributivity_failure(&self) -> Option<DistributivityFailure> {
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                for x in 0..self.carrier {
                    for x1 in 0..self.carrier {
                        let hx1 = self.mu(h, x, x1);
                        for x2 in 0..self.carrier {
                            let lhs = self.mu(g, hx1, self.mu(h, x, x2));
                            let rhs = self.mu(h, x, self.mu(g, x1, x2));
                            if lhs != rhs {
                                return Some(DistributivityFailure { g, h, x, x1, x2 });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_failure().is_none()
    }

    /// `g -> g(x, ·)` as a map into permutations of the carrier.
    pub fn slice_homomorphism(&self, x: usize) -> Vec<Perm> {
        (0..self.group.order())
            .map(|g| self.slice(g, x))
            .collect()
    }

    /// The bijection `y -> g(x, y)`.
    pub fn slice(&self, g: usize, x: usize) -> Perm {
        let start = (g * self.carrier + x) * self.carrier;
        Perm::from_vec(self.mu[start..start + self.carrier].to_vec())
            .expect("slices of a lawful action are bijections")
    }

    /// The same action transported along the carrier bijection `p`:
    /// `g(p(x), p(y)) = p(g(x, y))` in the result. Labels move with points.
    pub fn relabeled(&self, p: &Perm) -> Result<BinaryGSpace> {
        if p.len() != self.carrier {
            return Err(Error::Shape(format!(
                "relabeling has {} points, carrier has {}",
                p.len(),
                self.carrier
            )));
        }
        let inv = p.inverse();
        let n = self.carrier;
        let mut mu = vec![0; self.mu.len()];
        for g in 0..self.group.order() {
            for a in 0..n {
                for b in 0..n {
                    mu[(g * n + a) * n + b] = p.apply(self.mu(g, inv.apply(a), inv.apply(b)));
                }
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| (0..n).map(|a| l[inv.apply(a)].clone()).collect());
        let mut out = BinaryGSpace::from_flat_unchecked(self.group.clone(), n, mu);
        out.labels = labels;
        Ok(out)
    }
}
