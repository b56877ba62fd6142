//! Biequivariant maps and the classification of transitive distributive spaces.
//!
//! A map `f: X -> Y` between binary G-spaces over the same group is
//! biequivariant when `f(g(x, x')) = g(f(x), f(x'))` for all `g, x, x'`; a
//! biequimorphism is a bijective biequivariant map whose inverse is also
//! biequivariant. Every biequimorphism emitted here has its inverse checked
//! explicitly.

use serde::{Deserialize, Serialize};

use crate::action::BinaryGSpace;
use crate::error::{Error, Result};
use crate::gallery::{coset_action, standard_distributive_action};
use crate::group::{FiniteGroup, Subgroup};

/// Default cap on search nodes for [`find_biequivariant_maps`].
pub const DEFAULT_MAP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceFailure {
    pub g: usize,
    pub x: usize,
    pub x1: usize,
}

/// A carrier map together with its checked status.
///
/// Serializes as `{"map": [...], "checked": bool}`; `checked` is true when
/// the map was verified biequivariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiMap {
    pub map: Vec<usize>,
    pub checked: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<EquivarianceFailure>,
}

impl BiMap {
    /// Checks `map` against the two spaces and records the outcome.
    pub fn check(source: &BinaryGSpace, target: &BinaryGSpace, map: Vec<usize>) -> Result<Self> {
        let counterexample = equivariance_failure(source, target, &map)?;
        Ok(BiMap {
            checked: counterexample.is_none(),
            map,
            counterexample,
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map
            .iter()
            .all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
    }

    pub fn inverse(&self) -> Option<Vec<usize>> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Some(inv)
    }

    /// `self` then `next`.
    pub fn then(&self, next: &BiMap) -> Vec<usize> {
        self.map.iter().map(|&v| next.map[v]).collect()
    }
}

fn check_shapes(source: &BinaryGSpace, target: &BinaryGSpace, map: &[usize]) -> Result<()> {
    if source.group() != target.group() {
        return Err(Error::Shape("source and target act by different groups".into()));
    }
    if map.len() != source.carrier_size() {
        return Err(Error::Shape(format!(
            "map has {} entries for a carrier of size {}",
            map.len(),
            source.carrier_size()
        )));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= target.carrier_size()) {
        return Err(Error::OutOfRange {
            what: "target carrier",
            index: v,
            size: target.carrier_size(),
        });
    }
    Ok(())
}

/// First `(g, x, x')` with `f(g(x, x')) != g(f(x), f(x'))`, or `None`.
pub fn equivariance_failure(
    source: &BinaryGSpace,
    target: &BinaryGSpace,
    map: &[usize],
) -> Result<Option<EquivarianceFailure>> {
    check_shapes(source, target, map)?;
    for g in 0..source.group().order() {
        for x in 0..source.carrier_size() {
            for x1 in 0..source.carrier_size() {
                if map[source.mu(g, x, x1)] != target.mu(g, map[x], map[x1]) {
                    return Ok(Some(EquivarianceFailure { g, x, x1 }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_biequivariant(source: &BinaryGSpace, target: &BinaryGSpace, map: &[usize]) -> Result<bool> {
    Ok(equivariance_failure(source, target, map)?.is_none())
}

/// Bijective, biequivariant, and with a biequivariant inverse.
pub fn is_biequimorphism(source: &BinaryGSpace, target: &BinaryGSpace, map: &[usize]) -> Result<bool> {
    let f = BiMap::check(source, target, map.to_vec())?;
    if !f.checked || source.carrier_size() != target.carrier_size() {
        return Ok(false);
    }
    match f.inverse() {
        Some(inv) => is_biequivariant(target, source, &inv),
        None => Ok(false),
    }
}

/// Backtracking search with forward propagation. Assigning `f(a)` and `f(b)`
/// forces `f(g(a, b)) = g(f(a), f(b))` for every `g`; conflicts prune the branch.
struct MapSearch<'a> {
    source: &'a BinaryGSpace,
    target: &'a BinaryGSpace,
    assign: Vec<Option<usize>>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<usize>>,
    limit: Option<usize>,
}

impl MapSearch<'_> {
    /// Sets `f(x) = v` and closes under forced values. Returns false on conflict.
    /// Everything pushed onto `assigned` past `mark` is undone by the caller.
    fn assign_and_propagate(&mut self, x: usize, v: usize) -> bool {
        let n = self.source.group().order();
        self.assign[x] = Some(v);
        self.assigned.push(x);
        let mut queue = vec![x];
        while let Some(p) = queue.pop() {
            let fp = self.assign[p].expect("queued points are assigned");
            let others: Vec<usize> = self.assigned.clone();
            for q in others {
                let fq = self.assign[q].expect("assigned");
                for (a, fa, b, fb) in [(p, fp, q, fq), (q, fq, p, fp)] {
                    for g in 0..n {
                        let t = self.source.mu(g, a, b);
                        let forced = self.target.mu(g, fa, fb);
                        match self.assign[t] {
                            Some(ft) if ft != forced => return false,
                            Some(_) => {}
                            None => {
                                self.assign[t] = Some(forced);
                                self.assigned.push(t);
                                queue.push(t);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        for x in self.assigned.drain(mark..) {
            self.assign[x] = None;
        }
    }

    fn run(&mut self) -> Result<()> {
        if self.limit.is_some_and(|l| self.found.len() >= l) {
            return Ok(());
        }
        let Some(x) = self.assign.iter().position(Option::is_none) else {
            self.found
                .push(self.assign.iter().map(|v| v.expect("complete")).collect());
            return Ok(());
        };
        for v in 0..self.target.carrier_size() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                    needed: self.nodes,
                });
            }
            let mark = self.assigned.len();
            if self.assign_and_propagate(x, v) {
                self.run()?;
            }
            self.undo_to(mark);
            if self.limit.is_some_and(|l| self.found.len() >= l) {
                break;
            }
        }
        Ok(())
    }
}

fn search_maps(
    source: &BinaryGSpace,
    target: &BinaryGSpace,
    budget: u64,
    limit: Option<usize>,
) -> Result<Vec<BiMap>> {
    if source.group() != target.group() {
        return Err(Error::Shape("source and target act by different groups".into()));
    }
    let mut s = MapSearch {
        source,
        target,
        assign: vec![None; source.carrier_size()],
        assigned: Vec::new(),
        nodes: 0,
        budget,
        found: Vec::new(),
        limit,
    };
    s.run()?;
    s.found
        .into_iter()
        .map(|m| {
            let f = BiMap::check(source, target, m)?;
            if !f.checked {
                return Err(Error::Refuted(format!(
                    "search produced a non-biequivariant map {:?}",
                    f.map
                )));
            }
            Ok(f)
        })
        .collect()
}

/// All biequivariant maps `source -> target`, in lexicographic order of the
/// image vector. `budget` caps the number of branch values tried.
pub fn find_biequivariant_maps(
    source: &BinaryGSpace,
    target: &BinaryGSpace,
    budget: u64,
) -> Result<Vec<BiMap>> {
    search_maps(source, target, budget, None)
}

/// The lexicographically first biequivariant map, if any.
pub fn first_biequivariant_map(
    source: &BinaryGSpace,
    target: &BinaryGSpace,
    budget: u64,
) -> Result<Option<BiMap>> {
    Ok(search_maps(source, target, budget, Some(1))?.pop())
}

/// Output of [`classify_transitive_distributive`].
#[derive(Debug, Clone)]
pub struct Classification {
    pub base: usize,
    /// Isotropy subgroup at the base point; normal in the group.
    pub subgroup: Subgroup,
    /// The coset space `G|H` with its coset binary action.
    pub model: BinaryGSpace,
    /// `gH -> g(x, x)`, a biequimorphism `model -> space`.
    pub map: BiMap,
}

/// For transitive distributive `space`, takes `H` = isotropy at `base` and
/// builds `phi(gH) = g(base, base)`, then verifies `phi` is a biequimorphism
/// from the coset action on `G|H`.
pub fn classify_transitive_distributive(space: &BinaryGSpace, base: usize) -> Result<Classification> {
    space.check_point(base)?;
    if let Some((point, missing)) = space.transitivity_failure() {
        return Err(Error::NotTransitive { point, missing });
    }
    if let Some(f) = space.distributivity_failure() {
        return Err(f.into());
    }
    let group = space.group();
    let h = space.isotropy(base);
    if !group.is_normal(&h) {
        return Err(Error::Refuted(format!(
            "isotropy subgroup {:?} at point {base} is not normal",
            h.members()
        )));
    }
    let model = coset_action(group, &h)?;
    let cosets = group.coset_space(&h);
    let map: Vec<usize> = (0..cosets.len())
        .map(|c| space.mu(cosets.representative(c), base, base))
        .collect();
    let f = BiMap::check(&model, space, map)?;
    if !is_biequimorphism(&model, space, &f.map)? {
        return Err(Error::Refuted(format!(
            "gH -> g(x,x) at base {base} is not a biequimorphism: {:?}",
            f.map
        )));
    }
    Ok(Classification {
        base,
        subgroup: h,
        model,
        map: f,
    })
}

/// For a free transitive distributive space, a biequimorphism onto
/// `eta(g, g1, g2) = g1 g g1^-1 g2` on the group itself.
pub fn verify_theorem2(space: &BinaryGSpace) -> Result<BiMap> {
    if let Some((point, element)) = space.freeness_failure() {
        return Err(Error::NotFree { point, element });
    }
    let c = classify_transitive_distributive(space, 0)?;
    if !c.subgroup.is_trivial() {
        return Err(Error::Refuted(format!(
            "free space classified with non-trivial subgroup {:?}",
            c.subgroup.members()
        )));
    }
    let eta = standard_distributive_action(space.group());
    if c.model.table() != eta.table() {
        return Err(Error::Refuted("coset model by {e} differs from eta".into()));
    }
    let inv = c.map.inverse().expect("classification map is bijective");
    let f = BiMap::check(space, &eta, inv)?;
    if !is_biequimorphism(space, &eta, &f.map)? {
        return Err(Error::Refuted("inverse classification map fails".into()));
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop2Outcome {
    pub h_subset_k: bool,
    pub maps_found: usize,
    /// The canonical projection `gH -> gK`, when `H` is inside `K`.
    pub projection: Option<Vec<usize>>,
}

/// Checks that a biequivariant map `G|H -> G|K` exists exactly when `H` is a
/// subgroup of `K`, by exhaustive pruned search. Disagreement is an
/// [`Error::Refuted`] carrying both sides.
pub fn verify_prop2(group: &FiniteGroup, h: &Subgroup, k: &Subgroup, budget: u64) -> Result<Prop2Outcome> {
    let xh = coset_action(group, h)?;
    let xk = coset_action(group, k)?;
    let maps = find_biequivariant_maps(&xh, &xk, budget)?;
    let h_subset_k = h.is_subset_of(k);
    if maps.is_empty() == h_subset_k {
        return Err(Error::Refuted(format!(
            "H={:?} K={:?}: H subset of K is {h_subset_k} but {} biequivariant maps found",
            h.members(),
            k.members(),
            maps.len()
        )));
    }
    let projection = if h_subset_k {
        let ch = group.coset_space(h);
        let ck = group.coset_space(k);
        let proj: Vec<usize> = (0..ch.len())
            .map(|c| ck.coset_of(ch.representative(c)))
            .collect();
        if !is_biequivariant(&xh, &xk, &proj)? || !maps.iter().any(|m| m.map == proj) {
            return Err(Error::Refuted(format!(
                "canonical projection {proj:?} is not among the biequivariant maps"
            )));
        }
        Some(proj)
    } else {
        None
    };
    Ok(Prop2Outcome {
        h_subset_k,
        maps_found: maps.len(),
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::z5_multiplicative_space;

    fn z4() -> FiniteGroup {
        FiniteGroup::cyclic(4)
    }

    #[test]
    fn identity_is_biequivariant() {
        let s = z5_multiplicative_space();
        assert!(is_biequimorphism(&s, &s, &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn projection_between_coset_spaces() {
        let g = z4();
        let h = g.subgroup(&[0, 2]).unwrap();
        let xh = coset_action(&g, &h).unwrap();
        let xk = coset_action(&g, &g.whole()).unwrap();
        assert!(is_biequivariant(&xh, &xk, &[0, 0]).unwrap());
    }

    #[test]
    fn constant_map_to_moving_point_fails() {
        let eta = standard_distributive_action(&FiniteGroup::cyclic(3));
        let f = BiMap::check(&eta, &eta, vec![1, 1, 1]).unwrap();
        assert!(!f.checked);
        let w = f.counterexample.unwrap();
        // g = 1 moves every point of eta(Z3), so the very first g != e fails.
        assert_eq!(w.g, 1);
    }

    #[test]
    fn shape_mismatch() {
        let a = standard_distributive_action(&FiniteGroup::cyclic(3));
        let b = standard_distributive_action(&FiniteGroup::cyclic(2));
        assert!(matches!(is_biequivariant(&a, &b, &[0, 0, 0]), Err(Error::Shape(_))));
        assert!(matches!(is_biequivariant(&a, &a, &[0, 0]), Err(Error::Shape(_))));
    }

    #[test]
    fn map_search_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let eta = standard_distributive_action(&z2);
        let maps = find_biequivariant_maps(&eta, &eta, DEFAULT_MAP_BUDGET).unwrap();
        assert!(maps.iter().any(|m| m.map == vec![0, 1]));

        let g = z4();
        let xh = coset_action(&g, &g.subgroup(&[0, 2]).unwrap()).unwrap();
        let xg = coset_action(&g, &g.whole()).unwrap();
        let xe = coset_action(&g, &g.trivial_subgroup()).unwrap();
        assert!(!find_biequivariant_maps(&xh, &xg, DEFAULT_MAP_BUDGET).unwrap().is_empty());
        assert!(find_biequivariant_maps(&xg, &xe, DEFAULT_MAP_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn search_agrees_with_raw_enumeration() {
        let g = FiniteGroup::symmetric(3);
        let x = standard_distributive_action(&g);
        let y = coset_action(&g, &g.subgroup_closure(&[3]).unwrap()).unwrap();
        let mut raw = Vec::new();
        for code in 0..2usize.pow(6) {
            let map: Vec<usize> = (0..6).map(|i| (code >> i) & 1).collect();
            if is_biequivariant(&x, &y, &map).unwrap() {
                raw.push(map);
            }
        }
        raw.sort();
        let found: Vec<Vec<usize>> = find_biequivariant_maps(&x, &y, DEFAULT_MAP_BUDGET)
            .unwrap()
            .into_iter()
            .map(|m| m.map)
            .collect();
        assert_eq!(found, raw);
    }

    #[test]
    fn budget_is_enforced() {
        let g = FiniteGroup::symmetric(3);
        let x = standard_distributive_action(&g);
        assert!(matches!(
            find_biequivariant_maps(&x, &x, 2),
            Err(Error::BudgetExceeded { budget: 2, .. })
        ));
    }

    #[test]
    fn classify_recovers_subgroups() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = s3.subgroup_closure(&[3]).unwrap();
        let c = classify_transitive_distributive(&coset_action(&s3, &a3).unwrap(), 0).unwrap();
        assert_eq!(c.subgroup, a3);
        assert_eq!(c.map.map, vec![0, 1]);

        let eta = standard_distributive_action(&s3);
        let c = classify_transitive_distributive(&eta, 0).unwrap();
        assert!(c.subgroup.is_trivial());
        assert_eq!(c.map.map, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn classify_rejects_z5() {
        // G(2,2) = {2,3} so transitivity fails before distributivity is tried
        let err = classify_transitive_distributive(&z5_multiplicative_space(), 0).unwrap_err();
        assert!(matches!(err, Error::NotTransitive { .. } | Error::NotDistributive { .. }));
        assert!(!z5_multiplicative_space().is_distributive());
    }

    #[test]
    fn model_space_identification_cases() {
        let s3 = FiniteGroup::symmetric(3);
        let f = verify_theorem2(&standard_distributive_action(&s3)).unwrap();
        assert_eq!(f.map, (0..6).collect::<Vec<_>>());

        let g = z4();
        let xh = coset_action(&g, &g.subgroup(&[0, 2]).unwrap()).unwrap();
        assert!(matches!(verify_theorem2(&xh), Err(Error::NotFree { .. })));
    }

    #[test]
    fn model_space_identification_undoes_a_relabeling() {
        // Relabel eta(Z3) by the translation p(y) = y + 1, which commutes with
        // the action; identification must hand back a biequimorphism onto eta.
        let z3 = FiniteGroup::cyclic(3);
        let eta = standard_distributive_action(&z3);
        let p = [1usize, 2, 0];
        let mut pinv = [0usize; 3];
        for (i, &v) in p.iter().enumerate() {
            pinv[v] = i;
        }
        let relabeled = BinaryGSpace::from_fn(z3.clone(), 3, None, |g, a, b| {
            p[eta.mu(g, pinv[a], pinv[b])]
        })
        .unwrap();
        let f = verify_theorem2(&relabeled).unwrap();
        assert!(is_biequimorphism(&relabeled, &eta, &f.map).unwrap());
    }

    #[test]
    fn prop2_examples() {
        let g = z4();
        let h = g.subgroup(&[0, 2]).unwrap();
        let out = verify_prop2(&g, &h, &g.whole(), DEFAULT_MAP_BUDGET).unwrap();
        assert!(out.h_subset_k);
        assert!(out.maps_found > 0);
        let out = verify_prop2(&g, &g.whole(), &h, DEFAULT_MAP_BUDGET).unwrap();
        assert_eq!(out.maps_found, 0);
        let out = verify_prop2(&g, &h, &h, DEFAULT_MAP_BUDGET).unwrap();
        assert_eq!(out.projection, Some(vec![0, 1]));
    }
}
