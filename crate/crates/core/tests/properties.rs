use std::collections::BTreeSet;

use binact_core::action::PointSet;
use binact_core::enumerate::{self, enumerate_homomorphisms, random_action, Limits, OrbitPartition};
use binact_core::gallery::{coset_action, dihedral_conjugation_space, dihedral_point_x};
use binact_core::morphism::{find_biequivariant_maps, is_biequimorphism, is_biequivariant};
use binact_core::orbit::{all_steps, orbit, point_translation};
use binact_core::{BinaryGSpace, EuclideanAction, FiniteGroup, Perm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_group(i: usize) -> FiniteGroup {
    match i % 6 {
        0 => FiniteGroup::cyclic(2),
        1 => FiniteGroup::cyclic(3),
        2 => FiniteGroup::cyclic(4),
        3 => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        4 => FiniteGroup::symmetric(3),
        _ => FiniteGroup::dihedral(4),
    }
}

fn space(group: usize, m: usize, seed: u64) -> BinaryGSpace {
    let g = small_group(group);
    let homs = enumerate_homomorphisms(&g, m, Limits::default()).unwrap();
    random_action(&g, m, &homs, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn relabel(s: &BinaryGSpace, p: &[usize]) -> BinaryGSpace {
    let inv = Perm::from_vec(p.to_vec()).unwrap().inverse();
    BinaryGSpace::from_fn(s.group().clone(), s.carrier_size(), None, |g, a, b| {
        p[s.mu(g, inv.apply(a), inv.apply(b))]
    })
    .unwrap()
}

/// Least subset containing G(x,x) and closed under G(-,-), by exhaustive search.
fn orbit_oracle(s: &BinaryGSpace, x: usize) -> BTreeSet<usize> {
    let n = s.carrier_size();
    let gs = s.group().order();
    let seed: BTreeSet<usize> = (0..gs).map(|g| s.mu(g, x, x)).collect();
    let mut best: Option<BTreeSet<usize>> = None;
    for mask in 0u32..(1 << n) {
        let a: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !seed.is_subset(&a) {
            continue;
        }
        let closed = a.iter().all(|&p| a.iter().all(|&q| (0..gs).all(|g| a.contains(&s.mu(g, p, q)))));
        if closed && best.as_ref().is_none_or(|b| a.len() < b.len()) {
            best = Some(a);
        }
    }
    best.unwrap()
}

fn is_hom(g: &FiniteGroup, images: &[Vec<usize>]) -> bool {
    (0..g.order()).all(|a| {
        (0..g.order()).all(|b| {
            let ab = &images[g.mul(a, b)];
            (0..ab.len()).all(|i| ab[i] == images[a][images[b][i]])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_involution(gi in 0usize..6) {
        let g = small_group(gi);
        for a in 0..g.order() {
            prop_assert_eq!(g.inv(g.inv(a)), a);
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn closure_is_idempotent(gi in 0usize..6, gens in prop::collection::vec(0usize..8, 0..3)) {
        let g = small_group(gi);
        let gens: Vec<usize> = gens.into_iter().map(|a| a % g.order()).collect();
        let h = g.subgroup_closure(&gens).unwrap();
        prop_assert_eq!(g.subgroup_closure(h.members()).unwrap(), h.clone());
        prop_assert_eq!(g.order() % h.len(), 0);
    }

    #[test]
    fn cosets_partition_group(gi in 0usize..6, gen in 0usize..8) {
        let g = small_group(gi);
        let h = g.subgroup_closure(&[gen % g.order()]).unwrap();
        let cs = g.coset_space(&h);
        let mut seen = vec![0; g.order()];
        for c in cs.cosets() {
            prop_assert_eq!(c.len(), h.len());
            for &a in c { seen[a] += 1; }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
        prop_assert_eq!(cs.len() * h.len(), g.order());
    }

    #[test]
    fn normality_matches_well_defined_quotient(gi in 0usize..6, gen in 0usize..8) {
        let g = small_group(gi);
        let h = g.subgroup_closure(&[gen % g.order()]).unwrap();
        let cs = g.coset_space(&h);
        let n = g.order();
        let well_defined = (0..n).all(|a| (0..n).all(|a2| (0..n).all(|b| (0..n).all(|b2| {
            cs.coset_of(a) != cs.coset_of(a2)
                || cs.coset_of(b) != cs.coset_of(b2)
                || cs.coset_of(g.mul(a, b)) == cs.coset_of(g.mul(a2, b2))
        }))));
        prop_assert_eq!(g.is_normal(&h), well_defined);
        prop_assert_eq!(coset_action(&g, &h).is_ok(), well_defined);
    }

    #[test]
    fn slices_are_bijections_with_inverse_slice(gi in 0usize..6, m in 1usize..5, seed: u64) {
        let s = space(gi, m, seed);
        let g = s.group();
        for a in 0..g.order() {
            for x in 0..m {
                let p = s.slice(a, x);
                prop_assert!(Perm::from_vec(p.as_slice().to_vec()).is_some());
                prop_assert!(p.compose(&s.slice(g.inv(a), x)).is_identity());
            }
        }
    }

    #[test]
    fn chain_is_monotone_sound_and_minimal(gi in 0usize..6, m in 1usize..6, seed: u64) {
        let s = space(gi, m, seed);
        for x in 0..m {
            let r = orbit(&s, x).unwrap();
            prop_assert!(r.chain.windows(2).all(|w| w[0].is_subset_of(&w[1]) && w[0].len() < w[1].len()));
            prop_assert!(r.witnesses_sound(&s));
            let o: BTreeSet<usize> = r.orbit().iter().collect();
            prop_assert_eq!(o, orbit_oracle(&s, x));
            prop_assert_eq!(r.step.is_some(), r.orbit().len() == m);
        }
    }

    #[test]
    fn distributive_orbits_partition(gi in 0usize..6, m in 1usize..5, seed: u64) {
        let s = space(gi, m, seed);
        if s.is_distributive() {
            prop_assert!(matches!(enumerate::orbit_partition(&s), OrbitPartition::Partition(_)));
            for x in 0..m {
                prop_assert_eq!(orbit(&s, x).unwrap().orbit().clone(), s.diagonal_image(x));
            }
        }
    }

    #[test]
    fn translations_are_bijections(gi in 0usize..6, m in 1usize..5, seed: u64) {
        let s = space(gi, m, seed);
        for x in 0..m {
            let r = orbit(&s, x).unwrap();
            for y in r.orbit().iter() {
                let t = point_translation(&s, x, y).unwrap();
                prop_assert!(t.verify(&s));
                prop_assert_eq!(t.map.apply(x), y);
                prop_assert_eq!(t.map.len(), m);
            }
        }
    }

    #[test]
    fn biequivariant_maps_compose(gi in 0usize..4, seeds in prop::array::uniform3(any::<u64>()), ms in prop::array::uniform3(1usize..4)) {
        let a = space(gi, ms[0], seeds[0]);
        let b = space(gi, ms[1], seeds[1]);
        let c = space(gi, ms[2], seeds[2]);
        let ab = find_biequivariant_maps(&a, &b, 1_000_000).unwrap();
        let bc = find_biequivariant_maps(&b, &c, 1_000_000).unwrap();
        for f in &ab {
            for g in &bc {
                prop_assert!(is_biequivariant(&a, &c, &f.then(g)).unwrap());
            }
        }
    }

    #[test]
    fn biequimorphisms_preserve_chains_and_steps(gi in 0usize..6, m in 1usize..6, seed: u64, pseed: u64) {
        let s = space(gi, m, seed);
        let p = shuffled(m, pseed);
        let t = relabel(&s, &p);
        prop_assert!(is_biequimorphism(&s, &t, &p).unwrap());
        let (sa, sb) = (all_steps(&s), all_steps(&t));
        for x in 0..m {
            prop_assert_eq!(sa[x], sb[p[x]]);
            let mapped: Vec<PointSet> = orbit(&s, x).unwrap().chain.iter()
                .map(|a| PointSet::new(a.iter().map(|y| p[y]).collect()))
                .collect();
            prop_assert_eq!(mapped, orbit(&t, p[x]).unwrap().chain);
        }
    }

    #[test]
    fn isotropy_is_normal_on_distributive_transitive(gi in 0usize..6, hi in 0usize..10) {
        let g = small_group(gi);
        let normals = g.normal_subgroups();
        let h = &normals[hi % normals.len()];
        let s = coset_action(&g, h).unwrap();
        prop_assert!(s.is_distributive() && s.is_transitive());
        for x in 0..s.carrier_size() {
            let iso = s.isotropy(x);
            for a in 0..g.order() {
                for &k in iso.members() {
                    prop_assert!(iso.contains(g.conj(a, k)));
                }
            }
        }
    }

    #[test]
    fn random_distributive_transitive_have_normal_isotropy(gi in 0usize..6, m in 1usize..5, seed: u64) {
        let s = space(gi, m, seed);
        if s.is_distributive() && s.is_transitive() {
            let g = s.group();
            for x in 0..m {
                prop_assert!(g.is_normal(&s.isotropy(x)));
            }
        }
    }

    #[test]
    fn continuum_reach_round_trip(dim in 1usize..6, z in prop::collection::vec(-20.0f64..20.0, 5), zeros in 0usize..5) {
        let a = EuclideanAction::new(dim);
        let mut z: Vec<f64> = z.into_iter().take(dim).collect();
        for v in z.iter_mut().rev().take(zeros.min(dim)) { *v = 0.0; }
        let term = a.reach(&z).unwrap();
        prop_assert!(term.depth() <= dim);
        let back = a.eval(&term);
        for (u, v) in back.iter().zip(&z) {
            prop_assert!((u - v).abs() < 1e-6, "{:?} vs {:?}", back, z);
        }
    }

    #[test]
    fn homomorphisms_match_brute_force(gi in 0usize..4, m in 1usize..4) {
        let g = small_group(gi);
        let perms = binact_core::group::permutations(m);
        let n = g.order();
        let mut brute = BTreeSet::new();
        let total = perms.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let images: Vec<Vec<usize>> = (0..n).map(|_| { let p = perms[c % perms.len()].clone(); c /= perms.len(); p }).collect();
            if is_hom(&g, &images) {
                brute.insert(images);
            }
        }
        let enumerated: BTreeSet<Vec<Vec<usize>>> = enumerate_homomorphisms(&g, m, Limits::default()).unwrap()
            .into_iter()
            .map(|h| h.into_iter().map(Perm::into_vec).collect())
            .collect();
        prop_assert_eq!(enumerated, brute);
    }
}

#[test]
fn enumerated_actions_are_valid_and_distinct() {
    for gi in 0..4 {
        let g = small_group(gi);
        for m in 1..=3 {
            let homs = enumerate_homomorphisms(&g, m, Limits::default()).unwrap();
            let spaces: Vec<BinaryGSpace> = enumerate::enumerate_binary_actions(&g, m, Limits::default())
                .unwrap()
                .collect();
            assert_eq!(spaces.len(), homs.len().pow(m as u32));
            let distinct: BTreeSet<Vec<usize>> = spaces.iter().map(|s| s.table().to_vec()).collect();
            assert_eq!(distinct.len(), spaces.len());
            assert!(spaces.iter().all(|s| s.validate().is_ok()));
        }
    }
}

#[test]
fn dihedral_eight_never_stabilizes() {
    let s = dihedral_conjugation_space(8);
    let r = orbit(&s, dihedral_point_x(8)).unwrap();
    let sizes: Vec<usize> = r.chain.iter().map(PointSet::len).collect();
    assert_eq!(sizes, vec![2, 4]);
    assert_eq!(r.step, None);
}

#[test]
fn gallery_spaces_validate() {
    use binact_core::gallery::{s3_conjugation_space, standard_distributive_action, z5_multiplicative_space};
    let mut spaces = vec![z5_multiplicative_space(), s3_conjugation_space()];
    spaces.extend([3, 4, 5, 8].map(dihedral_conjugation_space));
    for gi in 0..6 {
        let g = small_group(gi);
        let eta = standard_distributive_action(&g);
        assert!(eta.is_free() && eta.is_transitive() && eta.is_distributive());
        for h in g.normal_subgroups() {
            let c = coset_action(&g, &h).unwrap();
            assert!(c.is_transitive());
            spaces.push(c);
        }
        spaces.push(eta);
    }
    for s in &spaces {
        assert!(s.validate().is_ok());
    }
}

#[test]
fn dihedral_three_is_the_s3_example_up_to_relabeling() {
    use binact_core::gallery::s3_conjugation_space;
    let a = s3_conjugation_space();
    let b = dihedral_conjugation_space(3);
    let isos: Vec<_> = find_biequivariant_maps(&a, &b, 1_000_000)
        .unwrap()
        .into_iter()
        .filter(|f| is_biequimorphism(&a, &b, &f.map).unwrap())
        .collect();
    assert!(!isos.is_empty());
    for f in isos {
        for x in 0..6 {
            let mapped: Vec<PointSet> = orbit(&a, x)
                .unwrap()
                .chain
                .iter()
                .map(|c| PointSet::new(c.iter().map(|y| f.map[y]).collect()))
                .collect();
            assert_eq!(mapped, orbit(&b, f.map[x]).unwrap().chain);
        }
    }
}

#[test]
fn random_raw_tables_for_z2_on_three_points() {
    use binact_core::action::validate_table;
    use rand::Rng;
    let g = FiniteGroup::cyclic(2);
    let enumerated: BTreeSet<Vec<usize>> = enumerate::enumerate_binary_actions(&g, 3, Limits::default())
        .unwrap()
        .map(|s| s.table().to_vec())
        .collect();
    assert_eq!(enumerated.len(), 64);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut valid = 0;
    for _ in 0..1000 {
        // identity slices fixed, the g slice random: uniform raw tables would
        // almost never satisfy the identity law
        let mut mu: Vec<usize> = (0..9).map(|i| i % 3).collect();
        mu.extend((0..9).map(|_| rng.gen_range(0..3)));
        let ok = validate_table(&g, 3, &mu).is_ok();
        assert_eq!(ok, enumerated.contains(&mu));
        valid += ok as usize;
    }
    assert!(valid > 0);
}
