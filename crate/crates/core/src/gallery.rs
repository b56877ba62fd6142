//! Concrete binary G-spaces.

use crate::action::BinaryGSpace;
use crate::error::{Error, NotNormalWitness, Result};
use crate::group::{FiniteGroup, Subgroup};

/// `g(g1 H, g2 H) = (g1 g g1^-1 g2) H` on the left cosets of `h`.
///
/// Well-definedness is checked over every choice of representatives; when it
/// fails (exactly when `h` is not normal) the error carries the offending pair.
pub fn coset_action(group: &FiniteGroup, h: &Subgroup) -> Result<BinaryGSpace> {
    let cosets = group.coset_space(h);
    let k = cosets.len();
    let rule = |g: usize, g1: usize, g2: usize| {
        cosets.coset_of(group.mul(group.conj(g1, g), g2))
    };
    for g in 0..group.order() {
        for c1 in 0..k {
            for c2 in 0..k {
                let r1 = cosets.representative(c1);
                let r2 = cosets.representative(c2);
                let expected = rule(g, r1, r2);
                for &g1 in &cosets.cosets()[c1] {
                    for &g2 in &cosets.cosets()[c2] {
                        let got = rule(g, g1, g2);
                        if got != expected {
                            return Err(Error::NotNormal(NotNormalWitness {
                                g,
                                g1: r1,
                                g1_alt: g1,
                                g2: r2,
                                g2_alt: g2,
                                coset: expected,
                                coset_alt: got,
                            }));
                        }
                    }
                }
            }
        }
    }
    let labels = cosets
        .cosets()
        .iter()
        .map(|c| {
            let names: Vec<String> = c.iter().map(|&a| group.name(a)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    BinaryGSpace::from_fn(group.clone(), k, Some(labels), |g, c1, c2| {
        rule(g, cosets.representative(c1), cosets.representative(c2))
    })
}

/// `eta(g, g1, g2) = g1 g g1^-1 g2` on the group itself.
pub fn standard_distributive_action(group: &FiniteGroup) -> BinaryGSpace {
    let labels = (0..group.order()).map(|a| group.name(a)).collect();
    BinaryGSpace::from_fn(group.clone(), group.order(), Some(labels), |g, g1, g2| {
        group.mul(group.conj(g1, g), g2)
    })
    .expect("eta is a binary action")
}

/// Units of Z5 acting on themselves by `g(x, x') = g^x x' mod 5`.
///
/// Group index `i` and carrier index `i` both stand for the residue `i + 1`,
/// so the identity residue 1 sits at index 0.
pub fn z5_multiplicative_space() -> BinaryGSpace {
    let residue = |i: usize| (i + 1) as u32;
    let index = |r: u32| (r % 5) as usize - 1;
    let names: Vec<String> = (0..4).map(|i| residue(i).to_string()).collect();
    let table = (0..4)
        .map(|a| (0..4).map(|b| index(residue(a) * residue(b))).collect())
        .collect();
    let group = FiniteGroup::new(table, Some(names.clone())).expect("units of Z5 form a group");
    BinaryGSpace::from_fn(group, 4, Some(names), |g, x, y| {
        index(residue(g).pow(residue(x)) % 5 * residue(y))
    })
    .expect("g^x x' is a binary action")
}

/// The subgroup `k` of `ambient` acting on `ambient` by `g(a, b) = a^-1 g a b`.
///
/// The acting group is `k` re-indexed in member order, so its identity stays at 0.
pub fn subgroup_conjugation_space(
    ambient: &FiniteGroup,
    k: &Subgroup,
    group_names: Option<Vec<String>>,
) -> Result<BinaryGSpace> {
    let members = k.members();
    let pos = |a: usize| {
        members
            .iter()
            .position(|&m| m == a)
            .expect("subgroup is closed")
    };
    let table = members
        .iter()
        .map(|&a| members.iter().map(|&b| pos(ambient.mul(a, b))).collect())
        .collect();
    let names = group_names.unwrap_or_else(|| members.iter().map(|&a| ambient.name(a)).collect());
    let group = FiniteGroup::new(table, Some(names))?;
    let labels = (0..ambient.order()).map(|a| ambient.name(a)).collect();
    BinaryGSpace::from_fn(group, ambient.order(), Some(labels), |g, a, b| {
        let a_inv = ambient.inv(a);
        ambient.mul(ambient.mul(ambient.mul(a_inv, members[g]), a), b)
    })
}

/// `S3 = {e, x, h, xh, hx, xhx}` with `x = (0 1)`, `h = (1 2)`, and the
/// subgroup `{e, h}` acting by `g(a, b) = a^-1 g a b`.
pub fn s3_conjugation_space() -> BinaryGSpace {
    let x = [1, 0, 2];
    let h = [0, 2, 1];
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
    let e = vec![0, 1, 2];
    let xh = compose(&x, &h);
    let hx = compose(&h, &x);
    let xhx = compose(&xh, &x);
    let elements = vec![e, x.to_vec(), h.to_vec(), xh, hx, xhx];
    let names = ["e", "x", "h", "xh", "hx", "xhx"].map(String::from).to_vec();
    let s3 = FiniteGroup::from_permutations(&elements)
        .with_names(names)
        .expect("six names");
    let sub = s3.subgroup(&[0, 2]).expect("{e, h} is a subgroup");
    subgroup_conjugation_space(&s3, &sub, Some(vec!["e".into(), "h".into()]))
        .expect("conjugation rule is a binary action")
}

/// Finite stand-in for the infinite-dihedral example: in `D_m` take `x = s`
/// and `h = s r`, both of order 2 with `x h = r` of order `m`, and let
/// `{e, h}` act on `D_m` by `g(a, b) = a^-1 g a b`. The point of interest is
/// `x`, found at index [`dihedral_point_x`].
pub fn dihedral_conjugation_space(m: usize) -> BinaryGSpace {
    let dm = FiniteGroup::dihedral(m);
    let h = dm.mul(m, 1);
    let sub = dm.subgroup(&[0, h]).expect("{e, s r} is a subgroup");
    subgroup_conjugation_space(&dm, &sub, Some(vec!["e".into(), "h".into()]))
        .expect("conjugation rule is a binary action")
}

/// Carrier index of `x = s` in [`dihedral_conjugation_space`].
pub fn dihedral_point_x(m: usize) -> usize {
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::PointSet;
    use crate::orbit::{orbit, stabilization_step};

    fn labels_of(space: &BinaryGSpace, set: &PointSet) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|p| space.label(p)).collect();
        v.sort();
        v
    }

    fn names(v: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn z5_example_values() {
        let s = z5_multiplicative_space();
        s.validate().unwrap();
        let two = s.point_by_name("2").unwrap();
        // 2^2 * 2 = 8 = 3 mod 5
        assert_eq!(s.label(s.apply(two, two, two).unwrap()), "3");
        assert_eq!(labels_of(&s, &s.diagonal_image(two)), names(&["2", "3"]));
        assert_eq!(s.diagonal_image(s.point_by_name("1").unwrap()).len(), 4);
        assert_eq!(stabilization_step(&s, two).unwrap(), Some(2));
        assert_eq!(stabilization_step(&s, 0).unwrap(), Some(1));
    }

    #[test]
    fn s3_example_chain() {
        let s = s3_conjugation_space();
        let x = s.point_by_name("x").unwrap();
        let h = s.group().index_of("h").unwrap();
        let xh = s.point_by_name("xh").unwrap();
        assert_eq!(s.apply(h, x, x).unwrap(), xh);
        let r = orbit(&s, x).unwrap();
        let chain: Vec<Vec<String>> = r.chain.iter().map(|a| labels_of(&s, a)).collect();
        assert_eq!(
            chain,
            vec![
                names(&["x", "xh"]),
                names(&["e", "h", "x", "xh"]),
                names(&["e", "x", "h", "xh", "hx", "xhx"]),
            ]
        );
        assert_eq!(r.step, Some(3));
    }

    #[test]
    fn eta_abelian_ignores_first_argument() {
        let z4 = FiniteGroup::cyclic(4);
        let eta = standard_distributive_action(&z4);
        for g in 0..4 {
            for g1 in 0..4 {
                for g2 in 0..4 {
                    assert_eq!(eta.mu(g, g1, g2), (g + g2) % 4);
                }
            }
        }
        let one = standard_distributive_action(&FiniteGroup::cyclic(1));
        assert_eq!(one.carrier_size(), 1);
    }

    #[test]
    fn eta_of_s3_is_free_transitive_distributive() {
        let eta = standard_distributive_action(&FiniteGroup::symmetric(3));
        assert!(eta.is_free());
        assert!(eta.is_transitive());
        assert!(eta.is_distributive());
    }

    #[test]
    fn coset_action_examples() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = s3.subgroup_closure(&[3]).unwrap();
        assert_eq!(a3.len(), 3);
        let sp = coset_action(&s3, &a3).unwrap();
        assert_eq!(sp.carrier_size(), 2);
        assert!(sp.is_transitive());

        let t = s3.subgroup_closure(&[1]).unwrap();
        match coset_action(&s3, &t).unwrap_err() {
            Error::NotNormal(w) => {
                let cs = s3.coset_space(&t);
                assert_eq!(cs.coset_of(w.g1), cs.coset_of(w.g1_alt));
                assert_eq!(cs.coset_of(w.g2), cs.coset_of(w.g2_alt));
                let lhs = cs.coset_of(s3.mul(s3.conj(w.g1, w.g), w.g2));
                let rhs = cs.coset_of(s3.mul(s3.conj(w.g1_alt, w.g), w.g2_alt));
                assert_ne!(lhs, rhs);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn coset_action_by_trivial_subgroup_is_eta() {
        let g = FiniteGroup::dihedral(4);
        let c = coset_action(&g, &g.trivial_subgroup()).unwrap();
        let eta = standard_distributive_action(&g);
        assert_eq!(c.table(), eta.table());
    }

    #[test]
    fn coset_isotropy_at_h_is_h() {
        let z4 = FiniteGroup::cyclic(4);
        let h = z4.subgroup(&[0, 2]).unwrap();
        let sp = coset_action(&z4, &h).unwrap();
        assert_eq!(sp.isotropy(0), h);
        assert!(!sp.is_free());
    }

    #[test]
    fn dihedral_three_matches_s3_chain_sizes() {
        let d = dihedral_conjugation_space(3);
        let s = s3_conjugation_space();
        let rd = orbit(&d, dihedral_point_x(3)).unwrap();
        let rs = orbit(&s, 1).unwrap();
        let sizes = |r: &crate::orbit::OrbitReport| r.chain.iter().map(PointSet::len).collect::<Vec<_>>();
        assert_eq!(sizes(&rd), sizes(&rs));
        assert_eq!(rd.step, Some(3));
        assert_eq!(d.label(dihedral_point_x(3)), "s");
    }
}
