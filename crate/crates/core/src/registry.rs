//! Name lookup for groups and gallery spaces.
//!
//! Groups: `trivial`, `z<n>` (cyclic), `d<m>` or `dihedral:<m>`, `s<n>`
//! (symmetric, n <= 5), `klein` / `z2xz2`, and direct products `<g>x<h>`.
//!
//! Spaces: `z5`, `s3`, `dihedral:<m>`, `coset:<group>:<generators>`,
//! `eta:<group>`, `zwin:<N>`. Coset generators are comma separated element
//! indices, or `all` / `e` for the whole group and the trivial subgroup.

use crate::action::BinaryGSpace;
use crate::error::{Error, Result};
use crate::gallery;
use crate::group::{FiniteGroup, Subgroup};
use crate::windowed::WindowedIntSpace;

pub const SPACE_NAMES: &[&str] = &["z5", "s3", "dihedral:<m>", "coset:<G>:<H>", "eta:<G>", "zwin:<N>"];

pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownName(name.to_string());
    let lower = name.trim().to_ascii_lowercase();
    if let Some((a, b)) = lower.split_once('x') {
        if !a.is_empty() && !b.is_empty() && a != "e" {
            return Ok(FiniteGroup::direct_product(&group_by_name(a)?, &group_by_name(b)?));
        }
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    match lower.as_str() {
        "trivial" | "e" => Ok(FiniteGroup::cyclic(1)),
        "klein" | "v4" => group_by_name("z2xz2"),
        "z5units" | "z5*" => Ok(gallery::z5_multiplicative_space().group().clone()),
        s if s.starts_with("dihedral:") => {
            let m = num(&s["dihedral:".len()..])?;
            (m >= 2).then(|| FiniteGroup::dihedral(m)).ok_or_else(unknown)
        }
        s if s.starts_with('z') => {
            let m = num(&s[1..])?;
            (m >= 1).then(|| FiniteGroup::cyclic(m)).ok_or_else(unknown)
        }
        s if s.starts_with('d') => {
            let m = num(&s[1..])?;
            (m >= 2).then(|| FiniteGroup::dihedral(m)).ok_or_else(unknown)
        }
        s if s.starts_with('s') => {
            let n = num(&s[1..])?;
            (1..=5).contains(&n).then(|| FiniteGroup::symmetric(n)).ok_or_else(unknown)
        }
        _ => Err(unknown()),
    }
}

/// Parses a comma-separated list of element indices or names.
pub fn parse_elements(group: &FiniteGroup, spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let a = t
                .parse::<usize>()
                .ok()
                .or_else(|| group.index_of(t))
                .ok_or_else(|| Error::UnknownName(t.to_string()))?;
            if a >= group.order() {
                return Err(Error::OutOfRange {
                    what: "group",
                    index: a,
                    size: group.order(),
                });
            }
            Ok(a)
        })
        .collect()
}

/// Parses `all`, `e`, or a comma-separated list of generators (indices or
/// element names) and returns the subgroup they generate.
pub fn subgroup_by_spec(group: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    match spec.trim() {
        "all" | "G" => Ok(group.whole()),
        "e" | "" => Ok(group.trivial_subgroup()),
        s => group.subgroup_closure(&parse_elements(group, s)?),
    }
}

/// Like [`subgroup_by_spec`], but the list must already be a subgroup.
pub fn subgroup_by_members(group: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    match spec.trim() {
        "all" | "G" => Ok(group.whole()),
        "e" | "" => Ok(group.trivial_subgroup()),
        s => group.subgroup(&parse_elements(group, s)?),
    }
}

#[derive(Debug, Clone)]
pub enum GallerySpace {
    Finite(BinaryGSpace),
    Windowed(WindowedIntSpace),
}

pub fn space_by_name(name: &str) -> Result<GallerySpace> {
    let unknown = || Error::UnknownName(name.to_string());
    let name = name.trim();
    match name {
        "z5" => return Ok(GallerySpace::Finite(gallery::z5_multiplicative_space())),
        "s3" => return Ok(GallerySpace::Finite(gallery::s3_conjugation_space())),
        _ => {}
    }
    let (kind, rest) = name.split_once(':').ok_or_else(unknown)?;
    match kind {
        "dihedral" => {
            let m: usize = rest.parse().map_err(|_| unknown())?;
            if m < 2 {
                return Err(unknown());
            }
            Ok(GallerySpace::Finite(gallery::dihedral_conjugation_space(m)))
        }
        "zwin" => {
            let n: i64 = rest.parse().map_err(|_| unknown())?;
            if n < 1 {
                return Err(unknown());
            }
            Ok(GallerySpace::Windowed(WindowedIntSpace::new(n)))
        }
        "eta" => Ok(GallerySpace::Finite(gallery::standard_distributive_action(
            &group_by_name(rest)?,
        ))),
        "coset" => {
            let (g, h) = rest.rsplit_once(':').ok_or_else(unknown)?;
            let group = group_by_name(g)?;
            let sub = subgroup_by_spec(&group, h)?;
            Ok(GallerySpace::Finite(gallery::coset_action(&group, &sub)?))
        }
        _ => Err(unknown()),
    }
}
