//! Structural implications every binary G-space must satisfy, as checks that
//! report violations instead of asserting.
//!
//! * chains strictly increase until they fix a set closed under `G(-, -)`,
//!   and every orbit witness replays;
//! * distributive: orbits partition the carrier and `[x] = G(x, x)`;
//! * distributive and homogeneous: transitive, step 1 everywhere;
//! * transitive: homogeneous, step 1 everywhere;
//! * a relabeling preserves chains and per-point steps.

use serde::Serialize;

use crate::action::{BinaryGSpace, PointSet};
use crate::enumerate::{orbit_partition, OrbitPartition};
use crate::error::Result;
use crate::morphism::is_biequimorphism;
use crate::orbit::{orbit, OrbitReport};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn new(property: &'static str, point: Option<usize>, detail: String) -> Self {
        Violation { property, point, detail }
    }
}

fn reports(space: &BinaryGSpace) -> Vec<OrbitReport> {
    (0..space.carrier_size())
        .map(|x| orbit(space, x).expect("point in range"))
        .collect()
}

pub fn implication_violations(space: &BinaryGSpace) -> Vec<Violation> {
    let mut out = Vec::new();
    let reports = reports(space);
    let all: Vec<usize> = (0..space.group().order()).collect();
    for r in &reports {
        let x = Some(r.base);
        if !r.chain.windows(2).all(|w| w[0].is_subset_of(&w[1]) && w[0].len() < w[1].len()) {
            out.push(Violation::new("chain_monotone", x, format!("{:?}", r.chain)));
        }
        if space.image_set(&all, r.orbit()) != *r.orbit() {
            out.push(Violation::new("orbit_closed", x, format!("{:?}", r.orbit())));
        }
        if !r.witnesses_sound(space) {
            out.push(Violation::new("witnesses_replay", x, String::new()));
        }
    }
    let distributive = space.is_distributive();
    let transitive = space.is_transitive();
    let homogeneous = reports.iter().any(|r| r.step.is_some());
    let steps: Vec<Option<usize>> = reports.iter().map(|r| r.step).collect();
    let step_one = steps.iter().all(|s| *s == Some(1));
    if distributive {
        if orbit_partition(space) == OrbitPartition::Overlapping {
            out.push(Violation::new("distributive_partition", None, String::new()));
        }
        for r in &reports {
            let diag = space.diagonal_image(r.base);
            if *r.orbit() != diag {
                out.push(Violation::new(
                    "distributive_orbit_is_diagonal",
                    Some(r.base),
                    format!("orbit {:?}, G(x,x) {:?}", r.orbit(), diag),
                ));
            }
        }
        if homogeneous && !(transitive && step_one) {
            out.push(Violation::new(
                "distributive_homogeneous_transitive",
                None,
                format!("transitive {transitive}, steps {steps:?}"),
            ));
        }
    }
    if transitive && !(homogeneous && step_one) {
        out.push(Violation::new("transitive_homogeneous", None, format!("steps {steps:?}")));
    }
    out
}

/// A uniformly random permutation of `n` points from `(seed, stream)`.
pub fn seeded_permutation(n: usize, seed: u64, stream: u64) -> Perm {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    Perm::from_vec(p).expect("shuffle of 0..n")
}

/// Transports `space` along `p` and checks that `p` is a biequimorphism
/// carrying every chain and step onto the image point's.
pub fn relabeling_violations(space: &BinaryGSpace, p: &Perm) -> Result<Vec<Violation>> {
    let image = space.relabeled(p)?;
    let mut out = Vec::new();
    if !is_biequimorphism(space, &image, p.as_slice())? {
        out.push(Violation::new("relabeling_biequimorphism", None, format!("{:?}", p.as_slice())));
    }
    for x in 0..space.carrier_size() {
        let a = orbit(space, x)?;
        let b = orbit(&image, p.apply(x))?;
        let moved: Vec<PointSet> = a
            .chain
            .iter()
            .map(|s| PointSet::new(s.iter().map(|y| p.apply(y)).collect()))
            .collect();
        if a.step != b.step {
            out.push(Violation::new(
                "biequimorphism_preserves_step",
                Some(x),
                format!("{:?} vs {:?} under {:?}", a.step, b.step, p.as_slice()),
            ));
        }
        if moved != b.chain {
            out.push(Violation::new("biequimorphism_preserves_chain", Some(x), format!("{:?}", p.as_slice())));
        }
    }
    Ok(out)
}
