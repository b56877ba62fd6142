//! Finite binary G-spaces.
//!
//! A binary action of a group `G` on a set `X` is a map `G x X x X -> X`,
//! written `g(x, y)`, with `e(x, y) = y` and `gh(x, y) = g(x, h(x, y))`. This
//! crate validates such tables, computes orbit chains and stabilization
//! steps, builds coset and model spaces, searches for biequivariant maps, and
//! enumerates every action of a small group on a small carrier.

pub mod action;
pub mod continuum;
pub mod enumerate;
pub mod error;
pub mod gallery;
pub mod group;
pub mod implications;
pub mod io;
pub mod morphism;
pub mod orbit;
pub mod perm;
pub mod registry;
pub mod windowed;

pub use action::{BinaryGSpace, DistributivityFailure, PointSet, ValidationCertificate};
pub use continuum::{EuclideanAction, ReachTerm};
pub use enumerate::{census, enumerate_binary_actions, enumerate_homomorphisms, Census, CensusRow, Limits};
pub use error::{Error, Result};
pub use group::{CosetSpace, FiniteGroup, Subgroup};
pub use morphism::{
    classify_transitive_distributive, find_biequivariant_maps, verify_prop2, verify_theorem2, BiMap,
    Classification,
};
pub use orbit::{orbit, point_translation, stabilization_step, OrbitReport, Translation};
pub use perm::Perm;
pub use windowed::WindowedIntSpace;
