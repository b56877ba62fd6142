//! The additive reals acting on `R^n` by a hyperspherical cascade:
//!
//! ```text
//! z_k = g sin x_1 ... sin x_{k-1} cos x_k + y_k     (k < n)
//! z_n = g sin x_1 ... sin x_{n-1}         + y_n
//! ```
//!
//! The displacement depends only on `x`, so `g(x, h(x, y)) = (g + h)(x, y)`
//! holds in exact arithmetic; the sampled checks here measure rounding only.
//!
//! Starting from the origin, `G^k(0)` is `R^k x {0}`: a point of `R^k` is
//! reached as `g(a, 0)` with `(g, a)` its hyperspherical coordinates, and `a`
//! itself lies in `R^(k-1)`. [`reach`] builds that witness term recursively.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_TOL_AXIOM: f64 = 1e-9;
pub const DEFAULT_TOL_REACH: f64 = 1e-6;
/// Bound on `|z_j|`, `j > d`, for a depth-`d` term.
pub const INCLUSION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EuclideanAction {
    dim: usize,
    tol_axiom: f64,
    tol_reach: f64,
}

impl EuclideanAction {
    pub fn new(dim: usize) -> Self {
        Self::with_tolerances(dim, DEFAULT_TOL_AXIOM, DEFAULT_TOL_REACH)
    }

    pub fn with_tolerances(dim: usize, tol_axiom: f64, tol_reach: f64) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        assert!(tol_axiom > 0.0 && tol_reach > 0.0, "tolerances must be positive");
        EuclideanAction {
            dim,
            tol_axiom,
            tol_reach,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol_axiom(&self) -> f64 {
        self.tol_axiom
    }

    pub fn tol_reach(&self) -> f64 {
        self.tol_reach
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim,
                got: v.len(),
            })
        }
    }

    /// Unit-radius direction `g(x, 0) / g` for the cascade.
    fn direction(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n);
        let mut sines = 1.0;
        for k in 0..n {
            if k + 1 < n {
                out.push(sines * x[k].cos());
                sines *= x[k].sin();
            } else {
                out.push(sines);
            }
        }
        out
    }

    /// `g(x, y)`.
    pub fn apply(&self, g: f64, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.apply_unchecked(g, x, y))
    }

    fn apply_unchecked(&self, g: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.direction(x)
            .iter()
            .zip(y)
            .map(|(d, yk)| g * d + yk)
            .collect()
    }

    pub fn origin(&self) -> Vec<f64> {
        vec![0.0; self.dim]
    }

    /// Samples `(g, h, x, y)` uniformly from `[-half_width, half_width]` and
    /// reports the largest identity and composition residuals (sup norm).
    ///
    /// Sample `i` draws from its own ChaCha stream, so results do not depend
    /// on evaluation order.
    pub fn check_axioms_sampled(&self, samples: usize, seed: u64, half_width: f64) -> AxiomReport {
        let mut identity_max: f64 = 0.0;
        let mut composition_max: f64 = 0.0;
        for i in 0..samples {
            let mut rng = sample_rng(seed, i as u64);
            let mut draw = || rng.gen_range(-half_width..=half_width);
            let g = draw();
            let h = draw();
            let x: Vec<f64> = (0..self.dim).map(|_| draw()).collect();
            let y: Vec<f64> = (0..self.dim).map(|_| draw()).collect();

            let id = self.apply_unchecked(0.0, &x, &y);
            identity_max = identity_max.max(sup_dist(&id, &y));

            let lhs = self.apply_unchecked(g + h, &x, &y);
            let inner = self.apply_unchecked(h, &x, &y);
            let rhs = self.apply_unchecked(g, &x, &inner);
            composition_max = composition_max.max(sup_dist(&lhs, &rhs));
        }
        AxiomReport {
            dim: self.dim,
            samples,
            seed,
            half_width,
            identity_max,
            composition_max,
            tol_axiom: self.tol_axiom,
            pass: identity_max < self.tol_axiom && composition_max < self.tol_axiom,
        }
    }

    /// Hyperspherical coordinates of `z` in `R^k x {0}`: a radius `g` and
    /// `k - 1` angles with `g(angles, 0) = z`.
    ///
    /// Angles `1..k-2` lie in `[0, pi]` (arccos of normalised tails); the last
    /// lies in `(-pi, pi]` (two-argument arctangent). For `k = 1` there are no
    /// angles and `g = z_1` carries the sign. A zero radius gives zero angles.
    pub fn hyperspherical_inverse(&self, z: &[f64], k: usize) -> Result<(f64, Vec<f64>)> {
        self.check_len(z)?;
        if k == 0 || k > self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: k,
            });
        }
        if let Some((j, &v)) = z.iter().enumerate().skip(k).find(|(_, v)| v.abs() > self.tol_reach) {
            return Err(Error::TailNotZero { index: j, value: v });
        }
        if k == 1 {
            return Ok((z[0], Vec::new()));
        }
        let head = &z[..k];
        let g = norm(head);
        let mut angles = vec![0.0; k - 1];
        if g == 0.0 {
            return Ok((0.0, angles));
        }
        for j in 0..k - 2 {
            let tail = norm(&head[j..]);
            angles[j] = if tail == 0.0 {
                0.0
            } else {
                (head[j] / tail).clamp(-1.0, 1.0).acos()
            };
        }
        let mut last = head[k - 1].atan2(head[k - 2]);
        if last <= -PI {
            last = PI;
        }
        angles[k - 2] = last;
        Ok((g, angles))
    }

    /// A term of depth at most `dim` evaluating to `z` (within rounding).
    pub fn reach(&self, z: &[f64]) -> Result<ReachTerm> {
        self.check_len(z)?;
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::Shape("target must be finite".into()));
        }
        Ok(self.reach_unchecked(z))
    }

    fn reach_unchecked(&self, z: &[f64]) -> ReachTerm {
        let Some(k) = z.iter().rposition(|&v| v != 0.0).map(|i| i + 1) else {
            return ReachTerm::Base;
        };
        let (g, angles) = self
            .hyperspherical_inverse(z, k)
            .expect("tail beyond the last non-zero coordinate is zero");
        let mut point = self.origin();
        point[..angles.len()].copy_from_slice(&angles);
        ReachTerm::Node {
            g,
            first: Box::new(self.reach_unchecked(&point)),
            second: Box::new(ReachTerm::Base),
        }
    }

    pub fn eval(&self, term: &ReachTerm) -> Vec<f64> {
        match term {
            ReachTerm::Base => self.origin(),
            ReachTerm::Node { g, first, second } => {
                let a = self.eval(first);
                let b = self.eval(second);
                self.apply_unchecked(*g, &a, &b)
            }
        }
    }

    /// A random term of depth exactly `depth` with radii in `[-half_width, half_width]`.
    pub fn random_term<R: Rng + ?Sized>(&self, depth: usize, half_width: f64, rng: &mut R) -> ReachTerm {
        if depth == 0 {
            return ReachTerm::Base;
        }
        let g = rng.gen_range(-half_width..=half_width);
        let first = self.random_term(depth - 1, half_width, rng);
        let other = rng.gen_range(0..depth);
        let second = self.random_term(other, half_width, rng);
        ReachTerm::Node {
            g,
            first: Box::new(first),
            second: Box::new(second),
        }
    }

    /// Finite-sample witness that `G^k(0) = R^k x {0}`:
    ///
    /// * inclusion: `inclusion_samples` random terms of depth `<= k` evaluate
    ///   with `|z_j| < 1e-12` for `j > k`;
    /// * surjectivity: `reach_samples` random targets in `R^k x {0}` are hit
    ///   within `tol_reach` by terms of depth `<= k`.
    ///
    /// For `k = 0` the only depth-0 term is the origin itself.
    pub fn subspace_witness(
        &self,
        k: usize,
        inclusion_samples: usize,
        reach_samples: usize,
        seed: u64,
        half_width: f64,
    ) -> Result<WitnessReport> {
        if k > self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: k,
            });
        }
        let mut inclusion_max: f64 = 0.0;
        for i in 0..inclusion_samples {
            let mut rng = sample_rng(seed, i as u64);
            let depth = if k == 0 { 0 } else { rng.gen_range(1..=k) };
            let term = self.random_term(depth, half_width, &mut rng);
            let z = self.eval(&term);
            let tail = z[k..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            inclusion_max = inclusion_max.max(tail);
        }
        let mut reach_error: f64 = 0.0;
        let mut max_depth = 0;
        for i in 0..reach_samples {
            let mut rng = sample_rng(seed ^ 0x5eed_0000_0000_0000, i as u64);
            let mut z = self.origin();
            for v in z.iter_mut().take(k) {
                *v = rng.gen_range(-half_width..=half_width);
            }
            let term = self.reach_unchecked(&z);
            max_depth = max_depth.max(term.depth());
            reach_error = reach_error.max(sup_dist(&self.eval(&term), &z));
        }
        Ok(WitnessReport {
            dim: self.dim,
            k,
            inclusion_samples,
            reach_samples,
            seed,
            inclusion_max,
            inclusion_pass: inclusion_max < INCLUSION_TOL,
            reach_error,
            max_depth,
            reach_pass: reach_error < self.tol_reach && max_depth <= k,
        })
    }
}

/// `Base` is the origin; `Node { g, first, second }` evaluates to
/// `g(eval(first), eval(second))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReachTerm {
    Base,
    Node {
        g: f64,
        first: Box<ReachTerm>,
        second: Box<ReachTerm>,
    },
}

impl ReachTerm {
    pub fn depth(&self) -> usize {
        match self {
            ReachTerm::Base => 0,
            ReachTerm::Node { first, second, .. } => 1 + first.depth().max(second.depth()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub half_width: f64,
    pub identity_max: f64,
    pub composition_max: f64,
    pub tol_axiom: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub dim: usize,
    pub k: usize,
    pub inclusion_samples: usize,
    pub reach_samples: usize,
    pub seed: u64,
    pub inclusion_max: f64,
    pub inclusion_pass: bool,
    pub reach_error: f64,
    pub max_depth: usize,
    pub reach_pass: bool,
}

fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
