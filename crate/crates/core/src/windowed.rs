//! The integers acting on themselves by `n(x, x') = n x + x'`, truncated to a
//! window `[-N, N]`.
//!
//! The carrier is the window. Group elements range over `[-2N, 2N]`: for any
//! `x != 0` and window points `y`, `z`, the `n` solving `n x + y = z` has
//! `|n| <= 2N`, so every in-window value of the untruncated rule is produced.
//! Results outside the window are counted as escapes and dropped, never
//! clamped, so every reported orbit is a subset of the true orbit.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowedIntSpace {
    window: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowedOrbit {
    pub base: i64,
    pub chain: Vec<Vec<i64>>,
    /// Least `n` with `G^n(x)` equal to the whole window.
    pub step: Option<usize>,
    /// Evaluations `n a1 + a2` that left the window during the closure.
    pub escapes: u64,
    pub partial: bool,
}

impl WindowedOrbit {
    pub fn orbit(&self) -> &[i64] {
        self.chain.last().expect("chain is never empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowedAxiomReport {
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
}

impl WindowedIntSpace {
    pub fn new(window: i64) -> Self {
        assert!(window >= 1, "window must be positive");
        WindowedIntSpace { window }
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn partial(&self) -> bool {
        true
    }

    pub fn carrier(&self) -> impl Iterator<Item = i64> {
        -self.window..=self.window
    }

    pub fn group_elements(&self) -> impl Iterator<Item = i64> {
        -2 * self.window..=2 * self.window
    }

    pub fn carrier_size(&self) -> usize {
        (2 * self.window + 1) as usize
    }

    pub fn contains(&self, x: i64) -> bool {
        (-self.window..=self.window).contains(&x)
    }

    /// `n x + y` if it stays in the window.
    pub fn apply(&self, n: i64, x: i64, y: i64) -> Option<i64> {
        let z = n.checked_mul(x)?.checked_add(y)?;
        self.contains(z).then_some(z)
    }

    fn slot(&self, x: i64) -> usize {
        (x + self.window) as usize
    }

    fn step_once(&self, from: &[i64], seen: &mut [bool], escapes: &mut u64) -> bool {
        let mut grew = false;
        for n in self.group_elements() {
            for &a1 in from {
                for &a2 in from {
                    match self.apply(n, a1, a2) {
                        Some(z) => {
                            let s = self.slot(z);
                            if !seen[s] {
                                seen[s] = true;
                                grew = true;
                            }
                        }
                        None => *escapes += 1,
                    }
                }
            }
        }
        grew
    }

    fn collect(&self, seen: &[bool]) -> Vec<i64> {
        self.carrier().filter(|&x| seen[self.slot(x)]).collect()
    }

    /// Orbit chain of `x` inside the window.
    pub fn orbit(&self, x: i64) -> Option<WindowedOrbit> {
        if !self.contains(x) {
            return None;
        }
        let mut seen = vec![false; self.carrier_size()];
        let mut escapes = 0;
        self.step_once(&[x], &mut seen, &mut escapes);
        let mut chain = vec![self.collect(&seen)];
        loop {
            let prev = chain.last().expect("non-empty").clone();
            if !self.step_once(&prev, &mut seen, &mut escapes) {
                break;
            }
            chain.push(self.collect(&seen));
        }
        let size = self.carrier_size();
        let step = chain.iter().position(|a| a.len() == size).map(|i| i + 1);
        Some(WindowedOrbit {
            base: x,
            chain,
            step,
            escapes,
            partial: true,
        })
    }

    pub fn stabilization_step(&self, x: i64) -> Option<usize> {
        self.orbit(x).and_then(|o| o.step)
    }

    /// Checks both action laws on every instance whose evaluations stay inside
    /// the window (and whose summed group element stays in range).
    pub fn check_axioms(&self) -> WindowedAxiomReport {
        let mut r = WindowedAxiomReport {
            checked: 0,
            skipped: 0,
            violations: 0,
        };
        let bound = 2 * self.window;
        for x in self.carrier() {
            for y in self.carrier() {
                r.checked += 1;
                if self.apply(0, x, y) != Some(y) {
                    r.violations += 1;
                }
            }
        }
        for g in self.group_elements() {
            for h in self.group_elements() {
                if (g + h).abs() > bound {
                    r.skipped += 1;
                    continue;
                }
                for x in self.carrier() {
                    for y in self.carrier() {
                        let inner = self.apply(h, x, y);
                        let outer = inner.and_then(|v| self.apply(g, x, v));
                        match (self.apply(g + h, x, y), outer) {
                            (Some(a), Some(b)) => {
                                r.checked += 1;
                                if a != b {
                                    r.violations += 1;
                                }
                            }
                            _ => r.skipped += 1,
                        }
                    }
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_a_stabilization_point() {
        let w = WindowedIntSpace::new(10);
        let o = w.orbit(1).unwrap();
        assert_eq!(o.step, Some(1));
        assert_eq!(o.chain.len(), 1);
        assert!(o.escapes > 0);
    }

    #[test]
    fn zero_is_fixed() {
        let w = WindowedIntSpace::new(10);
        let o = w.orbit(0).unwrap();
        assert_eq!(o.chain, vec![vec![0]]);
        assert_eq!(o.step, None);
    }

    #[test]
    fn two_generates_the_evens() {
        let w = WindowedIntSpace::new(9);
        let evens: Vec<i64> = (-9..=9).filter(|x| x % 2 == 0).collect();
        assert_eq!(w.orbit(2).unwrap().orbit(), evens.as_slice());
        assert_eq!(w.stabilization_step(2), None);
    }

    #[test]
    fn out_of_window_point() {
        assert!(WindowedIntSpace::new(3).orbit(4).is_none());
        assert_eq!(WindowedIntSpace::new(3).apply(2, 3, 0), None);
    }

    #[test]
    fn axioms_hold_inside_the_window() {
        let r = WindowedIntSpace::new(4).check_axioms();
        assert_eq!(r.violations, 0);
        assert!(r.checked > 0);
    }
}
