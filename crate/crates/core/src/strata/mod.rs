//! Cohomological data of the special fibre of a strictly semistable model.
//!
//! Level `t` (1-based) is the disjoint union `X^(t)` of all `t`-fold
//! intersections of components; it is smooth of dimension `n - t + 1`.
//! Each level carries its graded cohomology dimensions, Poincaré pairings,
//! Lefschetz operators and the partition of every degree's basis by
//! connected component. Restriction maps `ρ` go from level `t` to `t + 1`
//! in the same degree; Gysin maps `τ` go from level `t` to `t - 1` and
//! raise the degree by two. Tate twists are not represented: over the
//! rationals they do not change the underlying spaces.

mod schema;
mod validate;

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::ratlin::{Rat, RatMatrix};

pub use schema::{load, save, from_json_str, to_json_string, SCHEMA_VERSION};
pub use validate::{gysin_from_restriction, validate, Axiom, AxiomResult, FailureLocation, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLevel {
    /// 1-based level `t`.
    pub level: usize,
    /// Number of connected components of `X^(t)`.
    pub components: usize,
    /// `h^s` for `s = 0..=2 * dim`.
    pub cohomology: Vec<usize>,
    /// Degree `s` to the `h^s x h^(2d-s)` cup-product matrix into the
    /// (summed) fundamental class coordinates.
    pub pairings: BTreeMap<usize, RatMatrix>,
    /// Degree `s` to the matrix of `L : H^s -> H^(s+2)`.
    pub lefschetz: BTreeMap<usize, RatMatrix>,
    /// For each degree, the component index of every basis vector.
    pub component_blocks: Vec<Vec<usize>>,
}

impl StratumLevel {
    pub fn dim(&self) -> usize {
        (self.cohomology.len().max(1) - 1) / 2
    }

    pub fn h(&self, s: usize) -> usize {
        self.cohomology.get(s).copied().unwrap_or(0)
    }

    /// Basis indices of degree `s` lying on component `c`.
    pub fn block(&self, s: usize, c: usize) -> Vec<usize> {
        self.component_blocks
            .get(s)
            .map(|b| {
                b.iter()
                    .enumerate()
                    .filter(|(_, &k)| k == c)
                    .map(|(i, _)| i)
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Restriction and Gysin matrices keyed by `(source level, source degree)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransferMaps {
    pub restriction: BTreeMap<(usize, usize), RatMatrix>,
    pub gysin: BTreeMap<(usize, usize), RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistableDatum {
    /// Relative dimension.
    pub n: usize,
    /// Number of irreducible components of the special fibre.
    pub m: usize,
    /// Present levels keyed by 1-based level; empty strata are omitted.
    pub levels: BTreeMap<usize, StratumLevel>,
    pub transfers: TransferMaps,
    /// The class in `H^2(X^(1))` declared to induce `L`.
    pub ample_class: Vec<Rat>,
}

impl SemistableDatum {
    pub fn level(&self, t: usize) -> Option<&StratumLevel> {
        self.levels.get(&t)
    }

    /// Dimension of `X^(t)`, or `None` if `t` is outside `1..=n+1`.
    pub fn stratum_dim(&self, t: usize) -> Option<usize> {
        (t >= 1 && t <= self.n + 1).then(|| self.n + 1 - t)
    }

    /// `h^s(X^(t))`, zero for missing levels and out-of-range degrees.
    pub fn h(&self, t: usize, s: i64) -> usize {
        if s < 0 {
            return 0;
        }
        self.levels.get(&t).map_or(0, |l| l.h(s as usize))
    }

    /// `ρ : H^s(X^(t)) -> H^s(X^(t+1))`; zero when not declared.
    pub fn rho(&self, t: usize, s: usize) -> RatMatrix {
        self.transfers
            .restriction
            .get(&(t, s))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.h(t + 1, s as i64), self.h(t, s as i64)))
    }

    /// `τ : H^s(X^(t)) -> H^(s+2)(X^(t-1))`; zero when not declared.
    pub fn tau(&self, t: usize, s: usize) -> RatMatrix {
        let target = if t >= 2 { self.h(t - 1, s as i64 + 2) } else { 0 };
        self.transfers
            .gysin
            .get(&(t, s))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(target, self.h(t, s as i64)))
    }

    /// `L : H^s(X^(t)) -> H^(s+2)(X^(t))`.
    pub fn lefschetz(&self, t: usize, s: usize) -> RatMatrix {
        self.levels
            .get(&t)
            .and_then(|l| l.lefschetz.get(&s))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.h(t, s as i64 + 2), self.h(t, s as i64)))
    }

    /// `L^k : H^s(X^(t)) -> H^(s+2k)(X^(t))`.
    pub fn lefschetz_power(&self, t: usize, s: usize, k: usize) -> RatMatrix {
        let mut out = RatMatrix::identity(self.h(t, s as i64));
        for i in 0..k {
            out = &self.lefschetz(t, s + 2 * i) * &out;
        }
        out
    }

    /// Cup pairing `H^s(X^(t)) x H^(2d-s)(X^(t)) -> Q`.
    pub fn pairing(&self, t: usize, s: usize) -> RatMatrix {
        let d = self.stratum_dim(t).unwrap_or(0);
        let other = (2 * d).checked_sub(s).map_or(0, |x| self.h(t, x as i64));
        self.levels
            .get(&t)
            .and_then(|l| l.pairings.get(&s))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.h(t, s as i64), other))
    }

    /// Sum of the fundamental classes in `H^0(X^(1))`, assuming the degree 0
    /// basis is one unit class per component.
    pub fn unit_class(&self) -> Vec<Rat> {
        vec![Rat::one(); self.h(1, 0)]
    }

    /// Shape checks that must pass before any axiom is examined.
    pub fn check_structure(&self) -> Result<()> {
        let err = |m: String| Err(Error::Structural(m));
        let Some(first) = self.levels.get(&1) else {
            return err("level 1 (the components) is missing".into());
        };
        if first.components != self.m {
            return err(format!(
                "m = {} but level 1 has {} components",
                self.m, first.components
            ));
        }
        for (&t, l) in &self.levels {
            if l.level != t {
                return err(format!("level {t} is labelled {}", l.level));
            }
            let Some(d) = self.stratum_dim(t) else {
                return err(format!("level {t} exceeds n + 1 = {}", self.n + 1));
            };
            if l.cohomology.len() != 2 * d + 1 {
                return err(format!(
                    "level {t}: {} cohomology degrees, expected {}",
                    l.cohomology.len(),
                    2 * d + 1
                ));
            }
            if l.component_blocks.len() != 2 * d + 1 {
                return err(format!("level {t}: component_blocks must list every degree"));
            }
            for (s, b) in l.component_blocks.iter().enumerate() {
                if b.len() != l.h(s) || b.iter().any(|&c| c >= l.components) {
                    return err(format!("level {t}: component block of degree {s} is malformed"));
                }
            }
            for s in 0..=2 * d {
                let (r, c) = (l.h(s), l.h(2 * d - s));
                match l.pairings.get(&s) {
                    None if r > 0 || c > 0 => {
                        return err(format!("level {t}: missing pairing in degree {s}"))
                    }
                    Some(p) if p.shape() != (r, c) => {
                        return err(format!(
                            "level {t}: pairing in degree {s} is {}x{}, expected {r}x{c}",
                            p.rows(),
                            p.cols()
                        ))
                    }
                    _ => {}
                }
            }
            if let Some(&s) = l.pairings.keys().find(|&&s| s > 2 * d) {
                return err(format!("level {t}: pairing in degree {s} out of range"));
            }
            for s in 0..=2 * d {
                let want = (l.h(s + 2), l.h(s));
                match l.lefschetz.get(&s) {
                    None if s + 2 <= 2 * d && want.0 > 0 && want.1 > 0 => {
                        return err(format!("level {t}: missing Lefschetz operator in degree {s}"))
                    }
                    Some(x) if x.shape() != want => {
                        return err(format!(
                            "level {t}: Lefschetz operator in degree {s} is {}x{}, expected {}x{}",
                            x.rows(),
                            x.cols(),
                            want.0,
                            want.1
                        ))
                    }
                    _ => {}
                }
            }
        }
        for (&(t, s), x) in &self.transfers.restriction {
            if !self.levels.contains_key(&t) {
                return err(format!("restriction from missing level {t}"));
            }
            let want = (self.h(t + 1, s as i64), self.h(t, s as i64));
            if x.shape() != want {
                return err(format!(
                    "restriction (level {t}, degree {s}) is {}x{}, expected {}x{}",
                    x.rows(),
                    x.cols(),
                    want.0,
                    want.1
                ));
            }
        }
        for (&(t, s), x) in &self.transfers.gysin {
            if !self.levels.contains_key(&t) || t < 2 {
                return err(format!("Gysin map from invalid level {t}"));
            }
            let want = (self.h(t - 1, s as i64 + 2), self.h(t, s as i64));
            if x.shape() != want {
                return err(format!(
                    "Gysin map (level {t}, degree {s}) is {}x{}, expected {}x{}",
                    x.rows(),
                    x.cols(),
                    want.0,
                    want.1
                ));
            }
        }
        if self.ample_class.len() != self.h(1, 2) {
            return err(format!(
                "ample class has {} coordinates, H^2 of level 1 has dimension {}",
                self.ample_class.len(),
                self.h(1, 2)
            ));
        }
        Ok(())
    }
}
