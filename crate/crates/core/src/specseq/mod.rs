//! The weight spectral sequence: E1 page, `d1`, the monodromy operator `N`,
//! the E2 page and the graded weight-monodromy checks.
//!
//! Coordinates follow `E1^{i,j}` with `i = -r` and `j = w + r`. The term
//! `E1^{-r,w+r}` is the direct sum over `k >= max(0, -r)` of
//! `H^{w-r-2k}(X^(2k+r+1))` with Tate twist `-r-k`; summands are stored in
//! increasing `k`, and only levels present in the datum contribute.

mod e2;
mod render;
mod tensor;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlin::{Rat, RatMatrix};
use crate::strata::SemistableDatum;

pub use e2::{
    build_e2, check_wmc, compare_monodromy_vs_weight, weight_filtration_graded, E2Page, E2Term,
    WmcEntry, WmcVerdict,
};
pub use render::{page_dump, render_grid, PageDump};
pub use tensor::{point_complex, tensor_product};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Summand {
    pub r: i64,
    pub w: i64,
    pub k: i64,
    pub level: usize,
    pub degree: usize,
    pub twist: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Term {
    pub i: i64,
    pub j: i64,
    pub dim: usize,
    /// Empty for complexes not built from a datum.
    pub summands: Vec<E1Summand>,
}

impl E1Term {
    /// Offset and dimension of summand `k`.
    pub fn summand(&self, k: i64) -> Option<(usize, usize)> {
        let mut off = 0;
        for s in &self.summands {
            if s.k == k {
                return Some((off, s.dim));
            }
            off += s.dim;
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightComplex {
    /// Bounds the page: `i` in `[-n, n]`, `j` in `[0, 2n]`.
    pub n: usize,
    pub terms: BTreeMap<(i64, i64), E1Term>,
    /// `d1 : E1^{i,j} -> E1^{i+1,j}` keyed by source.
    pub d1: BTreeMap<(i64, i64), RatMatrix>,
    /// `N : E1^{i,j} -> E1^{i+2,j-2}` keyed by source.
    pub nop: BTreeMap<(i64, i64), RatMatrix>,
    /// Block sums of cup pairings `E1^{i,j} x E1^{-i,2n-j}`, when known.
    pub pairings: BTreeMap<(i64, i64), RatMatrix>,
}

impl WeightComplex {
    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.terms.get(&(i, j)).map_or(0, |t| t.dim)
    }

    pub fn term(&self, i: i64, j: i64) -> Option<&E1Term> {
        self.terms.get(&(i, j))
    }

    pub fn d1_at(&self, i: i64, j: i64) -> RatMatrix {
        self.d1
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim(i + 1, j), self.dim(i, j)))
    }

    pub fn n_at(&self, i: i64, j: i64) -> RatMatrix {
        self.nop
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim(i + 2, j - 2), self.dim(i, j)))
    }

    /// `N^r : E1^{-r,w+r} -> E1^{r,w-r}`.
    pub fn n_power(&self, r: i64, w: i64) -> RatMatrix {
        let mut out = RatMatrix::identity(self.dim(-r, w + r));
        for step in 0..r {
            let (i, j) = (-r + 2 * step, w + r - 2 * step);
            out = &self.n_at(i, j) * &out;
        }
        out
    }

    pub fn i_range(&self) -> std::ops::RangeInclusive<i64> {
        -(self.n as i64)..=self.n as i64
    }

    pub fn j_range(&self) -> std::ops::RangeInclusive<i64> {
        0..=2 * self.n as i64
    }

    /// Fails with the first `(i, j)` where `d1 o d1 != 0`.
    pub fn check_d_squared(&self) -> Result<()> {
        for &(i, j) in self.terms.keys() {
            let dd = &self.d1_at(i + 1, j) * &self.d1_at(i, j);
            if !dd.is_zero() {
                return Err(Error::ConventionViolation {
                    i,
                    j,
                    message: "d1 o d1 != 0".into(),
                });
            }
        }
        Ok(())
    }

    /// `(i, j)` of the first failure of `N d1 = d1 N`, if any.
    pub fn first_noncommuting(&self) -> Option<(i64, i64)> {
        self.terms.keys().copied().find(|&(i, j)| {
            let a = &self.n_at(i + 1, j) * &self.d1_at(i, j);
            let b = &self.d1_at(i + 2, j - 2) * &self.n_at(i, j);
            a != b
        })
    }

    /// `(r, w)` of the first `N^r` on E1 that is not an isomorphism.
    pub fn first_non_iso(&self) -> Option<(i64, i64)> {
        let n = self.n as i64;
        (1..=n)
            .flat_map(|r| (0..=2 * n).map(move |w| (r, w)))
            .find(|&(r, w)| {
                let m = self.n_power(r, w);
                !(m.is_square() && m.rank() == m.rows())
            })
    }
}

fn sign(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::from_integer(1.into())
    } else {
        Rat::from_integer((-1).into())
    }
}

/// The E1 page of a datum with `d1` installed and `d1 o d1 = 0` asserted.
///
/// From summand `k` of `E1^{-r,w+r}`, `d1` is `(-1)^{r+k} ρ` into summand
/// `k + 1` and `(-1)^k τ` into summand `k` of `E1^{-r+1,w+r}`.
pub fn build_e1(datum: &SemistableDatum) -> Result<WeightComplex> {
    datum.check_structure()?;
    let n = datum.n as i64;
    let mut terms = BTreeMap::new();
    for i in -n..=n {
        for j in 0..=2 * n {
            let (r, w) = (-i, i + j);
            let mut summands = Vec::new();
            let mut k = 0.max(-r);
            loop {
                let t = 2 * k + r + 1;
                let s = w - r - 2 * k;
                if t > n + 1 || s < 0 {
                    break;
                }
                let tu = t as usize;
                if let Some(d) = datum.stratum_dim(tu) {
                    if datum.levels.contains_key(&tu) && s as usize <= 2 * d {
                        summands.push(E1Summand {
                            r,
                            w,
                            k,
                            level: tu,
                            degree: s as usize,
                            twist: -r - k,
                            dim: datum.h(tu, s),
                        });
                    }
                }
                k += 1;
            }
            if !summands.is_empty() {
                let dim = summands.iter().map(|s| s.dim).sum();
                terms.insert((i, j), E1Term { i, j, dim, summands });
            }
        }
    }

    let mut d1 = BTreeMap::new();
    for (&(i, j), src) in &terms {
        let Some(dst) = terms.get(&(i + 1, j)) else { continue };
        let r = -i;
        let mut m = RatMatrix::zeros(dst.dim, src.dim);
        let mut col = 0;
        for sm in &src.summands {
            let (t, s, k) = (sm.level, sm.degree, sm.k);
            if let Some((row, dim)) = dst.summand(k + 1) {
                let rho = datum.rho(t, s);
                debug_assert_eq!(rho.shape(), (dim, sm.dim));
                m.add_block(row, col, &rho.scale(&sign(r + k)));
            }
            if k >= 1 - r && t >= 2 {
                if let Some((row, dim)) = dst.summand(k) {
                    let tau = datum.tau(t, s);
                    debug_assert_eq!(tau.shape(), (dim, sm.dim));
                    m.add_block(row, col, &tau.scale(&sign(k)));
                }
            }
            col += sm.dim;
        }
        d1.insert((i, j), m);
    }

    let mut pairings = BTreeMap::new();
    for (&(i, j), src) in &terms {
        let Some(dual) = terms.get(&(-i, 2 * n - j)) else { continue };
        let r = -i;
        let mut p = RatMatrix::zeros(src.dim, dual.dim);
        let mut row = 0;
        for sm in &src.summands {
            if let Some((col, _)) = dual.summand(sm.k + r) {
                p.set_block(row, col, &datum.pairing(sm.level, sm.degree));
            }
            row += sm.dim;
        }
        pairings.insert((i, j), p);
    }

    let page = WeightComplex {
        n: datum.n,
        terms,
        d1,
        nop: BTreeMap::new(),
        pairings,
    };
    page.check_d_squared()?;
    Ok(page)
}

/// Installs `N` from the summand bookkeeping.
///
/// Summand `k` of `E1^{-r,w+r}` goes to summand `k + 1` of
/// `E1^{-r+2,w+r-2}` (same level and degree) by `(-1)^{r+1}` times the
/// identity, and to zero when that summand is absent. The sign makes `N`
/// commute with the signed `d1`.
pub fn install_n(mut page: WeightComplex) -> Result<WeightComplex> {
    let mut nop = BTreeMap::new();
    for (&(i, j), src) in &page.terms {
        let Some(dst) = page.terms.get(&(i + 2, j - 2)) else { continue };
        let r = -i;
        let mut m = RatMatrix::zeros(dst.dim, src.dim);
        let mut col = 0;
        for sm in &src.summands {
            if let Some((row, dim)) = dst.summand(sm.k + 1) {
                if dim != sm.dim {
                    return Err(Error::InstanceInconsistency(format!(
                        "N at ({i}, {j}): summand k = {} changes dimension",
                        sm.k
                    )));
                }
                m.set_block(row, col, &RatMatrix::identity(dim).scale(&sign(r + 1)));
            }
            col += sm.dim;
        }
        nop.insert((i, j), m);
    }
    page.nop = nop;
    if let Some((i, j)) = page.first_noncommuting() {
        return Err(Error::InstanceInconsistency(format!(
            "N d1 != d1 N at ({i}, {j})"
        )));
    }
    if let Some((r, w)) = page.first_non_iso() {
        return Err(Error::InstanceInconsistency(format!(
            "N^{r} : E1^{{{},{}}} -> E1^{{{r},{}}} is not an isomorphism",
            -r,
            w + r,
            w - r
        )));
    }
    Ok(page)
}

/// The page of a datum that passes validation, with `d1` and `N` installed.
pub fn to_weight_complex(datum: &SemistableDatum) -> Result<WeightComplex> {
    let report = crate::strata::validate(datum)?;
    if !report.passed() {
        let failing: Vec<String> = report.failing().iter().map(|a| a.number().to_string()).collect();
        return Err(Error::Unvalidated(format!("axioms {} fail", failing.join(", "))));
    }
    install_n(build_e1(datum)?)
}

/// Helper for tests and hand-built complexes: every listed `(i, j, dim)`
/// becomes a term without summand bookkeeping.
pub fn abstract_complex(n: usize, dims: &[(i64, i64, usize)]) -> WeightComplex {
    let terms = dims
        .iter()
        .map(|&(i, j, dim)| {
            (
                (i, j),
                E1Term {
                    i,
                    j,
                    dim,
                    summands: Vec::new(),
                },
            )
        })
        .collect();
    WeightComplex {
        n,
        terms,
        d1: BTreeMap::new(),
        nop: BTreeMap::new(),
        pairings: BTreeMap::new(),
    }
}

