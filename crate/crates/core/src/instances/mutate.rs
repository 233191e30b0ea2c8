//! Negative instances: one-entry perturbations that break a single axiom.
//!
//! The search space is every entry of every pairing, Lefschetz, restriction
//! and Gysin matrix, perturbed by `+1`, `-1` or `+2`. Restriction and pairing
//! entries are tried a second time in coupled form: a pairing entry moves
//! together with its graded-symmetric partner, and in both cases every Gysin
//! map is re-derived as the pairing adjoint. Coupling separates the axioms
//! tied to adjunction from adjunction itself. The space is searched
//! exhaustively in a seed-dependent order and the first datum whose failing
//! set is exactly the target is returned.
//!
//! An axiom can be non-vacuous on a datum and still not be breakable alone:
//! adjunction and `L`-compatibility tie `ρ`, `τ`, `L` and the pairings
//! together, so every perturbation in the space that breaks the target
//! breaks a second axiom as well. [`survey`] reports this as
//! [`Applicability::Entangled`].

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlin::rat;
use crate::strata::{gysin_from_restriction, validate, Axiom, SemistableDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Pairing,
    Lefschetz,
    Restriction,
    Gysin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Site {
    pub kind: MatrixKind,
    pub level: usize,
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub delta: i64,
    /// Partner entry adjusted and Gysin maps re-derived.
    pub coupled: bool,
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub datum: SemistableDatum,
    pub target: Axiom,
    pub site: Site,
}

fn pos(d: &SemistableDatum, t: usize, s: i64) -> bool {
    d.h(t, s) > 0
}

/// `true` if the axiom constrains some composite of nonzero size.
pub fn is_applicable(d: &SemistableDatum, axiom: Axiom) -> bool {
    let top = d.n + 1;
    let degs = |t: usize| 0..=(2 * d.stratum_dim(t).unwrap_or(0)) as i64;
    let any = |f: &dyn Fn(usize, i64) -> bool| (1..=top).any(|t| degs(t).any(|s| f(t, s)));
    match axiom {
        Axiom::RhoSquared => any(&|t, s| pos(d, t, s) && pos(d, t + 1, s) && pos(d, t + 2, s)),
        Axiom::TauSquared => any(&|t, s| {
            t >= 3 && pos(d, t, s) && pos(d, t - 1, s + 2) && pos(d, t - 2, s + 4)
        }),
        Axiom::AntiCommute => any(&|t, s| {
            t >= 2
                && pos(d, t, s)
                && pos(d, t, s + 2)
                && (pos(d, t + 1, s) || pos(d, t - 1, s + 2))
        }),
        Axiom::Adjunction => any(&|t, s| pos(d, t, s) && pos(d, t + 1, s)),
        Axiom::LefschetzCompat => {
            let multi = d.levels.values().any(|l| {
                l.components > 1 && (0..l.cohomology.len().saturating_sub(2)).any(|s| l.h(s) > 0 && l.h(s + 2) > 0)
            });
            multi
                || any(&|t, s| {
                    pos(d, t, s)
                        && pos(d, t, s + 2)
                        && (pos(d, t + 1, s + 2) || (t >= 2 && pos(d, t - 1, s + 4)))
                })
        }
        Axiom::HardLefschetz => any(&|t, s| pos(d, t, s) && pos(d, t, s + 2)),
        Axiom::Poincare => any(&|t, s| pos(d, t, s)),
    }
}

/// The full search space for `d`, in canonical order.
pub fn candidate_sites(d: &SemistableDatum) -> Vec<Site> {
    let mut out = Vec::new();
    let mut push = |kind, level, degree, rows: usize, cols: usize, coupled| {
        for row in 0..rows {
            for col in 0..cols {
                for delta in [1, -1, 2] {
                    out.push(Site {
                        kind,
                        level,
                        degree,
                        row,
                        col,
                        delta,
                        coupled,
                    });
                }
            }
        }
    };
    for (&t, l) in &d.levels {
        for s in 0..l.cohomology.len() {
            let p = d.pairing(t, s);
            push(MatrixKind::Pairing, t, s, p.rows(), p.cols(), false);
            push(MatrixKind::Pairing, t, s, p.rows(), p.cols(), true);
            let m = d.lefschetz(t, s);
            push(MatrixKind::Lefschetz, t, s, m.rows(), m.cols(), false);
            let r = d.rho(t, s);
            push(MatrixKind::Restriction, t, s, r.rows(), r.cols(), false);
            push(MatrixKind::Restriction, t, s, r.rows(), r.cols(), true);
            if t >= 2 {
                let g = d.tau(t, s);
                push(MatrixKind::Gysin, t, s, g.rows(), g.cols(), false);
            }
        }
    }
    out
}

/// `d` perturbed at `site`; `None` if the site does not exist or the Gysin
/// maps cannot be re-derived.
pub fn perturb(d: &SemistableDatum, site: &Site) -> Option<SemistableDatum> {
    let mut out = d.clone();
    let (t, s) = (site.level, site.degree);
    let bump = |m: &mut crate::ratlin::RatMatrix| m[(site.row, site.col)] += rat(site.delta);
    match site.kind {
        MatrixKind::Pairing => {
            let mut m = d.pairing(t, s);
            bump(&mut m);
            let e = 2 * d.stratum_dim(t)?;
            if site.coupled && e - s != s {
                let mut q = d.pairing(t, e - s);
                q[(site.col, site.row)] += rat(if s % 2 == 0 { site.delta } else { -site.delta });
                out.levels.get_mut(&t)?.pairings.insert(e - s, q);
            } else if site.coupled && site.row != site.col {
                let sgn = if s % 2 == 0 { site.delta } else { -site.delta };
                m[(site.col, site.row)] += rat(sgn);
            }
            out.levels.get_mut(&t)?.pairings.insert(s, m);
            if site.coupled {
                rederive_gysin(&mut out)?;
            }
        }
        MatrixKind::Lefschetz => {
            let mut m = d.lefschetz(t, s);
            bump(&mut m);
            out.levels.get_mut(&t)?.lefschetz.insert(s, m);
        }
        MatrixKind::Restriction => {
            let mut m = d.rho(t, s);
            bump(&mut m);
            out.transfers.restriction.insert((t, s), m);
            if site.coupled {
                rederive_gysin(&mut out)?;
            }
        }
        MatrixKind::Gysin => {
            let mut m = d.tau(t, s);
            bump(&mut m);
            out.transfers.gysin.insert((t, s), m);
        }
    }
    Some(out)
}

/// Replaces every Gysin map by the pairing adjoint of the restriction.
fn rederive_gysin(d: &mut SemistableDatum) -> Option<()> {
    let mut gysin = std::collections::BTreeMap::new();
    for &t in d.levels.keys() {
        if t < 2 || !d.levels.contains_key(&(t - 1)) {
            continue;
        }
        let e = 2 * d.stratum_dim(t)?;
        for s in 0..=e {
            if d.h(t, (e - s) as i64) == 0 || d.h(t - 1, (e - s + 2) as i64) == 0 {
                continue;
            }
            let tau = gysin_from_restriction(&d.rho(t - 1, s), &d.pairing(t - 1, s), &d.pairing(t, s)).ok()?;
            gysin.insert((t, e - s), tau);
        }
    }
    d.transfers.gysin = gysin;
    Some(())
}

#[derive(Clone, Debug)]
pub enum Applicability {
    /// The axiom constrains nothing of positive size.
    Vacuous,
    Isolated(Box<Mutation>),
    /// Constrains something, but no site in the space breaks it alone.
    Entangled,
}

pub fn survey(d: &SemistableDatum, target: Axiom, seed: u64) -> Applicability {
    if !is_applicable(d, target) {
        return Applicability::Vacuous;
    }
    let mut all = candidate_sites(d);
    all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for site in all {
        let Some(m) = perturb(d, &site) else { continue };
        let Ok(report) = validate(&m) else { continue };
        let failing = report.failing();
        if failing.len() == 1 && failing.contains(&target) {
            return Applicability::Isolated(Box::new(Mutation {
                datum: m,
                target,
                site,
            }));
        }
    }
    Applicability::Entangled
}

/// A datum differing from `d` at one site on which exactly `target` fails.
pub fn mutate(d: &SemistableDatum, target: Axiom, seed: u64) -> Result<Mutation> {
    match survey(d, target, seed) {
        Applicability::Isolated(m) => Ok(*m),
        Applicability::Vacuous => Err(Error::NotApplicable(format!(
            "axiom {} is vacuous on this datum",
            target.number()
        ))),
        Applicability::Entangled => Err(Error::NotApplicable(format!(
            "no single-site perturbation breaks axiom {} alone",
            target.number()
        ))),
    }
}
