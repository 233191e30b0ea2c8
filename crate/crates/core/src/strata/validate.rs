use std::collections::BTreeSet;

use serde::Serialize;

use super::SemistableDatum;
use crate::error::Result;
use crate::ratlin::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    RhoSquared,
    TauSquared,
    AntiCommute,
    Adjunction,
    LefschetzCompat,
    HardLefschetz,
    Poincare,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::RhoSquared,
        Axiom::TauSquared,
        Axiom::AntiCommute,
        Axiom::Adjunction,
        Axiom::LefschetzCompat,
        Axiom::HardLefschetz,
        Axiom::Poincare,
    ];

    /// 1-based number used in reports.
    pub fn number(self) -> u8 {
        Axiom::ALL.iter().position(|&a| a == self).unwrap() as u8 + 1
    }

    pub fn from_number(k: u8) -> Option<Axiom> {
        Axiom::ALL.get((k as usize).checked_sub(1)?).copied()
    }

    pub fn describe(self) -> &'static str {
        match self {
            Axiom::RhoSquared => "rho o rho = 0",
            Axiom::TauSquared => "tau o tau = 0",
            Axiom::AntiCommute => "tau o rho + rho o tau = 0",
            Axiom::Adjunction => "<rho a, b> = <a, tau b>",
            Axiom::LefschetzCompat => "L commutes with rho and tau",
            Axiom::HardLefschetz => "hard Lefschetz",
            Axiom::Poincare => "Poincare duality",
        }
    }
}

/// Where an axiom failed: 1-based level `j` and source degree `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureLocation {
    pub level: usize,
    pub degree: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub number: u8,
    pub description: &'static str,
    pub passed: bool,
    pub failures: Vec<FailureLocation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub axioms: Vec<AxiomResult>,
    /// `rank ρ = rank τ` on every adjoint pair; implied by axiom 4.
    pub rank_duality: bool,
    /// `L(1)` on level 1 equals the declared ample class. Informational.
    pub ample_class_matches: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn failing(&self) -> BTreeSet<Axiom> {
        self.axioms
            .iter()
            .filter(|a| !a.passed)
            .map(|a| a.axiom)
            .collect()
    }

    pub fn result(&self, axiom: Axiom) -> &AxiomResult {
        &self.axioms[axiom.number() as usize - 1]
    }
}

struct Collector {
    failures: Vec<FailureLocation>,
}

impl Collector {
    fn new() -> Self {
        Collector { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, level: usize, degree: usize, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(FailureLocation {
                level,
                degree,
                detail: detail(),
            });
        }
    }

    fn finish(self, axiom: Axiom) -> AxiomResult {
        AxiomResult {
            axiom,
            number: axiom.number(),
            description: axiom.describe(),
            passed: self.failures.is_empty(),
            failures: self.failures,
        }
    }
}

/// Structural checks first, then every axiom over every `(level, degree)`.
pub fn validate(d: &SemistableDatum) -> Result<ValidationReport> {
    d.check_structure()?;
    let top = d.n + 1;
    let dims = |t: usize| d.stratum_dim(t).unwrap_or(0);
    let present = |t: usize| d.levels.contains_key(&t);

    let mut rr = Collector::new();
    for t in 1..=top {
        if !present(t) {
            continue;
        }
        for s in 0..=2 * dims(t) {
            let c = &d.rho(t + 1, s) * &d.rho(t, s);
            rr.check(c.is_zero(), t, s, || "rho(t+1) rho(t) != 0".into());
        }
    }

    let mut tt = Collector::new();
    for t in 3..=top {
        if !present(t) {
            continue;
        }
        for s in 0..=2 * dims(t) {
            let c = &d.tau(t - 1, s + 2) * &d.tau(t, s);
            tt.check(c.is_zero(), t, s, || "tau(t-1) tau(t) != 0".into());
        }
    }

    // On X^(1) the composite is cup product with the normal classes and is
    // not required to vanish; it never enters d1 o d1.
    let mut ac = Collector::new();
    for t in 2..=top {
        if !present(t) {
            continue;
        }
        for s in 0..=2 * dims(t) {
            let a = &d.tau(t + 1, s) * &d.rho(t, s);
            let b = &d.rho(t - 1, s + 2) * &d.tau(t, s);
            ac.check((&a + &b).is_zero(), t, s, || "tau rho + rho tau != 0".into());
        }
    }

    let mut adj = Collector::new();
    let mut rank_duality = true;
    for t in 1..top {
        if !present(t) || !present(t + 1) {
            continue;
        }
        let e = 2 * dims(t + 1);
        for s in 0..=e {
            let rho = d.rho(t, s);
            let tau = d.tau(t + 1, e - s);
            let lhs = &rho.transpose() * &d.pairing(t + 1, s);
            let rhs = &d.pairing(t, s) * &tau;
            adj.check(lhs == rhs, t, s, || {
                format!("pairing of rho(level {t}) against tau(level {}, degree {})", t + 1, e - s)
            });
            if rho.rank() != tau.rank() {
                rank_duality = false;
            }
        }
    }

    let mut lc = Collector::new();
    for t in 1..=top {
        if !present(t) {
            continue;
        }
        let l = &d.levels[&t];
        let dt = dims(t);
        for s in 0..=2 * dt {
            if t < top {
                let a = &d.lefschetz(t + 1, s) * &d.rho(t, s);
                let b = &d.rho(t, s + 2) * &d.lefschetz(t, s);
                lc.check(a == b, t, s, || "L rho != rho L".into());
            }
            if t >= 2 {
                let a = &d.lefschetz(t - 1, s + 2) * &d.tau(t, s);
                let b = &d.tau(t, s + 2) * &d.lefschetz(t, s);
                lc.check(a == b, t, s, || "L tau != tau L".into());
            }
            if s + 2 <= 2 * dt {
                let lm = d.lefschetz(t, s);
                let src = &l.component_blocks[s];
                let dst = &l.component_blocks[s + 2];
                let mixes = (0..lm.rows())
                    .any(|i| (0..lm.cols()).any(|j| dst[i] != src[j] && !num_traits::Zero::is_zero(&lm[(i, j)])));
                lc.check(!mixes, t, s, || "L mixes connected components".into());
            }
        }
    }

    let mut hl = Collector::new();
    for t in 1..=top {
        if !present(t) {
            continue;
        }
        let dt = dims(t);
        for i in 1..=dt {
            let s = dt - i;
            let li = d.lefschetz_power(t, s, i);
            let ok = li.is_square() && li.rank() == li.rows();
            hl.check(ok, t, s, || format!("L^{i} : H^{s} -> H^{} not invertible", dt + i));
        }
    }

    let mut pd = Collector::new();
    for t in 1..=top {
        if !present(t) {
            continue;
        }
        let dt = dims(t);
        for s in 0..=2 * dt {
            let p = d.pairing(t, s);
            let nondeg = p.is_square() && p.rank() == p.rows();
            pd.check(nondeg, t, s, || "pairing degenerate".into());
            let q = d.pairing(t, 2 * dt - s);
            let sym = if s % 2 == 0 { q == p.transpose() } else { q == -&p.transpose() };
            pd.check(sym, t, s, || "pairing not graded-symmetric".into());
        }
    }

    let lone = d.lefschetz(1, 0).apply(&d.unit_class());
    let ample_class_matches = lone == d.ample_class;

    Ok(ValidationReport {
        axioms: vec![
            rr.finish(Axiom::RhoSquared),
            tt.finish(Axiom::TauSquared),
            ac.finish(Axiom::AntiCommute),
            adj.finish(Axiom::Adjunction),
            lc.finish(Axiom::LefschetzCompat),
            hl.finish(Axiom::HardLefschetz),
            pd.finish(Axiom::Poincare),
        ],
        rank_duality,
        ample_class_matches,
    })
}

/// `τ` determined by `ρ` through the pairings: `τ = P_t^{-1} ρᵀ P_{t+1}`.
pub fn gysin_from_restriction(
    rho: &RatMatrix,
    source_pairing: &RatMatrix,
    target_pairing: &RatMatrix,
) -> Result<RatMatrix> {
    Ok(&source_pairing.inverse()? * &(&rho.transpose() * target_pairing))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_numbers_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(Axiom::from_number(a.number()), Some(a));
        }
        assert_eq!(Axiom::from_number(0), None);
        assert_eq!(Axiom::from_number(8), None);
    }

    #[test]
    fn derived_gysin_satisfies_adjunction() {
        let rho = RatMatrix::from_i64(&[&[1, 2]]);
        let source = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let target = RatMatrix::from_i64(&[&[3]]);
        let tau = gysin_from_restriction(&rho, &source, &target).unwrap();
        assert_eq!(&rho.transpose() * &target, &source * &tau);
        assert!(gysin_from_restriction(&rho, &RatMatrix::zeros(2, 2), &target).is_err());
    }
}
