//! Primitive and `Im⁰ / Im¹` decompositions for a threefold degeneration.
//!
//! `A` is level 1 (threefolds) and `B` level 2 (surfaces). With all data
//! over `Q` the Néron-Severi spaces coincide with `H^2`, so `N^0(A)`,
//! `N^2(A)`, `N^0(B)`, `N^2(B)` are `L P^0(A)`, `P^2(A)`, `L P^0(B)`,
//! `P^2(B)` themselves.

use super::quotient::Quotient;
use crate::error::{Error, Result};
use crate::ratlin::{image, kernel, RatMatrix, Subspace};
use crate::strata::{validate, SemistableDatum};

/// Validation gate shared by the threefold checks.
pub fn require_threefold(d: &SemistableDatum) -> Result<()> {
    if d.n != 3 {
        return Err(Error::Precondition(format!("threefold checks need n = 3, got {}", d.n)));
    }
    let report = validate(d)?;
    if !report.passed() {
        let failing: Vec<String> = report.failing().iter().map(|a| a.number().to_string()).collect();
        return Err(Error::Unvalidated(format!("axioms {} fail", failing.join(", "))));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub p0_a: Subspace,
    pub p2_a: Subspace,
    /// In `H^2(A)`.
    pub l_p0_a: Subspace,
    /// In `H^4(A)`.
    pub l_p2_a: Subspace,
    pub l2_p0_a: Subspace,
    pub l3_p0_a: Subspace,
    pub p0_b: Subspace,
    pub p2_b: Subspace,
    pub l_p0_b: Subspace,
    pub l2_p0_b: Subspace,
    /// `x, y -> L ∪ x ∪ y` on all of `H^2(A)`.
    pub lefschetz_form: RatMatrix,
    /// The same form on the basis of `P^2(A)`.
    pub primitive_form: RatMatrix,
}

fn fail(line: &str) -> Error {
    Error::InstanceInconsistency(line.into())
}

/// `U ⊕ W = whole`: trivial intersection and full sum.
fn is_direct_sum(u: &Subspace, w: &Subspace, whole: &Subspace) -> Result<bool> {
    Ok(u.intersect(w)?.is_zero() && &u.sum(w)? == whole)
}

pub fn primitive_decompose(d: &SemistableDatum) -> Result<PrimitiveDecomposition> {
    require_threefold(d)?;
    let la = |s: usize, k: usize| d.lefschetz_power(1, s, k);
    let lb = |s: usize, k: usize| d.lefschetz_power(2, s, k);
    let ha = |s: usize| Subspace::full(d.h(1, s as i64));
    let hb = |s: usize| Subspace::full(d.h(2, s as i64));

    let p0_a = ha(0);
    let p2_a = kernel(&la(2, 2));
    let l_p0_a = image(&la(0, 1));
    let l_p2_a = p2_a.image_under(&la(2, 1))?;
    let l2_p0_a = image(&la(0, 2));
    let l3_p0_a = image(&la(0, 3));
    let p0_b = hb(0);
    let p2_b = kernel(&lb(2, 1));
    let l_p0_b = image(&lb(0, 1));
    let l2_p0_b = image(&lb(0, 2));

    if !is_direct_sum(&p2_a, &l_p0_a, &ha(2))? {
        return Err(fail("H^2(A) != P^2(A) + L P^0(A)"));
    }
    if !is_direct_sum(&l_p2_a, &l2_p0_a, &ha(4))? {
        return Err(fail("H^4(A) != L P^2(A) + L^2 P^0(A)"));
    }
    if l3_p0_a != ha(6) {
        return Err(fail("H^6(A) != L^3 P^0(A)"));
    }
    if !is_direct_sum(&l_p0_b, &p2_b, &hb(2))? {
        return Err(fail("H^2(B) != L P^0(B) + P^2(B)"));
    }
    if l2_p0_b != hb(4) {
        return Err(fail("H^4(B) != L^2 P^0(B)"));
    }

    let lefschetz_form = &d.pairing(1, 2) * &d.lefschetz(1, 2);
    let primitive_form = crate::ratlin::gram(&lefschetz_form, p2_a.basis(), p2_a.basis());
    Ok(PrimitiveDecomposition {
        p0_a,
        p2_a,
        l_p0_a,
        l_p2_a,
        l2_p0_a,
        l3_p0_a,
        p0_b,
        p2_b,
        l_p0_b,
        l2_p0_b,
        lefschetz_form,
        primitive_form,
    })
}

/// Images of `ρ_i : H^i(A) -> H^i(B)` and `τ_i : H^i(B) -> H^{i+2}(A)` for
/// `i = 0, 2, 4`, indexed by `i / 2`, with their `Im⁰` parts and the
/// quotients `Im¹ = Im / Im⁰`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImDecomposition {
    pub im_rho: [Subspace; 3],
    pub im0_rho: [Subspace; 3],
    pub im1_rho: [Quotient; 3],
    pub im_tau: [Subspace; 3],
    pub im0_tau: [Subspace; 3],
    pub im1_tau: [Quotient; 3],
}

pub fn rho_i(d: &SemistableDatum, i: usize) -> RatMatrix {
    d.rho(1, i)
}

pub fn tau_i(d: &SemistableDatum, i: usize) -> RatMatrix {
    d.tau(2, i)
}

pub fn im_decompose(d: &SemistableDatum, prim: &PrimitiveDecomposition) -> Result<ImDecomposition> {
    let im_rho = [0, 2, 4].map(|i| image(&rho_i(d, i)));
    let im_tau = [0, 2, 4].map(|i| image(&tau_i(d, i)));
    let la = |s: usize, k: usize| d.lefschetz_power(1, s, k);
    let lb = |s: usize, k: usize| d.lefschetz_power(2, s, k);

    let im0_rho0 = im_rho[0].clone();

    let part_l = prim.l_p0_a.image_under(&rho_i(d, 2))?.intersect(&prim.l_p0_b)?;
    let part_p = im_rho[1].intersect(&prim.p2_b)?;
    if !part_l.intersect(&part_p)?.is_zero() {
        return Err(fail("Im0 rho_2: the two parts are not independent"));
    }
    let im0_rho2 = part_l.sum(&part_p)?;
    if im0_rho2 != im0_rho0.image_under(&lb(0, 1))?.sum(&part_p)? {
        return Err(fail("Im0 rho_2 != L Im rho_0 + (Im rho_2 ∩ P^2(B))"));
    }

    let im0_rho4 = prim.l2_p0_a.image_under(&rho_i(d, 4))?;
    if im0_rho4 != im0_rho0.image_under(&lb(0, 2))? {
        return Err(fail("Im0 rho_4 != L^2 Im rho_0"));
    }

    let im0_tau0 = im_tau[0].intersect(&prim.p2_a)?;
    let im0_tau2 = prim.l_p0_b.image_under(&tau_i(d, 2))?.intersect(&prim.l_p2_a)?;
    if im0_tau2 != im0_tau0.image_under(&la(2, 1))? {
        return Err(fail("Im0 tau_2 != L Im0 tau_0"));
    }
    let im0_tau4 = Subspace::zero(d.h(1, 6));

    let im0_rho = [im0_rho0, im0_rho2, im0_rho4];
    let im0_tau = [im0_tau0, im0_tau2, im0_tau4];
    let quotients = |whole: &[Subspace; 3], sub: &[Subspace; 3], what: &str| -> Result<[Quotient; 3]> {
        let mut out = Vec::new();
        for k in 0..3 {
            if !whole[k].contains(&sub[k])? {
                return Err(fail(&format!("Im0 {what}_{} not inside Im {what}_{}", 2 * k, 2 * k)));
            }
            out.push(Quotient::new(whole[k].clone(), sub[k].clone())?);
        }
        Ok(out.try_into().expect("three quotients"))
    };
    let im1_rho = quotients(&im_rho, &im0_rho, "rho")?;
    let im1_tau = quotients(&im_tau, &im0_tau, "tau")?;
    Ok(ImDecomposition {
        im_rho,
        im0_rho,
        im1_rho,
        im_tau,
        im0_tau,
        im1_tau,
    })
}
