//! The checks that make up the threefold argument, one report per step.

use serde::Serialize;

use super::decomp::{require_threefold, rho_i, tau_i, ImDecomposition, PrimitiveDecomposition};
use super::dual::{lemma_dual_complex, DualComplexReport, DualTriple};
use super::quotient::Quotient;
use crate::error::{Error, Result};
use crate::ratlin::{format_rat, gram, image, kernel, signature, RatMatrix, Signature, Subspace};
use crate::specseq::{build_e1, check_wmc, install_n, E2Page, WeightComplex};
use crate::strata::SemistableDatum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoEntry {
    pub map: &'static str,
    pub source_dim: usize,
    pub target_dim: usize,
    pub well_defined: bool,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LIsoReport {
    pub entries: Vec<IsoEntry>,
    pub passed: bool,
}

fn subspace_iso(map: &'static str, m: &RatMatrix, src: &Subspace, dst: &Subspace) -> Result<IsoEntry> {
    let img = src.image_under(m)?;
    let rank = img.dim();
    Ok(IsoEntry {
        map,
        source_dim: src.dim(),
        target_dim: dst.dim(),
        well_defined: dst.contains(&img)?,
        rank,
        iso: &img == dst && rank == src.dim(),
    })
}

fn quotient_iso(map: &'static str, m: &RatMatrix, src: &Quotient, dst: &Quotient) -> Result<IsoEntry> {
    let induced = src.induced(m, dst)?;
    let rank = induced.as_ref().map_or(0, |x| x.rank());
    Ok(IsoEntry {
        map,
        source_dim: src.dim(),
        target_dim: dst.dim(),
        well_defined: induced.is_some(),
        rank,
        iso: induced.is_some() && rank == src.dim() && rank == dst.dim(),
    })
}

/// `L^2 : Im⁰ρ_0 ≅ Im⁰ρ_4`, `L : Im⁰τ_0 ≅ Im⁰τ_2`, `L : Im¹ρ_2 ≅ Im¹ρ_4`,
/// `L^2 : Im¹τ_0 ≅ Im¹τ_4`.
pub fn check_claim_l_isos(d: &SemistableDatum, dec: &ImDecomposition) -> Result<LIsoReport> {
    let entries = vec![
        subspace_iso("L^2: Im0 rho_0 -> Im0 rho_4", &d.lefschetz_power(2, 0, 2), &dec.im0_rho[0], &dec.im0_rho[2])?,
        subspace_iso("L: Im0 tau_0 -> Im0 tau_2", &d.lefschetz(1, 2), &dec.im0_tau[0], &dec.im0_tau[1])?,
        quotient_iso("L: Im1 rho_2 -> Im1 rho_4", &d.lefschetz(2, 2), &dec.im1_rho[1], &dec.im1_rho[2])?,
        quotient_iso("L^2: Im1 tau_0 -> Im1 tau_4", &d.lefschetz_power(1, 2, 2), &dec.im1_tau[0], &dec.im1_tau[2])?,
    ];
    let passed = entries.iter().all(|e| e.iso);
    Ok(LIsoReport { entries, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsReport {
    pub entries: Vec<DimEntry>,
    pub passed: bool,
}

/// `dim Im⁰ρ_i = dim Im¹τ_i` for `i = 0, 2, 4`, `dim Im⁰τ_i = dim Im¹ρ_{i+2}`
/// for `i = 0, 2`, and `dim Im¹ρ_0 = dim Im⁰τ_4 = 0`.
pub fn check_claim_dims(dec: &ImDecomposition) -> DimsReport {
    let e = |lhs, rhs, a: usize, b: usize| DimEntry {
        lhs,
        rhs,
        lhs_dim: a,
        rhs_dim: b,
        equal: a == b,
    };
    let entries = vec![
        e("Im0 rho_0", "Im1 tau_0", dec.im0_rho[0].dim(), dec.im1_tau[0].dim()),
        e("Im0 rho_2", "Im1 tau_2", dec.im0_rho[1].dim(), dec.im1_tau[1].dim()),
        e("Im0 rho_4", "Im1 tau_4", dec.im0_rho[2].dim(), dec.im1_tau[2].dim()),
        e("Im0 tau_0", "Im1 rho_2", dec.im0_tau[0].dim(), dec.im1_rho[1].dim()),
        e("Im0 tau_2", "Im1 rho_4", dec.im0_tau[1].dim(), dec.im1_rho[2].dim()),
        e("Im1 rho_0", "0", dec.im1_rho[0].dim(), 0),
        e("Im0 tau_4", "0", dec.im0_tau[2].dim(), 0),
    ];
    let passed = entries.iter().all(|x| x.equal);
    DimsReport { entries, passed }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSignature {
    pub component: usize,
    pub dim: usize,
    pub signature: Signature,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeIndexReport {
    /// Cup form on `H^2` of each surface component: signature `(1, h-1, 0)`.
    pub surfaces: Vec<ComponentSignature>,
    /// Lefschetz form on primitive `H^2` of each threefold component:
    /// negative definite.
    pub threefolds: Vec<ComponentSignature>,
    pub passed: bool,
}

/// `(1, h - 1, 0)`.
pub fn surface_form_passes(p: &RatMatrix) -> Result<(Signature, bool)> {
    let s = signature(p)?;
    Ok((s, s.positive == 1 && s.zero == 0))
}

pub fn primitive_form_passes(g: &RatMatrix) -> Result<(Signature, bool)> {
    let s = signature(g)?;
    Ok((s, s.is_negative_definite()))
}

pub fn check_hodge_index(d: &SemistableDatum, prim: &PrimitiveDecomposition) -> Result<HodgeIndexReport> {
    let mut surfaces = Vec::new();
    if let Some(b) = d.level(2) {
        let p = d.pairing(2, 2);
        if !p.is_symmetric() {
            return Err(Error::InvalidForm("cup form on H^2(B) is not symmetric".into()));
        }
        for c in 0..b.components {
            let idx = b.block(2, c);
            let (signature, passed) = surface_form_passes(&p.submatrix(&idx, &idx))?;
            surfaces.push(ComponentSignature {
                component: c,
                dim: idx.len(),
                signature,
                passed,
            });
        }
    }
    let mut threefolds = Vec::new();
    if let Some(a) = d.level(1) {
        if !prim.lefschetz_form.is_symmetric() {
            return Err(Error::InvalidForm("Lefschetz form on H^2(A) is not symmetric".into()));
        }
        let l2 = d.lefschetz_power(1, 2, 2);
        for c in 0..a.components {
            let idx = a.block(2, c);
            let top = a.block(6, c);
            let prim_c = kernel(&l2.submatrix(&top, &idx));
            let form = prim.lefschetz_form.submatrix(&idx, &idx);
            let g = gram(&form, prim_c.basis(), prim_c.basis());
            let (signature, passed) = primitive_form_passes(&g)?;
            threefolds.push(ComponentSignature {
                component: c,
                dim: prim_c.dim(),
                signature,
                passed,
            });
        }
    }
    let passed = surfaces.iter().chain(&threefolds).all(|c| c.passed);
    Ok(HodgeIndexReport {
        surfaces,
        threefolds,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramEntry {
    pub dim: usize,
    pub determinant: String,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegeneracyReport {
    /// Cup form on `Im⁰ρ_2`.
    pub cup_on_im0_rho2: GramEntry,
    /// Lefschetz form on `Im⁰τ_0`.
    pub lefschetz_on_im0_tau0: GramEntry,
    pub passed: bool,
}

fn gram_entry(form: &RatMatrix, basis: &RatMatrix) -> Result<GramEntry> {
    let g = gram(form, basis, basis);
    let det = g.determinant()?;
    Ok(GramEntry {
        dim: basis.cols(),
        nondegenerate: det != num_traits::Zero::zero(),
        determinant: format_rat(&det),
    })
}

pub fn check_claim_nondegeneracy(
    d: &SemistableDatum,
    prim: &PrimitiveDecomposition,
    dec: &ImDecomposition,
) -> Result<NondegeneracyReport> {
    let cup = gram_entry(&d.pairing(2, 2), dec.im0_rho[1].basis())?;
    let lef = gram_entry(&prim.lefschetz_form, dec.im0_tau[0].basis())?;
    let passed = cup.nondegenerate && lef.nondegenerate;
    Ok(NondegeneracyReport {
        cup_on_im0_rho2: cup,
        lefschetz_on_im0_tau0: lef,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// `Im⁰τ_0 -> Im ρ_2 -> Im¹ρ_2` is bijective.
    pub iso: bool,
    /// `Im ρ_2 = Im⁰ρ_2 ⊕ ρ_2(Im⁰τ_0)`.
    pub splits: bool,
    /// The two summands are orthogonal for the cup form.
    pub orthogonal: bool,
    /// `ρ_2(a) ∪ ρ_2(τ_0(c)) = 0` for all `a`, `c`.
    pub rho_tau_orthogonal: bool,
    pub passed: bool,
}

pub fn check_claim_composition(
    d: &SemistableDatum,
    _prim: &PrimitiveDecomposition,
    dec: &ImDecomposition,
) -> Result<CompositionReport> {
    let rho2 = rho_i(d, 2);
    let src = &dec.im0_tau[0];
    let dst = &dec.im1_rho[1];
    let composite = &(&dst.proj * &rho2) * src.basis();
    let rank = composite.rank();
    let iso = rank == src.dim() && rank == dst.dim();

    let complement = src.image_under(&rho2)?;
    let im0 = &dec.im0_rho[1];
    let splits = im0.intersect(&complement)?.is_zero() && im0.sum(&complement)? == dec.im_rho[1];
    let p = d.pairing(2, 2);
    let orthogonal = gram(&p, im0.basis(), complement.basis()).is_zero();
    let rho_tau = &rho2 * &tau_i(d, 0);
    let rho_tau_orthogonal = gram(&p, &rho2, &rho_tau).is_zero();
    Ok(CompositionReport {
        source_dim: src.dim(),
        target_dim: dst.dim(),
        rank,
        iso,
        splits,
        orthogonal,
        rho_tau_orthogonal,
        passed: iso && splits && orthogonal && rho_tau_orthogonal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyLemmaReport {
    /// `dim (Ker τ_2 ∩ Im ρ_2)`.
    pub lhs_dim: usize,
    /// `dim Im(ρ_2 ∘ τ_0)`.
    pub rhs_dim: usize,
    /// `Im(ρ_2 ∘ τ_0) ⊆ Ker τ_2 ∩ Im ρ_2`.
    pub easy_inclusion: bool,
    pub holds: bool,
    /// A vector of `(Ker τ_2 ∩ Im ρ_2) \ Im(ρ_2 ∘ τ_0)`.
    pub witness: Option<Vec<String>>,
}

/// `Ker τ ∩ Im ρ = Im(ρ ∘ τ)` in `H^2(B)` along
/// `H^0(B) -τ-> H^2(A) -ρ-> H^2(B) -τ-> H^4(A)`.
pub fn key_lemma(d: &SemistableDatum) -> Result<KeyLemmaReport> {
    require_threefold(d)?;
    Ok(key_lemma_unchecked(d))
}

fn key_lemma_unchecked(d: &SemistableDatum) -> KeyLemmaReport {
    let (tau0, rho2, tau2) = (tau_i(d, 0), rho_i(d, 2), tau_i(d, 2));
    let lhs = kernel(&tau2).intersect(&image(&rho2)).expect("same ambient");
    let rhs = image(&(&rho2 * &tau0));
    let easy_inclusion = lhs.contains(&rhs).expect("same ambient");
    let witness = lhs
        .basis_vectors()
        .into_iter()
        .find(|v| !rhs.contains_vector(v))
        .map(|v| v.iter().map(format_rat).collect());
    KeyLemmaReport {
        lhs_dim: lhs.dim(),
        rhs_dim: rhs.dim(),
        easy_inclusion,
        holds: lhs == rhs,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2MiddleReport {
    /// The rows `E1^{-2,4} -> E1^{-1,4} -> E1^{0,4}` with the pairing
    /// `<x, N y>` on `E1^{-1,4}`.
    pub lemma: DualComplexReport,
    pub key_lemma: Option<KeyLemmaReport>,
    /// `N : E2^{-1,4} -> E2^{1,2}` as judged by the weight-monodromy check.
    pub wmc_iso: bool,
    pub agree: bool,
    pub passed: bool,
}

/// The middle rows of a three-dimensional page, by the dual-complex
/// criterion, against the weight-monodromy check at `(r, w) = (1, 3)`.
pub fn check_e2_middle_complex(page: &WeightComplex, e2: &E2Page) -> Result<E2MiddleReport> {
    if page.n != 3 || e2.n != 3 {
        return Err(Error::Precondition(format!("middle rows need n = 3, got {}", page.n)));
    }
    let v2 = page.dim(-1, 4);
    let pairing = if v2 == 0 {
        RatMatrix::zeros(0, 0)
    } else {
        let p = page
            .pairings
            .get(&(-1, 4))
            .ok_or_else(|| Error::Precondition("page carries no E1 pairing at (-1, 4)".into()))?;
        p * &page.n_at(-1, 4)
    };
    let triple = DualTriple::new(page.d1_at(-2, 4), page.d1_at(-1, 4), pairing)?;
    let lemma = lemma_dual_complex(&triple)?;
    let wmc_iso = check_wmc(e2)
        .entries
        .iter()
        .find(|e| e.r == 1 && e.w == 3)
        .map(|e| e.iso)
        .ok_or_else(|| Error::Consistency("no weight-monodromy entry at (1, 3)".into()))?;
    if !lemma.hypothesis {
        return Err(Error::Consistency("E1 rows are not dual: Im f not in Im g*".into()));
    }
    if lemma.iso != wmc_iso {
        return Err(Error::Consistency(format!(
            "dual-complex criterion gives {} but the E2 check gives {wmc_iso} at (1, 3)",
            lemma.iso
        )));
    }
    Ok(E2MiddleReport {
        passed: lemma.iso,
        agree: true,
        lemma,
        key_lemma: None,
        wmc_iso,
    })
}

/// As [`check_e2_middle_complex`] for the page of `d`, with the key lemma as
/// the inclusion `Ker g ∩ Im g* ⊆ Im f`: the lemma implies the criterion.
pub fn check_e2_middle(d: &SemistableDatum, e2: &E2Page) -> Result<E2MiddleReport> {
    require_threefold(d)?;
    let page = install_n(build_e1(d)?)?;
    let mut report = check_e2_middle_complex(&page, e2)?;
    let kl = key_lemma_unchecked(d);
    if kl.holds && !report.lemma.criterion {
        return Err(Error::Consistency(
            "key lemma holds but the middle-row criterion fails".into(),
        ));
    }
    report.key_lemma = Some(kl);
    Ok(report)
}
