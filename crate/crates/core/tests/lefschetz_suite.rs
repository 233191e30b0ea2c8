use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wss_core::instances::{gen_ngon, gen_smooth, mutate, toy_threefolds};
use wss_core::lefschetz::{
    check_claim_dims, check_hodge_index, im_decompose, key_lemma, lemma_dual_complex,
    primitive_decompose, primitive_form_passes, random_dual_triple, surface_form_passes,
    threefold_suite, DualTriple,
};
use wss_core::ratlin::{rat, RatMatrix};
use wss_core::strata::{Axiom, SemistableDatum};
use wss_core::Error;

fn m(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(rows)
}

#[test]
fn surface_and_primitive_forms() {
    assert!(surface_form_passes(&m(&[&[0, 1], &[1, 0]])).unwrap().1);
    assert!(!surface_form_passes(&RatMatrix::identity(2)).unwrap().1);
    assert!(primitive_form_passes(&m(&[&[-1, 0], &[0, -2]])).unwrap().1);
    assert!(!primitive_form_passes(&m(&[&[-1, 0], &[0, 0]])).unwrap().1);
    assert!(matches!(surface_form_passes(&m(&[&[0, 1], &[2, 0]])), Err(Error::InvalidForm(_))));
}

#[test]
fn dual_complex_examples() {
    let t = DualTriple::new(RatMatrix::zeros(1, 0), RatMatrix::zeros(0, 1), RatMatrix::identity(1)).unwrap();
    let r = lemma_dual_complex(&t).unwrap();
    assert!(r.iso && r.criterion);
    assert_eq!((r.dim_cohomology, r.dim_dual_cohomology), (1, 1));

    let t = DualTriple::new(RatMatrix::zeros(2, 0), m(&[&[1, 0]]), m(&[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(t.g_star().unwrap(), m(&[&[0], &[1]]));
    let r = lemma_dual_complex(&t).unwrap();
    assert!(!r.iso && !r.criterion);
    assert_eq!(r.witness, Some(vec!["0".to_string(), "1".to_string()]));
}

#[test]
fn dual_complex_errors() {
    assert!(matches!(
        DualTriple::new(RatMatrix::zeros(2, 0), m(&[&[1, 0]]), m(&[&[1, 1], &[1, 1]])),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        DualTriple::new(m(&[&[1], &[0]]), m(&[&[1, 0]]), RatMatrix::identity(2)),
        Err(Error::InvalidComplex(_))
    ));
}

#[test]
fn primitive_parts_of_smooth_threefolds() {
    let d = gen_smooth(3, &[1, 0, 1, 0, 1, 0, 1]).unwrap();
    assert_eq!(primitive_decompose(&d).unwrap().p2_a.dim(), 0);

    let d = gen_smooth(3, &[1, 0, 2, 0, 2, 0, 1]).unwrap();
    assert_eq!(d.lefschetz_power(1, 2, 2).rank(), 1);
    let prim = primitive_decompose(&d).unwrap();
    assert_eq!(prim.p2_a.dim(), 1);
    let dec = im_decompose(&d, &prim).unwrap();
    for k in 0..3 {
        assert_eq!(dec.im_rho[k].dim() + dec.im_tau[k].dim(), 0);
    }
    let kl = key_lemma(&d).unwrap();
    assert!(kl.holds && kl.lhs_dim == 0);
}

#[test]
fn decomposition_invariants_on_toys() {
    for (name, d) in toy_threefolds().unwrap() {
        let prim = primitive_decompose(&d).unwrap();
        let h2a = d.h(1, 2);
        assert_eq!(prim.p2_a.dim() + prim.l_p0_a.dim(), h2a, "{name}");
        assert_eq!(prim.l_p2_a.dim() + prim.l2_p0_a.dim(), d.h(1, 4), "{name}");
        assert_eq!(prim.l_p0_b.dim() + prim.p2_b.dim(), d.h(2, 2), "{name}");
        let dec = im_decompose(&d, &prim).unwrap();
        assert_eq!(dec.im0_tau[2].dim(), 0, "{name}");
        assert_eq!(dec.im1_rho[0].dim(), 0, "{name}");
        assert!(check_claim_dims(&dec).passed, "{name}");
    }
}

#[test]
fn rank_one_restriction_gives_rank_one_im0_rho4() {
    let (_, d) = toy_threefolds().unwrap().into_iter().find(|(k, _)| k == "normal_cone").unwrap();
    assert_eq!(d.rho(1, 0).rank(), 1);
    let prim = primitive_decompose(&d).unwrap();
    let dec = im_decompose(&d, &prim).unwrap();
    assert_eq!(dec.im0_rho[2].dim(), 1);
    assert_eq!(dec.im0_rho[0].dim(), 1);
    assert_eq!(dec.im1_tau[0].dim(), 1);
}

#[test]
fn suite_requires_a_validated_threefold() {
    assert!(matches!(threefold_suite(&gen_ngon(4).unwrap()), Err(Error::Precondition(_))));
    let (_, d) = toy_threefolds().unwrap().remove(0);
    let bad = mutate(&d, Axiom::LefschetzCompat, 1).unwrap().datum;
    assert!(matches!(primitive_decompose(&bad), Err(Error::Unvalidated(_))));
    assert!(matches!(threefold_suite(&bad), Err(Error::Unvalidated(_))));
}

#[test]
fn suite_passes_on_toys() {
    for (name, d) in toy_threefolds().unwrap() {
        for r in threefold_suite(&d).unwrap() {
            assert!(r.passed(), "{name}: {}", r.check);
        }
    }
}

#[test]
fn positive_surface_form_fails_hodge_index() {
    let (_, d) = toy_threefolds().unwrap().into_iter().find(|(k, _)| k == "normal_cone").unwrap();
    let prim = primitive_decompose(&d).unwrap();
    let r = check_hodge_index(&d, &prim).unwrap();
    assert!(r.passed);
    assert_eq!(r.surfaces.len(), 1);
    assert_eq!(r.threefolds.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![1, 2]);
    // the double surface is P^1 x P^1; an identity form has signature (2, 0, 0)
    let mut bad = d.clone();
    bad.levels.get_mut(&2).unwrap().pairings.insert(2, RatMatrix::identity(2));
    let r = check_hodge_index(&bad, &prim).unwrap();
    assert!(!r.passed);
    assert_eq!((r.surfaces[0].signature.positive, r.surfaces[0].signature.negative), (2, 0));
}

fn lower_unipotent(blocks: &[usize], entries: &[i64]) -> RatMatrix {
    let n = blocks.len();
    let mut t = RatMatrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..i {
            if blocks[i] == blocks[j] {
                t[(i, j)] = rat(entries[k % entries.len()]);
            }
            k += 1;
        }
    }
    t
}

/// Rewrites `H^s` of level `t` in the basis given by the columns of `b`.
fn change_basis(d: &mut SemistableDatum, t: usize, s: usize, b: &RatMatrix) {
    let inv = b.inverse().unwrap();
    let e = 2 * d.stratum_dim(t).unwrap();
    let level = d.levels.get_mut(&t).unwrap();
    if s == e - s {
        let p = level.pairings[&s].clone();
        level.pairings.insert(s, &(&b.transpose() * &p) * b);
    } else {
        let p = level.pairings[&s].clone();
        level.pairings.insert(s, &b.transpose() * &p);
        let q = level.pairings[&(e - s)].clone();
        level.pairings.insert(e - s, &q * b);
    }
    if let Some(l) = level.lefschetz.get(&s).cloned() {
        level.lefschetz.insert(s, &l * b);
    }
    if s >= 2 {
        if let Some(l) = level.lefschetz.get(&(s - 2)).cloned() {
            level.lefschetz.insert(s - 2, &inv * &l);
        }
    }
    let tr = &mut d.transfers;
    if let Some(r) = tr.restriction.get(&(t, s)).cloned() {
        tr.restriction.insert((t, s), &r * b);
    }
    if t >= 2 {
        if let Some(r) = tr.restriction.get(&(t - 1, s)).cloned() {
            tr.restriction.insert((t - 1, s), &inv * &r);
        }
        if let Some(g) = tr.gysin.get(&(t, s)).cloned() {
            tr.gysin.insert((t, s), &g * b);
        }
    }
    if s >= 2 {
        if let Some(g) = tr.gysin.get(&(t + 1, s - 2)).cloned() {
            tr.gysin.insert((t + 1, s - 2), &inv * &g);
        }
    }
    if t == 1 && s == 2 {
        d.ample_class = inv.apply(&d.ample_class);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Signature conditions and claim verdicts do not depend on the chosen
    /// bases of `H^2(A)` and `H^2(B)`.
    #[test]
    fn suite_is_basis_independent(
        toy in 0usize..4,
        ea in proptest::collection::vec(-2i64..=2, 1..12),
        eb in proptest::collection::vec(-2i64..=2, 1..12),
    ) {
        let (name, d) = toy_threefolds().unwrap().remove(toy);
        let base: Vec<(&'static str, bool)> =
            threefold_suite(&d).unwrap().iter().map(|r| (r.check, r.passed())).collect();
        let mut moved = d.clone();
        let ba = lower_unipotent(&d.levels[&1].component_blocks[2], &ea);
        change_basis(&mut moved, 1, 2, &ba);
        let bb = lower_unipotent(&d.levels[&2].component_blocks[2], &eb);
        change_basis(&mut moved, 2, 2, &bb);
        let after: Vec<(&'static str, bool)> =
            threefold_suite(&moved).unwrap().iter().map(|r| (r.check, r.passed())).collect();
        prop_assert_eq!(base, after, "{}", name);
    }

    #[test]
    fn random_triples_satisfy_the_lemma(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_dual_triple(&mut rng, 8);
        let r = lemma_dual_complex(&t).unwrap();
        prop_assert!(r.hypothesis);
        prop_assert_eq!(r.iso, r.criterion);
        prop_assert_eq!(r.dim_cohomology, r.dim_dual_cohomology);
        prop_assert_eq!(r.witness.is_some(), !r.iso);
    }
}
