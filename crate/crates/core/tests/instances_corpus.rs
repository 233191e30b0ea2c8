use std::path::PathBuf;

use wss_core::instances::{
    corpus, gen_chain, gen_ngon, gen_smooth, generate, is_applicable, mutate, survey, Applicability,
    GeneratorSpec, Generated, CORPUS_NAMES, TOY_NAMES,
};
use wss_core::specseq::{build_e2, check_wmc};
use wss_core::strata::{load, validate, Axiom};
use wss_core::Error;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[test]
fn shipped_files_match_generators() {
    let built = corpus().unwrap();
    assert_eq!(built.len(), CORPUS_NAMES.len());
    for ((name, d), expected) in built.iter().zip(CORPUS_NAMES) {
        assert_eq!(name, expected);
        let path = data_dir().join(format!("{name}.json"));
        assert_eq!(&load(&path).unwrap(), d, "{name}");
    }
}

#[test]
fn corpus_validates_and_passes() {
    for (name, d) in corpus().unwrap() {
        assert!(validate(&d).unwrap().passed(), "{name}");
        let e2 = build_e2(&wss_core::specseq::to_weight_complex(&d).unwrap()).unwrap();
        assert!(check_wmc(&e2).overall, "{name}");
    }
}

#[test]
fn toys_are_threefolds() {
    for name in TOY_NAMES {
        let Generated::Datum(d) = generate(&GeneratorSpec::Toy { name: name.into() }).unwrap() else {
            panic!("{name} is not a datum");
        };
        assert_eq!(d.n, 3);
    }
    assert!(matches!(
        generate(&GeneratorSpec::Toy { name: "nope".into() }),
        Err(Error::Parameter(_))
    ));
}

#[test]
fn generator_parameters_are_checked() {
    assert!(matches!(gen_ngon(2), Err(Error::Parameter(_))));
    assert!(matches!(gen_chain(1), Err(Error::Parameter(_))));
    assert!(matches!(gen_smooth(2, &[1, 0, 2, 0, 2]), Err(Error::InvalidProfile(_))));
    assert!(matches!(gen_smooth(2, &[1, 0, 1]), Err(Error::InvalidProfile(_))));
    assert!(gen_smooth(1, &[1, 2, 1]).is_ok());
}

#[test]
fn tensor_spec_gives_a_page() {
    let spec: GeneratorSpec = serde_json::from_str(
        r#"{"kind":"tensor","operands":[{"kind":"ngon","n":3},{"kind":"ngon","n":4}]}"#,
    )
    .unwrap();
    let Generated::Complex(p) = generate(&spec).unwrap() else { panic!("expected a page") };
    assert_eq!(p.n, 2);
    assert!(check_wmc(&build_e2(&p).unwrap()).overall);
}

#[test]
fn custom_spec_loads_a_file() {
    let path = data_dir().join("ngon5.json");
    let spec = GeneratorSpec::Custom { path: path.to_string_lossy().into_owned() };
    let Generated::Datum(d) = generate(&spec).unwrap() else { panic!("expected a datum") };
    assert_eq!(*d, gen_ngon(5).unwrap());
}

#[test]
fn vacuous_axioms_are_not_applicable() {
    let ngon = gen_ngon(4).unwrap();
    assert!(!is_applicable(&ngon, Axiom::RhoSquared));
    assert!(matches!(mutate(&ngon, Axiom::RhoSquared, 0), Err(Error::NotApplicable(_))));
    let smooth = gen_smooth(2, &[1, 0, 2, 0, 1]).unwrap();
    for a in [Axiom::RhoSquared, Axiom::TauSquared, Axiom::AntiCommute, Axiom::Adjunction] {
        assert!(matches!(mutate(&smooth, a, 0), Err(Error::NotApplicable(_))), "{a:?}");
    }
}

#[test]
fn mutation_is_seeded() {
    let d = gen_ngon(5).unwrap();
    for a in [Axiom::Adjunction, Axiom::LefschetzCompat, Axiom::Poincare] {
        let x = mutate(&d, a, 9).unwrap();
        let y = mutate(&d, a, 9).unwrap();
        assert_eq!(x.site, y.site);
        assert_eq!(x.datum, y.datum);
    }
}

/// On a triple point, `ρ ∘ ρ` at one position is the adjoint of `τ ∘ τ` at
/// the dual position, so no perturbation keeping adjunction and duality
/// breaks one without the other.
#[test]
fn squares_are_entangled_on_triple_points() {
    let d = wss_core::instances::triangle_surface().unwrap();
    for a in [Axiom::RhoSquared, Axiom::TauSquared] {
        assert!(is_applicable(&d, a));
        assert!(matches!(survey(&d, a, 0), Applicability::Entangled));
    }
    assert!(matches!(survey(&d, Axiom::Adjunction, 0), Applicability::Isolated(_)));
}
