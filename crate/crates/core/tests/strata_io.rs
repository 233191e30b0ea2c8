use serde_json::Value;
use wss_core::instances::{corpus, gen_chain, gen_ngon, gen_smooth, mutate};
use wss_core::strata::{from_json_str, load, save, to_json_string, validate, Axiom};
use wss_core::Error;

fn ngon3_json() -> Value {
    serde_json::from_str(&to_json_string(&gen_ngon(3).unwrap())).unwrap()
}

#[test]
fn save_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, d) in corpus().unwrap() {
        let path = dir.path().join(format!("{name}.json"));
        save(&d, &path).unwrap();
        assert_eq!(load(&path).unwrap(), d, "{name}");
    }
}

#[test]
fn zero_denominator_names_the_field() {
    let mut v = ngon3_json();
    v["levels"][0]["pairings"]["0"][1][1] = Value::String("1/0".into());
    match from_json_str(&v.to_string()) {
        Err(Error::Parse { field, .. }) => assert!(field.contains("pairings"), "{field}"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn missing_pairing_is_structural() {
    let mut v = ngon3_json();
    v["levels"][0]["pairings"].as_object_mut().unwrap().remove("2");
    assert!(matches!(from_json_str(&v.to_string()), Err(Error::Structural(_))));
}

#[test]
fn wrong_shape_is_rejected_before_validation() {
    let mut v = ngon3_json();
    v["restriction"][0]["matrix"].as_array_mut().unwrap().pop();
    assert!(from_json_str(&v.to_string()).is_err());
}

#[test]
fn schema_version_is_checked() {
    let mut v = ngon3_json();
    v["schema"] = Value::String("wss-0".into());
    assert!(matches!(from_json_str(&v.to_string()), Err(Error::Schema { .. })));
}

#[test]
fn unknown_fields_are_rejected() {
    let mut v = ngon3_json();
    v["extra"] = Value::Bool(true);
    assert!(from_json_str(&v.to_string()).is_err());
}

#[test]
fn generators_validate() {
    let mut data = vec![
        gen_smooth(1, &[1, 0, 1]).unwrap(),
        gen_smooth(2, &[1, 2, 3, 2, 1]).unwrap(),
        gen_smooth(3, &[1, 0, 2, 0, 2, 0, 1]).unwrap(),
    ];
    data.extend((3..=8).map(|n| gen_ngon(n).unwrap()));
    data.extend((2..=6).map(|n| gen_chain(n).unwrap()));
    for d in &data {
        let r = validate(d).unwrap();
        assert!(r.passed(), "{:?}", r.failing());
        assert!(r.rank_duality);
    }
}

#[test]
fn flipped_gysin_sign_is_located() {
    let mut d = gen_ngon(5).unwrap();
    let tau = d.transfers.gysin.values_mut().next().unwrap();
    tau[(0, 0)] = -tau[(0, 0)].clone();
    let r = validate(&d).unwrap();
    let failing = r.failing();
    assert!(failing.contains(&Axiom::Adjunction) || failing.contains(&Axiom::AntiCommute));
    for a in r.axioms.iter().filter(|a| !a.passed) {
        assert!(!a.failures.is_empty());
    }
}

#[test]
fn mutations_are_reported_by_number() {
    let d = gen_ngon(4).unwrap();
    let m = mutate(&d, Axiom::Adjunction, 11).unwrap();
    let r = validate(&m.datum).unwrap();
    assert_eq!(r.failing().into_iter().collect::<Vec<_>>(), vec![Axiom::Adjunction]);
    assert_eq!(Axiom::Adjunction.number(), 4);
}
