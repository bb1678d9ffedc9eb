use stairgf::exactnum::{int, Polynomial};
use stairgf::paperdata::{get_fixture, FixtureError, FixtureSet, Kind, Payload};

#[test]
fn embedded_file_round_trips_byte_for_byte() {
    let set = FixtureSet::embedded();
    assert_eq!(set.serialize(), FixtureSet::embedded_text());
    assert_eq!(&FixtureSet::parse(&set.serialize()).unwrap(), set);
}

#[test]
fn p6_example() {
    let p = get_fixture("p6").unwrap().polynomial().unwrap();
    assert_eq!(p, Polynomial::from_i64(&[-2, 6, 60, -230, 660, -2913, 6874]));
    assert_eq!(p.to_string(), "6874*x^6 - 2913*x^5 + 660*x^4 - 230*x^3 + 60*x^2 + 6*x - 2");
}

#[test]
fn perimeter_series_example() {
    let s = get_fixture("P_P_series").unwrap().series().unwrap();
    let want = [1, 12, 94, 604, 3463, 18440, 93274];
    for (k, w) in want.iter().enumerate() {
        assert_eq!(s.coeff(8 + k as i64), int(*w));
    }
    assert_eq!(s.valuation(), Some(8));
}

#[test]
fn genus_one_branch_example() {
    let y = get_fixture("Y_of_X").unwrap().series().unwrap();
    assert_eq!(y.valuation(), Some(5));
    assert_eq!(&y.coeffs()[..3], &[int(1), int(20), int(350)]);
}

#[test]
fn table_subscripts_match_degrees() {
    let mut seen = 0;
    for f in FixtureSet::embedded().iter() {
        if let Some(j) = f.subscript() {
            assert_eq!(f.polynomial().unwrap().degree(), Some(j), "{}", f.name);
            seen += 1;
        }
    }
    assert_eq!(seen, 19);
}

#[test]
fn evaluations_recorded_alongside_polynomials() {
    for f in FixtureSet::embedded().iter() {
        if let Payload::Polynomial { at1, at2, .. } = &f.payload {
            let p = f.polynomial().unwrap();
            assert_eq!(p.eval(&int(1)), (*at1).clone().into(), "{}", f.name);
            assert_eq!(p.eval(&int(2)), (*at2).clone().into(), "{}", f.name);
        }
    }
}

#[test]
fn operator_orders() {
    let names = ["N2", "N3", "N1", "V2", "V2bar", "T2", "A1", "B1", "C1", "D1"];
    let orders: Vec<usize> =
        names.iter().map(|n| get_fixture(n).unwrap().operator().unwrap().order().unwrap()).collect();
    assert_eq!(orders, vec![2, 3, 1, 2, 2, 2, 1, 1, 1, 1]);
}

#[test]
fn n2_singular_factors() {
    let n2 = get_fixture("N2").unwrap().operator().unwrap();
    let den = n2.coeffs()[0].den().clone();
    let sq = Polynomial::from_i64(&[1, -4]).pow(2);
    assert!(den.div_rem(&sq).unwrap().1.is_zero());
    assert!(den.div_rem(&Polynomial::from_i64(&[1, 1, 7])).unwrap().1.is_zero());
    assert!(den.div_rem(&get_fixture("p6").unwrap().polynomial().unwrap()).unwrap().1.is_zero());
}

#[test]
fn unknown_names_suggest_neighbours() {
    let err = get_fixture("P_P_seris").unwrap_err();
    match &err {
        FixtureError::Unknown { near, .. } => assert_eq!(near[0], "P_P_series"),
        other => panic!("{other:?}"),
    }
    assert!(err.to_string().contains("did you mean P_P_series"));
    assert!(matches!(get_fixture("qqqqqqqqqqqq"), Err(FixtureError::Unknown { .. })));
}

#[test]
fn kinds_are_enforced() {
    let e = get_fixture("p6").unwrap().series().unwrap_err();
    assert_eq!(e, FixtureError::KindMismatch { name: "p6".into(), expected: Kind::Series, found: Kind::Polynomial });
}

#[test]
fn malformed_records_are_rejected() {
    assert!(matches!(FixtureSet::parse("a | polynomial | x | 1,2"), Err(FixtureError::Parse { line: 1, .. })));
    assert!(matches!(FixtureSet::parse("a | series | x | val=0 ; trunc=3 ; 1,2"), Err(FixtureError::Parse { .. })));
    assert!(matches!(FixtureSet::parse("a | blob | x | 1"), Err(FixtureError::Parse { .. })));
    let dup = "a | ratfunc | x | [1]/[1]\na | ratfunc | x | [1]/[1]\n";
    assert_eq!(FixtureSet::parse(dup), Err(FixtureError::Duplicate("a".into())));
}

#[test]
fn parametrization_lies_on_modular_curve() {
    let param = get_fixture("CD_param").unwrap();
    let curve = get_fixture("modular_curve").unwrap().curve().unwrap();
    assert!(curve.eval_cleared(&param.entry("C").unwrap(), &param.entry("D").unwrap()).is_zero());
    assert!(matches!(param.entry("Q"), Err(FixtureError::MissingEntry { .. })));
}

#[test]
fn override_replaces_one_payload() {
    let set = FixtureSet::embedded();
    let bumped = Payload::Series { valuation: 8, trunc: 9, coeffs: vec![int(2)] };
    let faulty = set.with_override("P_P_series", bumped).unwrap();
    assert_eq!(faulty.get("P_P_series").unwrap().series().unwrap().coeff(8), int(2));
    assert_eq!(faulty.get("p6").unwrap(), set.get("p6").unwrap());
    assert!(set
        .with_override("nope", Payload::Ratfunc(stairgf::paperdata::RawRatFunc { num: vec![], den: vec![] }))
        .is_err());
}
