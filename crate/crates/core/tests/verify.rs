use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use stairgf::exactnum::int;
use stairgf::paperdata::Payload;
use stairgf::verify::{catalog, CheckStatus};
use stairgf::{run_check, FixtureSet, Verifier, VerifyError};

const IDS: [&str; 30] = [
    "R1", "R2", "R3", "R4", "S1", "S2", "S3", "S4", "O1", "O2", "O3", "O4", "O5", "O6", "O7", "O8", "O9", "O10", "M1",
    "M2", "M3", "M4", "M5", "M6", "M7", "M8", "E1", "H1", "H2", "F1",
];

fn series_with(name: &str, exponent: i64, delta: i64) -> FixtureSet {
    let set = FixtureSet::embedded();
    let Payload::Series { valuation, trunc, mut coeffs } = set.get(name).unwrap().payload.clone() else {
        panic!("{name} is not a series")
    };
    coeffs[(exponent - valuation) as usize] += int(delta);
    set.with_override(name, Payload::Series { valuation, trunc, coeffs }).unwrap()
}

/// P^P with the x^10 coefficient 94 changed to 95.
fn corrupted_pp() -> &'static Verifier {
    static V: OnceLock<Verifier> = OnceLock::new();
    V.get_or_init(|| Verifier::new(series_with("P_P_series", 10, 1)))
}

fn failing(v: &Verifier, order: i64) -> BTreeSet<String> {
    v.run_all(order, true).unwrap().into_iter().filter(|r| !r.passed()).map(|r| r.id).collect()
}

#[test]
fn catalog_lists_every_check_in_order() {
    let ids: Vec<&str> = catalog().iter().map(|c| c.0).collect();
    assert_eq!(ids, IDS);
    assert!(catalog().iter().all(|c| !c.1.is_empty()));
}

#[test]
fn unknown_ids_and_bad_orders_are_errors() {
    assert!(matches!(run_check("nonexistent", 10), Err(VerifyError::UnknownCheck { .. })));
    match run_check("R5", 10) {
        Err(VerifyError::UnknownCheck { near, .. }) => assert!(near.iter().any(|n| n.starts_with('R'))),
        other => panic!("expected an unknown-check error, got {other:?}"),
    }
    assert_eq!(run_check("R1", 0), Err(VerifyError::InvalidOrder(0)));
    assert!(run_check("r4", 6).unwrap().passed(), "ids are case-insensitive");
}

#[test]
fn everything_passes_at_low_order() {
    let reports = Verifier::default().run_all(5, true).unwrap();
    assert_eq!(reports.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), IDS);
    for r in &reports {
        assert!(r.passed(), "{r}");
        assert!(r.witness.is_none());
        if r.exact {
            assert_eq!(r.order_checked, 0, "{r}");
        } else {
            assert!((1..=5).contains(&r.order_checked), "{r}");
        }
    }
    let exact: Vec<&str> = reports.iter().filter(|r| r.exact).map(|r| r.id.as_str()).collect();
    assert_eq!(exact, ["O1", "O7", "M1", "M3", "M4", "M8", "E1"]);
}

#[test]
fn named_examples() {
    let r1 = run_check("R1", 40).unwrap();
    assert!(r1.passed() && r1.order_checked == 40, "{r1}");
    let m4 = run_check("M4", 1).unwrap();
    assert!(m4.passed() && m4.exact, "{m4}");
    let e1 = run_check("E1", 1).unwrap();
    assert!(e1.notes.iter().any(|n| n.contains("-1 times")), "{e1}");
}

#[test]
fn fitted_constants_are_recorded() {
    let v = Verifier::default();
    let o6 = v.run_check("O6", 12).unwrap();
    assert!(o6.passed(), "{o6}");
    assert!(o6.notes.iter().any(|n| n.contains("= 80 x^-1")), "{o6}");
    let o8 = v.run_check("O8", 12).unwrap();
    assert!(o8.passed(), "{o8}");
    assert!(o8.notes.iter().any(|n| n.contains("-11, -10, 90")), "{o8}");
}

#[test]
fn reports_are_deterministic() {
    let v = Verifier::default();
    let serial = v.run_all(8, false).unwrap();
    let parallel = Verifier::default().run_all(8, true).unwrap();
    assert_eq!(serial, parallel);
    assert_eq!(serial, v.run_all(8, true).unwrap());
    let faulty = corrupted_pp();
    assert_eq!(faulty.run_check("R2", 14).unwrap(), faulty.run_check("R2", 14).unwrap());
}

#[test]
fn machine_records() {
    let r = run_check("O5", 20).unwrap();
    let line = r.to_json();
    assert!(!line.contains('\n'));
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["id"], "O5");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["order_checked"], 20);
    assert!(v.get("witness").is_none());

    let bad = corrupted_pp().run_check("R2", 14).unwrap();
    let v: serde_json::Value = serde_json::from_str(&bad.to_json()).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["witness"]["exponent"], 10);
}

#[test]
fn corrupted_punctured_series_fails_exactly_its_dependents() {
    let v = corrupted_pp();
    let expect: BTreeSet<String> = ["R2", "R3", "R4", "S2"].map(String::from).into();
    assert_eq!(failing(v, 14), expect);
    for id in &expect {
        let r = v.run_check(id, 14).unwrap();
        assert_eq!(r.status, CheckStatus::Fail);
        let w = r.witness.as_ref().expect("a failing report carries a witness");
        assert_eq!(w.exponent, Some(10), "{r}");
    }
    let s2 = v.run_check("S2", 14).unwrap().witness.unwrap();
    assert_eq!((s2.expected.as_str(), s2.got.as_str()), ("95", "94"));
    // below the corrupted coefficient nothing can see it
    assert!(failing(v, 10).is_empty());
}

#[test]
fn corrupted_curve_data_fails_its_checks_only() {
    let v = Verifier::new(series_with("Y_of_X", 8, -1));
    assert_eq!(failing(&v, 12), BTreeSet::from(["F1".to_string()]));

    let set = FixtureSet::embedded();
    let Payload::Curve(mut curve) = set.get("modular_curve").unwrap().payload.clone() else { panic!() };
    let (_, c) = curve.terms.iter_mut().next().unwrap();
    *c += BigInt::from(1);
    let v = Verifier::new(set.with_override("modular_curve", Payload::Curve(curve)).unwrap());
    assert_eq!(failing(&v, 6), BTreeSet::from(["M1".to_string()]));
    let m1 = v.run_check("M1", 6).unwrap();
    assert!(m1.witness.is_some() && m1.exact);
}

#[test]
fn corrupted_operator_is_caught() {
    let set = FixtureSet::embedded();
    let Payload::Operator(mut terms) = set.get("N1").unwrap().payload.clone() else { panic!() };
    terms[0].1.num[0] += BigInt::from(1);
    let v = Verifier::new(set.with_override("N1", Payload::Operator(terms)).unwrap());
    let r = v.run_check("O1", 1).unwrap();
    assert_eq!(r.status, CheckStatus::Fail, "{r}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // with a fault at x^10, every check that passes at N passes below N
    #[test]
    fn order_monotonicity(idx in 0usize..8, hi in 2i64..16, lo_frac in 0.0f64..1.0) {
        let id = ["R1", "R2", "R3", "R4", "S2", "O3", "M2", "H2"][idx];
        let lo = 1 + ((hi - 1) as f64 * lo_frac) as i64;
        let v = corrupted_pp();
        if v.run_check(id, hi).unwrap().passed() {
            let r = v.run_check(id, lo).unwrap();
            prop_assert!(r.passed(), "{} passes at {} but not at {}: {}", id, hi, lo, r);
        }
    }
}
