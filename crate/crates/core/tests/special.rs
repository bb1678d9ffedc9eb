use stairgf::exactnum::{int, rat};
use stairgf::paperdata::get_fixture;
use stairgf::series::LaurentSeries;
use stairgf::special::{
    build_named, heun_series, hyp_series, nested_integral_pi_trans, Builder, HeunParams, HypParams, Nesting,
    SpecialError,
};

fn fixture(name: &str) -> LaurentSeries {
    get_fixture(name).unwrap().series().unwrap()
}

fn hyp(upper: &[(i64, i64)], lower: &[(i64, i64)], n: i64) -> LaurentSeries {
    let r = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| rat(p, q)).collect();
    hyp_series(&HypParams::new(r(upper), r(lower)).unwrap(), n).unwrap()
}

fn assert_prefix(got: &LaurentSeries, want: &LaurentSeries) {
    assert_eq!(got.first_mismatch(want, None), None, "got {got}");
    assert!(got.trunc() >= want.trunc());
}

#[test]
fn hypergeometric_examples() {
    let f = hyp(&[(1, 3), (2, 3)], &[(1, 1)], 10);
    assert_eq!(f.coeff(1), rat(2, 9));
    assert_eq!(f.compose(&LaurentSeries::zero(10)).unwrap(), LaurentSeries::one(10));
    let e = HypParams::new(vec![int(1)], vec![int(-2)]).unwrap_err();
    assert_eq!(e, SpecialError::InvalidLowerParameter(int(-2)));
    assert!(matches!(hyp_series(&HypParams::new(vec![], vec![]).unwrap(), 0), Err(SpecialError::InvalidOrder(0))));
    // terminating series stop at the zero
    let t = hyp(&[(-2, 1)], &[], 6);
    assert_eq!(t, LaurentSeries::from_integers(0, &[1, -2, 1, 0, 0, 0], 6));
}

#[test]
fn clausen_square() {
    let f = hyp(&[(1, 8), (3, 8)], &[(1, 1)], 30);
    let g = hyp(&[(1, 4), (1, 2), (3, 4)], &[(1, 1), (1, 1)], 30);
    assert_eq!(&f * &f, g);
}

#[test]
fn heun_examples() {
    let p = HeunParams::new(rat(-1, 4), rat(1, 16), rat(3, 8), rat(5, 8), int(1), rat(1, 2)).unwrap();
    let h = heun_series(&p, 10).unwrap();
    assert_eq!(h.coeff(0), int(1));
    assert_eq!(h.coeff(1), rat(-1, 4));
    assert_eq!(p.epsilon(), rat(1, 2));
    assert!(matches!(
        HeunParams::new(int(2), int(0), int(1), int(1), int(-3), int(1)),
        Err(SpecialError::HeunGamma(_))
    ));
}

#[test]
fn heun_series_solves_the_heun_equation() {
    let p = HeunParams::new(rat(3, 2), rat(1, 5), rat(1, 3), rat(2, 7), rat(4, 5), rat(1, 6)).unwrap();
    let h = heun_series(&p, 25).unwrap();
    // z(z-1)(z-a) y'' + [gamma(z-1)(z-a) + delta z(z-a) + eps z(z-1)] y' + (alpha beta z - q) y = 0
    let z = LaurentSeries::x(25);
    let one = LaurentSeries::one(25);
    let a = LaurentSeries::constant(p.a.clone(), 25);
    let zm1 = &z - &one;
    let zma = &z - &a;
    let d1 = h.derivative();
    let d2 = d1.derivative();
    let t2 = z.mul(&zm1).mul(&zma).mul(&d2);
    let poly1 = &(&zm1.mul(&zma).scale(&p.gamma) + &z.mul(&zma).scale(&p.delta)) + &z.mul(&zm1).scale(&p.epsilon());
    let t1 = poly1.mul(&d1);
    let t0 = (&z.scale(&(&p.alpha * &p.beta)) - &LaurentSeries::constant(p.q.clone(), 25)).mul(&h);
    let total = &(&t2 + &t1) + &t0;
    assert!(total.is_zero(), "{total}");
}

#[test]
fn catalog_examples() {
    assert_prefix(&build_named("Sol2_closed", 12).unwrap().series, &fixture("SolN2_series"));
    assert_prefix(&build_named("SolV2_plusU", 20).unwrap().series, &fixture("SolV2_series"));
    assert_prefix(&build_named("P_I", 11).unwrap().series, &fixture("P_I_series"));
    let e = build_named("Sol2_closd", 5).unwrap_err();
    assert!(matches!(&e, SpecialError::UnknownName { near, .. } if near[0] == "Sol2_closed"));
}

#[test]
fn perimeter_series_match_fixtures() {
    let b = Builder::default();
    for (name, fx) in [
        ("P_T", "P_T_series"),
        ("P_I", "P_I_series"),
        ("P_P", "P_P_series"),
        ("P_I_alg", "P_I_alg_series"),
        ("P_I_trans", "P_I_trans_series"),
        ("Sol2_toplog", "Sol2_series"),
        ("Sol3_toplog", "Sol3_series"),
    ] {
        let s = b.build(name, 20).unwrap().series;
        assert_prefix(&s, &fixture(fx));
        assert_eq!(s.trunc(), 20, "{name}");
    }
    let ps = b.build("P_S", 12).unwrap().series;
    assert_eq!(ps, LaurentSeries::from_integers(2, &[1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796], 12));
}

#[test]
fn contiguous_and_heun_forms_agree() {
    let b = Builder::default();
    assert_eq!(b.build("Sol2_closed", 30).unwrap().series, b.build("Sol2_contiguous", 30).unwrap().series);
    assert_eq!(b.build("SolV2_plusU", 30).unwrap().series, b.build("SolV2_heun", 30).unwrap().series);
    assert_eq!(b.build("SolV2_plusU", 30).unwrap().series, b.build("SolV2_minusU", 30).unwrap().series);
    let plus = b.build("SolV2_plusU", 30).unwrap().series;
    assert_eq!((&plus * &plus).scale_int(5).truncate(30), b.build("SolV2_minusU_sq", 30).unwrap().series);
}

#[test]
fn pullbacked_integer_series() {
    let b = Builder::default();
    for (name, fx) in [("F18_plusU", "F18_plusU_series"), ("F18_minusU", "F18_minusU_series")] {
        let s = b.build(name, 40).unwrap().series;
        assert!(s.is_integral(), "{name}");
        assert_prefix(&s, &fixture(fx));
    }
}

#[test]
fn nested_integral_reproduces_transcendental_part() {
    let s = nested_integral_pi_trans(20, Nesting::Reduced).unwrap();
    assert_eq!(s.coeff(0), int(-11));
    assert_eq!(s.coeff(1), int(34));
    assert_eq!(s, build_named("P_I_trans", 20).unwrap().series);
    let printed = nested_integral_pi_trans(10, Nesting::Triple).unwrap();
    assert!(printed.first_mismatch(&fixture("P_I_trans_series"), None).is_some());
}

#[test]
fn sol_n3_leading_term() {
    let s = build_named("SolN3", 10).unwrap().series;
    assert_eq!(s.valuation(), Some(-1));
    assert_eq!(s.coeff(-1), int(80));
}

#[test]
fn cached_orders_are_consistent() {
    let b = Builder::default();
    let long = b.build("P_I", 30).unwrap().series;
    let short = b.build("P_I", 12).unwrap().series;
    assert_eq!(long.truncate(12), short);
    assert_eq!(build_named("P_I", 12).unwrap().series, short);
}
