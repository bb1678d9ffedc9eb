use proptest::prelude::*;
use stairgf::diffop::{check_intertwiner, DiffOp, OpError};
use stairgf::exactnum::{int, rat, Polynomial, RatFunc};
use stairgf::series::{LaurentSeries, LogSeries};

fn p(cs: &[i64]) -> Polynomial {
    Polynomial::from_i64(cs)
}

fn rf(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(p(num), p(den)).unwrap()
}

/// `D + 4/(1-4x)`
fn n1() -> DiffOp<RatFunc> {
    DiffOp::new(vec![rf(&[4], &[1, -4]), RatFunc::one()])
}

fn x_d2_plus_d() -> DiffOp<RatFunc> {
    DiffOp::new(vec![RatFunc::zero(), RatFunc::one(), RatFunc::x()])
}

#[test]
fn n1_kills_its_solution() {
    let f = LaurentSeries::from_integers(0, &[1, -4], 20);
    assert!(n1().apply(&f).unwrap().is_zero());
}

#[test]
fn derivative_of_square() {
    let d = DiffOp::dx(&RatFunc::one());
    let out = d.apply(&LaurentSeries::monomial(int(1), 2, 10)).unwrap();
    assert_eq!(out, LaurentSeries::monomial(int(2), 1, 9));
}

#[test]
fn apply_needs_enough_terms() {
    let e = x_d2_plus_d().apply(&LaurentSeries::from_integers(0, &[1, 1], 2)).unwrap_err();
    assert!(matches!(e, OpError::InsufficientPrecision { required: 3, available: 2 }));
}

#[test]
fn leibniz_rule() {
    let one = RatFunc::one();
    let d = DiffOp::dx(&one);
    let x = DiffOp::multiplication(RatFunc::x());
    let want = DiffOp::new(vec![RatFunc::one(), RatFunc::x()]);
    assert_eq!(d.mul(&x).unwrap(), want);
    assert_eq!(n1().mul(&DiffOp::identity(&one)).unwrap(), n1());
    let id = DiffOp::identity(&one);
    assert!(!check_intertwiner(&d, &x, &x, &d).unwrap());
    assert!(check_intertwiner(&d, &id, &id, &d).unwrap());
}

#[test]
fn normalized_form_ignores_rational_factor() {
    let scaled = DiffOp::new(n1().coeffs().iter().map(|c| c * &rf(&[3, 1], &[7, 0, 2])).collect());
    assert_eq!(scaled.normalized(), n1().normalized());
    let top = n1().normalized().coeffs()[1].clone();
    assert_eq!(top, rf(&[-1, 4], &[1]));
}

#[test]
fn indicial_examples() {
    let n = n1().indicial_exponents(&rat(1, 4)).unwrap();
    assert_eq!(n.exponents, vec![int(1)]);
    let z = x_d2_plus_d().indicial_exponents(&int(0)).unwrap();
    assert_eq!(z.exponents, vec![int(0), int(0)]);
    assert_eq!(z.multiplicities(), vec![(int(0), 2)]);
    // x^2 D + 1 has an essential singularity at 0
    let irr = DiffOp::new(vec![RatFunc::one(), rf(&[0, 0, 1], &[1])]);
    assert!(matches!(irr.indicial_exponents(&int(0)), Err(OpError::IrregularSingularity { .. })));
    // x^2 D^2 - 2: exponents 2 and -1
    let e = DiffOp::new(vec![rf(&[-2], &[1]), RatFunc::zero(), rf(&[0, 0, 1], &[1])]);
    assert_eq!(e.indicial_exponents(&int(0)).unwrap().exponents, vec![int(-1), int(2)]);
    // x^2 D^2 - 2 at infinity: same Euler operator
    assert_eq!(e.indicial_at_infinity().unwrap().exponents, vec![int(-2), int(1)]);
}

#[test]
fn irrational_exponents_are_kept_as_a_factor() {
    // x^2 D^2 + x D - 2: rho^2 = 2
    let e = DiffOp::new(vec![rf(&[-2], &[1]), RatFunc::x(), rf(&[0, 0, 1], &[1])]);
    let data = e.indicial_exponents(&int(0)).unwrap();
    assert!(data.exponents.is_empty());
    assert_eq!(data.residual, Some(p(&[-2, 0, 1])));
    assert!(matches!(e.frobenius_basis(5), Err(OpError::NonIntegerExponents { .. })));
}

#[test]
fn frobenius_of_log_operator() {
    let basis = x_d2_plus_d().frobenius_basis(8).unwrap();
    assert_eq!(basis.len(), 2);
    assert_eq!(basis[0].log_degree(), 0);
    assert_eq!(basis[1].log_degree(), 1);
    assert_eq!(basis[0].top().truncate(8), LaurentSeries::one(8));
    assert_eq!(basis[1].top().truncate(8), LaurentSeries::one(8));
    for s in &basis {
        assert!(x_d2_plus_d().apply_log(&s.solution).unwrap().is_zero());
    }
}

#[test]
fn frobenius_basis_of_product() {
    // (D + 4/(1-4x)) (x D^2 + D): order 3, exponents 0,0,1 at the origin
    let op = n1().mul(&x_d2_plus_d()).unwrap();
    let basis = op.frobenius_basis(12).unwrap();
    assert_eq!(basis.len(), 3);
    for s in &basis {
        let img = op.apply_log(&s.solution).unwrap();
        assert!(img.is_zero(), "{img}");
        assert_eq!(s.top().leading(), Some(&int(1)));
    }
    let keys: Vec<(i64, usize)> = basis.iter().map(|s| (s.exponent, s.log_degree())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn log_series_through_operator() {
    // x D^2 + D kills log x
    let l = LogSeries::new(vec![LaurentSeries::zero(10), LaurentSeries::one(10)]);
    assert!(x_d2_plus_d().apply_log(&l).unwrap().is_zero());
}

fn small_op() -> impl Strategy<Value = DiffOp<RatFunc>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 1..4), prop::sample::select(vec![1i64, 2, -3])), 1..4)
        .prop_map(|parts| DiffOp::new(parts.into_iter().map(|(num, c)| rf(&num, &[1, c])).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_acts_as_composition(l in small_op(), m in small_op(), cs in prop::collection::vec(-5i64..=5, 12)) {
        let f = LaurentSeries::from_integers(0, &cs, 12);
        let lm = l.mul(&m).unwrap();
        let direct = lm.apply(&f).unwrap();
        let nested = l.apply(&m.apply(&f).unwrap()).unwrap();
        let n = direct.trunc().min(nested.trunc());
        prop_assert_eq!(direct.truncate(n), nested.truncate(n));
    }
}
