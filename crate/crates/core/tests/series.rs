use stairgf::exactnum::{int, rat, Polynomial, RatFunc};
use stairgf::series::{bivar_newton_solve, LaurentSeries, LogSeries, SeriesError};

fn ser(val: i64, cs: &[i64], trunc: i64) -> LaurentSeries {
    LaurentSeries::from_integers(val, cs, trunc)
}

fn catalan_gf(n: i64) -> LaurentSeries {
    let root = ser(0, &[1, -4], n).pow(&rat(1, 2)).unwrap();
    (&ser(0, &[1, -2], n) - &root).scale(&rat(1, 2))
}

#[test]
fn staircase_closed_form_is_catalan() {
    let s = catalan_gf(12);
    let want = [0, 0, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (k, w) in want.iter().enumerate() {
        assert_eq!(s.coeff(k as i64), int(*w), "x^{k}");
    }
}

#[test]
fn square_of_square_root() {
    let s = ser(0, &[1, -4], 30).pow(&rat(1, 2)).unwrap();
    assert_eq!(&s * &s, ser(0, &[1, -4], 30));
    assert_eq!(s.coeffs()[..5].to_vec(), [1, -2, -2, -4, -10].map(int).to_vec());
}

#[test]
fn geometric_series() {
    let g = ser(0, &[1, -1], 20).inv().unwrap();
    assert!(g.coeffs().iter().all(|c| *c == int(1)));
    assert_eq!(g.trunc(), 20);
    let err = LaurentSeries::zero(7).inv().unwrap_err();
    assert_eq!(err, SeriesError::DivisionByZero { trunc: 7 });
}

#[test]
fn truncation_is_pessimistic() {
    let a = ser(-2, &[1, 3], 5);
    let b = ser(1, &[2], 4);
    let p = &a * &b;
    assert_eq!(p.valuation(), Some(-1));
    assert_eq!(p.trunc(), 2);
    let q = ser(0, &[1, 1], 10).div(&ser(2, &[1, 1], 10)).unwrap();
    assert_eq!(q.valuation(), Some(-2));
    assert_eq!(q.trunc(), 6);
}

#[test]
fn compose_examples() {
    let geo = ser(0, &[1, -1], 15).inv().unwrap();
    assert_eq!(geo.compose(&LaurentSeries::x(15)).unwrap(), geo);
    let inner = ser(1, &[1, 1, 0, 3], 15);
    assert_eq!(LaurentSeries::x(20).compose(&inner).unwrap(), inner);
    assert!(matches!(geo.compose(&ser(0, &[1, 1], 10)), Err(SeriesError::NonzeroConstant)));
    assert!(matches!(ser(-1, &[1], 5).compose(&LaurentSeries::x(5)), Err(SeriesError::NegativeOuterValuation { .. })));
}

#[test]
fn pow_examples_and_errors() {
    assert_eq!(ser(2, &[1], 10).pow(&rat(1, 2)).unwrap(), ser(1, &[1], 9));
    assert!(matches!(ser(0, &[-1, 1], 5).pow(&rat(1, 2)), Err(SeriesError::NonPositiveBase { .. })));
    assert!(matches!(ser(1, &[1, 1], 5).pow(&rat(1, 2)), Err(SeriesError::FractionalValuation { .. })));
    assert!(matches!(ser(0, &[2, 1], 5).pow(&rat(1, 2)), Err(SeriesError::IrrationalRoot { .. })));
    let q = ser(0, &[16, 3, 7], 12).pow(&rat(1, 4)).unwrap();
    assert_eq!(q.coeff(0), int(2));
    assert_eq!(q.pow_int(4).unwrap(), ser(0, &[16, 3, 7], 12));
}

#[test]
fn integrate_examples() {
    assert_eq!(ser(0, &[1, -4], 10).integrate().unwrap(), ser(1, &[1, -2], 11));
    assert_eq!(ser(-2, &[1], 10).integrate().unwrap(), ser(-1, &[-1], 11));
    let e = ser(-1, &[1], 10).integrate().unwrap_err();
    assert_eq!(e, SeriesError::LogarithmicObstruction { residue: Box::new(int(1)) });
}

#[test]
fn ratfunc_expansion_with_pole() {
    let r = RatFunc::new(Polynomial::from_i64(&[1]), Polynomial::from_i64(&[0, 0, 1, -1])).unwrap();
    let s = LaurentSeries::from_ratfunc(&r, 6).unwrap();
    assert_eq!(s, ser(-2, &[1, 1, 1, 1, 1, 1, 1, 1], 6));
}

#[test]
fn print_formats() {
    let s = ser(8, &[1, 12, 94, 604], 12);
    assert_eq!(s.to_string(), "x^8 + 12*x^9 + 94*x^10 + 604*x^11 + O(x^12)");
    let t = LaurentSeries::new(1, vec![int(1), int(0), int(-5), int(0), rat(-95, 2)], 7);
    assert_eq!(t.to_string(), "x - 5*x^3 - 95/2*x^5 + O(x^7)");
    assert_eq!(ser(0, &[-1, 1], 2).to_string(), "-1 + x + O(x^2)");
    let rec = t.record();
    assert_eq!(
        serde_json::to_string(&rec).unwrap(),
        r#"{"valuation":1,"trunc":7,"coeffs":["1","0","-5","0","-95/2","0"]}"#
    );
    assert_eq!(LaurentSeries::from_record(&rec).unwrap(), t);
}

#[test]
fn log_series_derivative() {
    // D(log x) = 1/x
    let l = LogSeries::new(vec![LaurentSeries::zero(10), LaurentSeries::one(10)]);
    let d = l.derivative();
    assert_eq!(d.log_degree(), Some(0));
    assert_eq!(d.part(0), ser(-1, &[1], 9));
}

#[test]
fn bivariate_staircase_equation() {
    let p = bivar_newton_solve(15).unwrap();
    assert_eq!(p.coeff(1, 1), int(1));
    assert_eq!(p.coeff(2, 1), int(1));
    assert_eq!(p.coeff(1, 0), int(0));
    assert!(p.staircase_residual().is_zero());
    assert_eq!(p.diagonal(), catalan_gf(15));
}
