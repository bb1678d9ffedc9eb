// Structural facts about the embedded operators.
use stairgf::diffop::{check_intertwiner, DiffOp};
use stairgf::exactnum::{int, rat, Polynomial, RatFunc};
use stairgf::paperdata::get_fixture;
use stairgf::series::LaurentSeries;

fn op(name: &str) -> DiffOp<RatFunc> {
    get_fixture(name).unwrap().operator().unwrap()
}

fn ser(name: &str) -> LaurentSeries {
    get_fixture(name).unwrap().series().unwrap()
}

fn modulus() -> Polynomial {
    Polynomial::from_i64(&[1, 0, -12, 0, -64])
}

#[test]
fn products_annihilate_printed_top_log_series() {
    let (n1, n2, n3) = (op("N1"), op("N2"), op("N3"));
    let n21 = n2.mul(&n1).unwrap();
    let img = n21.apply(&ser("Sol2_series")).unwrap();
    assert!(img.is_zero() && img.trunc() > 0, "{img}");
    // applied one factor at a time, as the composition of applications
    let step = n2.apply(&n1.apply(&ser("Sol2_series")).unwrap()).unwrap();
    assert!(step.is_zero());
    let img = DiffOp::product_series(&[&n3, &n2, &n1], 30).unwrap().apply(&ser("Sol3_series")).unwrap();
    assert!(img.is_zero(), "{img}");
}

#[test]
fn n2_annihilates_its_printed_solution() {
    let img = op("N2").apply(&ser("SolN2_series")).unwrap();
    assert!(img.is_zero() && img.trunc() >= 10, "{img}");
}

#[test]
fn indicial_exponents_of_fixtures() {
    let v2 = op("V2").indicial_exponents(&int(0)).unwrap();
    assert_eq!(v2.multiplicities(), vec![(int(1), 2)]);
    // double root at 1/4: square-root divergence with a logarithm
    let n2 = op("N2").indicial_exponents(&rat(1, 4)).unwrap();
    assert_eq!(n2.exponents, vec![rat(-3, 2), rat(-3, 2)]);
    assert_eq!(n2.polynomial, Polynomial::new(vec![rat(9, 4), int(3), int(1)]));
    let n1 = op("N1").indicial_exponents(&rat(1, 4)).unwrap();
    assert_eq!(n1.exponents, vec![int(1)]);
    for name in ["N1", "N2", "N3", "V2"] {
        let o = op(name);
        let data = o.indicial_exponents(&int(0)).unwrap();
        assert_eq!(data.exponents.len(), o.order().unwrap(), "{name}");
    }
}

#[test]
fn frobenius_of_n2n1_has_one_log_solution() {
    let n21 = op("N2").mul(&op("N1")).unwrap();
    let basis = n21.frobenius_basis(12).unwrap();
    assert_eq!(basis.len(), 3);
    let logs: Vec<_> = basis.iter().filter(|s| s.log_degree() == 1).collect();
    assert_eq!(logs.len(), 1);
    assert!(basis.iter().all(|s| s.log_degree() <= 1));
    let sol2 = ser("Sol2_series");
    let top = logs[0].top();
    let scale = top.coeff(0);
    assert_eq!(top.scale(&scale.recip()).truncate(sol2.trunc()), sol2);
    for s in &basis {
        assert!(n21.apply_log(&s.solution).unwrap().is_zero());
    }
}

#[test]
fn frobenius_of_n3n2n1_log_tower() {
    let (n1, n2, n3) = (op("N1"), op("N2"), op("N3"));
    let basis = DiffOp::product_frobenius_basis(&[&n3, &n2, &n1], 16).unwrap();
    assert_eq!(basis.len(), 6);
    let mut tower: Vec<usize> = basis.iter().map(|s| s.log_degree()).collect();
    tower.sort();
    assert_eq!(tower, vec![0, 0, 0, 1, 1, 2]);
    let top = basis.iter().find(|s| s.log_degree() == 2).unwrap().top();
    let top = top.scale(&top.coeff(0).recip());
    let sol3 = ser("Sol3_series");
    assert_eq!(top.first_mismatch(&sol3, Some(8)), None);
    assert_eq!(top.truncate(8), sol3);
    let prod = DiffOp::product_series(&[&n3, &n2, &n1], 40).unwrap();
    for s in &basis {
        assert!(prod.apply_log(&s.solution).unwrap().is_zero());
    }
}

#[test]
fn series_product_matches_exact_product() {
    let (n1, n2) = (op("N1"), op("N2"));
    let exact = n2.mul(&n1).unwrap().to_series(20).unwrap();
    let fast = DiffOp::product_series(&[&n2, &n1], 20).unwrap();
    assert_eq!(fast, exact);
}

#[test]
fn intertwiners_over_quadratic_extension() {
    let d = modulus();
    let q = |n: &str| op(n).to_quadext(&d);
    assert!(check_intertwiner(&q("V2"), &q("A1"), &q("B1"), &q("V2bar")).unwrap());
    assert!(check_intertwiner(&q("C1"), &q("V2"), &q("V2bar"), &q("D1")).unwrap());
    assert!(!check_intertwiner(&q("V2"), &q("A1"), &q("V2bar"), &q("B1")).unwrap());
}

#[test]
fn mixed_moduli_are_rejected() {
    let a = op("N1").to_quadext(&modulus());
    let b = op("N1").to_quadext(&Polynomial::from_i64(&[1, -4]));
    assert!(a.mul(&b).is_err());
}
