use proptest::prelude::*;
use stairgf::exactnum::{int, rat};
use stairgf::series::LaurentSeries;

fn unit_series(trunc: i64) -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(-5i64..=5, (trunc as usize) - 1).prop_map(move |tail| {
        let mut cs = vec![1];
        cs.extend(tail);
        LaurentSeries::from_integers(0, &cs, trunc)
    })
}

fn inner_series(trunc: i64) -> impl Strategy<Value = LaurentSeries> {
    (prop::sample::select(vec![-2i64, -1, 1, 3]), prop::collection::vec(-3i64..=3, (trunc as usize) - 2)).prop_map(
        move |(lead, tail)| {
            let mut cs = vec![lead];
            cs.extend(tail);
            LaurentSeries::from_integers(1, &cs, trunc)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pow_round_trip(f in unit_series(16), a in 2i64..=4) {
        // rational roots of the leading 1 always exist
        let g = f.pow(&rat(1, a)).unwrap();
        prop_assert_eq!(g.pow(&rat(a, 1)).unwrap(), f);
    }

    #[test]
    fn derivative_undoes_integral(cs in prop::collection::vec(-9i64..=9, 1..20), v in 0i64..4) {
        let f = LaurentSeries::from_integers(v, &cs, v + cs.len() as i64);
        prop_assert_eq!(f.integrate().unwrap().derivative(), f);
    }

    #[test]
    fn compose_is_associative(f in unit_series(12), g in inner_series(12), h in inner_series(12)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        let n = left.trunc().min(right.trunc());
        prop_assert_eq!(left.truncate(n), right.truncate(n));
    }

    #[test]
    fn inverse_times_self_is_one(f in unit_series(20)) {
        let p = &f * &f.inv().unwrap();
        prop_assert_eq!(p, LaurentSeries::one(20));
        prop_assert_eq!(f.coeff(0), int(1));
    }
}
