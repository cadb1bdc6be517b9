use proptest::prelude::*;
use rookpart::enumeration::all_rook_partitions;
use rookpart::{AlgebraElementZ, DeltaPolyQ, DeltaPolyZ};

fn poly() -> impl Strategy<Value = DeltaPolyZ> {
    proptest::collection::vec(-4i64..=4, 0..4).prop_map(DeltaPolyZ::from_coeffs)
}

fn element(n: usize) -> impl Strategy<Value = AlgebraElementZ> {
    let basis = all_rook_partitions(n);
    let size = basis.len();
    proptest::collection::vec((0..size, poly()), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(AlgebraElementZ::zero(n), |acc, (i, p)| {
            acc.add(&AlgebraElementZ::term(p, basis[i].clone())).unwrap()
        })
    })
}

fn three(n: usize) -> impl Strategy<Value = (AlgebraElementZ, AlgebraElementZ, AlgebraElementZ)> {
    (element(n), element(n), element(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, DeltaPolyZ::zero());
        prop_assert_eq!(&a * &DeltaPolyZ::one(), a.clone());
        prop_assert_eq!(a.to_string().parse::<DeltaPolyZ>().unwrap(), a.clone());
        prop_assert_eq!((&a * &b).eval(&3), a.eval(&3) * b.eval(&3));
    }

    #[test]
    fn rational_coefficients_embed(a in poly(), b in poly()) {
        let lift = |p: &DeltaPolyZ| -> DeltaPolyQ { p.map(|&c| num_rational::Rational64::from_integer(c)) };
        prop_assert_eq!(lift(&(&a * &b)), &lift(&a) * &lift(&b));
    }

    #[test]
    fn star_is_associative((x, y, z) in (2usize..=3).prop_flat_map(three)) {
        let left = x.star(&y).unwrap().star(&z).unwrap();
        let right = x.star(&y.star(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_distributes_and_has_identity((x, y, z) in (2usize..=3).prop_flat_map(three)) {
        let n = x.degree();
        let lhs = x.star(&y.add(&z).unwrap()).unwrap();
        let rhs = x.star(&y).unwrap().add(&x.star(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = x.add(&y).unwrap().star(&z).unwrap();
        let rhs = x.star(&z).unwrap().add(&y.star(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(AlgebraElementZ::identity(n).star(&x).unwrap(), x.clone());
        prop_assert_eq!(x.star(&AlgebraElementZ::identity(n)).unwrap(), x.clone());
    }

    /// At d = 1 the twisted product is the plain semigroup-algebra product.
    #[test]
    fn delta_one_collapses_the_twist((x, y) in (2usize..=3).prop_flat_map(|n| (element(n), element(n)))) {
        let twisted = x.star(&y).unwrap().eval_delta(&1);
        let mut plain = std::collections::BTreeMap::new();
        for (a, p) in x.eval_delta(&1) {
            for (b, q) in &y.eval_delta(&1) {
                *plain.entry(a.product(b)).or_insert(0) += p * q;
            }
        }
        plain.retain(|_, c| *c != 0);
        prop_assert_eq!(twisted, plain);
    }

    #[test]
    fn literal_round_trip(x in (1usize..=3).prop_flat_map(element)) {
        let back = AlgebraElementZ::parse(&x.to_string(), Some(x.degree())).unwrap();
        prop_assert_eq!(back, x);
    }
}
