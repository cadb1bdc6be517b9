use proptest::prelude::*;
use rookpart::{RookPartition, Vertex};

/// Random rook partitions: each vertex draws a block tag, tag `2n` marks a rook dot.
fn rook_partition(n: usize) -> impl Strategy<Value = RookPartition> {
    proptest::collection::vec(0..=2 * n, 2 * n).prop_map(move |tags| {
        let mut blocks: Vec<Vec<Vertex>> = vec![Vec::new(); 2 * n];
        for (idx, &tag) in tags.iter().enumerate() {
            if tag < 2 * n {
                let v = if idx < n {
                    Vertex::Upper(idx + 1)
                } else {
                    Vertex::Lower(idx - n + 1)
                };
                blocks[tag].push(v);
            }
        }
        RookPartition::from_blocks(n, blocks.into_iter().filter(|b| !b.is_empty())).unwrap()
    })
}

fn triple(n: usize) -> impl Strategy<Value = (RookPartition, RookPartition, RookPartition)> {
    (rook_partition(n), rook_partition(n), rook_partition(n))
}

fn upper_support(d: &RookPartition) -> Vec<usize> {
    let rooks = d.rook_points(true);
    (1..=d.degree()).filter(|i| !rooks.contains(i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn literal_round_trip(a in (1usize..=6).prop_flat_map(rook_partition)) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<RookPartition>().unwrap(), a);
    }

    #[test]
    fn product_is_associative_and_twists_form_a_cocycle((a, b, c) in (1usize..=5).prop_flat_map(triple)) {
        let (ab, m_ab) = a.compose(&b).unwrap();
        let (bc, m_bc) = b.compose(&c).unwrap();
        let (left, m_ab_c) = ab.compose(&c).unwrap();
        let (right, m_a_bc) = a.compose(&bc).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(m_ab + m_ab_c, m_a_bc + m_bc);
    }

    #[test]
    fn identity_is_neutral_and_the_empty_diagram_clears_a_row(a in (0usize..=6).prop_flat_map(rook_partition)) {
        let n = a.degree();
        let id = RookPartition::identity(n);
        prop_assert_eq!(id.compose(&a).unwrap(), (a.clone(), 0));
        prop_assert_eq!(a.compose(&id).unwrap(), (a.clone(), 0));
        let zero = RookPartition::empty(n);
        let az = a.product(&zero);
        prop_assert_eq!(az.rank(), 0);
        prop_assert_eq!(az.rook_points(false).len(), n);
        prop_assert_eq!(zero.product(&a).rook_points(true).len(), n);
    }

    #[test]
    fn regular_star_identities((a, b) in (1usize..=6).prop_flat_map(|n| (rook_partition(n), rook_partition(n)))) {
        let star = a.involute();
        prop_assert_eq!(star.involute(), a.clone());
        prop_assert_eq!(a.product(&b).involute(), b.involute().product(&star));
        prop_assert_eq!(a.product(&star).product(&a), a.clone());
        let s = a.stats();
        let t = star.stats();
        prop_assert_eq!((s.dom, s.ker, s.rank), (t.codom, t.coker, t.rank));
    }

    /// Kernel containment holds on the points that stay in the support of the product.
    #[test]
    fn kernel_survives_on_the_product_support((a, b) in (1usize..=6).prop_flat_map(|n| (rook_partition(n), rook_partition(n)))) {
        let ab = a.product(&b);
        let keep = upper_support(&ab);
        let (ka, kab) = (a.stats().ker, ab.stats().ker);
        let class = |k: &rookpart::Equivalence, x: usize| k.0.iter().position(|c| c.contains(&x));
        for &x in &keep {
            for &y in &keep {
                if class(&ka, x) == class(&ka, y) {
                    prop_assert_eq!(class(&kab, x), class(&kab, y));
                }
            }
        }
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        let (da, dab) = (a.stats().dom, ab.stats().dom);
        prop_assert!(dab.iter().all(|x| da.contains(x)));
    }

    #[test]
    fn classification_is_consistent(a in (1usize..=6).prop_flat_map(rook_partition)) {
        let m = a.classify();
        prop_assert_eq!(m.symmetric, a.rank() == a.degree());
        prop_assert_eq!(m.singular, !m.symmetric);
        prop_assert_eq!(m.partition, a.rook_dots().is_empty());
        prop_assert_eq!(m.symmetric, a.as_permutation().is_some());
        if m.symmetric {
            prop_assert!(m.partition && m.symmetric_inverse && m.dual_symmetric_inverse && m.rook);
        }
    }
}

#[test]
fn kernel_containment_breaks_when_a_block_is_absorbed() {
    let a: RookPartition = "n=2; 1,2,1'; 2'".parse().unwrap();
    let b: RookPartition = "n=2; 2,2'".parse().unwrap();
    let ab = a.product(&b);
    assert_eq!(ab.to_string(), "n=2; 2'");
    assert!(!a.stats().ker.refines(&ab.stats().ker));
}
