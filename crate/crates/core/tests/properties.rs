use proptest::prelude::*;
use sunada_core::gassmann::weak_conjugacy;
use sunada_core::graph::{expected_kernel, kernel_multiplicity, twisted_laplacian, VoltageEdge, VoltageGraph};
use sunada_core::monomial::MonomialRep;
use sunada_core::wreath::{isometry_test, IsometryOptions};
use sunada_core::{FiniteGroup, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// A permutation group of degree at most 5 with one or two generators.
fn group() -> impl Strategy<Value = FiniteGroup> {
    (2usize..=5)
        .prop_flat_map(|d| prop::collection::vec(perm(d), 1..=2).prop_map(move |gens| (d, gens)))
        .prop_map(|(d, gens)| FiniteGroup::generate(d, &gens).unwrap())
}

/// A group with two subgroups, each generated by a single element.
fn group_and_pair() -> impl Strategy<Value = (FiniteGroup, usize, usize)> {
    group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugate_subgroups_are_weakly_conjugate((g, a, c) in group_and_pair()) {
        let h = g.subgroup(&[a]);
        let k = g.conjugate_subgroup(&h, c).unwrap();
        let r = weak_conjugacy(&g, &h, &k).unwrap();
        prop_assert!(r.weakly_conjugate && r.conjugate && r.induced_equal);
    }

    #[test]
    fn isometry_verdict_is_conjugacy((g, a, b) in group_and_pair()) {
        let (h1, h2) = (g.subgroup(&[a]), g.subgroup(&[b]));
        prop_assume!(h1.order() == h2.order());
        let v = isometry_test(&g, &h1, &h2, IsometryOptions::default()).unwrap();
        prop_assert_eq!(v.equivalent, g.are_conjugate_subgroups(&h1, &h2).unwrap().is_some());
    }

    #[test]
    fn kernel_counts_invariant_vectors(
        (g, h, voltages) in group_and_pair().prop_flat_map(|(g, a, _)| {
            let n = g.order();
            (Just(g), Just(a), prop::collection::vec((0usize..3, 0usize..3, 0..n), 0..5))
        })
    ) {
        // A spanning path keeps the base graph connected.
        let edges = [(0, 1, 0), (1, 2, 0)]
            .into_iter()
            .chain(voltages)
            .map(|(tail, head, voltage)| VoltageEdge { tail, head, voltage })
            .collect();
        let x = VoltageGraph::new(&g, 3, edges).unwrap();
        let rho = MonomialRep::permutation(&g, &g.subgroup(&[h])).unwrap();
        let op = twisted_laplacian(&x, &g, &rho, 4096).unwrap();
        prop_assert!(op.is_hermitian().unwrap());
        prop_assert_eq!(kernel_multiplicity(&op).unwrap().dimension as u64, expected_kernel(&x, &g, &rho).unwrap());
    }
}
