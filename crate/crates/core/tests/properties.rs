use graphprod_core::ranks::{a_fp_peel, b_from_gocha};
use graphprod_core::{
    assemble_presentation, dual_family, gocha_series, poincare_series, verify_identities, FamilySpec, Graph,
    RankTable, ResourceCap, Scalar, VertexGroup,
};
use proptest::prelude::*;

fn vertex() -> impl Strategy<Value = VertexGroup> {
    prop_oneof![
        (1usize..=2).prop_map(|rank| VertexGroup::Free { rank }),
        (1usize..=2).prop_map(|genus| VertexGroup::Surface { genus }),
    ]
}

fn spec(max_k: usize, n: usize) -> impl Strategy<Value = FamilySpec> {
    (1..=max_k)
        .prop_flat_map(|k| {
            let pairs = k * (k - 1) / 2;
            (
                proptest::collection::vec(vertex(), k),
                proptest::collection::vec(any::<bool>(), pairs),
                prop::sample::select(vec![2u32, 3, 5]),
            )
        })
        .prop_map(move |(groups, mask, p)| {
            let k = groups.len();
            let mut edges = Vec::new();
            let mut bits = mask.into_iter();
            for u in 1..=k {
                for v in u + 1..=k {
                    if bits.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            FamilySpec::new(p, Graph::new(k, &edges).unwrap(), groups, n).unwrap()
        })
}

fn ints(s: &graphprod_core::Series) -> Vec<u64> {
    s.coefficients()
        .iter()
        .map(|c| u64::try_from(Scalar::to_integer(c).unwrap()).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_matches_clique_formula(spec in spec(3, 4)) {
        let dims = assemble_presentation(&spec).unwrap().graded_dimensions(4, &ResourceCap::default()).unwrap();
        prop_assert_eq!(dims.dims, ints(&gocha_series(&spec).unwrap()));
    }

    #[test]
    fn dual_family_presents_cohomology(spec in spec(3, 5)) {
        let dims = dual_family(&spec).unwrap().graded_dimensions(5, &ResourceCap::default()).unwrap();
        prop_assert_eq!(dims.dims, ints(&poincare_series(&spec).unwrap()));
    }

    #[test]
    fn koszul_numerics_hold(spec in spec(3, 4)) {
        let report = assemble_presentation(&spec).unwrap().koszulity_test(4, &ResourceCap::default()).unwrap();
        prop_assert!(report.passed, "first failure {:?}", report.first_failure);
    }

    #[test]
    fn identities_hold_and_routes_agree(spec in spec(5, 14)) {
        let g = gocha_series(&spec).unwrap();
        let table = RankTable::from_gocha(&g, spec.p()).unwrap();
        prop_assert!(verify_identities(&table).all_passed());
        prop_assert!(b_from_gocha(&g).is_ok());
        prop_assert_eq!(a_fp_peel(&g, spec.p()).unwrap(), table.a_fp);
    }
}
