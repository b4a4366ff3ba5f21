use antimagic_core::export::{export_json, import_json};
use antimagic_core::graph::vertex_sums;
use antimagic_core::{verify_antimagic, CaterpillarSpec, Direction, LabeledOrientation, Violation};
use proptest::prelude::*;

fn labeled() -> impl Strategy<Value = (CaterpillarSpec, LabeledOrientation)> {
    (2usize..=12, 1usize..=6, 0usize..=6)
        .prop_flat_map(|(p, k, s)| {
            proptest::collection::vec(1..p, s)
                .prop_map(move |legs| CaterpillarSpec::new(p, k, legs).unwrap())
        })
        .prop_flat_map(|spec| {
            let m = spec.edge_count();
            let labels = Just((1..=m as u32).collect::<Vec<_>>()).prop_shuffle();
            let dirs = proptest::collection::vec(
                prop_oneof![Just(Direction::Forward), Just(Direction::Backward)],
                m,
            );
            (Just(spec), dirs, labels)
        })
        .prop_map(|(spec, dirs, labels)| (spec, LabeledOrientation::new(dirs, labels)))
}

fn quadratic_duplicate(sums: &[i64]) -> bool {
    (0..sums.len()).any(|i| (i + 1..sums.len()).any(|j| sums[i] == sums[j]))
}

proptest! {
    #[test]
    fn sums_total_zero((spec, lo) in labeled()) {
        prop_assert_eq!(vertex_sums(&spec, &lo).unwrap().iter().sum::<i64>(), 0);
    }

    #[test]
    fn reversal_negates_sums((spec, lo) in labeled()) {
        let fwd = vertex_sums(&spec, &lo).unwrap();
        let back = vertex_sums(&spec, &lo.reversed()).unwrap();
        prop_assert!(fwd.iter().zip(&back).all(|(a, b)| *a == -b));
        prop_assert_eq!(verify_antimagic(&spec, &lo).is_ok(), verify_antimagic(&spec, &lo.reversed()).is_ok());
    }

    #[test]
    fn verifier_matches_pairwise_scan((spec, lo) in labeled()) {
        let sums = vertex_sums(&spec, &lo).unwrap();
        match verify_antimagic(&spec, &lo) {
            Ok(()) => prop_assert!(!quadratic_duplicate(&sums)),
            Err(Violation::DuplicateSum { u, v, sum }) => {
                prop_assert!(quadratic_duplicate(&sums));
                prop_assert_ne!(u, v);
                prop_assert_eq!(sums[spec.vertex_index(u).unwrap()], sum);
                prop_assert_eq!(sums[spec.vertex_index(v).unwrap()], sum);
            }
            Err(other) => prop_assert!(false, "bijective labeling reported {}", other),
        }
    }

    #[test]
    fn json_round_trip((spec, lo) in labeled()) {
        let text = export_json(&spec, &lo);
        let (spec2, lo2) = import_json(&text).unwrap();
        prop_assert_eq!(spec2, spec);
        prop_assert_eq!(lo2, lo);
    }

    #[test]
    fn index_maps_are_inverse(p in 2usize..=15, k in 1usize..=8, legs in proptest::collection::vec(1usize..=14, 0..6)) {
        let legs: Vec<usize> = legs.into_iter().map(|h| 1 + (h - 1) % (p - 1)).collect();
        let spec = CaterpillarSpec::new(p, k, legs).unwrap();
        prop_assert_eq!(spec.vertices().count(), spec.vertex_count());
        for (i, v) in spec.vertices().enumerate() {
            prop_assert_eq!(spec.vertex_index(v).ok(), Some(i));
        }
        for (i, e) in spec.edges().enumerate() {
            prop_assert_eq!(spec.edge_index(e), Some(i));
        }
    }
}

#[test]
fn bad_labels_are_not_bijections() {
    let spec = CaterpillarSpec::new(2, 2, vec![1]).unwrap();
    let lo = LabeledOrientation::new(vec![Direction::Forward; 4], vec![0, 2, 3, 3]);
    match verify_antimagic(&spec, &lo) {
        Err(Violation::NotBijection {
            missing,
            duplicates,
            out_of_range,
            ..
        }) => {
            assert_eq!(missing, vec![1, 4]);
            assert_eq!(duplicates, vec![3]);
            assert_eq!(out_of_range, vec![0]);
        }
        other => panic!("{other:?}"),
    }
}
