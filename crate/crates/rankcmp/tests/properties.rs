//! Property tests for the core contracts.

use std::collections::BTreeSet;

use proptest::prelude::*;

use rankcmp::evaluation::{perturb_merge, perturb_swap, perturb_truncate};
use rankcmp::measures::precision;
use rankcmp::ranking::{
    extension_count, homogenize, max_similarity, to_pairs, total_extensions, Item, PartialRanking,
    Score, TotalRanking,
};

fn arb_ranking(max_items: usize) -> impl Strategy<Value = PartialRanking> {
    (
        proptest::collection::vec(0usize..max_items, 0..max_items),
        proptest::collection::vec(any::<bool>(), max_items),
    )
        .prop_map(|(picks, merges)| {
            let mut tiers: Vec<BTreeSet<Item>> = Vec::new();
            let mut used = BTreeSet::new();
            for (pick, merge) in picks.into_iter().zip(merges) {
                let id = format!("i{pick:02}");
                if !used.insert(id.clone()) {
                    continue;
                }
                let item = Item::new(id).unwrap();
                if merge && !tiers.is_empty() {
                    tiers.last_mut().unwrap().insert(item);
                } else {
                    tiers.push(BTreeSet::from([item]));
                }
            }
            PartialRanking::new(tiers).unwrap()
        })
}

fn arb_total(max_items: usize) -> impl Strategy<Value = TotalRanking> {
    proptest::collection::vec(0usize..max_items, 2..max_items).prop_filter_map(
        "needs >= 2 distinct items",
        |picks| {
            let mut used = BTreeSet::new();
            let items: Vec<Item> = picks
                .into_iter()
                .filter(|p| used.insert(*p))
                .map(|p| Item::new(format!("i{p:02}")).unwrap())
                .collect();
            if items.len() >= 2 {
                Some(TotalRanking::new(items).unwrap())
            } else {
                None
            }
        },
    )
}

fn pair_precision(a: &TotalRanking, b: &TotalRanking) -> Result<Score, rankcmp::Error> {
    precision(
        to_pairs(&a.to_partial()).pairs(),
        to_pairs(&b.to_partial()).pairs(),
    )
}

proptest! {
    #[test]
    fn to_pairs_size_antisymmetry_transitivity(r in arb_ranking(8)) {
        let pairs = to_pairs(&r);
        // size = sum over tier pairs i < j of |tier_i| * |tier_j|
        let sizes: Vec<usize> = r.tiers().iter().map(BTreeSet::len).collect();
        let expected: usize = sizes
            .iter()
            .enumerate()
            .map(|(i, a)| a * sizes[i + 1..].iter().sum::<usize>())
            .sum();
        prop_assert_eq!(pairs.len(), expected);

        for p in pairs.pairs() {
            prop_assert!(!pairs.contains(&p.reversed()));
        }
        // transitive closure
        for p in pairs.pairs() {
            for q in pairs.pairs() {
                if p.below == q.above {
                    let composed =
                        rankcmp::OrderedPair::new(p.above.clone(), q.below.clone()).unwrap();
                    prop_assert!(pairs.contains(&composed));
                }
            }
        }
    }

    #[test]
    fn extensions_count_and_compatibility(r in arb_ranking(6)) {
        let count = extension_count(&r).unwrap();
        prop_assume!(count <= 720);
        let exts = total_extensions(&r, 720).unwrap();
        prop_assert_eq!(exts.len() as u64, count);
        let base = to_pairs(&r);
        let distinct: BTreeSet<_> = exts.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), exts.len());
        for e in &exts {
            prop_assert_eq!(e.item_set(), r.item_set());
            prop_assert!(to_pairs(&e.to_partial()).is_superset(&base));
        }
    }

    #[test]
    fn max_similarity_dominates_each_extension_pair(
        a in arb_ranking(5),
        b in arb_ranking(5),
    ) {
        let product =
            extension_count(&a).unwrap() as u128 * extension_count(&b).unwrap() as u128;
        prop_assume!(product > 0 && product <= 720);
        let best = max_similarity(&a, &b, pair_precision, 720);
        let exts_a = total_extensions(&a, 720).unwrap();
        let exts_b = total_extensions(&b, 720).unwrap();
        for ea in &exts_a {
            for eb in &exts_b {
                if let Ok(s) = pair_precision(ea, eb) {
                    prop_assert!(best.as_ref().unwrap().value() >= s.value());
                }
            }
        }
    }

    #[test]
    fn homogenize_idempotent_and_order_preserving(
        a in arb_ranking(8),
        b in arb_ranking(8),
    ) {
        let (ha, hb) = homogenize(&a, &b);
        prop_assert_eq!(ha.item_set(), hb.item_set());
        let again = homogenize(&ha, &hb);
        prop_assert_eq!(&again.0, &ha);
        prop_assert_eq!(&again.1, &hb);
        prop_assert!(to_pairs(&a).is_superset(&to_pairs(&ha)));
        prop_assert!(to_pairs(&b).is_superset(&to_pairs(&hb)));
    }

    #[test]
    fn swap_drops_pair_precision_by_one_pair(
        r in arb_total(8),
        idx in any::<prop::sample::Index>(),
    ) {
        let i = idx.index(r.len() - 1);
        let swapped = perturb_swap(&r, i).unwrap();
        let n = r.len();
        let total_pairs = n * (n - 1) / 2;
        let p = precision(
            to_pairs(&swapped.to_partial()).pairs(),
            to_pairs(&r.to_partial()).pairs(),
        )
        .unwrap()
        .value();
        let expected = (total_pairs - 1) as f64 / total_pairs as f64;
        prop_assert!((p - expected).abs() < 1e-12);
    }

    #[test]
    fn truncate_and_merge_preserve_order(r in arb_ranking(8), n in 0usize..10) {
        let truncated = perturb_truncate(&r, n);
        prop_assert!(to_pairs(&r).is_superset(&to_pairs(&truncated)));
        if r.item_count() <= n {
            prop_assert_eq!(&truncated, &r);
        }
        if r.tier_count() >= 2 {
            let merged = perturb_merge(&r, 0).unwrap();
            prop_assert!(to_pairs(&r).is_superset(&to_pairs(&merged)));
            // merging never creates conflicts: a matching extension still exists
            if extension_count(&r).unwrap() as u128
                * extension_count(&merged).unwrap() as u128
                <= 720
            {
                let best = max_similarity(&r, &merged, pair_precision, 720);
                if let Ok(best) = best {
                    prop_assert_eq!(best.value(), 1.0);
                }
            }
        }
    }
}
