//! Query-set aggregation and the synthetic-ranking toolkit used for property
//! tests and sensitivity probes.
//!
//! `mean_over_queries` generalizes MAP-style aggregation to any per-query
//! measure: defined scores are averaged in ascending query-id order, undefined
//! queries are reported separately instead of poisoning the batch.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{undefined, Error, Result};
use crate::ranking::{Item, PartialRanking, Score, TotalRanking};

/// One (system, reference) comparison case.
#[derive(Debug, Clone)]
pub struct QueryCase {
    pub query_id: String,
    pub system: PartialRanking,
    pub reference: PartialRanking,
}

/// An ordered collection of query cases with unique ids.
#[derive(Debug, Clone, Default)]
pub struct QuerySet {
    cases: Vec<QueryCase>,
}

impl QuerySet {
    pub fn new(cases: Vec<QueryCase>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for case in &cases {
            if case.query_id.is_empty() {
                return Err(Error::InvalidOptions("empty query id".into()));
            }
            if !seen.insert(case.query_id.clone()) {
                return Err(Error::InvalidOptions(format!(
                    "duplicate query id {:?}",
                    case.query_id
                )));
            }
        }
        Ok(QuerySet { cases })
    }

    pub fn cases(&self) -> &[QueryCase] {
        &self.cases
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }
}

/// Result of aggregating per-query scores.
#[derive(Debug, Clone)]
pub struct Aggregate {
    pub mean: Score,
    pub defined: usize,
    /// Query ids excluded from the mean because their score was undefined.
    pub undefined: Vec<String>,
}

/// Arithmetic mean of the defined scores, summed in ascending query-id order
/// so the result is bit-reproducible. Undefined queries are listed in the
/// aggregate, not averaged.
pub fn mean_over_queries(per_query: &BTreeMap<String, Option<Score>>) -> Result<Aggregate> {
    if per_query.is_empty() {
        return Err(Error::EmptyQuerySet);
    }
    let mut sum = 0.0;
    let mut defined = 0usize;
    let mut excluded = Vec::new();
    for (query_id, score) in per_query {
        match score {
            Some(s) => {
                sum += s.value();
                defined += 1;
            }
            None => excluded.push(query_id.clone()),
        }
    }
    if defined == 0 {
        return Err(undefined("every query in the set is undefined"));
    }
    Ok(Aggregate {
        mean: Score::new(sum / defined as f64, "mean_over_queries")?,
        defined,
        undefined: excluded,
    })
}

/// Deterministic synthetic ranking: pick `size` items from `pool` and merge
/// each adjacent rank boundary into a tie with probability `tie_probability`.
///
/// The generator is ChaCha8 seeded with `seed`; the pool is visited in sorted
/// id order, shuffled, truncated, then boundaries are drawn top-down. This
/// algorithm is part of the tool's contract: golden files depend on it.
pub fn random_ranking(
    seed: u64,
    pool: &BTreeSet<Item>,
    size: usize,
    tie_probability: f64,
) -> Result<PartialRanking> {
    if size == 0 || size > pool.len() {
        return Err(Error::InvalidSize {
            size,
            pool: pool.len(),
        });
    }
    if !(0.0..=1.0).contains(&tie_probability) {
        return Err(Error::InvalidOptions(format!(
            "tie probability must be in [0,1], got {tie_probability}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items: Vec<Item> = pool.iter().cloned().collect();
    items.shuffle(&mut rng);
    items.truncate(size);

    let mut tiers: Vec<BTreeSet<Item>> = Vec::new();
    for item in items {
        let merge = !tiers.is_empty() && rng.gen::<f64>() < tie_probability;
        if merge {
            tiers.last_mut().expect("non-empty").insert(item);
        } else {
            tiers.push(BTreeSet::from([item]));
        }
    }
    PartialRanking::new(tiers)
}

/// Exchange the items at positions `i` and `i + 1`.
pub fn perturb_swap(r: &TotalRanking, i: usize) -> Result<TotalRanking> {
    if r.len() < 2 || i >= r.len() - 1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: r.len().saturating_sub(1),
        });
    }
    let mut items = r.items().to_vec();
    items.swap(i, i + 1);
    TotalRanking::new(items)
}

/// Keep the leading tiers until at least `n` items are included. A tier
/// straddling the cut is kept whole: splitting a tie would invent an order
/// the input does not contain.
pub fn perturb_truncate(r: &PartialRanking, n: usize) -> PartialRanking {
    let mut kept = Vec::new();
    let mut count = 0usize;
    for tier in r.tiers() {
        if count >= n {
            break;
        }
        kept.push(tier.clone());
        count += tier.len();
    }
    PartialRanking::new(kept).expect("subset of a valid ranking is valid")
}

/// Union tiers `tier_index` and `tier_index + 1` into one tier.
pub fn perturb_merge(r: &PartialRanking, tier_index: usize) -> Result<PartialRanking> {
    if r.tier_count() < 2 || tier_index >= r.tier_count() - 1 {
        return Err(Error::IndexOutOfRange {
            index: tier_index,
            bound: r.tier_count().saturating_sub(1),
        });
    }
    let mut tiers: Vec<BTreeSet<Item>> = r.tiers().to_vec();
    let merged: BTreeSet<Item> = tiers[tier_index]
        .union(&tiers[tier_index + 1])
        .cloned()
        .collect();
    tiers[tier_index] = merged;
    tiers.remove(tier_index + 1);
    PartialRanking::new(tiers)
}
