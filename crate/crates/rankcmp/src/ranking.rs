//! Ranking data model: partial/total rankings, the ordered-pair encoding, and
//! the procedures that make order-insensitive measures applicable to rankings
//! which are incomplete or only partially ordered.
//!
//! A [`PartialRanking`] is an ordered sequence of tiers; items in the same tier
//! share a rank. [`to_pairs`] encodes a ranking as the set of all "x above y"
//! constraints it implies. [`homogenize`] restricts two rankings to their
//! shared items. [`max_similarity`] / [`min_distance`] lift a measure defined
//! on total rankings to partial ones by enumerating all compatible total
//! extensions and keeping the best value.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{undefined, Error, Result};

/// A ranked entity, identified by a short id.
///
/// Ids must be non-empty and free of whitespace and the grammar characters
/// `>`, `(`, `)`, `,`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(String);

impl Item {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidItem {
                id,
                reason: "empty id".into(),
            });
        }
        if let Some(c) = id
            .chars()
            .find(|c| c.is_whitespace() || matches!(c, '>' | '(' | ')' | ','))
        {
            return Err(Error::InvalidItem {
                id,
                reason: format!("reserved character {c:?}"),
            });
        }
        Ok(Item(id))
    }

    pub fn id(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ordered sequence of tiers; tier 0 is the top. Items inside a tier are
/// unordered relative to each other. The empty ranking (zero tiers) is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialRanking {
    tiers: Vec<BTreeSet<Item>>,
}

impl PartialRanking {
    pub fn new(tiers: Vec<BTreeSet<Item>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for tier in &tiers {
            if tier.is_empty() {
                return Err(Error::InvalidOptions("empty tier in ranking".into()));
            }
            for item in tier {
                if !seen.insert(item.clone()) {
                    return Err(Error::DuplicateItem {
                        id: item.id().to_string(),
                    });
                }
            }
        }
        Ok(PartialRanking { tiers })
    }

    pub fn empty() -> Self {
        PartialRanking { tiers: Vec::new() }
    }

    pub fn tiers(&self) -> &[BTreeSet<Item>] {
        &self.tiers
    }

    pub fn tier_count(&self) -> usize {
        self.tiers.len()
    }

    /// Total number of items across all tiers.
    pub fn item_count(&self) -> usize {
        self.tiers.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tiers.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.tiers.iter().flatten()
    }

    pub fn item_set(&self) -> BTreeSet<Item> {
        self.items().cloned().collect()
    }

    pub fn contains(&self, item: &Item) -> bool {
        self.tiers.iter().any(|t| t.contains(item))
    }

    pub fn tier_of(&self, item: &Item) -> Option<usize> {
        self.tiers.iter().position(|t| t.contains(item))
    }

    /// True when every tier holds a single item.
    pub fn is_total(&self) -> bool {
        self.tiers.iter().all(|t| t.len() == 1)
    }

    /// True when some tier holds two or more items.
    pub fn has_ties(&self) -> bool {
        !self.is_total()
    }

    pub fn as_total(&self) -> Option<TotalRanking> {
        if self.is_total() {
            Some(TotalRanking {
                items: self.items().cloned().collect(),
            })
        } else {
            None
        }
    }
}

/// A linear order: one item per rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TotalRanking {
    items: Vec<Item>,
}

impl TotalRanking {
    pub fn new(items: Vec<Item>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for item in &items {
            if !seen.insert(item.clone()) {
                return Err(Error::DuplicateItem {
                    id: item.id().to_string(),
                });
            }
        }
        Ok(TotalRanking { items })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn item_set(&self) -> BTreeSet<Item> {
        self.items.iter().cloned().collect()
    }

    pub fn to_partial(&self) -> PartialRanking {
        PartialRanking {
            tiers: self
                .items
                .iter()
                .map(|i| BTreeSet::from([i.clone()]))
                .collect(),
        }
    }
}

/// The constraint "above outranks below".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPair {
    pub above: Item,
    pub below: Item,
}

impl OrderedPair {
    pub fn new(above: Item, below: Item) -> Result<Self> {
        if above == below {
            return Err(Error::InvalidItem {
                id: above.id().to_string(),
                reason: "a pair cannot relate an item to itself".into(),
            });
        }
        Ok(OrderedPair { above, below })
    }

    pub fn reversed(&self) -> OrderedPair {
        OrderedPair {
            above: self.below.clone(),
            below: self.above.clone(),
        }
    }
}

impl fmt::Display for OrderedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.above, self.below)
    }
}

/// An antisymmetric set of ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairSet {
    pairs: BTreeSet<OrderedPair>,
}

impl PairSet {
    pub fn new(pairs: BTreeSet<OrderedPair>) -> Result<Self> {
        for p in &pairs {
            if pairs.contains(&p.reversed()) {
                return Err(Error::InvalidOptions(format!(
                    "pair set contains both {p} and its reverse"
                )));
            }
        }
        Ok(PairSet { pairs })
    }

    pub fn pairs(&self) -> &BTreeSet<OrderedPair> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: &OrderedPair) -> bool {
        self.pairs.contains(pair)
    }

    /// Every pair flipped. Still antisymmetric.
    pub fn reversed(&self) -> PairSet {
        PairSet {
            pairs: self.pairs.iter().map(OrderedPair::reversed).collect(),
        }
    }

    pub fn intersection_len(&self, other: &PairSet) -> usize {
        self.pairs.intersection(&other.pairs).count()
    }

    pub fn is_superset(&self, other: &PairSet) -> bool {
        self.pairs.is_superset(&other.pairs)
    }
}

/// Encode a ranking as its set of ordered pairs: (x above y) is present iff
/// x sits in a strictly higher tier than y. The result is antisymmetric and
/// transitively closed, with size Σ_{i<j} |tier_i|·|tier_j|.
pub fn to_pairs(r: &PartialRanking) -> PairSet {
    let mut pairs = BTreeSet::new();
    let tiers = r.tiers();
    for (i, upper) in tiers.iter().enumerate() {
        for lower in &tiers[i + 1..] {
            for a in upper {
                for b in lower {
                    pairs.insert(OrderedPair {
                        above: a.clone(),
                        below: b.clone(),
                    });
                }
            }
        }
    }
    PairSet { pairs }
}

/// Restrict both rankings to their shared items, preserving the relative
/// order of the survivors. Tiers emptied by the removal are dropped.
/// Idempotent; disjoint item sets yield two empty rankings.
pub fn homogenize(a: &PartialRanking, b: &PartialRanking) -> (PartialRanking, PartialRanking) {
    let shared: BTreeSet<Item> = a
        .item_set()
        .intersection(&b.item_set())
        .cloned()
        .collect();
    (restrict(a, &shared), restrict(b, &shared))
}

fn restrict(r: &PartialRanking, keep: &BTreeSet<Item>) -> PartialRanking {
    PartialRanking {
        tiers: r
            .tiers()
            .iter()
            .map(|t| t.intersection(keep).cloned().collect::<BTreeSet<_>>())
            .filter(|t: &BTreeSet<Item>| !t.is_empty())
            .collect(),
    }
}

/// Number of total extensions of `r`, i.e. Π_i |tier_i|!, computed without
/// enumerating. The empty ranking has exactly one (empty) extension.
pub fn extension_count(r: &PartialRanking) -> Result<u64> {
    let mut count: u64 = 1;
    for tier in r.tiers() {
        for f in 2..=(tier.len() as u64) {
            count = count.checked_mul(f).ok_or(Error::ArithmeticOverflow)?;
        }
    }
    Ok(count)
}

/// Enumerate every total ranking compatible with `r`: same item set, pair set
/// a superset of `to_pairs(r)`. Within each tier, permutations are generated
/// in lexicographic order of item ids, so the overall enumeration order is
/// deterministic.
pub fn total_extensions(r: &PartialRanking, limit: u64) -> Result<Vec<TotalRanking>> {
    let count = extension_count(r)?;
    if count > limit {
        return Err(Error::ExtensionLimitExceeded {
            count: count as u128,
            limit,
        });
    }
    let per_tier: Vec<Vec<Vec<Item>>> = r
        .tiers()
        .iter()
        .map(|tier| {
            let items: Vec<Item> = tier.iter().cloned().collect();
            let n = items.len();
            // itertools yields permutations of a sorted input in lexicographic order
            items.into_iter().permutations(n).collect()
        })
        .collect();

    let mut out = Vec::with_capacity(count as usize);
    let mut stack: Vec<Item> = Vec::with_capacity(r.item_count());
    build_extensions(&per_tier, 0, &mut stack, &mut out);
    Ok(out)
}

fn build_extensions(
    per_tier: &[Vec<Vec<Item>>],
    depth: usize,
    prefix: &mut Vec<Item>,
    out: &mut Vec<TotalRanking>,
) {
    if depth == per_tier.len() {
        out.push(TotalRanking {
            items: prefix.clone(),
        });
        return;
    }
    for perm in &per_tier[depth] {
        let mark = prefix.len();
        prefix.extend(perm.iter().cloned());
        build_extensions(per_tier, depth + 1, prefix, out);
        prefix.truncate(mark);
    }
}

/// Lift a similarity defined on total rankings to partial ones: evaluate it on
/// every pair of total extensions and keep the maximum. Degenerates to a plain
/// `s(a, b)` call when both inputs are already total.
///
/// `limit` bounds the number of extension *pairs*; exceeding it is an
/// [`Error::ExtensionLimitExceeded`] carrying the exact count. A measure
/// undefined on every extension pair propagates as undefined.
pub fn max_similarity<S>(
    a: &PartialRanking,
    b: &PartialRanking,
    s: S,
    limit: u64,
) -> Result<Score>
where
    S: Fn(&TotalRanking, &TotalRanking) -> Result<Score>,
{
    optimize_over_extensions(a, b, s, limit, Direction::Max)
}

/// Counterpart of [`max_similarity`] for distances: minimum over all
/// extension pairs.
pub fn min_distance<D>(a: &PartialRanking, b: &PartialRanking, d: D, limit: u64) -> Result<Score>
where
    D: Fn(&TotalRanking, &TotalRanking) -> Result<Score>,
{
    optimize_over_extensions(a, b, d, limit, Direction::Min)
}

enum Direction {
    Max,
    Min,
}

fn optimize_over_extensions<F>(
    a: &PartialRanking,
    b: &PartialRanking,
    measure: F,
    limit: u64,
    direction: Direction,
) -> Result<Score>
where
    F: Fn(&TotalRanking, &TotalRanking) -> Result<Score>,
{
    let count_a = extension_count(a)?;
    let count_b = extension_count(b)?;
    let pair_count = (count_a as u128) * (count_b as u128);
    if pair_count > limit as u128 {
        return Err(Error::ExtensionLimitExceeded {
            count: pair_count,
            limit,
        });
    }
    let exts_a = total_extensions(a, u64::MAX)?;
    let exts_b = total_extensions(b, u64::MAX)?;

    let mut best: Option<f64> = None;
    let mut last_err: Option<Error> = None;
    for ea in &exts_a {
        for eb in &exts_b {
            match measure(ea, eb) {
                Ok(score) => {
                    let v = score.value();
                    best = Some(match (best, &direction) {
                        (None, _) => v,
                        (Some(cur), Direction::Max) => cur.max(v),
                        (Some(cur), Direction::Min) => cur.min(v),
                    });
                }
                Err(e) => last_err = Some(e),
            }
        }
    }
    match best {
        Some(v) => Score::new(v, "extension optimum"),
        None => Err(last_err.unwrap_or_else(|| undefined("no extension pair to evaluate"))),
    }
}

/// Make a two-ranking measure symmetric by averaging both directions.
/// Undefinedness in either direction makes the result undefined.
pub fn symmetrize<T, F>(m: F) -> impl Fn(&T, &T) -> Result<Score>
where
    F: Fn(&T, &T) -> Result<Score>,
{
    move |a, b| {
        let forward = m(a, b)?;
        let backward = m(b, a)?;
        Score::new((forward.value() + backward.value()) / 2.0, "symmetrize")
    }
}

/// A finite measure value. Normalized measures stay in [0,1]; unnormalized
/// ones (the cumulative-gain family) are merely non-negative. NaN and
/// infinities are construction errors, never values.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Score(f64);

impl Score {
    pub fn new(value: f64, context: &str) -> Result<Self> {
        if value.is_finite() {
            Ok(Score(value))
        } else {
            Err(Error::NonFiniteScore {
                context: context.to_string(),
            })
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
