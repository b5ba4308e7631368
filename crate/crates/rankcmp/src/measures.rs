//! Per-query comparison measures over item sets, pair sets, and total
//! rankings, plus the relevance functions parameterizing the cumulative-gain
//! family.
//!
//! Set measures (precision, recall, fall-out, F-score) are order-blind; fed
//! with the ordered-pair encoding from [`crate::ranking::to_pairs`] they
//! become order-aware. Rank-indexed measures (P@k, AveP, DCG, NDCG) work on
//! total rankings. Undefined denominators are errors, never sentinel values.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{undefined, Error, Result};
use crate::ranking::{
    homogenize, to_pairs, Item, OrderedPair, PairSet, PartialRanking, Score, TotalRanking,
};

/// |retrieved ∩ relevant| / |retrieved|. Undefined when retrieved is empty.
pub fn precision<T: Ord>(retrieved: &BTreeSet<T>, relevant: &BTreeSet<T>) -> Result<Score> {
    if retrieved.is_empty() {
        return Err(undefined("precision: empty retrieved set"));
    }
    let hits = retrieved.intersection(relevant).count();
    Score::new(hits as f64 / retrieved.len() as f64, "precision")
}

/// |retrieved ∩ relevant| / |relevant|. Equals `precision(relevant, retrieved)`.
pub fn recall<T: Ord>(retrieved: &BTreeSet<T>, relevant: &BTreeSet<T>) -> Result<Score> {
    if relevant.is_empty() {
        return Err(undefined("recall: empty relevant set"));
    }
    precision(relevant, retrieved)
}

/// Share of the reference's pairs retrieved in *reversed* order: a distance
/// in [0,1], 0 best. Undefined when the reference implies no ordered pairs.
pub fn fallout(retrieved: &PairSet, reference: &PartialRanking) -> Result<Score> {
    let reference_pairs = to_pairs(reference);
    if reference_pairs.is_empty() {
        return Err(undefined("fallout: reference has no ordered pairs"));
    }
    let reversed_hits = reference_pairs.reversed().intersection_len(retrieved);
    Score::new(
        reversed_hits as f64 / reference_pairs.len() as f64,
        "fallout",
    )
}

/// Weighted harmonic mean of precision and recall; beta > 1 favours recall.
/// By convention F = 0 when P = R = 0.
pub fn f_score<T: Ord>(
    beta: f64,
    retrieved: &BTreeSet<T>,
    relevant: &BTreeSet<T>,
) -> Result<Score> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidOptions(format!(
            "f_score: beta must be a positive real, got {beta}"
        )));
    }
    let p = precision(retrieved, relevant)?.value();
    let r = recall(retrieved, relevant)?.value();
    if p == 0.0 && r == 0.0 {
        return Score::new(0.0, "f_score");
    }
    let b2 = beta * beta;
    Score::new((1.0 + b2) * p * r / (b2 * p + r), "f_score")
}

/// |top_k(system) ∩ top_k(reference)| / k, both sides truncated to their k
/// first items.
pub fn precision_at_k(system: &TotalRanking, reference: &TotalRanking, k: usize) -> Result<Score> {
    let max_k = system.len().min(reference.len());
    if k == 0 || k > max_k {
        return Err(Error::InvalidK {
            k,
            reason: format!("p_at_k requires 1 <= k <= {max_k}"),
        });
    }
    let top_sys: BTreeSet<&Item> = system.items()[..k].iter().collect();
    let top_ref: BTreeSet<&Item> = reference.items()[..k].iter().collect();
    Score::new(
        top_sys.intersection(&top_ref).count() as f64 / k as f64,
        "p_at_k",
    )
}

/// R-precision on the pair representation: with homogenization the relevant
/// count equals the retrieved count, so this reduces to plain pair precision
/// after homogenizing.
pub fn r_precision(system: &PartialRanking, reference: &PartialRanking) -> Result<Score> {
    let (hs, hr) = homogenize(system, reference);
    let retrieved = to_pairs(&hs);
    if retrieved.is_empty() {
        return Err(undefined(
            "r_precision: no pairs survive homogenization",
        ));
    }
    precision(retrieved.pairs(), to_pairs(&hr).pairs())
}

/// Σ_k δ_k · P@k / |relevant|, with δ_k = 1 iff the k-th system item is
/// relevant and P@k the precision of the k-item prefix against `relevant`.
/// The denominator is always |relevant|, so relevant items missing from the
/// system ranking depress the score.
pub fn average_precision(system: &TotalRanking, relevant: &BTreeSet<Item>) -> Result<Score> {
    if relevant.is_empty() {
        return Err(undefined("average_precision: empty relevant set"));
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (idx, item) in system.items().iter().enumerate() {
        if relevant.contains(item) {
            hits += 1;
            sum += hits as f64 / (idx + 1) as f64;
        }
    }
    Score::new(sum / relevant.len() as f64, "average_precision")
}

/// Weights for the ternary pair relevance: correct ≥ absent ≥ reversed ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TernaryWeights {
    pub correct: f64,
    pub absent: f64,
    pub reversed: f64,
}

impl TernaryWeights {
    pub fn new(correct: f64, absent: f64, reversed: f64) -> Result<Self> {
        let ordered = correct >= absent && absent >= reversed && reversed >= 0.0;
        if !(ordered && correct.is_finite() && absent.is_finite() && reversed.is_finite()) {
            return Err(Error::InvalidOptions(format!(
                "ternary weights must satisfy correct >= absent >= reversed >= 0, \
                 got ({correct}, {absent}, {reversed})"
            )));
        }
        Ok(TernaryWeights {
            correct,
            absent,
            reversed,
        })
    }
}

impl Default for TernaryWeights {
    fn default() -> Self {
        TernaryWeights {
            correct: 1.0,
            absent: 0.5,
            reversed: 0.0,
        }
    }
}

/// External relevance scoring for the cumulative-gain family. Targets either
/// items or pairs; unmapped targets score 0. The ternary variant scores every
/// pair by its relation to a reference pair set.
#[derive(Debug, Clone)]
pub enum RelevanceAssignment {
    Items(BTreeMap<Item, f64>),
    Pairs(BTreeMap<OrderedPair, f64>),
    TernaryPairs {
        reference: PairSet,
        weights: TernaryWeights,
    },
}

impl RelevanceAssignment {
    pub fn kind(&self) -> &'static str {
        match self {
            RelevanceAssignment::Items(_) => "items",
            RelevanceAssignment::Pairs(_) | RelevanceAssignment::TernaryPairs { .. } => "pairs",
        }
    }

    pub fn item_score(&self, item: &Item) -> Result<f64> {
        match self {
            RelevanceAssignment::Items(map) => Ok(map.get(item).copied().unwrap_or(0.0)),
            _ => Err(Error::RelevanceKindMismatch {
                expected: "items".into(),
                actual: self.kind().into(),
            }),
        }
    }

    pub fn pair_score(&self, pair: &OrderedPair) -> Result<f64> {
        match self {
            RelevanceAssignment::Pairs(map) => Ok(map.get(pair).copied().unwrap_or(0.0)),
            RelevanceAssignment::TernaryPairs { reference, weights } => {
                if reference.contains(pair) {
                    Ok(weights.correct)
                } else if reference.contains(&pair.reversed()) {
                    Ok(weights.reversed)
                } else {
                    Ok(weights.absent)
                }
            }
            RelevanceAssignment::Items(_) => Err(Error::RelevanceKindMismatch {
                expected: "pairs".into(),
                actual: "items".into(),
            }),
        }
    }
}

/// Rank-linear relevance from a reference: top item scores n, last scores 1,
/// unmapped items score 0.
pub fn linear_relevance(reference: &TotalRanking) -> Result<RelevanceAssignment> {
    if reference.is_empty() {
        return Err(undefined("linear_relevance: empty reference"));
    }
    let n = reference.len();
    Ok(RelevanceAssignment::Items(
        reference
            .items()
            .iter()
            .enumerate()
            .map(|(idx, item)| (item.clone(), (n - idx) as f64))
            .collect(),
    ))
}

/// 1 for pairs the reference orders the same way, 0 otherwise.
pub fn binary_pair_relevance(reference: &PartialRanking) -> RelevanceAssignment {
    RelevanceAssignment::Pairs(
        to_pairs(reference)
            .pairs()
            .iter()
            .map(|p| (p.clone(), 1.0))
            .collect(),
    )
}

/// High / middle / low relevance for correct / absent / reversed pairs,
/// distinguishing explicit disagreement from missing information.
pub fn ternary_pair_relevance(
    reference: &PartialRanking,
    weights: TernaryWeights,
) -> RelevanceAssignment {
    RelevanceAssignment::TernaryPairs {
        reference: to_pairs(reference),
        weights,
    }
}

/// CG_k over a ranking: sum of relevance over the k first items.
pub fn cumulative_gain(
    subject: &TotalRanking,
    rel: &RelevanceAssignment,
    k: usize,
) -> Result<Score> {
    check_rank_k(k, subject.len())?;
    let mut sum = 0.0;
    for item in &subject.items()[..k] {
        sum += rel.item_score(item)?;
    }
    Score::new(sum, "cumulative_gain")
}

/// CG over a pair set. Pair sets are unordered, so there is no meaningful
/// prefix: `k` must equal the full set size.
pub fn cumulative_gain_pairs(
    subject: &PairSet,
    rel: &RelevanceAssignment,
    k: usize,
) -> Result<Score> {
    if k != subject.len() {
        return Err(Error::InvalidK {
            k,
            reason: format!(
                "pair-set cumulative gain is only defined for the whole set ({} pairs)",
                subject.len()
            ),
        });
    }
    let mut sum = 0.0;
    for pair in subject.pairs() {
        sum += rel.pair_score(pair)?;
    }
    Score::new(sum, "cumulative_gain_pairs")
}

/// Discount scheme for DCG.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcgVariant {
    /// rel_1 + Σ_{i=2..k} rel_i / log2(i)
    Classic,
    /// Σ_{i=1..k} rel_i / log2(i+1)
    Shifted,
    /// Σ_{i=1..k} (2^rel_i − 1) / log2(i+1)
    Exponential,
}

/// DCG_k with the selected discount variant; log base 2 throughout.
pub fn dcg(
    subject: &TotalRanking,
    rel: &RelevanceAssignment,
    k: usize,
    variant: DcgVariant,
) -> Result<Score> {
    check_rank_k(k, subject.len())?;
    let mut sum = 0.0;
    for (idx, item) in subject.items()[..k].iter().enumerate() {
        let rank = (idx + 1) as f64;
        let r = rel.item_score(item)?;
        sum += match variant {
            DcgVariant::Classic => {
                if idx == 0 {
                    r
                } else {
                    r / rank.log2()
                }
            }
            DcgVariant::Shifted => r / (rank + 1.0).log2(),
            DcgVariant::Exponential => (r.exp2() - 1.0) / (rank + 1.0).log2(),
        };
    }
    Score::new(sum, "dcg")
}

/// The subject's items re-ordered to maximize DCG: decreasing relevance,
/// ties broken by item id for reproducibility.
pub fn ideal_ordering(subject: &TotalRanking, rel: &RelevanceAssignment) -> Result<TotalRanking> {
    let mut scored: Vec<(f64, Item)> = subject
        .items()
        .iter()
        .map(|i| Ok((rel.item_score(i)?, i.clone())))
        .collect::<Result<_>>()?;
    scored.sort_by(|(ra, ia), (rb, ib)| {
        rb.partial_cmp(ra)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| ia.cmp(ib))
    });
    TotalRanking::new(scored.into_iter().map(|(_, i)| i).collect())
}

/// DCG normalized by the ideal DCG over the same items. Undefined when the
/// ideal DCG is 0 (all relevances 0).
pub fn ndcg(
    subject: &TotalRanking,
    rel: &RelevanceAssignment,
    k: usize,
    variant: DcgVariant,
) -> Result<Score> {
    let actual = dcg(subject, rel, k, variant)?.value();
    let ideal = dcg(&ideal_ordering(subject, rel)?, rel, k, variant)?.value();
    if ideal == 0.0 {
        return Err(undefined("ndcg: ideal DCG is 0"));
    }
    Score::new(actual / ideal, "ndcg")
}

/// Pair-set CG normalized by the ideal CG, i.e. the CG of retrieving exactly
/// the reference's pairs. Undefined when the ideal CG is 0.
pub fn ncg(
    subject: &PairSet,
    reference: &PartialRanking,
    rel: &RelevanceAssignment,
) -> Result<Score> {
    let reference_pairs = to_pairs(reference);
    let ideal = cumulative_gain_pairs(&reference_pairs, rel, reference_pairs.len())?.value();
    if ideal == 0.0 {
        return Err(undefined("ncg: ideal CG is 0"));
    }
    let actual = cumulative_gain_pairs(subject, rel, subject.len())?.value();
    Score::new(actual / ideal, "ncg")
}

fn check_rank_k(k: usize, size: usize) -> Result<()> {
    if k == 0 || k > size {
        Err(Error::InvalidK {
            k,
            reason: format!("k must satisfy 1 <= k <= {size}"),
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(id: &str) -> Item {
        Item::new(id).unwrap()
    }

    fn ranking(tiers: &[&[&str]]) -> PartialRanking {
        PartialRanking::new(
            tiers
                .iter()
                .map(|t| t.iter().map(|id| item(id)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn total(ids: &[&str]) -> TotalRanking {
        TotalRanking::new(ids.iter().map(|id| item(id)).collect()).unwrap()
    }

    fn item_set(ids: &[&str]) -> BTreeSet<Item> {
        ids.iter().map(|id| item(id)).collect()
    }

    fn chain_pairs(ids: &[&str]) -> PairSet {
        let tiers: Vec<&[&str]> = ids.iter().map(std::slice::from_ref).collect();
        to_pairs(&ranking(&tiers))
    }

    #[test]
    fn precision_on_reversed_chains_is_zero() {
        let v = precision(chain_pairs(&["a", "b", "c"]).pairs(), chain_pairs(&["c", "b", "a"]).pairs())
            .unwrap();
        assert_eq!(v.value(), 0.0);
    }

    #[test]
    fn precision_identical_sets_is_one() {
        let x = chain_pairs(&["a", "b", "c"]);
        assert_eq!(precision(x.pairs(), x.pairs()).unwrap().value(), 1.0);
    }

    #[test]
    fn precision_reversed_sub_ranking_also_zero() {
        // r1 vs r3 = c>b gives the same result as r1 vs r2
        let v = precision(chain_pairs(&["a", "b", "c"]).pairs(), chain_pairs(&["c", "b"]).pairs())
            .unwrap();
        assert_eq!(v.value(), 0.0);
    }

    #[test]
    fn precision_undefined_on_empty_retrieved() {
        let empty: BTreeSet<Item> = BTreeSet::new();
        assert!(matches!(
            precision(&empty, &item_set(&["a"])),
            Err(Error::UndefinedMeasure { .. })
        ));
    }

    #[test]
    fn recall_is_flipped_precision() {
        let x = chain_pairs(&["a", "b"]);
        let y = chain_pairs(&["a", "b", "c"]);
        let r = recall(x.pairs(), y.pairs()).unwrap().value();
        assert!((r - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r, precision(y.pairs(), x.pairs()).unwrap().value());
    }

    #[test]
    fn fallout_examples() {
        let retrieved = chain_pairs(&["a", "b", "c"]);
        assert_eq!(
            fallout(&retrieved, &ranking(&[&["c"], &["b"], &["a"]]))
                .unwrap()
                .value(),
            1.0
        );
        assert_eq!(
            fallout(&retrieved, &ranking(&[&["a"], &["b"], &["c"]]))
                .unwrap()
                .value(),
            0.0
        );
        let v = fallout(&retrieved, &ranking(&[&["a"], &["c"], &["b"]]))
            .unwrap()
            .value();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn fallout_undefined_without_reference_pairs() {
        let retrieved = chain_pairs(&["a", "b"]);
        assert!(matches!(
            fallout(&retrieved, &ranking(&[&["a", "b", "c"]])),
            Err(Error::UndefinedMeasure { .. })
        ));
    }

    #[test]
    fn f_score_values() {
        // P = R = v gives v for any beta
        let x = chain_pairs(&["a", "b", "c"]);
        for beta in [0.5, 1.0, 2.0] {
            assert_eq!(f_score(beta, x.pairs(), x.pairs()).unwrap().value(), 1.0);
        }
        // P=1, R=0.5: F1 = 2/3, F2 = 5/9
        let retrieved = chain_pairs(&["a", "b"]);
        let mut relevant = chain_pairs(&["a", "b"]).pairs().clone();
        relevant.insert(OrderedPair::new(item("a"), item("c")).unwrap());
        relevant.insert(OrderedPair::new(item("b"), item("c")).unwrap());
        // retrieved = {a>b}; |retrieved| = 1, |relevant| = 3 -> P = 1, R = 1/3
        let retrieved: BTreeSet<_> = retrieved
            .pairs()
            .iter()
            .filter(|p| p.above == item("a") && p.below == item("b"))
            .cloned()
            .collect();
        let p = precision(&retrieved, &relevant).unwrap().value();
        let r = recall(&retrieved, &relevant).unwrap().value();
        assert_eq!(p, 1.0);
        assert!((r - 1.0 / 3.0).abs() < 1e-15);
        let f1 = f_score(1.0, &retrieved, &relevant).unwrap().value();
        assert!((f1 - 2.0 * p * r / (p + r)).abs() < 1e-15);
    }

    #[test]
    fn f_score_zero_when_both_zero() {
        let v = f_score(
            1.0,
            chain_pairs(&["a", "b"]).pairs(),
            chain_pairs(&["b", "a"]).pairs(),
        )
        .unwrap();
        assert_eq!(v.value(), 0.0);
    }

    #[test]
    fn f_score_beta_weighting() {
        // hand check with P=1, R=0.5: F2 = 5*0.5/(4+0.5)
        let p = 1.0f64;
        let r = 0.5f64;
        let f2 = (1.0 + 4.0) * p * r / (4.0 * p + r);
        assert!((f2 - 0.5555555555555556).abs() < 1e-12);
    }

    #[test]
    fn precision_at_k_examples() {
        let sys = total(&["a", "b", "c", "d"]);
        let reference = total(&["a", "c", "b", "d"]);
        assert_eq!(precision_at_k(&sys, &reference, 2).unwrap().value(), 0.5);
        assert_eq!(precision_at_k(&sys, &sys, 3).unwrap().value(), 1.0);
        assert_eq!(precision_at_k(&sys, &reference, 4).unwrap().value(), 1.0);
        assert!(matches!(
            precision_at_k(&sys, &reference, 5),
            Err(Error::InvalidK { .. })
        ));
        assert!(matches!(
            precision_at_k(&sys, &reference, 0),
            Err(Error::InvalidK { .. })
        ));
    }

    #[test]
    fn r_precision_matches_homogenized_pair_precision() {
        let a = ranking(&[&["a"], &["b"], &["c"], &["e"]]);
        let b = ranking(&[&["c"], &["b"], &["a"], &["d"]]);
        let (ha, hb) = homogenize(&a, &b);
        let expected = precision(to_pairs(&ha).pairs(), to_pairs(&hb).pairs())
            .unwrap()
            .value();
        assert_eq!(r_precision(&a, &b).unwrap().value(), expected);
        assert_eq!(r_precision(&a, &a).unwrap().value(), 1.0);
        assert_eq!(
            r_precision(
                &ranking(&[&["a"], &["b"], &["c"]]),
                &ranking(&[&["c"], &["b"], &["a"]])
            )
            .unwrap()
            .value(),
            0.0
        );
    }

    #[test]
    fn r_precision_undefined_when_nothing_survives() {
        assert!(matches!(
            r_precision(&ranking(&[&["a"], &["b"]]), &ranking(&[&["c"], &["d"]])),
            Err(Error::UndefinedMeasure { .. })
        ));
    }

    #[test]
    fn average_precision_examples() {
        assert_eq!(
            average_precision(&total(&["b", "d", "a", "c"]), &item_set(&["b", "d"]))
                .unwrap()
                .value(),
            1.0
        );
        assert_eq!(
            average_precision(&total(&["a", "b", "c", "d"]), &item_set(&["b", "d"]))
                .unwrap()
                .value(),
            0.5
        );
        assert_eq!(
            average_precision(&total(&["a", "b", "c"]), &item_set(&["a", "b", "c"]))
                .unwrap()
                .value(),
            1.0
        );
        // relevant item missing from the system depresses the score
        let v = average_precision(&total(&["b", "a"]), &item_set(&["b", "z"]))
            .unwrap()
            .value();
        assert_eq!(v, 0.5);
    }

    #[test]
    fn linear_relevance_assigns_descending_scores() {
        let rel = linear_relevance(&total(&["a", "b", "c"])).unwrap();
        assert_eq!(rel.item_score(&item("a")).unwrap(), 3.0);
        assert_eq!(rel.item_score(&item("b")).unwrap(), 2.0);
        assert_eq!(rel.item_score(&item("c")).unwrap(), 1.0);
        assert_eq!(rel.item_score(&item("d")).unwrap(), 0.0);
        let single = linear_relevance(&total(&["a"])).unwrap();
        assert_eq!(single.item_score(&item("a")).unwrap(), 1.0);
    }

    #[test]
    fn binary_pair_relevance_scores() {
        let rel = binary_pair_relevance(&ranking(&[&["a"], &["b"]]));
        let ab = OrderedPair::new(item("a"), item("b")).unwrap();
        let ac = OrderedPair::new(item("a"), item("c")).unwrap();
        assert_eq!(rel.pair_score(&ab).unwrap(), 1.0);
        assert_eq!(rel.pair_score(&ab.reversed()).unwrap(), 0.0);
        assert_eq!(rel.pair_score(&ac).unwrap(), 0.0);
    }

    #[test]
    fn ternary_pair_relevance_scores() {
        let rel = ternary_pair_relevance(&ranking(&[&["a"], &["b"]]), TernaryWeights::default());
        let ab = OrderedPair::new(item("a"), item("b")).unwrap();
        let ac = OrderedPair::new(item("a"), item("c")).unwrap();
        assert_eq!(rel.pair_score(&ab).unwrap(), 1.0);
        assert_eq!(rel.pair_score(&ab.reversed()).unwrap(), 0.0);
        assert_eq!(rel.pair_score(&ac).unwrap(), 0.5);
    }

    #[test]
    fn ternary_weights_validation() {
        assert!(TernaryWeights::new(1.0, 0.5, 0.0).is_ok());
        assert!(TernaryWeights::new(0.5, 1.0, 0.0).is_err());
        assert!(TernaryWeights::new(1.0, 0.5, -0.1).is_err());
    }

    #[test]
    fn cumulative_gain_prefix_sums() {
        let rel = linear_relevance(&total(&["a", "b", "c"])).unwrap();
        let subject = total(&["b", "a", "c"]);
        assert_eq!(cumulative_gain(&subject, &rel, 1).unwrap().value(), 2.0);
        assert_eq!(cumulative_gain(&subject, &rel, 2).unwrap().value(), 5.0);
        assert_eq!(cumulative_gain(&subject, &rel, 3).unwrap().value(), 6.0);
        assert!(matches!(
            cumulative_gain(&subject, &rel, 4),
            Err(Error::InvalidK { .. })
        ));
    }

    #[test]
    fn cumulative_gain_pairs_requires_full_set() {
        let reference = ranking(&[&["a"], &["b"], &["c"]]);
        let rel = ternary_pair_relevance(&reference, TernaryWeights::default());
        let subject = to_pairs(&reference);
        assert_eq!(
            cumulative_gain_pairs(&subject, &rel, 3).unwrap().value(),
            3.0
        );
        assert!(matches!(
            cumulative_gain_pairs(&subject, &rel, 2),
            Err(Error::InvalidK { .. })
        ));
    }

    #[test]
    fn dcg_shifted_worked_example() {
        let rel = linear_relevance(&total(&["a", "b", "c"])).unwrap();
        let subject = total(&["b", "a", "c"]);
        let v = dcg(&subject, &rel, 3, DcgVariant::Shifted).unwrap().value();
        let expected = 2.0 / 1.0 + 3.0 / 3f64.log2() + 1.0 / 2.0;
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 4.392789).abs() < 1e-6);
    }

    #[test]
    fn dcg_classic_first_rank_unweighted() {
        let rel = linear_relevance(&total(&["a", "b", "c"])).unwrap();
        let subject = total(&["b", "a", "c"]);
        assert_eq!(
            dcg(&subject, &rel, 1, DcgVariant::Classic).unwrap().value(),
            2.0
        );
        let v = dcg(&subject, &rel, 3, DcgVariant::Classic).unwrap().value();
        let expected = 2.0 + 3.0 / 2f64.log2() + 1.0 / 3f64.log2();
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn dcg_exponential_equals_shifted_on_binary_relevance() {
        let rel = RelevanceAssignment::Items(
            [(item("a"), 1.0), (item("b"), 0.0), (item("c"), 1.0)]
                .into_iter()
                .collect(),
        );
        let subject = total(&["c", "b", "a"]);
        for k in 1..=3 {
            let shifted = dcg(&subject, &rel, k, DcgVariant::Shifted).unwrap().value();
            let exponential = dcg(&subject, &rel, k, DcgVariant::Exponential)
                .unwrap()
                .value();
            assert!((shifted - exponential).abs() < 1e-12);
        }
    }

    #[test]
    fn ndcg_worked_example() {
        let rel = linear_relevance(&total(&["a", "b", "c"])).unwrap();
        let subject = total(&["b", "a", "c"]);
        let v = ndcg(&subject, &rel, 3, DcgVariant::Shifted).unwrap().value();
        assert!((v - 0.922495).abs() < 1e-6);
    }

    #[test]
    fn ndcg_ideal_ordering_scores_one() {
        let rel = linear_relevance(&total(&["a", "b", "c"])).unwrap();
        let subject = total(&["a", "b", "c"]);
        assert_eq!(
            ndcg(&subject, &rel, 3, DcgVariant::Shifted).unwrap().value(),
            1.0
        );
    }

    #[test]
    fn ndcg_undefined_on_all_zero_relevance() {
        let rel = RelevanceAssignment::Items(BTreeMap::new());
        let subject = total(&["a", "b"]);
        assert!(matches!(
            ndcg(&subject, &rel, 2, DcgVariant::Shifted),
            Err(Error::UndefinedMeasure { .. })
        ));
    }

    #[test]
    fn ncg_examples() {
        let reference = ranking(&[&["a"], &["b"], &["c"]]);
        let rel = ternary_pair_relevance(&reference, TernaryWeights::default());
        assert_eq!(
            ncg(&to_pairs(&reference), &reference, &rel).unwrap().value(),
            1.0
        );

        let reversed_ref = ranking(&[&["c"], &["b"], &["a"]]);
        let rel2 = ternary_pair_relevance(&reversed_ref, TernaryWeights::default());
        assert_eq!(
            ncg(&chain_pairs(&["a", "b", "c"]), &reversed_ref, &rel2)
                .unwrap()
                .value(),
            0.0
        );

        let swapped_ref = ranking(&[&["a"], &["c"], &["b"]]);
        let rel3 = ternary_pair_relevance(&swapped_ref, TernaryWeights::default());
        let v = ncg(&chain_pairs(&["a", "b", "c"]), &swapped_ref, &rel3)
            .unwrap()
            .value();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
    }
}
