//! Measure pipeline assembly and report emission.
//!
//! A comparison runs through a fixed pipeline: parse, homogenize (opt-in),
//! representation conversion, partial-order policy (direct, or best value
//! over total extensions), the measure itself, then symmetrization (opt-in).
//! The first ranking is the retrieved/system side, the second the
//! relevant/reference side.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evaluation::mean_over_queries;
use crate::measures::{
    average_precision, cumulative_gain, cumulative_gain_pairs, dcg, f_score, fallout,
    linear_relevance, ncg, ndcg, precision, precision_at_k, r_precision, recall,
    ternary_pair_relevance, DcgVariant, TernaryWeights,
};
use crate::ranking::{
    homogenize, max_similarity, min_distance, symmetrize, to_pairs, PartialRanking, Score,
    TotalRanking,
};
use crate::text::parse_ranking;

pub const DEFAULT_EXTENSION_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureName {
    Precision,
    Recall,
    Fallout,
    Fscore,
    PAtK,
    RPrecision,
    Avep,
    Cg,
    Dcg,
    Ndcg,
    Ncg,
}

impl MeasureName {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureName::Precision => "precision",
            MeasureName::Recall => "recall",
            MeasureName::Fallout => "fallout",
            MeasureName::Fscore => "fscore",
            MeasureName::PAtK => "p_at_k",
            MeasureName::RPrecision => "r_precision",
            MeasureName::Avep => "avep",
            MeasureName::Cg => "cg",
            MeasureName::Dcg => "dcg",
            MeasureName::Ndcg => "ndcg",
            MeasureName::Ncg => "ncg",
        }
    }

    /// Measures indexed by rank positions: they need total rankings and are
    /// the ones `strict` refuses on tied input.
    fn is_rank_indexed(&self, representation: Representation) -> bool {
        match self {
            MeasureName::PAtK | MeasureName::Avep | MeasureName::Dcg | MeasureName::Ndcg => true,
            MeasureName::Cg => representation == Representation::Items,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// Rankings as ordered lists of items (or plain item sets for the
    /// order-blind measures).
    Items,
    /// Rankings encoded as sets of ordered pairs.
    Pairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialPolicy {
    /// Evaluate directly; rank-indexed measures reject tied inputs.
    Strict,
    /// Maximum over all pairs of total extensions (for similarities).
    MaxSimilarity,
    /// Minimum over all pairs of total extensions (for distances).
    MinDistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Classic,
    Shifted,
    Exponential,
}

impl From<Variant> for DcgVariant {
    fn from(v: Variant) -> DcgVariant {
        match v {
            Variant::Classic => DcgVariant::Classic,
            Variant::Shifted => DcgVariant::Shifted,
            Variant::Exponential => DcgVariant::Exponential,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ComparisonOptions {
    pub measure: MeasureName,
    pub representation: Representation,
    pub homogenize: bool,
    pub partial_policy: PartialPolicy,
    pub symmetrize: bool,
    pub k: Option<usize>,
    pub beta: Option<f64>,
    pub variant: Option<Variant>,
    pub ternary_weights: Option<TernaryWeights>,
    pub extension_limit: u64,
}

impl ComparisonOptions {
    pub fn new(measure: MeasureName) -> Self {
        ComparisonOptions {
            measure,
            representation: Representation::Pairs,
            homogenize: false,
            partial_policy: PartialPolicy::Strict,
            symmetrize: false,
            k: None,
            beta: None,
            variant: None,
            ternary_weights: None,
            extension_limit: DEFAULT_EXTENSION_LIMIT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use MeasureName::*;
        match self.measure {
            PAtK | Dcg | Ndcg if self.k.is_none() => {
                return Err(Error::InvalidOptions(format!(
                    "--k is required for {}",
                    self.measure.as_str()
                )));
            }
            Cg if self.representation == Representation::Items && self.k.is_none() => {
                return Err(Error::InvalidOptions(
                    "--k is required for cg on the items representation".into(),
                ));
            }
            Fscore if self.beta.is_none() => {
                return Err(Error::InvalidOptions("--beta is required for fscore".into()));
            }
            Dcg | Ndcg if self.variant.is_none() => {
                return Err(Error::InvalidOptions(format!(
                    "--variant is required for {}",
                    self.measure.as_str()
                )));
            }
            _ => {}
        }
        match (self.measure, self.representation) {
            (Fallout | RPrecision | Ncg, Representation::Items) => {
                return Err(Error::InvalidOptions(format!(
                    "{} is only defined on the pairs representation",
                    self.measure.as_str()
                )));
            }
            (PAtK | Avep | Dcg | Ndcg, Representation::Pairs) => {
                return Err(Error::InvalidOptions(format!(
                    "{} needs the items (ranking) representation: pair sets are unordered",
                    self.measure.as_str()
                )));
            }
            _ => {}
        }
        if self.extension_limit == 0 {
            return Err(Error::InvalidOptions("extension limit must be positive".into()));
        }
        Ok(())
    }

    fn weights(&self) -> TernaryWeights {
        self.ternary_weights.unwrap_or_default()
    }

    fn echo(&self) -> OptionsEcho {
        OptionsEcho {
            measure: self.measure,
            representation: self.representation,
            homogenize: self.homogenize,
            partial_policy: self.partial_policy,
            symmetrize: self.symmetrize,
            k: self.k,
            beta: self.beta,
            variant: self.variant,
            ternary_weights: self
                .ternary_weights
                .map(|w| [w.correct, w.absent, w.reversed]),
            extension_limit: self.extension_limit,
        }
    }
}

/// Options echoed into every report record, with a fixed field order so
/// output is byte-stable.
#[derive(Debug, Clone, Serialize)]
pub struct OptionsEcho {
    measure: MeasureName,
    representation: Representation,
    homogenize: bool,
    partial_policy: PartialPolicy,
    symmetrize: bool,
    k: Option<usize>,
    beta: Option<f64>,
    variant: Option<Variant>,
    ternary_weights: Option<[f64; 3]>,
    extension_limit: u64,
}

/// One emitted result line. `value` and `series` are mutually exclusive;
/// undefined outcomes set `status` to `"undefined"` and carry the reason.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub measure: &'static str,
    pub options: OptionsEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<(usize, f64)>>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl ReportRecord {
    pub fn is_defined(&self) -> bool {
        self.status == "ok"
    }

    fn ok_value(options: &ComparisonOptions, value: Score) -> Self {
        ReportRecord {
            measure: options.measure.as_str(),
            options: options.echo(),
            query_id: None,
            value: Some(value.value()),
            series: None,
            status: "ok",
            reason: None,
        }
    }

    fn ok_series(options: &ComparisonOptions, series: Vec<(usize, f64)>) -> Self {
        ReportRecord {
            measure: options.measure.as_str(),
            options: options.echo(),
            query_id: None,
            value: None,
            series: Some(series),
            status: "ok",
            reason: None,
        }
    }

    fn undefined(options: &ComparisonOptions, reason: String) -> Self {
        ReportRecord {
            measure: options.measure.as_str(),
            options: options.echo(),
            query_id: None,
            value: None,
            series: None,
            status: "undefined",
            reason: Some(reason),
        }
    }
}

/// Evaluate the configured measure on two parsed rankings.
pub fn evaluate(
    options: &ComparisonOptions,
    a: &PartialRanking,
    b: &PartialRanking,
) -> Result<Score> {
    options.validate()?;
    let (a, b) = if options.homogenize {
        homogenize(a, b)
    } else {
        (a.clone(), b.clone())
    };
    let one_way = |x: &PartialRanking, y: &PartialRanking| evaluate_one_direction(options, x, y);
    if options.symmetrize {
        symmetrize(one_way)(&a, &b)
    } else {
        one_way(&a, &b)
    }
}

fn evaluate_one_direction(
    options: &ComparisonOptions,
    a: &PartialRanking,
    b: &PartialRanking,
) -> Result<Score> {
    match options.partial_policy {
        PartialPolicy::Strict => evaluate_strict(options, a, b),
        PartialPolicy::MaxSimilarity => max_similarity(
            a,
            b,
            |x, y| evaluate_on_totals(options, x, y),
            options.extension_limit,
        ),
        PartialPolicy::MinDistance => min_distance(
            a,
            b,
            |x, y| evaluate_on_totals(options, x, y),
            options.extension_limit,
        ),
    }
}

fn evaluate_strict(
    options: &ComparisonOptions,
    a: &PartialRanking,
    b: &PartialRanking,
) -> Result<Score> {
    if options.measure.is_rank_indexed(options.representation) {
        let (ta, tb) = match (a.as_total(), b.as_total()) {
            (Some(ta), Some(tb)) => (ta, tb),
            _ => {
                return Err(Error::TiesNotAllowed(format!(
                    "{} under the strict policy requires totally ordered rankings",
                    options.measure.as_str()
                )))
            }
        };
        evaluate_rank_indexed(options, &ta, &tb)
    } else {
        evaluate_set_measure(options, a, b)
    }
}

fn evaluate_on_totals(
    options: &ComparisonOptions,
    a: &TotalRanking,
    b: &TotalRanking,
) -> Result<Score> {
    if options.measure.is_rank_indexed(options.representation) {
        evaluate_rank_indexed(options, a, b)
    } else {
        evaluate_set_measure(options, &a.to_partial(), &b.to_partial())
    }
}

fn evaluate_set_measure(
    options: &ComparisonOptions,
    a: &PartialRanking,
    b: &PartialRanking,
) -> Result<Score> {
    use MeasureName::*;
    match (options.measure, options.representation) {
        (Precision, Representation::Items) => precision(&a.item_set(), &b.item_set()),
        (Precision, Representation::Pairs) => {
            precision(to_pairs(a).pairs(), to_pairs(b).pairs())
        }
        (Recall, Representation::Items) => recall(&a.item_set(), &b.item_set()),
        (Recall, Representation::Pairs) => recall(to_pairs(a).pairs(), to_pairs(b).pairs()),
        (Fscore, Representation::Items) => {
            f_score(options.beta.expect("validated"), &a.item_set(), &b.item_set())
        }
        (Fscore, Representation::Pairs) => f_score(
            options.beta.expect("validated"),
            to_pairs(a).pairs(),
            to_pairs(b).pairs(),
        ),
        (Fallout, _) => fallout(&to_pairs(a), b),
        (RPrecision, _) => r_precision(a, b),
        (Ncg, _) => {
            let rel = ternary_pair_relevance(b, options.weights());
            ncg(&to_pairs(a), b, &rel)
        }
        (Cg, Representation::Pairs) => {
            let rel = ternary_pair_relevance(b, options.weights());
            let subject = to_pairs(a);
            let k = options.k.unwrap_or(subject.len());
            cumulative_gain_pairs(&subject, &rel, k)
        }
        (measure, _) => unreachable!("{measure:?} is rank-indexed"),
    }
}

fn evaluate_rank_indexed(
    options: &ComparisonOptions,
    system: &TotalRanking,
    reference: &TotalRanking,
) -> Result<Score> {
    use MeasureName::*;
    match options.measure {
        PAtK => precision_at_k(system, reference, options.k.expect("validated")),
        Avep => average_precision(system, &reference.item_set()),
        Cg => {
            let rel = linear_relevance(reference)?;
            cumulative_gain(system, &rel, options.k.expect("validated"))
        }
        Dcg => {
            let rel = linear_relevance(reference)?;
            dcg(
                system,
                &rel,
                options.k.expect("validated"),
                options.variant.expect("validated").into(),
            )
        }
        Ndcg => {
            let rel = linear_relevance(reference)?;
            ndcg(
                system,
                &rel,
                options.k.expect("validated"),
                options.variant.expect("validated").into(),
            )
        }
        measure => unreachable!("{measure:?} is not rank-indexed"),
    }
}

/// Parse both rankings and run the pipeline. Undefined outcomes become a
/// record with status `"undefined"`; every other failure is an error.
pub fn compare_command(
    options: &ComparisonOptions,
    ranking_a: &str,
    ranking_b: &str,
) -> Result<ReportRecord> {
    let a = parse_ranking(ranking_a)?;
    let b = parse_ranking(ranking_b)?;
    match evaluate(options, &a, &b) {
        Ok(score) => Ok(ReportRecord::ok_value(options, score)),
        Err(Error::UndefinedMeasure { reason }) => Ok(ReportRecord::undefined(options, reason)),
        Err(e) => Err(e),
    }
}

/// Emit (k, value) points for k = 1..n. Only the rank-indexed measures make
/// sense here; pair sets have no "first" elements.
pub fn series_command(
    options: &ComparisonOptions,
    ranking_a: &str,
    ranking_b: &str,
) -> Result<ReportRecord> {
    use MeasureName::*;
    if !matches!(options.measure, Cg | Dcg | Ndcg | PAtK) {
        return Err(Error::InvalidOptions(format!(
            "series supports cg, dcg, ndcg, p_at_k; got {}",
            options.measure.as_str()
        )));
    }
    if options.representation == Representation::Pairs {
        return Err(Error::SeriesRequiresRanking);
    }
    let a = parse_ranking(ranking_a)?;
    let b = parse_ranking(ranking_b)?;
    let (a, b) = if options.homogenize {
        homogenize(&a, &b)
    } else {
        (a, b)
    };
    let n = match options.measure {
        PAtK => a.item_count().min(b.item_count()),
        _ => a.item_count(),
    };
    if n == 0 {
        return Ok(ReportRecord::undefined(
            options,
            "no items to build a series over".to_string(),
        ));
    }
    let mut series = Vec::with_capacity(n);
    for k in 1..=n {
        let mut at_k = options.clone();
        at_k.k = Some(k);
        at_k.homogenize = false; // already applied above
        match evaluate(&at_k, &a, &b) {
            Ok(score) => series.push((k, score.value())),
            Err(Error::UndefinedMeasure { reason }) => {
                return Ok(ReportRecord::undefined(
                    options,
                    format!("undefined at k = {k}: {reason}"),
                ))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ReportRecord::ok_series(options, series))
}

/// Aggregate line of a batch run.
#[derive(Debug, Clone, Serialize)]
pub struct BatchAggregate {
    pub measure: &'static str,
    pub options: OptionsEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    pub defined: usize,
    pub undefined: Vec<String>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug)]
pub struct BatchOutput {
    /// Per-query records, ordered by query id.
    pub records: Vec<ReportRecord>,
    pub aggregate: BatchAggregate,
    /// (line number, message) for lines that could not be parsed.
    pub line_errors: Vec<(usize, String)>,
}

impl BatchOutput {
    pub fn is_defined(&self) -> bool {
        self.aggregate.status == "ok" && self.line_errors.is_empty()
    }
}

/// Evaluate a tab-separated batch: `query_id TAB system TAB reference` per
/// line, `#` comments. Per-query undefinedness is reported and excluded from
/// the mean; malformed lines are collected with their line numbers.
pub fn batch_command(options: &ComparisonOptions, content: &str) -> Result<BatchOutput> {
    options.validate()?;
    let mut line_errors = Vec::new();
    let mut cases: BTreeMap<String, (PartialRanking, PartialRanking)> = BTreeMap::new();
    for (idx, line) in content.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            line_errors.push((
                line_no,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
            continue;
        }
        let query_id = fields[0].trim().to_string();
        if query_id.is_empty() {
            line_errors.push((line_no, "empty query id".to_string()));
            continue;
        }
        if cases.contains_key(&query_id) {
            line_errors.push((line_no, format!("duplicate query id {query_id:?}")));
            continue;
        }
        let system = match parse_ranking(fields[1]) {
            Ok(r) => r,
            Err(e) => {
                line_errors.push((line_no, format!("system ranking: {e}")));
                continue;
            }
        };
        let reference = match parse_ranking(fields[2]) {
            Ok(r) => r,
            Err(e) => {
                line_errors.push((line_no, format!("reference ranking: {e}")));
                continue;
            }
        };
        cases.insert(query_id, (system, reference));
    }

    let mut records = Vec::with_capacity(cases.len());
    let mut per_query: BTreeMap<String, Option<Score>> = BTreeMap::new();
    for (query_id, (system, reference)) in &cases {
        let mut record = match evaluate(options, system, reference) {
            Ok(score) => {
                per_query.insert(query_id.clone(), Some(score));
                ReportRecord::ok_value(options, score)
            }
            Err(Error::UndefinedMeasure { reason }) => {
                per_query.insert(query_id.clone(), None);
                ReportRecord::undefined(options, reason)
            }
            // Per-query blow-ups and policy rejections exclude the query
            // rather than failing the batch.
            Err(e @ (Error::ExtensionLimitExceeded { .. }
            | Error::TiesNotAllowed(_)
            | Error::InvalidK { .. })) => {
                per_query.insert(query_id.clone(), None);
                ReportRecord::undefined(options, e.to_string())
            }
            Err(e) => return Err(e),
        };
        record.query_id = Some(query_id.clone());
        records.push(record);
    }

    let aggregate = match mean_over_queries(&per_query) {
        Ok(agg) => BatchAggregate {
            measure: options.measure.as_str(),
            options: options.echo(),
            mean: Some(agg.mean.value()),
            defined: agg.defined,
            undefined: agg.undefined,
            status: "ok",
            reason: None,
        },
        Err(e @ (Error::EmptyQuerySet | Error::UndefinedMeasure { .. })) => BatchAggregate {
            measure: options.measure.as_str(),
            options: options.echo(),
            mean: None,
            defined: 0,
            undefined: per_query.keys().cloned().collect(),
            status: "undefined",
            reason: Some(e.to_string()),
        },
        Err(e) => return Err(e),
    };

    Ok(BatchOutput {
        records,
        aggregate,
        line_errors,
    })
}
