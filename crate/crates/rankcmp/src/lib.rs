//! Compare rankings that may be incomplete and only partially ordered.
//!
//! Classic IR comparison measures assume complete, totally ordered rankings.
//! This crate makes them applicable to the general case through three
//! procedures: encoding a ranking as its set of ordered pairs
//! ([`ranking::to_pairs`]), restricting two rankings to their shared items
//! ([`ranking::homogenize`]), and taking the best value over all total
//! extensions of tied rankings ([`ranking::max_similarity`] /
//! [`ranking::min_distance`]).
//!
//! On top of the core model, [`measures`] provides the per-query measure
//! catalog (precision/recall/fall-out/F-score, P@k, R-precision, AveP, and
//! the cumulative-gain family with pluggable relevance functions),
//! [`evaluation`] aggregates scores over query sets and generates synthetic
//! rankings, and [`pipeline`] + [`text`] expose the whole thing as a
//! text-grammar-driven comparison pipeline, also available as the `rankcmp`
//! CLI.

pub mod error;
pub mod evaluation;
pub mod measures;
pub mod pipeline;
pub mod ranking;
pub mod text;

pub use error::{Error, Result};
pub use ranking::{Item, OrderedPair, PairSet, PartialRanking, Score, TotalRanking};
