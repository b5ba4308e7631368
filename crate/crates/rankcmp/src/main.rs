use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rankcmp::error::Error;
use rankcmp::measures::TernaryWeights;
use rankcmp::pipeline::{
    batch_command, compare_command, series_command, ComparisonOptions, MeasureName, PartialPolicy,
    Representation, Variant, DEFAULT_EXTENSION_LIMIT,
};

/// Compare rankings that may be incomplete and partially ordered.
///
/// Rankings use the grammar `a > (b, c) > d`: tiers separated by `>`, tied
/// items parenthesized, leftmost tier on top. A ranking argument starting
/// with `@` is read from the named file instead. Results are emitted as one
/// JSON object per line on stdout.
#[derive(Parser)]
#[command(name = "rankcmp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two rankings with one measure and print a single record.
    Compare {
        #[command(flatten)]
        options: MeasureArgs,
        /// Retrieved/system ranking (inline text, or @file).
        ranking_a: String,
        /// Relevant/reference ranking (inline text, or @file).
        ranking_b: String,
    },
    /// Emit (k, value) points for k = 1..n (cg, dcg, ndcg, p_at_k only).
    Series {
        #[command(flatten)]
        options: MeasureArgs,
        ranking_a: String,
        ranking_b: String,
    },
    /// Evaluate a tab-separated batch file: query_id TAB system TAB reference.
    Batch {
        #[command(flatten)]
        options: MeasureArgs,
        /// Batch file path.
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Precision,
    Recall,
    Fallout,
    Fscore,
    #[value(name = "p_at_k")]
    PAtK,
    #[value(name = "r_precision")]
    RPrecision,
    Avep,
    Cg,
    Dcg,
    Ndcg,
    Ncg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepresentationArg {
    Items,
    Pairs,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Strict,
    #[value(name = "max_similarity")]
    MaxSimilarity,
    #[value(name = "min_distance")]
    MinDistance,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Classic,
    Shifted,
    Exponential,
}

#[derive(Args)]
struct MeasureArgs {
    /// Measure to compute.
    #[arg(long, value_enum)]
    measure: MeasureArg,

    /// Compare item sets/positions directly, or the ordered-pair encoding.
    #[arg(long, value_enum, default_value = "pairs")]
    representation: RepresentationArg,

    /// Restrict both rankings to their shared items first.
    #[arg(long)]
    homogenize: bool,

    /// How to handle tied (partially ordered) inputs.
    #[arg(long, value_enum, default_value = "strict")]
    partial_policy: PolicyArg,

    /// Average the measure over both directions.
    #[arg(long)]
    symmetrize: bool,

    /// Cut-off rank for p_at_k, cg, dcg, ndcg.
    #[arg(long)]
    k: Option<usize>,

    /// Precision/recall trade-off for fscore.
    #[arg(long)]
    beta: Option<f64>,

    /// DCG discount variant.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,

    /// Relevance weights for correct,absent,reversed pairs (e.g. 1,0.5,0).
    #[arg(long, value_name = "C,A,R")]
    ternary_weights: Option<String>,

    /// Maximum number of extension pairs Algorithm-style enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_EXTENSION_LIMIT)]
    extension_limit: u64,
}

impl MeasureArgs {
    fn build(&self) -> Result<ComparisonOptions, Error> {
        let measure = match self.measure {
            MeasureArg::Precision => MeasureName::Precision,
            MeasureArg::Recall => MeasureName::Recall,
            MeasureArg::Fallout => MeasureName::Fallout,
            MeasureArg::Fscore => MeasureName::Fscore,
            MeasureArg::PAtK => MeasureName::PAtK,
            MeasureArg::RPrecision => MeasureName::RPrecision,
            MeasureArg::Avep => MeasureName::Avep,
            MeasureArg::Cg => MeasureName::Cg,
            MeasureArg::Dcg => MeasureName::Dcg,
            MeasureArg::Ndcg => MeasureName::Ndcg,
            MeasureArg::Ncg => MeasureName::Ncg,
        };
        let mut options = ComparisonOptions::new(measure);
        options.representation = match self.representation {
            RepresentationArg::Items => Representation::Items,
            RepresentationArg::Pairs => Representation::Pairs,
        };
        options.homogenize = self.homogenize;
        options.partial_policy = match self.partial_policy {
            PolicyArg::Strict => PartialPolicy::Strict,
            PolicyArg::MaxSimilarity => PartialPolicy::MaxSimilarity,
            PolicyArg::MinDistance => PartialPolicy::MinDistance,
        };
        options.symmetrize = self.symmetrize;
        options.k = self.k;
        options.beta = self.beta;
        options.variant = self.variant.map(|v| match v {
            VariantArg::Classic => Variant::Classic,
            VariantArg::Shifted => Variant::Shifted,
            VariantArg::Exponential => Variant::Exponential,
        });
        options.ternary_weights = match &self.ternary_weights {
            None => None,
            Some(text) => Some(parse_ternary_weights(text)?),
        };
        options.extension_limit = self.extension_limit;
        // full validation happens inside each command: series supplies k itself
        Ok(options)
    }
}

fn parse_ternary_weights(text: &str) -> Result<TernaryWeights, Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidOptions(format!(
            "--ternary-weights expects three comma-separated values, got {text:?}"
        )));
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| {
            Error::InvalidOptions(format!("--ternary-weights: {part:?} is not a number"))
        })?;
    }
    TernaryWeights::new(values[0], values[1], values[2])
}

/// `@path` arguments name a file holding the ranking text.
fn resolve_ranking(arg: &str) -> Result<String, Error> {
    if let Some(path) = arg.strip_prefix('@') {
        Ok(fs::read_to_string(path)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Compare {
            options,
            ranking_a,
            ranking_b,
        } => {
            let options = options.build()?;
            let a = resolve_ranking(ranking_a)?;
            let b = resolve_ranking(ranking_b)?;
            let record = compare_command(&options, &a, &b)?;
            println!("{}", serde_json::to_string(&record).expect("serializable"));
            Ok(record.is_defined())
        }
        Command::Series {
            options,
            ranking_a,
            ranking_b,
        } => {
            let options = options.build()?;
            let a = resolve_ranking(ranking_a)?;
            let b = resolve_ranking(ranking_b)?;
            let record = series_command(&options, &a, &b)?;
            println!("{}", serde_json::to_string(&record).expect("serializable"));
            Ok(record.is_defined())
        }
        Command::Batch { options, file } => {
            let options = options.build()?;
            let content = fs::read_to_string(file)?;
            let output = batch_command(&options, &content)?;
            for (line_no, message) in &output.line_errors {
                eprintln!("line {line_no}: {message}");
            }
            for record in &output.records {
                println!("{}", serde_json::to_string(record).expect("serializable"));
            }
            println!(
                "{}",
                serde_json::to_string(&output.aggregate).expect("serializable")
            );
            Ok(output.is_defined())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        // a record was emitted but no defined value was produced
        Ok(false) => ExitCode::from(6),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
