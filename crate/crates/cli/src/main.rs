//! `epi`: entanglement measures and polygon-inequality checks from the
//! command line.
//!
//! Exit codes: 0 when the result agrees with the proven direction of the
//! inequality, 1 when it does not, 2 on any input error.

// `!(x >= 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;
mod source;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use epi_core::gallery::EXAMPLE1_PRINTED_VALUES;
use epi_core::polygon::{
    alpha_sweep, audit_random, epi_report_with_tolerance, indicator_delta, largest_block,
    one_to_rest_values,
};
use epi_core::{
    tol, Alpha, AlphaGrid, AuditConfig, Dims, EpiReport64, Ket64, Measure64, NamedState, Partition,
    Sampler,
};
use serde_json::{json, Value};

use output::{csv_num, emit, num, nums, Format};
use source::{Source, StateFile};

/// Non-zero exit with a message on stderr.
#[derive(Debug)]
pub enum Failure {
    Input(String),
}

impl Failure {
    pub fn input(e: impl std::fmt::Display) -> Self {
        Self::Input(e.to_string())
    }
}

const EXIT_OK: u8 = 0;
const EXIT_CONTRARY: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "epi",
    version,
    about = "Entanglement polygon inequalities for multipartite pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-to-rest values of a measure for every block of a partition.
    Measure(MeasureArgs),
    /// Full inequality report; exit 1 when the inequality fails.
    EpiCheck(CheckArgs),
    /// Residual g(α) of one block over a grid of exponents.
    Sweep(SweepArgs),
    /// Randomized audit over a family of states.
    Audit(AuditArgs),
    /// δ_α indicator and per-party residuals for the GEM.
    Indicator(IndicatorArgs),
    /// Write a gallery state as a state file.
    Gallery(GalleryArgs),
}

#[derive(Args)]
struct StateArgs {
    /// `gallery:NAME` or a path to a JSON state file.
    source: String,
    /// Blocks separated by '|', members by ',', 1-based: "1|2,3|4".
    #[arg(long)]
    partition: Option<String>,
    /// gem, negativity, concurrence or qconcurrence.
    #[arg(long)]
    measure: Option<String>,
    /// Order of the q-concurrence.
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    state: StateArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Residuals down to -tolerance still count as holding.
    #[arg(long, default_value_t = tol::VIOLATION)]
    tolerance: f64,
    /// Treat a violation as the expected outcome (exit 0) and holding as contrary.
    #[arg(long)]
    expect_violation: bool,
    /// Accept α > 1, outside the proven regime.
    #[arg(long)]
    allow_unproven_alpha: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// `gallery:NAME`, `gallery:example1-paper-values` or a state file; omit with --values.
    source: Option<String>,
    /// Explicit comma-separated values instead of a state.
    #[arg(long, value_delimiter = ',', conflicts_with = "source")]
    values: Option<Vec<f64>>,
    /// 1-based designated block; defaults to the block with the largest value.
    #[arg(long)]
    block: Option<usize>,
    #[arg(long)]
    partition: Option<String>,
    #[arg(long)]
    measure: Option<String>,
    #[arg(long)]
    q: Option<f64>,
    /// Explicit exponents; overrides the grid.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.01)]
    alpha_min: f64,
    #[arg(long, default_value_t = 0.99)]
    alpha_max: f64,
    #[arg(long, default_value_t = 99)]
    steps: usize,
    #[arg(long)]
    allow_unproven_alpha: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct AuditArgs {
    /// Local dimensions, e.g. 2,2,2; for the purification sampler the two spectrum sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    #[arg(long, default_value = "gem")]
    measure: String,
    #[arg(long)]
    q: Option<f64>,
    /// haar, purification or gw.
    #[arg(long, default_value = "haar")]
    sampler: String,
    #[arg(long)]
    partition: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = tol::VIOLATION)]
    tolerance: f64,
    /// Require every trial to violate (implied for negativity on purifications).
    #[arg(long)]
    expect_violation: bool,
    #[arg(long)]
    allow_unproven_alpha: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct IndicatorArgs {
    source: String,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct GalleryArgs {
    /// ghz(n), w(n), bell, example1, example2 or example3.
    #[arg(required_unless_present = "list")]
    name: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<String>,
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Measure(a) => cmd_measure(a),
        Command::EpiCheck(a) => cmd_epi_check(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Indicator(a) => cmd_indicator(a),
        Command::Gallery(a) => cmd_gallery(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn parse_measure(name: &str, q: Option<f64>) -> Result<Measure64, Failure> {
    Measure64::parse(name, q).map_err(Failure::input)
}

fn measure_json(m: &Measure64) -> Value {
    match m {
        Measure64::QConcurrence(q) => json!({ "name": m.name(), "q": num(*q) }),
        _ => json!({ "name": m.name() }),
    }
}

/// State, partition and measure resolved from the shared arguments.
struct Resolved {
    psi: Ket64,
    partition: Partition,
    measure: Measure64,
}

fn resolve(a: &StateArgs) -> Result<Resolved, Failure> {
    let source = Source::parse(&a.source)?;
    let psi = source.ket()?;
    let parties = psi.dims().parties();
    let partition = match &a.partition {
        Some(p) => Partition::parse(p, parties).map_err(Failure::input)?,
        None => source.default_partition(parties)?,
    };
    let measure = parse_measure(
        a.measure.as_deref().unwrap_or(source.default_measure()),
        a.q,
    )?;
    Ok(Resolved {
        psi,
        partition,
        measure,
    })
}

fn block_label(partition: &Partition, j: usize) -> String {
    partition
        .block(j)
        .iter()
        .map(|k| (k + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_measure(a: MeasureArgs) -> Result<u8, Failure> {
    let r = resolve(&a.state)?;
    let values = one_to_rest_values(&r.psi, &r.partition, &r.measure).map_err(Failure::input)?;
    let doc = json!({
        "source": a.state.source,
        "dims": r.psi.dims().as_slice(),
        "partition": r.partition.to_string(),
        "measure": measure_json(&r.measure),
        "values": nums(&values),
    });
    let rows: Vec<Vec<String>> = values
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            vec![
                (j + 1).to_string(),
                block_label(&r.partition, j),
                csv_num(v),
            ]
        })
        .collect();
    emit(a.state.format, &doc, &["block", "parties", "value"], &rows);
    Ok(EXIT_OK)
}

fn report_json(report: &EpiReport64) -> Value {
    json!({
        "partition": report.partition.to_string(),
        "measure": measure_json(&report.measure),
        "alpha": num(report.alpha),
        "unproven_regime": report.unproven_regime,
        "values": nums(&report.values),
        "residuals": nums(&report.residuals),
        "min_residual": num(report.min_residual),
        "argmin_block": report.argmin + 1,
        "holds": report.holds,
    })
}

fn make_alpha(value: f64, allow_unproven: bool) -> Result<Alpha<f64>, Failure> {
    if allow_unproven {
        Alpha::unproven(value)
    } else {
        Alpha::new(value)
    }
    .map_err(Failure::input)
}

fn cmd_epi_check(a: CheckArgs) -> Result<u8, Failure> {
    let r = resolve(&a.state)?;
    let alpha = make_alpha(a.alpha, a.allow_unproven_alpha)?;
    if !(a.tolerance >= 0.0) {
        return Err(Failure::Input("tolerance must be non-negative".into()));
    }
    let report = epi_report_with_tolerance(&r.psi, &r.partition, r.measure, alpha, a.tolerance)
        .map_err(Failure::input)?;
    let mut doc = report_json(&report);
    doc["source"] = json!(a.state.source);
    let rows: Vec<Vec<String>> = (0..report.values.len())
        .map(|j| {
            vec![
                (j + 1).to_string(),
                block_label(&report.partition, j),
                csv_num(report.values[j]),
                csv_num(report.residuals[j]),
            ]
        })
        .collect();
    emit(
        a.state.format,
        &doc,
        &["block", "parties", "value", "residual"],
        &rows,
    );
    Ok(if report.holds != a.expect_violation {
        EXIT_OK
    } else {
        EXIT_CONTRARY
    })
}

fn cmd_sweep(a: SweepArgs) -> Result<u8, Failure> {
    let (label, values) = match (&a.source, &a.values) {
        (_, Some(v)) => ("values".to_string(), v.clone()),
        (Some(text), None) => {
            let source = Source::parse(text)?;
            let values = match source {
                Source::PaperValues => EXAMPLE1_PRINTED_VALUES.to_vec(),
                _ => {
                    let psi = source.ket()?;
                    let parties = psi.dims().parties();
                    let partition = match &a.partition {
                        Some(p) => Partition::parse(p, parties).map_err(Failure::input)?,
                        None => source.default_partition(parties)?,
                    };
                    let measure = parse_measure(
                        a.measure.as_deref().unwrap_or(source.default_measure()),
                        a.q,
                    )?;
                    one_to_rest_values(&psi, &partition, &measure).map_err(Failure::input)?
                }
            };
            (text.clone(), values)
        }
        (None, None) => return Err(Failure::Input("sweep needs a source or --values".into())),
    };
    if values.len() < 2 {
        return Err(Failure::Input("sweep needs at least two values".into()));
    }
    let designated = match a.block {
        Some(0) => return Err(Failure::Input("--block is 1-based".into())),
        Some(b) => b - 1,
        None => largest_block(&values),
    };
    let grid = match &a.alpha {
        Some(points) => AlphaGrid::from_points(points.clone(), a.allow_unproven_alpha),
        None => AlphaGrid::linspace(a.alpha_min, a.alpha_max, a.steps, a.allow_unproven_alpha),
    }
    .map_err(Failure::input)?;
    let curve = alpha_sweep(&values, designated, &grid).map_err(Failure::input)?;
    let doc = json!({
        "source": label,
        "values": nums(&values),
        "designated_block": designated + 1,
        "points": curve.iter().map(|&(x, g)| json!({ "alpha": num(x), "g": num(g) })).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = curve
        .iter()
        .map(|&(x, g)| vec![csv_num(x), csv_num(g)])
        .collect();
    emit(a.format, &doc, &["alpha", "g"], &rows);
    Ok(EXIT_OK)
}

fn cmd_audit(a: AuditArgs) -> Result<u8, Failure> {
    let measure = parse_measure(&a.measure, a.q)?;
    let sampler: Sampler = a.sampler.parse().map_err(Failure::input)?;
    let dims = Dims::new(a.dims.clone()).map_err(Failure::input)?;
    let alphas = a
        .alpha
        .iter()
        .map(|&x| make_alpha(x, a.allow_unproven_alpha))
        .collect::<Result<Vec<_>, _>>()?;
    if !(a.tolerance >= 0.0) {
        return Err(Failure::Input("tolerance must be non-negative".into()));
    }
    let mut config = AuditConfig::new(dims, measure, sampler)
        .and_then(|c| c.with_alphas(alphas))
        .and_then(|c| c.with_trials(a.trials))
        .map_err(Failure::input)?
        .with_seed(a.seed)
        .with_tolerance(a.tolerance);
    if let Some(p) = &a.partition {
        let partition = Partition::parse(p, config.dims.parties()).map_err(Failure::input)?;
        config = config.with_partition(partition).map_err(Failure::input)?;
    }
    let s = audit_random(&config).map_err(Failure::input)?;

    let expect_violation = a.expect_violation || sampler.violation_expected(&measure);
    let proven = sampler.proven_for(&measure) && config.alphas.iter().all(|x| !x.is_unproven());
    let (verdict, code) = if expect_violation {
        if s.violating_trials == s.trials {
            ("every trial violates, as expected", EXIT_OK)
        } else {
            (
                "some trials satisfy the inequality although violation was expected",
                EXIT_CONTRARY,
            )
        }
    } else if proven && s.violations > 0 {
        ("violations where the inequality is proven", EXIT_CONTRARY)
    } else if proven {
        ("no violations", EXIT_OK)
    } else {
        (
            "report only: the inequality is not proven for this measure and sampler",
            EXIT_OK,
        )
    };

    let doc = json!({
        "dims": config.dims.as_slice(),
        "partition": config.partition.to_string(),
        "measure": measure_json(&measure),
        "sampler": sampler.to_string(),
        "alphas": nums(&config.alphas.iter().map(|x| x.value()).collect::<Vec<_>>()),
        "seed": config.seed,
        "tolerance": num(config.tolerance),
        "trials": s.trials,
        "evaluations": s.evaluations,
        "violations": s.violations,
        "violating_trials": s.violating_trials,
        "worst_residual": num(s.worst_residual),
        "worst_trial": s.worst_trial,
        "worst_seed": s.worst_seed,
        "worst_alpha": num(s.worst_alpha),
        "worst_block": s.worst_block + 1,
        "expect_violation": expect_violation,
        "verdict": verdict,
    });
    let row = vec![
        sampler.to_string(),
        measure.name().to_string(),
        s.trials.to_string(),
        s.evaluations.to_string(),
        s.violations.to_string(),
        s.violating_trials.to_string(),
        csv_num(s.worst_residual),
        s.worst_trial.to_string(),
        s.worst_seed.to_string(),
        csv_num(s.worst_alpha),
        (s.worst_block + 1).to_string(),
    ];
    emit(
        a.format,
        &doc,
        &[
            "sampler",
            "measure",
            "trials",
            "evaluations",
            "violations",
            "violating_trials",
            "worst_residual",
            "worst_trial",
            "worst_seed",
            "worst_alpha",
            "worst_block",
        ],
        &[row],
    );
    Ok(code)
}

fn cmd_indicator(a: IndicatorArgs) -> Result<u8, Failure> {
    let psi = Source::parse(&a.source)?.ket()?;
    let ind = indicator_delta(&psi, a.alpha).map_err(Failure::input)?;
    let doc = json!({
        "source": a.source,
        "alpha": num(a.alpha),
        "values": nums(&ind.values),
        "taus": nums(&ind.taus),
        "delta": num(ind.delta),
    });
    let rows: Vec<Vec<String>> = (0..ind.values.len())
        .map(|i| {
            vec![
                (i + 1).to_string(),
                csv_num(ind.values[i]),
                csv_num(ind.taus[i]),
            ]
        })
        .collect();
    emit(a.format, &doc, &["party", "value", "tau"], &rows);
    Ok(EXIT_OK)
}

fn cmd_gallery(a: GalleryArgs) -> Result<u8, Failure> {
    if a.list {
        for name in NamedState::ALL_NAMES {
            println!("{}{name}", source::GALLERY_PREFIX);
        }
        println!("{}{}", source::GALLERY_PREFIX, source::PAPER_VALUES_FIXTURE);
        return Ok(EXIT_OK);
    }
    let name = a.name.expect("required unless --list");
    let name = name.strip_prefix(source::GALLERY_PREFIX).unwrap_or(&name);
    let named: NamedState = name.parse().map_err(Failure::input)?;
    let psi: Ket64 = named.ket().map_err(Failure::input)?;
    let text =
        serde_json::to_string_pretty(&StateFile::from_ket(&psi).to_json()).expect("serializable");
    match a.output {
        Some(path) => {
            fs::write(&path, text + "\n").map_err(|e| Failure::Input(format!("{path}: {e}")))?
        }
        None => println!("{text}"),
    }
    Ok(EXIT_OK)
}
