use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fqfrs::experiment::counterexamples::reproduce_counterexamples;
use fqfrs::experiment::report::{format6, render_cells, render_table};
use fqfrs::experiment::smoke::{run_smoke_suite, SMOKE_SEED};
use fqfrs::experiment::sweep::{build_aggregation, default_alphas, DEFAULT_TOLERANCE};
use fqfrs::experiment::{
    builtin_dataset, emit_report, load_dataset, run_sweep, Dataset, LabelColumn, LoadOptions,
    QuantifierFamily, ReportFormat, Scale, SweepConfig,
};
use fqfrs::granularity::maximal_granules;
use fqfrs::{ApproximationModel, Error, FuzzySet, ModelKind, TNorm};

#[derive(Parser)]
#[command(
    name = "fqfrs",
    version,
    about = "Fuzzy quantifier-based fuzzy rough set experiments"
)]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate the decision classes of a dataset with one model.
    Approx(ApproxArgs),
    /// Audit the granularity of models over a grid of alpha values.
    Sweep(SweepArgs),
    /// Reproduce the built-in counterexamples and run a property smoke suite.
    Verify(VerifyArgs),
    /// List the maximal granules contained in a decision class.
    Granules(GranulesArgs),
}

#[derive(Args)]
struct DataArgs {
    /// CSV file, or `builtin:example1` / `builtin:synthetic`.
    #[arg(long)]
    dataset: String,
    /// Label column: 0-based index, header name or `last`.
    #[arg(long, default_value = "last")]
    label_col: LabelColumn,
    #[arg(long, default_value = ",")]
    delimiter: char,
    /// Attribute scale: `std` for the column standard deviation or a
    /// positive number used for every attribute.
    #[arg(long, default_value = "std")]
    sigma: Scale,
    #[arg(long, default_value = "lukasiewicz")]
    tnorm: TNorm,
}

impl DataArgs {
    fn load(&self) -> Result<Dataset, Error> {
        if let Some(name) = self.dataset.strip_prefix("builtin:") {
            return builtin_dataset(name);
        }
        if !self.delimiter.is_ascii() {
            return Err(Error::InvalidParameter(
                "delimiter must be an ASCII character".into(),
            ));
        }
        let options = LoadOptions {
            delimiter: self.delimiter as u8,
            label: self.label_col.clone(),
        };
        load_dataset(&self.dataset, &options)
    }
}

#[derive(Args)]
struct ApproxArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value = "ywic")]
    model: ModelKind,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Quantifier family indexed by alpha: `zadeh` or `power`.
    #[arg(long, default_value = "zadeh")]
    family: QuantifierFamily,
    /// Only this class (default: every class).
    #[arg(long)]
    class: Option<String>,
    /// Also compute upper approximations.
    #[arg(long)]
    upper: bool,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Comma-separated model names, `all`, or empty for none.
    #[arg(long, default_value = "all")]
    models: String,
    /// Comma-separated, strictly increasing alpha values.
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long, default_value = "zadeh")]
    family: QuantifierFamily,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value = "csv")]
    format: ReportFormat,
    /// Output directory; without it the per-alpha table goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write plot_data.csv.
    #[arg(long)]
    plot_data: bool,
    #[arg(long)]
    class: Option<String>,
    /// Also audit upper approximations.
    #[arg(long)]
    upper: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = SMOKE_SEED)]
    seed: u64,
}

#[derive(Args)]
struct GranulesArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    class: String,
    /// Decompose this model's lower approximation instead of the class.
    #[arg(long)]
    model: Option<ModelKind>,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value = "zadeh")]
    family: QuantifierFamily,
}

fn parse_models(text: &str) -> Result<Vec<ModelKind>, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.eq_ignore_ascii_case("all") {
        return Ok(ModelKind::ALL.to_vec());
    }
    text.split(',').map(|m| m.trim().parse()).collect()
}

fn parse_alphas(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|a| {
            a.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("invalid alpha '{a}'")))
        })
        .collect()
}

fn model_for(
    kind: ModelKind,
    family: QuantifierFamily,
    alpha: f64,
    tnorm: &TNorm,
    ds: &Dataset,
    scale: Scale,
) -> Result<(fqfrs::FuzzyRelation, ApproximationModel), Error> {
    let r = ds.relation(scale)?;
    let agg = build_aggregation(kind, family.quantifier(alpha)?, &r)?;
    let model = ApproximationModel::new(agg, tnorm.clone())?;
    Ok((r, model))
}

fn joined(set: &FuzzySet) -> String {
    set.degrees()
        .iter()
        .map(|d| format6(*d))
        .collect::<Vec<_>>()
        .join(";")
}

fn approx(args: ApproxArgs) -> Result<ExitCode, Error> {
    let ds = args.data.load()?;
    let (r, model) = model_for(
        args.model,
        args.family,
        args.alpha,
        &args.data.tnorm,
        &ds,
        args.data.sigma,
    )?;
    let classes = match &args.class {
        Some(c) => vec![(c.clone(), ds.class_set(c)?)],
        None => ds.decision_sets(),
    };
    let mut rows = Vec::new();
    for (class, a) in classes {
        let result = model.approximate(&r, &a, args.upper)?;
        rows.push((class, result));
    }
    match args.format {
        ReportFormat::Csv => {
            let mut out = String::from("class,element,lower");
            if args.upper {
                out.push_str(",upper");
            }
            out.push('\n');
            for (class, result) in &rows {
                for (x, l) in result.lower.degrees().iter().enumerate() {
                    write!(out, "{class},{x},{}", format6(*l)).unwrap();
                    if let Some(u) = &result.upper {
                        write!(out, ",{}", format6(u.get(x))).unwrap();
                    }
                    out.push('\n');
                }
            }
            print!("{out}");
        }
        ReportFormat::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|(class, result)| serde_json::json!({ "class": class, "result": result }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    let ds = args.data.load()?;
    let cfg = SweepConfig {
        models: parse_models(&args.models)?,
        alphas: match &args.alphas {
            Some(text) => parse_alphas(text)?,
            None => default_alphas(),
        },
        family: args.family,
        tnorm: args.data.tnorm.clone(),
        tolerance: args.tolerance,
        scale: args.data.sigma,
        target_class: args.class.clone(),
        include_upper: args.upper,
    };
    let report = run_sweep(&ds, &cfg)?;
    match &args.out {
        Some(dir) => {
            for path in emit_report(&report, dir, args.format, args.plot_data)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            print!("{}", render_cells(&report, args.format)?);
            eprint!("{}", render_table(&report, ReportFormat::Csv)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let mut ok = true;
    for check in reproduce_counterexamples()? {
        ok &= check.passed;
        println!(
            "{} counterexample {}: max deviation {:.3e} (tolerance {:.0e})",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.max_deviation,
            check.tolerance
        );
        println!(
            "    lower      {}",
            check
                .lower
                .iter()
                .map(|v| format6(*v))
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!(
            "    classical  {}",
            check
                .classical
                .iter()
                .map(|v| format6(*v))
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!(
            "    difference {}",
            check
                .difference
                .iter()
                .map(|v| format6(*v))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    for check in run_smoke_suite(args.seed)? {
        ok &= check.passed;
        println!(
            "{} {}: {} cases, max deviation {:.3e}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.cases,
            check.max_deviation
        );
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn granules(args: GranulesArgs) -> Result<ExitCode, Error> {
    let ds = args.data.load()?;
    let tnorm = &args.data.tnorm;
    let r = ds.relation(args.data.sigma)?;
    let mut a = ds.class_set(&args.class)?;
    if let Some(kind) = args.model {
        let (_, model) = model_for(kind, args.family, args.alpha, tnorm, &ds, args.data.sigma)?;
        a = model.lower(&r, &a)?;
    }
    let implicator = tnorm.residual()?;
    println!("center,level,membership");
    for g in maximal_granules(&r, &a, tnorm, &implicator)? {
        println!(
            "{},{},{}",
            g.center,
            format6(g.level),
            joined(&g.membership)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Approx(a) => approx(a),
        Command::Sweep(a) => sweep(a),
        Command::Verify(a) => verify(a),
        Command::Granules(a) => granules(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
