use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use subgroupsums::bounds::{self, BoundKind};
use subgroupsums::combinat::{binomial, factorial};
use subgroupsums::sweep::{self, BSelect, KSelect, MSelect, MethodChoice, OutputFormat, QSelect, Suite, SweepConfig};
use subgroupsums::{Budget, Error, FiniteField, SubsetCounter, Target};

const EXIT_VERIFY: u8 = 1;
const EXIT_PARAMS: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "subgroupsums", version, about = "Exact subset-sum counts over multiplicative subgroups of finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count one instance and compare it with the main term and error bound.
    Count(CountArgs),
    /// Counts for every b in F_q, as CSV.
    Table(TableArgs),
    /// Run verification suites over a parameter sweep.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic.
    #[arg(long, conflicts_with = "q")]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long, default_value_t = 1, requires = "p")]
    r: u32,
    /// Field size, any prime power.
    #[arg(long)]
    q: Option<u64>,
    /// Index of H in F_q^*.
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = TargetArg::M)]
    target: TargetArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Sieve)]
    method: MethodArg,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Encoding of the target element.
    #[arg(long)]
    b: u32,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    #[value(name = "M")]
    M,
    #[value(name = "NH")]
    Nh,
    #[value(name = "Nmstar")]
    Nmstar,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::M => Target::SubsetSum,
            TargetArg::Nh => Target::OrderedSubset,
            TargetArg::Nmstar => Target::DiagonalDistinct,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Sieve,
    Brute,
    Both,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sieve => MethodChoice::Sieve,
            MethodArg::Brute => MethodChoice::Brute,
            MethodArg::Both => MethodChoice::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Bounds,
    Oracle,
    Combinat,
    Structure,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Comma separated field sizes; overrides --q-min and --q-max.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u64>>,
    #[arg(long)]
    q_min: Option<u64>,
    #[arg(long)]
    q_max: Option<u64>,
    /// `all` or a comma separated list of indices.
    #[arg(long, default_value = "all")]
    m: String,
    /// Comma separated subset sizes; overrides --k-max.
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    #[arg(long, default_value_t = 6)]
    k_max: usize,
    /// `all`, `sample:n:seed=s`, or a comma separated list of encodings.
    #[arg(long, default_value = "all")]
    b: String,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    #[arg(long, default_value_t = 6)]
    d_max: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Sieve)]
    method: MethodArg,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Budget overrides as key=value pairs, applied after SUBGROUPSUMS_BUDGET.
    #[arg(long)]
    budget: Option<String>,
}

/// Failure carrying the process exit code.
struct Exit {
    code: u8,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NotDivisible { .. } | Error::Internal(_) => EXIT_VERIFY,
            _ => EXIT_PARAMS,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit {
            code: EXIT_VERIFY,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Budget::from_env().map_err(Exit::from).and_then(|budget| match cli.command {
        Command::Count(args) => count(args, budget),
        Command::Table(args) => table(args, budget),
        Command::Verify(args) => verify(args, budget),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn build_field(args: &FieldArgs, budget: &Budget) -> Result<FiniteField, Exit> {
    let field = match (args.q, args.p) {
        (Some(q), _) => FiniteField::of_order(q, budget.field_size)?,
        (None, Some(p)) => FiniteField::with_cap(p, args.r, budget.field_size)?,
        (None, None) => {
            return Err(Exit {
                code: EXIT_PARAMS,
                message: "either --q or --p is required".into(),
            })
        }
    };
    Ok(field)
}

fn bound_kind(target: Target, k: usize) -> Option<BoundKind> {
    match target {
        Target::SubsetSum if k == 0 => None,
        Target::SubsetSum => Some(BoundKind::SubsetSum),
        Target::OrderedSubset => Some(BoundKind::OrderedSubset),
        Target::DiagonalDistinct => Some(BoundKind::Diagonal),
    }
}

/// Sieve and/or brute-force values for every b, and whether they disagree.
fn distribution(
    counter: &SubsetCounter<'_>,
    k: usize,
    target: Target,
    method: MethodChoice,
) -> Result<(Vec<BigUint>, bool), Exit> {
    Ok(match method {
        MethodChoice::Sieve => (counter.sieve_distribution(k, target)?.to_vec(), false),
        MethodChoice::Brute => (counter.brute_distribution(k, target)?.to_vec(), false),
        MethodChoice::Both => {
            let s = counter.sieve_distribution(k, target)?;
            let b = counter.brute_distribution(k, target)?;
            (s.to_vec(), s != b)
        }
    })
}

#[derive(Serialize)]
struct CountOutput {
    q: u32,
    p: u32,
    r: u32,
    m: u32,
    k: usize,
    b: u32,
    target: Target,
    count: String,
    main_term: String,
    bound: Option<f64>,
    bound_holds: Option<bool>,
    method: MethodChoice,
    elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatch: Option<bool>,
}

fn count(args: CountArgs, budget: Budget) -> Result<u8, Exit> {
    let start = Instant::now();
    let fa = &args.field;
    let field = build_field(fa, &budget)?;
    let counter = SubsetCounter::new(&field, fa.m, budget)?;
    let b = field.element(args.b as u64)?;
    let (target, method) = (Target::from(fa.target), MethodChoice::from(fa.method));
    let (q, p, m) = (field.q() as u64, field.p() as u64, fa.m as u64);

    let (values, mismatch) = distribution(&counter, fa.k, target, method)?;
    let value = &values[b.index()];
    let main = bounds::main_term(q, m, fa.k as u64, target)?;
    let (bound, holds) = match bound_kind(target, fa.k) {
        Some(kind) => {
            let rhs = bounds::bound_value(q, p, m, fa.k as u64, b.is_zero(), kind)?;
            (Some(rhs), Some(bounds::within(bounds::deviation(value, &main), rhs)))
        }
        None => (None, None),
    };
    let out = CountOutput {
        q: field.q(),
        p: field.p(),
        r: field.r(),
        m: fa.m,
        k: fa.k,
        b: args.b,
        target,
        count: value.to_string(),
        main_term: main.to_string(),
        bound,
        bound_holds: holds,
        method,
        elapsed_ms: start.elapsed().as_millis(),
        mismatch: (method == MethodChoice::Both).then_some(mismatch),
    };
    println!("{}", serde_json::to_string(&out).expect("serializable"));
    Ok(if mismatch { EXIT_MISMATCH } else { 0 })
}

fn table(args: TableArgs, budget: Budget) -> Result<u8, Exit> {
    let fa = &args.field;
    let field = build_field(fa, &budget)?;
    let counter = SubsetCounter::new(&field, fa.m, budget)?;
    let (target, method) = (Target::from(fa.target), MethodChoice::from(fa.method));
    let (q, p, m, k) = (field.q() as u64, field.p() as u64, fa.m as u64, fa.k);

    let (values, mismatch) = distribution(&counter, k, target, method)?;
    let main = bounds::main_term(q, m, k as u64, target)?;
    let kind = bound_kind(target, k);

    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "q,m,k,b,count,main_term,lhs,rhs,holds")?;
    for (b, value) in values.iter().enumerate() {
        let lhs = bounds::deviation(value, &main);
        let (rhs, holds) = match kind {
            Some(kind) => {
                let rhs = bounds::bound_value(q, p, m, k as u64, b == 0, kind)?;
                (rhs.to_string(), bounds::within(lhs, rhs).to_string())
            }
            None => (String::new(), String::new()),
        };
        writeln!(out, "{q},{m},{k},{b},{value},{main},{lhs},{rhs},{holds}")?;
    }
    let sum: BigUint = values.iter().sum();
    let h = counter.subgroup().subgroup_size() as u64;
    let expected = match target {
        Target::SubsetSum => binomial(h, k as u64),
        Target::OrderedSubset => binomial(h, k as u64) * factorial(k as u64),
        Target::DiagonalDistinct => binomial(q - 1, k as u64) * factorial(k as u64),
    };
    let ok = sum == expected;
    writeln!(out, "# row_sum={sum} expected={expected} ok={ok}")?;
    Ok(if mismatch {
        EXIT_MISMATCH
    } else if !ok {
        EXIT_VERIFY
    } else {
        0
    })
}

fn sweep_config(args: &VerifyArgs, budget: Budget) -> Result<SweepConfig, Exit> {
    let budget = match &args.budget {
        Some(spec) => budget.with_overrides(spec)?,
        None => budget,
    };
    let q = match &args.q {
        Some(list) => QSelect::List(list.clone()),
        None => QSelect::Range {
            min: args.q_min,
            max: args.q_max,
        },
    };
    let m = if args.m == "all" {
        MSelect::All
    } else {
        let list = args
            .m
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Exit {
                code: EXIT_PARAMS,
                message: format!("bad --m value {:?}", args.m),
            })?;
        MSelect::List(list)
    };
    let k = match &args.k {
        Some(list) => KSelect::List(list.clone()),
        None => KSelect::UpTo(args.k_max),
    };
    Ok(SweepConfig {
        q,
        m,
        k,
        b: args.b.parse::<BSelect>()?,
        method: args.method.into(),
        format: match args.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        },
        jobs: args.jobs,
        budget,
        n_max: args.n_max,
        d_max: args.d_max,
    })
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    #[serde(flatten)]
    summary: &'a sweep::SuiteSummary,
    elapsed_ms: u128,
}

fn verify(args: VerifyArgs, budget: Budget) -> Result<u8, Exit> {
    let cfg = sweep_config(&args, budget)?;
    let suites: Vec<Suite> = match args.suite {
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Bounds => vec![Suite::Bounds],
        SuiteArg::Oracle => vec![Suite::Oracle],
        SuiteArg::Combinat => vec![Suite::Combinat],
        SuiteArg::Structure => vec![Suite::Structure],
        SuiteArg::All => Suite::ALL.to_vec(),
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if cfg.format == OutputFormat::Csv {
        writeln!(out, "suite,instances,failures,skipped,max_deviation,elapsed_ms")?;
    }
    let mut failed = false;
    for suite in suites {
        let start = Instant::now();
        let outcome = sweep::run_suite(suite, &cfg)?;
        let elapsed_ms = start.elapsed().as_millis();
        let s = &outcome.summary;
        match cfg.format {
            OutputFormat::Json => {
                let line = SummaryLine { summary: s, elapsed_ms };
                writeln!(out, "{}", serde_json::to_string(&line).expect("serializable"))?;
                for f in &outcome.failures {
                    writeln!(out, "{}", serde_json::to_string(f).expect("serializable"))?;
                }
            }
            OutputFormat::Csv => {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    s.suite, s.instances, s.failures, s.skipped, s.max_deviation, elapsed_ms
                )?;
                for f in &outcome.failures {
                    writeln!(out, "# {}", serde_json::to_string(f).expect("serializable"))?;
                }
            }
        }
        out.flush()?;
        failed |= !outcome.passed();
    }
    Ok(if failed { EXIT_VERIFY } else { 0 })
}
