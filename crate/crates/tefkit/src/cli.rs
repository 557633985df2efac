//! The `tefkit` command line.
//!
//! Results (allocations, reports, search statistics) go to stdout or
//! `--out` as canonical JSON; one-line summaries go to stderr. Exit codes:
//! 0 success / property holds / found, 1 property fails / nothing found,
//! 2 bad input, 3 budget or enumeration limit, 4 internal error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use tefkit_core::algorithms::{self, AutoOutcome, SolverTrace};
use tefkit_core::fairness::{self, FairnessRelation, PMean, Relation, Scope};
use tefkit_core::gadgets::{self, GadgetParams, RandomSpec};
use tefkit_core::search::{self, Mode, Outcome, SearchQuery, Target, DEFAULT_BUDGET};
use tefkit_core::{rational, Allocation, Error, Instance, Kind};

use crate::json;
use crate::parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "tefkit", version, about = "Temporal EF1 allocation: solve, check, search, build gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a TEF1 allocation with one of the polynomial-time algorithms.
    Solve(SolveArgs),
    /// Check a fairness, efficiency or welfare property of an allocation.
    Check(CheckArgs),
    /// Exhaustive search for allocations with a temporal property.
    Search(SearchArgs),
    /// Build a reduction gadget from a formula or multiset.
    Gadget(GadgetArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Report which restricted classes an instance belongs to.
    Detect(DetectArgs),
}

#[derive(Args, Debug)]
struct Source {
    /// Instance JSON file (`-` for stdin).
    #[arg(long = "in", value_name = "FILE", required_unless_present = "corpus", conflicts_with = "corpus")]
    input: Option<PathBuf>,
    /// Built-in instance, e.g. `appendixA_goods_23` or `prop42_chores(3)`.
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON result here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Auto,
    TwoAgentGoods,
    TwoAgentChores,
    TwoTypes,
    GenBinary,
    Unimodal,
    TwoRounds,
    Mixed,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "auto")]
    algo: Algo,
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    output: Output,
    /// Write the window trace of a two-agent solver here.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Node budget for the search fallback of `--algo auto`.
    #[arg(long, env = "TEFKIT_BUDGET")]
    budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    Tef1,
    Tefx,
    Ef1,
    Efx,
    Ef,
    Po,
    Pmean,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    property: Property,
    /// p for `pmean`: a rational, `0` for Nash welfare or `neg-inf`.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[command(flatten)]
    source: Source,
    /// Allocation JSON file.
    #[arg(long, value_name = "FILE")]
    alloc: PathBuf,
    /// Largest number of allocations the Pareto check may enumerate.
    #[arg(long)]
    po_limit: Option<u128>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Tef1,
    Tefx,
    Tef1po,
    Repetitive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    First,
    All,
    Count,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value = "tef1")]
    target: TargetArg,
    #[arg(long, default_value = "first")]
    mode: ModeArg,
    #[command(flatten)]
    source: Source,
    /// Fixed allocation of the first rounds to extend.
    #[arg(long, value_name = "FILE")]
    from_partial: Option<PathBuf>,
    #[arg(long, env = "TEFKIT_BUDGET")]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Count one representative per agent relabelling on identical valuations.
    #[arg(long)]
    symmetry_breaking: bool,
    #[arg(long)]
    po_limit: Option<u128>,
    /// Include `wall_time_ms` in the JSON (makes the output run-dependent).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reduction {
    #[value(name = "1in3sat-goods")]
    OneInThreeGoods,
    PartitionChores,
    #[value(name = "1in3sat-po-goods")]
    OneInThreePoGoods,
    #[value(name = "1in3sat-po-chores")]
    OneInThreePoChores,
    MultiwayGoods,
    MultiwayChores,
}

#[derive(Args, Debug)]
struct GadgetArgs {
    #[arg(long)]
    reduction: Reduction,
    /// Formula JSON (`{"vars", "clauses"}`) or multiset JSON (`{"values", "kappa"}`).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long)]
    epsilon: Option<String>,
    /// For `partition-chores`: also write the fixed prefix allocation here.
    #[arg(long, value_name = "FILE")]
    partial_out: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    agents: usize,
    #[arg(long)]
    rounds: usize,
    #[arg(long, default_value_t = 1)]
    per_round: usize,
    /// g, c or m (or goods, chores, mixed).
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    low: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    high: i64,
    /// Values are multiples of 1/denominator.
    #[arg(long, default_value_t = 1)]
    denominator: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    output: Output,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    Kind::from_name(s).ok_or_else(|| format!("unknown kind {s:?}; expected g, c or m"))
}

/// An error with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::EnumerationCap { .. } | Error::Budget { .. } => EXIT_RESOURCE,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) }
}

type Exit = Result<i32, Failure>;

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn note(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.stderr, "{msg}");
    }

    fn emit(&mut self, out: &Output, value: &Value) -> Result<(), Failure> {
        write_json(out.out.as_deref(), value, self.stdout)
    }
}

fn write_json(path: Option<&Path>, value: &Value, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = json::to_canonical(value);
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| io_failure(p, e)),
        _ => stdout.write_all(text.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map_err(|e| io_failure(path, e))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    }
    Ok(json::parse(&text, &path.display().to_string())?)
}

fn load_instance(source: &Source) -> Result<Instance, Failure> {
    if let Some(name) = &source.corpus {
        return Ok(gadgets::corpus_instance(name)?.instance);
    }
    let path = source.input.as_deref().expect("clap requires --in or --corpus");
    let v = read_json(path)?;
    json::instance_from_json(&v).map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })
}

fn load_allocation(path: &Path) -> Result<Allocation, Failure> {
    let v = read_json(path)?;
    json::allocation_from_json(&v)
        .map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdout, stderr };
    let result = match cli.command {
        Command::Solve(a) => solve(a, &mut io),
        Command::Check(a) => check(a, &mut io),
        Command::Search(a) => search_cmd(a, &mut io),
        Command::Gadget(a) => gadget(a, &mut io),
        Command::Gen(a) => gen(a, &mut io),
        Command::Detect(a) => detect(a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            io.note(format!("error: {}", f.message));
            f.code
        }
    }
}

fn solve(a: SolveArgs, io: &mut Io<'_>) -> Exit {
    if a.trace.is_some() && !matches!(a.algo, Algo::TwoAgentGoods | Algo::TwoAgentChores) {
        return Err(Failure {
            code: EXIT_INPUT,
            message: "--trace is only available with --algo two-agent-goods or two-agent-chores".into(),
        });
    }
    let instance = load_instance(&a.source)?;
    let mut trace: Option<SolverTrace> = None;
    let (allocation, solver) = match a.algo {
        Algo::Auto => match algorithms::solve_auto_with_budget(&instance, a.budget.unwrap_or(DEFAULT_BUDGET))? {
            AutoOutcome::Solved { allocation, solver } => (allocation, solver),
            AutoOutcome::NoTef1 { nodes_explored } => {
                io.note(format!("no TEF1 allocation exists ({nodes_explored} nodes explored)"));
                let stats = serde_json::json!({ "outcome": "none", "nodes_explored": nodes_explored });
                io.emit(&a.output, &stats)?;
                return Ok(EXIT_NEGATIVE);
            }
        },
        Algo::TwoAgentGoods => {
            let (alloc, t) = algorithms::solve_two_agent_goods(&instance)?;
            trace = Some(t);
            (alloc, "two-agent-goods")
        }
        Algo::TwoAgentChores => {
            let (alloc, t) = algorithms::solve_two_agent_chores(&instance)?;
            trace = Some(t);
            (alloc, "two-agent-chores")
        }
        Algo::TwoTypes => {
            let types = algorithms::detect_class(&instance).two_types.ok_or_else(|| {
                Failure::from(Error::Class {
                    solver: "two-types",
                    reason: "more than two distinct item value vectors".into(),
                })
            })?;
            (algorithms::solve_two_types(&instance, &types)?, "two-types")
        }
        Algo::GenBinary => (algorithms::solve_generalized_binary(&instance)?, "gen-binary"),
        Algo::Unimodal => (algorithms::solve_unimodal(&instance)?, "unimodal"),
        Algo::TwoRounds => (algorithms::solve_two_rounds(&instance)?, "two-rounds"),
        Algo::Mixed => (algorithms::solve_mixed_two_agent(&instance)?, "two-agent-mixed"),
    };
    if !fairness::is_tef1(&instance, &allocation)? {
        return Err(Error::Internal(format!("{solver} returned an allocation that is not TEF1")).into());
    }
    if let (Some(path), Some(t)) = (&a.trace, &trace) {
        write_json(Some(path), &json::trace_to_json(t), io.stdout)?;
    }
    io.emit(&a.output, &json::allocation_to_json(&allocation))?;
    io.note(format!("solved with {solver}"));
    Ok(EXIT_OK)
}

fn check(a: CheckArgs, io: &mut Io<'_>) -> Exit {
    let instance = load_instance(&a.source)?;
    let allocation = load_allocation(&a.alloc)?;
    let temporal = |relation| FairnessRelation { relation, scope: Scope::Temporal };
    let last = |relation| FairnessRelation { relation, scope: Scope::Final };
    let (relation, label) = match a.property {
        Property::Tef1 => (temporal(Relation::Ef1), "TEF1"),
        Property::Tefx => (temporal(Relation::Efx), "TEFX"),
        Property::Ef1 => (last(Relation::Ef1), "EF1"),
        Property::Efx => (last(Relation::Efx), "EFX"),
        Property::Ef => (last(Relation::Ef), "EF"),
        Property::Po => {
            let holds = fairness::is_pareto_optimal(&instance, &allocation, a.po_limit)?;
            io.emit(&a.output, &serde_json::json!({ "holds": holds, "witness": null }))?;
            io.note(format!("PO {}", if holds { "holds" } else { "fails" }));
            return Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE });
        }
        Property::Pmean => {
            let text = a.p.as_deref().ok_or_else(|| Failure { code: EXIT_INPUT, message: "pmean needs --p".into() })?;
            let p = PMean::parse(text)?;
            let w = fairness::p_mean_welfare(&instance, &allocation, &p)?;
            let label = match &p {
                PMean::Finite(q) => rational::format(q),
                PMean::NashLimit => "0".into(),
                PMean::NegInfinity => "neg-inf".into(),
            };
            let value = json::welfare_to_json(&label, &w);
            io.emit(&a.output, &value)?;
            match &w {
                fairness::Welfare::Exact(v) => {
                    io.note(format!("p-mean welfare (p = {label}): {}", rational::format(v)))
                }
                fairness::Welfare::Bounds { lower, upper } => io.note(format!(
                    "p-mean welfare (p = {label}) lies in [{}, {}]",
                    rational::format(lower),
                    rational::format(upper)
                )),
            }
            return Ok(EXIT_OK);
        }
    };
    let report = fairness::check(&instance, &allocation, relation)?;
    io.emit(&a.output, &json::report_to_json(&report))?;
    match &report.witness {
        None => io.note(format!("{label} holds")),
        Some(w) => {
            io.note(format!("{label} fails at round {}: agent {} envies agent {}", w.round, w.envious, w.envied))
        }
    }
    Ok(if report.holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn search_cmd(a: SearchArgs, io: &mut Io<'_>) -> Exit {
    let instance = load_instance(&a.source)?;
    let target = match a.target {
        TargetArg::Tef1 => Target::Tef1,
        TargetArg::Tefx => Target::Tefx,
        TargetArg::Tef1po => Target::Tef1AndPo,
        TargetArg::Repetitive => Target::RepetitiveTef1,
    };
    let mode = match a.mode {
        ModeArg::First => Mode::First,
        ModeArg::All => Mode::All,
        ModeArg::Count => Mode::Count,
    };
    let mut query = SearchQuery::new(target, mode)
        .with_budget(a.budget.unwrap_or(DEFAULT_BUDGET))
        .with_symmetry_breaking(a.symmetry_breaking);
    query.po_limit = a.po_limit;
    let partial = a.from_partial.as_deref().map(load_allocation).transpose()?;
    let started = Instant::now();
    let plan = search::plan(&instance, &query, partial.as_ref())?;
    let result = parallel::run_plan(&plan, a.threads.max(1));
    let elapsed = started.elapsed();
    let value = json::search_result_to_json(&query, &result, a.timing.then_some(elapsed.as_millis()));
    io.emit(&a.output, &value)?;
    io.note(format!(
        "{}: {} {} allocation(s), {} nodes, {:.3} s",
        target.name(),
        json::outcome_name(result.outcome),
        result.count,
        result.nodes_explored,
        elapsed.as_secs_f64()
    ));
    Ok(match result.outcome {
        Outcome::Found => EXIT_OK,
        Outcome::None => EXIT_NEGATIVE,
        Outcome::BudgetExceeded | Outcome::Cancelled => EXIT_RESOURCE,
    })
}

fn gadget(a: GadgetArgs, io: &mut Io<'_>) -> Exit {
    let source = read_json(&a.input)?;
    let in_source = |e: Error| Failure { code: EXIT_INPUT, message: format!("{}: {e}", a.input.display()) };
    let params = GadgetParams { epsilon: a.epsilon.as_deref().map(rational::parse).transpose()? };
    let no_epsilon = || {
        if params.epsilon.is_some() {
            Err(Failure { code: EXIT_INPUT, message: "this reduction takes no --epsilon".into() })
        } else {
            Ok(())
        }
    };
    let mut partial = None;
    let built = match a.reduction {
        Reduction::OneInThreeGoods => {
            no_epsilon()?;
            gadgets::gadget_1in3sat_goods_tef1(&json::formula_from_json(&source).map_err(in_source)?)
        }
        Reduction::OneInThreePoGoods | Reduction::OneInThreePoChores => {
            let kind = if matches!(a.reduction, Reduction::OneInThreePoGoods) { Kind::Goods } else { Kind::Chores };
            gadgets::gadget_1in3sat_tef1_po(&json::formula_from_json(&source).map_err(in_source)?, kind, &params)?
        }
        Reduction::PartitionChores => {
            let g =
                gadgets::gadget_partition_chores_tef1(&json::multiset_from_json(&source).map_err(in_source)?, &params)?;
            partial = Some(g.partial);
            g.gadget
        }
        Reduction::MultiwayGoods | Reduction::MultiwayChores => {
            no_epsilon()?;
            let kind = if matches!(a.reduction, Reduction::MultiwayGoods) { Kind::Goods } else { Kind::Chores };
            gadgets::gadget_multiway_repeated(&json::multiset_from_json(&source).map_err(in_source)?, kind)?
        }
    };
    match (&a.partial_out, &partial) {
        (Some(path), Some(p)) => write_json(Some(path), &json::allocation_to_json(p), io.stdout)?,
        (Some(_), None) => {
            return Err(Failure { code: EXIT_INPUT, message: "--partial-out only applies to partition-chores".into() })
        }
        _ => {}
    }
    io.emit(&a.output, &json::instance_to_json(&built.instance, Some(&built.provenance), partial.as_ref()))?;
    for note in &built.provenance.notes {
        io.note(format!("note: {note}"));
    }
    io.note(format!(
        "{}: {} agents, {} items",
        built.provenance.reduction,
        built.instance.n_agents(),
        built.instance.n_items()
    ));
    Ok(EXIT_OK)
}

fn gen(a: GenArgs, io: &mut Io<'_>) -> Exit {
    let mut spec = RandomSpec::new(a.agents, a.rounds, a.per_round, a.kind, a.seed).with_range(a.low, a.high);
    spec.denominator = a.denominator;
    let instance = gadgets::gen_random(&spec)?;
    io.emit(&a.output, &json::instance_to_json(&instance, None, None))?;
    Ok(EXIT_OK)
}

fn detect(a: DetectArgs, io: &mut Io<'_>) -> Exit {
    let instance = load_instance(&a.source)?;
    let report = algorithms::detect_class(&instance);
    io.emit(&a.output, &json::class_report_to_json(&report))?;
    Ok(EXIT_OK)
}
