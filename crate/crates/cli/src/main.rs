//! `ttl`: command-line front-end for formulas, maps, episodes and
//! experiments.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ttl_core::agents::{
    load_checkpoint, save_checkpoint, train, A2CHyper, AgentError, LinearA2C, TaskMix, TrainConfig,
};
use ttl_core::gridworld::{
    generate_bcm, generate_map, load_map, save_map, GridError, GridMap, ObjectCatalog, ObjectId,
    SplitPreset,
};
use ttl_core::harness::{
    complex_corpus, eval_bcm, eval_formulas, master_seed_from_env, read_csv, render_table, to_csv,
    AgentSpec, BcmMode, BcmPolarity, ExperimentConfig, HarnessError, COMPLEX_OBJECTS,
};
use ttl_core::ltl::{ltlf_satisfies, translate_strict, translate_tau1, translate_tau2, LtlError};
use ttl_core::seed::{sub_seed, STREAM_EVAL_AGENT, STREAM_EVAL_MAP};
use ttl_core::symbolic::{extract, run_sm, EpisodeConfig, SymbolicError};
use ttl_core::ttl::{parse_ttl, ttl_satisfies, Alphabet, AtomName, Trace, TtlError, TtlFormula};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "ttl",
    version,
    about = "Task Temporal Logic toolkit for a crafting gridworld"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it in canonical form.
    Parse {
        formula: String,
        /// Expand concurrency into sequences and choices first.
        #[arg(long)]
        expand: bool,
    },
    /// Translate a formula to LTLf.
    Translate {
        formula: String,
        #[arg(long, value_enum, default_value_t = Scheme::Tau1)]
        scheme: Scheme,
        /// Comma-separated alphabet; defaults to the atoms of the formula.
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Check a trace file (one instant per line, `-` for none) against a formula.
    Check {
        formula: String,
        trace: PathBuf,
        /// Also report the LTLf verdicts of the translations.
        #[arg(long)]
        ltl: bool,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Print the task matrix of a formula, one list per line.
    Extract { formula: String },
    /// Generate map files.
    GenMaps(GenMapsArgs),
    /// Run one episode and print its log.
    Run(RunArgs),
    /// Evaluate an agent on binary choice maps.
    EvalBcm(EvalBcmArgs),
    /// Evaluate an agent on the complex instruction suite.
    EvalComplex(EvalComplexArgs),
    /// Train the linear actor-critic agent.
    Train(TrainArgs),
    /// Print result CSV files as an aligned table.
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Print the merged CSV instead of the table.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Scheme {
    Tau1,
    Tau2,
    Strict,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AgentName {
    Random,
    Oracle,
    A2c,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Split {
    Small,
    Medium,
    Large,
}

impl From<Split> for SplitPreset {
    fn from(s: Split) -> Self {
        match s {
            Split::Small => SplitPreset::Small,
            Split::Medium => SplitPreset::Medium,
            Split::Large => SplitPreset::Large,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Reliable,
    Deceptive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Polarity {
    Positive,
    Negative,
    ChoiceFirst,
    ChoiceSecond,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Objects {
    Train,
    Test,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mix {
    Pos,
    All,
}

#[derive(Args, Debug)]
struct SeedArg {
    /// Master seed; falls back to TTL_SEED, then 1.
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedArg {
    fn resolve(&self) -> u64 {
        self.seed
            .unwrap_or_else(|| master_seed_from_env(DEFAULT_SEED))
    }
}

#[derive(Args, Debug)]
struct AgentArgs {
    #[arg(long, value_enum, default_value_t = AgentName::Oracle)]
    agent: AgentName,
    /// Checkpoint for `--agent a2c`.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenMapsArgs {
    /// Formula the maps must be solvable for.
    #[arg(long, conflicts_with = "bcm", required_unless_present = "bcm")]
    formula: Option<String>,
    /// Binary choice maps: `VALID,DECOY`.
    #[arg(long)]
    bcm: Option<String>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 8)]
    objects: usize,
    #[arg(long, value_enum, default_value_t = Split::Medium)]
    split: Split,
    /// Which half of the split placed objects come from.
    #[arg(long, value_enum, default_value_t = Objects::Test)]
    from: Objects,
    /// Directory for `map-NNNN.txt` files; maps go to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args, Debug)]
struct RunArgs {
    formula: String,
    /// Map file; a map is generated from the seed otherwise.
    #[arg(long)]
    map: Option<PathBuf>,
    #[command(flatten)]
    agent: AgentArgs,
    #[arg(long, default_value_t = EpisodeConfig::COMPLEX_CAP)]
    step_cap: usize,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    consume_wrong: bool,
    #[arg(long, default_value_t = 8)]
    objects: usize,
    #[arg(long, value_enum, default_value_t = Split::Medium)]
    split: Split,
    /// Write the episode log here and the summary to stdout.
    #[arg(long)]
    log: Option<PathBuf>,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    agent: AgentArgs,
    #[arg(long, default_value_t = 500)]
    maps: usize,
    #[arg(long, default_value_t = 3)]
    runs: usize,
    #[arg(long, value_enum, default_value_t = Split::Medium)]
    split: Split,
    #[arg(long)]
    step_cap: Option<usize>,
    #[arg(long)]
    offset: Option<u32>,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    consume_wrong: bool,
    /// Write CSV here; the table goes to stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args, Debug)]
struct EvalBcmArgs {
    #[command(flatten)]
    eval: EvalArgs,
    #[arg(long, value_enum, default_value_t = Mode::Reliable)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Polarity::Positive)]
    polarity: Polarity,
}

#[derive(Args, Debug)]
struct EvalComplexArgs {
    #[command(flatten)]
    eval: EvalArgs,
    /// Extra instruction to evaluate instead of the bundled suite (repeatable).
    #[arg(long = "instruction")]
    instructions: Vec<String>,
    #[arg(long, default_value_t = COMPLEX_OBJECTS)]
    objects: usize,
}

#[derive(Args, Debug)]
struct TrainArgs {
    #[arg(long, default_value_t = 100_000)]
    steps: u64,
    #[arg(long, default_value_t = 3)]
    objects: usize,
    #[arg(long, value_enum, default_value_t = Split::Medium)]
    split: Split,
    #[arg(long, value_enum, default_value_t = Mix::Pos)]
    mix: Mix,
    #[arg(long, default_value_t = EpisodeConfig::SUBTASK_CAP)]
    step_cap: usize,
    #[arg(long, default_value_t = 1000)]
    window: usize,
    /// Where to write the checkpoint.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the learning curve CSV; stdout otherwise.
    #[arg(long)]
    curve: Option<PathBuf>,
    #[command(flatten)]
    seed: SeedArg,
}

/// Failure with its exit code.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Format(String),
    Infeasible(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Format(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Format(m) | CliError::Infeasible(m) => m,
        }
    }
}

impl From<TtlError> for CliError {
    fn from(e: TtlError) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<LtlError> for CliError {
    fn from(e: LtlError) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        match e {
            GridError::Infeasible(_) => CliError::Infeasible(e.to_string()),
            _ => CliError::Format(e.to_string()),
        }
    }
}

impl From<SymbolicError> for CliError {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::Grid(g) => g.into(),
            other => CliError::Format(other.to_string()),
        }
    }
}

impl From<AgentError> for CliError {
    fn from(e: AgentError) -> Self {
        match e {
            AgentError::Grid(g) => g.into(),
            AgentError::Symbolic(s) => s.into(),
            other => CliError::Format(other.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Grid(g) => g.into(),
            HarnessError::Symbolic(s) => s.into(),
            HarnessError::InsufficientObjects { .. } => CliError::Infeasible(e.to_string()),
            HarnessError::NoRuns | HarnessError::BadOffset(_) => CliError::Usage(e.to_string()),
            other => CliError::Format(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn formula(text: &str) -> CliResult<TtlFormula> {
    Ok(parse_ttl(text).map_err(TtlError::from)?)
}

fn alphabet(f: &TtlFormula, list: Option<&str>) -> CliResult<Alphabet> {
    match list {
        Some(list) => {
            let names: Vec<&str> = list.split(',').map(str::trim).collect();
            Ok(Alphabet::parse_list(&names)?)
        }
        None => Ok(Alphabet::new(f.atoms())),
    }
}

fn agent_spec(args: &AgentArgs) -> CliResult<AgentSpec> {
    match (args.agent, &args.checkpoint) {
        (AgentName::Random, _) => Ok(AgentSpec::Random),
        (AgentName::Oracle, _) => Ok(AgentSpec::Oracle),
        (AgentName::A2c, Some(path)) => {
            Ok(AgentSpec::A2C(Box::new(load_checkpoint(&read(path)?)?)))
        }
        (AgentName::A2c, None) => Err(CliError::Usage(
            "--agent a2c needs --checkpoint FILE".into(),
        )),
    }
}

fn object_pool(split: Split, from: Objects) -> Vec<ObjectId> {
    let catalog = ObjectCatalog::preset(split.into());
    match from {
        Objects::Train => catalog.train,
        Objects::Test => catalog.test,
    }
}

fn object(name: &str) -> CliResult<ObjectId> {
    let atom = AtomName::new(name.trim())?;
    Ok(ObjectId::from_atom(&atom)?)
}

fn cmd_parse(text: &str, expand: bool) -> CliResult<String> {
    let f = formula(text)?;
    let f = if expand { f.expand_concurrent() } else { f };
    Ok(format!("{f}\n"))
}

fn cmd_translate(text: &str, scheme: Scheme, list: Option<&str>) -> CliResult<String> {
    let f = formula(text)?.expand_concurrent();
    let sigma = alphabet(&f, list)?;
    let ltl = match scheme {
        Scheme::Tau1 => translate_tau1(&f, &sigma)?,
        Scheme::Tau2 => translate_tau2(&f, &sigma)?,
        Scheme::Strict => translate_strict(&f, &sigma)?,
    };
    Ok(format!("{ltl}\n"))
}

fn cmd_check(text: &str, trace: &Path, ltl: bool, list: Option<&str>) -> CliResult<String> {
    let f = formula(text)?.expand_concurrent();
    let trace = Trace::parse_text(&read(trace)?)?;
    let mut out = format!("ttl {}\n", ttl_satisfies(&trace, &f)?);
    if ltl {
        let sigma = alphabet(&f, list)?;
        let tau1 = ltlf_satisfies(&trace, 0, &translate_tau1(&f, &sigma)?)?;
        let tau2 = ltlf_satisfies(
            &trace,
            0,
            &ttl_core::ltl::LtlFormula::eventually(translate_tau2(&f, &sigma)?),
        )?;
        let strict = ltlf_satisfies(&trace, 0, &translate_strict(&f, &sigma)?)?;
        out += &format!("tau1 {tau1}\neventually-tau2 {tau2}\nstrict {strict}\n");
    }
    Ok(out)
}

fn cmd_extract(text: &str) -> CliResult<String> {
    let matrix = extract(&formula(text)?.expand_concurrent())?;
    Ok(format!("{}\n", matrix.to_string().trim_end()))
}

fn generated_map(
    args_formula: &TtlFormula,
    pool: &[ObjectId],
    objects: usize,
    seed: u64,
    i: u64,
) -> CliResult<GridMap> {
    let matrix = extract(&args_formula.expand_concurrent())?;
    Ok(generate_map(
        pool,
        &matrix,
        objects,
        sub_seed(seed, STREAM_EVAL_MAP, i),
    )?)
}

fn cmd_gen_maps(args: &GenMapsArgs) -> CliResult<String> {
    let seed = args.seed.resolve();
    let pool = object_pool(args.split, args.from);
    let mut maps = Vec::with_capacity(args.count);
    for i in 0..args.count as u64 {
        let map = match (&args.formula, &args.bcm) {
            (Some(text), _) => generated_map(&formula(text)?, &pool, args.objects, seed, i)?,
            (None, Some(pair)) => {
                let (valid, decoy) = pair
                    .split_once(',')
                    .ok_or_else(|| CliError::Usage("--bcm expects VALID,DECOY".into()))?;
                generate_bcm(
                    object(valid)?,
                    object(decoy)?,
                    sub_seed(seed, STREAM_EVAL_MAP, i),
                )?
            }
            (None, None) => return Err(CliError::Usage("give --formula or --bcm".into())),
        };
        maps.push(save_map(&map));
    }
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
            for (i, text) in maps.iter().enumerate() {
                write(&dir.join(format!("map-{i:04}.txt")), text)?;
            }
            Ok(format!("wrote {} maps to {}\n", maps.len(), dir.display()))
        }
        None => Ok(maps.join("\n")),
    }
}

/// Returns (stdout, stderr).
fn cmd_run(args: &RunArgs) -> CliResult<(String, String)> {
    let seed = args.seed.resolve();
    let f = formula(&args.formula)?;
    let map = match &args.map {
        Some(path) => load_map(&read(path)?)?,
        None => generated_map(
            &f,
            &object_pool(args.split, Objects::Test),
            args.objects,
            seed,
            0,
        )?,
    };
    let spec = agent_spec(&args.agent)?;
    let mut policy = spec.instantiate();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, STREAM_EVAL_AGENT, 0));
    let config = EpisodeConfig {
        step_cap: args.step_cap,
        consume_wrong: args.consume_wrong,
    };
    let result = run_sm(&f, map, policy.as_mut(), &config, &mut rng)?;
    let summary = format!("{}\n", result.summary());
    match &args.log {
        Some(path) => {
            write(path, &result.log_csv())?;
            Ok((summary, String::new()))
        }
        None => Ok((result.log_csv(), summary)),
    }
}

fn experiment(args: &EvalArgs, complex: bool) -> CliResult<ExperimentConfig> {
    let spec = agent_spec(&args.agent)?;
    let seed = args.seed.resolve();
    let mut cfg = if complex {
        ExperimentConfig::complex(spec, args.maps, seed)
    } else {
        ExperimentConfig::new(spec, args.maps, seed)
    };
    cfg.split = args.split.into();
    cfg.runs = args.runs;
    cfg.consume_wrong = args.consume_wrong;
    if let Some(cap) = args.step_cap {
        cfg.step_cap = cap;
    }
    if let Some(offset) = args.offset {
        cfg.offset = offset;
    }
    Ok(cfg)
}

fn emit_rows(rows: &[ttl_core::harness::ResultRow], csv: Option<&Path>) -> CliResult<String> {
    if let Some(path) = csv {
        write(path, &to_csv(rows)?)?;
    }
    Ok(render_table(rows))
}

fn cmd_eval_bcm(args: &EvalBcmArgs) -> CliResult<String> {
    let cfg = experiment(&args.eval, false)?;
    let mode = match args.mode {
        Mode::Reliable => BcmMode::Reliable,
        Mode::Deceptive => BcmMode::Deceptive,
    };
    let polarity = match args.polarity {
        Polarity::Positive => BcmPolarity::Positive,
        Polarity::Negative => BcmPolarity::Negative,
        Polarity::ChoiceFirst => BcmPolarity::ChoiceFirst,
        Polarity::ChoiceSecond => BcmPolarity::ChoiceSecond,
    };
    let e = eval_bcm(&cfg, mode, polarity)?;
    emit_rows(&[e.row], args.eval.csv.as_deref())
}

fn cmd_eval_complex(args: &EvalComplexArgs) -> CliResult<String> {
    let cfg = experiment(&args.eval, true)?;
    let formulas = if args.instructions.is_empty() {
        complex_corpus()
    } else {
        args.instructions
            .iter()
            .map(|t| Ok((t.clone(), formula(t)?)))
            .collect::<CliResult<Vec<_>>>()?
    };
    let rows: Vec<_> = eval_formulas(&cfg, &formulas, args.objects)?
        .into_iter()
        .map(|e| e.row)
        .collect();
    emit_rows(&rows, args.eval.csv.as_deref())
}

fn cmd_train(args: &TrainArgs) -> CliResult<(String, String)> {
    let seed = args.seed.resolve();
    let mut cfg = TrainConfig::new(object_pool(args.split, Objects::Train), args.steps, seed);
    cfg.n_objects = args.objects..=args.objects;
    cfg.mix = match args.mix {
        Mix::Pos => TaskMix::PosOnly,
        Mix::All => TaskMix::All,
    };
    cfg.episode.step_cap = args.step_cap;
    cfg.window_episodes = args.window;
    let mut agent = LinearA2C::new(A2CHyper::default(), seed);
    let report = train(&mut agent, &cfg)?;
    if let Some(path) = &args.out {
        write(path, &save_checkpoint(&agent))?;
    }
    let summary = format!(
        "trained {} steps over {} episodes; final window mean reward {}\n",
        report.steps,
        report.episodes,
        report
            .curve
            .last()
            .map_or("n/a".to_string(), |p| format!("{:.3}", p.mean_reward))
    );
    match &args.curve {
        Some(path) => {
            write(path, &report.curve_csv())?;
            Ok((summary, String::new()))
        }
        None => Ok((report.curve_csv(), summary)),
    }
}

fn cmd_report(files: &[PathBuf], csv: bool) -> CliResult<String> {
    let mut rows = Vec::new();
    for path in files {
        rows.extend(read_csv(&read(path)?)?);
    }
    if csv {
        Ok(to_csv(&rows)?)
    } else {
        Ok(render_table(&rows))
    }
}

fn dispatch(command: &Command) -> CliResult<(String, String)> {
    let out = |s: String| (s, String::new());
    Ok(match command {
        Command::Parse { formula, expand } => out(cmd_parse(formula, *expand)?),
        Command::Translate {
            formula,
            scheme,
            alphabet,
        } => out(cmd_translate(formula, *scheme, alphabet.as_deref())?),
        Command::Check {
            formula,
            trace,
            ltl,
            alphabet,
        } => out(cmd_check(formula, trace, *ltl, alphabet.as_deref())?),
        Command::Extract { formula } => out(cmd_extract(formula)?),
        Command::GenMaps(args) => out(cmd_gen_maps(args)?),
        Command::Run(args) => cmd_run(args)?,
        Command::EvalBcm(args) => out(cmd_eval_bcm(args)?),
        Command::EvalComplex(args) => out(cmd_eval_complex(args)?),
        Command::Train(args) => cmd_train(args)?,
        Command::Report { files, csv } => out(cmd_report(files, *csv)?),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((stdout, stderr)) => {
            print!("{stdout}");
            eprint!("{stderr}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
