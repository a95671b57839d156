use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use furstenberg_core::systems::{ActionKind, FiniteConfig};
use furstenberg_core::zshift::WordPattern;

mod analysis;
mod error;
mod qexpr;
mod repro;
mod sample;
mod scenario;
mod report;

use error::{CliError, CliResult};
use report::{Finding, Report};
use scenario::{load_code, load_coding, load_group, load_oracle, read_yaml, CandidateFile, FunctionFile};

#[derive(Parser)]
#[command(name = "furstenberg", version, about = "Furstenberg systems, block codes and rotation codings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Print the structured report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Also write each report as JSON into this directory
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Threads for batches of independent reproductions
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Seed for randomized sampling; never changes a verdict
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time in reports
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Finite groups
    #[command(subcommand)]
    Group(GroupCmd),
    /// Finite orbit systems
    #[command(subcommand)]
    System(SystemCmd),
    /// Codings of an irrational rotation
    #[command(subcommand)]
    Rotation(RotationCmd),
    /// Sequences over the integers
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Sliding block codes
    #[command(subcommand)]
    Code(CodeCmd),
    /// Recurrence witness searches
    #[command(subcommand)]
    Recur(RecurCmd),
    /// Reproduce a worked example: an id, `list` or `all`
    Repro { id: String },
    /// Print a built-in group, coding or code as a scenario file
    Fixture { name: String },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Structure and Dedekind verdict of a group file or catalog group
    Analyze { group: String },
}

#[derive(Args)]
struct FunctionArgs {
    /// Catalog name (Z1..Z8, Z2xZ2, Z2xZ4, Z2^3, S3, D4, Q8) or group file
    #[arg(long)]
    group: String,
    /// Values in element order, e.g. 0,1,0,1
    #[arg(long, conflicts_with = "function")]
    values: Option<String>,
    /// Function file with `values: [...]`
    #[arg(long)]
    function: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SystemCmd {
    /// Build an orbit system
    Build {
        #[command(flatten)]
        f: FunctionArgs,
        /// R, L, Ltilde or anti
        #[arg(long, default_value = "R")]
        mode: String,
    },
    /// Equivariant isomorphism between two orbit systems of the same function
    Iso {
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long, default_value = "R")]
        left: String,
        #[arg(long, default_value = "Ltilde")]
        right: String,
    },
    /// Whether an orbit system is a Furstenberg system of the function
    Furstenberg {
        #[command(flatten)]
        f: FunctionArgs,
        #[arg(long, default_value = "R")]
        mode: String,
        /// Check the anti-action law instead of the action law
        #[arg(long)]
        anti_law: bool,
    },
    /// Uniqueness over randomly sampled (group, partition) pairs
    Sample {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum RotationCmd {
    /// Minimality of the coding and of each colour class
    Classify { coding: PathBuf },
    /// Locus and class of one word
    Word {
        coding: PathBuf,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Orbit visits to cell endpoints
    Boundary { coding: PathBuf },
}

#[derive(Args)]
struct WordArgs {
    /// Symbols, as digits (122) or comma-separated
    #[arg(long)]
    word: String,
    /// Offsets, comma-separated; defaults to 0, 1, ...
    #[arg(long, allow_hyphen_values = true)]
    offsets: Option<String>,
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Evaluate on [lo, hi]
    Window {
        oracle: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = -20)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 20)]
        hi: i64,
    },
    /// Occurrences of a word on [-N, N]
    Occur {
        oracle: PathBuf,
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
    /// Uniform-recurrence certificate for the initial words
    Recur {
        oracle: PathBuf,
        #[arg(long, default_value_t = 8)]
        length: usize,
        #[arg(long, default_value_t = 10_000)]
        window: i64,
        #[arg(long, default_value_t = 1000)]
        gap: u64,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Evaluate the image of an oracle on [lo, hi]
    Apply {
        code: PathBuf,
        oracle: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = -20)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 20)]
        hi: i64,
    },
    /// Whether the code maps SOURCE onto TARGET on [-N, N]
    Verify {
        code: PathBuf,
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        window: i64,
    },
    /// Whether the shifts of the code separate the orbit closure
    Separate {
        code: PathBuf,
        oracle: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
    /// Search a code realizing A from B and separating B's orbit closure
    Search {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_span: i64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
    /// Compare intersection patterns of two sets
    Patterns {
        a: PathBuf,
        b: PathBuf,
        /// Shift set, comma-separated
        #[arg(long, allow_hyphen_values = true, default_value = "0,1")]
        shifts: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
}

#[derive(Subcommand)]
enum RecurCmd {
    /// A colour class meeting its translate by some candidate
    Chromatic {
        candidates: PathBuf,
        /// Colouring of the integers
        #[arg(required_unless_present = "group")]
        oracle: Option<PathBuf>,
        /// Colour a finite group instead
        #[arg(long, requires = "values")]
        group: Option<String>,
        #[arg(long)]
        values: Option<String>,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
    /// A return h, h + g of a set for some candidate g
    Syndetic {
        candidates: PathBuf,
        oracle: PathBuf,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
    /// Witness pairs on Z3 x B for the given elements
    Eqtech {
        candidates: PathBuf,
        #[arg(long, default_value_t = 8)]
        support_bound: u32,
        #[arg(long, default_value_t = 6)]
        search_bound: u32,
    },
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| CliError::input(format!("bad {what} {s:?}"))))
        .collect()
}

fn parse_symbols(text: &str) -> CliResult<Vec<u32>> {
    if text.contains(',') {
        parse_list(text, "symbol")
    } else {
        text.chars().map(|c| c.to_digit(10).ok_or_else(|| CliError::input(format!("bad symbol {c:?}")))).collect()
    }
}

fn word_of(args: &WordArgs) -> CliResult<WordPattern> {
    let symbols = parse_symbols(&args.word)?;
    let offsets = match &args.offsets {
        Some(o) => parse_list(o, "offset")?,
        None => (0..symbols.len() as i64).collect(),
    };
    Ok(WordPattern::new(offsets, symbols)?)
}

fn function_of(args: &FunctionArgs) -> CliResult<(furstenberg_core::algebra::FiniteGroup, FiniteConfig)> {
    let g = load_group(&args.group)?;
    let file = match (&args.values, &args.function) {
        (Some(v), _) => FunctionFile { values: parse_symbols(v)? },
        (None, Some(p)) => read_yaml(p)?,
        (None, None) => return Err(CliError::input("give --values or --function")),
    };
    let f = file.build(&g)?;
    Ok((g, f))
}

struct Run {
    command: String,
    findings: Vec<Finding>,
}

fn run(cmd: Command, global: &Global) -> CliResult<Vec<Report>> {
    let one = |command: &str, findings: Vec<Finding>| Ok(vec![Report::new(command, None, findings)]);
    let r = match cmd {
        Command::Repro { id } => return run_repro(&id, global),
        Command::Fixture { name } => {
            print!("{}", fixture(&name)?);
            return Ok(Vec::new());
        }
        Command::Group(GroupCmd::Analyze { group }) => Run { command: "group analyze".into(), findings: analysis::group(&load_group(&group)?)? },
        Command::System(c) => system(c, global)?,
        Command::Rotation(c) => rotation(c)?,
        Command::Seq(c) => seq(c)?,
        Command::Code(c) => code(c)?,
        Command::Recur(c) => recur(c)?,
    };
    one(&r.command, r.findings)
}

fn system(c: SystemCmd, global: &Global) -> CliResult<Run> {
    Ok(match c {
        SystemCmd::Build { f, mode } => {
            let (g, f) = function_of(&f)?;
            let (_, finding) = analysis::system_build(&g, &f, analysis::orbit_mode(&mode)?)?;
            Run { command: "system build".into(), findings: vec![finding] }
        }
        SystemCmd::Iso { f, left, right } => {
            let (g, f) = function_of(&f)?;
            let (a, _) = analysis::system_build(&g, &f, analysis::orbit_mode(&left)?)?;
            let (b, _) = analysis::system_build(&g, &f, analysis::orbit_mode(&right)?)?;
            Run { command: "system iso".into(), findings: vec![analysis::system_iso(&a, &b)?] }
        }
        SystemCmd::Furstenberg { f, mode, anti_law } => {
            let (g, f) = function_of(&f)?;
            let (s, _) = analysis::system_build(&g, &f, analysis::orbit_mode(&mode)?)?;
            let law = if anti_law { ActionKind::AntiAction } else { ActionKind::Action };
            Run { command: "system furstenberg".into(), findings: analysis::furstenberg(&g, &s, &f, law)? }
        }
        SystemCmd::Sample { samples } => {
            Run { command: "system sample".into(), findings: vec![sample::uniqueness(samples, global.seed)?] }
        }
    })
}

fn rotation(c: RotationCmd) -> CliResult<Run> {
    Ok(match c {
        RotationCmd::Classify { coding } => {
            Run { command: "rotation classify".into(), findings: analysis::rotation_classify(&load_coding(&coding)?)? }
        }
        RotationCmd::Word { coding, word } => {
            Run { command: "rotation word".into(), findings: analysis::rotation_word(&load_coding(&coding)?, &word_of(&word)?)? }
        }
        RotationCmd::Boundary { coding } => {
            Run { command: "rotation boundary".into(), findings: analysis::rotation_boundary(&load_coding(&coding)?)? }
        }
    })
}

fn seq(c: SeqCmd) -> CliResult<Run> {
    Ok(match c {
        SeqCmd::Window { oracle, lo, hi } => {
            Run { command: "seq window".into(), findings: analysis::seq_window(&load_oracle(&oracle)?, lo, hi)? }
        }
        SeqCmd::Occur { oracle, word, window } => {
            Run { command: "seq occur".into(), findings: analysis::seq_occur(&load_oracle(&oracle)?, &word_of(&word)?, window)? }
        }
        SeqCmd::Recur { oracle, length, window, gap } => {
            Run { command: "seq recur".into(), findings: analysis::seq_recur(&load_oracle(&oracle)?, length, window, gap)? }
        }
    })
}

fn code(c: CodeCmd) -> CliResult<Run> {
    Ok(match c {
        CodeCmd::Apply { code, oracle, lo, hi } => {
            Run { command: "code apply".into(), findings: analysis::code_apply(&load_code(&code)?, &load_oracle(&oracle)?, lo, hi)? }
        }
        CodeCmd::Verify { code, source, target, window } => Run {
            command: "code verify".into(),
            findings: vec![analysis::code_verify(&load_code(&code)?, &load_oracle(&source)?, &load_oracle(&target)?, window)?],
        },
        CodeCmd::Separate { code, oracle, depth, window } => Run {
            command: "code separate".into(),
            findings: vec![analysis::code_separate(&load_code(&code)?, &load_oracle(&oracle)?, depth, window)?],
        },
        CodeCmd::Search { a, b, max_span, depth, window } => Run {
            command: "code search".into(),
            findings: vec![analysis::code_search(&load_oracle(&a)?, &load_oracle(&b)?, max_span, depth, window)?],
        },
        CodeCmd::Patterns { a, b, shifts, k, window } => Run {
            command: "code patterns".into(),
            findings: vec![analysis::code_patterns(&load_oracle(&a)?, &load_oracle(&b)?, &parse_list(&shifts, "shift")?, k, window)?],
        },
    })
}

fn recur(c: RecurCmd) -> CliResult<Run> {
    Ok(match c {
        RecurCmd::Chromatic { candidates, oracle, group, values, window } => {
            let cands: CandidateFile = read_yaml(&candidates)?;
            let finding = match (group, values, oracle) {
                (Some(g), Some(v), _) => {
                    let (g, f) = function_of(&FunctionArgs { group: g, values: Some(v), function: None })?;
                    let elems = cands.integers()?;
                    let elems = elems.iter().map(|&e| usize::try_from(e).map_err(|_| CliError::input(format!("element {e}")))).collect::<CliResult<_>>()?;
                    analysis::chromatic_finite(&g, elems, &f)?
                }
                (_, _, Some(o)) => analysis::chromatic(cands.integers()?, &load_oracle(&o)?, window)?,
                _ => return Err(CliError::input("give an oracle file or --group with --values")),
            };
            Run { command: "recur chromatic".into(), findings: vec![finding] }
        }
        RecurCmd::Syndetic { candidates, oracle, window } => {
            let cands: CandidateFile = read_yaml(&candidates)?;
            Run { command: "recur syndetic".into(), findings: vec![analysis::syndetic(cands.integers()?, &load_oracle(&oracle)?, window)?] }
        }
        RecurCmd::Eqtech { candidates, support_bound, search_bound } => {
            let cands: CandidateFile = read_yaml(&candidates)?;
            Run { command: "recur eqtech".into(), findings: vec![analysis::eqtech(&cands.z3b()?, support_bound, search_bound)?] }
        }
    })
}

fn fixture(name: &str) -> CliResult<String> {
    use furstenberg_core::algebra::catalog::by_name;
    use furstenberg_core::codes::BlockCode;
    use furstenberg_core::rotation::fixtures;
    use scenario::{to_yaml, CodeFile, CodingFile, GroupFile};
    let coding = match name {
        "a-coding" => Some(fixtures::a_coding()),
        "third-interval" => Some(fixtures::third_interval()),
        "four-coloring" => Some(fixtures::four_colouring()),
        _ => None,
    };
    if let Some(c) = coding {
        return Ok(to_yaml(&CodingFile::from_coding(&c)));
    }
    if let Some(span) = name.strip_prefix("parity") {
        let w: i64 = span.parse().map_err(|_| CliError::input(format!("unknown fixture {name:?}")))?;
        return Ok(to_yaml(&CodeFile::from_code(&BlockCode::parity((0..w).collect())?)));
    }
    by_name(name)
        .map(|g| to_yaml(&GroupFile::from_group(&g)))
        .ok_or_else(|| CliError::input(format!("unknown fixture {name:?}")))
}

fn run_repro(id: &str, global: &Global) -> CliResult<Vec<Report>> {
    let ids: Vec<&str> = match id {
        "list" => return Ok(Vec::new()),
        "all" => repro::IDS.to_vec(),
        one => vec![one],
    };
    let workers = global.workers.clamp(1, ids.len().max(1));
    let mut results: BTreeMap<usize, CliResult<Report>> = BTreeMap::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let ids = &ids;
                let timing = global.timing;
                scope.spawn(move || {
                    (w..ids.len())
                        .step_by(workers)
                        .map(|i| {
                            let start = Instant::now();
                            let r = repro::run(ids[i]).map(|mut r| {
                                if timing {
                                    r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
                                }
                                r
                            });
                            (i, r)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            results.extend(h.join().expect("repro worker panicked"));
        }
    });
    results.into_values().collect()
}

fn file_name(r: &Report) -> String {
    r.id.clone().unwrap_or_else(|| r.command.replace(' ', "-"))
}

fn emit(reports: &[Report], global: &Global, listing: bool) -> CliResult<()> {
    if listing {
        if global.json {
            println!("{}", serde_json::to_string_pretty(&repro::IDS).expect("ids serialize"));
        } else {
            for id in repro::IDS {
                println!("{id}");
            }
        }
        return Ok(());
    }
    if let Some(dir) = &global.out {
        fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
        for r in reports {
            let path: PathBuf = Path::new(dir).join(format!("{}.json", file_name(r)));
            fs::write(&path, r.to_json()).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        }
    }
    if global.json {
        if let [r] = reports {
            print!("{}", r.to_json());
        } else {
            println!("{}", serde_json::to_string_pretty(reports).expect("reports serialize"));
        }
    } else {
        for r in reports {
            print!("{}", r.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let listing = matches!(&cli.command, Command::Repro { id } if id == "list");
    let fixture = matches!(&cli.command, Command::Fixture { .. });
    let start = Instant::now();
    let global = cli.global.clone();
    let result = run(cli.command, &global).and_then(|mut reports| {
        if global.timing && reports.len() == 1 && reports[0].wall_time_ms.is_none() {
            reports[0].wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        for r in reports.iter().filter(|r| !r.all_match()) {
            eprintln!("warning: {} does not reproduce its expected verdicts", file_name(r));
        }
        if fixture {
            return Ok(());
        }
        emit(&reports, &global, listing)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
