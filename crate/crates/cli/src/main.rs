mod checks;
mod compute;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use truncpath_core::oracle::DEFAULT_CAP;
use truncpath_core::space::{
    builtin_space, fundamental_presentation, parse_space_file, write_space_file, Basepoints, Builtin,
};
use truncpath_core::{Error, Result};

use checks::{Input, Suite};
use compute::Method;
use report::VerificationReport;

#[derive(Parser)]
#[command(name = "truncpath", version, about = "Truncated path algebras of simplicial sets, with a chain-level oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in spaces and space files.
    Spaces {
        #[command(subcommand)]
        action: SpacesAction,
    },
    /// Algebraic invariants of one space.
    Compute {
        what: Quantity,
        #[command(flatten)]
        run: RunArgs,
        /// How to compute homology.
        #[arg(long, value_enum, default_value = "fox")]
        method: Method,
    },
    /// Run one verification suite and print a report.
    Verify {
        suite: SuiteName,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run every applicable suite.
    Report {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum SpacesAction {
    /// Names of the built-in spaces.
    List,
    /// Summary of a space, or its file form with `--raw`.
    Show {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Ring,
    Graded,
    Primitives,
    Homology,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Bdg,
    Ladder,
    Hopf,
    Composition,
    Cupexample,
    Connectivity,
}

impl From<SuiteName> for Suite {
    fn from(s: SuiteName) -> Suite {
        match s {
            SuiteName::Bdg => Suite::Bdg,
            SuiteName::Ladder => Suite::Ladder,
            SuiteName::Hopf => Suite::Hopf,
            SuiteName::Composition => Suite::Composition,
            SuiteName::Cupexample => Suite::CupExample,
            SuiteName::Connectivity => Suite::Connectivity,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpaceArgs {
    /// Built-in space, e.g. `circle`, `wedge2`, `genus:2`.
    #[arg(long)]
    space: Option<String>,
    /// Space file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Truncation degree or range: `2`, `1..3`, `1-3`.
    #[arg(long = "n", default_value = "2", value_parser = parse_range)]
    n: (usize, usize),
    /// Move `b` to the end of a new whisker edge.
    #[arg(long)]
    distinct_endpoints: bool,
    /// Largest number of product simplices the oracle may build.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Record wall time per check.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Also write the structured report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("expected a degree or a range like 1..3, got `{s}`");
    let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
        Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn load_space(args: &SpaceArgs) -> Result<(truncpath_core::space::SimplicialSet, Basepoints)> {
    match (&args.space, &args.file) {
        (Some(name), _) => builtin_space(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            parse_space_file(&text)
        }
        (None, None) => Err(Error::UnknownSpace(String::new())),
    }
}

fn input(run: &RunArgs) -> Result<Input> {
    let (mut ss, mut bp) = load_space(&run.space)?;
    if run.distinct_endpoints {
        if !bp.is_loop() {
            return Err(Error::EndpointMismatch("space already has distinct endpoints".into()));
        }
        (ss, bp) = ss.with_whisker(bp.a);
    }
    let gp = fundamental_presentation(&ss, bp);
    Ok(Input { label: ss.name().to_string(), ss, bp, gp, cap: run.cap, timings: run.timings })
}

fn degrees(run: &RunArgs) -> Vec<usize> {
    (run.n.0..=run.n.1).collect()
}

fn emit(report: &VerificationReport, out: &OutArgs) -> Result<()> {
    match out.format {
        Format::Table => print!("{}", report.to_table()),
        Format::Structured => println!("{}", report.to_json()),
    }
    if let Some(path) = &out.out {
        std::fs::write(path, report.to_json() + "\n")
            .map_err(|e| Error::Unsupported(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Runs `suites` over the degree range; suites that do not apply are skipped
/// unless that leaves nothing to run.
fn verify(run: &RunArgs, suites: &[Suite], out: &OutArgs) -> Result<bool> {
    let input = input(run)?;
    let strict = suites.len() == 1;
    let mut records = Vec::new();
    for &suite in suites {
        let ns: Vec<usize> = if suite.per_degree() { degrees(run) } else { vec![2] };
        for n in ns {
            if !strict && !suite.applies(&input, n) {
                continue;
            }
            records.extend(suite.run(&input, n)?);
        }
    }
    if records.is_empty() {
        return Err(Error::Unsupported("no check applies to this space and degree range".into()));
    }
    let report = VerificationReport::new(input.label.clone(), [run.n.0, run.n.1], records);
    emit(&report, out)?;
    Ok(report.passed())
}

fn show(args: &SpaceArgs, raw: bool) -> Result<String> {
    let (ss, bp) = load_space(args)?;
    if raw {
        return Ok(write_space_file(&ss, bp));
    }
    let gp = fundamental_presentation(&ss, bp);
    let names = gp.generator_names();
    let relators: Vec<String> = gp.relators.iter().map(|r| r.display_with(&names).to_string()).collect();
    Ok(format!(
        "name {}\nsimplices {:?}\neuler characteristic {}\na {}  b {}\ngenerators {}\nrelators {}\nH_1 {}\n",
        ss.name(),
        ss.counts(),
        ss.euler_characteristic(),
        ss.vertex_name(bp.a),
        ss.vertex_name(bp.b),
        names.join(" "),
        if relators.is_empty() { "none".to_string() } else { relators.join(", ") },
        gp.abelianization().invariants(),
    ))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Spaces { action: SpacesAction::List } => {
            for name in Builtin::NAMES {
                println!("{name}");
            }
            Ok(true)
        }
        Command::Spaces { action: SpacesAction::Show { space, raw } } => {
            print!("{}", show(&space, raw)?);
            Ok(true)
        }
        Command::Compute { what, run, method } => {
            let input = input(&run)?;
            let ns = degrees(&run);
            let text = match what {
                Quantity::Ring => compute::ring(&input, &ns)?,
                Quantity::Graded => compute::graded(&input, run.n.1)?,
                Quantity::Primitives => compute::primitives(&input, &ns)?,
                Quantity::Homology => compute::homology(&input, &ns, method)?,
            };
            print!("{text}");
            Ok(true)
        }
        Command::Verify { suite, run, out } => verify(&run, &[suite.into()], &out),
        Command::Report { run, out } => verify(&run, &Suite::ALL, &out),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ResourceCap { .. } => 3,
        Error::UnknownSpace(_)
        | Error::InvalidSpace(_)
        | Error::Parse(_)
        | Error::BadDegree(_)
        | Error::DegreeOutOfRange { .. }
        | Error::EndpointMismatch(_)
        | Error::MissingDistinguishedEdge
        | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
