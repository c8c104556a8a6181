use clap::{Args, Parser, Subcommand};
use openbook_hfk::corpus::{self, CorpusConfig};
use openbook_hfk::error::{CliError, EXIT_INVARIANT, EXIT_OK};
use openbook_hfk::input;
use openbook_hfk::pipeline;
use openbook_hfk::report::{Config, Report};
use openbook_hfk::suites::{self, Context, Suite};
use openbook_hfk_core::floer::{Options, DEFAULT_CAP};
use openbook_hfk_core::openbook::OpenBook;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "openbook-hfk", version, about = "Knot Floer homology of fibered knots from open books")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one open book and print a JSON report.
    Compute(ComputeArgs),
    /// Run a suite of checks, one PASS/FAIL line each.
    Verify(VerifyArgs),
    /// Sweep all words up to a length and write CSV.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct Common {
    /// Maximum number of generators.
    #[arg(long, env = "OPENBOOK_HFK_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Seed for sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

impl Common {
    fn options(&self) -> Options {
        Options { cap: self.cap, ..Options::default() }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Open-book JSON file, or `-` for standard input.
    #[arg(long, group = "source")]
    input: Option<String>,
    /// Named example, e.g. right-trefoil or boundary-twist(2).
    #[arg(long, group = "source")]
    preset: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    source: Source,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "core")]
    suite: Suite,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long)]
    genus: usize,
    #[arg(long)]
    max_word_len: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    output: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn write_out(path: &Option<String>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn compute(a: ComputeArgs) -> Result<u8, CliError> {
    let ob = match (&a.source.input, &a.source.preset) {
        (Some(path), _) => input::read(path)?,
        (_, Some(name)) => OpenBook::preset(name)?,
        _ => unreachable!("clap requires one source"),
    };
    let opt = a.common.options();
    let outcome = pipeline::run(&ob, &opt)?;
    let config = Config {
        cap: opt.cap,
        max_moves: opt.max_moves,
        rv_bound: pipeline::RV_BOUND,
        crosscheck_limit: pipeline::CROSSCHECK_LIMIT,
    };
    let mut text = Report::new(&outcome, config, a.common.seed).to_json();
    text.push('\n');
    write_out(&a.output, text.as_bytes())?;
    Ok(if outcome.structural_ok() { EXIT_OK } else { EXIT_INVARIANT })
}

fn verify(a: VerifyArgs) -> Result<u8, CliError> {
    let mut ctx = Context::new(a.common.options(), a.common.seed, a.common.jobs);
    let lines = suites::run(a.suite, &mut ctx);
    for l in &lines {
        println!("{l}");
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(EXIT_OK)
}

fn run_corpus(a: CorpusArgs) -> Result<u8, CliError> {
    let cfg = CorpusConfig {
        genus: a.genus,
        max_word_len: a.max_word_len,
        limit: corpus::DEFAULT_LIMIT,
        seed: a.common.seed,
        opt: a.common.options(),
        jobs: a.common.jobs,
    };
    let t = Instant::now();
    let run = corpus::run(&cfg)?;
    write_out(&a.output, &corpus::to_csv_bytes(&cfg, &run.rows)?)?;
    let counts = run.status_counts();
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!("{} words in {:.1}s: {}", run.rows.len(), t.elapsed().as_secs_f64(), summary.join(" "));
    let broken = counts.get("check_failed").copied().unwrap_or(0) + counts.get("invariant_violation").copied().unwrap_or(0);
    Ok(if broken > 0 { EXIT_INVARIANT } else { EXIT_OK })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Compute(a) => compute(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Corpus(a) => run_corpus(a),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
