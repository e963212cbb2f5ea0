use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tworow::markov::{central_kernel, kernel_from_prefix, spectral_measure};
use tworow::sampler::{sample_paths, summarize, SampleSummary};
use tworow::verify::{self, Scope, MAX_TENSOR_N};
use tworow::wire::{fraction_string, kernel_csv, kernel_rows, trace_csv, GzVectorJson, KernelRowJson, SpectralTableJson};
use tworow::{full_gz_basis, BitPrefix};

const MAX_BASIS_N: usize = 16;
const MAX_DEPTH: usize = 64;
const MAX_CENTRAL_N: usize = 16;
const SIGMA_BOUND: f64 = 3.0;

#[derive(Parser)]
#[command(name = "tworow", version, about = "Exact Gelfand-Tsetlin bases and Markov spectral measures for two-row representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// All GZ vectors of A_{n,m} with exact squared norms.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Spectral measure of a prefix at level n, with its kernel.
    Measure {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Seeded random walks with an exact-vs-empirical summary.
    Sample(SampleArgs),
    /// Run the invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        scope: Scope,
        #[arg(long = "n-max", default_value_t = 6)]
        n_max: usize,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, conflicts_with = "central", required_unless_present = "central")]
    xi: Option<String>,
    #[arg(long)]
    central: bool,
    #[arg(long)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write every path as CSV rows `step,k,j`.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<tworow::Error> for Failure {
    fn from(e: tworow::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn emit(output: Option<&PathBuf>, text: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct BasisJson {
    n: usize,
    m: usize,
    vectors: Vec<GzVectorJson>,
}

fn cmd_basis(n: usize, m: usize, format: Format, output: Option<&PathBuf>) -> CmdResult {
    if n > MAX_BASIS_N {
        return Err(Failure::Usage(format!("n = {n} exceeds the limit {MAX_BASIS_N}")));
    }
    if 2 * m > n {
        return Err(Failure::Usage(format!("m = {m} exceeds n/2 for n = {n}")));
    }
    let basis = full_gz_basis(n, m)?;
    let text = match format {
        Format::Json => to_json(&BasisJson { n, m, vectors: basis.iter().map(GzVectorJson::from).collect() }),
        Format::Csv => {
            let mut out = String::from("k,second_row,norm_sq_num,norm_sq_den,vars,coeff_num,coeff_den\n");
            for h in &basis {
                let row = join(h.tableau.second_row());
                for (vars, c) in h.form.terms() {
                    out.push_str(&format!(
                        "{},{row},{},{},{},{},{}\n",
                        h.k(),
                        h.norm_sq.numer(),
                        h.norm_sq.denom(),
                        join(&vars.to_vec()),
                        c.numer(),
                        c.denom()
                    ));
                }
            }
            out
        }
    };
    emit(output, &text)
}

fn parse_prefix(xi: &str) -> Result<BitPrefix, Failure> {
    if xi.is_empty() || !xi.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Failure::Usage(format!("prefix {xi:?} must match [01]+")));
    }
    Ok(xi.parse()?)
}

#[derive(Serialize)]
struct MeasureJson {
    xi: String,
    n: usize,
    table: SpectralTableJson,
    kernel: Vec<KernelRowJson>,
    oracle_match: bool,
}

fn cmd_measure(xi: &str, n: usize, format: Format, output: Option<&PathBuf>) -> CmdResult {
    let prefix = parse_prefix(xi)?;
    if n > prefix.len() {
        return Err(Failure::Usage(format!("n = {n} exceeds the prefix length {}", prefix.len())));
    }
    if n > MAX_BASIS_N {
        return Err(Failure::Usage(format!("n = {n} exceeds the limit {MAX_BASIS_N}")));
    }
    let table = spectral_measure(&prefix, n)?;
    let kernel = kernel_from_prefix(&prefix);
    let oracle_match = kernel.table(n)? == table;
    let text = match format {
        Format::Json => to_json(&MeasureJson {
            xi: prefix.to_string(),
            n,
            table: SpectralTableJson::from(&table),
            kernel: kernel_rows(&kernel),
            oracle_match,
        }),
        Format::Csv => {
            let mut out = String::from("second_row,num,den\n");
            for (u, p) in table.entries() {
                out.push_str(&format!("{},{},{}\n", join(u.second_row()), p.numer(), p.denom()));
            }
            out.push('\n');
            out.push_str(&kernel_csv(&kernel));
            out.push('\n');
            out.push_str(&format!("oracle_match\n{oracle_match}\n"));
            out
        }
    };
    emit(output, &text)?;
    if oracle_match {
        Ok(())
    } else {
        Err(Failure::Verification(format!("spectral table and kernel path products differ for xi={prefix}")))
    }
}

#[derive(Serialize)]
struct LevelJson {
    n: usize,
    trials: u64,
    ups: u64,
    expected: String,
    empirical: String,
    z: String,
    within_3sigma: bool,
}

#[derive(Serialize)]
struct SummaryJson {
    source: String,
    depth: usize,
    count: usize,
    seed: u64,
    levels: Vec<LevelJson>,
    within_3sigma: bool,
}

fn summary_json(source: String, seed: u64, s: &SampleSummary) -> SummaryJson {
    let levels = s
        .levels
        .iter()
        .enumerate()
        .map(|(n, c)| LevelJson {
            n,
            trials: c.trials,
            ups: c.successes,
            expected: fraction_string(&c.expected),
            empirical: format!("{:.6}", c.empirical()),
            z: format!("{:.3}", c.z_score()),
            within_3sigma: c.within_sigmas(SIGMA_BOUND),
        })
        .collect();
    SummaryJson {
        source,
        depth: s.depth,
        count: s.count,
        seed,
        levels,
        within_3sigma: s.levels_within(SIGMA_BOUND),
    }
}

fn cmd_sample(args: &SampleArgs) -> CmdResult {
    if args.depth > MAX_DEPTH {
        return Err(Failure::Usage(format!("depth {} exceeds the limit {MAX_DEPTH}", args.depth)));
    }
    let (kernel, source) = match &args.xi {
        Some(xi) => {
            let prefix = parse_prefix(xi)?;
            (kernel_from_prefix(&prefix), format!("xi={prefix}"))
        }
        None => (central_kernel(args.depth), "central".to_string()),
    };
    let paths = sample_paths(&kernel, args.depth, args.count, args.seed)?;
    if let Some(path) = &args.trace {
        fs::write(path, trace_csv(&paths))?;
    }
    let summary = summarize(&kernel, &paths)?;
    let json = summary_json(source, args.seed, &summary);
    let text = match args.format {
        Format::Json => to_json(&json),
        Format::Csv => {
            let mut out = String::from("n,trials,ups,expected,empirical,z,within_3sigma\n");
            for l in &json.levels {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    l.n, l.trials, l.ups, l.expected, l.empirical, l.z, l.within_3sigma
                ));
            }
            out
        }
    };
    emit(None, &text)
}

fn cmd_verify(scope: Scope, n_max: usize) -> CmdResult {
    let limit = if scope == Scope::Central { MAX_CENTRAL_N } else { MAX_TENSOR_N };
    if n_max > limit {
        return Err(Failure::Usage(format!("--n-max {n_max} exceeds the limit {limit} for this scope")));
    }
    let report = verify::run(scope, n_max);
    emit(None, &report.to_string())?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification("some checks failed".into()))
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("YM_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("YM_THREADS={value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Basis { n, m, format, output } => cmd_basis(*n, *m, *format, output.as_ref()),
        Command::Measure { xi, n, format, output } => cmd_measure(xi, *n, *format, output.as_ref()),
        Command::Sample(args) => cmd_sample(args),
        Command::Verify { scope, n_max } => cmd_verify(*scope, *n_max),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
