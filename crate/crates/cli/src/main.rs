mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cartesian_lcd::code::{brute_force_min_distance, enumeration_size, CartesianSpec, DualSpec};
use cartesian_lcd::lcd::{
    decide_lcd, is_lcd_bruteforce, search_lcd_with, LcdReport, ScalarPolicy, SearchRequest,
    SetSource,
};
use cartesian_lcd::masking::run_demo;
use cartesian_lcd::matrix::Matrix;
use cartesian_lcd::reference_cases::run_reference_cases;
use cartesian_lcd::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::{parse_field, parse_range, parse_scalars, parse_set, ConfigError, JobConfig};

#[derive(Parser)]
#[command(
    name = "cartesian-lcd",
    version,
    about = "Affine Cartesian codes: parameters, duals and LCD decisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length, dimension and minimum distance.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        /// Largest number of messages to enumerate for the brute-force distance.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Closed-form dual code, checked against the original.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Decide whether the code is LCD.
    Lcd {
        #[command(flatten)]
        code: CodeArgs,
        /// Also run the Gram and intersection tests and require agreement.
        #[arg(long)]
        verify: bool,
        /// Exit with status 1 unless every code is LCD.
        #[arg(long)]
        expect_lcd: bool,
    },
    /// Enumerate codes and report LCD verdicts as NDJSON.
    Search {
        #[command(flatten)]
        code: CodeArgs,
        /// Component size ranges instead of a fixed set, e.g. "3..3;2..3".
        #[arg(long, conflicts_with = "set")]
        sizes: Option<String>,
        #[arg(long, value_enum, default_value_t = Policy::Ones)]
        policy: Policy,
        /// Scalar vectors per set for the random policy.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Maximum number of codes examined.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Direct-sum masking and fault-detection demo.
    Masking {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Check the published worked examples.
    ReproducePaper {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Ones,
    Exhaustive,
    Random,
}

#[derive(Args)]
struct CodeArgs {
    /// JSON job file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Field order as p or p^e.
    #[arg(long)]
    field: Option<String>,
    /// Monic modulus coefficients, low to high, e.g. "1,1,0,1".
    #[arg(long)]
    modulus: Option<String>,
    /// Components as comma lists separated by semicolons, e.g. "0,1,2;0,1".
    #[arg(long)]
    set: Option<String>,
    /// "ones", a list "1,1,2", or per-component factors "prod:1,2;1,3".
    #[arg(long)]
    scalars: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    /// Inclusive range "a..b".
    #[arg(long)]
    k_range: Option<String>,
    #[arg(long)]
    json: bool,
}

impl CodeArgs {
    fn resolve(&self) -> Result<JobConfig, CliError> {
        let base = match &self.config {
            Some(path) => JobConfig::load(path)?,
            None => JobConfig::default(),
        };
        let flags = JobConfig {
            field: self
                .field
                .as_deref()
                .map(|f| parse_field(f, self.modulus.as_deref()))
                .transpose()?,
            components: self.set.as_deref().map(parse_set).transpose()?,
            scalars: self.scalars.as_deref().map(parse_scalars).transpose()?,
            k: self.k,
            k_range: self
                .k_range
                .as_deref()
                .map(|r| parse_range(r, "--k-range"))
                .transpose()?,
            seed: None,
            budget: None,
        };
        Ok(base.merged(flags))
    }
}

macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout(), $($arg)*)?
    };
}

enum CliError {
    Usage(String),
    Property(String),
    Internal(String),
    /// The reader closed stdout.
    Closed,
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => CliError::Internal(e.to_string()),
            Error::NotLcd { .. } => CliError::Property(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::Closed
        } else {
            CliError::Internal(format!("output: {e}"))
        }
    }
}

type CliResult = Result<(), CliError>;

fn print_json(value: &impl serde::Serialize) -> CliResult {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    out!("{text}");
    Ok(())
}

fn fmt_vec(v: &[impl std::fmt::Display]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn cmd_params(code: &CodeArgs, budget: u64) -> CliResult {
    let spec = code.resolve()?.spec()?;
    let g = spec.generator_matrix();
    let rank = g.generator().rank();
    let mut report = spec.report(None)?;
    if rank != report.dim {
        return Err(CliError::Internal(format!(
            "dimension formula {} differs from rank {rank}",
            report.dim
        )));
    }
    let q = spec.field().order();
    if enumeration_size(q, report.dim) <= u128::from(budget) {
        report.d_bruteforce = Some(brute_force_min_distance(&g, u128::from(budget))?);
    }
    if let Some(d) = report.d_bruteforce {
        if d != report.d_formula {
            return Err(CliError::Internal(format!(
                "distance formula {} differs from brute force {d}",
                report.d_formula
            )));
        }
    }
    if code.json {
        return print_json(&report);
    }
    out!("field      {}", spec.field());
    out!("sizes      {:?}", spec.set().sizes());
    out!("k          {}", spec.k());
    out!("n          {}", report.n);
    out!("dim        {} (rank of G: {rank})", report.dim);
    match report.d_bruteforce {
        Some(d) => out!("d          {} (brute force: {d})", report.d_formula),
        None => out!(
            "d          {} (brute force skipped: q^dim over budget)",
            report.d_formula
        ),
    }
    out!("MDS        {}", if report.mds { "yes" } else { "no" });
    if spec.trivial_range() {
        out!("note       k - 1 >= sum(n_i - 1): the code is the full space");
    }
    Ok(())
}

fn cmd_dual(code: &CodeArgs) -> CliResult {
    let spec = code.resolve()?.spec()?;
    let g = spec.generator_matrix();
    let n = spec.length();
    match spec.dual_spec() {
        DualSpec::Zero => {
            if code.json {
                return print_json(&json!({ "zero_code": true, "n": n }));
            }
            out!("dual is the zero code (the code is the full space)");
            Ok(())
        }
        DualSpec::Code(d) => {
            let h = d.generator_matrix();
            if !g.generator().mul(&h.generator().transpose())?.is_zero() {
                return Err(CliError::Internal(
                    "dual generator is not orthogonal".into(),
                ));
            }
            if g.dimension() + h.dimension() != n {
                return Err(CliError::Internal(format!(
                    "dimensions {} + {} do not sum to {n}",
                    g.dimension(),
                    h.dimension()
                )));
            }
            if code.json {
                return print_json(&json!({
                    "zero_code": false,
                    "n": n,
                    "k_dual": d.k(),
                    "scalars": d.scalars(),
                    "dim": g.dimension(),
                    "dim_dual": h.dimension(),
                    "generator": h.generator(),
                }));
            }
            out!("k'         {}", d.k());
            out!("v'         {}", fmt_vec(d.scalars()));
            out!("dims       {} + {} = {n}", g.dimension(), h.dimension());
            out!("generator");
            print_matrix(h.generator())?;
            Ok(())
        }
    }
}

fn print_matrix(m: &Matrix) -> CliResult {
    for i in 0..m.rows() {
        out!("  {}", fmt_vec(m.row(i)));
    }
    Ok(())
}

fn describe(report: &LcdReport) -> String {
    let k = report.spec.k();
    if report.is_lcd {
        match &report.eea_degrees {
            Some(d) => format!("k = {k}: LCD (remainder degrees {d:?})"),
            None => format!("k = {k}: LCD"),
        }
    } else {
        match &report.witness {
            Some(w) if w.rows() > 0 => {
                format!("k = {k}: not LCD (hull contains {})", fmt_vec(w.row(0)))
            }
            _ => format!("k = {k}: not LCD"),
        }
    }
}

fn cmd_lcd(code: &CodeArgs, verify: bool, expect_lcd: bool) -> CliResult {
    let cfg = code.resolve()?;
    let ks = cfg.ks()?;
    let mut reports = Vec::with_capacity(ks.len());
    for &k in &ks {
        let spec = cfg.spec_with_k(k)?;
        let report = decide_lcd(&spec)?;
        if verify {
            let other = is_lcd_bruteforce(&spec)?;
            if other.is_lcd != report.is_lcd {
                return Err(CliError::Internal(format!(
                    "k = {k}: decision {} disagrees with Gram test {}",
                    report.is_lcd, other.is_lcd
                )));
            }
        }
        reports.push(report);
    }
    if code.json {
        if cfg.k.is_some() {
            print_json(&reports[0])?;
        } else {
            print_json(&reports)?;
        }
    } else {
        for r in &reports {
            out!("{}", describe(r));
        }
    }
    if expect_lcd && reports.iter().any(|r| !r.is_lcd) {
        return Err(CliError::Property("expected every code to be LCD".into()));
    }
    Ok(())
}

fn cmd_search(
    code: &CodeArgs,
    sizes: Option<&str>,
    policy: Policy,
    count: usize,
    seed: Option<u64>,
    budget: Option<u64>,
) -> CliResult {
    let cfg = code.resolve()?;
    let field = cfg.field()?;
    let sets = match sizes {
        Some(text) => SetSource::Sizes(
            text.split(';')
                .map(|r| parse_range(r, "--sizes"))
                .collect::<Result<_, _>>()?,
        ),
        None => SetSource::Fixed(cfg.set()?),
    };
    let k_range = match (cfg.k, cfg.k_range) {
        (Some(k), _) => (k, k),
        (None, Some(r)) => r,
        (None, None) => return Err(CliError::Usage("k: missing (use --k or --k-range)".into())),
    };
    let scalars = match policy {
        Policy::Ones => ScalarPolicy::AllOnes,
        Policy::Exhaustive => ScalarPolicy::ExhaustiveModScaling,
        Policy::Random => ScalarPolicy::Random {
            seed: seed.or(cfg.seed).unwrap_or(0),
            count,
        },
    };
    let req = SearchRequest {
        field,
        sets,
        k_range,
        scalars,
        budget: budget.or(cfg.budget).unwrap_or(u64::MAX),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut emitted = 0u64;
    let mut write_error = None;
    let result = search_lcd_with(&req, |record| {
        let line = serde_json::to_string(&record).map_err(|e| Error::Internal(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| {
            let msg = e.to_string();
            write_error = Some(e);
            Error::Internal(msg)
        })?;
        emitted += 1;
        Ok(())
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    let truncated = result?;
    writeln!(
        out,
        "{}",
        json!({ "truncated": truncated, "records": emitted })
    )?;
    Ok(())
}

fn cmd_masking(code: &CodeArgs, seed: Option<u64>, trials: usize) -> CliResult {
    let cfg = code.resolve()?;
    let spec: CartesianSpec = cfg.spec()?;
    let seed = seed.or(cfg.seed).unwrap_or(0);
    let transcript = run_demo(&spec, seed, trials)?;
    if code.json {
        return print_json(&transcript);
    }
    out!(
        "code             n = {}, dim = {}, d = {}",
        transcript.code_params.n,
        transcript.code_params.dim,
        transcript.code_params.d_formula
    );
    out!("security order   {}", transcript.security_order);
    out!("seed             {seed}");
    out!("faults injected  {}", transcript.faults_injected);
    out!("detected         {}", transcript.detected);
    out!("missed           {}", transcript.missed);
    out!("missed all in C  {}", transcript.all_missed_in_c);
    Ok(())
}

fn cmd_reproduce(json_out: bool) -> CliResult {
    let cases = run_reference_cases()?;
    let passed = cases.iter().filter(|c| c.pass).count();
    if json_out {
        print_json(&cases)?;
    } else {
        for c in &cases {
            out!(
                "{} {:<24} {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.title
            );
            for check in c.checks.iter().filter(|ch| !ch.pass) {
                out!(
                    "     {}: expected {}, computed {}",
                    check.name,
                    check.expected,
                    check.computed
                );
            }
            if let Some(note) = &c.note {
                out!("     note: {note}");
            }
        }
        out!("{passed}/{} pass", cases.len());
    }
    if passed != cases.len() {
        return Err(CliError::Property(format!(
            "{} case(s) failed",
            cases.len() - passed
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Params { code, budget } => cmd_params(code, *budget),
        Command::Dual { code } => cmd_dual(code),
        Command::Lcd {
            code,
            verify,
            expect_lcd,
        } => cmd_lcd(code, *verify, *expect_lcd),
        Command::Search {
            code,
            sizes,
            policy,
            count,
            seed,
            budget,
        } => cmd_search(code, sizes.as_deref(), *policy, *count, *seed, *budget),
        Command::Masking { code, seed, trials } => cmd_masking(code, *seed, *trials),
        Command::ReproducePaper { json } => cmd_reproduce(*json),
    };
    match result {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(CliError::Property(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
