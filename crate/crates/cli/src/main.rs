mod exit;
mod format;

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polygenocchi::families::{family_series, FamilyExpansion, FamilySpec, FamilyTag};
use polygenocchi::rational::{format_rational, parse_rational};
use polygenocchi::verifier::{run_suite_with, CheckConfig, ConfigOverrides, Overall, Suite};
use polygenocchi::{ParamPoint, Rational};

use exit::{Failure, BAD_ARGS, OVERALL_FAIL, UNWRITABLE};

#[derive(Parser)]
#[command(
    name = "polygenocchi",
    version,
    about = "Exact coefficient tables and identity checks for poly-Genocchi families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of P_0 .. P_N.
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print `n, P_n(0)` for n = 0 .. N.
    Numbers {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Run a verification suite and write the report as JSON.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Latex,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_parser = parse_tag, default_value = "type1")]
    family: FamilyTag,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    #[arg(long, value_parser = parse_rational_arg, default_value = "1", allow_hyphen_values = true)]
    lambda: Rational,
    #[arg(long, value_parser = parse_rational_arg, default_value = "0", allow_hyphen_values = true)]
    ln_a: Rational,
    #[arg(long, value_parser = parse_rational_arg, default_value = "1", allow_hyphen_values = true)]
    ln_b: Rational,
    #[arg(long, value_parser = parse_rational_arg, default_value = "1", allow_hyphen_values = true)]
    ln_c: Rational,
    /// Frobenius parameter.
    #[arg(long, value_parser = parse_rational_arg, default_value = "-1", allow_hyphen_values = true)]
    mu: Rational,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite, default_value = "all")]
    suite: Suite,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file overriding the default config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Where to write the report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record elapsed times and a timestamp in the report.
    #[arg(long)]
    timings: bool,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_tag(s: &str) -> Result<FamilyTag, String> {
    s.parse().map_err(|e: polygenocchi::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: polygenocchi::Error| e.to_string())
}

impl FamilyArgs {
    fn expand(&self) -> Result<FamilyExpansion, Failure> {
        let mut spec = FamilySpec::new(self.family, self.k, self.alpha);
        spec.mu = self.mu.clone();
        let params = ParamPoint::new(
            self.lambda.clone(),
            self.ln_a.clone(),
            self.ln_b.clone(),
            self.ln_c.clone(),
        );
        Ok(family_series(&spec, &params, self.n_max)?)
    }
}

fn create(path: &Path) -> Result<File, Failure> {
    File::create(path)
        .map_err(|e| Failure::new(UNWRITABLE, format!("cannot write {}: {e}", path.display())))
}

fn write_to(mut file: File, path: &Path, text: &str) -> Result<(), Failure> {
    file.write_all(text.as_bytes())
        .map_err(|e| Failure::new(UNWRITABLE, format!("cannot write {}: {e}", path.display())))
}

fn table(family: &FamilyArgs, format: TableFormat, out: Option<&Path>) -> Result<(), Failure> {
    let file = out.map(create).transpose()?;
    let exp = family.expand()?;
    let text = match format {
        TableFormat::Csv => format::csv(&exp),
        TableFormat::Json => format::json(&exp),
        TableFormat::Latex => format::latex(&exp),
    };
    match (file, out) {
        (Some(file), Some(path)) => write_to(file, path, &text),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn numbers(family: &FamilyArgs) -> Result<(), Failure> {
    let exp = family.expand()?;
    for (n, v) in exp.numbers().iter().enumerate() {
        println!("{n}, {}", format_rational(v));
    }
    Ok(())
}

fn load_config(args: &VerifyArgs) -> Result<CheckConfig, Failure> {
    let overrides = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::new(BAD_ARGS, format!("cannot read {}: {e}", path.display()))
            })?;
            ConfigOverrides::from_json(&text)?
        }
        None => ConfigOverrides::default(),
    };
    let mut cfg = overrides.apply(args.seed);
    if let Some(order) = args.order {
        cfg.order = order;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let cfg = load_config(args)?;
    let file = args.out.as_deref().map(create).transpose()?;
    let mut report = run_suite_with(&cfg, args.suite, args.timings)?;
    if args.timings {
        report.generated_at = Some(chrono::Utc::now().to_rfc3339());
    }
    for r in &report.results {
        println!("{}", r.summary_line());
    }
    let overall = match report.overall {
        Overall::Pass => "pass",
        Overall::Fail => "fail",
    };
    println!("overall: {overall}");
    if let (Some(file), Some(path)) = (file, &args.out) {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        write_to(file, path, &text)?;
    }
    match report.overall {
        Overall::Pass => Ok(()),
        Overall::Fail => Err(Failure::new(OVERALL_FAIL, "verification failed")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { BAD_ARGS } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Table {
            family,
            format,
            out,
        } => table(family, *format, out.as_deref()),
        Command::Numbers { family } => numbers(family),
        Command::Verify(args) => verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
