//! Command-line driver: assemble Lefschetz characters from a fixture
//! bundle, decompose them into p-modular block parts, run the projectivity
//! tests and classification, drive the brute-force oracle, and re-verify
//! every expected-output record in the bundle.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lefblock_core::cosetgeom;
use lefblock_core::dataio::{
    self, analyze_group, render_json, render_text, run_expectations, FixtureBundle,
};

#[derive(Parser)]
#[command(
    name = "lefblock",
    version,
    about = "Lefschetz characters of coset geometries and their modular block parts"
)]
struct Cli {
    /// Fixture bundle directory (defaults to $LEFBLOCK_BUNDLE)
    #[arg(long, global = true)]
    bundle: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(clap::Args, Clone)]
struct AnalysisArgs {
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 2)]
    prime: u64,
    /// flip the recipe's presentation sign
    #[arg(long)]
    negate: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the reduced Lefschetz character of a group
    Lefschetz(AnalysisArgs),
    /// Lefschetz character plus its block decomposition and tests
    Blocks(AnalysisArgs),
    /// Full analysis including Class I/II/III labeling
    Classify(AnalysisArgs),
    /// Brute-force fixed-point route on an explicit permutation spec
    Oracle {
        /// id of a perm spec in the bundle
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = cosetgeom::DEFAULT_BOUND)]
        oracle_bound: usize,
    },
    /// Re-run every expected-output record and oracle pair in the bundle
    Verify,
}

const EXIT_VALIDATION: u8 = 2;
const EXIT_NOT_VIRTUAL: u8 = 3;
const EXIT_MISSING_BLOCKS: u8 = 4;

fn load(bundle: &Option<PathBuf>) -> Result<FixtureBundle, String> {
    let dir = match bundle {
        Some(p) => p.clone(),
        None => std::env::var_os("LEFBLOCK_BUNDLE")
            .map(PathBuf::from)
            .ok_or("no --bundle given and LEFBLOCK_BUNDLE is not set")?,
    };
    dataio::load_bundle(&dir).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    let bundle = load(&cli.bundle).map_err(|e| (EXIT_VALIDATION, e))?;
    match cli.command {
        Command::Lefschetz(args) => analysis(&bundle, &args, false),
        Command::Blocks(args) => analysis(&bundle, &args, false),
        Command::Classify(args) => analysis(&bundle, &args, true),
        Command::Oracle { spec, oracle_bound } => {
            let pspec = bundle
                .perms
                .get(&spec)
                .ok_or_else(|| (EXIT_VALIDATION, format!("no perm spec '{spec}'")))?;
            let values = cosetgeom::lefschetz_by_fixed_points(pspec, oracle_bound)
                .map_err(|e| (EXIT_VALIDATION, e.to_string()))?;
            println!("oracle Lefschetz character of {spec} by fixed points:");
            for (name, chi) in values {
                println!("  {name} {chi}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let outcomes = run_expectations(&bundle);
            let mut failed = 0;
            for o in &outcomes {
                let status = if o.pass { "ok  " } else { "FAIL" };
                let cite = if o.record.citation.is_empty() {
                    String::new()
                } else {
                    format!("  [{}]", o.record.citation)
                };
                println!("{status} {:<8} {}{}", o.record.group, o.detail, cite);
                if !o.pass {
                    failed += 1;
                }
            }
            println!(
                "{} records, {} passed, {} failed",
                outcomes.len(),
                outcomes.len() - failed,
                failed
            );
            Ok(if failed > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
    }
}

fn analysis(
    bundle: &FixtureBundle,
    args: &AnalysisArgs,
    require_blocks: bool,
) -> Result<ExitCode, (u8, String)> {
    let table = bundle
        .tables
        .get(&args.group)
        .ok_or_else(|| (EXIT_VALIDATION, format!("no table for group '{}'", args.group)))?;
    if table.group_order % args.prime != 0 {
        return Err((
            EXIT_VALIDATION,
            format!("prime {} does not divide |{}| = {}", args.prime, args.group, table.group_order),
        ));
    }
    let doc = analyze_group(bundle, &args.group, args.prime, args.negate).map_err(|e| {
        let code = if e.contains("rational integer") || e.contains("virtual") {
            EXIT_NOT_VIRTUAL
        } else {
            EXIT_VALIDATION
        };
        (code, e)
    })?;
    if require_blocks && doc.blocks.is_none() {
        return Err((
            EXIT_MISSING_BLOCKS,
            format!(
                "no mod-{} decomposition data bundled for {} (its p-modular irreducibles \
                 may not be known); Lefschetz-only reports remain available via `lefschetz`",
                args.prime, args.group
            ),
        ));
    }
    match args.format {
        Format::Text => print!("{}", render_text(&doc)),
        Format::Structured => println!("{}", render_json(&doc)),
    }
    Ok(ExitCode::SUCCESS)
}
