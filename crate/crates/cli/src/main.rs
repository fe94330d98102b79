//! Command-line front end: analyze functions, dump tables, run the claim
//! battery, and search exponent space.
//!
//! Exit codes: 0 success, 1 claim failure (or runtime error), 2 usage
//! error, 3 budget refusal.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sboxtab::bct::bct;
use sboxtab::claims::verification_manifest;
use sboxtab::ddt::ddt;
use sboxtab::export::{table_csv_string, table_json};
use sboxtab::field::parse_modulus;
use sboxtab::search::search_power_maps;
use sboxtab::table::FULL_STORAGE_MAX_N;
use sboxtab::{analyze, AnalysisReport, Error, Field, Func, FuncDesc};

#[derive(Parser)]
#[command(name = "sboxtab", version, about = "DDT/BCT toolkit for functions over GF(2^n)")]
struct Cli {
    /// Worker threads (default: SBOXTAB_THREADS env var, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a function: permutation/APN/locally-APN flags, differential
    /// and boomerang uniformity, witnesses
    Analyze {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Compute a DDT or BCT and export it
    Table {
        #[arg(value_enum)]
        kind: KindArg,
        #[command(flatten)]
        func: FuncArgs,
        /// csv is the full q x q table (n <= 10); json is the spectrum dump
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every exact claim check up to max_m and emit the JSON manifest
    Verify {
        #[arg(long = "max-m", default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=8))]
        max_m: u32,
        /// Manifest file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List exponents whose boomerang uniformity is strictly below their
    /// differential uniformity
    Search {
        /// Field dimension n (2..=10)
        #[arg(short = 'n', long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
}

#[derive(Args)]
struct FuncArgs {
    /// Field dimension n (2..=20)
    #[arg(short = 'n', long)]
    n: u32,

    /// Power-map exponent d
    #[arg(short = 'd', long, conflicts_with = "lut", required_unless_present = "lut")]
    d: Option<u64>,

    /// Lookup-table file: one integer per line (decimal or 0x-hex), q lines
    #[arg(long)]
    lut: Option<PathBuf>,

    /// Modulus as hex ("0x43"), decimal, or a polynomial ("x^6+x+1");
    /// defaults to the smallest irreducible of degree n
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Ddt,
    Bct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("SBOXTAB_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    let command = cli.command;
    let result = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| dispatch(command)),
        None => dispatch(command),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::FullTableTooLarge { .. } => 3,
        Error::DimensionOutOfRange { .. }
        | Error::ModulusWrongDegree { .. }
        | Error::ModulusReducible { .. }
        | Error::ModulusParse(_)
        | Error::MOutOfRange { .. }
        | Error::WrongParity { .. }
        | Error::EmptyRange { .. }
        | Error::LutLength { .. }
        | Error::LutValue { .. }
        | Error::LutParse { .. }
        | Error::NotAPowerMap
        | Error::ZeroRowIndex => 2,
        _ => 1,
    }
}

fn dispatch(command: Command) -> sboxtab::Result<ExitCode> {
    match command {
        Command::Analyze { func, format } => cmd_analyze(&func, format),
        Command::Table {
            kind,
            func,
            format,
            out,
        } => cmd_table(kind, &func, format, out),
        Command::Verify { max_m, out } => cmd_verify(max_m, out),
        Command::Search { n, format } => cmd_search(n, format),
    }
}

fn build_func(args: &FuncArgs) -> sboxtab::Result<Func> {
    let modulus = args.modulus.as_deref().map(parse_modulus).transpose()?;
    let field = Field::new(args.n, modulus)?;
    match (&args.d, &args.lut) {
        (Some(d), None) => Ok(Func::power(field, *d)),
        (None, Some(path)) => Func::from_lut_path(field, path),
        _ => unreachable!("clap enforces exactly one of -d / --lut"),
    }
}

fn write_output(payload: &str, out: Option<PathBuf>) -> sboxtab::Result<()> {
    match out {
        Some(path) => fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn cmd_analyze(args: &FuncArgs, format: ReportFormat) -> sboxtab::Result<ExitCode> {
    let f = build_func(args)?;
    let report = analyze(&f)?;
    if report.degenerate {
        eprintln!(
            "warning: exponent reduces to 0 mod 2^{}-1; analyzing the degenerate constant-1 map (0^0 = 1)",
            report.n
        );
    }
    match format {
        ReportFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        ReportFormat::Table => print_report(&report),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(
    kind: KindArg,
    args: &FuncArgs,
    format: TableFormat,
    out: Option<PathBuf>,
) -> sboxtab::Result<ExitCode> {
    if format == TableFormat::Csv && args.n > FULL_STORAGE_MAX_N {
        // Refuse before computing anything.
        return Err(Error::FullTableTooLarge {
            n: args.n,
            threshold: FULL_STORAGE_MAX_N,
        });
    }
    let f = build_func(args)?;
    let t = match kind {
        KindArg::Ddt => ddt(&f)?,
        KindArg::Bct => bct(&f)?,
    };
    let payload = match format {
        TableFormat::Csv => table_csv_string(&t)?,
        TableFormat::Json => {
            let mut s = table_json(&t)?;
            s.push('\n');
            s
        }
    };
    write_output(&payload, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(max_m: u32, out: Option<PathBuf>) -> sboxtab::Result<ExitCode> {
    let manifest = verification_manifest(max_m)?;
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    write_output(&json, out)?;
    if manifest.all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        for o in manifest.outcomes.iter().filter(|o| !o.pass) {
            eprintln!(
                "FAIL {}: expected [{}], observed [{}]",
                o.claim_id, o.expected, o.observed
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_search(n: u32, format: ReportFormat) -> sboxtab::Result<ExitCode> {
    let field = Field::new(n, None)?;
    let reports = search_power_maps(&field)?;
    match format {
        ReportFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        ),
        ReportFormat::Table => {
            println!("{:<8} {:<6} {:<10} {:<12} {:<12}", "d", "delta", "boomerang", "permutation", "locally_apn");
            for r in &reports {
                println!(
                    "{:<8} {:<6} {:<10} {:<12} {:<12}",
                    desc_str(&r.d),
                    r.delta,
                    r.boomerang,
                    r.permutation,
                    opt_bool(r.locally_apn)
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn desc_str(d: &FuncDesc) -> String {
    match d {
        FuncDesc::Power(d) => d.to_string(),
        FuncDesc::Lut => "lut".to_string(),
    }
}

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_else(|| "n/a".to_string())
}

fn print_report(r: &AnalysisReport) {
    println!("field        GF(2^{}), modulus {}", r.n, r.modulus);
    let func = match r.d {
        FuncDesc::Power(d) => format!("x^{d}"),
        FuncDesc::Lut => "lut".to_string(),
    };
    println!("function     {func}");
    println!("permutation  {}", r.permutation);
    println!("apn          {}", r.apn);
    println!("locally_apn  {}", opt_bool(r.locally_apn));
    println!("delta        {}", r.delta);
    println!("boomerang    {}", r.boomerang);
    let witnesses = |ws: &[sboxtab::Witness]| {
        ws.iter()
            .map(|w| format!("(a={:#x}, b={:#x})", w.a, w.b))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("delta at     {}", witnesses(&r.delta_witnesses));
    println!("boomer at    {}", witnesses(&r.boomerang_witnesses));
    println!("runtime_ms   {}", r.runtime_ms);
}
