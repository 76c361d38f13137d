use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rootsign::classify::{classical_elliptic_2power, exhaustive_verify_f4, resolve_class, resolve_element, Registry};
use rootsign::signchar::SignContext;
use rootsign::tables::{self, TableFilter};
use rootsign::verify::{self, Suite, SuiteReport, VerifyOptions};
use rootsign::{arith, ErrorKind, Label, RootSystem, Sign};

const GOLDEN: &str = include_str!("../tests/golden/tables_all.txt");

#[derive(Parser)]
#[command(name = "rootsign", version, about = "Orbit-space sign symbols of root-system automorphisms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel tables: A:<n>, F4, E6, E7, E8, G2 or all.
    Tables { filter: String },
    /// Evaluate <v/w> for one numerator.
    Sign {
        /// Root system, e.g. B4, E8, A:5.
        #[arg(long)]
        system: String,
        /// Class name, `cox`, `-1`, a partition like 4+2, or cycle notation.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Numerator: cycle notation, norm:<q>, norm:<partition>:<q>, -1, id,
        /// a generator name, or a product joined by `*`.
        #[arg(long, allow_hyphen_values = true)]
        num: String,
    },
    /// sgn+_n(q) or sgn-_n(q), closed form and brute force.
    Legendre {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        eps: String,
    },
    /// Elliptic classes of 2-power order.
    Classify {
        #[arg(long)]
        system: String,
    },
    /// Run a verification suite by name or number, or all of them.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        /// Worker threads for the suites that fan out.
        #[arg(long, env = "ROOTSIGN_THREADS", default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
    /// The roots of a system in scaled coordinates.
    Dump {
        #[arg(long)]
        system: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] rootsign::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0} verification suite(s) failed")]
    Failed(usize),
    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Parse => 2,
                ErrorKind::Precondition | ErrorKind::Unsupported => 3,
                ErrorKind::Verification => 4,
            },
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 4,
            CliError::Json(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Tables { filter } => cmd_tables(&filter, format, out),
        Command::Sign { system, class, num } => cmd_sign(&system, &class, &num, format, out),
        Command::Legendre { n, q, eps } => cmd_legendre(n, q, &eps, format, out),
        Command::Classify { system } => cmd_classify(&system, format, out),
        Command::Verify { suite, threads, seed } => cmd_verify(&suite, threads, seed, format, out),
        Command::Dump { system } => {
            let label: Label = system.parse()?;
            out.push_str(&RootSystem::classical(label).or_else(|_| RootSystem::build(label))?.dump());
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T, out: &mut String) -> Result<(), CliError> {
    out.push_str(&serde_json::to_string_pretty(value)?);
    out.push('\n');
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_tables(filter: &str, format: Format, out: &mut String) -> Result<(), CliError> {
    let filter: TableFilter = filter.parse()?;
    let tables = tables::tables(filter)?;
    match format {
        Format::Text => out.push_str(&tables::render_text(&tables)),
        Format::Csv => out.push_str(&tables::render_csv(&tables)),
        Format::Json => json(&tables, out)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SignReport {
    system: String,
    class: String,
    class_name: Option<String>,
    numerator: String,
    sign: Sign,
    q: i64,
    orbits_w: usize,
    orbits_vw: usize,
    r_w_size: usize,
    provenance: rootsign::rtheta::Provenance,
}

fn cmd_sign(system: &str, class: &str, num: &str, format: Format, out: &mut String) -> Result<(), CliError> {
    let label: Label = system.parse()?;
    let resolved = resolve_class(label, class)?;
    let v = resolve_element(num, &resolved)?;
    let ctx = SignContext::new(&resolved.sys, &resolved.w)?;
    let value = ctx.sign(&v)?;
    let report = SignReport {
        system: label.to_string(),
        class: class.to_string(),
        class_name: resolved.entry.map(|e| e.name.clone()),
        numerator: num.to_string(),
        sign: value.sign,
        q: value.q,
        orbits_w: value.orbits_w,
        orbits_vw: value.orbits_vw,
        r_w_size: ctx.r_w().len(),
        provenance: value.provenance,
    };
    match format {
        Format::Text => {
            let _ = writeln!(out, "<v/w> = {}", report.sign);
            let _ = writeln!(out, "system: {}", report.system);
            let name = report.class_name.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
            let _ = writeln!(out, "class: {}{name}", report.class);
            let _ = writeln!(out, "numerator: {}", report.numerator);
            let _ = writeln!(out, "v w v^-1 = w^{}", report.q);
            let _ = writeln!(out, "|R_w| = {} ({})", report.r_w_size, report.provenance);
            let _ = writeln!(out, "|<w>\\R_w| = {}", report.orbits_w);
            let _ = writeln!(out, "|<v,w>\\R_w| = {}", report.orbits_vw);
        }
        Format::Json => json(&report, out)?,
        Format::Csv => {
            out.push_str("system,class,numerator,sign,q,orbits_w,orbits_vw,r_w_size,provenance\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                csv_field(&report.system),
                csv_field(&report.class),
                csv_field(&report.numerator),
                report.sign,
                report.q,
                report.orbits_w,
                report.orbits_vw,
                report.r_w_size,
                report.provenance
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct LegendreReport {
    n: i64,
    q: i64,
    eps: Sign,
    closed: Sign,
    brute: Sign,
}

fn cmd_legendre(n: i64, q: i64, eps: &str, format: Format, out: &mut String) -> Result<(), CliError> {
    let eps: Sign = match eps.trim() {
        "+" | "+1" | "1" | "plus" => Sign::Plus,
        "-" | "-1" | "minus" => Sign::Minus,
        other => return Err(CliError::Usage(format!("eps must be + or -, got {other:?}"))),
    };
    let closed = match eps {
        Sign::Plus => arith::sgn_plus(n, q)?,
        Sign::Minus => arith::sgn_minus(n, q)?,
    };
    let brute = arith::sgn_eps_bruteforce(n, q, eps)?;
    let report = LegendreReport { n, q, eps, closed, brute };
    let tag = if eps.is_plus() { "+" } else { "-" };
    match format {
        Format::Text => {
            let _ = writeln!(out, "sgn{tag}_{n}({q}) = {closed}");
            let _ = writeln!(out, "brute force: {brute}");
        }
        Format::Json => json(&report, out)?,
        Format::Csv => {
            out.push_str("n,q,eps,closed,brute\n");
            let _ = writeln!(out, "{n},{q},{tag},{closed},{brute}");
        }
    }
    if closed != brute {
        return Err(rootsign::Error::Verification(format!("closed form {closed} and brute force {brute} disagree")).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassRow {
    name: String,
    order: u64,
    size: Option<usize>,
    detail: String,
    provenance: &'static str,
}

fn class_rows(label: Label) -> Result<(Vec<ClassRow>, Option<usize>), CliError> {
    match label {
        Label::F4 => {
            let report = exhaustive_verify_f4()?;
            let rows = report
                .classes
                .iter()
                .map(|c| ClassRow {
                    name: c.name.clone().unwrap_or_else(|| "?".into()),
                    order: c.order,
                    size: Some(c.size),
                    detail: Registry::builtin()
                        .find(Label::F4, c.name.as_deref().unwrap_or(""))
                        .map(|e| e.cycles.clone())
                        .unwrap_or_default(),
                    provenance: "computed",
                })
                .collect();
            Ok((rows, Some(report.group_order)))
        }
        Label::G2 | Label::E(_) => Ok((
            Registry::builtin()
                .for_ambient(label)
                .map(|e| ClassRow {
                    name: e.name.clone(),
                    order: e.order,
                    size: None,
                    detail: e.cycles.clone(),
                    provenance: "asserted",
                })
                .collect(),
            None,
        )),
        _ => Ok((
            classical_elliptic_2power(label)?
                .into_iter()
                .map(|c| ClassRow {
                    name: c.name,
                    order: c.order,
                    size: None,
                    detail: if c.in_weyl { c.partition.to_string() } else { format!("{} outside W", c.partition) },
                    provenance: "computed",
                })
                .collect(),
            None,
        )),
    }
}

fn cmd_classify(system: &str, format: Format, out: &mut String) -> Result<(), CliError> {
    let label: Label = system.parse()?;
    let (rows, group_order) = class_rows(label)?;
    match format {
        Format::Text => {
            let _ = write!(out, "{label}: {} elliptic classes of 2-power order", rows.len());
            if let Some(g) = group_order {
                let _ = write!(out, " (|W| = {g}, enumerated)");
            }
            out.push('\n');
            for r in &rows {
                let size = r.size.map(|s| format!("  size {s}")).unwrap_or_default();
                let _ = writeln!(out, "  {:<12} order {:<2}{size}  {}  [{}]", r.name, r.order, r.detail, r.provenance);
            }
        }
        Format::Json => json(&rows, out)?,
        Format::Csv => {
            out.push_str("name,order,size,detail,provenance\n");
            for r in &rows {
                let size = r.size.map(|s| s.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{size},{},{}", csv_field(&r.name), r.order, csv_field(&r.detail), r.provenance);
            }
        }
    }
    Ok(())
}

fn cmd_verify(suite: &str, threads: usize, seed: u64, format: Format, out: &mut String) -> Result<(), CliError> {
    let opts = VerifyOptions {
        threads,
        seed,
        golden: Some(GOLDEN.to_string()),
    };
    let reports: Vec<SuiteReport> = if suite.eq_ignore_ascii_case("all") {
        verify::run_all(&opts)?
    } else {
        vec![verify::run(suite.parse::<Suite>()?, &opts)?]
    };
    match format {
        Format::Text => {
            for r in &reports {
                let _ = write!(out, "{r}");
            }
        }
        Format::Json => json(&reports, out)?,
        Format::Csv => {
            out.push_str("suite,number,check,cases,failures\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(out, "{},{},{},{},{}", r.suite, r.number, csv_field(&c.name), c.cases, c.failures);
                }
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.ok()).count();
    if failed > 0 {
        return Err(CliError::Failed(failed));
    }
    Ok(())
}
