//! Command-line entry point.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use soqc::config::{OutputFormat, VerifyConfig};
use soqc::context::SuiteContext;
use soqc::report::Report;
use soqc_core::chartab::{char_table, CharTable};
use soqc_core::error::Error;
use soqc_core::fq::{FieldTable, Fq};
use soqc_core::group::{Group, GroupKind};

#[derive(Parser)]
#[command(
    name = "soqc",
    version,
    about = "Exact verifier for identities of small orthogonal and general linear groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run named checks over one configuration and print a report.
    Verify(VerifyArgs),
    /// Print the character table of one group.
    Table(TableArgs),
    /// Print the twisted gamma-factor table.
    Gamma(GammaArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Field characteristic (an odd prime).
    #[arg(long)]
    p: u64,
    /// Field extension degree.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Rank: the even orthogonal group has size 2l.
    #[arg(long)]
    l: usize,
    /// Override for the quadratic non-residue defining the form.
    #[arg(long)]
    rho: Option<Fq>,
    /// Comma-separated check names, `all`, or the alias `weyl-only`.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Report format: json or md.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for running checks (capped by SOQC_MAX_JOBS).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct TableArgs {
    /// Field characteristic (an odd prime).
    #[arg(long)]
    p: u64,
    /// Field extension degree.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Group family: so-even, so-odd, or gl.
    #[arg(long)]
    group: String,
    /// Family parameter: rank l for so-even (size 2l) and so-odd
    /// (size 2l+1), matrix size n for gl.
    #[arg(long)]
    size: usize,
    /// Override for the quadratic non-residue defining the form.
    #[arg(long)]
    rho: Option<Fq>,
    /// Output format: json or md.
    #[arg(long, default_value = "md")]
    format: String,
}

#[derive(Args)]
struct GammaArgs {
    /// Field characteristic (an odd prime).
    #[arg(long)]
    p: u64,
    /// Field extension degree.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Rank: the even orthogonal group has size 2l.
    #[arg(long)]
    l: usize,
    /// Override for the quadratic non-residue defining the form.
    #[arg(long)]
    rho: Option<Fq>,
    /// Output format: json or md.
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(a) => run_verify(a),
        Command::Table(a) => run_table(a),
        Command::Gamma(a) => run_gamma(a),
    }
}

fn parse_format(s: &str) -> Option<OutputFormat> {
    match s {
        "json" => Some(OutputFormat::Json),
        "md" => Some(OutputFormat::Markdown),
        _ => None,
    }
}

fn fail_code(e: &Error) -> ExitCode {
    match e {
        Error::InvalidParameter(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Markdown => report.to_markdown(),
    }
}

fn emit(body: &str, out: Option<&PathBuf>) -> Result<(), ExitCode> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| {
            eprintln!("soqc: cannot write {}: {e}", path.display());
            ExitCode::from(1)
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run_verify(a: VerifyArgs) -> ExitCode {
    let Some(format) = parse_format(&a.format) else {
        eprintln!("soqc: unknown format `{}` (expected json or md)", a.format);
        return ExitCode::from(2);
    };
    let cfg = match VerifyConfig::new(a.p, a.r, a.l, a.rho, &a.checks, a.jobs) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("soqc: {e}");
            return ExitCode::from(2);
        }
    };
    let t0 = Instant::now();
    let report = match soqc::run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("soqc: {e}");
            return fail_code(&e);
        }
    };
    let body = render(&report, format);
    if let Err(code) = emit(&body, a.out.as_ref()) {
        return code;
    }
    let (passed, failed, skipped) = report.counts();
    eprintln!(
        "soqc: {passed} passed, {failed} failed, {skipped} skipped in {:.1}s",
        t0.elapsed().as_secs_f64()
    );
    if report.any_fail() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_table(a: TableArgs) -> ExitCode {
    let Some(format) = parse_format(&a.format) else {
        eprintln!("soqc: unknown format `{}` (expected json or md)", a.format);
        return ExitCode::from(2);
    };
    let (kind, label) = match a.group.as_str() {
        "so-even" => {
            if a.size < 2 {
                eprintln!("soqc: so-even needs --size at least 2");
                return ExitCode::from(2);
            }
            (GroupKind::SoEvenQs { l: a.size }, format!("so-even-{}", 2 * a.size))
        }
        "so-odd" => {
            if a.size < 1 {
                eprintln!("soqc: so-odd needs --size at least 1");
                return ExitCode::from(2);
            }
            (GroupKind::SoOdd { l: a.size }, format!("so-odd-{}", 2 * a.size + 1))
        }
        "gl" => {
            if a.size < 1 {
                eprintln!("soqc: gl needs --size at least 1");
                return ExitCode::from(2);
            }
            (GroupKind::Gl { n: a.size }, format!("gl-{}", a.size))
        }
        other => {
            eprintln!("soqc: unknown group `{other}` (expected so-even, so-odd, or gl)");
            return ExitCode::from(2);
        }
    };
    let f = match build_field(a.p, a.r, a.rho) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("soqc: {e}");
            return ExitCode::from(2);
        }
    };
    let label = format!("{label} over F_{}", f.q);
    let t0 = Instant::now();
    let g = match Group::enumerate(f, kind) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("soqc: {e}");
            return fail_code(&e);
        }
    };
    let ct = match char_table(&g) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("soqc: {e}");
            return fail_code(&e);
        }
    };
    let body = match format {
        OutputFormat::Json => table_json(&label, &g, &ct),
        OutputFormat::Markdown => table_md(&label, &g, &ct),
    };
    print!("{body}");
    eprintln!(
        "soqc: {} irreducible rows over {} classes in {:.1}s",
        ct.num_irreps(),
        g.classes().count(),
        t0.elapsed().as_secs_f64()
    );
    ExitCode::SUCCESS
}

fn build_field(p: u64, r: u32, rho: Option<Fq>) -> soqc_core::Result<Arc<FieldTable>> {
    let f = FieldTable::new(p, r)?;
    let f = match rho {
        Some(x) => f.with_rho(x)?,
        None => f,
    };
    Ok(Arc::new(f))
}

fn table_md(label: &str, g: &Group, ct: &CharTable) -> String {
    let cls = g.classes();
    let m = cls.count();
    let mut s = format!("# Character table: {label}\n\n");
    s.push_str(&format!("Group order {}, {m} conjugacy classes.\n\n", g.order()));
    s.push_str("| row | degree |");
    for c in 0..m {
        s.push_str(&format!(" c{c} |"));
    }
    s.push_str("\n|---|---|");
    for _ in 0..m {
        s.push_str("---|");
    }
    s.push('\n');
    s.push_str("| class size | |");
    for c in 0..m {
        s.push_str(&format!(" {} |", cls.sizes[c]));
    }
    s.push_str("\n| element order | |");
    for c in 0..m {
        s.push_str(&format!(" {} |", cls.rep_orders[c]));
    }
    s.push('\n');
    for (i, row) in ct.values.iter().enumerate() {
        s.push_str(&format!("| {i} | {} |", ct.degrees[i]));
        for v in row {
            s.push_str(&format!(" {} |", v.canonical_string()));
        }
        s.push('\n');
    }
    s
}

fn table_json(label: &str, g: &Group, ct: &CharTable) -> String {
    let cls = g.classes();
    let classes: Vec<serde_json::Value> = (0..cls.count())
        .map(|c| {
            serde_json::json!({
                "index": c,
                "size": cls.sizes[c],
                "representative_order": cls.rep_orders[c],
            })
        })
        .collect();
    let rows: Vec<serde_json::Value> = ct
        .values
        .iter()
        .enumerate()
        .map(|(i, row)| {
            serde_json::json!({
                "row": i,
                "degree": ct.degrees[i],
                "values": row.iter().map(|v| v.canonical_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let root = serde_json::json!({
        "group": label,
        "order": g.order(),
        "classes": classes,
        "rows": rows,
    });
    let mut s = serde_json::to_string_pretty(&root).expect("table serializes");
    s.push('\n');
    s
}

fn run_gamma(a: GammaArgs) -> ExitCode {
    let Some(format) = parse_format(&a.format) else {
        eprintln!("soqc: unknown format `{}` (expected json or md)", a.format);
        return ExitCode::from(2);
    };
    let mut cfg = match VerifyConfig::new(a.p, a.r, a.l, a.rho, "gamma-welldef-3.4", 1) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("soqc: {e}");
            return ExitCode::from(2);
        }
    };
    cfg.checks_label = "none".to_string();
    let t0 = Instant::now();
    let ctx = match SuiteContext::build(&cfg) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("soqc: {e}");
            return fail_code(&e);
        }
    };
    let report = Report::assemble(&ctx, Vec::new());
    let body = render(&report, format);
    print!("{body}");
    let undefined = report.gamma.iter().filter(|e| e.value.starts_with("undefined")).count();
    eprintln!(
        "soqc: {} gamma entries ({} undefined) in {:.1}s",
        report.gamma.len(),
        undefined,
        t0.elapsed().as_secs_f64()
    );
    if undefined > 0 || report.gamma.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
