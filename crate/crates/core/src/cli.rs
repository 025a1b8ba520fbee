//! Command-line front end: `analyze`, `validate` and `serve`.
//!
//! Exit codes: 0 success, 1 the program has parse errors, 2 bad invocation,
//! unreadable input or invalid machine config.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analyzer::{analyze, AnalyzeOptions, Report, SeverityBins, SeverityClass};
use crate::emit::{emit_csv, emit_json, emit_svg, SvgStyle, SvgView};
use crate::gcode::{parse_program, ParseDiagnostic, Severity};
use crate::geometry::{Plane, Point3, ToolPath};
use crate::kinematics::{MachineConfig, MachineLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE_ERRORS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kerf", version, about = "Predicts where a machine tool cannot hold the programmed feed")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse, analyze and report on a G-code program.
    Analyze(AnalyzeArgs),
    /// Parse a G-code program and report diagnostics only.
    Validate(ValidateArgs),
    /// Run the HTTP analysis service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// G-code program.
    pub input: PathBuf,
    /// Machine configuration JSON.
    #[arg(long, env = "KERF_MACHINE")]
    pub machine: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the CSV tables here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the SVG drawing here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ViewArg::Ncu)]
    pub view: ViewArg,
    #[arg(long, value_enum, default_value_t = PlaneArg::Xy)]
    pub plane: PlaneArg,
    /// Severity bin edges in percent, `moderate,high,severe`.
    #[arg(long, value_parser = parse_bins)]
    pub bins: Option<SeverityBins>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// G-code program.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: std::net::IpAddr,
    /// Directory served under `/`, for the viewer bundle.
    #[arg(long = "static")]
    pub static_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ViewArg {
    Ncu,
    Discontinuity,
}

impl From<ViewArg> for SvgView {
    fn from(v: ViewArg) -> Self {
        match v {
            ViewArg::Ncu => SvgView::Ncu,
            ViewArg::Discontinuity => SvgView::Discontinuity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Xy,
    Xz,
    Yz,
}

impl From<PlaneArg> for Plane {
    fn from(p: PlaneArg) -> Self {
        match p {
            PlaneArg::Xy => Plane::Xy,
            PlaneArg::Xz => Plane::Xz,
            PlaneArg::Yz => Plane::Yz,
        }
    }
}

fn parse_bins(s: &str) -> Result<SeverityBins, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    let [moderate, high, severe] = parts[..] else {
        return Err(format!("expected three comma-separated edges, got {}", parts.len()));
    };
    let bins = SeverityBins { moderate, high, severe };
    bins.validate()?;
    Ok(bins)
}

/// A failure that ends the command with a message and an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::Serve(args) => cmd_serve(&args),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("kerf: {}", f.message);
            f.code
        }
    }
}

fn read_text(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {what} {}: {e}", path.display())))
}

pub fn load_machine(path: &Path) -> Result<MachineLimits, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read machine config {}: {e}", path.display()))?;
    let config = MachineConfig::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(config.limits())
}

/// Prints diagnostics to stderr; returns whether any is an error.
fn report_diagnostics(input: &Path, diags: &[ParseDiagnostic]) -> bool {
    let mut stderr = std::io::stderr().lock();
    for d in diags {
        let _ = writeln!(stderr, "{}:{d}", input.display());
    }
    diags.iter().any(|d| d.severity == Severity::Error)
}

fn parse_input(input: &Path) -> Result<(ToolPath, Vec<ParseDiagnostic>), Failure> {
    let text = read_text(input, "program")?;
    Ok(parse_program(&text, Point3::ORIGIN))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Line-oriented `key: value` summary; keys are stable.
pub fn summary(report: &Report) -> String {
    let mut s = String::new();
    let h = &report.histograms;
    let _ = writeln!(s, "blocks: {}", report.path.block_count);
    let _ = writeln!(s, "total_length_mm: {:.6}", report.path.total_length);
    let _ = writeln!(s, "junctions: {}", report.junctions.len());
    for c in SeverityClass::ALL {
        let _ = writeln!(s, "severity.{}: {}", c.name(), h.severity.get(c));
    }
    let _ = writeln!(s, "length.Critical: {}", h.length.critical);
    let _ = writeln!(s, "length.Marginal: {}", h.length.marginal);
    let _ = writeln!(s, "length.Ok: {}", h.length.ok);
    let _ = writeln!(s, "programmed_time_s: {:.6}", report.path.programmed_cycle_time);
    let _ = writeln!(s, "estimated_time_s: {:.6}", report.estimated_cycle_time);
    match report.worst_junction() {
        Some(j) => {
            let _ = writeln!(
                s,
                "worst_junction: {} line {} {} {} reduction {:.1}% predicted {}",
                j.index,
                j.source_line,
                j.kind.name(),
                j.severity.name(),
                j.reduction_pct,
                if j.predicted_feed.is_finite() {
                    format!("{:.3} mm/s", j.predicted_feed)
                } else {
                    "unbounded".to_string()
                },
            );
        }
        None => {
            let _ = writeln!(s, "worst_junction: none");
        }
    }
    for note in &report.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<i32, Failure> {
    let (path, diags) = parse_input(&args.input)?;
    let machine = load_machine(&args.machine).map_err(usage)?;
    if report_diagnostics(&args.input, &diags) {
        return Ok(EXIT_PARSE_ERRORS);
    }
    if path.is_empty() {
        return Err(usage(format!("{}: no motion blocks", args.input.display())));
    }
    let options = AnalyzeOptions { bins: args.bins.unwrap_or_default(), ..AnalyzeOptions::default() };
    let report = analyze(&path, &machine, &options).map_err(|e| usage(format!("{}: {e}", args.input.display())))?;

    // render everything before touching the filesystem
    let mut outputs: Vec<(&Path, Vec<u8>)> = Vec::new();
    if let Some(p) = &args.json {
        outputs.push((p, emit_json(&report)));
    }
    if let Some(p) = &args.csv {
        outputs.push((p, emit_csv(&report).into_bytes()));
    }
    if let Some(p) = &args.svg {
        let style = SvgStyle { plane: args.plane.into(), ..SvgStyle::default() };
        let svg = emit_svg(&report, &path, &style, args.view.into()).map_err(|e| usage(e.to_string()))?;
        outputs.push((p, svg.into_bytes()));
    }
    for (p, bytes) in &outputs {
        write_atomic(p, bytes).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
    }

    let mut out = summary(&report);
    for (p, _) in &outputs {
        let _ = writeln!(out, "wrote: {}", p.display());
    }
    print!("{out}");
    Ok(EXIT_OK)
}

fn cmd_validate(args: &ValidateArgs) -> Result<i32, Failure> {
    let (path, diags) = parse_input(&args.input)?;
    let has_errors = report_diagnostics(&args.input, &diags);
    let errors = diags.iter().filter(|d| d.severity == Severity::Error).count();
    println!("blocks: {}", path.len());
    println!("errors: {errors}");
    println!("warnings: {}", diags.len() - errors);
    Ok(if has_errors { EXIT_PARSE_ERRORS } else { EXIT_OK })
}

fn cmd_serve(args: &ServeArgs) -> Result<i32, Failure> {
    if let Some(dir) = &args.static_dir {
        if !dir.is_dir() {
            return Err(usage(format!("static directory {} does not exist", dir.display())));
        }
    }
    let addr = SocketAddr::new(args.bind, args.port);
    let config = crate::service::ServiceConfig { static_dir: args.static_dir.clone() };
    let rt = tokio::runtime::Runtime::new().map_err(|e| usage(format!("cannot start runtime: {e}")))?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        println!("listening on http://{}", listener.local_addr()?);
        crate::service::serve(listener, config).await
    })
    .map_err(|e| usage(format!("cannot serve on {addr}: {e}")))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bins_parse() {
        assert_eq!(parse_bins("5, 25,75").unwrap(), SeverityBins { moderate: 5.0, high: 25.0, severe: 75.0 });
        assert!(parse_bins("5,25").is_err());
        assert!(parse_bins("50,25,75").is_err());
        assert!(parse_bins("a,b,c").is_err());
    }

    #[test]
    fn missing_machine_is_usage_error() {
        // the env fallback must not leak into this check
        if std::env::var_os("KERF_MACHINE").is_none() {
            assert_eq!(run(["kerf", "analyze", "part.nc"]), EXIT_USAGE);
        }
        assert_eq!(run(["kerf", "frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
