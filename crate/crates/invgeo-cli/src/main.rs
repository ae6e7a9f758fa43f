//! `invgeo` — exact invariant-geometry computations for left-invariant
//! metrics on low-dimensional Lie groups.
//!
//! Exit codes: 0 success, 1 input error, 2 when `check` finds an
//! inconsistency or `paper-report` records failures.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use invgeo::families::{abelian, build, paper_report_with, FamilyId, Flip};
use invgeo::foliation::DistributionSplit;
use invgeo::lie::LieAlgebraSpec;
use invgeo::pipeline::{
    checks_section, connection_section, einstein_section, foliation_section, full_report,
    hermitian_sections, ricci_section, sectional_section, StructureChoice,
};
use invgeo::rational::Rational;
use invgeo::report::Report;
use invgeo::riemannian::levi_civita;

#[derive(Parser)]
#[command(
    name = "invgeo",
    about = "Exact symbolic geometry of left-invariant metrics on Lie groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify antisymmetry and the Jacobi identity
    Check(InputArgs),
    /// Print the Levi-Civita connection table
    Connection(InputArgs),
    /// Print sectional curvatures, the Ricci matrix and scalar curvature
    Curvature(InputArgs),
    /// Print the Einstein defect
    Einstein(InputArgs),
    /// Print Nijenhuis constraints, the covariant derivative of J and the
    /// Kähler verdict
    Hermitian(HermitianArgs),
    /// Print second fundamental forms and the foliation predicates
    Foliation(InputArgs),
    /// Re-verify every identity of the built-in golden tables
    PaperReport(PaperReportArgs),
    /// Substitute exact rational parameter values, then print the full report
    Eval(EvalArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Algebra description file
    file: Option<PathBuf>,
    /// Built-in family: general_s3, j1_integrable, both_integrable, g7, g3,
    /// or abelian4
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    /// Vertical distribution as comma-separated basis names, used when the
    /// input declares none
    #[arg(long, value_name = "NAMES")]
    vertical: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HermitianArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Which adapted structure to report
    #[arg(long = "j", value_parser = ["J1", "J2", "both"], default_value = "both")]
    structure: String,
}

#[derive(Args)]
struct PaperReportArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Inject a flipped convention (debugging aid): curvature, koszul or
    /// nijenhuis
    #[arg(long, hide = true)]
    flip: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Exact substitutions, e.g. `z2=1,theta1=1/2`
    #[arg(long, value_name = "ASSIGNMENTS")]
    set: Option<String>,
}

fn main() -> ExitCode {
    // usage errors are input errors (exit 1); --help and --version exit 0
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check(args) => {
            let spec = load_spec(&args)?;
            let section = checks_section(&spec);
            let consistent = section
                .entries
                .iter()
                .filter(|(k, _)| k == "antisymmetry" || k == "jacobi")
                .all(|(_, v)| v == "ok");
            let mut report = Report::new();
            report.push(section);
            emit(&report, args.format, args.out.as_deref())?;
            Ok(ExitCode::from(if consistent { 0 } else { 2 }))
        }
        Command::Connection(args) => {
            let spec = load_spec(&args)?;
            let conn = levi_civita(&spec);
            let mut report = Report::new();
            report.push(connection_section(&spec, &conn));
            emit(&report, args.format, args.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curvature(args) => {
            let spec = load_spec(&args)?;
            let conn = levi_civita(&spec);
            let mut report = Report::new();
            report.push(sectional_section(&spec, &conn));
            report.push(ricci_section(&spec, &conn));
            emit(&report, args.format, args.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Einstein(args) => {
            let spec = load_spec(&args)?;
            let conn = levi_civita(&spec);
            let mut report = Report::new();
            report.push(einstein_section(&spec, &conn));
            emit(&report, args.format, args.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hermitian(args) => {
            let spec = load_spec(&args.input)?;
            let choice = match args.structure.as_str() {
                "J1" => StructureChoice::J1,
                "J2" => StructureChoice::J2,
                _ => StructureChoice::Both,
            };
            let conn = levi_civita(&spec);
            let sections = hermitian_sections(&spec, &conn, choice).map_err(|e| e.to_string())?;
            let mut report = Report::new();
            for section in sections {
                report.push(section);
            }
            emit(&report, args.input.format, args.input.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Foliation(args) => {
            let spec = load_spec(&args)?;
            let split = DistributionSplit::from_spec(&spec).map_err(|e| e.to_string())?;
            let conn = levi_civita(&spec);
            let mut report = Report::new();
            report.push(foliation_section(&spec, &conn, &split));
            emit(&report, args.format, args.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PaperReport(args) => {
            let flip = match &args.flip {
                Some(name) => Flip::from_str(name).map_err(|e| e.to_string())?,
                None => Flip::None,
            };
            let report = paper_report_with(flip);
            let rendered = match args.format {
                Format::Text => report.to_text(),
                Format::Json => {
                    let mut json = report.to_report().to_json();
                    json.push('\n');
                    json
                }
            };
            write_output(&rendered, args.out.as_deref())?;
            Ok(ExitCode::from(if report.is_clean() { 0 } else { 2 }))
        }
        Command::Eval(args) => {
            let spec = load_spec(&args.input)?;
            let spec = match &args.set {
                Some(assignments) => {
                    let values = parse_assignments(assignments)?;
                    spec.substitute_values(&values).map_err(|e| e.to_string())?
                }
                None => spec,
            };
            let report = full_report(&spec);
            emit(&report, args.input.format, args.input.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_spec(args: &InputArgs) -> Result<LieAlgebraSpec, String> {
    let spec = match (&args.file, &args.family) {
        (Some(path), None) => load_file(path)?,
        (None, Some(name)) => load_family(name)?,
        (None, None) => return Err("no input: pass a file or --family <id>".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    apply_vertical(spec, args.vertical.as_deref())
}

fn load_file(path: &Path) -> Result<LieAlgebraSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read `{}`: {e}", path.display()))?;
    let doc = invgeo::algebra::parse_algebra_file(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    doc.to_spec()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn load_family(name: &str) -> Result<LieAlgebraSpec, String> {
    if name == "abelian4" {
        return Ok(abelian(4));
    }
    FamilyId::from_str(name)
        .map(build)
        .map_err(|e| e.to_string())
}

/// Precedence: the input's own vertical declaration, else `--vertical`, else
/// the last two basis vectors in dimension 4.
fn apply_vertical(spec: LieAlgebraSpec, vertical: Option<&str>) -> Result<LieAlgebraSpec, String> {
    if spec.vertical().is_some() {
        return Ok(spec);
    }
    if let Some(names) = vertical {
        let mut indices = BTreeSet::new();
        for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let idx = spec
                .basis_index(name)
                .ok_or_else(|| format!("unknown basis vector `{name}` in --vertical"))?;
            indices.insert(idx);
        }
        if indices.is_empty() {
            return Err("--vertical names no basis vectors".into());
        }
        return spec
            .with_vertical(Some(indices.into_iter().collect()))
            .map_err(|e| e.to_string());
    }
    if spec.dim() == 4 {
        let dim = spec.dim();
        return spec
            .with_vertical(Some(vec![dim - 2, dim - 1]))
            .map_err(|e| e.to_string());
    }
    Ok(spec)
}

fn parse_assignments(text: &str) -> Result<Vec<(String, Rational)>, String> {
    let mut values = Vec::new();
    for piece in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = piece
            .split_once('=')
            .ok_or_else(|| format!("bad assignment `{piece}`; expected name=rational"))?;
        let rational = Rational::from_str(value.trim())
            .map_err(|_| format!("bad rational `{}` in --set", value.trim()))?;
        values.push((name.trim().to_string(), rational));
    }
    if values.is_empty() {
        return Err("--set lists no assignments".into());
    }
    Ok(values)
}

fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<(), String> {
    let rendered = match format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut json = report.to_json();
            json.push('\n');
            json
        }
    };
    write_output(&rendered, out)
}

fn write_output(rendered: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write `{}`: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}
