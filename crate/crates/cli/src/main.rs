use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use deform_core::arith::field::{parse_rational, Rational};
use deform_core::engine::{associativity_witness, to_polynomial_type, EngineError, Verdict};
use deform_core::expr::parse_relations;
use deform_core::free::{FreePolynomial, WeightedGrading};
use deform_core::pipeline::{table_report, Pipeline, PipelineError};
use deform_core::problem::{parse_problem, ProblemError, ProblemFile};
use deform_core::report::{zeta_csv, RunReport, TableExport};
use deform_core::scenario::{a8_groebner_relations, build_a8_with, build_m2_toy, A8Construction, A8Params};

#[derive(Parser)]
#[command(name = "deform", version, about = "Flat deformations of finite-dimensional algebras")]
struct Cli {
    /// Write the machine-readable report (JSON) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Override the problem's candidate budget for the image basis.
    #[arg(long, global = true)]
    word_budget: Option<usize>,
    /// Suppress the human-readable report.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Image basis only.
    Analyze { file: PathBuf },
    /// Structure constants and the special fiber.
    Fiber {
        file: PathBuf,
        /// Export the t-parametrized table.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Export the constant terms as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check a problem file end to end, or an exported table.
    Verify { file: PathBuf },
    /// Structure of the family at t = s.
    Specialize {
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Check a presentation of the special fiber.
    Present {
        file: PathBuf,
        #[arg(long)]
        relations: PathBuf,
        #[arg(long, value_parser = parse_weights)]
        weights: Option<WeightedGrading>,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Polynomial-type table with common denominator h.
    Polytype {
        file: PathBuf,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Certified interval (0, s_max] of flat semisimple fibers.
    Flatcert {
        file: PathBuf,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// The built-in A8 deformation.
    A8 {
        /// i,j,k,s1,s2; defaults depend on the construction.
        #[arg(long)]
        params: Option<A8Params>,
        /// `literal` uses f(x) = t^s1 E12 + t^i h(u); `rescaled` drops the t^i.
        #[arg(long, default_value_t = A8Construction::Literal)]
        construction: A8Construction,
    },
    /// The built-in 2x2 matrix example.
    ToyM2,
}

fn parse_weights(s: &str) -> Result<WeightedGrading, String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{e}"))?;
    WeightedGrading::new(a, b).ok_or_else(|| "weights must be positive".into())
}

enum Failure {
    Verification(String),
    Input(String),
    Exhausted(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Exhausted(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Input(m) | Failure::Exhausted(m) => m,
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let msg = e.to_string();
        if e.is_exhaustion() {
            Failure::Exhausted(msg)
        } else if e.is_input() || matches!(e, PipelineError::Problem(ProblemError::Engine(EngineError::NotLaurent { .. }))) {
            Failure::Input(msg)
        } else {
            Failure::Verification(msg)
        }
    }
}

struct Ctx {
    out: Option<PathBuf>,
    word_budget: Option<usize>,
    quiet: bool,
}

impl Ctx {
    fn emit(&self, report: &RunReport) -> Result<(), Failure> {
        if !self.quiet {
            print!("{report}");
        }
        if let Some(p) = &self.out {
            write(p, &report.to_json())?;
        }
        Ok(())
    }

    fn pipeline(&self, name: &str, problem: &ProblemFile) -> Result<Pipeline, Failure> {
        Ok(Pipeline::new(name, problem, self.word_budget)?)
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ProblemFile, Failure> {
    parse_problem(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn name_of(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn check_report(report: &RunReport) -> Result<(), Failure> {
    if report.associative == Some(false) {
        return Err(Failure::Verification("table is not associative".into()));
    }
    if let Some(p) = &report.poly_type {
        if !p.h_at_zero_is_one || !p.sigma_at_zero_is_zeta {
            return Err(Failure::Verification("polynomial-type form is inconsistent".into()));
        }
    }
    if let Some(p) = &report.presentation {
        match p.verdict {
            Verdict::Isomorphic { .. } => {}
            Verdict::Inconclusive => return Err(Failure::Exhausted("quotient dimension not certified within the bound".into())),
            _ => return Err(Failure::Verification(deform_core::report::verdict_text(&p.verdict))),
        }
    }
    Ok(())
}

fn verify(ctx: &Ctx, path: &Path) -> Result<(), Failure> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if value.get("entries").is_some() {
        let export: TableExport =
            serde_json::from_value(value).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let table = export.to_table().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let report = table_report(&name_of(path), &table)?;
        ctx.emit(&report)?;
        if let Some((a, b, c, i)) = associativity_witness(&table) {
            return Err(Failure::Verification(format!(
                "associativity fails for basis triple ({}, {}, {}) in coordinate {}",
                a + 1,
                b + 1,
                c + 1,
                i + 1
            )));
        }
        return check_report(&report);
    }
    let problem = parse_problem(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let p = ctx.pipeline(&name_of(path), &problem)?;
    let report = p.full_report(None)?;
    ctx.emit(&report)?;
    check_report(&report)
}

fn full(ctx: &Ctx, name: &str, problem: &ProblemFile, rels: Option<&[FreePolynomial<Rational>]>) -> Result<(), Failure> {
    let p = ctx.pipeline(name, problem)?;
    let report = p.full_report(rels)?;
    ctx.emit(&report)?;
    check_report(&report)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = Ctx { out: cli.out, word_budget: cli.word_budget, quiet: cli.quiet };
    match cli.command {
        Command::Analyze { file } => {
            let p = ctx.pipeline(&name_of(&file), &load(&file)?)?;
            let report = RunReport { scenario: p.name.clone(), basis: Some(p.basis_summary()), ..RunReport::default() };
            ctx.emit(&report)
        }
        Command::Fiber { file, table, csv } => {
            let p = ctx.pipeline(&name_of(&file), &load(&file)?)?;
            if let Some(path) = table {
                write(&path, &TableExport::from_table(&p.table).to_json())?;
            }
            if let Some(path) = csv {
                write(&path, &zeta_csv(&p.table))?;
            }
            let report = p.table_report()?;
            ctx.emit(&report)?;
            check_report(&report)
        }
        Command::Verify { file } => verify(&ctx, &file),
        Command::Specialize { file, at } => {
            let s = parse_rational(&at).ok_or_else(|| Failure::Input(format!("--at: not a rational: {at:?}")))?;
            let p = ctx.pipeline(&name_of(&file), &load(&file)?)?;
            let report = RunReport {
                scenario: p.name.clone(),
                basis: Some(p.basis_summary()),
                specializations: vec![p.specialize(&s)?],
                ..RunReport::default()
            };
            ctx.emit(&report)
        }
        Command::Present { file, relations, weights, bound } => {
            let rels = parse_relations(&read(&relations)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", relations.display())))?;
            let p = ctx.pipeline(&name_of(&file), &load(&file)?)?;
            let grading = weights.unwrap_or_else(|| p.grading());
            let presentation = p.presentation(&rels, grading, bound.unwrap_or(p.options.degree_bound))?;
            let report = RunReport {
                scenario: p.name.clone(),
                basis: Some(p.basis_summary()),
                presentation: Some(presentation),
                ..RunReport::default()
            };
            ctx.emit(&report)?;
            check_report(&report)
        }
        Command::Polytype { file, table } => {
            let p = ctx.pipeline(&name_of(&file), &load(&file)?)?;
            if let Some(path) = table {
                write(&path, &TableExport::from_poly_type(&to_polynomial_type(&p.table)).to_json())?;
            }
            let mut report = p.table_report()?;
            report.fiber = None;
            ctx.emit(&report)?;
            check_report(&report)
        }
        Command::Flatcert { file, depth } => {
            let p = ctx.pipeline(&name_of(&file), &load(&file)?)?;
            let cert = p.flatness(depth)?;
            let mut s = cert.s_max.clone();
            let mut specializations = Vec::new();
            for _ in 0..3 {
                specializations.push(p.specialize(&s)?);
                s /= Rational::from_integer(2.into());
            }
            let report = RunReport {
                scenario: p.name.clone(),
                basis: Some(p.basis_summary()),
                flatness: Some(cert),
                specializations,
                ..RunReport::default()
            };
            ctx.emit(&report)
        }
        Command::A8 { params, construction } => {
            let params = params.unwrap_or(match construction {
                A8Construction::Literal => A8Params::default(),
                A8Construction::Rescaled => A8Params::rescaled_default(),
            });
            let problem = build_a8_with(params, construction).map_err(|e| Failure::Input(e.to_string()))?;
            full(&ctx, &format!("a8 {construction} ({params})"), &problem, Some(&a8_groebner_relations()))
        }
        Command::ToyM2 => full(&ctx, "toy-m2", &build_m2_toy(), None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
