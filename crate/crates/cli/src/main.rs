use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use edgereg::betti::{betti_table, regularity};
use edgereg::closed_form::formula;
use edgereg::constructions::{edge_ideal, CycleIdeal};
use edgereg::verify::{
    parse_alphabet, parse_range, reproduce_examples, run_campaign, run_structure_checks, CampaignReport, CampaignSpec,
    Family, StructureSpec, VerificationRecord,
};
use edgereg::{EngineConfig, Field, MonomialIdeal, WeightedDigraph};

/// Exit status for bad input or internal errors.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "edgereg", version, about = "Edge ideals of vertex-weighted oriented graphs: Betti numbers, regularity, closed forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the edge ideal of a graph.
    Ideal {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Ordered generators of I(C_n)^t as CSV (index, vector, monomial).
    Basis {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: u32,
    },
    /// Graded Betti table of an ideal or of a power of an edge ideal.
    Betti {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Castelnuovo-Mumford regularity with a witnessing (i, j).
    Reg {
        #[command(flatten)]
        input: IdealInput,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Closed-form regularity of I(D)^t as JSON.
    Formula {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Reproduce the reference examples, run campaigns or structure checks.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// The four fixed reference instances.
    Examples {
        #[arg(long, default_value = "Q")]
        field: Field,
    },
    /// Formula against engine over a graph family.
    Campaign(CampaignArgs),
    /// Decomposition, order, edge divisibility, colon and splitting checks on cycles.
    Structure(StructureArgs),
}

#[derive(Args)]
struct IdealInput {
    /// Graph file; the ideal is its edge ideal.
    #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
    graph: Option<PathBuf>,
    /// Ideal in text form, e.g. "(x1*x2^2, x2*x3^2)".
    #[arg(long)]
    ideal: Option<String>,
    /// Power to take before computing.
    #[arg(long, default_value_t = 1)]
    t: u32,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, default_value = "Q")]
    field: Field,
    #[arg(long)]
    lattice_cap: Option<usize>,
    #[arg(long)]
    face_cap: Option<usize>,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        let mut c = EngineConfig::with_field(self.field);
        if let Some(cap) = self.lattice_cap {
            c.lattice_cap = cap;
        }
        if let Some(cap) = self.face_cap {
            c.face_cap = cap;
        }
        c
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Grid,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long)]
    family: Family,
    /// Inclusive range, e.g. 3..5.
    #[arg(long, default_value = "3..4")]
    n: String,
    #[arg(long, default_value = "1..2")]
    t: String,
    /// Weight alphabet, e.g. 2,3.
    #[arg(long, default_value = "2,3")]
    weights: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 12)]
    samples: usize,
    #[arg(long, default_value_t = 64)]
    exhaustive_cap: usize,
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    engine: EngineArgs,
    /// JSON report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the records as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Leave timing fields out of the JSON report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct StructureArgs {
    #[arg(long, default_value = "3..5")]
    n: String,
    #[arg(long, default_value = "1..2")]
    t: String,
    #[arg(long, default_value = "2,3")]
    weights: String,
    #[arg(long, default_value = "Q")]
    field: Field,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn load_graph(path: &Path) -> Result<WeightedDigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (graph, report) = WeightedDigraph::from_json(&text).with_context(|| format!("loading {}", path.display()))?;
    eprint!("{report}");
    Ok(graph)
}

fn load_ideal(input: &IdealInput) -> Result<MonomialIdeal> {
    let base = match (&input.graph, &input.ideal) {
        (Some(path), _) => edge_ideal(&load_graph(path)?)?,
        (None, Some(text)) => MonomialIdeal::parse_infer(text)?,
        (None, None) => bail!("one of --graph or --ideal is required"),
    };
    Ok(base.power(input.t)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Ideal { graph } => {
            println!("{}", edge_ideal(&load_graph(&graph)?)?);
        }
        Command::Basis { graph, t } => {
            let cycle = CycleIdeal::new(&load_graph(&graph)?)?;
            let basis = cycle.ordered_power_basis(t)?;
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["index", "vector", "monomial"])?;
            for (k, e) in basis.entries().iter().enumerate() {
                let vector = e.vector.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                w.write_record([(k + 1).to_string(), vector, e.monomial.display(cycle.vars()).to_string()])?;
            }
            w.flush()?;
        }
        Command::Betti { input, format, engine } => {
            let ideal = load_ideal(&input)?;
            let table = betti_table(&ideal, &engine.config())?;
            match format {
                Format::Json => println!("{}", table.to_json(Some(&ideal))),
                Format::Grid => print!("{}", table.grid()),
            }
        }
        Command::Reg { input, engine } => {
            let r = regularity(&load_ideal(&input)?, &engine.config())?;
            println!("{}", r.value);
            println!("witness: i={} j={}", r.i, r.j);
        }
        Command::Formula { graph, t } => {
            let result = formula(&load_graph(&graph)?, t)?;
            println!("{}", serde_json::to_string_pretty(&result)?);
        }
        Command::Verify { what } => return verify(what),
    }
    Ok(0)
}

fn verify(what: Verify) -> Result<u8> {
    match what {
        Verify::Examples { field } => {
            let outcomes = reproduce_examples(&EngineConfig::with_field(field));
            for o in &outcomes {
                let show = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
                println!(
                    "{} {:<28} engine {:>3} (expected {:>3})  formula {:>3} (expected {:>3})  {}",
                    if o.pass { "PASS" } else { "FAIL" },
                    o.name,
                    show(o.engine),
                    o.expected_engine,
                    show(o.formula),
                    o.expected_formula,
                    o.error.clone().unwrap_or_else(|| o.violations.join("; ")),
                );
            }
            Ok(if outcomes.iter().all(|o| o.pass) { 0 } else { 1 })
        }
        Verify::Campaign(args) => {
            let mut spec = CampaignSpec::new(args.family, parse_range(&args.n)?, parse_range(&args.t)?, parse_alphabet(&args.weights)?);
            spec.seed = args.seed;
            spec.samples = args.samples;
            spec.exhaustive_cap = args.exhaustive_cap;
            spec.workers = args.workers;
            let config = args.engine.config();
            spec.field = config.field;
            spec.lattice_cap = config.lattice_cap;
            spec.face_cap = config.face_cap;
            let report = run_campaign(&spec)?;
            emit(args.out.as_deref(), &report.to_json(!args.no_timing))?;
            if let Some(path) = &args.csv {
                write_csv(path, &report)?;
            }
            eprintln!("{}", report.summary());
            Ok(report.exit_code() as u8)
        }
        Verify::Structure(args) => {
            let mut spec = StructureSpec::new(parse_range(&args.n)?, parse_range(&args.t)?, parse_alphabet(&args.weights)?);
            spec.field = args.field;
            spec.workers = args.workers;
            let report = run_structure_checks(&spec)?;
            emit(args.out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
            for c in &report.checks {
                eprintln!(
                    "{} {:<22} {} cases, {} failed, {} skipped{}",
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.name,
                    c.cases,
                    c.failures,
                    c.skipped,
                    c.first_failure.as_ref().map(|m| format!(": {m}")).unwrap_or_default()
                );
            }
            Ok(report.exit_code() as u8)
        }
    }
}

fn write_csv(path: &Path, report: &CampaignReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    for r in &report.records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

/// Same columns as the JSON records, with the timing column always present.
#[derive(serde::Serialize)]
struct CsvRow<'a> {
    id: usize,
    family: &'static str,
    n: usize,
    instance: &'a str,
    weights: &'a str,
    t: u32,
    class: &'a str,
    admissible: bool,
    predicted: Option<i64>,
    engine: Option<i64>,
    status: &'static str,
    reason: &'a str,
    field: &'static str,
    elapsed_ms: Option<f64>,
}

impl<'a> From<&'a VerificationRecord> for CsvRow<'a> {
    fn from(r: &'a VerificationRecord) -> Self {
        use edgereg::verify::Status;
        CsvRow {
            id: r.id,
            family: r.family.tag(),
            n: r.n,
            instance: &r.instance,
            weights: &r.weights,
            t: r.t,
            class: &r.class,
            admissible: r.admissible,
            predicted: r.predicted,
            engine: r.engine,
            status: match r.status {
                Status::Match => "match",
                Status::Mismatch => "mismatch",
                Status::Inadmissible => "inadmissible",
                Status::Skipped => "skipped",
            },
            reason: &r.reason,
            field: r.field.tag(),
            elapsed_ms: r.elapsed_ms,
        }
    }
}
