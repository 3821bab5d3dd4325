use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use supchar::algebra::{census, parse_algebra_json, ActionSpace, Algebra, Bounds, Idempotent, OrbitCensus};
use supchar::scalars::Field;
use supchar::supercharacter::{InductionMode, Report, Theory};
use supchar::table::CharacterTable;
use supchar::triangular::{brute_force_table, closed_form_table, make_triangular, TableMode};
use supchar::{verify, Error};

#[derive(Parser)]
#[command(name = "supchar", version, about = "Supercharacter tables of unit groups of reduced algebras")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group to enumerate; overrides SUPCHAR_BOUND.
    #[arg(long, global = true)]
    bound: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Supercharacter table of T(n, q).
    Table(TableArgs),
    /// Run property suites and print one CHECK line per check.
    Verify(VerifyArgs),
    /// Orbit censuses of J and J*.
    Orbits(OrbitsArgs),
    /// Full pipeline on an algebra spec file.
    Algebra(AlgebraArgs),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct Source {
    #[command(flatten)]
    field: FieldArgs,
    /// Algebra spec (JSON) instead of t(n, q).
    #[arg(long, conflicts_with_all = ["n", "p"])]
    spec: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Closed)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Induce only at three members of each superclass.
    #[arg(long)]
    representatives: bool,
    #[arg(long, hide = true)]
    inject_perturbation: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    All,
    Axioms,
    Orbits,
    Counts,
    Oracle,
    Restriction,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    checks: Vec<CheckArg>,
    #[arg(long, hide = true)]
    inject_perturbation: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    J,
    Dual,
    Both,
}

#[derive(Args)]
struct OrbitsArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = SpaceArg::Both)]
    space: SpaceArg,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Bad flags or unreadable input.
#[derive(Debug)]
struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<ConfigError>() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_bound() => 3,
        Some(
            Error::Validation { .. }
            | Error::NotPrime(_)
            | Error::NotIrreducible(_)
            | Error::BadGenerator
            | Error::BadSize(_),
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let bounds = match cli.bound {
        Some(b) => Bounds::default().with_group(b),
        None => Bounds::from_env(),
    };
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a, &bounds),
        Command::Verify(a) => cmd_verify(a, &bounds),
        Command::Orbits(a) => cmd_orbits(a, &bounds),
        Command::Algebra(a) => cmd_algebra(a, &bounds),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn triangular(f: &FieldArgs) -> anyhow::Result<(usize, Algebra)> {
    let n = f.n.ok_or_else(|| config("--n is required"))?;
    let p = f.p.ok_or_else(|| config("--p is required"))?;
    let field = Field::new(p, f.k)?;
    Ok((n, make_triangular(n, &field)?))
}

fn load(source: &Source) -> anyhow::Result<(Option<usize>, Algebra)> {
    match &source.spec {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
            Ok((None, Algebra::validate(parse_algebra_json(&text)?)?))
        }
        None => triangular(&source.field).map(|(n, a)| (Some(n), a)),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(table: &CharacterTable, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Csv => table.to_csv()?,
        Format::Json => format!("{:#}\n", table.to_json()),
    })
}

fn cmd_table(a: &TableArgs, bounds: &Bounds) -> anyhow::Result<u8> {
    let (n, alg) = triangular(&a.field)?;
    let mode = match a.mode {
        ModeArg::Closed => TableMode::Closed,
        ModeArg::Brute => TableMode::Brute,
        ModeArg::Both => TableMode::Both,
    };
    let induction = if a.representatives { InductionMode::Representatives } else { InductionMode::Exhaustive };
    let brute = |alg: &Algebra| -> anyhow::Result<CharacterTable> {
        let th = Theory::build(alg, bounds)?;
        Ok(brute_force_table(&th, n, induction)?)
    };
    let (mut table, other) = match mode {
        TableMode::Closed => (closed_form_table(&alg, n)?, None),
        TableMode::Brute => (brute(&alg)?, None),
        TableMode::Both => {
            let b = brute(&alg)?;
            (closed_form_table(&alg, n)?, Some(b))
        }
    };
    if a.inject_perturbation {
        let (r, c) = (table.rows() - 1, table.cols() - 1);
        table.perturb(r, c);
    }
    write_output(a.out.as_deref(), &render(&table, a.format)?)?;
    let Some(brute) = other else { return Ok(0) };
    let diff = table.diff(&brute);
    let mut report = String::new();
    if diff.is_empty() {
        writeln!(report, "closed and brute tables identical ({}x{})", table.rows(), table.cols())?;
    } else {
        writeln!(report, "{} differences between closed and brute tables", diff.len())?;
        for d in &diff {
            writeln!(report, "{d}")?;
        }
    }
    match &a.out {
        Some(out) => {
            let mut path = out.clone().into_os_string();
            path.push(".diff");
            fs::write(&path, &report).with_context(|| format!("writing {}", Path::new(&path).display()))?;
        }
        None => eprint!("{report}"),
    }
    Ok(if diff.is_empty() { 0 } else { 1 })
}

fn cmd_verify(a: &VerifyArgs, bounds: &Bounds) -> anyhow::Result<u8> {
    let (n, alg) = load(&a.source)?;
    let wants = |c: CheckArg| a.checks.contains(&CheckArg::All) || a.checks.contains(&c);
    if a.checks.contains(&CheckArg::Oracle) && n.is_none() {
        return Err(config("--checks oracle needs a triangular algebra (--n, --p)"));
    }
    let mut report = Report::default();
    if wants(CheckArg::Orbits) {
        report.extend(verify::orbit_suite(&alg, n, bounds)?);
    }
    let needs_theory =
        [CheckArg::Counts, CheckArg::Axioms, CheckArg::Oracle, CheckArg::Restriction].iter().any(|&c| wants(c));
    if needs_theory {
        let th = Theory::build(&alg, bounds)?;
        if wants(CheckArg::Counts) {
            report.extend(verify::count_suite(&th, n));
        }
        if wants(CheckArg::Axioms) {
            report.extend(verify::axiom_suite(&th, a.inject_perturbation)?);
        }
        if let (true, Some(n)) = (wants(CheckArg::Oracle), n) {
            report.extend(verify::oracle_suite(&th, n, InductionMode::Exhaustive)?);
        }
        if wants(CheckArg::Restriction) {
            report.extend(verify::restriction_suite(&th)?);
        }
    }
    print!("{report}");
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn census_text(alg: &Algebra, c: &OrbitCensus, name: &str) -> String {
    let nb = alg.n_blocks();
    let r = alg.radical_dim();
    let field = alg.field();
    let mut s = String::new();
    let _ = writeln!(s, "n({name})={}", c.n());
    let _ = writeln!(s, "n_E({name})={}", c.n_regular());
    for f in Idempotent::all(nb) {
        let _ = writeln!(
            s,
            "e={f} n({name}_e)={} n_E({name}_e)={}",
            c.n_corner[f.0 as usize], c.n_regular_corner[f.0 as usize]
        );
    }
    let _ = writeln!(s, "residual({name})={}", c.residual);
    for (k, o) in c.orbits.iter().enumerate() {
        let rep: Vec<String> = alg.unpack(o.support_rep, r).iter().map(|&x| field.render(x)).collect();
        let _ = writeln!(
            s,
            "orbit {k} size={} support={} rep=[{}] {}",
            o.len(),
            o.support,
            rep.join(","),
            if o.singular { "singular" } else { "regular" }
        );
    }
    s
}

fn census_json(alg: &Algebra, c: &OrbitCensus) -> serde_json::Value {
    let r = alg.radical_dim();
    let field = alg.field();
    json!({
        "n": c.n(),
        "n_E": c.n_regular(),
        "corners": Idempotent::all(alg.n_blocks()).map(|f| json!({
            "e": f.block_list(),
            "n": c.n_corner[f.0 as usize],
            "n_E": c.n_regular_corner[f.0 as usize],
        })).collect::<Vec<_>>(),
        "residual": c.residual,
        "orbits": c.orbits.iter().map(|o| json!({
            "size": o.len(),
            "support": o.support.block_list(),
            "rep": alg.unpack(o.support_rep, r).iter().map(|&x| field.to_json(x)).collect::<Vec<_>>(),
            "singular": o.singular,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_orbits(a: &OrbitsArgs, bounds: &Bounds) -> anyhow::Result<u8> {
    let (_, alg) = load(&a.source)?;
    let mut spaces = Vec::new();
    if a.space != SpaceArg::Dual {
        spaces.push((ActionSpace::J, "J"));
    }
    if a.space != SpaceArg::J {
        spaces.push((ActionSpace::Dual, "J*"));
    }
    let mut text = String::new();
    let mut doc = serde_json::Map::new();
    for (space, name) in spaces {
        let c = census(&alg, space, bounds)?;
        text.push_str(&census_text(&alg, &c, name));
        doc.insert(name.to_string(), census_json(&alg, &c));
    }
    if a.json {
        text = format!("{:#}\n", serde_json::Value::Object(doc));
    }
    write_output(a.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_algebra(a: &AlgebraArgs, bounds: &Bounds) -> anyhow::Result<u8> {
    let (_, alg) = load(&a.source)?;
    let th = Theory::build(&alg, bounds)?;
    let (table, _) = th.table(InductionMode::Exhaustive)?;
    let report = th.axioms_report(&table, &format!("exhaustive over {} elements", th.group.order()));
    write_output(a.out.as_deref(), &render(&table, a.format)?)?;
    eprint!("{report}");
    if !report.all_pass() {
        return Err(anyhow!("axiom checks failed"));
    }
    Ok(0)
}
