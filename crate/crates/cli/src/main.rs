//! `torilocus`: command-line front end for the locus pipeline.
//!
//! Every command prints a short summary and, with `--out`, writes a JSON
//! report carrying the parsed configuration and the SHA-256 of the bundled
//! fixtures. Exit codes: 0 on success or match, 1 on a mathematical
//! mismatch, 2 on bad input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use torilocus::exactmath::{format_rational, int, is_rational_square, sign, QuadExt};
use torilocus::nslocus::{
    approximate_abelian, build_equations, classify, family_certificate, parse_generators, projective_closure,
    reference_problem, sweep, FiberReport, Flattening, LocusProblem, REFERENCE_GENERATORS, REFERENCE_TRIPLE_JSON,
};
use torilocus::torus::{find_polarization, ns_rank, NSClass, PeriodMatrix, Polarization, Validity};

#[derive(Parser, Serialize)]
#[command(name = "torilocus", version, about = "Loci of period matrices keeping three integral classes of type (1,1)")]
struct Cli {
    /// Write the JSON report to this file (`-` for standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Do not print the summary.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
enum Command {
    /// Recompute the worked example and diff its basis against the printed generators.
    PaperExample {
        /// Generator list to diff against instead of the bundled one.
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Max-norm bound of the polarization search at fiber points.
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Classify the locus of a class triple given as JSON.
    Locus {
        classes: PathBuf,
        /// Number τ column by column instead of row by row.
        #[arg(long)]
        column_major: bool,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Classify the loci of seeded random triples.
    Sweep {
        #[arg(long, default_value_t = 4)]
        g: usize,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 2)]
        entry_bound: i64,
    },
    /// Picard rank of a period matrix given as JSON.
    Rank { tau: PathBuf },
    /// Search for a polarization on a period matrix given as JSON.
    Polarize {
        tau: PathBuf,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Search even when rank 9 at g = 3 already decides the answer.
        #[arg(long)]
        no_shortcut: bool,
    },
    /// Pair-limited certificate that no fiber of the family is empty (slow).
    FamilyCheck {
        #[arg(long, default_value_t = 31)]
        pair_limit: usize,
        /// Confirm that a long computation is intended.
        #[arg(long)]
        slow: bool,
    },
    /// Abelian period matrices converging to a base point of a linear locus.
    Approximate {
        classes: PathBuf,
        base: PathBuf,
        #[arg(long, short, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[arg(long)]
        column_major: bool,
    },
}

#[derive(Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Match,
    Mismatch,
}

struct Done {
    status: Status,
    result: Value,
    summary: String,
    extra_fixtures: Vec<(String, String)>,
}

type Outcome = Result<Done, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let done = match run(&cli.command) {
        Ok(done) => done,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let to_stdout = cli.out.as_deref() == Some(Path::new("-"));
    if !cli.quiet && !to_stdout {
        print!("{}", done.summary);
    }
    if let Some(path) = &cli.out {
        let mut fixtures = serde_json::Map::new();
        fixtures.insert("reference_triple.json".into(), sha256(REFERENCE_TRIPLE_JSON).into());
        fixtures.insert("reference_generators.txt".into(), sha256(REFERENCE_GENERATORS).into());
        for (name, hash) in &done.extra_fixtures {
            fixtures.insert(name.clone(), hash.clone().into());
        }
        let report = json!({
            "config": &cli,
            "fixtures": fixtures,
            "status": done.status,
            "result": done.result,
        });
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        if to_stdout {
            print!("{text}");
        } else if let Err(e) = fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match done.status {
        Status::Mismatch => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::PaperExample { fixture, bound } => paper_example(fixture.as_deref(), *bound),
        Command::Locus { classes, column_major, bound } => locus(classes, *column_major, *bound),
        Command::Sweep { g, seed, seeds, entry_bound } => run_sweep(*g, *seed, *seeds, *entry_bound),
        Command::Rank { tau } => rank(tau),
        Command::Polarize { tau, bound, no_shortcut } => polarize(tau, *bound, !no_shortcut),
        Command::FamilyCheck { pair_limit, slow } => family_check(*pair_limit, *slow),
        Command::Approximate { classes, base, n, bound, column_major } => {
            approximate(classes, base, *n, *bound, *column_major)
        }
    }
}

fn sha256(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn flattening(column_major: bool) -> Flattening {
    if column_major {
        Flattening::ColumnMajor
    } else {
        Flattening::RowMajor
    }
}

fn load_problem(path: &Path, column_major: bool) -> Result<LocusProblem, String> {
    let classes: Vec<NSClass> = read_json(path)?;
    if classes.len() != 3 {
        return Err(format!("{}: expected 3 classes, found {}", path.display(), classes.len()));
    }
    let problem = LocusProblem::new(classes).map_err(|e| e.to_string())?;
    Ok(problem.with_flattening(flattening(column_major)))
}

fn show_quad(x: &QuadExt) -> String {
    let b = x.b();
    if sign(b) == 0 {
        return format_rational(x.a());
    }
    let abs = if sign(b) < 0 { -b.clone() } else { b.clone() };
    let coef = if abs == int(1) { String::new() } else { format_rational(&abs) };
    let op = if sign(b) < 0 { "-" } else { "+" };
    if sign(x.a()) == 0 {
        let minus = if sign(b) < 0 { "-" } else { "" };
        return format!("{minus}{coef}θ");
    }
    format!("{} {op} {coef}θ", format_rational(x.a()))
}

fn show_tau(tau: &PeriodMatrix) -> String {
    let rows: Vec<String> = (0..tau.g())
        .map(|i| {
            let row: Vec<String> = (0..tau.g()).map(|j| show_quad(&tau.entry(i, j))).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("θ² = {}: [{}]", format_rational(tau.m()), rows.join(", "))
}

fn show_polarization(p: &Polarization) -> String {
    match p {
        Polarization::Polarized { class, form } => {
            format!("polarized by a = {:?}, b = {:?}, c = {:?}; H̃ = X + θY, X = {}, Y = {}", class.a(), class.b(), class.c(), to_value(&form.x), to_value(&form.y))
        }
        Polarization::NoneWithinBound { bound } => format!("no polarization with coefficients up to {bound}"),
        Polarization::MaximalRankShortcut { rank } => format!("rank {rank} at g = 3, algebraic"),
    }
}

fn summarize_fiber(out: &mut String, report: &FiberReport) {
    if report.empty {
        writeln!(out, "locus: empty").unwrap();
        return;
    }
    writeln!(out, "locus: projective dimension {}", report.dim).unwrap();
    if let (Some(degree), Some(chart)) = (report.degree, &report.chart) {
        writeln!(out, "degree {degree} (chart {chart} = 1)").unwrap();
    }
    if let Some(d) = &report.discriminant {
        writeln!(out, "discriminant {} (rational square: {})", format_rational(d), is_rational_square(d)).unwrap();
    }
    if let Some(irr) = report.irreducible_over_q {
        writeln!(out, "irreducible over Q: {irr}").unwrap();
    }
    for (k, p) in report.points.iter().enumerate() {
        writeln!(out, "point {}: {}", k + 1, show_tau(&p.tau)).unwrap();
        writeln!(out, "  {:?}, rank {}", p.validity, p.ns_rank).unwrap();
        if let Some(pol) = &p.polarization {
            writeln!(out, "  {}", show_polarization(pol)).unwrap();
        }
    }
}

fn paper_example(fixture: Option<&Path>, bound: u32) -> Outcome {
    let (text, extra_fixtures) = match fixture {
        Some(path) => {
            let text = read(path)?;
            let hash = sha256(&text);
            (text, vec![(path.display().to_string(), hash)])
        }
        None => (REFERENCE_GENERATORS.to_string(), Vec::new()),
    };
    let problem = reference_problem();
    let ring = problem.ring();
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let expected = parse_generators(&ring, &text).map_err(|e| format!("fixture: {e}"))?;

    let ideal = projective_closure(&ring, &build_equations(&problem));
    let basis = ideal.reduced_basis();
    let missing: Vec<&str> =
        lines.iter().zip(&expected).filter(|(_, f)| !basis.contains(f)).map(|(l, _)| *l).collect();
    let extra: Vec<String> = basis.iter().filter(|f| !expected.contains(f)).map(|f| ring.format(f)).collect();

    let report = classify(&ideal, 3, problem.flattening(), bound).map_err(|e| e.to_string())?;
    let positive_non_square =
        report.discriminant.as_ref().is_some_and(|d| sign(d) > 0 && !is_rational_square(d));
    let checks = [
        ("dimension 0", report.dim == 0),
        ("degree 2", report.degree == Some(2)),
        ("irreducible over Q", report.irreducible_over_q == Some(true)),
        ("discriminant positive, not a square", positive_non_square),
        ("two exact points", report.points.len() == 2),
        ("rank 9 at both points", report.points.iter().all(|p| p.ns_rank == 9)),
        ("both points real", report.points.iter().all(|p| p.validity == Validity::RealDegenerate)),
    ];
    let matched = missing.is_empty() && extra.is_empty() && checks.iter().all(|c| c.1);

    let mut out = String::new();
    writeln!(out, "reduced basis ({} generators, smallest leading term first):", basis.len()).unwrap();
    for f in basis.iter().rev() {
        writeln!(out, "  {}", ring.format(f)).unwrap();
    }
    if missing.is_empty() && extra.is_empty() {
        writeln!(out, "basis diff: none").unwrap();
    } else {
        for l in &missing {
            writeln!(out, "- {l}").unwrap();
        }
        for l in &extra {
            writeln!(out, "+ {l}").unwrap();
        }
    }
    summarize_fiber(&mut out, &report);
    for (name, pass) in &checks {
        writeln!(out, "[{}] {name}", if *pass { "ok" } else { "FAIL" }).unwrap();
    }
    writeln!(out, "{}", if matched { "match" } else { "MISMATCH" }).unwrap();

    Ok(Done {
        status: if matched { Status::Match } else { Status::Mismatch },
        result: json!({
            "basis_diff": { "missing": missing, "extra": extra },
            "checks": checks.iter().map(|(n, p)| json!({ "name": n, "pass": p })).collect::<Vec<_>>(),
            "fiber": to_value(&report),
        }),
        summary: out,
        extra_fixtures,
    })
}

fn locus(path: &Path, column_major: bool, bound: u32) -> Outcome {
    let problem = load_problem(path, column_major)?;
    let ideal = projective_closure(&problem.ring(), &build_equations(&problem));
    let report = classify(&ideal, problem.g(), problem.flattening(), bound).map_err(|e| e.to_string())?;
    let mut out = String::new();
    writeln!(out, "g = {}, {} generators", problem.g(), report.generators.len()).unwrap();
    for f in &report.generators {
        writeln!(out, "  {f}").unwrap();
    }
    summarize_fiber(&mut out, &report);
    Ok(Done { status: Status::Ok, result: to_value(&report), summary: out, extra_fixtures: Vec::new() })
}

fn run_sweep(g: usize, first: u64, count: u64, entry_bound: i64) -> Outcome {
    if g < 3 {
        return Err(format!("sweep needs g >= 3, got {g}"));
    }
    let rows = sweep(g, first..first + count, entry_bound).map_err(|e| e.to_string())?;
    let empty = rows.iter().filter(|r| r.empty).count();
    let mut out = String::new();
    writeln!(out, "{:>6}  {:>5}  {:>3}  degree", "seed", "empty", "dim").unwrap();
    for r in &rows {
        let degree = r.degree.map_or("-".to_string(), |d| d.to_string());
        writeln!(out, "{:>6}  {:>5}  {:>3}  {degree}", r.seed, r.empty, r.dim).unwrap();
    }
    writeln!(out, "empty: {empty}/{}", rows.len()).unwrap();
    Ok(Done {
        status: Status::Ok,
        result: json!({ "rows": rows, "empty": empty, "total": rows.len() }),
        summary: out,
        extra_fixtures: Vec::new(),
    })
}

fn rank(path: &Path) -> Outcome {
    let tau: PeriodMatrix = read_json(path)?;
    let r = ns_rank(&tau).map_err(|e| e.to_string())?;
    let validity = tau.validity();
    let mut out = String::new();
    writeln!(out, "{}", show_tau(&tau)).unwrap();
    writeln!(out, "{validity:?}, rank {}", r.rank).unwrap();
    Ok(Done {
        status: Status::Ok,
        result: json!({ "validity": validity, "rank": r.rank, "basis": r.basis }),
        summary: out,
        extra_fixtures: Vec::new(),
    })
}

fn polarize(path: &Path, bound: u32, shortcut: bool) -> Outcome {
    let tau: PeriodMatrix = read_json(path)?;
    let validity = tau.validity();
    let r = ns_rank(&tau).map_err(|e| e.to_string())?;
    let mut out = String::new();
    writeln!(out, "{}", show_tau(&tau)).unwrap();
    writeln!(out, "{validity:?}, rank {}", r.rank).unwrap();
    let verdict = if validity == Validity::ValidTorus {
        let p = find_polarization(&tau, bound, shortcut).map_err(|e| e.to_string())?;
        writeln!(out, "{}", show_polarization(&p)).unwrap();
        Some(p)
    } else {
        writeln!(out, "not a torus; no polarization search").unwrap();
        None
    };
    Ok(Done {
        status: Status::Ok,
        result: json!({ "validity": validity, "rank": r.rank, "polarization": verdict }),
        summary: out,
        extra_fixtures: Vec::new(),
    })
}

fn family_check(pair_limit: usize, slow: bool) -> Outcome {
    if !slow {
        return Err("family-check is a long computation; pass --slow to run it".into());
    }
    let c = family_certificate(pair_limit).map_err(|e| e.to_string())?;
    let mut out = String::new();
    writeln!(
        out,
        "pair limit {}: {} pairs reduced, {} skipped, complete: {}",
        c.pair_limit, c.pairs_reduced, c.pairs_skipped, c.complete
    )
    .unwrap();
    writeln!(out, "{}/{} leading terms contain a t-variable", c.leading_terms_with_t, c.basis_len).unwrap();
    writeln!(out, "specialization lies in the printed ideal: {}", c.contained).unwrap();
    let ok = c.holds && c.contained;
    writeln!(out, "{}", if ok { "holds" } else { "DOES NOT HOLD" }).unwrap();
    Ok(Done {
        status: if ok { Status::Match } else { Status::Mismatch },
        result: to_value(&c),
        summary: out,
        extra_fixtures: Vec::new(),
    })
}

fn approximate(classes: &Path, base: &Path, n: usize, bound: u32, column_major: bool) -> Outcome {
    let problem = load_problem(classes, column_major)?;
    let base: PeriodMatrix = read_json(base)?;
    let points = approximate_abelian(&problem, &base, n, bound).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for p in &points {
        writeln!(out, "k = {}: distance {}, rank {}", p.k, format_rational(&p.distance), p.ns_rank).unwrap();
        writeln!(out, "  {}", show_tau(&p.tau)).unwrap();
        writeln!(out, "  {}", show_polarization(&p.polarization)).unwrap();
    }
    Ok(Done { status: Status::Ok, result: to_value(&points), summary: out, extra_fixtures: Vec::new() })
}
