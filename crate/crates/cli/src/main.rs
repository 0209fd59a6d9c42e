//! `screener`: exact integrability screening from the command line.
//!
//! Exit codes: 0 passes or informational output, 10 non-integrable (or sweep
//! violations), 20 inconclusive, 1 usage or input error.

mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hamscreen::darboux::parse_points_json;
use hamscreen::design::{design_potential, poisson_bracket, PhaseFunction};
use hamscreen::exactnum::json::CoordJson;
use hamscreen::exactnum::{parse_rat, GRat};
use hamscreen::homopot::HomoPotential;
use hamscreen::hypergeom::exponents_json;
use hamscreen::mrtable::lookup;
use hamscreen::spectral::{parse_matrix_json, to_gaussian};
use hamscreen::verdict::{screen_potential, ObstructionReport, VerdictKind};

const EXIT_NON_INTEGRABLE: u8 = 10;
const EXIT_INCONCLUSIVE: u8 = 20;
const EXIT_USAGE: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "screener", version, about = "Exact integrability screening of homogeneous potentials")]
struct Cli {
    /// Emit JSON only.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Screen a potential (JSON file, text file, or inline expression).
    Screen {
        potential: String,
        /// JSON array of points or Darboux directions to screen.
        #[arg(long, value_name = "PATH")]
        points: Option<PathBuf>,
    },
    /// Table rows containing (k, λ).
    Table {
        #[arg(allow_hyphen_values = true)]
        k: i64,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Riemann scheme, exponent differences and L4 exponents for (k, λ).
    Exponents {
        #[arg(allow_hyphen_values = true)]
        k: i64,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Potential with V'(c) = c and V''(c) = A.
    Design {
        c: PathBuf,
        a: PathBuf,
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Poisson bracket of two phase-space polynomials.
    Bracket { h: PathBuf, f: PathBuf },
    /// Property sweeps over |k| <= kmax, |p| <= pmax.
    Sweep {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..))]
        kmax: i64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(0..))]
        pmax: i64,
        /// Count undecided cases as violations.
        #[arg(long)]
        fail_on_inconclusive: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn nonzero_k(k: i64) -> Result<i64> {
    if k == 0 {
        bail!("degree k = 0 is not allowed");
    }
    Ok(k)
}

fn load_potential(arg: &str) -> Result<HomoPotential> {
    let path = Path::new(arg);
    if path.exists() {
        let src = read(path)?;
        HomoPotential::parse(&src).with_context(|| format!("{}", path.display()))
    } else {
        HomoPotential::parse(arg).with_context(|| format!("expression {arg:?}"))
    }
}

fn exit_for(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::PassesNecessaryConditions => 0,
        VerdictKind::NonIntegrable => EXIT_NON_INTEGRABLE,
        VerdictKind::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn report_text(r: &ObstructionReport) -> String {
    let mut s = format!("V = {}  (k = {})\nverdict: {}\n", r.potential, r.k, r.verdict.kind);
    if let Some(w) = &r.verdict.witness {
        s.push_str(&format!("witness: {}\n", serde_json::to_string(w).unwrap_or_default()));
    }
    for note in &r.notes {
        s.push_str(&format!("note: {note}\n"));
    }
    for p in &r.points {
        let c: Vec<String> = p.c.iter().map(ToString::to_string).collect();
        s.push_str(&format!("point ({}): kappa = {}, {}\n", c.join(", "), p.kappa, p.verdict.kind));
        for e in &p.eigens {
            let rows: Vec<String> = e
                .matches
                .iter()
                .map(|m| match m.p {
                    Some(p) => format!("{}(p={p})", m.row),
                    None => m.row.to_string(),
                })
                .collect();
            s.push_str(&format!(
                "  lambda = {}  mult {}  blocks {:?}  rows [{}]  {}\n",
                e.value,
                e.multiplicity,
                e.blocks.clone().unwrap_or_default(),
                rows.join(", "),
                e.group
            ));
        }
    }
    s
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn parse_vector(src: &str) -> Result<Vec<GRat>> {
    let raw: Vec<CoordJson> = serde_json::from_str(src).context("point JSON")?;
    raw.iter()
        .map(|c| {
            let q = c.to_quad()?;
            q.as_grat().cloned().ok_or_else(|| anyhow!("design point coordinates must lie in Q(i)"))
        })
        .collect()
}

/// Output text and exit code.
fn run(cli: &Cli) -> Result<(String, u8)> {
    match &cli.command {
        Command::Screen { potential, points } => {
            let v = load_potential(potential)?;
            let pts = points
                .as_ref()
                .map(|p| parse_points_json(&read(p)?).with_context(|| format!("{}", p.display())))
                .transpose()?;
            let report = screen_potential(&v, pts.as_deref())?;
            let text = if cli.json { pretty(&report.to_json()) } else { report_text(&report) };
            Ok((text, exit_for(report.verdict.kind)))
        }
        Command::Table { k, lambda } => {
            let k = nonzero_k(*k)?;
            let lam = parse_rat(lambda)?;
            let ms = lookup(k, &GRat::real(lam))?;
            let out: Vec<Value> =
                ms.iter().map(|m| json!({"row": m.row, "p": m.p, "group": m.group.as_str()})).collect();
            Ok((pretty(&Value::Array(out)), 0))
        }
        Command::Exponents { k, lambda } => {
            let k = nonzero_k(*k)?;
            Ok((pretty(&exponents_json(k, &parse_rat(lambda)?)?), 0))
        }
        Command::Design { c, a, k } => {
            let k = nonzero_k(*k)?;
            let cv = parse_vector(&read(c)?).with_context(|| format!("{}", c.display()))?;
            let am = parse_matrix_json(&read(a)?).with_context(|| format!("{}", a.display()))?;
            let am = to_gaussian(&am).ok_or_else(|| anyhow!("design matrix entries must lie in Q(i)"))?;
            let v = design_potential(&cv, &am, k)?;
            let doc = serde_json::to_value(v.to_json_value())?;
            let text = if cli.json { pretty(&doc) } else { format!("{}\n{}", v, pretty(&doc)) };
            Ok((text, 0))
        }
        Command::Bracket { h, f } => {
            let hf = PhaseFunction::from_json(&read(h)?).with_context(|| format!("{}", h.display()))?;
            let ff = PhaseFunction::from_json(&read(f)?).with_context(|| format!("{}", f.display()))?;
            let b = poisson_bracket(&hf, &ff)?;
            let text = if cli.json {
                pretty(&json!({"bracket": b.to_string(), "zero": b.is_zero()}))
            } else {
                b.to_string()
            };
            Ok((text, 0))
        }
        Command::Sweep { kmax, pmax, fail_on_inconclusive } => {
            let results = sweep::run(*kmax, *pmax);
            let failures: usize = results.values().map(|r| r.failures(*fail_on_inconclusive)).sum();
            let doc = sweep::to_json(&results);
            let text = if cli.json {
                pretty(&doc)
            } else {
                results
                    .iter()
                    .map(|(name, r)| {
                        format!(
                            "{name}: {} checked, {} violations, {} undecided",
                            r.checked,
                            r.violations.len(),
                            r.undecided.len()
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok((text, if failures > 0 { EXIT_NON_INTEGRABLE } else { 0 }))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SCREENER_LOG", "off")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli).and_then(|(text, code)| emit(&cli, &text).map(|_| code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(EXIT_USAGE)
        }
    }
}
