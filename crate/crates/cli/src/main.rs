use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superfield::config::{Suite, SuiteConfig};
use superfield::dynamics::{tau, FieldTheory, Side};
use superfield::enriched::{pullback_rel, RelMorphism, RelSection, RelSectionJson};
use superfield::grassmann::{Field, GrassmannElement};
use superfield::model11::{susy_q, GrassmannSection11, Grid1, Section11, Section11Json, Theory11};
use superfield::model32::{GrassmannSection32, Section32, Section32Json, Theory32};
use superfield::numerics::gaussian;
use superfield::quantize::{raw_word, Algebra, AlgebraElement, Strategy};
use superfield::report::{CheckKind, Report};
use superfield::suites::run_suite;

#[derive(Parser)]
#[command(
    name = "superfield",
    version,
    about = "Checks, Green's operators and SUSY transformations for the 1|1 and 3|2 super-field models"
)]
struct Cli {
    /// JSON configuration file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance override, e.g. --tol green11=1e-7 (repeatable).
    #[arg(long = "tol", value_name = "KEY=VALUE", global = true)]
    tol: Vec<String>,
    /// Where to write the JSON report or output ("-" for stdout).
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite: grassmann-laws, berezinian, green11, green32, tau,
    /// quantize, susy, enriched-laws or all.
    Check {
        suite: String,
        /// Only print failing checks.
        #[arg(long)]
        quiet: bool,
    },
    /// Apply a retarded or advanced Green's operator to a section file.
    Green {
        model: Model,
        side: SideArg,
        /// Section JSON.
        #[arg(long)]
        input: PathBuf,
    },
    /// Pull a section back along a relative morphism.
    Transform {
        /// Section JSON, plain or Grassmann-valued.
        #[arg(long)]
        section: PathBuf,
        /// Morphism JSON.
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Build a small 1|1 observable algebra and dump relations, normal forms
    /// and the SUSY action.
    QuantizeDemo,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    #[value(name = "11", alias = "1|1")]
    M11,
    #[value(name = "32", alias = "3|2")]
    M32,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Retarded,
    Advanced,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Retarded => Side::Retarded,
            SideArg::Advanced => Side::Advanced,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut cfg = load_config(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    for item in &cli.tol {
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("--tol expects KEY=VALUE, got '{item}'"))?;
        let v: f64 = v.trim().parse().with_context(|| format!("tolerance value '{v}'"))?;
        cfg.tolerances.set(k.trim(), v)?;
    }
    if cli.report.is_some() {
        cfg.report = cli.report.clone();
    }
    match cli.command {
        Command::Check { suite, quiet } => {
            cfg.suite = suite.parse::<Suite>()?;
            cfg.validate()?;
            let report = run_suite(&cfg)?;
            print_summary(&report, quiet);
            if let Some(p) = &cfg.report {
                emit(p, &report.to_json())?;
            }
            Ok(report.pass)
        }
        Command::Green { model, side, input } => {
            cfg.validate()?;
            let text = read(&input)?;
            let out = match model {
                Model::M11 => {
                    let s = Section11::from_json(&serde_json::from_str::<Section11Json>(&text)?)?;
                    serde_json::to_value(Theory11.green(&s, side.into())?.to_json())?
                }
                Model::M32 => {
                    let s = Section32::from_json(&serde_json::from_str::<Section32Json>(&text)?)?;
                    let th = Theory32 { mass: cfg.model32.mass };
                    serde_json::to_value(th.green(&s, side.into())?.to_json())?
                }
            };
            emit_value(cfg.report.as_deref(), &out)?;
            Ok(true)
        }
        Command::Transform { section, morphism } => {
            let m: RelMorphism = serde_json::from_str(&read(&morphism)?).context("morphism file")?;
            let m = m.validated()?;
            let h = parse_section(&read(&section)?, &m)?;
            let out = pullback_rel(&m, &h)?;
            emit_value(cfg.report.as_deref(), &serde_json::to_value(out.to_json())?)?;
            Ok(true)
        }
        Command::QuantizeDemo => {
            let demo = quantize_demo(&cfg)?;
            emit_value(cfg.report.as_deref(), &demo)?;
            Ok(true)
        }
    }
}

fn load_config(path: Option<&Path>) -> anyhow::Result<SuiteConfig> {
    match path {
        Some(p) => Ok(SuiteConfig::from_json(&read(p)?).with_context(|| format!("config {}", p.display()))?),
        None => Ok(SuiteConfig::default()),
    }
}

fn read(p: &Path) -> anyhow::Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn emit(path: &Path, text: &str) -> anyhow::Result<()> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

/// Pretty JSON to the given path, or stdout when none is given.
fn emit_value(path: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(path.unwrap_or(Path::new("-")), &text)
}

/// A Grassmann-valued section, or a plain section lifted to 1 ⊗ F at the
/// morphism's level.
fn parse_section(text: &str, m: &RelMorphism) -> anyhow::Result<RelSection> {
    let v: Value = serde_json::from_str(text)?;
    if v.get("terms").is_some() {
        let j: RelSectionJson = serde_json::from_value(v)?;
        return Ok(RelSection::from_json(&j)?);
    }
    match m {
        RelMorphism::M11(x) => {
            let s = Section11::from_json(&serde_json::from_value(v)?)?;
            Ok(RelSection::S11(GrassmannSection11::unit(x.n, &s)))
        }
        RelMorphism::M32(x) => {
            let s = Section32::from_json(&serde_json::from_value(v)?)?;
            Ok(RelSection::S32(GrassmannSection32::unit(x.n, &s)))
        }
    }
}

fn print_summary(report: &Report, quiet: bool) {
    for suite in &report.suites {
        println!("== {} : {}", suite.suite, if suite.pass { "PASS" } else { "FAIL" });
        for c in &suite.checks {
            if quiet && c.pass {
                continue;
            }
            let rel = match c.kind {
                CheckKind::Bound => format!("≤ {:.1e}", c.tolerance),
                CheckKind::Floor => format!("≥ {:.1e}", c.tolerance),
                CheckKind::Info => "info".to_string(),
            };
            let mark = if c.pass { "ok  " } else { "FAIL" };
            print!("  {mark} {:<64} {:>11.3e} {rel}", c.name, c.residual);
            if let Some(n) = &c.note {
                print!("  ({n})");
            }
            println!();
        }
    }
    println!("overall: {}", if report.pass { "PASS" } else { "FAIL" });
}

fn quantize_demo(cfg: &SuiteConfig) -> anyhow::Result<Value> {
    let g = Grid1::new(cfg.model11.t0, cfg.model11.t1, cfg.model11.points)?;
    let l = g.t1 - g.t0;
    let mid = g.t0 + 0.5 * l;
    let sections = [
        ("ψ(f)", Section11::from_fns(g, |t| gaussian(t, mid - 0.1 * l, 0.03 * l), |_| 0.0)),
        ("ψ(f′)", Section11::from_fns(g, |t| gaussian(t, mid + 0.1 * l, 0.03 * l), |_| 0.0)),
        ("φ(h)", Section11::from_fns(g, |_| 0.0, |t| gaussian(t, mid, 0.03 * l))),
    ];
    let mut alg = Algebra::new(Theory11, 1);
    let mut ids = Vec::new();
    let mut generators = Vec::new();
    for (label, s) in &sections {
        let e = alg.field(s)?;
        let id = e.terms().next().and_then(|(w, _)| w.first().copied()).ok_or_else(|| anyhow!("zero section"))?;
        ids.push(id);
        generators.push(json!({"id": id, "label": label, "parity": alg.generator(id).parity}));
    }
    let mut taus = Vec::new();
    for &i in &ids {
        let row: Vec<f64> = ids.iter().map(|&j| alg.tau_value(i, j)).collect();
        taus.push(row);
    }
    let mut relations = Vec::new();
    for &i in &ids {
        for &j in &ids {
            let c = alg.graded_commutator(&AlgebraElement::letter(1, i), &AlgebraElement::letter(1, j))?;
            relations.push(json!({"pair": [i, j], "value": alg.evaluate(&c).to_json()}));
        }
    }
    let word: Vec<u32> = vec![ids[2], ids[1], ids[0], ids[2]];
    let same =
        alg.normal_form_word(&word, Strategy::LeftmostFirst) == alg.normal_form_word(&word, Strategy::RightmostFirst);
    let nf = alg.normal_form(&raw_word(1, &word, &GrassmannElement::one(1, Field::Complex)), Strategy::LeftmostFirst);

    let images: HashMap<u32, AlgebraElement> = alg.susy_images(&ids, |s| Ok(susy_q(s)))?;
    let pair = alg.mul(&AlgebraElement::letter(1, ids[0]), &AlgebraElement::letter(1, ids[2]))?;
    let q_pair = alg.susy_hat(&pair, &images)?;
    let check = tau(&Theory11, &sections[0].1, &sections[2].1)?;
    Ok(json!({
        "seed": cfg.seed,
        "grid": {"t0": g.t0, "t1": g.t1, "N": g.n},
        "generators": generators,
        "tau": taus,
        "tau_psi_phi_direct": check,
        "relations": relations,
        "normal_form": {"word": word, "result": alg.evaluate(&nf).to_json(), "strategies_agree": same},
        "susy": {
            "images": ids.iter().map(|i| json!({"of": i, "image": alg.evaluate(&images[i]).to_json()})).collect::<Vec<_>>(),
            "q_hat_of_product": alg.evaluate(&q_pair).to_json(),
        },
    }))
}
