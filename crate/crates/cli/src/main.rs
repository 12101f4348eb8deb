use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use lieabel_core::abelext::{classification_text, classify_lifts_in, scan_invariant_abelian};
use lieabel_core::branch::branch_with_linkage;
use lieabel_core::config::{parse_lift_spec, resolve_with, ConfigError, Resolved};
use lieabel_core::decomp::decompose_under;
use lieabel_core::rootsys::SimpleType;
use lieabel_core::suite::{built_types, run, write_table, Algebras, Selector};

/// Exact verification of D_n embeddings into E6, E7, E8 and their abelian
/// extensions.
#[derive(Parser)]
#[command(name = "lieabel", version)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Print wall-clock timings to stderr.
    #[arg(long, global = true)]
    timings: bool,
    /// Directory of cached structure tables; tables found there are used
    /// instead of being rebuilt.
    #[arg(long, global = true, env = "LIEABEL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and write its structure table.
    Build {
        /// D5, D6, D7, E6, E7 or E8.
        r#type: String,
        /// Table destination; defaults to the cache directory, or
        /// `<TYPE>.table` in the working directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a group of checks.
    Verify {
        /// serre, dimensions, restrictions, adjoint, abelian, catalogs,
        /// classification, tables, branching or all.
        selector: String,
    },
    /// Decompose the spec's module under its embedded D_n.
    Decompose {
        /// Spec file, or `-` for stdin.
        spec: PathBuf,
    },
    /// Search for invariant abelian subspaces of the spec's embedding.
    Scan { spec: PathBuf },
    /// Branch the spec's module to its lift and report linkage blocks.
    Branch { spec: PathBuf },
    /// Classify lifts into an exceptional algebra, up to equivalence.
    Classify {
        /// E6, E7 or E8.
        r#type: String,
    },
    /// Run every check and write the reports into a directory.
    Report {
        #[arg(long, default_value = "lieabel-report")]
        out: PathBuf,
    },
}

/// Every error exits with status 2; failing checks exit with 1.
fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::anyhow!(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_type(s: &str) -> Result<SimpleType> {
    let t: SimpleType = s.trim().parse().map_err(|e| usage(format!("type {s:?}: {e}")))?;
    if !built_types().contains(&t) {
        return Err(usage(format!("type {t} is not supported; expected one of D5, D6, D7, E6, E7, E8")));
    }
    Ok(t)
}

fn read_spec(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading spec from stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path, algebras: &Algebras) -> Result<Resolved> {
    let text = read_spec(path).map_err(|e| usage(format!("{e:#}")))?;
    let spec = parse_lift_spec(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    resolve_with(&spec, |t| {
        algebras.get(t).map_err(|e| ConfigError::Field {
            field: "ambient",
            message: e.to_string(),
        })
    })
    .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, value: &serde_json::Value, text: &str) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let algebras = Algebras::new(cli.cache_dir.clone());
    let start = Instant::now();
    let ok = match &cli.command {
        Command::Build { r#type, out } => {
            let t = parse_type(r#type)?;
            let g = algebras.get(t)?;
            // The cache lookup in `get` already wrote the table there.
            let path = match (out, algebras.table_path(t)) {
                (Some(p), _) => {
                    write_table(p, &g)?;
                    p.clone()
                }
                (None, Some(p)) => p,
                (None, None) => {
                    let p = PathBuf::from(format!("{t}.table"));
                    write_table(&p, &g)?;
                    p
                }
            };
            let value = json!({
                "type": t.to_string(),
                "dim": g.dim(),
                "positive_roots": g.num_positive_roots(),
                "nonzero_constants": g.nonzero_constants(),
                "table": path.display().to_string(),
            });
            let mut text = format!(
                "{t}: dim {}, {} positive roots, {} nonzero structure constants\n",
                g.dim(),
                g.num_positive_roots(),
                g.nonzero_constants()
            );
            text.push_str(&format!("table written to {}\n", path.display()));
            emit(cli, &value, &text);
            true
        }
        Command::Verify { selector } => {
            let s: Selector = selector.parse().map_err(|e| usage(format!("{e}")))?;
            let report = run(s, &algebras);
            emit(cli, &serde_json::to_value(&report)?, &report.to_text());
            if cli.timings {
                for (group, t) in &report.timings {
                    eprintln!("timing {group}: {:.3}s", t.as_secs_f64());
                }
            }
            report.passed
        }
        Command::Decompose { spec } => {
            let r = load(spec, &algebras)?;
            let m = r.build_module()?;
            let d = decompose_under(&m, &r.embedding)?;
            let value = json!({
                "module": m.descriptor(),
                "embedding": r.embedding.descriptor(),
                "constituents": d.summary(),
                "total_dim": d.total_dim,
            });
            emit(cli, &value, &format!("{} under {}: {}\n", m.descriptor(), r.embedding.descriptor(), d.notation()));
            true
        }
        Command::Scan { spec } => {
            let r = load(spec, &algebras)?;
            let cat = scan_invariant_abelian(&r.embedding)?;
            emit(cli, &serde_json::to_value(&cat)?, &cat.to_text());
            true
        }
        Command::Branch { spec } => {
            let r = load(spec, &algebras)?;
            if r.embedding.radical().is_none() {
                bail!("{}: field `lift`: branch needs a lift", spec.display());
            }
            let m = r.build_module()?;
            let rep = branch_with_linkage(&m, &r.embedding)?;
            let text = format!(
                "{} under {}\nconstituents: {}\nblocks: {}\nradical actions commute: {}\nparameter-dependent: {}\n",
                rep.module,
                rep.lift,
                rep.decomposition,
                rep.block_notation,
                rep.radical_actions_commute,
                rep.parameter_dependent
            );
            emit(cli, &serde_json::to_value(&rep)?, &text);
            rep.radical_actions_commute && rep.linkage_weight_compatible
        }
        Command::Classify { r#type } => {
            let t = parse_type(r#type)?;
            if !t.to_string().starts_with('E') {
                return Err(usage(format!("classify needs E6, E7 or E8, not {t}")));
            }
            let c = classify_lifts_in(algebras.get(t)?)?;
            let mut text = classification_text(&c);
            for ch in &c.checks {
                text.push_str(&format!("{} {}\n", if ch.passed { "PASS" } else { "FAIL" }, ch.id));
            }
            emit(cli, &serde_json::to_value(&c)?, &text);
            c.passed()
        }
        Command::Report { out } => {
            let report = run(Selector::All, &algebras);
            std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            let write = |name: &str, body: &str| -> Result<()> {
                let p = out.join(name);
                std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
            };
            write("verify.json", &serde_json::to_string_pretty(&report)?)?;
            write("verify.txt", &report.to_text())?;
            for (name, body) in &report.artifacts {
                write(&format!("{name}.txt"), body)?;
            }
            let value = json!({
                "out": out.display().to_string(),
                "passed": report.passed,
                "total": report.total,
                "failed": report.failed,
                "artifacts": report.artifacts.keys().collect::<Vec<_>>(),
            });
            let text = format!(
                "{} of {} checks passed; reports written to {}\n",
                report.total - report.failed,
                report.total,
                out.display()
            );
            emit(cli, &value, &text);
            report.passed
        }
    };
    if cli.timings {
        eprintln!("timing total: {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(ok)
}
