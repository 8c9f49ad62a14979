use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use subword_hall::category::admissible_sequences;
use subword_hall::f1rep::{self, F1Class, F1Element};
use subword_hall::flats::{induced_quadruple, irreducible_flats};
use subword_hall::format::{emit_object, parse_object_file};
use subword_hall::hall::{self, HallElement};
use subword_hall::quiver::{self, LabeledQuiver, SXObject};
use subword_hall::subword::facets;
use subword_hall::Quadruple;

#[derive(Parser)]
#[command(name = "subword", version, about = "Subword complex categories and their Hall algebras")]
struct Cli {
    /// Cap on enumeration sizes for the exhaustive checks.
    #[arg(long, global = true, env = "SUBWORD_BUDGET", default_value_t = 10_000_000)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an object file.
    Validate { file: PathBuf },
    /// List every facet of the object's subword complex.
    Facets { file: PathBuf },
    /// Print the root function, one position per line.
    Roots { file: PathBuf },
    /// Print the irreducible flats with the classes they induce.
    Flats { file: PathBuf },
    /// Product of two object classes.
    HallMul { left: PathBuf, right: PathBuf },
    /// Coproduct of an object class.
    HallComul { file: PathBuf },
    /// Root configuration quiver as a Graphviz digraph.
    Quiver { file: PathBuf },
    /// Product in the subquiver Hall algebra, e.g. `--left "{2}" --right "{1}"`.
    SxMul {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Coproduct in the subquiver Hall algebra.
    SxComul {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Product in the Hall algebra of F1 representations of the quiver.
    F1Mul {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Compare both Hall algebras on all small structure constants.
    IsoCheck { file: PathBuf },
    /// Flip at a special vertex and compare quivers.
    Flip {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Serre relations on the equioriented path with `n` vertices.
    SerreCheck {
        #[arg(long)]
        n: usize,
    },
    /// Hopf algebra axioms on the class, and proto-exact axioms on its quiver.
    AxiomsCheck { file: PathBuf },
}

/// A check ran to completion but did not hold.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "check failed: {}", self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn load(path: &Path) -> Result<Quadruple> {
    parse_object_file(path).with_context(|| format!("reading {}", path.display()))
}

fn quiver_of(path: &Path) -> Result<(Quadruple, LabeledQuiver)> {
    let x = load(path)?;
    let q = quiver::root_configuration_quiver(&x)?;
    Ok((x, q))
}

/// Parses `{1,2}+{3}` (or `0`) into vertex sets.
fn parse_components(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    if text == "0" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('+')
        .map(|part| {
            let inner = part
                .trim()
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .with_context(|| format!("expected {{...}}, got `{part}`"))?;
            inner
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad vertex `{s}`")))
                .collect()
        })
        .collect()
}

fn f1_text(e: &F1Element) -> String {
    e.iter().map(|(k, c)| format!("{c}\t{k}\n")).collect()
}

fn run(cli: Cli) -> Result<String> {
    let budget = cli.budget;
    let mut out = String::new();
    match cli.command {
        Command::Validate { file } => {
            let x = load(&file)?;
            out.push_str(&format!(
                "ok\trank={}\tlength={}\tface={:?}\troot_independent={}\n",
                x.rank(),
                x.len(),
                x.face(),
                x.is_root_independent()
            ));
        }
        Command::Facets { file } => {
            let x = load(&file)?;
            for f in facets(x.system(), x.word(), x.pi())? {
                out.push_str(&format!("{f:?}\n"));
            }
        }
        Command::Roots { file } => {
            let x = load(&file)?;
            let roots = x.root_function();
            for p in 1..=x.len() {
                let mark = if x.is_folded(p) { "face" } else { "" };
                out.push_str(&format!("{p}\t{}\t{mark}\n", roots.root(p)));
            }
        }
        Command::Flats { file } => {
            let x = load(&file)?;
            for f in irreducible_flats(&x) {
                let y = induced_quadruple(&x, &f)?;
                out.push_str(&format!("{f}\t{}\n", y.canonical_key()));
            }
        }
        Command::HallMul { left, right } => {
            let (a, b) = (load(&left)?, load(&right)?);
            let p = HallElement::<i64>::class(&a).mul(&HallElement::class(&b));
            out.push_str(&p.to_text());
        }
        Command::HallComul { file } => {
            let x = load(&file)?;
            if admissible_sequences(&x).len() > budget {
                return Err(subword_hall::Error::BudgetExceeded(budget).into());
            }
            out.push_str(&hall::tensor_to_text(&HallElement::<i64>::class(&x).coproduct()));
        }
        Command::Quiver { file } => {
            let (_, q) = quiver_of(&file)?;
            out.push_str(&q.to_dot());
        }
        Command::SxMul { file, left, right } => {
            let (_, q) = quiver_of(&file)?;
            let a = SXObject::new(&q, parse_components(&left)?)?;
            let b = SXObject::new(&q, parse_components(&right)?)?;
            out.push_str(&quiver::element_to_text(&quiver::sx_class_product(&q, &a, &b)?));
        }
        Command::SxComul { file, object } => {
            let (_, q) = quiver_of(&file)?;
            let x = SXObject::new(&q, parse_components(&object)?)?;
            for ((l, r), c) in quiver::sx_coproduct(&x) {
                out.push_str(&format!("{c}\t{l}\t{r}\n"));
            }
        }
        Command::F1Mul { file, left, right } => {
            let (_, q) = quiver_of(&file)?;
            let a = F1Class::new(&q, parse_components(&left)?)?;
            let b = F1Class::new(&q, parse_components(&right)?)?;
            out.push_str(&f1_text(&f1rep::f1_class_product(&q, &a, &b)?));
        }
        Command::IsoCheck { file } => {
            let x = load(&file)?;
            let report = f1rep::psi_iso_check(&x)?;
            out.push_str(&format!("pairs\t{}\n", report.pairs_checked));
            for m in &report.mismatches {
                out.push_str(&format!("mismatch\t{}\t{}\n", m.left, m.right));
            }
            if !report.passed() {
                print!("{out}");
                return Err(CheckFailed(format!("{} mismatches", report.mismatches.len())).into());
            }
            out.push_str("pass\n");
        }
        Command::Flip { file, vertex } => {
            let x = load(&file)?;
            let r = quiver::flip_reflection(&x, vertex)?;
            out.push_str(&format!("# flip at {} with partner {}\n", r.vertex, r.partner));
            out.push_str(&format!("# pi is longest: {}\n", r.pi_is_longest));
            out.push_str(&emit_object(&r.y));
            out.push_str(&r.quiver_y.to_dot());
            if !r.matches {
                print!("{out}");
                return Err(CheckFailed(format!(
                    "flipped quiver {} differs from reflected quiver {}",
                    r.quiver_y, r.expected
                ))
                .into());
            }
        }
        Command::SerreCheck { n } => {
            if n < 2 {
                bail!("serre-check needs n >= 2");
            }
            if !f1rep::serre_check(n)? {
                return Err(CheckFailed("Serre relations".into()).into());
            }
            out.push_str("pass\n");
        }
        Command::AxiomsCheck { file } => {
            let x = load(&file)?;
            let key = x.canonical_key();
            let mut failed = Vec::new();
            let mut record = |name: &str, ok: bool, out: &mut String| {
                out.push_str(&format!("{name}\t{}\n", if ok { "pass" } else { "FAIL" }));
                if !ok {
                    failed.push(name.to_string());
                }
            };
            record("counit", hall::counit_check(&key), &mut out);
            record("coassociativity", hall::coassociativity_check(&key, budget)?, &mut out);
            record(
                "bialgebra",
                hall::bialgebra_compat_check(&key, &key, budget)?,
                &mut out,
            );
            if let Ok(q) = quiver::root_configuration_quiver(&x) {
                if q.is_tree() {
                    let max_vertices = (0..=8).take_while(|n| 1usize << (5 * n) <= budget).last().unwrap_or(0);
                    let r = quiver::proto_exact_check(&q, max_vertices)?;
                    record("PE1", r.pe1, &mut out);
                    record("PE2", r.pe2, &mut out);
                    record("PE3", r.pe3, &mut out);
                    record("PE4", r.pe4, &mut out);
                    record("PE5", r.pe5, &mut out);
                }
            }
            if !failed.is_empty() {
                print!("{out}");
                return Err(CheckFailed(failed.join(", ")).into());
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) if e.downcast_ref::<CheckFailed>().is_some() => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
