//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 success, 1 domain violation, 2 usage error, 3 budget
//! exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chambers::{enumerate_quasilinkages, surgery_audit, AtlasError, AtlasOptions};
use crate::complex::{CellComplex, Variant};
use crate::error::Error;
use crate::gale::{star_polytope_faces, StarChecker};
use crate::games::{ConflictFreeFamily, Quasilinkage};
use crate::homology::{cellular_homology, fs_check, homology, order_complex, verify_manifold_with, ManifoldOptions};
use crate::io;
use crate::realize::LengthVector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "quasilinkage", version, about = "Moduli complexes of quasilinkages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GameSource {
    /// Game JSON file
    #[arg(long, conflicts_with = "lengths")]
    game: Option<PathBuf>,
    /// Comma-separated generic length vector, e.g. 1,1,1,1,1 or 11/10,1,1
    #[arg(long)]
    lengths: Option<String>,
}

impl GameSource {
    fn load(&self) -> Result<Quasilinkage, Error> {
        match (&self.game, &self.lengths) {
            (Some(p), _) => io::read_game(p),
            (None, Some(l)) => LengthVector::parse_csv(l)?.short_sets(),
            (None, None) => Err(Error::Parse("one of --game or --lengths is required".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Moduli,
    Stable,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Moduli => Variant::Moduli,
            VariantArg::Stable => Variant::Stable,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    FVector,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    /// Barycentric subdivision (order complex of the face poset)
    Order,
    /// Cellular chain complex with propagated incidence signs
    Cellular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms and report symmetry
    Validate(GameSource),
    /// Find a length vector or a Farkas certificate
    Realize(GameSource),
    /// Flip a maximal short set
    Flip {
        #[command(flatten)]
        src: GameSource,
        /// The maximal short set, e.g. 1,2,3
        #[arg(long)]
        set: String,
    },
    /// Extend a conflict-free family of short sets to a quasilinkage
    Extend {
        #[arg(long)]
        n: usize,
        /// Sets separated by ';', e.g. "1,2;3,4"
        #[arg(long)]
        sets: String,
    },
    /// Build the moduli or stable complex
    Complex {
        #[command(flatten)]
        src: GameSource,
        #[arg(long, value_enum, default_value = "moduli")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "f-vector")]
        emit: Emit,
        /// Also run the manifold checks
        #[arg(long)]
        manifold: bool,
    },
    /// Integral homology
    Homology {
        #[command(flatten)]
        src: GameSource,
        #[arg(long, value_enum, default_value = "moduli")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "order")]
        method: Method,
        /// Compare with the Betti numbers predicted from a realization
        #[arg(long)]
        fs_check: bool,
    },
    /// Star polytope of a vertex and the duality check
    Star {
        #[command(flatten)]
        src: GameSource,
        /// Cyclic order, e.g. 1,2,3,4,5
        #[arg(long)]
        vertex: String,
    },
    /// Enumerate all quasilinkages on [n] through flips
    Atlas {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        with_homology: bool,
        /// Count relabeling orbits (n <= 8)
        #[arg(long)]
        orbits: bool,
        #[arg(long)]
        budget: Option<usize>,
        /// Write the full atlas here; stdout gets the summary
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit the surgery performed by a flip
    Audit {
        #[command(flatten)]
        src: GameSource,
        #[arg(long)]
        set: String,
        /// Skip vertex-link homology in the manifold checks
        #[arg(long)]
        skip_links: bool,
    },
}

enum Failure {
    Domain(Value),
    Usage(String),
    Budget(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            Error::BudgetExceeded(_) => Failure::Budget(json!({ "error": e.to_json() })),
            e => Failure::Domain(json!({ "error": e.to_json() })),
        }
    }
}

/// Parse `argv` (including the program name), run, and print to `out`.
pub fn run(argv: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    let (code, value) = match dispatch(cli.command) {
        Ok(v) => (EXIT_OK, v),
        Err(Failure::Domain(v)) => (EXIT_VIOLATION, v),
        Err(Failure::Budget(v)) => (EXIT_BUDGET, v),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let text = serde_json::to_string(&value).expect("JSON values serialize");
    if writeln!(out, "{text}").is_err() {
        return EXIT_USAGE;
    }
    code
}

fn dispatch(cmd: Command) -> Result<Value, Failure> {
    match cmd {
        Command::Validate(src) => {
            let g = match src.load() {
                Ok(g) => g,
                Err(Error::Violation(v)) => {
                    return Err(Failure::Domain(json!({ "valid": false, "violation": v.to_json() })));
                }
                Err(e) => return Err(e.into()),
            };
            let symmetric = g.is_symmetric().ok();
            Ok(json!({
                "valid": true,
                "n": g.n(),
                "symmetric": symmetric,
                "maximal_short": g.maximal_short_lists(),
                "comparable": g.check_comparability(),
            }))
        }
        Command::Realize(src) => Ok(io::realization_to_json(&src.load()?)?),
        Command::Flip { src, set } => {
            let g = src.load()?;
            Ok(io::game_to_json(&g.flip(io::parse_set(&set)?)?))
        }
        Command::Extend { n, sets } => {
            let family = ConflictFreeFamily::new(n, io::parse_set_list(&sets)?)?;
            Ok(io::game_to_json(&family.extend()))
        }
        Command::Complex { src, variant, emit, manifold } => {
            let g = src.load()?;
            let x = CellComplex::build(&g, variant.into());
            let mut v = match emit {
                Emit::FVector => io::complex_summary(&x),
                Emit::Full => io::complex_to_json(&x),
            };
            if manifold {
                let r = verify_manifold_with(&x, ManifoldOptions::default());
                v["manifold"] = json!({ "verdict": r.verdict(), "report": r });
            }
            Ok(v)
        }
        Command::Homology { src, variant, method, fs_check: want_fs } => {
            let g = src.load()?;
            let x = CellComplex::build(&g, variant.into());
            let h = match method {
                Method::Order => homology(&order_complex(&x)),
                Method::Cellular => cellular_homology(&x)?,
            };
            let mut v = json!(h);
            if want_fs {
                v["fs_match"] = match fs_check(&g)? {
                    Some(fs) => json!(fs.tie_invariant && fs.betti == h.betti && h.is_torsion_free()),
                    None => Value::Null,
                };
            }
            Ok(v)
        }
        Command::Star { src, vertex } => {
            let g = src.load()?;
            let order = io::parse_elements(&vertex)?;
            let checker = StarChecker::new(&g);
            let duality = checker.check(&order)?;
            let mut v = star_polytope_faces(&g, &order)?.to_json();
            v["duality"] = json!(duality.holds());
            v["moduli_isomorphic"] = json!(duality.moduli_isomorphic);
            v["stable_anti_isomorphic"] = json!(duality.stable_anti_isomorphic);
            Ok(v)
        }
        Command::Atlas { n, with_homology, orbits, budget, out } => {
            let graph = match enumerate_quasilinkages(n, AtlasOptions { budget, homology: with_homology }) {
                Ok(g) => g,
                Err(AtlasError::Budget(partial)) => {
                    return Err(Failure::Budget(json!({
                        "error": Error::BudgetExceeded(format!("node budget {} exceeded", budget.unwrap_or(0))).to_json(),
                        "partial": io::partial_atlas_summary(&partial),
                    })));
                }
                Err(AtlasError::Domain(e)) => return Err(e.into()),
            };
            let orbit_count = if orbits { Some(graph.orbit_count()?) } else { None };
            let atlas = io::atlas_to_json(&graph, orbit_count);
            match out {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&atlas).expect("JSON values serialize");
                    std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(atlas["summary"].clone())
                }
                None => Ok(atlas),
            }
        }
        Command::Audit { src, set, skip_links } => {
            let g = src.load()?;
            let report = surgery_audit(&g, io::parse_set(&set)?, ManifoldOptions { links: !skip_links })?;
            let mut v = json!(report);
            v["passes"] = json!(report.passes());
            Ok(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let argv: Vec<String> = std::iter::once("quasilinkage").chain(args.iter().copied()).map(String::from).collect();
        let mut buf = Vec::new();
        let code = run(&argv, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["realize"]).0, EXIT_USAGE);
        assert_eq!(call(&["realize", "--lengths", "1,x"]).0, EXIT_USAGE);
    }

    #[test]
    fn lengths_source() {
        let (code, text) = call(&["realize", "--lengths", "1,1,1,1,1"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["real"], json!(true));
    }

    #[test]
    fn domain_errors() {
        let (code, text) = call(&["flip", "--lengths", "1,1,1,1,1", "--set", "1"]);
        assert_eq!(code, EXIT_VIOLATION);
        assert!(text.contains("NotMaximalShort"));
        assert_eq!(call(&["realize", "--lengths", "1,1,1,1"]).0, EXIT_VIOLATION);
    }

    #[test]
    fn budget_exit() {
        let (code, text) = call(&["atlas", "--n", "5", "--budget", "3"]);
        assert_eq!(code, EXIT_BUDGET);
        assert!(text.contains("partial"));
    }
}
