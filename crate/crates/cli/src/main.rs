use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bordersub::monomials::{duality_degree_cap, find_invariant_monomial_within, generator_family, invariant_monomials_within, is_torus_invariant, Monomial};
use bordersub::nullcone::{components_json, enumerate_maximal_components, is_maximal_nullcone_support, nullcone_feasible, outcome_json};
use bordersub::orbit::{unit_orbit_member, OrbitVerdict};
use bordersub::stabilizer::{
    cone_stabilizer_dim, cone_stabilizer_structure, main_theorem_bound, orbit_cone_tangent_dim, stabilizer_dim, ACTION_KERNEL_DIM,
};
use bordersub::tensor::{build_tight_u, build_w, random_tensor_on, tight_support, unit_plus_random};
use bordersub::tight::find_tight_witness;
use bordersub::{Error, Support, Tensor3, WVariant};
use bordersub_cli::{certify_status, cmd_certify, cmd_reproduce, CertifyStatus};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "bordersub", version, about = "Exact certificates for maximal border subrank of n x n x n tensors")]
#[command(after_help = "Exit codes: 0 success, 1 refuted / infeasible / non-member, 2 usage or input error, 3 internal invariant violation.\n\
BORDERSUB_THREADS caps the worker threads (default: all cores).")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    W,
    WPrime,
    WDoublePrime,
    TightU,
    Tight,
    Diagonal,
    OffDiagonal,
    Full,
    Empty,
}

#[derive(Subcommand)]
enum Command {
    /// Generate supports and seeded tensors.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Torus nullcone membership of supports.
    #[command(subcommand)]
    Nullcone(NullconeCmd),
    /// Torus-invariant monomials.
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Lie-algebra stabilizer of a tensor.
    #[command(subcommand)]
    Stab(StabCmd),
    /// Dimension of the cone stabilizer, optionally with its structure check.
    ConeStab {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        structure: bool,
    },
    /// Tangent dimension of the orbit of the cone over W at a seeded generic point.
    OrbitDim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Closed-form lower bound on the dimension of the maximal border subrank locus.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Certify maximal border subrank of M + w via a torus degeneration.
    Certify {
        #[arg(long)]
        tensor: PathBuf,
    },
    /// Decide membership in the orbit of the unit tensor (maximal subrank).
    ///
    /// Members have maximal subrank. Tensors of maximal border subrank that
    /// only degenerate to the unit tensor are reported as non_member.
    UnitOrbit {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Tightness of a support.
    #[command(subcommand)]
    Tight(TightCmd),
    /// Rerun every exact check for n = 1..=N (N <= 5).
    Reproduce {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// A named support.
    Support {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
    /// A tensor with seeded coefficients in {±1, ±2, ±3} on a support.
    Tensor {
        #[arg(long)]
        seed: u64,
        #[arg(long, conflicts_with_all = ["kind", "n"])]
        support: Option<PathBuf>,
        #[arg(long, value_enum, requires = "n")]
        kind: Option<Kind>,
        #[arg(long)]
        n: Option<usize>,
        /// Add the unit tensor (the support must avoid the diagonal).
        #[arg(long)]
        plus_unit: bool,
    },
}

#[derive(Subcommand)]
enum NullconeCmd {
    /// Feasibility with a certificate cocharacter.
    Check {
        #[arg(long)]
        support: PathBuf,
    },
    /// Whether a feasible support is maximal, with the extending triples.
    Maximal {
        #[arg(long)]
        support: PathBuf,
    },
    /// All maximal supports (complete for n <= 3).
    Components {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        best_effort: bool,
    },
}

#[derive(Subcommand)]
enum InvariantsCmd {
    /// The generating family of invariant monomials.
    List {
        #[arg(long)]
        n: usize,
    },
    /// Whether a monomial is invariant.
    Check {
        #[arg(long)]
        monomial: PathBuf,
    },
    /// Invariant monomials supported in a support (default degree cap 3n).
    Within {
        #[arg(long)]
        support: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        /// List every monomial up to the cap instead of one witness.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum StabCmd {
    Dim {
        #[arg(long)]
        tensor: PathBuf,
    },
}

#[derive(Subcommand)]
enum TightCmd {
    Check {
        #[arg(long)]
        support: PathBuf,
    },
}

struct Output {
    value: Value,
    table: Option<String>,
    code: u8,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, table: None, code: 0 }
    }

    fn verdict(value: Value, pass: bool) -> Self {
        Output { value, table: None, code: if pass { 0 } else { EXIT_REFUTED } }
    }

    fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn named_support(kind: Kind, n: usize) -> Result<Support, Error> {
    if n == 0 {
        return Err(Error::ZeroFormat);
    }
    Ok(match kind {
        Kind::W => build_w(n, WVariant::W),
        Kind::WPrime => build_w(n, WVariant::WPrime),
        Kind::WDoublePrime => build_w(n, WVariant::WDoublePrime),
        Kind::TightU => build_tight_u(n),
        Kind::Tight => tight_support(n),
        Kind::Diagonal => Support::diagonal(n),
        Kind::OffDiagonal => Support::off_diagonal(n),
        Kind::Full => Support::full(n),
        Kind::Empty => Support::empty(n),
    })
}

fn positive(n: usize) -> Result<usize, Error> {
    if n == 0 {
        Err(Error::ZeroFormat)
    } else {
        Ok(n)
    }
}

/// Renders the top level of a JSON object as aligned `key  value` lines.
fn generic_table(v: &Value) -> String {
    match v.as_object() {
        Some(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            map.iter().map(|(k, v)| format!("{k:width$}  {v}\n")).collect()
        }
        None => format!("{v}\n"),
    }
}

fn run(cmd: Command) -> Result<Output, Error> {
    match cmd {
        Command::Gen(GenCmd::Support { kind, n }) => Ok(Output::ok(named_support(kind, n)?.to_json_value())),
        Command::Gen(GenCmd::Tensor { seed, support, kind, n, plus_unit }) => {
            let sup = match (support, kind, n) {
                (Some(path), _, _) => Support::from_json(&read(&path)?)?,
                (None, Some(kind), Some(n)) => named_support(kind, n)?,
                _ => return Err(Error::Precondition("give --support FILE or --kind K --n N".into())),
            };
            let t = if plus_unit { unit_plus_random(&sup, seed)? } else { random_tensor_on(&sup, seed) };
            Ok(Output::ok(t.to_json_value()))
        }
        Command::Nullcone(NullconeCmd::Check { support }) => {
            let s = Support::from_json(&read(&support)?)?;
            let o = nullcone_feasible(&s)?;
            Ok(Output::verdict(outcome_json(&o), o.feasible))
        }
        Command::Nullcone(NullconeCmd::Maximal { support }) => {
            let s = Support::from_json(&read(&support)?)?;
            let m = is_maximal_nullcone_support(&s)?;
            let ext: Vec<[usize; 3]> = m.extendable.iter().map(|t| [t.0, t.1, t.2]).collect();
            Ok(Output::verdict(json!({"maximal": m.maximal, "extendable": ext}), m.maximal))
        }
        Command::Nullcone(NullconeCmd::Components { n, best_effort }) => {
            let c = enumerate_maximal_components(positive(n)?, best_effort)?;
            let mut v = components_json(&c);
            v["provenance"] = json!("enumerated by this tool");
            let mut by_size = std::collections::BTreeMap::new();
            for s in &c.supports {
                *by_size.entry(s.len()).or_insert(0usize) += 1;
            }
            let mut table = format!("n = {n}, complete = {}, {} components\n", c.complete, c.supports.len());
            for (size, count) in by_size {
                table.push_str(&format!("  size {size:>3}: {count}\n"));
            }
            Ok(Output::ok(v).with_table(table))
        }
        Command::Invariants(InvariantsCmd::List { n }) => {
            let family = generator_family(positive(n)?);
            let table = family.iter().map(|m| format!("{m}\n")).collect();
            let v = json!({"n": n, "count": family.len(), "monomials": family.iter().map(Monomial::to_json_value).collect::<Vec<_>>()});
            Ok(Output::ok(v).with_table(table))
        }
        Command::Invariants(InvariantsCmd::Check { monomial }) => {
            let m = Monomial::from_json(&read(&monomial)?)?;
            let inv = is_torus_invariant(&m);
            Ok(Output::verdict(json!({"invariant": inv, "monomial": m.to_json_value()}), inv))
        }
        Command::Invariants(InvariantsCmd::Within { support, max_degree, all }) => {
            let s = Support::from_json(&read(&support)?)?;
            let cap = max_degree.unwrap_or_else(|| duality_degree_cap(s.n()));
            if all {
                let ms = invariant_monomials_within(&s, cap);
                let table = ms.iter().map(|m| format!("{m}\n")).collect();
                let v = json!({"max_degree": cap, "count": ms.len(), "monomials": ms.iter().map(Monomial::to_json_value).collect::<Vec<_>>()});
                Ok(Output::ok(v).with_table(table))
            } else {
                let m = find_invariant_monomial_within(&s, cap);
                let v = json!({"max_degree": cap, "found": m.is_some(), "monomial": m.as_ref().map(Monomial::to_json_value)});
                Ok(Output::ok(v))
            }
        }
        Command::Stab(StabCmd::Dim { tensor }) => {
            let t = Tensor3::from_json(&read(&tensor)?)?;
            let d = stabilizer_dim(&t);
            let quotient = if t.is_zero() { Value::Null } else { json!(d - ACTION_KERNEL_DIM) };
            Ok(Output::ok(json!({"value": d, "convention": "gl3", "quotient_value": quotient, "attempts": []})))
        }
        Command::ConeStab { n, structure } => {
            let n = positive(n)?;
            if structure {
                let st = cone_stabilizer_structure(n);
                let v = json!({
                    "value": st.dim_quotient,
                    "convention": "quotient",
                    "gl3_value": st.dim_gl3,
                    "attempts": [],
                    "structure": {"all_pass": st.all_pass, "violations": st.violations},
                });
                Ok(Output::verdict(v, st.all_pass))
            } else {
                let d = cone_stabilizer_dim(n);
                Ok(Output::ok(json!({"value": d, "convention": "quotient", "gl3_value": d + ACTION_KERNEL_DIM, "attempts": []})))
            }
        }
        Command::OrbitDim { n, seed } => {
            let r = orbit_cone_tangent_dim(positive(n)?, seed);
            let v = json!({
                "value": r.value,
                "expected": r.expected,
                "convention": "quotient",
                "attempts": serde_json::to_value(&r.attempts)?,
            });
            Ok(Output::verdict(v, r.value == r.expected))
        }
        Command::Bound { n } => {
            Ok(Output::ok(json!({"value": main_theorem_bound(positive(n)?), "convention": "quotient", "attempts": []})))
        }
        Command::Certify { tensor } => {
            let t = Tensor3::from_json(&read(&tensor)?)?;
            let r = cmd_certify(&t)?;
            let pass = certify_status(&r) == CertifyStatus::Certified;
            Ok(Output::verdict(r.to_json_value(), pass).with_table(r.to_table()))
        }
        Command::UnitOrbit { tensor, seed } => {
            let t = Tensor3::from_json(&read(&tensor)?)?;
            let v = unit_orbit_member(&t, seed);
            let out = json!({"verdict": v.label(), "witness": v.witness()});
            Ok(Output::verdict(out, v == OrbitVerdict::Member))
        }
        Command::Tight(TightCmd::Check { support }) => {
            let s = Support::from_json(&read(&support)?)?;
            let w = find_tight_witness(&s)?;
            let v = json!({"tight": w.is_some(), "witness": w.as_ref().map(serde_json::to_value).transpose()?});
            Ok(Output::verdict(v, w.is_some()))
        }
        Command::Reproduce { n_max } => {
            let r = cmd_reproduce(n_max)?;
            Ok(Output::verdict(r.to_json_value(), r.all_pass()).with_table(r.to_table()))
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("BORDERSUB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().map_err(|_| format!("BORDERSUB_THREADS must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        return Err("BORDERSUB_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli.command) {
        Ok(out) => {
            match (cli.format, &out.table) {
                (Format::Table, Some(t)) => print!("{t}"),
                (Format::Table, None) => print!("{}", generic_table(&out.value)),
                (Format::Json, _) => println!("{}", out.value),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, Error::Invariant(_)) { EXIT_INTERNAL } else { EXIT_USAGE };
            ExitCode::from(code)
        }
    }
}
