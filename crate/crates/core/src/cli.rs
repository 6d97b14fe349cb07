//! The `bollobas` command line.
//!
//! Exit codes: 0 valid or holds, 1 violated, 2 input or precondition
//! error, 3 cap exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions;
use crate::error::{Error, Result};
use crate::family::{Family, WeightKind};
use crate::functionals::{bound, check, common_profile, family_sum, SystemClass, TheoremId};
use crate::ground::GroundSet;
use crate::io::{parse_family, serialize_family};
use crate::oracle::{search_max, Caps, SearchOptions};
use crate::permsim::{self, AugmentedGround, ProofKind};
use crate::rational::{to_decimal, to_ratio_string, Rational};
use crate::systems::{validate_antichain, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bollobas", version, about = "Exact checks of Bollobás-type set-pair inequalities")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for search and sampling (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Log search progress to stderr.
    #[arg(long, global = true)]
    progress: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a family is a Bollobás system, a skew system or an antichain.
    Validate {
        #[arg(long, value_enum)]
        system: SystemArg,
        file: PathBuf,
    },
    /// Weighted sum of a family.
    Sum {
        #[arg(long)]
        kind: WeightKind,
        file: PathBuf,
    },
    /// Right-hand side of an inequality.
    Bound {
        #[command(flatten)]
        theorem: TheoremArgs,
        #[arg(long)]
        n: Option<usize>,
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
    },
    /// Evaluate an inequality on a family.
    Check {
        #[command(flatten)]
        theorem: TheoremArgs,
        file: PathBuf,
    },
    /// Write one of the extremal families.
    Construct {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Exhaustive search for the largest weighted sum.
    Search {
        #[arg(long)]
        system: SystemClass,
        #[arg(long)]
        kind: WeightKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
        /// Only pairs with |A∩X_k| = a_k.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Only pairs with |B∩X_k| = b_k.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        /// Search beyond the size caps.
        #[arg(long)]
        force: bool,
    },
    /// Replay the permutation argument for a family.
    Simulate {
        #[arg(long, value_enum)]
        proof: ProofArg,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        file: PathBuf,
    },
}

#[derive(Args, Debug)]
struct TheoremArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    a: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    b: Vec<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SystemArg {
    Bollobas,
    Skew,
    Antichain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Example1,
    Example2,
    Uniform,
    UniformPartitioned,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProofArg {
    Thm15,
    Thm17,
    Lemma31,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let level = if cli.progress { "debug" } else { "warn" };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
    match execute(&cli) {
        Ok((code, report)) => {
            let _ = out.write_all(report.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                _ => EXIT_INPUT,
            }
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

fn read_family(path: &Path) -> Result<Family> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_family(&text)
}

fn ground_from(n: Option<usize>, blocks: Option<&[usize]>) -> Result<Option<GroundSet>> {
    match (n, blocks) {
        (None, None) => Ok(None),
        (n, Some(sizes)) => {
            let g = GroundSet::from_block_sizes(sizes)?;
            if let Some(n) = n {
                if n != g.n() {
                    return Err(Error::Partition(format!("blocks sum to {} but --n is {n}", g.n())));
                }
            }
            Ok(Some(g))
        }
        (Some(n), None) => Ok(Some(GroundSet::new(n))),
    }
}

fn num(q: &Rational) -> serde_json::Value {
    json!({ "exact": to_ratio_string(q), "decimal": to_decimal(q) })
}

fn num_text(q: &Rational) -> String {
    format!("{} ({})", to_ratio_string(q), to_decimal(q))
}

fn render(json_mode: bool, value: serde_json::Value, text: String) -> String {
    if json_mode {
        serde_json::to_string_pretty(&value).expect("reports serialize") + "\n"
    } else {
        text
    }
}

fn verdict_report(json_mode: bool, system: &str, v: &Verdict) -> (i32, String) {
    let code = if v.valid { EXIT_OK } else { EXIT_VIOLATED };
    let text = match v.witness {
        None => format!("{system}: valid\n"),
        Some(w) => format!("{system}: invalid, witness {w}\n"),
    };
    let value = json!({
        "system": system,
        "valid": v.valid,
        "witness": v.witness.map(|w| json!({ "i": w.i, "j": w.j, "text": w.to_string() })),
    });
    (code, render(json_mode, value, text))
}

/// Fills in `--a`/`--b` for C1.3 and T1.6 from the family when omitted.
fn theorem_for_family(args: &TheoremArgs, f: &Family) -> Result<TheoremId> {
    let needs_profile = matches!(args.theorem.as_str(), "C1.3" | "T1.6");
    if needs_profile && args.a.is_empty() && args.b.is_empty() {
        let profile = common_profile(f).ok_or_else(|| {
            Error::Precondition(format!("{} needs pairs of one common size profile", args.theorem))
        })?;
        let (a, b): (Vec<usize>, Vec<usize>) = if args.theorem == "C1.3" {
            let a = profile.iter().map(|p| p.0).sum();
            let b = profile.iter().map(|p| p.1).sum();
            (vec![a], vec![b])
        } else {
            profile.into_iter().unzip()
        };
        return TheoremId::parse(&args.theorem, args.l, &a, &b);
    }
    TheoremId::parse(&args.theorem, args.l, &args.a, &args.b)
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    if let Some(w) = cli.workers {
        // sampling uses the global pool; an earlier build in-process is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    let json_mode = cli.json;
    match &cli.command {
        Command::Validate { system, file } => {
            let f = read_family(file)?;
            Ok(match system {
                SystemArg::Bollobas => verdict_report(json_mode, "bollobas", &SystemClass::Bollobas.validate(&f)),
                SystemArg::Skew => verdict_report(json_mode, "skew", &SystemClass::Skew.validate(&f)),
                SystemArg::Antichain => {
                    let sets: Vec<_> = f.pairs().iter().map(|p| p.a().clone()).collect();
                    verdict_report(json_mode, "antichain", &validate_antichain(&sets))
                }
            })
        }
        Command::Sum { kind, file } => {
            let f = read_family(file)?;
            let s = family_sum(&f, *kind)?;
            let value = json!({ "kind": kind.to_string(), "m": f.m(), "sum": num(&s) });
            let text = format!("{kind} sum over {} pairs: {}\n", f.m(), num_text(&s));
            Ok((EXIT_OK, render(json_mode, value, text)))
        }
        Command::Bound { theorem, n, blocks } => {
            let id = TheoremId::parse(&theorem.theorem, theorem.l, &theorem.a, &theorem.b)?;
            let ground = match ground_from(*n, blocks.as_deref())? {
                Some(g) if matches!(id, TheoremId::T1_8 | TheoremId::C3_3) && blocks.is_none() => {
                    let k = g.n() / 2;
                    GroundSet::from_block_sizes(&[k, g.n() - k])?
                }
                Some(g) => g,
                None => match &id {
                    TheoremId::C1_3 { a, b } => GroundSet::new(a + b),
                    TheoremId::T1_6 { a, b } => {
                        let sizes: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        GroundSet::from_block_sizes(&sizes)?
                    }
                    _ => return Err(Error::Precondition(format!("{id} needs --n or --blocks"))),
                },
            };
            let b = bound(&id, &ground)?;
            let mut value = json!({
                "theorem": id.to_string(),
                "n": ground.n(),
                "blocks": ground.block_sizes(),
                "bound": num(&b.value),
            });
            let mut text = format!("{id} on blocks {:?}: {}\n", ground.block_sizes(), num_text(&b.value));
            if let Some(r) = &b.relaxed {
                value["relaxed"] = num(r);
                text += &format!("relaxed: {}\n", num_text(r));
            }
            Ok((EXIT_OK, render(json_mode, value, text)))
        }
        Command::Check { theorem, file } => {
            let f = read_family(file)?;
            let id = theorem_for_family(theorem, &f)?;
            let report = check(&f, &id)?;
            let code = match report.holds {
                Some(true) => EXIT_OK,
                Some(false) => EXIT_VIOLATED,
                None => EXIT_INPUT,
            };
            Ok((code, render(json_mode, report.to_json(), report.to_text())))
        }
        Command::Construct { which, n, blocks, a, b, output } => {
            let need_n = || n.ok_or_else(|| Error::Precondition("--n is required".into()));
            let f = match which {
                Which::Example1 => {
                    let g = ground_from(*n, blocks.as_deref())?
                        .ok_or_else(|| Error::Precondition("--n or --blocks is required".into()))?;
                    if g.n() > 20 {
                        return Err(Error::CapExceeded { what: "example1 n".into(), value: g.n() as u128, cap: 20 });
                    }
                    constructions::example1(&g)
                }
                Which::Example2 => constructions::example2(need_n()?).0,
                Which::Uniform => match (a.as_slice(), b.as_slice()) {
                    ([a], [b]) => constructions::uniform(*a, *b),
                    _ => return Err(Error::Precondition("uniform needs one --a and one --b".into())),
                },
                Which::UniformPartitioned => constructions::uniform_partitioned(a, b)?.0,
            };
            let doc = serialize_family(&f);
            match output {
                Some(path) => {
                    std::fs::write(path, &doc)
                        .map_err(|e| Error::Malformed(format!("cannot write {}: {e}", path.display())))?;
                    let text = format!("wrote {} pairs to {}\n", f.m(), path.display());
                    let value = json!({ "m": f.m(), "path": path.display().to_string() });
                    Ok((EXIT_OK, render(json_mode, value, text)))
                }
                None => Ok((EXIT_OK, doc)),
            }
        }
        Command::Search { system, kind, n, blocks, a, b, force } => {
            let ground = ground_from(*n, blocks.as_deref())?
                .ok_or_else(|| Error::Precondition("--n or --blocks is required".into()))?;
            let restrict = match (a.is_empty(), b.is_empty()) {
                (true, true) => None,
                _ if a.len() == ground.r() && b.len() == ground.r() => {
                    Some(a.iter().copied().zip(b.iter().copied()).collect())
                }
                _ => return Err(Error::Precondition("--a and --b need one entry per block".into())),
            };
            let opts = SearchOptions {
                force: *force,
                workers: cli.workers,
                prune: false,
                restrict,
                caps: Caps::from_env(),
            };
            let r = search_max(&ground, *system, *kind, &opts)?;
            let value = json!({
                "system": system.to_string(),
                "kind": kind.to_string(),
                "n": ground.n(),
                "blocks": ground.block_sizes(),
                "max_sum": num(&r.max_sum),
                "m": r.maximizer.m(),
                "maximizer": serde_json::from_str::<serde_json::Value>(&serialize_family(&r.maximizer))
                    .expect("family documents are JSON"),
                "nodes_explored": r.nodes_explored,
                "exhaustive": r.exhaustive,
            });
            let text = format!(
                "max {kind} sum over {system} systems on blocks {:?}: {}\nmaximizer ({} pairs):\n{}nodes explored: {}\n",
                ground.block_sizes(),
                num_text(&r.max_sum),
                r.maximizer.m(),
                serialize_family(&r.maximizer),
                r.nodes_explored
            );
            Ok((EXIT_OK, render(json_mode, value, text)))
        }
        Command::Simulate { proof, l, mode, samples, seed, file } => {
            let f = read_family(file)?;
            let kind = match proof {
                ProofArg::Thm15 => ProofKind::Thm15,
                ProofArg::Thm17 => ProofKind::Thm17,
                ProofArg::Lemma31 => ProofKind::Lemma31 {
                    l: l.ok_or_else(|| Error::Precondition("lemma31 needs --l".into()))?,
                },
            };
            let aug = AugmentedGround::new(f.ground(), kind)?;
            match mode {
                Mode::Exact => {
                    let report = permsim::exact_report(&f, &aug, permsim::permutation_cap_from_env())?;
                    let ok = report["disjoint"] == true
                        && report["union_mass_at_most_one"] == true
                        && report["chain_holds"] == true
                        && report["pairs"].as_array().is_some_and(|ps| ps.iter().all(|p| p["agree"] == true));
                    let text = exact_text(&report);
                    Ok((if ok { EXIT_OK } else { EXIT_VIOLATED }, render(json_mode, report, text)))
                }
                Mode::Mc => {
                    let report = permsim::mc_report(&f, &aug, *samples, *seed)?;
                    let ok = report["pairs"]
                        .as_array()
                        .is_some_and(|ps| ps.iter().all(|p| p["within_4_stderr"] == true));
                    let text = mc_text(&report);
                    Ok((if ok { EXIT_OK } else { EXIT_VIOLATED }, render(json_mode, report, text)))
                }
            }
        }
    }
}

fn exact_text(r: &serde_json::Value) -> String {
    let mut s = format!("{} on blocks {}, |Ω| = {}\n", r["proof"].as_str().unwrap_or(""), r["blocks"], r["omega"]);
    s += "pair  formula            enumerated\n";
    for p in r["pairs"].as_array().into_iter().flatten() {
        s += &format!(
            "{:<5} {:<18} {}\n",
            p["pair"].to_string(),
            p["formula"]["exact"].as_str().unwrap_or(""),
            p["enumerated"]["exact"].as_str().unwrap_or("")
        );
    }
    s += &format!("events disjoint: {}\n", r["disjoint"]);
    if let Some(w) = r["witness"].as_object() {
        s += &format!("witness: σ = {} in E{} and E{}\n", w["sigma"].as_str().unwrap_or(""), w["i"], w["j"]);
    }
    s += &format!(
        "P(union) = {}\nΣ P(E_i) = {} ({})\nlower bound mass = {}\n",
        r["union_probability"]["exact"].as_str().unwrap_or(""),
        r["union_mass"]["exact"].as_str().unwrap_or(""),
        r["union_mass"]["decimal"].as_str().unwrap_or(""),
        r["lower_bound_mass"]["exact"].as_str().unwrap_or("")
    );
    s
}

fn mc_text(r: &serde_json::Value) -> String {
    let mut s = format!("{} with {} samples, seed {}\n", r["proof"].as_str().unwrap_or(""), r["samples"], r["seed"]);
    s += "pair  exact        estimate     stderr       within 4σ\n";
    for p in r["pairs"].as_array().into_iter().flatten() {
        s += &format!(
            "{:<5} {:<12} {:<12.6} {:<12.6} {}\n",
            p["pair"].to_string(),
            p["exact"].as_str().unwrap_or(""),
            p["estimate"].as_f64().unwrap_or(f64::NAN),
            p["stderr"].as_f64().unwrap_or(f64::NAN),
            p["within_4_stderr"]
        );
    }
    s
}
