//! `disq`: exact weighted discretization rules from the command line.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 bad input
//! (parse errors, unknown names, enumeration cap), 3 `min` on a subspace that
//! is not piecewise constant.

mod human;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use disq_core::corpus::{self, Example1Params};
use disq_core::discretize::{
    caratheodory_reduce, decide_min, forced_region_contradiction, search_grid, support_lower_bound, verify_rule,
    GridOptions, MinOptions, Mode, Rule, Subspace,
};
use disq_core::exactnum::{parse_rat, set_start_precision_bits, Rat};
use disq_core::format;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "disq", version, about = "Exact weighted L2 discretization rules for piecewise subspaces")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Weight sign regime.
    #[arg(long, global = true, default_value = "signed")]
    mode: Mode,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    /// Write the report here instead of stdout (a directory for `corpus`).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for enumeration; 0 lets the runtime decide.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Stop with exit code 2 once this many candidate subsets have been examined.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_subsets: Option<u64>,
    /// Starting precision in bits for sign decisions.
    #[arg(long, global = true, env = "DISQ_PRECISION_BITS", hide_env_values = true)]
    precision_bits: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a corpus subspace and its reference rules.
    Corpus {
        /// ex1 or ex2.
        name: String,
        /// Step-function parameters as `a,A,B`.
        #[arg(long)]
        params: Option<String>,
        /// Accept parameters that violate the strict inequality.
        #[arg(long)]
        allow_outside: bool,
    },
    /// Check a rule against every basis pair.
    Verify { subspace: String, rule: String },
    /// Gram matrix and its rank.
    Gram { subspace: String },
    /// Smallest node count for a piecewise-constant subspace, with a certificate.
    Min { subspace: String },
    /// Try every size-m subset of candidate nodes.
    Grid {
        subspace: String,
        /// Comma-separated rationals, or a rule file whose nodes are used.
        #[arg(long, allow_hyphen_values = true)]
        candidates: String,
        #[arg(long)]
        m: usize,
        /// Leave the pair `f,g` out of every system; repeatable.
        #[arg(long = "exclude-pair")]
        exclude_pair: Vec<String>,
        /// Maximum number of rules reported.
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
    /// Shrink a verified rule along null combinations of its moment vectors.
    Reduce { subspace: String, rule: String },
    /// Structural lower bound on the node count of any exact rule.
    Bound {
        subspace: String,
        #[arg(long)]
        witness: String,
        /// Comma-separated function names with disjoint supports.
        #[arg(long)]
        targets: String,
        /// Two function names `u1,u2` for the forced-region refinement.
        #[arg(long)]
        refine: Option<String>,
    },
}

#[derive(Debug)]
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Self {
        Fail { code: 2, message: message.into() }
    }
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<disq_core::Error> for Fail {
    fn from(e: disq_core::Error) -> Self {
        Fail::usage(e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::usage(e.to_string())
    }
}

type Outcome = Result<u8, Fail>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(bits) = cli.global.precision_bits {
        set_start_precision_bits(bits);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Corpus { name, params, allow_outside } => cmd_corpus(g, name, params.as_deref(), *allow_outside),
        Command::Verify { subspace, rule } => {
            let s = load_subspace(subspace)?;
            let r = load_rule(rule)?;
            let rep = verify_rule(&s, &r)?;
            emit(g, &format::verify_json(&s, &rep), || human::verify(&s, &rep))?;
            Ok(if rep.pass { 0 } else { 1 })
        }
        Command::Gram { subspace } => {
            let s = load_subspace(subspace)?;
            let gram = s.gram()?;
            emit(g, &format::gram_json(&s, &gram), || human::gram(&s, &gram))?;
            Ok(0)
        }
        Command::Min { subspace } => {
            let s = load_subspace(subspace)?;
            if let Some(f) = s.basis().iter().find(|f| !f.func.is_piecewise_constant()) {
                return Err(Fail {
                    code: 3,
                    message: format!(
                        "`{}` is not piecewise constant; exhaustive minimality needs piecewise-constant bases \
                         (use `disq grid` to explore candidate nodes instead)",
                        f.name
                    ),
                });
            }
            let opts = MinOptions { mode: g.mode, jobs: g.jobs, max_subsets: g.max_subsets };
            let cert = decide_min(&s, &opts)?;
            emit(g, &format::min_json(&s, &cert), || human::min(&s, &cert))?;
            Ok(0)
        }
        Command::Grid { subspace, candidates, m, exclude_pair, cap } => {
            let s = load_subspace(subspace)?;
            let cands = parse_candidates(candidates)?;
            let excluded = exclude_pair.iter().map(|p| name_pair(&s, p)).collect::<Result<Vec<_>, _>>()?;
            let mut opts = GridOptions::new(g.mode);
            opts.cap = *cap;
            opts.excluded_pairs = excluded.clone();
            opts.jobs = g.jobs;
            opts.max_subsets = g.max_subsets;
            let hits = search_grid(&s, &cands, *m, &opts)?;
            emit(g, &format::grid_json(&s, *m, &hits, &excluded), || human::grid(&s, *m, &hits, &excluded))?;
            Ok(0)
        }
        Command::Reduce { subspace, rule } => {
            let s = load_subspace(subspace)?;
            let r = load_rule(rule)?;
            let rep = caratheodory_reduce(&s, &r, g.mode)?;
            emit(g, &format::reduce_json(&rep), || human::reduce(&rep))?;
            Ok(0)
        }
        Command::Bound { subspace, witness, targets, refine } => {
            let s = load_subspace(subspace)?;
            let w = index_of(&s, witness)?;
            let ts = targets.split(',').map(|t| index_of(&s, t.trim())).collect::<Result<Vec<_>, _>>()?;
            let cert = support_lower_bound(&s, w, &ts)?;
            let refinement = match refine {
                Some(p) => {
                    let (u1, u2) = name_pair(&s, p)?;
                    Some(forced_region_contradiction(&s, &cert, u1, u2)?)
                }
                None => None,
            };
            emit(g, &format::lower_bound_json(&s, &cert, refinement.as_ref()), || {
                human::bound(&s, &cert, refinement.as_ref())
            })?;
            Ok(0)
        }
    }
}

fn cmd_corpus(g: &Global, name: &str, params: Option<&str>, allow_outside: bool) -> Outcome {
    let p = match params {
        None => Example1Params::default(),
        Some(text) => {
            let v = text.split(',').map(|t| parse_rat(t.trim())).collect::<Result<Vec<Rat>, _>>()?;
            let [a, big_a, big_b]: [Rat; 3] =
                v.try_into().map_err(|_| Fail::usage("--params expects three values a,A,B"))?;
            if allow_outside {
                Example1Params::unchecked(a, big_a, big_b)
            } else {
                Example1Params::new(a, big_a, big_b)?
            }
        }
    };
    let space = match name {
        "ex1" => corpus::build_x2(&p),
        "ex2" => corpus::build_x8(),
        other => {
            return Err(Fail::usage(format!(
                "unknown corpus name `{other}` (expected one of {})",
                corpus::SUBSPACE_NAMES.join(", ")
            )))
        }
    };
    let rules: Vec<_> = corpus::golden_rules(&p).into_iter().filter(|r| r.subspace == name).collect();
    if let Some(dir) = &g.output {
        std::fs::create_dir_all(dir)?;
        let mut written = vec![write_file(dir, &format!("{name}.json"), &format::subspace_to_json(&space))?];
        for r in &rules {
            written.push(write_file(dir, &format!("{}.json", r.name), &format::rule_to_json(&r.rule))?);
        }
        for w in written {
            println!("{}", w.display());
        }
        return Ok(0);
    }
    let doc = json!({
        "kind": "corpus",
        "name": name,
        "subspace": serde_json::to_value(format::subspace_doc(&space)).expect("plain data"),
        "rules": rules.iter().map(|r| json!({
            "name": r.name,
            "rule": serde_json::to_value(format::rule_doc(&r.rule)).expect("plain data"),
        })).collect::<Vec<_>>(),
    });
    print!("{}", format::pretty(&doc));
    Ok(0)
}

fn write_file(dir: &Path, file: &str, text: &str) -> Result<PathBuf, Fail> {
    let path = dir.join(file);
    std::fs::write(&path, text)?;
    Ok(path)
}

fn emit(g: &Global, doc: &Value, text: impl FnOnce() -> String) -> Result<(), Fail> {
    let out = match g.format {
        OutputFormat::Json => format::pretty(doc),
        OutputFormat::Human => text(),
    };
    match &g.output {
        Some(path) => std::fs::write(path, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

/// A corpus name or a path to a subspace file.
fn load_subspace(arg: &str) -> Result<Subspace, Fail> {
    if let Some(s) = corpus::subspace(arg) {
        return Ok(s);
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(Fail::usage(format!("`{arg}` is neither a corpus subspace nor a readable file")));
    }
    Ok(format::subspace_from_json(&std::fs::read_to_string(path)?)?)
}

/// A reference rule name or a path to a rule file.
fn load_rule(arg: &str) -> Result<Rule, Fail> {
    if let Some(g) = corpus::golden_rule(arg) {
        return Ok(g.rule);
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(Fail::usage(format!("`{arg}` is neither a reference rule nor a readable file")));
    }
    Ok(format::rule_from_json(&std::fs::read_to_string(path)?)?)
}

fn parse_candidates(arg: &str) -> Result<Vec<Rat>, Fail> {
    if corpus::golden_rule(arg).is_some() || Path::new(arg).is_file() {
        return Ok(load_rule(arg)?.nodes().to_vec());
    }
    Ok(arg.split(',').map(|t| parse_rat(t.trim())).collect::<Result<Vec<_>, _>>()?)
}

fn index_of(s: &Subspace, name: &str) -> Result<usize, Fail> {
    Ok(s.index_of(name)?)
}

fn name_pair(s: &Subspace, text: &str) -> Result<(usize, usize), Fail> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(Fail::usage(format!("expected a pair `f,g`, got `{text}`")));
    };
    let (i, j) = (index_of(s, a)?, index_of(s, b)?);
    Ok((i.min(j), i.max(j)))
}
