//! The `fracture-lab` command line.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracture_lab_core::counting::{
    count_colorful_subs, count_embs, count_homs, count_subs, CountResult,
};
use fracture_lab_core::fracture::{
    apply_fracture, colsub_coefficients, count_odd_fractures, enumerate_fractures, fracture_mobius,
    isomorphic_to, odd_fractures, top_coefficient, Fracture,
};
use fracture_lab_core::gadgets::{
    packing_equivalence, packing_equivalence_sample, verify_identity, GadgetKind, ReductionInstance,
};
use fracture_lab_core::graph::{line_graph, subdivide};
use fracture_lab_core::samples::{
    all_kinds, default_instance, double_broom, graphs_with_edges, instance_on,
};
use fracture_lab_core::transform::{
    colorful_parity_via_uncolored, st_path_count, st_path_parity, BruteForceSubs, SubsParityOracle,
};
use fracture_lab_core::tree::classify_tree;
use fracture_lab_core::Graph;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::formats::{
    graph_to_text, load_colored, load_edge_coloring, load_graph, load_instance, FormatError,
    GraphDoc, InstanceDoc,
};
use crate::verify::{verify_host, verify_random};

pub const THREADS_ENV: &str = "FRACTURE_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "fracture-lab",
    version,
    about = "Subgraph counting modulo 2 with fractured graphs"
)]
pub struct Cli {
    /// Print a JSON report on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (falls back to FRACTURE_LAB_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count homomorphisms, embeddings, subgraphs or colourful subgraphs.
    Count(CountArgs),
    /// Fork, star and C-numbers and the matching-split number of a tree.
    Classify(ClassifyArgs),
    /// Enumerate, apply or expand fractures of a graph.
    Fracture(FractureArgs),
    #[command(subcommand)]
    Reduce(ReduceCommand),
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Quick built-in checks.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Hom,
    Emb,
    Sub,
    Colsub,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub host: PathBuf,
    /// Edge colouring of the host (colsub mode).
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Report only the parity.
    #[arg(long)]
    pub mod2: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub dmax: usize,
    #[arg(long, default_value_t = 3)]
    pub amax: usize,
}

#[derive(Debug, Args)]
pub struct FractureArgs {
    /// The graph `Q`.
    #[arg(long, conflicts_with = "instance")]
    pub graph: Option<PathBuf>,
    /// Use the `q` of an instance (or, with --odd, its base graph).
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// List all fractures.
    #[arg(long)]
    pub enumerate: bool,
    #[arg(long, requires = "enumerate")]
    pub max_blocks: Option<usize>,
    /// Fractured graph of the encoded fracture.
    #[arg(long)]
    pub apply: Option<String>,
    /// Coefficient vector for colourful copies of the target.
    #[arg(long, requires = "target")]
    pub coefficients: bool,
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Odd fractures of the subdivision of a 4-regular graph.
    #[arg(long)]
    pub odd: bool,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Colourful subgraph parity from an uncoloured subgraph-parity oracle.
    ColsubParity {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Parity of s-t-paths of length k from a tree subgraph-parity oracle.
    StPath {
        #[arg(long)]
        host: PathBuf,
        #[arg(short, long)]
        s: usize,
        #[arg(short, long)]
        t: usize,
        #[arg(short, long)]
        k: usize,
        /// Defaults to a path of length k + 2 with two leaves at each end.
        #[arg(long)]
        tree: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    /// Build an instance and print it as JSON.
    Build {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Check the instance identity on a given host or on random hosts.
    Verify {
        #[arg(long, required_unless_present = "instance")]
        kind: Option<String>,
        #[arg(long, conflicts_with = "instance")]
        base: Option<PathBuf>,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["trials", "seed"])]
        host: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare 2-path-packing fractures with odd fractures.
    P2Packing {
        #[arg(long)]
        base: Option<PathBuf>,
        /// Sample this many fractures instead of the exhaustive search.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A usage or input error, reported with exit code 2.
#[derive(Debug)]
struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    value: Value,
    text: String,
    pass: bool,
}

impl Output {
    fn ok(value: Value, text: impl Into<String>) -> Self {
        Output {
            value,
            text: text.into(),
            pass: true,
        }
    }
}

/// Runs the CLI and returns the exit code: 0 on success, 1 when a check
/// fails, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let env = std::env::var(THREADS_ENV).ok();
    let threads = match resolve_threads(cli.threads, env.as_deref()) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let start = std::time::Instant::now();
    let mut notes = Vec::new();
    let result = pool.install(|| dispatch(&cli.command, &mut notes));
    for n in &notes {
        let _ = writeln!(err, "{n}");
    }
    let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(o) => {
            let written = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.value).expect("reports serialise")
                )
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return 2;
            }
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(Failure(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

/// Thread count from the flag, else from the environment value, else 0
/// (one per core).
pub fn resolve_threads(flag: Option<usize>, env: Option<&str>) -> Result<usize, String> {
    match (flag, env) {
        (Some(t), _) => Ok(t),
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| format!("{THREADS_ENV} must be a number, got `{v}`")),
        (None, None) => Ok(0),
    }
}

fn dispatch(cmd: &Command, notes: &mut Vec<String>) -> Result<Output, Failure> {
    match cmd {
        Command::Count(a) => count(a),
        Command::Classify(a) => classify(a),
        Command::Fracture(a) => fracture(a),
        Command::Reduce(r) => reduce(r),
        Command::Gadget(g) => gadget(g, notes),
        Command::Selftest => Ok(selftest()),
    }
}

fn count_json(mode: &str, r: &CountResult, mod2: bool) -> Output {
    let parity = r.parity as u8;
    if mod2 {
        Output::ok(
            json!({"mode": mode, "parity": parity}),
            format!("{parity}\n"),
        )
    } else {
        Output::ok(
            json!({"mode": mode, "exact": r.exact.to_string(), "parity": parity}),
            format!("{}\n", r.exact),
        )
    }
}

fn count(a: &CountArgs) -> Result<Output, Failure> {
    let p = load_graph(&a.pattern)?;
    let h = load_graph(&a.host)?;
    let (name, r) = match a.mode {
        Mode::Hom => ("hom", count_homs(&p, &h, None)?),
        Mode::Emb => ("emb", count_embs(&p, &h, None)?),
        Mode::Sub => ("sub", count_subs(&p, &h)),
        Mode::Colsub => {
            let path = a.coloring.as_ref().ok_or("colsub mode needs --coloring")?;
            let c = load_edge_coloring(path, &h)?;
            ("colsub", count_colorful_subs(&p, &h, &c)?)
        }
    };
    Ok(count_json(name, &r, a.mod2))
}

fn classify(a: &ClassifyArgs) -> Result<Output, Failure> {
    let t = load_graph(&a.tree)?;
    let r = classify_tree(&t, a.dmax, a.amax)?;
    let forks: Vec<Value> = r
        .fork_numbers
        .iter()
        .map(|&(a, b, f)| json!({"a": a, "b": b, "value": f}))
        .collect();
    let stars: Vec<Value> = r
        .star_numbers
        .iter()
        .map(|&(c, s)| json!({"c": c, "value": s}))
        .collect();
    let cnums: Vec<Value> = r
        .c_numbers
        .iter()
        .map(|&(d, c)| json!({"d": d, "value": c}))
        .collect();
    let mut text = String::new();
    for &(a, b, f) in &r.fork_numbers {
        text.push_str(&format!("fork {a} {b}: {f}\n"));
    }
    for &(c, s) in &r.star_numbers {
        text.push_str(&format!("star {c}: {s}\n"));
    }
    for &(d, c) in &r.c_numbers {
        text.push_str(&format!("cnum {d}: {c}\n"));
    }
    text.push_str(&format!("msn: {}\n", r.matching_split_number));
    let value = json!({
        "vertices": t.n(),
        "fork_numbers": forks,
        "star_numbers": stars,
        "c_numbers": cnums,
        "matching_split_number": r.matching_split_number,
        "splitting_set": r.splitting_set,
    });
    Ok(Output::ok(value, text))
}

fn fracture(a: &FractureArgs) -> Result<Output, Failure> {
    let inst = a.instance.as_ref().map(|p| load_instance(p)).transpose()?;
    let q = match (&a.graph, &inst) {
        (Some(p), _) => load_graph(p)?,
        (None, Some(i)) => i.q.clone(),
        (None, None) => return Err("fracture needs --graph or --instance".into()),
    };
    if a.odd {
        // The base graph of a 2-path instance, or the given graph.
        let h = match &inst {
            Some(i) if i.kind == GadgetKind::P2 => i.delta.clone(),
            Some(_) => return Err("--odd needs a p2 instance".into()),
            None => q,
        };
        if !h.is_regular(4) {
            return Err("--odd needs a 4-regular graph".into());
        }
        let (h2, _) = subdivide(&h);
        let list: Vec<String> = odd_fractures(&h).iter().map(|f| f.encode(&h2)).collect();
        let text = if a.enumerate {
            lines(&list)
        } else {
            format!("{}\n", list.len())
        };
        return Ok(Output::ok(
            json!({"count": list.len(), "fractures": list}),
            text,
        ));
    }
    if let Some(code) = &a.apply {
        let rho = Fracture::decode(&q, code)?;
        let f = apply_fracture(&q, &rho)?;
        let origin: Vec<usize> = f.origin.iter().map(|o| o.0).collect();
        let value = json!({"graph": GraphDoc::from_graph(&f.graph), "origin": origin, "edge_map": f.edge_map});
        return Ok(Output::ok(value, graph_to_text(&f.graph)));
    }
    if a.coefficients {
        let target = load_graph(a.target.as_ref().expect("clap requires --target"))?;
        let c = colsub_coefficients(&q, isomorphic_to(target))?;
        let map: serde_json::Map<String, Value> = c
            .entries
            .iter()
            .map(|(k, v)| (k.encode(&q), Value::String(v.to_string())))
            .collect();
        let text: Vec<String> = c
            .entries
            .iter()
            .map(|(k, v)| format!("{} {v}", k.encode(&q)))
            .collect();
        return Ok(Output::ok(json!({"coefficients": map}), lines(&text)));
    }
    if a.enumerate {
        let list: Vec<String> = enumerate_fractures(&q, a.max_blocks)
            .iter()
            .map(|f| f.encode(&q))
            .collect();
        return Ok(Output::ok(
            json!({"count": list.len(), "fractures": list}),
            lines(&list),
        ));
    }
    Err("fracture needs one of --enumerate, --apply, --coefficients, --odd".into())
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("{s}\n")).collect()
}

fn reduce(r: &ReduceCommand) -> Result<Output, Failure> {
    match r {
        ReduceCommand::ColsubParity {
            pattern,
            host,
            coloring,
        } => {
            let p = load_graph(pattern)?;
            let h = load_graph(host)?;
            let c = load_edge_coloring(coloring, &h)?;
            let calls = std::cell::Cell::new(0u64);
            let brute = BruteForceSubs { pattern: p.clone() };
            let oracle = |g: &Graph| {
                calls.set(calls.get() + 1);
                brute.subs_parity(g)
            };
            let bit = colorful_parity_via_uncolored(&p, &h, &c, &oracle)? as u8;
            Ok(Output::ok(
                json!({"parity": bit, "oracle_calls": calls.get()}),
                format!("{bit}\n"),
            ))
        }
        ReduceCommand::StPath {
            host,
            s,
            t,
            k,
            tree,
        } => {
            let h = load_graph(host)?;
            let tr = match tree {
                Some(p) => load_graph(p)?,
                None => double_broom(k + 2, 2),
            };
            let oracle = BruteForceSubs {
                pattern: tr.clone(),
            };
            let bit = st_path_parity(&h, *s, *t, *k, &tr, None, &oracle)? as u8;
            let exact = st_path_count(&h, *s, *t, *k, &tr, None)?;
            let value = json!({"parity": bit, "count": exact.to_string()});
            Ok(Output::ok(value, format!("{bit}\n")))
        }
    }
}

fn kind(name: &str) -> Result<GadgetKind, Failure> {
    GadgetKind::from_name(name).ok_or_else(|| FormatError::UnknownKind(name.to_string()).into())
}

fn build(name: &str, base: &Option<PathBuf>) -> Result<ReductionInstance, Failure> {
    let k = kind(name)?;
    Ok(match base {
        Some(p) => instance_on(k, &load_graph(p)?)?,
        None => default_instance(k)?,
    })
}

fn gadget(g: &GadgetCommand, notes: &mut Vec<String>) -> Result<Output, Failure> {
    match g {
        GadgetCommand::Build { kind, base } => {
            let i = build(kind, base)?;
            let doc = InstanceDoc::from_instance(&i);
            let value = serde_json::to_value(&doc)?;
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            Ok(Output::ok(value, text))
        }
        GadgetCommand::Verify {
            kind,
            base,
            instance,
            host,
            trials,
            seed,
        } => {
            let inst = match (instance, kind) {
                (Some(p), _) => load_instance(p)?,
                (None, Some(k)) => build(k, base)?,
                (None, None) => return Err("gadget verify needs --kind or --instance".into()),
            };
            let report = match host {
                Some(p) => verify_host(&inst, &load_colored(p)?)?,
                None => verify_random(&inst, *trials, *seed)?,
            };
            let failed = report.failures().count();
            for f in report.failures() {
                notes.push(format!(
                    "trial {} failed: lhs {} rhs {}",
                    f.index, f.lhs, f.rhs
                ));
            }
            let text = format!(
                "{} {}: {} of {} trials equal\n",
                report.instance.kind,
                if report.pass { "pass" } else { "FAIL" },
                report.results.len() - failed,
                report.results.len()
            );
            let pass = report.pass;
            Ok(Output {
                value: serde_json::to_value(&report)?,
                text,
                pass,
            })
        }
        GadgetCommand::P2Packing { base, sample, seed } => {
            let h = match base {
                Some(p) => load_graph(p)?,
                None => Graph::complete(5),
            };
            match sample {
                Some(n) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    let r = packing_equivalence_sample(&h, *n, &mut rng)?;
                    let pass = r.mismatches == 0;
                    let value = json!({
                        "mode": "sample", "samples": r.samples, "seed": seed, "packing": r.packing,
                        "odd": r.odd, "mismatches": r.mismatches, "pass": pass,
                    });
                    let text = format!(
                        "{} samples, {} odd, {} mismatches\n",
                        r.samples, r.odd, r.mismatches
                    );
                    Ok(Output { value, text, pass })
                }
                None => {
                    let r = packing_equivalence(&h)?;
                    let pass = r.equivalent && r.covered == r.space;
                    let value = json!({
                        "mode": "exhaustive", "odd": r.odd.to_string(), "packing": r.packing,
                        "covered": r.covered.to_string(), "space": r.space.to_string(), "pass": pass,
                    });
                    let text = format!(
                        "odd {} packing {} covered {} of {}\n",
                        r.odd, r.packing, r.covered, r.space
                    );
                    Ok(Output { value, text, pass })
                }
            }
        }
    }
}

fn selftest() -> Output {
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let k3 = Graph::complete(3);
    checks.push((
        "triangles in K4",
        count_subs(&k3, &Graph::complete(4)).exact == 4u32.into(),
    ));
    checks.push((
        "odd fractures of K5",
        count_odd_fractures(&Graph::complete(5)) == 243,
    ));
    let lk33 = line_graph(&Graph::complete_bipartite(3, 3)).expect("K3,3 has edges");
    checks.push((
        "triangle coefficient",
        top_coefficient(&lk33, &k3.copies(6)) == (-1).into(),
    ));
    let mobius = (1..=3).all(|m| {
        graphs_with_edges(m).iter().all(|q| {
            let all = enumerate_fractures(q, None);
            let top = Fracture::top(q);
            let s = all.iter().fold(BigInt::from(0), |s, r| {
                s + fracture_mobius(r, &top).expect("below top")
            });
            (s == BigInt::from(0)) == (all.len() > 1)
        })
    });
    checks.push(("mobius sums", mobius));
    let witness = all_kinds().into_iter().all(|k| {
        default_instance(k)
            .and_then(|i| verify_identity(&i, &i.witness_host()))
            .map(|c| c.equal)
            .unwrap_or(false)
    });
    checks.push(("witness identities", witness));
    let pass = checks.iter().all(|c| c.1);
    let text: String = checks
        .iter()
        .map(|(n, ok)| format!("{} {n}\n", if *ok { "ok  " } else { "FAIL" }))
        .collect();
    let list: Vec<Value> = checks
        .iter()
        .map(|(n, ok)| json!({"name": n, "pass": ok}))
        .collect();
    Output {
        value: json!({"checks": list, "pass": pass}),
        text,
        pass,
    }
}
