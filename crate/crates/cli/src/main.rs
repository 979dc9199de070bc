//! `dhdecomp`: decompose, verify, decide, generate and audit plane graphs.
//!
//! Exit codes: 0 success, 1 failed check or infeasible, 2 usage or input
//! error, 3 resource budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use dhdecomp::decomp26::{check_26, decompose26};
use dhdecomp::decomp32::{check_32, choose_z, context32, decompose32};
use dhdecomp::decomp41::{decompose41, discharge_audit};
use dhdecomp::gen::{generate, Family, GenSpec};
use dhdecomp::io::{emit_dh, emit_near, parse_dh, parse_rot, RotFile};
use dhdecomp::oracle::{exact_decide, OracleOptions};
use dhdecomp::plane::{BoundaryContext, NearTriangulation};
use dhdecomp::verify::check_dh;
use dhdecomp::{ConditionReport, DecompError, DecompPair, OracleError, Vertex};

#[derive(Parser)]
#[command(name = "dhdecomp", version, about = "(d,h)-decompositions of plane graphs")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print only the result record.
    #[arg(long, global = true)]
    quiet: bool,
    /// Print the result record as one JSON object.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build a decomposition and check it before writing.
    Decompose(DecomposeArgs),
    /// Check a decomposition file against a graph.
    Verify(VerifyArgs),
    /// Decide (d,h)-decomposability exactly.
    Oracle(OracleArgs),
    /// Generate an instance.
    Gen(GenArgs),
    /// Print the discharging charge table and the located configuration.
    Audit(AuditArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    /// One of 2,6  3,2  4,1.
    #[arg(long)]
    profile: String,
    /// Root vertices x,y[,z[,z']].
    #[arg(long)]
    root: Option<String>,
    input: PathBuf,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// d,h to check; defaults to the header of the decomposition file.
    #[arg(long)]
    profile: Option<String>,
    /// Root vertices; defaults to the `# root` line of the decomposition file.
    #[arg(long)]
    root: Option<String>,
    graph: PathBuf,
    decomposition: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    h: usize,
    input: PathBuf,
    /// Turn every pruning off.
    #[arg(long)]
    exhaustive: bool,
    /// Largest edge count accepted.
    #[arg(long)]
    budget: Option<usize>,
    /// Largest number of search nodes.
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Where to write the witness when feasible.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// stacked, solid, double-wheel or stellate.
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Solid name for `solid`, or the base solid for `stellate`.
    #[arg(long)]
    name: Option<String>,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    input: PathBuf,
}

/// The single result record of a run: ordered fields, a verdict, and an
/// optional free-text body shown in text mode.
#[derive(Serialize)]
struct Report {
    verb: &'static str,
    #[serde(flatten)]
    fields: serde_json::Map<String, Value>,
    verdict: &'static str,
    exit: u8,
    #[serde(skip)]
    body: Option<String>,
}

impl Report {
    fn new(verb: &'static str) -> Self {
        Report {
            verb,
            fields: serde_json::Map::new(),
            verdict: "ok",
            exit: 0,
            body: None,
        }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.insert(key.to_string(), v.into());
    }

    fn verdict(&mut self, verdict: &'static str, exit: u8) {
        self.verdict = verdict;
        self.exit = exit;
    }

    fn text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("verb: {}\n", self.verb));
        for (k, v) in &self.fields {
            let shown = match v {
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {shown}\n"));
        }
        s.push_str(&format!("verdict: {}\nexit: {}\n", self.verdict, self.exit));
        s
    }
}

struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn usage(err: anyhow::Error) -> Failure {
    Failure { code: 2, err }
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        usage(err)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let verb = match &cli.verb {
        Verb::Decompose(_) => "decompose",
        Verb::Verify(_) => "verify",
        Verb::Oracle(_) => "oracle",
        Verb::Gen(_) => "gen",
        Verb::Audit(_) => "audit",
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            let mut r = Report::new(verb);
            r.set("error", format!("{:#}", f.err));
            r.verdict("error", f.code);
            r
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        if !cli.quiet {
            if let Some(b) = &report.body {
                print!("{b}");
            }
        }
        print!("{}", report.text());
    }
    ExitCode::from(report.exit)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.verb {
        Verb::Decompose(a) => decompose(a),
        Verb::Verify(a) => verify(a),
        Verb::Oracle(a) => oracle(a),
        Verb::Gen(a) => gen(a, cli.seed),
        Verb::Audit(a) => audit(a),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_rot(path: &Path) -> anyhow::Result<RotFile> {
    parse_rot(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn near(f: &RotFile) -> anyhow::Result<NearTriangulation> {
    f.near_triangulation()
        .map_err(|e| anyhow!("input is not a near triangulation: {e}"))
}

fn parse_pair(s: &str, what: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("{what} must look like d,h"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn parse_root(s: &str) -> anyhow::Result<Vec<Vertex>> {
    let r = s
        .split(',')
        .map(|t| t.trim().parse::<Vertex>().map_err(|_| anyhow!("bad root vertex {t:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if !(2..=4).contains(&r.len()) {
        bail!("root must list 2 to 4 vertices");
    }
    Ok(r)
}

/// Fully resolved root for a profile: (x, y, z, z') with the boundary
/// membership checked.
fn resolve_root(
    t: &NearTriangulation,
    profile: (usize, usize),
    given: Option<Vec<Vertex>>,
) -> anyhow::Result<(Vec<Vertex>, BoundaryContext)> {
    let b = t.boundary();
    let r = given.unwrap_or_else(|| vec![b[0], b[1]]);
    for v in &r {
        if !t.is_boundary(*v) {
            bail!("root vertex {v} is not on the outer boundary");
        }
    }
    let (x, y) = (r[0], r[1]);
    match profile {
        (2, 6) => {
            if r.len() > 3 {
                bail!("profile 2,6 takes a root x,y,z");
            }
            let z = match r.get(2) {
                Some(&z) => z,
                None => *b
                    .iter()
                    .find(|&&w| w != x && w != y)
                    .ok_or_else(|| anyhow!("boundary has no third vertex"))?,
            };
            let ctx = BoundaryContext::new(t, x, y, z)?;
            Ok((vec![x, y, z], ctx))
        }
        (3, 2) => {
            let z = match r.get(2) {
                Some(&z) => z,
                None => choose_z(t, x, y)?,
            };
            let ctx = context32(t, x, y, z, r.get(3).copied())?;
            let root = if ctx.z_touches_root() {
                vec![x, y, z]
            } else {
                vec![x, y, z, ctx.z_prime]
            };
            Ok((root, ctx))
        }
        _ => unreachable!("only rooted profiles"),
    }
}

fn put_report(r: &mut Report, c: &ConditionReport) {
    for v in &c.verdicts {
        r.set(&format!("condition {}", v.condition), if v.passed { "pass" } else { "fail" });
    }
}

fn put_pair(r: &mut Report, p: &DecompPair) {
    r.set("arcs", p.arcs.len());
    r.set("hedges", p.hedges.len());
}

fn decompose(a: &DecomposeArgs) -> Result<Report, Failure> {
    let profile = parse_pair(&a.profile, "profile")?;
    let f = load_rot(&a.input)?;
    let mut r = Report::new("decompose");
    r.set("profile", format!("{},{}", profile.0, profile.1));
    r.set("vertices", f.graph.n());
    r.set("edges", f.graph.num_edges());
    let given = a.root.as_deref().map(parse_root).transpose()?;

    let built: Result<(DecompPair, Option<Vec<Vertex>>, ConditionReport), DecompError> = match profile
    {
        (4, 1) => {
            if given.is_some() {
                return Err(usage(anyhow!("profile 4,1 takes no root")));
            }
            decompose41(&f.graph).map(|out| {
                let c = check_dh(&f.graph, &out.pair, 4, 1);
                (out.pair, None, c)
            })
        }
        (2, 6) | (3, 2) => {
            let t = near(&f)?;
            let (root, ctx) = resolve_root(&t, profile, given)?;
            r.set("root", root_string(&root));
            if profile == (2, 6) {
                decompose26(&t, root[0], root[1], root[2]).map(|p| {
                    let c = check_26(&t, &ctx, &p);
                    (p, Some(root), c)
                })
            } else {
                decompose32(&t, root[0], root[1], root[2], root.get(3).copied()).map(|p| {
                    let c = check_32(&t, &ctx, &p);
                    (p, Some(root), c)
                })
            }
        }
        _ => return Err(usage(anyhow!("profile must be 2,6, 3,2 or 4,1"))),
    };
    let (pair, root, check) = match built {
        Ok(b) => b,
        Err(DecompError::Precondition(m)) => return Err(usage(anyhow!(m))),
        Err(DecompError::Graph(e)) => return Err(usage(e.into())),
        Err(e) => {
            r.set("error", e.to_string());
            r.verdict("fail", 1);
            return Ok(r);
        }
    };
    put_pair(&mut r, &pair);
    put_report(&mut r, &check);
    if !check.passed() {
        r.body = Some(check.to_string());
        r.verdict("fail", 1);
        return Ok(r);
    }
    let text = emit_dh(&pair, profile.0, profile.1, root.as_deref());
    match &a.output {
        Some(path) => {
            write(path, &text)?;
            r.set("output", path.display().to_string());
        }
        None => r.body = Some(text),
    }
    r.verdict("pass", 0);
    Ok(r)
}

fn root_string(root: &[Vertex]) -> String {
    root.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let f = load_rot(&a.graph)?;
    let dh = parse_dh(&read(&a.decomposition)?).map_err(|e| anyhow!("{}: {e}", a.decomposition.display()))?;
    let profile = match &a.profile {
        Some(p) => parse_pair(p, "profile")?,
        None => (dh.d, dh.h),
    };
    let mut r = Report::new("verify");
    r.set("profile", format!("{},{}", profile.0, profile.1));
    let given = match &a.root {
        Some(s) => Some(parse_root(s)?),
        None => dh.root.clone(),
    };
    let check = match profile {
        (2, 6) | (3, 2) => {
            let t = near(&f)?;
            let (root, ctx) = resolve_root(&t, profile, given)?;
            r.set("root", root_string(&root));
            if profile == (2, 6) {
                check_26(&t, &ctx, &dh.pair)
            } else {
                check_32(&t, &ctx, &dh.pair)
            }
        }
        (d, h) => check_dh(&f.graph, &dh.pair, d, h),
    };
    put_pair(&mut r, &dh.pair);
    put_report(&mut r, &check);
    if check.passed() {
        r.verdict("pass", 0);
    } else {
        r.body = Some(check.to_string());
        r.verdict("fail", 1);
    }
    Ok(r)
}

fn oracle(a: &OracleArgs) -> Result<Report, Failure> {
    let f = load_rot(&a.input)?;
    let mut opts = if a.exhaustive {
        OracleOptions::exhaustive()
    } else {
        OracleOptions::default()
    };
    if let Some(b) = a.budget {
        opts.max_edges = b;
    }
    if let Some(m) = a.max_nodes {
        opts.max_nodes = m;
    }
    opts.workers = a.workers.max(1);
    let mut r = Report::new("oracle");
    r.set("d", a.d);
    r.set("h", a.h);
    r.set("mode", if a.exhaustive { "exhaustive" } else { "pruned" });
    r.set("vertices", f.graph.n());
    r.set("edges", f.graph.num_edges());
    let start = Instant::now();
    let result = exact_decide(&f.graph, a.d, a.h, &opts);
    let wall = start.elapsed();
    match result {
        Err(e @ (OracleError::Budget { .. } | OracleError::TooLarge { .. })) => {
            return Err(Failure {
                code: 3,
                err: e.into(),
            })
        }
        Ok(dec) => {
            r.set("nodes", dec.nodes);
            r.set("wall_ms", wall.as_millis() as u64);
            match &dec.witness {
                Some(w) => {
                    let text = emit_dh(w, a.d, a.h, None);
                    match &a.output {
                        Some(path) => {
                            write(path, &text)?;
                            r.set("witness", path.display().to_string());
                        }
                        None => r.body = Some(text),
                    }
                    r.verdict("feasible", 0);
                }
                None => r.verdict("infeasible", 1),
            }
        }
    }
    Ok(r)
}

fn gen(a: &GenArgs, seed: u64) -> Result<Report, Failure> {
    let spec = GenSpec {
        family: a.family,
        n: a.n,
        seed,
        name: a.name.clone(),
    };
    let t = generate(&spec).map_err(|e| anyhow!("cannot generate: {e}"))?;
    let text = emit_near(&t);
    let mut r = Report::new("gen");
    r.set("family", format!("{:?}", a.family).to_lowercase());
    r.set("n", a.n);
    r.set("seed", seed);
    r.set("vertices", t.n());
    r.set("edges", t.graph().num_edges());
    match &a.output {
        Some(path) => {
            write(path, &text)?;
            r.set("output", path.display().to_string());
        }
        None => r.body = Some(text),
    }
    Ok(r)
}

fn audit(a: &AuditArgs) -> Result<Report, Failure> {
    let f = load_rot(&a.input)?;
    let table = discharge_audit(&f.graph).map_err(|e| anyhow!("{e}"))?;
    let mut r = Report::new("audit");
    r.set("vertices", f.graph.n());
    r.set("initial_total", table.initial_total.to_string());
    r.set("final_total", table.final_total.to_string());
    r.set("conserved", table.conserved());
    match &table.located {
        Some(c) => r.set("config", json!({"kind": format!("{:?}", c.kind), "v": c.v, "u": c.u})),
        None => r.set("config", Value::Null),
    }
    r.body = Some(format!("{table}\n"));
    if table.conserved() && !table.impossible() {
        r.verdict("pass", 0);
    } else {
        r.verdict("fail", 1);
    }
    Ok(r)
}
