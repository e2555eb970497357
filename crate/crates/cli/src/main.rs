use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lcast_core::gen::{generate, Fixture, GenSpec, Model, WeightSpec};
use lcast_core::gnp::{self, GnpConfig, Regime};
use lcast_core::harness::{self, Alg, BenchPlan, EdgeSelection, Outcome, TrialReport, SCHEMA_VERSION};
use lcast_core::mst::{self, MstConfig};
use lcast_core::spanning::{self, LcaConfig};
use lcast_core::{AccessModel, Edge, Graph, Probe, ProbeOracle, ProbeStats, Vertex, Weight};

#[derive(Parser)]
#[command(name = "lcast", version, about = "Local computation algorithms for sparse spanning graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgArg {
    Expander,
    Gnp,
    Mst,
}

impl From<AlgArg> for Alg {
    fn from(a: AlgArg) -> Alg {
        match a {
            AlgArg::Expander => Alg::Expander,
            AlgArg::Gnp => Alg::Gnp,
            AlgArg::Mst => Alg::Mst,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Regular,
    Er,
    Path,
    Cycle,
    Fixture,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AccessArg {
    Adj,
    General,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph in the text format.
    Gen(GenArgs),
    /// Answer one edge-membership query.
    Query(QueryArgs),
    /// Print the edge a vertex proposes in the sparse G(n,p) subgraph.
    Propose(ProposeArgs),
    /// Query every edge and check the answers form a spanning tree (or the MST).
    Verify(VerifyArgs),
    /// Sample queries over a grid of sizes and fit the log-log probe slope.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    d: usize,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Maximum weight; edges get uniform weights in 1..=W when W > 1.
    #[arg(long = "W", default_value_t = 1)]
    w: Weight,
    /// Fixture name for `--model fixture`.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlgOpts {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    alg: AlgArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Conductance used to size the walks (expander).
    #[arg(long, conflicts_with = "tau")]
    phi: Option<f64>,
    /// Walk length override (expander).
    #[arg(long)]
    tau: Option<usize>,
    /// Density exponent (gnp).
    #[arg(long)]
    delta: Option<f64>,
    /// Probe model (gnp); defaults to the one the regime needs.
    #[arg(long, value_enum)]
    model: Option<AccessArg>,
    /// Maximum weight (mst); defaults to the graph header.
    #[arg(long = "W")]
    w: Option<Weight>,
    /// Degree bound; defaults to the maximum degree.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    opts: AlgOpts,
    #[arg(long, value_parser = parse_edge)]
    edge: (Vertex, Vertex),
}

#[derive(Args)]
struct ProposeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    vertex: Vertex,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    model: Option<AccessArg>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    opts: AlgOpts,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    alg: AlgArg,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    d: usize,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    #[arg(long = "W", default_value_t = 2)]
    w: Weight,
    /// Number of seeds per size, starting at `--seed`.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edges sampled per trial.
    #[arg(long, default_value_t = 200)]
    queries: usize,
    /// Minimum success rate per row for a zero exit code.
    #[arg(long, default_value_t = 0.9)]
    min_success: f64,
    /// Minimum R² of the slope fit for a zero exit code.
    #[arg(long, default_value_t = 0.9)]
    min_r2: f64,
}

fn parse_edge(s: &str) -> Result<(Vertex, Vertex), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected U,V, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<Vertex>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

#[derive(Serialize)]
struct Probes {
    deg: u64,
    nbr: u64,
    exists: u64,
    total: u64,
}

impl From<ProbeStats> for Probes {
    fn from(s: ProbeStats) -> Self {
        Probes { deg: s.deg, nbr: s.nbr, exists: s.exists, total: s.total() }
    }
}

#[derive(Serialize)]
struct QueryOut {
    schema: u32,
    alg: Alg,
    edge: (Vertex, Vertex),
    answer: bool,
    probes: Probes,
    #[serde(skip_serializing_if = "Option::is_none")]
    root_probes: Option<Probes>,
}

#[derive(Serialize)]
struct QueryRow {
    alg: Alg,
    u: Vertex,
    v: Vertex,
    answer: bool,
    deg: u64,
    nbr: u64,
    exists: u64,
    total: u64,
    root_total: Option<u64>,
}

#[derive(Serialize)]
struct ProposeOut {
    schema: u32,
    vertex: Vertex,
    edge: Option<Edge>,
    provenance: Option<gnp::Provenance>,
    escalations: u32,
    probes: Probes,
}

#[derive(Serialize)]
struct ProposeRow {
    vertex: Vertex,
    edge_u: Option<Vertex>,
    edge_v: Option<Vertex>,
    provenance: String,
    escalations: u32,
    total: u64,
}

#[derive(Serialize)]
struct VerifyOut {
    schema: u32,
    alg: Alg,
    n: usize,
    m: usize,
    tree_ok: bool,
    yes_edges: usize,
    weight: Option<u64>,
    kruskal_weight: Option<u64>,
    max_probes: u64,
    mean_probes: f64,
    weight_law_violations: Option<usize>,
    failures: Vec<String>,
    #[serde(skip_serializing)]
    passed: bool,
}

#[derive(Serialize)]
struct VerifyRow {
    alg: Alg,
    n: usize,
    m: usize,
    tree_ok: bool,
    yes_edges: usize,
    weight: Option<u64>,
    kruskal_weight: Option<u64>,
    max_probes: u64,
    mean_probes: f64,
    weight_law_violations: Option<usize>,
    failures: String,
}

#[derive(Serialize)]
struct FitRow {
    alg: Alg,
    slope: f64,
    intercept: f64,
    r2: f64,
}

fn load(path: &PathBuf) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::parse(&text)?)
}

fn header(out: &mut impl Write, kind: &str) -> io::Result<()> {
    writeln!(out, "# lcast-{kind} schema={SCHEMA_VERSION}")
}

fn write_csv<T: Serialize>(kind: &str, rows: &[T]) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    header(&mut lock, kind)?;
    let mut w = csv::Writer::from_writer(lock);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    serde_json::to_writer_pretty(&mut lock, value)?;
    writeln!(lock)?;
    Ok(())
}

fn gen(args: GenArgs) -> anyhow::Result<bool> {
    let model = match args.model {
        ModelArg::Regular => Model::Regular { n: args.n, d: args.d },
        ModelArg::Er => Model::ErdosRenyi { n: args.n, delta: args.delta },
        ModelArg::Path => Model::PathOrCycle { n: args.n, cycle: false },
        ModelArg::Cycle => Model::PathOrCycle { n: args.n, cycle: true },
        ModelArg::Fixture => {
            let Some(name) = args.fixture.as_deref() else {
                bail!("--model fixture needs --fixture, one of {}", Fixture::names().join(", "));
            };
            Model::Fixture(Fixture::from_name(name, args.n, args.d)?)
        }
    };
    let weights = if args.w > 1 { WeightSpec::Uniform { max: args.w } } else { WeightSpec::Unweighted };
    let g = generate(&GenSpec { model, weights, seed: args.seed })?;
    match args.out {
        Some(p) => fs::write(&p, g.to_text()).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().write_all(g.to_text().as_bytes())?,
    }
    Ok(true)
}

fn expander_cfg(g: &Graph, o: &AlgOpts) -> LcaConfig {
    let d = o.d.unwrap_or_else(|| g.max_degree().max(1));
    match (o.phi, o.tau) {
        (_, Some(t)) => LcaConfig::new(g.n(), d, o.seed).with_tau(t),
        (Some(phi), None) => LcaConfig::new(g.n(), d, o.seed).with_phi(phi),
        (None, None) => {
            let mut cfg = harness::expander_config(g, o.seed);
            cfg.d = d;
            cfg
        }
    }
}

fn gnp_cfg(g: &Graph, delta: Option<f64>, seed: u64) -> anyhow::Result<GnpConfig> {
    let Some(delta) = delta else { bail!("--alg gnp needs --delta") };
    let cfg = GnpConfig::new(g.n(), delta, seed);
    cfg.validate()?;
    Ok(cfg)
}

fn access(arg: Option<AccessArg>, cfg: &GnpConfig) -> AccessModel {
    match arg {
        Some(AccessArg::Adj) => AccessModel::AdjacencyList,
        Some(AccessArg::General) => AccessModel::GeneralGraph,
        None if cfg.regime() == Regime::High => AccessModel::GeneralGraph,
        None => AccessModel::AdjacencyList,
    }
}

fn mst_cfg(g: &Graph, o: &AlgOpts) -> anyhow::Result<MstConfig> {
    let w = o.w.unwrap_or_else(|| g.max_weight());
    let d = o.d.unwrap_or_else(|| g.max_degree().max(2 * w as usize));
    let cfg = MstConfig::new(g.n(), d, w, o.seed);
    cfg.validate()?;
    Ok(cfg)
}

fn query(args: QueryArgs, format: Format) -> anyhow::Result<bool> {
    let o = &args.opts;
    let g = load(&o.graph)?;
    let (u, v) = args.edge;
    let (answer, probes, root) = match o.alg {
        AlgArg::Expander => {
            let cfg = expander_cfg(&g, o);
            let mut oracle = ProbeOracle::adjacency(&g);
            let a = spanning::in_tree(&mut oracle, &cfg, u, v)?;
            (a, oracle.stats(), None)
        }
        AlgArg::Gnp => {
            let cfg = gnp_cfg(&g, o.delta, o.seed)?;
            let mut oracle = ProbeOracle::new(&g, access(o.model, &cfg));
            let a = gnp::edge_membership_gnp(&mut oracle, &cfg, u, v)?;
            (a, oracle.stats(), None)
        }
        AlgArg::Mst => {
            let cfg = mst_cfg(&g, o)?;
            let mut oracle = ProbeOracle::adjacency(&g);
            let a = mst::query_in_mst(&mut oracle, &cfg, u, v)?;
            (a.answer, a.probes, Some(a.root_probes))
        }
    };
    let alg = Alg::from(o.alg);
    match format {
        Format::Json => write_json(&QueryOut {
            schema: SCHEMA_VERSION,
            alg,
            edge: (u, v),
            answer,
            probes: probes.into(),
            root_probes: root.map(Probes::from),
        })?,
        Format::Csv => write_csv(
            "query",
            &[QueryRow {
                alg,
                u,
                v,
                answer,
                deg: probes.deg,
                nbr: probes.nbr,
                exists: probes.exists,
                total: probes.total(),
                root_total: root.map(|r| r.total()),
            }],
        )?,
    }
    Ok(true)
}

fn propose(args: ProposeArgs, format: Format) -> anyhow::Result<bool> {
    let g = load(&args.graph)?;
    let cfg = gnp_cfg(&g, Some(args.delta), args.seed)?;
    let mut oracle = ProbeOracle::new(&g, access(args.model, &cfg));
    let p = gnp::propose(&mut oracle, &cfg, args.vertex)?;
    let probes = oracle.stats();
    match format {
        Format::Json => write_json(&ProposeOut {
            schema: SCHEMA_VERSION,
            vertex: p.vertex,
            edge: p.edge,
            provenance: p.provenance,
            escalations: p.escalations,
            probes: probes.into(),
        })?,
        Format::Csv => write_csv(
            "propose",
            &[ProposeRow {
                vertex: p.vertex,
                edge_u: p.edge.map(|e| e.lo),
                edge_v: p.edge.map(|e| e.hi),
                provenance: p.provenance.map(|x| format!("{x:?}")).unwrap_or_default(),
                escalations: p.escalations,
                total: probes.total(),
            }],
        )?,
    }
    Ok(true)
}

fn summarize(g: &Graph, report: &TrialReport, kruskal: Option<u64>) -> VerifyOut {
    let mut failures = Vec::new();
    let (tree_ok, weight) = match &report.outcome {
        Outcome::TreeOk => (true, None),
        Outcome::MstOk { weight } => (true, Some(*weight)),
        Outcome::Failed { kind } => {
            failures.push(kind.clone());
            (false, None)
        }
    };
    if let Some(v) = report.weight_law_violations.filter(|&v| v > 0) {
        failures.push(format!("{v} proposals violate the weight law"));
    }
    VerifyOut {
        schema: SCHEMA_VERSION,
        alg: report.alg,
        n: g.n(),
        m: g.m(),
        tree_ok,
        yes_edges: report.yes_edges,
        weight,
        kruskal_weight: kruskal,
        max_probes: report.probes.max,
        mean_probes: report.probes.mean,
        weight_law_violations: report.weight_law_violations,
        passed: failures.is_empty(),
        failures,
    }
}

fn verify(args: VerifyArgs, format: Format) -> anyhow::Result<bool> {
    let o = &args.opts;
    let g = load(&o.graph)?;
    let name = o.graph.display().to_string();
    let (report, kruskal) = match o.alg {
        AlgArg::Expander => (harness::sweep_expander(&g, &expander_cfg(&g, o), EdgeSelection::All, &name), None),
        AlgArg::Gnp => {
            let cfg = gnp_cfg(&g, o.delta, o.seed)?;
            (harness::sweep_gnp(&g, &cfg, EdgeSelection::All, &name), None)
        }
        AlgArg::Mst => {
            let cfg = mst_cfg(&g, o)?;
            let best = mst::kruskal_oracle(&g).ok().map(|(_, w)| w);
            (harness::sweep_mst(&g, &cfg, EdgeSelection::All, &name), best)
        }
    };
    let out = summarize(&g, &report, kruskal);
    match format {
        Format::Json => write_json(&out)?,
        Format::Csv => write_csv(
            "verify",
            &[VerifyRow {
                alg: out.alg,
                n: out.n,
                m: out.m,
                tree_ok: out.tree_ok,
                yes_edges: out.yes_edges,
                weight: out.weight,
                kruskal_weight: out.kruskal_weight,
                max_probes: out.max_probes,
                mean_probes: out.mean_probes,
                weight_law_violations: out.weight_law_violations,
                failures: out.failures.join("; "),
            }],
        )?,
    }
    Ok(out.passed)
}

fn bench(args: BenchArgs, format: Format) -> anyhow::Result<bool> {
    let plan = BenchPlan {
        alg: args.alg.into(),
        ns: args.n,
        d: args.d,
        delta: args.delta,
        w: args.w,
        seeds: (args.seed..args.seed + args.seeds).collect(),
        queries: args.queries,
    };
    let report = harness::bench(&plan)?;
    let rows_ok = report.rows.iter().all(|r| r.success_rate >= args.min_success);
    let fit_ok = report.rows.len() < 2 || report.fit.is_some_and(|f| f.r2 >= args.min_r2);
    match format {
        Format::Json => write_json(&report)?,
        Format::Csv => {
            write_csv("bench", &report.rows)?;
            if let Some(f) = report.fit {
                let fit = FitRow { alg: plan.alg, slope: f.slope, intercept: f.intercept, r2: f.r2 };
                write_csv("bench-fit", &[fit])?;
            }
        }
    }
    Ok(rows_ok && fit_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Query(a) => query(a, cli.format),
        Cmd::Propose(a) => propose(a, cli.format),
        Cmd::Verify(a) => verify(a, cli.format),
        Cmd::Bench(a) => bench(a, cli.format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
