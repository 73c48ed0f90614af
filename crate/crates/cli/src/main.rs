//! `twoweight`: rings, geometries, codes, constructions and graphs from the
//! command line.

mod manifest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twoweight::code::{classify, span, two_weight_profile, weight_distribution, GeneratorMatrix, LinearCode};
use twoweight::constructions::{construct_p61, construct_p62, construct_segments, ConstructionReport, Family};
use twoweight::geometry::{neighbour_classes, Geometry};
use twoweight::ring::encoding::encode;
use twoweight::ring::{build_ring_with_cap, generating_character, is_frobenius, radical, FiniteRing, RingSpec};
use twoweight::srg::{
    export_graph, srg_check, theorem_params, CayleyGraph, CheckMode, ExportFormat, SrgParams, SrgVerdict,
    FULL_CHECK_LIMIT,
};
use twoweight::tables::{format_rational, parse_rational, render_tsv, table, TableName};
use twoweight::vector::DEFAULT_BUDGET;
use twoweight::weight::{normalized_weight, positive_definiteness};
use twoweight::Rational;

use manifest::RunManifest;

#[derive(Parser, Debug)]
#[command(name = "twoweight", version, about = "Two-weight codes over finite Frobenius rings")]
struct Cli {
    /// Worker threads for enumeration and graph checks.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write a JSON run manifest with input and output digests.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Largest ring order accepted.
    #[arg(long, global = true, default_value_t = twoweight::ring::DEFAULT_ORDER_CAP)]
    order_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ring structure and homogeneous weight.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Points, hyperplanes and neighbour classes.
    #[command(subcommand)]
    Geometry(GeometryCommand),
    /// Analysis of the code spanned by a generator matrix.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Build a generator matrix from one of the construction families.
    Construct(ConstructArgs),
    /// Cayley graph of a two-weight code.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Reproduce a parameter table as TSV.
    Tables(TablesArgs),
}

#[derive(Subcommand, Debug)]
enum RingCommand {
    Info {
        /// Ring, e.g. `Z/4`, `F/9`, `F/4[u;frob^1]`, `GR(4,2)`, `F/2xF/3`, `T:F2XY`.
        spec: String,
    },
}

#[derive(Subcommand, Debug)]
enum GeometryCommand {
    Dump {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    Analyze {
        #[arg(long)]
        matrix: PathBuf,
        /// Treat weight 0 as a weight value for improper codes.
        #[arg(long)]
        force_improper: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    /// Chain ring of length 2 (p61, segments).
    #[arg(long)]
    ring: Option<String>,
    /// Residue field order (p62).
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Frobenius exponent of the skew ring (p62).
    #[arg(long, default_value_t = 0)]
    sigma: u32,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum GraphCommand {
    Build {
        #[arg(long)]
        matrix: PathBuf,
        /// `min`, `max` or a weight value such as `4.5` or `64/3`.
        #[arg(long, default_value = "min")]
        adjacency_weight: String,
        /// `full`, `sampled:<seed>:<trials>` or `none`.
        #[arg(long, default_value = "full")]
        verify: String,
        #[arg(long, default_value = "edgelist")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force_improper: bool,
    },
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// `z9`, `p62`, `segments-q2` or `segments-q3`.
    which: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// What a command produced: text for stdout, files written, and whether
/// every requested check passed.
#[derive(Default)]
struct Output {
    stdout: String,
    files: Vec<PathBuf>,
    ok: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, files: Vec::new(), ok: true }
    }
}

fn q(x: Rational) -> String {
    format_rational(x)
}

fn srg_json(p: &SrgParams) -> Value {
    json!({
        "N": q(p.n), "K": q(p.k), "lambda": q(p.lambda), "mu": q(p.mu),
        "integral": p.is_integral(), "feasible": p.feasible(), "nontrivial": p.nontrivial(),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_ring(spec: &str, cap: usize) -> Result<Arc<FiniteRing>> {
    let spec: RingSpec = spec.parse()?;
    Ok(Arc::new(build_ring_with_cap(&spec, cap)?))
}

fn load_matrix(path: &Path) -> Result<GeneratorMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(GeneratorMatrix::from_json(&value)?)
}

fn ring_info(spec: &str, cap: usize) -> Result<Output> {
    let ring = load_ring(spec, cap)?;
    let mut out = String::new();
    writeln!(out, "ring: {}", ring.spec())?;
    writeln!(out, "order: {}", ring.order())?;
    writeln!(out, "units: {}", ring.units().len())?;
    writeln!(out, "commutative: {}", yes_no(ring.is_commutative()))?;
    let rad = radical(&ring);
    let names = |xs: &[u16]| xs.iter().map(|&x| ring.name(x)).collect::<Vec<_>>().join(", ");
    writeln!(out, "radical: {{{}}}", names(rad.elements()))?;
    let verdict = is_frobenius(&ring);
    writeln!(out, "left socle: {{{}}}", names(verdict.left_socle.elements()))?;
    writeln!(out, "right socle: {{{}}}", names(verdict.right_socle.elements()))?;
    if !verdict.frobenius {
        writeln!(out, "Frobenius: no (socle not cyclic)")?;
        return Ok(Output::ok(out));
    }
    writeln!(out, "Frobenius: yes")?;
    let chi = generating_character(&ring).context("Frobenius ring without a generating character")?;
    let exps: Vec<String> = chi.exponents().iter().map(u32::to_string).collect();
    writeln!(out, "generating character: exponents mod {}: [{}]", chi.modulus(), exps.join(", "))?;
    let w = normalized_weight(&ring)?;
    writeln!(out, "normalized homogeneous weight:")?;
    for x in ring.elements() {
        writeln!(out, "  w({}) = {}", ring.name(x), q(w.weight(x)))?;
    }
    let pd = positive_definiteness(&ring, &w);
    writeln!(out, "positive definite: {}", yes_no(pd.positive_definite))?;
    Ok(Output::ok(out))
}

fn geometry_dump(spec: &str, dim: usize, cap: usize) -> Result<Output> {
    let ring = load_ring(spec, cap)?;
    let g = Geometry::new(ring.clone(), dim, DEFAULT_BUDGET)?;
    let vec_json = |v: Vec<u16>| v.into_iter().map(|x| encode(&ring, x)).collect::<Vec<_>>();
    let points: Vec<_> = (0..g.point_count()).map(|p| vec_json(g.point(p))).collect();
    let hyperplanes: Vec<_> = (0..g.hyperplane_count()).map(|h| vec_json(g.hyperplane(h))).collect();
    let classes = match neighbour_classes(&g) {
        Ok(n) => json!((0..n.class_count())
            .map(|c| json!({ "residual_point": n.key(c), "points": n.class(c) }))
            .collect::<Vec<_>>()),
        Err(_) => Value::Null,
    };
    let report = json!({
        "ring": ring.spec().to_string(),
        "dim": dim,
        "points": points,
        "hyperplanes": hyperplanes,
        "neighbour_classes": classes,
    });
    Ok(Output::ok(serde_json::to_string_pretty(&report)? + "\n"))
}

fn analyze(code: &LinearCode, force_improper: bool) -> Result<Value> {
    let w = normalized_weight(code.ring())?;
    let c = classify(code, &w);
    let dist: Vec<Value> =
        weight_distribution(code, &w).into_iter().map(|(wt, n)| json!({ "weight": q(wt), "count": n })).collect();
    let profile = if c.proper || force_improper { two_weight_profile(code, &w, force_improper)? } else { None };
    let (two_weight, srg) = match profile {
        Some(p) => {
            let srg = theorem_params(code.n(), code.len(), p.w1, p.w2)?;
            (
                json!({ "w1": q(p.w1), "w2": q(p.w2), "b1": p.b1, "b2": p.b2 }),
                srg_json(&srg),
            )
        }
        None => (Value::Null, Value::Null),
    };
    Ok(json!({
        "ring": code.ring().spec().to_string(),
        "n": code.n(),
        "k": code.matrix().k(),
        "size": code.len(),
        "classification": c,
        "distribution": dist,
        "two_weight": two_weight,
        "srg": srg,
    }))
}

fn code_analyze(path: &Path, force_improper: bool, format: ReportFormat) -> Result<Output> {
    let code = span(&load_matrix(path)?, DEFAULT_BUDGET)?;
    let report = analyze(&code, force_improper)?;
    let stdout = match format {
        ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
        ReportFormat::Tsv => {
            let mut out = String::from("weight\tcount\n");
            for row in report["distribution"].as_array().unwrap() {
                writeln!(out, "{}\t{}", row["weight"].as_str().unwrap(), row["count"])?;
            }
            out
        }
    };
    Ok(Output::ok(stdout))
}

fn construct(args: &ConstructArgs, cap: usize) -> Result<Output> {
    let family: Family = args.family.parse()?;
    let ring = || -> Result<Arc<FiniteRing>> {
        let spec = args.ring.as_deref().context("--ring is required for this family")?;
        load_ring(spec, cap)
    };
    let report: ConstructionReport = match family {
        Family::Classes => construct_p61(ring()?, args.s)?,
        Family::Segments => construct_segments(ring()?, args.s)?,
        Family::Singer => construct_p62(args.q.context("--q is required for p62")?, args.sigma)?,
    };
    let matrix = serde_json::to_string_pretty(&report.matrix.to_json())? + "\n";
    std::fs::write(&args.out, matrix).with_context(|| format!("writing {}", args.out.display()))?;
    let p = &report.predicted;
    let theorem = report.theorem_srg()?;
    let summary = json!({
        "family": report.family.tag(),
        "ring": report.ring.to_string(),
        "q": report.q,
        "s": report.s,
        "predicted": {
            "n": p.n, "k": p.k, "w1": q(p.w1), "w2": q(p.w2), "srg": srg_json(&p.srg),
        },
        "theorem_agrees": theorem == p.srg,
        "metadata": report.metadata,
    });
    let mut out = format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        p.n,
        p.k,
        q(p.w1),
        q(p.w2),
        q(p.srg.n),
        q(p.srg.k),
        q(p.srg.lambda),
        q(p.srg.mu)
    );
    out += &(serde_json::to_string_pretty(&summary)? + "\n");
    Ok(Output { stdout: out, files: vec![args.out.clone()], ok: theorem == p.srg })
}

fn parse_mode(text: &str) -> Result<CheckMode> {
    match text.split(':').collect::<Vec<_>>().as_slice() {
        ["full"] => Ok(CheckMode::Full),
        ["none"] => Ok(CheckMode::None),
        ["sampled", seed, trials] => Ok(CheckMode::Sampled {
            seed: seed.parse().context("sampled seed")?,
            trials: trials.parse().context("sampled trials")?,
        }),
        _ => bail!("--verify must be full, none or sampled:<seed>:<trials>"),
    }
}

#[allow(clippy::too_many_arguments)]
fn graph_build(
    path: &Path,
    adjacency: &str,
    verify: &str,
    format: &str,
    out_path: Option<&Path>,
    force_improper: bool,
) -> Result<Output> {
    let mode = parse_mode(verify)?;
    let format: ExportFormat = format.parse()?;
    let code = span(&load_matrix(path)?, DEFAULT_BUDGET)?;
    let w = normalized_weight(code.ring())?;
    let profile = two_weight_profile(&code, &w, force_improper)?.context("the code is not a two-weight code")?;
    let profile = match adjacency {
        "min" => profile,
        "max" => profile.oriented(profile.w2)?,
        value => profile.oriented(parse_rational(value)?)?,
    };
    let theorem = theorem_params(code.n(), code.len(), profile.w1, profile.w2)?;
    let implicit = CayleyGraph::new(&code, &w, profile.w1)?;
    let dense = if code.len() <= FULL_CHECK_LIMIT { Some(implicit.to_graph()?) } else { None };
    let verdict = match (mode, &dense) {
        (CheckMode::Full, Some(g)) => srg_check(g, mode)?,
        (CheckMode::Full, None) => bail!("full verification is limited to {FULL_CHECK_LIMIT} vertices"),
        _ => srg_check(&implicit, mode)?,
    };
    let mut out = String::new();
    let ok = match verdict {
        SrgVerdict::Verified { params, pairs } if params == theorem => {
            writeln!(out, "{theorem} verified ({pairs} pairs)")?;
            true
        }
        SrgVerdict::Verified { params, .. } => {
            writeln!(out, "{params} found, predicted {theorem}")?;
            false
        }
        SrgVerdict::NotSrg(witness) => {
            writeln!(out, "not strongly regular: {witness}")?;
            false
        }
        SrgVerdict::Unchecked => {
            writeln!(out, "{theorem} formula-only")?;
            true
        }
    };
    writeln!(out, "feasible: {}", yes_no(theorem.feasible()))?;
    writeln!(out, "nontrivial: {}", yes_no(theorem.nontrivial()))?;
    let mut files = Vec::new();
    if let Some(p) = out_path {
        let g = dense.as_ref().context("graph export is limited to dense graphs")?;
        std::fs::write(p, export_graph(g, format)).with_context(|| format!("writing {}", p.display()))?;
        files.push(p.to_path_buf());
    }
    Ok(Output { stdout: out, files, ok: ok && theorem.feasible() })
}

fn tables(args: &TablesArgs) -> Result<Output> {
    let which: TableName = args.which.parse()?;
    let tsv = render_tsv(&table(which)?);
    let mut files = Vec::new();
    if let Some(p) = &args.out {
        std::fs::write(p, &tsv).with_context(|| format!("writing {}", p.display()))?;
        files.push(p.clone());
    }
    Ok(Output { stdout: tsv, files, ok: true })
}

fn run(cli: &Cli) -> Result<(Output, Vec<PathBuf>, &'static str)> {
    let cap = cli.order_cap;
    Ok(match &cli.command {
        Command::Ring(RingCommand::Info { spec }) => (ring_info(spec, cap)?, vec![], "ring info"),
        Command::Geometry(GeometryCommand::Dump { ring, dim }) => {
            (geometry_dump(ring, *dim, cap)?, vec![], "geometry dump")
        }
        Command::Code(CodeCommand::Analyze { matrix, force_improper, format }) => {
            (code_analyze(matrix, *force_improper, *format)?, vec![matrix.clone()], "code analyze")
        }
        Command::Construct(args) => (construct(args, cap)?, vec![], "construct"),
        Command::Graph(GraphCommand::Build { matrix, adjacency_weight, verify, format, out, force_improper }) => (
            graph_build(matrix, adjacency_weight, verify, format, out.as_deref(), *force_improper)?,
            vec![matrix.clone()],
            "graph build",
        ),
        Command::Tables(args) => (tables(args)?, vec![], "tables"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (output, inputs, name) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    print!("{}", output.stdout);
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest::new(name, std::env::args().skip(1).collect(), &inputs, &output.files, &output.stdout);
        if let Err(e) = manifest.and_then(|m| m.write(path)) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    if output.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
