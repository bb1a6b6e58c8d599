//! Command-line surface: compute, graphs, chambers, wallcross, verify.
//!
//! Exit codes: 0 success, 1 cross-method mismatch, 2 invalid input,
//! 3 guard exceeded, 4 negative simple-branch count.

use crate::chambers::ChamberAtlas;
use crate::cutjoin::hurwitz_cutjoin;
use crate::monodromy::{enumerate_monodromy_graphs, GraphArtifact, GraphWeighting};
use crate::oracle::{hurwitz_bruteforce, OracleConfig};
use crate::partition::{partitions_of, HurwitzInput, Partition};
use crate::tropical::tropical_degree;
use crate::{rational_string, Error, Rational, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_NEGATIVE_BRANCHES: i32 = 4;

/// Default degree guard; the HURWITZ_MAX_DEGREE environment variable
/// overrides it, and --max-degree overrides both.
const DEFAULT_GUARD: u64 = 10;

#[derive(Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Exact double Hurwitz numbers: four independent methods, \
             genus-0 chambers and wall crossings"
)]
pub struct Cli {
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Largest degree accepted (default 10; HURWITZ_MAX_DEGREE overrides).
    #[arg(long, global = true)]
    pub max_degree: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute one double Hurwitz number by one or all methods.
    Compute(ComputeArgs),
    /// List the monodromy graphs with their weight breakdowns.
    Graphs(InputArgs),
    /// Emit the genus-0 chamber atlas of the (k, l) arrangement.
    Chambers(ChamberArgs),
    /// Cross one wall of the (k, l) arrangement by all three routes.
    Wallcross(WallcrossArgs),
    /// Cross-check every method over a degree and genus range.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct InputArgs {
    /// Genus of the covering curve.
    #[arg(long)]
    pub genus: u32,
    /// Ramification over zero, comma-separated (e.g. 2,2).
    #[arg(long)]
    pub eta: String,
    /// Ramification over infinity, comma-separated.
    #[arg(long)]
    pub nu: String,
}

#[derive(Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
}

#[derive(Args)]
pub struct ChamberArgs {
    /// Number of in-ends (parts over zero).
    #[arg(long)]
    pub k: usize,
    /// Number of out-ends (parts over infinity).
    #[arg(long)]
    pub l: usize,
}

#[derive(Args)]
pub struct WallcrossArgs {
    #[command(flatten)]
    pub kl: ChamberArgs,
    /// Wall as 1-based index sets, e.g. I=1;J=1 or I=1,2;J=2.
    #[arg(long)]
    pub wall: String,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Largest degree to sweep.
    #[arg(long)]
    pub dmax: u64,
    /// Largest genus to sweep.
    #[arg(long, default_value_t = 1)]
    pub gmax: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bruteforce,
    Cutjoin,
    Graphsum,
    Tropical,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::Cutjoin => "cutjoin",
            Method::Graphsum => "graphsum",
            Method::Tropical => "tropical",
            Method::All => "all",
        }
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> i32 {
    if cli.jobs > 0 {
        // Ignored if a global pool already exists.
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    let guard = cli.max_degree.unwrap_or_else(default_guard);
    if guard == 0 {
        eprintln!("error: the degree guard must be positive");
        return EXIT_INVALID;
    }
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args, guard, cli.format),
        Command::Graphs(args) => cmd_graphs(args, guard, cli.format),
        Command::Chambers(args) => cmd_chambers(args, cli.format),
        Command::Wallcross(args) => cmd_wallcross(args, cli.format),
        Command::Verify(args) => cmd_verify(args, guard, cli.format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn default_guard() -> u64 {
    std::env::var("HURWITZ_MAX_DEGREE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded { .. } => EXIT_GUARD,
        Error::NegativeBranchCount(_) => EXIT_NEGATIVE_BRANCHES,
        _ => EXIT_INVALID,
    }
}

fn parse_partition(text: &str) -> Result<Partition> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad partition entry {p:?}")))
        })
        .collect::<Result<_>>()?;
    Partition::new(parts)
}

fn parse_input(args: &InputArgs, guard: u64) -> Result<HurwitzInput> {
    let eta = parse_partition(&args.eta)?;
    let nu = parse_partition(&args.nu)?;
    let input = HurwitzInput::new(args.genus, eta, nu)?;
    if input.degree() > guard {
        return Err(Error::GuardExceeded {
            d: input.degree(),
            limit: guard,
        });
    }
    Ok(input)
}

/// Signed end multiset for the tropical degree: negated parts over zero,
/// then parts over infinity.
fn signed_ends(input: &HurwitzInput) -> Vec<i64> {
    input
        .eta
        .parts()
        .iter()
        .map(|&p| -(p as i64))
        .chain(input.nu.parts().iter().map(|&p| p as i64))
        .collect()
}

fn compute_by(method: Method, input: &HurwitzInput, guard: u64) -> Result<Rational> {
    match method {
        Method::Bruteforce => {
            let cfg = OracleConfig {
                max_degree: guard,
                ..OracleConfig::default()
            };
            hurwitz_bruteforce(input, &cfg)
        }
        Method::Cutjoin => hurwitz_cutjoin(input),
        Method::Graphsum => crate::monodromy::hurwitz_graphsum(input, GraphWeighting::VertexFactors),
        Method::Tropical => tropical_degree(input.genus, &signed_ends(input)),
        Method::All => unreachable!("expanded by the caller"),
    }
}

#[derive(Serialize)]
struct ComputeReport {
    genus: u32,
    eta: Vec<u32>,
    nu: Vec<u32>,
    s: u32,
    values: Vec<MethodValue>,
    agreement: bool,
}

#[derive(Serialize)]
struct MethodValue {
    method: &'static str,
    value: String,
}

fn cmd_compute(args: &ComputeArgs, guard: u64, format: Format) -> Result<i32> {
    let input = parse_input(&args.input, guard)?;
    let methods: Vec<Method> = match args.method {
        Method::All => vec![
            Method::Bruteforce,
            Method::Cutjoin,
            Method::Graphsum,
            Method::Tropical,
        ],
        m => vec![m],
    };
    let mut values = Vec::new();
    for &m in &methods {
        values.push((m, compute_by(m, &input, guard)?));
    }
    let agreement = values.windows(2).all(|w| w[0].1 == w[1].1);
    match format {
        Format::Human => {
            println!(
                "H^{}_{}(({}), ({})) with {} simple branch points",
                input.genus,
                input.degree(),
                input.eta,
                input.nu,
                input.s
            );
            for (m, v) in &values {
                println!("{:<11}{}", m.name(), rational_string(v));
            }
            if methods.len() > 1 {
                println!("agreement  {}", if agreement { "PASS" } else { "FAIL" });
            }
        }
        Format::Json => {
            let report = ComputeReport {
                genus: input.genus,
                eta: input.eta.parts().to_vec(),
                nu: input.nu.parts().to_vec(),
                s: input.s,
                values: values
                    .iter()
                    .map(|(m, v)| MethodValue {
                        method: m.name(),
                        value: rational_string(v),
                    })
                    .collect(),
                agreement,
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }
    Ok(if agreement { EXIT_OK } else { EXIT_MISMATCH })
}

#[derive(Serialize, Deserialize)]
pub struct GraphReport {
    #[serde(flatten)]
    pub graph: GraphArtifact,
    pub vertex_in_product: String,
    pub interior_edge_product: String,
    pub untouched_edge_product: String,
    pub automorphisms: String,
    pub weight_vertex_factors: String,
    pub weight_edge_product: String,
    pub total: String,
}

fn cmd_graphs(args: &InputArgs, guard: u64, format: Format) -> Result<i32> {
    let input = parse_input(args, guard)?;
    let graphs = enumerate_monodromy_graphs(&input);
    let reports: Vec<GraphReport> = graphs
        .iter()
        .map(|g| GraphReport {
            graph: g.artifact(),
            vertex_in_product: g.vertex_in_products().to_string(),
            interior_edge_product: g.interior_edge_product().to_string(),
            untouched_edge_product: g.untouched_edge_product().to_string(),
            automorphisms: g.automorphism_size().to_string(),
            weight_vertex_factors: rational_string(&g.weight_vertex_factors()),
            weight_edge_product: rational_string(&g.weight_edge_product()),
            total: rational_string(&g.weight(GraphWeighting::VertexFactors)),
        })
        .collect();
    match format {
        Format::Human => {
            println!(
                "{} monodromy graphs for genus {}, ({}) -> ({})",
                reports.len(),
                input.genus,
                input.eta,
                input.nu
            );
            let mut total = Rational::from_integer(0.into());
            for (i, r) in reports.iter().enumerate() {
                println!(
                    "graph {}: genus {}, forks {}, wieners {}, |Aut| {}, total {}",
                    i + 1,
                    r.graph.genus,
                    r.graph.forks,
                    r.graph.wieners,
                    r.automorphisms,
                    r.total
                );
            }
            for g in &graphs {
                total += g.weight(GraphWeighting::VertexFactors);
            }
            println!("sum {}", rational_string(&total));
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
    }
    Ok(EXIT_OK)
}

fn cmd_chambers(args: &ChamberArgs, format: Format) -> Result<i32> {
    let atlas = ChamberAtlas::new(args.k, args.l)?;
    let artifact = atlas.artifact();
    match format {
        Format::Human => {
            println!(
                "({}, {}) arrangement: {} walls, {} chambers",
                args.k,
                args.l,
                artifact.walls.len(),
                artifact.chambers.len()
            );
            for (i, w) in atlas.walls().iter().enumerate() {
                println!("wall {}: {}", i + 1, w);
            }
            for c in &artifact.chambers {
                println!(
                    "chamber {}: P = {}  (witness mu = {:?}, nu = {:?})",
                    c.signs, c.polynomial_text, c.witness_point.mu, c.witness_point.nu
                );
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&artifact).unwrap()),
    }
    Ok(EXIT_OK)
}

/// Parses "I=1,2;J=1" into 0-based index sets.
fn parse_wall_spec(text: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let bad = || Error::Invalid(format!("bad wall spec {text:?}, expected I=..;J=.."));
    let mut i_set = None;
    let mut j_set = None;
    for piece in text.split(';') {
        let (name, values) = piece.split_once('=').ok_or_else(bad)?;
        let parsed: Vec<usize> = values
            .split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if parsed.contains(&0) {
            return Err(Error::Invalid("wall indices are 1-based".into()));
        }
        let zero_based: Vec<usize> = parsed.iter().map(|&x| x - 1).collect();
        match name.trim() {
            "I" => i_set = Some(zero_based),
            "J" => j_set = Some(zero_based),
            _ => return Err(bad()),
        }
    }
    match (i_set, j_set) {
        (Some(i), Some(j)) => Ok((i, j)),
        _ => Err(bad()),
    }
}

#[derive(Serialize)]
struct CrossingReport {
    wall: String,
    c1_signs: String,
    c2_signs: String,
    p1: String,
    p2: String,
    polynomial_text: String,
    routes_consistent: bool,
    ordered_difference_count: u64,
    multinomial: String,
    ordered_sub1: u64,
    ordered_sub2: u64,
    cut_glue_ok: bool,
}

fn cmd_wallcross(args: &WallcrossArgs, format: Format) -> Result<i32> {
    let atlas = ChamberAtlas::new(args.kl.k, args.kl.l)?;
    let (i_set, j_set) = parse_wall_spec(&args.wall)?;
    let wall_idx = atlas
        .find_wall(&i_set, &j_set)
        .ok_or_else(|| Error::Invalid(format!("{:?} does not name a wall", args.wall)))?;
    let pairs = atlas.adjacent_pairs(wall_idx);
    let mut reports = Vec::new();
    let mut all_ok = true;
    for (a, b) in pairs {
        let c1 = &atlas.chambers()[a];
        let c2 = &atlas.chambers()[b];
        let wc = atlas.wall_crossing(wall_idx, c1, c2)?;
        let cg = atlas.cut_glue_check(wall_idx, c1, c2)?;
        let ok = wc.consistent() && cg.counts_match();
        all_ok &= ok;
        reports.push(CrossingReport {
            wall: atlas.walls()[wall_idx].to_string(),
            c1_signs: c1.signs().iter().map(|&s| if s { '+' } else { '-' }).collect(),
            c2_signs: c2.signs().iter().map(|&s| if s { '+' } else { '-' }).collect(),
            p1: wc.p1.to_string(),
            p2: wc.p2.to_string(),
            polynomial_text: wc.difference.to_string(),
            routes_consistent: wc.consistent(),
            ordered_difference_count: cg.ordered_difference_count,
            multinomial: cg.multinomial.to_string(),
            ordered_sub1: cg.ordered_sub1,
            ordered_sub2: cg.ordered_sub2,
            cut_glue_ok: cg.counts_match(),
        });
    }
    match format {
        Format::Human => {
            for r in &reports {
                println!(
                    "{} | {} -> {} : WC = {}  [routes {}, cut/glue {}]",
                    r.wall,
                    r.c1_signs,
                    r.c2_signs,
                    r.polynomial_text,
                    if r.routes_consistent { "agree" } else { "DISAGREE" },
                    if r.cut_glue_ok { "ok" } else { "MISMATCH" }
                );
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_MISMATCH })
}

#[derive(Serialize)]
pub struct VerifyRow {
    pub d: u64,
    pub genus: u32,
    pub eta: Vec<u32>,
    pub nu: Vec<u32>,
    pub values: Vec<String>,
    pub ok: bool,
}

/// Every (eta, nu, genus) within the bounds, computed by all four
/// methods in parallel.
pub fn verification_matrix(dmax: u64, gmax: u32, guard: u64) -> Result<Vec<VerifyRow>> {
    if dmax == 0 {
        return Err(Error::Invalid("dmax must be positive".into()));
    }
    if dmax > guard {
        return Err(Error::GuardExceeded {
            d: dmax,
            limit: guard,
        });
    }
    let mut inputs = Vec::new();
    for d in 1..=dmax {
        let parts = partitions_of(d as u32);
        for eta in &parts {
            for nu in &parts {
                for g in 0..=gmax {
                    inputs.push(HurwitzInput::new(g, eta.clone(), nu.clone())?);
                }
            }
        }
    }
    let rows: Vec<Result<VerifyRow>> = inputs
        .into_par_iter()
        .map(|input| {
            let methods = [
                Method::Bruteforce,
                Method::Cutjoin,
                Method::Graphsum,
                Method::Tropical,
            ];
            let mut vals = Vec::new();
            for m in methods {
                vals.push(compute_by(m, &input, guard)?);
            }
            let ok = vals.windows(2).all(|w| w[0] == w[1]);
            Ok(VerifyRow {
                d: input.degree(),
                genus: input.genus,
                eta: input.eta.parts().to_vec(),
                nu: input.nu.parts().to_vec(),
                values: vals.iter().map(rational_string).collect(),
                ok,
            })
        })
        .collect();
    rows.into_iter().collect()
}

fn cmd_verify(args: &VerifyArgs, guard: u64, format: Format) -> Result<i32> {
    let start = Instant::now();
    let rows = verification_matrix(args.dmax, args.gmax, guard)?;
    let failures: Vec<&VerifyRow> = rows.iter().filter(|r| !r.ok).collect();
    match format {
        Format::Human => {
            for d in 1..=args.dmax {
                for g in 0..=args.gmax {
                    let group: Vec<&VerifyRow> = rows
                        .iter()
                        .filter(|r| r.d == d && r.genus == g)
                        .collect();
                    let ok = group.iter().all(|r| r.ok);
                    println!(
                        "d = {d}, genus = {g}: {} inputs, {}",
                        group.len(),
                        if ok { "PASS" } else { "FAIL" }
                    );
                }
            }
            for r in &failures {
                println!(
                    "MISMATCH at genus {}, eta {:?}, nu {:?}: {:?}",
                    r.genus, r.eta, r.nu, r.values
                );
            }
            println!(
                "{} ({} inputs in {:.2?})",
                if failures.is_empty() { "PASS" } else { "FAIL" },
                rows.len(),
                start.elapsed()
            );
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}
