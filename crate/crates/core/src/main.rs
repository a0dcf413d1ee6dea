//! Command-line front end: build graphs, verify properties into
//! certificates, and project cycles of married graphs.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cycleforge::analysis::{project_cycle, Projection};
use cycleforge::certify::{run_checks, CheckKind, CheckStatus, Expectations, VerifyConfig};
use cycleforge::construct::{
    chia_thomassen, family_member, generalized_petersen, k4, marry, BijectionPolicy, FamilyConfig,
    MarriagePlan, VertexOrigin,
};
use cycleforge::graph::Graph;
use cycleforge::limits::SearchLimits;
use cycleforge::search::CycleWitness;
use cycleforge::{io as gio};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_EXPECTATION_FAILED: u8 = 2;
const EXIT_RESOURCE_LIMIT: u8 = 3;
const EXIT_MALFORMED_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "cycleforge", version, about)]
struct Cli {
    /// Worker threads for the parallel analysis passes (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a graph and write it to a file.
    Build(BuildArgs),
    /// Run property checks on a graph file and emit a certificate.
    Verify(VerifyArgs),
    /// Classify a cycle of a married graph through its origin map.
    Project(ProjectArgs),
}

#[derive(Args)]
struct BuildArgs {
    #[command(subcommand)]
    target: BuildTarget,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output file for the graph.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    /// Also write the vertex-origin map (marriage targets only).
    #[arg(long)]
    origin_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BuildTarget {
    /// Generalized Petersen graph GP(n, k).
    Gp {
        n: usize,
        k: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The 56-vertex Chia-Thomassen graph.
    ChiaThomassen {
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The complete graph on four vertices.
    K4 {
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Marry one host vertex with (guest, u).
    Marry {
        /// Host graph file.
        #[arg(long)]
        host: PathBuf,
        /// Host vertex to replace.
        #[arg(long)]
        host_vertex: usize,
        /// Guest graph file.
        #[arg(long)]
        guest: PathBuf,
        /// Marked guest vertex u.
        #[arg(long, default_value_t = 0)]
        guest_vertex: usize,
        /// Neighbor bijection: "sorted" or "index <0..6>".
        #[arg(long, default_value = "sorted")]
        bijection: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// k-th member of the iterated family (56 * 17^k vertices).
    Family {
        k: usize,
        /// Marked vertex of the GP(9,2) guest.
        #[arg(long, default_value_t = 0)]
        guest_vertex: usize,
        /// Neighbor bijection: "sorted" or "index <0..6>".
        #[arg(long, default_value = "sorted")]
        bijection: String,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file (graph6 or edge-list, auto-detected).
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated checks: cubic,girth,connectivity,ham-count,census,smith,thomason,unique-nonham.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Certificate output path (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Short-circuit target for the connectivity check.
    #[arg(long)]
    connectivity_k: Option<usize>,
    /// Vertex cap for the exponential-search checks.
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Node-expansion budget for the search kernels.
    #[arg(long)]
    node_budget: Option<u64>,
    #[arg(long)]
    expect_cubic: Option<bool>,
    #[arg(long)]
    expect_girth: Option<usize>,
    #[arg(long)]
    expect_kappa: Option<usize>,
    #[arg(long)]
    expect_ham_count: Option<u64>,
    #[arg(long)]
    expect_circumference: Option<usize>,
    /// Expected longest-cycle count from the census.
    #[arg(long)]
    expect_count: Option<u64>,
}

#[derive(Args)]
struct ProjectArgs {
    /// Married graph file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Origin map file written by build.
    #[arg(long)]
    origin: PathBuf,
    /// Cycle as a space-separated vertex list.
    #[arg(long)]
    cycle: String,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(gio::from_auto(&text)?)
}

fn write_graph(g: &Graph, origin: Option<&VertexOrigin>, output: &OutputOpts) -> Result<()> {
    let body = match output.format {
        Format::Graph6 => gio::to_graph6(g) + "\n",
        Format::Edgelist => gio::to_edge_list(g),
    };
    std::fs::write(&output.out, body)
        .with_context(|| format!("writing {}", output.out.display()))?;
    if let Some(path) = &output.origin_out {
        let origin = origin.ok_or_else(|| anyhow!("this target has no origin map"))?;
        std::fs::write(path, origin.to_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    println!("wrote {}: {} vertices, {} edges", output.out.display(), g.order(), g.size());
    Ok(())
}

fn parse_bijection(s: &str) -> Result<BijectionPolicy> {
    let mut it = s.split_whitespace();
    match (it.next(), it.next()) {
        (Some("sorted"), None) => Ok(BijectionPolicy::SortedIdentity),
        (Some("index"), Some(k)) => Ok(BijectionPolicy::Index(k.parse()?)),
        _ => Err(anyhow!("bijection must be \"sorted\" or \"index <0..6>\"")),
    }
}

fn cmd_build(args: BuildArgs) -> Result<u8> {
    match args.target {
        BuildTarget::Gp { n, k, output } => {
            let g = generalized_petersen(n, k)?;
            write_graph(&g, None, &output)?;
        }
        BuildTarget::ChiaThomassen { output } => {
            write_graph(&chia_thomassen(), None, &output)?;
        }
        BuildTarget::K4 { output } => {
            write_graph(&k4(), None, &output)?;
        }
        BuildTarget::Marry { host, host_vertex, guest, guest_vertex, bijection, output } => {
            let plan = MarriagePlan::new(
                read_graph(&host)?,
                host_vertex,
                read_graph(&guest)?,
                guest_vertex,
                parse_bijection(&bijection)?,
            )?;
            let (g, origin) = marry(&plan)?;
            write_graph(&g, Some(&origin), &output)?;
        }
        BuildTarget::Family { k, guest_vertex, bijection, output } => {
            let config = FamilyConfig {
                guest_vertex,
                bijection: parse_bijection(&bijection)?,
                ..FamilyConfig::default()
            };
            let (g, origins) = family_member(k, &config)?;
            write_graph(&g, origins.last(), &output)?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let checks: Vec<CheckKind> = args
        .checks
        .iter()
        .map(|s| CheckKind::parse(s).ok_or_else(|| anyhow!("unknown check {s:?}")))
        .collect::<Result<_>>()?;
    if checks.is_empty() {
        return Err(anyhow!("no checks requested"));
    }
    let defaults = SearchLimits::search_default();
    let config = VerifyConfig {
        connectivity_k: args.connectivity_k,
        max_vertices: args.max_vertices.unwrap_or(defaults.max_vertices),
        node_budget: args.node_budget,
        expectations: Expectations {
            cubic: args.expect_cubic,
            girth: args.expect_girth,
            kappa: args.expect_kappa,
            ham_count: args.expect_ham_count,
            circumference: args.expect_circumference,
            count: args.expect_count,
        },
    };
    let cert = run_checks(&g, &checks, &config);
    let json = cert.to_json();
    match &args.out {
        Some(path) => std::fs::write(path, json + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{json}"),
    }
    for record in &cert.checks {
        let tag = match record.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        eprintln!("{tag} {} ({} ms)", record.name, record.runtime_ms);
    }
    if cert.checks.iter().any(|r| r.status == CheckStatus::Fail) {
        return Ok(EXIT_EXPECTATION_FAILED);
    }
    if cert.checks.iter().any(|r| r.status == CheckStatus::Skipped) {
        return Ok(EXIT_RESOURCE_LIMIT);
    }
    Ok(0)
}

fn cmd_project(args: ProjectArgs) -> Result<u8> {
    let g = read_graph(&args.input)?;
    let origin_text = std::fs::read_to_string(&args.origin)
        .with_context(|| format!("reading {}", args.origin.display()))?;
    let origin = VertexOrigin::from_text(&origin_text)?;
    let verts: Vec<usize> = args
        .cycle
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| anyhow!("bad cycle vertex {t:?}: {e}")))
        .collect::<Result<_>>()?;
    if verts.len() < 3 {
        return Err(anyhow!("cycle needs at least 3 vertices"));
    }
    let witness = CycleWitness::canonical(&verts);
    match project_cycle(&g, &origin, &witness)? {
        Projection::InternalCycle { host, cycle } => {
            println!("internal-cycle host={host} length={}", cycle.len());
            println!(
                "fiber cycle: {}",
                cycle.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
        Projection::HostCycle { hosts, fiber_paths } => {
            println!("host-cycle length={}", hosts.len());
            println!(
                "host cycle: {}",
                hosts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
            for (i, path) in hosts.iter().zip(&fiber_paths) {
                println!(
                    "fiber {i}: {} ({} vertices)",
                    path.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
                    path.len()
                );
            }
        }
    }
    Ok(0)
}

fn classify_error(err: &anyhow::Error) -> u8 {
    use cycleforge::construct::ConstructError;
    use cycleforge::io::FormatError;
    use cycleforge::search::SearchError;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<SearchError>() {
            if matches!(e, SearchError::ResourceLimit(_)) {
                return EXIT_RESOURCE_LIMIT;
            }
        }
        if let Some(e) = cause.downcast_ref::<ConstructError>() {
            if matches!(e, ConstructError::ResourceLimit(..)) {
                return EXIT_RESOURCE_LIMIT;
            }
        }
        if cause.downcast_ref::<FormatError>().is_some() {
            return EXIT_MALFORMED_INPUT;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("rayon pool initializes once");
    }
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Project(args) => cmd_project(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify_error(&err))
        }
    }
}
