//! `kgcore` command line: core, decompose, query, stats, generate, bench.
//!
//! Data goes to the output stream as JSON or CSV; diagnostics go to the
//! error stream. Exit codes: 2 usage or I/O, 3 parse, 4 domain.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compute::{epa_with_memory, naive_with_memory, MemoryReport};
use crate::decompose::{bca, load_index, save_index, CorenessIndex};
use crate::error::{Error, Result};
use crate::generator::{generate, GenConfig};
use crate::model::{
    graph_stats, load_hypergraph, stats, write_edge_list, Format, Hypergraph, NodeSet, SubhypergraphStats,
};
use crate::oracle::oracle_kg_core;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "kgcore", version, about = "(k,g)-core computation and decomposition for hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one (k,g)-core.
    Core(CoreArgs),
    /// Compute every (k,g)-core and the coreness index.
    Decompose(DecomposeArgs),
    /// Answer a (k,g)-core query from a saved index.
    Query(QueryArgs),
    /// Statistics of the whole hypergraph or of the subhypergraph induced by a node list.
    Stats(StatsArgs),
    /// Emit a synthetic hypergraph as an edge list.
    Generate(GenerateArgs),
    /// Time core computations and report accounted peak memory as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    #[default]
    Epa,
    Naive,
    Oracle,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Epa => "epa",
            Algorithm::Naive => "naive",
            Algorithm::Oracle => "oracle",
        }
    }

    /// Runs the algorithm; the oracle reports no memory accounting.
    pub fn run(self, graph: &Hypergraph, k: u32, g: u32) -> Result<(NodeSet, MemoryReport)> {
        match self {
            Algorithm::Epa => epa_with_memory(graph, k, g),
            Algorithm::Naive => naive_with_memory(graph, k, g),
            Algorithm::Oracle => Ok((oracle_kg_core(graph, k, g)?, MemoryReport::default())),
        }
    }
}

fn positive(s: &str) -> std::result::Result<u32, String> {
    match s.parse::<u32>() {
        Ok(v) if v >= 1 => Ok(v),
        Ok(_) => Err("must be >= 1".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
struct CoreArgs {
    /// Edge-list file, `-` for stdin.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, value_parser = positive)]
    k: u32,
    #[arg(short, value_parser = positive)]
    g: u32,
    #[arg(long, value_enum, default_value_t)]
    algorithm: Algorithm,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Write raw cores as JSON here.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the coreness index here.
    #[arg(long)]
    index: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(short, value_parser = positive)]
    k: u32,
    #[arg(short, value_parser = positive)]
    g: u32,
    /// Optional hypergraph; when given, stats of the answer are included.
    #[arg(short, long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// File of node labels (whitespace or comma separated) to induce on.
    #[arg(long)]
    nodes: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// JSON generator config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    min_card: Option<usize>,
    #[arg(long)]
    max_card: Option<usize>,
    #[arg(long)]
    degree_exponent: Option<f64>,
    #[arg(long)]
    community_exponent: Option<f64>,
    #[arg(long)]
    communities: Option<usize>,
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BenchAlgorithm {
    Epa,
    Naive,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Edge-list datasets to benchmark.
    #[arg(short, long, num_args = 1..)]
    input: Vec<PathBuf>,
    /// Node counts for a synthetic sweep.
    #[arg(long, value_delimiter = ',')]
    sweep: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, value_delimiter = ',', default_value = "5", value_parser = positive)]
    k: Vec<u32>,
    #[arg(short, value_delimiter = ',', default_value = "5", value_parser = positive)]
    g: Vec<u32>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "epa")]
    algorithm: Vec<BenchAlgorithm>,
    /// Runs per cell; the fastest is reported.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    repeat: u32,
}

/// Parses `args` and executes the command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Json(_) | Error::Version { .. } | Error::Validation(_) => EXIT_PARSE,
        Error::Domain(_) | Error::Config(_) => EXIT_DOMAIN,
        Error::Io(_) => EXIT_USAGE,
    }
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(Box::new(BufReader::new(f)))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(BufWriter::new(f))
}

fn read_graph(path: &Path) -> Result<Hypergraph> {
    load_hypergraph(open(path)?, Format::EdgeList)
}

#[derive(Serialize)]
struct CoreOutput<'a> {
    k: u32,
    g: u32,
    nodes: Vec<&'a str>,
    stats: Option<SubhypergraphStats>,
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Core(a) => {
            let graph = read_graph(&a.input)?;
            let (core, _) = a.algorithm.run(&graph, a.k, a.g)?;
            let s = stats(&graph, &core)?;
            emit_json(out, &CoreOutput { k: a.k, g: a.g, nodes: graph.sorted_labels(&core), stats: Some(s) })
        }
        Command::Decompose(a) => {
            let graph = read_graph(&a.input)?;
            let result = bca(&graph);
            if let Some(path) = &a.output {
                let mut w = create(path)?;
                result.write_cores_json(&graph, &mut w)?;
                w.write_all(b"\n")?;
                w.flush()?;
            }
            if let Some(path) = &a.index {
                let index = CorenessIndex::new(&graph, result.skyline.clone())?;
                let mut w = create(path)?;
                save_index(&index, &mut w)?;
                w.flush()?;
            }
            #[derive(Serialize)]
            struct Summary {
                nodes: usize,
                edges: usize,
                cores: usize,
                k_max: u32,
                g_max: u32,
            }
            emit_json(
                out,
                &Summary {
                    nodes: graph.node_count(),
                    edges: graph.edge_count(),
                    cores: result.raw.len(),
                    k_max: result.k_max(),
                    g_max: result.g_max(),
                },
            )
        }
        Command::Query(a) => {
            let index = load_index(open(&a.index)?)?;
            let nodes = index.query_labels(a.k, a.g)?;
            let stats = match &a.input {
                Some(path) => {
                    let graph = read_graph(path)?;
                    Some(stats(&graph, &graph.resolve(&nodes)?)?)
                }
                None => None,
            };
            emit_json(out, &CoreOutput { k: a.k, g: a.g, nodes, stats })
        }
        Command::Stats(a) => {
            let graph = read_graph(&a.input)?;
            let s = match &a.nodes {
                Some(path) => {
                    let mut text = String::new();
                    open(path)?.read_to_string(&mut text)?;
                    let labels = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty());
                    stats(&graph, &graph.resolve(labels)?)?
                }
                None => graph_stats(&graph),
            };
            emit_json(out, &s)
        }
        Command::Generate(a) => {
            let mut cfg = match &a.config {
                Some(path) => serde_json::from_reader(open(path)?)?,
                None => GenConfig::default(),
            };
            if let Some(v) = a.nodes {
                cfg.node_count = v;
            }
            if let Some(v) = a.edges {
                cfg.edge_count = v;
            }
            if let Some(v) = a.min_card {
                cfg.cardinality_range[0] = v;
            }
            if let Some(v) = a.max_card {
                cfg.cardinality_range[1] = v;
            }
            if let Some(v) = a.degree_exponent {
                cfg.degree_exponent = v;
            }
            if let Some(v) = a.community_exponent {
                cfg.community_exponent = v;
            }
            if let Some(v) = a.communities {
                cfg.community_count = v;
            }
            if let Some(v) = a.noise {
                cfg.noise = v;
            }
            if let Some(v) = a.seed {
                cfg.seed = v;
            }
            let graph = generate(&cfg)?;
            match &a.output {
                Some(path) => {
                    let mut w = create(path)?;
                    write_edge_list(&graph, &mut w)?;
                    w.flush()?;
                    Ok(())
                }
                None => write_edge_list(&graph, BufWriter::new(out)),
            }
        }
        Command::Bench(a) => bench(a, out),
    }
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> Result<()> {
    if a.input.is_empty() && a.sweep.is_empty() {
        return Err(Error::Domain("bench needs --input or --sweep".into()));
    }
    let mut datasets: Vec<(String, Hypergraph)> = Vec::new();
    for path in &a.input {
        let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        datasets.push((name, read_graph(path)?));
    }
    for &n in &a.sweep {
        datasets.push((format!("synth-{n}"), generate(&GenConfig::scaled(n, a.seed))?));
    }

    writeln!(out, "dataset,k,g,algorithm,wall_ms,accounted_peak_bytes,result_size")?;
    for (name, graph) in &datasets {
        for &g in &a.g {
            for &k in &a.k {
                for &alg in &a.algorithm {
                    let alg = match alg {
                        BenchAlgorithm::Epa => Algorithm::Epa,
                        BenchAlgorithm::Naive => Algorithm::Naive,
                    };
                    let mut best = f64::INFINITY;
                    let mut last = None;
                    for _ in 0..a.repeat {
                        let start = Instant::now();
                        let r = alg.run(graph, k, g)?;
                        best = best.min(start.elapsed().as_secs_f64() * 1e3);
                        last = Some(r);
                    }
                    let (core, mem) = last.expect("repeat >= 1");
                    writeln!(out, "{name},{k},{g},{},{best:.3},{},{}", alg.name(), mem.peak_bytes, core.len())?;
                }
            }
        }
    }
    Ok(())
}
