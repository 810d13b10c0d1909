//! Command-line surface for the chromatic homology engine.
//!
//! Subcommands: `info`, `nbc`, `matching`, `homology`, `chromatic`, `csf`,
//! `verify`, `bench`. Graphs come from edge-list files; algebras are either
//! the `am:<m>` presets or JSON structure-constant files. Output is JSON
//! (default) or TSV, and is byte-identical across runs once timings are
//! suppressed with `--no-timing`. `NBC_THREADS` caps the worker pool.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chromahom::algebra::GradedAlgebra;
use chromahom::complex::{build_complex, BasedComplex, Model};
use chromahom::graph::Graph;
use chromahom::homology::{homology, HomologySummary};
use chromahom::verify::{run_suite, suite_passed, VerifyLevel};
use chromahom::{nbc, symfun};

#[derive(Parser)]
#[command(
    name = "chromahom",
    version,
    about = "Bigraded chromatic homology of graphs, with a broken-circuit reduced model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print basic facts about a graph and its state spaces.
    Info(GraphArgs),
    /// Enumerate the NBC states.
    Nbc(GraphArgs),
    /// Print the broken-circuit matching and its certified linear extension.
    Matching(GraphArgs),
    /// Compute bigraded homology over a graded algebra.
    Homology(HomologyArgs),
    /// Compute the chromatic polynomial by three independent routes.
    Chromatic(GraphArgs),
    /// Compute the chromatic symmetric function in the power-sum basis.
    Csf(GraphArgs),
    /// Run the property suite; exits nonzero if any check fails.
    Verify(VerifyArgs),
    /// Compare the full and NBC pipelines on size and wall clock.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Full,
    Nbc,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Fast,
    Paranoid,
}

impl From<LevelArg> for VerifyLevel {
    fn from(level: LevelArg) -> VerifyLevel {
        match level {
            LevelArg::Fast => VerifyLevel::Fast,
            LevelArg::Paranoid => VerifyLevel::Paranoid,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file in edge-list format (`n <count>` header, `u v` lines).
    #[arg(long)]
    graph: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Algebra: `am:<m>` for `Z[x]/(x^m)`, or a JSON structure-constant file.
    #[arg(long, default_value = "am:2")]
    algebra: String,
    /// Which state space to build; `both` also reports the diff.
    #[arg(long, value_enum, default_value_t = ModelArg::Both)]
    model: ModelArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress wall-clock fields so output is byte-reproducible.
    #[arg(long)]
    no_timing: bool,
    /// Include the full complex dump (states and signed sparse
    /// differentials) in JSON output.
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file, or a directory of `*.graph` files to run as a corpus.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "am:2")]
    algebra: String,
    /// Verification level.
    #[arg(long = "verify", value_enum, default_value_t = LevelArg::Fast)]
    level: LevelArg,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    /// Graph file, or a directory of `*.graph` files.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "am:2")]
    algebra: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report only deterministic size columns, no wall clock.
    #[arg(long)]
    no_timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() {
    if let Ok(threads) = std::env::var("NBC_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Info(args) => cmd_info(&args),
        Command::Nbc(args) => cmd_nbc(&args),
        Command::Matching(args) => cmd_matching(&args),
        Command::Homology(args) => cmd_homology(&args),
        Command::Chromatic(args) => cmd_chromatic(&args),
        Command::Csf(args) => cmd_csf(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bench(args) => cmd_bench(&args),
    }
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Graph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_algebra(spec: &str) -> Result<GradedAlgebra, String> {
    if let Some(m) = spec.strip_prefix("am:") {
        let m: usize = m
            .parse()
            .map_err(|_| format!("invalid algebra spec `{spec}`: expected am:<m>"))?;
        return GradedAlgebra::am(m).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    GradedAlgebra::from_json(&text).map_err(|e| format!("{spec}: {e}"))
}

/// Files to run: the path itself, or every `*.graph` inside a directory,
/// sorted by name.
fn graph_files(path: &Path) -> Result<Vec<PathBuf>, String> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .map_err(|e| format!("{}: {e}", path.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "graph"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("{}: no .graph files found", path.display()));
    }
    Ok(files)
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON"));
}

fn cmd_info(args: &GraphArgs) -> Result<ExitCode, String> {
    let g = load_graph(&args.graph)?;
    let nbc_states = nbc::nbc_count(&g);
    let full_states = 1u64 << g.n_edges();
    let components = g.component_count(g.full_subset());
    let cycle_rank = g.n_edges() + components - g.n_vertices();
    match args.format {
        Format::Json => emit(&json!({
            "n_vertices": g.n_vertices(),
            "n_edges": g.n_edges(),
            "edges": g.edges(),
            "components": components,
            "cycle_rank": cycle_rank,
            "full_states": full_states,
            "nbc_states": nbc_states,
            "bc_states": full_states - nbc_states as u64,
        })),
        Format::Tsv => {
            println!("key\tvalue");
            println!("n_vertices\t{}", g.n_vertices());
            println!("n_edges\t{}", g.n_edges());
            println!("components\t{components}");
            println!("cycle_rank\t{cycle_rank}");
            println!("full_states\t{full_states}");
            println!("nbc_states\t{nbc_states}");
            println!("bc_states\t{}", full_states - nbc_states as u64);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_nbc(args: &GraphArgs) -> Result<ExitCode, String> {
    let g = load_graph(&args.graph)?;
    let states: Vec<Vec<usize>> = nbc::nbc_sets(&g).map(|s| s.iter().collect()).collect();
    match args.format {
        Format::Json => emit(&json!({
            "count": states.len(),
            "states": states,
        })),
        Format::Tsv => {
            println!("cardinality\tedges");
            for state in &states {
                let edges = state
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                println!("{}\t{edges}", state.len());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_matching(args: &GraphArgs) -> Result<ExitCode, String> {
    let g = load_graph(&args.graph)?;
    let matching = nbc::build_matching(&g);
    let extension = nbc::linear_extension(&matching).map_err(|e| e.to_string())?;
    let pairs: Vec<Value> = matching
        .pairs()
        .iter()
        .map(|&(s, t)| {
            let pivot = (s ^ t).iter().next().expect("pair differs in one edge");
            json!({
                "lower": s.iter().collect::<Vec<_>>(),
                "upper": t.iter().collect::<Vec<_>>(),
                "pivot": pivot,
            })
        })
        .collect();
    match args.format {
        Format::Json => emit(&json!({
            "pairs": pairs,
            "pair_count": matching.len(),
            "linear_extension": extension
                .iter()
                .map(|s| s.iter().collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            println!("section\tposition\tedges\tpartner");
            for (index, &(s, t)) in matching.pairs().iter().enumerate() {
                println!("pair\t{index}\t{}\t{}", render_state(s), render_state(t));
            }
            for (position, &s) in extension.iter().enumerate() {
                println!("extension\t{position}\t{}\t-", render_state(s));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render_state(s: chromahom::EdgeSubset) -> String {
    let edges: Vec<String> = s.iter().map(|e| e.to_string()).collect();
    if edges.is_empty() {
        "-".to_string()
    } else {
        edges.join(",")
    }
}

struct ModelRun {
    summary: HomologySummary,
    states: usize,
    total_dim: usize,
    build_ms: u128,
    snf_ms: u128,
    dump: Option<String>,
}

fn run_model(
    g: &Graph,
    a: &GradedAlgebra,
    model: Model,
    dump: bool,
) -> Result<ModelRun, String> {
    let start = Instant::now();
    let complex = build_complex(g, a, model);
    let build_ms = start.elapsed().as_millis();
    let start = Instant::now();
    let summary = homology(&complex).map_err(|e| e.to_string())?;
    let snf_ms = start.elapsed().as_millis();
    Ok(ModelRun {
        summary,
        states: complex.state_count(),
        total_dim: complex.total_dim(),
        build_ms,
        snf_ms,
        dump: dump.then(|| complex.to_json()),
    })
}

fn summary_value(run: &ModelRun, no_timing: bool) -> Value {
    let mut value = json!({
        "groups": serde_json::to_value(run.summary.as_report().groups).expect("valid"),
        "euler": run.summary.graded_euler_characteristic().to_string(),
        "states": run.states,
        "total_dim": run.total_dim,
    });
    if !no_timing {
        value["timing_ms"] = json!({"build": run.build_ms, "homology": run.snf_ms});
    }
    if let Some(dump) = &run.dump {
        value["complex"] = serde_json::from_str(dump).expect("dump is valid JSON");
    }
    value
}

fn cmd_homology(args: &HomologyArgs) -> Result<ExitCode, String> {
    let g = load_graph(&args.graph)?;
    let a = load_algebra(&args.algebra)?;
    match args.model {
        ModelArg::Full | ModelArg::Nbc => {
            let model = if args.model == ModelArg::Full {
                Model::Full
            } else {
                Model::Nbc
            };
            let run = run_model(&g, &a, model, args.dump)?;
            match args.format {
                Format::Json => emit(&json!({
                    "model": model.as_str(),
                    "homology": summary_value(&run, args.no_timing),
                })),
                Format::Tsv => print!("{}", run.summary.to_tsv()),
            }
            Ok(ExitCode::SUCCESS)
        }
        ModelArg::Both => {
            let full = run_model(&g, &a, Model::Full, args.dump)?;
            let reduced = run_model(&g, &a, Model::Nbc, args.dump)?;
            let diff = summary_diff(&full.summary, &reduced.summary);
            let identical = diff.is_empty();
            match args.format {
                Format::Json => emit(&json!({
                    "full": summary_value(&full, args.no_timing),
                    "nbc": summary_value(&reduced, args.no_timing),
                    "identical": identical,
                    "diff": diff,
                })),
                Format::Tsv => {
                    println!("model\ti\tj\tfree\ttorsion");
                    for (model, run) in [("full", &full), ("nbc", &reduced)] {
                        for line in run.summary.to_tsv().lines().skip(1) {
                            println!("{model}\t{line}");
                        }
                    }
                    println!("identical\t{identical}\t-\t-\t-");
                }
            }
            if identical {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn summary_diff(a: &HomologySummary, b: &HomologySummary) -> Vec<Value> {
    let mut keys: Vec<(usize, usize)> = a.groups().keys().chain(b.groups().keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .filter(|key| a.groups().get(key) != b.groups().get(key))
        .map(|(i, j)| json!({"i": i, "j": j}))
        .collect()
}

fn cmd_chromatic(args: &GraphArgs) -> Result<ExitCode, String> {
    let g = load_graph(&args.graph)?;
    let statesum = symfun::chromatic_statesum(&g);
    let nbc_sum = symfun::chromatic_nbc(&g);
    let delcon = symfun::chromatic_delcon(&g);
    if statesum != nbc_sum || statesum != delcon {
        return Err("chromatic routes disagree; this is an engine bug".to_string());
    }
    match args.format {
        Format::Json => emit(&json!({
            "coefficients": statesum.coefficients(),
            "string": statesum.to_string(),
            "routes_agree": true,
        })),
        Format::Tsv => {
            println!("degree\tcoefficient");
            for (degree, &c) in statesum.coefficients().iter().enumerate() {
                println!("{degree}\t{c}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_csf(args: &GraphArgs) -> Result<ExitCode, String> {
    let g = load_graph(&args.graph)?;
    let statesum = symfun::csf_statesum(&g);
    let nbc_sum = symfun::csf_nbc(&g);
    if statesum != nbc_sum {
        return Err("symmetric-function routes disagree; this is an engine bug".to_string());
    }
    let terms: BTreeMap<String, i64> = statesum
        .terms()
        .iter()
        .map(|(partition, &c)| {
            let key = partition
                .parts()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",");
            (key, c)
        })
        .collect();
    match args.format {
        Format::Json => emit(&json!({
            "terms": terms,
            "string": statesum.to_string(),
        })),
        Format::Tsv => {
            println!("partition\tcoefficient");
            for (partition, c) in &terms {
                println!("{partition}\t{c}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    let a = load_algebra(&args.algebra)?;
    let files = graph_files(&args.graph)?;
    let mut all_passed = true;
    let mut json_graphs = Vec::new();
    for file in &files {
        let g = load_graph(file)?;
        let name = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.display().to_string());
        let reports = run_suite(&g, &a, args.level.into());
        let passed = suite_passed(&reports);
        all_passed &= passed;
        match args.format {
            Format::Tsv => {
                for report in &reports {
                    let status = if report.passed { "PASS" } else { "FAIL" };
                    println!("{status}\t{name}\t{}\t{}", report.name, report.detail);
                }
            }
            Format::Json => {
                json_graphs.push(json!({
                    "graph": name,
                    "passed": passed,
                    "checks": serde_json::to_value(&reports).expect("valid"),
                }));
            }
        }
    }
    if args.format == Format::Json {
        emit(&json!({"passed": all_passed, "graphs": json_graphs}));
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

struct BenchSide {
    states: usize,
    total_dim: usize,
    max_block: (usize, usize),
    build_ms: u128,
    snf_ms: u128,
}

fn bench_model(g: &Graph, a: &GradedAlgebra, model: Model) -> Result<BenchSide, String> {
    let start = Instant::now();
    let complex = build_complex(g, a, model);
    let build_ms = start.elapsed().as_millis();
    let max_block = max_block_of(&complex);
    let start = Instant::now();
    homology(&complex).map_err(|e| e.to_string())?;
    let snf_ms = start.elapsed().as_millis();
    Ok(BenchSide {
        states: complex.state_count(),
        total_dim: complex.total_dim(),
        max_block,
        build_ms,
        snf_ms,
    })
}

fn max_block_of(c: &BasedComplex) -> (usize, usize) {
    let mut best = (0usize, 0usize);
    for &(i, j) in c.dims().keys() {
        if let Some(block) = c.differential(i, j) {
            if block.rows * block.cols > best.0 * best.1 {
                best = (block.rows, block.cols);
            }
        }
    }
    best
}

fn bench_value(side: &BenchSide, no_timing: bool) -> Value {
    let mut value = json!({
        "states": side.states,
        "total_dim": side.total_dim,
        "max_block": [side.max_block.0, side.max_block.1],
    });
    if !no_timing {
        value["build_ms"] = json!(side.build_ms);
        value["homology_ms"] = json!(side.snf_ms);
    }
    value
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode, String> {
    let a = load_algebra(&args.algebra)?;
    let files = graph_files(&args.graph)?;
    let mut rows = Vec::new();
    if args.format == Format::Tsv {
        if args.no_timing {
            println!("graph\tfull_states\tnbc_states\tfull_dim\tnbc_dim");
        } else {
            println!(
                "graph\tfull_states\tnbc_states\tfull_dim\tnbc_dim\tfull_ms\tnbc_ms\tspeedup"
            );
        }
    }
    for file in &files {
        let g = load_graph(file)?;
        let name = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.display().to_string());
        let full = bench_model(&g, &a, Model::Full)?;
        let reduced = bench_model(&g, &a, Model::Nbc)?;
        let full_ms = full.build_ms + full.snf_ms;
        let nbc_ms = reduced.build_ms + reduced.snf_ms;
        let speedup = full_ms as f64 / (nbc_ms.max(1)) as f64;
        match args.format {
            Format::Json => {
                let mut row = json!({
                    "graph": name,
                    "full": bench_value(&full, args.no_timing),
                    "nbc": bench_value(&reduced, args.no_timing),
                });
                if !args.no_timing {
                    row["speedup"] = json!(speedup);
                }
                rows.push(row);
            }
            Format::Tsv => {
                if args.no_timing {
                    println!(
                        "{name}\t{}\t{}\t{}\t{}",
                        full.states, reduced.states, full.total_dim, reduced.total_dim
                    );
                } else {
                    println!(
                        "{name}\t{}\t{}\t{}\t{}\t{full_ms}\t{nbc_ms}\t{speedup:.2}",
                        full.states, reduced.states, full.total_dim, reduced.total_dim
                    );
                }
            }
        }
    }
    if args.format == Format::Json {
        emit(&json!({"results": rows}));
    }
    Ok(ExitCode::SUCCESS)
}
