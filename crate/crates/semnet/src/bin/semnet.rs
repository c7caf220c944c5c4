//! Command-line interface: ingest and validate dumps, compute the closure,
//! induce graphs, and run the analyses. Every subcommand accepts `--out` to
//! write its artifacts plus a MANIFEST.tsv with content digests; outputs are
//! byte-deterministic given (input, flags, seed). Flags can also be set via
//! SEMNET_* environment variables.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use semnet::closure::{
    compute_closure, detect_contradictions, emit_derived_files, load_derived_files, ClosedKb,
};
use semnet::communities::{
    k_clique_percolation, maximal_cliques, run_stats, CommunityAlgorithm,
};
use semnet::error::{Error, Result};
use semnet::graph::{
    decompose_by_relation, edges_by_frequency_range, induce, GraphSpec, InducedGraph, Loops,
    Polarity, ScoreFilter,
};
use semnet::ingest::{
    build_id_registry, dangling_references, Delimiter, RawTables, TableKind,
};
use semnet::metrics::{
    average_degree, average_path_length, clustering_avg, coreness, degree_stats, longest_geodesic,
    path_length_histogram, powerlaw_fit, strong_components, transitivity_global, weak_components,
    GraphForm, ZeroDegreeMode,
};
use semnet::report::{emit_report, manifest_for_files, ReportBundle};
use semnet::rules::{eligible_relations, mine_frequent, Rule, RuleIndex};

#[derive(Parser)]
#[command(
    name = "semnet",
    version,
    about = "Semantic-network analysis toolkit for ConceptNet-4-style dumps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Input directory: a raw dump (eight table files) or a derived-file set.
    #[arg(long, env = "SEMNET_INPUT")]
    input: PathBuf,
    /// Output directory for artifacts and MANIFEST.tsv.
    #[arg(long, env = "SEMNET_OUT")]
    out: Option<PathBuf>,
    /// Field separator of raw dump files: tab, comma, or one character.
    #[arg(long, default_value = "tab", env = "SEMNET_DELIMITER")]
    delimiter: String,
    /// Seed for randomized analyses; echoed into the manifest.
    #[arg(long, default_value_t = 0, env = "SEMNET_SEED")]
    seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0, env = "SEMNET_THREADS")]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScoreArg {
    All,
    Positive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LoopsArg {
    Keep,
    Drop,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolarityArg {
    Neg,
    Pos,
    Both,
}

#[derive(Args)]
struct SpecArgs {
    /// Which assertion scores pass the filter.
    #[arg(long, value_enum, default_value = "positive", env = "SEMNET_SCORE")]
    score: ScoreArg,
    /// Keep or drop self-loops.
    #[arg(long, value_enum, default_value = "keep", env = "SEMNET_LOOPS")]
    loops: LoopsArg,
    /// Frequency-sign class of passing assertions.
    #[arg(long, value_enum, default_value = "both", env = "SEMNET_POLARITY")]
    polarity: PolarityArg,
    /// Inclusive frequency-value range, as lo:hi.
    #[arg(long, default_value = "-10:10", env = "SEMNET_FREQ")]
    freq: String,
    /// Comma-separated relation names (or indices) to admit; default all.
    #[arg(long, env = "SEMNET_RELATIONS")]
    relations: Option<String>,
}

impl SpecArgs {
    fn to_spec(&self, kb: &ClosedKb) -> Result<GraphSpec> {
        let (lo, hi) = self
            .freq
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("--freq wants lo:hi, got {}", self.freq)))?;
        let lo: i64 = lo
            .parse()
            .map_err(|_| Error::Parameter(format!("bad frequency bound {lo:?}")))?;
        let hi: i64 = hi
            .parse()
            .map_err(|_| Error::Parameter(format!("bad frequency bound {hi:?}")))?;
        let relations = match &self.relations {
            None => None,
            Some(list) => {
                let mut set = BTreeSet::new();
                for token in list.split(',').filter(|t| !t.is_empty()) {
                    let index = kb
                        .relations
                        .iter()
                        .position(|r| r.name == token)
                        .map(|i| i as u32)
                        .or_else(|| token.parse::<u32>().ok().filter(|&i| (i as usize) < kb.relations.len()));
                    match index {
                        Some(i) => {
                            set.insert(i);
                        }
                        None => {
                            return Err(Error::Parameter(format!("unknown relation {token:?}")))
                        }
                    }
                }
                Some(set)
            }
        };
        let spec = GraphSpec {
            score: match self.score {
                ScoreArg::All => ScoreFilter::All,
                ScoreArg::Positive => ScoreFilter::Positive,
            },
            loops: match self.loops {
                LoopsArg::Keep => Loops::Keep,
                LoopsArg::Drop => Loops::Drop,
            },
            polarity: match self.polarity {
                PolarityArg::Neg => Polarity::Negative,
                PolarityArg::Pos => Polarity::Positive,
                PolarityArg::Both => Polarity::Both,
            },
            frequency_range: (lo, hi),
            relations,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EdgeListKind {
    Dm,
    Dg,
    Ug,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Lp,
    Multilevel,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a raw dump and print per-table row counts and dangling
    /// reference counts.
    Validate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute the English-language closure and write the derived file set.
    Closure {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write an indicator-distribution report with this file name.
        #[arg(long, env = "SEMNET_REPORT")]
        report: Option<String>,
    },
    /// Induce a filtered graph and write one edge-list file.
    Graph {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
        /// Which edge list to write: the multigraph, the directed graph, or
        /// the undirected graph.
        #[arg(long, value_enum, default_value = "dm", env = "SEMNET_EMIT")]
        emit: EdgeListKind,
    },
    /// Degree statistics, relation decomposition, and frequency ranges.
    Stats {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
        /// How many top-degree concepts to list.
        #[arg(long, default_value_t = 100, env = "SEMNET_TOP")]
        top: usize,
    },
    /// Weakly and strongly connected components.
    Components {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// k-core decomposition.
    Cores {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Shortest-path length distributions and longest geodesics.
    Paths {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Discrete power-law fit of the multigraph degree distribution.
    Fit {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
        /// Bootstrap replicates for the p-value.
        #[arg(long, default_value_t = 100, env = "SEMNET_BOOTSTRAP")]
        bootstrap: usize,
    },
    /// Maximal cliques and their size distribution.
    Cliques {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Overlapping communities by k-clique percolation.
    Percolate {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 3, env = "SEMNET_K")]
        k: usize,
    },
    /// Seeded non-overlapping community detection with run statistics.
    Communities {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "multilevel", env = "SEMNET_ALGO")]
        algo: AlgoArg,
        #[arg(long, default_value_t = 10, env = "SEMNET_RUNS")]
        runs: u64,
    },
    /// Mine relation-triple rules.
    Mine {
        #[command(flatten)]
        common: CommonArgs,
        /// Minimum number of supporting concept triples.
        #[arg(long, default_value_t = 300, env = "SEMNET_MIN_SUPPORT")]
        min_support: u64,
        /// Minimum success rate.
        #[arg(long, default_value_t = 0.05, env = "SEMNET_MIN_RATIO")]
        min_ratio: f64,
        /// Relations need this many positive-score assertions to enter the
        /// mining at all.
        #[arg(long, default_value_t = 300, env = "SEMNET_MIN_RELATION_COUNT")]
        min_relation_count: u64,
        /// Evaluate a single rule X,Y,Z (relation names) instead of mining.
        #[arg(long, env = "SEMNET_RULE")]
        rule: Option<String>,
        /// With --rule, write every supporting triple and its outcome here.
        #[arg(long, env = "SEMNET_WITNESSES")]
        witnesses: Option<String>,
        /// Require positive polarity on conclusion edges (experimental).
        #[arg(long, env = "SEMNET_CONCLUSION_POSITIVE_POLARITY")]
        conclusion_positive_polarity: bool,
    },
    /// Run the whole pipeline and emit every in-scope report table.
    Reproduce {
        #[command(flatten)]
        common: CommonArgs,
        /// Also compute all-pairs shortest-path tables (slow on full dumps).
        #[arg(long, env = "SEMNET_PATHS")]
        paths: bool,
        /// Bootstrap replicates for power-law p-values.
        #[arg(long, default_value_t = 100, env = "SEMNET_BOOTSTRAP")]
        bootstrap: usize,
        /// Runs per community algorithm row.
        #[arg(long, default_value_t = 10, env = "SEMNET_RUNS")]
        runs: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Parameter(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let threads = match &cli.command {
        Command::Validate { common }
        | Command::Closure { common, .. }
        | Command::Graph { common, .. }
        | Command::Stats { common, .. }
        | Command::Components { common, .. }
        | Command::Cores { common, .. }
        | Command::Paths { common, .. }
        | Command::Fit { common, .. }
        | Command::Cliques { common, .. }
        | Command::Percolate { common, .. }
        | Command::Communities { common, .. }
        | Command::Mine { common, .. }
        | Command::Reproduce { common, .. } => common.threads,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Parameter(e.to_string()))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { common } => cmd_validate(&common),
        Command::Closure { common, report } => cmd_closure(&common, report.as_deref()),
        Command::Graph { common, spec, emit } => cmd_graph(&common, &spec, emit),
        Command::Stats { common, spec, top } => cmd_stats(&common, &spec, top),
        Command::Components { common, spec } => cmd_components(&common, &spec),
        Command::Cores { common, spec } => cmd_cores(&common, &spec),
        Command::Paths { common, spec } => cmd_paths(&common, &spec),
        Command::Fit { common, spec, bootstrap } => cmd_fit(&common, &spec, bootstrap),
        Command::Cliques { common, spec } => cmd_cliques(&common, &spec),
        Command::Percolate { common, spec, k } => cmd_percolate(&common, &spec, k),
        Command::Communities { common, spec, algo, runs } => {
            cmd_communities(&common, &spec, algo, runs)
        }
        Command::Mine {
            common,
            min_support,
            min_ratio,
            min_relation_count,
            rule,
            witnesses,
            conclusion_positive_polarity,
        } => cmd_mine(
            &common,
            min_support,
            min_ratio,
            min_relation_count,
            rule.as_deref(),
            witnesses.as_deref(),
            conclusion_positive_polarity,
        ),
        Command::Reproduce { common, paths, bootstrap, runs } => {
            cmd_reproduce(&common, paths, bootstrap, runs)
        }
    }
}

/// Loads a closure from either a raw dump directory or a derived-file set.
fn load_kb(common: &CommonArgs) -> Result<ClosedKb> {
    let input = &common.input;
    if input.join(TableKind::Assertion.file_name()).exists() {
        let delimiter = Delimiter::from_flag(&common.delimiter)?;
        let tables = RawTables::load_dir(input, delimiter)?;
        let registry = build_id_registry(&tables)?;
        compute_closure(&tables, &registry)
    } else if input.join("assertions/ConceptNet4Assertions.txt").exists() {
        load_derived_files(input)
    } else {
        Err(Error::Parameter(format!(
            "{}: neither a raw dump nor a derived-file set",
            input.display()
        )))
    }
}

fn finish(common: &CommonArgs, bundle: ReportBundle) -> Result<()> {
    if let Some(out) = &common.out {
        emit_report(&bundle, out, common.seed)?;
    }
    Ok(())
}

fn cmd_validate(common: &CommonArgs) -> Result<()> {
    let delimiter = Delimiter::from_flag(&common.delimiter)?;
    let tables = RawTables::load_dir(&common.input, delimiter)?;
    let registry = build_id_registry(&tables)?;
    let mut bundle = ReportBundle::new();

    println!("table\trows");
    let mut count_rows = Vec::new();
    for kind in TableKind::ALL {
        let rows = tables.row_count(kind);
        println!("{kind}\t{rows}");
        count_rows.push(vec![kind.to_string(), rows.to_string()]);
    }
    bundle.insert_table("validate_counts.tsv", &["table", "rows"], count_rows);

    println!("\ntable\tfield\tdangling");
    let mut dangle_rows = Vec::new();
    for d in dangling_references(&tables, &registry) {
        println!("{}\t{}\t{}", d.table, d.field, d.dangling);
        dangle_rows.push(vec![d.table.to_string(), d.field.to_string(), d.dangling.to_string()]);
    }
    bundle.insert_table(
        "validate_dangling.tsv",
        &["table", "field", "dangling"],
        dangle_rows,
    );
    finish(common, bundle)
}

fn indicator_report(kb: &ClosedKb) -> Vec<u8> {
    let mut out = b"indicator\tclass\tcount\n".to_vec();
    for (name, classes, pick) in [
        ("frame", 5usize, 0usize),
        ("surface", 16, 1),
        ("raw", 38, 2),
        ("score", 10, 3),
    ] {
        let hist = kb.indicator_histogram(
            |a| match pick {
                0 => a.frame_indicator,
                1 => a.surface_indicator,
                2 => a.raw_indicator,
                _ => a.score_indicator,
            },
            classes,
        );
        for (class, count) in hist.iter().enumerate() {
            out.extend_from_slice(format!("{name}\t{class}\t{count}\n").as_bytes());
        }
    }
    out
}

fn cmd_closure(common: &CommonArgs, report: Option<&str>) -> Result<()> {
    let out = common.out.clone().ok_or_else(|| {
        Error::Parameter("closure needs --out for the derived files".into())
    })?;
    let delimiter = Delimiter::from_flag(&common.delimiter)?;
    let tables = RawTables::load_dir(&common.input, delimiter)?;
    let registry = build_id_registry(&tables)?;
    let kb = compute_closure(&tables, &registry)?;
    let mut files = emit_derived_files(&kb, &out)?;
    if let Some(report_name) = report {
        let path = out.join(report_name);
        std::fs::write(&path, indicator_report(&kb))?;
        files.push(path);
    }
    manifest_for_files(&out, &files, common.seed)?;
    println!("assertions\t{}", kb.assertions.len());
    println!("concepts\t{} (input {})", kb.concepts.len(), kb.input_concepts);
    println!("relations\t{}", kb.relations.len());
    println!("frequencies\t{}", kb.frequencies.len());
    println!("frames\t{}", kb.frames.len());
    println!("surface_forms\t{} (input {})", kb.surface_forms.len(), kb.input_surface_forms);
    println!("raw_assertions\t{}", kb.raw_assertions.len());
    println!("sentences\t{}", kb.sentences.len());
    println!("passes\t{}", kb.passes);
    for d in &kb.diagnostics {
        println!("diagnostic\t{d}");
    }
    Ok(())
}

fn edge_list_bytes(g: &InducedGraph, kind: EdgeListKind) -> Vec<u8> {
    let mut out = Vec::new();
    match kind {
        EdgeListKind::Dm => {
            for &(u, v, a) in &g.multi {
                out.extend_from_slice(format!("{u} {v} {a}\n").as_bytes());
            }
        }
        EdgeListKind::Dg | EdgeListKind::Ug => {
            let edges = if matches!(kind, EdgeListKind::Dg) {
                &g.directed
            } else {
                &g.undirected
            };
            for ((u, v), labels) in edges {
                out.extend_from_slice(format!("{u} {v} {}", labels.len()).as_bytes());
                for a in labels {
                    out.extend_from_slice(format!(" {a}").as_bytes());
                }
                out.push(b'\n');
            }
        }
    }
    out
}

fn cmd_graph(common: &CommonArgs, spec_args: &SpecArgs, emit: EdgeListKind) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    println!("vertices\t{}", g.vertex_count);
    println!("multigraph_edges\t{}", g.multi_edge_count());
    println!("directed_edges\t{}", g.directed_edge_count());
    println!("undirected_edges\t{}", g.undirected_edge_count());
    println!("isolated_vertices\t{}", g.isolated_vertex_count());
    let name = match emit {
        EdgeListKind::Dm => "ConceptNet4EdgesDM.txt",
        EdgeListKind::Dg => "ConceptNet4EdgesDG.txt",
        EdgeListKind::Ug => "ConceptNet4EdgesUG.txt",
    };
    let mut bundle = ReportBundle::new();
    bundle.insert(name, edge_list_bytes(&g, emit));
    finish(common, bundle)
}

fn cmd_stats(common: &CommonArgs, spec_args: &SpecArgs, top: usize) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let stats = degree_stats(&g, GraphForm::Multigraph);
    let mut bundle = ReportBundle::new();

    bundle.insert_tsv2(
        "table_degree_distribution.tsv",
        ("degree", "concepts"),
        stats.histogram(),
    );
    bundle.insert_table(
        "table_top_degree.tsv",
        &["rank", "concept_index", "concept", "total_degree"],
        stats.top_k(top).iter().enumerate().map(|(rank, &(v, d))| {
            vec![
                (rank + 1).to_string(),
                v.to_string(),
                kb.concept_text(v).to_string(),
                d.to_string(),
            ]
        }),
    );

    let mut avg_rows = Vec::new();
    for (form, name) in [
        (GraphForm::Multigraph, "multigraph"),
        (GraphForm::Directed, "directed"),
        (GraphForm::Undirected, "undirected"),
    ] {
        let all = average_degree(&g, form, false)?;
        let non_isolated = average_degree(&g, form, true)?;
        println!("average_degree_{name}\t{all:.6}\t({non_isolated:.6} excluding isolated)");
        avg_rows.push(vec![name.to_string(), format!("{all:.6}"), format!("{non_isolated:.6}")]);
    }
    bundle.insert_table(
        "table_average_degree.tsv",
        &["form", "average_degree", "average_degree_non_isolated"],
        avg_rows,
    );

    bundle.insert_table(
        "table_relation_decomposition.tsv",
        &["index", "id", "name", "edges", "edges_negative", "edges_positive", "self_loops", "self_loops_negative", "self_loops_positive"],
        decompose_by_relation(&kb, spec.score).iter().map(|r| {
            vec![
                r.relation.to_string(),
                kb.relations[r.relation as usize].id.to_string(),
                kb.relations[r.relation as usize].name.clone(),
                r.edges.to_string(),
                r.edges_negative.to_string(),
                r.edges_positive.to_string(),
                r.self_loops.to_string(),
                r.self_loops_negative.to_string(),
                r.self_loops_positive.to_string(),
            ]
        }),
    );

    let ranges: Vec<(i64, i64)> = (0..11).map(|hi| (-10, hi - 10)).chain((0..11).map(|lo| (lo, 10))).collect();
    bundle.insert_table(
        "table_frequency_ranges.tsv",
        &["lo", "hi", "multigraph", "multigraph_no_loops", "directed", "directed_no_loops", "undirected", "undirected_no_loops"],
        edges_by_frequency_range(&kb, &ranges)?.iter().map(|c| {
            vec![
                c.range.0.to_string(),
                c.range.1.to_string(),
                c.multi.to_string(),
                c.multi_no_loops.to_string(),
                c.directed.to_string(),
                c.directed_no_loops.to_string(),
                c.undirected.to_string(),
                c.undirected_no_loops.to_string(),
            ]
        }),
    );

    println!("vertices\t{}", g.vertex_count);
    println!("isolated\t{}", g.isolated_vertex_count());
    if let Some(&(v, d)) = stats.top_k(1).first() {
        println!("top_degree\t{}\t{}", kb.concept_text(v), d);
    }
    finish(common, bundle)
}

fn cmd_components(common: &CommonArgs, spec_args: &SpecArgs) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let wcc = weak_components(&g);
    let scc = strong_components(&g);
    println!("weak_components\t{}\tlargest\t{}", wcc.component_count, wcc.largest_size());
    println!("strong_components\t{}\tlargest\t{}", scc.component_count, scc.largest_size());
    let mut bundle = ReportBundle::new();
    bundle.insert_tsv2("table_wcc_sizes.tsv", ("size", "components"), wcc.size_distribution());
    bundle.insert_tsv2("table_scc_sizes.tsv", ("size", "components"), scc.size_distribution());
    finish(common, bundle)
}

fn cmd_cores(common: &CommonArgs, spec_args: &SpecArgs) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let filtration = coreness(&g, spec.loops);
    println!("max_coreness\t{}", filtration.max_coreness());
    let mut bundle = ReportBundle::new();
    bundle.insert_tsv2(
        "table_coreness_distribution.tsv",
        ("coreness", "vertices"),
        filtration.histogram(),
    );
    bundle.insert_table(
        "table_core_decomposition.tsv",
        &["k", "vertices", "multigraph_edges", "multigraph_avg_degree", "directed_edges", "directed_avg_degree", "undirected_edges", "undirected_avg_degree"],
        filtration.levels.iter().map(|l| {
            vec![
                l.k.to_string(),
                l.vertices.to_string(),
                l.multi_edges.to_string(),
                format!("{:.6}", l.multi_avg_degree),
                l.directed_edges.to_string(),
                format!("{:.6}", l.directed_avg_degree),
                l.undirected_edges.to_string(),
                format!("{:.6}", l.undirected_avg_degree),
            ]
        }),
    );
    finish(common, bundle)
}

fn geodesic_row(kb: &ClosedKb, g: &InducedGraph, directed: bool) -> Result<Vec<String>> {
    let geo = longest_geodesic(g, directed)?;
    let path: Vec<String> = geo.path.iter().map(|&v| kb.concept_text(v).to_string()).collect();
    Ok(vec![
        if directed { "directed" } else { "undirected" }.to_string(),
        geo.length.to_string(),
        path.join(" -> "),
    ])
}

fn cmd_paths(common: &CommonArgs, spec_args: &SpecArgs) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let mut bundle = ReportBundle::new();
    let mut geodesics = Vec::new();
    for directed in [true, false] {
        let label = if directed { "directed" } else { "undirected" };
        let hist = path_length_histogram(&g, directed);
        let mut rows: Vec<(String, String)> = hist
            .counts
            .iter()
            .map(|(d, c)| (d.to_string(), c.to_string()))
            .collect();
        rows.push(("inf".into(), hist.unreachable.to_string()));
        bundle.insert_tsv2(
            format!("table_path_lengths_{label}.tsv"),
            ("length", "pairs"),
            rows,
        );
        match average_path_length(&hist) {
            Ok(avg) => println!("average_path_length_{label}\t{avg:.6}"),
            Err(e) => println!("average_path_length_{label}\tundefined ({e})"),
        }
        if let Ok(row) = geodesic_row(&kb, &g, directed) {
            println!("longest_geodesic_{label}\t{}", row[1]);
            geodesics.push(row);
        }
    }
    bundle.insert_table(
        "table_longest_geodesics.tsv",
        &["orientation", "length", "path"],
        geodesics,
    );
    finish(common, bundle)
}

fn cmd_fit(common: &CommonArgs, spec_args: &SpecArgs, bootstrap: usize) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let stats = degree_stats(&g, GraphForm::Multigraph);
    let samples: Vec<u64> = stats
        .total_degrees()
        .into_iter()
        .filter(|&d| d > 0)
        .map(u64::from)
        .collect();
    let fit = powerlaw_fit(&samples, bootstrap, common.seed)?;
    println!("alpha\t{:.5}", fit.alpha);
    println!("xmin\t{}", fit.xmin);
    println!("loglik\t{:.2}", fit.loglik);
    println!("ks_statistic\t{:.5}", fit.ks_statistic);
    println!("p_value\t{:.4}\t({} replicates)", fit.p_value, fit.bootstrap_n);
    let mut bundle = ReportBundle::new();
    bundle.insert_table(
        "table_powerlaw.tsv",
        &["alpha", "xmin", "loglik", "ks_statistic", "p_value", "bootstrap_n", "mean", "variance", "std_dev", "skewness", "kurtosis"],
        [vec![
            format!("{:.5}", fit.alpha),
            fit.xmin.to_string(),
            format!("{:.2}", fit.loglik),
            format!("{:.5}", fit.ks_statistic),
            format!("{:.4}", fit.p_value),
            fit.bootstrap_n.to_string(),
            format!("{:.3}", fit.moments.mean),
            format!("{:.3}", fit.moments.variance),
            format!("{:.3}", fit.moments.std_dev),
            format!("{:.3}", fit.moments.skewness),
            format!("{:.3}", fit.moments.kurtosis),
        ]],
    );
    finish(common, bundle)
}

fn cmd_cliques(common: &CommonArgs, spec_args: &SpecArgs) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let cliques = maximal_cliques(&g);
    println!("maximal_cliques_size_3_plus\t{}", cliques.count_at_least_3());
    let mut bundle = ReportBundle::new();
    bundle.insert_tsv2(
        "table_cliques_distribution.tsv",
        ("size", "cliques"),
        cliques
            .size_distribution()
            .into_iter()
            .filter(|&(size, _)| size >= 3),
    );
    if let Some(largest) = cliques.largest() {
        println!("largest_clique_size\t{}", largest.len());
        let mut text = String::new();
        for &v in largest {
            text.push_str(&format!("{v}\t{}\n", kb.concept_text(v)));
        }
        bundle.insert("maximum_clique.tsv", text.into_bytes());
    }
    finish(common, bundle)
}

fn cmd_percolate(common: &CommonArgs, spec_args: &SpecArgs, k: usize) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let cover = k_clique_percolation(&g, k)?;
    println!("communities\t{}", cover.community_count());
    let mut bundle = ReportBundle::new();
    let mut membership_lines = String::new();
    for (i, community) in cover.communities.iter().enumerate() {
        for &v in community {
            membership_lines.push_str(&format!("{i}\t{v}\n"));
        }
    }
    bundle.insert("communities_cover.tsv", membership_lines.into_bytes());
    bundle.insert_tsv2(
        "table_percolation_sizes.tsv",
        ("community_size", "communities"),
        cover.size_distribution(),
    );
    bundle.insert_tsv2(
        "table_percolation_membership.tsv",
        ("communities", "concepts"),
        cover.membership_distribution(&g.non_isolated()),
    );
    finish(common, bundle)
}

fn cmd_communities(
    common: &CommonArgs,
    spec_args: &SpecArgs,
    algo: AlgoArg,
    runs: u64,
) -> Result<()> {
    let kb = load_kb(common)?;
    let spec = spec_args.to_spec(&kb)?;
    let g = induce(&kb, &spec)?;
    let adj = g.undirected_adjacency();
    let algorithm = match algo {
        AlgoArg::Lp => CommunityAlgorithm::LabelPropagation,
        AlgoArg::Multilevel => CommunityAlgorithm::Multilevel,
    };
    let stats = run_stats(algorithm, &adj, runs, common.seed)?;
    println!("algorithm\t{}", algorithm.name());
    println!(
        "communities\tavg {:.3}\tmin {}\tmax {}",
        stats.communities_avg, stats.communities_min, stats.communities_max
    );
    println!(
        "modularity\tavg {:.6}\tmin {:.6}\tmax {:.6}",
        stats.modularity_avg, stats.modularity_min, stats.modularity_max
    );
    let mut bundle = ReportBundle::new();
    bundle.insert_table(
        "table_community_runs.tsv",
        &["algorithm", "runs", "kappa_avg", "kappa_min", "kappa_max", "mu_avg", "mu_min", "mu_max"],
        [vec![
            algorithm.name().to_string(),
            runs.to_string(),
            format!("{:.3}", stats.communities_avg),
            stats.communities_min.to_string(),
            stats.communities_max.to_string(),
            format!("{:.6}", stats.modularity_avg),
            format!("{:.6}", stats.modularity_min),
            format!("{:.6}", stats.modularity_max),
        ]],
    );
    // Partition of run 0, one line per vertex.
    let partition = algorithm.run(&adj, common.seed, 0)?;
    let mut lines = String::new();
    for (v, &c) in partition.labels.iter().enumerate() {
        lines.push_str(&format!("{c}\t{v}\n"));
    }
    bundle.insert("communities_partition.tsv", lines.into_bytes());
    finish(common, bundle)
}

fn parse_rule(kb: &ClosedKb, token: &str) -> Result<Rule> {
    let names: Vec<&str> = token.split(',').collect();
    if names.len() != 3 {
        return Err(Error::Parameter(format!("--rule wants X,Y,Z, got {token:?}")));
    }
    let index_of = |name: &str| -> Result<u32> {
        kb.relations
            .iter()
            .position(|r| r.name == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::Parameter(format!("unknown relation {name:?}")))
    };
    Ok(Rule {
        x: index_of(names[0])?,
        y: index_of(names[1])?,
        z: index_of(names[2])?,
    })
}

fn cmd_mine(
    common: &CommonArgs,
    min_support: u64,
    min_ratio: f64,
    min_relation_count: u64,
    rule: Option<&str>,
    witnesses: Option<&str>,
    conclusion_positive_polarity: bool,
) -> Result<()> {
    let kb = load_kb(common)?;
    let index = RuleIndex::build(&kb, conclusion_positive_polarity)?;
    let mut bundle = ReportBundle::new();
    if let Some(token) = rule {
        let rule = parse_rule(&kb, token)?;
        let stats = index.rule_stats(rule);
        println!(
            "{},{},{}\tratio {:.6}\tsuccesses {}\tsupport {}",
            kb.relation_name(rule.x),
            kb.relation_name(rule.y),
            kb.relation_name(rule.z),
            stats.ratio(),
            stats.successes,
            stats.support
        );
        if let Some(name) = witnesses {
            let mut text = String::from("a\tb\tc\toutcome\n");
            index.scan_rule(rule, |a, b, c, success| {
                text.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    kb.concept_text(a),
                    kb.concept_text(b),
                    kb.concept_text(c),
                    if success { "success" } else { "failure" }
                ));
            });
            bundle.insert(name, text.into_bytes());
        }
    } else {
        let eligible = eligible_relations(&kb, min_relation_count);
        let mined = mine_frequent(&index, &eligible, min_support, min_ratio);
        println!("frequent_rules\t{}", mined.len());
        bundle.insert_table(
            "table_rules_frequent.tsv",
            &["relation_x", "relation_y", "relation_z", "ratio", "successes", "support"],
            mined.iter().map(|s| {
                vec![
                    kb.relation_name(s.rule.x).to_string(),
                    kb.relation_name(s.rule.y).to_string(),
                    kb.relation_name(s.rule.z).to_string(),
                    format!("{:.6}", s.ratio()),
                    s.successes.to_string(),
                    s.support.to_string(),
                ]
            }),
        );
    }
    finish(common, bundle)
}

fn cmd_reproduce(common: &CommonArgs, paths: bool, bootstrap: usize, runs: u64) -> Result<()> {
    let out = common
        .out
        .clone()
        .ok_or_else(|| Error::Parameter("reproduce needs --out".into()))?;
    let kb = load_kb(common)?;
    let mut bundle = ReportBundle::new();
    semnet_reproduce::emit_all(&kb, &mut bundle, paths, bootstrap, runs, common.seed)?;
    let derived = emit_derived_files(&kb, &out.join("derived"))?;
    let mut files = emit_report(&bundle, &out, common.seed)?;
    files.extend(derived);
    files.retain(|f| f.file_name().is_none_or(|n| n != "MANIFEST.tsv"));
    manifest_for_files(&out, &files, common.seed)?;
    println!("artifacts\t{}", files.len());
    Ok(())
}

/// Table emission for the one-shot reproduction driver.
mod semnet_reproduce {
    use super::*;
    use semnet::closure::Index;

    pub fn emit_all(
        kb: &ClosedKb,
        bundle: &mut ReportBundle,
        paths: bool,
        bootstrap: usize,
        runs: u64,
        seed: u64,
    ) -> Result<()> {
        closure_tables(kb, bundle);
        edge_tables(kb, bundle)?;
        degree_tables(kb, bundle)?;
        fit_tables(kb, bundle, bootstrap, seed)?;
        component_tables(kb, bundle)?;
        core_tables(kb, bundle)?;
        clique_tables(kb, bundle)?;
        percolation_tables(kb, bundle)?;
        community_tables(kb, bundle, runs, seed)?;
        rule_tables(kb, bundle)?;
        if paths {
            path_tables(kb, bundle)?;
        }
        Ok(())
    }

    fn polarity_specs() -> [(&'static str, Polarity); 3] {
        [
            ("negative", Polarity::Negative),
            ("positive", Polarity::Positive),
            ("both", Polarity::Both),
        ]
    }

    fn spec_for(score: ScoreFilter, loops: Loops, polarity: Polarity) -> GraphSpec {
        GraphSpec {
            score,
            loops,
            polarity,
            frequency_range: (-10, 10),
            relations: None,
        }
    }

    fn closure_tables(kb: &ClosedKb, bundle: &mut ReportBundle) {
        bundle.insert_tsv2(
            "table_frame_indicator.tsv",
            ("indicator", "entries"),
            kb.indicator_histogram(|a| a.frame_indicator, 5)
                .into_iter()
                .enumerate(),
        );
        bundle.insert_tsv2(
            "table_surface_indicator.tsv",
            ("indicator", "entries"),
            kb.indicator_histogram(|a| a.surface_indicator, 16)
                .into_iter()
                .enumerate(),
        );
        bundle.insert_tsv2(
            "table_raw_indicator.tsv",
            ("indicator", "entries"),
            kb.indicator_histogram(|a| a.raw_indicator, 38)
                .into_iter()
                .enumerate(),
        );
        bundle.insert_tsv2(
            "table_score_indicator.tsv",
            ("indicator", "entries"),
            kb.indicator_histogram(|a| a.score_indicator, 10)
                .into_iter()
                .enumerate(),
        );
        bundle.insert_tsv2(
            "table_half_discrepancy.tsv",
            ("h", "entries"),
            kb.half_discrepancy_histogram(),
        );

        // Positive / non-positive score split per table, over the chain
        // assertion -> best raw -> sentence.
        let mut rows = Vec::new();
        let split = |values: Vec<i64>| {
            let positive = values.iter().filter(|&&s| s > 0).count();
            (positive, values.len() - positive, values.len())
        };
        let (p, n, t) = split(kb.assertions.iter().map(|a| a.score).collect());
        rows.push(vec!["assertions".into(), p.to_string(), n.to_string(), t.to_string()]);
        let raw_scores: Vec<i64> = kb
            .assertions
            .iter()
            .filter_map(|a| a.raw.index())
            .map(|r| kb.raw_assertions[r as usize].score)
            .collect();
        let (p, n, t) = split(raw_scores);
        rows.push(vec!["raw_assertions".into(), p.to_string(), n.to_string(), t.to_string()]);
        let sentence_scores: Vec<i64> = kb
            .assertions
            .iter()
            .filter_map(|a| a.raw.index())
            .map(|r| kb.sentences[kb.raw_assertions[r as usize].sentence as usize].score)
            .collect();
        let (p, n, t) = split(sentence_scores);
        rows.push(vec!["sentences".into(), p.to_string(), n.to_string(), t.to_string()]);
        bundle.insert_table(
            "table_score_signs.tsv",
            &["table", "positive", "non_positive", "total"],
            rows,
        );

        bundle.insert_table(
            "contradictions.tsv",
            &["concept1", "concept2", "relation", "affirming_assertion", "negating_assertion"],
            detect_contradictions(kb).iter().map(|c| {
                vec![
                    kb.concept_text(c.concept1).to_string(),
                    kb.concept_text(c.concept2).to_string(),
                    kb.relation_name(c.relation).to_string(),
                    kb.assertions[c.affirming as usize].id.to_string(),
                    kb.assertions[c.negating as usize].id.to_string(),
                ]
            }),
        );
    }

    fn edge_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        let mut rows = Vec::new();
        for (score, score_name) in [(ScoreFilter::All, "all"), (ScoreFilter::Positive, "positive")] {
            for (loops, loops_name) in [(Loops::Drop, "drop"), (Loops::Keep, "keep")] {
                for (polarity_name, polarity) in polarity_specs() {
                    let g = induce(kb, &spec_for(score, loops, polarity))?;
                    rows.push(vec![
                        score_name.to_string(),
                        loops_name.to_string(),
                        polarity_name.to_string(),
                        g.multi_edge_count().to_string(),
                        g.directed_edge_count().to_string(),
                        g.undirected_edge_count().to_string(),
                        g.isolated_vertex_count().to_string(),
                    ]);
                }
            }
        }
        bundle.insert_table(
            "table_edges_isolated.tsv",
            &["score", "loops", "polarity", "multigraph", "directed", "undirected", "isolated"],
            rows,
        );

        for (score, score_name) in [(ScoreFilter::All, "all"), (ScoreFilter::Positive, "positive")] {
            bundle.insert_table(
                format!("table_relation_decomposition_{score_name}.tsv"),
                &["index", "id", "name", "edges", "edges_negative", "edges_positive", "self_loops", "self_loops_negative", "self_loops_positive"],
                decompose_by_relation(kb, score).iter().map(|r| {
                    vec![
                        r.relation.to_string(),
                        kb.relations[r.relation as usize].id.to_string(),
                        kb.relations[r.relation as usize].name.clone(),
                        r.edges.to_string(),
                        r.edges_negative.to_string(),
                        r.edges_positive.to_string(),
                        r.self_loops.to_string(),
                        r.self_loops_negative.to_string(),
                        r.self_loops_positive.to_string(),
                    ]
                }),
            );
        }

        let ranges: Vec<(i64, i64)> =
            (0..11).map(|hi| (-10, hi - 10)).chain((0..11).map(|lo| (lo, 10))).collect();
        bundle.insert_table(
            "table_frequency_ranges.tsv",
            &["lo", "hi", "multigraph", "multigraph_no_loops", "directed", "directed_no_loops", "undirected", "undirected_no_loops"],
            edges_by_frequency_range(kb, &ranges)?.iter().map(|c| {
                vec![
                    c.range.0.to_string(),
                    c.range.1.to_string(),
                    c.multi.to_string(),
                    c.multi_no_loops.to_string(),
                    c.directed.to_string(),
                    c.directed_no_loops.to_string(),
                    c.undirected.to_string(),
                    c.undirected_no_loops.to_string(),
                ]
            }),
        );
        Ok(())
    }

    fn degree_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        let g = induce(kb, &spec_for(ScoreFilter::Positive, Loops::Keep, Polarity::Both))?;
        let stats = degree_stats(&g, GraphForm::Multigraph);
        bundle.insert_tsv2(
            "table_degree_distribution.tsv",
            ("degree", "concepts"),
            stats.histogram(),
        );
        bundle.insert_table(
            "table_top_degree.tsv",
            &["rank", "concept_index", "concept", "total_degree"],
            stats.top_k(100).iter().enumerate().map(|(rank, &(v, d))| {
                vec![
                    (rank + 1).to_string(),
                    v.to_string(),
                    kb.concept_text(v).to_string(),
                    d.to_string(),
                ]
            }),
        );

        let mut rows = Vec::new();
        let mut overview = Vec::new();
        for (score, score_name) in [(ScoreFilter::All, "all"), (ScoreFilter::Positive, "positive")] {
            for (loops, loops_name) in [(Loops::Drop, "drop"), (Loops::Keep, "keep")] {
                for (polarity_name, polarity) in polarity_specs() {
                    let g = induce(kb, &spec_for(score, loops, polarity))?;
                    for (form, form_name) in [
                        (GraphForm::Multigraph, "multigraph"),
                        (GraphForm::Directed, "directed"),
                        (GraphForm::Undirected, "undirected"),
                    ] {
                        let all = average_degree(&g, form, false)?;
                        let non_isolated = average_degree(&g, form, true).unwrap_or(f64::NAN);
                        rows.push(vec![
                            score_name.to_string(),
                            loops_name.to_string(),
                            polarity_name.to_string(),
                            form_name.to_string(),
                            format!("{all:.6}"),
                            format!("{non_isolated:.6}"),
                        ]);
                    }

                    // Vertices with non-zero in/out degree; degrees reflect
                    // the loop filter of this graph variant.
                    let stats = degree_stats(&g, GraphForm::Multigraph);
                    let mut loop_count = vec![0u32; g.vertex_count];
                    for &(u, v, _) in &g.multi {
                        if u == v {
                            loop_count[u as usize] += 1;
                        }
                    }
                    let (mut nz_in, mut nz_out, mut nz_both, mut loops_at, mut loops_only) =
                        (0u64, 0u64, 0u64, 0u64, 0u64);
                    for (v, &loops_here) in loop_count.iter().enumerate() {
                        let (i, o) = (stats.in_degrees[v], stats.out_degrees[v]);
                        nz_in += u64::from(i > 0);
                        nz_out += u64::from(o > 0);
                        nz_both += u64::from(i > 0 && o > 0);
                        loops_at += u64::from(loops_here > 0);
                        // Only incident edges are its own loops.
                        loops_only +=
                            u64::from(loops_here > 0 && i == loops_here && o == loops_here);
                    }
                    overview.push(vec![
                        score_name.to_string(),
                        loops_name.to_string(),
                        polarity_name.to_string(),
                        nz_in.to_string(),
                        nz_out.to_string(),
                        nz_both.to_string(),
                        loops_at.to_string(),
                        loops_only.to_string(),
                    ]);
                }
            }
        }
        bundle.insert_table(
            "table_average_degree.tsv",
            &["score", "loops", "polarity", "form", "average", "average_non_isolated"],
            rows,
        );
        bundle.insert_table(
            "table_degree_overview.tsv",
            &["score", "loops", "polarity", "nonzero_in", "nonzero_out", "nonzero_in_and_out", "loop_vertices", "loop_only_vertices"],
            overview,
        );
        Ok(())
    }

    fn fit_tables(kb: &ClosedKb, bundle: &mut ReportBundle, bootstrap: usize, seed: u64) -> Result<()> {
        let mut rows = Vec::new();
        for (name, polarity) in polarity_specs() {
            let g = induce(kb, &spec_for(ScoreFilter::Positive, Loops::Keep, polarity))?;
            let samples: Vec<u64> = degree_stats(&g, GraphForm::Multigraph)
                .total_degrees()
                .into_iter()
                .filter(|&d| d > 0)
                .map(u64::from)
                .collect();
            match powerlaw_fit(&samples, bootstrap, seed) {
                Ok(fit) => rows.push(vec![
                    name.to_string(),
                    format!("{:.5}", fit.alpha),
                    fit.xmin.to_string(),
                    format!("{:.2}", fit.loglik),
                    format!("{:.5}", fit.ks_statistic),
                    format!("{:.4}", fit.p_value),
                    fit.bootstrap_n.to_string(),
                    format!("{:.3}", fit.moments.mean),
                    format!("{:.3}", fit.moments.variance),
                    format!("{:.3}", fit.moments.std_dev),
                    format!("{:.3}", fit.moments.skewness),
                    format!("{:.3}", fit.moments.kurtosis),
                ]),
                Err(e) => rows.push(vec![
                    name.to_string(),
                    format!("error: {e}"),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]),
            }
        }
        bundle.insert_table(
            "table_powerlaw.tsv",
            &["polarity", "alpha", "xmin", "loglik", "ks_statistic", "p_value", "bootstrap_n", "mean", "variance", "std_dev", "skewness", "kurtosis"],
            rows,
        );
        Ok(())
    }

    fn component_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        let mut transitivity_rows = Vec::new();
        for (name, polarity) in polarity_specs() {
            let g = induce(kb, &spec_for(ScoreFilter::Positive, Loops::Drop, polarity))?;
            let wcc = weak_components(&g);
            let scc = strong_components(&g);
            bundle.insert_tsv2(
                format!("table_wcc_sizes_{name}.tsv"),
                ("size", "components"),
                wcc.size_distribution(),
            );
            bundle.insert_tsv2(
                format!("table_scc_sizes_{name}.tsv"),
                ("size", "components"),
                scc.size_distribution(),
            );
            let nan = clustering_avg(&g, ZeroDegreeMode::Nan)
                .map(|v| format!("{v:.18}"))
                .unwrap_or_else(|_| "undefined".into());
            let zero = clustering_avg(&g, ZeroDegreeMode::Zero)
                .map(|v| format!("{v:.18}"))
                .unwrap_or_else(|_| "undefined".into());
            transitivity_rows.push(vec![
                name.to_string(),
                format!("{:.18}", transitivity_global(&g)),
                nan,
                zero,
            ]);
        }
        bundle.insert_table(
            "table_transitivity_clustering.tsv",
            &["polarity", "transitivity", "clustering_nan", "clustering_zero"],
            transitivity_rows,
        );
        Ok(())
    }

    fn core_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        for (name, polarity) in polarity_specs() {
            for (loops, loops_name) in [(Loops::Drop, "no_loops"), (Loops::Keep, "loops")] {
                let g = induce(kb, &spec_for(ScoreFilter::Positive, loops, polarity))?;
                let filtration = coreness(&g, loops);
                bundle.insert_tsv2(
                    format!("table_coreness_{name}_{loops_name}.tsv"),
                    ("coreness", "vertices"),
                    filtration.histogram(),
                );
                bundle.insert_table(
                    format!("table_core_decomposition_{name}_{loops_name}.tsv"),
                    &["k", "vertices", "multigraph_edges", "multigraph_avg_degree", "directed_edges", "directed_avg_degree", "undirected_edges", "undirected_avg_degree"],
                    filtration.levels.iter().map(|l| {
                        vec![
                            l.k.to_string(),
                            l.vertices.to_string(),
                            l.multi_edges.to_string(),
                            format!("{:.6}", l.multi_avg_degree),
                            l.directed_edges.to_string(),
                            format!("{:.6}", l.directed_avg_degree),
                            l.undirected_edges.to_string(),
                            format!("{:.6}", l.undirected_avg_degree),
                        ]
                    }),
                );
            }
        }
        Ok(())
    }

    fn clique_distribution_rows(g: &InducedGraph) -> Vec<String> {
        let cliques = maximal_cliques(g);
        let dist = cliques.size_distribution();
        let mut row = vec![cliques.count_at_least_3().to_string()];
        for size in 3..=12 {
            row.push(dist.get(&size).copied().unwrap_or(0).to_string());
        }
        row
    }

    fn clique_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        let mut rows = Vec::new();
        let negative_ranges: Vec<(i64, i64)> = (0..11).map(|hi| (-10, hi - 10)).collect();
        let positive_ranges: Vec<(i64, i64)> = (0..11).map(|lo| (lo, 10)).collect();
        for (polarity_name, polarity, ranges) in [
            ("negative", Polarity::Negative, &negative_ranges),
            ("positive", Polarity::Positive, &positive_ranges),
        ] {
            for &range in ranges {
                let spec = GraphSpec {
                    score: ScoreFilter::Positive,
                    loops: Loops::Drop,
                    polarity,
                    frequency_range: range,
                    relations: None,
                };
                let g = induce(kb, &spec)?;
                let mut row = vec![
                    polarity_name.to_string(),
                    range.0.to_string(),
                    range.1.to_string(),
                ];
                row.extend(clique_distribution_rows(&g));
                rows.push(row);
            }
        }
        bundle.insert_table(
            "table_cliques_distribution.tsv",
            &["polarity", "lo", "hi", "total_3_plus", "size_3", "size_4", "size_5", "size_6", "size_7", "size_8", "size_9", "size_10", "size_11", "size_12"],
            rows,
        );

        // Largest clique of the positive-polarity graph, with concept names.
        let g = induce(kb, &spec_for(ScoreFilter::Positive, Loops::Drop, Polarity::Positive))?;
        let cliques = maximal_cliques(&g);
        if let Some(largest) = cliques.largest() {
            let mut text = String::new();
            for &v in largest {
                text.push_str(&format!("{v}\t{}\n", kb.concept_text(v)));
            }
            bundle.insert("maximum_clique.tsv", text.into_bytes());
        }

        // Per-relation clique distributions for the relations the analysis
        // singles out, when present in the closure.
        let mut per_relation = Vec::new();
        for name in [
            "ConceptuallyRelatedTo",
            "IsA",
            "UsedFor",
            "LocatedNear",
            "SimilarSize",
            "ReceivesAction",
        ] {
            let Some(rel) = kb.relations.iter().position(|r| r.name == name) else {
                continue;
            };
            let spec = GraphSpec {
                score: ScoreFilter::Positive,
                loops: Loops::Drop,
                polarity: Polarity::Both,
                frequency_range: (-10, 10),
                relations: Some(BTreeSet::from([rel as Index])),
            };
            let g = induce(kb, &spec)?;
            let mut row = vec![name.to_string()];
            row.extend(clique_distribution_rows(&g));
            per_relation.push(row);
        }
        bundle.insert_table(
            "table_cliques_per_relation.tsv",
            &["relation", "total_3_plus", "size_3", "size_4", "size_5", "size_6", "size_7", "size_8", "size_9", "size_10", "size_11", "size_12"],
            per_relation,
        );
        Ok(())
    }

    fn percolation_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        for (name, polarity, ks) in [
            ("negative", Polarity::Negative, 3..=4),
            ("positive", Polarity::Positive, 3..=12),
        ] {
            let g = induce(kb, &spec_for(ScoreFilter::Positive, Loops::Drop, polarity))?;
            let mut count_rows = Vec::new();
            for k in ks {
                let cover = k_clique_percolation(&g, k)?;
                count_rows.push(vec![k.to_string(), cover.community_count().to_string()]);
                bundle.insert_tsv2(
                    format!("table_percolation_sizes_{name}_k{k}.tsv"),
                    ("community_size", "communities"),
                    cover.size_distribution(),
                );
                bundle.insert_tsv2(
                    format!("table_percolation_membership_{name}_k{k}.tsv"),
                    ("communities", "concepts"),
                    cover.membership_distribution(&g.non_isolated()),
                );
            }
            bundle.insert_table(
                format!("table_percolation_{name}.tsv"),
                &["clique_size", "communities"],
                count_rows,
            );
        }
        Ok(())
    }

    fn community_tables(kb: &ClosedKb, bundle: &mut ReportBundle, runs: u64, seed: u64) -> Result<()> {
        for (name, polarity) in [("negative", Polarity::Negative), ("positive", Polarity::Positive)] {
            let g = induce(kb, &spec_for(ScoreFilter::Positive, Loops::Drop, polarity))?;
            let filtration = coreness(&g, Loops::Drop);
            let adj = g.undirected_adjacency();
            for (algorithm, algo_name) in [
                (CommunityAlgorithm::Multilevel, "multilevel"),
                (CommunityAlgorithm::LabelPropagation, "label_propagation"),
            ] {
                let mut rows = Vec::new();
                for k in (1..=filtration.max_coreness()).rev() {
                    let vertices: Vec<Index> = (0..g.vertex_count as Index)
                        .filter(|&v| filtration.coreness[v as usize] >= k)
                        .collect();
                    if vertices.len() < 2 {
                        continue;
                    }
                    let sub = adj.induced_subgraph(&vertices);
                    if sub.edge_count() == 0 {
                        continue;
                    }
                    let stats = run_stats(algorithm, &sub, runs, seed)?;
                    // Runs where the community count collapses to the
                    // component count of the subgraph.
                    let components = sub.component_count();
                    let agreeing = stats
                        .community_counts
                        .iter()
                        .filter(|&&kappa| kappa == components as u64)
                        .count() as u64;
                    rows.push(vec![
                        k.to_string(),
                        vertices.len().to_string(),
                        sub.edge_count().to_string(),
                        components.to_string(),
                        format!("{:.3}", stats.communities_avg),
                        stats.communities_min.to_string(),
                        stats.communities_max.to_string(),
                        format!("{:.6}", stats.modularity_avg),
                        format!("{:.6}", stats.modularity_min),
                        format!("{:.6}", stats.modularity_max),
                        agreeing.to_string(),
                        (runs - agreeing).to_string(),
                    ]);
                }
                bundle.insert_table(
                    format!("table_communities_{algo_name}_{name}.tsv"),
                    &["coreness_min", "vertices", "edges", "components", "kappa_avg", "kappa_min", "kappa_max", "mu_avg", "mu_min", "mu_max", "agree_runs", "disagree_runs"],
                    rows,
                );
            }
        }
        Ok(())
    }

    fn rule_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        let index = RuleIndex::build(kb, false)?;
        let eligible = eligible_relations(kb, 300);
        let mined = mine_frequent(&index, &eligible, 300, 0.05);
        bundle.insert_table(
            "table_rules_frequent.tsv",
            &["relation_x", "relation_y", "relation_z", "ratio", "successes", "support"],
            mined.iter().map(|s| {
                vec![
                    kb.relation_name(s.rule.x).to_string(),
                    kb.relation_name(s.rule.y).to_string(),
                    kb.relation_name(s.rule.z).to_string(),
                    format!("{:.6}", s.ratio()),
                    s.successes.to_string(),
                    s.support.to_string(),
                ]
            }),
        );
        Ok(())
    }

    fn path_tables(kb: &ClosedKb, bundle: &mut ReportBundle) -> Result<()> {
        let mut summary = Vec::new();
        for (name, polarity) in polarity_specs() {
            let g = induce(kb, &spec_for(ScoreFilter::Positive, Loops::Drop, polarity))?;
            for directed in [true, false] {
                let label = if directed { "directed" } else { "undirected" };
                let hist = path_length_histogram(&g, directed);
                let mut rows: Vec<(String, String)> = hist
                    .counts
                    .iter()
                    .map(|(d, c)| (d.to_string(), c.to_string()))
                    .collect();
                rows.push(("inf".into(), hist.unreachable.to_string()));
                bundle.insert_tsv2(
                    format!("table_path_lengths_{name}_{label}.tsv"),
                    ("length", "pairs"),
                    rows,
                );
                let average = average_path_length(&hist)
                    .map(|v| format!("{v:.3}"))
                    .unwrap_or_else(|_| "undefined".into());
                let geodesic = longest_geodesic(&g, directed);
                let (length, witness) = match &geodesic {
                    Ok(geo) => (
                        geo.length.to_string(),
                        geo.path
                            .iter()
                            .map(|&v| kb.concept_text(v).to_string())
                            .collect::<Vec<_>>()
                            .join(" -> "),
                    ),
                    Err(_) => ("undefined".into(), String::new()),
                };
                summary.push(vec![name.to_string(), label.to_string(), average, length, witness]);
            }
        }
        bundle.insert_table(
            "table_geodesic_summary.tsv",
            &["polarity", "orientation", "average_path_length", "longest_geodesic", "witness"],
            summary,
        );
        Ok(())
    }
}
