use std::path::PathBuf;
use std::process::ExitCode;

use assocnet::export::{self, GraphFormat, NodeAnnotations};
use assocnet::io::{self, InputDigest};
use assocnet::pipeline::{self, IngestSummary, NamedNetwork};
use assocnet::report::{self, ModeSelection, ReportOptions};
use assocnet::{influence, metrics, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "assocnet",
    version,
    about = "Semantic networks from word-association norms"
)]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Read norms, apply the endorsement filter and write the network as JSON.
    Ingest {
        #[command(flatten)]
        input: NormsArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Split the network by median cue concreteness into JSON files.
    Split {
        #[command(flatten)]
        input: NormsArgs,
        /// Directory receiving whole.json, concrete.json and abstract.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Network statistics with matched random benchmarks.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long, value_enum, default_value_t = ModeSelection::Both)]
        mode: ModeSelection,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Include wall-clock timings (makes output vary between runs).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Community partition of one network.
    Communities {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Per-node influence measures and spreading scores of one network.
    Influence {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = influence::DEFAULT_CI_RADIUS)]
        ci_radius: u32,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Welch t-test of spreading scores, concrete vs abstract network.
    Compare {
        #[command(flatten)]
        input: NormsArgs,
        #[arg(long, default_value_t = influence::DEFAULT_CI_RADIUS)]
        ci_radius: u32,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write one network as GraphML, edge list, DOT or JSON.
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long = "to", default_value = "graphml", value_parser = parse_graph_format)]
        graph_format: GraphFormat,
        /// Attach community and spreading score to each node.
        #[arg(long)]
        annotate: bool,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct NormsArgs {
    /// cue/response/count table.
    #[arg(long)]
    pairs: PathBuf,
    /// word/concreteness table.
    #[arg(long)]
    ratings: Option<PathBuf>,
    #[arg(long, default_value_t = assocnet::ingest::DEFAULT_MIN_ENDORSEMENT)]
    min_endorsement: u64,
    /// Field separator: a single character, `tab` or `comma`.
    #[arg(long, default_value = "\t", value_parser = io::parse_delimiter)]
    delimiter: char,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long, conflicts_with = "network", required_unless_present = "network")]
    pairs: Option<PathBuf>,
    #[arg(long, conflicts_with = "network")]
    ratings: Option<PathBuf>,
    /// A network JSON file written by `ingest` or `split`.
    #[arg(long)]
    network: Option<PathBuf>,
    #[arg(long, default_value_t = assocnet::ingest::DEFAULT_MIN_ENDORSEMENT)]
    min_endorsement: u64,
    #[arg(long, default_value = "\t", value_parser = io::parse_delimiter)]
    delimiter: char,
    /// Which network(s) to analyse when ratings split the norms.
    #[arg(long, value_enum, default_value_t = Subnetwork::All)]
    subnetwork: Subnetwork,
}

#[derive(Args, Debug)]
struct AnalysisArgs {
    /// Master seed for every random choice.
    #[arg(long, default_value_t = assocnet::randgraph::DEFAULT_SEED)]
    seed: u64,
    /// Random-benchmark ensemble size.
    #[arg(long, default_value_t = assocnet::randgraph::DEFAULT_RUNS)]
    runs: usize,
    #[arg(long, default_value_t = influence::DEFAULT_CI_RADIUS)]
    ci_radius: u32,
    /// Clustering contribution of nodes with fewer than two neighbors.
    #[arg(long, value_enum, default_value_t = LowDegreeArg::Zero)]
    low_degree: LowDegreeArg,
    /// Modularity on edge presence instead of association counts.
    #[arg(long)]
    unweighted: bool,
    #[arg(long, default_value_t = assocnet::community::DEFAULT_RESTARTS)]
    restarts: usize,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Subnetwork {
    Whole,
    Concrete,
    Abstract,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LowDegreeArg {
    Zero,
    Exclude,
}

fn parse_graph_format(s: &str) -> std::result::Result<GraphFormat, String> {
    s.parse()
}

impl AnalysisArgs {
    fn options(&self) -> ReportOptions {
        ReportOptions {
            seed: self.seed,
            runs: self.runs,
            ci_radius: self.ci_radius,
            low_degree_clustering: match self.low_degree {
                LowDegreeArg::Zero => metrics::LowDegree::Zero,
                LowDegreeArg::Exclude => metrics::LowDegree::Exclude,
            },
            weighted_modularity: !self.unweighted,
            community_restarts: self.restarts,
            ..ReportOptions::default()
        }
    }
}

struct Loaded {
    /// Networks with their position in the whole/concrete/abstract order,
    /// which feeds seed derivation.
    networks: Vec<(usize, NamedNetwork)>,
    inputs: Vec<InputDigest>,
    summary: Option<IngestSummary>,
    min_endorsement: u64,
}

impl Loaded {
    fn single(mut self) -> Result<(usize, NamedNetwork)> {
        match self.networks.len() {
            1 => Ok(self.networks.remove(0)),
            _ => Err(Error::Usage(
                "this command takes one network: pass --subnetwork whole|concrete|abstract".into(),
            )),
        }
    }
}

fn ingest_norms(input: &NormsArgs) -> Result<pipeline::Ingested> {
    pipeline::ingest_files(
        &input.pairs,
        input.ratings.as_deref(),
        input.min_endorsement,
        input.delimiter,
    )
}

fn load(input: &InputArgs, single: bool) -> Result<Loaded> {
    if let Some(path) = &input.network {
        let (network, digest) = io::load_network(path)?;
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("network")
            .to_owned();
        return Ok(Loaded {
            networks: vec![(0, NamedNetwork::new(name, network))],
            inputs: vec![digest],
            summary: None,
            min_endorsement: input.min_endorsement,
        });
    }
    let pairs = input
        .pairs
        .as_deref()
        .expect("clap requires --pairs without --network");
    let mut ingested = pipeline::ingest_files(
        pairs,
        input.ratings.as_deref(),
        input.min_endorsement,
        input.delimiter,
    )?;
    let all = if input.ratings.is_some() {
        pipeline::whole_and_split(&mut ingested)?
    } else {
        vec![NamedNetwork::new("whole", ingested.whole.clone())]
    };
    let wanted = match (input.subnetwork, single) {
        (Subnetwork::All, true) => Some("whole"),
        (Subnetwork::All, false) => None,
        (Subnetwork::Whole, _) => Some("whole"),
        (Subnetwork::Concrete, _) => Some("concrete"),
        (Subnetwork::Abstract, _) => Some("abstract"),
    };
    let networks: Vec<_> = all
        .into_iter()
        .enumerate()
        .filter(|(_, n)| wanted.is_none_or(|w| n.name == w))
        .collect();
    if networks.is_empty() {
        return Err(Error::Usage(
            "--subnetwork concrete|abstract needs --ratings".into(),
        ));
    }
    Ok(Loaded {
        networks,
        inputs: ingested.inputs,
        summary: Some(ingested.summary),
        min_endorsement: input.min_endorsement,
    })
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => {
            io::write_file(path, text)?;
            log::info!("wrote {}", path.display());
            Ok(())
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs always serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CommunityOutput<'a> {
    network: &'a str,
    algorithm: &'static str,
    seed: u64,
    modularity: f64,
    communities: usize,
    levels: usize,
    assignment: Vec<(&'a str, usize)>,
}

#[derive(Serialize)]
struct InfluenceOutput<'a> {
    network: &'a str,
    variant: &'static str,
    ci_radius: u32,
    rows: Vec<(&'a str, &'a influence::NodeInfluence)>,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest { input, out } => {
            let ingested = ingest_norms(&input)?;
            emit(&out, &io::network_to_json(&ingested.whole))
        }
        Command::Split { input, out_dir } => {
            if input.ratings.is_none() {
                return Err(Error::Usage("split needs --ratings".into()));
            }
            let mut ingested = ingest_norms(&input)?;
            let networks = pipeline::whole_and_split(&mut ingested)?;
            std::fs::create_dir_all(&out_dir).map_err(|source| Error::Write {
                path: out_dir.clone(),
                source,
            })?;
            for n in &networks {
                io::write_file(
                    &out_dir.join(format!("{}.json", n.name)),
                    &io::network_to_json(&n.network),
                )?;
            }
            emit(&OutArgs { out: None }, &json(&ingested.summary))
        }
        Command::Stats {
            input,
            analysis,
            mode,
            format,
            timing,
            out,
        } => {
            let loaded = load(&input, false)?;
            let options = ReportOptions {
                min_endorsement: loaded.min_endorsement,
                mode,
                timing,
                ..analysis.options()
            };
            let (positions, networks): (Vec<usize>, Vec<NamedNetwork>) =
                loaded.networks.into_iter().unzip();
            let report = report::stats_report_at(
                &networks,
                &positions,
                &options,
                loaded.inputs,
                loaded.summary,
            )?;
            let text = match format {
                Format::Json => report::to_json(&report),
                Format::Md => report::to_markdown(&report),
                Format::Tsv => report::to_tsv(&report),
            };
            for w in &report.warnings {
                log::warn!("{w}");
            }
            emit(&out, &text)
        }
        Command::Communities {
            input,
            analysis,
            format,
            out,
        } => {
            let (pos, named) = load(&input, true)?.single()?;
            let options = analysis.options();
            let found = report::communities_for(&named.network, pos, &options)?;
            log::info!(
                "{}: {} communities, Q = {:.4}",
                named.name,
                found.partition.community_count(),
                found.modularity
            );
            let text = match format {
                Format::Tsv => report::partition_tsv(&named.network, &found.partition),
                Format::Json => json(&CommunityOutput {
                    network: &named.name,
                    algorithm: assocnet::community::ALGORITHM,
                    seed: options.seed,
                    modularity: found.modularity,
                    communities: found.partition.community_count(),
                    levels: found.levels,
                    assignment: named
                        .network
                        .nodes()
                        .iter()
                        .map(|n| (n.label.as_str(), found.partition.community_of(n.id)))
                        .collect(),
                }),
                Format::Md => {
                    let mut s = format!(
                        "# Communities of {}\n\nQ = {:.4} with {} communities ({})\n\n| community | words |\n|---:|---|\n",
                        named.name,
                        found.modularity,
                        found.partition.community_count(),
                        assocnet::community::ALGORITHM
                    );
                    for (c, members) in found.partition.groups().iter().enumerate() {
                        let words: Vec<&str> = members
                            .iter()
                            .map(|&v| named.network.nodes()[v].label.as_str())
                            .collect();
                        s.push_str(&format!("| {c} | {} |\n", words.join(", ")));
                    }
                    s
                }
            };
            emit(&out, &text)
        }
        Command::Influence {
            input,
            ci_radius,
            format,
            out,
        } => {
            let (_, named) = load(&input, true)?.single()?;
            let table = influence::spreading_scores(&named.network, ci_radius)?;
            let text = match format {
                Format::Tsv => report::influence_tsv(&named.network, &table),
                Format::Json => json(&InfluenceOutput {
                    network: &named.name,
                    variant: influence::SPREADING_VARIANT,
                    ci_radius,
                    rows: named
                        .network
                        .nodes()
                        .iter()
                        .map(|n| n.label.as_str())
                        .zip(&table.rows)
                        .collect(),
                }),
                Format::Md => {
                    let mut s = format!(
                        "# Influence in {} ({})\n\n| word | DC | LH | NC | CR | BC | CI | spreading | IVI |\n|---|---:|---:|---:|---:|---:|---:|---:|---:|\n",
                        named.name,
                        influence::SPREADING_VARIANT
                    );
                    for (node, r) in named.network.nodes().iter().zip(&table.rows) {
                        s.push_str(&format!(
                            "| {} | {} | {} | {:.3} | {:.3} | {:.3} | {:.0} | {:.2} | {:.2} |\n",
                            node.label,
                            r.degree,
                            r.h_index,
                            r.connectivity,
                            r.clusterrank,
                            r.betweenness,
                            r.collective_influence,
                            r.spreading,
                            r.ivi
                        ));
                    }
                    s
                }
            };
            emit(&out, &text)
        }
        Command::Compare {
            input,
            ci_radius,
            format,
            out,
        } => {
            if input.ratings.is_none() {
                return Err(Error::Usage("compare needs --ratings".into()));
            }
            let mut ingested = ingest_norms(&input)?;
            let networks = pipeline::whole_and_split(&mut ingested)?;
            let cmp = report::compare_spreading(&networks[1], &networks[2], ci_radius)?;
            let r = &cmp.result;
            let text = match format {
                Format::Json => json(&cmp),
                Format::Md => format!(
                    "Spreading scores, {} (M={:.2}; SD={:.2}; n={}) vs {} (M={:.2}; SD={:.2}; n={}): {}\n",
                    cmp.group_a, r.mean_a, r.sd_a, r.n_a, cmp.group_b, r.mean_b, r.sd_b, r.n_b, cmp.summary
                ),
                Format::Tsv => format!(
                    "group_a\tmean_a\tsd_a\tn_a\tgroup_b\tmean_b\tsd_b\tn_b\tt\tdf\tp\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    cmp.group_a, r.mean_a, r.sd_a, r.n_a, cmp.group_b, r.mean_b, r.sd_b, r.n_b, r.t, r.df, r.p
                ),
            };
            emit(&out, &text)
        }
        Command::Export {
            input,
            graph_format,
            annotate,
            analysis,
            out,
        } => {
            let (pos, named) = load(&input, true)?.single()?;
            let mut notes = NodeAnnotations::default();
            if annotate {
                let options = analysis.options();
                match report::communities_for(&named.network, pos, &options) {
                    Ok(found) => notes.community = Some(found.partition.assignment().to_vec()),
                    Err(e) if e.kind() == assocnet_core::ErrorKind::Undefined => {
                        log::warn!("{}: no communities ({e})", named.name)
                    }
                    Err(e) => return Err(e.into()),
                }
                notes.spreading = Some(
                    influence::spreading_scores(&named.network, options.ci_radius)?.spreading(),
                );
            }
            emit(
                &out,
                &export::export_graph(&named.network, graph_format, &notes),
            )
        }
    }
}

fn with_threads(threads: Option<usize>, f: impl FnOnce() -> Result<()> + Send) -> Result<()> {
    match threads {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Usage(format!("cannot start {n} threads: {e}")))?
            .install(f),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();

    match with_threads(cli.threads, move || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
