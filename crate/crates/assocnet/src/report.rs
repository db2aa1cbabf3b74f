//! The analysis report: one statistics block per network and mode, matched
//! random benchmarks, modularity, and the concrete-vs-abstract comparison of
//! spreading scores. Rendered as JSON, Markdown or TSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use assocnet_core::community::{self, Partition};
use assocnet_core::influence::{self, InfluenceTable};
use assocnet_core::metrics::{self, LowDegree, Mode, NetworkStats};
use assocnet_core::randgraph::{self, BenchmarkSummary};
use assocnet_core::stats::{self, GroupComparison};
use assocnet_core::{AssociationNetwork, ErrorKind};
use serde::Serialize;

use crate::io::InputDigest;
use crate::pipeline::{IngestSummary, NamedNetwork};
use crate::{Error, Result};

/// Which directedness modes to analyse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeSelection {
    Directed,
    Undirected,
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> &'static [Mode] {
        match self {
            ModeSelection::Directed => &[Mode::Directed],
            ModeSelection::Undirected => &[Mode::Undirected],
            ModeSelection::Both => &[Mode::Directed, Mode::Undirected],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportOptions {
    pub min_endorsement: u64,
    pub seed: u64,
    pub runs: usize,
    pub ci_radius: u32,
    pub mode: ModeSelection,
    pub low_degree_clustering: LowDegree,
    pub weighted_modularity: bool,
    pub community_restarts: usize,
    /// Adds wall-clock timings to the report (which then stops being
    /// reproducible byte for byte).
    #[serde(skip)]
    pub timing: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            min_endorsement: assocnet_core::ingest::DEFAULT_MIN_ENDORSEMENT,
            seed: randgraph::DEFAULT_SEED,
            runs: randgraph::DEFAULT_RUNS,
            ci_radius: influence::DEFAULT_CI_RADIUS,
            mode: ModeSelection::Both,
            low_degree_clustering: LowDegree::Zero,
            weighted_modularity: true,
            community_restarts: community::DEFAULT_RESTARTS,
            timing: false,
        }
    }
}

/// Method stamps, so every number can be traced to a convention.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Methods {
    pub distances: &'static str,
    pub disconnected_pairs: &'static str,
    pub clustering: &'static str,
    pub density: &'static str,
    pub smallworldness: &'static str,
    pub benchmark: &'static str,
    pub prng: &'static str,
    pub community_algorithm: &'static str,
    pub spreading_variant: &'static str,
    pub influence_graph: &'static str,
    pub comparison_test: &'static str,
}

impl Default for Methods {
    fn default() -> Self {
        Methods {
            distances: "unweighted hop counts (breadth-first search)",
            disconnected_pairs: "excluded from D and ASPL; counted in unreachable_pairs",
            clustering: "undirected: edges among neighbors / C(k,2); directed: arcs among in+out neighbors / k(k-1)",
            density: "directed m/(n(n-1)); undirected 2m/(n(n-1))",
            smallworldness: "S = (CC/CC_random) / (ASPL/ASPL_random); small-world when S > 3",
            benchmark: "Erdos-Renyi G(n,m) matched on n, m and directedness; mean of `runs` members",
            prng: "ChaCha8 (rand_chacha), member i on stream i of a seed derived from the master seed",
            community_algorithm: community::ALGORITHM,
            spreading_variant: influence::SPREADING_VARIANT,
            influence_graph: "unweighted undirected projection",
            comparison_test: stats::TEST_NAME,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkReport {
    pub name: String,
    pub n: usize,
    pub arcs: usize,
    pub directed: bool,
    pub modularity: Option<f64>,
    pub communities: Option<usize>,
    pub stats: Vec<NetworkStats>,
    pub benchmarks: Vec<BenchmarkSummary>,
}

impl NetworkReport {
    pub fn row(&self, mode: Mode) -> Option<&NetworkStats> {
        self.stats.iter().find(|s| s.mode == mode)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub score: &'static str,
    pub group_a: String,
    pub group_b: String,
    pub result: GroupComparison,
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub tool: ToolInfo,
    pub master_seed: u64,
    pub inputs: Vec<InputDigest>,
    pub parameters: ReportOptions,
    pub methods: Methods,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ingest: Option<IngestSummary>,
    pub networks: Vec<NetworkReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonReport>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

/// SplitMix64 finalizer: sub-seeds for each consumer of randomness, all
/// derived from the master seed.
pub fn derive_seed(master: u64, tag: u64) -> u64 {
    let mut z = master ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn seed_tag(network: usize, purpose: u64) -> u64 {
    (network as u64) << 8 | purpose
}

const PURPOSE_DIRECTED: u64 = 1;
const PURPOSE_UNDIRECTED: u64 = 2;
const PURPOSE_COMMUNITY: u64 = 3;

fn is_undefined(e: &assocnet_core::Error) -> bool {
    e.kind() == ErrorKind::Undefined
}

/// Detects communities on the undirected projection with a seed derived from
/// the master seed for the network at `index`.
pub fn communities_for(
    net: &AssociationNetwork,
    index: usize,
    options: &ReportOptions,
) -> std::result::Result<community::Communities, assocnet_core::Error> {
    let und = net.undirected();
    community::detect_communities_with(
        &und,
        derive_seed(options.seed, seed_tag(index, PURPOSE_COMMUNITY)),
        options.weighted_modularity,
        options.community_restarts,
    )
}

fn analyse_network(
    index: usize,
    named: &NamedNetwork,
    options: &ReportOptions,
    warnings: &mut Vec<String>,
) -> Result<NetworkReport> {
    let net = &named.network;
    let name = &named.name;

    let (modularity, communities) = match communities_for(net, index, options) {
        Ok(found) => (
            Some(found.modularity),
            Some(found.partition.community_count()),
        ),
        Err(e) if is_undefined(&e) => {
            warnings.push(format!("{name}: modularity undefined ({e})"));
            (None, None)
        }
        Err(e) => return Err(Error::from(e).context(format!("network '{name}'"))),
    };

    let mut stats = Vec::new();
    let mut benchmarks = Vec::new();
    for &mode in options.mode.modes() {
        if mode == Mode::Directed && !net.is_directed() {
            warnings.push(format!(
                "{name}: undirected network, directed statistics skipped"
            ));
            continue;
        }
        let ctx = |e: assocnet_core::Error| {
            Error::from(e).context(format!("network '{name}' ({})", mode.as_str()))
        };
        let view = metrics::view(net, mode).map_err(ctx)?;
        let mut row =
            metrics::observed_stats(&view, mode, options.low_degree_clustering).map_err(ctx)?;
        // ⟨k⟩ and k_in/out refer to the network's own arcs in both modes.
        let degrees = net.degree_summary();
        row.mean_degree = degrees.mean_degree;
        row.mean_in_out = if mode == Mode::Directed {
            degrees.mean_in_out
        } else {
            None
        };

        let purpose = match mode {
            Mode::Directed => PURPOSE_DIRECTED,
            Mode::Undirected => PURPOSE_UNDIRECTED,
        };
        let seed = derive_seed(options.seed, seed_tag(index, purpose));
        let bench =
            randgraph::benchmark_ensemble(&view, options.runs, seed, options.low_degree_clustering)
                .map_err(ctx)?;
        row.aspl_random = Some(bench.aspl_mean);
        row.cc_random = Some(bench.cc_mean);
        row.smallworldness =
            match metrics::smallworldness(row.cc, bench.cc_mean, row.aspl, bench.aspl_mean) {
                Ok(s) => Some(s),
                Err(e) if is_undefined(&e) => {
                    warnings.push(format!(
                        "{name} ({}): smallworldness undefined ({e})",
                        mode.as_str()
                    ));
                    None
                }
                Err(e) => return Err(ctx(e)),
            };
        row.modularity = modularity;
        stats.push(row);
        benchmarks.push(bench);
    }

    Ok(NetworkReport {
        name: name.clone(),
        n: net.node_count(),
        arcs: net.arc_count(),
        directed: net.is_directed(),
        modularity,
        communities,
        stats,
        benchmarks,
    })
}

/// Welch comparison of spreading scores between two networks' nodes.
pub fn compare_spreading(
    a: &NamedNetwork,
    b: &NamedNetwork,
    ci_radius: u32,
) -> Result<ComparisonReport> {
    let score = |n: &NamedNetwork| -> Result<Vec<f64>> {
        influence::spreading_scores(&n.network, ci_radius)
            .map(|t| t.spreading())
            .map_err(|e| Error::from(e).context(format!("network '{}'", n.name)))
    };
    let result = stats::welch_t_test(&score(a)?, &score(b)?)?;
    Ok(ComparisonReport {
        score: "spreading",
        group_a: a.name.clone(),
        group_b: b.name.clone(),
        summary: result.to_string(),
        result,
    })
}

/// Runs the whole battery over `networks`. When networks named `concrete`
/// and `abstract` are both present, their spreading scores are compared.
pub fn stats_report(
    networks: &[NamedNetwork],
    options: &ReportOptions,
    inputs: Vec<InputDigest>,
    ingest: Option<IngestSummary>,
) -> Result<AnalysisReport> {
    let positions: Vec<usize> = (0..networks.len()).collect();
    stats_report_at(networks, &positions, options, inputs, ingest)
}

/// As [`stats_report`], with explicit positions for seed derivation so that a
/// network analysed alone gets the same random draws as in a full run.
pub fn stats_report_at(
    networks: &[NamedNetwork],
    positions: &[usize],
    options: &ReportOptions,
    inputs: Vec<InputDigest>,
    ingest: Option<IngestSummary>,
) -> Result<AnalysisReport> {
    assert_eq!(networks.len(), positions.len());
    if networks.is_empty() {
        return Err(Error::Usage("no network to analyse".into()));
    }
    let mut warnings = Vec::new();
    let mut timing = BTreeMap::new();
    let mut reports = Vec::with_capacity(networks.len());
    for (&i, named) in positions.iter().zip(networks) {
        let start = Instant::now();
        reports.push(analyse_network(i, named, options, &mut warnings)?);
        timing.insert(named.name.clone(), start.elapsed().as_millis());
    }

    let find = |name: &str| networks.iter().find(|n| n.name == name);
    let comparison = match (find("concrete"), find("abstract")) {
        (Some(c), Some(a)) => {
            let start = Instant::now();
            let cmp = match compare_spreading(c, a, options.ci_radius) {
                Ok(cmp) => Some(cmp),
                Err(e) if e.exit_code() == 2 => {
                    warnings.push(format!("spreading comparison undefined ({e})"));
                    None
                }
                Err(e) => return Err(e),
            };
            timing.insert("comparison".into(), start.elapsed().as_millis());
            cmp
        }
        _ => None,
    };

    Ok(AnalysisReport {
        tool: ToolInfo {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        },
        master_seed: options.seed,
        inputs,
        parameters: options.clone(),
        methods: Methods::default(),
        ingest,
        networks: reports,
        comparison,
        warnings,
        timing_ms: options.timing.then_some(timing),
    })
}

pub fn to_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

/// Row labels of the statistics table, top to bottom.
pub const TABLE_ROWS: [&str; 11] = [
    "n",
    "D",
    "d",
    "ASPL",
    "ASPL_random",
    "k_in/out",
    "<k>",
    "CC",
    "CC_random",
    "S",
    "Q",
];

fn columns(report: &AnalysisReport) -> Vec<(&NetworkReport, &NetworkStats)> {
    report
        .networks
        .iter()
        .flat_map(|n| n.stats.iter().map(move |s| (n, s)))
        .collect()
}

fn cell(row: &str, s: &NetworkStats, precise: bool) -> String {
    let opt = |x: Option<f64>, f: &dyn Fn(f64) -> String| x.map(f).unwrap_or_else(|| "-".into());
    let fixed = |digits: usize| {
        move |x: f64| {
            if precise {
                format!("{x}")
            } else {
                format!("{x:.digits$}")
            }
        }
    };
    let sci = |x: f64| {
        if precise {
            format!("{x}")
        } else {
            format!("{x:.2e}")
        }
    };
    match row {
        "n" => s.n.to_string(),
        "D" => s.diameter.to_string(),
        "d" => sci(s.density),
        "ASPL" => fixed(2)(s.aspl),
        "ASPL_random" => opt(s.aspl_random, &fixed(2)),
        "k_in/out" => opt(s.mean_in_out, &fixed(2)),
        "<k>" => fixed(2)(s.mean_degree),
        "CC" => fixed(2)(s.cc),
        "CC_random" => opt(s.cc_random, &sci),
        "S" => opt(s.smallworldness, &fixed(1)),
        "Q" => opt(s.modularity, &fixed(2)),
        _ => unreachable!("unknown row {row}"),
    }
}

/// Markdown table in the classic small-world layout: one column per
/// (network, mode), rows n, D, d, ASPL, ASPL_random, k_in/out, ⟨k⟩, CC,
/// CC_random, S, Q.
pub fn to_markdown(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# Network statistics\n\n{} {} · master seed {} · {} benchmark runs\n",
        report.tool.name, report.tool.version, report.master_seed, report.parameters.runs
    );
    let cols = columns(report);
    out.push_str("| variables |");
    for (n, s) in &cols {
        let _ = write!(out, " {} {} |", n.name, s.mode.as_str());
    }
    out.push_str("\n|---|");
    out.push_str(&"---:|".repeat(cols.len()));
    out.push('\n');
    for row in TABLE_ROWS {
        let _ = write!(out, "| {row} |");
        for (_, s) in &cols {
            let _ = write!(out, " {} |", cell(row, s, false));
        }
        out.push('\n');
    }
    if let Some(cmp) = &report.comparison {
        let r = &cmp.result;
        let _ = writeln!(
            out,
            "\nSpreading scores, {} (M={:.2}; SD={:.2}; n={}) vs {} (M={:.2}; SD={:.2}; n={}): {}",
            cmp.group_a, r.mean_a, r.sd_a, r.n_a, cmp.group_b, r.mean_b, r.sd_b, r.n_b, cmp.summary
        );
    }
    let _ = writeln!(
        out,
        "\nCommunities: {}. Spreading score: {}. Comparison: {}.",
        report.methods.community_algorithm,
        report.methods.spreading_variant,
        report.methods.comparison_test
    );
    for w in &report.warnings {
        let _ = writeln!(out, "\n> warning: {w}");
    }
    out
}

/// The same table as tab-separated values at full precision.
pub fn to_tsv(report: &AnalysisReport) -> String {
    let cols = columns(report);
    let mut out = String::from("variable");
    for (n, s) in &cols {
        let _ = write!(out, "\t{}_{}", n.name, s.mode.as_str());
    }
    out.push('\n');
    for row in TABLE_ROWS {
        out.push_str(row);
        for (_, s) in &cols {
            let _ = write!(out, "\t{}", cell(row, s, true));
        }
        out.push('\n');
    }
    out
}

/// `word<TAB>community`, one node per line after the header.
pub fn partition_tsv(net: &AssociationNetwork, partition: &Partition) -> String {
    let mut out = String::from("word\tcommunity\n");
    for node in net.nodes() {
        let _ = writeln!(out, "{}\t{}", node.label, partition.community_of(node.id));
    }
    out
}

/// `word<TAB>DC<TAB>LH<TAB>NC<TAB>CR<TAB>BC<TAB>CI<TAB>spreading<TAB>ivi`.
pub fn influence_tsv(net: &AssociationNetwork, table: &InfluenceTable) -> String {
    let mut out = String::from("word\tDC\tLH\tNC\tCR\tBC\tCI\tspreading\tivi\n");
    for (node, r) in net.nodes().iter().zip(&table.rows) {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            node.label,
            r.degree,
            r.h_index,
            r.connectivity,
            r.clusterrank,
            r.betweenness,
            r.collective_influence,
            r.spreading,
            r.ivi
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> AssociationNetwork {
        let e = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];
        AssociationNetwork::from_arcs(6, e.iter().map(|&(a, b)| (a, b, 1)), false).unwrap()
    }

    #[test]
    fn defaults_are_echoed() {
        let o = ReportOptions::default();
        assert_eq!(
            (o.min_endorsement, o.runs, o.ci_radius, o.seed),
            (2, 30, 2, 42)
        );
        let report = stats_report(
            &[NamedNetwork::new("fixture", two_triangles())],
            &o,
            vec![],
            None,
        )
        .unwrap();
        let json: serde_json::Value = serde_json::from_str(&to_json(&report)).unwrap();
        assert_eq!(json["parameters"]["min_endorsement"], 2);
        assert_eq!(json["parameters"]["runs"], 30);
        assert_eq!(json["parameters"]["ci_radius"], 2);
        assert_eq!(json["parameters"]["seed"], 42);
        assert_eq!(json["master_seed"], 42);
        assert!(json.get("timing_ms").is_none());
    }

    #[test]
    fn fixture_report_values() {
        let o = ReportOptions {
            weighted_modularity: false,
            ..ReportOptions::default()
        };
        let report = stats_report(
            &[NamedNetwork::new("fixture", two_triangles())],
            &o,
            vec![],
            None,
        )
        .unwrap();
        let net = &report.networks[0];
        let row = net.row(Mode::Undirected).unwrap();
        assert_eq!((row.n, row.diameter), (6, 3));
        assert!((net.modularity.unwrap() - 5.0 / 14.0).abs() < 1e-12);
        assert!(net.row(Mode::Directed).is_none());
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn seeds_are_derived_not_shared() {
        assert_ne!(
            derive_seed(42, seed_tag(0, 1)),
            derive_seed(42, seed_tag(0, 2))
        );
        assert_ne!(
            derive_seed(42, seed_tag(0, 1)),
            derive_seed(42, seed_tag(1, 1))
        );
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn tsv_exports() {
        let g = two_triangles();
        let p = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
        let tsv = partition_tsv(&g, &p);
        assert!(tsv.starts_with("word\tcommunity\n0\t0\n"));
        assert_eq!(tsv.lines().count(), 7);
        let table = influence::spreading_scores(&g, 2).unwrap();
        let tsv = influence_tsv(&g, &table);
        assert!(tsv.starts_with("word\tDC\tLH\tNC\tCR\tBC\tCI\tspreading\tivi\n"));
        assert_eq!(tsv.lines().nth(3).unwrap().split('\t').count(), 9);
    }
}
