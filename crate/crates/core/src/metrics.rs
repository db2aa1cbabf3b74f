//! Small-world statistics on hop distances: diameter, ASPL, clustering,
//! density and smallworldness.
//!
//! Distances ignore arc weights. Pairs with no connecting path are left out
//! of D and ASPL and counted separately.

use alloc::borrow::Cow;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{union_neighbors, AssociationNetwork, NodeId};
use crate::par;
use crate::{Error, Result};

/// Marker for nodes with no path from the source.
pub const UNREACHABLE: u32 = u32::MAX;

/// Whether arcs are followed in their direction or as plain edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Mode {
    Directed,
    Undirected,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Directed => "directed",
            Mode::Undirected => "undirected",
        }
    }
}

/// How nodes with fewer than two neighbors enter the average clustering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LowDegree {
    /// Counted with a coefficient of 0.
    #[default]
    Zero,
    /// Left out of the average.
    Exclude,
}

/// The graph a given mode traverses: the network itself for directed mode,
/// the undirected projection otherwise.
pub fn view(net: &AssociationNetwork, mode: Mode) -> Result<Cow<'_, AssociationNetwork>> {
    match mode {
        Mode::Directed if net.is_directed() => Ok(Cow::Borrowed(net)),
        Mode::Directed => Err(Error::input(
            "directed statistics requested for an undirected network",
        )),
        Mode::Undirected => Ok(net.undirected()),
    }
}

/// Hop distances from one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceField {
    pub source: NodeId,
    /// Per-node hop count, [`UNREACHABLE`] where no path exists.
    pub distances: Vec<u32>,
}

impl DistanceField {
    pub fn get(&self, v: NodeId) -> Option<u32> {
        self.distances.get(v).copied().filter(|&d| d != UNREACHABLE)
    }
}

/// Breadth-first search over out-arcs, reusing caller buffers.
pub(crate) fn bfs_into(
    g: &AssociationNetwork,
    source: NodeId,
    dist: &mut [u32],
    queue: &mut VecDeque<NodeId>,
) {
    dist.fill(UNREACHABLE);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.out_neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
}

pub fn shortest_paths_from(
    net: &AssociationNetwork,
    source: NodeId,
    mode: Mode,
) -> Result<DistanceField> {
    let n = net.node_count();
    if source >= n {
        return Err(Error::NodeOutOfRange { id: source, n });
    }
    let g = view(net, mode)?;
    let mut distances = vec![UNREACHABLE; n];
    bfs_into(&g, source, &mut distances, &mut VecDeque::new());
    Ok(DistanceField { source, distances })
}

/// Aggregate of all finite pairwise distances.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PathStats {
    pub diameter: u32,
    pub aspl: f64,
    /// Ordered pairs for directed mode, unordered pairs for undirected mode.
    pub reachable_pairs: u64,
    pub unreachable_pairs: u64,
    /// Sum of the finite distances over the same pair set.
    pub distance_sum: u64,
}

/// One all-pairs BFS sweep feeding both D and ASPL. Sums are exact integers.
pub fn path_stats(net: &AssociationNetwork, mode: Mode) -> Result<PathStats> {
    let g = view(net, mode)?;
    let n = g.node_count();
    let blocks = par::map_blocks(n, |range| {
        let mut dist = vec![UNREACHABLE; n];
        let mut queue = VecDeque::new();
        let (mut sum, mut count, mut max) = (0u64, 0u64, 0u32);
        for s in range {
            bfs_into(&g, s, &mut dist, &mut queue);
            for (t, &d) in dist.iter().enumerate() {
                if t != s && d != UNREACHABLE {
                    sum += u64::from(d);
                    count += 1;
                    max = max.max(d);
                }
            }
        }
        (sum, count, max)
    });
    let (mut sum, mut count, mut diameter) = (0u64, 0u64, 0u32);
    for (s, c, m) in blocks {
        sum += s;
        count += c;
        diameter = diameter.max(m);
    }
    if count == 0 {
        return Err(Error::undefined(
            "no pair of distinct nodes is connected by a path",
        ));
    }
    let total = (n as u64) * (n as u64 - 1);
    let mut unreachable = total - count;
    if mode == Mode::Undirected {
        sum /= 2;
        count /= 2;
        unreachable /= 2;
    }
    Ok(PathStats {
        diameter,
        aspl: sum as f64 / count as f64,
        reachable_pairs: count,
        unreachable_pairs: unreachable,
        distance_sum: sum,
    })
}

pub fn diameter(net: &AssociationNetwork, mode: Mode) -> Result<u32> {
    path_stats(net, mode).map(|p| p.diameter)
}

pub fn aspl(net: &AssociationNetwork, mode: Mode) -> Result<f64> {
    path_stats(net, mode).map(|p| p.aspl)
}

/// Links among the union-neighborhood of `v` (ordered, so each undirected
/// edge counts twice) and the neighborhood size.
fn neighborhood_links(g: &AssociationNetwork, v: NodeId, mark: &mut [bool]) -> (u64, usize) {
    let hood = union_neighbors(g, v);
    for &u in &hood {
        mark[u] = true;
    }
    let links = hood
        .iter()
        .map(|&u| g.out_neighbors(u).iter().filter(|&&w| mark[w]).count() as u64)
        .sum();
    for &u in &hood {
        mark[u] = false;
    }
    (links, hood.len())
}

fn coefficient(links: u64, k: usize) -> f64 {
    if k < 2 {
        0.0
    } else {
        links as f64 / (k as f64 * (k as f64 - 1.0))
    }
}

/// Fraction of realized links among the neighbors of `v`.
///
/// Undirected: edges among N(v) over |N|(|N|−1)/2. Directed: arcs among the
/// union of in- and out-neighbors over |N|(|N|−1). Nodes with |N| < 2 get 0.
pub fn local_clustering(net: &AssociationNetwork, v: NodeId, mode: Mode) -> Result<f64> {
    let n = net.node_count();
    if v >= n {
        return Err(Error::NodeOutOfRange { id: v, n });
    }
    let g = view(net, mode)?;
    let mut mark = vec![false; n];
    let (links, k) = neighborhood_links(&g, v, &mut mark);
    Ok(coefficient(links, k))
}

/// Local clustering of every node, plus each node's neighborhood size.
pub(crate) fn clustering_profile(g: &AssociationNetwork) -> Vec<(f64, usize)> {
    let n = g.node_count();
    par::map_blocks(n, |range| {
        let mut mark = vec![false; n];
        range
            .map(|v| {
                let (links, k) = neighborhood_links(g, v, &mut mark);
                (coefficient(links, k), k)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn local_clustering_all(net: &AssociationNetwork, mode: Mode) -> Result<Vec<f64>> {
    let g = view(net, mode)?;
    Ok(clustering_profile(&g).into_iter().map(|(c, _)| c).collect())
}

/// Unweighted mean of the local clustering coefficients (CC).
pub fn average_clustering(
    net: &AssociationNetwork,
    mode: Mode,
    low_degree: LowDegree,
) -> Result<f64> {
    if net.node_count() == 0 {
        return Err(Error::input("clustering of an empty network"));
    }
    let g = view(net, mode)?;
    let profile = clustering_profile(&g);
    let (sum, count) = profile
        .iter()
        .filter(|(_, k)| low_degree == LowDegree::Zero || *k >= 2)
        .fold((0.0, 0usize), |(s, c), (cc, _)| (s + cc, c + 1));
    Ok(if count == 0 { 0.0 } else { sum / count as f64 })
}

/// Realized over possible links: m/(n(n−1)) directed, 2m/(n(n−1)) undirected.
pub fn density(net: &AssociationNetwork, mode: Mode) -> Result<f64> {
    let n = net.node_count();
    if n < 2 {
        return Err(Error::input("density needs at least two nodes"));
    }
    let g = view(net, mode)?;
    let m = g.arc_count() as f64;
    let pairs = n as f64 * (n as f64 - 1.0);
    Ok(match mode {
        Mode::Directed => m / pairs,
        Mode::Undirected => 2.0 * m / pairs,
    })
}

/// Humphries–Gurney smallworldness S = (CC / CC_rand) / (ASPL / ASPL_rand).
pub fn smallworldness(cc: f64, cc_random: f64, aspl: f64, aspl_random: f64) -> Result<f64> {
    let all = [cc, cc_random, aspl, aspl_random];
    if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::input(
            "smallworldness inputs must be finite and non-negative",
        ));
    }
    if cc_random == 0.0 || aspl == 0.0 || aspl_random == 0.0 {
        return Err(Error::undefined("smallworldness with a zero denominator"));
    }
    Ok((cc / cc_random) / (aspl / aspl_random))
}

/// Threshold above which a network counts as small-world.
pub const SMALL_WORLD_THRESHOLD: f64 = 3.0;

pub fn is_small_world(s: f64) -> bool {
    s > SMALL_WORLD_THRESHOLD
}

/// One row block of the statistics table for a single network and mode.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NetworkStats {
    pub mode: Mode,
    pub n: usize,
    /// Arcs (directed) or projected edges (undirected).
    pub m: usize,
    pub diameter: u32,
    pub density: f64,
    pub aspl: f64,
    pub aspl_random: Option<f64>,
    /// Mean in-degree = mean out-degree; directed rows only.
    pub mean_in_out: Option<f64>,
    /// ⟨k⟩ = 2m/n over the network's own arcs.
    pub mean_degree: f64,
    pub cc: f64,
    pub cc_random: Option<f64>,
    pub smallworldness: Option<f64>,
    pub modularity: Option<f64>,
    pub reachable_pairs: u64,
    pub unreachable_pairs: u64,
}

/// Observed statistics of `net` in `mode`; the benchmark, S and Q fields
/// are left empty for the caller to fill in.
pub fn observed_stats(
    net: &AssociationNetwork,
    mode: Mode,
    low_degree: LowDegree,
) -> Result<NetworkStats> {
    let g = view(net, mode)?;
    let paths = path_stats(&g, mode)?;
    let degrees = net.degree_summary();
    Ok(NetworkStats {
        mode,
        n: g.node_count(),
        m: g.arc_count(),
        diameter: paths.diameter,
        density: density(&g, mode)?,
        aspl: paths.aspl,
        aspl_random: None,
        mean_in_out: match mode {
            Mode::Directed => degrees.mean_in_out,
            Mode::Undirected => None,
        },
        mean_degree: degrees.mean_degree,
        cc: average_clustering(&g, mode, low_degree)?,
        cc_random: None,
        smallworldness: None,
        modularity: None,
        reachable_pairs: paths.reachable_pairs,
        unreachable_pairs: paths.unreachable_pairs,
    })
}
