//! In-memory association network: node table, sorted arc list and CSR-style
//! adjacency indices.
//!
//! Networks are immutable once built. Directed networks keep separate out/in
//! indices; undirected networks store each edge once in the arc list with
//! `source < target`, and both indices hold the full symmetric adjacency.

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use unicode_normalization::UnicodeNormalization;

use crate::{Error, Result};

/// Dense node index, `0..n`.
pub type NodeId = usize;

/// Endorsement count carried by an arc.
pub type Weight = u64;

pub const MIN_RATING: f64 = 1.0;
pub const MAX_RATING: f64 = 7.0;

/// Canonical form of a word label: trimmed, lower-cased, NFC-normalized.
pub fn normalize_label(raw: &str) -> String {
    raw.trim().to_lowercase().nfc().collect()
}

pub(crate) fn rating_in_range(r: f64) -> bool {
    (MIN_RATING..=MAX_RATING).contains(&r)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WordNode {
    pub id: NodeId,
    pub label: String,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub concreteness: Option<f64>,
    pub is_cue: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Arc {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: Weight,
}

/// Which side of the adjacency to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
    Union,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    weights: Vec<Weight>,
}

impl Csr {
    /// `pairs` must be sorted by (row, column).
    fn from_sorted(n: usize, pairs: &[(NodeId, NodeId, Weight)]) -> Self {
        let mut offsets = alloc::vec![0usize; n + 1];
        for &(row, _, _) in pairs {
            offsets[row + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Csr {
            offsets,
            neighbors: pairs.iter().map(|p| p.1).collect(),
            weights: pairs.iter().map(|p| p.2).collect(),
        }
    }

    fn row(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    fn row_weights(&self, v: NodeId) -> &[Weight] {
        &self.weights[self.offsets[v]..self.offsets[v + 1]]
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(into = "NetworkRecord", try_from = "NetworkRecord")
)]
pub struct AssociationNetwork {
    nodes: Vec<WordNode>,
    arcs: Vec<Arc>,
    directed: bool,
    out_index: Csr,
    in_index: Csr,
}

/// Plain persisted form of a network: `directed`, `nodes`, `arcs`, with
/// nodes sorted by id and arcs by (source, target).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NetworkRecord {
    pub directed: bool,
    pub nodes: Vec<WordNode>,
    pub arcs: Vec<Arc>,
}

impl From<AssociationNetwork> for NetworkRecord {
    fn from(net: AssociationNetwork) -> Self {
        NetworkRecord {
            directed: net.directed,
            nodes: net.nodes,
            arcs: net.arcs,
        }
    }
}

impl TryFrom<NetworkRecord> for AssociationNetwork {
    type Error = Error;

    fn try_from(rec: NetworkRecord) -> Result<Self> {
        AssociationNetwork::new(rec.nodes, rec.arcs, rec.directed)
    }
}

impl AssociationNetwork {
    /// Validates and indexes a network.
    ///
    /// Node ids must be exactly `0..n` (in any order), labels unique after
    /// normalization, ratings within the 1–7 scale, arcs free of self-loops
    /// and duplicates, and every weight at least 1. Undirected edges may be
    /// given in either orientation; they are stored as `(min, max)`.
    pub fn new(mut nodes: Vec<WordNode>, arcs: Vec<Arc>, directed: bool) -> Result<Self> {
        nodes.sort_by_key(|node| node.id);
        let n = nodes.len();
        let mut seen = BTreeMap::new();
        for (i, node) in nodes.iter_mut().enumerate() {
            if node.id != i {
                return Err(Error::input("node ids must be contiguous from 0"));
            }
            node.label = normalize_label(&node.label);
            if node.label.is_empty() {
                return Err(Error::input(alloc::format!("node {i} has an empty label")));
            }
            if let Some(r) = node.concreteness {
                if !rating_in_range(r) {
                    return Err(Error::input(alloc::format!(
                        "concreteness {r} of '{}' outside [1, 7]",
                        node.label
                    )));
                }
            }
            if seen.insert(node.label.clone(), i).is_some() {
                return Err(Error::input(alloc::format!(
                    "duplicate label '{}'",
                    node.label
                )));
            }
        }

        let mut arcs = arcs;
        for arc in arcs.iter_mut() {
            if arc.source >= n {
                return Err(Error::NodeOutOfRange { id: arc.source, n });
            }
            if arc.target >= n {
                return Err(Error::NodeOutOfRange { id: arc.target, n });
            }
            if arc.source == arc.target {
                return Err(Error::input(alloc::format!(
                    "self-loop on node {}",
                    arc.source
                )));
            }
            if arc.weight == 0 {
                return Err(Error::input("arc weights must be at least 1"));
            }
            if !directed && arc.source > arc.target {
                core::mem::swap(&mut arc.source, &mut arc.target);
            }
        }
        arcs.sort_unstable_by_key(|a| (a.source, a.target));
        if let Some(w) = arcs
            .windows(2)
            .find(|w| (w[0].source, w[0].target) == (w[1].source, w[1].target))
        {
            return Err(Error::input(alloc::format!(
                "parallel arcs {} -> {}",
                w[0].source,
                w[0].target
            )));
        }

        Ok(Self::index(nodes, arcs, directed))
    }

    /// Indexes already-validated parts. Arcs must be sorted and canonical.
    pub(crate) fn index(nodes: Vec<WordNode>, arcs: Vec<Arc>, directed: bool) -> Self {
        let n = nodes.len();
        let (out_index, in_index) = if directed {
            let out: Vec<_> = arcs
                .iter()
                .map(|a| (a.source, a.target, a.weight))
                .collect();
            let mut inn: Vec<_> = arcs
                .iter()
                .map(|a| (a.target, a.source, a.weight))
                .collect();
            inn.sort_unstable_by_key(|p| (p.0, p.1));
            (Csr::from_sorted(n, &out), Csr::from_sorted(n, &inn))
        } else {
            let mut both: Vec<_> = arcs
                .iter()
                .flat_map(|a| {
                    [
                        (a.source, a.target, a.weight),
                        (a.target, a.source, a.weight),
                    ]
                })
                .collect();
            both.sort_unstable_by_key(|p| (p.0, p.1));
            let csr = Csr::from_sorted(n, &both);
            (csr.clone(), csr)
        };
        AssociationNetwork {
            nodes,
            arcs,
            directed,
            out_index,
            in_index,
        }
    }

    /// Network with `n` unlabeled nodes (labels are their ids) and the given arcs.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (NodeId, NodeId, Weight)>,
        directed: bool,
    ) -> Result<Self> {
        let nodes = (0..n)
            .map(|id| WordNode {
                id,
                label: alloc::format!("{id}"),
                concreteness: None,
                is_cue: false,
            })
            .collect();
        let arcs = arcs
            .into_iter()
            .map(|(source, target, weight)| Arc {
                source,
                target,
                weight,
            })
            .collect();
        Self::new(nodes, arcs, directed)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of arcs (directed) or edges (undirected).
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn nodes(&self) -> &[WordNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn node(&self, v: NodeId) -> Option<&WordNode> {
        self.nodes.get(v)
    }

    pub fn find(&self, label: &str) -> Option<NodeId> {
        let key = normalize_label(label);
        self.nodes.iter().position(|n| n.label == key)
    }

    /// Sorted out-neighbors. For undirected networks, all neighbors.
    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        self.out_index.row(v)
    }

    /// Sorted in-neighbors. For undirected networks, all neighbors.
    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        self.in_index.row(v)
    }

    /// Weights parallel to [`out_neighbors`](Self::out_neighbors).
    pub fn out_weights(&self, v: NodeId) -> &[Weight] {
        self.out_index.row_weights(v)
    }

    pub fn in_weights(&self, v: NodeId) -> &[Weight] {
        self.in_index.row_weights(v)
    }

    pub fn has_arc(&self, u: NodeId, v: NodeId) -> bool {
        self.out_neighbors(u).binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: NodeId, dir: Direction) -> Result<Vec<NodeId>> {
        let n = self.node_count();
        if v >= n {
            return Err(Error::NodeOutOfRange { id: v, n });
        }
        Ok(match dir {
            Direction::Out => self.out_neighbors(v).to_vec(),
            Direction::In => self.in_neighbors(v).to_vec(),
            Direction::Union => merge_sorted(self.out_neighbors(v), self.in_neighbors(v)),
        })
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let n = self.node_count();
        let per_node: Vec<NodeDegree> = (0..n)
            .map(|v| {
                let k_out = self.out_neighbors(v).len();
                let k_in = self.in_neighbors(v).len();
                let k = if self.directed { k_in + k_out } else { k_out };
                NodeDegree { k_in, k_out, k }
            })
            .collect();
        let m = self.arc_count() as f64;
        let (mean_in_out, mean_degree) = if n == 0 {
            (self.directed.then_some(0.0), 0.0)
        } else {
            let n = n as f64;
            (self.directed.then_some(m / n), 2.0 * m / n)
        };
        DegreeSummary {
            per_node,
            mean_in_out,
            mean_degree,
        }
    }

    /// Collapses a directed network onto its undirected projection. Reciprocal
    /// arcs merge into a single edge whose weight is the sum of both arcs.
    pub fn to_undirected(&self) -> Result<AssociationNetwork> {
        if !self.directed {
            return Err(Error::input("network is already undirected"));
        }
        let mut merged: BTreeMap<(NodeId, NodeId), Weight> = BTreeMap::new();
        for a in &self.arcs {
            let key = (a.source.min(a.target), a.source.max(a.target));
            *merged.entry(key).or_insert(0) += a.weight;
        }
        let arcs = merged
            .into_iter()
            .map(|((source, target), weight)| Arc {
                source,
                target,
                weight,
            })
            .collect();
        Ok(Self::index(self.nodes.clone(), arcs, false))
    }

    /// The network itself when undirected, otherwise its projection.
    pub fn undirected(&self) -> Cow<'_, AssociationNetwork> {
        if self.directed {
            Cow::Owned(self.to_undirected().expect("directed network"))
        } else {
            Cow::Borrowed(self)
        }
    }

    /// Keeps the arcs accepted by `keep` and every node they touch. Node ids
    /// are re-densified in ascending order of the original ids.
    pub fn subgraph_from_arcs<F>(&self, mut keep: F) -> Subgraph
    where
        F: FnMut(&Arc) -> bool,
    {
        let kept: Vec<Arc> = self.arcs.iter().copied().filter(|a| keep(a)).collect();
        let mut used = alloc::vec![false; self.node_count()];
        for a in &kept {
            used[a.source] = true;
            used[a.target] = true;
        }
        let mut remap = alloc::vec![usize::MAX; self.node_count()];
        let mut original_ids = Vec::new();
        let mut nodes = Vec::new();
        for (old, node) in self.nodes.iter().enumerate() {
            if used[old] {
                remap[old] = nodes.len();
                original_ids.push(old);
                nodes.push(WordNode {
                    id: remap[old],
                    ..node.clone()
                });
            }
        }
        let arcs = kept
            .into_iter()
            .map(|a| Arc {
                source: remap[a.source],
                target: remap[a.target],
                weight: a.weight,
            })
            .collect();
        Subgraph {
            network: Self::index(nodes, arcs, self.directed),
            original_ids,
        }
    }

    /// Total arc weight.
    pub fn total_weight(&self) -> Weight {
        self.arcs.iter().map(|a| a.weight).sum()
    }
}

/// Result of [`AssociationNetwork::subgraph_from_arcs`].
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph {
    pub network: AssociationNetwork,
    /// `original_ids[new_id]` is the node's id in the parent network.
    pub original_ids: Vec<NodeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeDegree {
    pub k_in: usize,
    pub k_out: usize,
    /// Total degree: `k_in + k_out` for directed networks, edge count otherwise.
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSummary {
    pub per_node: Vec<NodeDegree>,
    /// Mean in-degree (= mean out-degree = m/n). `None` for undirected networks.
    pub mean_in_out: Option<f64>,
    /// ⟨k⟩ = 2m/n.
    pub mean_degree: f64,
}

fn merge_sorted(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

/// Union of out- and in-neighbors, sorted and deduplicated. Never contains
/// `v` because networks have no self-loops.
pub(crate) fn union_neighbors(net: &AssociationNetwork, v: NodeId) -> Vec<NodeId> {
    if net.is_directed() {
        merge_sorted(net.out_neighbors(v), net.in_neighbors(v))
    } else {
        net.out_neighbors(v).to_vec()
    }
}
