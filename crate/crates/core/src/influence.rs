//! Influential-spreader centralities and the composite spreading score.
//!
//! Everything here runs on the unweighted undirected projection with hop
//! distances. The composite follows the integrated-value-of-influence
//! recipe: a "spreading" factor built from neighborhood connectivity,
//! ClusterRank, betweenness and collective influence, and a "hubness"
//! factor from degree and local H-index. Each sum is range-normalized to
//! `[1, 100]` before being multiplied.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{AssociationNetwork, NodeId};
use crate::metrics::{bfs_into, clustering_profile, UNREACHABLE};
use crate::par;
use crate::{Error, Result};

/// Stamp recorded next to every reported spreading score.
pub const SPREADING_VARIANT: &str = "reconstructed-IVI-v1";

/// Collective-influence radius used when none is given.
pub const DEFAULT_CI_RADIUS: u32 = 2;

fn degrees(g: &AssociationNetwork) -> Vec<usize> {
    (0..g.node_count())
        .map(|v| g.out_neighbors(v).len())
        .collect()
}

/// Unnormalized shortest-path betweenness over unordered pairs (Brandes).
pub fn betweenness_all(net: &AssociationNetwork) -> Vec<f64> {
    let g = net.undirected();
    let n = g.node_count();
    let blocks = par::map_blocks(n, |range| {
        let mut acc = vec![0.0f64; n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![UNREACHABLE; n];
        let mut delta = vec![0.0f64; n];
        let mut order: Vec<NodeId> = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for s in range {
            sigma.fill(0.0);
            dist.fill(UNREACHABLE);
            delta.fill(0.0);
            order.clear();
            sigma[s] = 1.0;
            dist[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in g.out_neighbors(v) {
                    if dist[w] == UNREACHABLE {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                    if dist[w] == dist[v] + 1 {
                        sigma[w] += sigma[v];
                    }
                }
            }
            // Predecessors of w are its neighbors one hop closer to s.
            for &w in order.iter().rev() {
                let coeff = (1.0 + delta[w]) / sigma[w];
                for &v in g.out_neighbors(w) {
                    if dist[v] != UNREACHABLE && dist[v] + 1 == dist[w] {
                        delta[v] += sigma[v] * coeff;
                    }
                }
                if w != s {
                    acc[w] += delta[w];
                }
            }
        }
        acc
    });
    let mut bc = vec![0.0; n];
    for block in blocks {
        for (total, x) in bc.iter_mut().zip(block) {
            *total += x;
        }
    }
    // Each unordered pair was visited from both ends.
    bc.iter_mut().for_each(|x| *x /= 2.0);
    bc
}

/// Largest h such that at least h neighbors have degree ≥ h.
pub fn local_h_index(net: &AssociationNetwork) -> Vec<usize> {
    let g = net.undirected();
    let k = degrees(&g);
    (0..g.node_count())
        .map(|v| {
            let mut nd: Vec<usize> = g.out_neighbors(v).iter().map(|&u| k[u]).collect();
            nd.sort_unstable_by(|a, b| b.cmp(a));
            nd.iter().enumerate().take_while(|(i, &d)| d > *i).count()
        })
        .collect()
}

/// Mean degree of each node's neighbors (0 for isolated nodes).
pub fn neighborhood_connectivity(net: &AssociationNetwork) -> Vec<f64> {
    let g = net.undirected();
    let k = degrees(&g);
    (0..g.node_count())
        .map(|v| {
            let hood = g.out_neighbors(v);
            if hood.is_empty() {
                0.0
            } else {
                hood.iter().map(|&u| k[u] as f64).sum::<f64>() / hood.len() as f64
            }
        })
        .collect()
}

/// ClusterRank: 10^(−cc_v) · Σ_{u ∈ N(v)} (k_u + 1).
pub fn clusterrank(net: &AssociationNetwork) -> Vec<f64> {
    let g = net.undirected();
    let k = degrees(&g);
    let cc = clustering_profile(&g);
    (0..g.node_count())
        .map(|v| {
            let s: usize = g.out_neighbors(v).iter().map(|&u| k[u] + 1).sum();
            libm::pow(10.0, -cc[v].0) * s as f64
        })
        .collect()
}

/// Collective influence CI_ℓ(v) = (k_v − 1) · Σ_{u at distance exactly ℓ} (k_u − 1).
pub fn collective_influence(net: &AssociationNetwork, radius: u32) -> Result<Vec<f64>> {
    if radius < 1 {
        return Err(Error::input(
            "collective influence radius must be at least 1",
        ));
    }
    let g = net.undirected();
    let n = g.node_count();
    let k = degrees(&g);
    let values = par::map_blocks(n, |range| {
        let mut dist = vec![UNREACHABLE; n];
        let mut queue = VecDeque::new();
        range
            .map(|v| {
                let own = k[v].saturating_sub(1) as u64;
                if own == 0 {
                    return 0.0;
                }
                truncated_bfs(&g, v, radius, &mut dist, &mut queue);
                let frontier: u64 = dist
                    .iter()
                    .zip(&k)
                    .filter(|(d, _)| **d == radius)
                    .map(|(_, &ku)| ku.saturating_sub(1) as u64)
                    .sum();
                (own * frontier) as f64
            })
            .collect::<Vec<_>>()
    });
    Ok(values.into_iter().flatten().collect())
}

fn truncated_bfs(
    g: &AssociationNetwork,
    s: NodeId,
    radius: u32,
    dist: &mut [u32],
    queue: &mut VecDeque<NodeId>,
) {
    if radius == u32::MAX {
        bfs_into(g, s, dist, queue);
        return;
    }
    dist.fill(UNREACHABLE);
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &w in g.out_neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Maps values linearly onto `[1, 100]`; a constant input maps to all 1.
pub fn range_normalize(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::input("cannot range-normalize an empty sequence"));
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::input("range normalization of non-finite values"));
    }
    if hi == lo {
        return Ok(vec![1.0; values.len()]);
    }
    Ok(values
        .iter()
        .map(|x| 1.0 + 99.0 * (x - lo) / (hi - lo))
        .collect())
}

/// Per-node ingredient centralities and composite scores.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NodeInfluence {
    pub degree: f64,
    pub h_index: f64,
    pub connectivity: f64,
    pub clusterrank: f64,
    pub betweenness: f64,
    pub collective_influence: f64,
    pub spreading: f64,
    pub ivi: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InfluenceTable {
    pub radius: u32,
    pub rows: Vec<NodeInfluence>,
}

impl InfluenceTable {
    pub fn spreading(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.spreading).collect()
    }

    pub fn ivi(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.ivi).collect()
    }
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Computes every centrality and the composite scores.
///
/// `spreading = rn(rn(NC + CR) · rn(BC + CI))` and
/// `ivi = rn(rn(DC + LH) · rn(NC + CR) · rn(BC + CI))`, where `rn` is
/// [`range_normalize`].
pub fn spreading_scores(net: &AssociationNetwork, radius: u32) -> Result<InfluenceTable> {
    let g = net.undirected();
    let dc: Vec<f64> = degrees(&g).into_iter().map(|k| k as f64).collect();
    let lh: Vec<f64> = local_h_index(&g).into_iter().map(|h| h as f64).collect();
    let nc = neighborhood_connectivity(&g);
    let cr = clusterrank(&g);
    let bc = betweenness_all(&g);
    let ci = collective_influence(&g, radius)?;

    let raw = mul(
        &range_normalize(&add(&nc, &cr))?,
        &range_normalize(&add(&bc, &ci))?,
    );
    let spreading = range_normalize(&raw)?;
    let hubness = range_normalize(&add(&dc, &lh))?;
    let ivi = range_normalize(&mul(&hubness, &raw))?;

    let rows = (0..g.node_count())
        .map(|v| NodeInfluence {
            degree: dc[v],
            h_index: lh[v],
            connectivity: nc[v],
            clusterrank: cr[v],
            betweenness: bc[v],
            collective_influence: ci[v],
            spreading: spreading[v],
            ivi: ivi[v],
        })
        .collect();
    Ok(InfluenceTable { radius, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn und(n: usize, edges: &[(usize, usize)]) -> AssociationNetwork {
        AssociationNetwork::from_arcs(n, edges.iter().map(|&(a, b)| (a, b, 1)), false).unwrap()
    }

    fn star3() -> AssociationNetwork {
        und(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn triangle() -> AssociationNetwork {
        und(3, &[(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn betweenness_examples() {
        assert_eq!(
            betweenness_all(&und(3, &[(0, 1), (1, 2)])),
            vec![0.0, 1.0, 0.0]
        );
        assert_eq!(betweenness_all(&star3()), vec![3.0, 0.0, 0.0, 0.0]);
        let k4 = und(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(betweenness_all(&k4), vec![0.0; 4]);
        // square: two shortest paths between opposite corners
        let c4 = und(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(betweenness_all(&c4), vec![0.5; 4]);
    }

    #[test]
    fn h_index_examples() {
        // node 0 has neighbors of degree 3, 2 and 1
        let g = und(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 4)]);
        assert_eq!(local_h_index(&g)[0], 2);
        assert_eq!(local_h_index(&und(2, &[]))[0], 0);
        assert_eq!(local_h_index(&triangle()), vec![2, 2, 2]);
    }

    #[test]
    fn connectivity_examples() {
        let nc = neighborhood_connectivity(&star3());
        assert_eq!(nc, vec![1.0, 3.0, 3.0, 3.0]);
        let ring: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        assert!(neighborhood_connectivity(&und(8, &ring))
            .iter()
            .all(|&x| x == 2.0));
    }

    #[test]
    fn clusterrank_examples() {
        assert_eq!(clusterrank(&star3())[0], 6.0);
        assert!((clusterrank(&triangle())[0] - 0.6).abs() < 1e-12);
        assert_eq!(clusterrank(&und(2, &[]))[0], 0.0);
    }

    #[test]
    fn collective_influence_examples() {
        assert_eq!(collective_influence(&triangle(), 1).unwrap(), vec![2.0; 3]);
        assert_eq!(collective_influence(&star3(), 1).unwrap()[0], 0.0);
        let path = und(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(collective_influence(&path, 2).unwrap()[0], 0.0);
        // node 1 on the path: (2−1) · (k_3 − 1) = 0; node 0 at radius 3 likewise zero.
        assert_eq!(collective_influence(&path, 2).unwrap()[1], 0.0);
        assert!(collective_influence(&path, 0).is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(
            range_normalize(&[0.0, 50.0, 100.0]).unwrap(),
            vec![1.0, 50.5, 100.0]
        );
        assert_eq!(range_normalize(&[7.0, 7.0, 7.0]).unwrap(), vec![1.0; 3]);
        assert_eq!(range_normalize(&[-3.0, 9.0]).unwrap(), vec![1.0, 100.0]);
        assert!(range_normalize(&[]).is_err());
    }

    #[test]
    fn degenerate_networks_score_one() {
        let t = spreading_scores(&und(1, &[]), 2).unwrap();
        assert_eq!((t.rows[0].spreading, t.rows[0].ivi), (1.0, 1.0));
        let t = spreading_scores(&und(4, &[]), 2).unwrap();
        assert!(t.rows.iter().all(|r| r.spreading == 1.0 && r.ivi == 1.0));
    }

    #[test]
    fn star_center_dominates() {
        let t = spreading_scores(&star3(), 2).unwrap();
        let (c, leaf) = (t.rows[0], t.rows[1]);
        assert!(c.degree > leaf.degree && c.h_index >= leaf.h_index);
        assert!(c.spreading > leaf.spreading);
        assert!(c.ivi > leaf.ivi);
    }
}
