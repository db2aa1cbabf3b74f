//! Newman modularity and multi-level (Louvain) community detection on
//! undirected networks.
//!
//! Edge weights are integer endorsement counts, so all aggregated weights
//! stay integral and gain comparisons are made on `2W·k_in − k·Σ_tot`,
//! which is exact in `f64` well past any realistic network size. Ties are
//! therefore real ties and are broken by community id.
//!
//! Detection runs several complete multi-level passes (one in ascending id
//! order, the rest in seeded random orders), each refined back down to the
//! original nodes, and keeps the one with the highest Q.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{AssociationNetwork, NodeId};
use crate::{Error, Result};

/// Non-overlapping assignment of nodes to communities `0..count`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Partition {
    assignment: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Relabels arbitrary community labels densely, in order of first appearance.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let assignment = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(i) => i,
                None => {
                    seen.push(l);
                    seen.len() - 1
                }
            })
            .collect();
        Partition {
            assignment,
            count: seen.len(),
        }
    }

    /// Every node in one community.
    pub fn single(n: usize) -> Self {
        Partition {
            assignment: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    /// Every node alone.
    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n).collect(),
            count: n,
        }
    }

    /// Relabels `usize` labels (each `< assignment.len()`) in order of first appearance.
    fn from_dense(mut assignment: Vec<usize>) -> Self {
        let mut relabel = vec![usize::MAX; assignment.len()];
        let mut count = 0;
        for c in assignment.iter_mut() {
            if relabel[*c] == usize::MAX {
                relabel[*c] = count;
                count += 1;
            }
            *c = relabel[*c];
        }
        Partition { assignment, count }
    }

    pub fn community_of(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    /// Node ids grouped by community, each group ascending.
    pub fn groups(&self) -> Vec<Vec<NodeId>> {
        let mut groups = vec![Vec::new(); self.count];
        for (v, &c) in self.assignment.iter().enumerate() {
            groups[c].push(v);
        }
        groups
    }
}

fn require_undirected(net: &AssociationNetwork) -> Result<()> {
    if net.is_directed() {
        Err(Error::input(
            "modularity is defined on the undirected projection",
        ))
    } else {
        Ok(())
    }
}

/// Newman's Q = (1/2W) Σ_ij (w_ij − s_i s_j / 2W) δ(c_i, c_j).
///
/// With `weighted == false` every edge counts 1 and strengths are degrees.
pub fn modularity_q(
    net: &AssociationNetwork,
    partition: &Partition,
    weighted: bool,
) -> Result<f64> {
    require_undirected(net)?;
    let n = net.node_count();
    if partition.len() != n {
        return Err(Error::input(alloc::format!(
            "partition covers {} nodes, network has {n}",
            partition.len()
        )));
    }
    let w = |weight: u64| if weighted { weight as f64 } else { 1.0 };
    let mut internal = vec![0.0; partition.community_count()];
    let mut strength = vec![0.0; partition.community_count()];
    let mut total = 0.0;
    for a in net.arcs() {
        let (cu, cv) = (
            partition.community_of(a.source),
            partition.community_of(a.target),
        );
        let x = w(a.weight);
        total += x;
        strength[cu] += x;
        strength[cv] += x;
        if cu == cv {
            internal[cu] += x;
        }
    }
    if total == 0.0 {
        return Err(Error::undefined("modularity of a network without edges"));
    }
    let two_w = 2.0 * total;
    Ok(internal
        .iter()
        .zip(&strength)
        .map(|(l, s)| l / total - (s / two_w) * (s / two_w))
        .sum())
}

/// Weighted graph used at each Louvain level.
#[derive(Clone)]
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
    strength: Vec<f64>,
    /// Total edge weight W (self-loops counted once).
    total: f64,
}

impl Level {
    fn from_network(net: &AssociationNetwork, weighted: bool) -> Self {
        let n = net.node_count();
        let adj: Vec<Vec<(usize, f64)>> = (0..n)
            .map(|v| {
                net.out_neighbors(v)
                    .iter()
                    .zip(net.out_weights(v))
                    .map(|(&u, &w)| (u, if weighted { w as f64 } else { 1.0 }))
                    .collect()
            })
            .collect();
        let strength: Vec<f64> = adj
            .iter()
            .map(|row| row.iter().map(|e| e.1).sum())
            .collect();
        let total = strength.iter().sum::<f64>() / 2.0;
        Level {
            adj,
            self_loop: vec![0.0; n],
            strength,
            total,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Greedy local moving from `start` (singletons when `None`). Returns the
    /// dense community of every node and whether any node moved.
    fn local_moves(&self, start: Option<Vec<usize>>, order: &[usize]) -> (Vec<usize>, bool) {
        let n = self.len();
        let two_w = 2.0 * self.total;
        let mut community: Vec<usize> = start.unwrap_or_else(|| (0..n).collect());
        let mut tot = vec![0.0; n];
        for (v, &c) in community.iter().enumerate() {
            tot[c] += self.strength[v];
        }
        let mut link = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut is_touched = vec![false; n];
        let mut moved_any = false;

        // Each accepted move strictly increases Q, so this terminates; the cap
        // only guards against pathological float behavior.
        for _ in 0..10_000 {
            let mut moved = false;
            for &v in order {
                let own = community[v];
                let k = self.strength[v];
                tot[own] -= k;

                for &(u, w) in &self.adj[v] {
                    let c = community[u];
                    if !is_touched[c] {
                        is_touched[c] = true;
                        touched.push(c);
                    }
                    link[c] += w;
                }
                let gain = |c: usize, link_c: f64| two_w * link_c - k * tot[c];

                let stay = gain(own, link[own]);
                let mut best = own;
                let mut best_gain = stay;
                touched.sort_unstable();
                for &c in &touched {
                    if c == own {
                        continue;
                    }
                    let g = gain(c, link[c]);
                    if g > best_gain || (g == best_gain && c < best && g > stay) {
                        best = c;
                        best_gain = g;
                    }
                }
                for &c in &touched {
                    link[c] = 0.0;
                    is_touched[c] = false;
                }
                touched.clear();

                tot[best] += k;
                if best != own {
                    community[v] = best;
                    moved = true;
                    moved_any = true;
                }
            }
            if !moved {
                break;
            }
        }
        (Partition::from_dense(community).assignment, moved_any)
    }

    /// Kernighan–Lin style vertex-mover rounds. In each round every node is
    /// moved exactly once, always taking the best available move (largest
    /// gain, possibly negative; lowest node then lowest community on ties),
    /// and the round is rolled back to its best prefix. Rounds repeat while
    /// they improve Q. Moves to an empty community are allowed.
    fn fine_tune(&self, mut community: Vec<usize>) -> Vec<usize> {
        let n = self.len();
        if n < 2 {
            return community;
        }
        let two_w = 2.0 * self.total;
        let mut link = vec![0.0; n];
        let mut is_touched = vec![false; n];
        let mut touched: Vec<usize> = Vec::new();

        for _round in 0..100 {
            let mut tot = vec![0.0; n];
            let mut size = vec![0usize; n];
            for (v, &c) in community.iter().enumerate() {
                tot[c] += self.strength[v];
                size[c] += 1;
            }
            let mut locked = vec![false; n];
            let mut moves: Vec<(usize, usize, usize)> = Vec::with_capacity(n);
            let (mut total, mut best_total, mut best_len) = (0.0, 0.0, 0usize);

            for _ in 0..n {
                let empty = size.iter().position(|&s| s == 0);
                // (delta, node, target)
                let mut pick: Option<(f64, usize, usize)> = None;
                for v in (0..n).filter(|&v| !locked[v]) {
                    let own = community[v];
                    let k = self.strength[v];
                    for &(u, w) in &self.adj[v] {
                        let c = community[u];
                        if !is_touched[c] {
                            is_touched[c] = true;
                            touched.push(c);
                        }
                        link[c] += w;
                    }
                    let own_tot = tot[own] - k;
                    let stay = two_w * link[own] - k * own_tot;
                    touched.sort_unstable();
                    let mut consider = |delta: f64, c: usize| {
                        let better = match pick {
                            None => true,
                            Some((d, pv, pc)) => delta > d || (delta == d && (v, c) < (pv, pc)),
                        };
                        if better {
                            pick = Some((delta, v, c));
                        }
                    };
                    for &c in &touched {
                        if c != own {
                            consider(two_w * link[c] - k * tot[c] - stay, c);
                        }
                    }
                    if size[own] > 1 {
                        if let Some(e) = empty {
                            consider(-stay, e);
                        }
                    }
                    for &c in &touched {
                        link[c] = 0.0;
                        is_touched[c] = false;
                    }
                    touched.clear();
                }
                let Some((delta, v, target)) = pick else {
                    break;
                };
                let own = community[v];
                tot[own] -= self.strength[v];
                size[own] -= 1;
                tot[target] += self.strength[v];
                size[target] += 1;
                community[v] = target;
                locked[v] = true;
                moves.push((v, own, target));
                total += delta;
                if total > best_total {
                    best_total = total;
                    best_len = moves.len();
                }
            }
            for &(v, from, _) in moves[best_len..].iter().rev() {
                community[v] = from;
            }
            if best_len == 0 {
                break;
            }
        }
        Partition::from_dense(community).assignment
    }

    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut self_loop = vec![0.0; count];
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); count];
        for v in 0..self.len() {
            let cv = community[v];
            self_loop[cv] += self.self_loop[v];
            for &(u, w) in &self.adj[v] {
                let cu = community[u];
                if cu == cv {
                    // Seen from both endpoints.
                    self_loop[cv] += w / 2.0;
                } else {
                    rows[cv].push((cu, w));
                }
            }
        }
        let adj: Vec<Vec<(usize, f64)>> = rows
            .into_iter()
            .map(|mut row| {
                row.sort_unstable_by_key(|e| e.0);
                let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
                for (u, w) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == u => last.1 += w,
                        _ => merged.push((u, w)),
                    }
                }
                merged
            })
            .collect();
        let strength = adj
            .iter()
            .zip(&self_loop)
            .map(|(row, sl)| row.iter().map(|e| e.1).sum::<f64>() + 2.0 * sl)
            .collect();
        Level {
            adj,
            self_loop,
            strength,
            total: self.total,
        }
    }
}

/// Result of [`detect_communities`].
#[derive(Debug, Clone, PartialEq)]
pub struct Communities {
    pub partition: Partition,
    pub modularity: f64,
    /// Number of aggregation levels of the winning pass.
    pub levels: usize,
}

/// Algorithm stamp recorded alongside reported Q values.
pub const ALGORITHM: &str =
    "louvain-multilevel-refined (ascending-id pass + seeded-order restarts, lowest-id tie break)";

/// Seeded-order passes run after the ascending-id pass.
pub const DEFAULT_RESTARTS: usize = 8;

/// Node visiting order for one pass at one level.
enum SweepOrder<'a> {
    Ascending,
    Shuffled(&'a mut ChaCha8Rng),
}

impl SweepOrder<'_> {
    fn order(&mut self, n: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        if let SweepOrder::Shuffled(rng) = self {
            order.shuffle(*rng);
        }
        order
    }
}

/// One multi-level pass: coarsen until no node moves, then refine the
/// result back down through every level.
fn louvain_pass(base: &Level, mut sweep: SweepOrder<'_>) -> (Vec<usize>, usize) {
    let mut stack: Vec<(Level, Vec<usize>)> = Vec::new();
    let mut level = base.clone();
    loop {
        let order = sweep.order(level.len());
        let (community, moved) = level.local_moves(None, &order);
        if !moved {
            break;
        }
        let count = community.iter().max().map_or(0, |m| m + 1);
        let coarser = level.aggregate(&community, count);
        stack.push((level, community));
        level = coarser;
    }
    let levels = stack.len();
    if levels == 0 {
        return ((0..base.len()).collect(), 0);
    }
    let mut assignment: Vec<usize> = (0..level.len()).collect();
    while let Some((finer, community)) = stack.pop() {
        let projected = community.iter().map(|&c| assignment[c]).collect();
        let order = sweep.order(finer.len());
        assignment = finer.local_moves(Some(projected), &order).0;
    }
    (assignment, levels)
}

/// Louvain modularity maximization with multilevel refinement.
///
/// The first pass sweeps nodes in ascending id order; `restarts` further
/// passes sweep in orders drawn from ChaCha8 seeded with `seed`. Equal-gain
/// moves go to the lowest community id and the best pass wins (earliest on
/// ties), so the result is a pure function of the network, `seed` and
/// `restarts`.
pub fn detect_communities(
    net: &AssociationNetwork,
    seed: u64,
    weighted: bool,
) -> Result<Communities> {
    detect_communities_with(net, seed, weighted, DEFAULT_RESTARTS)
}

pub fn detect_communities_with(
    net: &AssociationNetwork,
    seed: u64,
    weighted: bool,
    restarts: usize,
) -> Result<Communities> {
    require_undirected(net)?;
    let base = Level::from_network(net, weighted);
    if base.total == 0.0 {
        return Err(Error::undefined(
            "community detection on a network without edges",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Communities> = None;
    for pass in 0..=restarts {
        let sweep = if pass == 0 {
            SweepOrder::Ascending
        } else {
            SweepOrder::Shuffled(&mut rng)
        };
        let (membership, levels) = louvain_pass(&base, sweep);
        let partition = Partition::from_dense(base.fine_tune(membership));
        let modularity = modularity_q(net, &partition, weighted)?;
        if best.as_ref().is_none_or(|b| modularity > b.modularity) {
            best = Some(Communities {
                partition,
                modularity,
                levels,
            });
        }
    }
    Ok(best.expect("at least one pass"))
}
#[cfg(test)]
mod tests {
    use super::*;

    fn und(n: usize, edges: &[(usize, usize)]) -> AssociationNetwork {
        AssociationNetwork::from_arcs(n, edges.iter().map(|&(a, b)| (a, b, 1)), false).unwrap()
    }

    fn two_triangles() -> AssociationNetwork {
        und(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    }

    #[test]
    fn k2_single_community() {
        let g = und(2, &[(0, 1)]);
        assert_eq!(modularity_q(&g, &Partition::single(2), true).unwrap(), 0.0);
    }

    #[test]
    fn bridged_triangles() {
        let p = Partition::from_labels(&[0, 0, 0, 1, 1, 1]);
        let q = modularity_q(&two_triangles(), &p, false).unwrap();
        assert!((q - 5.0 / 14.0).abs() < 1e-12, "{q}");
    }

    #[test]
    fn modularity_errors() {
        let g = two_triangles();
        assert!(matches!(
            modularity_q(&g, &Partition::single(5), true),
            Err(Error::Input(_))
        ));
        let empty = und(3, &[]);
        assert!(matches!(
            modularity_q(&empty, &Partition::single(3), true),
            Err(Error::Undefined(_))
        ));
        let directed = AssociationNetwork::from_arcs(2, [(0, 1, 1)], true).unwrap();
        assert!(modularity_q(&directed, &Partition::single(2), true).is_err());
    }

    #[test]
    fn weights_matter_when_weighted() {
        // Path 0-1-2 with a heavy 0-1 edge.
        let g = AssociationNetwork::from_arcs(3, [(0, 1, 9), (1, 2, 1)], false).unwrap();
        let p = Partition::from_labels(&[0, 0, 1]);
        let weighted = modularity_q(&g, &p, true).unwrap();
        let unweighted = modularity_q(&g, &p, false).unwrap();
        assert!(
            (weighted - (0.9 - (19.0f64 / 20.0).powi(2) - (1.0f64 / 20.0).powi(2))).abs() < 1e-12
        );
        assert!((unweighted - (0.5 - 0.5625 - 0.0625)).abs() < 1e-12);
    }

    #[test]
    fn louvain_recovers_triangles() {
        let found = detect_communities(&two_triangles(), 42, false).unwrap();
        assert_eq!(found.partition.assignment(), &[0, 0, 0, 1, 1, 1]);
        assert!((found.modularity - 5.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn louvain_keeps_cliques_whole() {
        let k5 = und(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
            ],
        );
        let found = detect_communities(&k5, 1, true).unwrap();
        assert_eq!(found.partition.community_count(), 1);
        assert!(found.modularity.abs() < 1e-12);
    }

    #[test]
    fn louvain_splits_components() {
        let g = und(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let found = detect_communities(&g, 0, true).unwrap();
        assert_eq!(found.partition.community_count(), 2);
        assert!((found.modularity - 0.5).abs() < 1e-12);
        assert!(detect_communities(&und(3, &[]), 0, true).is_err());
    }

    #[test]
    fn partition_relabels_densely() {
        let p = Partition::from_labels(&["x", "y", "x", "z"]);
        assert_eq!(p.assignment(), &[0, 1, 0, 2]);
        assert_eq!(p.community_count(), 3);
        assert_eq!(p.groups(), vec![vec![0, 2], vec![1], vec![3]]);
    }
}
