//! Independent oracles and fixture generators shared by the integration and
//! acceptance suites. Nothing here calls into the algorithms it checks.
#![allow(dead_code, clippy::needless_range_loop)]

use assocnet_core::AssociationNetwork;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense adjacency matrix; for undirected networks it is symmetric.
pub fn adjacency_matrix(net: &AssociationNetwork) -> Vec<Vec<bool>> {
    let n = net.node_count();
    let mut adj = vec![vec![false; n]; n];
    for a in net.arcs() {
        adj[a.source][a.target] = true;
        if !net.is_directed() {
            adj[a.target][a.source] = true;
        }
    }
    adj
}

/// Symmetric closure of the adjacency matrix.
pub fn symmetrize(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    (0..n)
        .map(|i| (0..n).map(|j| adj[i][j] || adj[j][i]).collect())
        .collect()
}

/// All-pairs hop distances by Floyd–Warshall; `None` when unreachable.
pub fn floyd_warshall(adj: &[Vec<bool>]) -> Vec<Vec<Option<u32>>> {
    let n = adj.len();
    const INF: u64 = u64::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| (x < INF).then_some(x as u32))
                .collect()
        })
        .collect()
}

/// Local clustering by enumerating every ordered node pair (u, w) around v.
/// Works on directed matrices (union neighborhood, arcs counted) and on
/// symmetric ones (each edge then counted from both ends).
pub fn brute_local_clustering(adj: &[Vec<bool>], v: usize) -> f64 {
    let n = adj.len();
    let is_nb = |u: usize| u != v && (adj[v][u] || adj[u][v]);
    let k = (0..n).filter(|&u| is_nb(u)).count();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0u64;
    for u in 0..n {
        for w in 0..n {
            if u != w && is_nb(u) && is_nb(w) && adj[u][w] {
                links += 1;
            }
        }
    }
    links as f64 / (k as f64 * (k as f64 - 1.0))
}

/// Newman Q by the literal double sum over ordered node pairs.
pub fn brute_modularity(n: usize, edges: &[(usize, usize, f64)], labels: &[usize]) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in edges {
        a[u][v] += w;
        a[v][u] += w;
    }
    let s: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_w: f64 = s.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - s[i] * s[j] / two_w;
            }
        }
    }
    q / two_w
}

/// Best Q over every set partition of `0..n` (restricted growth strings).
pub fn exhaustive_best_modularity(n: usize, edges: &[(usize, usize, f64)]) -> (f64, Vec<usize>) {
    let mut labels = vec![0usize; n];
    let mut best = (f64::NEG_INFINITY, labels.clone());
    fn rec(
        i: usize,
        max_label: usize,
        n: usize,
        edges: &[(usize, usize, f64)],
        labels: &mut Vec<usize>,
        best: &mut (f64, Vec<usize>),
    ) {
        if i == n {
            let q = brute_modularity(n, edges, labels);
            if q > best.0 {
                *best = (q, labels.clone());
            }
            return;
        }
        for l in 0..=max_label + 1 {
            labels[i] = l;
            rec(i + 1, max_label.max(l), n, edges, labels, best);
        }
    }
    if n == 0 {
        return (0.0, labels);
    }
    labels[0] = 0;
    rec(1, 0, n, edges, &mut labels, &mut best);
    best
}

/// Unordered-pair betweenness by enumerating every shortest path, in exact
/// rational arithmetic.
pub fn betweenness_by_enumeration(adj: &[Vec<bool>]) -> Vec<Ratio<i128>> {
    let n = adj.len();
    let dist = floyd_warshall(adj);
    let mut bc = vec![Ratio::from_integer(0i128); n];
    for s in 0..n {
        for t in (s + 1)..n {
            let Some(d) = dist[s][t] else { continue };
            // count all shortest s-t paths and, per node, how many pass through it
            let mut total = 0i128;
            let mut through = vec![0i128; n];
            let mut path = vec![s];
            fn walk(
                adj: &[Vec<bool>],
                dist: &[Vec<Option<u32>>],
                t: usize,
                d: u32,
                path: &mut Vec<usize>,
                total: &mut i128,
                through: &mut [i128],
            ) {
                let u = *path.last().unwrap();
                if u == t {
                    *total += 1;
                    for &x in &path[1..path.len() - 1] {
                        through[x] += 1;
                    }
                    return;
                }
                let step = path.len() as u32;
                for w in 0..adj.len() {
                    if adj[u][w] && dist[w][t] == Some(d - step) {
                        path.push(w);
                        walk(adj, dist, t, d, path, total, through);
                        path.pop();
                    }
                }
            }
            walk(adj, &dist, t, d, &mut path, &mut total, &mut through);
            for v in 0..n {
                if through[v] > 0 {
                    bc[v] += Ratio::new(through[v], total);
                }
            }
        }
    }
    bc
}

pub fn ratio_to_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Two-sided Student-t p-value by composite Simpson integration of the
/// density over [0, |t|]: p = 1 − 2∫₀^|t| f(x) dx.
pub fn t_two_sided_by_quadrature(t: f64, df: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    let log_c =
        ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0) - 0.5 * (df * std::f64::consts::PI).ln();
    let f = |x: f64| (log_c - (df + 1.0) / 2.0 * (1.0 + x * x / df).ln()).exp();
    let t = t.abs();
    if t == 0.0 {
        return 1.0;
    }
    let steps = 200_000usize;
    let h = t / steps as f64;
    let mut s = f(0.0) + f(t);
    for i in 1..steps {
        let x = i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    1.0 - 2.0 * s * h / 3.0
}

/// Ring lattice: every node joined to its `k/2` nearest neighbors per side.
pub fn ring_lattice_edges(n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 1..=k / 2 {
            edges.push((i, (i + j) % n));
        }
    }
    edges
}

/// Watts–Strogatz rewiring of a ring lattice: each lattice edge (i, i+j)
/// has its far end moved to a uniformly random node with probability `p`,
/// avoiding self-loops and duplicates.
pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> AssociationNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![std::collections::BTreeSet::new(); n];
    for (u, v) in ring_lattice_edges(n, k) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    for j in 1..=k / 2 {
        for i in 0..n {
            let v = (i + j) % n;
            if rng.random::<f64>() < p {
                let w = rng.random_range(0..n);
                if w != i && !adj[i].contains(&w) && adj[i].contains(&v) {
                    adj[i].remove(&v);
                    adj[v].remove(&i);
                    adj[i].insert(w);
                    adj[w].insert(i);
                }
            }
        }
    }
    let edges: Vec<(usize, usize, u64)> = (0..n)
        .flat_map(|u| {
            adj[u]
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v, 1))
                .collect::<Vec<_>>()
        })
        .collect();
    AssociationNetwork::from_arcs(n, edges, false).unwrap()
}

/// G(n, p) with a plain Bernoulli trial per pair; used to feed oracles with
/// graphs not produced by the library's own generator.
pub fn bernoulli_graph(n: usize, p: f64, directed: bool, seed: u64) -> AssociationNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.random::<f64>() < p {
                arcs.push((u, v, rng.random_range(1..5u64)));
            }
        }
    }
    AssociationNetwork::from_arcs(n, arcs, directed).unwrap()
}

/// Two cliques on `clique` nodes joined by a path of `bridge` intermediate
/// nodes. Returns the network and the ids of the bridge nodes.
pub fn barbell(clique: usize, bridge: usize) -> (AssociationNetwork, Vec<usize>) {
    let mut edges = Vec::new();
    let left: Vec<usize> = (0..clique).collect();
    let path: Vec<usize> = (clique..clique + bridge).collect();
    let right: Vec<usize> = (clique + bridge..2 * clique + bridge).collect();
    for side in [&left, &right] {
        for (i, &u) in side.iter().enumerate() {
            for &v in &side[i + 1..] {
                edges.push((u, v, 1));
            }
        }
    }
    let chain: Vec<usize> = std::iter::once(*left.last().unwrap())
        .chain(path.iter().copied())
        .chain(std::iter::once(right[0]))
        .collect();
    for w in chain.windows(2) {
        edges.push((w[0], w[1], 1));
    }
    (
        AssociationNetwork::from_arcs(2 * clique + bridge, edges, false).unwrap(),
        path,
    )
}
