//! Seeded Erdős–Rényi G(n, m) benchmarks.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`), seeded through
//! `SeedableRng::seed_from_u64`, whose output is fixed across platforms.
//! Ensemble member `i` draws from stream `i` of the master-seeded generator,
//! so members can be produced in any order or in parallel.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{AssociationNetwork, NodeId};
use crate::metrics::{self, LowDegree, Mode};
use crate::par;
use crate::{Error, Result};

/// Ensemble size used when none is given.
pub const DEFAULT_RUNS: usize = 30;

/// Master seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;

/// Largest arc (directed) or edge (undirected) count a simple graph on `n`
/// nodes can hold.
pub fn max_arcs(n: usize, directed: bool) -> u64 {
    let n = n as u64;
    let ordered = n * n.saturating_sub(1);
    if directed {
        ordered
    } else {
        ordered / 2
    }
}

fn member_rng(seed: u64, member: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(member);
    rng
}

/// Uniform G(n, m): exactly `m` distinct arcs without self-loops.
pub fn gnm_random(n: usize, m: usize, directed: bool, seed: u64) -> Result<AssociationNetwork> {
    gnm_with_rng(n, m, directed, &mut member_rng(seed, 0))
}

fn gnm_with_rng(
    n: usize,
    m: usize,
    directed: bool,
    rng: &mut ChaCha8Rng,
) -> Result<AssociationNetwork> {
    if n < 2 {
        return Err(Error::input("G(n, m) needs at least two nodes"));
    }
    let slots = max_arcs(n, directed);
    if m as u64 > slots {
        return Err(Error::input(alloc::format!(
            "{m} arcs do not fit in a simple graph on {n} nodes (max {slots})"
        )));
    }
    // Floyd's sampling of m distinct slot indices out of `slots`.
    let mut chosen = BTreeSet::new();
    for j in (slots - m as u64)..slots {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let arcs = chosen.into_iter().map(|slot| {
        let (u, v) = if directed {
            decode_ordered(n, slot)
        } else {
            decode_unordered(n, slot)
        };
        (u, v, 1)
    });
    AssociationNetwork::from_arcs(n, arcs, directed)
}

/// Slot → ordered pair, row-major over `(u, v)` with `v != u`.
fn decode_ordered(n: usize, slot: u64) -> (NodeId, NodeId) {
    let row = (n - 1) as u64;
    let u = (slot / row) as usize;
    let r = (slot % row) as usize;
    (u, if r >= u { r + 1 } else { r })
}

/// Slot → pair `u < v`, row-major over the strict upper triangle.
fn decode_unordered(n: usize, slot: u64) -> (NodeId, NodeId) {
    let n64 = n as u64;
    // Row u starts at u(2n − u − 1)/2.
    let start = |u: u64| u * (2 * n64 - u - 1) / 2;
    let b = (2 * n64 - 1) as f64;
    let guess = ((b - libm::sqrt(b * b - 8.0 * slot as f64)) / 2.0) as u64;
    let mut u = guess.min(n64 - 2);
    while u > 0 && start(u) > slot {
        u -= 1;
    }
    while u + 1 < n64 - 1 && start(u + 1) <= slot {
        u += 1;
    }
    let v = slot - start(u) + u + 1;
    (u as usize, v as usize)
}

/// Ensemble mean and sample standard deviation of ASPL and CC.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BenchmarkSummary {
    pub runs: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub directed: bool,
    pub aspl_mean: f64,
    pub aspl_sd: f64,
    pub cc_mean: f64,
    pub cc_sd: f64,
}

impl BenchmarkSummary {
    pub fn cc_standard_error(&self) -> f64 {
        self.cc_sd / libm::sqrt(self.runs as f64)
    }

    pub fn aspl_standard_error(&self) -> f64 {
        self.aspl_sd / libm::sqrt(self.runs as f64)
    }
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, libm::sqrt(ss / (n - 1.0)))
}

/// Measures `runs` G(n, m) graphs matched to `target` (same n, arc count and
/// directedness) with the same metric conventions as the target.
pub fn benchmark_ensemble(
    target: &AssociationNetwork,
    runs: usize,
    seed: u64,
    low_degree: LowDegree,
) -> Result<BenchmarkSummary> {
    if runs == 0 {
        return Err(Error::input("benchmark ensemble needs at least one run"));
    }
    let (n, m, directed) = (
        target.node_count(),
        target.arc_count(),
        target.is_directed(),
    );
    let mode = if directed {
        Mode::Directed
    } else {
        Mode::Undirected
    };
    let members = par::map_indexed(runs, |i| -> Result<(f64, f64)> {
        let g = gnm_with_rng(n, m, directed, &mut member_rng(seed, i as u64))?;
        let aspl = metrics::path_stats(&g, mode)?.aspl;
        let cc = metrics::average_clustering(&g, mode, low_degree)?;
        Ok((aspl, cc))
    });
    let members: Vec<(f64, f64)> = members.into_iter().collect::<Result<_>>()?;
    let aspl: Vec<f64> = members.iter().map(|m| m.0).collect();
    let cc: Vec<f64> = members.iter().map(|m| m.1).collect();
    let (aspl_mean, aspl_sd) = mean_sd(&aspl);
    let (cc_mean, cc_sd) = mean_sd(&cc);
    Ok(BenchmarkSummary {
        runs,
        seed,
        n,
        m,
        directed,
        aspl_mean,
        aspl_sd,
        cc_mean,
        cc_sd,
    })
}
