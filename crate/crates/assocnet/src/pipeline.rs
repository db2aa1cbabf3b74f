//! Files in, networks out: read norms and ratings, filter, build, split.

use std::path::Path;

use assocnet_core::ingest::{self, RatingsTable};
use assocnet_core::AssociationNetwork;
use serde::Serialize;

use crate::io::{self, InputDigest};
use crate::Result;

/// A network with the name it carries through reports.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedNetwork {
    pub name: String,
    pub network: AssociationNetwork,
}

impl NamedNetwork {
    pub fn new(name: impl Into<String>, network: AssociationNetwork) -> Self {
        NamedNetwork {
            name: name.into(),
            network,
        }
    }
}

/// Bookkeeping from reading and filtering the norms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IngestSummary {
    pub min_endorsement: u64,
    pub records_read: usize,
    pub records_kept: usize,
    pub records_removed: usize,
    pub rated_words: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub median_concreteness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rated_cues: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unassigned_arcs: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub whole: AssociationNetwork,
    pub summary: IngestSummary,
    pub inputs: Vec<InputDigest>,
}

/// Reads the pairs file (and ratings, when given), applies the
/// minimum-endorsement filter and builds the whole network.
pub fn ingest_files(
    pairs: &Path,
    ratings: Option<&Path>,
    min_endorsement: u64,
    delimiter: char,
) -> Result<Ingested> {
    let (records, pairs_digest) = io::load_pairs(pairs, delimiter)?;
    let mut inputs = vec![pairs_digest];
    let table = match ratings {
        Some(path) => {
            let (table, digest) = io::load_ratings(path, delimiter)?;
            inputs.push(digest);
            table
        }
        None => RatingsTable::new(),
    };
    let kept = ingest::filter_min_endorsement(&records, min_endorsement)?;
    log::info!(
        "{} association records, {} kept at threshold {min_endorsement}",
        records.len(),
        kept.len()
    );
    let whole = ingest::build_network(&kept, &table)?;
    Ok(Ingested {
        whole,
        summary: IngestSummary {
            min_endorsement,
            records_read: records.len(),
            records_kept: kept.len(),
            records_removed: records.len() - kept.len(),
            rated_words: table.len(),
            median_concreteness: None,
            rated_cues: None,
            unassigned_arcs: None,
        },
        inputs,
    })
}

/// Whole network followed by its concrete and abstract halves.
pub fn whole_and_split(ingested: &mut Ingested) -> Result<Vec<NamedNetwork>> {
    let split = ingest::split_by_median_concreteness(&ingested.whole)?;
    ingested.summary.median_concreteness = Some(split.median);
    ingested.summary.rated_cues = Some(split.rated_cues);
    ingested.summary.unassigned_arcs = Some(split.unassigned_arcs);
    log::info!(
        "median cue concreteness {}: concrete {} nodes, abstract {} nodes",
        split.median,
        split.concrete.node_count(),
        split.abstract_.node_count()
    );
    Ok(vec![
        NamedNetwork::new("whole", ingested.whole.clone()),
        NamedNetwork::new("concrete", split.concrete),
        NamedNetwork::new("abstract", split.abstract_),
    ])
}
