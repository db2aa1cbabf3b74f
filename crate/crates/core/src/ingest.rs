//! Norms and ratings parsing, the minimum-endorsement filter, network
//! construction and the median concreteness split.
//!
//! Parsers work on in-memory text; reading files is left to the caller.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{
    normalize_label, rating_in_range, Arc, AssociationNetwork, NodeId, Weight, WordNode,
};
use crate::{Error, Result};

/// Endorsement threshold applied when none is given.
pub const DEFAULT_MIN_ENDORSEMENT: u64 = 2;

/// One aggregated (cue, response) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationRecord {
    pub cue: String,
    pub response: String,
    pub count: u64,
    /// 1-based line of the first row contributing to this record (0 when
    /// the record was not read from a file).
    pub line: usize,
}

impl AssociationRecord {
    pub fn new(cue: &str, response: &str, count: u64) -> Self {
        AssociationRecord {
            cue: normalize_label(cue),
            response: normalize_label(response),
            count,
            line: 0,
        }
    }
}

/// Word → concreteness rating on the 1–7 scale.
pub type RatingsTable = BTreeMap<String, f64>;

/// Yields `(line_number, fields)` for every data row after validating the header.
fn data_rows<'a>(
    text: &'a str,
    delimiter: char,
    header: &'static [&'static str],
) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)> + 'a> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (line, head) = lines.next().ok_or_else(|| Error::input("file is empty"))?;
    let fields: Vec<&str> = head.split(delimiter).map(str::trim).collect();
    let matches = fields.len() == header.len()
        && fields
            .iter()
            .zip(header)
            .all(|(f, h)| f.trim_start_matches('\u{feff}').eq_ignore_ascii_case(h));
    if !matches {
        let mut expected = String::new();
        for (i, h) in header.iter().enumerate() {
            if i > 0 {
                expected.push(delimiter);
            }
            expected.push_str(h);
        }
        return Err(Error::parse(
            line,
            alloc::format!("expected header '{}'", expected.escape_debug()),
        ));
    }
    Ok(lines.map(move |(line, l)| (line, l.split(delimiter).collect())))
}

/// Parses a `cue<TAB>response<TAB>count` file. Duplicate (cue, response)
/// rows, after label normalization, are merged by summing their counts.
pub fn parse_pairs(text: &str, delimiter: char) -> Result<Vec<AssociationRecord>> {
    let mut records: Vec<AssociationRecord> = Vec::new();
    let mut by_pair: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (line, fields) in data_rows(text, delimiter, &["cue", "response", "count"])? {
        if fields.len() != 3 {
            return Err(Error::parse(
                line,
                alloc::format!("expected 3 fields, found {}", fields.len()),
            ));
        }
        let cue = normalize_label(fields[0]);
        let response = normalize_label(fields[1]);
        if cue.is_empty() || response.is_empty() {
            return Err(Error::parse(line, "empty cue or response"));
        }
        let raw = fields[2].trim();
        let count: u64 = raw.parse().map_err(|_| {
            Error::parse(
                line,
                alloc::format!("count '{raw}' is not a non-negative integer"),
            )
        })?;
        if count == 0 {
            return Err(Error::parse(line, "count must be at least 1"));
        }
        match by_pair.get(&(cue.clone(), response.clone())) {
            Some(&i) => records[i].count += count,
            None => {
                by_pair.insert((cue.clone(), response.clone()), records.len());
                records.push(AssociationRecord {
                    cue,
                    response,
                    count,
                    line,
                });
            }
        }
    }
    if records.is_empty() {
        return Err(Error::input("no association rows after the header"));
    }
    Ok(records)
}

/// Parses a `word<TAB>rating` file.
pub fn parse_ratings(text: &str, delimiter: char) -> Result<RatingsTable> {
    let mut table = RatingsTable::new();
    for (line, fields) in data_rows(text, delimiter, &["word", "rating"])? {
        if fields.len() != 2 {
            return Err(Error::parse(
                line,
                alloc::format!("expected 2 fields, found {}", fields.len()),
            ));
        }
        let word = normalize_label(fields[0]);
        if word.is_empty() {
            return Err(Error::parse(line, "empty word"));
        }
        let raw = fields[1].trim();
        let rating: f64 = raw
            .parse()
            .map_err(|_| Error::parse(line, alloc::format!("rating '{raw}' is not a number")))?;
        if !rating_in_range(rating) {
            return Err(Error::parse(
                line,
                alloc::format!("rating {rating} for '{word}' outside [1, 7]"),
            ));
        }
        if let Some(prev) = table.insert(word.clone(), rating) {
            if prev != rating {
                return Err(Error::parse(
                    line,
                    alloc::format!("conflicting ratings for '{word}': {prev} and {rating}"),
                ));
            }
        }
    }
    Ok(table)
}

/// Keeps the records endorsed by at least `threshold` participants.
pub fn filter_min_endorsement(
    records: &[AssociationRecord],
    threshold: u64,
) -> Result<Vec<AssociationRecord>> {
    if threshold == 0 {
        return Err(Error::input("endorsement threshold must be at least 1"));
    }
    Ok(records
        .iter()
        .filter(|r| r.count >= threshold)
        .cloned()
        .collect())
}

/// Builds the directed cue → response network. Nodes are numbered in order
/// of first appearance; arcs carry the endorsement count as weight.
/// Responses equal to their cue are dropped.
pub fn build_network(
    records: &[AssociationRecord],
    ratings: &RatingsTable,
) -> Result<AssociationNetwork> {
    if records.is_empty() {
        return Err(Error::input("no association records to build from"));
    }
    let mut ids: BTreeMap<String, NodeId> = BTreeMap::new();
    let mut nodes: Vec<WordNode> = Vec::new();
    let mut intern = |label: String, nodes: &mut Vec<WordNode>| -> NodeId {
        *ids.entry(label).or_insert_with_key(|label| {
            let id = nodes.len();
            nodes.push(WordNode {
                id,
                label: label.clone(),
                concreteness: ratings.get(label).copied(),
                is_cue: false,
            });
            id
        })
    };

    let mut weights: BTreeMap<(NodeId, NodeId), Weight> = BTreeMap::new();
    for r in records {
        let cue = intern(normalize_label(&r.cue), &mut nodes);
        nodes[cue].is_cue = true;
        let response = intern(normalize_label(&r.response), &mut nodes);
        if cue != response {
            *weights.entry((cue, response)).or_insert(0) += r.count;
        }
    }
    for node in &nodes {
        if let Some(r) = node.concreteness {
            if !rating_in_range(r) {
                return Err(Error::input(alloc::format!(
                    "rating {r} for '{}' outside [1, 7]",
                    node.label
                )));
            }
        }
    }
    let arcs = weights
        .into_iter()
        .map(|((source, target), weight)| Arc {
            source,
            target,
            weight,
        })
        .collect();
    Ok(AssociationNetwork::index(nodes, arcs, true))
}

/// Outcome of [`split_by_median_concreteness`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConcretenessSplit {
    /// Arcs whose cue is rated strictly above the median.
    pub concrete: AssociationNetwork,
    /// Arcs whose cue is rated at or below the median.
    pub abstract_: AssociationNetwork,
    pub median: f64,
    /// Number of rated cues the median was taken over.
    pub rated_cues: usize,
    /// Arcs leaving unrated cues; they belong to neither subnetwork.
    pub unassigned_arcs: usize,
}

/// Splits a cue → response network into concrete and abstract subnetworks
/// at the median rating of its rated cue words. An arc follows its cue, so
/// response words can land in both halves.
pub fn split_by_median_concreteness(net: &AssociationNetwork) -> Result<ConcretenessSplit> {
    let mut ratings: Vec<f64> = net
        .nodes()
        .iter()
        .filter(|n| n.is_cue)
        .filter_map(|n| n.concreteness)
        .collect();
    if ratings.is_empty() {
        return Err(Error::input(
            "no rated cue words; cannot compute the median concreteness",
        ));
    }
    ratings.sort_by(f64::total_cmp);
    let mid = ratings.len() / 2;
    let median = if ratings.len() % 2 == 1 {
        ratings[mid]
    } else {
        (ratings[mid - 1] + ratings[mid]) / 2.0
    };

    let cue_rating = |a: &Arc| net.nodes()[a.source].concreteness;
    let concrete = net.subgraph_from_arcs(|a| cue_rating(a).is_some_and(|r| r > median));
    let abstract_ = net.subgraph_from_arcs(|a| cue_rating(a).is_some_and(|r| r <= median));
    let unassigned_arcs = net
        .arcs()
        .iter()
        .filter(|a| cue_rating(a).is_none())
        .count();
    Ok(ConcretenessSplit {
        concrete: concrete.network,
        abstract_: abstract_.network,
        median,
        rated_cues: ratings.len(),
        unassigned_arcs,
    })
}
