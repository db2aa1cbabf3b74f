//! Reading norms, ratings and network files; canonical JSON persistence.

use std::fs;
use std::path::{Path, PathBuf};

use assocnet_core::graph::NetworkRecord;
use assocnet_core::ingest::{self, AssociationRecord, RatingsTable};
use assocnet_core::AssociationNetwork;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// SHA-256 of an input file, recorded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Reads a UTF-8 text file and fingerprints it.
pub fn read_text(path: &Path, role: &str) -> Result<(String, InputDigest)> {
    let bytes = fs::read(path).map_err(|source| Error::Read {
        path: path.to_owned(),
        source,
    })?;
    let digest = InputDigest {
        role: role.to_owned(),
        path: path.display().to_string(),
        bytes: bytes.len() as u64,
        sha256: sha256_hex(&bytes),
    };
    let text = String::from_utf8(bytes).map_err(|e| Error::Read {
        path: path.to_owned(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })?;
    Ok((text, digest))
}

/// Parses `--delimiter` values: a single character, or `tab` / `\t` / `comma`.
pub fn parse_delimiter(raw: &str) -> std::result::Result<char, String> {
    match raw {
        "\\t" | "tab" | "TAB" => Ok('\t'),
        "comma" => Ok(','),
        _ => {
            let mut chars = raw.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(format!("delimiter must be a single character, got '{raw}'")),
            }
        }
    }
}

fn with_path(path: &Path) -> impl FnOnce(assocnet_core::Error) -> Error + '_ {
    move |source| Error::Parse {
        path: path.to_owned(),
        source,
    }
}

pub fn load_pairs(path: &Path, delimiter: char) -> Result<(Vec<AssociationRecord>, InputDigest)> {
    let (text, digest) = read_text(path, "pairs")?;
    let records = ingest::parse_pairs(&text, delimiter).map_err(with_path(path))?;
    Ok((records, digest))
}

pub fn load_ratings(path: &Path, delimiter: char) -> Result<(RatingsTable, InputDigest)> {
    let (text, digest) = read_text(path, "ratings")?;
    let table = ingest::parse_ratings(&text, delimiter).map_err(with_path(path))?;
    Ok((table, digest))
}

/// Canonical JSON: `directed`, `nodes` sorted by id, `arcs` sorted by
/// (source, target), two-space indentation and a trailing newline.
pub fn network_to_json(net: &AssociationNetwork) -> String {
    let record = NetworkRecord::from(net.clone());
    let mut out = serde_json::to_string_pretty(&record).expect("network records always serialize");
    out.push('\n');
    out
}

pub fn network_from_json(text: &str, path: &Path) -> Result<AssociationNetwork> {
    serde_json::from_str(text).map_err(|source| Error::Json {
        path: path.to_owned(),
        source,
    })
}

pub fn load_network(path: &Path) -> Result<(AssociationNetwork, InputDigest)> {
    let (text, digest) = read_text(path, "network")?;
    Ok((network_from_json(&text, path)?, digest))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Write {
        path: PathBuf::from(path),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delimiters() {
        assert_eq!(parse_delimiter("\\t"), Ok('\t'));
        assert_eq!(parse_delimiter("\t"), Ok('\t'));
        assert_eq!(parse_delimiter(","), Ok(','));
        assert_eq!(parse_delimiter("comma"), Ok(','));
        assert!(parse_delimiter(";;").is_err());
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn json_layout() {
        let net = AssociationNetwork::from_arcs(2, [(1, 0, 3)], true).unwrap();
        let json = network_to_json(&net);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["directed"], true);
        assert_eq!(
            v["nodes"][0],
            serde_json::json!({"id": 0, "label": "0", "is_cue": false})
        );
        assert_eq!(
            v["arcs"][0],
            serde_json::json!({"source": 1, "target": 0, "weight": 3})
        );
        let back = network_from_json(&json, Path::new("x.json")).unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn invalid_json_network_is_rejected() {
        let bad = r#"{"directed":true,"nodes":[{"id":0,"label":"a","is_cue":true}],"arcs":[{"source":0,"target":0,"weight":1}]}"#;
        assert!(network_from_json(bad, Path::new("bad.json")).is_err());
    }
}
