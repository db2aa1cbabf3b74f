//! Graph export: GraphML, DOT, tab-separated edge list and canonical JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use assocnet_core::AssociationNetwork;

use crate::io::network_to_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    GraphMl,
    EdgeList,
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "graphml" => Ok(GraphFormat::GraphMl),
            "edgelist" | "edges" | "tsv" => Ok(GraphFormat::EdgeList),
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(format!(
                "unknown graph format '{other}' (expected graphml, edgelist, dot or json)"
            )),
        }
    }
}

/// Per-node analysis results carried into GraphML and DOT output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NodeAnnotations {
    pub community: Option<Vec<usize>>,
    pub spreading: Option<Vec<f64>>,
}

pub fn export_graph(
    net: &AssociationNetwork,
    format: GraphFormat,
    notes: &NodeAnnotations,
) -> String {
    match format {
        GraphFormat::GraphMl => to_graphml(net, notes),
        GraphFormat::EdgeList => to_edge_list(net),
        GraphFormat::Dot => to_dot(net, notes),
        GraphFormat::Json => network_to_json(net),
    }
}

/// One `source<TAB>target<TAB>weight` line per arc, words as endpoints.
pub fn to_edge_list(net: &AssociationNetwork) -> String {
    let mut out = String::new();
    for a in net.arcs() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            net.nodes()[a.source].label,
            net.nodes()[a.target].label,
            a.weight
        );
    }
    out
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub fn to_graphml(net: &AssociationNetwork, notes: &NodeAnnotations) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns \
         http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
    );
    let mut keys = vec![
        ("label", "node", "string"),
        ("concreteness", "node", "double"),
        ("is_cue", "node", "boolean"),
    ];
    if notes.community.is_some() {
        keys.push(("community", "node", "int"));
    }
    if notes.spreading.is_some() {
        keys.push(("spreading", "node", "double"));
    }
    keys.push(("weight", "edge", "long"));
    for (id, scope, ty) in keys {
        let _ = writeln!(
            out,
            "  <key id=\"{id}\" for=\"{scope}\" attr.name=\"{id}\" attr.type=\"{ty}\"/>"
        );
    }
    let edgedefault = if net.is_directed() {
        "directed"
    } else {
        "undirected"
    };
    let _ = writeln!(out, "  <graph id=\"G\" edgedefault=\"{edgedefault}\">");
    for node in net.nodes() {
        let _ = writeln!(out, "    <node id=\"n{}\">", node.id);
        let _ = writeln!(
            out,
            "      <data key=\"label\">{}</data>",
            xml_escape(&node.label)
        );
        if let Some(c) = node.concreteness {
            let _ = writeln!(out, "      <data key=\"concreteness\">{c}</data>");
        }
        let _ = writeln!(out, "      <data key=\"is_cue\">{}</data>", node.is_cue);
        if let Some(community) = &notes.community {
            let _ = writeln!(
                out,
                "      <data key=\"community\">{}</data>",
                community[node.id]
            );
        }
        if let Some(spreading) = &notes.spreading {
            let _ = writeln!(
                out,
                "      <data key=\"spreading\">{}</data>",
                spreading[node.id]
            );
        }
        out.push_str("    </node>\n");
    }
    for (i, a) in net.arcs().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\">\n      <data key=\"weight\">{}</data>\n    </edge>",
            a.source, a.target, a.weight
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(net: &AssociationNetwork, notes: &NodeAnnotations) -> String {
    let (kind, arrow) = if net.is_directed() {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    let mut out = format!("{kind} G {{\n");
    for node in net.nodes() {
        let _ = write!(out, "  n{} [label=\"{}\"", node.id, dot_escape(&node.label));
        if let Some(c) = node.concreteness {
            let _ = write!(out, ", concreteness={c}");
        }
        if let Some(community) = &notes.community {
            let _ = write!(out, ", community={}", community[node.id]);
        }
        if let Some(spreading) = &notes.spreading {
            let _ = write!(out, ", spreading={}", spreading[node.id]);
        }
        out.push_str("];\n");
    }
    for a in net.arcs() {
        let _ = writeln!(
            out,
            "  n{} {arrow} n{} [weight={}];",
            a.source, a.target, a.weight
        );
    }
    out.push_str("}\n");
    out
}
