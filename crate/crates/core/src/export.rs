//! Graph exports. Only non-isolated vertices appear; each is labelled
//! `index:cycles:order` with 1-based cycle notation.

use std::fmt::Write as _;

use serde::Serialize;

use crate::graph::NonFGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    GraphMl,
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "graphml" => Ok(ExportFormat::GraphMl),
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown format {other:?} (expected dot, graphml, csv or json)")),
        }
    }
}

pub fn vertex_label(graph: &NonFGraph, v: usize) -> String {
    let t = graph.table();
    format!("{v}:{}:{}", t.element(v).format_cycles(), t.order_of(v))
}

pub fn export(graph: &NonFGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => to_dot(graph),
        ExportFormat::GraphMl => to_graphml(graph),
        ExportFormat::Csv => to_csv(graph),
        ExportFormat::Json => to_json(graph),
    }
}

pub fn to_dot(graph: &NonFGraph) -> String {
    let mut out = String::from("graph G {\n");
    for &v in graph.vertices() {
        writeln!(out, "  {v} [label=\"{}\"];", vertex_label(graph, v)).unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(out, "  {a} -- {b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn to_graphml(graph: &NonFGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"order\" for=\"node\" attr.name=\"order\" attr.type=\"long\"/>\n");
    out.push_str("  <graph id=\"G\" edgedefault=\"undirected\">\n");
    for &v in graph.vertices() {
        writeln!(
            out,
            "    <node id=\"n{v}\"><data key=\"label\">{}</data><data key=\"order\">{}</data></node>",
            xml_escape(&vertex_label(graph, v)),
            graph.table().order_of(v)
        )
        .unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(out, "    <edge source=\"n{a}\" target=\"n{b}\"/>").unwrap();
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

/// Edge list with one row per edge.
pub fn to_csv(graph: &NonFGraph) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["source", "target", "source_label", "target_label"]).expect("in-memory write");
    for (a, b) in graph.edges() {
        writer
            .write_record([a.to_string(), b.to_string(), vertex_label(graph, a), vertex_label(graph, b)])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[derive(Serialize)]
struct JsonVertex {
    index: usize,
    label: String,
    order: u64,
}

#[derive(Serialize)]
struct JsonGraph {
    threshold: usize,
    isolated_count: usize,
    vertices: Vec<JsonVertex>,
    edges: Vec<(usize, usize)>,
}

pub fn to_json(graph: &NonFGraph) -> String {
    let doc = JsonGraph {
        threshold: graph.threshold(),
        isolated_count: graph.isolated_vertices().len(),
        vertices: graph
            .vertices()
            .iter()
            .map(|&v| JsonVertex { index: v, label: vertex_label(graph, v), order: graph.table().order_of(v) })
            .collect(),
        edges: graph.edges().collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

/// Sidecar summary written next to an export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub order: usize,
    pub threshold: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub isolated_count: usize,
}

pub fn summary(graph: &NonFGraph) -> GraphSummary {
    GraphSummary {
        order: graph.table().len(),
        threshold: graph.threshold(),
        vertex_count: graph.vertices().len(),
        edge_count: graph.edge_count(),
        isolated_count: graph.isolated_vertices().len(),
    }
}
