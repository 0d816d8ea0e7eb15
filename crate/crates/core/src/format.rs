//! Output renderings of an [`AnnotationResult`].

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::model::AnnotationResult;
use crate::pipeline::TemporalGraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Dot,
    Tsv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Self::Json),
            "dot" => Ok(Self::Dot),
            "tsv" => Ok(Self::Tsv),
            other => Err(format!("unknown format `{other}` (expected json, dot or tsv)")),
        }
    }
}

pub fn render(result: &AnnotationResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(result),
        OutputFormat::Dot => to_dot(&result.graph),
        OutputFormat::Tsv => to_tsv(result),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(result: &AnnotationResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("annotation serializes");
    s.push('\n');
    s
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz digraph; node labels carry the trigger and its duration.
pub fn to_dot(graph: &TemporalGraph) -> String {
    let mut out = String::from("digraph temporal {\n");
    for n in &graph.nodes {
        let label = format!("{}\n{}", n.trigger, n.duration);
        writeln!(out, "  {} [label={}];", quote(n.id.as_str()), quote(&label)).unwrap();
    }
    for e in &graph.edges {
        let dir = if e.symmetric { ", dir=none" } else { "" };
        writeln!(
            out,
            "  {} -> {} [label={}{dir}];",
            quote(e.source.as_str()),
            quote(e.target.as_str()),
            quote(e.label.name())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

/// One row per event: id, trigger, subtype, source, duration, negated,
/// speculated, arguments (`role=text` separated by `; `).
pub fn to_tsv(result: &AnnotationResult) -> String {
    let doc = &result.document;
    let mut out = String::from("id\ttrigger\tsubtype\tsource\tduration\tnegated\tspeculated\targuments\n");
    for e in &result.events {
        let source = serde_json::to_value(e.source).expect("source serializes");
        let args: Vec<String> = e
            .arguments
            .iter()
            .map(|a| format!("{}={}", a.role, doc.span_text(&a.span)))
            .collect();
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            e.id,
            clean(&doc.span_text(&e.trigger)),
            e.subtype,
            source.as_str().unwrap_or_default(),
            e.duration.map(|d| d.name()).unwrap_or("-"),
            e.negated,
            e.speculated,
            clean(&args.join("; ")),
        )
        .unwrap();
    }
    out
}
