//! The VAGUE-pruned temporal graph shown to users.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Document, EventId, EventMention, RelationLabel, TemporalRelation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: EventId,
    /// Trigger surface text.
    pub trigger: String,
    /// Duration category name.
    pub duration: String,
}

/// `label` is one of BEFORE, SIMULTANEOUS or INCLUDES. Directed edges point
/// from the earlier (or containing) event; SIMULTANEOUS edges are symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: EventId,
    pub target: EventId,
    pub label: RelationLabel,
    pub symmetric: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    /// Precedence cycles, reported but not repaired.
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl TemporalGraph {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Structural invariants: unique node ids, endpoints present, no VAGUE
    /// edges, and `symmetric` set exactly on SIMULTANEOUS edges.
    pub fn check(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for n in &self.nodes {
            if !ids.insert(&n.id) {
                return Err(Error::DuplicateEventId(n.id.to_string()));
            }
        }
        for e in &self.edges {
            for id in [&e.source, &e.target] {
                if !ids.contains(id) {
                    return Err(Error::DanglingEndpoint(id.to_string()));
                }
            }
            let ok = match e.label {
                RelationLabel::Before | RelationLabel::Includes => !e.symmetric,
                RelationLabel::Simultaneous => e.symmetric,
                _ => false,
            };
            if !ok {
                return Err(Error::Contract(format!(
                    "edge {} -> {} has label {} with symmetric={}",
                    e.source, e.target, e.label, e.symmetric
                )));
            }
        }
        Ok(())
    }
}

/// One node per event, one edge per non-VAGUE relation.
pub fn build_temporal_graph(
    document: &Document,
    events: &[EventMention],
    relations: &[TemporalRelation],
) -> Result<TemporalGraph> {
    let mut nodes = Vec::with_capacity(events.len());
    let mut known = BTreeSet::new();
    for ev in events {
        if !known.insert(&ev.id) {
            return Err(Error::DuplicateEventId(ev.id.to_string()));
        }
        document.check_span(&ev.trigger)?;
        let duration = ev.duration.ok_or_else(|| Error::MissingDuration(ev.id.to_string()))?;
        nodes.push(GraphNode {
            id: ev.id.clone(),
            trigger: document.span_text(&ev.trigger),
            duration: duration.name().to_string(),
        });
    }

    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for r in relations {
        for id in [&r.source, &r.target] {
            if !known.contains(id) {
                return Err(Error::DanglingEndpoint(id.to_string()));
            }
        }
        let (s, t) = (r.source.clone(), r.target.clone());
        let (source, target, label, symmetric) = match r.label {
            RelationLabel::Vague => continue,
            RelationLabel::Before => (s, t, RelationLabel::Before, false),
            RelationLabel::After => (t, s, RelationLabel::Before, false),
            RelationLabel::Simultaneous => (s, t, RelationLabel::Simultaneous, true),
            RelationLabel::Includes => (s, t, RelationLabel::Includes, false),
            RelationLabel::IncludedIn => (t, s, RelationLabel::Includes, false),
        };
        let key = if symmetric {
            (source.clone().min(target.clone()), source.clone().max(target.clone()), label)
        } else {
            (source.clone(), target.clone(), label)
        };
        if seen.insert(key) {
            edges.push(GraphEdge {
                source,
                target,
                label,
                symmetric,
            });
        }
    }

    let warnings = precedence_cycles(&nodes, &edges)
        .into_iter()
        .map(|ids| format!("precedence cycle among {}", ids.join(", ")))
        .collect();
    Ok(TemporalGraph {
        nodes,
        edges,
        warnings,
    })
}

/// Strongly connected groups of BEFORE edges, each sorted, in sorted order.
fn precedence_cycles(nodes: &[GraphNode], edges: &[GraphEdge]) -> Vec<Vec<String>> {
    let mut g = DiGraph::<&str, ()>::new();
    let index: HashMap<&EventId, _> = nodes.iter().map(|n| (&n.id, g.add_node(n.id.as_str()))).collect();
    let mut self_loops = BTreeSet::new();
    for e in edges.iter().filter(|e| e.label == RelationLabel::Before) {
        if e.source == e.target {
            self_loops.insert(e.source.as_str());
        }
        g.add_edge(index[&e.source], index[&e.target], ());
    }
    let mut out: BTreeMap<Vec<String>, ()> = BTreeMap::new();
    for scc in tarjan_scc(&g) {
        if scc.len() > 1 || self_loops.contains(g[scc[0]]) {
            let mut ids: Vec<String> = scc.iter().map(|&i| g[i].to_string()).collect();
            ids.sort();
            out.insert(ids, ());
        }
    }
    out.into_keys().collect()
}
