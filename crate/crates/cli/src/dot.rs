//! Graphviz export of step graphs.

use std::fmt::Write as _;

use stairvpa::summaries::{StepEdge, StepGraph};
use stairvpa::Dvpa;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per vertex labelled `name / priority`, one edge per step-graph
/// edge labelled with the symbols that connect the two steps.
pub fn step_graph_dot(dvpa: &Dvpa, graph: &StepGraph) -> String {
    let name = |q| dvpa.state_name(q);
    let sym = |s| dvpa.alphabet().name(s);
    let mut out = String::from("digraph step_graph {\n");
    let _ = writeln!(out, "  __start [shape=point];");
    let _ = writeln!(out, "  __start -> {};", quote(name(graph.initial)));
    for &q in &graph.vertices {
        let label = format!("{} / {}", name(q), graph.priority[&q]);
        let _ = writeln!(out, "  {} [label={}];", quote(name(q)), quote(&label));
    }
    for (&(q, p), &edge) in &graph.edges {
        let label = match edge {
            StepEdge::Internal(i) => sym(i).to_string(),
            StepEdge::Matched { call, ret, .. } => format!("{} .. {}", sym(call), sym(ret)),
            StepEdge::PendingCall(c) => format!("{} ..", sym(c)),
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(name(q)),
            quote(name(p)),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
