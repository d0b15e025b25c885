//! Graphviz export of a blow-up tree.

use std::fmt::Write;

use folres_core::resolve::ResolutionReport;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per chart, one edge per parent link. Nodes show the chart id, the
/// ring summary and the regularity of the foliation there; edges show the
/// operation with its center and weights.
pub fn export_dot(report: &ResolutionReport) -> String {
    let mut out = String::from("digraph blowup_tree {\n  node [shape=box];\n");
    for node in report.tree.nodes() {
        let regularity = match report.leaves.iter().find(|l| l.node == node.id) {
            Some(l) if l.regular => "regular",
            Some(_) => "singular leaf",
            None if report.steps.iter().any(|s| s.node == node.id) => "singular",
            None => "unresolved",
        };
        let label = format!("{}: {}\\n{}", node.id, escape(&node.chart.summary()), regularity);
        writeln!(out, "  n{} [label=\"{}\"];", node.id, label).unwrap();
    }
    for node in report.tree.nodes() {
        let Some(parent) = node.parent else { continue };
        let step = report.steps.iter().find(|s| s.children.contains(&node.id));
        let label = match step {
            Some(s) if !s.center.is_empty() => format!(
                "{} {} ({})\\n{}",
                s.operation,
                s.center.join(","),
                s.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","),
                escape(&node.label)
            ),
            Some(s) => format!("{}\\n{}", s.operation, escape(&node.label)),
            None => escape(&node.label),
        };
        writeln!(out, "  n{parent} -> n{} [label=\"{label}\"];", node.id).unwrap();
    }
    out.push_str("}\n");
    out
}
