//! Independent re-check of a finished report.

use serde::Serialize;

use super::{is_invariant, ResolutionReport, Status};

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Recomputes, for every leaf: involutivity, p-closure, saturation
/// idempotence (on polynomial charts), regularity and invariance.
pub fn verify_resolution(report: &ResolutionReport) -> Verification {
    let mut diagnostics = Vec::new();
    if let Status::Aborted { diagnostic } = &report.status {
        diagnostics.push(format!("aborted: {diagnostic}"));
    }
    let leaf_nodes = report.tree.leaves();
    if report.is_resolved() && leaf_nodes.len() != report.leaves.len() {
        diagnostics.push(format!(
            "tree has {} leaves but the report lists {}",
            leaf_nodes.len(),
            report.leaves.len()
        ));
    }
    for leaf in &report.leaves {
        let f = &leaf.presentation;
        let id = leaf.node;
        if !leaf_nodes.contains(&id) {
            diagnostics.push(format!("leaf {id}: not a leaf of the tree"));
            continue;
        }
        let chart = &report.tree.node(id).chart;
        if !f.is_involutive() {
            diagnostics.push(format!("leaf {id}: not involutive"));
        }
        if !f.is_p_closed() {
            diagnostics.push(format!("leaf {id}: not p-closed"));
        }
        if chart.ring.is_polynomial_ring() {
            match f.is_saturated() {
                Ok(true) => {}
                Ok(false) => diagnostics.push(format!("leaf {id}: not saturated")),
                Err(e) => diagnostics.push(format!("leaf {id}: {e}")),
            }
        }
        match f.is_regular() {
            Ok(true) => {}
            Ok(false) => diagnostics.push(format!("leaf {id}: singular ideal is not the unit ideal")),
            Err(e) => diagnostics.push(format!("leaf {id}: {e}")),
        }
        if !is_invariant(f, chart) {
            diagnostics.push(format!("leaf {id}: not invariant under the chart action"));
        }
    }
    Verification {
        ok: diagnostics.is_empty() && report.is_resolved(),
        diagnostics,
    }
}
