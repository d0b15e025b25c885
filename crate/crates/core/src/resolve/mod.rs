//! Resolution drivers and the report they produce.

mod char2;
mod surface;
mod threefold;
mod verify;

pub use char2::resolve_char2;
pub use surface::resolve_surface;
pub use threefold::{resolve_threefold_corank1, step_one_weights};
pub use verify::{verify_resolution, Verification};

use serde::Serialize;

use crate::blowup::{check_pullback, pullback, recenter, BlowUpTree, Chart, ChartKind};
use crate::classify::{Classification, ClosedPoint};
use crate::derivation::{Derivation, FoliationPresentation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::weighted::{mu_d_character, pullback_derivation_weighted};

#[derive(Clone, Debug, Serialize)]
pub struct ResolveOptions {
    pub max_depth: usize,
    /// Surface driver: weight the eigen-coordinate by `λ_min` instead of the certificate `λ`.
    pub use_lambda_min: bool,
    /// Degree bound for the Rees comparisons in the curve gate.
    pub rees_bound: u64,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            max_depth: 6,
            use_lambda_min: false,
            rees_bound: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Resolved,
    Aborted { diagnostic: String },
}

/// One operation of a driver.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub node: usize,
    pub operation: String,
    pub center: Vec<String>,
    pub weights: Vec<u64>,
    pub children: Vec<usize>,
    pub evidence: Option<Classification>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeFoliation {
    pub node: usize,
    /// Pulled-back generators before saturation.
    pub pulled_back: Vec<Derivation>,
    pub exceptional_powers: Vec<i32>,
    pub presentation: FoliationPresentation,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafReport {
    pub node: usize,
    pub presentation: FoliationPresentation,
    pub regular: bool,
    pub invariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub driver: String,
    pub p: u64,
    pub status: Status,
    pub depth: usize,
    pub tree: BlowUpTree,
    pub foliations: Vec<NodeFoliation>,
    pub steps: Vec<Step>,
    pub leaves: Vec<LeafReport>,
}

impl ResolutionReport {
    pub fn is_resolved(&self) -> bool {
        self.status == Status::Resolved
    }

    pub fn foliation(&self, node: usize) -> Option<&NodeFoliation> {
        self.foliations.iter().find(|f| f.node == node)
    }

    /// True if some step built a chart with a nontrivial group action.
    pub fn has_stacky_chart(&self) -> bool {
        self.tree.nodes().iter().any(|n| n.chart.max_order() > 1)
    }
}

/// Failure modes inside a driver: aborts become part of the report, internal
/// errors are returned to the caller.
pub(crate) enum Stop {
    Abort(String),
    Internal(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::Structural(_) => Stop::Internal(e),
            other => Stop::Abort(other.to_string()),
        }
    }
}

pub(crate) type Flow<T = ()> = std::result::Result<T, Stop>;

pub(crate) fn abort<T>(msg: impl Into<String>) -> Flow<T> {
    Err(Stop::Abort(msg.into()))
}

pub(crate) struct Engine {
    pub driver: &'static str,
    pub options: ResolveOptions,
    pub tree: BlowUpTree,
    pub foliations: Vec<NodeFoliation>,
    pub steps: Vec<Step>,
    pub leaves: Vec<LeafReport>,
}

pub(crate) fn is_invariant(f: &FoliationPresentation, chart: &Chart) -> bool {
    chart
        .nontrivial_action()
        .all(|a| f.generators().iter().all(|g| mu_d_character(g, a).is_some()))
}

impl Engine {
    pub fn new(driver: &'static str, f: &FoliationPresentation, options: ResolveOptions) -> Self {
        let tree = BlowUpTree::new(Chart::root(f.quotient().clone()));
        Engine {
            driver,
            options,
            tree,
            foliations: vec![NodeFoliation {
                node: 0,
                pulled_back: f.generators().to_vec(),
                exceptional_powers: vec![0; f.generators().len()],
                presentation: f.clone(),
            }],
            steps: Vec::new(),
            leaves: Vec::new(),
        }
    }

    pub fn chart(&self, node: usize) -> &Chart {
        &self.tree.node(node).chart
    }

    pub fn check_depth(&self, node: usize) -> Flow {
        if self.tree.depth(node) >= self.options.max_depth {
            return abort(format!("maximum depth {} reached at node {node}", self.options.max_depth));
        }
        Ok(())
    }

    pub fn set_presentation(&mut self, node: usize, f: &FoliationPresentation) {
        if let Some(rec) = self.foliations.iter_mut().find(|r| r.node == node) {
            rec.presentation = f.clone();
        }
    }

    pub fn leaf(&mut self, node: usize, f: FoliationPresentation) -> Flow {
        let regular = f.is_regular()?;
        let invariant = is_invariant(&f, self.chart(node));
        self.set_presentation(node, &f);
        self.leaves.push(LeafReport {
            node,
            presentation: f,
            regular,
            invariant,
        });
        Ok(())
    }

    /// Adds `charts` below `node`, pulling `f` back to each; saturates on
    /// polynomial charts.
    pub fn expand(
        &mut self,
        node: usize,
        f: &FoliationPresentation,
        charts: Vec<Chart>,
        labels: Vec<String>,
    ) -> Flow<Vec<(usize, FoliationPresentation)>> {
        let mut out = Vec::new();
        for (chart, label) in charts.into_iter().zip(labels) {
            let weighted = matches!(chart.kind, ChartKind::Weighted { .. });
            let mut pulled = Vec::new();
            let mut powers = Vec::new();
            for g in f.generators() {
                let pb = if weighted {
                    pullback_derivation_weighted(g, &chart)?
                } else {
                    pullback(g, &chart)?
                };
                if !check_pullback(g, &pb, &chart) {
                    return Err(Stop::Internal(Error::Structural(format!("pullback of {g} fails on {label}"))));
                }
                powers.push(pb.exceptional_power);
                pulled.push(pb.derivation);
            }
            let raw = FoliationPresentation::new(pulled.clone())?;
            let presentation = if chart.ring.is_polynomial_ring() {
                saturate_keep(&raw)?
            } else {
                raw
            };
            let id = self.tree.add_child(node, chart, label);
            self.foliations.push(NodeFoliation {
                node: id,
                pulled_back: pulled,
                exceptional_powers: powers,
                presentation: presentation.clone(),
            });
            out.push((id, presentation));
        }
        Ok(out)
    }

    pub fn record(&mut self, node: usize, operation: &str, center: Vec<String>, weights: Vec<u64>, children: Vec<usize>, evidence: Option<Classification>, note: String) {
        self.steps.push(Step {
            node,
            operation: operation.into(),
            center,
            weights,
            children,
            evidence,
            note,
        });
    }

    /// Moves `point` to the origin with coordinates `linear`, unless that is the identity.
    pub fn recenter_if_needed(
        &mut self,
        node: usize,
        f: &FoliationPresentation,
        point: &ClosedPoint,
        linear: &Matrix,
        evidence: &Classification,
    ) -> Flow<(usize, FoliationPresentation)> {
        let n = f.ring().nvars();
        if point.is_origin() && *linear == crate::linalg::identity(n, f.ring().modulus()) {
            return Ok((node, f.clone()));
        }
        let chart = recenter(self.chart(node), point, linear)?;
        let kids = self.expand(node, f, vec![chart], vec![format!("recenter at {point}")])?;
        let (id, g) = kids.into_iter().next().unwrap();
        self.record(node, "recenter", Vec::new(), Vec::new(), vec![id], Some(evidence.clone()), format!("coordinates adapted at {point}"));
        Ok((id, g))
    }

    pub fn finish(self, p: u64, outcome: Flow) -> Result<ResolutionReport> {
        let status = match outcome {
            Ok(()) => {
                if self.leaves.iter().all(|l| l.regular && l.invariant) {
                    Status::Resolved
                } else {
                    Status::Aborted {
                        diagnostic: "a leaf is not regular".into(),
                    }
                }
            }
            Err(Stop::Abort(d)) => Status::Aborted { diagnostic: d },
            Err(Stop::Internal(e)) => return Err(e),
        };
        Ok(ResolutionReport {
            driver: self.driver.into(),
            p,
            status,
            depth: self.tree.max_depth(),
            tree: self.tree,
            foliations: self.foliations,
            steps: self.steps,
            leaves: self.leaves,
        })
    }
}

/// Saturation, keeping the given generators when they already generate it.
pub(crate) fn saturate_keep(f: &FoliationPresentation) -> Result<FoliationPresentation> {
    let s = f.saturate()?;
    if f.tangent_submodule().contains_module(&s.tangent_submodule()) {
        Ok(f.clone())
    } else {
        Ok(s)
    }
}

pub(crate) fn var_names(chart: &Chart, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| chart.ambient().var_name(i).to_string()).collect()
}

pub(crate) fn label_of(chart: &Chart) -> String {
    match &chart.kind {
        ChartKind::Ordinary { distinguished, .. } | ChartKind::Weighted { distinguished, .. } => {
            format!("D+({})", chart.ambient().var_name(*distinguished))
        }
        ChartKind::Eliminate { variable, .. } => format!("eliminate {variable}"),
        ChartKind::Recenter { point, .. } => format!("recenter at {point}"),
        ChartKind::Root => "root".into(),
    }
}

pub(crate) fn labels(charts: &[Chart]) -> Vec<String> {
    charts.iter().map(label_of).collect()
}
