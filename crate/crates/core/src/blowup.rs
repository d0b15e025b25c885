//! Blow-up charts along coordinate centers and the blow-up tree.
//!
//! Chart variables keep the positions of the parent variables. The
//! distinguished variable keeps its name; the other center variables get a
//! prime appended.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::classify::ClosedPoint;
use crate::derivation::{Derivation, FoliationPresentation, QRingRef};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ideal::{Ideal, QuotientRing};
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, Poly, Ring, RingRef};

/// A cyclic group `μ_order` acting diagonally with the given weights mod `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionFactor {
    pub order: u64,
    pub weights: Vec<u64>,
}

impl ActionFactor {
    pub fn new(order: u64, weights: Vec<i64>) -> Self {
        let o = order.max(1) as i64;
        ActionFactor {
            order: order.max(1),
            weights: weights.into_iter().map(|w| w.rem_euclid(o) as u64).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order <= 1
    }

    pub fn monomial_weight(&self, m: &Monomial) -> u64 {
        let total: u64 = m
            .exponents()
            .iter()
            .zip(self.weights.iter())
            .map(|(&e, &w)| e as u64 * w)
            .sum();
        total % self.order
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChartKind {
    Root,
    Ordinary {
        center: Vec<usize>,
        distinguished: usize,
    },
    Weighted {
        center: Vec<(usize, u64)>,
        distinguished: usize,
    },
    /// New coordinates `y = A (x - s)`.
    Recenter {
        point: ClosedPoint,
        linear: Matrix,
    },
    /// Drops `variable` using a relation `variable = image`.
    Eliminate {
        variable: String,
        image: Poly,
    },
}

impl ChartKind {
    pub fn is_blowup(&self) -> bool {
        matches!(self, ChartKind::Ordinary { .. } | ChartKind::Weighted { .. })
    }
}

/// An affine chart: a (quotient of a) polynomial ring with its map to the parent.
#[derive(Clone, Debug)]
pub struct Chart {
    pub ring: QRingRef,
    /// Image of each parent variable.
    pub to_parent: Vec<Poly>,
    /// Equation of the exceptional divisor (`1` if none).
    pub exceptional: Poly,
    pub action: Vec<ActionFactor>,
    pub kind: ChartKind,
}

impl Chart {
    pub fn root(ring: QRingRef) -> Chart {
        let amb = ring.ambient().clone();
        Chart {
            to_parent: (0..amb.nvars()).map(|i| Poly::var(&amb, i)).collect(),
            exceptional: Poly::one(&amb),
            action: Vec::new(),
            kind: ChartKind::Root,
            ring,
        }
    }

    pub fn polynomial_root(ring: &RingRef) -> Chart {
        Chart::root(Arc::new(QuotientRing::polynomial(ring)))
    }

    pub fn ambient(&self) -> &RingRef {
        self.ring.ambient()
    }

    pub fn nontrivial_action(&self) -> impl Iterator<Item = &ActionFactor> {
        self.action.iter().filter(|a| !a.is_trivial())
    }

    /// Largest group order among the action factors.
    pub fn max_order(&self) -> u64 {
        self.action.iter().map(|a| a.order).max().unwrap_or(1)
    }

    pub fn summary(&self) -> String {
        let amb = self.ambient();
        let mut s = format!("F_{}[{}]", amb.modulus(), amb.var_names().join(", "));
        if !self.ring.is_polynomial_ring() {
            s.push_str(&format!("/{}", self.ring.relations()));
        }
        for a in self.nontrivial_action() {
            s.push_str(&format!(" μ_{}{:?}", a.order, a.weights));
        }
        s
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())
    }
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

fn validate_center(chart: &Chart, center: &[(usize, u64)]) -> Result<()> {
    let n = chart.ambient().nvars();
    if center.is_empty() {
        return Err(Error::Precondition("empty blow-up center".into()));
    }
    for (k, &(i, w)) in center.iter().enumerate() {
        if i >= n {
            return Err(Error::Precondition(format!("center variable {i} out of range")));
        }
        if center[..k].iter().any(|&(j, _)| j == i) {
            return Err(Error::Precondition("repeated center variable".into()));
        }
        if w == 0 {
            return Err(Error::Precondition("weights must be positive".into()));
        }
    }
    Ok(())
}

/// Charts `D_+(x_i)` of the (weighted) blow-up of `sum (x_j, d_j)`.
pub(crate) fn blowup_charts(chart: &Chart, center: &[(usize, u64)], ordinary: bool) -> Result<Vec<Chart>> {
    validate_center(chart, center)?;
    let parent = chart.ambient();
    let p = parent.modulus();
    let n = parent.nvars();
    let mut out = Vec::new();
    for &(i, di) in center {
        let mut names: Vec<String> = parent.var_names().to_vec();
        for &(j, _) in center {
            if j != i {
                names[j] = fresh_name(&names, &parent.var_names()[j]);
            }
        }
        let ring = Ring::new(p, &names)?;
        let u = Poly::var(&ring, i);
        let to_parent: Vec<Poly> = (0..n)
            .map(|j| match center.iter().find(|c| c.0 == j) {
                Some(&(_, dj)) if j == i => u.pow(dj as u32),
                Some(&(_, dj)) => &u.pow(dj as u32) * &Poly::var(&ring, j),
                None => Poly::var(&ring, j),
            })
            .collect();
        let relations = Ideal::new(
            &ring,
            chart.ring.relations().generators().iter().map(|g| g.substitute(&ring, &to_parent)),
        )
        .saturation(&u);
        if relations.is_unit() {
            continue;
        }
        let relations = Ideal::new(&ring, relations.groebner().to_vec());
        let mut action = Vec::new();
        if di > 1 {
            let weights = (0..n)
                .map(|j| match center.iter().find(|c| c.0 == j) {
                    Some(_) if j == i => 1,
                    Some(&(_, dj)) => -(dj as i64),
                    None => 0,
                })
                .collect();
            action.push(ActionFactor::new(di, weights));
        }
        for a in chart.nontrivial_action() {
            let order = a.order * di;
            let wi = a.weights[i] as i64;
            let weights = (0..n)
                .map(|j| match center.iter().find(|c| c.0 == j) {
                    Some(_) if j == i => wi,
                    Some(&(_, dj)) => di as i64 * a.weights[j] as i64 - dj as i64 * wi,
                    None => di as i64 * a.weights[j] as i64,
                })
                .collect();
            action.push(ActionFactor::new(order, weights));
        }
        let kind = if ordinary {
            ChartKind::Ordinary {
                center: center.iter().map(|c| c.0).collect(),
                distinguished: i,
            }
        } else {
            ChartKind::Weighted {
                center: center.to_vec(),
                distinguished: i,
            }
        };
        out.push(Chart {
            ring: Arc::new(QuotientRing::new(relations)),
            to_parent,
            exceptional: u,
            action,
            kind,
        });
    }
    Ok(out)
}

/// Charts of the ordinary blow-up of `(x_j : j ∈ center)`.
pub fn blowup_coordinate_center(chart: &Chart, center: &[usize]) -> Result<Vec<Chart>> {
    let c: Vec<(usize, u64)> = center.iter().map(|&i| (i, 1)).collect();
    blowup_charts(chart, &c, true)
}

/// `(φ(I) + relations) : E^∞` in the chart.
pub fn strict_transform(ideal: &Ideal, chart: &Chart) -> Ideal {
    let ring = chart.ambient();
    let img = Ideal::new(ring, ideal.generators().iter().map(|g| g.substitute(ring, &chart.to_parent)));
    chart.ring.relations().add(&img).saturation(&chart.exceptional)
}

/// A pulled-back derivation `E^power · π*D` with the smallest `power ≥ 0`
/// that makes it regular on the chart.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub derivation: Derivation,
    pub exceptional_power: i32,
}

fn divide_common_power(coeffs: &mut [Poly], var: usize, cap: u32) -> u32 {
    let a = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.monomial_content().exponents()[var])
        .min()
        .unwrap_or(0)
        .min(cap);
    if a > 0 {
        let m = Monomial::var(coeffs[0].ring().nvars(), var, a);
        for c in coeffs.iter_mut() {
            *c = c.div_monomial(&m).unwrap();
        }
    }
    a
}

fn pullback_blowup(d: &Derivation, chart: &Chart, center: &[(usize, u64)], i: usize) -> Result<Pullback> {
    let ring = chart.ambient();
    let q = &chart.ring;
    let n = ring.nvars();
    let p = ring.modulus();
    let phi: Vec<Poly> = d.coeffs().iter().map(|c| c.substitute(ring, &chart.to_parent)).collect();
    let weight = |j: usize| center.iter().find(|c| c.0 == j).map(|c| c.1);
    let di = weight(i).unwrap();
    let big_k = center.iter().map(|c| c.1).max().unwrap();
    let u = Poly::var(ring, i);
    let di_inv = FieldElem::new(di as i64, p)
        .inv()
        .ok_or_else(|| Error::Unsupported(format!("weight {di} is divisible by p")))?;
    // N = u^K · π*D
    let mut coeffs: Vec<Poly> = (0..n)
        .map(|j| {
            if j == i {
                (&phi[i] * &u.pow((big_k - di + 1) as u32)).scale(di_inv)
            } else if let Some(dj) = weight(j) {
                let a = &phi[j] * &u.pow((big_k - dj) as u32);
                let b = &(&phi[i] * &Poly::var(ring, j)) * &u.pow((big_k - di) as u32);
                &a - &b.scale(di_inv * FieldElem::new(dj as i64, p))
            } else {
                &phi[j] * &u.pow(big_k as u32)
            }
        })
        .map(|c| q.normal_form(&c))
        .collect();
    let a = divide_common_power(&mut coeffs, i, big_k as u32);
    Ok(Pullback {
        derivation: Derivation::on_quotient(q, coeffs)?,
        exceptional_power: big_k as i32 - a as i32,
    })
}

/// Pullback through any chart kind.
pub fn pullback(d: &Derivation, chart: &Chart) -> Result<Pullback> {
    let ring = chart.ambient();
    match &chart.kind {
        ChartKind::Root => Ok(Pullback {
            derivation: d.clone(),
            exceptional_power: 0,
        }),
        ChartKind::Ordinary { center, distinguished } => {
            let c: Vec<(usize, u64)> = center.iter().map(|&j| (j, 1)).collect();
            pullback_blowup(d, chart, &c, *distinguished)
        }
        ChartKind::Weighted { center, distinguished } => pullback_blowup(d, chart, center, *distinguished),
        ChartKind::Recenter { linear, .. } => {
            let phi: Vec<Poly> = d.coeffs().iter().map(|c| c.substitute(ring, &chart.to_parent)).collect();
            let coeffs = linear
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(phi.iter())
                        .fold(Poly::zero(ring), |acc, (&a, c)| &acc + &c.scale(a))
                })
                .collect();
            Ok(Pullback {
                derivation: Derivation::on_quotient(&chart.ring, coeffs)?,
                exceptional_power: 0,
            })
        }
        ChartKind::Eliminate { variable, .. } => {
            let parent_idx = d
                .ring()
                .var_index(variable)
                .ok_or_else(|| Error::Structural("eliminated variable missing from parent".into()))?;
            let coeffs = d
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != parent_idx)
                .map(|(_, c)| c.substitute(ring, &chart.to_parent))
                .collect();
            Ok(Pullback {
                derivation: Derivation::on_quotient(&chart.ring, coeffs)?,
                exceptional_power: 0,
            })
        }
    }
}

/// Ordinary-chart pullback; weighted charts go through the weighted module.
pub fn pullback_derivation(d: &Derivation, chart: &Chart) -> Result<Pullback> {
    if matches!(chart.kind, ChartKind::Weighted { .. }) {
        return Err(Error::Unsupported("weighted chart; use the weighted pullback".into()));
    }
    pullback(d, chart)
}

/// Checks `D'(φ(x_i)) = E^k φ(D(x_i))` in the chart for every parent variable.
pub fn check_pullback(d: &Derivation, pb: &Pullback, chart: &Chart) -> bool {
    let ring = chart.ambient();
    let e = &chart.exceptional;
    let k = pb.exceptional_power;
    d.coeffs().iter().zip(chart.to_parent.iter()).all(|(c, img)| {
        let lhs = pb.derivation.apply(img);
        let rhs = c.substitute(ring, &chart.to_parent);
        if k >= 0 {
            chart.ring.equal(&lhs, &(&rhs * &e.pow(k as u32)))
        } else {
            chart.ring.equal(&(&lhs * &e.pow((-k) as u32)), &rhs)
        }
    })
}

/// Pulls back every generator and saturates when the chart is a polynomial ring.
pub fn pullback_foliation(f: &FoliationPresentation, chart: &Chart) -> Result<(FoliationPresentation, Vec<Pullback>)> {
    let pbs = f.generators().iter().map(|g| pullback(g, chart)).collect::<Result<Vec<_>>>()?;
    for (g, pb) in f.generators().iter().zip(pbs.iter()) {
        if !check_pullback(g, pb, chart) {
            return Err(Error::Structural(format!("pullback of {g} fails its defining identity")));
        }
    }
    let raw = f.with_generators(pbs.iter().map(|pb| pb.derivation.clone()).collect())?;
    let out = if chart.ring.is_polynomial_ring() {
        raw.saturate()?
    } else {
        raw
    };
    Ok((out, pbs))
}

/// Linear change of coordinates `y = A (x - s)`.
pub fn recenter(chart: &Chart, point: &ClosedPoint, linear: &Matrix) -> Result<Chart> {
    let ring = chart.ambient().clone();
    let n = ring.nvars();
    let p = ring.modulus();
    if linear.len() != n || linear.iter().any(|r| r.len() != n) || linalg::rank(linear) != n {
        return Err(Error::Precondition("coordinate change must be invertible".into()));
    }
    let identity = linalg::identity(n, p);
    if chart.nontrivial_action().next().is_some() && (!point.is_origin() || *linear != identity) {
        return Err(Error::Equivariance("cannot move coordinates on a chart with a group action".into()));
    }
    // inverse: columns solve A x = e_k
    let mut inv = linalg::zeros(n, n, p);
    for k in 0..n {
        let e: Vec<FieldElem> = (0..n).map(|i| if i == k { FieldElem::one(p) } else { FieldElem::zero(p) }).collect();
        let col = linalg::solve(linear, &e, p).expect("invertible");
        for i in 0..n {
            inv[i][k] = col[i];
        }
    }
    let to_parent: Vec<Poly> = (0..n)
        .map(|i| {
            (0..n).fold(Poly::from_elem(&ring, point.coords[i]), |acc, k| {
                &acc + &Poly::var(&ring, k).scale(inv[i][k])
            })
        })
        .collect();
    let relations = Ideal::new(
        &ring,
        chart.ring.relations().generators().iter().map(|g| g.substitute(&ring, &to_parent)),
    );
    Ok(Chart {
        ring: Arc::new(QuotientRing::new(relations)),
        to_parent,
        exceptional: Poly::one(&ring),
        action: chart.action.clone(),
        kind: ChartKind::Recenter {
            point: point.clone(),
            linear: linear.clone(),
        },
    })
}

/// If some relation reads `c·x_e = h(other variables)`, returns the chart
/// on the polynomial ring without `x_e`.
pub fn try_eliminate(chart: &Chart) -> Result<Option<Chart>> {
    let amb = chart.ambient();
    let n = amb.nvars();
    let gb = chart.ring.relations().groebner().to_vec();
    for (gi, g) in gb.iter().enumerate() {
        for e in 0..n {
            if g.degree_in(e) != 1 {
                continue;
            }
            let lin = Monomial::var(n, e, 1);
            let c = g.coeff(&lin);
            let others_free = g.terms().all(|(m, _)| m.exponents()[e] == 0 || *m == lin);
            if c.is_zero() || !others_free {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&k| k != e).collect();
            let names: Vec<&str> = keep.iter().map(|&k| amb.var_name(k)).collect();
            let ring = Ring::new(amb.modulus(), &names)?;
            // x_e = -(g - c x_e) / c
            let rest = g - &Poly::monomial(amb, lin.clone(), c);
            let h = rest
                .scale(-c.inv().unwrap())
                .restrict(&ring, &keep)
                .expect("relation is free of x_e apart from its linear term");
            let to_parent: Vec<Poly> = (0..n)
                .map(|k| if k == e { h.clone() } else { Poly::var(&ring, keep.iter().position(|&j| j == k).unwrap()) })
                .collect();
            let remaining = Ideal::new(
                &ring,
                gb.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != gi)
                    .map(|(_, r)| r.substitute(&ring, &to_parent)),
            );
            let action = chart
                .action
                .iter()
                .map(|a| ActionFactor {
                    order: a.order,
                    weights: keep.iter().map(|&k| a.weights[k]).collect(),
                })
                .collect();
            return Ok(Some(Chart {
                ring: Arc::new(QuotientRing::new(remaining)),
                to_parent,
                exceptional: Poly::one(&ring),
                action,
                kind: ChartKind::Eliminate {
                    variable: amb.var_name(e).to_string(),
                    image: h,
                },
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub chart: Chart,
    pub label: String,
}

/// Resolution history: every non-root chart maps to its parent.
#[derive(Clone, Debug)]
pub struct BlowUpTree {
    nodes: Vec<TreeNode>,
}

impl BlowUpTree {
    pub fn new(root: Chart) -> Self {
        BlowUpTree {
            nodes: vec![TreeNode {
                id: 0,
                parent: None,
                chart: root,
                label: "root".into(),
            }],
        }
    }

    pub fn add_child(&mut self, parent: usize, chart: Chart, label: impl Into<String>) -> usize {
        assert!(parent < self.nodes.len(), "unknown parent node");
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            id,
            parent: Some(parent),
            chart,
            label: label.into(),
        });
        id
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn children(&self, id: usize) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.parent == Some(id)).map(|n| n.id).collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| !self.nodes.iter().any(|m| m.parent == Some(n.id)))
            .map(|n| n.id)
            .collect()
    }

    /// Number of blow-ups between the root and `id`.
    pub fn depth(&self, id: usize) -> usize {
        let mut d = 0;
        let mut cur = id;
        while let Some(parent) = self.nodes[cur].parent {
            if self.nodes[cur].chart.kind.is_blowup() {
                d += 1;
            }
            cur = parent;
        }
        d
    }

    pub fn max_depth(&self) -> usize {
        self.leaves().into_iter().map(|l| self.depth(l)).max().unwrap_or(0)
    }

    /// Images of the root variables in the ring of `id`.
    pub fn to_root(&self, id: usize) -> Vec<Poly> {
        let node = &self.nodes[id];
        let ring = node.chart.ambient().clone();
        let mut images = node.chart.to_parent.clone();
        let mut cur = id;
        while let Some(parent) = self.nodes[cur].parent {
            if self.nodes[parent].parent.is_none() {
                break;
            }
            images = self.nodes[parent].chart.to_parent.iter().map(|f| f.substitute(&ring, &images)).collect();
            cur = parent;
        }
        if node.parent.is_none() {
            return (0..ring.nvars()).map(|i| Poly::var(&ring, i)).collect();
        }
        images
    }
}

impl Serialize for BlowUpTree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct NodeView<'a> {
            id: usize,
            parent: Option<usize>,
            label: &'a str,
            depth: usize,
            ring: String,
            variables: &'a [String],
            relations: Vec<String>,
            to_parent: Vec<String>,
            exceptional: String,
            action: &'a [ActionFactor],
            step: &'a ChartKind,
        }
        let views: Vec<NodeView> = self
            .nodes
            .iter()
            .map(|n| NodeView {
                id: n.id,
                parent: n.parent,
                label: &n.label,
                depth: self.depth(n.id),
                ring: n.chart.summary(),
                variables: n.chart.ambient().var_names(),
                relations: n.chart.ring.relations().generators().iter().map(|g| g.to_string()).collect(),
                to_parent: n.chart.to_parent.iter().map(|g| g.to_string()).collect(),
                exceptional: n.chart.exceptional.to_string(),
                action: &n.chart.action,
                step: &n.chart.kind,
            })
            .collect();
        views.serialize(serializer)
    }
}
