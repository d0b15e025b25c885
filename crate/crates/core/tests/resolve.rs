use std::sync::Arc;

use folres_core::blowup::ChartKind;
use folres_core::resolve::{
    resolve_char2, resolve_surface, resolve_threefold_corank1, verify_resolution, ResolutionReport, ResolveOptions, Status,
};
use folres_core::{Derivation, FoliationPresentation, Ideal, QuotientRing, Ring};

fn diag(p: u64, names: &[&str], w: &[i64]) -> FoliationPresentation {
    let r = Ring::new(p, names).unwrap();
    FoliationPresentation::new(vec![Derivation::diagonal(&r, w)]).unwrap()
}

fn assert_resolved(rep: &ResolutionReport) {
    assert_eq!(rep.status, Status::Resolved, "{:?}", rep.status);
    let v = verify_resolution(rep);
    assert!(v.ok, "{:?}", v.diagnostics);
}

#[test]
fn surface_weighted_single_step() {
    let f = diag(5, &["x", "y"], &[1, 3]);
    let rep = resolve_surface(&f, &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert_eq!(rep.depth, 1);
    assert_eq!(rep.leaves.len(), 2);
    assert_eq!(rep.steps[0].weights, vec![1, 3]);
    let leaf = rep.foliation(2).unwrap();
    let r = rep.tree.node(2).chart.ambient().clone();
    assert_eq!(leaf.pulled_back[0], Derivation::diagonal(&r, &[0, 1]));
    assert_eq!(leaf.presentation.generators()[0], Derivation::partial(&r, 1));
}

#[test]
fn surface_char_two_is_schematic() {
    let f = diag(2, &["x", "y"], &[1, 1]);
    let rep = resolve_surface(&f, &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert_eq!(rep.depth, 1);
    assert!(!rep.has_stacky_chart());
    assert_eq!(rep.steps[0].operation, "blowup");
}

#[test]
fn surface_minus_one_blows_up_first() {
    let f = diag(3, &["x", "y"], &[1, 2]);
    let rep = resolve_surface(&f, &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert_eq!(rep.steps[0].operation, "blowup");
    assert!(rep.depth <= 2);
    for step in &rep.steps[1..] {
        assert!(!step.evidence.as_ref().unwrap().minus_one);
    }
}

#[test]
fn surface_off_origin_point() {
    let r = Ring::new(5, &["x", "y"]).unwrap();
    let d = Derivation::parse(&r, &["x - 1", "3*y + 3"]).unwrap();
    let rep = resolve_surface(&FoliationPresentation::new(vec![d]).unwrap(), &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert_eq!(rep.steps[0].operation, "recenter");
}

#[test]
fn surface_unknown_point_aborts() {
    let r = Ring::new(3, &["x", "y"]).unwrap();
    let d = Derivation::parse(&r, &["x", "x + y"]).unwrap();
    let rep = resolve_surface(&FoliationPresentation::new(vec![d]).unwrap(), &ResolveOptions::default()).unwrap();
    assert!(matches!(rep.status, Status::Aborted { .. }));
    assert!(!verify_resolution(&rep).ok);
}

#[test]
fn char2_hypersurface_uv() {
    let r = Ring::new(2, &["u", "v", "w", "t"]).unwrap();
    let q = Arc::new(QuotientRing::new(Ideal::parse(&r, &["t^2 - u*v"]).unwrap()));
    let d = Derivation::on_quotient(&q, Derivation::diagonal(&r, &[0, 0, 0, 1]).coeffs().to_vec()).unwrap();
    let rep = resolve_char2(&FoliationPresentation::new(vec![d]).unwrap(), &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert!(!rep.has_stacky_chart());
    let kids = &rep.steps[0].children;
    assert_eq!(kids.len(), 3);
    let u = &rep.tree.node(kids[0]).chart;
    assert_eq!(*u.ring.relations(), Ideal::parse(u.ambient(), &["t'^2 - v'"]).unwrap());
    let lift = &rep.foliation(kids[0]).unwrap().pulled_back[0];
    assert_eq!(*lift, Derivation::parse(u.ambient(), &["0", "0", "0", "t'"]).unwrap());
    let t = &rep.tree.node(kids[2]).chart;
    assert_eq!(*t.ring.relations(), Ideal::parse(t.ambient(), &["1 - u'*v'"]).unwrap());
    let lift = &rep.foliation(kids[2]).unwrap().pulled_back[0];
    assert_eq!(*lift, Derivation::parse(t.ambient(), &["-u'", "-v'", "0", "t"]).unwrap());
}

#[test]
fn char2_hypersurface_uvw() {
    let r = Ring::new(2, &["u", "v", "w", "t"]).unwrap();
    let q = Arc::new(QuotientRing::new(Ideal::parse(&r, &["t^2 - u*v*w"]).unwrap()));
    let d = Derivation::on_quotient(&q, Derivation::diagonal(&r, &[0, 0, 0, 1]).coeffs().to_vec()).unwrap();
    let rep = resolve_char2(&FoliationPresentation::new(vec![d]).unwrap(), &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    let kids = &rep.steps[0].children;
    let u = &rep.tree.node(kids[0]).chart;
    assert_eq!(*u.ring.relations(), Ideal::parse(u.ambient(), &["t'^2 - v'*w"]).unwrap());
    let t = &rep.tree.node(kids[2]).chart;
    assert_eq!(*t.ring.relations(), Ideal::parse(t.ambient(), &["1 - u'*v'*w"]).unwrap());
}

#[test]
fn char2_smooth_normal_forms() {
    for w in [&[1, 0, 0][..], &[1, 1, 0], &[1, 1, 1]] {
        let f = diag(2, &["x", "y", "z"], w);
        let rep = resolve_char2(&f, &ResolveOptions::default()).unwrap();
        assert_resolved(&rep);
        assert!(!rep.has_stacky_chart());
    }
    let r = Ring::new(2, &["x", "y", "z"]).unwrap();
    let f = FoliationPresentation::new(vec![Derivation::partial(&r, 0)]).unwrap();
    let rep = resolve_char2(&f, &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert!(rep.steps.is_empty());
}

#[test]
fn threefold_two_steps() {
    let r = Ring::new(5, &["x", "y", "z"]).unwrap();
    let f = FoliationPresentation::new(vec![Derivation::diagonal(&r, &[1, 3, 0]), Derivation::diagonal(&r, &[1, 0, 4])]).unwrap();
    let rep = resolve_threefold_corank1(&f, &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert_eq!(rep.steps[0].weights, vec![1, 4, 2]);
    assert_eq!(rep.depth, 2);
    let dx = rep.steps[0].children[0];
    let chart = &rep.tree.node(dx).chart;
    assert!(matches!(chart.kind, ChartKind::Weighted { distinguished: 0, .. }));
    let pulled = &rep.foliation(dx).unwrap().pulled_back;
    assert_eq!(pulled[0], Derivation::diagonal(chart.ambient(), &[1, 4, -2]), "{:?}", pulled);
    assert_eq!(pulled[1], Derivation::diagonal(chart.ambient(), &[1, -4, 2]));
    let pres = &rep.foliation(dx).unwrap().presentation;
    assert!(pres.contains(&Derivation::partial(chart.ambient(), 0)));
    for l in &rep.leaves {
        assert!(l.regular && l.invariant);
    }
}

#[test]
fn threefold_curve_only() {
    let r = Ring::new(5, &["x", "y", "z"]).unwrap();
    let f = FoliationPresentation::new(vec![Derivation::partial(&r, 2), Derivation::diagonal(&r, &[1, 3, 0])]).unwrap();
    let rep = resolve_threefold_corank1(&f, &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert_eq!(rep.depth, 1);
    assert_eq!(rep.steps[0].weights, vec![1, 3]);
}

#[test]
fn threefold_regular_input() {
    let r = Ring::new(5, &["x", "y", "z"]).unwrap();
    let f = FoliationPresentation::new(vec![Derivation::partial(&r, 0), Derivation::partial(&r, 1)]).unwrap();
    let rep = resolve_threefold_corank1(&f, &ResolveOptions::default()).unwrap();
    assert_resolved(&rep);
    assert!(rep.steps.is_empty());
}

#[test]
fn corrupted_leaf_fails_verification() {
    let f = diag(5, &["x", "y"], &[1, 3]);
    let mut rep = resolve_surface(&f, &ResolveOptions::default()).unwrap();
    let id = rep.leaves[0].node;
    let r = rep.tree.node(id).chart.ambient().clone();
    rep.leaves[0].presentation = FoliationPresentation::new(vec![Derivation::diagonal(&r, &[1, 0])]).unwrap();
    let v = verify_resolution(&rep);
    assert!(!v.ok);
    assert!(v.diagnostics.iter().any(|d| d.contains(&format!("leaf {id}"))));
}

#[test]
fn resolved_leaf_is_fixed() {
    let f = diag(5, &["x", "y"], &[1, 3]);
    let rep = resolve_surface(&f, &ResolveOptions::default()).unwrap();
    let again = resolve_surface(&rep.leaves[0].presentation, &ResolveOptions::default()).unwrap();
    assert!(again.steps.is_empty());
    assert_eq!(again.status, Status::Resolved);
}
