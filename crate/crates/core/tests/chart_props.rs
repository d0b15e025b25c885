use proptest::prelude::*;

use folres_core::blowup::{blowup_coordinate_center, pullback, Chart, ChartKind};
use folres_core::classify::{translate_poly, ClosedPoint};
use folres_core::oracles::{constants_basis, euclid_root, span_contains, TruncatedBasis};
use folres_core::resolve::{resolve_surface, resolve_threefold_corank1, verify_resolution, ResolveOptions, Status};
use folres_core::weighted::{mu_d_invariant, pullback_derivation_weighted, weighted_blowup_charts, ReesAlgebra};
use folres_core::{Derivation, FieldElem, FoliationPresentation, Monomial, Poly, Ring, RingRef};

type Terms = Vec<(i64, u32, u32)>;

fn terms(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-6i64..7, 0..=max_deg, 0..=max_deg), 0..=max_terms)
        .prop_map(move |ts| ts.into_iter().filter(|t| t.1 + t.2 <= max_deg).collect())
}

fn poly(r: &RingRef, t: &Terms) -> Poly {
    Poly::from_terms(r, t.iter().map(|&(c, a, b)| (Monomial::from_exponents(vec![a, b]), r.elem(c))))
}

fn plane(p: u64) -> RingRef {
    Ring::new(p, &["x", "y"]).unwrap()
}

fn derivation(r: &RingRef, cs: &[Terms]) -> Derivation {
    Derivation::new(r, cs.iter().map(|t| poly(r, t)).collect()).unwrap()
}

/// `D'(φ f) = E^k φ(D f)`, checked literally.
fn defining_identity(d: &Derivation, chart: &Chart, f: &Poly) -> bool {
    let pb = pullback(d, chart).unwrap();
    let ring = chart.ambient();
    let lhs = pb.derivation.apply(&f.substitute(ring, &chart.to_parent));
    let rhs = &d.apply(f).substitute(ring, &chart.to_parent) * &chart.exceptional.pow(pb.exceptional_power as u32);
    pb.exceptional_power >= 0 && lhs == rhs
}

/// Chart `D+(x)` (`x, y'`) to chart `D+(y)` (`x', y`): `x ↦ x'y`, `y' ↦ 1/x'`,
/// multiplied through by `x'^k`.
fn transition(f: &Poly, target: &RingRef, k: u32) -> Poly {
    Poly::from_terms(
        target,
        f.terms().map(|(m, c)| {
            let (a, b) = (m.exponents()[0], m.exponents()[1]);
            (Monomial::from_exponents(vec![a + k - b, a]), c)
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ordinary_pullback_defining_property(
        p in prop::sample::select(vec![2u64, 3, 5]),
        cs in prop::collection::vec(terms(2, 3), 2),
        fs in prop::collection::vec(terms(3, 4), 5),
    ) {
        let r = plane(p);
        let d = derivation(&r, &cs);
        for chart in blowup_coordinate_center(&Chart::polynomial_root(&r), &[0, 1]).unwrap() {
            for f in &fs {
                prop_assert!(defining_identity(&d, &chart, &poly(&r, f)));
            }
        }
    }

    #[test]
    fn charts_glue_on_the_overlap(
        p in prop::sample::select(vec![3u64, 5]),
        cs in prop::collection::vec(terms(2, 3), 2),
        f in terms(2, 3),
    ) {
        let r = plane(p);
        let d = derivation(&r, &cs);
        let f = poly(&r, &f);
        let charts = blowup_coordinate_center(&Chart::polynomial_root(&r), &[0, 1]).unwrap();
        let (cx, cy) = (&charts[0], &charts[1]);
        let (px, py) = (pullback(&d, cx).unwrap(), pullback(&d, cy).unwrap());
        let a = px.derivation.apply(&f.substitute(cx.ambient(), &cx.to_parent));
        let b = py.derivation.apply(&f.substitute(cy.ambient(), &cy.to_parent));
        let k = a.degree_in(1);
        let (ex, ey) = (px.exceptional_power as u32, py.exceptional_power as u32);
        let ry = cy.ambient();
        let xp = Poly::var(ry, 0);
        let y = Poly::var(ry, 1);
        let lhs = &transition(&a, ry, k) * &y.pow(ey);
        let rhs = &(&xp.pow(k + ex) * &y.pow(ex)) * &b;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composite_blowups_pull_back_along_the_composite(
        p in prop::sample::select(vec![3u64, 5]),
        cs in prop::collection::vec(terms(2, 3), 2),
        f in terms(3, 4),
        first in 0usize..2,
        second in 0usize..2,
    ) {
        let r = plane(p);
        let d = derivation(&r, &cs);
        let c1 = blowup_coordinate_center(&Chart::polynomial_root(&r), &[0, 1]).unwrap().swap_remove(first);
        let c2 = blowup_coordinate_center(&c1, &[0, 1]).unwrap().swap_remove(second);
        let pb1 = pullback(&d, &c1).unwrap();
        let pb2 = pullback(&pb1.derivation, &c2).unwrap();
        let r2 = c2.ambient();
        let compose: Vec<Poly> = c1.to_parent.iter().map(|g| g.substitute(r2, &c2.to_parent)).collect();
        let f = poly(&r, &f);
        let lhs = pb2.derivation.apply(&f.substitute(r2, &compose));
        let e1 = c1.exceptional.pow(pb1.exceptional_power as u32).substitute(r2, &c2.to_parent);
        let rhs = &(&d.apply(&f).substitute(r2, &compose) * &e1) * &c2.exceptional.pow(pb2.exceptional_power as u32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rees_degree_parts_decrease(
        p in prop::sample::select(vec![3u64, 5, 7]),
        gens in prop::collection::vec((terms(2, 3), 1u64..4), 1..=3),
    ) {
        let r = plane(p);
        let gens: Vec<(Poly, u64)> = gens.iter().map(|(t, w)| (poly(&r, t), *w)).filter(|(g, _)| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let rees = ReesAlgebra::new(gens).unwrap();
        for m in 0..6 {
            prop_assert!(rees.degree_part(m).contains_ideal(&rees.degree_part(m + 1)));
        }
    }

    #[test]
    fn weighted_charts_are_isomorphisms_off_the_center(
        p in prop::sample::select(vec![5u64, 7]),
        w in prop::collection::vec(1u64..5, 3),
    ) {
        let r = Ring::new(p, &["x", "y", "z"]).unwrap();
        let center: Vec<(usize, u64)> = w.iter().enumerate().map(|(i, &d)| (i, d)).collect();
        for chart in weighted_blowup_charts(&Chart::polynomial_root(&r), &center).unwrap() {
            let ChartKind::Weighted { distinguished: i, .. } = chart.kind else { panic!("not weighted") };
            let amb = chart.ambient();
            let u = Poly::var(amb, i);
            let di = w[i] as u32;
            prop_assert_eq!(&chart.to_parent[i], &u.pow(di));
            // every invariant v_j^{d_i} = x_j^{d_i} / x_i^{d_j} comes from the parent
            for j in (0..3).filter(|&j| j != i) {
                let vj = Poly::var(amb, j);
                let lhs = chart.to_parent[j].pow(di);
                let rhs = &chart.to_parent[i].pow(w[j] as u32) * &vj.pow(di);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn diagonal_pullbacks_are_invariant(
        p in prop::sample::select(vec![3u64, 5, 7]),
        lambdas in prop::collection::vec(0i64..7, 3),
        w in prop::collection::vec(1u64..7, 3),
    ) {
        prop_assume!(w.iter().all(|d| d % p != 0));
        let r = Ring::new(p, &["x", "y", "z"]).unwrap();
        let d = Derivation::diagonal(&r, &lambdas);
        prop_assume!(!d.is_zero());
        let center: Vec<(usize, u64)> = w.iter().enumerate().map(|(i, &d)| (i, d)).collect();
        for chart in weighted_blowup_charts(&Chart::polynomial_root(&r), &center).unwrap() {
            let pb = pullback_derivation_weighted(&d, &chart).unwrap();
            prop_assert_eq!(pb.exceptional_power, 0);
            for a in &chart.action {
                prop_assert!(mu_d_invariant(&pb.derivation, a));
            }
        }
    }

    /// Diagonal foliations moved to a random point end in a verified
    /// resolution of depth at most two.
    #[test]
    fn surface_driver_terminates_with_certificate(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        l in 1i64..7,
        s in prop::collection::vec(0i64..7, 2),
    ) {
        prop_assume!(l % p as i64 != 0);
        let r = plane(p);
        let pt = ClosedPoint::new(&s, p);
        let back = ClosedPoint::new(&[-s[0], -s[1]], p);
        let coeffs: Vec<Poly> = Derivation::diagonal(&r, &[1, l]).coeffs().iter().map(|c| translate_poly(c, &back)).collect();
        let f = FoliationPresentation::new(vec![Derivation::new(&r, coeffs).unwrap()]).unwrap();
        let rep = resolve_surface(&f, &ResolveOptions::default()).unwrap();
        prop_assert_eq!(&rep.status, &Status::Resolved, "at {}", pt);
        prop_assert!(verify_resolution(&rep).ok);
        prop_assert!(rep.depth <= 2);
        if p == 2 {
            prop_assert!(!rep.has_stacky_chart());
        }
        for fol in &rep.foliations {
            let chart = &rep.tree.node(fol.node).chart;
            for g in &fol.pulled_back {
                for a in chart.nontrivial_action() {
                    prop_assert!(folres_core::weighted::mu_d_character(g, a).is_some());
                }
            }
        }
        for leaf in rep.leaves.iter().filter(|l| rep.tree.node(l.node).chart.max_order() == 1) {
            let again = resolve_surface(&leaf.presentation, &ResolveOptions::default()).unwrap();
            prop_assert!(again.steps.is_empty());
        }
    }

    #[test]
    fn threefold_driver_resolves_diagonal_pairs(
        p in prop::sample::select(vec![3u64, 5, 7]),
        l in 1i64..7,
        m in 1i64..7,
    ) {
        prop_assume!(l % p as i64 != 0 && m % p as i64 != 0);
        let r = Ring::new(p, &["x", "y", "z"]).unwrap();
        let f = FoliationPresentation::new(vec![Derivation::diagonal(&r, &[1, l, 0]), Derivation::diagonal(&r, &[1, 0, m])]).unwrap();
        let rep = resolve_threefold_corank1(&f, &ResolveOptions::default()).unwrap();
        match &rep.status {
            Status::Resolved => prop_assert!(verify_resolution(&rep).ok),
            Status::Aborted { diagnostic } => prop_assert!(!diagnostic.is_empty()),
        }
    }

    #[test]
    fn constants_contain_p_th_powers(
        p in prop::sample::select(vec![2u64, 3, 5]),
        cs in prop::collection::vec(terms(2, 3), 2),
    ) {
        let r = plane(p);
        let d = derivation(&r, &cs);
        let n = 2 * p as u32;
        let basis = constants_basis(&FoliationPresentation::new(vec![d.clone()]).unwrap(), n).unwrap();
        for b in &basis {
            prop_assert!(d.apply(b).is_zero());
        }
        for m in TruncatedBasis::new(2, n / p as u32).monomials {
            let e = m.exponents();
            let mono = Poly::monomial(&r, Monomial::from_exponents(vec![e[0] * p as u32, e[1] * p as u32]), FieldElem::one(p));
            prop_assert!(span_contains(&basis, &mono));
        }
    }

    #[test]
    fn diagonal_constants_match_the_lattice(
        p in prop::sample::select(vec![2u64, 3, 5]),
        l in prop::collection::vec(0i64..5, 3),
    ) {
        let r = Ring::new(p, &["x", "y", "z"]).unwrap();
        let d = Derivation::diagonal(&r, &l);
        let n = p as u32 + 1;
        let basis = constants_basis(&FoliationPresentation::new(vec![d]).unwrap(), n).unwrap();
        let mut count = 0;
        for a in 0..=n as i64 {
            for b in 0..=n as i64 - a {
                for c in 0..=n as i64 - a - b {
                    if (a * l[0] + b * l[1] + c * l[2]).rem_euclid(p as i64) == 0 {
                        count += 1;
                    }
                }
            }
        }
        prop_assert_eq!(basis.len(), count);
    }

    #[test]
    fn euclid_chain_recursion(a in 1u64..40, b in 1u64..40) {
        let g = (1..=a.min(b)).rev().find(|k| a % k == 0 && b % k == 0).unwrap();
        prop_assume!(g == 1);
        let root = euclid_root(a, b, 5).unwrap();
        prop_assert!(root.verified);
        let c = &root.chain;
        prop_assert_eq!(*c.last().unwrap(), 1);
        prop_assert_eq!(root.quotients.len() + 2, c.len());
        for (i, m) in root.quotients.iter().enumerate() {
            prop_assert_eq!(c[i], m * c[i + 1] + c[i + 2]);
        }
    }
}

#[test]
fn non_coprime_euclid_input_is_rejected() {
    assert!(euclid_root(4, 6, 5).is_err());
}
