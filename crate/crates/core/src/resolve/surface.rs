//! Rank-one foliations on surface charts.

use super::{abort, saturate_keep, labels, var_names, Engine, Flow, ResolutionReport, ResolveOptions};
use crate::blowup::blowup_coordinate_center;
use crate::classify::{lambda_min_of, multiplicative_certificate, singular_points};
use crate::derivation::FoliationPresentation;
use crate::error::Result;
use crate::field::FieldElem;
use crate::weighted::weighted_blowup_charts;

/// Ordinary blow-ups at `λ = -1` points (and everywhere when `p = 2`),
/// weighted `(x,1)+(y,Λ)` blow-ups in certificate coordinates otherwise.
pub fn resolve_surface(f: &FoliationPresentation, options: &ResolveOptions) -> Result<ResolutionReport> {
    let p = f.ring().modulus();
    let mut eng = Engine::new("surface", f, options.clone());
    let outcome = (|| -> Flow {
        if f.ring().nvars() != 2 || !f.quotient().is_polynomial_ring() {
            return abort("the surface driver needs a polynomial ring in two variables");
        }
        if f.generic_rank() != 1 {
            return abort("the surface driver needs a rank-one foliation");
        }
        let start = saturate_keep(f)?;
        eng.set_presentation(0, &start);
        node(&mut eng, 0, start)
    })();
    eng.finish(p, outcome)
}

fn node(eng: &mut Engine, id: usize, f: FoliationPresentation) -> Flow {
    if f.is_regular()? {
        return eng.leaf(id, f);
    }
    eng.check_depth(id)?;
    if f.generators().len() != 1 {
        return abort(format!("node {id}: saturation is not generated by one derivation"));
    }
    let p = f.ring().modulus();
    let points = singular_points(&f)?;
    let Some(s) = points.first().cloned() else {
        return abort(format!("node {id}: no F_{p}-rational singular point"));
    };
    let cls = multiplicative_certificate(&f, &s)?;
    let Some(cert) = cls.certificate.clone().filter(|_| cls.is_multiplicative()) else {
        return abort(format!("node {id}: singular point {s} is not multiplicative ({:?})", cls.verdict));
    };
    if cert.linear.len() != 2 {
        return abort(format!("node {id}: expected two eigen-coordinates at {s}"));
    }
    if eng.chart(id).nontrivial_action().next().is_some() && !s.is_origin() {
        return abort(format!("node {id}: singular point {s} away from the origin of a stacky chart"));
    }
    let (base, g) = eng.recenter_if_needed(id, &f, &s, &cert.linear, &cls)?;
    let chart = eng.chart(base).clone();
    let ev = &cert.eigenvalues[0];
    let lambda = cls.lambda().unwrap_or_else(|| FieldElem::one(p));
    let note = format!(
        "eigenvalues ({}, {}), λ = {lambda}, λ_min = {}",
        ev[0],
        ev[1],
        lambda_min_of(lambda)
    );
    let (op, charts, weights) = if p == 2 || cls.minus_one {
        ("blowup", blowup_coordinate_center(&chart, &[0, 1])?, vec![1, 1])
    } else {
        // the coordinate of eigenvalue 1 gets weight 1, the other Λ
        let (one_idx, other_idx) = if ev[0].value() == 1 { (0, 1) } else { (1, 0) };
        let (w1, wl) = if eng.options.use_lambda_min && lambda_min_of(lambda) != lambda {
            (other_idx, one_idx)
        } else {
            (one_idx, other_idx)
        };
        let big = if w1 == one_idx { lambda.value() } else { lambda.inv().unwrap().value() };
        let mut weights = vec![0, 0];
        weights[w1] = 1;
        weights[wl] = big;
        ("weighted_blowup", weighted_blowup_charts(&chart, &[(0, weights[0]), (1, weights[1])])?, weights)
    };
    let names = labels(&charts);
    let kids = eng.expand(base, &g, charts, names)?;
    let ids = kids.iter().map(|k| k.0).collect();
    eng.record(base, op, var_names(&chart, &[0, 1]), weights, ids, Some(cls), note);
    for (kid, h) in kids {
        node(eng, kid, h)?;
    }
    Ok(())
}
