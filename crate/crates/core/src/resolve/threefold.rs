//! Corank-one foliations on threefold charts, `p > 2`: weighted blow-ups at
//! the points where the singular curve is singular, then along the curve.

use super::{abort, saturate_keep, labels, var_names, Engine, Flow, ResolutionReport, ResolveOptions};
use crate::classify::{multiplicative_certificate, singular_points, Certificate, Classification, ClosedPoint};
use crate::derivation::{Derivation, FoliationPresentation};
use crate::error::Result;
use crate::field::FieldElem;
use crate::linalg;
use crate::oracles::{adapted_rees_check, lambda_constancy_check};
use crate::weighted::weighted_blowup_charts;

pub fn resolve_threefold_corank1(f: &FoliationPresentation, options: &ResolveOptions) -> Result<ResolutionReport> {
    let p = f.ring().modulus();
    let mut eng = Engine::new("threefold_corank1", f, options.clone());
    let outcome = (|| -> Flow {
        if p == 2 {
            return abort("the threefold driver needs p > 2");
        }
        if f.ring().nvars() != 3 || !f.quotient().is_polynomial_ring() {
            return abort("the threefold driver needs a polynomial ring in three variables");
        }
        if f.generic_rank() != 2 {
            return abort("the threefold driver needs a foliation of rank two");
        }
        let start = saturate_keep(f)?;
        eng.set_presentation(0, &start);
        node(&mut eng, 0, start)
    })();
    eng.finish(p, outcome)
}

/// Smallest `b ≥ 1` with `2b ≡ λ`; it is prime to `p` since `λ ≠ 0`.
pub fn step_one_weights(lambda: FieldElem) -> u64 {
    let p = lambda.modulus();
    (lambda * FieldElem::new(2, p).inv().expect("p > 2")).value()
}

/// `⟨∂z, x_a∂x_a + λ x_b∂x_b⟩` in the chart coordinates.
struct CurveShape {
    z: usize,
    a: usize,
    b: usize,
    lambda: FieldElem,
}

fn curve_shape(f: &FoliationPresentation) -> Option<CurveShape> {
    let ring = f.ring();
    let p = ring.modulus();
    for z in 0..3 {
        let dz = Derivation::partial(ring, z);
        if !f.contains(&dz) {
            continue;
        }
        let (a, b) = match z {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for lambda in FieldElem::units(p) {
            let mut w = vec![0i64; 3];
            w[a] = 1;
            w[b] = lambda.value() as i64;
            let diag = Derivation::diagonal(ring, &w);
            if !f.contains(&diag) {
                continue;
            }
            let model = FoliationPresentation::new(vec![dz.clone(), diag]).ok()?;
            if f.generators().iter().all(|g| model.contains(g)) {
                return Some(CurveShape { z, a, b, lambda });
            }
        }
    }
    None
}

/// `(x, y, z, λ, μ)`: eigen-coordinate indices with `x∂x + λy∂y` and
/// `x∂x + μz∂z` in the span of the linear parts.
fn point_shape(cert: &Certificate) -> Option<(usize, usize, usize, FieldElem, FieldElem)> {
    if cert.eigenvalues.len() != 2 || cert.linear.len() != 3 {
        return None;
    }
    let (r1, r2) = (&cert.eigenvalues[0], &cert.eigenvalues[1]);
    let p = r1[0].modulus();
    let one = FieldElem::one(p);
    let zero = FieldElem::zero(p);
    let solve = |keep: usize, kill: usize| -> Option<Vec<FieldElem>> {
        let m = vec![vec![r1[keep], r2[keep]], vec![r1[kill], r2[kill]]];
        if linalg::determinant(&m, p).is_zero() {
            return None;
        }
        let c = linalg::solve(&m, &[one, zero], p)?;
        Some((0..3).map(|i| c[0] * r1[i] + c[1] * r2[i]).collect())
    };
    for x in 0..3 {
        let (y, z) = match x {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (Some(v1), Some(v2)) = (solve(x, z), solve(x, y)) else {
            continue;
        };
        if !v1[y].is_zero() && !v2[z].is_zero() {
            return Some((x, y, z, v1[y], v2[z]));
        }
    }
    None
}

fn node(eng: &mut Engine, id: usize, f: FoliationPresentation) -> Flow {
    if f.is_regular()? {
        return eng.leaf(id, f);
    }
    eng.check_depth(id)?;
    let p = f.ring().modulus();
    let chart = eng.chart(id).clone();
    if let Some(shape) = curve_shape(&f) {
        // gate: λ constancy and agreement of the Rees algebras at two curve points
        let mut samples = Vec::new();
        for c in [0i64, 1] {
            let mut coords = vec![0i64; 3];
            coords[shape.z] = c;
            samples.push(ClosedPoint::new(&coords, p));
        }
        if !lambda_constancy_check(&f, &samples)? {
            return abort(format!("node {id}: λ is not constant along the singular curve"));
        }
        for s in &samples {
            if !adapted_rees_check(&f, s, (shape.a, shape.b), shape.lambda, eng.options.rees_bound)? {
                return abort(format!("node {id}: Rees algebras disagree at {s}"));
            }
        }
        let big = shape.lambda.value();
        let charts = weighted_blowup_charts(&chart, &[(shape.a, 1), (shape.b, big)])?;
        let names = labels(&charts);
        let kids = eng.expand(id, &f, charts, names)?;
        eng.record(
            id,
            "weighted_blowup",
            var_names(&chart, &[shape.a, shape.b]),
            vec![1, big],
            kids.iter().map(|k| k.0).collect(),
            None,
            format!("singular curve along {}, λ = {}", chart.ambient().var_name(shape.z), shape.lambda),
        );
        for (kid, g) in kids {
            node(eng, kid, g)?;
        }
        return Ok(());
    }
    let mut chosen: Option<(Classification, (usize, usize, usize, FieldElem, FieldElem))> = None;
    for s in singular_points(&f)? {
        let cls = multiplicative_certificate(&f, &s)?;
        if let Some(shape) = cls.certificate.as_ref().and_then(point_shape) {
            chosen = Some((cls, shape));
            break;
        }
    }
    let Some((cls, (x, y, z, lambda, mu))) = chosen else {
        return abort(format!("node {id}: singular locus matches neither local shape"));
    };
    let s = cls.point.clone();
    if chart.nontrivial_action().next().is_some() && !s.is_origin() {
        return abort(format!("node {id}: point {s} away from the origin of a stacky chart"));
    }
    let cert = cls.certificate.clone().unwrap();
    let (base, g) = eng.recenter_if_needed(id, &f, &s, &cert.linear, &cls)?;
    let chart = eng.chart(base).clone();
    let (b, c) = (step_one_weights(lambda), step_one_weights(mu));
    let charts = weighted_blowup_charts(&chart, &[(x, 1), (y, b), (z, c)])?;
    let names = labels(&charts);
    let kids = eng.expand(base, &g, charts, names)?;
    eng.record(
        base,
        "weighted_blowup",
        var_names(&chart, &[x, y, z]),
        vec![1, b, c],
        kids.iter().map(|k| k.0).collect(),
        Some(cls),
        format!("λ = {lambda}, μ = {mu}, b = {b}, c = {c}"),
    );
    for (kid, h) in kids {
        node(eng, kid, h)?;
    }
    Ok(())
}
