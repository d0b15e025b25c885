//! Characteristic two: ordinary blow-ups only, on smooth charts and on the
//! hypersurface models `t² - uv`, `t² - uvw`.

use super::{abort, saturate_keep, labels, var_names, Engine, Flow, ResolutionReport, ResolveOptions};
use crate::blowup::{blowup_coordinate_center, try_eliminate};
use crate::derivation::{chart_is_regular, subsets, FoliationPresentation};
use crate::error::Result;
use crate::field::FieldElem;
use crate::ideal::Ideal;
use crate::poly::Poly;

pub fn resolve_char2(f: &FoliationPresentation, options: &ResolveOptions) -> Result<ResolutionReport> {
    let p = f.ring().modulus();
    let mut eng = Engine::new("char2", f, options.clone());
    let outcome = (|| -> Flow {
        if p != 2 {
            return abort("the char2 driver needs p = 2");
        }
        if f.ring().nvars() > 4 {
            return abort("the char2 driver handles charts of dimension at most three");
        }
        if f.generic_rank() != 1 {
            return abort("the char2 driver needs a rank-one foliation");
        }
        node(&mut eng, 0, f.clone())
    })();
    eng.finish(p, outcome)
}

/// Minimal coordinate subsets `S` with `V(x_S)` a component of `V(J)`, if
/// `V(J)` is a union of coordinate subspaces.
fn coordinate_components(j: &Ideal) -> Option<Vec<Vec<usize>>> {
    let ring = j.ring().clone();
    let n = ring.nvars();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for k in 1..=n {
        for s in subsets(n, k) {
            if found.iter().any(|f| f.iter().all(|i| s.contains(i))) {
                continue;
            }
            if Ideal::of_vars(&ring, &s).contains_ideal(j) {
                found.push(s);
            }
        }
    }
    let product = found
        .iter()
        .fold(Ideal::unit(&ring), |acc, s| acc.mul(&Ideal::of_vars(&ring, s)));
    (1..=4).any(|e| j.contains_ideal(&product.pow(e))).then_some(found)
}

fn node(eng: &mut Engine, id: usize, f: FoliationPresentation) -> Flow {
    let chart = eng.chart(id).clone();
    if !chart.ring.is_polynomial_ring() {
        if let Some(e) = try_eliminate(&chart)? {
            let names = labels(std::slice::from_ref(&e));
            let kids = eng.expand(id, &f, vec![e], names)?;
            eng.record(id, "eliminate", Vec::new(), Vec::new(), kids.iter().map(|k| k.0).collect(), None, "linear relation".into());
            for (kid, g) in kids {
                node(eng, kid, g)?;
            }
            return Ok(());
        }
        if chart_is_regular(&chart.ring) {
            if f.is_regular()? {
                return eng.leaf(id, f);
            }
            return abort(format!("node {id}: singular foliation on a regular hypersurface chart"));
        }
        eng.check_depth(id)?;
        let rels = chart.ring.relations().generators().to_vec();
        let ring = chart.ambient().clone();
        let jac = rels
            .iter()
            .flat_map(|r| (0..ring.nvars()).map(|i| r.derivative(i)).collect::<Vec<_>>())
            .chain(rels.iter().cloned());
        let sing = Ideal::new(&ring, jac);
        let Some(comps) = coordinate_components(&sing) else {
            return abort(format!("node {id}: the singular locus is not a union of coordinate subspaces"));
        };
        let center = comps[0].clone();
        let charts = blowup_coordinate_center(&chart, &center)?;
        let names = labels(&charts);
        let kids = eng.expand(id, &f, charts, names)?;
        let note = format!("singular locus components: {}", comps.iter().map(|c| var_names(&chart, c).join(",")).collect::<Vec<_>>().join(" | "));
        eng.record(id, "blowup", var_names(&chart, &center), vec![1; center.len()], kids.iter().map(|k| k.0).collect(), None, note);
        for (kid, g) in kids {
            node(eng, kid, g)?;
        }
        return Ok(());
    }
    let f = saturate_keep(&f)?;
    eng.set_presentation(id, &f);
    if f.is_regular()? {
        return eng.leaf(id, f);
    }
    eng.check_depth(id)?;
    let [d] = f.generators() else {
        return abort(format!("node {id}: saturation is not generated by one derivation"));
    };
    // D = c Σ_{i ∈ S} x_i ∂x_i
    let ring = f.ring().clone();
    let mut scale: Option<FieldElem> = None;
    let mut center = Vec::new();
    for (i, c) in d.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let xi = Poly::var(&ring, i);
        let lc = c.coeff(&xi.terms().next().unwrap().0.clone());
        if *c != xi.scale(lc) || scale.is_some_and(|s| s != lc) {
            return abort(format!("node {id}: {d} is not one of the supported normal forms"));
        }
        scale = Some(lc);
        center.push(i);
    }
    if center.len() < 2 {
        return abort(format!("node {id}: {d} is not one of the supported normal forms"));
    }
    let charts = blowup_coordinate_center(&chart, &center)?;
    let names = labels(&charts);
    let kids = eng.expand(id, &f, charts, names)?;
    eng.record(id, "blowup", var_names(&chart, &center), vec![1; center.len()], kids.iter().map(|k| k.0).collect(), None, format!("normal form {d}"));
    for (kid, g) in kids {
        node(eng, kid, g)?;
    }
    Ok(())
}
