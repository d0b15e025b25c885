//! Weighted Rees algebras and weighted blow-up charts.
//!
//! A stacky chart is a smooth cover together with a diagonal `μ_d` action;
//! foliations are computed on the cover and checked for invariance.

use std::fmt;

use serde::Serialize;

use crate::blowup::{blowup_charts, pullback, ActionFactor, Chart, ChartKind, Pullback};
use crate::derivation::{Derivation, FoliationPresentation};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{same_ring, Poly, RingRef};

/// `Σ (g_i, d_i)`: degree `m` part generated by `Π g_i^{⌈m_i/d_i⌉}`, `Σ m_i = m`.
#[derive(Clone, Debug, Serialize)]
pub struct ReesAlgebra {
    #[serde(skip)]
    ring: RingRef,
    terms: Vec<(Poly, u64)>,
}

impl ReesAlgebra {
    pub fn new(terms: Vec<(Poly, u64)>) -> Result<Self> {
        let Some(ring) = terms.first().map(|t| t.0.ring().clone()) else {
            return Err(Error::Precondition("a Rees algebra needs at least one generator".into()));
        };
        for (g, d) in &terms {
            if *d == 0 {
                return Err(Error::Precondition("weights must be positive".into()));
            }
            if !same_ring(g.ring(), &ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(ReesAlgebra { ring, terms })
    }

    /// `Σ (x_i, d_i)` for coordinate variables.
    pub fn coordinate(ring: &RingRef, weights: &[(usize, u64)]) -> Result<Self> {
        ReesAlgebra::new(weights.iter().map(|&(i, d)| (Poly::var(ring, i), d)).collect())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Poly, u64)] {
        &self.terms
    }

    pub fn degree_part(&self, m: u64) -> Ideal {
        rees_degree_part(self, m)
    }
}

impl fmt::Display for ReesAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (g, d)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({g}, {d})")?;
        }
        Ok(())
    }
}

fn compositions(m: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if parts == 1 {
        prefix.push(m);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=m {
        prefix.push(first);
        compositions(m - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

pub fn rees_degree_part(r: &ReesAlgebra, m: u64) -> Ideal {
    let mut comps = Vec::new();
    compositions(m, r.terms.len(), &mut Vec::new(), &mut comps);
    let gens = comps.into_iter().map(|c| {
        c.iter()
            .zip(r.terms.iter())
            .fold(Poly::one(&r.ring), |acc, (&mi, (g, d))| &acc * &g.pow(mi.div_ceil(*d) as u32))
    });
    Ideal::new(&r.ring, gens)
}

/// `R1_m ⊆ R2_m` for every `m ≤ bound`.
pub fn rees_contained_up_to(r1: &ReesAlgebra, r2: &ReesAlgebra, bound: u64) -> Result<bool> {
    if !same_ring(&r1.ring, &r2.ring) {
        return Err(Error::RingMismatch);
    }
    Ok((0..=bound).all(|m| rees_degree_part(r2, m).contains_ideal(&rees_degree_part(r1, m))))
}

/// Containment after localizing at the origin.
///
/// Requires the generators of `r2` to form a system of parameters at the
/// origin, so that `R2_m` contains `𝔪^m` locally and `R1_m ⊆ R2_m + 𝔪^m`
/// decides local containment.
pub fn rees_contained_locally_up_to(r1: &ReesAlgebra, r2: &ReesAlgebra, bound: u64) -> Result<bool> {
    if !same_ring(&r1.ring, &r2.ring) {
        return Err(Error::RingMismatch);
    }
    let m_ideal = Ideal::maximal_at_origin(&r2.ring);
    let gens = Ideal::new(&r2.ring, r2.terms.iter().map(|t| t.0.clone()));
    if r2.terms.len() != r2.ring.nvars() || !gens.add(&m_ideal.pow(2)).contains_ideal(&m_ideal) {
        return Err(Error::Precondition("generators must be a regular system of parameters at the origin".into()));
    }
    Ok((0..=bound).all(|m| {
        rees_degree_part(r2, m)
            .plus_origin_power(m as u32)
            .contains_ideal(&rees_degree_part(r1, m))
    }))
}

/// Charts `D_+(x_i)` of the weighted blow-up of `Σ (x_i, d_i)`.
pub fn weighted_blowup_charts(chart: &Chart, centers: &[(usize, u64)]) -> Result<Vec<Chart>> {
    let p = chart.ambient().modulus();
    if let Some(&(_, d)) = centers.iter().find(|c| c.1 % p == 0) {
        return Err(Error::Unsupported(format!("weight {d} is divisible by p = {p}")));
    }
    blowup_charts(chart, centers, false)
}

/// Character of `D` under the factor: `χ` with `weight(m) ≡ w_z + χ` for every
/// monomial `m` of the `z`-coefficient, if one exists.
pub fn mu_d_character(d: &Derivation, factor: &ActionFactor) -> Option<u64> {
    let o = factor.order;
    let mut chi = None;
    for (z, c) in d.coeffs().iter().enumerate() {
        for (m, _) in c.terms() {
            let x = (factor.monomial_weight(m) + o - factor.weights[z] % o) % o;
            match chi {
                None => chi = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
    }
    Some(chi.unwrap_or(0))
}

pub fn mu_d_invariant(d: &Derivation, factor: &ActionFactor) -> bool {
    factor.is_trivial() || mu_d_character(d, factor) == Some(0)
}

/// Pullback along a weighted chart, checked against the group action.
pub fn pullback_derivation_weighted(d: &Derivation, chart: &Chart) -> Result<Pullback> {
    let ChartKind::Weighted { center, distinguished } = &chart.kind else {
        return Err(Error::Precondition("not a weighted chart".into()));
    };
    let di = center.iter().find(|c| c.0 == *distinguished).map(|c| c.1).unwrap_or(1);
    let pb = pullback(d, chart)?;
    for (k, factor) in chart.action.iter().enumerate() {
        if factor.is_trivial() {
            continue;
        }
        let chi = mu_d_character(&pb.derivation, factor);
        let own = k == 0 && di > 1;
        let expected = pb.exceptional_power.rem_euclid(factor.order as i32) as u64;
        let ok = if own { chi == Some(expected) } else { chi.is_some() };
        if !ok {
            return Err(Error::Equivariance(format!(
                "pullback {} is not μ_{}-invariant; the center is not adapted",
                pb.derivation, factor.order
            )));
        }
    }
    Ok(pb)
}

/// Regularity of a foliation on the cover of a weighted chart.
pub fn chart_regularity(f: &FoliationPresentation, chart: &Chart) -> Result<bool> {
    for g in f.generators() {
        for factor in chart.nontrivial_action() {
            if mu_d_character(g, factor).is_none() {
                return Err(Error::Equivariance(format!("generator {g} is not semi-invariant")));
            }
        }
    }
    f.is_regular()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::check_pullback;
    use crate::poly::Ring;

    fn ring(p: u64, v: &[&str]) -> RingRef {
        Ring::new(p, v).unwrap()
    }

    #[test]
    fn degree_parts() {
        let r = ring(5, &["x", "y"]);
        let a = ReesAlgebra::coordinate(&r, &[(0, 2), (1, 1)]).unwrap();
        assert_eq!(a.degree_part(3), Ideal::parse(&r, &["x^2", "x*y", "y^3"]).unwrap());
        let b = ReesAlgebra::coordinate(&r, &[(0, 1), (1, 3)]).unwrap();
        assert!(b.degree_part(3).contains(&Poly::var(&r, 1)));
        let c = ReesAlgebra::coordinate(&r, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(c.degree_part(4), Ideal::maximal_at_origin(&r).pow(4));
    }

    #[test]
    fn containment() {
        let r = ring(5, &["x", "y"]);
        let a = ReesAlgebra::coordinate(&r, &[(0, 1), (1, 3)]).unwrap();
        let b = ReesAlgebra::coordinate(&r, &[(0, 2), (1, 1)]).unwrap();
        assert!(rees_contained_up_to(&a, &a, 6).unwrap());
        assert!(!rees_contained_up_to(&a, &b, 3).unwrap());
        let pert = ReesAlgebra::new(vec![
            (Poly::parse(&r, "x + y^2").unwrap(), 1),
            (Poly::parse(&r, "y + x^3").unwrap(), 3),
        ])
        .unwrap();
        assert!(rees_contained_up_to(&pert, &a, 10).unwrap());
        assert!(rees_contained_locally_up_to(&a, &pert, 10).unwrap());
    }

    #[test]
    fn weighted_surface_charts() {
        let r = ring(5, &["x", "y"]);
        let root = Chart::polynomial_root(&r);
        let charts = weighted_blowup_charts(&root, &[(0, 1), (1, 3)]).unwrap();
        let d = Derivation::diagonal(&r, &[1, 3]);
        let x = &charts[0];
        assert!(x.nontrivial_action().next().is_none());
        let pb = pullback_derivation_weighted(&d, x).unwrap();
        assert_eq!(pb.derivation, Derivation::diagonal(x.ambient(), &[1, 0]));
        let y = &charts[1];
        assert_eq!(y.action, vec![ActionFactor::new(3, vec![-1, 1])]);
        assert_eq!(y.to_parent[0], Poly::parse(y.ambient(), "x'*y").unwrap());
        let pb = pullback_derivation_weighted(&d, y).unwrap();
        assert_eq!(pb.derivation, Derivation::diagonal(y.ambient(), &[0, 1]));
        assert!(check_pullback(&d, &pb, y));
        assert!(weighted_blowup_charts(&root, &[(0, 1), (1, 5)]).is_err());
    }

    #[test]
    fn threefold_first_weighted_blowup() {
        let r = ring(5, &["x", "y", "z"]);
        let root = Chart::polynomial_root(&r);
        // λ = 3 = 2·4, μ = 4 = 2·2
        let charts = weighted_blowup_charts(&root, &[(0, 1), (1, 4), (2, 2)]).unwrap();
        let d = Derivation::diagonal(&r, &[1, 3, 0]);
        let psi = Derivation::diagonal(&r, &[1, 0, 4]);
        let c = &charts[0];
        assert_eq!(pullback_derivation_weighted(&d, c).unwrap().derivation, Derivation::diagonal(c.ambient(), &[1, 4, -2]));
        assert_eq!(pullback_derivation_weighted(&psi, c).unwrap().derivation, Derivation::diagonal(c.ambient(), &[1, -4, 2]));
    }

    #[test]
    fn invariance() {
        let r = ring(5, &["u", "v"]);
        let f = ActionFactor::new(2, vec![1, 0]);
        assert!(mu_d_invariant(&Derivation::diagonal(&r, &[1, 0]), &f));
        assert!(!mu_d_invariant(&Derivation::partial(&r, 0), &f));
        let vdu = Derivation::parse(&r, &["v", "0"]).unwrap();
        assert!(mu_d_invariant(&vdu, &ActionFactor::new(3, vec![1, 1])));
        assert!(!mu_d_invariant(&vdu, &ActionFactor::new(3, vec![1, 2])));
    }

    #[test]
    fn regularity_on_cover() {
        let r = ring(5, &["u", "v"]);
        let c = Chart::polynomial_root(&r);
        let f = FoliationPresentation::new(vec![Derivation::diagonal(&r, &[1, 0])]).unwrap();
        assert!(!chart_regularity(&f, &c).unwrap());
        assert!(chart_regularity(&f.saturate().unwrap(), &c).unwrap());
        let g = FoliationPresentation::new(vec![Derivation::partial(&r, 0), Derivation::diagonal(&r, &[0, 1])]).unwrap();
        assert!(!chart_regularity(&g, &c).unwrap());
    }
}
