//! Brute-force verifiers: constants of a foliation in bounded degree,
//! normalization roots, Rees algebra comparisons and λ constancy.

use serde::Serialize;

use crate::classify::{lambda_min_of, multiplicative_certificate, translate_poly, ClosedPoint};
use crate::derivation::{Derivation, FoliationPresentation};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ideal::{monomials_up_to, Ideal};
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, Poly, Ring, RingRef};
use crate::weighted::{rees_contained_locally_up_to, rees_contained_up_to, ReesAlgebra};

/// Monomials of degree `≤ N` in a fixed graded order.
#[derive(Clone, Debug)]
pub struct TruncatedBasis {
    pub bound: u32,
    pub monomials: Vec<Monomial>,
}

impl TruncatedBasis {
    pub fn new(nvars: usize, bound: u32) -> Self {
        TruncatedBasis {
            bound,
            monomials: monomials_up_to(nvars, bound),
        }
    }

    fn coords(&self, f: &Poly, index: &[Monomial]) -> Vec<FieldElem> {
        index.iter().map(|m| f.coeff(m)).collect()
    }
}

/// Basis of `{ f : deg f ≤ N, D(f) = 0 for every generator }`, in reduced echelon form.
pub fn constants_basis(f: &FoliationPresentation, bound: u32) -> Result<Vec<Poly>> {
    if !f.quotient().is_polynomial_ring() {
        return Err(Error::Precondition("constants are computed on polynomial rings".into()));
    }
    let ring = f.ring();
    let p = ring.modulus();
    let basis = TruncatedBasis::new(ring.nvars(), bound);
    let images: Vec<Vec<Poly>> = f
        .generators()
        .iter()
        .map(|d| basis.monomials.iter().map(|m| d.apply(&Poly::monomial(ring, m.clone(), FieldElem::one(p)))).collect())
        .collect();
    let mut index: Vec<Monomial> = images.iter().flatten().flat_map(|g| g.terms().map(|(m, _)| m.clone())).collect();
    index.sort();
    index.dedup();
    // one row per (generator, image monomial), one column per source monomial
    let mut rows: Matrix = Vec::new();
    for imgs in &images {
        let cols: Vec<Vec<FieldElem>> = imgs.iter().map(|g| basis.coords(g, &index)).collect();
        for r in 0..index.len() {
            rows.push(cols.iter().map(|c| c[r]).collect());
        }
    }
    let mut kernel = linalg::nullspace(&rows, basis.monomials.len(), p);
    linalg::rref(&mut kernel);
    Ok(kernel
        .into_iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .map(|v| {
            Poly::from_terms(
                ring,
                basis.monomials.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect())
}

/// True if `f` is an F_p-linear combination of `basis`.
pub fn span_contains(basis: &[Poly], f: &Poly) -> bool {
    let p = f.modulus();
    let mut index: Vec<Monomial> = basis.iter().chain(std::iter::once(f)).flat_map(|g| g.terms().map(|(m, _)| m.clone())).collect();
    index.sort();
    index.dedup();
    let col = |g: &Poly| -> Vec<FieldElem> { index.iter().map(|m| g.coeff(m)).collect() };
    let cols: Vec<Vec<FieldElem>> = basis.iter().map(col).collect();
    let m: Matrix = (0..index.len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    if basis.is_empty() {
        return f.is_zero();
    }
    linalg::solve(&m, &col(f), p).is_some()
}

/// Output of the Euclid normalization: `u = x^s y^t` with `u^b = x`, `u^a = y`.
#[derive(Clone, Debug, Serialize)]
pub struct EuclidRoot {
    pub chain: Vec<u64>,
    pub quotients: Vec<u64>,
    pub exponents: (i64, i64),
    pub verified: bool,
}

/// Checks `x^e1 y^e2 = target` in `k[x,y]/rel` after clearing denominators.
fn laurent_equals(ring: &RingRef, e: (i64, i64), target: &Poly, rel: &Ideal) -> bool {
    let cx = (-e.0).max(0) as u32;
    let cy = (-e.1).max(0) as u32;
    let lhs = Poly::monomial(
        ring,
        Monomial::from_exponents(vec![(e.0 + cx as i64) as u32, (e.1 + cy as i64) as u32]),
        FieldElem::one(ring.modulus()),
    );
    let rhs = target * &Poly::monomial(ring, Monomial::from_exponents(vec![cx, cy]), FieldElem::one(ring.modulus()));
    rel.contains(&(&lhs - &rhs))
}

pub fn euclid_root(a: u64, b: u64, p: u64) -> Result<EuclidRoot> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition("exponents must be positive".into()));
    }
    let (mut g0, mut g1) = (a, b);
    while g1 != 0 {
        (g0, g1) = (g1, g0 % g1);
    }
    if g0 != 1 {
        return Err(Error::Precondition(format!("{a} and {b} are not coprime")));
    }
    // x_1 carries the larger exponent; x_0 the other variable
    let (big, small, e1, e0): (u64, u64, (i64, i64), (i64, i64)) =
        if a >= b { (a, b, (1, 0), (0, 1)) } else { (b, a, (0, 1), (1, 0)) };
    let mut chain = vec![big, small];
    let mut quotients = Vec::new();
    let (mut prev, mut cur) = (e0, e1);
    while *chain.last().unwrap() != 1 {
        let n = chain.len();
        let (ai_1, ai) = (chain[n - 2], chain[n - 1]);
        let m = ai_1 / ai;
        quotients.push(m);
        chain.push(ai_1 % ai);
        let next = (prev.0 - m as i64 * cur.0, prev.1 - m as i64 * cur.1);
        prev = cur;
        cur = next;
    }
    let ring = Ring::new(p, &["x", "y"])?;
    let x = Poly::var(&ring, 0);
    let y = Poly::var(&ring, 1);
    let rel = Ideal::new(&ring, [&x.pow(a as u32) - &y.pow(b as u32)]);
    let ub = (cur.0 * b as i64, cur.1 * b as i64);
    let ua = (cur.0 * a as i64, cur.1 * a as i64);
    let verified = laurent_equals(&ring, ub, &x, &rel) && laurent_equals(&ring, ua, &y, &rel);
    Ok(EuclidRoot {
        chain,
        quotients,
        exponents: cur,
        verified,
    })
}

/// `⟨∂x_r : r ∉ J⟩ + ⟨a_j x_pivot ∂x_pivot - a_pivot x_j ∂x_j : j ∈ J⟩` on `F_p[x_1..x_n]`.
pub fn inv_subring_foliation(p: u64, n: usize, subset: &[usize], exponents: &[u64], pivot: usize) -> Result<FoliationPresentation> {
    if subset.is_empty() || subset.len() != exponents.len() || !subset.contains(&pivot) {
        return Err(Error::Precondition("invalid index set".into()));
    }
    if let Some(a) = exponents.iter().find(|&&a| a % p == 0) {
        return Err(Error::Precondition(format!("exponent {a} is divisible by p")));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ring = Ring::new(p, &names)?;
    let a_of = |j: usize| exponents[subset.iter().position(|&k| k == j).unwrap()] as i64;
    let mut gens: Vec<Derivation> = (0..n).filter(|r| !subset.contains(r)).map(|r| Derivation::partial(&ring, r)).collect();
    for &j in subset.iter().filter(|&&j| j != pivot) {
        let mut w = vec![0i64; n];
        w[pivot] = a_of(j);
        w[j] = -a_of(pivot);
        gens.push(Derivation::diagonal(&ring, &w));
    }
    FoliationPresentation::new(gens)
}

pub fn inv_subring_check(p: u64, n: usize, subset: &[usize], exponents: &[u64], pivot: usize) -> Result<bool> {
    let f = inv_subring_foliation(p, n, subset, exponents, pivot)?;
    let ring = f.ring().clone();
    let product = subset
        .iter()
        .zip(exponents)
        .fold(Poly::one(&ring), |acc, (&j, &a)| &acc * &Poly::var(&ring, j).pow(a as u32));
    let bound = exponents.iter().sum::<u64>().max(p) as u32;
    let consts = constants_basis(&f, bound)?;
    let powers_ok = (0..n).all(|i| span_contains(&consts, &Poly::var(&ring, i).pow(p as u32)));
    Ok(f.generic_rank() == n - 1 && f.is_involutive() && f.is_p_closed() && span_contains(&consts, &product) && powers_ok)
}

/// `ε_Λ(a) = Λ⌈a/Λ⌉ - a`.
pub fn epsilon(lambda: u64, a: u64) -> u64 {
    lambda * a.div_ceil(lambda) - a
}

/// Enumerates the witness `j = max(0, s + Λt - ε(i))` for every `m ≤ M`,
/// `i ≤ m`, `s ≤ m - i`, `t ≤ ⌈i/Λ⌉` and checks both inequalities.
pub fn combinatorics_witness_check(lambda: u64, d: u64, bound: u64) -> bool {
    for m in 0..=bound {
        for i in 0..=m {
            let ci = i.div_ceil(lambda);
            let eps = epsilon(lambda, i) as i64;
            for s in 0..=m - i {
                for t in 0..=ci {
                    let (mi, si, ti, li) = (m as i64, s as i64, t as i64, lambda as i64);
                    // exponent of x in x^{m-i-s} (y^d)^s y^t (x^Λ)^{⌈i/Λ⌉-t}
                    if mi - i as i64 - si + li * (ci as i64 - ti) != mi - si - li * ti + eps {
                        return false;
                    }
                    let j = (si + li * ti - eps).max(0);
                    if j > mi || mi - si - li * ti + eps < mi - j {
                        return false;
                    }
                    if ti + d as i64 * si < (j as u64).div_ceil(lambda) as i64 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorialityOutcome {
    pub forward: bool,
    pub backward: bool,
    pub witness: bool,
}

impl FunctorialityOutcome {
    pub fn holds(&self) -> bool {
        self.forward && self.backward && self.witness
    }
}

/// The lift `d ∈ {1..p-1}` of `Λ^{-1}`.
pub fn inverse_lift(p: u64, lambda: u64) -> u64 {
    FieldElem::new(lambda as i64, p).inv().map(|e| e.value()).unwrap_or(0)
}

/// Compares `(x,1)+(y,Λ)` with `(u,1)+(v,Λ)` for `u = x + y^d f`, `v = y + x^Λ g`.
pub fn rees_functoriality_check(p: u64, lambda: u64, f: &Poly, g: &Poly, bound: u64) -> Result<FunctorialityOutcome> {
    if lambda == 0 || lambda >= p {
        return Err(Error::Precondition(format!("Λ must lie in 1..{p}")));
    }
    let ring = f.ring().clone();
    if ring.nvars() != 2 || ring.modulus() != p {
        return Err(Error::Precondition("f and g must live in F_p[x, y]".into()));
    }
    let d = inverse_lift(p, lambda);
    let x = Poly::var(&ring, 0);
    let y = Poly::var(&ring, 1);
    let u = &x + &(&y.pow(d as u32) * f);
    let v = &y + &(&x.pow(lambda as u32) * g);
    let origin = [FieldElem::zero(p), FieldElem::zero(p)];
    let jac = [
        [u.derivative(0).eval(&origin), u.derivative(1).eval(&origin)],
        [v.derivative(0).eval(&origin), v.derivative(1).eval(&origin)],
    ];
    if (jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]).is_zero() {
        return Err(Error::Precondition("u, v is not a system of parameters".into()));
    }
    let xy = ReesAlgebra::new(vec![(x, 1), (y, lambda)])?;
    let uv = ReesAlgebra::new(vec![(u, 1), (v, lambda)])?;
    Ok(FunctorialityOutcome {
        forward: rees_contained_up_to(&uv, &xy, bound)?,
        backward: rees_contained_locally_up_to(&xy, &uv, bound)?,
        witness: combinatorics_witness_check(lambda, d, bound),
    })
}

/// Two-sided containment up to `bound`.
pub fn rees_equal_up_to(a: &ReesAlgebra, b: &ReesAlgebra, bound: u64) -> Result<bool> {
    Ok(rees_contained_up_to(a, b, bound)? && rees_contained_up_to(b, a, bound)?)
}

/// True if `{λ, λ^{-1}}` is the same at every sampled point.
pub fn lambda_constancy_check(f: &FoliationPresentation, points: &[ClosedPoint]) -> Result<bool> {
    let mut seen: Option<FieldElem> = None;
    for s in points {
        let cls = multiplicative_certificate(f, s)?;
        let l = cls
            .lambda()
            .ok_or_else(|| Error::Classification(format!("cannot classify the sample point {s}")))?;
        let key = lambda_min_of(l);
        match seen {
            None => seen = Some(key),
            Some(k) if k != key => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Compares `(x_a,1)+(x_b,Λ)` with the Rees algebra built from the certificate
/// coordinates at `point`, both centered at `point`.
pub fn adapted_rees_check(
    f: &FoliationPresentation,
    point: &ClosedPoint,
    pair: (usize, usize),
    lambda: FieldElem,
    bound: u64,
) -> Result<bool> {
    let ring = f.ring().clone();
    let cls = multiplicative_certificate(f, point)?;
    let cert = cls
        .certificate
        .as_ref()
        .ok_or_else(|| Error::Classification(format!("no certificate at {point}")))?;
    if cert.coordinates.len() != 2 || cert.eigenvalues.len() != 1 {
        return Ok(false);
    }
    let ev = &cert.eigenvalues[0];
    let (first, second) = if ev[1] == ev[0] * lambda {
        (0, 1)
    } else if ev[0] == ev[1] * lambda {
        (1, 0)
    } else {
        return Ok(false);
    };
    let big = lambda.value();
    let local = ReesAlgebra::new(vec![
        (cert.coordinates[first].clone(), 1),
        (cert.coordinates[second].clone(), big),
    ])?;
    let global = ReesAlgebra::new(vec![
        (translate_poly(&Poly::var(&ring, pair.0), point), 1),
        (translate_poly(&Poly::var(&ring, pair.1), point), big),
    ])?;
    rees_equal_up_to(&local, &global, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_of_partial_x() {
        let r = Ring::new(2, &["x", "y"]).unwrap();
        let f = FoliationPresentation::new(vec![Derivation::partial(&r, 0)]).unwrap();
        let b = constants_basis(&f, 3).unwrap();
        assert_eq!(b.len(), 6);
        for m in ["1", "y", "y^2", "y^3", "x^2", "x^2*y"] {
            assert!(span_contains(&b, &Poly::parse(&r, m).unwrap()), "{m}");
        }
        assert!(!span_contains(&b, &Poly::var(&r, 0)));
    }

    #[test]
    fn euclid_examples() {
        let r = euclid_root(3, 2, 5).unwrap();
        assert_eq!(r.exponents, (-1, 1));
        assert!(r.verified);
        let r = euclid_root(5, 3, 5).unwrap();
        assert_eq!(r.chain, vec![5, 3, 2, 1]);
        assert!(r.verified);
        assert_eq!(euclid_root(1, 1, 3).unwrap().exponents, (1, 0));
        assert!(euclid_root(4, 6, 3).is_err());
    }

    #[test]
    fn invariant_subring() {
        assert!(inv_subring_check(2, 2, &[0, 1], &[1, 1], 0).unwrap());
        assert!(inv_subring_check(5, 3, &[0, 1], &[2, 3], 0).unwrap());
        assert!(inv_subring_check(3, 2, &[0, 1], &[3, 1], 0).is_err());
    }

    #[test]
    fn functoriality() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let one = Poly::one(&r);
        assert!(rees_functoriality_check(5, 3, &one, &one, 10).unwrap().holds());
        assert!(combinatorics_witness_check(4, 4, 12));
        let a = ReesAlgebra::coordinate(&r, &[(0, 1), (1, 3)]).unwrap();
        let b = ReesAlgebra::coordinate(&r, &[(1, 1), (0, 2)]).unwrap();
        assert!(!rees_equal_up_to(&a, &b, 3).unwrap());
    }

    #[test]
    fn constancy_along_a_curve() {
        let r = Ring::new(5, &["x", "y", "z"]).unwrap();
        let f = FoliationPresentation::new(vec![Derivation::partial(&r, 2), Derivation::diagonal(&r, &[1, 3, 0])]).unwrap();
        let pts: Vec<ClosedPoint> = (0..5).map(|c| ClosedPoint::new(&[0, 0, c], 5)).collect();
        assert!(lambda_constancy_check(&f, &pts).unwrap());
        assert!(adapted_rees_check(&f, &pts[2], (0, 1), FieldElem::new(3, 5), 6).unwrap());
    }
}
