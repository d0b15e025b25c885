//! Derivations and 1-foliation presentations.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::gcd::{div_exact, gcd_all};
use crate::ideal::{Ideal, QuotientRing};
use crate::module::Submodule;
use crate::poly::{same_ring, Poly, RingRef};

pub type QRingRef = Arc<QuotientRing>;

/// `D = sum coeffs[i] * ∂/∂x_i` on a polynomial or quotient ring.
#[derive(Clone)]
pub struct Derivation {
    ring: QRingRef,
    coeffs: Vec<Poly>,
}

impl PartialEq for Derivation {
    /// Equality as derivations of the quotient ring.
    fn eq(&self, other: &Self) -> bool {
        same_ring(self.ring.ambient(), other.ring.ambient())
            && self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .all(|(a, b)| self.ring.equal(a, b))
    }
}

impl Derivation {
    pub fn new(ring: &RingRef, coeffs: Vec<Poly>) -> Result<Self> {
        Derivation::on_quotient(&Arc::new(QuotientRing::polynomial(ring)), coeffs)
    }

    /// Checks that `D(relations) ⊆ relations`.
    pub fn on_quotient(ring: &QRingRef, coeffs: Vec<Poly>) -> Result<Self> {
        let amb = ring.ambient();
        if coeffs.len() != amb.nvars() {
            return Err(Error::Precondition(format!(
                "derivation needs {} coefficients, got {}",
                amb.nvars(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !same_ring(c.ring(), amb)) {
            return Err(Error::RingMismatch);
        }
        let d = Derivation {
            ring: ring.clone(),
            coeffs: coeffs.iter().map(|c| ring.normal_form(c)).collect(),
        };
        for g in ring.relations().generators() {
            if !ring.is_zero(&d.apply_raw(g)) {
                return Err(Error::Structural(format!("derivation does not preserve the relation {g}")));
            }
        }
        Ok(d)
    }

    pub(crate) fn new_unchecked(ring: &QRingRef, coeffs: Vec<Poly>) -> Self {
        Derivation {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn parse(ring: &RingRef, coeffs: &[&str]) -> Result<Self> {
        let c = coeffs.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Derivation::new(ring, c)
    }

    /// `∂/∂x_i`.
    pub fn partial(ring: &RingRef, i: usize) -> Self {
        let coeffs = (0..ring.nvars())
            .map(|j| if i == j { Poly::one(ring) } else { Poly::zero(ring) })
            .collect();
        Derivation::new(ring, coeffs).unwrap()
    }

    /// `sum weights[i] * x_i ∂/∂x_i`.
    pub fn diagonal(ring: &RingRef, weights: &[i64]) -> Self {
        let coeffs = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Poly::var(ring, i).scale(ring.elem(w)))
            .collect();
        Derivation::new(ring, coeffs).unwrap()
    }

    pub fn zero_on(ring: &QRingRef) -> Self {
        let amb = ring.ambient();
        Derivation::new_unchecked(ring, vec![Poly::zero(amb); amb.nvars()])
    }

    pub fn quotient(&self) -> &QRingRef {
        &self.ring
    }

    pub fn ring(&self) -> &RingRef {
        self.ring.ambient()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn apply_raw(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.ring());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() || !f.uses_var(i) {
                continue;
            }
            acc = &acc + &(c * &f.derivative(i));
        }
        acc
    }

    /// `D(f)`, reduced in the quotient ring.
    pub fn apply(&self, f: &Poly) -> Poly {
        assert!(same_ring(f.ring(), self.ring()), "ring mismatch");
        self.ring.normal_form(&self.apply_raw(f))
    }

    pub fn apply_n(&self, f: &Poly, n: u64) -> Poly {
        let mut g = f.clone();
        for _ in 0..n {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g);
        }
        g
    }

    pub fn try_apply(&self, f: &Poly) -> Result<Poly> {
        if !same_ring(f.ring(), self.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.apply(f))
    }

    fn check(&self, other: &Derivation) -> Result<()> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// `[D1, D2]_i = D1(c2_i) - D2(c1_i)`.
    pub fn lie_bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| &self.apply(b) - &other.apply(a))
            .collect();
        Ok(Derivation::new_unchecked(&self.ring, coeffs))
    }

    /// `D^[p]`, whose value on `x_i` is `D^p(x_i)`.
    pub fn p_power(&self) -> Derivation {
        let amb = self.ring();
        let p = amb.modulus();
        let coeffs = (0..amb.nvars()).map(|i| self.apply_n(&Poly::var(amb, i), p)).collect();
        Derivation::new_unchecked(&self.ring, coeffs)
    }

    pub fn scale(&self, f: &Poly) -> Derivation {
        Derivation::new_unchecked(&self.ring, self.coeffs.iter().map(|c| self.ring.normal_form(&(c * f))).collect())
    }

    pub fn scale_elem(&self, c: FieldElem) -> Derivation {
        Derivation::new_unchecked(&self.ring, self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        self.check(other)?;
        Ok(Derivation::new_unchecked(
            &self.ring,
            self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation> {
        self.check(other)?;
        Ok(Derivation::new_unchecked(
            &self.ring,
            self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Value of the coefficient vector at a point.
    pub fn value_at(&self, point: &[FieldElem]) -> Vec<FieldElem> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }

    /// Divides by the gcd of the coefficients; returns the quotient and the gcd.
    pub fn saturate_rank_one(&self) -> Result<(Derivation, Poly)> {
        if !self.ring.is_polynomial_ring() {
            return Err(Error::Unsupported("rank-one saturation on a quotient ring".into()));
        }
        if self.is_zero() {
            return Err(Error::Precondition("saturation of the zero derivation".into()));
        }
        let g = gcd_all(self.coeffs.iter().filter(|c| !c.is_zero())).unwrap();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| div_exact(c, &g).expect("gcd divides every coefficient"))
            .collect();
        Ok((Derivation::new_unchecked(&self.ring, coeffs), g))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let amb = self.ring();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let body = if c.len() == 1 {
                let (neg, mag) = match s.strip_prefix('-') {
                    Some(m) => (true, m.to_string()),
                    None => (false, s.clone()),
                };
                let mag = if mag == "1" { String::new() } else { format!("{mag}*") };
                if first {
                    write!(f, "{}", if neg { "-" } else { "" })?;
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                mag
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                format!("({s})*")
            };
            write!(f, "{body}∂{}", amb.var_name(i))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({self})")
    }
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Determinant of a small square polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<Poly>], ring: &RingRef) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Poly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][j] * &poly_det(&minor, ring);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k x k` minors of a polynomial matrix, with their row and column sets.
pub fn minors(m: &[Vec<Poly>], k: usize, ring: &RingRef) -> Vec<(Vec<usize>, Vec<usize>, Poly)> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            out.push((rs.clone(), cs, poly_det(&sub, ring)));
        }
    }
    out
}

/// A finite generator list of a 1-foliation on a chart.
#[derive(Clone, Debug, Serialize)]
pub struct FoliationPresentation {
    #[serde(skip)]
    ring: QRingRef,
    generators: Vec<Derivation>,
    declared_rank: Option<usize>,
}

impl FoliationPresentation {
    pub fn new(generators: Vec<Derivation>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Precondition("a foliation needs at least one generator".into()));
        };
        let ring = first.quotient().clone();
        for g in &generators {
            if !same_ring(g.ring(), ring.ambient()) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(FoliationPresentation {
            ring,
            generators,
            declared_rank: None,
        })
    }

    pub fn with_declared_rank(mut self, r: usize) -> Self {
        self.declared_rank = Some(r);
        self
    }

    pub fn declared_rank(&self) -> Option<usize> {
        self.declared_rank
    }

    pub fn quotient(&self) -> &QRingRef {
        &self.ring
    }

    pub fn ring(&self) -> &RingRef {
        self.ring.ambient()
    }

    pub fn generators(&self) -> &[Derivation] {
        &self.generators
    }

    pub fn coefficient_matrix(&self) -> Vec<Vec<Poly>> {
        self.generators.iter().map(|g| g.coeffs().to_vec()).collect()
    }

    /// Generator coefficient vectors plus `relation * e_i`.
    pub fn tangent_submodule(&self) -> Submodule {
        let amb = self.ring();
        let n = amb.nvars();
        let mut gens = self.coefficient_matrix();
        for r in self.ring.relations().generators() {
            for i in 0..n {
                gens.push((0..n).map(|j| if i == j { r.clone() } else { Poly::zero(amb) }).collect());
            }
        }
        Submodule::new(amb, n, gens)
    }

    pub fn contains(&self, d: &Derivation) -> bool {
        self.tangent_submodule().contains(d.coeffs())
    }

    pub fn is_involutive(&self) -> bool {
        let m = self.tangent_submodule();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let br = a.lie_bracket(b).expect("same ring");
                if !m.contains(br.coeffs()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_p_closed(&self) -> bool {
        let m = self.tangent_submodule();
        self.generators.iter().all(|g| m.contains(g.p_power().coeffs()))
    }

    /// Rank over the fraction field of the coefficient matrix.
    pub fn generic_rank(&self) -> usize {
        let m = self.coefficient_matrix();
        let amb = self.ring();
        let max = m.len().min(amb.nvars());
        (1..=max)
            .rev()
            .find(|&k| minors(&m, k, amb).iter().any(|(_, _, d)| !self.ring.is_zero(d)))
            .unwrap_or(0)
    }

    /// True if the ambient chart is regular: a polynomial ring, or a
    /// hypersurface passing the Jacobian criterion.
    pub fn ambient_is_regular(&self) -> bool {
        chart_is_regular(&self.ring)
    }

    /// Ideal of the `r x r` minors (`r` the generic rank) plus the relations.
    pub fn singular_ideal(&self) -> Result<Ideal> {
        if !self.ambient_is_regular() {
            return Err(Error::Unsupported("singular ideal over a non-regular chart".into()));
        }
        let amb = self.ring();
        let r = self.generic_rank();
        if r == 0 {
            return Ok(self.ring.relations().clone());
        }
        let m = self.coefficient_matrix();
        let mins = minors(&m, r, amb).into_iter().map(|(_, _, d)| d);
        Ok(self.ring.ideal(mins))
    }

    pub fn is_regular(&self) -> Result<bool> {
        Ok(self.singular_ideal()?.is_unit())
    }

    /// The saturation `{ v : f v ∈ F for some f ≠ 0 }`.
    ///
    /// Rank one with a single generator divides by the coefficient gcd.
    /// Otherwise the submodule is saturated by a nonzero maximal minor.
    pub fn saturate(&self) -> Result<FoliationPresentation> {
        if !self.ring.is_polynomial_ring() {
            return Err(Error::Unsupported("saturation on a quotient ring".into()));
        }
        let nonzero: Vec<Derivation> = self.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Err(Error::Precondition("saturation of the zero foliation".into()));
        }
        if nonzero.len() == 1 {
            let (d, _) = nonzero[0].saturate_rank_one()?;
            return Ok(FoliationPresentation::new(vec![d])?.inherit(self));
        }
        let amb = self.ring();
        let r = self.generic_rank();
        let m = self.coefficient_matrix();
        let delta = minors(&m, r, amb)
            .into_iter()
            .map(|(_, _, d)| d)
            .filter(|d| !d.is_zero())
            .min_by_key(|d| (d.total_degree(), d.len()))
            .expect("generic rank witnesses a nonzero minor");
        let sat = self.tangent_submodule().saturate(&delta).prune();
        let gens = sat
            .generators()
            .iter()
            .map(|v| Derivation::new_unchecked(&self.ring, v.clone()))
            .collect();
        Ok(FoliationPresentation::new(gens)?.inherit(self))
    }

    pub fn is_saturated(&self) -> Result<bool> {
        let s = self.saturate()?;
        Ok(s.tangent_submodule().same_as(&self.tangent_submodule()))
    }

    fn inherit(mut self, from: &FoliationPresentation) -> Self {
        self.declared_rank = from.declared_rank;
        self
    }

    /// Same foliation, generators replaced.
    pub fn with_generators(&self, generators: Vec<Derivation>) -> Result<Self> {
        Ok(FoliationPresentation::new(generators)?.inherit(self))
    }
}

impl fmt::Display for FoliationPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

/// Polynomial rings are regular; so are hypersurfaces `(h)` with
/// `(h, ∂h/∂x_1, ..., ∂h/∂x_n) = (1)`.
pub fn chart_is_regular(q: &QuotientRing) -> bool {
    let rel = q.relations();
    if rel.is_zero() {
        return true;
    }
    let gb = rel.groebner();
    if gb.len() != 1 {
        return false;
    }
    let h = &gb[0];
    let amb = q.ambient();
    let mut gens = vec![h.clone()];
    gens.extend((0..amb.nvars()).map(|i| h.derivative(i)));
    Ideal::new(amb, gens).is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn r2(p: u64) -> RingRef {
        Ring::new(p, &["x", "y"]).unwrap()
    }

    #[test]
    fn euler_identity() {
        let r = r2(5);
        let d = Derivation::diagonal(&r, &[1, 3]);
        let f = Poly::parse(&r, "x^2*y^3").unwrap();
        assert_eq!(d.apply(&f), f.scale(r.elem(2 + 9)));
        assert!(Derivation::partial(&r, 0).apply(&Poly::var(&r, 1)).is_zero());
    }

    #[test]
    fn quotient_ring_derivation() {
        let r = Ring::new(2, &["u", "v", "w", "t"]).unwrap();
        let q = Arc::new(QuotientRing::new(Ideal::parse(&r, &["t^2 - u*v"]).unwrap()));
        let tdt = Derivation::on_quotient(&q, vec![Poly::zero(&r), Poly::zero(&r), Poly::zero(&r), Poly::var(&r, 3)]).unwrap();
        assert!(tdt.apply(&Poly::parse(&r, "t^2").unwrap()).is_zero());
        let bad = Derivation::on_quotient(&q, vec![Poly::one(&r), Poly::zero(&r), Poly::zero(&r), Poly::zero(&r)]);
        assert!(bad.is_err());
    }

    #[test]
    fn brackets_and_p_powers() {
        let r = r2(5);
        let dx = Derivation::partial(&r, 0);
        let xdx = Derivation::diagonal(&r, &[1, 0]);
        assert_eq!(dx.lie_bracket(&xdx).unwrap(), dx);
        let ydy = Derivation::diagonal(&r, &[0, 1]);
        assert!(xdx.lie_bracket(&ydy).unwrap().is_zero());
        assert!(dx.p_power().is_zero());
        let d = Derivation::diagonal(&r, &[1, 3]);
        assert_eq!(d.p_power(), d);
        let r1 = Ring::new(2, &["x"]).unwrap();
        assert!(Derivation::parse(&r1, &["x^2"]).unwrap().p_power().is_zero());
    }

    #[test]
    fn closure_and_rank() {
        let r = Ring::new(5, &["x", "y", "z"]).unwrap();
        let f = FoliationPresentation::new(vec![Derivation::partial(&r, 2), Derivation::diagonal(&r, &[1, 3, 0])]).unwrap();
        assert!(f.is_involutive() && f.is_p_closed());
        assert_eq!(f.generic_rank(), 2);
        assert_eq!(f.singular_ideal().unwrap(), Ideal::parse(&r, &["x", "y"]).unwrap());
        let dup = FoliationPresentation::new(vec![Derivation::diagonal(&r, &[1, 0, 0]); 2]).unwrap();
        assert_eq!(dup.generic_rank(), 1);
        let r2 = r2(2);
        let ydx = FoliationPresentation::new(vec![Derivation::parse(&r2, &["y", "0"]).unwrap()]).unwrap();
        assert!(ydx.is_involutive() && ydx.is_p_closed());
    }

    #[test]
    fn rank_one_saturation() {
        let r = r2(5);
        let d = Derivation::parse(&r, &["x^2*y", "x*y^2"]).unwrap();
        let (s, g) = d.saturate_rank_one().unwrap();
        assert_eq!(s, Derivation::diagonal(&r, &[1, 1]));
        assert_eq!(g, Poly::parse(&r, "x*y").unwrap());
        let x = Derivation::parse(&r, &["x", "0"]).unwrap();
        assert_eq!(x.saturate_rank_one().unwrap().0, Derivation::partial(&r, 0));
    }

    #[test]
    fn rank_two_saturation() {
        let r = Ring::new(5, &["u", "v", "w"]).unwrap();
        let f = FoliationPresentation::new(vec![
            Derivation::parse(&r, &["u", "4*v", "-2*w"]).unwrap(),
            Derivation::parse(&r, &["u", "-4*v", "2*w"]).unwrap(),
        ])
        .unwrap();
        let s = f.saturate().unwrap();
        assert!(s.contains(&Derivation::partial(&r, 0)));
        assert!(s.contains(&Derivation::parse(&r, &["0", "v", "2*w"]).unwrap()));
        assert!(!s.contains(&Derivation::partial(&r, 1)));
        assert!(s.is_saturated().unwrap());
    }

    #[test]
    fn display() {
        let r = r2(5);
        assert_eq!(Derivation::diagonal(&r, &[1, 3]).to_string(), "x*∂x + 3*y*∂y");
        assert_eq!(Derivation::diagonal(&r, &[1, -1]).to_string(), "x*∂x - y*∂y");
        assert_eq!(Derivation::partial(&r, 1).to_string(), "∂y");
    }
}
