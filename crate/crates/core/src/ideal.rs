//! Ideals with cached Gröbner bases, and quotient rings.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, normal_form};
use crate::order::MonomialOrder;
use crate::poly::{same_ring, Monomial, Poly, Ring, RingRef};

/// Ring with fresh variables prepended, plus the index map from the old ring.
pub(crate) fn prepend_vars(ring: &RingRef, k: usize) -> (RingRef, Vec<usize>) {
    let mut names: Vec<String> = Vec::new();
    let mut n = 0;
    while names.len() < k {
        let cand = format!("_e{n}");
        n += 1;
        if ring.var_index(&cand).is_none() {
            names.push(cand);
        }
    }
    names.extend(ring.var_names().iter().cloned());
    let ext = Ring::new(ring.modulus(), &names).expect("extension of a valid ring");
    (ext, (k..k + ring.nvars()).collect())
}

/// Generators of `(gens) ∩ k[x_k, ..., x_n]`, restricted to `target`.
pub(crate) fn eliminate_leading(gens: &[Poly], k: usize, target: &RingRef) -> Vec<Poly> {
    let map: Vec<usize> = (k..k + target.nvars()).collect();
    groebner_basis(gens, MonomialOrder::Elimination(k))
        .into_iter()
        .filter_map(|g| g.restrict(target, &map))
        .collect()
}

pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq for Ideal {
    /// Equality of ideals, not of generator lists.
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.groebner() == other.groebner()
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: impl IntoIterator<Item = Poly>) -> Self {
        let gens: Vec<Poly> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .inspect(|g| assert!(same_ring(g.ring(), ring), "generator from another ring"))
            .collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal::new(ring, [])
    }

    pub fn unit(ring: &RingRef) -> Self {
        Ideal::new(ring, [Poly::one(ring)])
    }

    /// Ideal generated by the given variables.
    pub fn of_vars(ring: &RingRef, vars: &[usize]) -> Self {
        Ideal::new(ring, vars.iter().map(|&i| Poly::var(ring, i)))
    }

    pub fn maximal_at_origin(ring: &RingRef) -> Self {
        Ideal::of_vars(ring, &(0..ring.nvars()).collect::<Vec<_>>())
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced degrevlex Gröbner basis, computed once.
    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner_basis(&self.gens, MonomialOrder::DegRevLex))
    }

    pub fn groebner_with(&self, order: MonomialOrder) -> Vec<Poly> {
        groebner_basis(&self.gens, order)
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert!(same_ring(f.ring(), &self.ring), "ring mismatch");
        normal_form(f, self.groebner(), MonomialOrder::DegRevLex)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.is_zero() || self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_constant())
    }

    pub fn add(&self, other: &Ideal) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn pow(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `I + m^n` where `m` is the maximal ideal of the origin.
    pub fn plus_origin_power(&self, n: u32) -> Ideal {
        let nv = self.ring.nvars();
        let mut gens = self.gens.clone();
        for m in monomials_of_degree(nv, n) {
            gens.push(Poly::monomial(&self.ring, m, self.ring.elem(1)));
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let (ext, map) = prepend_vars(&self.ring, 1);
        let t = Poly::var(&ext, 0);
        let one_minus_t = &Poly::one(&ext) - &t;
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| &t * &g.embed(&ext, &map)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.embed(&ext, &map)));
        Ideal::new(&self.ring, eliminate_leading(&gens, 1, &self.ring))
    }

    /// `I : f = { g : g f ∈ I }`.
    pub fn quotient(&self, f: &Poly) -> Ideal {
        assert!(!f.is_zero(), "quotient by zero");
        if f.is_constant() {
            return self.clone();
        }
        let inter = self.intersect(&Ideal::new(&self.ring, [f.clone()]));
        Ideal::new(&self.ring, inter.groebner().iter().map(|g| crate::gcd::div_exact(g, f).expect("element of (f) divisible by f")))
    }

    /// `I : f^∞`, via `I + (1 - s f)` and elimination of `s`.
    pub fn saturation(&self, f: &Poly) -> Ideal {
        assert!(!f.is_zero(), "saturation by zero");
        if f.is_constant() {
            return self.clone();
        }
        let (ext, map) = prepend_vars(&self.ring, 1);
        let s = Poly::var(&ext, 0);
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.embed(&ext, &map)).collect();
        gens.push(&Poly::one(&ext) - &(&s * &f.embed(&ext, &map)));
        Ideal::new(&self.ring, eliminate_leading(&gens, 1, &self.ring))
    }

    /// Image under a ring map given by variable images.
    pub fn map(&self, target: &RingRef, images: &[Poly]) -> Ideal {
        Ideal::new(target, self.gens.iter().map(|g| g.substitute(target, images)))
    }
}

/// Membership test with a ring check.
pub fn ideal_membership(f: &Poly, ideal: &Ideal) -> Result<bool> {
    if !same_ring(f.ring(), ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    Ok(ideal.contains(f))
}

pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

pub(crate) fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

/// `ambient / relations`. Elements are compared through normal forms.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ambient: RingRef,
    relations: Ideal,
}

impl QuotientRing {
    pub fn new(relations: Ideal) -> Self {
        QuotientRing {
            ambient: relations.ring().clone(),
            relations,
        }
    }

    pub fn polynomial(ring: &RingRef) -> Self {
        QuotientRing::new(Ideal::zero(ring))
    }

    pub fn ambient(&self) -> &RingRef {
        &self.ambient
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.relations.is_unit()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        if self.relations.is_zero() {
            f.clone()
        } else {
            self.relations.normal_form(f)
        }
    }

    pub fn is_zero(&self, f: &Poly) -> bool {
        self.relations.contains(f)
    }

    pub fn equal(&self, f: &Poly, g: &Poly) -> bool {
        self.is_zero(&(f - g))
    }

    /// Ideal of the quotient, pulled back to the ambient ring.
    pub fn ideal(&self, gens: impl IntoIterator<Item = Poly>) -> Ideal {
        self.relations.add(&Ideal::new(&self.ambient, gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> RingRef {
        Ring::new(5, &["x", "y"]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let r = ring2();
        let i = Ideal::parse(&r, &["x^2 - y", "x"]).unwrap();
        assert!(i.contains(&Poly::parse(&r, "y").unwrap()));
        let j = Ideal::parse(&r, &["y"]).unwrap();
        assert!(!j.contains(&Poly::var(&r, 0)));
        assert!(j.contains(&Poly::zero(&r)));
    }

    #[test]
    fn quotient_and_saturation() {
        let r = ring2();
        let x = Poly::var(&r, 0);
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        assert_eq!(i.quotient(&x), Ideal::parse(&r, &["y"]).unwrap());
        assert_eq!(i.quotient(&Poly::one(&r)), i);
        let sq = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(sq.saturation(&x).is_unit());
        let mixed = Ideal::parse(&r, &["x^2*y", "x*y^2"]).unwrap();
        assert_eq!(mixed.saturation(&x), Ideal::parse(&r, &["y"]).unwrap());
    }

    #[test]
    fn unit_ideals() {
        let r1 = Ring::new(5, &["x"]).unwrap();
        assert!(Ideal::parse(&r1, &["x", "x + 1"]).unwrap().is_unit());
        assert!(!Ideal::maximal_at_origin(&ring2()).is_unit());
        let r = Ring::new(2, &["u'", "v'", "w", "t"]).unwrap();
        assert!(Ideal::parse(&r, &["1 - u'*v'", "u'"]).unwrap().is_unit());
    }

    #[test]
    fn intersection() {
        let r = ring2();
        let a = Ideal::parse(&r, &["x"]).unwrap();
        let b = Ideal::parse(&r, &["y"]).unwrap();
        assert_eq!(a.intersect(&b), Ideal::parse(&r, &["x*y"]).unwrap());
    }

    #[test]
    fn quotient_ring_normal_forms() {
        let r = Ring::new(2, &["u", "v", "w", "t"]).unwrap();
        let q = QuotientRing::new(Ideal::parse(&r, &["t^2 - u*v"]).unwrap());
        assert!(q.equal(&Poly::parse(&r, "t^3").unwrap(), &Poly::parse(&r, "u*v*t").unwrap()));
        assert!(!q.is_zero_ring());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }
}
