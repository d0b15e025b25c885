//! Sparse multivariate polynomials over F_p.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{self, add_mod, mul_mod, neg_mod, sub_mod, FieldElem};
use crate::order::MonomialOrder;

/// Variable names and modulus of a polynomial ring `F_p[x_1, ..., x_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    p: u64,
    vars: Vec<String>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<RingRef> {
        field::check_modulus(p)?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::Precondition(format!("bad or duplicate variable name {v:?}")));
            }
        }
        Ok(Arc::new(Ring { p, vars }))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn elem(&self, v: i64) -> FieldElem {
        FieldElem::new(v, self.p)
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v.into_boxed_slice())
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }
}

/// A polynomial: sparse map from exponent vectors to nonzero residues.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Poly::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        Poly::from_elem(ring, ring.elem(c))
    }

    pub fn from_elem(ring: &RingRef, c: FieldElem) -> Self {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Poly::monomial(ring, Monomial::var(ring.nvars(), i, 1), FieldElem::one(ring.modulus()))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: FieldElem) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c.value());
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_raw_terms(ring: &RingRef, iter: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let p = ring.modulus();
        let mut terms: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in iter {
            let c = c % p;
            if c == 0 {
                continue;
            }
            let e = terms.entry(m).or_insert(0);
            *e = add_mod(*e, c, p);
        }
        terms.retain(|_, c| *c != 0);
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(ring: &RingRef, iter: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        Poly::from_raw_terms(ring, iter.into_iter().map(|(m, c)| (m, c.value())))
    }

    pub fn parse(ring: &RingRef, s: &str) -> Result<Self> {
        crate::parse::parse_poly(ring, s)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.ring.nvars())))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.value() == 1).unwrap_or(false)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, FieldElem)> + '_ {
        let p = self.modulus();
        self.terms.iter().map(move |(m, &c)| (m, FieldElem::from_raw(c, p)))
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        FieldElem::from_raw(self.terms.get(m).copied().unwrap_or(0), self.modulus())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[var] > 0)
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, FieldElem)> {
        let p = self.modulus();
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, &c)| (m, FieldElem::from_raw(c, p)))
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let p = self.modulus();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), mul_mod(v, c.value(), p))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, &v)| (k.mul(m), v)).collect(),
        }
    }

    /// Divides every term by `m`; `None` unless `m` divides all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, &v) in &self.terms {
            terms.insert(m.quotient_of(k)?, v);
        }
        Some(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Greatest common monomial divisor of all terms (`1` for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let p = self.modulus();
        Poly::from_raw_terms(
            &self.ring,
            self.terms.iter().filter_map(|(m, &c)| {
                let e = m.exponents()[var];
                if e == 0 {
                    return None;
                }
                let mut ex = m.exponents().to_vec();
                ex[var] -= 1;
                Some((Monomial::from_exponents(ex), mul_mod(c, e as u64 % p, p)))
            }),
        )
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.ring.nvars());
        let p = self.modulus();
        let mut acc = 0u64;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = mul_mod(t, field::pow_mod(x.value(), e as u64, p), p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        FieldElem::from_raw(acc, p)
    }

    /// Ring homomorphism `x_i -> images[i]` into `target`.
    pub fn substitute(&self, target: &RingRef, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        assert_eq!(target.modulus(), self.modulus());
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        let mut acc = Poly::zero(target);
        for (m, &c) in &self.terms {
            let mut t = Poly::from_elem(target, FieldElem::from_raw(c, self.modulus()));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Poly::one(target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-homes the polynomial into `target`, sending variable `i` to `var_map[i]`.
    pub fn embed(&self, target: &RingRef, var_map: &[usize]) -> Poly {
        let n = target.nvars();
        Poly::from_raw_terms(
            target,
            self.terms.iter().map(|(m, &c)| {
                let mut ex = vec![0; n];
                for (i, &e) in m.exponents().iter().enumerate() {
                    ex[var_map[i]] += e;
                }
                (Monomial::from_exponents(ex), c)
            }),
        )
    }

    /// Inverse of [`Poly::embed`]; `None` if a variable outside the image occurs.
    pub fn restrict(&self, target: &RingRef, var_map: &[usize]) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, &c) in &self.terms {
            let ex = m.exponents();
            let mut out = vec![0; target.nvars()];
            let mut used = 0;
            for (i, &j) in var_map.iter().enumerate() {
                out[i] = ex[j];
                used += ex[j];
            }
            if used != m.degree() {
                return None;
            }
            terms.push((Monomial::from_exponents(out), c));
        }
        Some(Poly::from_raw_terms(target, terms))
    }

    /// Terms of total degree `< bound`.
    pub fn truncate_below(&self, bound: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Scales so the leading coefficient (degrevlex) is one.
    pub fn monic(&self) -> Poly {
        match self.leading_term(MonomialOrder::DegRevLex) {
            None => self.clone(),
            Some((_, c)) => self.scale(c.inv().unwrap()),
        }
    }

    fn check_ring(&self, other: &Poly) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in polynomial arithmetic");
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let p = self.modulus();
        let mut terms = self.terms.clone();
        for (m, &c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v = add_mod(*v, c, p);
                    if *v == 0 {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let p = self.modulus();
        let mut terms = self.terms.clone();
        for (m, &c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v = sub_mod(*v, c, p);
                    if *v == 0 {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), neg_mod(c, p));
                }
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let p = self.modulus();
        let mut terms: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let e = terms.entry(a.mul(b)).or_insert(0);
                *e = add_mod(*e, mul_mod(ca, cb, p), p);
            }
        }
        terms.retain(|_, c| *c != 0);
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let p = self.modulus();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), neg_mod(c, p))).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.var_name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Terms in descending degrevlex order; the residue `p - 1` prints as `-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.modulus();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b.0, a.0));
        for (k, (m, &c)) in terms.into_iter().enumerate() {
            let negative = p > 2 && c == p - 1;
            let mag = if negative { p - c } else { c };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
