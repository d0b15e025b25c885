//! Buchberger's algorithm for submodules of a free module `R^n`.
//!
//! Ideals are the case `n = 1`. Vectors are stored as flat term lists
//! `(position, monomial, coefficient)` sorted ascending in the term order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::field::{inv_mod, mul_mod, neg_mod, sub_mod};
use crate::order::{ModuleOrder, MonomialOrder, TermOrder};
use crate::poly::{Monomial, Poly, RingRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mon: Monomial,
    pub c: u64,
}

/// Sparse vector, terms ascending; the leading term is last.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct MVec {
    pub terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Ctx {
    pub p: u64,
    pub order: TermOrder,
    /// Product criterion applies only for ideals.
    pub rank: usize,
}

impl Ctx {
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp((a.pos, &a.mon), (b.pos, &b.mon))
    }

    pub fn from_polys(&self, v: &[Poly]) -> MVec {
        let mut terms: Vec<Term> = v
            .iter()
            .enumerate()
            .flat_map(|(pos, f)| {
                f.raw_terms().iter().map(move |(m, &c)| Term {
                    pos,
                    mon: m.clone(),
                    c,
                })
            })
            .collect();
        terms.sort_by(|a, b| self.cmp(a, b));
        MVec { terms }
    }

    pub fn to_polys(&self, ring: &RingRef, v: &MVec) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); self.rank];
        for t in &v.terms {
            buckets[t.pos].push((t.mon.clone(), t.c));
        }
        buckets.into_iter().map(|b| Poly::from_raw_terms(ring, b)).collect()
    }

    /// `f - c * m * g`.
    pub fn sub_mul(&self, f: &MVec, c: u64, m: &Monomial, g: &MVec) -> MVec {
        let p = self.p;
        let scaled = g.terms.iter().map(|t| Term {
            pos: t.pos,
            mon: t.mon.mul(m),
            c: neg_mod(mul_mod(t.c, c, p), p),
        });
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut a = f.terms.iter().peekable();
        let mut b = scaled.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match self.cmp(x, y) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = sub_mod(x.c, neg_mod(y.c, p), p);
                        if s != 0 {
                            out.push(Term {
                                pos: x.pos,
                                mon: x.mon.clone(),
                                c: s,
                            });
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        MVec { terms: out }
    }

    pub fn monic(&self, mut f: MVec) -> MVec {
        if let Some(lt) = f.terms.last() {
            let inv = inv_mod(lt.c, self.p);
            for t in &mut f.terms {
                t.c = mul_mod(t.c, inv, self.p);
            }
        }
        f
    }

    fn find_reducer<'a>(&self, t: &Term, basis: &'a [MVec]) -> Option<&'a MVec> {
        basis.iter().find(|g| {
            let l = g.terms.last().unwrap();
            l.pos == t.pos && l.mon.divides(&t.mon)
        })
    }

    /// Full normal form of `f` modulo `basis`.
    pub fn reduce(&self, f: &MVec, basis: &[MVec]) -> MVec {
        let mut f = f.clone();
        let mut rem: Vec<Term> = Vec::new();
        while let Some(lt) = f.terms.last().cloned() {
            match self.find_reducer(&lt, basis) {
                Some(g) => {
                    let gl = g.terms.last().unwrap();
                    let m = gl.mon.quotient_of(&lt.mon).unwrap();
                    let c = mul_mod(lt.c, inv_mod(gl.c, self.p), self.p);
                    f = self.sub_mul(&f, c, &m, g);
                }
                None => {
                    f.terms.pop();
                    rem.push(lt);
                }
            }
        }
        rem.reverse();
        MVec { terms: rem }
    }

    fn spoly(&self, f: &MVec, g: &MVec) -> MVec {
        let (a, b) = (f.terms.last().unwrap(), g.terms.last().unwrap());
        let l = a.mon.lcm(&b.mon);
        let ma = a.mon.quotient_of(&l).unwrap();
        let mb = b.mon.quotient_of(&l).unwrap();
        let ia = inv_mod(a.c, self.p);
        let ib = inv_mod(b.c, self.p);
        let fa = self.sub_mul(&MVec::default(), neg_mod(ia, self.p), &ma, f);
        self.sub_mul(&fa, ib, &mb, g)
    }

    /// Reduced Gröbner basis, sorted descending by leading term.
    pub fn buchberger(&self, gens: &[MVec]) -> Vec<MVec> {
        let mut basis: Vec<MVec> = Vec::new();
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        let add = |basis: &mut Vec<MVec>, pending: &mut BTreeSet<(usize, usize)>, h: MVec| {
            let h = self.monic(h);
            let k = basis.len();
            let hp = h.terms.last().unwrap().pos;
            for (i, g) in basis.iter().enumerate() {
                if g.terms.last().unwrap().pos == hp {
                    pending.insert((i, k));
                }
            }
            basis.push(h);
        };
        for g in gens {
            let h = self.reduce(g, &basis);
            if !h.terms.is_empty() {
                add(&mut basis, &mut pending, h);
            }
        }
        while !pending.is_empty() {
            // normal strategy: smallest lcm first
            let &(i, j) = pending
                .iter()
                .min_by(|x, y| {
                    let lx = self.pair_lcm(&basis, **x);
                    let ly = self.pair_lcm(&basis, **y);
                    self.cmp(&lx, &ly).then(x.cmp(y))
                })
                .unwrap();
            pending.remove(&(i, j));
            let (a, b) = (basis[i].terms.last().unwrap(), basis[j].terms.last().unwrap());
            if self.rank == 1 && a.mon.is_coprime(&b.mon) {
                continue;
            }
            let l = a.mon.lcm(&b.mon);
            let pos = a.pos;
            let chain = (0..basis.len()).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let t = basis[k].terms.last().unwrap();
                t.pos == pos
                    && t.mon.divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.spoly(&basis[i], &basis[j]);
            let h = self.reduce(&s, &basis);
            if !h.terms.is_empty() {
                add(&mut basis, &mut pending, h);
            }
        }
        self.interreduce(basis)
    }

    fn pair_lcm(&self, basis: &[MVec], (i, j): (usize, usize)) -> Term {
        let (a, b) = (basis[i].terms.last().unwrap(), basis[j].terms.last().unwrap());
        Term {
            pos: a.pos,
            mon: a.mon.lcm(&b.mon),
            c: 1,
        }
    }

    fn interreduce(&self, basis: Vec<MVec>) -> Vec<MVec> {
        let mut minimal: Vec<MVec> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lt = g.terms.last().unwrap();
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                let lh = h.terms.last().unwrap();
                j != i && lh.pos == lt.pos && lh.mon.divides(&lt.mon) && (lh.mon != lt.mon || j < i)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let lead = minimal[i].terms.last().unwrap().clone();
            let mut tail = minimal[i].clone();
            tail.terms.pop();
            let others: Vec<MVec> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let mut r = self.reduce(&tail, &others);
            r.terms.push(lead);
            out.push(self.monic(r));
        }
        out.sort_by(|a, b| self.cmp(b.terms.last().unwrap(), a.terms.last().unwrap()));
        out
    }
}

fn ring_of(gens: &[Poly]) -> Option<&RingRef> {
    gens.first().map(|g| g.ring())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Poly], order: MonomialOrder) -> Vec<Poly> {
    let Some(ring) = ring_of(gens) else {
        return Vec::new();
    };
    let ctx = Ctx {
        p: ring.modulus(),
        order: order.into(),
        rank: 1,
    };
    let vs: Vec<MVec> = gens.iter().map(|g| ctx.from_polys(std::slice::from_ref(g))).collect();
    ctx.buchberger(&vs)
        .iter()
        .map(|v| ctx.to_polys(ring, v).pop().unwrap())
        .collect()
}

/// Normal form of `f` modulo a Gröbner basis computed for `order`.
pub fn normal_form(f: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let ctx = Ctx {
        p: f.modulus(),
        order: order.into(),
        rank: 1,
    };
    let b: Vec<MVec> = basis.iter().map(|g| ctx.from_polys(std::slice::from_ref(g))).collect();
    let r = ctx.reduce(&ctx.from_polys(std::slice::from_ref(f)), &b);
    ctx.to_polys(f.ring(), &r).pop().unwrap()
}

/// Reduced Gröbner basis of the submodule of `R^rank` generated by `gens`.
pub fn module_groebner_basis(ring: &RingRef, rank: usize, gens: &[Vec<Poly>], order: TermOrder) -> Vec<Vec<Poly>> {
    let ctx = Ctx {
        p: ring.modulus(),
        order,
        rank,
    };
    let vs: Vec<MVec> = gens.iter().map(|g| ctx.from_polys(g)).collect();
    ctx.buchberger(&vs).iter().map(|v| ctx.to_polys(ring, v)).collect()
}

pub fn module_normal_form(ring: &RingRef, v: &[Poly], basis: &[Vec<Poly>], order: TermOrder) -> Vec<Poly> {
    let ctx = Ctx {
        p: ring.modulus(),
        order,
        rank: v.len(),
    };
    let b: Vec<MVec> = basis.iter().map(|g| ctx.from_polys(g)).collect();
    ctx.to_polys(ring, &ctx.reduce(&ctx.from_polys(v), &b))
}

/// Coefficients `c` with `v = sum c_i gens_i`, if `v` lies in the submodule.
///
/// Works in `R^(n+k)` with the generators augmented by unit vectors; the
/// position-over-term order keeps the original block dominant.
pub fn lift(ring: &RingRef, v: &[Poly], gens: &[Vec<Poly>], monomial: MonomialOrder) -> Option<Vec<Poly>> {
    let n = v.len();
    let k = gens.len();
    if v.iter().all(|f| f.is_zero()) {
        return Some(vec![Poly::zero(ring); k]);
    }
    if k == 0 {
        return None;
    }
    let order = TermOrder::new(monomial, ModuleOrder::PositionOverTerm);
    let aug: Vec<Vec<Poly>> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            assert_eq!(g.len(), n, "generator length mismatch");
            let mut row = g.clone();
            row.extend((0..k).map(|j| if j == i { Poly::one(ring) } else { Poly::zero(ring) }));
            row
        })
        .collect();
    let ctx = Ctx {
        p: ring.modulus(),
        order,
        rank: n + k,
    };
    let vs: Vec<MVec> = aug.iter().map(|g| ctx.from_polys(g)).collect();
    let gb = ctx.buchberger(&vs);
    let mut target = v.to_vec();
    target.extend((0..k).map(|_| Poly::zero(ring)));
    let r = ctx.to_polys(ring, &ctx.reduce(&ctx.from_polys(&target), &gb));
    if r[..n].iter().any(|f| !f.is_zero()) {
        return None;
    }
    Some(r[n..].iter().map(|f| -f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn polys(r: &RingRef, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|x| Poly::parse(r, x).unwrap()).collect()
    }

    #[test]
    fn small_ideal() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let gb = groebner_basis(&polys(&r, &["x^2 - y", "x"]), MonomialOrder::DegRevLex);
        assert_eq!(gb, polys(&r, &["x", "y"]));
        assert!(groebner_basis(&[], MonomialOrder::DegRevLex).is_empty());
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = Ring::new(7, &["x", "y", "z"]).unwrap();
        let gb = groebner_basis(&polys(&r, &["x^2 - y", "x^3 - z"]), MonomialOrder::Lex);
        let expect = polys(&r, &["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]);
        for e in &expect {
            assert!(normal_form(e, &gb, MonomialOrder::Lex).is_zero());
        }
        assert_eq!(gb.len(), 4);
    }

    #[test]
    fn lift_recovers_cofactors() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let gens = vec![polys(&r, &["x", "0"]), polys(&r, &["0", "y"])];
        let v = polys(&r, &["x*y", "y^2 + x*y"]);
        let c = lift(&r, &v, &gens, MonomialOrder::DegRevLex).unwrap();
        for i in 0..2 {
            let s = &(&c[0] * &gens[0][i]) + &(&c[1] * &gens[1][i]);
            assert_eq!(s, v[i]);
        }
        assert!(lift(&r, &polys(&r, &["1", "0"]), &[polys(&r, &["x", "0"])], MonomialOrder::DegRevLex).is_none());
    }

    #[test]
    fn module_gb_is_idempotent() {
        let r = Ring::new(3, &["x", "y"]).unwrap();
        let gens = vec![polys(&r, &["x", "y"]), polys(&r, &["y", "x"])];
        let o = TermOrder::default();
        let gb = module_groebner_basis(&r, 2, &gens, o);
        assert_eq!(module_groebner_basis(&r, 2, &gb, o), gb);
    }
}
