//! Exact division and multivariate gcd.

use crate::ideal::Ideal;
use crate::order::MonomialOrder;
use crate::poly::Poly;

/// `f / g` when `g` divides `f` exactly.
pub fn div_exact(f: &Poly, g: &Poly) -> Option<Poly> {
    assert!(!g.is_zero(), "division by zero polynomial");
    let order = MonomialOrder::Lex;
    let (gm, gc) = g.leading_term(order).map(|(m, c)| (m.clone(), c)).unwrap();
    let ginv = gc.inv().unwrap();
    let mut rem = f.clone();
    let mut quot = Poly::zero(f.ring());
    while let Some((m, c)) = rem.leading_term(order).map(|(m, c)| (m.clone(), c)) {
        let q = gm.quotient_of(&m)?;
        let t = Poly::monomial(f.ring(), q, c * ginv);
        rem = &rem - &(&t * g);
        quot = &quot + &t;
    }
    Some(quot)
}

/// Monic gcd. The monomial content is split off first; the remaining
/// factors are handled through `lcm = generator of (f) ∩ (g)`.
pub fn gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let ring = f.ring();
    let (cf, cg) = (f.monomial_content(), g.monomial_content());
    let mono = cf.gcd(&cg);
    let f1 = f.div_monomial(&cf).unwrap();
    let g1 = g.div_monomial(&cg).unwrap();
    let rest = if f1.is_constant() || g1.is_constant() {
        Poly::one(ring)
    } else if f1.monic() == g1.monic() {
        f1.monic()
    } else {
        let inter = Ideal::new(ring, [f1.clone()]).intersect(&Ideal::new(ring, [g1.clone()]));
        let gens = inter.groebner();
        debug_assert_eq!(gens.len(), 1, "intersection of principal ideals is principal");
        div_exact(&(&f1 * &g1), &gens[0]).expect("lcm divides the product").monic()
    };
    rest.mul_monomial(&mono)
}

pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Option<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(a) => gcd(&a, p),
        });
        if acc.as_ref().is_some_and(|a| a.is_one()) {
            break;
        }
    }
    acc
}
