//! Monomial and module term orders.

use std::cmp::Ordering;

use crate::poly::Monomial;

/// A total, multiplicative order on monomials of a fixed ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    #[default]
    DegRevLex,
    /// Eliminates the first `k` variables: compares the degree in that block,
    /// then degrevlex inside the block, then degrevlex on the rest.
    Elimination(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }
}

/// How module terms `m * e_i` are compared. Lower position index is larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ModuleOrder {
    /// Position first, then the monomial order.
    #[default]
    PositionOverTerm,
    /// Monomial order first, then position.
    TermOverPosition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct TermOrder {
    pub monomial: MonomialOrder,
    pub module: ModuleOrder,
}

impl TermOrder {
    pub fn new(monomial: MonomialOrder, module: ModuleOrder) -> Self {
        TermOrder { monomial, module }
    }

    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let pos = b.0.cmp(&a.0);
        match self.module {
            ModuleOrder::PositionOverTerm => pos.then_with(|| self.monomial.cmp(a.1, b.1)),
            ModuleOrder::TermOverPosition => self.monomial.cmp(a.1, b.1).then(pos),
        }
    }
}

impl From<MonomialOrder> for TermOrder {
    fn from(monomial: MonomialOrder) -> Self {
        TermOrder {
            monomial,
            module: ModuleOrder::PositionOverTerm,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn degrevlex_classic_example() {
        // x*z^2 vs y^3 in degrevlex with x > y > z: y^3 > x z^2
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[0, 3, 0]), &m(&[1, 0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn position_over_term() {
        let o = TermOrder::default();
        assert_eq!(o.cmp((0, &m(&[0, 0])), (1, &m(&[3, 3]))), Ordering::Greater);
        let t = TermOrder::new(MonomialOrder::DegRevLex, ModuleOrder::TermOverPosition);
        assert_eq!(t.cmp((0, &m(&[0, 0])), (1, &m(&[3, 3]))), Ordering::Less);
    }
}
