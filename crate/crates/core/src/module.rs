//! Submodules of free modules `R^n`.

use crate::error::{Error, Result};
use crate::groebner::{lift, module_groebner_basis, module_normal_form};
use crate::ideal::prepend_vars;
use crate::order::{ModuleOrder, MonomialOrder, TermOrder};
use crate::poly::{same_ring, Poly, RingRef};

fn check_shapes(ring: &RingRef, v: &[Poly], gens: &[Vec<Poly>]) -> Result<()> {
    for g in gens {
        if g.len() != v.len() {
            return Err(Error::Precondition("vectors of different lengths".into()));
        }
    }
    for f in v.iter().chain(gens.iter().flatten()) {
        if !same_ring(f.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    Ok(())
}

/// Coefficients `c` with `v = sum c_i gens_i`, or `None`.
pub fn module_membership(v: &[Poly], gens: &[Vec<Poly>]) -> Result<Option<Vec<Poly>>> {
    let Some(ring) = v.first().map(|f| f.ring().clone()) else {
        return Err(Error::Precondition("empty vector".into()));
    };
    check_shapes(&ring, v, gens)?;
    Ok(lift(&ring, v, gens, MonomialOrder::DegRevLex))
}

/// A submodule with its Gröbner basis precomputed for repeated membership tests.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: RingRef,
    rank: usize,
    gens: Vec<Vec<Poly>>,
    gb: Vec<Vec<Poly>>,
}

impl Submodule {
    pub fn new(ring: &RingRef, rank: usize, gens: Vec<Vec<Poly>>) -> Self {
        let gb = module_groebner_basis(ring, rank, &gens, TermOrder::default());
        Submodule {
            ring: ring.clone(),
            rank,
            gens,
            gb,
        }
    }

    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.gens
    }

    pub fn groebner(&self) -> &[Vec<Poly>] {
        &self.gb
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        module_normal_form(&self.ring, v, &self.gb, TermOrder::default())
            .iter()
            .all(|f| f.is_zero())
    }

    pub fn contains_module(&self, other: &Submodule) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.contains_module(other) && other.contains_module(self)
    }

    /// `M : f^∞ = { v : f^k v ∈ M for some k }`.
    ///
    /// Adds `(1 - s f) e_i` in `R[s]^n` and eliminates `s` with a
    /// term-over-position elimination order.
    pub fn saturate(&self, f: &Poly) -> Submodule {
        if f.is_constant() {
            return self.clone();
        }
        let (ext, map) = prepend_vars(&self.ring, 1);
        let s = Poly::var(&ext, 0);
        let t = &Poly::one(&ext) - &(&s * &f.embed(&ext, &map));
        let mut gens: Vec<Vec<Poly>> = self
            .gens
            .iter()
            .map(|g| g.iter().map(|c| c.embed(&ext, &map)).collect())
            .collect();
        for i in 0..self.rank {
            gens.push(
                (0..self.rank)
                    .map(|j| if i == j { t.clone() } else { Poly::zero(&ext) })
                    .collect(),
            );
        }
        let order = TermOrder::new(MonomialOrder::Elimination(1), ModuleOrder::TermOverPosition);
        let gb = module_groebner_basis(&ext, self.rank, &gens, order);
        let kept: Vec<Vec<Poly>> = gb
            .into_iter()
            .filter_map(|v| v.iter().map(|c| c.restrict(&self.ring, &map)).collect::<Option<Vec<_>>>())
            .collect();
        Submodule::new(&self.ring, self.rank, kept)
    }

    /// Drops generators that lie in the span of the others.
    pub fn prune(&self) -> Submodule {
        let mut gens = self.gens.clone();
        gens.retain(|g| g.iter().any(|c| !c.is_zero()));
        let mut i = 0;
        while i < gens.len() {
            let others: Vec<Vec<Poly>> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            if !others.is_empty() && Submodule::new(&self.ring, self.rank, others.clone()).contains(&gens[i]) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        Submodule::new(&self.ring, self.rank, gens)
    }
}
