//! Point-local analysis: linear parts, eigenvalues and multiplicative certificates.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::derivation::{Derivation, FoliationPresentation};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ideal::{Ideal, QuotientRing};
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, Poly, RingRef};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClosedPoint {
    pub coords: Vec<FieldElem>,
}

impl ClosedPoint {
    pub fn origin(n: usize, p: u64) -> Self {
        ClosedPoint {
            coords: vec![FieldElem::zero(p); n],
        }
    }

    pub fn new(coords: &[i64], p: u64) -> Self {
        ClosedPoint {
            coords: coords.iter().map(|&c| FieldElem::new(c, p)).collect(),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `x_i -> x_i + s_i`.
pub fn translate_poly(f: &Poly, s: &ClosedPoint) -> Poly {
    let ring = f.ring();
    let images: Vec<Poly> = s
        .coords
        .iter()
        .enumerate()
        .map(|(i, &c)| &Poly::var(ring, i) + &Poly::from_elem(ring, c))
        .collect();
    f.substitute(ring, &images)
}

/// Moves `s` to the origin.
pub fn translate_to_origin(f: &FoliationPresentation, s: &ClosedPoint) -> Result<FoliationPresentation> {
    let ring = f.ring();
    if s.coords.len() != ring.nvars() {
        return Err(Error::Precondition("point has the wrong number of coordinates".into()));
    }
    if s.is_origin() {
        return Ok(f.clone());
    }
    let q = Arc::new(QuotientRing::new(Ideal::new(
        ring,
        f.quotient().relations().generators().iter().map(|g| translate_poly(g, s)),
    )));
    let gens = f
        .generators()
        .iter()
        .map(|g| Derivation::on_quotient(&q, g.coeffs().iter().map(|c| translate_poly(c, s)).collect()))
        .collect::<Result<Vec<_>>>()?;
    f.with_generators(gens)
}

/// Per generator, `M[i][j]` = coefficient of `x_j` in the `i`-th coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct LinearPartData {
    pub basepoint: ClosedPoint,
    pub matrices: Vec<Matrix>,
    /// Generators not vanishing at the base point.
    pub nonvanishing: Vec<bool>,
}

fn linear_matrix(d: &Derivation) -> Matrix {
    let n = d.ring().nvars();
    (0..n)
        .map(|i| (0..n).map(|j| d.coeff(i).coeff(&Monomial::var(n, j, 1))).collect())
        .collect()
}

/// Linear parts at the origin.
pub fn linear_part(f: &FoliationPresentation) -> LinearPartData {
    let ring = f.ring();
    let origin = ClosedPoint::origin(ring.nvars(), ring.modulus());
    LinearPartData {
        matrices: f.generators().iter().map(linear_matrix).collect(),
        nonvanishing: f
            .generators()
            .iter()
            .map(|g| g.value_at(&origin.coords).iter().any(|v| !v.is_zero()))
            .collect(),
        basepoint: origin,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Regular,
    /// Scaled eigenvalues, one list per certified generator, indexed by eigen-coordinate.
    Multiplicative {
        eigenvalues: Vec<Vec<FieldElem>>,
    },
    Unknown {
        reason: String,
    },
}

/// Machine-checkable evidence for a multiplicative verdict.
///
/// Coordinates are centered at the base point (they live in the translated ring).
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    /// `(generator index, scalar c)`: `c * generator` satisfies the μ_p condition.
    pub scalings: Vec<(usize, FieldElem)>,
    /// Linear parts of the eigen-coordinates, one row each.
    pub linear: Matrix,
    /// Exact eigenfunctions `y_k` with `c D(y_k) = λ_k y_k`.
    pub coordinates: Vec<Poly>,
    pub eigenvalues: Vec<Vec<FieldElem>>,
    /// Values of the generators at the point that do not vanish there.
    pub transversal: Vec<Vec<FieldElem>>,
    pub is_linear: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub point: ClosedPoint,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    /// `λ_min`, when the point has a two-dimensional transversal action.
    pub lambda_min: Option<FieldElem>,
    /// `λ = -1` with `p > 2`.
    pub minus_one: bool,
}

impl Classification {
    fn unknown(point: &ClosedPoint, reason: impl Into<String>) -> Self {
        Classification {
            point: point.clone(),
            verdict: Verdict::Unknown { reason: reason.into() },
            certificate: None,
            lambda_min: None,
            minus_one: false,
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.verdict, Verdict::Regular)
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self.verdict, Verdict::Multiplicative { .. })
    }

    /// The second eigenvalue `λ` of a certified generator with eigenvalues `{1, λ}`.
    pub fn lambda(&self) -> Option<FieldElem> {
        let Verdict::Multiplicative { eigenvalues } = &self.verdict else {
            return None;
        };
        if eigenvalues.len() != 1 || eigenvalues[0].len() != 2 {
            return None;
        }
        let ev = &eigenvalues[0];
        Some(if ev[0].value() == 1 { ev[1] } else { ev[0] })
    }
}

/// `min(λ, λ^{-1})` by lift.
pub fn lambda_min_of(lambda: FieldElem) -> FieldElem {
    let inv = lambda.inv().expect("nonzero eigenvalue");
    if inv.value() < lambda.value() {
        inv
    } else {
        lambda
    }
}

/// `λ(F, s)` for a classified point with eigenvalues `{1, λ}`.
pub fn lambda_min(c: &Classification) -> Result<FieldElem> {
    c.lambda()
        .map(lambda_min_of)
        .ok_or_else(|| Error::Classification(format!("no two-dimensional multiplicative action at {}", c.point)))
}

/// Applies `prod_{μ ≠ λ} (D - μ)/(λ - μ)`, the projection onto the `λ`-eigenspace
/// of an operator with `D^p = D`.
fn eigen_projection(d: &Derivation, lambda: FieldElem, f: &Poly) -> Poly {
    let p = lambda.modulus();
    let mut g = f.clone();
    for mu in FieldElem::all(p) {
        if mu == lambda {
            continue;
        }
        let scale = (lambda - mu).inv().unwrap();
        g = (&d.apply(&g) - &g.scale(mu)).scale(scale);
    }
    g
}

fn row_poly(ring: &RingRef, row: &[FieldElem]) -> Poly {
    row.iter()
        .enumerate()
        .fold(Poly::zero(ring), |acc, (j, &c)| &acc + &Poly::var(ring, j).scale(c))
}

/// Classifies `F` at `s`.
///
/// Regular if the singular ideal misses `s`. Multiplicative if the generators
/// vanishing at `s` satisfy `D^[p] = D` and their linear parts, restricted to
/// the functions killed by the non-vanishing directions, are simultaneously
/// diagonalizable over F_p with no common zero weight. Otherwise Unknown.
pub fn multiplicative_certificate(f: &FoliationPresentation, s: &ClosedPoint) -> Result<Classification> {
    let ring = f.ring().clone();
    let n = ring.nvars();
    let p = ring.modulus();
    let g = translate_to_origin(f, s)?;
    let origin = ClosedPoint::origin(n, p);
    let sing = g.singular_ideal()?;
    if sing.generators().iter().any(|h| !h.eval(&origin.coords).is_zero()) {
        return Ok(Classification {
            point: s.clone(),
            verdict: Verdict::Regular,
            certificate: None,
            lambda_min: None,
            minus_one: false,
        });
    }
    let lin = linear_part(&g);
    let transversal: Vec<Vec<FieldElem>> = g
        .generators()
        .iter()
        .zip(lin.nonvanishing.iter())
        .filter(|(_, &nv)| nv)
        .map(|(d, _)| d.value_at(&origin.coords))
        .collect();
    let vanishing: Vec<usize> = (0..g.generators().len())
        .filter(|&i| !lin.nonvanishing[i] && !g.generators()[i].is_zero())
        .collect();
    if vanishing.is_empty() {
        return Ok(Classification::unknown(s, "no generator vanishes at the point"));
    }
    for &i in &vanishing {
        let d = &g.generators()[i];
        if d.p_power() != *d {
            return Ok(Classification::unknown(s, format!("generator {i} fails D^[p] = D")));
        }
    }
    // functions a·x with a·v = 0 for every transversal value v
    let w_dim = n - linalg::rank(&transversal);
    let mut found: Vec<(Vec<FieldElem>, Vec<FieldElem>)> = Vec::new();
    let k = vanishing.len();
    let total = (p as usize).pow(k as u32);
    for code in 0..total {
        let mut tuple = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            tuple.push(FieldElem::new((c % p as usize) as i64, p));
            c /= p as usize;
        }
        // constraints on the row vector a: a·v = 0 and a (M - μ I) = 0
        let mut rows: Matrix = transversal.clone();
        for (&gi, &mu) in vanishing.iter().zip(tuple.iter()) {
            let m = &lin.matrices[gi];
            for j in 0..n {
                rows.push((0..n).map(|i| if i == j { m[i][j] - mu } else { m[i][j] }).collect());
            }
        }
        for a in linalg::nullspace(&rows, n, p) {
            found.push((a, tuple.clone()));
        }
    }
    if found.len() != w_dim {
        return Ok(Classification::unknown(s, "linear part is not diagonalizable over F_p"));
    }
    if found.iter().any(|(_, t)| t.iter().all(|m| m.is_zero())) {
        return Ok(Classification::unknown(s, "a transversal direction has zero weight"));
    }
    // order eigen-coordinates by their leading variable
    found.sort_by_key(|(a, _)| a.iter().position(|c| !c.is_zero()).unwrap());
    for (a, _) in found.iter_mut() {
        let lead = *a.iter().find(|c| !c.is_zero()).unwrap();
        let inv = lead.inv().unwrap();
        for c in a.iter_mut() {
            *c = *c * inv;
        }
    }
    let mut scalings = Vec::new();
    let mut eigenvalues = Vec::new();
    for (slot, &gi) in vanishing.iter().enumerate() {
        let weights: Vec<FieldElem> = found.iter().map(|(_, t)| t[slot]).collect();
        let Some(c) = FieldElem::units(p).find(|&c| weights.iter().any(|&w| (c * w).value() == 1)) else {
            return Ok(Classification::unknown(s, format!("generator {gi} has no nonzero eigenvalue")));
        };
        scalings.push((gi, c));
        eigenvalues.push(weights.iter().map(|&w| c * w).collect::<Vec<_>>());
    }
    let mut coordinates = Vec::with_capacity(found.len());
    for (a, tuple) in &found {
        let mut y = row_poly(&ring, a);
        for (&gi, &mu) in vanishing.iter().zip(tuple.iter()) {
            y = eigen_projection(&g.generators()[gi], mu, &y);
        }
        for (&gi, &mu) in vanishing.iter().zip(tuple.iter()) {
            let d = &g.generators()[gi];
            if !g.quotient().equal(&d.apply(&y), &y.scale(mu)) {
                return Ok(Classification::unknown(s, "eigen-coordinates do not separate"));
            }
        }
        coordinates.push(y);
    }
    let linear: Matrix = found.iter().map(|(a, _)| a.clone()).collect();
    let is_linear = coordinates
        .iter()
        .zip(linear.iter())
        .all(|(y, a)| *y == row_poly(&ring, a));
    let mut cls = Classification {
        point: s.clone(),
        verdict: Verdict::Multiplicative {
            eigenvalues: eigenvalues.clone(),
        },
        certificate: Some(Certificate {
            scalings,
            linear,
            coordinates,
            eigenvalues,
            transversal,
            is_linear,
        }),
        lambda_min: None,
        minus_one: false,
    };
    if let Some(l) = cls.lambda() {
        cls.lambda_min = Some(lambda_min_of(l));
        cls.minus_one = p > 2 && l.value() == p - 1;
    }
    Ok(cls)
}

/// F_p-rational points of `V(ideal)`, by exhaustive search.
pub fn rational_points(ideal: &Ideal) -> Vec<ClosedPoint> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let p = ring.modulus();
    if ideal.is_unit() {
        return Vec::new();
    }
    let gens = ideal.groebner();
    let total = (p as usize).pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut coords = vec![FieldElem::zero(p); n];
        for slot in coords.iter_mut().rev() {
            *slot = FieldElem::new((c % p as usize) as i64, p);
            c /= p as usize;
        }
        if gens.iter().all(|g| g.eval(&coords).is_zero()) {
            out.push(ClosedPoint { coords });
        }
    }
    out
}

/// Rational points of `Sing(F)`.
pub fn singular_points(f: &FoliationPresentation) -> Result<Vec<ClosedPoint>> {
    Ok(rational_points(&f.singular_ideal()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn fol(r: &RingRef, gens: &[&[&str]]) -> FoliationPresentation {
        FoliationPresentation::new(gens.iter().map(|g| Derivation::parse(r, g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn translation() {
        let r = Ring::new(5, &["x"]).unwrap();
        let f = fol(&r, &[&["x - 1"]]);
        let t = translate_to_origin(&f, &ClosedPoint::new(&[1], 5)).unwrap();
        assert_eq!(t.generators()[0], Derivation::parse(&r, &["x"]).unwrap());
        let dx = fol(&r, &[&["1"]]);
        assert_eq!(translate_to_origin(&dx, &ClosedPoint::new(&[3], 5)).unwrap().generators()[0], dx.generators()[0]);
    }

    #[test]
    fn linear_parts() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let lp = linear_part(&fol(&r, &[&["x", "3*y"]]));
        assert_eq!(lp.matrices[0][1][1].value(), 3);
        let lp = linear_part(&fol(&r, &[&["y", "0"]]));
        assert_eq!(lp.matrices[0][0][1].value(), 1);
        assert!(lp.matrices[0][1].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn certificates() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let o = ClosedPoint::origin(2, 5);
        let c = multiplicative_certificate(&fol(&r, &[&["x", "3*y"]]), &o).unwrap();
        assert_eq!(c.lambda().unwrap().value(), 3);
        assert_eq!(lambda_min(&c).unwrap().value(), 2);
        assert_eq!(c.certificate.as_ref().unwrap().scalings[0].1.value(), 1);
        assert!(multiplicative_certificate(&fol(&r, &[&["1", "0"]]), &o).unwrap().is_regular());
        let r3 = Ring::new(3, &["x", "y"]).unwrap();
        let u = multiplicative_certificate(&fol(&r3, &[&["y", "0"]]), &ClosedPoint::origin(2, 3)).unwrap();
        assert!(matches!(u.verdict, Verdict::Unknown { .. }));
        let m1 = multiplicative_certificate(&fol(&r3, &[&["x", "2*y"]]), &ClosedPoint::origin(2, 3)).unwrap();
        assert!(m1.minus_one);
    }

    #[test]
    fn curve_points_use_transversal_action() {
        let r = Ring::new(5, &["x", "y", "z"]).unwrap();
        let f = fol(&r, &[&["0", "0", "1"], &["x", "3*y", "0"]]);
        for c in 0..5 {
            let cls = multiplicative_certificate(&f, &ClosedPoint::new(&[0, 0, c], 5)).unwrap();
            assert_eq!(cls.lambda().unwrap().value(), 3);
        }
        assert_eq!(singular_points(&f).unwrap().len(), 5);
    }

    #[test]
    fn joint_diagonalization() {
        let r = Ring::new(5, &["x", "y", "z"]).unwrap();
        let f = fol(&r, &[&["x", "3*y", "0"], &["x", "0", "4*z"]]);
        let cls = multiplicative_certificate(&f, &ClosedPoint::origin(3, 5)).unwrap();
        let Verdict::Multiplicative { eigenvalues } = &cls.verdict else {
            panic!("{cls:?}");
        };
        assert_eq!(eigenvalues.len(), 2);
        assert!(cls.certificate.unwrap().is_linear);
    }

    #[test]
    fn nonlinear_eigen_coordinates() {
        // y + x^3 is the 2-eigenfunction of x∂x + (2y - x^3)∂y
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let twisted = fol(&r, &[&["x", "2*y - x^3"]]);
        let cls = multiplicative_certificate(&twisted, &ClosedPoint::origin(2, 5)).unwrap();
        let cert = cls.certificate.expect("multiplicative");
        assert!(!cert.is_linear);
        assert_eq!(cert.coordinates[1], Poly::parse(&r, "y + x^3").unwrap());
        let g = &twisted.generators()[0];
        for (y, l) in cert.coordinates.iter().zip(cert.eigenvalues[0].iter()) {
            assert_eq!(g.apply(y), y.scale(*l));
        }
    }
}
