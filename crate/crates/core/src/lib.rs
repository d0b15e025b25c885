//! Resolution of 1-foliations on affine charts over prime fields.

pub mod blowup;
pub mod classify;
pub mod derivation;
pub mod error;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod module;
pub mod oracles;
pub mod order;
pub mod parse;
pub mod poly;
pub mod resolve;
pub mod weighted;

pub use error::{Error, Result};
pub use field::FieldElem;
pub use ideal::{Ideal, QuotientRing};
pub use order::{ModuleOrder, MonomialOrder, TermOrder};
pub use poly::{Monomial, Poly, Ring, RingRef};
pub use derivation::{Derivation, FoliationPresentation};
