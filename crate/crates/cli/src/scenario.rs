//! Scenario files: a ring, a foliation and the driver or oracle to run on it.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use folres_core::{Derivation, FoliationPresentation, Ideal, Poly, QuotientRing, Ring, RingRef};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Driver {
    Surface,
    Char2,
    ThreefoldCorank1,
    Classify,
    ConstantsBasis,
    EuclidRoot,
    InvSubringCheck,
    ReesFunctorialityCheck,
    LambdaConstancyCheck,
}

impl Driver {
    pub fn name(&self) -> &'static str {
        match self {
            Driver::Surface => "surface",
            Driver::Char2 => "char2",
            Driver::ThreefoldCorank1 => "threefold_corank1",
            Driver::Classify => "classify",
            Driver::ConstantsBasis => "constants_basis",
            Driver::EuclidRoot => "euclid_root",
            Driver::InvSubringCheck => "inv_subring_check",
            Driver::ReesFunctorialityCheck => "rees_functoriality_check",
            Driver::LambdaConstancyCheck => "lambda_constancy_check",
        }
    }

    pub fn is_resolution(&self) -> bool {
        matches!(self, Driver::Surface | Driver::Char2 | Driver::ThreefoldCorank1)
    }

    /// Oracles that do not read the foliation of the scenario.
    pub fn is_standalone(&self) -> bool {
        matches!(self, Driver::EuclidRoot | Driver::InvSubringCheck | Driver::ReesFunctorialityCheck)
    }
}

/// One `(generator, weight)` term of a Rees algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesTerm {
    pub generator: String,
    pub weight: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub use_lambda_min: Option<bool>,
    /// Sample points (classify, lambda_constancy_check).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<i64>>>,
    /// euclid_root: `(a, b)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents_ab: Option<(u64, u64)>,
    /// inv_subring_check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot: Option<usize>,
    /// rees_functoriality_check: `Λ` and the perturbations `f`, `g` in `x`, `y`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    /// rees_functoriality_check with two explicit Rees algebras.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<ReesTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<ReesTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub p: u64,
    pub variables: Vec<String>,
    #[serde(default)]
    pub generators: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    pub driver: Driver,
    #[serde(default)]
    pub options: Options,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios serialize")
    }

    /// Everything that can be checked without running anything.
    pub fn validate(&self) -> Result<(), CliError> {
        let ring = self.ring()?;
        if !self.driver.is_standalone() {
            if self.generators.is_empty() {
                return Err(CliError::Parse("at least one generator is required".into()));
            }
            self.parse_generators(&ring)?;
        }
        for r in &self.relations {
            Poly::parse(&ring, r)?;
        }
        Ok(())
    }

    pub fn ring(&self) -> Result<RingRef, CliError> {
        Ok(Ring::new(self.p, &self.variables)?)
    }

    fn parse_generators(&self, ring: &RingRef) -> Result<Vec<Vec<Poly>>, CliError> {
        self.generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                if g.len() != ring.nvars() {
                    return Err(CliError::Parse(format!(
                        "generator {k} has {} coefficients for {} variables",
                        g.len(),
                        ring.nvars()
                    )));
                }
                g.iter().map(|c| Poly::parse(ring, c).map_err(CliError::from)).collect()
            })
            .collect()
    }

    /// The foliation on `F_p[vars]/(relations)`.
    pub fn foliation(&self) -> Result<FoliationPresentation, CliError> {
        let ring = self.ring()?;
        let rels = self.relations.iter().map(|r| Poly::parse(&ring, r)).collect::<Result<Vec<_>, _>>()?;
        let q = Arc::new(QuotientRing::new(Ideal::new(&ring, rels)));
        let gens = self
            .parse_generators(&ring)?
            .into_iter()
            .map(|c| Derivation::on_quotient(&q, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FoliationPresentation::new(gens)?)
    }
}
