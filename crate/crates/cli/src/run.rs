//! Driver and oracle dispatch.

use serde::Serialize;
use serde_json::{json, Value};

use folres_core::classify::{multiplicative_certificate, singular_points, ClosedPoint};
use folres_core::oracles::{
    constants_basis, euclid_root, inv_subring_check, lambda_constancy_check, rees_equal_up_to, rees_functoriality_check,
};
use folres_core::resolve::{
    resolve_char2, resolve_surface, resolve_threefold_corank1, verify_resolution, ResolutionReport, ResolveOptions, Status,
    Verification,
};
use folres_core::weighted::ReesAlgebra;
use folres_core::{Error, Poly, Ring, RingRef};

use crate::error::CliError;
use crate::scenario::{Driver, ReesTerm, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Resolved,
    Aborted,
    True,
    False,
    InternalError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Resolved | Outcome::True => 0,
            Outcome::Aborted | Outcome::False => 1,
            Outcome::InternalError => 3,
        }
    }

    fn of_bool(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }
}

/// Command-line values that take precedence over the scenario options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub degree_bound: Option<u64>,
    pub max_depth: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub driver: String,
    pub p: u64,
    pub outcome: Outcome,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    pub scenario: Scenario,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl RunReport {
    fn new(s: &Scenario, outcome: Outcome) -> Self {
        RunReport {
            driver: s.driver.name().to_string(),
            p: s.p,
            outcome,
            exit_code: outcome.exit_code(),
            diagnostic: None,
            scenario: s.clone(),
            resolution: None,
            verification: None,
            result: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs the scenario. `Err` only for input that does not parse; failures of
/// the computation itself are part of the report.
pub fn run_scenario(s: &Scenario, ov: &Overrides) -> Result<RunReport, CliError> {
    s.validate()?;
    let computed = match s.driver {
        Driver::Surface | Driver::Char2 | Driver::ThreefoldCorank1 => resolution(s, ov)?,
        _ => oracle(s, ov)?,
    };
    Ok(match computed {
        Ok(rep) => rep,
        Err(Error::Structural(m)) => {
            let mut rep = RunReport::new(s, Outcome::InternalError);
            rep.diagnostic = Some(m);
            rep
        }
        Err(e) => {
            let mut rep = RunReport::new(s, if s.driver.is_resolution() { Outcome::Aborted } else { Outcome::False });
            rep.diagnostic = Some(e.to_string());
            rep
        }
    })
}

type Computed = Result<RunReport, Error>;

fn resolution(s: &Scenario, ov: &Overrides) -> Result<Computed, CliError> {
    let f = s.foliation()?;
    let mut opts = ResolveOptions::default();
    if let Some(d) = ov.max_depth.or(s.options.max_depth) {
        opts.max_depth = d;
    }
    if let Some(b) = s.options.use_lambda_min {
        opts.use_lambda_min = b;
    }
    if let Some(n) = ov.degree_bound.or(s.options.degree_bound) {
        opts.rees_bound = n;
    }
    let run = match s.driver {
        Driver::Surface => resolve_surface(&f, &opts),
        Driver::Char2 => resolve_char2(&f, &opts),
        _ => resolve_threefold_corank1(&f, &opts),
    };
    Ok(run.map(|report| {
        let verification = verify_resolution(&report);
        let outcome = match &report.status {
            Status::Resolved if verification.ok => Outcome::Resolved,
            Status::Resolved => Outcome::InternalError,
            Status::Aborted { .. } => Outcome::Aborted,
        };
        let mut rep = RunReport::new(s, outcome);
        rep.diagnostic = match (&report.status, outcome) {
            (Status::Aborted { diagnostic }, _) => Some(diagnostic.clone()),
            (_, Outcome::InternalError) => Some(verification.diagnostics.join("; ")),
            _ => None,
        };
        rep.resolution = Some(report);
        rep.verification = Some(verification);
        rep
    }))
}

fn rees_terms(ring: &RingRef, terms: &[ReesTerm]) -> Result<Vec<(Poly, u64)>, CliError> {
    terms
        .iter()
        .map(|t| Ok((Poly::parse(ring, &t.generator)?, t.weight)))
        .collect()
}

fn missing(what: &str) -> CliError {
    CliError::Parse(format!("missing option `{what}`"))
}

fn oracle(s: &Scenario, ov: &Overrides) -> Result<Computed, CliError> {
    let p = s.p;
    let o = &s.options;
    let bound = ov.degree_bound.or(o.degree_bound);
    let computed = match s.driver {
        Driver::Classify => {
            let f = s.foliation()?;
            let points = match &o.points {
                Some(pts) => pts.iter().map(|c| ClosedPoint::new(c, p)).collect(),
                None => match singular_points(&f) {
                    Ok(pts) => pts,
                    Err(e) => return Ok(Err(e)),
                },
            };
            (|| {
                let cls = points
                    .iter()
                    .map(|pt| multiplicative_certificate(&f, pt))
                    .collect::<Result<Vec<_>, _>>()?;
                let ok = cls.iter().all(|c| c.is_regular() || c.is_multiplicative());
                let mut rep = RunReport::new(s, Outcome::of_bool(ok));
                rep.result = Some(json!({ "classifications": cls }));
                Ok(rep)
            })()
        }
        Driver::ConstantsBasis => {
            let f = s.foliation()?;
            let n = bound.unwrap_or(2 * p) as u32;
            constants_basis(&f, n).map(|basis| {
                let mut rep = RunReport::new(s, Outcome::True);
                let basis: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
                rep.result = Some(json!({ "degree_bound": n, "dimension": basis.len(), "basis": basis }));
                rep
            })
        }
        Driver::EuclidRoot => {
            let (a, b) = o.exponents_ab.ok_or_else(|| missing("exponents_ab"))?;
            euclid_root(a, b, p).map(|root| {
                let mut rep = RunReport::new(s, Outcome::of_bool(root.verified));
                rep.result = Some(json!(root));
                rep
            })
        }
        Driver::InvSubringCheck => {
            let subset = o.subset.as_ref().ok_or_else(|| missing("subset"))?;
            let exps = o.exponents.as_ref().ok_or_else(|| missing("exponents"))?;
            let pivot = o.pivot.unwrap_or(subset.first().copied().unwrap_or(0));
            inv_subring_check(p, s.variables.len(), subset, exps, pivot).map(|ok| RunReport::new(s, Outcome::of_bool(ok)))
        }
        Driver::ReesFunctorialityCheck => {
            let m = bound.unwrap_or(3 * p);
            let ring = s.ring()?;
            if let (Some(l), Some(r)) = (&o.left, &o.right) {
                let (l, r) = (rees_terms(&ring, l)?, rees_terms(&ring, r)?);
                (|| {
                    let equal = rees_equal_up_to(&ReesAlgebra::new(l)?, &ReesAlgebra::new(r)?, m)?;
                    let mut rep = RunReport::new(s, Outcome::of_bool(equal));
                    rep.result = Some(json!({ "bound": m, "equal": equal }));
                    Ok(rep)
                })()
            } else {
                let lambda = o.lambda.ok_or_else(|| missing("lambda"))?;
                let xy = Ring::new(p, &["x", "y"])?;
                let parse = |t: &Option<String>| Poly::parse(&xy, t.as_deref().unwrap_or("0"));
                let (f, g) = (parse(&o.f)?, parse(&o.g)?);
                rees_functoriality_check(p, lambda, &f, &g, m).map(|out| {
                    let mut rep = RunReport::new(s, Outcome::of_bool(out.holds()));
                    rep.result = Some(json!({ "bound": m, "outcome": out }));
                    rep
                })
            }
        }
        Driver::LambdaConstancyCheck => {
            let f = s.foliation()?;
            let pts: Vec<ClosedPoint> = o
                .points
                .as_ref()
                .ok_or_else(|| missing("points"))?
                .iter()
                .map(|c| ClosedPoint::new(c, p))
                .collect();
            lambda_constancy_check(&f, &pts).map(|ok| RunReport::new(s, Outcome::of_bool(ok)))
        }
        _ => unreachable!("resolution drivers are dispatched separately"),
    };
    Ok(computed)
}
