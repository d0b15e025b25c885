use proptest::prelude::*;

use folres::run::{run_scenario, Outcome, Overrides};
use folres::scenario::{Driver, Options, Scenario};

fn poly_string() -> impl Strategy<Value = String> {
    prop::collection::vec((0i64..7, 0u32..3, 0u32..3), 0..4).prop_map(|terms| {
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|(c, a, b)| format!("{c}*x^{a}*y^{b}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (
        prop::sample::select(vec![2u64, 3, 5, 7]),
        prop::collection::vec(prop::collection::vec(poly_string(), 2), 1..3),
        prop::option::of(1usize..5),
        prop::option::of(1u64..12),
        prop::sample::select(vec![Driver::Surface, Driver::Classify, Driver::ConstantsBasis]),
    )
        .prop_map(|(p, generators, max_depth, degree_bound, driver)| Scenario {
            p,
            variables: vec!["x".into(), "y".into()],
            generators,
            relations: Vec::new(),
            driver,
            options: Options {
                max_depth,
                degree_bound,
                ..Options::default()
            },
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scenarios_round_trip(s in scenario()) {
        let back = Scenario::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exit_code_follows_outcome(p in prop::sample::select(vec![3u64, 5, 7]), l in 1i64..7, depth in 0usize..3) {
        let s = Scenario {
            p,
            variables: vec!["x".into(), "y".into()],
            generators: vec![vec!["x".into(), format!("{l}*y")]],
            relations: Vec::new(),
            driver: Driver::Surface,
            options: Options::default(),
        };
        let rep = run_scenario(&s, &Overrides { degree_bound: None, max_depth: Some(depth) }).unwrap();
        prop_assert_eq!(rep.exit_code, rep.outcome.exit_code());
        let expected = match rep.outcome {
            Outcome::Resolved | Outcome::True => 0,
            Outcome::Aborted | Outcome::False => 1,
            Outcome::InternalError => 3,
        };
        prop_assert_eq!(rep.exit_code, expected);
        if l % p as i64 == 0 {
            // x∂x: already regular after saturation
            prop_assert_eq!(rep.outcome, Outcome::Resolved);
        }
    }
}
