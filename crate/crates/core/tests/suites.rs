use std::collections::BTreeSet;

use seqdual::json;
use seqdual::schema::parse_json;
use seqdual::verify::{registry, run_suite, suite_names, SuiteSpec};

const ENGINE_OPERATIONS: [&str; 22] = [
    "norm",
    "dual_space",
    "conjugate_index",
    "extreme_points",
    "maximize_over_ball",
    "brute_force_sup",
    "maximize_over_seq_ball",
    "class_norm",
    "prefix_norms",
    "coordinate_axiom_check",
    "dual_norm",
    "sup_equality_check",
    "pairing_apply",
    "functional_norm_as_dual_element",
    "coordinate_functionals",
    "bidual_gap",
    "adjoint",
    "apply_elementwise",
    "summing_norm",
    "adjoint_duality_report",
    "reverse_duality_report",
    "second_adjoint_check",
];

#[test]
fn registry_names_and_statements() {
    assert_eq!(
        suite_names(),
        [
            "axioms",
            "class-properties",
            "dual-identities",
            "lemma-2.2",
            "proposition-2.5",
            "theorem-2.8",
            "mid-chain",
            "proposition-3.1",
            "theorem-3.5",
            "theorem-3.6",
            "corollary-3.10",
            "lemma-3.9",
            "ideal",
            "known-values",
            "oracle",
        ]
    );
    for def in registry() {
        assert!(!def.result.is_empty(), "{} has no statement", def.name);
        assert!(
            !def.operations.is_empty(),
            "{} lists no operations",
            def.name
        );
        let spec = SuiteSpec::new(def.name).unwrap();
        spec.validate().unwrap();
    }
}

#[test]
fn suites_cover_every_engine_operation() {
    let used: BTreeSet<&str> = registry()
        .iter()
        .flat_map(|d| d.operations.iter().copied())
        .collect();
    let expected: BTreeSet<&str> = ENGINE_OPERATIONS.into_iter().collect();
    let missing: Vec<_> = expected.difference(&used).collect();
    let unknown: Vec<_> = used.difference(&expected).collect();
    assert!(missing.is_empty(), "not exercised: {missing:?}");
    assert!(unknown.is_empty(), "not engine operations: {unknown:?}");
}

fn assert_passes(name: &str) {
    let report = run_suite(&SuiteSpec::new(name).unwrap()).unwrap();
    let failing: Vec<String> = report
        .records
        .iter()
        .filter(|r| !r.pass())
        .map(|r| json::render(&r.to_json()))
        .collect();
    assert!(failing.is_empty(), "{name}:\n{}", failing.join("\n"));
}

#[test]
fn class_properties_suite() {
    assert_passes("class-properties");
}

#[test]
fn dual_class_properties_suite() {
    assert_passes("proposition-2.5");
}

#[test]
fn mid_chain_suite() {
    assert_passes("mid-chain");
}

#[test]
fn injectivity_suite() {
    assert_passes("lemma-3.9");
}

#[test]
fn ideal_suite() {
    assert_passes("ideal");
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let spec = SuiteSpec::new("theorem-3.5")
        .unwrap()
        .with_trials(2)
        .with_seed(42);
    let a = run_suite(&spec).unwrap().to_json_string();
    let b = run_suite(&spec).unwrap().to_json_string();
    assert_eq!(a, b);
    let parsed = parse_json(&a).unwrap();
    assert_eq!(json::render(&parsed), a);
    assert_eq!(parsed["suite"], "theorem-3.5");
    assert_eq!(parsed["records_total"], 14);

    let other = run_suite(&spec.clone().with_seed(43))
        .unwrap()
        .to_json_string();
    assert_ne!(a, other);
}

#[test]
fn invalid_specs_are_rejected() {
    let mut spec = SuiteSpec::new("axioms").unwrap();
    spec.config.restarts = 0;
    assert!(run_suite(&spec).is_err());
}
