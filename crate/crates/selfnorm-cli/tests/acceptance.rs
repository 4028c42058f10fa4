//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The heavyweight semidirect sweep is computed once and shared between the
//! criteria that consume it (oracle equivalence, the property suite,
//! and the soluble necessary conditions).

use std::sync::{Arc, LazyLock};
use std::time::{Duration, Instant};

use selfnorm_cli::report::normalize_timings;
use selfnorm_cli::run::RunConfig;
use selfnorm_cli::sweep::{
    catalog_property_triples, crosscheck_catalog, property_suite_failures, proposition_sweep,
    soluble_conditions_ok, sweep_family, SweepProductOutcome,
};
use selfnorm_core::catalog::{self, CatalogSpec};
use selfnorm_core::classx::{
    bruteforce_verdict, closure_audit, cross_check, simple_maximal_reduction_check, verify_witness,
    DecideOptions, Route,
};
use selfnorm_core::group::{semidirect_parts, SubgroupHandle};
use selfnorm_core::star::star_check;

const SWEEP_ORDER_MAX: u64 = 64;
const SWEEP_PRIMES: [u32; 4] = [2, 3, 5, 7];
const SWEEP_ACTION_CAP: usize = 500;
const SWEEP_SEED: u64 = 1;

static SWEEP: LazyLock<Vec<SweepProductOutcome>> = LazyLock::new(|| {
    proposition_sweep(
        SWEEP_ORDER_MAX,
        &SWEEP_PRIMES,
        SWEEP_ACTION_CAP,
        SWEEP_SEED,
        2,
    )
});

fn opts() -> DecideOptions {
    DecideOptions::default()
}

fn build(spec: &str) -> selfnorm_core::FiniteGroup {
    catalog::build_named(&CatalogSpec::parse(spec).unwrap()).unwrap()
}

/// Dihedral groups of order 2n for n = 3..=64: membership exactly when n is
/// odd or a power of two, decided identically by both deciders.
#[test]
fn criterion_1_dihedral_reproduction() {
    let started = Instant::now();
    for n in 3..=64u32 {
        let g = catalog::dihedral(n).unwrap();
        let expected = n % 2 == 1 || n.is_power_of_two();
        let r = cross_check(&g, &opts());
        let b = r.bruteforce.as_ref().expect("within budget");
        assert_eq!(
            r.structural.member, expected,
            "structural disagrees on D:{n}"
        );
        assert_eq!(b.member, expected, "bruteforce disagrees on D:{n}");
        assert_eq!(r.agreement, Some(true), "deciders disagree on D:{n}");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "took {elapsed:?}, expected < 60 s"
    );
    println!("criterion 1 (dihedral reproduction, n = 3..64): PASS in {elapsed:?}");
}

/// Perfect classification: the two accepted families, four rejected
/// non-members with re-verified witnesses, full decider agreement.
#[test]
fn criterion_2_perfect_classification() {
    let started = Instant::now();
    let accepted = [
        ("A:5", 60),
        ("PSL:2:4", 60),
        ("PSL:2:8", 504),
        ("SL:2:5", 120),
    ];
    for (spec, order) in accepted {
        let g = build(spec);
        assert_eq!(g.order(), order);
        let r = cross_check(&g, &opts());
        assert!(r.structural.member, "{spec} must be accepted structurally");
        assert_eq!(r.agreement, Some(true), "{spec} not cross-certified");
        match (spec, &r.structural.route) {
            ("SL:2:5", Route::PerfectSl25) => {}
            ("SL:2:5", other) => panic!("SL:2:5 routed via {other:?}"),
            ("PSL:2:8", Route::PerfectPsl2 { n: 3 }) => {}
            ("PSL:2:8", other) => panic!("PSL:2:8 routed via {other:?}"),
            _ => {}
        }
    }
    let rejected = ["PSL:2:7", "SL:2:7", "A:6", "S:5"];
    for spec in rejected {
        let g = build(spec);
        let r = cross_check(&g, &opts());
        assert!(!r.structural.member, "{spec} must be rejected structurally");
        let b = r.bruteforce.as_ref().expect("within budget");
        assert!(!b.member, "{spec} must be rejected by brute force");
        assert_eq!(r.agreement, Some(true), "{spec} not cross-certified");
        let w = b
            .witness
            .as_ref()
            .expect("brute-force rejection carries a witness");
        assert!(
            verify_witness(&g, w),
            "witness of {spec} fails re-verification"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(600));
    println!("criterion 2 (perfect classification): PASS in {elapsed:?}");
}

/// Oracle equivalence over the exhaustive semidirect sweep: the star
/// property of the action decides membership exactly as brute force does.
#[test]
fn criterion_3_oracle_equivalence_sweep() {
    let started = Instant::now();
    let outcomes = &*SWEEP;
    assert!(
        outcomes.len() > 5000,
        "sweep unexpectedly small: {}",
        outcomes.len()
    );
    let mut mismatches = Vec::new();
    for o in outcomes.iter() {
        if o.star_holds != o.bruteforce_member {
            mismatches.push(o.label.clone());
        }
    }
    assert!(mismatches.is_empty(), "oracle mismatches: {mismatches:?}");
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(900),
        "took {elapsed:?}, expected <= 15 min"
    );
    println!(
        "criterion 3 (oracle equivalence, {} products, zero exceptions): PASS in {elapsed:?}",
        outcomes.len()
    );
}

/// The property-property suite holds on every sweep product and on the named
/// catalog triples.
#[test]
fn criterion_4_property_suite() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for o in SWEEP.iter() {
        for f in &o.property_failures {
            failures.push(format!("{}: {f}", o.label));
        }
    }
    for (g, name) in catalog_property_triples(16) {
        let parts = semidirect_parts(&g).unwrap();
        let h = SubgroupHandle::new_unchecked(&g, parts.base_members.clone());
        let star = star_check(&g, parts.acting_index, &h).unwrap();
        let bf = bruteforce_verdict(&g, &opts()).unwrap();
        assert_eq!(star.holds, bf.member, "oracle mismatch on {name}");
        let p = g.order_of_index(parts.acting_index);
        for f in property_suite_failures(&g, parts.acting_index, &h, &star, bf.member, p) {
            failures.push(format!("{name}: {f}"));
        }
    }
    assert!(failures.is_empty(), "property failures: {failures:?}");
    println!(
        "criterion 4 (property suite over sweep + catalog): PASS in {:?}",
        started.elapsed()
    );
}

/// Every accepted soluble non-nilpotent group satisfies the necessary
/// conditions: prime Fitting index, cyclic prime-power abelianization, and
/// derived subgroup equal to the third lower-central term.
#[test]
fn criterion_5_soluble_necessary_conditions() {
    let started = Instant::now();
    let bad: Vec<String> = SWEEP
        .iter()
        .filter(|o| !o.soluble_conditions_ok)
        .map(|o| o.label.clone())
        .collect();
    assert!(
        bad.is_empty(),
        "sweep members violating the conditions: {bad:?}"
    );
    // named catalog too
    for spec in catalog::default_catalog() {
        let g = catalog::build_named(&spec).unwrap();
        let member = bruteforce_verdict(&g, &opts()).unwrap().member;
        assert!(
            soluble_conditions_ok(&g, member),
            "{} violates the soluble necessary conditions",
            spec.render()
        );
    }
    println!(
        "criterion 5 (soluble necessary conditions): PASS in {:?}",
        started.elapsed()
    );
}

/// Membership is inherited by subgroups and quotients on the named members.
#[test]
fn criterion_6_closure_audit() {
    let started = Instant::now();
    let mut specs = vec!["SL:2:3".to_string(), "SL:2:5".into(), "A:5".into()];
    for k in 1..=5u32 {
        specs.push(format!("D:{}", 1 << k));
    }
    for n in (3..=15u32).step_by(2) {
        specs.push(format!("D:{n}"));
    }
    for spec in &specs {
        let g = Arc::new(build(spec));
        let report = closure_audit(&g, &opts()).unwrap();
        assert!(
            report.all_pass,
            "{spec}: some subgroup or quotient re-check failed: {:?}",
            report
                .entries
                .iter()
                .filter(|e| !e.accepted)
                .collect::<Vec<_>>()
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "took {elapsed:?}, expected <= 5 min"
    );
    println!(
        "criterion 6 (closure audit over {} groups): PASS in {elapsed:?}",
        specs.len()
    );
}

/// For simple groups, membership is equivalent to all maximal subgroups
/// being members.
#[test]
fn criterion_7_maximal_reduction() {
    let started = Instant::now();
    for spec in ["A:5", "A:6", "PSL:2:7", "PSL:2:8"] {
        let g = build(spec);
        let r = simple_maximal_reduction_check(&g, &opts()).unwrap();
        assert!(r.consistent, "{spec}: biconditional fails: {r:?}");
    }
    println!(
        "criterion 7 (maximal-subgroup reduction): PASS in {:?}",
        started.elapsed()
    );
}

/// Two full runs produce byte-identical reports modulo timing fields, at
/// worker counts 1 and 4.
#[test]
fn criterion_8_determinism() {
    let started = Instant::now();
    let run_all = |parallel: usize| -> String {
        let cfg = RunConfig {
            parallel,
            seed: 7,
            ..RunConfig::default()
        };
        let (docs, all_agree) = crosscheck_catalog(&cfg);
        assert!(all_agree);
        let catalog_json = serde_json::to_string_pretty(&docs).unwrap();
        let (rows, dis) = sweep_family("D", (3, 32), &cfg).unwrap();
        assert!(!dis);
        let dihedral_json = selfnorm_cli::sweep::rows_to_json(&rows);
        let (rows, dis) = selfnorm_cli::sweep::sweep_sd_random(32, 40, &cfg);
        assert!(!dis);
        let random_json = selfnorm_cli::sweep::rows_to_json(&rows);
        normalize_timings(&catalog_json)
            + &normalize_timings(&dihedral_json)
            + &normalize_timings(&random_json)
    };
    let serial_one = run_all(1);
    let serial_two = run_all(1);
    let parallel_four = run_all(4);
    assert_eq!(serial_one, serial_two, "two serial runs differ");
    assert_eq!(
        serial_one, parallel_four,
        "parallel run differs from serial"
    );
    println!(
        "criterion 8 (byte-identical reports at -p1/-p4): PASS in {:?}",
        started.elapsed()
    );
}
