//! Decider behavior on the named catalog: the worked examples that the
//! deciders must reproduce, witness soundness, and decider agreement.

use std::sync::Arc;

use selfnorm_core::catalog::{self, CatalogSpec};
use selfnorm_core::classx::{
    bruteforce_verdict, cross_check, is_directly_decomposable, perfect_structural_verdict,
    simple_maximal_reduction_check, structural_verdict, verify_witness, DecideOptions, Route,
};
use selfnorm_core::structure::{
    self, center, derived_subgroup, fitting_subgroup, is_nilpotent, is_soluble,
    lower_central_series, quotient_is_cyclic_prime_power,
};

fn opts() -> DecideOptions {
    DecideOptions::default()
}

#[test]
fn dihedral_membership_depends_on_parity_structure() {
    // order 2n; member exactly when n is odd or a power of two
    for n in 3..=24u32 {
        let g = catalog::dihedral(n).unwrap();
        let expected = n.is_power_of_two() || n % 2 == 1;
        let s = structural_verdict(&g, &opts());
        let b = bruteforce_verdict(&g, &opts()).unwrap();
        assert_eq!(s.member, expected, "structural disagrees on D:{n}");
        assert_eq!(b.member, expected, "bruteforce disagrees on D:{n}");
    }
}

#[test]
fn psl2_8_accepted_by_both_deciders() {
    let g = catalog::psl2(8).unwrap();
    assert_eq!(g.order(), 504);
    let r = cross_check(&g, &opts());
    assert_eq!(r.agreement, Some(true));
    assert!(r.structural.member);
    assert_eq!(r.structural.route, Route::PerfectPsl2 { n: 3 });
}

#[test]
fn sl2_7_and_alt6_and_sym5_rejected_with_verified_witnesses() {
    for (spec, order) in [("SL:2:7", 336usize), ("A:6", 360), ("S:5", 120)] {
        let g = catalog::build_named(&CatalogSpec::parse(spec).unwrap()).unwrap();
        assert_eq!(g.order(), order);
        let b = bruteforce_verdict(&g, &opts()).unwrap();
        assert!(!b.member, "{spec} must be rejected");
        let w = b.witness.expect("witness on rejection");
        assert!(
            verify_witness(&g, &w),
            "witness of {spec} fails re-verification"
        );
        let s = structural_verdict(&g, &opts());
        assert!(!s.member, "structural must reject {spec}");
    }
}

#[test]
fn sl2_3_accepted_and_audited() {
    let g = Arc::new(catalog::sl2(3).unwrap());
    let r = cross_check(&g, &opts());
    assert_eq!(r.agreement, Some(true));
    assert!(r.structural.member);
    let audit = selfnorm_core::classx::closure_audit(&g, &opts()).unwrap();
    assert!(audit.all_pass);
}

#[test]
fn sl2_5_quotient_by_center_is_accepted_alt5() {
    let g = Arc::new(catalog::sl2(5).unwrap());
    let z = center(&g).into_members();
    let q = selfnorm_core::group::quotient_group(&g, &z).unwrap();
    assert_eq!(q.order(), 60);
    let v = bruteforce_verdict(&q, &opts()).unwrap();
    assert!(v.member);
    let a5 = catalog::alternating(5).unwrap();
    assert_eq!(
        selfnorm_core::classx::certified_isomorphic(&q, &a5),
        Some(true)
    );
}

#[test]
fn maximal_reduction_is_consistent_on_the_simple_catalog() {
    for spec in ["A:5", "A:6", "PSL:2:7"] {
        let g = catalog::build_named(&CatalogSpec::parse(spec).unwrap()).unwrap();
        let r = simple_maximal_reduction_check(&g, &opts()).unwrap();
        assert!(r.consistent, "maximal reduction inconsistent on {spec}");
    }
}

#[test]
fn soluble_members_satisfy_the_necessary_conditions() {
    // prime Fitting index, cyclic prime-power abelianization, G' = gamma3
    for spec in ["D:7", "D:9", "D:11", "D:13", "D:15", "SL:2:3", "Dic:3"] {
        let g = catalog::build_named(&CatalogSpec::parse(spec).unwrap()).unwrap();
        if is_nilpotent(&g) || !is_soluble(&g) {
            continue;
        }
        let b = bruteforce_verdict(&g, &opts()).unwrap();
        if !b.member {
            continue;
        }
        let f = fitting_subgroup(&g);
        let index = (g.order() / f.order()) as u64;
        assert_eq!(selfnorm_core::structure::factorize(index).len(), 1);
        assert_eq!(selfnorm_core::structure::factorize(index)[0].1, 1);
        let d = derived_subgroup(&g);
        assert!(quotient_is_cyclic_prime_power(&g, d.members()));
        let lcs = lower_central_series(&g);
        let gamma3 = if lcs.terms.len() > 2 {
            lcs.terms[2].members().to_vec()
        } else {
            lcs.last().members().to_vec()
        };
        assert_eq!(gamma3.as_slice(), d.members(), "{spec}: derived != gamma3");
    }
}

#[test]
fn accepted_non_nilpotent_groups_are_directly_indecomposable() {
    for spec in ["D:7", "D:8", "SL:2:3", "A:5", "SL:2:5", "Dic:3"] {
        let g = catalog::build_named(&CatalogSpec::parse(spec).unwrap()).unwrap();
        let b = bruteforce_verdict(&g, &opts()).unwrap();
        if b.member && !is_nilpotent(&g) {
            assert!(!is_directly_decomposable(&g), "{spec} decomposes");
        }
    }
}

#[test]
fn fitting_quotient_of_sl2_5_is_simple_nonabelian() {
    let g = Arc::new(catalog::sl2(5).unwrap());
    assert!(perfect_structural_verdict(&g, &opts()).unwrap().member);
    let f = fitting_subgroup(&g).into_members();
    assert_eq!(f.len(), 2);
    let q = selfnorm_core::group::quotient_group(&g, &f).unwrap();
    assert!(selfnorm_core::structure::is_simple(&q));
    assert!(!q.is_abelian());
}

#[test]
fn default_catalog_cross_checks_cleanly() {
    for spec in catalog::default_catalog() {
        let g = catalog::build_named(&spec).unwrap();
        let r = cross_check(&g, &opts());
        assert_eq!(
            r.agreement,
            Some(true),
            "decider disagreement on {}",
            spec.render()
        );
    }
}

#[test]
fn sl2_3_maximal_subgroups_are_all_nilpotent() {
    let g = catalog::sl2(3).unwrap();
    let lat = selfnorm_core::lattice::all_subgroups(&g);
    let maximal = lat.maximal_subgroups().unwrap();
    let mut orders: Vec<usize> = maximal.iter().map(|m| m.order()).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![6, 6, 6, 6, 8]);
    for m in &maximal {
        assert!(selfnorm_core::structure::is_nilpotent_handle(&g, m));
    }
}

#[test]
fn nilpotency_sylow_criterion_agrees_on_the_whole_catalog() {
    for spec in catalog::default_catalog() {
        let g = catalog::build_named(&spec).unwrap();
        assert_eq!(
            is_nilpotent(&g),
            selfnorm_core::structure::is_nilpotent_sylow_criterion(&g),
            "criterion mismatch on {}",
            spec.render()
        );
    }
}

#[test]
fn named_constructors_are_deterministic() {
    for spec in catalog::default_catalog() {
        let a = catalog::build_named(&spec).unwrap();
        let b = catalog::build_named(&spec).unwrap();
        assert!(a == b, "two builds of {} differ", spec.render());
        assert_eq!(a.elements(), b.elements());
    }
}

#[test]
fn normalizer_of_a_normal_subgroup_is_the_whole_group() {
    let g = catalog::symmetric(4).unwrap();
    for n in structure::normal_subgroups(&g) {
        let h = selfnorm_core::group::SubgroupHandle::new_unchecked(&g, n.clone());
        assert!(structure::normalizer(&g, &h).is_whole_group());
    }
}

/// Quotients too large for a coset table fall back to coset-representative
/// elements; PSL(2,23) exercises that path.
#[test]
fn psl2_23_uses_the_large_quotient_path() {
    let g = catalog::psl2(23).unwrap();
    assert_eq!(g.order(), 6072);
    assert!(matches!(
        g.representation(),
        selfnorm_core::group::Representation::Quotient { .. }
    ));
    // spot-check the group structure through the representation
    for (a, b) in [(17u32, 2900u32), (5000, 11), (6071, 6071)] {
        let p = g.mul_payload(g.element(a), g.element(b));
        assert_eq!(g.index_of(&p), Some(g.mul(a, b)));
        assert_eq!(g.mul(a, g.inv(a)), 0);
    }
    assert!(structure::is_perfect(&g));
    assert!(structure::is_simple(&g));
    // PSL(2,23) is not in the classified family (23 is odd)
    let v = perfect_structural_verdict(&g, &opts()).unwrap();
    assert!(!v.member);
}

/// The nilpotent fast path in the brute-force decider is an optimization
/// only: with it disabled, the full lattice walk reaches the same verdicts
/// across the whole default catalog.
#[test]
fn unshortcut_bruteforce_agrees_across_the_catalog() {
    let full_path = DecideOptions {
        nilpotent_fast_path: false,
        ..DecideOptions::default()
    };
    for spec in catalog::default_catalog() {
        let g = catalog::build_named(&spec).unwrap();
        let fast = bruteforce_verdict(&g, &opts()).unwrap();
        let slow = bruteforce_verdict(&g, &full_path).unwrap();
        assert_eq!(
            fast.member,
            slow.member,
            "path mismatch on {}",
            spec.render()
        );
        let s = structural_verdict(&g, &opts());
        assert_eq!(
            s.member,
            slow.member,
            "structural mismatch on {}",
            spec.render()
        );
    }
}
