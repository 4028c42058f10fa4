//! The top-level membership deciders and their cross-check harness.
//!
//! A group is a member when every non-nilpotent subgroup equals its own
//! normalizer. [`bruteforce_verdict`] decides this from the definition by
//! walking subgroup-class representatives of the lattice;
//! [`structural_verdict`] decides it from structure alone (nilpotent,
//! soluble-split or classified-perfect). The two routes are independent and
//! are meant to agree; [`cross_check`] fails loudly when they do not.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::catalog;
use crate::group::{quotient_group, FiniteGroup, SubgroupHandle};
use crate::lattice::{all_subgroups_with, LatticeBudget};
use crate::star::{soluble_structural_verdict, Splitting};
use crate::structure::{
    conjugacy_classes, is_nilpotent, is_nilpotent_handle, is_perfect, is_simple, normal_subgroups,
    normalizer,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecideError {
    /// Budget refusals: distinct from a false verdict.
    Refused {
        reason: String,
    },
    Usage {
        reason: String,
    },
}

impl core::fmt::Display for DecideError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DecideError::Refused { reason } => write!(f, "refused to certify: {reason}"),
            DecideError::Usage { reason } => write!(f, "usage error: {reason}"),
        }
    }
}

impl core::error::Error for DecideError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    Bruteforce,
    Nilpotent,
    SolubleSplit,
    PerfectPsl2 { n: u32 },
    PerfectSl25,
    RejectedFilter(&'static str),
}

impl Route {
    pub fn name(&self) -> String {
        match self {
            Route::Bruteforce => "bruteforce".to_string(),
            Route::Nilpotent => "nilpotent".to_string(),
            Route::SolubleSplit => "soluble_split".to_string(),
            Route::PerfectPsl2 { n } => format!("perfect_psl2(n={n})"),
            Route::PerfectSl25 => "perfect_sl25".to_string(),
            Route::RejectedFilter(name) => format!("rejected_filter({name})"),
        }
    }
}

/// A non-nilpotent subgroup with strictly larger normalizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub members: Vec<u32>,
    pub order: u64,
    pub normalizer_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSummary {
    pub holds: bool,
    pub checked: u64,
    pub violator: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintEvidence {
    pub reference: String,
    /// Outcome of the generator-mapping isomorphism search when enabled
    /// (orders <= 200 only).
    pub certified: Option<bool>,
}

/// Membership decision with a machine-checkable rationale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub route: Route,
    pub witness: Option<Witness>,
    pub splitting: Option<Splitting>,
    pub star: Option<StarSummary>,
    pub fingerprint_match: Option<FingerprintEvidence>,
}

impl Verdict {
    pub fn accept(route: Route) -> Self {
        Verdict {
            member: true,
            route,
            witness: None,
            splitting: None,
            star: None,
            fingerprint_match: None,
        }
    }

    pub fn reject_filter(name: &'static str) -> Self {
        Verdict {
            member: false,
            route: Route::RejectedFilter(name),
            witness: None,
            splitting: None,
            star: None,
            fingerprint_match: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub budget: LatticeBudget,
    /// Accept nilpotent groups without enumerating the lattice (subgroups
    /// of nilpotent groups are nilpotent, so the quantifier is vacuous).
    /// Disabled in tests that exercise the unshortcut path.
    pub nilpotent_fast_path: bool,
    /// Certify fingerprint matches by a generator-mapping search (orders
    /// <= 200).
    pub slow_iso: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            budget: LatticeBudget::default(),
            nilpotent_fast_path: true,
            slow_iso: false,
        }
    }
}

/// Decides membership from the definition: every non-nilpotent
/// subgroup-class representative must be self-normalizing (normalizers are
/// conjugation-equivariant, so representatives suffice). Refuses when the
/// lattice cannot be enumerated exactly within budget.
pub fn bruteforce_verdict(g: &FiniteGroup, opts: &DecideOptions) -> Result<Verdict, DecideError> {
    if opts.nilpotent_fast_path && is_nilpotent(g) {
        return Ok(Verdict::accept(Route::Bruteforce));
    }
    let lat = all_subgroups_with(g, opts.budget);
    if !lat.is_exact() {
        return Err(DecideError::Refused {
            reason: format!(
                "subgroup lattice of order-{} group exceeds budget (max order {}, max joins {})",
                g.order(),
                opts.budget.max_order,
                opts.budget.max_joins
            ),
        });
    }
    for (rep, _) in lat.class_reps() {
        if is_nilpotent_handle(g, &rep) {
            continue;
        }
        let norm = normalizer(g, &rep);
        if norm.order() > rep.order() {
            return Ok(Verdict {
                member: false,
                route: Route::Bruteforce,
                witness: Some(Witness {
                    members: rep.members().to_vec(),
                    order: rep.order() as u64,
                    normalizer_order: norm.order() as u64,
                }),
                splitting: None,
                star: None,
                fingerprint_match: None,
            });
        }
    }
    Ok(Verdict::accept(Route::Bruteforce))
}

/// Re-verifies a rejection witness from scratch: the member set is a
/// subgroup, non-nilpotent, with strictly larger normalizer.
pub fn verify_witness(g: &FiniteGroup, witness: &Witness) -> bool {
    let Ok(h) = SubgroupHandle::new(g, witness.members.clone()) else {
        return false;
    };
    if is_nilpotent_handle(g, &h) {
        return false;
    }
    let norm = normalizer(g, &h);
    norm.order() as u64 == witness.normalizer_order && norm.order() > h.order()
}

/// Element-order histogram as sorted (order, count) pairs.
pub fn order_histogram(g: &FiniteGroup) -> Vec<(u64, u64)> {
    let mut counts: alloc::collections::BTreeMap<u64, u64> = alloc::collections::BTreeMap::new();
    for i in 0..g.order() as u32 {
        *counts.entry(g.order_of_index(i) as u64).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

/// Isomorphism-invariant fingerprint. Equal fingerprints certify nothing by
/// themselves (the converse is a documented heuristic backed by the
/// optional certified search); distinct fingerprints separate groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: u64,
    pub class_sizes: Vec<u64>,
    pub order_histogram: Vec<(u64, u64)>,
    pub is_simple: bool,
    pub is_perfect: bool,
}

pub fn fingerprint(g: &FiniteGroup) -> GroupFingerprint {
    let mut class_sizes: Vec<u64> = conjugacy_classes(g)
        .iter()
        .map(|c| c.len() as u64)
        .collect();
    class_sizes.sort_unstable();
    GroupFingerprint {
        order: g.order() as u64,
        class_sizes,
        order_histogram: order_histogram(g),
        is_simple: is_simple(g),
        is_perfect: is_perfect(g),
    }
}

/// Generator-mapping isomorphism search for orders <= 200; `None` above
/// that bound. Candidates are pruned by (element order, class size) and
/// partial maps are extended multiplicatively with full consistency checks,
/// so a returned `true` is a certificate.
pub fn certified_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<bool> {
    if a.order() != b.order() {
        return Some(false);
    }
    let n = a.order();
    if n > 200 {
        return None;
    }
    if fingerprint(a) != fingerprint(b) {
        return Some(false);
    }
    let inv_a = element_invariants(a);
    let inv_b = element_invariants(b);
    let gens = a.generators().to_vec();
    let cands: Vec<Vec<u32>> = gens
        .iter()
        .map(|&ga| {
            (0..n as u32)
                .filter(|&x| inv_b[x as usize] == inv_a[ga as usize])
                .collect()
        })
        .collect();
    let mut images = alloc::vec![0u32; gens.len()];
    Some(search_iso(a, b, &gens, &cands, 0, &mut images))
}

fn element_invariants(g: &FiniteGroup) -> Vec<(u32, u32)> {
    let mut inv = alloc::vec![(0u32, 0u32); g.order()];
    for class in conjugacy_classes(g) {
        for &m in class {
            inv[m as usize] = (g.order_of_index(m), class.len() as u32);
        }
    }
    inv
}

fn search_iso(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[u32],
    cands: &[Vec<u32>],
    level: usize,
    images: &mut [u32],
) -> bool {
    if level == gens.len() {
        return extend_hom(a, b, gens, images);
    }
    for &c in &cands[level] {
        images[level] = c;
        if extend_hom(a, b, &gens[..=level], &images[..=level])
            && search_iso(a, b, gens, cands, level + 1, images)
        {
            return true;
        }
    }
    false
}

/// Propagates a partial map on generator images across the generated
/// subgroup, checking multiplicative consistency and injectivity; on the
/// final level success means a full isomorphism.
fn extend_hom(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], images: &[u32]) -> bool {
    let n = a.order();
    let mut map = alloc::vec![u32::MAX; n];
    let mut used = alloc::vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue: Vec<u32> = alloc::vec![0];
    let mut qi = 0;
    while qi < queue.len() {
        let u = queue[qi];
        qi += 1;
        for (&ga, &gb) in gens.iter().zip(images) {
            let w = a.mul(u, ga);
            let bw = b.mul(map[u as usize], gb);
            let cur = map[w as usize];
            if cur == u32::MAX {
                if used[bw as usize] {
                    return false;
                }
                map[w as usize] = bw;
                used[bw as usize] = true;
                queue.push(w);
            } else if cur != bw {
                return false;
            }
        }
    }
    true
}

fn mersenne_scan(order: u64) -> Option<u32> {
    for n in 2..=13u32 {
        let q = 1u64 << n;
        if crate::gf::is_prime((q - 1) as u32) && order == q * (q - 1) * (q + 1) {
            return Some(n);
        }
    }
    None
}

/// Classifies a perfect group: simple groups must match a reference
/// PSL(2, 2^n) with 2^n - 1 prime; non-simple ones must match SL(2, 5).
pub fn perfect_structural_verdict(
    g: &FiniteGroup,
    opts: &DecideOptions,
) -> Result<Verdict, DecideError> {
    if g.order() == 1 || !is_perfect(g) {
        return Err(DecideError::Usage {
            reason: String::from("perfect classifier expects a non-trivial perfect group"),
        });
    }
    let certify = |reference: &FiniteGroup| -> Option<bool> {
        if opts.slow_iso {
            certified_isomorphic(g, reference)
        } else {
            None
        }
    };
    if is_simple(g) {
        let Some(n) = mersenne_scan(g.order() as u64) else {
            return Ok(Verdict::reject_filter("perfect-classification"));
        };
        let reference = catalog::psl2(1 << n).map_err(|e| DecideError::Refused {
            reason: format!("cannot construct the reference group: {e}"),
        })?;
        if fingerprint(g) == fingerprint(&reference) {
            let mut v = Verdict::accept(Route::PerfectPsl2 { n });
            v.fingerprint_match = Some(FingerprintEvidence {
                reference: format!("PSL:2:{}", 1u32 << n),
                certified: certify(&reference),
            });
            Ok(v)
        } else {
            Ok(Verdict::reject_filter("perfect-classification"))
        }
    } else {
        if g.order() != 120 {
            return Ok(Verdict::reject_filter("perfect-classification"));
        }
        let reference = catalog::sl2(5).map_err(|e| DecideError::Refused {
            reason: format!("cannot construct the reference group: {e}"),
        })?;
        if fingerprint(g) == fingerprint(&reference) {
            let mut v = Verdict::accept(Route::PerfectSl25);
            v.fingerprint_match = Some(FingerprintEvidence {
                reference: String::from("SL:2:5"),
                certified: certify(&reference),
            });
            Ok(v)
        } else {
            Ok(Verdict::reject_filter("perfect-classification"))
        }
    }
}

/// Structural decision tree: nilpotent groups are members; perfect groups
/// go to the perfect classifier; groups that are neither perfect nor have a
/// nilpotent derived subgroup are rejected outright; the rest are soluble
/// non-nilpotent and go to the splitting check.
pub fn structural_verdict(g: &FiniteGroup, opts: &DecideOptions) -> Verdict {
    if is_nilpotent(g) {
        return Verdict::accept(Route::Nilpotent);
    }
    if is_perfect(g) {
        return perfect_structural_verdict(g, opts)
            .expect("perfectness was checked before dispatch");
    }
    let derived = crate::structure::derived_subgroup(g);
    if !is_nilpotent_handle(g, &derived) {
        return Verdict::reject_filter("perfect-or-soluble");
    }
    soluble_structural_verdict(g).expect("group is soluble non-nilpotent by the guards above")
}

/// Both deciders side by side.
#[derive(Debug, Clone)]
pub struct CrossReport {
    pub structural: Verdict,
    pub bruteforce: Result<Verdict, DecideError>,
    /// `Some(true)` on agreement, `Some(false)` on loud disagreement,
    /// `None` when brute force refused.
    pub agreement: Option<bool>,
}

impl CrossReport {
    pub fn is_disagreement(&self) -> bool {
        self.agreement == Some(false)
    }
}

pub fn cross_check(g: &FiniteGroup, opts: &DecideOptions) -> CrossReport {
    let structural = structural_verdict(g, opts);
    let bruteforce = bruteforce_verdict(g, opts);
    let agreement = match &bruteforce {
        Ok(b) => Some(b.member == structural.member),
        Err(_) => None,
    };
    CrossReport {
        structural,
        bruteforce,
        agreement,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub kind: &'static str,
    pub order: u64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureAuditReport {
    pub entries: Vec<AuditEntry>,
    pub all_pass: bool,
}

/// For an accepted group, re-runs the brute-force decider on every
/// subgroup-class representative and every quotient.
pub fn closure_audit(
    g: &Arc<FiniteGroup>,
    opts: &DecideOptions,
) -> Result<ClosureAuditReport, DecideError> {
    let own = bruteforce_verdict(g, opts)?;
    if !own.member {
        return Err(DecideError::Usage {
            reason: String::from("closure audit expects an accepted group"),
        });
    }
    let lat = all_subgroups_with(g, opts.budget);
    if !lat.is_exact() {
        return Err(DecideError::Refused {
            reason: String::from("closure audit needs the exact lattice"),
        });
    }
    let mut entries = Vec::new();
    for (rep, _) in lat.class_reps() {
        let sub = rep.materialize();
        let v = bruteforce_verdict(&sub, opts)?;
        entries.push(AuditEntry {
            kind: "subgroup-class",
            order: sub.order() as u64,
            accepted: v.member,
        });
    }
    for n in normal_subgroups(g) {
        let q = quotient_group(g, n).map_err(|e| DecideError::Usage {
            reason: format!("quotient construction failed: {e}"),
        })?;
        let v = bruteforce_verdict(&q, opts)?;
        entries.push(AuditEntry {
            kind: "quotient",
            order: q.order() as u64,
            accepted: v.member,
        });
    }
    let all_pass = entries.iter().all(|e| e.accepted);
    Ok(ClosureAuditReport { entries, all_pass })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalReductionReport {
    pub group_member: bool,
    /// (order, member) per maximal subgroup, canonical order.
    pub maximal: Vec<(u64, bool)>,
    /// The biconditional: member iff all maximal subgroups are members.
    pub consistent: bool,
}

/// Verifies, for a simple group, that membership is equivalent to all
/// maximal subgroups being members.
pub fn simple_maximal_reduction_check(
    g: &FiniteGroup,
    opts: &DecideOptions,
) -> Result<MaximalReductionReport, DecideError> {
    if !is_simple(g) {
        return Err(DecideError::Usage {
            reason: String::from("maximal reduction applies to simple groups"),
        });
    }
    let group_member = bruteforce_verdict(g, opts)?.member;
    let lat = all_subgroups_with(g, opts.budget);
    let maximal_handles = lat.maximal_subgroups().map_err(|e| DecideError::Refused {
        reason: format!("{e}"),
    })?;
    let mut maximal = Vec::new();
    let mut all_member = true;
    for m in maximal_handles {
        let sub = m.materialize();
        let v = bruteforce_verdict(&sub, opts)?;
        all_member &= v.member;
        maximal.push((sub.order() as u64, v.member));
    }
    Ok(MaximalReductionReport {
        group_member,
        maximal,
        consistent: group_member == all_member,
    })
}

/// True when two non-trivial normal subgroups intersect trivially and
/// jointly cover the group (a direct decomposition).
pub fn is_directly_decomposable(g: &FiniteGroup) -> bool {
    let normals = normal_subgroups(g);
    let n = g.order();
    for (i, a) in normals.iter().enumerate() {
        if a.len() == 1 || a.len() == n {
            continue;
        }
        for b in normals.iter().skip(i + 1) {
            if b.len() == 1 || b.len() == n {
                continue;
            }
            if a.len() * b.len() == n {
                let trivial_meet = a.iter().filter(|x| b.binary_search(x).is_ok()).count() == 1;
                if trivial_meet {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn opts() -> DecideOptions {
        DecideOptions::default()
    }

    fn no_shortcut() -> DecideOptions {
        DecideOptions {
            nilpotent_fast_path: false,
            ..DecideOptions::default()
        }
    }

    #[test]
    fn nilpotent_groups_are_members_vacuously() {
        for g in [
            catalog::cyclic(12).unwrap(),
            catalog::dihedral(4).unwrap(),
            catalog::dicyclic(2).unwrap(),
        ] {
            let v = bruteforce_verdict(&g, &opts()).unwrap();
            assert!(v.member);
            // the unshortcut path agrees
            let v2 = bruteforce_verdict(&g, &no_shortcut()).unwrap();
            assert!(v2.member);
        }
    }

    #[test]
    fn sym4_is_rejected_with_alt4_witness() {
        let s4 = catalog::symmetric(4).unwrap();
        let v = bruteforce_verdict(&s4, &opts()).unwrap();
        assert!(!v.member);
        let w = v.witness.expect("rejection carries a witness");
        assert_eq!(w.order, 12);
        assert_eq!(w.normalizer_order, 24);
        assert!(verify_witness(&s4, &w));
    }

    #[test]
    fn refusal_on_budget() {
        let g = catalog::symmetric(5).unwrap();
        let tight = DecideOptions {
            budget: LatticeBudget {
                max_order: 50,
                max_joins: 10,
            },
            nilpotent_fast_path: true,
            slow_iso: false,
        };
        assert!(matches!(
            bruteforce_verdict(&g, &tight),
            Err(DecideError::Refused { .. })
        ));
    }

    #[test]
    fn perfect_classifier_accepts_the_two_families() {
        let a5 = catalog::alternating(5).unwrap();
        let v = perfect_structural_verdict(&a5, &opts()).unwrap();
        assert!(v.member);
        assert_eq!(v.route, Route::PerfectPsl2 { n: 2 });

        let sl25 = catalog::sl2(5).unwrap();
        let v = perfect_structural_verdict(&sl25, &opts()).unwrap();
        assert!(v.member);
        assert_eq!(v.route, Route::PerfectSl25);

        // certified path
        let certifying = DecideOptions {
            slow_iso: true,
            ..opts()
        };
        let v = perfect_structural_verdict(&a5, &certifying).unwrap();
        assert_eq!(v.fingerprint_match.unwrap().certified, Some(true));
        let v = perfect_structural_verdict(&sl25, &certifying).unwrap();
        assert_eq!(v.fingerprint_match.unwrap().certified, Some(true));
    }

    #[test]
    fn psl2_7_is_rejected_by_both_deciders() {
        let g = catalog::psl2(7).unwrap();
        assert_eq!(g.order(), 168);
        let v = perfect_structural_verdict(&g, &opts()).unwrap();
        assert!(!v.member);
        let b = bruteforce_verdict(&g, &opts()).unwrap();
        assert!(!b.member);
        assert!(verify_witness(&g, &b.witness.unwrap()));
    }

    #[test]
    fn perfect_classifier_usage_error() {
        let s4 = catalog::symmetric(4).unwrap();
        assert!(perfect_structural_verdict(&s4, &opts()).is_err());
    }

    #[test]
    fn structural_decision_tree() {
        let c12 = catalog::cyclic(12).unwrap();
        assert_eq!(structural_verdict(&c12, &opts()).route, Route::Nilpotent);

        let d9 = catalog::dihedral(9).unwrap();
        let v = structural_verdict(&d9, &opts());
        assert!(v.member);
        assert_eq!(v.route, Route::SolubleSplit);

        let s5 = catalog::symmetric(5).unwrap();
        let v = structural_verdict(&s5, &opts());
        assert!(!v.member);
        assert_eq!(v.route, Route::RejectedFilter("perfect-or-soluble"));
    }

    #[test]
    fn cross_check_agreement_on_small_catalog() {
        for spec in ["C:6", "D:7", "D:12", "S:3", "S:4", "A:4", "Q:8", "SL:2:3"] {
            let g = catalog::build_named(&catalog::CatalogSpec::parse(spec).unwrap()).unwrap();
            let r = cross_check(&g, &opts());
            assert_eq!(r.agreement, Some(true), "disagreement on {spec}");
        }
    }

    #[test]
    fn fingerprints_separate_nonisomorphic_groups() {
        let c4 = catalog::cyclic(4).unwrap();
        let v4 = catalog::abelian(&[2, 2]).unwrap();
        assert_ne!(fingerprint(&c4), fingerprint(&v4));

        let d6 = catalog::dihedral(6).unwrap();
        let dic3 = catalog::dicyclic(3).unwrap();
        assert_ne!(fingerprint(&d6), fingerprint(&dic3));
    }

    #[test]
    fn certified_isomorphism_examples() {
        let a5 = catalog::alternating(5).unwrap();
        let psl24 = catalog::psl2(4).unwrap();
        assert_eq!(certified_isomorphic(&a5, &psl24), Some(true));

        let s3 = catalog::symmetric(3).unwrap();
        let c6 = catalog::cyclic(6).unwrap();
        assert_eq!(certified_isomorphic(&s3, &c6), Some(false));

        let sl23 = catalog::sl2(3).unwrap();
        let q8 = alloc::sync::Arc::new(catalog::dicyclic(2).unwrap());
        let tri = catalog::quaternion_triality(&q8);
        let g = crate::group::semidirect_product(&q8, 3, &tri).unwrap();
        assert_eq!(certified_isomorphic(&g, &sl23), Some(true));

        let big = catalog::psl2(8).unwrap();
        assert_eq!(certified_isomorphic(&big, &big), None);
    }

    #[test]
    fn closure_audit_of_sl2_3() {
        let g = Arc::new(catalog::sl2(3).unwrap());
        let report = closure_audit(&g, &opts()).unwrap();
        assert!(report.all_pass);
        // subgroup classes plus quotients by 1, center, Q8, G
        assert!(report
            .entries
            .iter()
            .any(|e| e.kind == "quotient" && e.order == 3));
    }

    #[test]
    fn closure_audit_rejects_non_members() {
        let g = Arc::new(catalog::symmetric(4).unwrap());
        assert!(matches!(
            closure_audit(&g, &opts()),
            Err(DecideError::Usage { .. })
        ));
    }

    #[test]
    fn maximal_reduction_on_alt5() {
        let a5 = catalog::alternating(5).unwrap();
        let r = simple_maximal_reduction_check(&a5, &opts()).unwrap();
        assert!(r.group_member);
        assert!(r.consistent);
        assert!(r.maximal.iter().all(|&(_, m)| m));
        let mut orders: Vec<u64> = r.maximal.iter().map(|&(o, _)| o).collect();
        orders.sort_unstable();
        orders.dedup();
        assert_eq!(orders, vec![6, 10, 12]);
    }

    #[test]
    fn direct_decomposability() {
        let c6 = catalog::cyclic(6).unwrap();
        assert!(is_directly_decomposable(&c6)); // C2 x C3
        let d4 = catalog::dihedral(4).unwrap();
        assert!(!is_directly_decomposable(&d4));
        let s3 = catalog::symmetric(3).unwrap();
        assert!(!is_directly_decomposable(&s3));
    }

    #[test]
    fn verdicts_are_deterministic() {
        let g1 = catalog::symmetric(4).unwrap();
        let g2 = catalog::symmetric(4).unwrap();
        let v1 = bruteforce_verdict(&g1, &opts()).unwrap();
        let v2 = bruteforce_verdict(&g2, &opts()).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(
            structural_verdict(&g1, &opts()),
            structural_verdict(&g2, &opts())
        );
    }
}
