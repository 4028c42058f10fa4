//! Multi-group drivers: family sweeps, the seeded random semidirect sweep,
//! the default-catalog cross-check, and the exhaustive semidirect sweep
//! shared with the acceptance suite (products `C_p x| A` over all abelian
//! types with order-p actions).
//!
//! Work fans out over a bounded rayon pool; results are collected in input
//! order, so output bytes are independent of the worker count.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use selfnorm_core::catalog::{
    self, abelian_label, abelian_types_up_to, order_p_automorphisms, CatalogSpec,
};
use selfnorm_core::classx::{bruteforce_verdict, cross_check, DecideOptions};
use selfnorm_core::group::{semidirect_parts, semidirect_product, FiniteGroup, SubgroupHandle};
use selfnorm_core::lattice::all_subgroups;
use selfnorm_core::rng::{derive_seed, SplitMix64};
use selfnorm_core::star::{
    ad_apply, ad_image, ad_orbit_vanishes, star_check, StarOutcome, StarReport,
};
use selfnorm_core::structure::{
    center, commutator_subgroup, derived_subgroup, factorize, fitting_subgroup, hypercenter,
    is_nilpotent, is_nilpotent_handle, lower_central_series, quotient_is_cyclic_prime_power,
};

use crate::report::ReportDocument;
use crate::run::RunConfig;

/// One row of a sweep table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepRow {
    pub spec: String,
    pub order: u64,
    pub structural: String,
    pub bruteforce: String,
    pub agree: Option<bool>,
    pub elapsed_ms: u64,
}

pub fn render_rows(rows: &[SweepRow]) -> String {
    let mut out = String::from("spec              order structural    bruteforce    agree\n");
    for r in rows {
        out.push_str(&format!(
            "{:<17} {:>5} {:<13} {:<13} {}\n",
            r.spec,
            r.order,
            r.structural,
            r.bruteforce,
            match r.agree {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "-",
            }
        ));
    }
    out
}

pub fn rows_to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize") + "\n"
}

fn pool(parallel: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.max(1))
        .build()
        .expect("thread pool builds")
}

fn member_word(m: bool) -> String {
    if m {
        "member".into()
    } else {
        "non-member".into()
    }
}

fn cross_row(spec: &CatalogSpec, cfg: &RunConfig) -> SweepRow {
    let started = Instant::now();
    let g = match crate::files::resolve_spec(spec) {
        Ok(g) => g,
        Err(e) => {
            return SweepRow {
                spec: spec.render(),
                order: 0,
                structural: format!("error: {e}"),
                bruteforce: "-".into(),
                agree: None,
                elapsed_ms: started.elapsed().as_millis() as u64,
            }
        }
    };
    let r = cross_check(&g, &cfg.decide_options());
    SweepRow {
        spec: spec.render(),
        order: g.order() as u64,
        structural: member_word(r.structural.member),
        bruteforce: match &r.bruteforce {
            Ok(v) => member_word(v.member),
            Err(_) => "refused".into(),
        },
        agree: r.agreement,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// Sweeps a parameter family; returns rows and whether any disagreement was
/// seen. Families: D (dihedral), C (cyclic), SL2 and PSL2 (prime-power
/// parameters only).
pub fn sweep_family(
    family: &str,
    range: (u32, u32),
    cfg: &RunConfig,
) -> Result<(Vec<SweepRow>, bool), String> {
    let (lo, hi) = range;
    let specs: Vec<CatalogSpec> = match family {
        "D" => (lo..=hi).map(CatalogSpec::Dihedral).collect(),
        "C" => (lo..=hi).map(CatalogSpec::Cyclic).collect(),
        "SL2" => (lo..=hi)
            .filter(|&q| factorize(q as u64).len() == 1)
            .map(CatalogSpec::Sl2)
            .collect(),
        "PSL2" => (lo..=hi)
            .filter(|&q| factorize(q as u64).len() == 1)
            .map(CatalogSpec::Psl2)
            .collect(),
        other => return Err(format!("unknown sweep family {other:?}")),
    };
    let rows: Vec<SweepRow> =
        pool(cfg.parallel).install(|| specs.par_iter().map(|s| cross_row(s, cfg)).collect());
    let disagreement = rows.iter().any(|r| r.agree == Some(false));
    Ok((rows, disagreement))
}

/// Cross-checks the whole default catalog; returns full report documents.
pub fn crosscheck_catalog(cfg: &RunConfig) -> (Vec<ReportDocument>, bool) {
    let specs = catalog::default_catalog();
    let docs: Vec<ReportDocument> = pool(cfg.parallel).install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let started = Instant::now();
                let g = catalog::build_named(spec).expect("default catalog builds");
                let lat = all_subgroups(&g);
                let profile = selfnorm_core::structure::StructureProfile::compute(&g, Some(&lat));
                let cross = cross_check(&g, &cfg.decide_options());
                let mut doc = ReportDocument::new(&spec.render(), g.order() as u64);
                doc.profile = Some(crate::report::ProfileDoc::from_core(&profile));
                doc.attach_cross(&g, &cross);
                doc.timings_ms
                    .insert("total".into(), started.elapsed().as_millis() as u64);
                doc
            })
            .collect()
    });
    let all_agree = docs.iter().all(|d| d.agreement == Some(true));
    (docs, all_agree)
}

/// Seeded random sweep over semidirect products `C_p x| A`: compares the
/// star-property decision against brute force, row per sample.
pub fn sweep_sd_random(order_max: u64, count: usize, cfg: &RunConfig) -> (Vec<SweepRow>, bool) {
    let types: Vec<Vec<u32>> = abelian_types_up_to(order_max.min(64))
        .into_iter()
        .filter(|t| !t.is_empty())
        .collect();
    let primes = [2u32, 3, 5, 7];
    let mut rng = SplitMix64::new(derive_seed(cfg.seed, "sd-random"));
    let mut tasks: Vec<(Vec<u32>, u32, Vec<u32>, String)> = Vec::new();
    let mut attempts = 0usize;
    while tasks.len() < count && attempts < count * 40 {
        attempts += 1;
        let t = &types[rng.below(types.len() as u64) as usize];
        let p = primes[rng.below(primes.len() as u64) as usize];
        let a = match catalog::abelian(t) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let draw = rng.next_u64();
        let actions = order_p_automorphisms(&a, t, p, 4, draw);
        if actions.is_empty() {
            continue;
        }
        let action = actions[rng.below(actions.len() as u64) as usize].clone();
        let label = format!("sd[{}|p={p}|#{}]", abelian_label(t), tasks.len());
        tasks.push((t.clone(), p, action, label));
    }
    let opts = cfg.decide_options();
    let rows: Vec<SweepRow> = pool(cfg.parallel).install(|| {
        tasks
            .par_iter()
            .map(|(factors, p, action, label)| {
                let started = Instant::now();
                let a = Arc::new(catalog::abelian(factors).expect("type within caps"));
                let g = semidirect_product(&a, *p, action).expect("sampled automorphism");
                let parts = semidirect_parts(&g).expect("semidirect by construction");
                let h = SubgroupHandle::new_unchecked(&g, parts.base_members.clone());
                let star =
                    star_check(&g, parts.acting_index, &h).expect("abelian base is nilpotent");
                let bf = bruteforce_verdict(&g, &opts).expect("sweep orders fit the budget");
                SweepRow {
                    spec: label.clone(),
                    order: g.order() as u64,
                    structural: format!("star-{}", if star.holds { "holds" } else { "violated" }),
                    bruteforce: member_word(bf.member),
                    agree: Some(star.holds == bf.member),
                    elapsed_ms: started.elapsed().as_millis() as u64,
                }
            })
            .collect()
    });
    let disagreement = rows.iter().any(|r| r.agree == Some(false));
    (rows, disagreement)
}

/// Outcome of one product in the exhaustive proposition sweep.
#[derive(Debug, Clone)]
pub struct SweepProductOutcome {
    pub label: String,
    pub factors: Vec<u32>,
    pub p: u32,
    pub order: u64,
    pub star_holds: bool,
    pub bruteforce_member: bool,
    /// Failed property checks, empty when everything holds.
    pub property_failures: Vec<String>,
    /// Necessary-condition check for accepted soluble non-nilpotent groups
    /// (vacuously true elsewhere).
    pub soluble_conditions_ok: bool,
}

/// Exhaustive sweep backing the oracle-equivalence and property-suite
/// criteria: every abelian type `A` of order at most `order_max`, every
/// prime in `primes`, and the order-p actions delivered by the documented
/// sampler (capped at `action_cap` per pair).
struct SweepTask {
    base: Arc<FiniteGroup>,
    factors: Vec<u32>,
    p: u32,
    action: Vec<u32>,
    label: String,
}

pub fn proposition_sweep(
    order_max: u64,
    primes: &[u32],
    action_cap: usize,
    seed: u64,
    parallel: usize,
) -> Vec<SweepProductOutcome> {
    let types = abelian_types_up_to(order_max);
    let mut tasks: Vec<SweepTask> = Vec::new();
    for factors in &types {
        if factors.is_empty() {
            continue;
        }
        let a = Arc::new(catalog::abelian(factors).expect("type within caps"));
        for &p in primes {
            let actions = order_p_automorphisms(&a, factors, p, action_cap, seed);
            for (i, action) in actions.into_iter().enumerate() {
                let label = format!("{}|p={p}|#{i}", abelian_label(factors));
                tasks.push(SweepTask {
                    base: Arc::clone(&a),
                    factors: factors.clone(),
                    p,
                    action,
                    label,
                });
            }
        }
    }
    pool(parallel).install(|| {
        tasks
            .par_iter()
            .map(|t| check_sweep_product(&t.base, &t.factors, t.p, &t.action, &t.label))
            .collect()
    })
}

fn check_sweep_product(
    a: &Arc<FiniteGroup>,
    factors: &[u32],
    p: u32,
    action: &[u32],
    label: &str,
) -> SweepProductOutcome {
    let opts = DecideOptions::default();
    let g = semidirect_product(a, p, action).expect("sampler yields automorphisms");
    let parts = semidirect_parts(&g).expect("semidirect by construction");
    let h = SubgroupHandle::new_unchecked(&g, parts.base_members.clone());
    let star = star_check(&g, parts.acting_index, &h).expect("abelian base is nilpotent");
    let bf = bruteforce_verdict(&g, &opts).expect("sweep orders fit the default budget");
    let property_failures =
        property_suite_failures(&g, parts.acting_index, &h, &star, bf.member, p);
    let soluble_conditions_ok = soluble_conditions_ok(&g, bf.member);
    SweepProductOutcome {
        label: label.into(),
        factors: factors.to_vec(),
        p,
        order: g.order() as u64,
        star_holds: star.holds,
        bruteforce_member: bf.member,
        property_failures,
        soluble_conditions_ok,
    }
}

/// Necessary conditions for accepted soluble non-nilpotent groups: prime
/// Fitting index, cyclic prime-power abelianization, derived subgroup equal
/// to the third lower-central term.
pub fn soluble_conditions_ok(g: &FiniteGroup, member: bool) -> bool {
    if !member || is_nilpotent(g) || !selfnorm_core::structure::is_soluble(g) {
        return true;
    }
    let f = fitting_subgroup(g);
    let index = (g.order() / f.order()) as u64;
    let fi = factorize(index);
    if fi.len() != 1 || fi[0].1 != 1 {
        return false;
    }
    let d = derived_subgroup(g);
    if !quotient_is_cyclic_prime_power(g, d.members()) {
        return false;
    }
    let lcs = lower_central_series(g);
    let gamma3 = if lcs.terms.len() > 2 {
        lcs.terms[2].members()
    } else {
        lcs.last().members()
    };
    gamma3 == d.members()
}

fn set_product(g: &FiniteGroup, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(g.mul(x, y));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Property suite for one acted-on pair `(x, H)`: commutator-image
/// generation, fixed-point-freeness vs injectivity, injectivity forcing the
/// star property, pointwise vanishing forcing nilpotence, non-trivial
/// centers, surjectivity forcing trivial p-part, the conjugate normal form
/// of non-nilpotent subgroups, and the two fixed-point remarks. Returns
/// human-readable failure strings (empty = all hold).
pub fn property_suite_failures(
    g: &FiniteGroup,
    x: u32,
    h: &SubgroupHandle<'_>,
    star: &StarReport,
    member: bool,
    p: u32,
) -> Vec<String> {
    let mut failures = Vec::new();
    let h_members = h.members();
    let hgens = h.generating_set();
    let h_abelian = hgens
        .iter()
        .all(|&u| hgens.iter().all(|&v| g.mul(u, v) == g.mul(v, u)));
    let p_prime_part = h_members
        .iter()
        .all(|&m| !g.order_of_index(m).is_multiple_of(p));

    // generated image equals plain image modulo the derived subgroup of K
    for (k_members, _) in &star.outcomes {
        let k = SubgroupHandle::new_unchecked(g, k_members.clone());
        let image = ad_image(g, x, k_members);
        let kprime = commutator_subgroup(g, &k, &k).into_members();
        let generated = g.closure_of(&image);
        let lhs = set_product(g, &image, &kprime);
        let rhs = set_product(g, &generated, &kprime);
        if lhs != rhs {
            failures.push(format!(
                "image-generation: <ad(K)>K' != ad(K)K' on K of order {}",
                k_members.len()
            ));
        }
    }

    // injectivity of ad on H is the same as a fixed-point-free action
    let image_all = ad_image(g, x, h_members);
    let injective = {
        let mut imgs: Vec<u32> = h_members.iter().map(|&m| ad_apply(g, x, m)).collect();
        imgs.sort_unstable();
        imgs.dedup();
        imgs.len() == h_members.len()
    };
    let fixed_points = h_members.iter().filter(|&&m| g.conj(m, x) == m).count();
    if injective != (fixed_points == 1) {
        failures.push("fixed-point-free: injectivity and fixed points disagree".into());
    }

    // injective on a finite group forces the star property
    if injective && !star.holds {
        failures.push("injective-implies-star: injective action violates the property".into());
    }

    // pointwise vanishing on a generating set forces nilpotence
    if hgens.iter().all(|&y| ad_orbit_vanishes(g, x, y).is_some()) && !is_nilpotent(g) {
        failures.push("vanishing-implies-nilpotent: generators vanish pointwise".into());
    }

    // prime-order x, star + a non-trivial vanishing invariant subgroup
    // forces a non-trivial center
    if !is_nilpotent(g) && star.holds && selfnorm_core::gf::is_prime(p) {
        let has_vanishing_k = star
            .outcomes
            .iter()
            .any(|(m, o)| m.len() > 1 && matches!(o, StarOutcome::Vanishes(_)));
        if has_vanishing_k && center(g).order() == 1 {
            failures.push("center-nontrivial: vanishing K but trivial center".into());
        }
    }

    // surjective ad of an order-p action on abelian H forces trivial p-part
    if h_abelian && image_all == h_members && h_members.len() % p as usize == 0 {
        failures.push("p-divisible: surjective image with p dividing |H|".into());
    }

    // members: the induced action on H Z / Z is fixed point free
    if member {
        let z = hypercenter(g).into_members();
        for &m in h_members {
            if z.binary_search(&m).is_err() {
                let c = ad_apply(g, x, m);
                if z.binary_search(&c).is_ok() {
                    failures.push(format!(
                        "hypercenter-quotient: #{m} is a fixed point modulo the hypercenter"
                    ));
                    break;
                }
            }
        }
    }

    // abelian p'-base: membership is exactly fixed-point-freeness
    if h_abelian && p_prime_part && g.order_of_index(x) == p && member != injective {
        failures.push("abelian-member-iff-fpf: membership and injectivity disagree".into());
    }

    // conjugate normal form: with x of order p, a p'-base and the property
    // holding, every non-nilpotent subgroup is conjugate to <x> K
    if p_prime_part && g.order_of_index(x) == p && star.holds {
        let lat = all_subgroups(g);
        if lat.is_exact() {
            for (rep, _) in lat.class_reps() {
                if is_nilpotent_handle(g, &rep) {
                    continue;
                }
                if !has_standard_form_conjugate(g, x, h, &rep, p) {
                    failures.push(format!(
                        "conjugate-normal-form: subgroup of order {} has no <x>K conjugate",
                        rep.order()
                    ));
                }
            }
        }
    }

    failures
}

/// Searches a conjugator `t` with `x` inside `L^t` and `L^t = <x>(L^t & H)`.
fn has_standard_form_conjugate(
    g: &FiniteGroup,
    x: u32,
    h: &SubgroupHandle<'_>,
    l: &SubgroupHandle<'_>,
    p: u32,
) -> bool {
    for t in 0..g.order() as u32 {
        // x in L^t is one conjugation: t x t^-1 in L
        let c = g.mul(g.mul(t, x), g.inv(t));
        if !l.contains(c) {
            continue;
        }
        let mut conj: Vec<u32> = l.members().iter().map(|&m| g.conj(m, t)).collect();
        conj.sort_unstable();
        let k_size = conj.iter().filter(|&&m| h.contains(m)).count();
        if k_size * p as usize == conj.len() {
            return true;
        }
    }
    false
}

/// The catalog triples the property suite also runs on: every dihedral up to
/// the given bound plus the triality product on the quaternion group.
pub fn catalog_property_triples(max_dihedral: u32) -> Vec<(FiniteGroup, String)> {
    let mut out = Vec::new();
    for n in 3..=max_dihedral {
        out.push((catalog::dihedral(n).unwrap(), format!("D:{n}")));
    }
    let q8 = Arc::new(catalog::dicyclic(2).unwrap());
    let tri = catalog::quaternion_triality(&q8);
    out.push((
        semidirect_product(&q8, 3, &tri).unwrap(),
        "Q:8 x| C3 (triality)".into(),
    ));
    out
}
