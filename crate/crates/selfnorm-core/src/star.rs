//! The ad calculus: iterated commutator images `ad_x(h) = [x, h]`, the
//! vanish-or-regenerate property over invariant subgroups, and the
//! splitting search for soluble non-nilpotent groups.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::classx::{DecideError, Route, StarSummary, Verdict};
use crate::group::{FiniteGroup, GroupError, SubgroupHandle};
use crate::lattice::invariant_subgroups;
use crate::structure::{
    factorize, fitting_subgroup, is_nilpotent, is_nilpotent_handle, is_soluble,
    lower_central_series, quotient_is_cyclic_prime_power,
};

/// `ad_x(h) = [x, h] = x^-1 h^-1 x h`.
#[inline]
pub fn ad_apply(g: &FiniteGroup, x: u32, h: u32) -> u32 {
    g.commutator(x, h)
}

/// Set image `{[x, h] : h in members}`, sorted and deduplicated.
pub fn ad_image(g: &FiniteGroup, x: u32, members: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = members.iter().map(|&h| ad_apply(g, x, h)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Subgroup generated by the ad image.
pub fn ad_generated(g: &FiniteGroup, x: u32, members: &[u32]) -> Vec<u32> {
    g.closure_of(&ad_image(g, x, members))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdOutcome {
    /// The n-th iterated image is `{1}` (n >= 1; the trivial subgroup
    /// vanishes at step 1 since the image of `{1}` is `{1}`).
    Vanishes(u32),
    /// The image generates the whole subgroup back.
    Regenerates,
    /// The image-set sequence cycles without ever reaching `{1}`.
    CyclesWithoutVanishing,
}

/// Iterated image sets of one invariant subgroup under `ad_x`.
#[derive(Debug, Clone)]
pub struct AdTrace {
    pub x: u32,
    pub members: Vec<u32>,
    /// `S_0 = K`, `S_(i+1) = ad_x(S_i)`, up to first vanish or repeat.
    pub image_sets: Vec<Vec<u32>>,
    pub outcome: AdOutcome,
    pub generated_image: Vec<u32>,
}

/// Computes the full trace. Usage error when `x` does not map the subgroup
/// onto itself.
pub fn ad_trace(g: &FiniteGroup, x: u32, k: &SubgroupHandle<'_>) -> Result<AdTrace, GroupError> {
    for &h in k.members() {
        if !k.contains(g.conj(h, x)) {
            return Err(GroupError::NotASubgroup {
                reason: format!("subgroup is not invariant under conjugation by {x}"),
            });
        }
    }
    let generated_image = ad_generated(g, x, k.members());
    let mut image_sets: Vec<Vec<u32>> = vec![k.members().to_vec()];
    let outcome = loop {
        let cur = image_sets.last().unwrap();
        let next = ad_image(g, x, cur);
        let vanished = next == [0];
        let repeated = image_sets.iter().any(|s| s == &next);
        image_sets.push(next);
        if vanished {
            break AdOutcome::Vanishes(image_sets.len() as u32 - 1);
        }
        if repeated {
            break if generated_image == k.members() {
                AdOutcome::Regenerates
            } else {
                AdOutcome::CyclesWithoutVanishing
            };
        }
    };
    Ok(AdTrace {
        x,
        members: k.members().to_vec(),
        image_sets,
        outcome,
        generated_image,
    })
}

/// `Some(n)` when some iterated image vanishes, `None` when the sequence
/// cycles without vanishing (cycle detection over a finite universe
/// guarantees termination).
pub fn ad_vanishes(
    g: &FiniteGroup,
    x: u32,
    k: &SubgroupHandle<'_>,
) -> Result<Option<u32>, GroupError> {
    let trace = ad_trace(g, x, k)?;
    Ok(match trace.outcome {
        AdOutcome::Vanishes(n) => Some(n),
        _ => None,
    })
}

/// Pointwise iteration `h, ad_x(h), ad_x(ad_x(h)), ...`; `Some(n)` at the
/// first identity, `None` on a cycle.
pub fn ad_orbit_vanishes(g: &FiniteGroup, x: u32, h: u32) -> Option<u32> {
    let mut seen = vec![h];
    let mut cur = h;
    let mut n = 0u32;
    loop {
        if cur == 0 {
            return Some(n);
        }
        cur = ad_apply(g, x, cur);
        n += 1;
        if seen.contains(&cur) && cur != 0 {
            return None;
        }
        seen.push(cur);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarOutcome {
    Vanishes(u32),
    Regenerates,
    Violates,
}

/// Result of quantifying the vanish-or-regenerate property over all
/// x-invariant subgroups of a nilpotent subgroup.
#[derive(Debug, Clone)]
pub struct StarReport {
    pub holds: bool,
    /// `(members of K, outcome)` in canonical subgroup order.
    pub outcomes: Vec<(Vec<u32>, StarOutcome)>,
    /// First violator in canonical order.
    pub violator: Option<Vec<u32>>,
}

/// Checks the vanish-or-regenerate property of `ad_x` over every
/// x-invariant subgroup `K` of `h`: some iterated image of `K` must vanish,
/// or the image of `K` must generate `K` back. Usage errors: `h` must be
/// nilpotent and normalized by `x`.
pub fn star_check(
    g: &FiniteGroup,
    x: u32,
    h: &SubgroupHandle<'_>,
) -> Result<StarReport, GroupError> {
    if !is_nilpotent_handle(g, h) {
        return Err(GroupError::NotASubgroup {
            reason: String::from("the acted-on subgroup must be nilpotent"),
        });
    }
    let mut invariant = invariant_subgroups(g, h, x)?;
    invariant.sort_unstable_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    let mut outcomes = Vec::with_capacity(invariant.len());
    let mut violator: Option<Vec<u32>> = None;
    for k in &invariant {
        let trace = ad_trace(g, x, k).expect("invariant subgroups admit traces");
        let outcome = match trace.outcome {
            AdOutcome::Vanishes(n) => StarOutcome::Vanishes(n),
            AdOutcome::Regenerates => StarOutcome::Regenerates,
            AdOutcome::CyclesWithoutVanishing => {
                if violator.is_none() {
                    violator = Some(k.members().to_vec());
                }
                StarOutcome::Violates
            }
        };
        outcomes.push((k.members().to_vec(), outcome));
    }
    Ok(StarReport {
        holds: violator.is_none(),
        outcomes,
        violator,
    })
}

/// A witnessed decomposition `G = <x> x| H`: `x` of prime-power order
/// `p^m`, `H` a nilpotent normal p'-subgroup, `<x>` meeting `H` trivially,
/// `G = <x> H`, and `x^p` centralizing `H`. All five conditions are checked
/// on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub prime: u32,
    pub exponent: u32,
    pub x: u32,
    pub h_members: Vec<u32>,
}

impl Splitting {
    /// Re-verifies the five defining conditions from scratch.
    pub fn verify(&self, g: &FiniteGroup) -> bool {
        let p = self.prime;
        let pm = (p as u64).pow(self.exponent) as u32;
        if g.order_of_index(self.x) != pm {
            return false;
        }
        let h = SubgroupHandle::new_unchecked(g, self.h_members.clone());
        // H nilpotent normal p'-group
        if h.members()
            .iter()
            .any(|&m| g.order_of_index(m).is_multiple_of(p))
        {
            return false;
        }
        for &m in h.members() {
            for &t in g.generators() {
                if !h.contains(g.conj(m, t)) {
                    return false;
                }
            }
        }
        if !is_nilpotent_handle(g, &h) {
            return false;
        }
        // <x> meets H trivially
        let mut acc = self.x;
        while acc != 0 {
            if h.contains(acc) {
                return false;
            }
            acc = g.mul(acc, self.x);
        }
        // G = <x> H by order count, re-checked by closure
        if pm as usize * h.order() != g.order() {
            return false;
        }
        let mut seeds = h.generating_set();
        seeds.push(self.x);
        if g.closure_of(&seeds).len() != g.order() {
            return false;
        }
        // x^p acts trivially on H
        let xp = g.pow(self.x, p);
        h.members().iter().all(|&m| g.mul(xp, m) == g.mul(m, xp))
    }
}

/// Searches for a splitting of a soluble non-nilpotent group: for each
/// prime `p` dividing the order (ascending), take `H` to be the p'-part of
/// the Fitting subgroup and look for the canonically first `x` of order
/// `[G : H]` (required to be a p-power) with `[x^p, H] = 1`. `None` is a
/// legitimate answer meaning this branch rejects.
pub fn find_splitting(g: &FiniteGroup) -> Result<Option<Splitting>, DecideError> {
    if is_nilpotent(g) || !is_soluble(g) {
        return Err(DecideError::Usage {
            reason: String::from("splitting search expects a soluble non-nilpotent group"),
        });
    }
    let n = g.order() as u64;
    let fitting = fitting_subgroup(g);
    for (p, _) in factorize(n) {
        let p = p as u32;
        // Hall p'-part of the nilpotent Fitting subgroup
        let h_members: Vec<u32> = fitting
            .members()
            .iter()
            .copied()
            .filter(|&m| !g.order_of_index(m).is_multiple_of(p))
            .collect();
        debug_assert_eq!(g.closure_of(&h_members), h_members);
        let h = SubgroupHandle::new_unchecked(g, h_members);
        // normal (characteristic part of a normal subgroup; checked anyway)
        let normal = h
            .members()
            .iter()
            .all(|&m| g.generators().iter().all(|&t| h.contains(g.conj(m, t))));
        if !normal {
            continue;
        }
        let index = (g.order() / h.order()) as u64;
        let f = factorize(index);
        let [(fp, m)] = f.as_slice() else { continue };
        if *fp != p as u64 {
            continue;
        }
        let pm = index as u32;
        let hgens = h.generating_set();
        for x in 0..g.order() as u32 {
            if g.order_of_index(x) != pm {
                continue;
            }
            // <x> is a p-group, H a p'-group: the intersection is trivial
            let xp = g.pow(x, p);
            let centralizes = hgens.iter().all(|&t| g.mul(xp, t) == g.mul(t, xp));
            if !centralizes {
                continue;
            }
            let splitting = Splitting {
                prime: p,
                exponent: *m,
                x,
                h_members: h.members().to_vec(),
            };
            debug_assert!(splitting.verify(g));
            return Ok(Some(splitting));
        }
    }
    Ok(None)
}

/// Structural membership decision for soluble non-nilpotent groups: fast
/// necessary filters (prime Fitting index, cyclic prime-power
/// abelianization, derived subgroup equal to the third lower-central term),
/// then the splitting search, then the vanish-or-regenerate check on the
/// found splitting.
pub fn soluble_structural_verdict(g: &FiniteGroup) -> Result<Verdict, DecideError> {
    if is_nilpotent(g) || !is_soluble(g) {
        return Err(DecideError::Usage {
            reason: String::from("soluble verdict expects a soluble non-nilpotent group"),
        });
    }
    let fitting = fitting_subgroup(g);
    let index = (g.order() / fitting.order()) as u64;
    if factorize(index).len() != 1 || factorize(index)[0].1 != 1 {
        return Ok(Verdict::reject_filter("fitting-index-not-prime"));
    }
    let derived = crate::structure::derived_subgroup(g);
    if !quotient_is_cyclic_prime_power(g, derived.members()) {
        return Ok(Verdict::reject_filter(
            "abelianization-not-cyclic-prime-power",
        ));
    }
    let lcs = lower_central_series(g);
    // gamma_3 exists since the series starts G > G' for non-nilpotent G
    let gamma3 = if lcs.terms.len() > 2 {
        lcs.terms[2].members()
    } else {
        lcs.last().members()
    };
    if gamma3 != derived.members() {
        return Ok(Verdict::reject_filter("derived-not-gamma3"));
    }
    let Some(splitting) = find_splitting(g)? else {
        return Ok(Verdict::reject_filter("no-splitting"));
    };
    let h = SubgroupHandle::new_unchecked(g, splitting.h_members.clone());
    let report = star_check(g, splitting.x, &h).map_err(|e| DecideError::Usage {
        reason: format!("splitting does not admit the star check: {e}"),
    })?;
    let summary = StarSummary {
        holds: report.holds,
        checked: report.outcomes.len() as u64,
        violator: report.violator.clone(),
    };
    Ok(Verdict {
        member: report.holds,
        route: Route::SolubleSplit,
        witness: None,
        splitting: Some(splitting),
        star: Some(summary),
        fingerprint_match: None,
    })
}
