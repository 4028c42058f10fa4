//! Structural invariants: centralizers, normalizers, commutators, the three
//! classical series, nilpotency/solubility/perfectness/simplicity, Sylow,
//! Fitting and Frattini subgroups, conjugacy classes and normal subgroups.
//!
//! Everything operates on element indices of an immutable [`FiniteGroup`];
//! results are canonically ordered so repeated runs are byte-identical.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, GroupError, SubgroupHandle};
use crate::lattice::{LatticeError, SubgroupLattice};

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Elements commuting with every element of `s`.
pub fn centralizer<'g>(g: &'g FiniteGroup, s: &[u32]) -> SubgroupHandle<'g> {
    let members: Vec<u32> = (0..g.order() as u32)
        .filter(|&c| s.iter().all(|&x| g.mul(c, x) == g.mul(x, c)))
        .collect();
    SubgroupHandle::new_unchecked(g, members)
}

/// Center, computed against a generating set and cached.
pub fn center(g: &FiniteGroup) -> SubgroupHandle<'_> {
    let members = g
        .caches
        .center
        .get_or_init(|| Box::new(centralizer(g, g.generators()).into_members()));
    SubgroupHandle::new_unchecked(g, members.clone())
}

/// `N_G(H) = {g : H^g = H}`; always contains `H`.
pub fn normalizer<'g>(g: &'g FiniteGroup, h: &SubgroupHandle<'g>) -> SubgroupHandle<'g> {
    let gens = h.generating_set();
    let members: Vec<u32> = (0..g.order() as u32)
        .filter(|&t| gens.iter().all(|&x| h.contains(g.conj(x, t))))
        .collect();
    debug_assert!(h.members().iter().all(|m| members.binary_search(m).is_ok()));
    SubgroupHandle::new_unchecked(g, members)
}

/// `[A, B]`: the subgroup generated by all commutators `[a, b]`, computed as
/// the closure of generator commutators stabilized under conjugation by the
/// join's generators.
pub fn commutator_subgroup<'g>(
    g: &'g FiniteGroup,
    a: &SubgroupHandle<'g>,
    b: &SubgroupHandle<'g>,
) -> SubgroupHandle<'g> {
    let ga = a.generating_set();
    let gb = b.generating_set();
    let mut seeds: Vec<u32> = Vec::new();
    for &x in &ga {
        for &y in &gb {
            seeds.push(g.commutator(x, y));
        }
    }
    let joint: Vec<u32> = ga.iter().chain(gb.iter()).copied().collect();
    let members = normal_closure_under(g, seeds, &joint);
    SubgroupHandle::new_unchecked(g, members)
}

/// Smallest subgroup containing `seeds` and stable under conjugation by the
/// given conjugators.
fn normal_closure_under(g: &FiniteGroup, mut seeds: Vec<u32>, conjugators: &[u32]) -> Vec<u32> {
    loop {
        let members = g.closure_of(&seeds);
        let mut grew = false;
        for &m in &members {
            for &t in conjugators {
                let c = g.conj(m, t);
                if members.binary_search(&c).is_err() {
                    seeds.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return members;
        }
    }
}

/// Derived subgroup `G' = [G, G]`, cached.
pub fn derived_subgroup(g: &FiniteGroup) -> SubgroupHandle<'_> {
    let members = g.caches.derived_subgroup.get_or_init(|| {
        let full = g.full_handle();
        Box::new(commutator_subgroup(g, &full, &full).into_members())
    });
    SubgroupHandle::new_unchecked(g, members.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

/// A stabilized subgroup series; `terms` lists the strictly changing
/// prefix, ending at the stable term.
#[derive(Debug, Clone)]
pub struct SeriesResult<'g> {
    pub kind: SeriesKind,
    pub terms: Vec<SubgroupHandle<'g>>,
    pub stabilized: bool,
}

impl<'g> SeriesResult<'g> {
    pub fn last(&self) -> &SubgroupHandle<'g> {
        self.terms.last().expect("series has at least one term")
    }

    pub fn reaches_trivial(&self) -> bool {
        self.last().order() == 1
    }
}

pub fn derived_series(g: &FiniteGroup) -> SeriesResult<'_> {
    let mut terms = vec![g.full_handle()];
    loop {
        let cur = terms.last().unwrap();
        let next = commutator_subgroup(g, cur, cur);
        if next.members() == cur.members() {
            return SeriesResult {
                kind: SeriesKind::Derived,
                terms,
                stabilized: true,
            };
        }
        terms.push(next);
    }
}

pub fn lower_central_series(g: &FiniteGroup) -> SeriesResult<'_> {
    let full = g.full_handle();
    let mut terms = vec![g.full_handle()];
    loop {
        let cur = terms.last().unwrap();
        let next = commutator_subgroup(g, cur, &full);
        if next.members() == cur.members() {
            return SeriesResult {
                kind: SeriesKind::LowerCentral,
                terms,
                stabilized: true,
            };
        }
        terms.push(next);
    }
}

/// Ascending central series; the terminal term is the hypercenter.
pub fn upper_central_series(g: &FiniteGroup) -> SeriesResult<'_> {
    let gens = g.generators().to_vec();
    let mut terms = vec![g.trivial_handle()];
    loop {
        let cur = terms.last().unwrap();
        let members: Vec<u32> = (0..g.order() as u32)
            .filter(|&x| gens.iter().all(|&t| cur.contains(g.commutator(x, t))))
            .collect();
        if members == cur.members() {
            return SeriesResult {
                kind: SeriesKind::UpperCentral,
                terms,
                stabilized: true,
            };
        }
        terms.push(SubgroupHandle::new_unchecked(g, members));
    }
}

pub fn hypercenter(g: &FiniteGroup) -> SubgroupHandle<'_> {
    upper_central_series(g)
        .terms
        .pop()
        .expect("series has at least one term")
}

/// Nilpotency via the lower central series, cached.
pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    *g.caches
        .nilpotent
        .get_or_init(|| Box::new(lower_central_series(g).reaches_trivial()))
}

/// Nilpotency class (series length); `None` for non-nilpotent groups.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<u32> {
    let s = lower_central_series(g);
    if s.reaches_trivial() {
        Some(s.terms.len() as u32 - 1)
    } else {
        None
    }
}

/// Independent nilpotency criterion: every Sylow subgroup is normal. Kept as
/// a redundant oracle against the series-based decision.
pub fn is_nilpotent_sylow_criterion(g: &FiniteGroup) -> bool {
    for (p, _) in factorize(g.order() as u64) {
        let s = sylow_subgroup(g, p as u32).expect("prime divides the order");
        let n = normalizer(g, &s);
        if !n.is_whole_group() {
            return false;
        }
    }
    true
}

pub fn is_nilpotent_handle(parent: &FiniteGroup, h: &SubgroupHandle<'_>) -> bool {
    if h.is_whole_group() {
        return is_nilpotent(parent);
    }
    if h.order() == 1 {
        return true;
    }
    is_nilpotent(&h.materialize())
}

pub fn is_soluble(g: &FiniteGroup) -> bool {
    *g.caches
        .soluble
        .get_or_init(|| Box::new(derived_series(g).reaches_trivial()))
}

pub fn is_perfect(g: &FiniteGroup) -> bool {
    derived_subgroup(g).is_whole_group()
}

/// Conjugacy classes as sorted index lists, ordered by least member.
pub fn conjugacy_classes(g: &FiniteGroup) -> &[Vec<u32>] {
    g.caches
        .conjugacy_classes
        .get_or_init(|| {
            let n = g.order();
            let mut class_of = vec![u32::MAX; n];
            let mut classes: Vec<Vec<u32>> = Vec::new();
            for x in 0..n as u32 {
                if class_of[x as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut orbit = vec![x];
                class_of[x as usize] = id;
                let mut qi = 0;
                while qi < orbit.len() {
                    let y = orbit[qi];
                    qi += 1;
                    for &t in g.generators() {
                        let c = g.conj(y, t);
                        if class_of[c as usize] == u32::MAX {
                            class_of[c as usize] = id;
                            orbit.push(c);
                        }
                    }
                }
                orbit.sort_unstable();
                classes.push(orbit);
            }
            Box::new(classes)
        })
        .as_slice()
}

/// All normal subgroups, canonical order. Enumerated as class-closed unions:
/// the subgroup generated by a conjugacy class is normal, and every normal
/// subgroup is a join of such class closures, so the join fixpoint of class
/// closures is exactly the set of normal subgroups.
pub fn normal_subgroups(g: &FiniteGroup) -> &[Vec<u32>] {
    g.caches
        .normal_subgroups
        .get_or_init(|| {
            let n = g.order();
            let classes = conjugacy_classes(g);
            let class_closures: Vec<Vec<u32>> = classes.iter().map(|c| g.closure_of(c)).collect();
            let whole: Vec<u32> = (0..n as u32).collect();
            let mut found: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
            found.insert(vec![0], ());
            found.insert(whole.clone(), ());
            let mut queue: Vec<Vec<u32>> = vec![vec![0]];
            while let Some(cur) = queue.pop() {
                for cc in &class_closures {
                    if cc.len() == n || cur.len() == n {
                        continue;
                    }
                    let mut seeds = cur.clone();
                    seeds.extend_from_slice(cc);
                    let join = g.closure_of(&seeds);
                    if !found.contains_key(&join) {
                        found.insert(join.clone(), ());
                        queue.push(join);
                    }
                }
            }
            let mut out: Vec<Vec<u32>> = found.into_keys().collect();
            out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            Box::new(out)
        })
        .as_slice()
}

/// Exactly two normal subgroups.
pub fn is_simple(g: &FiniteGroup) -> bool {
    normal_subgroups(g).len() == 2
}

/// A Sylow p-subgroup, grown through normalizers: while `P` is not yet full,
/// some p-power-order element of `N_G(P) \ P` extends it.
pub fn sylow_subgroup(g: &FiniteGroup, p: u32) -> Result<SubgroupHandle<'_>, GroupError> {
    let n = g.order() as u64;
    if !crate::gf::is_prime(p) || !n.is_multiple_of(p as u64) {
        return Err(GroupError::NotASubgroup {
            reason: alloc::format!("{p} is not a prime divisor of the group order"),
        });
    }
    let mut target = 1u64;
    let mut m = n;
    while m.is_multiple_of(p as u64) {
        target *= p as u64;
        m /= p as u64;
    }
    let is_p_power = |ord: u32| {
        let mut o = ord;
        while o.is_multiple_of(p) {
            o /= p;
        }
        o == 1
    };
    // Cauchy seed: power some element down to order p
    let seed = (1..g.order() as u32)
        .find_map(|x| {
            let ord = g.order_of_index(x);
            if ord.is_multiple_of(p) {
                Some(g.pow(x, ord / p))
            } else {
                None
            }
        })
        .expect("a prime divisor of the order has an element of that order");
    let mut members = g.closure_of(&[seed]);
    let mut gens = vec![seed];
    while (members.len() as u64) < target {
        let handle = SubgroupHandle::new_unchecked(g, members.clone());
        let norm = normalizer(g, &handle);
        let y = norm
            .members()
            .iter()
            .copied()
            .find(|&y| members.binary_search(&y).is_err() && is_p_power(g.order_of_index(y)))
            .expect("a non-maximal p-subgroup grows inside its normalizer");
        gens.push(y);
        members = g.closure_of(&gens);
    }
    debug_assert_eq!(members.len() as u64, target);
    Ok(SubgroupHandle::new_unchecked(g, members))
}

/// Fitting subgroup: the join of all nilpotent normal subgroups (verified
/// nilpotent).
pub fn fitting_subgroup(g: &FiniteGroup) -> SubgroupHandle<'_> {
    let mut seeds: Vec<u32> = vec![0];
    for members in normal_subgroups(g) {
        let h = SubgroupHandle::new_unchecked(g, members.clone());
        if is_nilpotent_handle(g, &h) {
            seeds.extend_from_slice(members);
        }
    }
    let members = g.closure_of(&seeds);
    let fitting = SubgroupHandle::new_unchecked(g, members);
    debug_assert!(is_nilpotent_handle(g, &fitting));
    fitting
}

/// Frattini subgroup: intersection of all maximal subgroups. Unavailable
/// when the lattice is truncated (never approximated).
pub fn frattini_subgroup<'g>(
    lat: &SubgroupLattice<'g>,
) -> Result<SubgroupHandle<'g>, LatticeError> {
    let g = lat.parent();
    let maximal = lat.maximal_subgroups()?;
    let mut members: Vec<u32> = (0..g.order() as u32).collect();
    for m in &maximal {
        members.retain(|&x| m.contains(x));
    }
    Ok(SubgroupHandle::new_unchecked(g, members))
}

/// Non-nilpotent with every maximal subgroup nilpotent. (Any proper
/// subgroup lies inside a maximal one, so checking maximals suffices.)
pub fn is_minimal_non_nilpotent(
    g: &FiniteGroup,
    lat: &SubgroupLattice<'_>,
) -> Result<bool, LatticeError> {
    if is_nilpotent(g) {
        return Ok(false);
    }
    for m in lat.maximal_subgroups()? {
        if !is_nilpotent_handle(g, &m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coset partition of `g` by a subgroup member set: (coset id per element,
/// minimal representative per coset). Coset 0 is the subgroup itself.
pub fn coset_partition(g: &FiniteGroup, members: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::new();
    for i in 0..n as u32 {
        if coset_of[i as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(i);
        for &k in members {
            coset_of[g.mul(i, k) as usize] = id;
        }
    }
    (coset_of, reps)
}

/// Multiset of prime-power cyclic factor orders of an abelian group, given
/// the multiset of its element orders (primary decomposition; for abelian
/// groups the order census determines the isomorphism type).
pub fn abelian_shape_from_orders(orders: &[u64]) -> Vec<u64> {
    let mut shape: Vec<u64> = Vec::new();
    for (p, _) in factorize(orders.len() as u64) {
        // e_i = log_p #{x : x^(p^i) = 1} = sum_j min(i, lambda_j) for the
        // partition lambda of the Sylow-p part
        let mut exps: Vec<u32> = vec![0];
        let mut i = 1u32;
        loop {
            let pi = p.pow(i);
            let s = orders.iter().filter(|&&o| pi % o == 0).count() as u64;
            let e = s.ilog(p);
            if e == exps[(i - 1) as usize] {
                break;
            }
            exps.push(e);
            i += 1;
        }
        // counts[i] = #parts of size >= i+1; parts of size exactly i+1 are
        // counts[i] - counts[i+1]
        let counts: Vec<u32> = (1..exps.len()).map(|i| exps[i] - exps[i - 1]).collect();
        for (i, &c) in counts.iter().enumerate() {
            let next = counts.get(i + 1).copied().unwrap_or(0);
            for _ in 0..c - next {
                shape.push(p.pow((i + 1) as u32));
            }
        }
    }
    shape.sort_unstable();
    shape
}

/// Summary of a group's structural invariants.
#[derive(Debug, Clone)]
pub struct StructureProfile<'g> {
    pub order: u64,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<u32>,
    pub is_soluble: bool,
    pub is_perfect: bool,
    pub is_simple: bool,
    pub fitting: SubgroupHandle<'g>,
    pub frattini: Option<SubgroupHandle<'g>>,
    pub center: SubgroupHandle<'g>,
    pub hypercenter: SubgroupHandle<'g>,
    pub abelianization_shape: Vec<u64>,
}

impl<'g> StructureProfile<'g> {
    pub fn compute(g: &'g FiniteGroup, lat: Option<&SubgroupLattice<'g>>) -> Self {
        let derived = derived_subgroup(g);
        let (_, reps) = coset_partition(g, derived.members());
        let coset_orders: Vec<u64> = reps
            .iter()
            .map(|&r| order_mod(g, r, derived.members()))
            .collect();
        StructureProfile {
            order: g.order() as u64,
            is_nilpotent: is_nilpotent(g),
            nilpotency_class: nilpotency_class(g),
            is_soluble: is_soluble(g),
            is_perfect: is_perfect(g),
            is_simple: is_simple(g),
            fitting: fitting_subgroup(g),
            frattini: lat.and_then(|l| frattini_subgroup(l).ok()),
            center: center(g),
            hypercenter: hypercenter(g),
            abelianization_shape: abelian_shape_from_orders(&coset_orders),
        }
    }
}

/// Least `m >= 1` with `g^m` inside the subgroup member set.
pub fn order_mod(g: &FiniteGroup, x: u32, members: &[u32]) -> u64 {
    let mut acc = x;
    let mut m = 1u64;
    while members.binary_search(&acc).is_err() {
        acc = g.mul(acc, x);
        m += 1;
    }
    m
}

/// True when the quotient `G / members` is cyclic of prime-power order
/// (including the trivial quotient).
pub fn quotient_is_cyclic_prime_power(g: &FiniteGroup, members: &[u32]) -> bool {
    let index = (g.order() / members.len()) as u64;
    if index == 1 {
        return true;
    }
    if factorize(index).len() != 1 {
        return false;
    }
    let (_, reps) = coset_partition(g, members);
    reps.iter().any(|&r| order_mod(g, r, members) == index)
}
