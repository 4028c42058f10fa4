//! Subgroup lattice enumeration.
//!
//! Bottom-up: seed with every cyclic subgroup, then repeatedly join class
//! representatives with cyclic subgroups, closing and deduplicating by
//! member bitmask; conjugacy classes of subgroups are expanded once per
//! representative. Normalizers are conjugation-equivariant, so downstream
//! deciders only ever need class representatives — enumerating per class is
//! what keeps order-504 groups comfortable.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, GroupError, Representation, SubgroupHandle};

/// Enumeration budget; exceeding it yields a truncated lattice that
/// downstream deciders refuse to certify from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeBudget {
    /// Largest group order enumerated exactly.
    pub max_order: usize,
    /// Cap on candidate join closures.
    pub max_joins: u64,
}

impl Default for LatticeBudget {
    fn default() -> Self {
        LatticeBudget {
            max_order: 2000,
            max_joins: 1_000_000,
        }
    }
}

impl LatticeBudget {
    pub fn with_max_order(max_order: usize) -> Self {
        LatticeBudget {
            max_order,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The lattice was truncated by budget; exact data is unavailable.
    Truncated,
}

impl core::fmt::Display for LatticeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LatticeError::Truncated => write!(f, "subgroup lattice truncated by budget"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// One conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Canonical representative: the lexicographically least member list in
    /// the class.
    pub rep: Vec<u32>,
    /// A generating set of the representative.
    pub gens: Vec<u32>,
    /// Number of conjugates.
    pub size: u32,
}

/// Raw lattice payload, cached inside the parent group once exact.
#[derive(Debug)]
pub struct LatticeData {
    /// Every subgroup, sorted by (order, member list).
    pub all: Vec<Vec<u32>>,
    /// Conjugacy classes, sorted by (rep order, rep member list).
    pub classes: Vec<SubgroupClass>,
    /// Positions in `all` of the maximal subgroups.
    pub maximal: Vec<u32>,
    pub exact: bool,
    pub joins_spent: u64,
}

enum LatticeView<'g> {
    Cached(&'g LatticeData),
    Owned(Box<LatticeData>),
}

/// Subgroup lattice of a parent group.
pub struct SubgroupLattice<'g> {
    parent: &'g FiniteGroup,
    view: LatticeView<'g>,
}

impl<'g> SubgroupLattice<'g> {
    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub fn data(&self) -> &LatticeData {
        match &self.view {
            LatticeView::Cached(d) => d,
            LatticeView::Owned(d) => d,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.data().exact
    }

    pub fn subgroup_count(&self) -> usize {
        self.data().all.len()
    }

    pub fn class_count(&self) -> usize {
        self.data().classes.len()
    }

    pub fn all_handles(&self) -> Vec<SubgroupHandle<'g>> {
        self.data()
            .all
            .iter()
            .map(|m| SubgroupHandle::new_unchecked(self.parent, m.clone()))
            .collect()
    }

    /// Class representatives with class sizes, canonical order.
    pub fn class_reps(&self) -> Vec<(SubgroupHandle<'g>, u32)> {
        self.data()
            .classes
            .iter()
            .map(|c| {
                (
                    SubgroupHandle::new_unchecked(self.parent, c.rep.clone()),
                    c.size,
                )
            })
            .collect()
    }

    /// Maximal subgroups; refuses on a truncated lattice.
    pub fn maximal_subgroups(&self) -> Result<Vec<SubgroupHandle<'g>>, LatticeError> {
        let d = self.data();
        if !d.exact {
            return Err(LatticeError::Truncated);
        }
        Ok(d.maximal
            .iter()
            .map(|&i| SubgroupHandle::new_unchecked(self.parent, d.all[i as usize].clone()))
            .collect())
    }
}

/// Enumerates the full subgroup lattice under the default budget.
pub fn all_subgroups(g: &FiniteGroup) -> SubgroupLattice<'_> {
    all_subgroups_with(g, LatticeBudget::default())
}

/// Enumerates with an explicit budget. Exact results are cached inside the
/// group; truncated results are returned without caching.
pub fn all_subgroups_with(g: &FiniteGroup, budget: LatticeBudget) -> SubgroupLattice<'_> {
    if let Some(data) = g.caches.lattice.get() {
        if data.exact {
            return SubgroupLattice {
                parent: g,
                view: LatticeView::Cached(data),
            };
        }
    }
    let data = compute_lattice(g, budget);
    if data.exact {
        let _ = g.caches.lattice.set(Box::new(data));
        let data = g.caches.lattice.get().expect("just set");
        SubgroupLattice {
            parent: g,
            view: LatticeView::Cached(data),
        }
    } else {
        SubgroupLattice {
            parent: g,
            view: LatticeView::Owned(Box::new(data)),
        }
    }
}

fn mask_words(n: usize) -> usize {
    n.div_ceil(64)
}

fn mask_of(members: &[u32], words: usize) -> Vec<u64> {
    let mut mask = vec![0u64; words];
    for &m in members {
        mask[(m >> 6) as usize] |= 1u64 << (m & 63);
    }
    mask
}

fn is_submask(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(&a, &b)| a & !b == 0)
}

/// Reused buffers for the closure-heavy join loop; clearing replays the
/// touched entries instead of re-zeroing whole vectors.
struct ClosureScratch {
    present: Vec<bool>,
    queue: Vec<u32>,
    mask: Vec<u64>,
}

impl ClosureScratch {
    fn new(n: usize, words: usize) -> Self {
        ClosureScratch {
            present: vec![false; n],
            queue: Vec::with_capacity(n),
            mask: vec![0; words],
        }
    }

    fn reset(&mut self) {
        for &t in &self.queue {
            self.present[t as usize] = false;
        }
        self.queue.clear();
        for w in &mut self.mask {
            *w = 0;
        }
    }

    #[inline]
    fn mark(&mut self, x: u32) -> bool {
        if self.present[x as usize] {
            return false;
        }
        self.present[x as usize] = true;
        self.queue.push(x);
        self.mask[(x >> 6) as usize] |= 1u64 << (x & 63);
        true
    }

    /// Closure of `seeds` as a bitmask over element indices.
    fn closure_mask(&mut self, g: &FiniteGroup, seeds: &[u32]) -> &[u64] {
        self.reset();
        self.mark(0);
        for &s in seeds {
            self.mark(s);
        }
        let mut qi = 0;
        while qi < self.queue.len() {
            let t = self.queue[qi];
            qi += 1;
            for &s in seeds {
                if s == 0 {
                    continue;
                }
                let u = g.mul(t, s);
                self.mark(u);
            }
        }
        &self.mask
    }

    /// Join `<base, c>` by completing cosets of the base subgroup: each
    /// fresh representative pulls in a whole coset at one product per
    /// element, so the work is linear in the join's order rather than
    /// order times generator count.
    fn extend_mask(
        &mut self,
        g: &FiniteGroup,
        base_members: &[u32],
        base_gens: &[u32],
        c: u32,
    ) -> &[u64] {
        self.reset();
        for &m in base_members {
            self.mark(m);
        }
        let mut reps: Vec<u32> = vec![c];
        for &m in base_members {
            self.mark(g.mul(m, c));
        }
        let mut qi = 0;
        while qi < reps.len() {
            let r = reps[qi];
            qi += 1;
            for s in base_gens.iter().copied().chain(core::iter::once(c)) {
                let t = g.mul(r, s);
                if !self.present[t as usize] {
                    reps.push(t);
                    for &m in base_members {
                        self.mark(g.mul(m, t));
                    }
                }
            }
        }
        &self.mask
    }
}

fn members_from_mask(mask: &[u64]) -> Vec<u32> {
    let mut out = Vec::new();
    for (wi, &w) in mask.iter().enumerate() {
        let mut bits = w;
        while bits != 0 {
            let b = bits.trailing_zeros();
            out.push((wi as u32) * 64 + b);
            bits &= bits - 1;
        }
    }
    out
}

struct Enumerator<'g> {
    g: &'g FiniteGroup,
    words: usize,
    /// Every subgroup mask seen so far -> class id.
    seen: BTreeMap<Vec<u64>, u32>,
    classes: Vec<SubgroupClass>,
    /// All member lists per class (the full conjugacy orbit).
    orbits: Vec<Vec<Vec<u32>>>,
    joins: u64,
    max_joins: u64,
    truncated: bool,
}

impl<'g> Enumerator<'g> {
    /// Registers a subgroup; if its class is new, expands the conjugacy
    /// orbit and records the canonical representative.
    fn register(&mut self, members: Vec<u32>, creating_gens: &[u32]) {
        let mask = mask_of(&members, self.words);
        if self.seen.contains_key(&mask) {
            return;
        }
        // BFS over conjugates, tracking one conjugator per orbit element
        let mut orbit: Vec<(Vec<u32>, u32)> = vec![(members, 0)];
        let mut orbit_masks: BTreeMap<Vec<u64>, ()> = BTreeMap::new();
        orbit_masks.insert(mask, ());
        let mut qi = 0;
        while qi < orbit.len() {
            let (cur, conj) = orbit[qi].clone();
            qi += 1;
            for &t in self.g.generators() {
                let mut imaged: Vec<u32> = cur.iter().map(|&m| self.g.conj(m, t)).collect();
                imaged.sort_unstable();
                let m = mask_of(&imaged, self.words);
                if let alloc::collections::btree_map::Entry::Vacant(e) = orbit_masks.entry(m) {
                    e.insert(());
                    orbit.push((imaged, self.g.mul(conj, t)));
                }
            }
        }
        let (rep, rep_conj) = orbit
            .iter()
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|(m, c)| (m.clone(), *c))
            .expect("orbit is non-empty");
        let mut gens: Vec<u32> = creating_gens
            .iter()
            .map(|&x| self.g.conj(x, rep_conj))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let id = self.classes.len() as u32;
        for (m, _) in &orbit {
            self.seen.insert(mask_of(m, self.words), id);
        }
        let size = orbit.len() as u32;
        self.orbits
            .push(orbit.into_iter().map(|(m, _)| m).collect());
        self.classes.push(SubgroupClass { rep, gens, size });
    }
}

fn compute_lattice(g: &FiniteGroup, budget: LatticeBudget) -> LatticeData {
    let n = g.order();
    if n > budget.max_order {
        return LatticeData {
            all: Vec::new(),
            classes: Vec::new(),
            maximal: Vec::new(),
            exact: false,
            joins_spent: 0,
        };
    }
    let words = mask_words(n);
    let mut e = Enumerator {
        g,
        words,
        seen: BTreeMap::new(),
        classes: Vec::new(),
        orbits: Vec::new(),
        joins: 0,
        max_joins: budget.max_joins,
        truncated: false,
    };

    let mut scratch = ClosureScratch::new(n, words);

    // distinct cyclic subgroups, each kept with its least generator
    let mut cyclic: Vec<(Vec<u32>, Vec<u64>, u32)> = Vec::new();
    let mut cyclic_seen: BTreeMap<Vec<u64>, ()> = BTreeMap::new();
    for x in 0..n as u32 {
        let mask = scratch.closure_mask(g, &[x]).to_vec();
        if !cyclic_seen.contains_key(&mask) {
            cyclic_seen.insert(mask.clone(), ());
            cyclic.push((members_from_mask(&mask), mask, x));
        }
    }

    e.register(vec![0], &[]);
    for (members, _, gen) in &cyclic {
        let gens = if *gen == 0 { vec![] } else { vec![*gen] };
        e.register(members.clone(), &gens);
    }

    // join closure over class representatives
    let mut ci = 0;
    'outer: while ci < e.classes.len() {
        let rep_len = e.classes[ci].rep.len();
        if rep_len == n {
            ci += 1;
            continue;
        }
        let rep = e.classes[ci].rep.clone();
        let rep_gens = e.classes[ci].gens.clone();
        let rep_mask = mask_of(&rep, words);
        for (_, cyc_mask, cyc_gen) in &cyclic {
            if is_submask(cyc_mask, &rep_mask) {
                continue;
            }
            e.joins += 1;
            if e.joins > e.max_joins {
                e.truncated = true;
                break 'outer;
            }
            let mask = scratch.extend_mask(g, &rep, &rep_gens, *cyc_gen);
            if e.seen.contains_key(mask) {
                continue;
            }
            let joined = members_from_mask(mask);
            let mut seeds = rep_gens.clone();
            seeds.push(*cyc_gen);
            e.register(joined, &seeds);
        }
        ci += 1;
    }

    let exact = !e.truncated;
    let mut all: Vec<Vec<u32>> = e.orbits.into_iter().flatten().collect();
    all.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut classes = e.classes;
    classes.sort_unstable_by(|a, b| {
        a.rep
            .len()
            .cmp(&b.rep.len())
            .then_with(|| a.rep.cmp(&b.rep))
    });

    let maximal = if exact {
        compute_maximal(&all, n, words)
    } else {
        Vec::new()
    };

    LatticeData {
        all,
        classes,
        maximal,
        exact,
        joins_spent: e.joins,
    }
}

/// Proper subgroups contained in no other proper subgroup.
fn compute_maximal(all: &[Vec<u32>], n: usize, words: usize) -> Vec<u32> {
    let masks: Vec<Vec<u64>> = all.iter().map(|m| mask_of(m, words)).collect();
    let mut maximal = Vec::new();
    for (i, h) in all.iter().enumerate() {
        if h.len() == n {
            continue;
        }
        let mut covered = false;
        for (j, k) in all.iter().enumerate() {
            if k.len() <= h.len() || k.len() == n || k.len() % h.len() != 0 {
                continue;
            }
            if i != j && is_submask(&masks[i], &masks[j]) {
                covered = true;
                break;
            }
        }
        if !covered {
            maximal.push(i as u32);
        }
    }
    maximal
}

/// Member lists (parent indices) of all subgroups of a subgroup handle.
///
/// Whole-group handles reuse the parent's cached lattice. The base factor of
/// a semidirect product reuses the base group's cached lattice through the
/// canonical embedding — the sweep drivers leans on this to share one
/// lattice across many actions on the same base group.
pub fn subgroups_of_handle(parent: &FiniteGroup, h: &SubgroupHandle<'_>) -> Vec<Vec<u32>> {
    if h.is_whole_group() {
        return all_subgroups(parent).data().all.clone();
    }
    if let Representation::Semidirect { base, .. } = parent.representation() {
        if let Some(parts) = crate::group::semidirect_parts(parent) {
            if parts.base_members == h.members() {
                let base_lattice = all_subgroups(base);
                return base_lattice
                    .data()
                    .all
                    .iter()
                    .map(|sub| {
                        let mut mapped: Vec<u32> = sub
                            .iter()
                            .map(|&bi| parts.base_embedding[bi as usize])
                            .collect();
                        mapped.sort_unstable();
                        mapped
                    })
                    .collect();
            }
        }
    }
    let local = h.materialize();
    let lat = all_subgroups(&local);
    lat.data()
        .all
        .iter()
        .map(|sub| {
            let mut mapped: Vec<u32> = sub.iter().map(|&li| h.members()[li as usize]).collect();
            mapped.sort_unstable();
            mapped
        })
        .collect()
}

/// All subgroups `K` of `h` with `K^x = K`. Usage error if `x` does not
/// normalize `h`.
pub fn invariant_subgroups<'g>(
    parent: &'g FiniteGroup,
    h: &SubgroupHandle<'g>,
    x: u32,
) -> Result<Vec<SubgroupHandle<'g>>, GroupError> {
    for &m in h.members() {
        if !h.contains(parent.conj(m, x)) {
            return Err(GroupError::NotASubgroup {
                reason: alloc::format!(
                    "element {x} does not normalize the subgroup (member {m} escapes)"
                ),
            });
        }
    }
    let subs = subgroups_of_handle(parent, h);
    let mut out = Vec::new();
    for members in subs {
        let invariant = members.iter().all(|&k| {
            let c = parent.conj(k, x);
            members.binary_search(&c).is_ok()
        });
        if invariant {
            out.push(SubgroupHandle::new_unchecked(parent, members));
        }
    }
    Ok(out)
}
