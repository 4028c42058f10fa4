//! Finite groups as fully enumerated element lists.
//!
//! A [`FiniteGroup`] owns a canonically ordered element list (identity at
//! index 0, the rest ascending by the element key, i.e. the derived `Ord` on
//! [`ConcreteElement`]), an inversion table, a dense multiplication table
//! when the order is at most [`MUL_TABLE_LIMIT`], and a small generating
//! set. All structural algorithms work on element indices.
//!
//! Groups are immutable after construction. The lazily filled caches are
//! fill-once and race-benign (concurrent fills compute identical values), so
//! a group can be shared read-only across workers.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::element::{is_bijection, ConcreteElement};
use crate::gf::GaloisField;
use crate::rng::SplitMix64;

/// Hard cap on generator closure.
pub const CLOSURE_CAP: usize = 100_000;
/// Dense n*n multiplication tables are materialized up to this order.
pub const MUL_TABLE_LIMIT: usize = 4096;
/// Cayley-table input is associativity-checked exhaustively up to this order.
const TABLE_FULL_CHECK_LIMIT: usize = 256;
const ASSOC_SPOT_CHECKS: usize = 96;
const DEFAULT_BUILD_SEED: u64 = 0x5e1f_0a6e_57a6_0001;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Generators do not all live in the ambient structure.
    MixedVariants {
        expected: String,
        got: String,
    },
    InvalidElement {
        reason: String,
    },
    ClosureCapExceeded {
        cap: usize,
    },
    /// Cayley-table validation failure; the reason names the failing data.
    TableNotGroup {
        reason: String,
    },
    NotInGroup {
        element: String,
    },
    NotASubgroup {
        reason: String,
    },
    /// The action map is not an automorphism; carries a violating pair of
    /// element indices (a, b) with action(a*b) != action(a)*action(b), or a
    /// malformed-map description.
    NotAnAutomorphism {
        reason: String,
    },
    /// action^order is not the identity map.
    ActionOrderMismatch {
        order: u32,
    },
    NotNormal,
}

impl core::fmt::Display for GroupError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupError::MixedVariants { expected, got } => {
                write!(
                    f,
                    "element kind mismatch: ambient expects {expected}, got {got}"
                )
            }
            GroupError::InvalidElement { reason } => write!(f, "invalid element: {reason}"),
            GroupError::ClosureCapExceeded { cap } => {
                write!(
                    f,
                    "generated group exceeds the closure cap of {cap} elements"
                )
            }
            GroupError::TableNotGroup { reason } => {
                write!(f, "table is not a group table: {reason}")
            }
            GroupError::NotInGroup { element } => {
                write!(f, "element {element} does not belong to the group")
            }
            GroupError::NotASubgroup { reason } => write!(f, "not a subgroup: {reason}"),
            GroupError::NotAnAutomorphism { reason } => {
                write!(f, "action is not an automorphism: {reason}")
            }
            GroupError::ActionOrderMismatch { order } => {
                write!(f, "action composed {order} times is not the identity")
            }
            GroupError::NotNormal => write!(f, "subgroup is not normal"),
        }
    }
}

impl core::error::Error for GroupError {}

/// A validated Cayley table with precomputed inverses.
#[derive(Debug)]
pub struct CayleyTable {
    n: u32,
    entries: Vec<u32>,
    inv: Vec<u32>,
}

impl CayleyTable {
    #[inline]
    pub fn get(&self, i: u32, j: u32) -> u32 {
        self.entries[(i * self.n + j) as usize]
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    pub fn order(&self) -> u32 {
        self.n
    }
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}
impl Eq for CayleyTable {}

/// Multiplication rule giving meaning to element payloads.
#[derive(Clone)]
pub enum Representation {
    Perm {
        degree: u8,
    },
    Mat2 {
        field: Arc<GaloisField>,
    },
    Table {
        table: Arc<CayleyTable>,
    },
    Direct {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
    Semidirect {
        cyclic_order: u32,
        base: Arc<FiniteGroup>,
        action_pows: Arc<Vec<Vec<u32>>>,
    },
    /// Cosets of `kernel` in `parent`, labelled by the minimal-index coset
    /// representative. Used for quotients too large for a coset table.
    Quotient {
        parent: Arc<FiniteGroup>,
        kernel: Arc<Vec<u32>>,
    },
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Representation::Perm { degree: a }, Representation::Perm { degree: b }) => a == b,
            (Representation::Mat2 { field: a }, Representation::Mat2 { field: b }) => {
                Arc::ptr_eq(a, b) || a == b
            }
            (Representation::Table { table: a }, Representation::Table { table: b }) => {
                Arc::ptr_eq(a, b) || a == b
            }
            (
                Representation::Direct {
                    left: l1,
                    right: r1,
                },
                Representation::Direct {
                    left: l2,
                    right: r2,
                },
            ) => (Arc::ptr_eq(l1, l2) || l1 == l2) && (Arc::ptr_eq(r1, r2) || r1 == r2),
            (
                Representation::Semidirect {
                    cyclic_order: m1,
                    base: b1,
                    action_pows: a1,
                },
                Representation::Semidirect {
                    cyclic_order: m2,
                    base: b2,
                    action_pows: a2,
                },
            ) => m1 == m2 && (Arc::ptr_eq(b1, b2) || b1 == b2) && a1 == a2,
            (
                Representation::Quotient {
                    parent: p1,
                    kernel: k1,
                },
                Representation::Quotient {
                    parent: p2,
                    kernel: k2,
                },
            ) => (Arc::ptr_eq(p1, p2) || p1 == p2) && k1 == k2,
            _ => false,
        }
    }
}
impl Eq for Representation {}

impl core::fmt::Debug for Representation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Representation::Perm { degree } => write!(f, "Perm<{degree}>"),
            Representation::Mat2 { field } => write!(f, "Mat2<{}>", field.describe()),
            Representation::Table { table } => write!(f, "Table<{}>", table.order()),
            Representation::Direct { left, right } => {
                write!(f, "Direct<{} x {}>", left.order(), right.order())
            }
            Representation::Semidirect {
                cyclic_order, base, ..
            } => {
                write!(f, "Semidirect<C{} on {}>", cyclic_order, base.order())
            }
            Representation::Quotient { parent, kernel } => {
                write!(f, "Quotient<{}/{}>", parent.order(), kernel.len())
            }
        }
    }
}

impl Representation {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Representation::Perm { .. } => "permutation",
            Representation::Mat2 { .. } => "matrix",
            Representation::Table { .. } => "table-index",
            Representation::Direct { .. } | Representation::Semidirect { .. } => "pair",
            Representation::Quotient { .. } => "coset",
        }
    }

    pub fn identity_elem(&self) -> ConcreteElement {
        match self {
            Representation::Perm { degree } => ConcreteElement::Perm((0..*degree).collect()),
            Representation::Mat2 { .. } => ConcreteElement::Mat2([1, 0, 0, 1]),
            Representation::Table { .. } => ConcreteElement::TableIdx(0),
            Representation::Direct { left, right } => {
                ConcreteElement::pair(left.element(0).clone(), right.element(0).clone())
            }
            Representation::Semidirect { base, .. } => {
                ConcreteElement::pair(ConcreteElement::TableIdx(0), base.element(0).clone())
            }
            Representation::Quotient { parent, .. } => parent.element(0).clone(),
        }
    }

    pub fn mul_elem(&self, a: &ConcreteElement, b: &ConcreteElement) -> ConcreteElement {
        match (self, a, b) {
            (Representation::Perm { .. }, ConcreteElement::Perm(x), ConcreteElement::Perm(y)) => {
                // apply x first, then y
                ConcreteElement::Perm(x.iter().map(|&i| y[i as usize]).collect())
            }
            (
                Representation::Mat2 { field },
                ConcreteElement::Mat2(x),
                ConcreteElement::Mat2(y),
            ) => {
                let f = field.as_ref();
                let m = |i: u8, j: u8| f.mul_of(i as u32, j as u32);
                let s = |i: u32, j: u32| f.add_of(i, j) as u8;
                ConcreteElement::Mat2([
                    s(m(x[0], y[0]), m(x[1], y[2])),
                    s(m(x[0], y[1]), m(x[1], y[3])),
                    s(m(x[2], y[0]), m(x[3], y[2])),
                    s(m(x[2], y[1]), m(x[3], y[3])),
                ])
            }
            (
                Representation::Table { table },
                ConcreteElement::TableIdx(i),
                ConcreteElement::TableIdx(j),
            ) => ConcreteElement::TableIdx(table.get(*i, *j)),
            (
                Representation::Direct { left, right },
                ConcreteElement::Pair(a1, a2),
                ConcreteElement::Pair(b1, b2),
            ) => ConcreteElement::pair(left.mul_payload(a1, b1), right.mul_payload(a2, b2)),
            (
                Representation::Semidirect {
                    cyclic_order,
                    base,
                    action_pows,
                },
                ConcreteElement::Pair(a1, a2),
                ConcreteElement::Pair(b1, b2),
            ) => {
                let (&ConcreteElement::TableIdx(i), &ConcreteElement::TableIdx(j)) =
                    (a1.as_ref(), b1.as_ref())
                else {
                    panic!("semidirect elements carry cyclic table indices")
                };
                let hi = base.index_of(a2).expect("payload in base");
                let hj = base.index_of(b2).expect("payload in base");
                // (x^i h) (x^j h') = x^(i+j) (h^(x^j)) h'
                let twisted = action_pows[j as usize][hi as usize];
                let prod = base.mul(twisted, hj);
                ConcreteElement::pair(
                    ConcreteElement::TableIdx((i + j) % cyclic_order),
                    base.element(prod).clone(),
                )
            }
            (Representation::Quotient { parent, kernel }, a, b) => {
                let ia = parent.index_of(a).expect("coset representative in parent");
                let ib = parent.index_of(b).expect("coset representative in parent");
                let prod = parent.mul(ia, ib);
                parent.element(coset_min(parent, kernel, prod)).clone()
            }
            _ => panic!("element payload does not match representation"),
        }
    }

    pub fn inv_elem(&self, a: &ConcreteElement) -> ConcreteElement {
        match (self, a) {
            (Representation::Perm { .. }, ConcreteElement::Perm(x)) => {
                let mut inv = vec![0u8; x.len()];
                for (i, &img) in x.iter().enumerate() {
                    inv[img as usize] = i as u8;
                }
                ConcreteElement::Perm(inv)
            }
            (Representation::Mat2 { field }, ConcreteElement::Mat2([a, b, c, d])) => {
                let f = field.as_ref();
                let det = f.add_of(
                    f.mul_of(*a as u32, *d as u32),
                    f.neg_of(f.mul_of(*b as u32, *c as u32)),
                );
                let di = f.inv_of(det);
                ConcreteElement::Mat2([
                    f.mul_of(*d as u32, di) as u8,
                    f.mul_of(f.neg_of(*b as u32), di) as u8,
                    f.mul_of(f.neg_of(*c as u32), di) as u8,
                    f.mul_of(*a as u32, di) as u8,
                ])
            }
            (Representation::Table { table }, ConcreteElement::TableIdx(i)) => {
                ConcreteElement::TableIdx(table.inv(*i))
            }
            (Representation::Direct { left, right }, ConcreteElement::Pair(a1, a2)) => {
                ConcreteElement::pair(left.inv_payload(a1), right.inv_payload(a2))
            }
            (
                Representation::Semidirect {
                    cyclic_order,
                    base,
                    action_pows,
                },
                ConcreteElement::Pair(a1, a2),
            ) => {
                let &ConcreteElement::TableIdx(i) = a1.as_ref() else {
                    panic!("semidirect elements carry cyclic table indices")
                };
                let hi = base.index_of(a2).expect("payload in base");
                let j = (cyclic_order - i) % cyclic_order;
                let hinv = base.inv(hi);
                let twisted = action_pows[j as usize][hinv as usize];
                ConcreteElement::pair(ConcreteElement::TableIdx(j), base.element(twisted).clone())
            }
            (Representation::Quotient { parent, kernel }, a) => {
                let ia = parent.index_of(a).expect("coset representative in parent");
                parent
                    .element(coset_min(parent, kernel, parent.inv(ia)))
                    .clone()
            }
            _ => panic!("element payload does not match representation"),
        }
    }

    /// Checks that a payload denotes a valid element of this ambient
    /// structure.
    pub fn validate_elem(&self, e: &ConcreteElement) -> Result<(), GroupError> {
        let mismatch = || GroupError::MixedVariants {
            expected: String::from(self.kind_name()),
            got: String::from(e.variant_name()),
        };
        match (self, e) {
            (Representation::Perm { degree }, ConcreteElement::Perm(images)) => {
                if images.len() != *degree as usize || !is_bijection(images) {
                    return Err(GroupError::InvalidElement {
                        reason: format!("{} is not a bijection on {} points", e.describe(), degree),
                    });
                }
                Ok(())
            }
            (Representation::Mat2 { field }, ConcreteElement::Mat2([a, b, c, d])) => {
                let q = field.order();
                for &x in &[*a, *b, *c, *d] {
                    if (x as u32) >= q {
                        return Err(GroupError::InvalidElement {
                            reason: format!("entry {x} outside {}", field.describe()),
                        });
                    }
                }
                let det = field.add_of(
                    field.mul_of(*a as u32, *d as u32),
                    field.neg_of(field.mul_of(*b as u32, *c as u32)),
                );
                if det == 0 {
                    return Err(GroupError::InvalidElement {
                        reason: format!("{} is singular", e.describe()),
                    });
                }
                Ok(())
            }
            (Representation::Table { table }, ConcreteElement::TableIdx(i)) => {
                if *i >= table.order() {
                    return Err(GroupError::InvalidElement {
                        reason: format!("index {i} outside table of order {}", table.order()),
                    });
                }
                Ok(())
            }
            (Representation::Direct { left, right }, ConcreteElement::Pair(a, b)) => {
                if left.index_of(a).is_none() || right.index_of(b).is_none() {
                    return Err(GroupError::InvalidElement {
                        reason: format!("{} is not a member of the product factors", e.describe()),
                    });
                }
                Ok(())
            }
            (
                Representation::Semidirect {
                    cyclic_order, base, ..
                },
                ConcreteElement::Pair(a, b),
            ) => {
                match a.as_ref() {
                    ConcreteElement::TableIdx(i) if i < cyclic_order => {}
                    _ => return Err(mismatch()),
                }
                if base.index_of(b).is_none() {
                    return Err(GroupError::InvalidElement {
                        reason: format!("{} is not a member of the acted-on factor", e.describe()),
                    });
                }
                Ok(())
            }
            (Representation::Quotient { parent, .. }, e) => {
                if parent.index_of(e).is_none() {
                    return Err(GroupError::InvalidElement {
                        reason: format!("{} is not a member of the quotient parent", e.describe()),
                    });
                }
                Ok(())
            }
            _ => Err(mismatch()),
        }
    }
}

fn coset_min(parent: &FiniteGroup, kernel: &[u32], idx: u32) -> u32 {
    kernel
        .iter()
        .map(|&n| parent.mul(idx, n))
        .min()
        .expect("kernel is non-empty")
}

pub(crate) struct Caches {
    pub element_orders: OnceBox<Vec<u32>>,
    pub conjugacy_classes: OnceBox<Vec<Vec<u32>>>,
    pub center: OnceBox<Vec<u32>>,
    pub derived_subgroup: OnceBox<Vec<u32>>,
    pub normal_subgroups: OnceBox<Vec<Vec<u32>>>,
    pub nilpotent: OnceBox<bool>,
    pub soluble: OnceBox<bool>,
    pub lattice: OnceBox<crate::lattice::LatticeData>,
}

impl Caches {
    fn new() -> Self {
        Caches {
            element_orders: OnceBox::new(),
            conjugacy_classes: OnceBox::new(),
            center: OnceBox::new(),
            derived_subgroup: OnceBox::new(),
            normal_subgroups: OnceBox::new(),
            nilpotent: OnceBox::new(),
            soluble: OnceBox::new(),
            lattice: OnceBox::new(),
        }
    }
}

/// A fully enumerated finite group.
pub struct FiniteGroup {
    rep: Representation,
    /// Canonical order: identity first, the rest ascending by element key.
    elements: Vec<ConcreteElement>,
    inv: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    generators: Vec<u32>,
    pub(crate) caches: Caches,
}

impl core::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "FiniteGroup(order {}, {:?})", self.order(), self.rep)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Assembles a group from a closed element set. Internal; callers
    /// guarantee closure.
    fn from_closed_elements(
        rep: Representation,
        mut elements: Vec<ConcreteElement>,
        generator_payloads: &[ConcreteElement],
        seed: u64,
    ) -> FiniteGroup {
        let identity = rep.identity_elem();
        elements.sort_unstable();
        elements.dedup();
        let pos = elements
            .binary_search(&identity)
            .expect("identity in closure");
        elements.remove(pos);
        let mut all = Vec::with_capacity(elements.len() + 1);
        all.push(identity);
        all.append(&mut elements);

        let mut g = FiniteGroup {
            rep,
            elements: all,
            inv: Vec::new(),
            mul_table: None,
            generators: Vec::new(),
            caches: Caches::new(),
        };
        g.build_mul_table();
        g.build_inverses();
        g.generators = generator_payloads
            .iter()
            .map(|p| g.index_of(p).expect("generator in closure"))
            .filter(|&i| i != 0)
            .collect::<BTreeSet<u32>>()
            .into_iter()
            .collect();
        if g.generators.is_empty() && g.order() > 1 {
            g.generators = greedy_generators(&g);
        }
        g.spot_check_associativity(seed);
        g
    }

    fn build_mul_table(&mut self) {
        let n = self.order();
        if n > MUL_TABLE_LIMIT {
            return;
        }
        let mut table = vec![0u32; n * n];
        match &self.rep {
            Representation::Table { table: t } if self.is_full_table_group(t) => {
                for i in 0..n as u32 {
                    for j in 0..n as u32 {
                        table[(i as usize) * n + j as usize] = t.get(i, j);
                    }
                }
            }
            Representation::Semidirect {
                cyclic_order,
                base,
                action_pows,
            } => {
                // index-arithmetic fill: decode (i, h) parts once
                let m = *cyclic_order;
                let bh = base.order() as u32;
                let mut parts: Vec<(u32, u32)> = Vec::with_capacity(n);
                let mut pair_index = vec![u32::MAX; (m as usize) * bh as usize];
                for (gi, e) in self.elements.iter().enumerate() {
                    let ConcreteElement::Pair(l, r) = e else {
                        unreachable!()
                    };
                    let ConcreteElement::TableIdx(ci) = l.as_ref() else {
                        unreachable!()
                    };
                    let hi = base.index_of(r).expect("payload in base");
                    parts.push((*ci, hi));
                    pair_index[(*ci * bh + hi) as usize] = gi as u32;
                }
                for (gi, &(ci, hi)) in parts.iter().enumerate() {
                    for (gj, &(cj, hj)) in parts.iter().enumerate() {
                        let ck = (ci + cj) % m;
                        let hk = base.mul(action_pows[cj as usize][hi as usize], hj);
                        table[gi * n + gj] = pair_index[(ck * bh + hk) as usize];
                    }
                }
            }
            Representation::Direct { left, right } => {
                let rn = right.order() as u32;
                let mut parts: Vec<(u32, u32)> = Vec::with_capacity(n);
                let mut pair_index = vec![u32::MAX; left.order() * right.order()];
                for (gi, e) in self.elements.iter().enumerate() {
                    let ConcreteElement::Pair(l, r) = e else {
                        unreachable!()
                    };
                    let li = left.index_of(l).expect("payload in factor");
                    let ri = right.index_of(r).expect("payload in factor");
                    parts.push((li, ri));
                    pair_index[(li * rn + ri) as usize] = gi as u32;
                }
                for (gi, &(li, ri)) in parts.iter().enumerate() {
                    for (gj, &(lj, rj)) in parts.iter().enumerate() {
                        let lk = left.mul(li, lj);
                        let rk = right.mul(ri, rj);
                        table[gi * n + gj] = pair_index[(lk * rn + rk) as usize];
                    }
                }
            }
            _ => {
                for i in 0..n {
                    for j in 0..n {
                        let p = self.rep.mul_elem(&self.elements[i], &self.elements[j]);
                        table[i * n + j] =
                            lookup_sorted(&self.elements, &p).expect("closure under product");
                    }
                }
            }
        }
        self.mul_table = Some(table);
    }

    fn is_full_table_group(&self, t: &CayleyTable) -> bool {
        self.order() == t.order() as usize
            && self
                .elements
                .iter()
                .enumerate()
                .all(|(i, e)| matches!(e, ConcreteElement::TableIdx(j) if *j == i as u32))
    }

    fn build_inverses(&mut self) {
        let n = self.order();
        let mut inv = vec![u32::MAX; n];
        if let Some(table) = &self.mul_table {
            for i in 0..n {
                for j in 0..n {
                    if table[i * n + j] == 0 {
                        inv[i] = j as u32;
                        break;
                    }
                }
            }
        } else {
            for (i, e) in self.elements.iter().enumerate() {
                let p = self.rep.inv_elem(e);
                inv[i] = lookup_sorted(&self.elements, &p).expect("closure under inverse");
            }
        }
        assert!(
            inv.iter().all(|&i| i != u32::MAX),
            "every element has a listed inverse"
        );
        self.inv = inv;
    }

    fn spot_check_associativity(&self, seed: u64) {
        let n = self.order() as u64;
        if n <= 1 {
            return;
        }
        let mut rng = SplitMix64::new(seed);
        for _ in 0..ASSOC_SPOT_CHECKS {
            let a = rng.below(n) as u32;
            let b = rng.below(n) as u32;
            let c = rng.below(n) as u32;
            assert_eq!(
                self.mul(self.mul(a, b), c),
                self.mul(a, self.mul(b, c)),
                "associativity spot check failed"
            );
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    #[inline]
    pub fn element(&self, i: u32) -> &ConcreteElement {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[ConcreteElement] {
        &self.elements
    }

    /// Index of a payload, by binary search over the canonical order.
    pub fn index_of(&self, e: &ConcreteElement) -> Option<u32> {
        lookup_sorted(&self.elements, e)
    }

    #[inline]
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        if let Some(table) = &self.mul_table {
            table[(i as usize) * self.order() + j as usize]
        } else {
            let p = self
                .rep
                .mul_elem(&self.elements[i as usize], &self.elements[j as usize]);
            self.index_of(&p).expect("closure under product")
        }
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    /// `g^x = x^-1 g x`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.mul(self.inv(a), self.inv(b)), a), b)
    }

    pub fn pow(&self, g: u32, e: u32) -> u32 {
        let mut acc = 0u32;
        for _ in 0..e {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn mul_payload(&self, a: &ConcreteElement, b: &ConcreteElement) -> ConcreteElement {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) if self.mul_table.is_some() => {
                self.elements[self.mul(i, j) as usize].clone()
            }
            _ => self.rep.mul_elem(a, b),
        }
    }

    pub fn inv_payload(&self, a: &ConcreteElement) -> ConcreteElement {
        match self.index_of(a) {
            Some(i) => self.elements[self.inv(i) as usize].clone(),
            None => self.rep.inv_elem(a),
        }
    }

    /// Least `m >= 1` with `g^m = 1`; always divides the group order.
    pub fn order_of_index(&self, g: u32) -> u32 {
        let orders = self.element_orders();
        orders[g as usize]
    }

    /// Per-element orders, computed once and cached.
    pub fn element_orders(&self) -> &[u32] {
        self.caches
            .element_orders
            .get_or_init(|| {
                let n = self.order();
                let mut orders = vec![0u32; n];
                orders[0] = 1;
                for g in 1..n as u32 {
                    if orders[g as usize] != 0 {
                        continue;
                    }
                    // walk the cyclic subgroup once, then fill orders of all powers
                    let mut cycle = vec![g];
                    let mut x = self.mul(g, g);
                    while x != 0 {
                        cycle.push(x);
                        x = self.mul(x, g);
                    }
                    let m = (cycle.len() + 1) as u32;
                    for (k, &p) in cycle.iter().enumerate() {
                        if orders[p as usize] == 0 {
                            let k = (k + 1) as u32;
                            orders[p as usize] = m / gcd(m, k);
                        }
                    }
                }
                Box::new(orders)
            })
            .as_slice()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Handle covering the whole group.
    pub fn full_handle(&self) -> SubgroupHandle<'_> {
        SubgroupHandle::new_unchecked(self, (0..self.order() as u32).collect())
    }

    pub fn trivial_handle(&self) -> SubgroupHandle<'_> {
        SubgroupHandle::new_unchecked(self, vec![0])
    }

    /// Closure of a set of element indices as a sorted member list.
    ///
    /// Incremental: seeds are folded in one at a time, each extension
    /// completing cosets of the subgroup built so far, so redundant seeds
    /// (e.g. a whole conjugacy class) cost one membership test each.
    pub fn closure_of(&self, seeds: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut present = vec![false; n];
        present[0] = true;
        let mut members = vec![0u32];
        let mut gens_used: Vec<u32> = Vec::new();
        for &s in seeds {
            if present[s as usize] {
                continue;
            }
            // extend <members> by s, completing cosets of the old subgroup
            fn mark(present: &mut [bool], members: &mut Vec<u32>, x: u32) {
                if !present[x as usize] {
                    present[x as usize] = true;
                    members.push(x);
                }
            }
            let base = members.clone();
            let mut reps = vec![s];
            for &m in &base {
                mark(&mut present, &mut members, self.mul(m, s));
            }
            let mut qi = 0;
            while qi < reps.len() {
                let r = reps[qi];
                qi += 1;
                for t in gens_used.iter().copied().chain(core::iter::once(s)) {
                    let cand = self.mul(r, t);
                    if !present[cand as usize] {
                        reps.push(cand);
                        for &m in &base {
                            mark(&mut present, &mut members, self.mul(m, cand));
                        }
                    }
                }
            }
            gens_used.push(s);
            if members.len() == n {
                return (0..n as u32).collect();
            }
        }
        members.sort_unstable();
        members
    }

    pub fn describe(&self) -> String {
        format!("group of order {} ({:?})", self.order(), self.rep)
    }
}

#[inline]
fn lookup_sorted(elements: &[ConcreteElement], e: &ConcreteElement) -> Option<u32> {
    if elements.is_empty() {
        return None;
    }
    if e == &elements[0] {
        return Some(0);
    }
    elements[1..].binary_search(e).ok().map(|i| (i + 1) as u32)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Small generating set found greedily over the canonical element order.
fn greedy_generators(g: &FiniteGroup) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut closed = vec![0u32];
    for i in 1..g.order() as u32 {
        if closed.binary_search(&i).is_err() {
            gens.push(i);
            closed = g.closure_of(&gens);
            if closed.len() == g.order() {
                break;
            }
        }
    }
    gens
}

/// Closes a generator list into a group, Dimino-style: one generator at a
/// time, completing cosets of the previously generated subgroup.
pub fn close_group(
    rep: Representation,
    generators: &[ConcreteElement],
) -> Result<FiniteGroup, GroupError> {
    close_group_with(rep, generators, CLOSURE_CAP, DEFAULT_BUILD_SEED)
}

pub fn close_group_with(
    rep: Representation,
    generators: &[ConcreteElement],
    cap: usize,
    seed: u64,
) -> Result<FiniteGroup, GroupError> {
    for g in generators {
        rep.validate_elem(g)?;
    }
    let identity = rep.identity_elem();
    let mut set: BTreeSet<ConcreteElement> = BTreeSet::new();
    set.insert(identity.clone());
    let mut elems: Vec<ConcreteElement> = vec![identity];

    for (gi, g) in generators.iter().enumerate() {
        if set.contains(g) {
            continue;
        }
        let base = elems.clone();
        let active = &generators[..=gi];
        let mut reps: Vec<ConcreteElement> = vec![g.clone()];
        for b in &base {
            let t = rep.mul_elem(b, g);
            if set.insert(t.clone()) {
                elems.push(t);
            }
        }
        let mut qi = 0;
        while qi < reps.len() {
            let r = reps[qi].clone();
            qi += 1;
            for s in active {
                let t = rep.mul_elem(&r, s);
                if !set.contains(&t) {
                    reps.push(t.clone());
                    for b in &base {
                        let u = rep.mul_elem(b, &t);
                        if set.insert(u.clone()) {
                            elems.push(u);
                        }
                    }
                    if elems.len() > cap {
                        return Err(GroupError::ClosureCapExceeded { cap });
                    }
                }
            }
        }
        if elems.len() > cap {
            return Err(GroupError::ClosureCapExceeded { cap });
        }
    }

    Ok(FiniteGroup::from_closed_elements(
        rep, elems, generators, seed,
    ))
}

/// Ingests an explicit Cayley table. Index 0 must be the identity.
pub fn group_from_table(entries: Vec<Vec<u32>>) -> Result<FiniteGroup, GroupError> {
    group_from_table_with(entries, DEFAULT_BUILD_SEED)
}

pub fn group_from_table_with(entries: Vec<Vec<u32>>, seed: u64) -> Result<FiniteGroup, GroupError> {
    let n = entries.len();
    if n == 0 {
        return Err(GroupError::TableNotGroup {
            reason: String::from("empty table"),
        });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in entries.iter().enumerate() {
        if row.len() != n {
            return Err(GroupError::TableNotGroup {
                reason: format!("row {i} has {} entries, expected {n}", row.len()),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if v as usize >= n {
                return Err(GroupError::TableNotGroup {
                    reason: format!("entry ({i},{j}) = {v} out of range"),
                });
            }
            flat.push(v);
        }
    }
    // identity row and column
    for i in 0..n {
        if flat[i] != i as u32 {
            return Err(GroupError::TableNotGroup {
                reason: format!("row 0 is not the identity at column {i}"),
            });
        }
        if flat[i * n] != i as u32 {
            return Err(GroupError::TableNotGroup {
                reason: format!("column 0 is not the identity at row {i}"),
            });
        }
    }
    // Latin square
    for i in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            let r = flat[i * n + j] as usize;
            let c = flat[j * n + i] as usize;
            if seen_row[r] {
                return Err(GroupError::TableNotGroup {
                    reason: format!("row {i} repeats element {r}"),
                });
            }
            if seen_col[c] {
                return Err(GroupError::TableNotGroup {
                    reason: format!("column {i} repeats element {c}"),
                });
            }
            seen_row[r] = true;
            seen_col[c] = true;
        }
    }
    // inverses
    let mut inv = vec![u32::MAX; n];
    for i in 0..n {
        for j in 0..n {
            if flat[i * n + j] == 0 && flat[j * n + i] == 0 {
                inv[i] = j as u32;
                break;
            }
        }
        if inv[i] == u32::MAX {
            return Err(GroupError::TableNotGroup {
                reason: format!("element {i} has no two-sided inverse"),
            });
        }
    }
    // associativity: exhaustive when small, seeded samples beyond
    let check = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
        let ab_c = flat[(flat[a * n + b] as usize) * n + c];
        let a_bc = flat[a * n + flat[b * n + c] as usize];
        if ab_c != a_bc {
            return Err(GroupError::TableNotGroup {
                reason: format!("associativity fails on triple ({a},{b},{c}): ({a}*{b})*{c} = {ab_c}, {a}*({b}*{c}) = {a_bc}"),
            });
        }
        Ok(())
    };
    if n <= TABLE_FULL_CHECK_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..8 * n {
            check(
                rng.below(n as u64) as usize,
                rng.below(n as u64) as usize,
                rng.below(n as u64) as usize,
            )?;
        }
    }

    let table = Arc::new(CayleyTable {
        n: n as u32,
        entries: flat,
        inv,
    });
    let rep = Representation::Table { table };
    let elements: Vec<ConcreteElement> = (0..n as u32).map(ConcreteElement::TableIdx).collect();
    let mut g = FiniteGroup {
        rep,
        elements,
        inv: Vec::new(),
        mul_table: None,
        generators: Vec::new(),
        caches: Caches::new(),
    };
    g.build_mul_table();
    g.build_inverses();
    g.generators = greedy_generators(&g);
    g.spot_check_associativity(seed);
    Ok(g)
}

/// Direct product on pair elements.
pub fn direct_product(left: &Arc<FiniteGroup>, right: &Arc<FiniteGroup>) -> FiniteGroup {
    let rep = Representation::Direct {
        left: Arc::clone(left),
        right: Arc::clone(right),
    };
    let mut elems = Vec::with_capacity(left.order() * right.order());
    for l in left.elements() {
        for r in right.elements() {
            elems.push(ConcreteElement::pair(l.clone(), r.clone()));
        }
    }
    let mut gens: Vec<ConcreteElement> = Vec::new();
    for &gl in left.generators() {
        gens.push(ConcreteElement::pair(
            left.element(gl).clone(),
            right.element(0).clone(),
        ));
    }
    for &gr in right.generators() {
        gens.push(ConcreteElement::pair(
            left.element(0).clone(),
            right.element(gr).clone(),
        ));
    }
    FiniteGroup::from_closed_elements(rep, elems, &gens, DEFAULT_BUILD_SEED)
}

/// Split extension `C_m x| base` where the cyclic generator acts by the
/// given automorphism (an index map on the base's canonical element list).
/// The action must be an automorphism with `action^m = identity`; both are
/// checked exhaustively.
pub fn semidirect_product(
    base: &Arc<FiniteGroup>,
    x_order: u32,
    action: &[u32],
) -> Result<FiniteGroup, GroupError> {
    if x_order == 0 {
        return Err(GroupError::ActionOrderMismatch { order: 0 });
    }
    let n = base.order();
    if action.len() != n {
        return Err(GroupError::NotAnAutomorphism {
            reason: format!("map has {} entries, group has {n}", action.len()),
        });
    }
    let mut seen = vec![false; n];
    for &img in action {
        if img as usize >= n || seen[img as usize] {
            return Err(GroupError::NotAnAutomorphism {
                reason: String::from("map is not a bijection"),
            });
        }
        seen[img as usize] = true;
    }
    if action[0] != 0 {
        return Err(GroupError::NotAnAutomorphism {
            reason: String::from("identity is not fixed"),
        });
    }
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let lhs = action[base.mul(a, b) as usize];
            let rhs = base.mul(action[a as usize], action[b as usize]);
            if lhs != rhs {
                return Err(GroupError::NotAnAutomorphism {
                    reason: format!(
                        "violating pair ({a}, {b}): action(a*b) = {lhs} but action(a)*action(b) = {rhs}"
                    ),
                });
            }
        }
    }
    // powers of the action; action^x_order must be the identity map
    let mut action_pows: Vec<Vec<u32>> = Vec::with_capacity(x_order as usize);
    action_pows.push((0..n as u32).collect());
    for k in 1..x_order {
        let prev = &action_pows[(k - 1) as usize];
        action_pows.push(prev.iter().map(|&i| action[i as usize]).collect());
    }
    let last: Vec<u32> = action_pows[(x_order - 1) as usize]
        .iter()
        .map(|&i| action[i as usize])
        .collect();
    if last.iter().enumerate().any(|(i, &v)| v != i as u32) {
        return Err(GroupError::ActionOrderMismatch { order: x_order });
    }

    let rep = Representation::Semidirect {
        cyclic_order: x_order,
        base: Arc::clone(base),
        action_pows: Arc::new(action_pows),
    };
    let mut elems = Vec::with_capacity(x_order as usize * n);
    for i in 0..x_order {
        for h in base.elements() {
            elems.push(ConcreteElement::pair(
                ConcreteElement::TableIdx(i),
                h.clone(),
            ));
        }
    }
    let mut gens: Vec<ConcreteElement> = Vec::new();
    if x_order > 1 {
        gens.push(ConcreteElement::pair(
            ConcreteElement::TableIdx(1),
            base.element(0).clone(),
        ));
    }
    for &gh in base.generators() {
        gens.push(ConcreteElement::pair(
            ConcreteElement::TableIdx(0),
            base.element(gh).clone(),
        ));
    }
    Ok(FiniteGroup::from_closed_elements(
        rep,
        elems,
        &gens,
        DEFAULT_BUILD_SEED,
    ))
}

/// Decomposition data of a semidirect (or direct-with-cyclic-left) product.
pub struct SemidirectParts {
    /// Index of the acting generator `x = (1, e)` in the product.
    pub acting_index: u32,
    /// Members of the acted-on factor `{(0, h)}`, sorted product indices.
    pub base_members: Vec<u32>,
    /// `base_embedding[i]` = product index of `(0, base element i)`.
    pub base_embedding: Vec<u32>,
    /// Members of the cyclic factor `{(i, e)}`.
    pub cyclic_members: Vec<u32>,
}

/// Recovers the canonical factor embeddings of a semidirect product.
pub fn semidirect_parts(g: &FiniteGroup) -> Option<SemidirectParts> {
    let Representation::Semidirect {
        cyclic_order, base, ..
    } = g.representation()
    else {
        return None;
    };
    let base = Arc::clone(base);
    let mut base_embedding = Vec::with_capacity(base.order());
    for h in base.elements() {
        let e = ConcreteElement::pair(ConcreteElement::TableIdx(0), h.clone());
        base_embedding.push(g.index_of(&e).expect("embedding in product"));
    }
    let mut base_members = base_embedding.clone();
    base_members.sort_unstable();
    let mut cyclic_members = Vec::with_capacity(*cyclic_order as usize);
    for i in 0..*cyclic_order {
        let e = ConcreteElement::pair(ConcreteElement::TableIdx(i), base.element(0).clone());
        cyclic_members.push(g.index_of(&e).expect("embedding in product"));
    }
    let acting_index = cyclic_members[usize::from(*cyclic_order > 1)];
    cyclic_members.sort_unstable();
    Some(SemidirectParts {
        acting_index,
        base_members,
        base_embedding,
        cyclic_members,
    })
}

/// Factor embeddings of a direct product: (left members, right members).
pub fn direct_parts(g: &FiniteGroup) -> Option<(Vec<u32>, Vec<u32>)> {
    let Representation::Direct { left, right } = g.representation() else {
        return None;
    };
    let mut lm: Vec<u32> = left
        .elements()
        .iter()
        .map(|l| {
            g.index_of(&ConcreteElement::pair(l.clone(), right.element(0).clone()))
                .expect("embedding in product")
        })
        .collect();
    let mut rm: Vec<u32> = right
        .elements()
        .iter()
        .map(|r| {
            g.index_of(&ConcreteElement::pair(left.element(0).clone(), r.clone()))
                .expect("embedding in product")
        })
        .collect();
    lm.sort_unstable();
    rm.sort_unstable();
    Some((lm, rm))
}

/// Least `m >= 1` with `g^m = 1`. Usage error if `g` is not a member.
pub fn element_order(g: &ConcreteElement, group: &FiniteGroup) -> Result<u32, GroupError> {
    match group.index_of(g) {
        Some(i) => Ok(group.order_of_index(i)),
        None => Err(GroupError::NotInGroup {
            element: g.describe(),
        }),
    }
}

/// Materializes a subgroup (given by sorted parent indices containing 0) as
/// a standalone group sharing the parent's representation.
pub fn materialize_subgroup(parent: &FiniteGroup, members: &[u32]) -> FiniteGroup {
    debug_assert!(members.first() == Some(&0));
    debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
    let elements: Vec<ConcreteElement> =
        members.iter().map(|&i| parent.element(i).clone()).collect();
    // parent order is canonical, so a sorted index subset is already in
    // canonical order (identity first, rest ascending by key)
    let mut g = FiniteGroup {
        rep: parent.representation().clone(),
        elements,
        inv: Vec::new(),
        mul_table: None,
        generators: Vec::new(),
        caches: Caches::new(),
    };
    // local multiplication through the parent
    let n = members.len();
    if n <= MUL_TABLE_LIMIT {
        let mut local_of_parent: BTreeMap<u32, u32> = BTreeMap::new();
        for (li, &pi) in members.iter().enumerate() {
            local_of_parent.insert(pi, li as u32);
        }
        let mut table = vec![0u32; n * n];
        for (li, &pi) in members.iter().enumerate() {
            for (lj, &pj) in members.iter().enumerate() {
                let pk = parent.mul(pi, pj);
                table[li * n + lj] = *local_of_parent
                    .get(&pk)
                    .expect("member set is closed under multiplication");
            }
        }
        g.mul_table = Some(table);
    }
    g.build_inverses();
    g.generators = greedy_generators(&g);
    g
}

/// Quotient of `parent` by a normal subgroup, as a coset Cayley table when
/// the index is small and as coset-representative elements otherwise.
pub fn quotient_group(
    parent: &Arc<FiniteGroup>,
    normal_members: &[u32],
) -> Result<FiniteGroup, GroupError> {
    let n = parent.order();
    // normality check against the generators
    for &h in normal_members {
        for &g in parent.generators() {
            let c = parent.conj(h, g);
            if normal_members.binary_search(&c).is_err() {
                return Err(GroupError::NotNormal);
            }
        }
    }
    let m = normal_members.len();
    if !n.is_multiple_of(m) {
        return Err(GroupError::NotASubgroup {
            reason: format!("size {m} does not divide group order {n}"),
        });
    }
    let index = n / m;

    // assign coset ids in order of first appearance along the canonical
    // element order; coset of the identity becomes id 0
    let mut coset_of = vec![u32::MAX; n];
    let mut coset_reps: Vec<u32> = Vec::with_capacity(index);
    for i in 0..n as u32 {
        if coset_of[i as usize] != u32::MAX {
            continue;
        }
        let id = coset_reps.len() as u32;
        coset_reps.push(i);
        for &k in normal_members {
            let e = parent.mul(i, k);
            coset_of[e as usize] = id;
        }
    }
    debug_assert_eq!(coset_reps.len(), index);

    if index <= MUL_TABLE_LIMIT {
        let mut entries = vec![vec![0u32; index]; index];
        for (ci, &ri) in coset_reps.iter().enumerate() {
            for (cj, &rj) in coset_reps.iter().enumerate() {
                entries[ci][cj] = coset_of[parent.mul(ri, rj) as usize];
            }
        }
        group_from_table(entries)
    } else {
        let kernel: Vec<u32> = normal_members.to_vec();
        let rep = Representation::Quotient {
            parent: Arc::clone(parent),
            kernel: Arc::new(kernel),
        };
        let elements: Vec<ConcreteElement> = coset_reps
            .iter()
            .map(|&r| parent.element(r).clone())
            .collect();
        let gens: Vec<ConcreteElement> = parent
            .generators()
            .iter()
            .map(|&g| {
                let r = coset_reps[coset_of[g as usize] as usize];
                parent.element(r).clone()
            })
            .collect();
        Ok(FiniteGroup::from_closed_elements(
            rep,
            elements,
            &gens,
            DEFAULT_BUILD_SEED,
        ))
    }
}

/// A subgroup of a parent group, identified by its sorted member indices.
#[derive(Clone)]
pub struct SubgroupHandle<'g> {
    parent: &'g FiniteGroup,
    members: Vec<u32>,
}

impl core::fmt::Debug for SubgroupHandle<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {})",
            self.order(),
            self.parent.order()
        )
    }
}

impl PartialEq for SubgroupHandle<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}
impl Eq for SubgroupHandle<'_> {}

impl<'g> SubgroupHandle<'g> {
    /// Wraps a member set known to be a subgroup (sorted, contains 0).
    pub fn new_unchecked(parent: &'g FiniteGroup, members: Vec<u32>) -> Self {
        debug_assert!(members.first() == Some(&0));
        SubgroupHandle { parent, members }
    }

    /// Validates closure, identity, inverses and the Lagrange condition.
    pub fn new(parent: &'g FiniteGroup, mut members: Vec<u32>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(GroupError::NotASubgroup {
                reason: String::from("identity missing"),
            });
        }
        if members.iter().any(|&i| i as usize >= parent.order()) {
            return Err(GroupError::NotASubgroup {
                reason: String::from("member index out of range"),
            });
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(GroupError::NotASubgroup {
                    reason: format!("inverse of {a} missing"),
                });
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("product {a}*{b} escapes the set"),
                    });
                }
            }
        }
        if !parent.order().is_multiple_of(members.len()) {
            return Err(GroupError::NotASubgroup {
                reason: String::from("order does not divide the parent order"),
            });
        }
        Ok(SubgroupHandle { parent, members })
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn into_members(self) -> Vec<u32> {
        self.members
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_whole_group(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// A small generating set (parent indices), greedy over canonical order.
    pub fn generating_set(&self) -> Vec<u32> {
        if self.is_whole_group() {
            return self.parent.generators().to_vec();
        }
        let mut gens: Vec<u32> = Vec::new();
        let mut closed: Vec<u32> = vec![0];
        for &i in &self.members {
            if closed.binary_search(&i).is_err() {
                gens.push(i);
                closed = self.parent.closure_of(&gens);
                if closed.len() == self.members.len() {
                    break;
                }
            }
        }
        gens
    }

    pub fn materialize(&self) -> FiniteGroup {
        materialize_subgroup(self.parent, &self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u8]) -> ConcreteElement {
        ConcreteElement::perm(images)
    }

    fn cyclic_table(n: u32) -> Vec<Vec<u32>> {
        (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect()
    }

    #[test]
    fn trivial_closure() {
        let g = close_group(
            Representation::Perm { degree: 5 },
            &[perm(&[0, 1, 2, 3, 4])],
        )
        .unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn alternating_five_by_closure() {
        let g = close_group(
            Representation::Perm { degree: 5 },
            &[perm(&[1, 2, 3, 4, 0]), perm(&[1, 2, 0, 3, 4])],
        )
        .unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn sl2_gf4_closure_has_order_sixty() {
        let field = Arc::new(crate::gf::gf_make(2, 2).unwrap());
        let rep = Representation::Mat2 {
            field: Arc::clone(&field),
        };
        // transvection parameters run over the power basis {1, alpha}
        let gens = [
            ConcreteElement::Mat2([1, 1, 0, 1]),
            ConcreteElement::Mat2([1, 2, 0, 1]),
            ConcreteElement::Mat2([1, 0, 1, 1]),
            ConcreteElement::Mat2([1, 0, 2, 1]),
        ];
        let g = close_group(rep, &gens).unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn two_elementary_matrices_generate_sl2_only_over_the_prime_field() {
        // over GF(4) the pair stays inside SL2(2); over GF(5) it fills SL2(5)
        let f4 = Arc::new(crate::gf::gf_make(2, 2).unwrap());
        let g4 = close_group(
            Representation::Mat2 { field: f4 },
            &[
                ConcreteElement::Mat2([1, 1, 0, 1]),
                ConcreteElement::Mat2([1, 0, 1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(g4.order(), 6);

        let f5 = Arc::new(crate::gf::gf_make(5, 1).unwrap());
        let g5 = close_group(
            Representation::Mat2 { field: f5 },
            &[
                ConcreteElement::Mat2([1, 1, 0, 1]),
                ConcreteElement::Mat2([1, 0, 1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(g5.order(), 120);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = close_group_with(
            Representation::Perm { degree: 6 },
            &[perm(&[1, 2, 3, 4, 5, 0]), perm(&[1, 0, 2, 3, 4, 5])],
            100,
            0,
        )
        .unwrap_err();
        assert_eq!(err, GroupError::ClosureCapExceeded { cap: 100 });
    }

    #[test]
    fn mixed_variants_are_rejected() {
        let err = close_group(
            Representation::Perm { degree: 3 },
            &[ConcreteElement::TableIdx(1)],
        )
        .unwrap_err();
        assert!(matches!(err, GroupError::MixedVariants { .. }));
    }

    #[test]
    fn closure_is_idempotent() {
        let g = close_group(
            Representation::Perm { degree: 4 },
            &[perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])],
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        let again = close_group(g.representation().clone(), g.elements()).unwrap();
        assert!(g == again);
    }

    #[test]
    fn table_ingestion_and_validation() {
        let c1 = group_from_table(vec![vec![0]]).unwrap();
        assert_eq!(c1.order(), 1);

        let c6 = group_from_table(cyclic_table(6)).unwrap();
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.order_of_index(1), 6);

        // break associativity/latin-square structure
        let mut bad = cyclic_table(4);
        bad[2][2] = 1;
        let err = group_from_table(bad).unwrap_err();
        assert!(matches!(err, GroupError::TableNotGroup { .. }));

        let mut bad_id = cyclic_table(3);
        bad_id[0][1] = 2;
        bad_id[0][2] = 1;
        let err = group_from_table(bad_id).unwrap_err();
        assert!(matches!(err, GroupError::TableNotGroup { reason } if reason.contains("row 0")));
    }

    #[test]
    fn nonassociative_loop_is_rejected_with_a_named_triple() {
        // order-5 loop with identity, two-sided inverses and Latin rows,
        // but no associativity (the only order-5 group is cyclic)
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = group_from_table(table).unwrap_err();
        let GroupError::TableNotGroup { reason } = err else {
            panic!("expected a table validation error")
        };
        assert!(reason.contains("associativity fails on triple"), "{reason}");
    }

    #[test]
    fn large_tables_take_the_randomized_validation_path() {
        let g = group_from_table(cyclic_table(300)).unwrap();
        assert_eq!(g.order(), 300);
        assert_eq!(g.order_of_index(1), 300);
    }

    #[test]
    fn dihedral_three_from_semidirect_is_nonabelian() {
        let c3 = Arc::new(group_from_table(cyclic_table(3)).unwrap());
        let inversion = vec![0, 2, 1];
        let d3 = semidirect_product(&c3, 2, &inversion).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        let c4 = Arc::new(group_from_table(cyclic_table(4)).unwrap());
        // squaring is not injective on C4
        let err = semidirect_product(&c4, 2, &[0, 2, 0, 2]).unwrap_err();
        assert!(matches!(err, GroupError::NotAnAutomorphism { .. }));
        // inversion has order 2, not 3
        let err = semidirect_product(&c4, 3, &[0, 3, 2, 1]).unwrap_err();
        assert_eq!(err, GroupError::ActionOrderMismatch { order: 3 });
        // a bijection that is not multiplicative: swap 0-fixing map on C4
        let err = semidirect_product(&c4, 2, &[0, 1, 3, 2]).unwrap_err();
        assert!(
            matches!(err, GroupError::NotAnAutomorphism { reason } if reason.contains("violating pair"))
        );
    }

    #[test]
    fn klein_group_squares_are_trivial() {
        let c2 = Arc::new(group_from_table(cyclic_table(2)).unwrap());
        let v4 = direct_product(&c2, &c2);
        assert_eq!(v4.order(), 4);
        for i in 0..4 {
            assert_eq!(v4.mul(i, i), 0);
        }
        assert!(v4.is_abelian());
    }

    #[test]
    fn semidirect_with_trivial_action_matches_direct_product() {
        let c3 = Arc::new(group_from_table(cyclic_table(3)).unwrap());
        let sd = semidirect_product(&c3, 4, &[0, 1, 2]).unwrap();
        let c4 = Arc::new(group_from_table(cyclic_table(4)).unwrap());
        let dp = direct_product(&c4, &c3);
        assert_eq!(sd.order(), dp.order());
        // same multiplication after matching elements through the obvious
        // relabeling (i, h) <-> (i, h)
        for i in 0..sd.order() as u32 {
            for j in 0..sd.order() as u32 {
                let a = match sd.element(i) {
                    ConcreteElement::Pair(l, r) => (l.clone(), r.clone()),
                    _ => unreachable!(),
                };
                let b = match sd.element(j) {
                    ConcreteElement::Pair(l, r) => (l.clone(), r.clone()),
                    _ => unreachable!(),
                };
                let di = dp
                    .index_of(&ConcreteElement::Pair(a.0.clone(), a.1.clone()))
                    .unwrap();
                let dj = dp
                    .index_of(&ConcreteElement::Pair(b.0.clone(), b.1.clone()))
                    .unwrap();
                let sk = sd.mul(i, j);
                let dk = dp.mul(di, dj);
                assert_eq!(sd.element(sk), dp.element(dk));
            }
        }
    }

    #[test]
    fn element_orders_divide_group_order() {
        let g = close_group(
            Representation::Perm { degree: 4 },
            &[perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])],
        )
        .unwrap();
        for i in 0..g.order() as u32 {
            assert_eq!(g.order() % g.order_of_index(i) as usize, 0);
        }
        assert_eq!(g.order_of_index(0), 1);
    }

    #[test]
    fn element_order_usage_error() {
        let g = group_from_table(cyclic_table(3)).unwrap();
        let err = element_order(&ConcreteElement::TableIdx(7), &g).unwrap_err();
        assert!(matches!(err, GroupError::NotInGroup { .. }));
    }

    #[test]
    fn quotient_by_center_of_dihedral_four() {
        // Dih(4) of order 8: quotient by its order-2 center is Klein
        let c4 = Arc::new(group_from_table(cyclic_table(4)).unwrap());
        let d4 = Arc::new(semidirect_product(&c4, 2, &[0, 3, 2, 1]).unwrap());
        // center: elements commuting with everything
        let center: Vec<u32> = (0..8)
            .filter(|&z| (0..8).all(|g| d4.mul(z, g) == d4.mul(g, z)))
            .collect();
        assert_eq!(center.len(), 2);
        let q = quotient_group(&d4, &center).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        for i in 0..4 {
            assert_eq!(q.mul(i, i), 0);
        }
    }

    #[test]
    fn quotient_requires_normality() {
        let s3 = Arc::new(
            close_group(
                Representation::Perm { degree: 3 },
                &[perm(&[1, 0, 2]), perm(&[1, 2, 0])],
            )
            .unwrap(),
        );
        // a reflection subgroup of order 2 is not normal in S3
        let refl = (1..6).find(|&i| s3.order_of_index(i) == 2).unwrap();
        let members = if refl == 0 { vec![0] } else { vec![0, refl] };
        let err = quotient_group(&s3, &members).unwrap_err();
        assert_eq!(err, GroupError::NotNormal);
    }

    #[test]
    fn subgroup_handle_validation() {
        let c6 = group_from_table(cyclic_table(6)).unwrap();
        assert!(SubgroupHandle::new(&c6, vec![0, 2, 4]).is_ok());
        assert!(SubgroupHandle::new(&c6, vec![0, 3]).is_ok());
        let err = SubgroupHandle::new(&c6, vec![0, 2]).unwrap_err();
        assert!(matches!(err, GroupError::NotASubgroup { .. }));
        let err = SubgroupHandle::new(&c6, vec![2, 4]).unwrap_err();
        assert!(matches!(err, GroupError::NotASubgroup { .. }));
    }

    #[test]
    fn materialized_subgroup_multiplies_like_parent() {
        let g = close_group(
            Representation::Perm { degree: 4 },
            &[perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])],
        )
        .unwrap();
        // even permutations: closure of the 3-cycles
        let a4_members = {
            let threes: Vec<u32> = (0..24).filter(|&i| g.order_of_index(i) == 3).collect();
            g.closure_of(&threes)
        };
        assert_eq!(a4_members.len(), 12);
        let h = materialize_subgroup(&g, &a4_members);
        assert_eq!(h.order(), 12);
        for (li, &pi) in a4_members.iter().enumerate() {
            for (lj, &pj) in a4_members.iter().enumerate() {
                let pk = g.mul(pi, pj);
                let lk = h.mul(li as u32, lj as u32);
                assert_eq!(h.element(lk), g.element(pk));
            }
        }
    }

    #[test]
    fn direct_product_embeddings_meet_trivially() {
        let c2 = Arc::new(group_from_table(cyclic_table(2)).unwrap());
        let c3 = Arc::new(group_from_table(cyclic_table(3)).unwrap());
        let p = direct_product(&c2, &c3);
        let (l, r) = direct_parts(&p).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(r.len(), 3);
        assert_eq!(l.iter().filter(|m| r.contains(m)).count(), 1);
        // both embeddings are subgroups
        assert!(SubgroupHandle::new(&p, l).is_ok());
        assert!(SubgroupHandle::new(&p, r).is_ok());
    }

    #[test]
    fn associativity_property_on_random_triples() {
        let g = close_group(
            Representation::Perm { degree: 5 },
            &[perm(&[1, 2, 3, 4, 0]), perm(&[1, 0, 2, 3, 4])],
        )
        .unwrap();
        assert_eq!(g.order(), 120);
        let mut rng = SplitMix64::new(99);
        for _ in 0..500 {
            let a = rng.below(120) as u32;
            let b = rng.below(120) as u32;
            let c = rng.below(120) as u32;
            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }
}
