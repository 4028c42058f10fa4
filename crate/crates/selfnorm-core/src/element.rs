//! Group element payloads.
//!
//! An element is one of four shapes: a permutation of `{0..d-1}`, a 2x2
//! matrix over a small Galois field (entries stored as encoded field
//! values), a pair from a product construction, or an index into a Cayley
//! table. Payloads carry no operation context; multiplication rules live in
//! [`crate::group::Representation`]. Keeping payloads plain data gives
//! structural equality, a total order (the canonical element key used for
//! deterministic group listings), and cheap hashing.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ConcreteElement {
    /// Images of `0..d-1`; must be a bijection.
    Perm(Vec<u8>),
    /// Row-major `[a, b, c, d]`, encoded field values, det != 0.
    Mat2([u8; 4]),
    /// Element of a product group.
    Pair(Box<ConcreteElement>, Box<ConcreteElement>),
    /// Index into a Cayley table.
    TableIdx(u32),
}

impl ConcreteElement {
    pub fn perm(images: &[u8]) -> Self {
        ConcreteElement::Perm(images.to_vec())
    }

    pub fn pair(left: ConcreteElement, right: ConcreteElement) -> Self {
        ConcreteElement::Pair(Box::new(left), Box::new(right))
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ConcreteElement::Perm(_) => "permutation",
            ConcreteElement::Mat2(_) => "matrix",
            ConcreteElement::Pair(_, _) => "pair",
            ConcreteElement::TableIdx(_) => "table-index",
        }
    }

    /// Short human-readable form used in reports and error messages.
    pub fn describe(&self) -> String {
        match self {
            ConcreteElement::Perm(images) => {
                format!("perm{:?}", images)
            }
            ConcreteElement::Mat2([a, b, c, d]) => format!("[[{a},{b}],[{c},{d}]]"),
            ConcreteElement::Pair(l, r) => format!("({}, {})", l.describe(), r.describe()),
            ConcreteElement::TableIdx(i) => format!("#{i}"),
        }
    }
}

/// True when `images` is a bijection on `{0..images.len()-1}`.
pub fn is_bijection(images: &[u8]) -> bool {
    let n = images.len();
    if n > 256 {
        return false;
    }
    let mut seen = [false; 256];
    for &i in images {
        if (i as usize) >= n || seen[i as usize] {
            return false;
        }
        seen[i as usize] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_total_and_structural() {
        let a = ConcreteElement::perm(&[0, 1, 2]);
        let b = ConcreteElement::perm(&[0, 2, 1]);
        assert!(a < b);
        assert_eq!(a, ConcreteElement::perm(&[0, 1, 2]));
        let p = ConcreteElement::pair(ConcreteElement::TableIdx(0), ConcreteElement::TableIdx(1));
        let q = ConcreteElement::pair(ConcreteElement::TableIdx(1), ConcreteElement::TableIdx(0));
        assert!(p < q);
    }

    #[test]
    fn bijection_check() {
        assert!(is_bijection(&[2, 0, 1]));
        assert!(!is_bijection(&[0, 0, 1]));
        assert!(!is_bijection(&[0, 3, 1]));
        assert!(is_bijection(&[]));
    }
}
