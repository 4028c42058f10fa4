//! Small Galois fields GF(p^k), p^k <= 64.
//!
//! Field elements are residues of polynomials over the prime field modulo a
//! monic irreducible reduction polynomial of degree `k`. An element is
//! encoded as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` built from
//! its coefficient vector, so the full field fits in a `u8` and all
//! arithmetic is table-driven.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rng::SplitMix64;

/// Largest field order supported; keeps every table at desk scale.
pub const MAX_FIELD_ORDER: u32 = 64;

const AXIOM_EXHAUSTIVE_LIMIT: u32 = 16;
const AXIOM_SAMPLES: u32 = 4096;
const AXIOM_SEED: u64 = 0x6a11_0f1e_1d5e_ed01;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// `p` is not a prime number.
    NonPrime { p: u32 },
    /// Requested degree outside `1..=6`.
    BadDegree { k: u32 },
    /// `p^k` exceeds [`MAX_FIELD_ORDER`].
    TooLarge { p: u32, k: u32 },
}

impl core::fmt::Display for FieldError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldError::NonPrime { p } => write!(f, "{p} is not prime"),
            FieldError::BadDegree { k } => write!(f, "extension degree {k} not in 1..=6"),
            FieldError::TooLarge { p, k } => {
                write!(
                    f,
                    "field order {p}^{k} exceeds the cap of {MAX_FIELD_ORDER}"
                )
            }
        }
    }
}

impl core::error::Error for FieldError {}

/// A fully tabulated finite field GF(p^k).
#[derive(Debug)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic reduction polynomial, low coefficient first, length `k + 1`.
    reduction_poly: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// A generator of the multiplicative group, exhibited at construction.
    generator: u8,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.reduction_poly == other.reduction_poly
    }
}
impl Eq for GaloisField {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^k) with the lexicographically least monic irreducible
/// reduction polynomial (coefficient vectors compared low-degree first,
/// i.e. smallest encoded integer). Deterministic by construction, so
/// element encodings are stable across runs.
pub fn gf_make(p: u32, k: u32) -> Result<GaloisField, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime { p });
    }
    if k == 0 || k > 6 {
        return Err(FieldError::BadDegree { k });
    }
    let mut q: u64 = 1;
    for _ in 0..k {
        q *= p as u64;
        if q > MAX_FIELD_ORDER as u64 {
            return Err(FieldError::TooLarge { p, k });
        }
    }
    let q = q as u32;

    let reduction_poly = least_irreducible(p, k);
    let field = GaloisField::tabulate(p, k, q, reduction_poly);
    field.check_axioms();
    field.check_multiplicative_generator();
    Ok(field)
}

/// Lexicographically least monic irreducible polynomial of degree `k`
/// over GF(p), low coefficients compared first. Irreducibility is decided
/// by trial division against every monic polynomial of degree 1..=k/2.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let mut tail = 0u64; // encodes c_0..c_{k-1} in base p
    let span = (p as u64).pow(k);
    while tail < span {
        let mut poly: Vec<u32> = Vec::with_capacity(k as usize + 1);
        let mut t = tail;
        for _ in 0..k {
            poly.push((t % p as u64) as u32);
            t /= p as u64;
        }
        poly.push(1);
        if poly_is_irreducible(&poly, p) {
            return poly;
        }
        tail += 1;
    }
    unreachable!("an irreducible polynomial of every degree exists over a prime field")
}

fn poly_is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=k / 2 {
        // every monic divisor candidate of degree d
        let span = (p as u64).pow(d as u32);
        for tail in 0..span {
            let mut div: Vec<u32> = Vec::with_capacity(d + 1);
            let mut t = tail;
            for _ in 0..d {
                div.push((t % p as u64) as u32);
                t /= p as u64;
            }
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], den: &[u32], p: u32) -> bool {
    let mut rem: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                let idx = shift + i;
                let sub = (lead * c) % p;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}

impl GaloisField {
    fn tabulate(p: u32, k: u32, q: u32, reduction_poly: Vec<u32>) -> GaloisField {
        let n = q as usize;
        let decode = |e: u32| -> Vec<u32> {
            let mut v = vec![0u32; k as usize];
            let mut t = e;
            for c in v.iter_mut() {
                *c = t % p;
                t /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 {
            let mut e = 0u32;
            for &c in v.iter().rev() {
                e = e * p + c;
            }
            e
        };

        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let mut neg = vec![0u8; n];
        for a in 0..q {
            let va = decode(a);
            let vneg: Vec<u32> = va.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = encode(&vneg) as u8;
            for b in 0..q {
                let vb = decode(b);
                let vsum: Vec<u32> = va.iter().zip(&vb).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&vsum) as u8;

                // schoolbook product then reduction
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, &x) in va.iter().enumerate() {
                    for (j, &y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (k as usize..prod.len()).rev() {
                    let c = prod[i];
                    if c != 0 {
                        prod[i] = 0;
                        // x^i = x^(i-k) * (x^k), and x^k = -(low part of reduction poly)
                        for (j, &rc) in reduction_poly.iter().take(k as usize).enumerate() {
                            let idx = i - k as usize + j;
                            let sub = (c * rc) % p;
                            prod[idx] = (prod[idx] + p - sub) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..k as usize]) as u8;
            }
        }

        let mut inv = vec![0u8; n];
        for a in 1..q {
            let mut found = None;
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    found = Some(b as u8);
                    break;
                }
            }
            inv[a as usize] = found.expect("every non-zero element has an inverse");
        }

        // exhibit a multiplicative generator: an element of order q - 1
        let mut generator = 1u8;
        'outer: for g in 1..q {
            let mut x = g;
            for ord in 1..q {
                if x == 1 {
                    if ord == q - 1 {
                        generator = g as u8;
                        break 'outer;
                    }
                    break;
                }
                x = mul[(x * q + g) as usize] as u32;
            }
            if q == 2 {
                generator = 1;
                break;
            }
        }

        GaloisField {
            p,
            k,
            q,
            reduction_poly,
            add,
            mul,
            neg,
            inv,
            generator,
        }
    }

    /// Field axioms on element pairs/triples: exhaustive for small fields,
    /// seeded random sampling above (construction-time self check).
    fn check_axioms(&self) {
        let q = self.q;
        let check_triple = |a: u32, b: u32, c: u32| {
            assert_eq!(
                self.add_of(self.add_of(a, b), c),
                self.add_of(a, self.add_of(b, c))
            );
            assert_eq!(
                self.mul_of(self.mul_of(a, b), c),
                self.mul_of(a, self.mul_of(b, c))
            );
            assert_eq!(
                self.mul_of(a, self.add_of(b, c)),
                self.add_of(self.mul_of(a, b), self.mul_of(a, c))
            );
        };
        if q <= AXIOM_EXHAUSTIVE_LIMIT {
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        check_triple(a, b, c);
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(AXIOM_SEED);
            for _ in 0..AXIOM_SAMPLES {
                let a = rng.below(q as u64) as u32;
                let b = rng.below(q as u64) as u32;
                let c = rng.below(q as u64) as u32;
                check_triple(a, b, c);
            }
        }
        for a in 0..q {
            assert_eq!(self.add_of(a, 0), a);
            assert_eq!(self.mul_of(a, 1), a);
            assert_eq!(self.add_of(a, self.neg_of(a)), 0);
            if a != 0 {
                assert_eq!(self.mul_of(a, self.inv_of(a)), 1);
            }
            for b in 0..q {
                assert_eq!(self.add_of(a, b), self.add_of(b, a));
                assert_eq!(self.mul_of(a, b), self.mul_of(b, a));
            }
        }
    }

    fn check_multiplicative_generator(&self) {
        let mut x = 1u32;
        for _ in 0..self.q - 1 {
            x = self.mul_of(x, self.generator as u32);
        }
        assert_eq!(x, 1);
        if self.q > 2 {
            let mut x = self.generator as u32;
            for _ in 1..self.q - 2 {
                assert_ne!(x, 1, "generator order must be exactly q - 1");
                x = self.mul_of(x, self.generator as u32);
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Field order `q = p^k`.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn reduction_poly(&self) -> &[u32] {
        &self.reduction_poly
    }

    /// A fixed generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> u32 {
        self.generator as u32
    }

    #[inline]
    pub fn add_of(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn mul_of(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn neg_of(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    /// Multiplicative inverse; `a` must be non-zero.
    #[inline]
    pub fn inv_of(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize] as u32
    }

    /// The element representing the integer scalar `n` (image of n * 1).
    pub fn scalar(&self, n: u32) -> u32 {
        n % self.p
    }

    /// Frobenius map `e -> e^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        let mut x = 1u32;
        for _ in 0..self.p {
            x = self.mul_of(x, a);
        }
        x
    }

    pub fn describe(&self) -> String {
        format!("GF({}^{})", self.p, self.k)
    }
}
