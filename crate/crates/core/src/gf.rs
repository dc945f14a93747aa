//! Table-driven arithmetic in GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)`: the value `v` stands for the
//! polynomial `a_0 + a_1 x + ... + a_{e-1} x^{e-1}` whose coefficients are the
//! base-`p` digits of `v` (least significant first). The defining polynomial is
//! the first monic degree-`e` polynomial, in increasing order of the integer
//! `a_0 + a_1 p + ... + a_{e-1} p^{e-1}` formed by its lower coefficients,
//! whose root `x` generates the multiplicative group. That root is the
//! primitive element behind the exp/log tables.
//!
//! Addition uses a full table for `q <= 1024`; above that, prime fields add
//! modulo `p`, binary fields XOR, and the remaining fields go through Zech
//! logarithms.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element in its canonical integer encoding.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const ADD_TABLE_MAX: u32 = 1024;
const NO_ZECH: u32 = u32::MAX;

#[derive(Clone)]
enum Adder {
    Table(Vec<Elem>),
    Prime,
    Binary,
    Zech(Vec<u32>),
}

/// A finite field GF(p^e) with precomputed exp/log/negation tables.
#[derive(Clone)]
pub struct FieldTables {
    p: u32,
    e: u32,
    q: u32,
    irreducible: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    adder: Adder,
}

impl fmt::Debug for FieldTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTables")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("irreducible", &self.irreducible)
            .finish()
    }
}

impl PartialEq for FieldTables {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.irreducible == other.irreducible
    }
}

impl Eq for FieldTables {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

impl FieldTables {
    /// Builds GF(p^e).
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::InvalidConfig("field exponent must be positive".into()));
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { order, cap: MAX_FIELD_ORDER });
        }
        let q = order as u32;

        let (irreducible, exp) = (0..q)
            .find_map(|code| {
                let poly = digits_of(code, p, e);
                primitive_powers(&poly, p, q).map(|exp| (poly, exp))
            })
            .expect("a primitive polynomial exists for every prime power");

        let mut log = vec![0u32; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let mut exp2 = exp.clone();
        exp2.extend_from_slice(&exp);

        let neg: Vec<Elem> = (0..q)
            .map(|v| {
                let d: Vec<u32> = digits_of(v, p, e).iter().map(|&a| (p - a) % p).collect();
                from_digits(&d, p)
            })
            .collect();

        let adder = if q <= ADD_TABLE_MAX {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = digit_add(a, b, p, e);
                }
            }
            Adder::Table(table)
        } else if e == 1 {
            Adder::Prime
        } else if p == 2 {
            Adder::Binary
        } else {
            // zech[k] = log(1 + g^k), or NO_ZECH when 1 + g^k = 0.
            let zech = (0..q - 1)
                .map(|k| {
                    let s = digit_add(1, exp[k as usize], p, e);
                    if s == 0 {
                        NO_ZECH
                    } else {
                        log[s as usize]
                    }
                })
                .collect();
            Adder::Zech(zech)
        };

        Ok(Self { p, e, q, irreducible, exp: exp2, log, neg, adder })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Lower coefficients `a_0..a_{e-1}` of the monic defining polynomial.
    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    /// The primitive element (the class of `x`).
    pub fn primitive_element(&self) -> Elem {
        self.exp[1 % (self.q as usize - 1).max(1)]
    }

    /// Header text form `q <p>^<e>`.
    pub fn header(&self) -> String {
        format!("q {}^{}", self.p, self.e)
    }

    #[inline]
    pub fn contains(&self, v: u64) -> bool {
        v < self.q as u64
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.adder {
            Adder::Table(t) => t[(a * self.q + b) as usize],
            Adder::Prime => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Adder::Binary => a ^ b,
            Adder::Zech(zech) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let (la, lb) = (self.log[a as usize], self.log[b as usize]);
                let n = self.q - 1;
                let d = if lb >= la { lb - la } else { lb + n - la };
                match zech[d as usize] {
                    NO_ZECH => 0,
                    z => self.exp[(la + z) as usize],
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            let n = self.q - 1;
            Some(self.exp[((n - self.log[a as usize]) % n) as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (k % n)) % n;
        self.exp[l as usize]
    }

    /// `g^k` for the primitive element `g`.
    #[inline]
    pub fn exp(&self, k: u64) -> Elem {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log with respect to the primitive element; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Base-`p` coefficient digits of `v`, least significant first.
    pub fn digits(&self, v: Elem) -> Vec<u32> {
        digits_of(v, self.p, self.e)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        from_digits(digits, self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    /// Dot product of two coordinate vectors.
    #[inline]
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn digits_of(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn digit_add(a: u32, b: u32, p: u32, e: u32) -> u32 {
    let (da, db) = (digits_of(a, p, e), digits_of(b, p, e));
    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    from_digits(&s, p)
}

/// Multiplies the polynomial `a` (digits) by `x` modulo the monic polynomial
/// with lower coefficients `poly`.
fn mul_by_x(a: &mut [u32], poly: &[u32], p: u32) {
    let carry = a[a.len() - 1];
    a.copy_within(..a.len() - 1, 1);
    a[0] = 0;
    for (o, &f) in a.iter_mut().zip(poly) {
        *o = (*o + (p - (carry * f) % p)) % p;
    }
}

/// Returns the successive powers `x^0..x^{q-2}` if `x` has multiplicative
/// order exactly `q - 1` modulo `poly`, i.e. the polynomial is primitive.
fn primitive_powers(poly: &[u32], p: u32, q: u32) -> Option<Vec<Elem>> {
    let e = poly.len();
    let mut cur = vec![0u32; e];
    cur[0] = 1;
    let mut powers = Vec::with_capacity(q as usize - 1);
    for k in 0..q - 1 {
        let v = from_digits(&cur, p);
        if v == 0 || (k > 0 && v == 1) {
            return None;
        }
        powers.push(v);
        mul_by_x(&mut cur, poly, p);
    }
    (from_digits(&cur, p) == 1).then_some(powers)
}

/// A field homomorphism GF(q) -> GF(q^m).
///
/// The image of the subfield's primitive element is the first power
/// `g^{k (q^m-1)/(q-1)}` of the superfield's primitive element `g` that is a
/// root of the subfield's defining polynomial. The subfield keeps its own
/// encoding, so matrices built over it stay valid after embedding.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: Arc<FieldTables>,
    sup: Arc<FieldTables>,
    degree: u32,
    index_factor: u64,
    map: Vec<Elem>,
}

impl Embedding {
    pub fn new(sub: Arc<FieldTables>, sup: Arc<FieldTables>) -> Result<Self> {
        let not_sub = || Error::NotASubfield { sub: sub.order() as u64, sup: sup.order() as u64 };
        if sub.p != sup.p || sup.e % sub.e != 0 {
            return Err(not_sub());
        }
        let degree = sup.e / sub.e;
        let (q, big) = (sub.q as u64, sup.q as u64);
        let index_factor = (big - 1) / (q - 1);

        let image_of_root = (0..q - 1)
            .map(|k| sup.exp(k * index_factor))
            .find(|&beta| {
                // Defining polynomial coefficients are prime-field digits, which
                // share their encoding in every field of characteristic p.
                let mut acc = 1;
                for &c in sub.irreducible.iter().rev() {
                    acc = sup.add(sup.mul(acc, beta), c);
                }
                acc == 0
            })
            .ok_or_else(not_sub)?;

        let mut map = vec![0; q as usize];
        let root_log = sup.log(image_of_root).expect("nonzero root") as u64;
        for l in 0..q - 1 {
            map[sub.exp(l) as usize] = sup.exp(l * root_log);
        }
        Ok(Self { sub, sup, degree, index_factor, map })
    }

    pub fn sub(&self) -> &Arc<FieldTables> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<FieldTables> {
        &self.sup
    }

    /// Extension degree m.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `(q^m - 1)/(q - 1)`.
    pub fn index_factor(&self) -> u64 {
        self.index_factor
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }
}

/// Embeds `sub` into `sup`.
pub fn subfield_embedding(sub: &Arc<FieldTables>, sup: &Arc<FieldTables>) -> Result<Embedding> {
    Embedding::new(Arc::clone(sub), Arc::clone(sup))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms_hold(f: &FieldTables) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, b), digit_add(a, b, f.p, f.e));
            }
        }
        // Associativity and distributivity on a stride through the triples.
        let step = (q / 23).max(1);
        for a in (0..q).step_by(step as usize) {
            for b in 0..q {
                for c in (0..q).step_by(step as usize) {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn gf3_arithmetic() {
        let f = FieldTables::new(3, 1).unwrap();
        assert_eq!(f.add(1, 2), 0);
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.header(), "q 3^1");
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = FieldTables::new(2, 2).unwrap();
        assert_eq!(f.irreducible(), &[1, 1]);
        for a in 1..4 {
            assert_eq!(f.pow(a, 3), 1);
        }
    }

    #[test]
    fn gf9_lagrange() {
        let f = FieldTables::new(3, 2).unwrap();
        for a in 1..9 {
            assert_eq!(f.pow(a, 8), 1);
        }
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128] {
            axioms_hold(&FieldTables::of_order(q).unwrap());
        }
    }

    #[test]
    fn non_table_adders_agree_with_digits() {
        // 2^11 binary, 3^7 Zech, 2053 prime: all above the add-table cutoff.
        for (p, e) in [(2, 11), (3, 7), (2053, 1)] {
            let f = FieldTables::new(p, e).unwrap();
            let q = f.order();
            for a in (0..q).step_by(37) {
                for b in (0..q).step_by(41) {
                    assert_eq!(f.add(a, b), digit_add(a, b, p, e), "p={p} e={e} a={a} b={b}");
                }
            }
            for a in (1..q).step_by(29) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = FieldTables::new(5, 2).unwrap();
        for a in 1..25 {
            assert_eq!(f.exp(f.log(a).unwrap() as u64), a);
        }
        assert_eq!(f.exp(24), 1);
        assert_eq!(f.log(0), None);
    }

    #[test]
    fn creation_errors() {
        assert_eq!(FieldTables::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldTables::new(2, 21), Err(Error::FieldTooLarge { .. })));
        assert_eq!(FieldTables::of_order(6).unwrap_err(), Error::NotPrimePower(6));
        assert!(FieldTables::new(2, 20).is_ok());
    }

    #[test]
    fn deterministic_creation() {
        let a = FieldTables::new(3, 4).unwrap();
        let b = FieldTables::new(3, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.exp, b.exp);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(1009), Some((1009, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    fn check_homomorphism(sub: u64, sup: u64) {
        let a = FieldTables::of_order(sub).unwrap().shared();
        let b = FieldTables::of_order(sup).unwrap().shared();
        let emb = subfield_embedding(&a, &b).unwrap();
        assert_eq!(emb.apply(0), 0);
        assert_eq!(emb.apply(1), 1);
        let mut seen = std::collections::HashSet::new();
        for x in 0..a.order() {
            assert!(seen.insert(emb.apply(x)), "not injective");
            for y in 0..a.order() {
                assert_eq!(emb.apply(a.add(x, y)), b.add(emb.apply(x), emb.apply(y)));
                assert_eq!(emb.apply(a.mul(x, y)), b.mul(emb.apply(x), emb.apply(y)));
            }
        }
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        for (s, t) in [(2, 4), (2, 8), (4, 16), (3, 9), (3, 27), (9, 81), (4, 64), (5, 25), (16, 256), (2, 2)] {
            check_homomorphism(s, t);
        }
    }

    #[test]
    fn gf4_in_gf16_index_factor() {
        let a = FieldTables::of_order(4).unwrap().shared();
        let b = FieldTables::of_order(16).unwrap().shared();
        let emb = subfield_embedding(&a, &b).unwrap();
        assert_eq!(emb.index_factor(), 5);
        assert_eq!(emb.degree(), 2);
    }

    #[test]
    fn gf3_in_gf9_maps_two_to_minus_one() {
        let a = FieldTables::of_order(3).unwrap().shared();
        let b = FieldTables::of_order(9).unwrap().shared();
        let emb = subfield_embedding(&a, &b).unwrap();
        let image = emb.apply(2);
        // the unique element of multiplicative order 2
        assert_eq!(b.mul(image, image), 1);
        assert_ne!(image, 1);
        assert_eq!(image, b.neg(1));
    }

    #[test]
    fn embedding_rejects_non_subfields() {
        let a = FieldTables::of_order(4).unwrap().shared();
        let b = FieldTables::of_order(8).unwrap().shared();
        let c = FieldTables::of_order(9).unwrap().shared();
        assert!(matches!(subfield_embedding(&a, &b), Err(Error::NotASubfield { .. })));
        assert!(matches!(subfield_embedding(&a, &c), Err(Error::NotASubfield { .. })));
    }
}
