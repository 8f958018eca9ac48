//! Arithmetic in prime fields and their extensions `GF(p^m)`.
//!
//! Elements are packed into a single integer: the coefficient vector
//! `(c_0, .., c_{m-1})` over the power basis of a root of the defining
//! polynomial is stored as `c_0 + c_1 p + .. + c_{m-1} p^{m-1}`. Multiplication
//! goes through discrete log tables built from a primitive element, which is
//! fine for the desk-scale fields this crate targets (`q <= 2^16`).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge(u64),
    #[error("polynomial must be monic of degree {expected} with coefficients below p")]
    BadPolynomial { expected: u32 },
    #[error("polynomial is reducible over GF(p)")]
    ReduciblePoly,
    #[error("no primitive element found (internal error)")]
    NoPrimitiveElement,
    #[error("the given element is not primitive")]
    NotPrimitive,
    #[error("element coefficients do not belong to this field")]
    BadElement,
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of `GF(p^m)`, packed as a base-`p` integer of its coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);

    /// Packed value `c_0 + c_1 p + ..`; also a dense index in `0..q`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field `GF(p^m)` with a fixed defining polynomial and primitive element.
///
/// The canonical element order is `alpha^0, alpha^1, .., alpha^(q-2), 0`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    poly: Vec<u32>,
    alpha: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("poly", &self.poly)
            .field("alpha", &self.coeffs(self.alpha))
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.poly == other.poly
            && self.alpha == other.alpha
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `GF(p^m)`. When `poly` is omitted the lexicographically least
    /// monic irreducible polynomial of degree `m` is used (constant term is the
    /// least significant digit). The primitive element is the first one in
    /// packed order.
    pub fn new(p: u32, m: u32, poly: Option<&[u32]>) -> Result<Self, FieldError> {
        check_params(p, m)?;
        let poly = match poly {
            Some(poly) => {
                if poly.len() != m as usize + 1
                    || poly[m as usize] != 1
                    || poly.iter().any(|&c| c >= p)
                {
                    return Err(FieldError::BadPolynomial { expected: m });
                }
                if !is_irreducible(poly, p) {
                    return Err(FieldError::ReduciblePoly);
                }
                poly.to_vec()
            }
            None => default_poly(p, m),
        };
        let q = p.pow(m);
        let alpha = (1..q)
            .map(FieldElem)
            .find(|&g| is_primitive_slow(g, p, &poly))
            .ok_or(FieldError::NoPrimitiveElement)?;
        Ok(Self::assemble(p, m, poly, alpha))
    }

    /// The same field with a different primitive element (and hence a
    /// different canonical element order).
    pub fn with_alpha(&self, alpha: FieldElem) -> Result<Self, FieldError> {
        if alpha.0 >= self.q {
            return Err(FieldError::BadElement);
        }
        if !is_primitive_slow(alpha, self.p, &self.poly) {
            return Err(FieldError::NotPrimitive);
        }
        Ok(Self::assemble(self.p, self.m, self.poly.clone(), alpha))
    }

    /// Rebuilds a context from its serialized parts, validating everything.
    pub fn from_parts(p: u32, m: u32, poly: &[u32], alpha: &[u32]) -> Result<Self, FieldError> {
        let base = Self::new(p, m, Some(poly))?;
        let alpha = base.from_coeffs(alpha)?;
        if alpha == base.alpha {
            Ok(base)
        } else {
            base.with_alpha(alpha)
        }
    }

    fn assemble(p: u32, m: u32, poly: Vec<u32>, alpha: FieldElem) -> Self {
        let q = p.pow(m);
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = mul_slow(cur, alpha.0, p, &poly);
        }
        debug_assert_eq!(cur, 1);
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            poly,
            alpha,
            exp,
            log,
            trace: Vec::new(),
        };
        ctx.trace = (0..q)
            .map(|x| ctx.trace_by_frobenius(FieldElem(x)))
            .collect();
        ctx
    }

    fn trace_by_frobenius(&self, x: FieldElem) -> u32 {
        let mut acc = FieldElem::ZERO;
        for i in 0..self.m {
            acc = self.add(acc, self.frobenius(x, i));
        }
        debug_assert!(acc.0 < self.p, "trace must land in the prime field");
        acc.0
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order `p^m`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, constant term first, monic.
    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn alpha(&self) -> FieldElem {
        self.alpha
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Embeds a residue of `GF(p)`.
    pub fn from_prime(&self, c: u32) -> FieldElem {
        FieldElem(c % self.p)
    }

    /// Element with packed index `idx` (`0..q`).
    pub fn elem(&self, idx: u32) -> Result<FieldElem, FieldError> {
        if idx < self.q {
            Ok(FieldElem(idx))
        } else {
            Err(FieldError::BadElement)
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, FieldError> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadElement);
        }
        Ok(FieldElem(
            coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c),
        ))
    }

    /// Length-`m` coefficient vector over the power basis.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.m)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// `alpha^k` for any integer exponent.
    pub fn alpha_pow(&self, k: i64) -> FieldElem {
        let e = k.rem_euclid(self.q as i64 - 1) as usize;
        FieldElem(self.exp[e])
    }

    /// Discrete log to base `alpha`, `None` for zero.
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.index()])
    }

    /// Iterates the field in canonical order `alpha^0, .., alpha^(q-2), 0`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.exp
            .iter()
            .map(|&e| FieldElem(e))
            .chain(std::iter::once(FieldElem::ZERO))
    }

    /// Position of `x` in the canonical order.
    pub fn canonical_position(&self, x: FieldElem) -> usize {
        match self.log(x) {
            Some(l) => l as usize,
            None => self.q as usize - 1,
        }
    }

    /// All primitive elements, in packed order.
    pub fn primitive_elements(&self) -> Vec<FieldElem> {
        let n = self.q as u64 - 1;
        let mut out: Vec<FieldElem> = (1..=n)
            .filter(|&j| num_integer::gcd(j, n) == 1)
            .map(|j| FieldElem(self.exp[(j % n) as usize]))
            .collect();
        out.sort();
        out
    }

    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(x.0 ^ y.0);
        }
        if self.m == 1 {
            return FieldElem((x.0 + y.0) % self.p);
        }
        let (mut a, mut b, mut out, mut place) = (x.0, y.0, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, x: FieldElem) -> FieldElem {
        self.scale(self.p - 1, x)
    }

    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    /// Multiplies by a prime-field scalar, coefficient-wise.
    pub fn scale(&self, c: u32, x: FieldElem) -> FieldElem {
        let c = c % self.p;
        if c == 0 || x.is_zero() {
            return FieldElem::ZERO;
        }
        if c == 1 {
            return x;
        }
        let (mut a, mut out, mut place) = (x.0, 0, 1);
        while a > 0 {
            out += ((a % self.p) * c % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        if x.is_zero() || y.is_zero() {
            return FieldElem::ZERO;
        }
        let n = self.q - 1;
        let e = self.log[x.index()] + self.log[y.index()];
        FieldElem(self.exp[(if e >= n { e - n } else { e }) as usize])
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(FieldElem(
            self.exp[((n - self.log[x.index()]) % n) as usize],
        ))
    }

    pub fn div(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return self.one();
        }
        if x.is_zero() {
            return FieldElem::ZERO;
        }
        let n = self.q as u64 - 1;
        let l = self.log[x.index()] as u64 * (e % n) % n;
        FieldElem(self.exp[l as usize])
    }

    /// `x^(p^i)`.
    pub fn frobenius(&self, x: FieldElem, i: u32) -> FieldElem {
        self.pow(x, (self.p as u64).pow(i % self.m))
    }

    /// Absolute trace `GF(p^m) -> GF(p)`.
    pub fn trace(&self, x: FieldElem) -> u32 {
        self.trace[x.index()]
    }

    /// `tr(x * y)`, the workhorse of every character sum in this crate.
    pub fn trace_product(&self, x: FieldElem, y: FieldElem) -> u32 {
        self.trace[self.mul(x, y).index()]
    }
}

#[derive(Serialize, Deserialize)]
struct FieldSpec {
    p: u32,
    m: u32,
    poly: Vec<u32>,
    alpha: Vec<u32>,
}

impl Serialize for FieldCtx {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FieldSpec {
            p: self.p,
            m: self.m,
            poly: self.poly.clone(),
            alpha: self.coeffs(self.alpha),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldCtx {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(d)?;
        FieldCtx::from_parts(spec.p, spec.m, &spec.poly, &spec.alpha)
            .map_err(serde::de::Error::custom)
    }
}

fn check_params(p: u32, m: u32) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
    if q > MAX_FIELD_ORDER {
        return Err(FieldError::TooLarge(q));
    }
    Ok(())
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `a^e mod p`.
pub fn pow_mod(a: u32, mut e: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut base = a as u64 % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

/// Inverse in `GF(p)`; `None` for zero.
pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    (a % p != 0).then(|| pow_mod(a, p as u64 - 2, p))
}

/// Legendre symbol `eta_0(a)` for odd `p`: 0, 1 or -1.
pub fn legendre(a: u32, p: u32) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p as u64 - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

// Schoolbook polynomial arithmetic on coefficient vectors (constant first),
// used only while setting up a field.

fn unpack(x: u32, p: u32, m: usize) -> Vec<u32> {
    let mut v = x;
    (0..m)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn pack(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two packed elements modulo the monic `poly`.
pub(crate) fn mul_slow(x: u32, y: u32, p: u32, poly: &[u32]) -> u32 {
    let m = poly.len() - 1;
    let a = unpack(x, p, m);
    let b = unpack(y, p, m);
    let mut prod = vec![0u64; 2 * m];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += ai as u64 * bj as u64;
        }
    }
    let p64 = p as u64;
    for d in (m..2 * m).rev() {
        let c = prod[d] % p64;
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        // x^d = x^(d-m) * x^m and x^m = -(poly[0] + .. + poly[m-1] x^(m-1))
        for (i, &pi) in poly[..m].iter().enumerate() {
            prod[d - m + i] += c * (p64 - pi as u64);
        }
    }
    let red: Vec<u32> = prod[..m].iter().map(|&c| (c % p64) as u32).collect();
    pack(&red, p)
}

fn pow_slow(x: u32, mut e: u64, p: u32, poly: &[u32]) -> u32 {
    let mut base = x;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(acc, base, p, poly);
        }
        base = mul_slow(base, base, p, poly);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive_slow(g: FieldElem, p: u32, poly: &[u32]) -> bool {
    let n = (p as u64).pow(poly.len() as u32 - 1) - 1;
    if g.is_zero() {
        return false;
    }
    pow_slow(g.0, n, p, poly) == 1
        && prime_factors(n)
            .into_iter()
            .all(|r| pow_slow(g.0, n / r, p, poly) != 1)
}

/// Remainder of `a` modulo monic `b`, both constant-first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * bi % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut div = unpack(low, p, d);
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_poly(p: u32, m: u32) -> Vec<u32> {
    (0..p.pow(m))
        .map(|low| {
            let mut poly = unpack(low, p, m as usize);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> FieldCtx {
        FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn binary_prime_field() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f.alpha(), f.one());
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![f.one(), f.zero()]);
    }

    #[test]
    fn rejects_non_prime_and_reducible() {
        assert_eq!(
            FieldCtx::new(4, 1, None).unwrap_err(),
            FieldError::NonPrime(4)
        );
        // x^2 + 2 = (x - 1)(x + 1) over GF(3)
        assert_eq!(
            FieldCtx::new(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            FieldError::ReduciblePoly
        );
        assert!(matches!(
            FieldCtx::new(3, 2, Some(&[1, 0, 2])),
            Err(FieldError::BadPolynomial { .. })
        ));
        assert!(matches!(
            FieldCtx::new(2, 17, None),
            Err(FieldError::TooLarge(_))
        ));
    }

    #[test]
    fn gf9_accepts_x2_plus_1() {
        // no root of x^2 + 1 in GF(3)
        assert!((0..3u32).all(|x| (x * x + 1) % 3 != 0));
        let f = gf9();
        assert_eq!(f.q(), 9);
        let theta = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(theta, theta), f.from_prime(2));
        assert_eq!(f.trace(theta), 0);
        assert_eq!(f.trace(f.one()), 2);
        assert_eq!(f.trace(f.zero()), 0);
    }

    #[test]
    fn default_polynomials_are_least() {
        assert_eq!(FieldCtx::new(3, 2, None).unwrap().poly(), &[1, 0, 1]);
        assert_eq!(FieldCtx::new(2, 3, None).unwrap().poly(), &[1, 1, 0, 1]);
        assert_eq!(
            FieldCtx::new(2, 8, None).unwrap().poly(),
            &[1, 1, 0, 1, 1, 0, 0, 0, 1]
        );
    }

    #[test]
    fn alpha_generates_and_order_ends_with_zero() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = FieldCtx::new(p, m, None).unwrap();
            let elems: Vec<_> = f.elements().collect();
            assert_eq!(elems.len(), f.q() as usize);
            assert_eq!(*elems.last().unwrap(), f.zero());
            let mut sorted = elems.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), f.q() as usize);
            assert_eq!(f.pow(f.alpha(), f.q() as u64 - 1), f.one());
            for (i, &x) in elems.iter().enumerate() {
                assert_eq!(f.canonical_position(x), i);
            }
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = gf9();
        assert_eq!(f.inv(f.zero()), Err(FieldError::DivisionByZero));
        for x in f.elements().filter(|x| !x.is_zero()) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
    }

    #[test]
    fn primitive_elements_count() {
        let f = gf9();
        assert_eq!(f.primitive_elements().len(), 4);
        for g in f.primitive_elements() {
            let h = f.with_alpha(g).unwrap();
            assert_eq!(h.alpha(), g);
        }
        let theta = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.with_alpha(theta).unwrap_err(), FieldError::NotPrimitive);
    }

    #[test]
    fn json_shape() {
        let f = gf9();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":3,"m":2,"poly":[1,0,1],"alpha":[1,1]}"#);
        let back: FieldCtx = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(
            serde_json::from_str::<FieldCtx>(r#"{"p":3,"m":2,"poly":[1,0,1],"alpha":[0,1]}"#)
                .is_err()
        );
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre(1, 3), 1);
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(0, 7), 0);
    }
}
