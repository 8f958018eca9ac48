//! Exact arithmetic in the ring of cyclotomic integers `Z[zeta_p]`.
//!
//! Elements are stored over the integral basis `zeta^1, .., zeta^(p-1)`, which
//! makes the representation canonical: `1` itself is `-(zeta + .. + zeta^(p-1))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{is_prime, legendre};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("operands have different root orders ({0} vs {1})")]
    MixedRootOrder(u32, u32),
    #[error("{a} is not a unit modulo {p}")]
    NotAUnit { a: u32, p: u32 },
    #[error("quadratic Gauss sums need an odd prime, got {0}")]
    EvenPrime(u32),
    #[error("{0} is not a prime")]
    NonPrime(u32),
}

/// A cyclotomic integer `sum_i coords[i-1] * zeta_p^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coords: Vec<BigInt>,
}

impl CycInt {
    fn check_p(p: u32) -> Result<(), CycError> {
        if is_prime(p) {
            Ok(())
        } else {
            Err(CycError::NonPrime(p))
        }
    }

    pub fn zero(p: u32) -> Self {
        assert!(is_prime(p), "root order must be prime");
        CycInt {
            p,
            coords: vec![BigInt::zero(); p as usize - 1],
        }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        let mut x = Self::zero(p);
        x.coords.iter_mut().for_each(|c| *c = -n.clone());
        x
    }

    /// `zeta_p^j`, exponent taken modulo `p`.
    pub fn zeta_pow(p: u32, j: i64) -> Self {
        let j = j.rem_euclid(p as i64) as usize;
        if j == 0 {
            return Self::one(p);
        }
        let mut x = Self::zero(p);
        x.coords[j - 1] = BigInt::one();
        x
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// `sum_j counts[j] * zeta^j` for `j` in `0..p`.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let c0 = counts[0];
        CycInt {
            p,
            coords: counts[1..].iter().map(|&c| BigInt::from(c - c0)).collect(),
        }
    }

    /// Builds from explicit basis coordinates (coefficients of `zeta^1 .. zeta^(p-1)`).
    pub fn from_coords(p: u32, coords: Vec<BigInt>) -> Result<Self, CycError> {
        Self::check_p(p)?;
        assert_eq!(coords.len(), p as usize - 1, "expected p - 1 coordinates");
        Ok(CycInt { p, coords })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational integer `n` when `self == n`, otherwise `None`.
    pub fn as_rational_int(&self) -> Option<BigInt> {
        let first = &self.coords[0];
        self.coords
            .iter()
            .all(|c| c == first)
            .then(|| -first.clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.same_root(other)?;
        Ok(CycInt {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.same_root(other)?;
        Ok(CycInt {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.same_root(other)?;
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coords
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                full[(i + j + 2) % p] += a * b;
            }
        }
        Ok(Self::reduce(self.p, full))
    }

    /// Folds a power-basis vector (`zeta^0 .. zeta^(p-1)`) onto the integral basis.
    fn reduce(p: u32, mut full: Vec<BigInt>) -> Self {
        let c0 = std::mem::take(&mut full[0]);
        let coords = full.into_iter().skip(1).map(|c| c - &c0).collect();
        CycInt { p, coords }
    }

    fn same_root(&self, other: &Self) -> Result<(), CycError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CycError::MixedRootOrder(self.p, other.p))
        }
    }

    /// Multiplication by `zeta^j`; a permutation of the power basis.
    pub fn mul_zeta(&self, j: i64) -> Self {
        let p = self.p as usize;
        let j = j.rem_euclid(p as i64) as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, c) in self.coords.iter().enumerate() {
            full[(i + 1 + j) % p] = c.clone();
        }
        Self::reduce(self.p, full)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            p: self.p,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// The Galois automorphism `sigma_a: zeta -> zeta^a`.
    pub fn sigma(&self, a: u32) -> Result<Self, CycError> {
        let p = self.p;
        if a % p == 0 {
            return Err(CycError::NotAUnit { a, p });
        }
        let mut coords = vec![BigInt::zero(); p as usize - 1];
        for (i, c) in self.coords.iter().enumerate() {
            let target = ((i as u64 + 1) * a as u64 % p as u64) as usize;
            coords[target - 1] = c.clone();
        }
        Ok(CycInt { p, coords })
    }

    /// Complex conjugate, `sigma_{p-1}`.
    pub fn conj(&self) -> Self {
        self.sigma(self.p - 1).expect("p - 1 is a unit")
    }

    /// `|x|^2 = x * conj(x)` when it is a rational integer; it always lies in
    /// the real subfield but is rational only for special `x` such as the
    /// Walsh values of plateaued functions.
    pub fn norm_sq(&self) -> Option<BigInt> {
        (self * &self.conj()).as_rational_int()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Floating-point rendering for debugging output only.
    pub fn approx(&self) -> (f64, f64) {
        let p = self.p as f64;
        self.coords
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (i, c)| {
                let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
                let t = 2.0 * std::f64::consts::PI * (i as f64 + 1.0) / p;
                (re + c * t.cos(), im + c * t.sin())
            })
    }
}

/// `G = sum_{x=1}^{p-1} eta_0(x) zeta_p^x`; squares to `p* = (-1)^((p-1)/2) p`.
pub fn quad_gauss_sum(p: u32) -> Result<CycInt, CycError> {
    CycInt::check_p(p)?;
    if p == 2 {
        return Err(CycError::EvenPrime(p));
    }
    let coords = (1..p).map(|x| BigInt::from(legendre(x, p))).collect();
    Ok(CycInt { p, coords })
}

/// `p* = (-1)^((p-1)/2) p`.
pub fn pstar(p: u32) -> BigInt {
    if p % 4 == 1 {
        BigInt::from(p)
    } else {
        -BigInt::from(p)
    }
}

/// `sqrt(p*)^e`, with `sqrt(p*)` realized as [`quad_gauss_sum`].
pub fn sqrt_pstar_pow(p: u32, e: u32) -> Result<CycInt, CycError> {
    let g = quad_gauss_sum(p)?;
    let half = pstar(p).pow(e / 2);
    if e % 2 == 0 {
        Ok(CycInt::from_int(p, half))
    } else {
        Ok(g.scale(&half))
    }
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("mixed root orders")
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("mixed root orders")
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("mixed root orders")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_rational_int() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "z^{}", i + 1)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    p: u32,
    coords: Vec<String>,
}

impl Serialize for CycInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycRepr {
            p: self.p,
            coords: self.coords.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = CycRepr::deserialize(d)?;
        if !is_prime(r.p) || r.coords.len() != r.p as usize - 1 {
            return Err(D::Error::custom(
                "coords must have p - 1 entries for a prime p",
            ));
        }
        let coords = r
            .coords
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<_, _>>()?;
        Ok(CycInt { p: r.p, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_and_constants() {
        let z = CycInt::zeta_pow(5, 1);
        assert_eq!(&CycInt::from_int(5, 0) + &z, z);
        let mut sum = CycInt::zero(7);
        for j in 0..7 {
            sum = &sum + &CycInt::zeta_pow(7, j);
        }
        assert!(sum.is_zero());
        let z3 = CycInt::zeta_pow(3, 1);
        assert_eq!(&z3 * &z3, CycInt::zeta_pow(3, 2));
        assert_eq!(CycInt::zeta_pow(3, 3), CycInt::one(3));
    }

    #[test]
    fn rational_detection() {
        assert_eq!(
            CycInt::from_int(5, 7).as_rational_int(),
            Some(BigInt::from(7))
        );
        assert_eq!(CycInt::zeta_pow(3, 1).as_rational_int(), None);
        let mut s = CycInt::zero(5);
        for j in 1..5 {
            s = &s + &CycInt::zeta_pow(5, j);
        }
        assert_eq!(s.as_rational_int(), Some(BigInt::from(-1)));
    }

    #[test]
    fn mixed_orders_rejected() {
        let a = CycInt::one(3);
        let b = CycInt::one(5);
        assert_eq!(a.try_add(&b), Err(CycError::MixedRootOrder(3, 5)));
        assert_eq!(a.try_mul(&b), Err(CycError::MixedRootOrder(3, 5)));
    }

    #[test]
    fn sigma_basics() {
        let x = &CycInt::zeta_pow(5, 1) + &CycInt::from_int(5, 3);
        assert_eq!(x.sigma(1).unwrap(), x);
        assert_eq!(
            CycInt::zeta_pow(5, 1).sigma(2).unwrap(),
            CycInt::zeta_pow(5, 2)
        );
        assert_eq!(
            x.sigma(2).unwrap().sigma(3).unwrap(),
            x.sigma(6 % 5).unwrap()
        );
        assert_eq!(x.sigma(5), Err(CycError::NotAUnit { a: 5, p: 5 }));
    }

    #[test]
    fn gauss_sums_small() {
        let g3 = quad_gauss_sum(3).unwrap();
        assert_eq!(g3, &CycInt::zeta_pow(3, 1) - &CycInt::zeta_pow(3, 2));
        assert_eq!((&g3 * &g3).as_rational_int(), Some(BigInt::from(-3)));
        let g5 = quad_gauss_sum(5).unwrap();
        assert_eq!((&g5 * &g5).as_rational_int(), Some(BigInt::from(5)));
        assert_eq!(quad_gauss_sum(2), Err(CycError::EvenPrime(2)));
    }

    #[test]
    fn sqrt_pstar_powers() {
        assert_eq!(
            sqrt_pstar_pow(3, 2).unwrap().as_rational_int(),
            Some(BigInt::from(-3))
        );
        assert_eq!(
            sqrt_pstar_pow(3, 4).unwrap().as_rational_int(),
            Some(BigInt::from(9))
        );
        let s = sqrt_pstar_pow(5, 3).unwrap();
        assert_eq!(s, quad_gauss_sum(5).unwrap().scale(&BigInt::from(5)));
        assert_eq!((&s * &s).as_rational_int(), Some(BigInt::from(125)));
        assert_eq!(sqrt_pstar_pow(7, 0).unwrap(), CycInt::one(7));
    }

    #[test]
    fn binary_root_is_minus_one() {
        let z = CycInt::zeta_pow(2, 1);
        assert_eq!(z.as_rational_int(), Some(BigInt::from(-1)));
        assert_eq!(
            CycInt::from_exponent_counts(2, &[5, 3]).as_rational_int(),
            Some(BigInt::from(2))
        );
    }

    #[test]
    fn json_uses_decimal_strings() {
        let g = quad_gauss_sum(3).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"p":3,"coords":["1","-1"]}"#);
        assert_eq!(serde_json::from_str::<CycInt>(&s).unwrap(), g);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(quad_gauss_sum(3).unwrap().to_string(), "z^1 - z^2");
        assert_eq!(CycInt::from_int(3, -4).to_string(), "-4");
    }
}
