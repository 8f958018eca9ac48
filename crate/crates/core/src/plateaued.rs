//! `p`-ary functions on `GF(p^m)`, their exact Walsh spectra and the
//! plateaued / weakly-regular classification.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{quad_gauss_sum, sqrt_pstar_pow, CycInt};
use crate::gf::{inv_mod, legendre, pow_mod, FieldCtx, FieldElem};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionError {
    #[error("table has {got} entries, field has {expected} elements")]
    WrongLength { got: usize, expected: usize },
    #[error("table value {0} is not a residue modulo p")]
    ValueOutOfRange(u32),
    #[error("f(0) must be 0")]
    NonzeroAtZero,
    #[error("a quadratic spec over GF(p^{m}) needs {expected} coefficients, got {got}")]
    WrongCoeffCount { m: u32, expected: usize, got: usize },
    #[error("coefficient does not belong to the field")]
    BadCoefficient,
    #[error("cannot parse coefficient {0:?}; expected aK or 0")]
    BadLabel(String),
}

/// A function `GF(p^m) -> GF(p)` with `f(0) = 0`, stored by packed element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFunction {
    ctx: Arc<FieldCtx>,
    table: Vec<u32>,
}

impl PFunction {
    pub fn from_fn(
        ctx: Arc<FieldCtx>,
        f: impl Fn(FieldElem) -> u32,
    ) -> Result<Self, FunctionError> {
        let p = ctx.p();
        let table: Vec<u32> = (0..ctx.q())
            .map(|i| f(ctx.elem(i).expect("in range")))
            .collect();
        if let Some(&v) = table.iter().find(|&&v| v >= p) {
            return Err(FunctionError::ValueOutOfRange(v));
        }
        if table[0] != 0 {
            return Err(FunctionError::NonzeroAtZero);
        }
        Ok(PFunction { ctx, table })
    }

    /// From values listed in the field's canonical order (`0` last).
    pub fn from_canonical_table(ctx: Arc<FieldCtx>, values: &[u32]) -> Result<Self, FunctionError> {
        let q = ctx.q() as usize;
        if values.len() != q {
            return Err(FunctionError::WrongLength {
                got: values.len(),
                expected: q,
            });
        }
        let mut table = vec![0u32; q];
        for (x, &v) in ctx.elements().zip(values) {
            table[x.index()] = v;
        }
        Self::from_fn(ctx, |x| table[x.index()])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn eval(&self, x: FieldElem) -> u32 {
        self.table[x.index()]
    }

    /// Values in canonical order.
    pub fn canonical_table(&self) -> Vec<u32> {
        self.ctx.elements().map(|x| self.eval(x)).collect()
    }

    /// Each value of `GF(p)` taken exactly `p^(m-1)` times.
    pub fn is_balanced_by_count(&self) -> bool {
        let p = self.ctx.p() as usize;
        let mut counts = vec![0usize; p];
        self.table.iter().for_each(|&v| counts[v as usize] += 1);
        counts.iter().all(|&c| c * p == self.table.len())
    }
}

#[derive(Serialize, Deserialize)]
struct PFunctionRepr {
    field: FieldCtx,
    table: Vec<u32>,
}

impl Serialize for PFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PFunctionRepr {
            field: (*self.ctx).clone(),
            table: self.canonical_table(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PFunctionRepr::deserialize(d)?;
        PFunction::from_canonical_table(Arc::new(r.field), &r.table)
            .map_err(serde::de::Error::custom)
    }
}

/// `Q(x) = sum_{i=0}^{ceil(m/2)} tr(a_i x^(p^i + 1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSpec {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FieldElem>,
}

/// Number of coefficients `a_0 .. a_{ceil(m/2)}`.
pub fn quadratic_coeff_count(m: u32) -> usize {
    m.div_ceil(2) as usize + 1
}

impl QuadraticSpec {
    pub fn new(ctx: Arc<FieldCtx>, coeffs: Vec<FieldElem>) -> Result<Self, FunctionError> {
        let expected = quadratic_coeff_count(ctx.m());
        if coeffs.len() != expected {
            return Err(FunctionError::WrongCoeffCount {
                m: ctx.m(),
                expected,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| c.index() >= ctx.q() as usize) {
            return Err(FunctionError::BadCoefficient);
        }
        Ok(QuadraticSpec { ctx, coeffs })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn eval(&self, x: FieldElem) -> u32 {
        let f = &self.ctx;
        let p = f.p();
        self.coeffs.iter().enumerate().fold(0, |acc, (i, &a)| {
            let xi = f.mul(f.frobenius(x, i as u32), x);
            (acc + f.trace_product(a, xi)) % p
        })
    }

    pub fn to_function(&self) -> PFunction {
        PFunction::from_fn(self.ctx.clone(), |x| self.eval(x)).expect("quadratic forms vanish at 0")
    }

    /// `L(z) = sum_i (a_i z^(p^i) + a_i^(p^(m-i)) z^(p^(m-i)))`.
    pub fn linearized(&self, z: FieldElem) -> FieldElem {
        let f = &self.ctx;
        let m = f.m();
        self.coeffs
            .iter()
            .enumerate()
            .fold(f.zero(), |acc, (i, &a)| {
                let i = i as u32;
                let back = (m - i % m) % m;
                let t1 = f.mul(a, f.frobenius(z, i));
                let t2 = f.mul(f.frobenius(a, back), f.frobenius(z, back));
                f.add(acc, f.add(t1, t2))
            })
    }

    /// Dimension over `GF(p)` of the kernel of `L`; equals the plateau level.
    pub fn kernel_dim(&self) -> u32 {
        let f = &self.ctx;
        let m = f.m() as usize;
        let rows = (0..m)
            .map(|j| {
                let mut basis = vec![0u32; m];
                basis[j] = 1;
                let z = f.from_coeffs(&basis).expect("basis vector");
                f.coeffs(self.linearized(z))
            })
            .collect();
        (m - Matrix::from_rows(rows).rank(f.p())) as u32
    }
}

/// Parses `aK` (meaning `alpha^K`) or `0`.
pub fn parse_coeff_label(ctx: &FieldCtx, label: &str) -> Result<FieldElem, FunctionError> {
    let label = label.trim();
    if label == "0" {
        return Ok(ctx.zero());
    }
    let k: i64 = label
        .strip_prefix('a')
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| FunctionError::BadLabel(label.to_string()))?;
    Ok(ctx.alpha_pow(k))
}

/// Inverse of [`parse_coeff_label`], with the exponent reduced mod `q - 1`.
pub fn coeff_label(ctx: &FieldCtx, x: FieldElem) -> String {
    ctx.log(x)
        .map_or_else(|| "0".to_string(), |k| format!("a{k}"))
}

impl QuadraticSpec {
    pub fn from_labels(ctx: Arc<FieldCtx>, labels: &[&str]) -> Result<Self, FunctionError> {
        let coeffs = labels
            .iter()
            .map(|l| parse_coeff_label(&ctx, l))
            .collect::<Result<_, _>>()?;
        Self::new(ctx, coeffs)
    }

    pub fn labels(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|&c| coeff_label(&self.ctx, c))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct QuadraticRepr {
    field: FieldCtx,
    coeffs: Vec<Vec<u32>>,
}

impl Serialize for QuadraticSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadraticRepr {
            field: (*self.ctx).clone(),
            coeffs: self.coeffs.iter().map(|&c| self.ctx.coeffs(c)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = QuadraticRepr::deserialize(d)?;
        let ctx = Arc::new(r.field);
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| ctx.from_coeffs(c).map_err(D::Error::custom))
            .collect::<Result<_, _>>()?;
        QuadraticSpec::new(ctx, coeffs).map_err(D::Error::custom)
    }
}

/// Exact Walsh spectrum `W_f(beta) = sum_x zeta^(f(x) - tr(beta x))`, indexed by
/// packed element index of `beta`.
pub fn walsh_transform(f: &PFunction) -> Vec<CycInt> {
    let ctx = f.ctx();
    let p = ctx.p();
    (0..ctx.q())
        .into_par_iter()
        .map(|b| {
            let beta = ctx.elem(b).expect("in range");
            let mut counts = vec![0i64; p as usize];
            for x in 0..ctx.q() {
                let x = ctx.elem(x).expect("in range");
                let e = (f.eval(x) + p - ctx.trace_product(beta, x)) % p;
                counts[e as usize] += 1;
            }
            CycInt::from_exponent_counts(p, &counts)
        })
        .collect()
}

/// `sum_beta |W_f(beta)|^2`, which must be `p^(2m)`. Individual terms need
/// not be rational, so the sum is formed in the ring first.
pub fn spectrum_mass(spectrum: &[CycInt]) -> Option<BigInt> {
    let p = spectrum.first()?.p();
    spectrum
        .iter()
        .fold(CycInt::zero(p), |acc, w| &acc + &(w * &w.conj()))
        .as_rational_int()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WrpClass {
    /// Weakly regular, homogeneous, unbalanced.
    #[serde(rename = "WRP")]
    Wrp,
    /// Weakly regular, homogeneous, balanced.
    #[serde(rename = "WRPB")]
    Wrpb,
    WeaklyRegularOnly,
    NonWeaklyRegular,
    NotPlateaued,
}

/// A Walsh spectrum together with everything derived from it.
#[derive(Debug, Clone, Serialize)]
pub struct WalshProfile {
    pub p: u32,
    pub m: u32,
    #[serde(skip)]
    pub spectrum: Vec<CycInt>,
    /// Plateau level, `None` when not plateaued.
    pub s: Option<u32>,
    /// Walsh support membership, indexed by packed element.
    #[serde(skip)]
    pub support: Vec<bool>,
    pub balanced: bool,
    /// Global sign of the Walsh values (weakly regular only).
    pub epsilon: Option<i8>,
    /// Dual function on the support, zero elsewhere (weakly regular only).
    #[serde(skip)]
    pub fstar: Option<Vec<u32>>,
    pub h: Option<u32>,
    pub l: Option<u32>,
    pub class: WrpClass,
}

impl WalshProfile {
    pub fn compute(f: &PFunction) -> Self {
        classify(f, walsh_transform(f))
    }

    pub fn is_plateaued(&self) -> bool {
        self.s.is_some()
    }

    pub fn is_weakly_regular(&self) -> bool {
        self.epsilon.is_some()
    }

    pub fn support_size(&self) -> usize {
        self.support.iter().filter(|&&b| b).count()
    }

    pub fn in_support(&self, beta: FieldElem) -> bool {
        self.support[beta.index()]
    }

    pub fn fstar_at(&self, beta: FieldElem) -> Option<u32> {
        self.fstar.as_ref().map(|t| t[beta.index()])
    }

    /// `W_f(beta)` as a rational integer; always available for `p = 2`.
    pub fn rational_value(&self, beta: FieldElem) -> Option<BigInt> {
        self.spectrum[beta.index()].as_rational_int()
    }
}

/// Completes a profile from a spectrum.
///
/// For odd `p` each support value is matched against `eps * sqrt(p*)^(m+s) * zeta^j`
/// over all `2p` candidates; the decomposition is unique because `-1` is not a
/// `p`-th root of unity. For `p = 2` the values are `+-2^((m+s)/2)` and the
/// sign is folded into `f*` with `eps = +1`.
pub fn classify(f: &PFunction, spectrum: Vec<CycInt>) -> WalshProfile {
    let ctx = f.ctx();
    let (p, m) = (ctx.p(), ctx.m());
    let q = ctx.q() as usize;
    let norms: Vec<Option<BigInt>> = spectrum.iter().map(CycInt::norm_sq).collect();
    let support: Vec<bool> = spectrum.iter().map(|w| !w.is_zero()).collect();
    let balanced = spectrum[0].is_zero();

    let mut profile = WalshProfile {
        p,
        m,
        spectrum,
        s: None,
        support,
        balanced,
        epsilon: None,
        fstar: None,
        h: None,
        l: None,
        class: WrpClass::NotPlateaued,
    };
    profile.h = find_homogeneity(p, |a, h| {
        let ah = pow_mod(a, h as u64, p);
        (0..q as u32).all(|x| {
            let x = ctx.elem(x).expect("in range");
            f.eval(ctx.scale(a, x)) == ah * f.eval(x) % p
        })
    });

    let Some(s) = plateau_level(&norms, p, m) else {
        return profile;
    };
    profile.s = Some(s);

    let Some((eps, fstar)) = dual_function(&profile.spectrum, &profile.support, p, m + s) else {
        profile.class = WrpClass::NonWeaklyRegular;
        return profile;
    };
    profile.epsilon = Some(eps);
    profile.l = find_homogeneity(p, |a, l| {
        let al = pow_mod(a, l as u64, p);
        (0..q as u32)
            .filter(|&b| profile.support[b as usize])
            .all(|b| {
                let beta = ctx.elem(b).expect("in range");
                fstar[ctx.scale(a, beta).index()] == al * fstar[b as usize] % p
            })
    });
    profile.fstar = Some(fstar);
    profile.class = match (p, profile.h, balanced) {
        (2, _, _) | (_, None, _) => WrpClass::WeaklyRegularOnly,
        (_, Some(_), false) => WrpClass::Wrp,
        (_, Some(_), true) => WrpClass::Wrpb,
    };
    profile
}

/// Smallest even `h` in `2..=2(p-1)` with `gcd(h-1, p-1) = 1` such that
/// `holds(a, h)` for every `a` in `GF(p)^*`.
fn find_homogeneity(p: u32, holds: impl Fn(u32, u32) -> bool) -> Option<u32> {
    (1..p)
        .map(|k| 2 * k)
        .filter(|&h| num_integer::gcd(h - 1, p - 1) == 1)
        .find(|&h| (1..p).all(|a| holds(a, h)))
}

fn plateau_level(norms: &[Option<BigInt>], p: u32, m: u32) -> Option<u32> {
    let mut level: Option<BigInt> = None;
    for n in norms {
        let n = n.as_ref()?;
        if n.is_zero() {
            continue;
        }
        match &level {
            None => level = Some(n.clone()),
            Some(l) if l == n => {}
            Some(_) => return None,
        }
    }
    let level = level?;
    (0..=m).find(|&s| level == BigInt::from(p).pow(m + s))
}

fn dual_function(spectrum: &[CycInt], support: &[bool], p: u32, e: u32) -> Option<(i8, Vec<u32>)> {
    let mut fstar = vec![0u32; spectrum.len()];
    if p == 2 {
        if e % 2 != 0 {
            return None;
        }
        let mag = BigInt::one() << (e / 2);
        for (i, w) in spectrum.iter().enumerate().filter(|&(i, _)| support[i]) {
            let v = w.as_rational_int()?;
            if v.abs() != mag {
                return None;
            }
            fstar[i] = u32::from(v.is_negative());
        }
        return Some((1, fstar));
    }
    let base = sqrt_pstar_pow(p, e).expect("odd prime");
    let neg = -&base;
    let candidates: Vec<(i8, u32, CycInt)> = (0..p)
        .flat_map(|j| {
            [
                (1i8, j, base.mul_zeta(j as i64)),
                (-1i8, j, neg.mul_zeta(j as i64)),
            ]
        })
        .collect();
    let mut eps: Option<i8> = None;
    for (i, w) in spectrum.iter().enumerate().filter(|&(i, _)| support[i]) {
        let mut hits = candidates.iter().filter(|(_, _, c)| c == w);
        let (e_i, j, _) = hits.next()?;
        debug_assert!(hits.next().is_none());
        match eps {
            None => eps = Some(*e_i),
            Some(e0) if e0 == *e_i => {}
            Some(_) => return None,
        }
        fstar[i] = *j;
    }
    eps.map(|e| (e, fstar))
}

/// Brute-force `#{x : a f(x) + tr(b x) = t}`.
pub fn count_solutions(f: &PFunction, a: u32, b: FieldElem, t: u32) -> u64 {
    let ctx = f.ctx();
    let p = ctx.p();
    ctx.elements()
        .filter(|&x| (a * f.eval(x) + ctx.trace_product(b, x)) % p == t % p)
        .count() as u64
}

/// Closed-form value of the solution count for a weakly regular `f`, odd `p`
/// and `t != 0`, following the character-sum evaluation case by case.
///
/// The relevant Walsh value is `W_f(-b/a)`, so support membership and `f*`
/// are both read at `-b/a`.
pub fn expected_solution_count(
    profile: &WalshProfile,
    ctx: &FieldCtx,
    a: u32,
    b: FieldElem,
    t: u32,
) -> Option<BigInt> {
    let p = ctx.p();
    let (eps, s) = (profile.epsilon?, profile.s?);
    if p == 2 || t % p == 0 {
        return None;
    }
    let m = ctx.m();
    let base = BigInt::from(p).pow(m - 1);
    let a = a % p;
    if a == 0 {
        return Some(if b.is_zero() { BigInt::zero() } else { base });
    }
    let a_inv = inv_mod(a, p).expect("nonzero");
    let beta = ctx.neg(ctx.scale(a_inv, b));
    if !profile.in_support(beta) {
        return Some(base);
    }
    let fs = profile.fstar_at(beta)?;
    let target = a_inv * t % p;
    let e = m + s;
    let eps = BigInt::from(eps);
    let pb = BigInt::from(p);
    if e % 2 == 0 {
        let root = sqrt_pstar_pow(p, e).ok()?.as_rational_int()?;
        let term = &eps * root / &pb;
        Some(if fs == target {
            base + term * (p - 1)
        } else {
            base - term
        })
    } else {
        if fs == target {
            return Some(base);
        }
        let g = quad_gauss_sum(p).ok()?;
        let prod = (&sqrt_pstar_pow(p, e).ok()? * &g).as_rational_int()?;
        let term = &eps * prod / &pb;
        let chi = legendre((fs + p - target) % p, p);
        Some(if chi == 1 { base + term } else { base - term })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m, None).unwrap())
    }

    fn fifth_section_spec(ctx: &Arc<FieldCtx>) -> QuadraticSpec {
        QuadraticSpec::new(ctx.clone(), vec![ctx.alpha_pow(8), ctx.alpha_pow(1)]).unwrap()
    }

    #[test]
    fn zero_function_spectrum() {
        let c = ctx(3, 2);
        let f = PFunction::from_fn(c.clone(), |_| 0).unwrap();
        let w = walsh_transform(&f);
        for (i, v) in w.iter().enumerate() {
            let want = if i == 0 { 9 } else { 0 };
            assert_eq!(v.as_rational_int(), Some(BigInt::from(want)));
        }
        let prof = classify(&f, w);
        assert_eq!(prof.s, Some(2));
        assert_eq!(prof.support_size(), 1);
        assert!(!prof.balanced);
    }

    #[test]
    fn trace_function_spectrum() {
        let c = ctx(5, 2);
        let f = PFunction::from_fn(c.clone(), |x| c.trace(x)).unwrap();
        let w = walsh_transform(&f);
        for (i, v) in w.iter().enumerate() {
            let want = if i == 1 { 25 } else { 0 };
            assert_eq!(v.as_rational_int(), Some(BigInt::from(want)));
        }
    }

    #[test]
    fn quad_eval_examples() {
        let c = ctx(3, 2);
        let zero = QuadraticSpec::new(c.clone(), vec![c.zero(), c.zero()]).unwrap();
        assert!(c.elements().all(|x| zero.eval(x) == 0));
        let sq = QuadraticSpec::new(c.clone(), vec![c.one(), c.zero()]).unwrap();
        assert_eq!(sq.eval(c.one()), 2);
        assert_eq!(fifth_section_spec(&c).eval(c.zero()), 0);
        assert!(QuadraticSpec::new(c.clone(), vec![c.one()]).is_err());
    }

    #[test]
    fn kernel_dims() {
        let c = ctx(3, 3);
        let zero = QuadraticSpec::new(c.clone(), vec![c.zero(); 3]).unwrap();
        assert_eq!(zero.kernel_dim(), 3);
        let sq = QuadraticSpec::new(c.clone(), vec![c.one(), c.zero(), c.zero()]).unwrap();
        assert_eq!(sq.kernel_dim(), 0);
        assert_eq!(fifth_section_spec(&ctx(3, 2)).kernel_dim(), 1);
    }

    #[test]
    fn fifth_section_function_is_one_plateaued() {
        let c = ctx(3, 2);
        let f = fifth_section_spec(&c).to_function();
        let prof = WalshProfile::compute(&f);
        for w in &prof.spectrum {
            let n = w.norm_sq().unwrap();
            assert!(n.is_zero() || n == BigInt::from(27));
        }
        assert_eq!(prof.s, Some(1));
        assert!(matches!(prof.class, WrpClass::Wrp | WrpClass::Wrpb));
        assert_eq!(prof.class == WrpClass::Wrpb, prof.balanced);
    }

    #[test]
    fn bent_square_trace() {
        let c = ctx(3, 2);
        let f = QuadraticSpec::new(c.clone(), vec![c.one(), c.zero()])
            .unwrap()
            .to_function();
        let prof = WalshProfile::compute(&f);
        assert!(prof
            .spectrum
            .iter()
            .all(|w| w.norm_sq() == Some(BigInt::from(9))));
        assert_eq!(prof.s, Some(0));
        assert_eq!(prof.h, Some(2));
    }

    #[test]
    fn non_plateaued_detected() {
        let c = ctx(3, 2);
        // a single spike at one point
        let g = c.alpha();
        let f = PFunction::from_fn(c.clone(), |x| u32::from(x == g)).unwrap();
        let prof = WalshProfile::compute(&f);
        assert_eq!(prof.class, WrpClass::NotPlateaued);
        assert!(prof.s.is_none());
    }

    #[test]
    fn solution_counts_trivial_rows() {
        let c = ctx(3, 2);
        let f = fifth_section_spec(&c).to_function();
        assert_eq!(count_solutions(&f, 0, c.zero(), 1), 0);
        assert_eq!(count_solutions(&f, 0, c.alpha(), 2), 3);
        let prof = WalshProfile::compute(&f);
        for t in 1..3 {
            let got = count_solutions(&f, 1, c.zero(), t);
            let want = expected_solution_count(&prof, &c, 1, c.zero(), t).unwrap();
            assert_eq!(BigInt::from(got), want);
        }
    }

    #[test]
    fn closed_form_counts_match_brute_force() {
        for (p, m) in [(3u32, 2u32), (3, 3), (5, 2)] {
            let c = ctx(p, m);
            let n = quadratic_coeff_count(m);
            // a handful of coefficient choices, including degenerate-ish ones
            let picks: Vec<Vec<FieldElem>> = (0..c.q().min(12))
                .map(|k| {
                    (0..n)
                        .map(|i| c.elem((k * 7 + i as u32 * 3) % c.q()).unwrap())
                        .collect()
                })
                .collect();
            for coeffs in picks {
                let spec = QuadraticSpec::new(c.clone(), coeffs).unwrap();
                let f = spec.to_function();
                let prof = WalshProfile::compute(&f);
                assert_eq!(prof.s, Some(spec.kernel_dim()));
                if !prof.is_weakly_regular() {
                    continue;
                }
                for a in 0..p {
                    for b in c.elements() {
                        for t in 1..p {
                            let got = BigInt::from(count_solutions(&f, a, b, t));
                            let want = expected_solution_count(&prof, &c, a, b, t).unwrap();
                            assert_eq!(got, want, "p={p} m={m} a={a} b={b:?} t={t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_labels() {
        let c = ctx(3, 2);
        let spec = QuadraticSpec::from_labels(c.clone(), &["a8", "a1"]).unwrap();
        assert_eq!(spec, fifth_section_spec(&c));
        assert_eq!(spec.labels(), vec!["a0", "a1"]);
        assert_eq!(coeff_label(&c, c.zero()), "0");
        assert!(QuadraticSpec::from_labels(c.clone(), &["b2", "0"]).is_err());
        assert!(QuadraticSpec::from_labels(c, &["a1"]).is_err());
    }

    #[test]
    fn function_json_round_trip() {
        let c = ctx(3, 2);
        let f = fifth_section_spec(&c).to_function();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with(r#"{"field":{"p":3,"m":2"#));
        let back: PFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"field":{"p":3,"m":1,"poly":[0,1],"alpha":[2]},"table":[0,0,1]}"#;
        assert!(serde_json::from_str::<PFunction>(bad).is_err());
    }
}
