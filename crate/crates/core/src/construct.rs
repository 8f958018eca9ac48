//! The augmented code built from a plateaued function, its punctured and
//! identity-extended relatives, and self-dual extension of self-orthogonal codes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::linalg::{dot, Matrix};
use crate::plateaued::{PFunction, QuadraticSpec, WalshProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("generator rows are dependent; f is affine on the field")]
    DegenerateRows,
    #[error("input code is not self-orthogonal")]
    NotSelfOrthogonalInput,
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn from_rows(p: u32, rows: Vec<Vec<u32>>) -> Result<LinearCode, ConstructError> {
    let n = rows[0].len();
    LinearCode::new(p, n, Matrix::from_rows(rows)).map_err(|e| match e {
        CodeError::DependentRows => ConstructError::DegenerateRows,
        e => ConstructError::Code(e),
    })
}

/// Rows `f(x)` then `tr(alpha^j x)` for `j < m`, columns in canonical order.
fn function_rows(f: &PFunction) -> Vec<Vec<u32>> {
    let ctx = f.ctx();
    let mut rows = vec![ctx.elements().map(|x| f.eval(x)).collect()];
    for j in 0..ctx.m() {
        let a = ctx.alpha_pow(j as i64);
        rows.push(ctx.elements().map(|x| ctx.trace_product(a, x)).collect());
    }
    rows
}

/// `{(a f(x) + tr(b x) + c)_x}` with generator rows: all-ones, `f`, traces.
pub fn build_cbar(f: &PFunction) -> Result<LinearCode, ConstructError> {
    let q = f.ctx().q() as usize;
    let mut rows = vec![vec![1; q]];
    rows.extend(function_rows(f));
    from_rows(f.ctx().p(), rows)
}

/// `{(a f(x) + tr(b x))_x}`.
pub fn build_cf(f: &PFunction) -> Result<LinearCode, ConstructError> {
    from_rows(f.ctx().p(), function_rows(f))
}

/// `build_cf` with the `x = 0` coordinate (the last column) removed.
pub fn build_cstar(f: &PFunction) -> Result<LinearCode, ConstructError> {
    let cf = build_cf(f)?;
    let last = cf.n() - 1;
    from_rows(cf.p(), cf.gen().without_column(last).into_rows())
}

/// The augmented generator with its `f` row replaced by `f + 1`.
pub fn g1_matrix(f: &PFunction) -> Result<Matrix, ConstructError> {
    let cbar = build_cbar(f)?;
    let p = cbar.p();
    let mut rows = cbar.gen().rows().to_vec();
    rows[1].iter_mut().for_each(|v| *v = (*v + 1) % p);
    Ok(Matrix::from_rows(rows))
}

/// `[I_{m+2} : G1]`.
pub fn build_extended(f: &PFunction) -> Result<LinearCode, ConstructError> {
    let g1 = g1_matrix(f)?;
    let ext = Matrix::identity(g1.nrows()).hconcat(&g1);
    from_rows(f.ctx().p(), ext.into_rows())
}

/// Everything built from one function.
#[derive(Debug, Clone)]
pub struct ConstructionBundle {
    pub f: PFunction,
    pub profile: WalshProfile,
    pub cbar: LinearCode,
    pub cstar: LinearCode,
    pub cf: LinearCode,
    pub g1: Matrix,
    pub extended: LinearCode,
}

impl ConstructionBundle {
    pub fn build(f: PFunction) -> Result<Self, ConstructError> {
        let profile = WalshProfile::compute(&f);
        Self::with_profile(f, profile)
    }

    pub fn with_profile(f: PFunction, profile: WalshProfile) -> Result<Self, ConstructError> {
        Ok(ConstructionBundle {
            cbar: build_cbar(&f)?,
            cstar: build_cstar(&f)?,
            cf: build_cf(&f)?,
            g1: g1_matrix(&f)?,
            extended: build_extended(&f)?,
            profile,
            f,
        })
    }
}

/// What a code was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub p: u32,
    pub m: u32,
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    pub epsilon: Option<i8>,
    pub balanced: bool,
}

impl Provenance {
    pub fn new(profile: &WalshProfile, spec: Option<&QuadraticSpec>) -> Self {
        Provenance {
            p: profile.p,
            m: profile.m,
            s: profile.s,
            coeffs: spec.map(QuadraticSpec::labels),
            epsilon: profile.epsilon,
            balanced: profile.balanced,
        }
    }
}

/// LinearCode JSON with an optional extra `provenance` key; readers that only
/// want the code can deserialize a [`LinearCode`] from the same text.
#[derive(Debug, Clone, Serialize)]
pub struct CodeDocument<'a> {
    #[serde(flatten)]
    pub code: &'a LinearCode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfDualOutcome {
    SelfDual(LinearCode),
    /// The parity condition on `(p, n)` that rules out a self-dual code.
    NoSelfDual(String),
}

/// The parity obstruction on length, if any: `n` must be even, and for
/// `p = 3 mod 4` a multiple of 4.
pub fn self_dual_obstruction(p: u32, n: usize) -> Option<String> {
    if n % 2 == 1 {
        Some("n is odd".to_string())
    } else if p % 4 == 3 && n % 4 != 0 {
        Some("n ≢ 0 mod 4".to_string())
    } else {
        None
    }
}

/// Greedily grows a self-orthogonal code to a self-dual one.
///
/// Each step picks vectors of the current dual that are independent modulo
/// the code and searches their nonzero combinations (at most three vectors,
/// coefficients in lexicographic order) for one with `v.v = 0`. Three
/// variables always suffice for a quadratic form to have a nontrivial zero,
/// and once the parity condition holds the final two-dimensional quotient is
/// hyperbolic, so the search cannot come up empty.
pub fn extend_to_self_dual(code: &LinearCode) -> Result<SelfDualOutcome, ConstructError> {
    if !code.is_self_orthogonal() {
        return Err(ConstructError::NotSelfOrthogonalInput);
    }
    let (p, n) = (code.p(), code.n());
    if let Some(reason) = self_dual_obstruction(p, n) {
        return Ok(SelfDualOutcome::NoSelfDual(reason));
    }
    let mut current = code.clone();
    while 2 * current.k() < n {
        let mut span = current.gen().clone();
        let mut fresh = Vec::new();
        for v in current.dual().gen().rows() {
            if fresh.len() == 3 {
                break;
            }
            let mut trial = span.clone();
            trial.push_row(v.clone());
            if trial.rank(p) == trial.nrows() {
                span = trial;
                fresh.push(v.clone());
            }
        }
        let v = isotropic_combination(&fresh, p)
            .expect("an isotropic vector exists under the parity condition");
        let mut rows = current.gen().rows().to_vec();
        rows.push(v);
        current = LinearCode::new(p, n, Matrix::from_rows(rows))?;
    }
    Ok(SelfDualOutcome::SelfDual(current))
}

fn isotropic_combination(basis: &[Vec<u32>], p: u32) -> Option<Vec<u32>> {
    let r = basis.len() as u32;
    let n = basis.first()?.len();
    let total = (p as u64).pow(r);
    (1..total).find_map(|mut idx| {
        // most significant coefficient first gives lexicographic order
        let mut coeffs = vec![0u32; r as usize];
        for c in coeffs.iter_mut().rev() {
            *c = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        let mut v = vec![0u32; n];
        for (b, &c) in basis.iter().zip(&coeffs) {
            crate::linalg::axpy(&mut v, b, c, p);
        }
        (dot(&v, &v, p) == 0).then_some(v)
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::code::enumerate_weights;
    use crate::code::WeightDistribution;
    use crate::gf::FieldCtx;

    fn fifth_section_function() -> PFunction {
        let ctx = Arc::new(FieldCtx::new(3, 2, None).unwrap());
        QuadraticSpec::from_labels(ctx, &["a8", "a1"])
            .unwrap()
            .to_function()
    }

    #[test]
    fn fifth_section_codes() {
        let f = fifth_section_function();
        let b = ConstructionBundle::build(f).unwrap();
        assert_eq!((b.cbar.n(), b.cbar.k()), (9, 4));
        assert_eq!(
            enumerate_weights(&b.cbar).unwrap(),
            WeightDistribution::from_u64(&[1, 0, 0, 6, 0, 0, 66, 0, 0, 8])
        );
        assert_eq!((b.cstar.n(), b.cstar.k()), (8, 3));
        assert_eq!(enumerate_weights(&b.cstar).unwrap().min_distance(), Some(3));
        assert!(b.cstar.is_self_orthogonal());
        assert_eq!((b.extended.n(), b.extended.k()), (13, 4));
        assert_eq!(b.g1.get(1, 8), 1);
    }

    #[test]
    fn zero_function_is_degenerate() {
        let ctx = Arc::new(FieldCtx::new(3, 2, None).unwrap());
        let f = PFunction::from_fn(ctx, |_| 0).unwrap();
        assert_eq!(build_cbar(&f), Err(ConstructError::DegenerateRows));
    }

    #[test]
    fn self_dual_from_fifth_section_cstar() {
        let cstar = build_cstar(&fifth_section_function()).unwrap();
        let SelfDualOutcome::SelfDual(sd) = extend_to_self_dual(&cstar).unwrap() else {
            panic!("expected a self-dual code");
        };
        assert!(sd.is_self_dual());
        assert!(sd.contains_code(&cstar));
        assert_eq!(
            enumerate_weights(&sd).unwrap(),
            WeightDistribution::from_u64(&[1, 0, 0, 16, 0, 0, 64, 0, 0])
        );
    }

    #[test]
    fn ternary_length_ten_is_obstructed() {
        let c = LinearCode::new(
            3,
            10,
            Matrix::from_rows(vec![vec![1, 1, 1, 0, 0, 0, 0, 0, 0, 0]]),
        )
        .unwrap();
        assert_eq!(
            extend_to_self_dual(&c).unwrap(),
            SelfDualOutcome::NoSelfDual("n ≢ 0 mod 4".into())
        );
        let not_so = LinearCode::new(3, 4, Matrix::from_rows(vec![vec![1, 0, 0, 0]])).unwrap();
        assert_eq!(
            extend_to_self_dual(&not_so),
            Err(ConstructError::NotSelfOrthogonalInput)
        );
    }

    #[test]
    fn binary_extension() {
        let c =
            LinearCode::new(2, 8, Matrix::from_rows(vec![vec![1, 1, 0, 0, 0, 0, 0, 0]])).unwrap();
        let SelfDualOutcome::SelfDual(sd) = extend_to_self_dual(&c).unwrap() else {
            panic!()
        };
        assert!(sd.is_self_dual());
        assert_eq!(sd.k(), 4);
        assert!(sd.contains_code(&c));
    }

    #[test]
    fn document_keeps_code_shape() {
        let f = fifth_section_function();
        let cbar = build_cbar(&f).unwrap();
        let doc = CodeDocument {
            code: &cbar,
            provenance: None,
        };
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::from_str::<LinearCode>(&text).unwrap(), cbar);
    }
}
