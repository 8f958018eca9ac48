//! Shared proptest strategies for the module tests.

use std::sync::Arc;

use proptest::prelude::*;

use crate::code::LinearCode;
use crate::gf::FieldCtx;
use crate::linalg::Matrix;
use crate::plateaued::{quadratic_coeff_count, QuadraticSpec};

pub const FIELDS: [(u32, u32); 8] = [
    (2, 1),
    (2, 4),
    (2, 6),
    (3, 2),
    (3, 3),
    (5, 2),
    (7, 2),
    (11, 1),
];

pub fn field_strategy() -> impl Strategy<Value = Arc<FieldCtx>> {
    prop::sample::select(FIELDS.to_vec())
        .prop_map(|(p, m)| Arc::new(FieldCtx::new(p, m, None).unwrap()))
}

pub fn field_with_elems(n: usize) -> impl Strategy<Value = (Arc<FieldCtx>, Vec<u32>)> {
    field_strategy().prop_flat_map(move |ctx| {
        let q = ctx.q();
        (Just(ctx), prop::collection::vec(0..q, n))
    })
}

pub fn quadratic(fields: &'static [(u32, u32)]) -> impl Strategy<Value = QuadraticSpec> {
    prop::sample::select(fields.to_vec()).prop_flat_map(|(p, m)| {
        let ctx = Arc::new(FieldCtx::new(p, m, None).unwrap());
        let q = ctx.q();
        prop::collection::vec(0..q, quadratic_coeff_count(m)).prop_map(move |idx| {
            let coeffs = idx.into_iter().map(|i| ctx.elem(i).unwrap()).collect();
            QuadraticSpec::new(ctx.clone(), coeffs).unwrap()
        })
    })
}

/// Trace of the multiplication-by-`x` matrix in the polynomial basis.
pub fn matrix_trace(ctx: &FieldCtx, x: crate::gf::FieldElem) -> u32 {
    let m = ctx.m() as usize;
    (0..m)
        .map(|j| {
            let mut e = vec![0u32; m];
            e[j] = 1;
            ctx.coeffs(ctx.mul(x, ctx.from_coeffs(&e).unwrap()))[j]
        })
        .sum::<u32>()
        % ctx.p()
}

pub fn random_code(p: u32, n: usize, rows: Vec<Vec<u32>>) -> Option<LinearCode> {
    let rows: Vec<Vec<u32>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|v| v % p).take(n).collect())
        .collect();
    let code = LinearCode::reduced(p, n, Matrix::from_rows(rows)).ok()?;
    (code.k() > 0).then_some(code)
}
