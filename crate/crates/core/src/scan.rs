//! Batch classification and verification over spaces of quadratic forms.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::{ConstructError, ConstructionBundle};
use crate::gf::{FieldCtx, FieldElem};
use crate::plateaued::{quadratic_coeff_count, QuadraticSpec, WalshProfile, WrpClass};
use crate::verify::{run_targets, Enumerated, Target, Verdict, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapError {
    #[error("GF({p}^{m}) needs about {work} operations per function, above the cap of {cap}")]
    WorkTooLarge {
        p: u32,
        m: u32,
        work: u128,
        cap: u64,
    },
    #[error("binary fields are limited to m <= {max}, got {m}")]
    BinaryDegree { m: u32, max: u32 },
}

pub const MAX_BINARY_DEGREE: u32 = 12;

/// Desk-scale limit for verifying one function on `GF(p^m)`: enumerating the
/// `p^(m+2)` codewords of length `p^m` must stay within `cap` steps.
pub fn check_desk_scale(p: u32, m: u32, cap: u64) -> Result<(), CapError> {
    if p == 2 && m > MAX_BINARY_DEGREE {
        return Err(CapError::BinaryDegree {
            m,
            max: MAX_BINARY_DEGREE,
        });
    }
    let work = (p as u128).saturating_pow(2 * m + 2);
    if work > cap as u128 {
        return Err(CapError::WorkTooLarge { p, m, work, cap });
    }
    Ok(())
}

#[derive(Debug, Clone)]
enum Source {
    Exhaustive,
    Listed(Vec<Vec<FieldElem>>),
}

/// Which coefficient vectors a scan visits, in emission order.
#[derive(Debug, Clone)]
pub struct ScanPlan {
    ctx: Arc<FieldCtx>,
    source: Source,
}

impl ScanPlan {
    /// Every coefficient vector, ordered by packed coefficient indices with
    /// `a_0` most significant.
    pub fn exhaustive(ctx: Arc<FieldCtx>) -> Self {
        ScanPlan {
            ctx,
            source: Source::Exhaustive,
        }
    }

    /// `count` coefficient vectors drawn uniformly with a seeded generator.
    pub fn random(ctx: Arc<FieldCtx>, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = quadratic_coeff_count(ctx.m());
        let q = ctx.q();
        let specs = (0..count)
            .map(|_| {
                (0..n)
                    .map(|_| ctx.elem(rng.gen_range(0..q)).expect("in range"))
                    .collect()
            })
            .collect();
        ScanPlan {
            ctx,
            source: Source::Listed(specs),
        }
    }

    pub fn len(&self) -> u64 {
        match &self.source {
            Source::Exhaustive => {
                (self.ctx.q() as u64).pow(quadratic_coeff_count(self.ctx.m()) as u32)
            }
            Source::Listed(v) => v.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spec(&self, i: u64) -> QuadraticSpec {
        let coeffs = match &self.source {
            Source::Exhaustive => {
                let n = quadratic_coeff_count(self.ctx.m());
                let q = self.ctx.q() as u64;
                let mut rest = i;
                let mut c = vec![FieldElem::ZERO; n];
                for slot in c.iter_mut().rev() {
                    *slot = self.ctx.elem((rest % q) as u32).expect("in range");
                    rest /= q;
                }
                c
            }
            Source::Listed(v) => v[i as usize].clone(),
        };
        QuadraticSpec::new(self.ctx.clone(), coeffs).expect("coefficient count matches")
    }
}

/// One scanned function.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub index: u64,
    pub coeffs: Vec<String>,
    pub s: Option<u32>,
    pub class: WrpClass,
    pub epsilon: Option<i8>,
    pub balanced: bool,
    /// `ok`, `degenerate` or an error message.
    pub status: String,
    pub reports: Vec<VerifyReport>,
}

impl ScanRecord {
    pub fn has_failure(&self) -> bool {
        self.reports.iter().any(|r| r.verdict.is_fail())
    }
}

/// Classify and verify one spec.
pub fn evaluate(
    index: u64,
    spec: &QuadraticSpec,
    targets: &[Target],
    cap: u64,
    seed: u64,
) -> ScanRecord {
    let f = spec.to_function();
    let profile = WalshProfile::compute(&f);
    let mut record = ScanRecord {
        index,
        coeffs: spec.labels(),
        s: profile.s,
        class: profile.class,
        epsilon: profile.epsilon,
        balanced: profile.balanced,
        status: "ok".into(),
        reports: Vec::new(),
    };
    let bundle = match ConstructionBundle::with_profile(f, profile) {
        Ok(b) => b,
        Err(ConstructError::DegenerateRows) => {
            record.status = "degenerate".into();
            return record;
        }
        Err(e) => {
            record.status = e.to_string();
            return record;
        }
    };
    match Enumerated::compute(&bundle, cap) {
        Ok(e) => record.reports = run_targets(&bundle, &e, targets, Some(spec), seed ^ index),
        Err(e) => record.status = e.to_string(),
    }
    record
}

/// Pass/fail/not-applicable tallies per target.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanSummary {
    pub scanned: u64,
    pub skipped_by_filter: u64,
    pub degenerate: u64,
    pub errors: u64,
    pub by_target: BTreeMap<Target, [u64; 3]>,
    pub classes: BTreeMap<String, u64>,
}

impl ScanSummary {
    pub fn add(&mut self, r: &ScanRecord) {
        self.scanned += 1;
        match r.status.as_str() {
            "ok" => {}
            "degenerate" => self.degenerate += 1,
            _ => self.errors += 1,
        }
        *self.classes.entry(format!("{:?}", r.class)).or_default() += 1;
        for rep in &r.reports {
            let slot = self.by_target.entry(rep.target).or_default();
            match rep.verdict {
                Verdict::Pass => slot[0] += 1,
                Verdict::Fail => slot[1] += 1,
                Verdict::NotApplicable(_) => slot[2] += 1,
            }
        }
    }

    pub fn failures(&self) -> u64 {
        self.by_target.values().map(|v| v[1]).sum::<u64>() + self.errors
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "scanned {} (filtered out {}, degenerate {}, errors {})\n",
            self.scanned, self.skipped_by_filter, self.degenerate, self.errors
        );
        for (t, [p, f, na]) in &self.by_target {
            out.push_str(&format!(
                "  {:<9} pass {p:>6}  fail {f:>6}  n/a {na:>6}\n",
                t.name()
            ));
        }
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|(c, n)| format!("{c}={n}"))
            .collect();
        out.push_str(&format!("  classes: {}\n", classes.join(" ")));
        out
    }
}

/// Walks a plan in chunks, evaluating each chunk in parallel and handing
/// records to `sink` in plan order. Specs whose plateau level differs from
/// `s_filter` are skipped before any construction.
pub fn run_scan(
    plan: &ScanPlan,
    targets: &[Target],
    s_filter: Option<u32>,
    cap: u64,
    seed: u64,
    mut sink: impl FnMut(&ScanRecord),
) -> ScanSummary {
    const CHUNK: u64 = 256;
    let mut summary = ScanSummary::default();
    let total = plan.len();
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        let records: Vec<Option<ScanRecord>> = (start..end)
            .into_par_iter()
            .map(|i| {
                let spec = plan.spec(i);
                if s_filter.is_some_and(|s| spec.kernel_dim() != s) {
                    return None;
                }
                Some(evaluate(i, &spec, targets, cap, seed))
            })
            .collect();
        for r in records {
            match r {
                Some(r) => {
                    summary.add(&r);
                    sink(&r);
                }
                None => summary.skipped_by_filter += 1,
            }
        }
        start = end;
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_caps() {
        assert!(check_desk_scale(3, 4, 100_000_000).is_ok());
        assert!(check_desk_scale(5, 5, 100_000_000).is_err());
        assert!(check_desk_scale(2, 12, 100_000_000).is_ok());
        assert!(matches!(
            check_desk_scale(2, 13, u64::MAX),
            Err(CapError::BinaryDegree { .. })
        ));
    }

    #[test]
    fn exhaustive_plan_order() {
        let ctx = Arc::new(FieldCtx::new(3, 2, None).unwrap());
        let plan = ScanPlan::exhaustive(ctx.clone());
        assert_eq!(plan.len(), 81);
        assert_eq!(plan.spec(0).coeffs(), &[ctx.zero(), ctx.zero()]);
        assert_eq!(plan.spec(1).coeffs(), &[ctx.zero(), ctx.elem(1).unwrap()]);
        assert_eq!(plan.spec(9).coeffs(), &[ctx.elem(1).unwrap(), ctx.zero()]);
    }

    #[test]
    fn random_plan_is_seeded() {
        let ctx = Arc::new(FieldCtx::new(2, 6, None).unwrap());
        let a = ScanPlan::random(ctx.clone(), 10, 7);
        let b = ScanPlan::random(ctx.clone(), 10, 7);
        let c = ScanPlan::random(ctx, 10, 8);
        let specs = |p: &ScanPlan| (0..p.len()).map(|i| p.spec(i)).collect::<Vec<_>>();
        assert_eq!(specs(&a), specs(&b));
        assert_ne!(specs(&a), specs(&c));
    }

    #[test]
    fn small_exhaustive_scan_has_no_failures() {
        let ctx = Arc::new(FieldCtx::new(3, 2, None).unwrap());
        let plan = ScanPlan::exhaustive(ctx);
        let mut seen = Vec::new();
        let summary = run_scan(&plan, &Target::ALL, None, 1 << 20, 3, |r| {
            seen.push(r.index)
        });
        assert_eq!(summary.failures(), 0, "{}", summary.render());
        assert_eq!(seen, (0..81).collect::<Vec<_>>());
        assert!(summary.degenerate >= 1);
    }
}
