//! Exact arithmetic over `GF(p^m)` and `Z[zeta_p]`, Walsh spectra of
//! plateaued functions, and the linear codes built from them.

pub mod code;
pub mod construct;
pub mod cyclo;
pub mod gf;
pub mod linalg;
pub mod plateaued;
pub mod scan;
#[cfg(test)]
mod testutil;
pub mod verify;

pub use code::{CodeError, LinearCode, SpherePacking, WeightDistribution};
pub use construct::{ConstructError, ConstructionBundle, SelfDualOutcome};
pub use cyclo::{CycError, CycInt};
pub use gf::{FieldCtx, FieldElem, FieldError};
pub use linalg::Matrix;
pub use plateaued::{FunctionError, PFunction, QuadraticSpec, WalshProfile, WrpClass};
pub use verify::{Target, Verdict, VerifyReport};
