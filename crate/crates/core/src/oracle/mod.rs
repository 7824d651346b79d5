//! Independent decision procedures for `=_E` and validation of compiled families.

mod algebraic;
mod closure;
mod matching;
mod validate;

pub use algebraic::{AlgebraicOracle, Carrier, Key};
pub use closure::{closure_equal, closure_equal_with, orbit, ClosureBudget, ClosureResult, StepRules};
pub use matching::{match_syntactic, substitute, AcMatcher, Subst};
pub use validate::{
    normality_violation, validate_family, Counterexample, FindingKind, OracleMode, ValidateOptions,
    ValidationReport,
};

use crate::error::Result;
use crate::term::{Signature, Term};
use crate::theory::Classification;

/// Decides `t =_E u` by interpretation; fails when a constructor is rule-defined.
pub fn algebraic_equal(sig: &Signature, cl: &Classification, t: &Term, u: &Term) -> Result<bool> {
    Ok(AlgebraicOracle::new(sig, cl)?.equal(t, u))
}
