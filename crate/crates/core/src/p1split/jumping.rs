use crate::planelog::GradedPresentation;
use crate::{Error, Result};

use super::line::LineP2;
use super::splitting::SplittingType;

/// Outcome of a jumping-line test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpVerdict {
    pub jumping: bool,
    /// `h¹(E(−1−c1)|_L)`.
    pub order: i64,
    /// Splitting of `E|_L` itself.
    pub splitting: SplittingType,
}

/// Tests whether `line` is a jumping line of the rank-2 sheaf `E` presented
/// by `p`, i.e. whether `h¹(E(−1−c1)|_L) > 0`. Only the normalizations
/// `c1 ∈ {−1, 0}` are accepted, and `c1` must match the presentation.
pub fn jumping_test(p: &GradedPresentation, c1: i64, line: &LineP2) -> Result<JumpVerdict> {
    jumping_test_windowed(p, c1, line, None)
}

pub fn jumping_test_windowed(
    p: &GradedPresentation,
    c1: i64,
    line: &LineP2,
    window: Option<(i64, i64)>,
) -> Result<JumpVerdict> {
    if p.rank != 2 {
        return Err(Error::Precondition(format!("jumping lines need a rank-2 sheaf, got rank {}", p.rank)));
    }
    if c1 != 0 && c1 != -1 {
        return Err(Error::Precondition(format!("jumping lines are defined for c1 in {{-1,0}}, got {c1}")));
    }
    if p.c1() != c1 {
        return Err(Error::Precondition(format!(
            "presentation has c1 = {} but c1 = {c1} was requested; normalize first",
            p.c1()
        )));
    }
    let splitting = p.restricted_splitting(line, window)?;
    let order = splitting.h1(-1 - c1);
    Ok(JumpVerdict { jumping: order > 0, order, splitting })
}
