//! The outcome of a decision run.

use crate::certificate::Certificate;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Final answer of the decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// Unitarily equivalent to a complex symmetric matrix; a certificate is attached.
    #[serde(rename = "UECSM")]
    Uecsm,
    /// Proven not equivalent; a witness ratio index is attached.
    #[serde(rename = "NotUECSM")]
    NotUecsm,
    /// The pipeline could not decide (degenerate spectrum, no proper form, or
    /// a certificate that failed verification inside the borderline band).
    Inconclusive,
}

/// Which part of the pipeline settled (or stopped) the decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `T` commutes with `T*`; certificate from a joint eigenbasis of `A` and `B`.
    Normal,
    /// `A` or `B` has a (numerically) repeated eigenvalue. For 3×3 this is
    /// decisive; for larger matrices it marks the reason for `Inconclusive`.
    RepeatedEigenvalue,
    /// `A` and `B` share an eigenvector; certificate by deflating it out.
    SharedEigenvector,
    /// More than one vanishing overlap entry. For 3×3 this implies a shared
    /// eigenvector and is decisive; for larger matrices it marks an overlap
    /// matrix with no proper form (`Inconclusive`).
    MultipleZeros,
    /// The generic path: proper form + reality test on overlap ratios.
    RealityTest,
    /// The dedicated total 2×2 construction.
    TwoByTwo,
    /// 1×1 input, or an abnormal internal stop (then paired with `Inconclusive`).
    Trivial,
}

impl Branch {
    /// Stable kebab-case name for tables and reports.
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Normal => "normal",
            Branch::RepeatedEigenvalue => "repeated-eigenvalue",
            Branch::SharedEigenvector => "shared-eigenvector",
            Branch::MultipleZeros => "multiple-zeros",
            Branch::RealityTest => "reality-test",
            Branch::TwoByTwo => "two-by-two",
            Branch::Trivial => "trivial",
        }
    }

    pub const ALL: [Branch; 7] = [
        Branch::Normal,
        Branch::RepeatedEigenvalue,
        Branch::SharedEigenvector,
        Branch::MultipleZeros,
        Branch::RealityTest,
        Branch::TwoByTwo,
        Branch::Trivial,
    ];
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Uecsm => "UECSM",
            Status::NotUecsm => "NotUECSM",
            Status::Inconclusive => "Inconclusive",
        })
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Decision outcome: status, deciding branch, how close the decisive quantity
/// came to its threshold, and the evidence (certificate or witness).
///
/// `margin` is signed as *measured quantity minus threshold* for the deciding
/// comparison, so a branch that fired on a small quantity reports a negative
/// margin and a failed reality test reports a positive one. `borderline` is
/// set when any decisive comparison landed within a factor of 10 of its
/// threshold; the status itself is unaffected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: crate::Real + Serialize",
    deserialize = "F: crate::Real + Deserialize<'de>"
))]
pub struct Verdict<F> {
    pub status: Status,
    pub branch: Branch,
    pub margin: F,
    pub borderline: bool,
    /// 0-based overlap-matrix index `(i, j)` of the worst reality ratio on failure.
    pub witness: Option<(usize, usize)>,
    /// Value of the worst ratio `q_ij` when a reality test ran.
    pub witness_value: Option<Complex<F>>,
    pub certificate: Option<Certificate<F>>,
    /// Human-readable explanation for `Inconclusive` outcomes.
    pub reason: Option<String>,
}

impl<F> Verdict<F> {
    pub fn is_uecsm(&self) -> bool {
        matches!(self.status, Status::Uecsm)
    }
}
