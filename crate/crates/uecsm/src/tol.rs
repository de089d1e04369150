//! Decision thresholds and the borderline band around them.

use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// Thresholds used by the decision pipeline. All are relative measures.
///
/// The defaults are tuned for `f64`; for `f32` every field should be loosened
/// by roughly the ratio of machine epsilons (~1e8).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances<F> {
    /// Two eigenvalues closer than `eig_gap · max(1, ‖·‖_F)` count as repeated.
    pub eig_gap: F,
    /// Overlap entries below `zero · ‖row‖·‖col‖` count as zero.
    pub zero: F,
    /// The reality test passes when `max |Im q| / (1 + |q|) ≤ real`.
    pub real: F,
    /// Two unit eigenvectors with `1 − |⟨g,h⟩| ≤ parallel` count as shared.
    pub parallel: F,
    /// `T` counts as normal when `‖TT* − T*T‖_F ≤ normal · ‖T‖_F²`.
    pub normal: F,
}

impl<F: Real> Default for Tolerances<F> {
    fn default() -> Self {
        Tolerances {
            eig_gap: F::lit(1e-8),
            zero: F::lit(1e-10),
            real: F::lit(1e-8),
            parallel: F::lit(1e-10),
            normal: F::lit(1e-12),
        }
    }
}

/// Width of the borderline band: a measured quantity within a factor of 10 of
/// its threshold makes the verdict borderline (the verdict itself is unchanged).
pub const BORDERLINE_FACTOR: f64 = 10.0;

/// True when `quantity` lands within the borderline band around `threshold`.
pub fn is_borderline<F: Real>(quantity: F, threshold: F) -> bool {
    if threshold <= F::zero() {
        return quantity > F::zero();
    }
    let lo = threshold / F::lit(BORDERLINE_FACTOR);
    let hi = threshold * F::lit(BORDERLINE_FACTOR);
    quantity >= lo && quantity <= hi
}
