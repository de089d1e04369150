//! Randomized campaigns: sample matrices from a chosen ensemble, decide each
//! one, and aggregate the verdicts.
//!
//! Campaigns are reproducible by construction: trial `i` draws from a fresh
//! generator seeded with `seed ^ i`, so the result is independent of thread
//! count and schedule, and any single trial can be replayed in isolation.

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pipeline::test_generic;
use crate::scalar::Real;
use crate::tol::Tolerances;
use crate::verdict::{Branch, Status, Verdict};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// Matrix ensembles the lab can draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    /// Independent complex Gaussian entries `(x + iy)/√2`, `x, y ~ N(0,1)`.
    Ginibre,
    /// Exponential of a Gaussian skew-Hermitian matrix.
    Unitary,
    /// A sampled unitary with all but `rank` columns zeroed.
    PartialIsometry { rank: usize },
}

/// Everything a campaign needs; serializable so runs can be re-issued.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig<F> {
    pub n: usize,
    pub ensemble: Ensemble,
    pub trials: u64,
    pub seed: u64,
    pub tol: Tolerances<F>,
}

impl<F: Real> CampaignConfig<F> {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("dimension must be at least 1".into()));
        }
        if let Ensemble::PartialIsometry { rank } = self.ensemble {
            if rank > self.n {
                return Err(Error::RankOutOfRange { rank, n: self.n });
            }
        }
        Ok(())
    }
}

/// Log-scale histogram of `|margin|`: one underflow bin below `1e-16`,
/// twenty decade bins covering `[1e-16, 1e4)`, one overflow bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginHistogram {
    pub bins: [u64; 22],
}

impl MarginHistogram {
    pub const DECADES: usize = 20;
    const FLOOR: f64 = 1e-16;
    const CEIL: f64 = 1e4;

    pub fn new() -> Self {
        Self { bins: [0; 22] }
    }

    pub fn record(&mut self, magnitude: f64) {
        let idx = if magnitude.is_nan() || magnitude < Self::FLOOR {
            0
        } else if magnitude >= Self::CEIL {
            Self::DECADES + 1
        } else {
            1 + (((magnitude.log10() + 16.0).floor()) as usize).min(Self::DECADES - 1)
        };
        self.bins[idx] += 1;
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }

    fn merge(&mut self, other: &Self) {
        for (a, b) in self.bins.iter_mut().zip(other.bins.iter()) {
            *a += *b;
        }
    }
}

impl Default for MarginHistogram {
    fn default() -> Self {
        Self::new()
    }
}

/// Aggregated verdicts of one campaign. Deliberately not generic: counts are
/// scalar-free, and margins enter only through their histogram bins.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignStats {
    pub trials: u64,
    pub uecsm: u64,
    pub not_uecsm: u64,
    pub inconclusive: u64,
    pub borderline: u64,
    pub branch_counts: BTreeMap<Branch, u64>,
    pub margin_histogram: MarginHistogram,
    /// Wall-clock time; ignored by [`CampaignStats::same_counts`].
    pub elapsed_secs: f64,
}

impl CampaignStats {
    fn empty() -> Self {
        Self {
            trials: 0,
            uecsm: 0,
            not_uecsm: 0,
            inconclusive: 0,
            borderline: 0,
            branch_counts: BTreeMap::new(),
            margin_histogram: MarginHistogram::new(),
            elapsed_secs: 0.0,
        }
    }

    fn record<F: Real>(&mut self, v: &Verdict<F>) {
        self.trials += 1;
        match v.status {
            Status::Uecsm => self.uecsm += 1,
            Status::NotUecsm => self.not_uecsm += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
        if v.borderline {
            self.borderline += 1;
        }
        *self.branch_counts.entry(v.branch).or_insert(0) += 1;
        self.margin_histogram.record(v.margin.as_f64().abs());
    }

    fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.uecsm += other.uecsm;
        self.not_uecsm += other.not_uecsm;
        self.inconclusive += other.inconclusive;
        self.borderline += other.borderline;
        for (branch, count) in other.branch_counts {
            *self.branch_counts.entry(branch).or_insert(0) += count;
        }
        self.margin_histogram.merge(&other.margin_histogram);
        self.elapsed_secs += other.elapsed_secs;
        self
    }

    /// Identical tallies, timing excluded — the right notion of equality for
    /// reproducibility checks across thread counts or reruns.
    pub fn same_counts(&self, other: &Self) -> bool {
        self.trials == other.trials
            && self.uecsm == other.uecsm
            && self.not_uecsm == other.not_uecsm
            && self.inconclusive == other.inconclusive
            && self.borderline == other.borderline
            && self.branch_counts == other.branch_counts
            && self.margin_histogram == other.margin_histogram
    }
}

/// Matrix with independent complex Gaussian entries, `E|t_ij|² = 1`.
pub fn sample_ginibre<F: Real>(n: usize, rng: &mut impl Rng) -> CMatrix<F>
where
    StandardNormal: Distribution<F>,
{
    let root_half = F::lit(0.5).sqrt();
    CMatrix::from_fn(n, |_, _| {
        let x: F = rng.sample(StandardNormal);
        let y: F = rng.sample(StandardNormal);
        Complex::new(x * root_half, y * root_half)
    })
}

/// Unitary obtained by exponentiating the skew-Hermitian part of a Ginibre
/// draw. The part is assembled mirror-exactly so the exponential's
/// precondition holds to the bit.
pub fn sample_unitary<F: Real>(n: usize, rng: &mut impl Rng) -> Result<CMatrix<F>>
where
    StandardNormal: Distribution<F>,
{
    let g = sample_ginibre::<F>(n, rng);
    let half = F::lit(0.5);
    let mut s = CMatrix::zeros(n);
    for i in 0..n {
        s[(i, i)] = Complex::new(F::zero(), g[(i, i)].im);
        for j in 0..i {
            let v = (g[(i, j)] - g[(j, i)].conj()).scale(half);
            s[(i, j)] = v;
            s[(j, i)] = -v.conj();
        }
    }
    crate::eigen::expm_skew_hermitian(&s)
}

/// Rank-`rank` partial isometry: a sampled unitary with its trailing
/// `n − rank` columns replaced by zeros, so `T*T` is the orthogonal
/// projection onto the span of the first `rank` coordinates.
pub fn sample_partial_isometry<F: Real>(
    n: usize,
    rank: usize,
    rng: &mut impl Rng,
) -> Result<CMatrix<F>>
where
    StandardNormal: Distribution<F>,
{
    if rank > n {
        return Err(Error::RankOutOfRange { rank, n });
    }
    let mut t = sample_unitary::<F>(n, rng)?;
    for j in rank..n {
        for i in 0..n {
            t[(i, j)] = Complex::new(F::zero(), F::zero());
        }
    }
    Ok(t)
}

fn run_trial<F: Real>(cfg: &CampaignConfig<F>, rng: &mut ChaCha8Rng) -> Verdict<F>
where
    StandardNormal: Distribution<F>,
{
    let sampled = match cfg.ensemble {
        Ensemble::Ginibre => Ok(sample_ginibre::<F>(cfg.n, rng)),
        Ensemble::Unitary => sample_unitary::<F>(cfg.n, rng),
        Ensemble::PartialIsometry { rank } => sample_partial_isometry::<F>(cfg.n, rank, rng),
    };
    match sampled {
        Ok(t) => test_generic(&t, &cfg.tol),
        Err(e) => Verdict {
            status: Status::Inconclusive,
            branch: Branch::Trivial,
            margin: F::zero(),
            borderline: true,
            witness: None,
            witness_value: None,
            certificate: None,
            reason: Some(e.to_string()),
        },
    }
}

/// Run a full campaign in parallel and aggregate the verdicts.
///
/// Trial `i` uses `ChaCha8Rng::seed_from_u64(cfg.seed ^ i)`, making the
/// tallies a pure function of the configuration.
pub fn run_campaign<F: Real>(cfg: &CampaignConfig<F>) -> Result<CampaignStats>
where
    StandardNormal: Distribution<F>,
{
    cfg.validate()?;
    let start = Instant::now();
    let mut stats = (0..cfg.trials)
        .into_par_iter()
        .fold(CampaignStats::empty, |mut acc, trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ trial);
            acc.record(&run_trial(cfg, &mut rng));
            acc
        })
        .reduce(CampaignStats::empty, CampaignStats::merge);
    stats.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(stats)
}
