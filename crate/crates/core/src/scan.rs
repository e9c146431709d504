//! Monte-Carlo check of the per-type mode bounds.
//!
//! Random pairs are drawn conditioned on each type, every mixture in a sweep of
//! mixing proportions is searched for modes, and the counts are compared with
//! the type cap (3, 2, 2) and with the bound from the roots of `q`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{pair_type, PairType};
use crate::error::{BoundViolation, Error, Result};
use crate::gaussian::{GaussianPair, Mixture};
use crate::linalg::{Mat2, Sym2, Vec2};
use crate::modes::{find_modes, SearchConfig};
use crate::ridgeline::modality_bound;

pub const DEFAULT_MIXING: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub seed: u64,
    pub trials_per_type: usize,
    pub mixing: Vec<f64>,
    /// Add the three-mode reference pair as an extra Type 1 trial.
    pub include_reference: bool,
    pub search: SearchConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            seed: 0,
            trials_per_type: 100,
            mixing: DEFAULT_MIXING.to_vec(),
            include_reference: true,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TypeSummary {
    pub trials: usize,
    pub max_observed: usize,
    /// `histogram[k]` = number of mixtures with `k` modes (k ≤ 3; more lands in 3+).
    pub histogram: [usize; 5],
    /// Drawn pairs whose classification differs from the type they were built for.
    pub misclassified: usize,
    pub tangent_roots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Indexed by `type − 1`.
    pub per_type: [TypeSummary; 3],
    pub violations: Vec<BoundViolation>,
}

impl BoundReport {
    pub fn summary(&self, ty: PairType) -> &TypeSummary {
        &self.per_type[ty.index() as usize - 1]
    }

    /// `Err(BoundViolation)` for the first recorded violation.
    pub fn check(&self) -> Result<()> {
        match self.violations.first() {
            Some(v) => Err(Error::BoundViolation(Box::new(v.clone()))),
            None => Ok(()),
        }
    }
}

/// A pair whose even mixture has three modes: `μ1 = (0,0)`, `μ2 = (1,1)`,
/// standard deviations `(1, 0.2)` and `(0.2, 1)` along the axes.
///
/// With variances `(1, 0.2)` instead, the same layout is unimodal for every `c`.
pub fn reference_three_mode_pair() -> GaussianPair {
    GaussianPair::from_params(
        Vec2::ZERO,
        Sym2::diag(1.0, 0.04),
        Vec2::new(1.0, 1.0),
        Sym2::diag(0.04, 1.0),
    )
    .expect("valid reference parameters")
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial generator, seeded from `(seed, type, index)` only.
pub fn trial_rng(seed: u64, ty: PairType, index: u64) -> ChaCha8Rng {
    let s = splitmix64(splitmix64(seed ^ splitmix64(ty.index() as u64)) ^ index);
    ChaCha8Rng::seed_from_u64(s)
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    libm::exp(rng.random_range(libm::log(lo)..libm::log(hi)))
}

fn rotated(angle: f64, d1: f64, d2: f64) -> Sym2 {
    let r = Mat2::rotation(angle);
    (r * Mat2::diag(d1, d2) * r.transpose()).symmetric_part()
}

fn random_mean<R: Rng>(rng: &mut R) -> Vec2 {
    Vec2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
}

/// Covariance eigenvalues log-uniform in `[0.1, 10]`, uniform rotation,
/// means uniform in `[−3, 3]²`, conditioned on the requested type.
pub fn random_pair<R: Rng>(rng: &mut R, ty: PairType) -> GaussianPair {
    let eig = |rng: &mut R| log_uniform(rng, 0.1, 10.0);
    loop {
        let mu1 = random_mean(rng);
        let mu2 = random_mean(rng);
        let d = mu2 - mu1;
        if d.norm() < 1e-3 {
            continue;
        }
        let (s1, s2) = match ty {
            PairType::Type1 => {
                let a1 = rng.random_range(0.0..core::f64::consts::PI);
                let a2 = rng.random_range(0.0..core::f64::consts::PI);
                (
                    rotated(a1, eig(rng), eig(rng)),
                    rotated(a2, eig(rng), eig(rng)),
                )
            }
            PairType::Type2 => {
                let axis = libm::atan2(d.y, d.x);
                (
                    rotated(axis, eig(rng), eig(rng)),
                    rotated(axis, eig(rng), eig(rng)),
                )
            }
            PairType::Type3 => {
                let a = rng.random_range(0.0..core::f64::consts::PI);
                let s = rotated(a, eig(rng), eig(rng));
                (s, s.scale(log_uniform(rng, 0.1, 10.0)))
            }
        };
        if let Ok(p) = GaussianPair::from_params(mu1, s1, mu2, s2) {
            if ty == PairType::Type3 || pair_type(&p, 1e-6) == ty {
                return p;
            }
        }
    }
}

fn record(
    report: &mut BoundReport,
    cfg: &ScanConfig,
    expected: PairType,
    pair: GaussianPair,
) -> Result<()> {
    let bound = modality_bound(&pair);
    let cap = expected.max_modes();
    let summary = &mut report.per_type[expected.index() as usize - 1];
    summary.trials += 1;
    if bound.pair_type != expected {
        summary.misclassified += 1;
    }
    if bound.tangency {
        summary.tangent_roots += 1;
    }
    for &c in &cfg.mixing {
        let modes = find_modes(&Mixture::new(pair, c)?, &cfg.search)?;
        let summary = &mut report.per_type[expected.index() as usize - 1];
        summary.max_observed = summary.max_observed.max(modes.count);
        summary.histogram[modes.count.min(4)] += 1;
        if modes.count > cap || modes.count > bound.root_bound {
            report.violations.push(BoundViolation {
                pair,
                c,
                expected_type: expected,
                observed_modes: modes.count,
                type_cap: cap,
                root_bound: bound.root_bound,
            });
        }
    }
    Ok(())
}

/// Runs `trials_per_type` random pairs of each type through every mixing
/// proportion. Violations are collected in the report, not raised; use
/// [`BoundReport::check`] to turn them into an error.
pub fn verify_bounds(cfg: &ScanConfig) -> Result<BoundReport> {
    if cfg.trials_per_type == 0 {
        return Err(Error::InvalidConfig("trials_per_type must be at least 1"));
    }
    let mut report = BoundReport {
        per_type: Default::default(),
        violations: Vec::new(),
    };
    if cfg.include_reference {
        record(
            &mut report,
            cfg,
            PairType::Type1,
            reference_three_mode_pair(),
        )?;
    }
    for ty in [PairType::Type1, PairType::Type2, PairType::Type3] {
        for i in 0..cfg.trials_per_type {
            let pair = random_pair(&mut trial_rng(cfg.seed, ty, i as u64), ty);
            record(&mut report, cfg, ty, pair)?;
        }
    }
    Ok(report)
}
