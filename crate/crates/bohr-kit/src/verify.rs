//! Batch verification runs: evaluate one functional kind on a seeded
//! population of Schur-class samples (plus, optionally, extremal-family
//! members) and tally the three-valued verdicts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cert::Verdict;
use crate::functionals::{FunctionalContext, FunctionalError, FunctionalKind};
use crate::series::{random_schur_head, OperatorSeries, SeriesError};
use crate::sharpness::default_b_grid;

/// Radius at which each sample is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "radius", rename_all = "snake_case")]
pub enum VerifyRadius {
    Fixed {
        r: f64,
    },
    /// Per-sample radius `1/(3 - a0)`, the head-dependent homothety factor
    /// of the square-headed area functional.
    HeadDependent,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub kind: FunctionalKind,
    pub radius: VerifyRadius,
    pub samples: usize,
    pub dim: usize,
    pub order: usize,
    pub seed: u64,
    /// Heads are drawn uniformly from this closed interval.
    pub a0_range: (f64, f64),
    /// Also evaluate the extremal family at the default near-1 grid
    /// (members outside `a0_range` are skipped).
    pub include_extremal: bool,
}

impl VerifyConfig {
    pub fn new(kind: FunctionalKind, r: f64) -> Self {
        VerifyConfig {
            kind,
            radius: VerifyRadius::Fixed { r },
            samples: 1000,
            dim: 4,
            order: 128,
            seed: 0x0b0e,
            a0_range: (0.0, 0.999),
            include_extremal: false,
        }
    }
}

/// One evaluated sample. `a0` is the sample's head norm.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub kind: FunctionalKind,
    pub a0: f64,
    pub r: f64,
    pub value: f64,
    pub slack: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub records: Vec<VerifyRecord>,
}

impl VerifyReport {
    /// Record with the largest certified upper end.
    pub fn worst(&self) -> Option<&VerifyRecord> {
        self.records
            .iter()
            .max_by(|a, b| (a.value + a.slack).total_cmp(&(b.value + b.slack)))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("a0 range [{0}, {1}] is not inside [0, 1)")]
    BadHeadRange(f64, f64),
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let (lo, hi) = config.a0_range;
    if !(0.0..1.0).contains(&lo) || !(0.0..1.0).contains(&hi) || lo > hi {
        return Err(VerifyError::BadHeadRange(lo, hi));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = Vec::new();

    let push =
        |series: &OperatorSeries, records: &mut Vec<VerifyRecord>| -> Result<(), VerifyError> {
            let a0 = series.scalar_head().unwrap_or(f64::NAN);
            let r = match config.radius {
                VerifyRadius::Fixed { r } => r,
                VerifyRadius::HeadDependent => 1.0 / (3.0 - a0),
            };
            let value = FunctionalContext::new(series, r)?.value(&config.kind)?;
            records.push(VerifyRecord {
                kind: config.kind.clone(),
                a0,
                r,
                value: value.value(),
                slack: value.slack(),
                verdict: Verdict::le_one(value),
            });
            Ok(())
        };

    for _ in 0..config.samples {
        let a0 = lo + (hi - lo) * rng.random::<f64>();
        let sample = random_schur_head(a0, config.dim, config.order, &mut rng)?;
        push(&sample, &mut records)?;
    }
    if config.include_extremal {
        for b in default_b_grid() {
            if b < lo || b > hi {
                continue;
            }
            let phi = OperatorSeries::blaschke(b, config.dim, config.order)?;
            push(&phi, &mut records)?;
        }
    }

    let count = |v: Verdict| records.iter().filter(|rec| rec.verdict == v).count();
    Ok(VerifyReport {
        pass: count(Verdict::Pass),
        fail: count(Verdict::Fail),
        inconclusive: count(Verdict::Inconclusive),
        records,
    })
}
