//! Seeded Monte Carlo simulation of the whole pipeline, used to check the
//! deterministic evaluation statistically.
//!
//! Random numbers come from ChaCha8 (`rand_chacha`), a counter-based
//! generator: the seed selects the key and each batch of [`BATCH_SIZE`]
//! samples draws from its own stream (`set_stream(batch index)`). Batches run
//! in parallel but are merged in index order, so the estimate depends only on
//! the seed and the configuration.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{avg_entanglement, branch_concurrence, WLowerBound};
use crate::error::{check_count, check_range, Error, Result};
use crate::format::fmt_num;
use crate::locc::{evolve_branch, w_class_weight, BranchState};
use crate::lossy::loss_weights;

/// Samples per independent random stream.
pub const BATCH_SIZE: u64 = 4096;

/// Measurement strength used in each loss branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaChoice {
    /// Same κ for every loss count.
    Uniform(f64),
    /// κ indexed by lost-helper count `0..=N-2`.
    PerLoss(Vec<f64>),
}

impl KappaChoice {
    /// The deterministic optima of the W figure of merit.
    pub fn optimal(bound: &WLowerBound) -> Self {
        Self::PerLoss(bound.per_loss.iter().map(|o| o.kappa_star).collect())
    }

    fn for_loss(&self, lost: usize) -> f64 {
        match self {
            Self::Uniform(k) => *k,
            Self::PerLoss(ks) => ks[lost],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub n: usize,
    pub rounds: usize,
    pub kappa: KappaChoice,
    pub epsilon: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        check_count("network size", self.n, 3, usize::MAX)?;
        check_count("rounds", self.rounds, 1, usize::MAX)?;
        check_range("epsilon", self.epsilon, 0.0, 1.0)?;
        if self.samples == 0 {
            return Err(Error::OutOfRange {
                name: "samples",
                value: 0.0,
                range: "[1, inf)".into(),
            });
        }
        match &self.kappa {
            KappaChoice::Uniform(k) => check_range("kappa", *k, 0.0, 1.0)?,
            KappaChoice::PerLoss(ks) => {
                if ks.len() != self.n - 1 {
                    return Err(Error::DimensionMismatch {
                        expected: self.n - 1,
                        actual: ks.len(),
                    });
                }
                for &k in ks {
                    check_range("kappa", k, 0.0, 1.0)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: u64,
    /// Set when a single sample makes the standard error meaningless.
    pub degenerate: bool,
}

impl McEstimate {
    /// `mean<TAB>stderr<TAB>samples<TAB>seed` with a header line.
    pub fn to_tsv(&self, seed: u64) -> String {
        format!(
            "mean\tstderr\tsamples\tseed\n{}\t{}\t{}\t{}\n",
            fmt_num(self.mean),
            fmt_num(self.standard_error),
            self.samples,
            seed
        )
    }

    /// `|mean - target| < sigmas · stderr`.
    pub fn agrees_with(&self, target: f64, sigmas: f64) -> bool {
        if self.degenerate {
            return false;
        }
        let diff = (self.mean - target).abs();
        diff < sigmas * self.standard_error || diff == 0.0
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.count as f64, other.count as f64);
        Moments {
            count,
            mean: self.mean + delta * nb / count as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / count as f64,
        }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples an index with probability proportional to `weights`.
fn pick(rng: &mut impl Rng, weights: impl IntoIterator<Item = f64>) -> Result<usize> {
    let dist = WeightedIndex::new(weights).map_err(|e| Error::Parse(format!("weights: {e}")))?;
    Ok(dist.sample(rng))
}

fn sample_once(cfg: &McConfig, loss: &WeightedIndex<f64>, rng: &mut ChaCha8Rng) -> Result<f64> {
    let lost = loss.sample(rng);
    let kappa = cfg.kappa.for_loss(lost);
    let mut branch = BranchState::lossy_w(cfg.n, lost);
    for _ in 0..cfg.rounds {
        if branch.is_absorbing() {
            break;
        }
        let ens = evolve_branch(&branch, kappa)?;
        let k = pick(rng, ens.classes.iter().map(|c| c.probability))?;
        let child = ens.classes[k].branch;
        let total = child.total();
        branch = BranchState {
            m: child.m,
            w_w: child.w_w / total,
            w_0: child.w_0 / total,
        };
    }
    Ok(branch_concurrence(&branch))
}

/// Monte Carlo estimate of the loss-averaged concurrence for a fixed κ choice.
pub fn mc_estimate(cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let loss = WeightedIndex::new(loss_weights(cfg.n, cfg.epsilon)?)
        .map_err(|e| Error::Parse(format!("loss weights: {e}")))?;
    let batches = cfg.samples.div_ceil(BATCH_SIZE);
    let partial = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(cfg.seed, b);
            let count = BATCH_SIZE.min(cfg.samples - b * BATCH_SIZE);
            let mut acc = Moments::default();
            for _ in 0..count {
                acc.push(sample_once(cfg, &loss, &mut rng)?);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let total = partial
        .into_iter()
        .fold(Moments::default(), Moments::merge);
    let degenerate = total.count < 2;
    let standard_error = if degenerate {
        0.0
    } else {
        (total.m2 / (total.count - 1) as f64 / total.count as f64).sqrt()
    };
    Ok(McEstimate {
        mean: total.mean,
        standard_error,
        samples: total.count,
        degenerate,
    })
}

/// Deterministic value of the quantity [`mc_estimate`] samples.
pub fn dp_value(cfg: &McConfig) -> Result<f64> {
    cfg.validate()?;
    let q = loss_weights(cfg.n, cfg.epsilon)?;
    let mut total = 0.0;
    for (lost, w) in q.iter().enumerate() {
        if *w == 0.0 {
            continue;
        }
        let b = BranchState::lossy_w(cfg.n, lost);
        total += w * avg_entanglement(&b, cfg.kappa.for_loss(lost), cfg.rounds)?;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub zeros: usize,
    pub count: u64,
    pub frequency: f64,
    pub expected: f64,
}

/// Single-round outcome-class frequencies from a pure `W_m` branch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassHistogram {
    pub m: usize,
    pub kappa: f64,
    pub samples: u64,
    /// One row per class `zeros = m, m-1, …, 1`.
    pub rows: Vec<HistogramRow>,
    /// Pearson statistic over classes with nonzero expected probability.
    pub chi_square: f64,
}

pub fn mc_class_histogram(m: usize, kappa: f64, samples: u64, seed: u64) -> Result<ClassHistogram> {
    check_count("live qubits", m, 2, usize::MAX)?;
    check_range("kappa", kappa, 0.0, 1.0)?;
    if samples == 0 {
        return Err(Error::OutOfRange {
            name: "samples",
            value: 0.0,
            range: "[1, inf)".into(),
        });
    }
    let ens = evolve_branch(&BranchState::pure_w(m), kappa)?;
    let dist = WeightedIndex::new(ens.classes.iter().map(|c| c.probability))
        .map_err(|e| Error::Parse(format!("class weights: {e}")))?;
    let batches = samples.div_ceil(BATCH_SIZE);
    let partial: Vec<Vec<u64>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b);
            let mut counts = vec![0u64; ens.classes.len()];
            for _ in 0..BATCH_SIZE.min(samples - b * BATCH_SIZE) {
                counts[dist.sample(&mut rng)] += 1;
            }
            counts
        })
        .collect();
    let mut rows = Vec::with_capacity(m);
    let mut chi_square = 0.0;
    for zeros in (1..=m).rev() {
        let count: u64 = ens
            .classes
            .iter()
            .position(|c| c.zeros == zeros)
            .map_or(0, |k| partial.iter().map(|p| p[k]).sum());
        let expected = w_class_weight(m, zeros, kappa)?;
        if expected > 0.0 {
            let e = expected * samples as f64;
            chi_square += (count as f64 - e).powi(2) / e;
        }
        rows.push(HistogramRow {
            zeros,
            count,
            frequency: count as f64 / samples as f64,
            expected,
        });
    }
    Ok(ClassHistogram {
        m,
        kappa,
        samples,
        rows,
        chi_square,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, eps: f64, kappa: f64, rounds: usize, samples: u64, seed: u64) -> McConfig {
        McConfig {
            n,
            rounds,
            kappa: KappaChoice::Uniform(kappa),
            epsilon: eps,
            samples,
            seed,
        }
    }

    #[test]
    fn w3_estimate() {
        let c = cfg(3, 0.0, 0.25, 1, 100_000, 7);
        let est = mc_estimate(&c).unwrap();
        assert!((dp_value(&c).unwrap() - 0.75).abs() < 1e-15);
        assert!(est.agrees_with(0.75, 3.0), "{est:?}");
    }

    #[test]
    fn deterministic_for_seed() {
        let c = cfg(5, 0.3, 0.4, 3, 20_000, 42);
        assert_eq!(mc_estimate(&c).unwrap(), mc_estimate(&c).unwrap());
        let other = McConfig { seed: 43, ..c.clone() };
        assert_ne!(mc_estimate(&c).unwrap(), mc_estimate(&other).unwrap());
    }

    #[test]
    fn single_sample_is_degenerate() {
        let est = mc_estimate(&cfg(4, 0.5, 0.3, 1, 1, 1)).unwrap();
        assert!(est.degenerate);
        assert_eq!(est.standard_error, 0.0);
        assert_eq!(est.samples, 1);
    }

    #[test]
    fn invalid_configs() {
        assert!(mc_estimate(&cfg(4, 0.5, 0.3, 1, 0, 1)).is_err());
        assert!(mc_estimate(&cfg(2, 0.5, 0.3, 1, 10, 1)).is_err());
        assert!(mc_estimate(&cfg(4, 1.5, 0.3, 1, 10, 1)).is_err());
        let mut c = cfg(4, 0.5, 0.3, 1, 10, 1);
        c.kappa = KappaChoice::PerLoss(vec![0.1, 0.2]);
        assert!(mc_estimate(&c).is_err());
    }

    #[test]
    fn histogram_examples() {
        let h = mc_class_histogram(3, 0.5, 100_000, 3).unwrap();
        let f: Vec<f64> = h.rows.iter().map(|r| r.frequency).collect();
        for (got, want) in f.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 0.01);
        }
        // 2 degrees of freedom: 99.9% quantile is 13.8.
        assert!(h.chi_square < 13.8);
        let h = mc_class_histogram(4, 0.0, 1000, 3).unwrap();
        assert_eq!(h.rows[0].count, 1000);
        let h = mc_class_histogram(4, 1.0, 1000, 3).unwrap();
        assert_eq!(h.rows.last().unwrap().count, 1000);
        assert_eq!(h.rows.last().unwrap().zeros, 1);
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|k| ((k * 37) % 101) as f64 / 100.0).collect();
        let mut seq = Moments::default();
        xs.iter().for_each(|&x| seq.push(x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..300].iter().for_each(|&x| a.push(x));
        xs[300..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b);
        assert_eq!(merged.count, seq.count);
        assert!((merged.mean - seq.mean).abs() < 1e-12);
        assert!((merged.m2 - seq.m2).abs() < 1e-9);
    }
}
