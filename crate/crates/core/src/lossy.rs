//! Distribution phase: i.i.d. erasure of helper qubits and the resulting
//! received-state ensembles and benchmark survival probabilities.
//!
//! Only the `N-2` helper links are lossy; the target pair always arrives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_count, check_range, Error, Result};
use crate::locc::BranchState;
use crate::qcore::{partial_trace, DensityOperator, MAX_QUBITS};
use crate::resources::{graph_state, w_sigma, Graph, TwoCenteredLayout};

/// Binomial coefficient as a float (exact for the sizes used here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}

fn check_eps(eps: f64) -> Result<()> {
    check_range("epsilon", eps, 0.0, 1.0)
}

/// Probability that exactly `lost` of the `n-2` helpers are erased.
pub fn loss_weight(n: usize, lost: usize, eps: f64) -> Result<f64> {
    check_count("network size", n, 2, usize::MAX)?;
    check_count("lost count", lost, 0, n - 2)?;
    check_eps(eps)?;
    let helpers = n - 2;
    Ok(binomial(helpers, lost)
        * eps.powi(lost as i32)
        * (1.0 - eps).powi((helpers - lost) as i32))
}

/// All loss weights `q_0..q_{n-2}`.
pub fn loss_weights(n: usize, eps: f64) -> Result<Vec<f64>> {
    check_count("network size", n, 2, usize::MAX)?;
    (0..=n - 2).map(|i| loss_weight(n, i, eps)).collect()
}

/// One term of a received-state ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct LossEntry<S> {
    pub lost: usize,
    pub weight: f64,
    pub state: S,
}

/// Received-state ensemble `{q_i, σ_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LossEnsemble<S> {
    pub n: usize,
    pub epsilon: f64,
    pub entries: Vec<LossEntry<S>>,
}

impl<S> LossEnsemble<S> {
    pub fn total_weight(&self) -> f64 {
        self.entries.iter().map(|e| e.weight).sum()
    }
}

/// Dense ensemble of lossy W states.
pub fn w_loss_ensemble(n: usize, eps: f64) -> Result<LossEnsemble<DensityOperator>> {
    check_count("network size", n, 3, MAX_QUBITS)?;
    let weights = loss_weights(n, eps)?;
    let entries = weights
        .into_iter()
        .enumerate()
        .map(|(lost, weight)| {
            Ok(LossEntry {
                lost,
                weight,
                state: w_sigma(n, lost)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(LossEnsemble {
        n,
        epsilon: eps,
        entries,
    })
}

/// Same ensemble with compact branch states; no register-size ceiling.
pub fn w_branch_ensemble(n: usize, eps: f64) -> Result<LossEnsemble<BranchState>> {
    check_count("network size", n, 3, usize::MAX)?;
    let weights = loss_weights(n, eps)?;
    let entries = weights
        .into_iter()
        .enumerate()
        .map(|(lost, weight)| LossEntry {
            lost,
            weight,
            state: BranchState::lossy_w(n, lost),
        })
        .collect();
    Ok(LossEnsemble {
        n,
        epsilon: eps,
        entries,
    })
}

/// GHZ resource: Bell pair with certainty when nothing is lost, nothing otherwise.
pub fn ghz_benchmark(n: usize, eps: f64) -> Result<f64> {
    check_count("network size", n, 3, usize::MAX)?;
    loss_weight(n, 0, eps)
}

/// Reading of what survives leaf loss in a two-centered GHZ graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkMode {
    /// Losing leaves of a single root still leaves a GHZ state.
    #[default]
    Robust,
    /// Any loss destroys the resource.
    Strict,
}

impl FromStr for BenchmarkMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "robust" => Ok(Self::Robust),
            "strict" => Ok(Self::Strict),
            other => Err(Error::Parse(format!("unknown benchmark mode {other:?}"))),
        }
    }
}

impl fmt::Display for BenchmarkMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Robust => "robust",
            Self::Strict => "strict",
        })
    }
}

/// Survival probability of the two-centered GHZ graph resource.
pub fn two_centered_benchmark(n: usize, eps: f64, mode: BenchmarkMode) -> Result<f64> {
    check_count("network size", n, 4, usize::MAX)?;
    check_eps(eps)?;
    let keep = 1.0 - eps;
    let helpers = (n - 2) as i32;
    Ok(match mode {
        BenchmarkMode::Strict => keep.powi(helpers),
        BenchmarkMode::Robust => {
            let la = (n - 2).div_ceil(2) as i32;
            let lb = helpers - la;
            keep.powi(la) + keep.powi(lb) - keep.powi(helpers)
        }
    })
}

/// One subset of lost leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct LossPattern {
    /// Lost leaf vertices in ascending order.
    pub lost: Vec<usize>,
    pub probability: f64,
    /// Whether the surviving graph is still a GHZ state.
    pub recoverable: bool,
}

/// Every leaf-loss subset of a two-centered layout with its i.i.d.
/// probability and recoverability.
pub fn enumerate_loss_patterns(layout: &TwoCenteredLayout, eps: f64) -> Result<Vec<LossPattern>> {
    check_count("vertex count", layout.vertex_count(), 4, MAX_QUBITS)?;
    check_eps(eps)?;
    let leaves: Vec<usize> = layout.leaves().collect();
    let na = layout.leaves_a.len();
    let full_a = (1u32 << na) - 1;
    let patterns = (0u32..1 << leaves.len())
        .map(|mask| {
            let k = mask.count_ones() as i32;
            let probability = eps.powi(k) * (1.0 - eps).powi(leaves.len() as i32 - k);
            let only_a = mask & !full_a == 0;
            let only_b = mask & full_a == 0;
            LossPattern {
                lost: (0..leaves.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| leaves[b])
                    .collect(),
                probability,
                recoverable: only_a || only_b,
            }
        })
        .collect();
    Ok(patterns)
}

/// Reduced state of a graph state after the given vertices are lost.
pub fn graph_post_loss(g: &Graph, lost: &[usize]) -> Result<DensityOperator> {
    let rho = graph_state(g)?.projector();
    let keep: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !lost.contains(v))
        .collect();
    partial_trace(&rho, &keep)
}
