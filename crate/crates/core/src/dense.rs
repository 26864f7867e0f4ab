//! Reference engine on full density operators.
//!
//! Enumerates every outcome string, applies the tensor-product Kraus
//! operator with [`apply_kraus`] and scores the best qubit pair with the
//! Wootters concurrence. Exponential in the register size; meant for
//! cross-checking the compact branch engine on small networks.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::locc::sp_kraus;
use crate::qcore::{apply_kraus, concurrence, partial_trace, tensor, DensityOperator, LinearOp};

/// Aggregate of one outcome class from the dense engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseClass {
    pub zeros: usize,
    pub probability: f64,
    /// Best pairwise concurrence, maximized over the class's outcome strings.
    pub concurrence: f64,
    /// Smallest best-pair concurrence seen in the class; equals `concurrence`
    /// when every string in the class is locally equivalent.
    pub concurrence_min: f64,
}

/// Maximum concurrence over all qubit pairs of `rho`.
pub fn best_pair_concurrence(rho: &DensityOperator) -> Result<f64> {
    let n = rho.qubits();
    let mut best = 0.0f64;
    for a in 0..n {
        for b in a + 1..n {
            best = best.max(concurrence(&partial_trace(rho, &[a, b])?)?);
        }
    }
    Ok(best)
}

fn outcome_operator(pair: &(LinearOp, LinearOp), live: &[bool], outcomes: &[u8]) -> Result<LinearOp> {
    let factors: Vec<LinearOp> = live
        .iter()
        .zip(outcomes)
        .map(|(&alive, &o)| match (alive, o) {
            (false, _) => LinearOp::identity(2),
            (true, 0) => pair.0.clone(),
            (true, _) => pair.1.clone(),
        })
        .collect();
    tensor(&factors)
}

fn kraus_pair(kappa: f64) -> Result<(LinearOp, LinearOp)> {
    let (m0, m1) = sp_kraus(kappa)?;
    Ok((m0.to_op(), m1.to_op()))
}

/// One round on every qubit of `rho`, grouped by number of 0 outcomes.
pub fn single_round_classes(rho: &DensityOperator, kappa: f64) -> Result<Vec<DenseClass>> {
    let n = rho.qubits();
    let pair = kraus_pair(kappa)?;
    let live = vec![true; n];
    let mut classes: BTreeMap<usize, DenseClass> = BTreeMap::new();
    for bits in 0u32..1 << n {
        let outcomes: Vec<u8> = (0..n).map(|q| (bits >> (n - 1 - q) & 1) as u8).collect();
        let zeros = outcomes.iter().filter(|&&o| o == 0).count();
        let op = outcome_operator(&pair, &live, &outcomes)?;
        let branch = apply_kraus(&op, rho)?;
        let entry = classes.entry(zeros).or_insert(DenseClass {
            zeros,
            probability: 0.0,
            concurrence: 0.0,
            concurrence_min: f64::INFINITY,
        });
        entry.probability += branch.weight;
        if let Some(state) = branch.state {
            let c = best_pair_concurrence(&state)?;
            entry.concurrence = entry.concurrence.max(c);
            entry.concurrence_min = entry.concurrence_min.min(c);
        }
    }
    Ok(classes
        .into_values()
        .filter(|c| c.probability > 0.0)
        .rev()
        .collect())
}

/// Average best-pair concurrence after `rounds` rounds in which every party
/// that has only seen outcome 0 keeps measuring, stopping once two or fewer
/// such parties remain.
pub fn average_entanglement(rho: &DensityOperator, kappa: f64, rounds: usize) -> Result<f64> {
    let pair = kraus_pair(kappa)?;
    let live = vec![true; rho.qubits()];
    recurse(rho, &live, &pair, rounds)
}

fn recurse(
    rho: &DensityOperator,
    live: &[bool],
    pair: &(LinearOp, LinearOp),
    rounds_left: usize,
) -> Result<f64> {
    let alive: Vec<usize> = (0..live.len()).filter(|&q| live[q]).collect();
    if rounds_left == 0 || alive.len() <= 2 {
        return best_pair_concurrence(rho);
    }
    let n = live.len();
    let k = alive.len();
    let mut total = 0.0;
    for bits in 0u32..1 << k {
        let mut outcomes = vec![0u8; n];
        let mut next_live = live.to_vec();
        for (pos, &q) in alive.iter().enumerate() {
            let o = (bits >> (k - 1 - pos) & 1) as u8;
            outcomes[q] = o;
            if o == 1 {
                next_live[q] = false;
            }
        }
        let op = outcome_operator(pair, live, &outcomes)?;
        let branch = apply_kraus(&op, rho)?;
        if let Some(state) = branch.state {
            total += branch.weight * recurse(&state, &next_live, pair, rounds_left - 1)?;
        }
    }
    Ok(total)
}
