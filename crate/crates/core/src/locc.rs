//! Single-parameter LOCC measurement engine.
//!
//! Every live party measures with the pair `M0 = diag(√(1-κ), 1)`,
//! `M1 = diag(√κ, 0)` each round. A lossy W state only ever visits states of
//! the form `wW·|W_m><W_m| + w0·|0^m><0^m|` (parties with outcome 1 are
//! projected onto `|0>` and drop out), so a measurement branch is tracked as
//! the triple `(m, wW, w0)` of unnormalized weights.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{check_count, check_range, Error, Result};
use crate::lossy::binomial;
use crate::qcore::{LinearOp, C64};

/// Completeness tolerance for Kraus sets.
pub const EPS_COMPLETE: f64 = 1e-10;

/// Upper-triangular qubit Kraus operator `[[√a, b], [0, √c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausOperator {
    pub a: f64,
    pub b: C64,
    pub c: f64,
}

impl KrausOperator {
    pub fn new(a: f64, b: C64, c: f64) -> Result<Self> {
        check_range("a", a, 0.0, 1.0)?;
        check_range("c", c, 0.0, 1.0)?;
        Ok(Self { a, b, c })
    }

    pub fn to_op(&self) -> LinearOp {
        let z = C64::new(0.0, 0.0);
        LinearOp::from_matrix(DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(self.a.sqrt(), 0.0), self.b, z, C64::new(self.c.sqrt(), 0.0)],
        ))
    }
}

/// The single-parameter pair `(M0, M1)`.
pub fn sp_kraus(kappa: f64) -> Result<(KrausOperator, KrausOperator)> {
    check_range("kappa", kappa, 0.0, 1.0)?;
    let zero = C64::new(0.0, 0.0);
    Ok((
        KrausOperator::new(1.0 - kappa, zero, 1.0)?,
        KrausOperator::new(kappa, zero, 0.0)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletenessReport {
    pub passed: bool,
    /// Frobenius norm of `Σ M†M - I`.
    pub residual: f64,
}

pub fn kraus_completeness_check(set: &[KrausOperator]) -> CompletenessReport {
    let mut sum = DMatrix::<C64>::zeros(2, 2);
    for k in set {
        let m = k.to_op();
        sum += m.matrix().adjoint() * m.matrix();
    }
    let residual = (sum - DMatrix::<C64>::identity(2, 2)).norm();
    CompletenessReport {
        passed: residual <= EPS_COMPLETE,
        residual,
    }
}

/// Probability weight of outcome class `zeros` (number of 0 outcomes) for the
/// W component of an `m`-party branch.
pub fn w_class_weight(m: usize, zeros: usize, kappa: f64) -> Result<f64> {
    check_count("live qubits", m, 1, usize::MAX)?;
    check_count("zero outcomes", zeros, 1, m)?;
    check_range("kappa", kappa, 0.0, 1.0)?;
    Ok(binomial(m, zeros)
        * (zeros as f64 / m as f64)
        * kappa.powi((m - zeros) as i32)
        * (1.0 - kappa).powi(zeros as i32 - 1))
}

/// Same for the vacuum component `|0^m>`.
pub fn vac_class_weight(m: usize, zeros: usize, kappa: f64) -> Result<f64> {
    check_count("live qubits", m, 1, usize::MAX)?;
    check_count("zero outcomes", zeros, 0, m)?;
    check_range("kappa", kappa, 0.0, 1.0)?;
    Ok(binomial(m, zeros) * kappa.powi((m - zeros) as i32) * (1.0 - kappa).powi(zeros as i32))
}

/// Compact description of one measurement branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchState {
    /// Live (still entangled-capable) parties.
    pub m: usize,
    /// Unnormalized weight of `|W_m><W_m|`.
    pub w_w: f64,
    /// Unnormalized weight of the separable part.
    pub w_0: f64,
}

impl BranchState {
    pub fn new(m: usize, w_w: f64, w_0: f64) -> Result<Self> {
        if w_w.is_nan() || w_0.is_nan() || w_w < 0.0 || w_0 < 0.0 {
            return Err(Error::OutOfRange {
                name: "branch weight",
                value: w_w.min(w_0),
                range: "[0, inf)".into(),
            });
        }
        if m < 2 && w_w != 0.0 {
            return Err(Error::OutOfRange {
                name: "W weight with fewer than two live parties",
                value: w_w,
                range: "{0}".into(),
            });
        }
        Ok(Self { m, w_w, w_0 })
    }

    /// `|W_m><W_m|` with unit weight.
    pub fn pure_w(m: usize) -> Self {
        if m < 2 {
            return Self { m, w_w: 0.0, w_0: 1.0 };
        }
        Self { m, w_w: 1.0, w_0: 0.0 }
    }

    /// Branch for an `n`-party W state after `lost` helpers are erased.
    pub fn lossy_w(n: usize, lost: usize) -> Self {
        let live = n - lost;
        Self {
            m: live,
            w_w: live as f64 / n as f64,
            w_0: lost as f64 / n as f64,
        }
    }

    /// Probability mass carried by the branch.
    pub fn total(&self) -> f64 {
        self.w_w + self.w_0
    }

    /// Two or fewer live parties: no further measurement.
    pub fn is_absorbing(&self) -> bool {
        self.m <= 2
    }

    fn merge(&mut self, other: &BranchState) {
        self.w_w += other.w_w;
        self.w_0 += other.w_0;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeClass {
    /// Number of 0 outcomes in the round.
    pub zeros: usize,
    /// Absolute probability, equal to `branch.total()`.
    pub probability: f64,
    pub branch: BranchState,
}

/// Non-equivalent outcomes of one round, ordered by descending `zeros`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeClassEnsemble {
    pub classes: Vec<OutcomeClass>,
}

impl OutcomeClassEnsemble {
    pub fn total(&self) -> f64 {
        self.classes.iter().map(|c| c.probability).sum()
    }

    pub fn class(&self, zeros: usize) -> Option<&OutcomeClass> {
        self.classes.iter().find(|c| c.zeros == zeros)
    }
}

/// One measurement round on a branch. Classes of zero probability are omitted.
pub fn evolve_branch(b: &BranchState, kappa: f64) -> Result<OutcomeClassEnsemble> {
    if b.m == 0 {
        return Err(Error::DeadBranch);
    }
    check_range("kappa", kappa, 0.0, 1.0)?;
    let mut classes = Vec::with_capacity(b.m + 1);
    for zeros in (0..=b.m).rev() {
        let vac = b.w_0 * vac_class_weight(b.m, zeros, kappa)?;
        let w = if zeros >= 1 && b.w_w > 0.0 {
            b.w_w * w_class_weight(b.m, zeros, kappa)?
        } else {
            0.0
        };
        // A single surviving excitation (zeros == 1) is a product state.
        let branch = if zeros >= 2 {
            BranchState {
                m: zeros,
                w_w: w,
                w_0: vac,
            }
        } else {
            BranchState {
                m: zeros,
                w_w: 0.0,
                w_0: vac + w,
            }
        };
        let probability = branch.total();
        if probability > 0.0 {
            classes.push(OutcomeClass {
                zeros,
                probability,
                branch,
            });
        }
    }
    Ok(OutcomeClassEnsemble { classes })
}

/// A branch at the end of a multi-round protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalBranch {
    pub probability: f64,
    pub branch: BranchState,
    /// Rounds actually measured before absorption or the round limit.
    pub rounds_measured: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TerminalEnsemble {
    pub entries: Vec<TerminalBranch>,
}

impl TerminalEnsemble {
    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.probability).sum()
    }

    /// Probability mass by live-party count.
    pub fn mass_by_live(&self) -> BTreeMap<usize, f64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.branch.m).or_insert(0.0) += e.probability;
        }
        out
    }
}

/// Evolves a branch for `rounds` rounds; branches with `m <= 2` stop.
///
/// Branches are merged on `(m, rounds measured)`. Along any path the ratio
/// `wW/w0` only changes by `(m'/m)/(1-κ)` per round, so two paths with the
/// same key carry the same normalized state and merging is exact. The
/// ensemble therefore stays polynomial in the number of rounds.
pub fn run_rounds(initial: &BranchState, kappa: f64, rounds: usize) -> Result<TerminalEnsemble> {
    check_range("kappa", kappa, 0.0, 1.0)?;
    let mut done: BTreeMap<(usize, usize), BranchState> = BTreeMap::new();
    let mut live: BTreeMap<usize, BranchState> = BTreeMap::new();
    if initial.is_absorbing() || rounds == 0 {
        done.insert((initial.m, 0), *initial);
    } else {
        live.insert(initial.m, *initial);
    }
    for round in 1..=rounds {
        let mut next: BTreeMap<usize, BranchState> = BTreeMap::new();
        for b in live.values() {
            for c in evolve_branch(b, kappa)?.classes {
                next.entry(c.branch.m)
                    .and_modify(|acc| acc.merge(&c.branch))
                    .or_insert(c.branch);
            }
        }
        live.clear();
        for (m, b) in next {
            if b.is_absorbing() || round == rounds {
                done.entry((m, round))
                    .and_modify(|acc| acc.merge(&b))
                    .or_insert(b);
            } else {
                live.insert(m, b);
            }
        }
        if live.is_empty() {
            break;
        }
    }
    let entries = done
        .into_iter()
        .rev()
        .map(|((_, rounds_measured), branch)| TerminalBranch {
            probability: branch.total(),
            branch,
            rounds_measured,
        })
        .collect();
    Ok(TerminalEnsemble { entries })
}

/// State of the lossless chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainState {
    /// `|W_m>` with `m >= 3`.
    W(usize),
    Bell,
    Separable,
}

impl fmt::Display for ChainState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::W(m) => write!(f, "W{m}"),
            Self::Bell => f.write_str("Bell"),
            Self::Separable => f.write_str("sep"),
        }
    }
}

impl FromStr for ChainState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Bell" | "bell" => Ok(Self::Bell),
            "sep" | "Sep" | "separable" => Ok(Self::Separable),
            _ => s
                .strip_prefix(['W', 'w'])
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&m| m >= 3)
                .map(Self::W)
                .ok_or_else(|| Error::UnknownState(s.to_string())),
        }
    }
}

/// Row-stochastic transition matrix over labeled chain states.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    pub states: Vec<ChainState>,
    pub p: DMatrix<f64>,
}

impl TransitionMatrix {
    pub fn index_of(&self, s: ChainState) -> Result<usize> {
        self.states
            .iter()
            .position(|&x| x == s)
            .ok_or_else(|| Error::UnknownState(s.to_string()))
    }

    /// `P^r` by repeated squaring.
    pub fn power(&self, r: u32) -> DMatrix<f64> {
        let n = self.p.nrows();
        let mut result = DMatrix::identity(n, n);
        let mut base = self.p.clone();
        let mut e = r;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Largest deviation of a row sum from 1.
    pub fn stochasticity_error(&self) -> f64 {
        self.p
            .row_iter()
            .map(|row| (row.sum() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn chain_state_for(zeros: usize) -> ChainState {
    match zeros {
        0 | 1 => ChainState::Separable,
        2 => ChainState::Bell,
        m => ChainState::W(m),
    }
}

/// Lossless chain over `W_n, …, W_3, Bell, sep`.
pub fn build_transition_matrix(n: usize, kappa: f64) -> Result<TransitionMatrix> {
    check_count("network size", n, 3, usize::MAX)?;
    check_range("kappa", kappa, 0.0, 1.0)?;
    let mut states: Vec<ChainState> = (3..=n).rev().map(ChainState::W).collect();
    states.push(ChainState::Bell);
    states.push(ChainState::Separable);
    let dim = states.len();
    let index = |s: ChainState| states.iter().position(|&x| x == s).unwrap();
    let mut p = DMatrix::zeros(dim, dim);
    for m in 3..=n {
        let row = index(ChainState::W(m));
        for zeros in 1..=m {
            p[(row, index(chain_state_for(zeros)))] += w_class_weight(m, zeros, kappa)?;
        }
    }
    p[(index(ChainState::Bell), index(ChainState::Bell))] = 1.0;
    p[(index(ChainState::Separable), index(ChainState::Separable))] = 1.0;
    Ok(TransitionMatrix { states, p })
}

/// Row `start` of `P^r`.
pub fn r_step_distribution(t: &TransitionMatrix, start: ChainState, r: u32) -> Result<Vec<f64>> {
    let row = t.index_of(start)?;
    Ok(t.power(r).row(row).iter().copied().collect())
}
