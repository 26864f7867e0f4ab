//! Entanglement accounting, κ optimization, loss-averaged figure of merit,
//! benchmark curves, thresholds and small-loss asymptotics.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_count, check_range, Error, Result};
use crate::format::fmt_num;
use crate::locc::{run_rounds, BranchState};
use crate::lossy::{ghz_benchmark, loss_weights, two_centered_benchmark, BenchmarkMode};
use crate::qcore::{fidelity, MAX_QUBITS};
use crate::resources::w_sigma;

/// Default golden-section tolerance on κ.
pub const KAPPA_TOL: f64 = 1e-6;
/// Points in the bootstrap κ scan (step 0.01).
pub const KAPPA_GRID_POINTS: usize = 101;
/// Default ε grid resolution.
pub const DEFAULT_EPS_POINTS: usize = 101;
/// Bracket width at which threshold bisection stops.
pub const THRESHOLD_TOL: f64 = 1e-5;
/// Finite-difference step for derivatives in ε.
pub const FD_STEP: f64 = 1e-4;

/// Concurrence of the best surviving pair: the reduced pair of
/// `wW|W_m> + w0|0^m>` is `(2/m)·wW/(wW+w0)·|Ψ+> + rest·|00>`.
pub fn branch_concurrence(b: &BranchState) -> f64 {
    let total = b.total();
    if b.m < 2 || total <= 0.0 {
        return 0.0;
    }
    (2.0 / b.m as f64) * b.w_w / total
}

/// Expected best-pair concurrence after `rounds` rounds at fixed κ.
pub fn avg_entanglement(start: &BranchState, kappa: f64, rounds: usize) -> Result<f64> {
    let t = run_rounds(start, kappa, rounds)?;
    Ok(t.entries
        .iter()
        .map(|e| e.probability * branch_concurrence(&e.branch))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub kappa_star: f64,
    pub value: f64,
    pub evaluations: usize,
}

fn golden_max(
    f: &mut impl FnMut(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo >= tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    Ok((mid, f(mid)?))
}

/// Maximizes [`avg_entanglement`] over κ ∈ [0,1]: a 0.01-step scan, then
/// golden-section refinement around the best sample. Ties in the scan go to
/// the smallest κ.
pub fn optimize_kappa(start: &BranchState, rounds: usize, tol: f64) -> Result<OptimizationResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::OutOfRange {
            name: "tolerance",
            value: tol,
            range: "(0, inf)".into(),
        });
    }
    let mut evaluations = 0usize;
    let mut f = |k: f64| {
        evaluations += 1;
        avg_entanglement(start, k, rounds)
    };
    let step = 1.0 / (KAPPA_GRID_POINTS - 1) as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for idx in 0..KAPPA_GRID_POINTS {
        let v = f(idx as f64 * step)?;
        if v > best.1 {
            best = (idx, v);
        }
    }
    let (idx, grid_value) = best;
    let grid_kappa = idx as f64 * step;
    // Flat objective (nothing to gain by measuring): keep the no-op.
    let (kappa_star, value) = if start.is_absorbing() || rounds == 0 {
        (grid_kappa, grid_value)
    } else {
        let lo = idx.saturating_sub(1) as f64 * step;
        let hi = ((idx + 1).min(KAPPA_GRID_POINTS - 1)) as f64 * step;
        let (k, v) = golden_max(&mut f, lo, hi, tol)?;
        if v >= grid_value {
            (k, v)
        } else {
            (grid_kappa, grid_value)
        }
    };
    Ok(OptimizationResult {
        kappa_star,
        value,
        evaluations,
    })
}

/// Loss-averaged, κ-optimized W-state figure of merit for one `(N, r)`.
///
/// The per-loss-count optima do not depend on ε and are computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct WLowerBound {
    pub n: usize,
    pub rounds: usize,
    /// Optimum for each lost-helper count `i = 0..=N-2`.
    pub per_loss: Vec<OptimizationResult>,
}

impl WLowerBound {
    pub fn new(n: usize, rounds: usize) -> Result<Self> {
        Self::with_tolerance(n, rounds, KAPPA_TOL)
    }

    pub fn with_tolerance(n: usize, rounds: usize, tol: f64) -> Result<Self> {
        check_count("network size", n, 3, MAX_QUBITS)?;
        check_count("rounds", rounds, 1, usize::MAX)?;
        let per_loss = (0..=n - 2)
            .into_par_iter()
            .map(|lost| optimize_kappa(&BranchState::lossy_w(n, lost), rounds, tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            rounds,
            per_loss,
        })
    }

    /// Same κ for every loss count, no optimization.
    pub fn fixed_kappa(n: usize, rounds: usize, kappa: f64) -> Result<Self> {
        check_count("network size", n, 3, MAX_QUBITS)?;
        check_count("rounds", rounds, 1, usize::MAX)?;
        check_range("kappa", kappa, 0.0, 1.0)?;
        let per_loss = (0..=n - 2)
            .map(|lost| {
                let value = avg_entanglement(&BranchState::lossy_w(n, lost), kappa, rounds)?;
                Ok(OptimizationResult {
                    kappa_star: kappa,
                    value,
                    evaluations: 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            rounds,
            per_loss,
        })
    }

    /// Optimal values `Ē_r(σ_i)`.
    pub fn branch_values(&self) -> Vec<f64> {
        self.per_loss.iter().map(|o| o.value).collect()
    }

    pub fn eval(&self, eps: f64) -> Result<f64> {
        let q = loss_weights(self.n, eps)?;
        Ok(q.iter().zip(&self.per_loss).map(|(w, o)| w * o.value).sum())
    }

    /// `d/dε` at ε = 0 in closed form: `-(N-2)·[Ē(σ_0) - Ē(σ_1)]`.
    pub fn derivative_at_zero(&self) -> f64 {
        -((self.n - 2) as f64) * (self.per_loss[0].value - self.per_loss[1].value)
    }
}

pub fn fom_lower_bound(n: usize, rounds: usize, eps: f64) -> Result<f64> {
    check_range("epsilon", eps, 0.0, 1.0)?;
    WLowerBound::new(n, rounds)?.eval(eps)
}

/// Initial resource state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Resource {
    W,
    Ghz,
    TwoCentered(BenchmarkMode),
}

impl FromStr for Resource {
    type Err = Error;

    /// `w`, `ghz`, `twocentered` (robust) or `twocentered:strict`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let (kind, mode) = match lower.split_once(':') {
            Some((k, m)) => (k, Some(m.parse::<BenchmarkMode>()?)),
            None => (lower.as_str(), None),
        };
        match (kind, mode) {
            ("w", None) => Ok(Self::W),
            ("ghz", None) => Ok(Self::Ghz),
            ("twocentered" | "two-centered" | "tc", m) => Ok(Self::TwoCentered(m.unwrap_or_default())),
            _ => Err(Error::Parse(format!("unknown resource {s:?}"))),
        }
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::W => f.write_str("w"),
            Self::Ghz => f.write_str("ghz"),
            Self::TwoCentered(BenchmarkMode::Robust) => f.write_str("twocentered"),
            Self::TwoCentered(mode) => write!(f, "twocentered:{mode}"),
        }
    }
}

/// Figure of merit of a resource as a function of ε.
#[derive(Debug, Clone, PartialEq)]
pub enum ResourceModel {
    W(WLowerBound),
    Ghz { n: usize },
    TwoCentered { n: usize, mode: BenchmarkMode },
}

impl ResourceModel {
    pub fn new(resource: Resource, n: usize, rounds: usize) -> Result<Self> {
        match resource {
            Resource::W => Ok(Self::W(WLowerBound::new(n, rounds)?)),
            Resource::Ghz => {
                check_count("network size", n, 3, usize::MAX)?;
                Ok(Self::Ghz { n })
            }
            Resource::TwoCentered(mode) => {
                check_count("network size", n, 4, usize::MAX)?;
                Ok(Self::TwoCentered { n, mode })
            }
        }
    }

    pub fn resource(&self) -> Resource {
        match self {
            Self::W(_) => Resource::W,
            Self::Ghz { .. } => Resource::Ghz,
            Self::TwoCentered { mode, .. } => Resource::TwoCentered(*mode),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Self::W(b) => b.n,
            Self::Ghz { n } | Self::TwoCentered { n, .. } => *n,
        }
    }

    pub fn eval(&self, eps: f64) -> Result<f64> {
        match self {
            Self::W(b) => b.eval(eps),
            Self::Ghz { n } => ghz_benchmark(*n, eps),
            Self::TwoCentered { n, mode } => two_centered_benchmark(*n, eps, *mode),
        }
    }
}

/// Uniform grid of `points` values from `start` to `stop` inclusive.
pub fn uniform_grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    check_range("grid start", start, 0.0, 1.0)?;
    check_range("grid stop", stop, 0.0, 1.0)?;
    if points < 2 || start.is_nan() || stop.is_nan() || stop <= start {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points and start < stop (got {points} points on [{start}, {stop}])"
        )));
    }
    let step = (stop - start) / (points - 1) as f64;
    Ok((0..points)
        .map(|k| if k == points - 1 { stop } else { start + k as f64 * step })
        .collect())
}

/// Sampled ε ↦ value curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub resource: Resource,
    pub n: usize,
    pub rounds: usize,
}

impl Curve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, resource: Resource, n: usize, rounds: usize) -> Result<Self> {
        if grid.len() != values.len() || grid.is_empty() {
            return Err(Error::InvalidGrid("grid and values differ in length".into()));
        }
        if grid.iter().any(|x| x.is_nan()) || grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("grid not strictly increasing".into()));
        }
        for &e in &grid {
            check_range("epsilon", e, 0.0, 1.0)?;
        }
        for &v in &values {
            check_range("curve value", v, -1e-12, 1.0 + 1e-12)?;
        }
        Ok(Self {
            grid,
            values,
            resource,
            n,
            rounds,
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Two-column `epsilon<TAB>value` rows.
    pub fn to_tsv(&self) -> String {
        let mut out = String::with_capacity(self.len() * 32);
        for (e, v) in self.grid.iter().zip(&self.values) {
            out.push_str(&fmt_num(*e));
            out.push('\t');
            out.push_str(&fmt_num(*v));
            out.push('\n');
        }
        out
    }

    /// Largest increase between consecutive samples (0 for a nonincreasing curve).
    pub fn max_increase(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

pub fn build_curve(resource: Resource, n: usize, rounds: usize, grid: &[f64]) -> Result<Curve> {
    let model = ResourceModel::new(resource, n, rounds)?;
    curve_from_model(&model, rounds, grid)
}

pub fn curve_from_model(model: &ResourceModel, rounds: usize, grid: &[f64]) -> Result<Curve> {
    let values = grid
        .par_iter()
        .map(|&e| model.eval(e))
        .collect::<Result<Vec<_>>>()?;
    Curve::new(grid.to_vec(), values, model.resource(), model.n(), rounds)
}

/// Crossing point of two curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub epsilon: f64,
    pub value_a: f64,
    pub value_b: f64,
}

fn bisect(mut lo: f64, mut hi: f64, mut diff: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    while hi - lo >= THRESHOLD_TOL {
        let mid = 0.5 * (lo + hi);
        if diff(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First grid interval where `a - b` goes from negative to nonnegative.
fn crossing_bracket(grid: &[f64], a: &[f64], b: &[f64]) -> Result<usize> {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    if d.first().is_none_or(|&d0| d0 >= 0.0) {
        return Err(Error::NoThreshold);
    }
    let k = d
        .windows(2)
        .position(|w| w[0] < 0.0 && w[1] >= 0.0)
        .ok_or(Error::NoThreshold)?;
    if k + 1 == grid.len() - 1 && d[k + 1] == 0.0 && grid[k + 1] >= 1.0 {
        return Err(Error::NoThreshold);
    }
    Ok(k)
}

/// Loss probability where curve `a` first overtakes curve `b`, by bisection
/// on the piecewise-linear interpolant of `a - b`.
pub fn threshold(a: &Curve, b: &Curve) -> Result<Threshold> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let k = crossing_bracket(&a.grid, &a.values, &b.values)?;
    let (e0, e1) = (a.grid[k], a.grid[k + 1]);
    let lerp = |v: &[f64], e: f64| v[k] + (v[k + 1] - v[k]) * (e - e0) / (e1 - e0);
    let eps = bisect(e0, e1, |e| Ok(lerp(&a.values, e) - lerp(&b.values, e)))?;
    Ok(Threshold {
        epsilon: eps,
        value_a: lerp(&a.values, eps),
        value_b: lerp(&b.values, eps),
    })
}

/// Same crossing, bracketed on `grid` and then bisected on the exact models.
pub fn threshold_exact(a: &ResourceModel, b: &ResourceModel, grid: &[f64]) -> Result<Threshold> {
    let va = grid.iter().map(|&e| a.eval(e)).collect::<Result<Vec<_>>>()?;
    let vb = grid.iter().map(|&e| b.eval(e)).collect::<Result<Vec<_>>>()?;
    let k = crossing_bracket(grid, &va, &vb)?;
    let eps = bisect(grid[k], grid[k + 1], |e| Ok(a.eval(e)? - b.eval(e)?))?;
    Ok(Threshold {
        epsilon: eps,
        value_a: a.eval(eps)?,
        value_b: b.eval(eps)?,
    })
}

/// Finite-difference derivative on [0,1]: central where both neighbours
/// exist, second-order one-sided at the ends.
pub fn finite_difference(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    if x - h >= 0.0 && x + h <= 1.0 {
        Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
    } else if x + 2.0 * h <= 1.0 {
        Ok((-3.0 * f(x)? + 4.0 * f(x + h)? - f(x + 2.0 * h)?) / (2.0 * h))
    } else {
        Ok((3.0 * f(x)? - 4.0 * f(x - h)? + f(x - 2.0 * h)?) / (2.0 * h))
    }
}

/// `d/dε` of a figure of merit at ε = 0.
pub fn derivative_at_zero(model: &ResourceModel) -> Result<f64> {
    finite_difference(|e| model.eval(e), 0.0, FD_STEP)
}

/// Ratio of the W and GHZ small-loss slopes, computed two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdvantageRatio {
    /// `Ē_r(σ_0) - Ē_r(σ_1)`.
    pub analytic: f64,
    pub finite_difference: f64,
    pub w_derivative: f64,
    pub ghz_derivative: f64,
}

pub fn advantage_ratio(n: usize, rounds: usize) -> Result<AdvantageRatio> {
    check_count("network size", n, 4, MAX_QUBITS)?;
    let w = WLowerBound::new(n, rounds)?;
    let analytic = w.per_loss[0].value - w.per_loss[1].value;
    let w_derivative = derivative_at_zero(&ResourceModel::W(w))?;
    let ghz_derivative = derivative_at_zero(&ResourceModel::Ghz { n })?;
    Ok(AdvantageRatio {
        analytic,
        finite_difference: w_derivative / ghz_derivative,
        w_derivative,
        ghz_derivative,
    })
}

/// Fidelity between the lossless `(N-1)`-party W state and the `N`-party W
/// state with one party lost.
pub fn loss_robustness_fidelity(n: usize) -> Result<f64> {
    check_count("network size", n, 3, MAX_QUBITS)?;
    fidelity(&w_sigma(n - 1, 0)?, &w_sigma(n, 1)?)
}
