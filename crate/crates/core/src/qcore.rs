//! Dense complex linear algebra for small qubit registers.
//!
//! Qubit 0 is the leftmost tensor factor (the most significant bit of a
//! basis index). Everything here is a pure function of its inputs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest register the dense routines accept.
pub const MAX_QUBITS: usize = 12;
/// Tolerance on Hermiticity and trace checks.
pub const EPS_HERM: f64 = 1e-10;
/// Most negative eigenvalue tolerated in a density operator.
pub const EPS_EIG: f64 = 1e-9;
/// Kraus branches with weight at or below this are reported as empty.
pub const EPS_WEIGHT: f64 = 1e-15;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    let n = dim.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    Ok(n)
}

/// Pure state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: DVector<C64>,
}

impl Ket {
    /// Wraps raw amplitudes without normalizing.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        qubits_for_dim(amps.len())?;
        Ok(Self {
            amps: DVector::from_vec(amps),
        })
    }

    /// Wraps and rescales to unit norm.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let mut k = Self::new(amps)?;
        let norm = k.amps.norm();
        if norm == 0.0 {
            return Err(Error::OutOfRange {
                name: "norm",
                value: 0.0,
                range: "(0, inf)".into(),
            });
        }
        k.amps.unscale_mut(norm);
        Ok(k)
    }

    /// Computational basis state `|index>` on `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        if qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(qubits));
        }
        let dim = 1usize << qubits;
        if index >= dim {
            return Err(Error::QubitOutOfRange { index, qubits });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self::new(amps)
    }

    /// `|+>^{⊗n}`.
    pub fn plus(qubits: usize) -> Result<Self> {
        if qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(qubits));
        }
        let dim = 1usize << qubits;
        let a = C64::new((dim as f64).sqrt().recip(), 0.0);
        Self::new(vec![a; dim])
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amps.as_slice()
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        self.amps.as_mut_slice()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self.amps.dotc(&other.amps))
    }

    /// `|self><self|`.
    pub fn projector(&self) -> DensityOperator {
        DensityOperator {
            m: &self.amps * self.amps.adjoint(),
        }
    }
}

/// General (possibly rectangular) linear map.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOp {
    m: DMatrix<C64>,
}

impl LinearOp {
    /// Builds from row-major entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Ok(Self {
            m: DMatrix::from_row_slice(rows, cols, entries),
        })
    }

    pub fn from_matrix(m: DMatrix<C64>) -> Self {
        Self { m }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: DMatrix::identity(dim, dim),
        }
    }

    /// Real diagonal operator.
    pub fn diagonal(entries: &[f64]) -> Self {
        let d = DVector::from_iterator(entries.len(), entries.iter().map(|&x| C64::new(x, 0.0)));
        Self {
            m: DMatrix::from_diagonal(&d),
        }
    }

    pub fn dim_in(&self) -> usize {
        self.m.ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: self.m.adjoint(),
        }
    }

    /// Operator product `self · rhs`.
    pub fn compose(&self, rhs: &LinearOp) -> Result<Self> {
        if self.dim_in() != rhs.dim_out() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in(),
                actual: rhs.dim_out(),
            });
        }
        Ok(Self { m: &self.m * &rhs.m })
    }

    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        if self.dim_in() != ket.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in(),
                actual: ket.dim(),
            });
        }
        Ket::new((&self.m * &ket.amps).as_slice().to_vec())
    }
}

/// Kronecker product, the building block of [`tensor`].
pub trait Kron: Sized {
    fn kron(&self, rhs: &Self) -> Self;
    fn factor_dim(&self) -> usize;
}

impl Kron for Ket {
    fn kron(&self, rhs: &Self) -> Self {
        Self {
            amps: self.amps.kronecker(&rhs.amps),
        }
    }
    fn factor_dim(&self) -> usize {
        self.dim()
    }
}

impl Kron for LinearOp {
    fn kron(&self, rhs: &Self) -> Self {
        Self {
            m: self.m.kronecker(&rhs.m),
        }
    }
    fn factor_dim(&self) -> usize {
        self.dim_in().max(self.dim_out())
    }
}

impl Kron for DensityOperator {
    fn kron(&self, rhs: &Self) -> Self {
        Self {
            m: self.m.kronecker(&rhs.m),
        }
    }
    fn factor_dim(&self) -> usize {
        self.dim()
    }
}

/// Tensor product of the factors in order (leftmost factor becomes qubit 0).
///
/// Mixing kets and operators is ruled out by the type parameter.
pub fn tensor<T: Kron + Clone>(factors: &[T]) -> Result<T> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyFactors)?;
    let total: usize = factors.iter().map(Kron::factor_dim).product();
    if total > 1 << MAX_QUBITS {
        return Err(Error::TooManyQubits(total.trailing_zeros() as usize));
    }
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kron(f)))
}

/// Dense density operator on a register of at most [`MAX_QUBITS`] qubits.
///
/// Construction only checks shape; use [`DensityOperator::validate`] for the
/// physical invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    m: DMatrix<C64>,
}

impl DensityOperator {
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                actual: m.ncols(),
            });
        }
        qubits_for_dim(m.nrows())?;
        Ok(Self { m })
    }

    pub fn from_ket(ket: &Ket) -> Self {
        ket.projector()
    }

    pub fn maximally_mixed(qubits: usize) -> Result<Self> {
        if qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(qubits));
        }
        let dim = 1usize << qubits;
        Ok(Self {
            m: DMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0),
        })
    }

    /// Weighted sum `Σ w_k ρ_k`; weights are used as given.
    pub fn mixture(terms: &[(f64, &DensityOperator)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or(Error::EmptyFactors)?;
        let dim = first.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (w, rho) in terms {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: rho.dim(),
                });
            }
            m += &rho.m * C64::new(*w, 0.0);
        }
        Ok(Self { m })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order (Hermitian part).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.m)
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &DensityOperator) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Checks Hermiticity, unit trace and positivity.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > EPS_HERM {
            return Err(Error::NotHermitian(herm));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > EPS_HERM {
            return Err(Error::BadTrace(tr));
        }
        let min = self.eigenvalues()?.first().copied().unwrap_or(0.0);
        if min < -EPS_EIG {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(())
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &LinearOp) -> Result<Self> {
        if u.dim_in() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.dim_in(),
            });
        }
        let m = &u.m * &self.m * u.m.adjoint();
        Self::from_matrix(m)
    }
}

/// Eigenvalues and eigenvectors (as columns) of the Hermitian part of `m`.
///
/// The index set is first split into the connected components of the
/// nonzero pattern and each block is diagonalized on its own. Each block is
/// also shifted by a multiple of the identity before the QR sweep: exactly
/// rank-deficient inputs such as `|W_8><W_8|` otherwise make the implicit
/// shift produce NaN.
pub(crate) fn hermitian_eigen(m: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let dim = herm.nrows();
    let mut values = vec![0.0; dim];
    let mut vectors = DMatrix::zeros(dim, dim);
    let mut col = 0;
    for block in components(&herm) {
        let k = block.len();
        let sub = DMatrix::from_fn(k, k, |i, j| herm[(block[i], block[j])]);
        let (ev, evec) = shifted_eigen(&sub)?;
        for c in 0..k {
            values[col] = ev[c];
            for (r, &row) in block.iter().enumerate() {
                vectors[(row, col)] = evec[(r, c)];
            }
            col += 1;
        }
    }
    Ok((values, vectors))
}

/// Connected components of the nonzero pattern of a square matrix.
fn components(m: &DMatrix<C64>) -> Vec<Vec<usize>> {
    let dim = m.nrows();
    let mut parent: Vec<usize> = (0..dim).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..dim {
        for j in i + 1..dim {
            if m[(i, j)] != ZERO {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for i in 0..dim {
        let r = root(&mut parent, i);
        groups[r].push(i);
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}

fn shifted_eigen(block: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let k = block.nrows();
    if k == 1 {
        return Ok((vec![block[(0, 0)].re], DMatrix::identity(1, 1)));
    }
    let scale = block.norm();
    for factor in [0.5, 0.37, 0.0] {
        let shift = factor * scale;
        let shifted = block + DMatrix::<C64>::identity(k, k) * C64::new(shift, 0.0);
        let eig = shifted.symmetric_eigen();
        let ok = eig.eigenvalues.iter().all(|x| x.is_finite())
            && eig.eigenvectors.iter().all(|x| x.re.is_finite() && x.im.is_finite());
        if ok {
            let ev = eig.eigenvalues.iter().map(|&l| l - shift).collect();
            return Ok((ev, eig.eigenvectors));
        }
    }
    Err(Error::EigenFailure(k))
}

pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let (mut ev, _) = hermitian_eigen(m)?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Eigenvalues below this are treated as round-off before taking roots.
const EPS_ROOT: f64 = 1e-12;

fn clipped_sqrt(l: f64) -> f64 {
    if l <= EPS_ROOT {
        0.0
    } else {
        l.sqrt()
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix;
/// round-off eigenvalues are clamped to zero.
fn psd_sqrt(m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let (ev, u) = hermitian_eigen(m)?;
    let roots = DVector::from_iterator(ev.len(), ev.iter().map(|&l| C64::new(clipped_sqrt(l), 0.0)));
    Ok(&u * DMatrix::from_diagonal(&roots) * u.adjoint())
}

fn validate_qubit_set(qubits: usize, set: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateQubit(w[0]));
        }
    }
    if let Some(&bad) = sorted.iter().find(|&&q| q >= qubits) {
        return Err(Error::QubitOutOfRange { index: bad, qubits });
    }
    Ok(sorted)
}

/// Reduced operator on the `keep` qubits (returned in ascending qubit order).
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let n = rho.qubits();
    let keep = validate_qubit_set(n, keep)?;
    if keep.len() == n {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let bit = |q: usize| 1usize << (n - 1 - q);
    let scatter = |value: usize, qs: &[usize]| -> usize {
        qs.iter()
            .enumerate()
            .filter(|(k, _)| value >> (qs.len() - 1 - k) & 1 == 1)
            .fold(0, |acc, (_, &q)| acc | bit(q))
    };
    let kd = 1usize << keep.len();
    let td = 1usize << traced.len();
    let kept_idx: Vec<usize> = (0..kd).map(|a| scatter(a, &keep)).collect();
    let traced_idx: Vec<usize> = (0..td).map(|t| scatter(t, &traced)).collect();
    let mut out = DMatrix::zeros(kd, kd);
    for (a, &ia) in kept_idx.iter().enumerate() {
        for (b, &ib) in kept_idx.iter().enumerate() {
            let mut s = ZERO;
            for &t in &traced_idx {
                s += rho.m[(ia | t, ib | t)];
            }
            out[(a, b)] = s;
        }
    }
    DensityOperator::from_matrix(out)
}

/// Result of applying one Kraus operator.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausBranch {
    /// `Tr(M ρ M†)`.
    pub weight: f64,
    /// Normalized post-measurement state, `None` when the branch has zero weight.
    pub state: Option<DensityOperator>,
}

pub fn apply_kraus(m: &LinearOp, rho: &DensityOperator) -> Result<KrausBranch> {
    if m.dim_in() != m.dim_out() {
        return Err(Error::DimensionMismatch {
            expected: m.dim_in(),
            actual: m.dim_out(),
        });
    }
    if m.dim_in() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: m.dim_in(),
        });
    }
    let out = &m.m * &rho.m * m.m.adjoint();
    let weight = out.trace().re;
    let state = if weight > EPS_WEIGHT {
        Some(DensityOperator {
            m: out / C64::new(weight, 0.0),
        })
    } else {
        None
    };
    Ok(KrausBranch { weight, state })
}

/// Wootters concurrence of a two-qubit state.
///
/// The spin-flipped `ρ̃ = (Y⊗Y) ρ* (Y⊗Y)` enters through the Hermitian
/// product `√ρ ρ̃ √ρ`, whose spectrum equals that of `ρ ρ̃`.
pub fn concurrence(rho: &DensityOperator) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let herm = rho.hermiticity_error();
    if herm > EPS_HERM {
        return Err(Error::NotHermitian(herm));
    }
    // Y⊗Y is real: anti-diagonal (-1, 1, 1, -1).
    let yy = DMatrix::from_fn(4, 4, |i, j| {
        if i + j == 3 {
            if i == 0 || i == 3 {
                -ONE
            } else {
                ONE
            }
        } else {
            ZERO
        }
    });
    let flipped = &yy * rho.m.conjugate() * &yy;
    let root = psd_sqrt(&rho.m)?;
    let r = &root * flipped * &root;
    let mut lambdas: Vec<f64> = hermitian_eigenvalues(&r)?
        .into_iter()
        .map(clipped_sqrt)
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Uhlmann fidelity `(Tr √(√ρ σ √ρ))²`.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: sigma.dim(),
        });
    }
    let root = psd_sqrt(&rho.m)?;
    let inner = &root * &sigma.m * &root;
    let tr: f64 = hermitian_eigenvalues(&inner)?
        .into_iter()
        .map(clipped_sqrt)
        .sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}

/// Hadamard gate.
pub fn hadamard() -> LinearOp {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    LinearOp {
        m: DMatrix::from_row_slice(2, 2, &[h, h, h, -h]),
    }
}

/// Embeds a single-qubit operator at position `target` of an `n`-qubit register.
pub fn embed_single(op: &LinearOp, target: usize, qubits: usize) -> Result<LinearOp> {
    if target >= qubits {
        return Err(Error::QubitOutOfRange {
            index: target,
            qubits,
        });
    }
    let factors: Vec<LinearOp> = (0..qubits)
        .map(|q| {
            if q == target {
                op.clone()
            } else {
                LinearOp::identity(2)
            }
        })
        .collect();
    tensor(&factors)
}
