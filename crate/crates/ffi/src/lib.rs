//! C ABI over `redsim`.
//!
//! Every entry point returns a [`RedsimStatus`] and writes results through
//! out-pointers. Curves and transition matrices are opaque heap handles owned
//! by the caller and released with the matching `_free` function. The message
//! for the most recent failure on the calling thread is available from
//! [`redsim_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use redsim::analysis::{build_curve, optimize_kappa, threshold, uniform_grid, Curve, Resource, WLowerBound};
use redsim::locc::{build_transition_matrix, BranchState, TransitionMatrix};
use redsim::lossy::{ghz_benchmark, two_centered_benchmark, BenchmarkMode};
use redsim::nalgebra::DMatrix;
use redsim::oracle::{mc_estimate, KappaChoice, McConfig};
use redsim::qcore::{concurrence, DensityOperator, C64};
use redsim::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedsimStatus {
    Ok = 0,
    /// A parameter violated its documented range.
    InvalidArgument = 1,
    /// A required pointer was null.
    NullPointer = 2,
    /// The curves do not cross.
    NoThreshold = 3,
    /// Index outside a handle's bounds.
    OutOfBounds = 4,
    /// Internal failure; see the last error message.
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedsimResource {
    W = 0,
    Ghz = 1,
    TwoCenteredRobust = 2,
    TwoCenteredStrict = 3,
}

impl From<RedsimResource> for Resource {
    fn from(r: RedsimResource) -> Self {
        match r {
            RedsimResource::W => Resource::W,
            RedsimResource::Ghz => Resource::Ghz,
            RedsimResource::TwoCenteredRobust => Resource::TwoCentered(BenchmarkMode::Robust),
            RedsimResource::TwoCenteredStrict => Resource::TwoCentered(BenchmarkMode::Strict),
        }
    }
}

/// Opaque sampled curve.
pub struct RedsimCurve(Curve);

/// Opaque transition matrix.
pub struct RedsimChain(TransitionMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: Error) -> RedsimStatus {
    set_error(&e.to_string());
    match e {
        Error::NoThreshold => RedsimStatus::NoThreshold,
        _ => RedsimStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), RedsimStatus>) -> RedsimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RedsimStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            RedsimStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T) -> Result<(), RedsimStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        Err(RedsimStatus::NullPointer)
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread. The pointer stays valid
/// until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn redsim_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Samples a resource's figure of merit on a uniform ε grid.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn redsim_curve_new(
    resource: RedsimResource,
    n: usize,
    rounds: usize,
    start: f64,
    stop: f64,
    points: usize,
    out: *mut *mut RedsimCurve,
) -> RedsimStatus {
    guard(|| {
        non_null(out)?;
        let grid = uniform_grid(start, stop, points).map_err(status_of)?;
        let curve = build_curve(resource.into(), n, rounds, &grid).map_err(status_of)?;
        *out = Box::into_raw(Box::new(RedsimCurve(curve)));
        Ok(())
    })
}

/// Number of grid points; 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle from [`redsim_curve_new`].
#[no_mangle]
pub unsafe extern "C" fn redsim_curve_len(curve: *const RedsimCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `curve` must be a live handle; `epsilon` and `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_curve_point(
    curve: *const RedsimCurve,
    index: usize,
    epsilon: *mut f64,
    value: *mut f64,
) -> RedsimStatus {
    guard(|| {
        non_null(curve)?;
        non_null(epsilon)?;
        non_null(value)?;
        let c = &(*curve).0;
        if index >= c.len() {
            set_error("curve index out of bounds");
            return Err(RedsimStatus::OutOfBounds);
        }
        *epsilon = c.grid[index];
        *value = c.values[index];
        Ok(())
    })
}

/// # Safety
/// `curve` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn redsim_curve_free(curve: *mut RedsimCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Loss probability where curve `a` first overtakes curve `b`.
///
/// # Safety
/// `a` and `b` must be live handles; `epsilon` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_threshold(
    a: *const RedsimCurve,
    b: *const RedsimCurve,
    epsilon: *mut f64,
) -> RedsimStatus {
    guard(|| {
        non_null(a)?;
        non_null(b)?;
        non_null(epsilon)?;
        let t = threshold(&(*a).0, &(*b).0).map_err(status_of)?;
        *epsilon = t.epsilon;
        Ok(())
    })
}

/// Loss-averaged, κ-optimized W-state figure of merit at one ε.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_fom_lower_bound(
    n: usize,
    rounds: usize,
    epsilon: f64,
    out: *mut f64,
) -> RedsimStatus {
    guard(|| {
        non_null(out)?;
        let bound = WLowerBound::new(n, rounds).map_err(status_of)?;
        *out = bound.eval(epsilon).map_err(status_of)?;
        Ok(())
    })
}

/// Closed-form GHZ or two-centered benchmark at one ε.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_benchmark(
    resource: RedsimResource,
    n: usize,
    epsilon: f64,
    out: *mut f64,
) -> RedsimStatus {
    guard(|| {
        non_null(out)?;
        *out = match Resource::from(resource) {
            Resource::Ghz => ghz_benchmark(n, epsilon),
            Resource::TwoCentered(mode) => two_centered_benchmark(n, epsilon, mode),
            Resource::W => {
                set_error("W has no closed-form benchmark; use redsim_fom_lower_bound");
                return Err(RedsimStatus::InvalidArgument);
            }
        }
        .map_err(status_of)?;
        Ok(())
    })
}

/// Best single κ for an `(m, wW, w0)` branch over `rounds` rounds.
///
/// # Safety
/// `kappa_star` and `value` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_optimize_kappa(
    m: usize,
    w_w: f64,
    w_0: f64,
    rounds: usize,
    tol: f64,
    kappa_star: *mut f64,
    value: *mut f64,
) -> RedsimStatus {
    guard(|| {
        non_null(kappa_star)?;
        non_null(value)?;
        let b = BranchState::new(m, w_w, w_0).map_err(status_of)?;
        let o = optimize_kappa(&b, rounds, tol).map_err(status_of)?;
        *kappa_star = o.kappa_star;
        *value = o.value;
        Ok(())
    })
}

/// Lossless chain over `W_n … W_3, Bell, sep` (in that index order).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_chain_new(n: usize, kappa: f64, out: *mut *mut RedsimChain) -> RedsimStatus {
    guard(|| {
        non_null(out)?;
        let t = build_transition_matrix(n, kappa).map_err(status_of)?;
        *out = Box::into_raw(Box::new(RedsimChain(t)));
        Ok(())
    })
}

/// Number of chain states; 0 for a null handle.
///
/// # Safety
/// `chain` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn redsim_chain_dim(chain: *const RedsimChain) -> usize {
    chain.as_ref().map_or(0, |c| c.0.states.len())
}

/// Entry `(row, col)` of `P^steps`.
///
/// # Safety
/// `chain` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_chain_entry(
    chain: *const RedsimChain,
    steps: u32,
    row: usize,
    col: usize,
    out: *mut f64,
) -> RedsimStatus {
    guard(|| {
        non_null(chain)?;
        non_null(out)?;
        let t = &(*chain).0;
        let dim = t.states.len();
        if row >= dim || col >= dim {
            set_error("chain index out of bounds");
            return Err(RedsimStatus::OutOfBounds);
        }
        *out = t.power(steps)[(row, col)];
        Ok(())
    })
}

/// # Safety
/// `chain` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn redsim_chain_free(chain: *mut RedsimChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Seeded Monte Carlo estimate with one κ for every loss branch.
///
/// # Safety
/// `mean` and `standard_error` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_mc_estimate(
    n: usize,
    rounds: usize,
    kappa: f64,
    epsilon: f64,
    samples: u64,
    seed: u64,
    mean: *mut f64,
    standard_error: *mut f64,
) -> RedsimStatus {
    guard(|| {
        non_null(mean)?;
        non_null(standard_error)?;
        let cfg = McConfig {
            n,
            rounds,
            kappa: KappaChoice::Uniform(kappa),
            epsilon,
            samples,
            seed,
        };
        let est = mc_estimate(&cfg).map_err(status_of)?;
        *mean = est.mean;
        *standard_error = est.standard_error;
        Ok(())
    })
}

/// Wootters concurrence of a 4×4 density matrix given as row-major real and
/// imaginary parts (16 entries each).
///
/// # Safety
/// `re` and `im` must each point to 16 readable doubles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn redsim_concurrence(re: *const f64, im: *const f64, out: *mut f64) -> RedsimStatus {
    guard(|| {
        non_null(re)?;
        non_null(im)?;
        non_null(out)?;
        let re = std::slice::from_raw_parts(re, 16);
        let im = std::slice::from_raw_parts(im, 16);
        let entries: Vec<C64> = re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect();
        let rho = DensityOperator::from_matrix(DMatrix::from_row_slice(4, 4, &entries)).map_err(status_of)?;
        *out = concurrence(&rho).map_err(status_of)?;
        Ok(())
    })
}
