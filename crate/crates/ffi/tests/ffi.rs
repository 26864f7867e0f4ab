use std::ffi::CStr;
use std::ptr;

use redsim_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(redsim_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn curve_handle_lifecycle_and_threshold() {
    unsafe {
        let mut w = ptr::null_mut();
        let mut g = ptr::null_mut();
        assert_eq!(redsim_curve_new(RedsimResource::W, 4, 1, 0.0, 1.0, 101, &mut w), RedsimStatus::Ok);
        assert_eq!(redsim_curve_new(RedsimResource::Ghz, 4, 1, 0.0, 1.0, 101, &mut g), RedsimStatus::Ok);
        assert_eq!(redsim_curve_len(w), 101);

        let (mut e, mut v) = (0.0, 0.0);
        assert_eq!(redsim_curve_point(w, 0, &mut e, &mut v), RedsimStatus::Ok);
        assert_eq!(e, 0.0);
        assert!((v - 0.689805665).abs() < 1e-8);
        assert_eq!(redsim_curve_point(w, 101, &mut e, &mut v), RedsimStatus::OutOfBounds);

        let mut t = 0.0;
        assert_eq!(redsim_threshold(w, g, &mut t), RedsimStatus::Ok);
        assert!((t - 0.2).abs() < 0.05);
        assert_eq!(redsim_threshold(g, w, &mut t), RedsimStatus::NoThreshold);
        assert!(last_error().contains("threshold"));

        redsim_curve_free(w);
        redsim_curve_free(g);
        redsim_curve_free(ptr::null_mut());
        assert_eq!(redsim_curve_len(ptr::null()), 0);
    }
}

#[test]
fn invalid_arguments_set_status_and_message() {
    unsafe {
        let mut c = ptr::null_mut();
        let s = redsim_curve_new(RedsimResource::W, 2, 1, 0.0, 1.0, 11, &mut c);
        assert_eq!(s, RedsimStatus::InvalidArgument);
        assert!(c.is_null());
        assert!(!last_error().is_empty());

        let mut out = 0.0;
        assert_eq!(redsim_fom_lower_bound(4, 1, 1.5, &mut out), RedsimStatus::InvalidArgument);
        assert_eq!(redsim_fom_lower_bound(4, 1, 0.1, ptr::null_mut()), RedsimStatus::NullPointer);
        assert_eq!(redsim_benchmark(RedsimResource::W, 4, 0.1, &mut out), RedsimStatus::InvalidArgument);
    }
}

#[test]
fn scalar_entry_points() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(redsim_fom_lower_bound(4, 1, 0.0, &mut v), RedsimStatus::Ok);
        assert!((v - 0.6898056650).abs() < 1e-9);
        assert_eq!(redsim_benchmark(RedsimResource::Ghz, 6, 0.1, &mut v), RedsimStatus::Ok);
        assert!((v - 0.9f64.powi(4)).abs() < 1e-15);
        assert_eq!(redsim_benchmark(RedsimResource::TwoCenteredRobust, 6, 0.1, &mut v), RedsimStatus::Ok);
        assert!((v - (2.0 * 0.81 - 0.9f64.powi(4))).abs() < 1e-15);

        let (mut k, mut e) = (0.0, 0.0);
        assert_eq!(redsim_optimize_kappa(3, 1.0, 0.0, 1, 1e-6, &mut k, &mut e), RedsimStatus::Ok);
        assert!((k - 0.25).abs() < 1e-6 && (e - 0.75).abs() < 1e-6);
        assert_eq!(
            redsim_optimize_kappa(1, 1.0, 0.0, 1, 1e-6, &mut k, &mut e),
            RedsimStatus::InvalidArgument
        );

        let (mut mean, mut se) = (0.0, 0.0);
        assert_eq!(redsim_mc_estimate(4, 1, 0.25, 0.1, 20_000, 3, &mut mean, &mut se), RedsimStatus::Ok);
        let (mut mean2, mut se2) = (0.0, 0.0);
        redsim_mc_estimate(4, 1, 0.25, 0.1, 20_000, 3, &mut mean2, &mut se2);
        assert_eq!((mean, se), (mean2, se2));
        assert!(se > 0.0 && (0.0..=1.0).contains(&mean));
    }
}

#[test]
fn chain_handle() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(redsim_chain_new(4, 0.25, &mut c), RedsimStatus::Ok);
        assert_eq!(redsim_chain_dim(c), 4);
        let mut p = 0.0;
        assert_eq!(redsim_chain_entry(c, 1, 1, 2, &mut p), RedsimStatus::Ok);
        assert!((p - 0.375).abs() < 1e-15);
        let mut row = 0.0;
        for col in 0..4 {
            redsim_chain_entry(c, 5, 0, col, &mut p);
            row += p;
        }
        assert!((row - 1.0).abs() < 1e-12);
        assert_eq!(redsim_chain_entry(c, 1, 4, 0, &mut p), RedsimStatus::OutOfBounds);
        redsim_chain_free(c);
    }
}

#[test]
fn concurrence_of_bell_state() {
    let mut re = [0.0; 16];
    let im = [0.0; 16];
    for (r, c) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        re[r * 4 + c] = 0.5;
    }
    let mut out = 0.0;
    unsafe {
        assert_eq!(redsim_concurrence(re.as_ptr(), im.as_ptr(), &mut out), RedsimStatus::Ok);
        assert!((out - 1.0).abs() < 1e-9);
        assert_eq!(redsim_concurrence(ptr::null(), im.as_ptr(), &mut out), RedsimStatus::NullPointer);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/redsim.h")).unwrap();
    for name in [
        "redsim_last_error_message",
        "redsim_curve_new",
        "redsim_curve_len",
        "redsim_curve_point",
        "redsim_curve_free",
        "redsim_threshold",
        "redsim_fom_lower_bound",
        "redsim_benchmark",
        "redsim_optimize_kappa",
        "redsim_chain_new",
        "redsim_chain_dim",
        "redsim_chain_entry",
        "redsim_chain_free",
        "redsim_mc_estimate",
        "redsim_concurrence",
        "typedef struct RedsimCurve RedsimCurve",
        "REDSIM_STATUS_NO_THRESHOLD = 3",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
