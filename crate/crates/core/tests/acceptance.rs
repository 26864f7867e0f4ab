//! Acceptance suite. Runs without the libtest harness and prints one line per
//! criterion; the process fails if any criterion fails.

use std::fs;
use std::time::{Duration, Instant};

use redsim::analysis::{
    advantage_ratio, branch_concurrence, build_curve, derivative_at_zero,
    loss_robustness_fidelity, optimize_kappa, threshold, threshold_exact, uniform_grid, Resource,
    ResourceModel, WLowerBound, DEFAULT_EPS_POINTS, KAPPA_TOL,
};
use redsim::cli::run_with;
use redsim::dense::single_round_classes;
use redsim::locc::{build_transition_matrix, evolve_branch, r_step_distribution, run_rounds, BranchState, ChainState};
use redsim::lossy::{enumerate_loss_patterns, ghz_benchmark, two_centered_benchmark, BenchmarkMode};
use redsim::oracle::{dp_value, mc_estimate, KappaChoice, McConfig};
use redsim::qcore::{concurrence, partial_trace};
use redsim::resources::{two_centered_graph, w_sigma, w_state};

type Outcome = Result<String, String>;

fn kappa_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

fn eps_grid() -> Vec<f64> {
    uniform_grid(0.0, 1.0, DEFAULT_EPS_POINTS).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn engine_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in 3..=6 {
        for lost in 0..=n - 2 {
            let rho = w_sigma(n, lost).map_err(e)?;
            let start = BranchState::lossy_w(n, lost);
            for k in kappa_grid() {
                let dense = single_round_classes(&rho, k).map_err(e)?;
                let compact = evolve_branch(&start, k).map_err(e)?;
                ensure(
                    dense.len() == compact.classes.len(),
                    format!("class count differs at N={n} i={lost} k={k}"),
                )?;
                for d in &dense {
                    let c = compact
                        .class(d.zeros)
                        .ok_or_else(|| format!("missing class {} at N={n} i={lost} k={k}", d.zeros))?;
                    worst = worst.max((c.probability - d.probability).abs());
                    let bc = branch_concurrence(&c.branch);
                    worst = worst.max((bc - d.concurrence).abs());
                    worst = worst.max((bc - d.concurrence_min).abs());
                    cases += 1;
                }
            }
        }
    }
    ensure(worst <= 1e-10, format!("max deviation {worst:.3e}"))?;
    Ok(format!("{cases} classes, max deviation {worst:.2e}"))
}

fn hand_optima() -> Outcome {
    let w3 = optimize_kappa(&BranchState::pure_w(3), 1, KAPPA_TOL).map_err(e)?;
    ensure(
        (w3.kappa_star - 0.25).abs() <= 1e-6 && (w3.value - 0.75).abs() <= 1e-6,
        format!("W3 optimum ({}, {})", w3.kappa_star, w3.value),
    )?;
    let k4 = (1.0 + 10f64.sqrt()) / 9.0;
    let f4 = 0.5 * (1.0 - k4).powi(3) + 2.0 * k4 * (1.0 - k4).powi(2) + 3.0 * k4 * k4 * (1.0 - k4);
    let w4 = optimize_kappa(&BranchState::pure_w(4), 1, KAPPA_TOL).map_err(e)?;
    ensure(
        (w4.kappa_star - k4).abs() <= 1e-6 && (w4.value - f4).abs() <= 1e-6,
        format!("W4 optimum ({}, {})", w4.kappa_star, w4.value),
    )?;
    ensure((f4 - 0.68981).abs() < 1e-5, format!("closed form W4 value {f4}"))?;
    Ok(format!(
        "W3 ({:.7}, {:.7}), W4 ({:.7}, {:.7})",
        w3.kappa_star, w3.value, w4.kappa_star, w4.value
    ))
}

fn reduced_w_law() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=10 {
        let rho = w_state(n).map_err(e)?.projector();
        let want = 2.0 / n as f64;
        // All pairs are equivalent by symmetry; check a spread of them.
        for (a, b) in [(0, 1), (0, n - 1), (n / 2 - 1, n / 2)] {
            if a == b {
                continue;
            }
            let c = concurrence(&partial_trace(&rho, &[a, b]).map_err(e)?).map_err(e)?;
            worst = worst.max((c - want).abs());
        }
    }
    ensure(worst <= 1e-9, format!("max deviation {worst:.3e}"))?;
    Ok(format!("N=3..10, max deviation {worst:.2e}"))
}

fn benchmarks() -> Outcome {
    let mut worst = 0.0f64;
    for n in 4..=10 {
        let helpers = n - 2;
        for eps in [0.0f64, 0.05, 0.2, 0.37, 0.5, 0.81, 1.0] {
            let ghz_enum: f64 = (0u32..1 << helpers)
                .filter(|&mask| mask == 0)
                .map(|mask| {
                    let k = mask.count_ones() as i32;
                    eps.powi(k) * (1.0 - eps).powi(helpers as i32 - k)
                })
                .sum();
            let ghz = ghz_benchmark(n, eps).map_err(e)?;
            worst = worst.max((ghz - ghz_enum).abs());
            worst = worst.max((ghz - (1.0 - eps).powi(helpers as i32)).abs());

            let (_, layout) = two_centered_graph(n).map_err(e)?;
            let tc_enum: f64 = enumerate_loss_patterns(&layout, eps)
                .map_err(e)?
                .iter()
                .filter(|p| p.recoverable)
                .map(|p| p.probability)
                .sum();
            let tc = two_centered_benchmark(n, eps, BenchmarkMode::Robust).map_err(e)?;
            worst = worst.max((tc - tc_enum).abs());
        }
    }
    ensure(worst <= 1e-12, format!("max deviation {worst:.3e}"))?;
    Ok(format!("N=4..10, max deviation {worst:.2e}"))
}

fn w_vs_ghz_threshold(n: usize, rounds: usize) -> Result<f64, String> {
    let w = ResourceModel::new(Resource::W, n, rounds).map_err(e)?;
    let g = ResourceModel::new(Resource::Ghz, n, rounds).map_err(e)?;
    Ok(threshold_exact(&w, &g, &eps_grid()).map_err(e)?.epsilon)
}

fn ghz_thresholds() -> Outcome {
    let t4 = w_vs_ghz_threshold(4, 1)?;
    let t6 = w_vs_ghz_threshold(6, 1)?;
    let t8 = w_vs_ghz_threshold(8, 1)?;
    ensure((t4 - 0.2).abs() <= 0.05, format!("N=4 threshold {t4}"))?;
    ensure((t8 - 0.1).abs() <= 0.05, format!("N=8 threshold {t8}"))?;
    ensure(t4 > t6 && t6 > t8, format!("not decreasing: {t4} {t6} {t8}"))?;
    Ok(format!("N=4 {t4:.5}, N=6 {t6:.5}, N=8 {t8:.5}"))
}

fn multi_round() -> Outcome {
    let grid = eps_grid();
    let mut report = Vec::new();
    for (n, r) in [(4, 10), (6, 5), (8, 2)] {
        let single = build_curve(Resource::W, n, 1, &grid).map_err(e)?;
        let multi = build_curve(Resource::W, n, r, &grid).map_err(e)?;
        let slack = multi
            .values
            .iter()
            .zip(&single.values)
            .map(|(m, s)| m - s)
            .fold(f64::INFINITY, f64::min);
        ensure(slack >= -1e-9, format!("N={n} r={r} falls below single round by {slack:.3e}"))?;
        let ghz = build_curve(Resource::Ghz, n, 1, &grid).map_err(e)?;
        let t1 = threshold(&single, &ghz).map_err(e)?.epsilon;
        let tr = threshold(&multi, &ghz).map_err(e)?.epsilon;
        ensure(tr < t1, format!("N={n} r={r} threshold {tr} not below {t1}"))?;
        report.push(format!("N={n} r={r}: {t1:.4}->{tr:.4}"));
    }
    Ok(report.join(", "))
}

fn small_loss_trends() -> Outcome {
    let mut worst_rel = 0.0f64;
    let mut ratios = Vec::new();
    let mut fids = Vec::new();
    for n in 4..=10 {
        let g = derivative_at_zero(&ResourceModel::Ghz { n }).map_err(e)?;
        let want = -((n - 2) as f64);
        worst_rel = worst_rel.max(((g - want) / want).abs());
        let a = advantage_ratio(n, 1).map_err(e)?;
        ensure(
            (a.finite_difference - a.analytic).abs() <= 1e-3 * a.analytic.abs(),
            format!("N={n} ratio {} vs analytic {}", a.finite_difference, a.analytic),
        )?;
        ratios.push(a.finite_difference);
        fids.push(loss_robustness_fidelity(n).map_err(e)?);
    }
    ensure(worst_rel <= 1e-3, format!("GHZ slope relative error {worst_rel:.3e}"))?;
    ensure(ratios.windows(2).all(|w| w[1] < w[0]), format!("ratio not decreasing: {ratios:?}"))?;
    ensure(
        fids.windows(2).all(|w| w[1] > w[0]) && fids.iter().all(|&f| f < 1.0),
        format!("fidelity not increasing toward 1: {fids:?}"),
    )?;
    Ok(format!(
        "slope rel err {worst_rel:.1e}, ratio {:.4}->{:.4}, fidelity {:.4}->{:.4}",
        ratios[0],
        ratios[ratios.len() - 1],
        fids[0],
        fids[fids.len() - 1]
    ))
}

fn markov() -> Outcome {
    let mut stoch = 0.0f64;
    let mut ck = 0.0f64;
    let mut marg = 0.0f64;
    for n in 3..=6 {
        for k in kappa_grid() {
            let t = build_transition_matrix(n, k).map_err(e)?;
            stoch = stoch.max(t.stochasticity_error());
            for a in 0..=4u32 {
                for b in 0..=4u32 {
                    let lhs = t.power(a) * t.power(b);
                    ck = ck.max((lhs - t.power(a + b)).abs().max());
                }
            }
            for r in 1..=5u32 {
                let dist = r_step_distribution(&t, ChainState::W(n), r).map_err(e)?;
                let ens = run_rounds(&BranchState::pure_w(n), k, r as usize).map_err(e)?;
                let mut from_rounds = vec![0.0; t.states.len()];
                for (m, mass) in ens.mass_by_live() {
                    let s = match m {
                        0 | 1 => ChainState::Separable,
                        2 => ChainState::Bell,
                        m => ChainState::W(m),
                    };
                    from_rounds[t.index_of(s).map_err(e)?] += mass;
                }
                for (x, y) in dist.iter().zip(&from_rounds) {
                    marg = marg.max((x - y).abs());
                }
            }
        }
    }
    ensure(stoch <= 1e-12, format!("row sum error {stoch:.3e}"))?;
    ensure(ck <= 1e-12, format!("Chapman-Kolmogorov error {ck:.3e}"))?;
    ensure(marg <= 1e-10, format!("marginal mismatch {marg:.3e}"))?;
    Ok(format!("rows {stoch:.1e}, CK {ck:.1e}, marginals {marg:.1e}"))
}

fn monte_carlo() -> Outcome {
    let configs = [(4, 0.1, 1), (4, 0.3, 3), (6, 0.05, 1), (6, 0.2, 5), (8, 0.1, 2), (10, 0.15, 3)];
    let mut report = Vec::new();
    for (n, eps, rounds) in configs {
        let bound = WLowerBound::new(n, rounds).map_err(e)?;
        let kappa = KappaChoice::optimal(&bound);
        let mut hits = 0;
        let mut target = 0.0;
        for seed in 0..20u64 {
            let cfg = McConfig {
                n,
                rounds,
                kappa: kappa.clone(),
                epsilon: eps,
                samples: 100_000,
                seed,
            };
            target = dp_value(&cfg).map_err(e)?;
            if mc_estimate(&cfg).map_err(e)?.agrees_with(target, 3.0) {
                hits += 1;
            }
        }
        ensure(
            hits >= 19,
            format!("(N={n}, eps={eps}, r={rounds}) only {hits}/20 within 3 sigma"),
        )?;
        report.push(format!("({n},{eps},{rounds}) {hits}/20 @ {target:.4}"));
    }
    Ok(report.join(", "))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["redsim"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    ensure(
        code == 0,
        format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)),
    )?;
    Ok(out)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(e)?;
    let invocations: Vec<Vec<String>> = vec![
        vec!["curve", "--resource", "w", "--n", "6", "--rounds", "2", "--points", "21"],
        vec!["curve", "--resource", "twocentered", "--n", "8"],
        vec!["markov", "--n", "6", "--kappa", "0.3"],
        vec!["mc", "--n", "6", "--rounds", "2", "--epsilon", "0.2", "--samples", "50000", "--seed", "7"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    let mut files = 0;
    for (idx, inv) in invocations.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("out-{idx}-{run}.tsv"));
            let mut args: Vec<&str> = inv.iter().map(String::as_str).collect();
            let p = path.to_str().ok_or("non-UTF-8 temp path")?;
            args.extend(["-o", p]);
            run_cli(&args)?;
            outputs.push(fs::read(&path).map_err(e)?);
        }
        ensure(!outputs[0].is_empty(), format!("{inv:?} wrote nothing"))?;
        ensure(outputs[0] == outputs[1], format!("{inv:?} outputs differ"))?;
        files += 1;
    }
    let a = run_cli(&["threshold", "--n", "6", "--against", "ghz", "--json"])?;
    let b = run_cli(&["threshold", "--n", "6", "--against", "ghz", "--json"])?;
    ensure(a == b, "threshold stdout differs")?;
    Ok(format!("{files} output files and threshold stdout byte-identical"))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("engine equivalence", engine_equivalence, Some(Duration::from_secs(60))),
        ("hand-derived optima", hand_optima, Some(Duration::from_secs(1))),
        ("reduced W concurrence", reduced_w_law, None),
        ("benchmarks vs enumeration", benchmarks, None),
        ("W vs GHZ thresholds", ghz_thresholds, Some(Duration::from_secs(60))),
        ("multi-round dominance", multi_round, None),
        ("small-loss slopes and fidelity", small_loss_trends, None),
        ("Markov chain", markov, None),
        ("Monte Carlo agreement", monte_carlo, Some(Duration::from_secs(120))),
        ("CLI determinism", determinism, None),
    ];
    let mut failed = 0;
    for (idx, (name, check, budget)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = check();
        let elapsed = t0.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(msg), Some(b)) if elapsed > *b => Err(format!("{msg}; exceeded {:?} budget", b)),
            (o, _) => o,
        };
        let (tag, msg) = match outcome {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "criterion {:>2} {tag} {name}: {msg} [{:.2}s]",
            idx + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
