//! Acceptance criteria. Runs with `harness = false` so every criterion
//! prints one PASS/FAIL line; the process exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use helstrom_ring::discrimination::{
    build_extended, extended_overlap, helstrom_cost, helstrom_oracle, post_insertion_cost, BarrierModel,
};
use helstrom_ring::evolution::evolve;
use helstrom_ring::expansion::{
    check_coefficients, delta_energy, discrepancies, expand_candidate, expand_single_barrier,
    orthonormal_projection, sum_rule, Chamber, ChamberGeometry, CoefficientKind, DiscrepancyClass,
    EnergyVariant, Well,
};
use helstrom_ring::quadrature::integrate_to_tolerance;
use helstrom_ring::{ring_overlap, ring_state, Candidate, Exec, PhysicalConstants, RingState};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// 1. Helstrom closed form against the density-matrix spectrum.
fn helstrom_vs_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let alpha = (FRAC_PI_2 * i as f64 / 99.0).min(FRAC_PI_2);
        let closed = helstrom_cost(alpha.cos().powi(2).min(1.0)).map_err(err)?;
        let oracle = helstrom_oracle(alpha).map_err(err)?;
        worst = worst.max((closed - oracle).abs());
    }
    let elapsed = start.elapsed();
    ensure(worst < 1e-12, || format!("max deviation {worst:e} >= 1e-12"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("max deviation {worst:.2e} over 100 alphas in {elapsed:?}"))
}

/// 2. Ring overlap squared equals cos²α, checked by quadrature.
fn overlap_reproduction() -> Outcome {
    let phi = ring_state(0.0).map_err(err)?;
    let mut worst = 0.0f64;
    for alpha in [0.0, PI / 6.0, FRAC_PI_4, PI / 3.0, FRAC_PI_2] {
        let psi = ring_state(alpha).map_err(err)?;
        let numeric = integrate_to_tolerance(|t| phi.eval(t) * psi.eval(t), 0.0, TAU, 4, 1e-13)
            .map_err(err)?
            .value;
        let closed = ring_overlap(&phi, &psi).norm_sqr();
        worst = worst
            .max((numeric * numeric - alpha.cos().powi(2)).abs())
            .max((closed - alpha.cos().powi(2)).abs());
    }
    ensure(worst < 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("max |overlap² − cos²α| = {worst:.2e}"))
}

/// 3. Closed-form coefficients against quadrature, with a discrepancy log.
fn coefficient_oracle_suite() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut sign_flips = 0;
    for alpha in [PI / 6.0, FRAC_PI_4, PI / 3.0] {
        let g = ChamberGeometry::new(alpha).map_err(err)?;
        let checks = check_coefficients(&g, 50, Exec::Parallel).map_err(err)?;
        ensure(checks.len() == 200, || format!("expected 200 checks, got {}", checks.len()))?;
        worst = checks.iter().map(|c| c.resolved_error()).fold(worst, f64::max);
        let log = discrepancies(&checks, 1e-10);
        ensure(
            log.iter().all(|d| d.kind == CoefficientKind::D && d.class == DiscrepancyClass::SignFlip),
            || "discrepancy log contains something other than d_n sign flips".into(),
        )?;
        sign_flips += log.len();
    }
    let elapsed = start.elapsed();
    ensure(worst < 1e-10, || format!("max |closed − oracle| = {worst:e}"))?;
    ensure(sign_flips == 150, || format!("expected 150 logged d_n sign corrections, got {sign_flips}"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "max |closed − oracle| = {worst:.2e}; {sign_flips} d_n sign corrections logged; {elapsed:?}"
    ))
}

/// 4. Parseval deficit below 1e-3 at N = 10⁴ and decaying like 1/N.
fn parseval_completeness() -> Outcome {
    let g = ChamberGeometry::new(FRAC_PI_4).map_err(err)?;
    let levels = [100usize, 1000, 10_000];
    let mut summary = Vec::new();
    for which in Candidate::BOTH {
        let deficits: Vec<f64> = levels
            .iter()
            .map(|&n| expand_candidate(which, &g, n, Exec::Parallel).map(|e| e.deficit()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let last = deficits[2];
        ensure(last > 0.0 && last < 1e-3, || format!("{}: deficit at 10⁴ = {last:e}", which.name()))?;
        // Least-squares slope of log(deficit) against log(N).
        let xs: Vec<f64> = levels.iter().map(|&n| (n as f64).ln()).collect();
        let ys: Vec<f64> = deficits.iter().map(|d| d.ln()).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
        let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
            / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
        ensure((slope + 1.0).abs() <= 0.15, || format!("{}: slope {slope}", which.name()))?;
        summary.push(format!("{}: deficit(10⁴) = {last:.3e}, slope {slope:.4}", which.name()));
    }
    Ok(summary.join("; "))
}

/// 5. Orthonormal sum rule reproduces cos α.
fn sum_rule_check() -> Outcome {
    let g = ChamberGeometry::new(FRAC_PI_4).map_err(err)?;
    let phi = expand_candidate(Candidate::Phi, &g, 10_000, Exec::Parallel).map_err(err)?;
    let psi = expand_candidate(Candidate::Psi, &g, 10_000, Exec::Parallel).map_err(err)?;
    let s = sum_rule(&phi, &psi).map_err(err)?;
    let bound = 10.0 * phi.deficit().min(psi.deficit());
    let dev = (s - FRAC_PI_4.cos()).abs();
    ensure(dev < bound, || format!("|sum − cos α| = {dev:e} >= {bound:e}"))?;
    Ok(format!("|sum − cos α| = {dev:.2e} < {bound:.2e}"))
}

/// 6. Energy transfer positive for all n, m ≤ 100 at α = π/4.
fn energy_positivity() -> Outcome {
    let g = ChamberGeometry::new(FRAC_PI_4).map_err(err)?;
    let k = PhysicalConstants::default();
    let mut report = Vec::new();
    for variant in [EnergyVariant::PaperLiteral, EnergyVariant::Conserving] {
        let mut min = f64::INFINITY;
        for n in 1..=100 {
            for m in 1..=100 {
                min = min.min(delta_energy(n, m, &g, &k, variant).map_err(err)?);
            }
        }
        ensure(min > 0.0, || format!("{}: min ΔE = {min}", variant.name()))?;
        report.push(format!("{} min ΔE = {min:.6}", variant.name()));
    }
    Ok(report.join("; "))
}

/// 7. Ideal barriers make the extended states orthogonal and the cost zero.
fn zero_post_insertion_cost() -> Outcome {
    for alpha in [PI / 6.0, FRAC_PI_4, PI / 3.0] {
        let g = ChamberGeometry::new(alpha).map_err(err)?;
        for n in [10usize, 100, 1000] {
            let phi = build_extended(&expand_candidate(Candidate::Phi, &g, n, Exec::Parallel).map_err(err)?)
                .map_err(err)?;
            let psi = build_extended(&expand_candidate(Candidate::Psi, &g, n, Exec::Parallel).map_err(err)?)
                .map_err(err)?;
            let ov = extended_overlap(&phi, &psi, &BarrierModel::IDEAL).map_err(err)?;
            ensure(ov.re == 0.0 && ov.im == 0.0, || format!("alpha {alpha}, N {n}: overlap {ov}"))?;
            let report = post_insertion_cost(alpha, n, &BarrierModel::IDEAL).map_err(err)?;
            ensure(report.cost_after == 0.0, || format!("alpha {alpha}, N {n}: cost {}", report.cost_after))?;
            ensure(report.cost_before > 0.0, || "cost before insertion should be positive".into())?;
        }
    }
    Ok("overlap exactly 0 and cost_after = 0 for 3 alphas × N ∈ {10, 100, 1000}".into())
}

/// 8. A barrier at a node of φ leaves it a single well eigenmode.
fn nodal_insertion_identity() -> Outcome {
    let phi = ring_state(0.0).map_err(err)?;
    let e = expand_single_barrier(&phi, 0.0, 64).map_err(err)?;
    let well = Well::new(0.0, TAU).map_err(err)?;
    let mut worst_other = 0.0f64;
    for (i, &c) in e.coefficients().iter().enumerate() {
        let n = i as u32 + 1;
        let q = orthonormal_projection(&phi, &well, n, 1e-13).map_err(err)?;
        if n == 2 {
            ensure((c - 1.0).abs() < 1e-12 && (q - 1.0).abs() < 1e-12, || format!("n = 2: {c}, {q}"))?;
        } else {
            worst_other = worst_other.max(c.abs()).max(q.abs());
        }
    }
    ensure(worst_other < 1e-12, || format!("largest other coefficient {worst_other:e}"))?;
    Ok(format!("unit n = 2 coefficient; all others ≤ {worst_other:.1e}"))
}

/// 9. Norm conservation, revival, and t = 0 reconstruction.
fn evolution_properties() -> Outcome {
    let g = ChamberGeometry::new(FRAC_PI_4).map_err(err)?;
    let k = PhysicalConstants::default();
    let mut worst_norm = 0.0f64;
    let mut worst_revival = 0.0f64;
    let mut worst_recon_ratio = 0.0f64;
    for which in Candidate::BOTH {
        let e = expand_candidate(which, &g, 1000, Exec::Parallel).map_err(err)?;
        let state = RingState::candidate(which, g.alpha()).map_err(err)?;
        let tol = 10.0 * e.deficit();
        for chamber in Chamber::BOTH {
            let well = g.well(chamber);
            let period = well.revival_period(&k);
            let n0 = e.chamber_weight(chamber);
            for frac in [0.013, 0.25, 1.0 / 3.0, 0.5, 0.77, 2.5] {
                let s = evolve(&e, chamber, frac * period, &k).map_err(err)?;
                worst_norm = worst_norm.max((s.norm_sq() - n0).abs());
            }
            let s = evolve(&e, chamber, period, &k).map_err(err)?;
            worst_revival = s
                .coefficients()
                .iter()
                .zip(e.normalized(chamber))
                .map(|(c, a)| (c - a).norm())
                .fold(worst_revival, f64::max);
            let s0 = evolve(&e, chamber, 0.0, &k).map_err(err)?;
            for i in 0..=200 {
                let theta = well.start() + well.width() * (0.05 + 0.9 * i as f64 / 200.0);
                let amp = s0.amplitude(theta).map_err(err)?;
                worst_recon_ratio = worst_recon_ratio.max((amp.re - state.eval(theta)).abs() / tol);
            }
        }
    }
    // Phases are unimodular; the only drift is rounding in cos² + sin².
    ensure(worst_norm < 1e-14, || format!("norm drift {worst_norm:e}"))?;
    ensure(worst_revival < 1e-12, || format!("revival error {worst_revival:e}"))?;
    ensure(worst_recon_ratio < 1.0, || format!("reconstruction error {worst_recon_ratio} × tolerance"))?;
    Ok(format!(
        "norm drift {worst_norm:.1e}; revival error {worst_revival:.1e}; reconstruction at {:.1}% of 10×deficit",
        100.0 * worst_recon_ratio
    ))
}

/// 10. `cost` output is byte-identical across runs and thread counts.
fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_helstrom-ring");
    let run = |jobs: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(bin)
            .args(["cost", "--alpha-sweep", "0.1:1.5:12", "--n-trunc", "150", "--epsilon", "0.3", "--jobs", jobs])
            .env_remove("HELSTROM_RING_CONFIG")
            .output()
            .map_err(err)?;
        ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        Ok(out.stdout)
    };
    let a = run("4")?;
    let b = run("4")?;
    let c = run("1")?;
    ensure(!a.is_empty(), || "empty output".into())?;
    ensure(a == b, || "two identical runs differ".into())?;
    ensure(a == c, || "output depends on worker count".into())?;
    Ok(format!("{} bytes identical across 3 runs", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1  Helstrom closed form vs spectral oracle", helstrom_vs_oracle),
        ("AC2  ring overlap reproduction", overlap_reproduction),
        ("AC3  coefficient oracle suite", coefficient_oracle_suite),
        ("AC4  Parseval completeness", parseval_completeness),
        ("AC5  overlap sum rule", sum_rule_check),
        ("AC6  energy transfer positivity", energy_positivity),
        ("AC7  zero post-insertion overlap and cost", zero_post_insertion_cost),
        ("AC8  nodal insertion identity", nodal_insertion_identity),
        ("AC9  evolution properties", evolution_properties),
        ("AC10 deterministic CSV", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
