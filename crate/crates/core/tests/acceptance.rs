//! End-to-end acceptance sweep: one PASS/FAIL line per claim, nonzero exit
//! on any failure. Runs without the libtest harness so the lines always
//! print, inside `cargo test` or standalone.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use xxcorr_core::luttinger::{
    coefficient_y, coefficient_y_exact, f_minus_left, f_minus_left_quadrature, f_minus_right,
    f_minus_right_quadrature, f_plus_left, f_plus_left_quadrature, f_plus_right,
    f_plus_right_quadrature, level_aggregate_exact, log_log_slope, ph_formfactor_prediction,
    scaling_relation_check, sum_identity_accelerated, sum_identity_closed, taylor_coefficient_exact,
    Branch, ExcitationConfig, LuttingerParams,
};
use xxcorr_core::numerics::{rational, A_PREFACTOR, BARNES_G_HALF, C0_OVER_2_SQRT_PI};
use xxcorr_core::toeplitz::{
    cauchy_r, exact_expansion, ln_cauchy_r, log_r_series, series_residual_report,
    toeplitz_oracle_r,
};
use xxcorr_core::xxchain::{
    ed_sector_sweep, particle_hole_formfactor, shifted_ground_formfactor, ChainSpec,
    ParticleHoleConfig,
};
use xxcorr_core::BigRational;

const L_SWEEP: [usize; 4] = [64, 128, 256, 512];

fn coeff(map: &BTreeMap<u32, BigRational>, k: u32) -> BigRational {
    map.get(&k).cloned().unwrap_or_else(|| rational(0, 1))
}

fn fit_window(slope: f64, center: f64, width: f64, what: &str) -> Result<(), String> {
    if (slope - center).abs() <= width {
        Ok(())
    } else {
        Err(format!("{what}: fitted slope {slope:.4} outside {center} +/- {width}"))
    }
}

fn converged(points: &[(f64, f64)], what: &str) -> Result<(), String> {
    for w in points.windows(2) {
        if w[1].1 >= w[0].1 {
            return Err(format!("{what}: deviation not decreasing across the L sweep"));
        }
    }
    let last = points.last().expect("sweep is nonempty").1;
    if last > 1e-3 {
        return Err(format!("{what}: deviation {last:.2e} still above 1e-3 at L=512"));
    }
    Ok(())
}

fn expansion_coefficients() -> Result<(), String> {
    let e = exact_expansion(8).map_err(|e| format!("{e:?}"))?;
    let cases: [(&str, u32, i64, i64); 7] = [
        ("staggered", 2, -1, 8),
        ("uniform", 4, 1, 128),
        ("staggered", 4, 1, 8),
        ("uniform", 6, -1, 64),
        ("staggered", 6, -363, 1024),
        ("uniform", 8, 1707, 32768),
        ("staggered", 8, 1985, 1024),
    ];
    for (kind, power, num, den) in cases {
        let got = match kind {
            "uniform" => coeff(&e.uniform_terms, power),
            _ => coeff(&e.staggered_terms, power),
        };
        let want = rational(num, den);
        if got != want {
            return Err(format!("{kind} x^-{power}: got {got}, want {want}"));
        }
    }
    Ok(())
}

fn y_coefficients() -> Result<(), String> {
    let y1 = coefficient_y_exact(1).map_err(|e| format!("{e:?}"))?;
    let y2 = coefficient_y_exact(2).map_err(|e| format!("{e:?}"))?;
    if y1 != rational(-1, 8) {
        return Err(format!("y_1 = {y1}, want -1/8"));
    }
    if y2 != rational(9, 32768) {
        return Err(format!("y_2 = {y2}, want 9/32768"));
    }
    for m in 1..=10u32 {
        let y = coefficient_y(m).map_err(|e| format!("{e:?}"))?;
        if !y.is_finite() {
            return Err(format!("y_{m} not finite"));
        }
        let sign_ok = if m % 2 == 0 { y > 0.0 } else { y < 0.0 };
        if !sign_ok {
            return Err(format!("y_{m} = {y:e} violates sign (-1)^{m}"));
        }
    }
    Ok(())
}

fn amplitude_constants() -> Result<(), String> {
    let da = (A_PREFACTOR - 0.6450024).abs();
    if da > 1e-6 {
        return Err(format!("A off by {da:.2e} from 0.6450024"));
    }
    let dc = (C0_OVER_2_SQRT_PI - 0.147088).abs();
    if dc > 1e-5 {
        return Err(format!("C0/(2 sqrt pi) off by {dc:.2e} from 0.147088"));
    }
    let cross = (A_PREFACTOR * A_PREFACTOR - PI * BARNES_G_HALF.powi(4)).abs();
    if cross >= 1e-6 {
        return Err(format!("|A^2 - pi G(1/2)^4| = {cross:.2e}"));
    }
    Ok(())
}

fn formula_vs_diagonalization() -> Result<(), String> {
    for l in [4usize, 6, 8] {
        let sweep = ed_sector_sweep(l).map_err(|e| format!("L={l}: {e:?}"))?;
        if sweep.worst_formfactor_dev > 1e-10 {
            return Err(format!(
                "L={l}: worst magnitude deviation {:.2e} over {} pairs",
                sweep.worst_formfactor_dev, sweep.pairs
            ));
        }
        if sweep.worst_completeness_dev > 1e-12 {
            return Err(format!(
                "L={l}: completeness deviation {:.2e}",
                sweep.worst_completeness_dev
            ));
        }
    }
    Ok(())
}

fn determinant_oracle() -> Result<(), String> {
    for n in 0..=12u32 {
        let oracle = toeplitz_oracle_r(n, 0).map_err(|e| format!("{e:?}"))?;
        let dev = (cauchy_r(n) / oracle - 1.0).abs();
        if dev > 1e-9 {
            return Err(format!("N={n}: product/oracle - 1 = {dev:.2e}"));
        }
    }
    Ok(())
}

fn log_series_fidelity() -> Result<(), String> {
    let series = log_r_series(8).map_err(|e| format!("{e:?}"))?;
    let dev = (ln_cauchy_r(64) - series.eval(64.0)).abs();
    if dev < 1e-12 {
        Ok(())
    } else {
        Err(format!("|ln R_64 - series| = {dev:.2e}"))
    }
}

fn particle_hole_ratios() -> Result<(), String> {
    let params = LuttingerParams::default();
    // (p, q) in the signed offset convention; finite chains take (p, h = -q).
    for (p, q) in [(1i64, 0i64), (2, 0), (1, -1)] {
        for m in 0..=2u32 {
            let config = ExcitationConfig { m, right: vec![(p, q)], left: Vec::new() };
            let predicted = ph_formfactor_prediction(1.0, &config, &params)
                .map_err(|e| format!("{e:?}"))?
                .abs();
            let mut points = Vec::new();
            for l in L_SWEEP {
                let spec = ChainSpec::half_filled(l).map_err(|e| format!("{e:?}"))?;
                let ph = ParticleHoleConfig {
                    m_shift: m as usize,
                    right: vec![(p as u32, (-q) as u32)],
                    left: Vec::new(),
                };
                let num = particle_hole_formfactor(spec, &ph).map_err(|e| format!("{e:?}"))?;
                let den =
                    shifted_ground_formfactor(spec, m as usize).map_err(|e| format!("{e:?}"))?;
                let ratio = num.norm() / den.norm();
                points.push((l as f64, (ratio / predicted - 1.0).abs()));
            }
            let label = format!("(p,q)=({p},{q}) m={m}");
            converged(&points, &label)?;
            // measured finite-size law: the deviation quarters under L
            // doubling (even corrections only at half filling)
            fit_window(log_log_slope(&points), -2.0, 0.15, &label)?;
        }
    }
    Ok(())
}

fn shifted_scaling() -> Result<(), String> {
    let params = LuttingerParams::default();
    for m in 0..=2u32 {
        let mut points = Vec::new();
        for l in L_SWEEP {
            let spec = ChainSpec::half_filled(l).map_err(|e| format!("{e:?}"))?;
            let point = scaling_relation_check(spec, m, &params).map_err(|e| format!("{e:?}"))?;
            points.push((l as f64, point.relative_deviation));
        }
        let label = format!("m={m}");
        converged(&points, &label)?;
        fit_window(log_log_slope(&points), -2.0, 0.15, &label)?;
    }
    Ok(())
}

fn resummation_identities() -> Result<(), String> {
    let phase = 0.6 * PI;
    for (param, branch, label) in [(-0.5, Branch::Right, "right"), (0.5, Branch::Left, "left")] {
        let limit =
            sum_identity_accelerated(param, phase, 20, branch).map_err(|e| format!("{e:?}"))?;
        let closed = sum_identity_closed(param, phase, branch).map_err(|e| format!("{e:?}"))?;
        let err = (limit - closed).norm();
        if err > 1e-6 {
            return Err(format!("{label} branch: resummed error {err:.2e} at cutoff 20"));
        }
    }
    let a = rational(-1, 2);
    for k in 0..=6u32 {
        let agg = level_aggregate_exact(&a, k);
        let taylor = taylor_coefficient_exact(&a, k);
        if agg != taylor {
            return Err(format!("level {k}: aggregate {agg} != taylor coefficient {taylor}"));
        }
    }
    Ok(())
}

fn residual_exponents() -> Result<(), String> {
    let xs: Vec<u64> = (32..=512).collect();
    let two_term = series_residual_report(&xs, 1, 8).map_err(|e| format!("{e:?}"))?;
    fit_window(two_term.fitted_exponent, 4.5, 0.1, "two-term prediction residual")?;
    let one_term = series_residual_report(&xs, 0, 8).map_err(|e| format!("{e:?}"))?;
    fit_window(one_term.fitted_exponent, 2.5, 0.1, "one-term prediction residual")?;
    Ok(())
}

fn quadrature_integrals() -> Result<(), String> {
    let nodes = 2048;
    let mut worst = (0.0f64, String::new());
    let mut record = |err: f64, label: String| {
        if err > worst.0 {
            worst = (err, label);
        }
    };
    for a in [-0.5, -0.25] {
        for k in 1..=4i64 {
            let q = f_plus_right_quadrature(k, a, nodes).map_err(|e| format!("{e:?}"))?;
            let c = f_plus_right(k, a).map_err(|e| format!("{e:?}"))?;
            record((q.re - c).abs().max(q.im.abs()), format!("f+ right p={k} a={a}"));
            let q = f_minus_right_quadrature(-k, a, nodes).map_err(|e| format!("{e:?}"))?;
            let c = f_minus_right(-k, a).map_err(|e| format!("{e:?}"))?;
            record((q.re - c).abs().max(q.im.abs()), format!("f- right q={} a={a}", -k));
        }
    }
    for cc in [0.5, 0.25] {
        for k in 1..=4i64 {
            let q = f_plus_left_quadrature(-k, cc, nodes).map_err(|e| format!("{e:?}"))?;
            let c = f_plus_left(-k, cc).map_err(|e| format!("{e:?}"))?;
            record((q.re - c).abs().max(q.im.abs()), format!("f+ left p={} c={cc}", -k));
            let q = f_minus_left_quadrature(k, cc, nodes).map_err(|e| format!("{e:?}"))?;
            let c = f_minus_left(k, cc).map_err(|e| format!("{e:?}"))?;
            record((q.re - c).abs().max(q.im.abs()), format!("f- left q={k} c={cc}"));
        }
    }
    if worst.0 <= 1e-8 {
        Ok(())
    } else {
        Err(format!("worst quadrature error {:.2e} at {}", worst.0, worst.1))
    }
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Result<(), String>);
    let criteria: [Criterion; 11] = [
        ("exact asymptotic coefficients equal the closed rational table",
            Duration::from_secs(1), expansion_coefficients),
        ("y_1, y_2 exact; y_m finite with alternating sign through m=10",
            Duration::from_secs(1), y_coefficients),
        ("amplitude constants and the Barnes-G cross identity",
            Duration::from_secs(1), amplitude_constants),
        ("product formula matches dense diagonalization for L in {4,6,8}",
            Duration::from_secs(60), formula_vs_diagonalization),
        ("closed product agrees with the determinant oracle through N=12",
            Duration::from_secs(5), determinant_oracle),
        ("log-series reproduces ln R_64 at order 8",
            Duration::from_secs(1), log_series_fidelity),
        ("particle-hole ratios converge to gamma-ratio limits as 1/L^2",
            Duration::from_secs(30), particle_hole_ratios),
        ("shifted formfactor scaling converges to C_m targets as 1/L^2",
            Duration::from_secs(30), shifted_scaling),
        ("ladder resummation hits closed forms; aggregates are exact",
            Duration::from_secs(10), resummation_identities),
        ("prediction residual exponents fit 4.5 (two-term) and 2.5 (one-term)",
            Duration::from_secs(10), residual_exponents),
        ("endpoint-graded quadrature matches all four gamma closed forms",
            Duration::from_secs(10), quadrature_integrals),
    ];

    let mut failures = 0u32;
    for (index, (label, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(()) if elapsed <= *budget => "PASS",
            _ => "FAIL",
        };
        let mut line = format!("{verdict} {:2} {label} [{:.3}s]", index + 1, elapsed.as_secs_f64());
        if let Err(why) = &result {
            line.push_str(&format!(" :: {why}"));
        } else if elapsed > *budget {
            line.push_str(&format!(" :: exceeded {:.0}s budget", budget.as_secs_f64()));
        }
        println!("{line}");
        if verdict == "FAIL" {
            failures += 1;
        }
    }
    if failures > 0 {
        eprintln!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
