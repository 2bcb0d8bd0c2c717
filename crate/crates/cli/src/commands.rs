//! One builder per subcommand; each returns a `Report` ready for emission.
//! Errors returned here are usage errors (exit code 2).

use std::f64::consts::{PI, SQRT_2};

use num_traits::{Signed, ToPrimitive, Zero};
use xxcorr_core::luttinger::{
    coefficient_y_exact, coefficient_y_log, f_minus_left, f_minus_left_quadrature, f_minus_right,
    f_minus_right_quadrature, f_plus_left, f_plus_left_quadrature, f_plus_right,
    f_plus_right_quadrature, level_aggregate_exact, ph_formfactor_prediction, prediction_series,
    prefactor_c, prefactor_c_log, prefactor_from_y, scaling_relation_check, sum_identity_accelerated,
    sum_identity_closed, sum_identity_partial, taylor_coefficient_exact, Branch, ExcitationConfig,
    LuttingerParams,
};
use xxcorr_core::numerics::{
    rational, A_PREFACTOR, BARNES_G_HALF, C0, C0_OVER_2_SQRT_PI, C0_OVER_SQRT_PI, LN_A,
    ZETA_PRIME_MINUS_1,
};
use xxcorr_core::toeplitz::{
    cauchy_r, exact_expansion, exact_g_sweep, g0, ln_cauchy_r, log_r_series, series_residual_report,
    toeplitz_oracle_r,
};
use xxcorr_core::xxchain::{
    ed_sector_sweep, finite_correlator, particle_hole_formfactor, shifted_ground_formfactor,
    ChainSpec, ParticleHoleConfig,
};

use crate::report::{
    check_exact, fmt_float, fmt_log_float, fmt_rational, Provenance, Report, Tolerances,
};

const RESUM_PHASE: f64 = 0.6 * PI;

pub fn constants(echo: String, tols: &Tolerances) -> Result<Report, String> {
    let mut r = Report::new(echo);
    push_constant_checks(&mut r, tols);
    Ok(r)
}

fn push_constant_checks(r: &mut Report, tols: &Tolerances) {
    for (name, v) in [
        ("zeta_prime_minus_1", ZETA_PRIME_MINUS_1),
        ("ln_a", LN_A),
        ("barnes_g_half", BARNES_G_HALF),
    ] {
        let s = fmt_float(v);
        r.push_check(check_exact(name, &s, &s, Provenance::Identity));
    }
    r.push_check(tols.check_abs(
        "a_prefactor",
        "0.6450024",
        0.6450024,
        A_PREFACTOR,
        "1e-6",
        1e-6,
        Provenance::Published,
    ));
    r.push_check(tols.check_abs(
        "c0",
        "0.52141397",
        0.52141397,
        C0,
        "1e-7",
        1e-7,
        Provenance::Published,
    ));
    r.push_check(tols.check_abs(
        "c0_over_2_sqrt_pi",
        "0.147088",
        0.147088,
        C0_OVER_2_SQRT_PI,
        "1e-5",
        1e-5,
        Provenance::Published,
    ));
    // A from zeta'(-1) against Barnes G(1/2): independent constant routes
    let g4pi = PI * BARNES_G_HALF.powi(4);
    r.push_check(tols.check_abs(
        "barnes_cross_identity",
        &fmt_float(g4pi),
        g4pi,
        A_PREFACTOR * A_PREFACTOR,
        "1e-6",
        1e-6,
        Provenance::Computed,
    ));
    r.push_check(tols.check_rel(
        "normalization_match",
        C0_OVER_SQRT_PI,
        (2.0 * LN_A).exp() / SQRT_2,
        "1e-6",
        1e-6,
        Provenance::Computed,
    ));
}

pub fn prefactors(echo: String, m_max: u32, tols: &Tolerances) -> Result<Report, String> {
    if m_max > 20 {
        return Err("--m-max must be at most 20".into());
    }
    let mut r = Report::new(echo);
    let mut rows = Vec::with_capacity(m_max as usize + 1);
    let (cs0, cl0) = prefactor_c_log(0);
    rows.push(vec!["0".into(), fmt_log_float(cs0, cl0), fmt_float(1.0), "1/1".into()]);
    for m in 1..=m_max {
        let (cs, cl) = prefactor_c_log(m);
        let (ys, yl) = coefficient_y_log(m).map_err(|e| e.to_string())?;
        let y = coefficient_y_exact(m).map_err(|e| e.to_string())?;
        rows.push(vec![
            m.to_string(),
            fmt_log_float(cs, cl),
            fmt_log_float(ys, yl),
            fmt_rational(&y),
        ]);
    }
    r.push_table("prefactors", &["m", "c_m", "y_m", "y_m_exact"], rows);
    push_prefactor_checks(&mut r, m_max);
    let mut worst = 0.0f64;
    for m in 1..=m_max.min(8) {
        let direct = prefactor_c(m);
        let assembled = prefactor_from_y(m).map_err(|e| e.to_string())?;
        worst = worst.max((assembled - direct).abs() / direct.abs());
    }
    r.push_check(tols.check_abs(
        "c_from_y_consistency",
        "0",
        0.0,
        worst,
        "1e-9",
        1e-9,
        Provenance::Computed,
    ));
    Ok(r)
}

fn push_prefactor_checks(r: &mut Report, m_max: u32) {
    if m_max >= 1 {
        let y1 = coefficient_y_exact(1).expect("m >= 1");
        r.push_check(check_exact("y_1", "-1/8", &fmt_rational(&y1), Provenance::Published));
    }
    if m_max >= 2 {
        let y2 = coefficient_y_exact(2).expect("m >= 1");
        r.push_check(check_exact("y_2", "9/32768", &fmt_rational(&y2), Provenance::Published));
    }
    let mut alternates = true;
    for m in 1..=m_max {
        let y = coefficient_y_exact(m).expect("m >= 1");
        alternates &= !y.is_zero() && (y.is_negative() == (m % 2 == 1));
    }
    r.push_check(check_exact(
        "y_sign_alternation",
        "true",
        &alternates.to_string(),
        Provenance::Computed,
    ));
}

pub fn formfactor(echo: String, l: usize, m_max: u32, tols: &Tolerances) -> Result<Report, String> {
    let _ = tols;
    if l == 0 || l % 2 != 0 {
        return Err("--L must be positive and even".into());
    }
    if l < 24 {
        return Err("--L must be at least 24 to fit the excitation offsets".into());
    }
    if l > 1 << 16 {
        return Err("--L must be at most 65536".into());
    }
    let spec = ChainSpec::half_filled(l).map_err(|e| e.to_string())?;
    let params = LuttingerParams::default();
    let mut r = Report::new(echo);

    let mut rows = Vec::new();
    for m in 0..=m_max {
        let psi = shifted_ground_formfactor(spec, m as usize).map_err(|e| e.to_string())?;
        let p = scaling_relation_check(spec, m, &params).map_err(|e| e.to_string())?;
        rows.push(vec![
            m.to_string(),
            fmt_float(psi.re),
            fmt_float(psi.im),
            fmt_float(p.lhs),
            fmt_float(p.target),
            fmt_float(p.relative_deviation),
        ]);
    }
    r.push_table(
        "scaling",
        &["m", "psi_re", "psi_im", "scaled", "target", "rel_dev"],
        rows,
    );

    let pairs = [(1u32, 0u32), (2, 0), (1, 1)];
    let mut rows = Vec::new();
    for m in 0..=m_max.min(2) {
        let den = shifted_ground_formfactor(spec, m as usize).map_err(|e| e.to_string())?;
        for (p, h) in pairs {
            let cfg = ParticleHoleConfig { m_shift: m as usize, right: vec![(p, h)], left: vec![] };
            let num = particle_hole_formfactor(spec, &cfg).map_err(|e| e.to_string())?;
            let finite = (num / den).norm();
            let predicted = ph_formfactor_prediction(
                1.0,
                &ExcitationConfig { m, right: vec![(p as i64, -(h as i64))], left: vec![] },
                &params,
            )
            .map_err(|e| e.to_string())?
            .abs();
            rows.push(vec![
                m.to_string(),
                p.to_string(),
                h.to_string(),
                fmt_float(finite),
                fmt_float(predicted),
                fmt_float((finite - predicted).abs() / predicted),
            ]);
        }
    }
    r.push_table(
        "particle_hole",
        &["m", "p", "h", "finite_ratio", "predicted_ratio", "rel_dev"],
        rows,
    );
    Ok(r)
}

pub fn series(echo: String, order: u32, tols: &Tolerances) -> Result<Report, String> {
    validate_order(order)?;
    let e = exact_expansion(order).map_err(|e| e.to_string())?;
    let mut r = Report::new(echo);
    let mut rows = Vec::new();
    for (kind, terms) in [("uniform", &e.uniform_terms), ("staggered", &e.staggered_terms)] {
        for (power, coeff) in terms {
            rows.push(vec![
                kind.to_string(),
                power.to_string(),
                fmt_rational(coeff),
                fmt_float(coeff.to_f64().unwrap_or(f64::NAN)),
            ]);
        }
    }
    r.push_table("expansion", &["kind", "power", "coefficient", "coefficient_float"], rows);
    r.push_check(check_exact(
        "unit_leading",
        "1/1",
        &fmt_rational(&e.uniform_terms[&0]),
        Provenance::Identity,
    ));
    r.push_check(check_exact(
        "staggered_constant_absent",
        "true",
        &(!e.staggered_terms.contains_key(&0)).to_string(),
        Provenance::Identity,
    ));
    r.push_check(tols.check_rel(
        "normalization",
        C0_OVER_SQRT_PI,
        e.normalization,
        "1e-12",
        1e-12,
        Provenance::Computed,
    ));
    Ok(r)
}

pub fn exact(echo: String, x_max: u64, tols: &Tolerances) -> Result<Report, String> {
    if x_max == 0 {
        return Err("--x-max must be positive".into());
    }
    if x_max > 1_000_000 {
        return Err("--x-max must be at most 1000000".into());
    }
    let g = exact_g_sweep(x_max as usize);
    let mut oracle = Vec::with_capacity(17);
    for n in 0..=16u32 {
        oracle.push(toeplitz_oracle_r(n, 0).map_err(|e| e.to_string())?);
    }
    let mut r = Report::new(echo);
    let mut rows = Vec::with_capacity(x_max as usize);
    let mut worst = 0.0f64;
    let mut monotone = true;
    let mut positive = true;
    for x in 1..=x_max {
        let gv = g[x as usize - 1];
        positive &= gv > 0.0;
        if x > 1 {
            monotone &= gv < g[x as usize - 2];
        }
        let gor = if x <= 32 {
            let n = (x / 2) as usize;
            let v = if x % 2 == 0 {
                oracle[n] * oracle[n] / 2.0
            } else {
                oracle[n] * oracle[n + 1] / 2.0
            };
            worst = worst.max((v / gv - 1.0).abs());
            fmt_float(v)
        } else {
            String::new()
        };
        rows.push(vec![x.to_string(), fmt_float(gv), gor]);
    }
    r.push_table("correlator", &["x", "g", "g_oracle"], rows);
    r.push_check(tols.check_abs(
        "oracle_worst_rel_dev",
        "0",
        0.0,
        worst,
        "1e-9",
        1e-9,
        Provenance::Computed,
    ));
    r.push_check(check_exact("strictly_decreasing", "true", &monotone.to_string(), Provenance::Computed));
    r.push_check(check_exact("strictly_positive", "true", &positive.to_string(), Provenance::Computed));
    Ok(r)
}

pub fn sum_identity(echo: String, cutoff: u32, tols: &Tolerances) -> Result<Report, String> {
    if cutoff == 0 || cutoff > 64 {
        return Err("--cutoff must be between 1 and 64".into());
    }
    let a = -0.5;
    let c = 0.5;
    let closed_r = sum_identity_closed(a, RESUM_PHASE, Branch::Right).map_err(|e| e.to_string())?;
    let closed_l = sum_identity_closed(c, RESUM_PHASE, Branch::Left).map_err(|e| e.to_string())?;
    let mut r = Report::new(echo);
    let mut rows = Vec::with_capacity(cutoff as usize + 1);
    let mut err_r = 0.0;
    let mut err_l = 0.0;
    for k in 0..=cutoff {
        let pr = sum_identity_partial(a, RESUM_PHASE, k, Branch::Right).map_err(|e| e.to_string())?;
        let pl = sum_identity_partial(c, RESUM_PHASE, k, Branch::Left).map_err(|e| e.to_string())?;
        let ar = sum_identity_accelerated(a, RESUM_PHASE, k, Branch::Right).map_err(|e| e.to_string())?;
        let al = sum_identity_accelerated(c, RESUM_PHASE, k, Branch::Left).map_err(|e| e.to_string())?;
        err_r = (ar - closed_r).norm();
        err_l = (al - closed_l).norm();
        rows.push(vec![
            k.to_string(),
            fmt_float(pr.re),
            fmt_float(pr.im),
            fmt_float(pl.re),
            fmt_float(pl.im),
            fmt_float(err_r),
            fmt_float(err_l),
        ]);
    }
    r.push_table(
        "partial_sums",
        &["cutoff", "right_re", "right_im", "left_re", "left_im", "right_resummed_err", "left_resummed_err"],
        rows,
    );

    let a_exact = rational(-1, 2);
    let mut rows = Vec::new();
    let mut agg_match = true;
    for k in 0..=cutoff.min(8) {
        let agg = level_aggregate_exact(&a_exact, k);
        let tay = taylor_coefficient_exact(&a_exact, k);
        if k <= 6 {
            agg_match &= agg == tay;
        }
        rows.push(vec![k.to_string(), fmt_rational(&agg), fmt_rational(&tay)]);
    }
    r.push_table("aggregates", &["k", "ladder_sum", "taylor_coefficient"], rows);

    r.push_check(tols.check_abs(
        "right_resummed_error",
        "0",
        0.0,
        err_r,
        "1e-6",
        1e-6,
        Provenance::Published,
    ));
    r.push_check(tols.check_abs(
        "left_resummed_error",
        "0",
        0.0,
        err_l,
        "1e-6",
        1e-6,
        Provenance::Published,
    ));
    r.push_check(check_exact("aggregate_taylor_match", "true", &agg_match.to_string(), Provenance::Computed));
    r.push_check(check_exact(
        "level0_aggregate",
        "1/1",
        &fmt_rational(&level_aggregate_exact(&a_exact, 0)),
        Provenance::Identity,
    ));
    Ok(r)
}

pub fn compare(
    echo: String,
    x_max: u64,
    m_max: u32,
    order: u32,
    tols: &Tolerances,
) -> Result<Report, String> {
    if x_max < 32 {
        return Err("--x-max must be at least 32".into());
    }
    if x_max > 100_000 {
        return Err("--x-max must be at most 100000".into());
    }
    if m_max > 5 {
        return Err("--m-max must be at most 5".into());
    }
    validate_order(order)?;
    let grid = compare_grid(x_max);
    let rep = series_residual_report(&grid, m_max, order).map_err(|e| e.to_string())?;
    let mut r = Report::new(echo);
    let rows = rep
        .rows
        .iter()
        .map(|row| {
            vec![
                row.x.to_string(),
                fmt_float(row.exact),
                fmt_float(row.luttinger),
                fmt_float(row.series),
                fmt_float(row.luttinger_residual),
                fmt_float(row.series_residual),
            ]
        })
        .collect();
    r.push_table(
        "residuals",
        &["x", "exact", "luttinger", "series", "luttinger_residual", "series_residual"],
        rows,
    );

    push_agreement_checks(&mut r, order)?;
    let terms = prediction_series(2, &LuttingerParams::default()).map_err(|e| e.to_string())?;
    let x4_absent = !terms.terms.iter().any(|t| (t.exponent - 4.5).abs() < 1e-9);
    r.push_check(check_exact("luttinger_x4_absent", "true", &x4_absent.to_string(), Provenance::Computed));
    push_exponent_checks(&mut r, &grid, order, tols)?;

    let last = rep.rows.last().expect("grid is nonempty");
    r.push_check(tols.check_abs(
        "series_self_residual",
        "0",
        0.0,
        (last.series_residual / last.exact).abs(),
        "1e-10",
        1e-10,
        Provenance::Computed,
    ));
    Ok(r)
}

fn push_agreement_checks(r: &mut Report, order: u32) -> Result<(), String> {
    let e = exact_expansion(order).map_err(|e| e.to_string())?;
    let y1 = coefficient_y_exact(1).expect("m >= 1");
    r.push_check(check_exact(
        "agreement_staggered_x2",
        &fmt_rational(&y1),
        &fmt_rational(&e.staggered_terms[&2]),
        Provenance::Published,
    ));
    r.push_check(check_exact(
        "agreement_uniform_x4",
        "1/128",
        &fmt_rational(&e.uniform_terms[&4]),
        Provenance::Published,
    ));
    Ok(())
}

fn push_exponent_checks(
    r: &mut Report,
    grid: &[u64],
    order: u32,
    tols: &Tolerances,
) -> Result<(), String> {
    for (m, expected, name) in [(0u32, 2.5, "residual_exponent_m0"), (1, 4.5, "residual_exponent_m1")] {
        let fit = series_residual_report(grid, m, order).map_err(|e| e.to_string())?;
        r.push_check(tols.check_abs(
            name,
            &format!("{expected}"),
            expected,
            fit.fitted_exponent,
            "0.1",
            0.1,
            Provenance::Computed,
        ));
    }
    Ok(())
}

pub fn verify(echo: String, full: bool, tols: &Tolerances) -> Result<Report, String> {
    let params = LuttingerParams::default();
    let mut r = Report::new(echo);

    // tautologies: empty-configuration values every route must reproduce
    r.push_check(check_exact("r0_identity", &fmt_float(1.0), &fmt_float(cauchy_r(0)), Provenance::Identity));
    r.push_check(check_exact("kernel_center", &fmt_float(1.0), &fmt_float(g0(0)), Provenance::Identity));
    let empty = ph_formfactor_prediction(1.0, &ExcitationConfig::shift_only(0), &params)
        .map_err(|e| e.to_string())?;
    r.push_check(check_exact("empty_excitation", &fmt_float(1.0), &fmt_float(empty), Provenance::Identity));
    r.push_check(check_exact(
        "level0_aggregate",
        "1/1",
        &fmt_rational(&level_aggregate_exact(&rational(-1, 2), 0)),
        Provenance::Identity,
    ));
    let e4 = exact_expansion(4).map_err(|e| e.to_string())?;
    r.push_check(check_exact(
        "expansion_unit_leading",
        "1/1",
        &fmt_rational(&e4.uniform_terms[&0]),
        Provenance::Identity,
    ));

    push_constant_checks(&mut r, tols);
    push_prefactor_checks(&mut r, 2);

    // product formula against dense diagonalization, every sector and pair
    let ed_sizes: &[usize] = if full { &[4, 6, 8] } else { &[4, 6] };
    for &l in ed_sizes {
        let sweep = ed_sector_sweep(l).map_err(|e| e.to_string())?;
        r.push_check(tols.check_abs(
            &format!("ed_formfactor_dev_l{l}"),
            "0",
            0.0,
            sweep.worst_formfactor_dev,
            "1e-10",
            1e-10,
            Provenance::Computed,
        ));
        r.push_check(tols.check_abs(
            &format!("ed_completeness_dev_l{l}"),
            "0",
            0.0,
            sweep.worst_completeness_dev,
            "1e-12",
            1e-12,
            Provenance::Computed,
        ));
    }

    // Cauchy product against the dense Toeplitz determinant
    let n_max = if full { 12 } else { 8 };
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let oracle = toeplitz_oracle_r(n, 0).map_err(|e| e.to_string())?;
        worst = worst.max((cauchy_r(n) / oracle - 1.0).abs());
    }
    r.push_check(tols.check_abs(
        "toeplitz_oracle_rel_dev",
        "0",
        0.0,
        worst,
        "1e-9",
        1e-9,
        Provenance::Computed,
    ));

    let s = log_r_series(8).map_err(|e| e.to_string())?;
    r.push_check(tols.check_abs(
        "log_series_fidelity",
        "0",
        0.0,
        (ln_cauchy_r(64) - s.eval(64.0)).abs(),
        "1e-12",
        1e-12,
        Provenance::Computed,
    ));

    // the expansion must not move when computed two orders deeper
    let lo = exact_expansion(8).map_err(|e| e.to_string())?;
    let hi = exact_expansion(10).map_err(|e| e.to_string())?;
    let stable = lo.uniform_terms.iter().all(|(p, c)| hi.uniform_terms.get(p) == Some(c))
        && lo.staggered_terms.iter().all(|(p, c)| hi.staggered_terms.get(p) == Some(c));
    r.push_check(check_exact("series_stability", "true", &stable.to_string(), Provenance::Computed));

    push_agreement_checks(&mut r, 8)?;

    for (name, param, branch) in [
        ("right_resummed_error", -0.5, Branch::Right),
        ("left_resummed_error", 0.5, Branch::Left),
    ] {
        let closed = sum_identity_closed(param, RESUM_PHASE, branch).map_err(|e| e.to_string())?;
        let acc = sum_identity_accelerated(param, RESUM_PHASE, 20, branch).map_err(|e| e.to_string())?;
        r.push_check(tols.check_abs(name, "0", 0.0, (acc - closed).norm(), "1e-6", 1e-6, Provenance::Published));
    }
    let a_exact = rational(-1, 2);
    let agg_match = (0..=6u32)
        .all(|k| level_aggregate_exact(&a_exact, k) == taylor_coefficient_exact(&a_exact, k));
    r.push_check(check_exact("aggregate_taylor_match", "true", &agg_match.to_string(), Provenance::Computed));

    push_quadrature_checks(&mut r, tols)?;

    let grid = compare_grid(if full { 512 } else { 128 });
    push_exponent_checks(&mut r, &grid, 8, tols)?;

    if full {
        // finite-size error follows (pi x / L)^2 / 12 relative, so at x = 32
        // the relative deviation is pinned at 2.0e-4 by physics; the 1e-4
        // regression bound is an absolute one (worst ~1e-5 here)
        let spec = ChainSpec::half_filled(2048).map_err(|e| e.to_string())?;
        let g = exact_g_sweep(32);
        let mut worst = 0.0f64;
        for x in 1..=32usize {
            let finite = finite_correlator(spec, x).map_err(|e| e.to_string())?;
            worst = worst.max((finite - g[x - 1]).abs());
        }
        r.push_check(tols.check_abs(
            "finite_size_correlator_l2048",
            "0",
            0.0,
            worst,
            "1e-4",
            1e-4,
            Provenance::Computed,
        ));
        let spec = ChainSpec::half_filled(512).map_err(|e| e.to_string())?;
        for m in 0..=2u32 {
            let p = scaling_relation_check(spec, m, &params).map_err(|e| e.to_string())?;
            r.push_check(tols.check_abs(
                &format!("scaling_dev_m{m}_l512"),
                "0",
                0.0,
                p.relative_deviation,
                "5e-2",
                5e-2,
                Provenance::Computed,
            ));
        }
    }
    Ok(r)
}

fn push_quadrature_checks(r: &mut Report, tols: &Tolerances) -> Result<(), String> {
    let mut worst = 0.0f64;
    for p in 1..=4i64 {
        for a in [-0.5, -0.25] {
            let q = f_plus_right_quadrature(p, a, 2048).map_err(|e| e.to_string())?;
            let closed = f_plus_right(p, a).map_err(|e| e.to_string())?;
            worst = worst.max((q.re - closed).abs().max(q.im.abs()));
        }
    }
    r.push_check(tols.check_abs("quad_f_plus_right", "0", 0.0, worst, "1e-8", 1e-8, Provenance::Computed));

    let mut worst = 0.0f64;
    for p in [-4i64, -3, -2, -1] {
        for c in [0.5, 0.25] {
            let q = f_plus_left_quadrature(p, c, 2048).map_err(|e| e.to_string())?;
            let closed = f_plus_left(p, c).map_err(|e| e.to_string())?;
            worst = worst.max((q.re - closed).abs().max(q.im.abs()));
        }
    }
    r.push_check(tols.check_abs("quad_f_plus_left", "0", 0.0, worst, "1e-8", 1e-8, Provenance::Computed));

    let mut worst = 0.0f64;
    for q in -4i64..=0 {
        for a in [-0.5, 0.7] {
            let v = f_minus_right_quadrature(q, a, 1024).map_err(|e| e.to_string())?;
            let closed = f_minus_right(q, a).map_err(|e| e.to_string())?;
            worst = worst.max((v.re - closed).abs().max(v.im.abs()));
        }
    }
    r.push_check(tols.check_abs("quad_f_minus_right", "0", 0.0, worst, "1e-8", 1e-8, Provenance::Computed));

    let mut worst = 0.0f64;
    for q in 0i64..=4 {
        for c in [0.5, 1.3] {
            let v = f_minus_left_quadrature(q, c, 1024).map_err(|e| e.to_string())?;
            let closed = f_minus_left(q, c).map_err(|e| e.to_string())?;
            worst = worst.max((v.re - closed).abs().max(v.im.abs()));
        }
    }
    r.push_check(tols.check_abs("quad_f_minus_left", "0", 0.0, worst, "1e-8", 1e-8, Provenance::Computed));
    Ok(())
}

fn validate_order(order: u32) -> Result<(), String> {
    if order % 2 != 0 || order < 4 {
        return Err("--order must be even and at least 4".into());
    }
    if order > 32 {
        return Err("--order must be at most 32".into());
    }
    Ok(())
}

/// Even separations, roughly geometric with ratio sqrt(2), ending at the
/// largest admissible point.  Even-only keeps the staggered sign fixed so
/// short grids still fit a clean slope.
fn compare_grid(x_max: u64) -> Vec<u64> {
    let mut v: Vec<u64> = vec![32, 46];
    loop {
        let next = 2 * v[v.len() - 2];
        if next > x_max {
            break;
        }
        v.push(next);
    }
    v.retain(|&x| x <= x_max);
    if v.len() < 3 {
        let e = x_max & !1;
        v = vec![e - 8, e - 4, e];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        assert_eq!(compare_grid(32), vec![24, 28, 32]);
        assert_eq!(compare_grid(46), vec![38, 42, 46]);
        assert_eq!(compare_grid(64), vec![32, 46, 64]);
        assert_eq!(compare_grid(512), vec![32, 46, 64, 92, 128, 184, 256, 368, 512]);
        assert!(compare_grid(100_000).iter().all(|x| x % 2 == 0));
    }
}
