use super::*;
use core::f64::consts::PI;
use proptest::prelude::*;

fn approx(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

#[test]
fn ground_momenta_examples() {
    let spec = ChainSpec::new(8, 3).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    assert_eq!(p.grid(), Grid::Integer);
    let ks = p.momenta_centered();
    assert_eq!(ks.len(), 3);
    approx(ks[0], -PI / 4.0, 1e-15);
    approx(ks[1], 0.0, 1e-15);
    approx(ks[2], PI / 4.0, 1e-15);

    let q = ground_state_momenta(spec, Sector::MMinus1).unwrap();
    assert_eq!(q.grid(), Grid::HalfInteger);
    let ks = q.momenta_centered();
    assert_eq!(ks.len(), 2);
    approx(ks[0], -PI / 8.0, 1e-15);
    approx(ks[1], PI / 8.0, 1e-15);

    let tiny = ChainSpec::new(2, 1).unwrap();
    assert!(ground_state_momenta(tiny, Sector::MMinus1).unwrap().is_empty());
}

#[test]
fn trivial_formfactors() {
    let spec = ChainSpec::new(2, 1).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    let q = ground_state_momenta(spec, Sector::MMinus1).unwrap();
    let v = formfactor(&p, &q).unwrap();
    approx(v.re, 1.0 / libm::sqrt(2.0), 1e-15);
    approx(v.im, 0.0, 1e-15);

    let spec = ChainSpec::new(4, 1).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    let q = ground_state_momenta(spec, Sector::MMinus1).unwrap();
    let v = formfactor(&p, &q).unwrap();
    approx(v.re, 0.5, 1e-15);
    approx(v.im, 0.0, 1e-15);
}

#[test]
fn operand_validation() {
    let a = MomentumSet::new(8, Grid::Integer, [0, 1, 2]).unwrap();
    let b = MomentumSet::new(8, Grid::Integer, [0, 1]).unwrap();
    assert_eq!(formfactor(&a, &b).unwrap_err(), XxChainError::GridMismatch);

    let c = MomentumSet::new(8, Grid::HalfInteger, [0]).unwrap();
    assert_eq!(formfactor(&a, &c).unwrap_err(), XxChainError::SizeMismatch);

    let d = MomentumSet::new(6, Grid::HalfInteger, [0, 1]).unwrap();
    assert_eq!(formfactor(&a, &d).unwrap_err(), XxChainError::SizeMismatch);

    assert_eq!(
        MomentumSet::new(8, Grid::Integer, [9, -7]).unwrap_err(),
        XxChainError::DuplicateMomentum
    );
    assert!(ChainSpec::new(7, 3).is_err());
    assert!(ChainSpec::new(4, 5).is_err());
}

#[test]
fn canonicalization_mod_l() {
    let a = MomentumSet::new(8, Grid::Integer, [-1, 3]).unwrap();
    assert_eq!(a.indices(), &[3, 7]);
    let b = MomentumSet::new(8, Grid::Integer, [15, -5]).unwrap();
    assert_eq!(a, b);
    let t = a.translated(2);
    assert_eq!(t.indices(), &[1, 5]);
}

#[test]
fn umklapp_invariance_of_product_formula() {
    // Shifting any single momentum by 2 pi flips matching sign pairs and
    // leaves the value unchanged; check directly on raw momenta.
    let spec = ChainSpec::new(10, 3).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    let q = shifted_ground_momenta(spec, 1).unwrap();
    let base = formfactor_from_momenta(10, &p.momenta(), &q.momenta());
    let mut ps = p.momenta();
    let mut qs = q.momenta();
    ps[0] += 2.0 * PI;
    qs[1] -= 4.0 * PI;
    let wrapped = formfactor_from_momenta(10, &ps, &qs);
    assert!((wrapped - base).norm() <= 1e-12 * base.norm());
}

#[test]
fn translation_covariance() {
    // Translating both momentum sets by one grid unit multiplies the value
    // by exp(i 2 pi (M-1) / L) exactly (only the e^{i sum q} factor moves);
    // chosen so no centered momentum wraps past pi, which would reorder the
    // sets and add a permutation sign.
    let spec = ChainSpec::half_filled(12).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    let cfg = ParticleHoleConfig { m_shift: 0, right: alloc::vec![(1, 0)], left: alloc::vec![] };
    let q = particle_hole_state(spec, &cfg).unwrap();
    let base = formfactor(&p, &q).unwrap();
    let shifted = formfactor(&p.translated(1), &q.translated(1)).unwrap();
    let m = p.len() as f64;
    let expected = base * Complex64::from_polar(1.0, 2.0 * PI * (m - 1.0) / 12.0);
    assert!((shifted - expected).norm() <= 1e-10 * base.norm());
    assert!((shifted.norm() - base.norm()).abs() <= 1e-12 * base.norm());
}

#[test]
fn shifted_ground_basics() {
    let spec = ChainSpec::half_filled(16).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    let q0 = ground_state_momenta(spec, Sector::MMinus1).unwrap();
    let direct = formfactor(&p, &q0).unwrap();
    let via_shift = shifted_ground_formfactor(spec, 0).unwrap();
    assert!((direct - via_shift).norm() <= 1e-15);

    assert_eq!(
        shifted_ground_formfactor(spec, 2).unwrap_err(),
        XxChainError::ShiftTooLarge
    );

    // psi_1 / psi_0 approaches pi / (2L).
    let spec = ChainSpec::half_filled(64).unwrap();
    let r = (shifted_ground_formfactor(spec, 1).unwrap()
        / shifted_ground_formfactor(spec, 0).unwrap())
    .norm();
    approx(r * 2.0 * 64.0 / PI, 1.0, 1e-2);
}

#[test]
fn shifted_ratio_sign_law() {
    // After removing the exact translation phase 2 pi m (M-1) / L the ratio
    // psi_m / psi_0 is real with sign (-1)^(m(m-1)/2 + m(M-1)).
    for l in [62usize, 64] {
        let spec = ChainSpec::half_filled(l).unwrap();
        let psi0 = shifted_ground_formfactor(spec, 0).unwrap();
        for m in 1usize..=3 {
            let ratio = shifted_ground_formfactor(spec, m).unwrap() / psi0;
            let phi = 2.0 * PI * (m * (spec.m - 1)) as f64 / l as f64;
            let stripped = ratio * Complex64::from_polar(1.0, -phi);
            assert!(stripped.im.abs() <= 1e-12 * ratio.norm(), "phase not stripped at m={m}");
            let exponent = m * (m - 1) / 2 + m * (spec.m - 1);
            let sign = if exponent % 2 == 0 { 1.0 } else { -1.0 };
            assert!(stripped.re * sign > 0.0, "sign law broken at l={l} m={m}");
        }
    }
}

#[test]
fn particle_hole_construction() {
    let spec = ChainSpec::half_filled(16).unwrap();
    let cfg = ParticleHoleConfig { m_shift: 0, right: alloc::vec![(1, 0)], left: alloc::vec![] };
    let q = particle_hole_state(spec, &cfg).unwrap();
    assert_eq!(q.indices(), &[0, 1, 2, 4, 13, 14, 15]);

    let clash = ParticleHoleConfig {
        m_shift: 0,
        right: alloc::vec![(1, 0), (1, 0)],
        left: alloc::vec![],
    };
    assert_eq!(
        particle_hole_state(spec, &clash).unwrap_err(),
        XxChainError::OverlappingExcitations
    );

    let zero_p = ParticleHoleConfig { m_shift: 0, right: alloc::vec![(0, 0)], left: alloc::vec![] };
    assert_eq!(
        particle_hole_state(spec, &zero_p).unwrap_err(),
        XxChainError::OffsetOutOfRange
    );
    let wide = ParticleHoleConfig { m_shift: 0, right: alloc::vec![(2, 0)], left: alloc::vec![] };
    assert_eq!(
        particle_hole_state(spec, &wide).unwrap_err(),
        XxChainError::OffsetOutOfRange
    );

    let empty = ParticleHoleConfig::shift_only(1);
    let via_cfg = particle_hole_formfactor(spec, &empty).unwrap();
    let via_shift = shifted_ground_formfactor(spec, 1).unwrap();
    assert!((via_cfg - via_shift).norm() <= 1e-15);
}

#[test]
fn particle_hole_ratio_limits() {
    // Single right pair (p=1, h=0) on the unshifted block: ratio to psi_0
    // tends to -1/2; on the m=1 block the a-parameter moves to 1/2 and the
    // magnitude tends to 1/2.
    let spec = ChainSpec::half_filled(256).unwrap();
    let psi0 = shifted_ground_formfactor(spec, 0).unwrap();
    let cfg0 = ParticleHoleConfig { m_shift: 0, right: alloc::vec![(1, 0)], left: alloc::vec![] };
    let r0 = particle_hole_formfactor(spec, &cfg0).unwrap() / psi0;
    assert!((r0 - Complex64::new(-0.5, 0.0)).norm() <= 0.02, "r0 = {r0}");

    let psi1 = shifted_ground_formfactor(spec, 1).unwrap();
    let cfg1 = ParticleHoleConfig { m_shift: 1, right: alloc::vec![(1, 0)], left: alloc::vec![] };
    let r1 = particle_hole_formfactor(spec, &cfg1).unwrap() / psi1;
    assert!((r1.norm() - 0.5).abs() <= 0.02, "r1 = {r1}");
}

#[test]
fn ed_oracle_small_examples() {
    let spec = ChainSpec::new(2, 1).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    let q = ground_state_momenta(spec, Sector::MMinus1).unwrap();
    let v = ed_oracle_formfactor(spec, &p, &q).unwrap();
    approx(v.norm(), 1.0 / libm::sqrt(2.0), 1e-12);

    let spec = ChainSpec::new(4, 2).unwrap();
    let p = ground_state_momenta(spec, Sector::M).unwrap();
    let q = ground_state_momenta(spec, Sector::MMinus1).unwrap();
    let ed = ed_oracle_formfactor(spec, &p, &q).unwrap();
    let ff = formfactor(&p, &q).unwrap();
    approx(ed.norm(), ff.norm(), 1e-12);

    let big = ChainSpec::new(10, 5).unwrap();
    let bp = ground_state_momenta(big, Sector::M).unwrap();
    let bq = ground_state_momenta(big, Sector::MMinus1).unwrap();
    assert!(matches!(
        ed_oracle_formfactor(big, &bp, &bq),
        Err(XxChainError::InvalidSpec(_))
    ));
}

#[test]
fn ed_sweep_l4() {
    let sweep = ed_sector_sweep(4).unwrap();
    assert_eq!(sweep.pairs, 56);
    assert!(sweep.worst_formfactor_dev <= 1e-12, "{}", sweep.worst_formfactor_dev);
    assert!(sweep.worst_completeness_dev <= 1e-12, "{}", sweep.worst_completeness_dev);
    assert!(sweep.worst_residual <= 1e-12, "{}", sweep.worst_residual);
}

#[test]
fn ed_sweep_l6() {
    let sweep = ed_sector_sweep(6).unwrap();
    assert_eq!(sweep.pairs, 792);
    assert!(sweep.worst_formfactor_dev <= 1e-12, "{}", sweep.worst_formfactor_dev);
    assert!(sweep.worst_completeness_dev <= 1e-12, "{}", sweep.worst_completeness_dev);
}

#[test]
fn ed_blind_block_checks() {
    assert!(ed_blind_block_check(4, 2).unwrap() <= 1e-10);
    assert!(ed_blind_block_check(6, 3).unwrap() <= 1e-10);
    assert!(ed_blind_block_check(6, 1).unwrap() <= 1e-10);
}

#[test]
fn ed_cross_ratios_fix_relative_phases() {
    // The formula's phases are a per-state gauge; cross ratios
    // psi(p1,q1) psi(p2,q2) / (psi(p1,q2) psi(p2,q1)) are gauge invariant
    // and must agree with the oracle.
    let l = 6usize;
    let spec = ChainSpec::new(l, 3).unwrap();
    let psets = [
        MomentumSet::new(l, Grid::Integer, [0, 1, 2]).unwrap(),
        MomentumSet::new(l, Grid::Integer, [0, 1, 3]).unwrap(),
        MomentumSet::new(l, Grid::Integer, [1, 2, 4]).unwrap(),
    ];
    let qsets = [
        MomentumSet::new(l, Grid::HalfInteger, [0, 1]).unwrap(),
        MomentumSet::new(l, Grid::HalfInteger, [0, 2]).unwrap(),
        MomentumSet::new(l, Grid::HalfInteger, [2, 4]).unwrap(),
    ];
    for (a1, a2) in [(0usize, 1usize), (0, 2), (1, 2)] {
        for (b1, b2) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let f = |pi: usize, qi: usize| formfactor(&psets[pi], &qsets[qi]).unwrap();
            let e = |pi: usize, qi: usize| {
                ed_oracle_formfactor(spec, &psets[pi], &qsets[qi]).unwrap()
            };
            let fr = f(a1, b1) * f(a2, b2) / (f(a1, b2) * f(a2, b1));
            let er = e(a1, b1) * e(a2, b2) / (e(a1, b2) * e(a2, b1));
            assert!((fr - er).norm() <= 1e-9 * fr.norm().max(1.0), "{fr} vs {er}");
        }
    }
}

#[test]
fn finite_correlator_examples() {
    let spec = ChainSpec::half_filled(2048).unwrap();
    let g1 = finite_correlator(spec, 1).unwrap();
    approx(g1 * PI, 1.0, 1e-5);
    let g2 = finite_correlator(spec, 2).unwrap();
    approx(g2 * PI * PI / 2.0, 1.0, 1e-5);

    let small = ChainSpec::half_filled(64).unwrap();
    for x in 1..32 {
        let g = finite_correlator(small, x).unwrap();
        assert!(g > 0.0, "positivity broke at x={x}");
    }

    assert!(finite_correlator(spec, 0).is_err());
    assert!(finite_correlator(spec, 1024).is_err());
    assert!(finite_correlator(ChainSpec::new(8, 3).unwrap(), 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formfactor_is_bounded_and_covariant(
        pidx in proptest::collection::btree_set(0i64..12, 4),
        qidx in proptest::collection::btree_set(0i64..12, 3),
        shift in 1i64..12,
    ) {
        let p = MomentumSet::new(12, Grid::HalfInteger, pidx).unwrap();
        let q = MomentumSet::new(12, Grid::Integer, qidx).unwrap();
        let v = formfactor(&p, &q).unwrap();
        prop_assert!(v.norm() <= 1.0 + 1e-12);
        let w = formfactor(&p.translated(shift), &q.translated(shift)).unwrap();
        prop_assert!((w.norm() - v.norm()).abs() <= 1e-12 * v.norm().max(1e-300));
        // Arbitrary sets may wrap past pi under translation, which reorders
        // the centered representatives and contributes a permutation sign;
        // the covariance phase is defined up to that sign.
        let expected = v * Complex64::from_polar(
            1.0,
            2.0 * PI * (p.len() as f64 - 1.0) * shift as f64 / 12.0,
        );
        let dev = (w - expected).norm().min((w + expected).norm());
        prop_assert!(dev <= 1e-10 * v.norm().max(1e-300));
    }

    #[test]
    fn momentum_set_canonicalization_is_umklapp_stable(
        idx in proptest::collection::btree_set(0i64..16, 1..6),
        wraps in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let base = MomentumSet::new(16, Grid::Integer, idx.clone()).unwrap();
        let wrapped: alloc::vec::Vec<i64> = idx
            .iter()
            .zip(wraps.iter().cycle())
            .map(|(&n, &w)| n + 16 * w)
            .collect();
        let other = MomentumSet::new(16, Grid::Integer, wrapped).unwrap();
        prop_assert_eq!(base, other);
    }
}
