//! Dense exact diagonalization of short chains, used as an oracle for the
//! product formula.  Eigenvectors are built as Slater determinants on the
//! sector's momentum grid and certified by their Hamiltonian residual, so
//! the comparison does not depend on how a black-box eigensolver picks
//! bases inside degenerate blocks.  A separate blind check diagonalizes the
//! dense matrix anyway and compares gauge-invariant block norms.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{formfactor, ChainSpec, Grid, MomentumSet, XxChainError};

/// Largest chain the dense oracle accepts (dimension 2^l).
pub const MAX_ED_SITES: usize = 8;

/// Residual bound for certifying a Slater vector as an eigenstate.
const RESIDUAL_TOL: f64 = 1e-10;

struct SectorBasis {
    l: usize,
    masks: Vec<u32>,
    pos: Vec<usize>,
}

impl SectorBasis {
    fn new(l: usize, n: usize) -> SectorBasis {
        let mut masks = Vec::new();
        for mask in 0u32..(1u32 << l) {
            if mask.count_ones() as usize == n {
                masks.push(mask);
            }
        }
        let mut pos = vec![usize::MAX; 1 << l];
        for (i, &m) in masks.iter().enumerate() {
            pos[m as usize] = i;
        }
        SectorBasis { l, masks, pos }
    }

    fn dim(&self) -> usize {
        self.masks.len()
    }
}

/// Spin-basis Hamiltonian block: hops `2(s+_j s-_{j+1} + h.c.)` around the
/// ring.  In the up-spin occupation basis the matrix is signless.
fn build_h(basis: &SectorBasis) -> DMatrix<f64> {
    let dim = basis.dim();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for (i, &mask) in basis.masks.iter().enumerate() {
        for j in 0..basis.l {
            let j2 = (j + 1) % basis.l;
            let b1 = (mask >> j) & 1;
            let b2 = (mask >> j2) & 1;
            if b1 != b2 {
                let flipped = mask ^ (1 << j) ^ (1 << j2);
                h[(basis.pos[flipped as usize], i)] += 2.0;
            }
        }
    }
    h
}

/// Normalized Slater vector `det[e^(i k_j x_i)] / l^(n/2)` over the sector
/// basis, for momenta `ks` (sites ascending; the Jordan-Wigner string signs
/// cancel in this ordering).
fn slater_vector(basis: &SectorBasis, ks: &[f64]) -> DVector<Complex64> {
    let n = ks.len();
    let norm = libm::exp(-0.5 * n as f64 * libm::log(basis.l as f64));
    DVector::from_fn(basis.dim(), |row, _| {
        if n == 0 {
            return Complex64::new(norm, 0.0);
        }
        let mask = basis.masks[row];
        let mut sites = [0usize; 32];
        let mut cnt = 0;
        for j in 0..basis.l {
            if (mask >> j) & 1 == 1 {
                sites[cnt] = j;
                cnt += 1;
            }
        }
        let mat = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
            Complex64::from_polar(1.0, ks[j] * sites[i] as f64)
        });
        mat.lu().determinant() * norm
    })
}

/// Free-fermion energy of a momentum set under hop amplitude 2.
fn slater_energy(ks: &[f64]) -> f64 {
    ks.iter().map(|&k| 4.0 * libm::cos(k)).sum()
}

/// `|Hv - Ev|` for a (should-be) eigenvector.
fn residual(h: &DMatrix<f64>, v: &DVector<Complex64>, energy: f64) -> f64 {
    let hc = h.map(|x| Complex64::new(x, 0.0));
    let r = &hc * v - v * Complex64::new(energy, 0.0);
    r.norm()
}

/// Apply `s^-_0`: clear the site-0 bit.  Site 0 heads the Jordan-Wigner
/// string, so no fermionic sign appears.
fn sigma_minus_0(
    from: &SectorBasis,
    to: &SectorBasis,
    v: &DVector<Complex64>,
) -> DVector<Complex64> {
    let mut out = DVector::<Complex64>::zeros(to.dim());
    for (i, &mask) in from.masks.iter().enumerate() {
        if mask & 1 == 1 {
            out[to.pos[(mask & !1u32) as usize]] += v[i];
        }
    }
    out
}

fn check_sector(l: usize, set: &MomentumSet) -> Result<(), XxChainError> {
    if set.l() != l {
        return Err(XxChainError::SizeMismatch);
    }
    if set.grid() != Grid::natural_for(set.len()) {
        return Err(XxChainError::GridMismatch);
    }
    Ok(())
}

/// `<{q}| s^-_0 |{p}>` computed from dense sector matrices, with both
/// Slater vectors certified as eigenstates before use.
pub fn ed_oracle_formfactor(
    spec: ChainSpec,
    p: &MomentumSet,
    q: &MomentumSet,
) -> Result<Complex64, XxChainError> {
    if spec.l > MAX_ED_SITES {
        return Err(XxChainError::InvalidSpec("dense oracle supports l <= 8"));
    }
    if p.len() != q.len() + 1 {
        return Err(XxChainError::SizeMismatch);
    }
    check_sector(spec.l, p)?;
    check_sector(spec.l, q)?;
    let basis_p = SectorBasis::new(spec.l, p.len());
    let basis_q = SectorBasis::new(spec.l, q.len());
    let hp = build_h(&basis_p);
    let hq = build_h(&basis_q);
    let vp = slater_vector(&basis_p, &p.momenta());
    let vq = slater_vector(&basis_q, &q.momenta());
    for (h, v, ks) in [(&hp, &vp, p.momenta()), (&hq, &vq, q.momenta())] {
        let r = residual(h, v, slater_energy(&ks));
        if r > RESIDUAL_TOL {
            return Err(XxChainError::EigenstateCertification(r));
        }
    }
    let lowered = sigma_minus_0(&basis_p, &basis_q, &vp);
    Ok(vq.dotc(&lowered))
}

/// Outcome of sweeping every sector and momentum-set pair of a short chain.
#[derive(Debug, Clone, Copy)]
pub struct EdSweep {
    /// Worst `||psi_formula| - |psi_ed||` over all pairs.
    pub worst_formfactor_dev: f64,
    /// Worst `|sum_q |psi|^2 - m/l|` over sectors, from the formula values.
    pub worst_completeness_dev: f64,
    /// Worst certified eigenstate residual encountered.
    pub worst_residual: f64,
    /// Number of (p, q) pairs compared.
    pub pairs: usize,
}

fn index_subsets(l: usize, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur: Vec<i64> = Vec::with_capacity(n);
    fn rec(l: usize, n: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let need = n - cur.len();
        for v in start..=(l - need) {
            cur.push(v as i64);
            rec(l, n, v + 1, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else if n <= l {
        rec(l, n, 0, &mut cur, &mut out);
    }
    out
}

/// Compare the product formula against the dense oracle for every momentum
/// pair in every sector `m = 1..=l`, and check sector completeness of the
/// formula values.
pub fn ed_sector_sweep(l: usize) -> Result<EdSweep, XxChainError> {
    if l > MAX_ED_SITES || l == 0 || l % 2 != 0 {
        return Err(XxChainError::InvalidSpec("dense sweep needs even l <= 8"));
    }
    // Per particle number: basis, Hamiltonian, and certified Slater states.
    let mut sector_states: Vec<(SectorBasis, Vec<(MomentumSet, DVector<Complex64>)>)> =
        Vec::with_capacity(l + 1);
    let mut worst_residual = 0.0f64;
    for n in 0..=l {
        let basis = SectorBasis::new(l, n);
        let h = build_h(&basis);
        let grid = Grid::natural_for(n);
        let mut states = Vec::new();
        for subset in index_subsets(l, n) {
            let set = MomentumSet::new(l, grid, subset)?;
            let v = slater_vector(&basis, &set.momenta());
            let r = residual(&h, &v, slater_energy(&set.momenta()));
            if r > RESIDUAL_TOL {
                return Err(XxChainError::EigenstateCertification(r));
            }
            worst_residual = worst_residual.max(r);
            states.push((set, v));
        }
        sector_states.push((basis, states));
    }
    let mut worst_formfactor_dev = 0.0f64;
    let mut worst_completeness_dev = 0.0f64;
    let mut pairs = 0usize;
    for m in 1..=l {
        let (basis_p, states_p) = &sector_states[m];
        let (basis_q, states_q) = &sector_states[m - 1];
        for (pset, vp) in states_p {
            let lowered = sigma_minus_0(basis_p, basis_q, vp);
            let mut total = 0.0f64;
            for (qset, vq) in states_q {
                let ed_value = vq.dotc(&lowered);
                let formula = formfactor(pset, qset)?;
                worst_formfactor_dev =
                    worst_formfactor_dev.max(libm::fabs(formula.norm() - ed_value.norm()));
                total += formula.norm_sqr();
                pairs += 1;
            }
            // Ground or excited alike: the lowering operator resolves to
            // density m/l on any eigenstate of the sector.
            worst_completeness_dev =
                worst_completeness_dev.max(libm::fabs(total - m as f64 / l as f64));
        }
    }
    Ok(EdSweep { worst_formfactor_dev, worst_completeness_dev, worst_residual, pairs })
}

/// Blind cross-check: diagonalize the dense sector matrices with a generic
/// symmetric eigensolver, cluster degenerate levels, and compare the
/// gauge-invariant Frobenius norms of `s^-_0` blocks between level pairs
/// against the same norms from the Slater construction.  Returns the worst
/// deviation found (spectra included).
pub fn ed_blind_block_check(l: usize, m: usize) -> Result<f64, XxChainError> {
    if l > MAX_ED_SITES || l == 0 || l % 2 != 0 {
        return Err(XxChainError::InvalidSpec("dense check needs even l <= 8"));
    }
    if m == 0 || m > l {
        return Err(XxChainError::InvalidSpec("sector out of range"));
    }
    let basis_p = SectorBasis::new(l, m);
    let basis_q = SectorBasis::new(l, m - 1);
    let hp = build_h(&basis_p);
    let hq = build_h(&basis_q);

    let eig_p = hp.clone().symmetric_eigen();
    let eig_q = hq.clone().symmetric_eigen();

    // Slater side: states, energies, and the full sigma block.
    let collect = |n: usize, basis: &SectorBasis| -> Result<SlaterSide, XxChainError> {
        let h = build_h(basis);
        let grid = Grid::natural_for(n);
        let mut energies = Vec::new();
        let mut vectors = Vec::new();
        for subset in index_subsets(l, n) {
            let set = MomentumSet::new(l, grid, subset)?;
            let ks = set.momenta();
            let v = slater_vector(basis, &ks);
            let r = residual(&h, &v, slater_energy(&ks));
            if r > RESIDUAL_TOL {
                return Err(XxChainError::EigenstateCertification(r));
            }
            energies.push(slater_energy(&ks));
            vectors.push(v);
        }
        Ok(SlaterSide { energies, vectors })
    };
    let slater_p = collect(m, &basis_p)?;
    let slater_q = collect(m - 1, &basis_q)?;

    // Spectrum multisets must agree level by level.
    let mut worst = 0.0f64;
    let spectrum_dev = |blind: &[f64], slater: &[f64]| -> f64 {
        let mut a: Vec<f64> = blind.to_vec();
        let mut b: Vec<f64> = slater.to_vec();
        a.sort_unstable_by(|x, y| x.partial_cmp(y).expect("finite"));
        b.sort_unstable_by(|x, y| x.partial_cmp(y).expect("finite"));
        a.iter().zip(&b).map(|(x, y)| libm::fabs(x - y)).fold(0.0, f64::max)
    };
    worst = worst.max(spectrum_dev(eig_p.eigenvalues.as_slice(), &slater_p.energies));
    worst = worst.max(spectrum_dev(eig_q.eigenvalues.as_slice(), &slater_q.energies));

    // Cluster levels into degenerate groups (gaps here are O(1), far above
    // the 1e-8 threshold).
    let clusters_p_blind = cluster(eig_p.eigenvalues.as_slice());
    let clusters_q_blind = cluster(eig_q.eigenvalues.as_slice());
    let clusters_p_slater = cluster(&slater_p.energies);
    let clusters_q_slater = cluster(&slater_q.energies);

    // Blind sigma block between eigenvector columns (real arithmetic).
    let dim_q = basis_q.dim();
    let mut sigma_real = DMatrix::<f64>::zeros(dim_q, basis_p.dim());
    for (i, &mask) in basis_p.masks.iter().enumerate() {
        if mask & 1 == 1 {
            sigma_real[(basis_q.pos[(mask & !1u32) as usize], i)] = 1.0;
        }
    }
    let block_blind = eig_q.eigenvectors.transpose() * &sigma_real * &eig_p.eigenvectors;

    // Slater sigma block.
    let block_slater = DMatrix::<Complex64>::from_fn(
        slater_q.vectors.len(),
        slater_p.vectors.len(),
        |qi, pi| {
            let lowered = sigma_minus_0(&basis_p, &basis_q, &slater_p.vectors[pi]);
            slater_q.vectors[qi].dotc(&lowered)
        },
    );

    for (cq_blind, cq_slater) in pair_clusters(&clusters_q_blind, &clusters_q_slater)? {
        for (cp_blind, cp_slater) in pair_clusters(&clusters_p_blind, &clusters_p_slater)? {
            let mut f_blind = 0.0f64;
            for &qi in cq_blind {
                for &pi in cp_blind {
                    f_blind += block_blind[(qi, pi)] * block_blind[(qi, pi)];
                }
            }
            let mut f_slater = 0.0f64;
            for &qi in cq_slater {
                for &pi in cp_slater {
                    f_slater += block_slater[(qi, pi)].norm_sqr();
                }
            }
            worst = worst.max(libm::fabs(libm::sqrt(f_blind) - libm::sqrt(f_slater)));
        }
    }
    Ok(worst)
}

struct SlaterSide {
    energies: Vec<f64>,
    vectors: Vec<DVector<Complex64>>,
}

/// Group indices of (unsorted) energies into degenerate clusters.
fn cluster(energies: &[f64]) -> Vec<(f64, Vec<usize>)> {
    const TOL: f64 = 1e-8;
    let mut order: Vec<usize> = (0..energies.len()).collect();
    order.sort_unstable_by(|&a, &b| energies[a].partial_cmp(&energies[b]).expect("finite"));
    let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
    for idx in order {
        match out.last_mut() {
            Some((center, members)) if libm::fabs(energies[idx] - *center) < TOL => {
                members.push(idx);
            }
            _ => out.push((energies[idx], vec![idx])),
        }
    }
    out
}

/// Match blind clusters to Slater clusters by center energy.
fn pair_clusters<'a>(
    blind: &'a [(f64, Vec<usize>)],
    slater: &'a [(f64, Vec<usize>)],
) -> Result<Vec<(&'a [usize], &'a [usize])>, XxChainError> {
    if blind.len() != slater.len() {
        return Err(XxChainError::EigenstateCertification(f64::INFINITY));
    }
    let mut out = Vec::with_capacity(blind.len());
    for ((eb, ib), (es, is_)) in blind.iter().zip(slater) {
        if libm::fabs(eb - es) > 1e-6 || ib.len() != is_.len() {
            return Err(XxChainError::EigenstateCertification(libm::fabs(eb - es)));
        }
        out.push((ib.as_slice(), is_.as_slice()));
    }
    Ok(out)
}
