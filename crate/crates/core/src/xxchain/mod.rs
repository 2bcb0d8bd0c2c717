//! Finite XX chains: eigenstate bookkeeping, the exact formfactor product
//! formula, shifted and particle-hole excited configurations, and the
//! brute-force oracles everything else is validated against.
//!
//! The chain is `H = sum_j (sx_j sx_{j+1} + sy_j sy_{j+1})` with periodic
//! boundary conditions.  A sector with `n` up spins maps to `n` free
//! fermions whose momenta live on the integer grid `2 pi k / L` for odd `n`
//! and on the half-integer grid `2 pi (k + 1/2) / L` for even `n` (the
//! Jordan-Wigner wrap bond flips sign with fermion parity).

mod ed;

pub use ed::{ed_oracle_formfactor, ed_blind_block_check, ed_sector_sweep, EdSweep};

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Errors from chain-state construction and evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum XxChainError {
    /// Malformed chain parameters.
    InvalidSpec(&'static str),
    /// Momentum indices repeat after canonicalization.
    DuplicateMomentum,
    /// Formfactor operands have incompatible sizes.
    SizeMismatch,
    /// Formfactor operands live on the same grid (the matrix element needs
    /// complementary grids, which also keeps every denominator nonzero).
    GridMismatch,
    /// Requested shift index is too large for the chain length.
    ShiftTooLarge,
    /// A particle or hole collides with an existing occupation.
    OverlappingExcitations,
    /// Particle/hole offsets must stay well below the chain length.
    OffsetOutOfRange,
    /// The exact-diagonalization oracle could not certify an eigenstate:
    /// carries the residual norm it measured.
    EigenstateCertification(f64),
}

impl fmt::Display for XxChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XxChainError::InvalidSpec(what) => write!(f, "invalid chain spec: {what}"),
            XxChainError::DuplicateMomentum => write!(f, "duplicate momentum index"),
            XxChainError::SizeMismatch => write!(f, "momentum set sizes are incompatible"),
            XxChainError::GridMismatch => write!(f, "momentum sets must use complementary grids"),
            XxChainError::ShiftTooLarge => write!(f, "shift index too large for this chain"),
            XxChainError::OverlappingExcitations => {
                write!(f, "particle/hole offsets overlap an occupied or vacated index")
            }
            XxChainError::OffsetOutOfRange => write!(f, "particle/hole offset out of range"),
            XxChainError::EigenstateCertification(r) => {
                write!(f, "eigenstate certification failed, residual {r:e}")
            }
        }
    }
}

/// Chain geometry: `l` sites, `m` up spins in the reference sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSpec {
    pub l: usize,
    pub m: usize,
}

impl ChainSpec {
    pub fn new(l: usize, m: usize) -> Result<Self, XxChainError> {
        if l == 0 || l % 2 != 0 {
            return Err(XxChainError::InvalidSpec("chain length must be even and positive"));
        }
        if m > l {
            return Err(XxChainError::InvalidSpec("particle number exceeds chain length"));
        }
        Ok(ChainSpec { l, m })
    }

    /// The half-filled chain the asymptotic analysis is built around.
    pub fn half_filled(l: usize) -> Result<Self, XxChainError> {
        Self::new(l, l / 2)
    }
}

/// Momentum quantization grid of a sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    Integer,
    HalfInteger,
}

impl Grid {
    pub fn offset(self) -> f64 {
        match self {
            Grid::Integer => 0.0,
            Grid::HalfInteger => 0.5,
        }
    }

    /// The grid realized by an `n`-fermion sector of the periodic chain.
    pub fn natural_for(n: usize) -> Grid {
        if n % 2 == 1 {
            Grid::Integer
        } else {
            Grid::HalfInteger
        }
    }
}

/// Which of the two sectors connected by a single spin flip is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// The `m`-particle sector.
    M,
    /// The `(m-1)`-particle sector.
    MMinus1,
}

/// A chain eigenstate: a sorted set of distinct momentum indices on one grid.
///
/// Indices are stored canonically in `0..l` (momenta in `[0, 2pi)`); the
/// product formula is exactly invariant under shifting any index by `l`, so
/// the representative choice is pure bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentumSet {
    l: usize,
    grid: Grid,
    indices: Vec<i64>,
}

impl MomentumSet {
    pub fn new(
        l: usize,
        grid: Grid,
        raw_indices: impl IntoIterator<Item = i64>,
    ) -> Result<Self, XxChainError> {
        if l == 0 || l % 2 != 0 {
            return Err(XxChainError::InvalidSpec("chain length must be even and positive"));
        }
        let mut indices: Vec<i64> = raw_indices
            .into_iter()
            .map(|n| n.rem_euclid(l as i64))
            .collect();
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(XxChainError::DuplicateMomentum);
        }
        if indices.len() > l {
            return Err(XxChainError::InvalidSpec("more momenta than orbitals"));
        }
        Ok(MomentumSet { l, grid, indices })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Canonical indices, sorted ascending in `0..l`.
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// Momenta `2 pi (n + offset) / l` in `[0, 2pi)`.
    pub fn momenta(&self) -> Vec<f64> {
        let l = self.l as f64;
        self.indices
            .iter()
            .map(|&n| 2.0 * PI * (n as f64 + self.grid.offset()) / l)
            .collect()
    }

    /// Momenta mapped to representatives in `(-pi, pi]`, for display.
    pub fn momenta_centered(&self) -> Vec<f64> {
        let mut ks: Vec<f64> = self
            .momenta()
            .into_iter()
            .map(|k| if k > PI { k - 2.0 * PI } else { k })
            .collect();
        ks.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite momenta"));
        ks
    }

    /// Every index shifted by the same integer (one unit = `2 pi / l`).
    pub fn translated(&self, shift: i64) -> MomentumSet {
        let mut s = self.clone();
        for n in &mut s.indices {
            *n = (*n + shift).rem_euclid(self.l as i64);
        }
        s.indices.sort_unstable();
        s
    }
}

/// Ground configuration of the requested sector: the symmetric Fermi block
/// with momenta `(2 pi / l)(i - (n+1)/2)`, `i = 1..=n`, which lands on the
/// sector's natural grid for either parity of `n`.
pub fn ground_state_momenta(spec: ChainSpec, sector: Sector) -> Result<MomentumSet, XxChainError> {
    let n = match sector {
        Sector::M => spec.m,
        Sector::MMinus1 => {
            if spec.m == 0 {
                return Err(XxChainError::InvalidSpec("no particles to remove"));
            }
            spec.m - 1
        }
    };
    momentum_set_from_doubled(spec.l, ground_doubled(n))
}

/// Doubled-index ground block: positions `2i - (n+1)` (units `pi / l`).
fn ground_doubled(n: usize) -> Vec<i64> {
    (1..=n as i64).map(|i| 2 * i - (n as i64 + 1)).collect()
}

/// Convert doubled-index positions (parity = grid) to a `MomentumSet`.
fn momentum_set_from_doubled(l: usize, doubled: Vec<i64>) -> Result<MomentumSet, XxChainError> {
    if doubled.is_empty() {
        return MomentumSet::new(l, Grid::HalfInteger, core::iter::empty());
    }
    let parity = doubled[0].rem_euclid(2);
    if doubled.iter().any(|d| d.rem_euclid(2) != parity) {
        return Err(XxChainError::InvalidSpec("mixed-parity doubled indices"));
    }
    let grid = if parity == 0 { Grid::Integer } else { Grid::HalfInteger };
    MomentumSet::new(l, grid, doubled.iter().map(|d| (d - parity) / 2))
}

/// The exact matrix element `<{q}| s^-_0 |{p}>` for eigenstates of sizes
/// `M` and `M-1` on complementary grids:
///
/// `psi = (1/sqrt L) (i/L)^(M-1) e^(i sum q)
///        prod_{i<j} sin((p_i-p_j)/2) prod_{i<j} sin((q_i-q_j)/2)
///        / prod_{i,j} sin((p_i-q_j)/2)`
///
/// accumulated in log-magnitude plus sign/phase form so that chains up to a
/// few thousand sites stay inside f64 range.
///
/// The value of the products depends on the ordering convention for each
/// set: permuting a set flips the sign by the permutation parity, and while
/// a 2 pi shift of any single momentum leaves the value invariant, the
/// re-sort it forces does not.  We therefore evaluate on the centered
/// representatives in `(-pi, pi]` sorted ascending, the ordering the Fermi
/// sea constructions are written in; `|psi|` is representative-independent
/// either way.
pub fn formfactor(p: &MomentumSet, q: &MomentumSet) -> Result<Complex64, XxChainError> {
    if p.l != q.l || p.len() != q.len() + 1 {
        return Err(XxChainError::SizeMismatch);
    }
    if p.grid == q.grid {
        return Err(XxChainError::GridMismatch);
    }
    Ok(formfactor_from_momenta(p.l, &p.momenta_centered(), &q.momenta_centered()))
}

/// Product formula over explicit momenta; exactly invariant under shifting
/// any single momentum by `2 pi` (each such shift flips matching sign pairs
/// in numerator and denominator).
pub(crate) fn formfactor_from_momenta(l: usize, ps: &[f64], qs: &[f64]) -> Complex64 {
    let lf = l as f64;
    let m = ps.len();
    let mut lnmag = -0.5 * libm::log(lf) - (m as f64 - 1.0) * libm::log(lf);
    let mut sign = 1.0f64;
    let mut phase = (m as f64 - 1.0) * PI / 2.0;
    for q in qs {
        phase += q;
    }
    let mut pair = |v: f64, upstairs: bool| {
        if upstairs {
            lnmag += libm::log(libm::fabs(v));
        } else {
            lnmag -= libm::log(libm::fabs(v));
        }
        if v < 0.0 {
            sign = -sign;
        }
    };
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            pair(libm::sin(0.5 * (ps[i] - ps[j])), true);
        }
    }
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            pair(libm::sin(0.5 * (qs[i] - qs[j])), true);
        }
    }
    for pk in ps {
        for qk in qs {
            pair(libm::sin(0.5 * (pk - qk)), false);
        }
    }
    let mag = sign * libm::exp(lnmag);
    Complex64::new(mag * libm::cos(phase), mag * libm::sin(phase))
}

/// A formfactor together with the states it connects.
#[derive(Debug, Clone)]
pub struct FormfactorValue {
    pub value: Complex64,
    pub p: MomentumSet,
    pub q: MomentumSet,
}

impl FormfactorValue {
    pub fn compute(p: MomentumSet, q: MomentumSet) -> Result<Self, XxChainError> {
        let value = formfactor(&p, &q)?;
        debug_assert!(value.norm() <= 1.0 + 1e-9, "matrix element of a bounded operator");
        Ok(FormfactorValue { value, p, q })
    }
}

/// `psi_m`: the formfactor from the `m`-sector ground state to the
/// `(m-1)`-sector ground block shifted rigidly by `m` momentum units.
pub fn shifted_ground_formfactor(spec: ChainSpec, m_shift: usize) -> Result<Complex64, XxChainError> {
    let q = shifted_ground_momenta(spec, m_shift)?;
    let p = ground_state_momenta(spec, Sector::M)?;
    formfactor(&p, &q)
}

/// The shifted lower-sector block itself.
pub fn shifted_ground_momenta(spec: ChainSpec, m_shift: usize) -> Result<MomentumSet, XxChainError> {
    if 8 * m_shift >= spec.l {
        return Err(XxChainError::ShiftTooLarge);
    }
    if spec.m == 0 {
        return Err(XxChainError::InvalidSpec("no particles to remove"));
    }
    let n = spec.m - 1;
    let doubled: Vec<i64> = ground_doubled(n)
        .into_iter()
        .map(|d| d + 2 * m_shift as i64)
        .collect();
    momentum_set_from_doubled(spec.l, doubled)
}

/// Excited-state descriptor: a rigid shift `m` of the lower-sector block
/// plus particle-hole pairs at the right (top) and left (bottom) Fermi
/// edges.  Offsets count momentum units `2 pi / l`; a pair `(p, h)` moves
/// the occupied index `h` steps inside the edge to `p` steps outside it
/// (`p >= 1`, `h >= 0`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParticleHoleConfig {
    pub m_shift: usize,
    pub right: Vec<(u32, u32)>,
    pub left: Vec<(u32, u32)>,
}

impl ParticleHoleConfig {
    pub fn shift_only(m_shift: usize) -> Self {
        ParticleHoleConfig { m_shift, right: Vec::new(), left: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.right.is_empty() && self.left.is_empty()
    }
}

/// Build the excited lower-sector state described by `config`.
pub fn particle_hole_state(
    spec: ChainSpec,
    config: &ParticleHoleConfig,
) -> Result<MomentumSet, XxChainError> {
    if 8 * config.m_shift >= spec.l {
        return Err(XxChainError::ShiftTooLarge);
    }
    if spec.m <= 1 {
        return Err(XxChainError::InvalidSpec("particle-hole pairs need a nonempty block"));
    }
    let n = spec.m - 1;
    let mut doubled: Vec<i64> = ground_doubled(n)
        .into_iter()
        .map(|d| d + 2 * config.m_shift as i64)
        .collect();
    let top = *doubled.last().expect("nonempty block");
    let bot = doubled[0];
    let mut apply = |remove: i64, insert: i64| -> Result<(), XxChainError> {
        match doubled.iter().position(|&d| d == remove) {
            Some(at) => {
                doubled.remove(at);
            }
            None => return Err(XxChainError::OverlappingExcitations),
        }
        if doubled.contains(&insert) {
            return Err(XxChainError::OverlappingExcitations);
        }
        doubled.push(insert);
        Ok(())
    };
    for &(p, h) in &config.right {
        check_offset(spec.l, p, h)?;
        apply(top - 2 * h as i64, top + 2 * p as i64)?;
    }
    for &(p, h) in &config.left {
        check_offset(spec.l, p, h)?;
        apply(bot + 2 * h as i64, bot - 2 * p as i64)?;
    }
    doubled.sort_unstable();
    momentum_set_from_doubled(spec.l, doubled)
}

fn check_offset(l: usize, p: u32, h: u32) -> Result<(), XxChainError> {
    if p == 0 || 8 * p as usize >= l || 8 * h as usize >= l {
        return Err(XxChainError::OffsetOutOfRange);
    }
    Ok(())
}

/// Formfactor from the `m`-sector ground state to a particle-hole excited
/// lower-sector state.
pub fn particle_hole_formfactor(
    spec: ChainSpec,
    config: &ParticleHoleConfig,
) -> Result<Complex64, XxChainError> {
    let q = particle_hole_state(spec, config)?;
    let p = ground_state_momenta(spec, Sector::M)?;
    formfactor(&p, &q)
}

/// Finite-chain ground-state correlator `<s^+_x s^-_0>` at half filling,
/// from the `x cross x` determinant of free-fermion two-point functions
/// `2 C(i-1-j) - delta_{i-1,j}` with
/// `C(d) = sin(pi d / 2) / (l sin(pi d / l))`, `C(0) = 1/2`.
pub fn finite_correlator(spec: ChainSpec, x: usize) -> Result<f64, XxChainError> {
    if 2 * spec.m != spec.l {
        return Err(XxChainError::InvalidSpec("finite correlator assumes half filling"));
    }
    if x == 0 || 2 * x >= spec.l {
        return Err(XxChainError::InvalidSpec("separation must satisfy 0 < x < l/2"));
    }
    let l = spec.l as f64;
    let kernel = |d: i64| -> f64 {
        if d == 0 {
            return 0.5;
        }
        let a = d.unsigned_abs() as i64;
        if a % 2 == 0 {
            return 0.0;
        }
        // sin(pi d / 2) = (-1)^((|d|-1)/2) on odd |d|; even in d overall
        let num = if ((a - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        num / (l * libm::sin(PI * a as f64 / l))
    };
    let mat = DMatrix::<f64>::from_fn(x, x, |i, j| {
        let d = i as i64 - j as i64 - 1;
        let delta = if d == 0 { 1.0 } else { 0.0 };
        2.0 * kernel(d) - delta
    });
    Ok(0.5 * mat.lu().determinant())
}

#[cfg(test)]
mod tests;
