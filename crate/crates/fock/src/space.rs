//! Graded basis layout for symmetric and antisymmetric particle spaces.
//!
//! Symmetric sectors are indexed by occupation vectors in lexicographic
//! order, antisymmetric sectors by mode bitmasks in increasing order; both
//! orders are deterministic and stable across runs.

use num_complex::Complex64;
use oplab_core::mat::{vec_norm, C_ZERO};
use thiserror::Error;

/// Largest tensor-power dimension `d^n` the dense symmetrizer will build,
/// and the cap on a graded space's total dimension.
pub const DIM_CAP: usize = 4096;

#[derive(Debug, Error)]
pub enum FockError {
    #[error(transparent)]
    Mat(#[from] oplab_core::mat::MatError),
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("one-particle dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("operation requires {expected} statistics")]
    WrongStatistics { expected: &'static str },
    #[error("{particles} particles exceed the space cap {cap}")]
    SectorOverflow { particles: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bose,
    Fermi,
}

/// Immutable layout of a graded particle space. Bosonic spaces are capped
/// at `max_particles`; fermionic spaces are exact with one sector per
/// subset of modes.
#[derive(Debug, Clone)]
pub struct FockSpace {
    d: usize,
    max_particles: usize,
    statistics: Statistics,
    sector_dims: Vec<usize>,
    sector_offsets: Vec<usize>,
    total_dim: usize,
    // per sector: occupation vectors (lex order) or mode masks (ascending)
    bose_basis: Vec<Vec<Vec<u32>>>,
    fermi_basis: Vec<Vec<u64>>,
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

// occupation vectors (k_1..k_d) with sum n, ascending lexicographically
fn occupations(d: usize, n: usize) -> Vec<Vec<u32>> {
    if d == 1 {
        return vec![vec![n as u32]];
    }
    let mut out = Vec::with_capacity(binomial(d + n - 1, n));
    for first in 0..=n {
        for mut rest in occupations(d - 1, n - first) {
            let mut occ = Vec::with_capacity(d);
            occ.push(first as u32);
            occ.append(&mut rest);
            out.push(occ);
        }
    }
    out
}

impl FockSpace {
    pub fn bose(d: usize, max_particles: usize) -> Result<Self, FockError> {
        assert!(d >= 1, "one-particle dimension must be positive");
        let sector_dims: Vec<usize> =
            (0..=max_particles).map(|n| binomial(d + n - 1, n)).collect();
        let total_dim: usize = sector_dims.iter().sum();
        if total_dim > DIM_CAP {
            return Err(FockError::DimensionCapExceeded { dim: total_dim, cap: DIM_CAP });
        }
        let bose_basis: Vec<Vec<Vec<u32>>> =
            (0..=max_particles).map(|n| occupations(d, n)).collect();
        let mut sector_offsets = Vec::with_capacity(sector_dims.len());
        let mut acc = 0;
        for &s in &sector_dims {
            sector_offsets.push(acc);
            acc += s;
        }
        Ok(FockSpace {
            d,
            max_particles,
            statistics: Statistics::Bose,
            sector_dims,
            sector_offsets,
            total_dim,
            bose_basis,
            fermi_basis: Vec::new(),
        })
    }

    pub fn fermi(d: usize) -> Result<Self, FockError> {
        assert!(d >= 1, "one-particle dimension must be positive");
        let total_dim = 1usize << d;
        if total_dim > DIM_CAP {
            return Err(FockError::DimensionCapExceeded { dim: total_dim, cap: DIM_CAP });
        }
        let sector_dims: Vec<usize> = (0..=d).map(|n| binomial(d, n)).collect();
        let mut fermi_basis: Vec<Vec<u64>> = vec![Vec::new(); d + 1];
        for mask in 0..total_dim as u64 {
            fermi_basis[mask.count_ones() as usize].push(mask);
        }
        let mut sector_offsets = Vec::with_capacity(sector_dims.len());
        let mut acc = 0;
        for &s in &sector_dims {
            sector_offsets.push(acc);
            acc += s;
        }
        Ok(FockSpace {
            d,
            max_particles: d,
            statistics: Statistics::Fermi,
            sector_dims,
            sector_offsets,
            total_dim,
            bose_basis: Vec::new(),
            fermi_basis,
        })
    }

    pub fn one_particle_dim(&self) -> usize {
        self.d
    }

    pub fn max_particles(&self) -> usize {
        self.max_particles
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn sector_dims(&self) -> &[usize] {
        &self.sector_dims
    }

    pub fn sector_offset(&self, n: usize) -> usize {
        self.sector_offsets[n]
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn same_layout(&self, other: &FockSpace) -> bool {
        self.d == other.d
            && self.max_particles == other.max_particles
            && self.statistics == other.statistics
    }

    /// Sector number of a global basis index.
    pub fn sector_of(&self, index: usize) -> usize {
        debug_assert!(index < self.total_dim);
        let mut n = 0;
        while n + 1 < self.sector_offsets.len() && self.sector_offsets[n + 1] <= index {
            n += 1;
        }
        n
    }

    pub(crate) fn occupation(&self, sector: usize, pos: usize) -> &[u32] {
        &self.bose_basis[sector][pos]
    }

    pub(crate) fn mask(&self, sector: usize, pos: usize) -> u64 {
        self.fermi_basis[sector][pos]
    }

    /// Global index of an occupation vector (lex-ordered sectors make the
    /// per-sector list binary-searchable).
    pub(crate) fn occupation_index(&self, occ: &[u32]) -> usize {
        let n: u32 = occ.iter().sum();
        let sector = n as usize;
        let pos = self.bose_basis[sector]
            .binary_search_by(|probe| probe.as_slice().cmp(occ))
            .expect("occupation vector enumerated at construction");
        self.sector_offsets[sector] + pos
    }

    pub(crate) fn mask_index(&self, mask: u64) -> usize {
        let sector = mask.count_ones() as usize;
        let pos = self.fermi_basis[sector]
            .binary_search(&mask)
            .expect("mask enumerated at construction");
        self.sector_offsets[sector] + pos
    }

    /// The vacuum: amplitude one in the zero-particle sector.
    pub fn vacuum(&self) -> FockVector {
        let mut amps = vec![C_ZERO; self.total_dim];
        amps[0] = Complex64::new(1.0, 0.0);
        FockVector { space: self.clone(), amps }
    }

    /// Expansion of a sector's graded amplitudes in the full tensor power
    /// `(C^d)^{⊗n}`, as the normalized (anti)symmetric basis vectors.
    pub fn embed_sector(&self, sector: usize, amps: &[Complex64]) -> Result<Vec<Complex64>, FockError> {
        if amps.len() != self.sector_dims[sector] {
            return Err(FockError::DimMismatch {
                left: amps.len(),
                right: self.sector_dims[sector],
            });
        }
        let n = sector;
        let dim = self
            .d
            .checked_pow(n as u32)
            .ok_or(FockError::DimensionCapExceeded { dim: usize::MAX, cap: DIM_CAP })?;
        if dim > DIM_CAP {
            return Err(FockError::DimensionCapExceeded { dim, cap: DIM_CAP });
        }
        if n == 0 {
            return Ok(vec![amps[0]]);
        }
        let mut out = vec![C_ZERO; dim];
        let mut tuple = vec![0usize; n];
        for flat in 0..dim {
            let mut rem = flat;
            for slot in (0..n).rev() {
                tuple[slot] = rem % self.d;
                rem /= self.d;
            }
            match self.statistics {
                Statistics::Bose => {
                    let mut occ = vec![0u32; self.d];
                    for &i in &tuple {
                        occ[i] += 1;
                    }
                    let pos = self.bose_basis[n]
                        .binary_search_by(|probe| probe.as_slice().cmp(&occ))
                        .expect("occupation vector enumerated at construction");
                    // normalized symmetric vector carries sqrt(∏k!/n!) on
                    // each distinct arrangement of the mode word
                    let mut coeff = 1.0;
                    for &k in &occ {
                        for j in 1..=k as usize {
                            coeff *= j as f64;
                        }
                    }
                    for j in 1..=n {
                        coeff /= j as f64;
                    }
                    out[flat] = amps[pos] * coeff.sqrt();
                }
                Statistics::Fermi => {
                    let mut mask: u64 = 0;
                    let mut dup = false;
                    for &i in &tuple {
                        if mask & (1 << i) != 0 {
                            dup = true;
                            break;
                        }
                        mask |= 1 << i;
                    }
                    if dup {
                        continue;
                    }
                    let pos = self.fermi_basis[n]
                        .binary_search(&mask)
                        .expect("mask enumerated at construction");
                    // parity of the permutation sorting the tuple
                    let mut sign = 1.0;
                    for a in 0..n {
                        for b in (a + 1)..n {
                            if tuple[a] > tuple[b] {
                                sign = -sign;
                            }
                        }
                    }
                    let mut fact = 1.0;
                    for j in 1..=n {
                        fact *= j as f64;
                    }
                    out[flat] = amps[pos] * (sign / fact.sqrt());
                }
            }
        }
        Ok(out)
    }
}

/// Amplitudes over the graded basis of a particular space.
#[derive(Debug, Clone)]
pub struct FockVector {
    space: FockSpace,
    amps: Vec<Complex64>,
}

impl FockVector {
    pub fn new(space: &FockSpace, amps: Vec<Complex64>) -> Result<Self, FockError> {
        if amps.len() != space.total_dim() {
            return Err(FockError::DimMismatch { left: amps.len(), right: space.total_dim() });
        }
        Ok(FockVector { space: space.clone(), amps })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn sector(&self, n: usize) -> &[Complex64] {
        let off = self.space.sector_offsets[n];
        &self.amps[off..off + self.space.sector_dims[n]]
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amps)
    }
}

