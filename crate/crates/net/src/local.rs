//! Local algebras of regions and the lattice-net axiom checks.
//!
//! The algebra of a region is the span of Pauli strings supported on its
//! points. That span is never materialized: membership questions go
//! through the closed-form orthogonal projection onto it (partial trace
//! over the complementary legs, re-tensored with normalized identity),
//! and completeness questions stream over strings one at a time.

use num_complex::Complex64;

use oplab_core::mat::{comm, pauli, CMatrix, C_ZERO};
use oplab_core::tol;

use crate::site::{CausalSite, NetError, Region};

// bit position of point p in a Hilbert index over n legs: first point on
// the slowest bit
fn bit_pos(n: usize, p: usize) -> usize {
    n - 1 - p
}

/// Dense Pauli string over `n_points` legs: the listed (point, axis)
/// factors (axes 1..3; 0 is the identity), identity on every other leg.
/// Later entries for the same point win.
pub fn pauli_string(n_points: usize, axes: &[(usize, u8)]) -> Result<CMatrix, NetError> {
    let mut per_leg = vec![0u8; n_points];
    for &(p, a) in axes {
        if p >= n_points {
            return Err(NetError::PointOutOfRange { index: p, len: n_points });
        }
        if a > 3 {
            return Err(NetError::PointOutOfRange { index: a as usize, len: 4 });
        }
        per_leg[p] = a;
    }
    let mut m = CMatrix::identity(1);
    for &a in &per_leg {
        m = m.kron(&pauli(a as usize));
    }
    Ok(m)
}

/// The local algebra of a region: generated by the single-point Pauli
/// operators at its points, spanning all 4^points Pauli strings supported
/// there.
#[derive(Debug, Clone)]
pub struct RegionAlgebra {
    region: Region,
    generators: Vec<CMatrix>,
}

impl RegionAlgebra {
    pub fn region(&self) -> &Region {
        &self.region
    }

    /// Three Pauli generators per point, point-major.
    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// Linear dimension of the span, 4^points.
    pub fn span_dim(&self) -> usize {
        1usize << (2 * self.region.len())
    }
}

pub fn algebra_of(r: &Region) -> RegionAlgebra {
    let n = r.site().len();
    let mut generators = Vec::with_capacity(3 * r.len());
    for &p in r.indices() {
        for axis in 1..=3u8 {
            generators.push(
                pauli_string(n, &[(p, axis)]).expect("region indices are validated"),
            );
        }
    }
    RegionAlgebra { region: r.clone(), generators }
}

// scatter a compact bit pattern onto the listed point positions
fn scatter(n: usize, positions: &[usize], pattern: usize) -> usize {
    let mut out = 0usize;
    for (k, &p) in positions.iter().enumerate() {
        let bit = (pattern >> (positions.len() - 1 - k)) & 1;
        out |= bit << bit_pos(n, p);
    }
    out
}

/// Orthogonal projection (Hilbert-Schmidt) of a matrix onto the span of
/// the region's Pauli strings: partial trace over the complementary legs,
/// re-tensored with the normalized identity there.
pub fn conditional_expectation(r: &Region, m: &CMatrix) -> Result<CMatrix, NetError> {
    let site = r.site();
    if m.dim() != site.dim() {
        return Err(NetError::DimMismatch { left: m.dim(), right: site.dim() });
    }
    let n = site.len();
    let inside = r.indices().to_vec();
    let outside: Vec<usize> = (0..n).filter(|k| !inside.contains(k)).collect();
    let r_count = 1usize << inside.len();
    let c_count = 1usize << outside.len();
    let r_idx: Vec<usize> = (0..r_count).map(|a| scatter(n, &inside, a)).collect();
    let c_idx: Vec<usize> = (0..c_count).map(|c| scatter(n, &outside, c)).collect();
    let mut out = CMatrix::zeros(m.dim());
    let weight = 1.0 / c_count as f64;
    for a in 0..r_count {
        for b in 0..r_count {
            let mut acc = C_ZERO;
            for &c in &c_idx {
                acc += m.at(r_idx[a] | c, r_idx[b] | c);
            }
            let avg = acc * weight;
            for &c in &c_idx {
                out.set(r_idx[a] | c, r_idx[b] | c, avg);
            }
        }
    }
    Ok(out)
}

/// Relative Parseval defect of the full Pauli-string frame on a site:
/// |sum_s |<P_s, m>|^2 / dim - |m|_F^2| divided by max(1, |m|_F^2).
/// Vanishing defect certifies that the strings span everything, i.e. the
/// union of local algebras is the full matrix algebra. Streams over all
/// 4^points strings without storing any.
pub fn parseval_defect(site: &CausalSite, m: &CMatrix) -> Result<f64, NetError> {
    if m.dim() != site.dim() {
        return Err(NetError::DimMismatch { left: m.dim(), right: site.dim() });
    }
    let n = site.len();
    let dim = site.dim();
    let strings = 1usize << (2 * n);
    let mut total = 0.0;
    for s in 0..strings {
        // leg p gets base-4 digit p of s, first leg on the slow digit
        let mut coeff = C_ZERO;
        for i in 0..dim {
            // sparse row walk: each Pauli factor has one entry per row
            let mut j = 0usize;
            let mut entry = Complex64::new(1.0, 0.0);
            for p in 0..n {
                let axis = (s >> (2 * (n - 1 - p))) & 3;
                let pos = bit_pos(n, p);
                let bit = (i >> pos) & 1;
                let (col_bit, factor) = match axis {
                    0 => (bit, Complex64::new(1.0, 0.0)),
                    1 => (1 - bit, Complex64::new(1.0, 0.0)),
                    2 => (1 - bit, Complex64::new(0.0, if bit == 0 { -1.0 } else { 1.0 })),
                    _ => (bit, Complex64::new(if bit == 0 { 1.0 } else { -1.0 }, 0.0)),
                };
                j |= col_bit << pos;
                entry *= factor;
            }
            coeff += entry.conj() * m.at(i, j);
        }
        total += coeff.norm_sqr();
    }
    let frob_sq = m.norm_f().powi(2);
    Ok((total / dim as f64 - frob_sq).abs() / frob_sq.max(1.0))
}

/// Residuals of nested region pairs: how far the inner algebra's
/// generators (and a few products) fall outside the outer algebra's span.
#[derive(Debug, Clone)]
pub struct IsotonyReport {
    /// One residual per input pair, the max over checked elements.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub pass: bool,
}

pub fn check_isotony(pairs: &[(Region, Region)]) -> Result<IsotonyReport, NetError> {
    let mut residuals = Vec::with_capacity(pairs.len());
    for (k, (inner, outer)) in pairs.iter().enumerate() {
        if inner.site() != outer.site() {
            return Err(NetError::SiteMismatch);
        }
        if !inner.is_subset_of(outer) {
            return Err(NetError::NotNested { index: k });
        }
        let gens = algebra_of(inner).generators().to_vec();
        let mut elements: Vec<CMatrix> = vec![CMatrix::identity(inner.site().dim())];
        for w in gens.windows(2) {
            elements.push(&w[0] * &w[1]);
        }
        elements.extend(gens);
        let mut worst = 0.0f64;
        for e in &elements {
            let proj = conditional_expectation(outer, e)?;
            worst = worst.max((&proj - e).norm_f());
        }
        residuals.push(worst);
    }
    let max_residual = residuals.iter().fold(0.0f64, |m, &r| m.max(r));
    Ok(IsotonyReport { residuals, max_residual, pass: max_residual <= tol::NET_ISOTONY_ABS })
}

/// Commutation audit of one region pair.
#[derive(Debug, Clone)]
pub struct CausalityPairReport {
    pub causally_disjoint: bool,
    /// Largest commutator norm over cross generator pairs.
    pub max_commutator: f64,
    /// Generator indices and commutator norm of a noncommuting cross
    /// pair, when one exists. Regions overlapping in spacetime but
    /// sharing no point still commute here (one qubit per point), so a
    /// non-disjoint pair can legitimately have no witness.
    pub witness: Option<(usize, usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct CausalityReport {
    pub pairs: Vec<CausalityPairReport>,
    /// True when every causally disjoint pair commutes within tolerance.
    pub pass: bool,
}

pub fn check_causality(pairs: &[(Region, Region)]) -> Result<CausalityReport, NetError> {
    let mut reports = Vec::with_capacity(pairs.len());
    let mut pass = true;
    for (r1, r2) in pairs {
        if r1.site() != r2.site() {
            return Err(NetError::SiteMismatch);
        }
        let causally_disjoint = r1.causally_disjoint_from(r2);
        let g1 = algebra_of(r1).generators().to_vec();
        let g2 = algebra_of(r2).generators().to_vec();
        let mut max_commutator = 0.0f64;
        let mut witness = None;
        for (i, a) in g1.iter().enumerate() {
            for (j, b) in g2.iter().enumerate() {
                let norm = comm(a, b).op_norm();
                max_commutator = max_commutator.max(norm);
                if witness.is_none() && norm > tol::NET_COMMUTE_ABS {
                    witness = Some((i, j, norm));
                }
            }
        }
        if causally_disjoint && max_commutator > tol::NET_COMMUTE_ABS {
            pass = false;
        }
        reports.push(CausalityPairReport { causally_disjoint, max_commutator, witness });
    }
    Ok(CausalityReport { pairs: reports, pass })
}
