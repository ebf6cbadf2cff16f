//! One-sided Jacobi singular value decomposition. Column rotations preserve
//! small singular values to high relative accuracy, which the rank
//! thresholds elsewhere depend on. Wide inputs go through the adjoint; both
//! unitary factors are completed to full square matrices so null directions
//! are always available.

use num_complex::Complex64;

use crate::mat::{vec_inner, vec_norm, CMatrix, C_ONE, C_ZERO};

const MAX_SWEEPS: usize = 60;
const ORTH_SKIP_REL: f64 = 1e-15;

/// Factorization `a = u * diag(sigma) * v†` with `u` square of size `rows`,
/// `v` square of size `cols`, and `sigma` descending of length
/// `min(rows, cols)`.
#[derive(Debug, Clone)]
pub struct RectSvd {
    pub rows: usize,
    pub cols: usize,
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

impl RectSvd {
    /// Number of singular values above `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        if smax <= 0.0 {
            return 0;
        }
        self.sigma.iter().filter(|&&s| s > rel_tol * smax).count()
    }

    /// Rank with the threshold anchored to `max(sigma_max, floor)`. A block
    /// that is numerically zero against an external scale must report rank
    /// zero; a purely relative cut would promote its rounding noise instead.
    pub fn rank_floor(&self, rel_tol: f64, floor: f64) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0).max(floor);
        if smax <= 0.0 {
            return 0;
        }
        self.sigma.iter().filter(|&&s| s > rel_tol * smax).count()
    }

    /// Ratio of extreme singular values; infinite when the smallest is zero.
    pub fn cond(&self) -> f64 {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        let smin = self.sigma.last().copied().unwrap_or(0.0);
        if smin == 0.0 {
            f64::INFINITY
        } else {
            smax / smin
        }
    }
}

pub fn rect_svd(rows: usize, cols: usize, data: &[Complex64]) -> RectSvd {
    assert_eq!(data.len(), rows * cols, "entry count vs shape");
    if rows < cols {
        let mut adj = vec![C_ZERO; rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                adj[j * rows + i] = data[i * cols + j].conj();
            }
        }
        let s = rect_svd(cols, rows, &adj);
        return RectSvd { rows, cols, u: s.v, sigma: s.sigma, v: s.u };
    }
    // Tall case: orthogonalize the columns pairwise.
    let mut work: Vec<Vec<Complex64>> =
        (0..cols).map(|j| (0..rows).map(|i| data[i * cols + j]).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { C_ONE } else { C_ZERO }).collect())
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: f64 = work[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = work[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = vec_inner(&work[p], &work[q]);
                let r = gamma.norm();
                if r == 0.0 || r <= ORTH_SKIP_REL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let tau = (beta - alpha) / (2.0 * r);
                let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = -sgn / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = (gamma / r) * s;
                for i in 0..rows {
                    let ap = work[p][i];
                    let aq = work[q][i];
                    work[p][i] = ap * c + aq * sp.conj();
                    work[q][i] = aq * c - ap * sp;
                }
                for i in 0..cols {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = vp * c + vq * sp.conj();
                    v[q][i] = vq * c - vp * sp;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = work.iter().map(|c| vec_norm(c)).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let sigma: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let mut ucols: Vec<Vec<Complex64>> = Vec::with_capacity(rows);
    for &idx in &order {
        if norms[idx] > 0.0 {
            ucols.push(work[idx].iter().map(|&z| z / norms[idx]).collect());
        } else {
            ucols.push(vec![C_ZERO; rows]);
        }
    }
    for _ in cols..rows {
        ucols.push(vec![C_ZERO; rows]);
    }
    complete_columns(&mut ucols, rows);
    let vcols: Vec<Vec<Complex64>> = order.iter().map(|&i| v[i].clone()).collect();
    RectSvd {
        rows,
        cols,
        u: CMatrix::from_cols(&ucols),
        sigma,
        v: CMatrix::from_cols(&vcols),
    }
}

/// Replace zero columns with an orthonormal completion drawn from the
/// canonical basis, in index order.
fn complete_columns(cols: &mut [Vec<Complex64>], dim: usize) {
    let mut cursor = 0usize;
    for slot in 0..cols.len() {
        if vec_norm(&cols[slot]) > 0.0 {
            continue;
        }
        while cursor < dim {
            let mut cand = vec![C_ZERO; dim];
            cand[cursor] = C_ONE;
            cursor += 1;
            // Two Gram-Schmidt passes against the nonzero columns.
            for _ in 0..2 {
                for other in cols.iter() {
                    if vec_norm(other) == 0.0 {
                        continue;
                    }
                    let ov = vec_inner(other, &cand);
                    for i in 0..dim {
                        cand[i] -= ov * other[i];
                    }
                }
            }
            let nrm = vec_norm(&cand);
            if nrm > 1e-3 {
                for z in cand.iter_mut() {
                    *z /= nrm;
                }
                cols[slot] = cand;
                break;
            }
        }
    }
}

/// Orthonormal basis of the right nullspace of a `rows x cols` row-major
/// block, with singular values at or below `rel_tol * sigma_max` counted
/// as zero.
pub fn rect_nullspace(rows: usize, cols: usize, data: &[Complex64], rel_tol: f64) -> Vec<Vec<Complex64>> {
    let s = rect_svd(rows, cols, data);
    let r = s.rank(rel_tol);
    (r..cols).map(|j| s.v.col(j)).collect()
}

/// Nullspace with the rank cut anchored to `max(sigma_max, floor)`; see
/// [`RectSvd::rank_floor`].
pub fn rect_nullspace_floor(
    rows: usize,
    cols: usize,
    data: &[Complex64],
    rel_tol: f64,
    floor: f64,
) -> Vec<Vec<Complex64>> {
    let s = rect_svd(rows, cols, data);
    let r = s.rank_floor(rel_tol, floor);
    (r..cols).map(|j| s.v.col(j)).collect()
}

/// Rank of a rectangular row-major block at a relative threshold.
pub fn rect_rank(rows: usize, cols: usize, data: &[Complex64], rel_tol: f64) -> usize {
    rect_svd(rows, cols, data).rank(rel_tol)
}
