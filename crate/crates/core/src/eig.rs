//! Cyclic Jacobi diagonalization for Hermitian matrices. Fixed pivot order
//! and no data-dependent reordering, so results are reproducible to the bit.

use num_complex::Complex64;

use crate::mat::{CMatrix, C_ONE, C_ZERO};

const MAX_SWEEPS: usize = 64;
const STOP_REL: f64 = 1e-15;
const PIVOT_MIN_REL: f64 = 1e-18;

/// Eigenvalues (unsorted) and unitary eigenvector columns of a matrix that
/// has already passed the hermiticity gate. Works on the upper triangle.
pub(crate) fn jacobi_hermitian(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.dim();
    let mut m = a.entries().to_vec();
    // Exact Hermitian working copy: real diagonal, lower triangle mirrors
    // the upper one.
    for i in 0..n {
        let d = m[i * n + i];
        m[i * n + i] = Complex64::new(d.re, 0.0);
        for j in (i + 1)..n {
            m[j * n + i] = m[i * n + j].conj();
        }
    }
    let mut v = vec![C_ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = C_ONE;
    }
    let scale: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return (vec![0.0; n], CMatrix::from_raw(n, v));
    }
    let mut prev_off = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += m[i * n + j].norm_sqr();
                }
            }
        }
        let off = off.sqrt();
        if off <= STOP_REL * scale || off >= prev_off {
            break;
        }
        prev_off = off;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let r = apq.norm();
                if r <= PIVOT_MIN_REL * scale {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = -sgn / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase = apq / r;
                let sp = phase * s;
                // A <- A G with G mixing columns p and q.
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = akp * c + akq * sp.conj();
                    m[k * n + q] = akq * c - akp * sp;
                }
                // A <- G* A on rows p and q.
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = apk * c + aqk * sp;
                    m[q * n + k] = aqk * c - apk * sp.conj();
                }
                // V <- V G.
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * sp.conj();
                    v[k * n + q] = vkq * c - vkp * sp;
                }
                // The rotation annihilates the pivot in exact arithmetic;
                // drop the rounding dust to keep the invariant clean.
                m[p * n + q] = C_ZERO;
                m[q * n + p] = C_ZERO;
                m[p * n + p] = Complex64::new(m[p * n + p].re, 0.0);
                m[q * n + q] = Complex64::new(m[q * n + q].re, 0.0);
            }
        }
    }
    let values: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    (values, CMatrix::from_raw(n, v))
}
