//! Eigenvalues of general complex matrices: Householder reduction to upper
//! Hessenberg form, then single-shift QR iteration with Wilkinson shifts and
//! an exceptional shift every few stalled steps. Eigenvalues only; every
//! caller needing eigenvectors is Hermitian and uses the Jacobi path.

use num_complex::Complex64;

use crate::mat::{CMatrix, C_ZERO};

pub(crate) fn general_eigenvalues(a: &CMatrix) -> Vec<Complex64> {
    let n = a.dim();
    if n == 1 {
        return vec![a.at(0, 0)];
    }
    let mut h = a.entries().to_vec();
    hessenberg(n, &mut h);
    qr_eigenvalues(n, h)
}

fn hessenberg(n: usize, h: &mut [Complex64]) {
    for k in 0..n.saturating_sub(2) {
        let xnorm: f64 =
            ((k + 1)..n).map(|i| h[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let a0 = h[(k + 1) * n + k];
        let phase = if a0.norm() > 0.0 { a0 / a0.norm() } else { Complex64::new(1.0, 0.0) };
        let mut v = vec![C_ZERO; n];
        for i in (k + 1)..n {
            v[i] = h[i * n + k];
        }
        v[k + 1] += phase * xnorm;
        let vnorm2: f64 = v[(k + 1)..n].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // Left reflection on rows k+1..n.
        for j in 0..n {
            let mut w = C_ZERO;
            for i in (k + 1)..n {
                w += v[i].conj() * h[i * n + j];
            }
            let w = w * beta;
            for i in (k + 1)..n {
                h[i * n + j] -= v[i] * w;
            }
        }
        // Right reflection on columns k+1..n.
        for i in 0..n {
            let mut w = C_ZERO;
            for j in (k + 1)..n {
                w += h[i * n + j] * v[j];
            }
            let w = w * beta;
            for j in (k + 1)..n {
                h[i * n + j] -= w * v[j].conj();
            }
        }
        // The reflector maps the pivot column onto the subdiagonal exactly.
        h[(k + 1) * n + k] = -phase * xnorm;
        for i in (k + 2)..n {
            h[i * n + k] = C_ZERO;
        }
    }
}

/// Rotation with real cosine: `[[c, s], [-conj(s), c]] * [f, g]^T = [r, 0]^T`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    let fa = f.norm();
    let ga = g.norm();
    if ga == 0.0 {
        return (1.0, C_ZERO, f);
    }
    if fa == 0.0 {
        return (0.0, g.conj() / ga, Complex64::new(ga, 0.0));
    }
    let d = (fa * fa + ga * ga).sqrt();
    let c = fa / d;
    let fs = f / fa;
    let s = fs * g.conj() / d;
    (c, s, fs * d)
}

fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let m = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let sq = (half * half + b * c).sqrt();
    let (l1, l2) = (m + sq, m - sq);
    let big = if l1.norm() >= l2.norm() { l1 } else { l2 };
    if big.norm() == 0.0 {
        return (l1, l2);
    }
    let det = a * d - b * c;
    (big, det / big)
}

fn qr_eigenvalues(n: usize, mut h: Vec<Complex64>) -> Vec<Complex64> {
    let eps = f64::EPSILON;
    let hnorm: f64 = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if hnorm == 0.0 {
        return vec![C_ZERO; n];
    }
    let floor = eps * eps * hnorm;
    let mut evals: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iters = 0usize;
    let mut guard = 0usize;
    loop {
        // Split the active block at a negligible subdiagonal entry.
        let mut lo = 0usize;
        let mut i = hi;
        while i > 0 {
            let sub = h[i * n + (i - 1)].norm();
            let local = h[(i - 1) * n + (i - 1)].norm() + h[i * n + i].norm();
            if sub <= (eps * local).max(floor) {
                h[i * n + (i - 1)] = C_ZERO;
                lo = i;
                break;
            }
            i -= 1;
        }
        if lo == hi {
            evals.push(h[hi * n + hi]);
            iters = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig2(
                h[lo * n + lo],
                h[lo * n + hi],
                h[hi * n + lo],
                h[hi * n + hi],
            );
            evals.push(l1);
            evals.push(l2);
            iters = 0;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            continue;
        }
        iters += 1;
        guard += 1;
        if guard > 120 * n {
            // Stalled; report the current diagonal of everything unresolved.
            for j in 0..=hi {
                evals.push(h[j * n + j]);
            }
            break;
        }
        let corner = h[hi * n + hi];
        let mu = if iters % 12 == 0 {
            corner + Complex64::new(0.75 * h[hi * n + (hi - 1)].norm(), 0.0)
        } else {
            let (l1, l2) = eig2(
                h[(hi - 1) * n + (hi - 1)],
                h[(hi - 1) * n + hi],
                h[hi * n + (hi - 1)],
                h[hi * n + hi],
            );
            if (l1 - corner).norm() <= (l2 - corner).norm() {
                l1
            } else {
                l2
            }
        };
        for j in lo..=hi {
            h[j * n + j] -= mu;
        }
        let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
        for j in lo..hi {
            let (c, s, r) = givens(h[j * n + j], h[(j + 1) * n + j]);
            rot.push((c, s));
            h[j * n + j] = r;
            h[(j + 1) * n + j] = C_ZERO;
            for col in (j + 1)..=hi {
                let a = h[j * n + col];
                let b = h[(j + 1) * n + col];
                h[j * n + col] = a * c + b * s;
                h[(j + 1) * n + col] = b * c - a * s.conj();
            }
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let j = lo + idx;
            for row in lo..=(j + 1) {
                let a = h[row * n + j];
                let b = h[row * n + (j + 1)];
                h[row * n + j] = a * c + b * s.conj();
                h[row * n + (j + 1)] = b * c - a * s;
            }
        }
        for j in lo..=hi {
            h[j * n + j] += mu;
        }
    }
    evals
}
