//! Seeded random instances for the check runners. Every draw goes through a
//! counter-based ChaCha stream, so a report depends only on (input, seed,
//! tolerances).

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oplab_alg::states::State;
use oplab_core::mat::{herm_eig, hermitian_part, outer, CMatrix};

pub fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

pub fn rand_c(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn rand_mat(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| {
        Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    })
}

pub fn rand_herm(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    hermitian_part(&rand_mat(r, n))
}

pub fn rand_unitary(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    herm_eig(&rand_herm(r, n)).expect("hermitian by construction").vectors
}

/// Unitary conjugation of a real diagonal drawn uniformly from `[lo, hi]`.
pub fn rand_psd(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> CMatrix {
    let u = rand_unitary(r, n);
    let d = CMatrix::diag_re(&(0..n).map(|_| r.gen_range(lo..hi)).collect::<Vec<_>>());
    &(&u * &d) * &u.adj()
}

/// Rank-`k` spectral projection of a random Hermitian matrix.
pub fn rand_projection(r: &mut ChaCha8Rng, n: usize, rank: usize) -> CMatrix {
    let u = rand_unitary(r, n);
    let mut p = CMatrix::zeros(n);
    for k in 0..rank {
        let col = u.col(k);
        p = &p + &outer(&col, &col);
    }
    p
}

/// Hermitian with operator norm strictly below one.
pub fn rand_contraction(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let h = rand_herm(r, n);
    let scale = r.gen_range(0.2..1.0) / h.op_norm().max(1e-6);
    h.scale_re(scale)
}

pub fn rand_mixed(r: &mut ChaCha8Rng, n: usize) -> State {
    let g = rand_mat(r, n);
    let rho = &g * &g.adj();
    let tr = rho.trace().re;
    State::new(rho.scale_re(1.0 / tr)).expect("normalized Gram matrix")
}

pub fn rand_pure(r: &mut ChaCha8Rng, n: usize) -> State {
    let v: Vec<Complex64> = (0..n).map(|_| rand_c(r)).collect();
    State::pure_from_vector(&v).expect("random vector is nonzero")
}

/// Mixed state with eigenvalues bounded away from zero, so spectral ratios
/// stay well conditioned.
pub fn rand_faithful(r: &mut ChaCha8Rng, n: usize) -> State {
    let g = rand_mat(r, n);
    let gram = &g * &g.adj();
    let tr = gram.trace().re;
    let rho = &gram.scale_re(0.7 / tr) + &CMatrix::identity(n).scale_re(0.3 / n as f64);
    State::new(rho).expect("convex combination of density matrices")
}
