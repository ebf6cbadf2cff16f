use num_complex::Complex64;
use oplab_alg::modular::{purify, tomita, verify_tomita_takesaki, kms_check};
use oplab_alg::states::State;
use oplab_core::mat::CMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::time::Instant;

fn rand_c(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}
fn rand_mat(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for i in 0..n { for j in 0..n { m.set(i, j, rand_c(r)); } }
    m
}
fn rand_faithful(r: &mut ChaCha8Rng, n: usize) -> State {
    let g = rand_mat(r, n);
    let gram = &g * &g.adj();
    let tr = gram.trace().re;
    let mixed = &gram.scale_re(0.7 / tr) + &CMatrix::identity(n).scale_re(0.3 / n as f64);
    State::new(mixed).unwrap()
}

fn main() {
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 3, 4] {
        let s = rand_faithful(&mut r, n);
        let t0 = Instant::now();
        let (alg, omega) = purify(&s);
        let t1 = Instant::now();
        let d = tomita(&alg, &omega).unwrap();
        let t2 = Instant::now();
        let rep = verify_tomita_takesaki(&d);
        let t3 = Instant::now();
        let basis = d.algebra().basis();
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let mut a = CMatrix::zeros(basis[0].dim());
            let mut b = CMatrix::zeros(basis[0].dim());
            for bb in basis { a = &a + &bb.scale(rand_c(&mut r)); b = &b + &bb.scale(rand_c(&mut r)); }
            worst = worst.max(kms_check(&d, &a, &b));
        }
        let t4 = Instant::now();
        println!("n={n} purify {:?} tomita {:?} verify {:?} (ok={}) kms5 {:?} worst={:.2e}",
            t1 - t0, t2 - t1, t3 - t2, rep.ok, t4 - t3, worst);
    }
}
