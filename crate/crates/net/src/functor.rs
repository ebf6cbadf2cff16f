//! Embeddings acting on algebras and states: tensor-leg placement of
//! observables, state pullback along a morphism, correlation transport,
//! and joint states for independent preparations.

use oplab_alg::states::State;
use oplab_bell::{bell_operator, chsh_value, AdmissibleQuadruple};
use oplab_core::mat::{CMatrix, C_ZERO};

use crate::site::{NetError, Region, SiteEmbedding};

/// The unital *-monomorphism induced by a site embedding: source legs are
/// routed to their image positions, every uncovered target leg is padded
/// with the identity.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    embedding: SiteEmbedding,
}

pub fn embed(e: &SiteEmbedding) -> AlgebraMorphism {
    AlgebraMorphism { embedding: e.clone() }
}

impl AlgebraMorphism {
    pub fn embedding(&self) -> &SiteEmbedding {
        &self.embedding
    }

    pub fn source_dim(&self) -> usize {
        self.embedding.source().dim()
    }

    pub fn target_dim(&self) -> usize {
        self.embedding.target().dim()
    }

    // bit position of source leg k inside a target index
    fn target_positions(&self) -> Vec<usize> {
        let nt = self.embedding.target().len();
        self.embedding.map().iter().map(|&m| nt - 1 - m).collect()
    }

    // mask of the target bits not covered by the image
    fn pad_mask(&self) -> usize {
        let mut mask = self.target_dim() - 1;
        for pos in self.target_positions() {
            mask &= !(1 << pos);
        }
        mask
    }

    // compact source index read out of a target index
    fn extract_table(&self) -> Vec<usize> {
        let ns = self.embedding.source().len();
        let positions = self.target_positions();
        (0..self.target_dim())
            .map(|i| {
                let mut src = 0usize;
                for (k, &pos) in positions.iter().enumerate() {
                    src |= ((i >> pos) & 1) << (ns - 1 - k);
                }
                src
            })
            .collect()
    }

    /// Image of a source observable on the target space.
    pub fn apply(&self, m: &CMatrix) -> Result<CMatrix, NetError> {
        if m.dim() != self.source_dim() {
            return Err(NetError::DimMismatch { left: m.dim(), right: self.source_dim() });
        }
        let dim_t = self.target_dim();
        let pad = self.pad_mask();
        let ext = self.extract_table();
        let mut out = CMatrix::zeros(dim_t);
        for i in 0..dim_t {
            for j in 0..dim_t {
                if i & pad == j & pad {
                    out.set(i, j, m.at(ext[i], ext[j]));
                }
            }
        }
        Ok(out)
    }
}

/// The state on the source algebra induced by a state on the target:
/// the unique density matrix with Tr(sigma A) = Tr(rho' alpha(A)) for
/// every A, which for leg placement is the partial trace of rho' over the
/// uncovered legs, rearranged into source leg order.
pub fn pullback(alpha: &AlgebraMorphism, s_prime: &State) -> Result<State, NetError> {
    if s_prime.dim() != alpha.target_dim() {
        return Err(NetError::DimMismatch { left: s_prime.dim(), right: alpha.target_dim() });
    }
    let dim_s = alpha.source_dim();
    let positions = alpha.target_positions();
    let ns = positions.len();
    let pad = alpha.pad_mask();
    let pad_positions: Vec<usize> =
        (0..alpha.embedding().target().len()).filter(|b| pad >> b & 1 == 1).collect();
    let place = |src: usize, c_pattern: usize| -> usize {
        let mut idx = 0usize;
        for (k, &pos) in positions.iter().enumerate() {
            idx |= ((src >> (ns - 1 - k)) & 1) << pos;
        }
        for (k, &pos) in pad_positions.iter().enumerate() {
            idx |= ((c_pattern >> k) & 1) << pos;
        }
        idx
    };
    let rho_t = s_prime.rho();
    let mut sigma = CMatrix::zeros(dim_s);
    for a in 0..dim_s {
        for b in 0..dim_s {
            let mut acc = C_ZERO;
            for c in 0..(1usize << pad_positions.len()) {
                acc += rho_t.at(place(a, c), place(b, c));
            }
            sigma.set(a, b, acc);
        }
    }
    Ok(State::new(sigma)?)
}

/// Correlation value of a quadruple under an embedding, computed two
/// ways: directly in the target state on the embedded operator, and on
/// the source after pulling the state back. The two agree identically.
pub fn chsh_transport(
    q: &AdmissibleQuadruple,
    alpha: &AlgebraMorphism,
    s_prime: &State,
) -> Result<(f64, f64), NetError> {
    if q.dim() != alpha.source_dim() {
        return Err(NetError::DimMismatch { left: q.dim(), right: alpha.source_dim() });
    }
    if s_prime.dim() != alpha.target_dim() {
        return Err(NetError::DimMismatch { left: s_prime.dim(), right: alpha.target_dim() });
    }
    let bo = bell_operator(q)?;
    let embedded = alpha.apply(bo.matrix())?;
    let value_direct = s_prime.eval(&embedded)?.re;
    let pulled = pullback(alpha, s_prime)?;
    let value_pullback = chsh_value(&pulled, &bo)?;
    Ok((value_direct, value_pullback))
}

/// Joint state for two independent preparations on causally disjoint
/// regions: tensor product on the two region leg groups, maximally mixed
/// on the rest. Its restrictions to the regions reproduce the inputs.
pub fn independence_product(
    r1: &Region,
    r2: &Region,
    s1: &State,
    s2: &State,
) -> Result<State, NetError> {
    if r1.site() != r2.site() {
        return Err(NetError::SiteMismatch);
    }
    if let Some((left, right)) = r1.overlap_witness(r2) {
        return Err(NetError::RegionsNotDisjoint { left, right });
    }
    if s1.dim() != 1usize << r1.len() {
        return Err(NetError::DimMismatch { left: s1.dim(), right: 1usize << r1.len() });
    }
    if s2.dim() != 1usize << r2.len() {
        return Err(NetError::DimMismatch { left: s2.dim(), right: 1usize << r2.len() });
    }
    let site = r1.site();
    let n = site.len();
    let rest: Vec<usize> = (0..n)
        .filter(|k| !r1.indices().contains(k) && !r2.indices().contains(k))
        .collect();
    let pos = |p: usize| n - 1 - p;
    let read = |idx: usize, points: &[usize]| -> usize {
        let mut out = 0usize;
        for (k, &p) in points.iter().enumerate() {
            out |= ((idx >> pos(p)) & 1) << (points.len() - 1 - k);
        }
        out
    };
    let weight = 1.0 / (1usize << rest.len()) as f64;
    let rho1 = s1.rho();
    let rho2 = s2.rho();
    let dim = site.dim();
    let mut rho = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            if read(i, &rest) != read(j, &rest) {
                continue;
            }
            let v = rho1.at(read(i, r1.indices()), read(j, r1.indices()))
                * rho2.at(read(i, r2.indices()), read(j, r2.indices()))
                * weight;
            rho.set(i, j, v);
        }
    }
    Ok(State::new(rho)?)
}
