//! Causal lattice sites, regions, and the embeddings between sites.
//!
//! A site is a finite list of integer spacetime points (t, x) carrying one
//! qubit each. Two points are causally disjoint when their spatial
//! separation strictly exceeds their temporal separation; everything
//! downstream (commutation requirements, independence, embedding
//! validity) is driven by that relation.

use thiserror::Error;

use oplab_alg::states::StateError;
use oplab_bell::BellError;
use oplab_core::mat::MatError;

/// Point cap keeping the ambient dimension 2^points within the dense
/// matrix range.
pub const SITE_CAP: usize = 12;

#[derive(Debug, Error)]
pub enum NetError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Bell(#[from] BellError),
    #[error("site has {count} points, cap is {cap}")]
    TooManyPoints { count: usize, cap: usize },
    #[error("duplicate lattice point ({t}, {x})")]
    DuplicatePoint { t: i64, x: i64 },
    #[error("point index {index} out of range for {len} points")]
    PointOutOfRange { index: usize, len: usize },
    #[error("regions live on different sites")]
    SiteMismatch,
    #[error("region pair {index} is not nested")]
    NotNested { index: usize },
    #[error("not an embedding: {reason}")]
    NotAnEmbedding { reason: String },
    #[error("regions are not causally disjoint: points {left} and {right} can interact")]
    RegionsNotDisjoint { left: usize, right: usize },
    #[error("operands live on different spaces: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
}

/// Strict spacelike separation of two lattice points.
pub fn causally_disjoint(p: (i64, i64), q: (i64, i64)) -> bool {
    (p.1 - q.1).abs() > (p.0 - q.0).abs()
}

/// A finite set of distinct lattice points, one qubit per point. The first
/// point occupies the slowest tensor leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalSite {
    points: Vec<(i64, i64)>,
}

impl CausalSite {
    pub fn new(points: &[(i64, i64)]) -> Result<Self, NetError> {
        if points.len() > SITE_CAP {
            return Err(NetError::TooManyPoints { count: points.len(), cap: SITE_CAP });
        }
        for (k, &p) in points.iter().enumerate() {
            if points[..k].contains(&p) {
                return Err(NetError::DuplicatePoint { t: p.0, x: p.1 });
            }
        }
        Ok(CausalSite { points: points.to_vec() })
    }

    /// Rectangular lattice {0..t_extent} x {0..x_extent}, time-major.
    pub fn grid(t_extent: i64, x_extent: i64) -> Result<Self, NetError> {
        let mut points = Vec::new();
        for t in 0..t_extent.max(0) {
            for x in 0..x_extent.max(0) {
                points.push((t, x));
            }
        }
        CausalSite::new(&points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    /// Ambient Hilbert dimension 2^points.
    pub fn dim(&self) -> usize {
        1usize << self.points.len()
    }

    pub fn disjoint(&self, i: usize, j: usize) -> bool {
        causally_disjoint(self.points[i], self.points[j])
    }

    pub fn full_region(&self) -> Region {
        let indices: Vec<usize> = (0..self.len()).collect();
        Region { site: self.clone(), indices }
    }

    /// Double-cone analogue: all points within taxicab radius of a center.
    pub fn diamond(&self, center: (i64, i64), radius: i64) -> Region {
        let indices: Vec<usize> = (0..self.len())
            .filter(|&k| {
                let (t, x) = self.points[k];
                (t - center.0).abs() + (x - center.1).abs() <= radius
            })
            .collect();
        Region { site: self.clone(), indices }
    }
}

/// A subset of a site's points, stored sorted. Carries its site so region
/// pairs can be checked for compatibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    site: CausalSite,
    indices: Vec<usize>,
}

impl Region {
    pub fn new(site: &CausalSite, indices: &[usize]) -> Result<Self, NetError> {
        let mut sorted = indices.to_vec();
        for &k in &sorted {
            if k >= site.len() {
                return Err(NetError::PointOutOfRange { index: k, len: site.len() });
            }
        }
        sorted.sort_unstable();
        sorted.dedup();
        Ok(Region { site: site.clone(), indices: sorted })
    }

    pub fn site(&self) -> &CausalSite {
        &self.site
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_subset_of(&self, other: &Region) -> bool {
        self.site == other.site && self.indices.iter().all(|k| other.indices.contains(k))
    }

    /// First cross pair of points that is NOT causally disjoint, if any.
    pub fn overlap_witness(&self, other: &Region) -> Option<(usize, usize)> {
        for &i in &self.indices {
            for &j in &other.indices {
                if !self.site.disjoint(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn causally_disjoint_from(&self, other: &Region) -> bool {
        self.overlap_witness(other).is_none()
    }

    pub fn complement(&self) -> Region {
        let indices: Vec<usize> =
            (0..self.site.len()).filter(|k| !self.indices.contains(k)).collect();
        Region { site: self.site.clone(), indices }
    }

    /// The region's points as a standalone site, in region order.
    pub fn subsite(&self) -> CausalSite {
        let points: Vec<(i64, i64)> =
            self.indices.iter().map(|&k| self.site.points[k]).collect();
        CausalSite::new(&points).expect("a subset of a valid site is a valid site")
    }

    /// The embedding of the standalone subsite back into the full site.
    pub fn inclusion(&self) -> SiteEmbedding {
        SiteEmbedding::new(&self.subsite(), &self.site, &self.indices)
            .expect("coordinates are copied, so the causal relation is preserved")
    }
}

/// Injective point map between sites that preserves and reflects causal
/// disjointness on its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteEmbedding {
    source: CausalSite,
    target: CausalSite,
    map: Vec<usize>,
}

impl SiteEmbedding {
    pub fn new(
        source: &CausalSite,
        target: &CausalSite,
        map: &[usize],
    ) -> Result<Self, NetError> {
        if map.len() != source.len() {
            return Err(NetError::NotAnEmbedding {
                reason: format!("map covers {} of {} source points", map.len(), source.len()),
            });
        }
        for (k, &m) in map.iter().enumerate() {
            if m >= target.len() {
                return Err(NetError::NotAnEmbedding {
                    reason: format!("image {m} of source point {k} is out of range"),
                });
            }
            if map[..k].contains(&m) {
                return Err(NetError::NotAnEmbedding {
                    reason: format!("not injective: target point {m} is hit twice"),
                });
            }
        }
        for i in 0..map.len() {
            for j in i + 1..map.len() {
                if source.disjoint(i, j) != target.disjoint(map[i], map[j]) {
                    return Err(NetError::NotAnEmbedding {
                        reason: format!(
                            "causal relation not preserved between source points {i} and {j}"
                        ),
                    });
                }
            }
        }
        Ok(SiteEmbedding { source: source.clone(), target: target.clone(), map: map.to_vec() })
    }

    pub fn identity(site: &CausalSite) -> Self {
        let map: Vec<usize> = (0..site.len()).collect();
        SiteEmbedding { source: site.clone(), target: site.clone(), map }
    }

    /// Embedding that shifts every source point by a fixed lattice vector,
    /// matching coordinates against the target's point list.
    pub fn by_translation(
        source: &CausalSite,
        target: &CausalSite,
        dt: i64,
        dx: i64,
    ) -> Result<Self, NetError> {
        let mut map = Vec::with_capacity(source.len());
        for &(t, x) in source.points() {
            let shifted = (t + dt, x + dx);
            match target.points().iter().position(|&p| p == shifted) {
                Some(k) => map.push(k),
                None => {
                    return Err(NetError::NotAnEmbedding {
                        reason: format!(
                            "translated point ({}, {}) is not on the target site",
                            shifted.0, shifted.1
                        ),
                    })
                }
            }
        }
        SiteEmbedding::new(source, target, &map)
    }

    pub fn source(&self) -> &CausalSite {
        &self.source
    }

    pub fn target(&self) -> &CausalSite {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Composition: first this embedding, then `next`.
    pub fn then(&self, next: &SiteEmbedding) -> Result<SiteEmbedding, NetError> {
        if next.source != self.target {
            return Err(NetError::SiteMismatch);
        }
        let map: Vec<usize> = self.map.iter().map(|&k| next.map[k]).collect();
        SiteEmbedding::new(&self.source, &next.target, &map)
    }
}
