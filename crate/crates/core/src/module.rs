//! Finitely presented modules `R^r / N`.

use cmlab_algebra::{Ideal, ModuleGb, Poly, PresentedRing, Result, Vector};

/// Cokernel of a map into `R^rank`, given by the generators of its image.
#[derive(Clone, Debug)]
pub struct Module {
    ring: PresentedRing,
    rank: usize,
    relations: Vec<Vector>,
}

impl Module {
    pub fn cokernel(ring: &PresentedRing, rank: usize, relations: Vec<Vector>) -> Self {
        let relations = relations
            .into_iter()
            .map(|v| ring.reduce_vector(&v))
            .filter(|v| v.iter().any(|p| !p.is_zero()))
            .collect();
        Module {
            ring: ring.clone(),
            rank,
            relations,
        }
    }

    pub fn free(ring: &PresentedRing, rank: usize) -> Self {
        Self::cokernel(ring, rank, Vec::new())
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: &PresentedRing) -> Self {
        Self::free(ring, 1)
    }

    /// `R / I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let rels = ideal.generators().iter().map(|g| vec![g.clone()]).collect();
        Self::cokernel(ideal.ring(), 1, rels)
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn relation_gb(&self) -> Result<ModuleGb> {
        ModuleGb::compute(&self.relations, self.rank, self.ring.order(), self.ring.relation_gb())
    }

    pub fn is_zero(&self) -> Result<bool> {
        if self.rank == 0 {
            return Ok(true);
        }
        Ok(self.relation_gb()?.is_full())
    }

    /// `M / (x)M`.
    pub fn quotient_by(&self, elems: &[Poly]) -> Self {
        let mut rels = self.relations.clone();
        for x in elems {
            for k in 0..self.rank {
                let mut v = vec![self.ring.zero(); self.rank];
                v[k] = x.clone();
                rels.push(v);
            }
        }
        Self::cokernel(&self.ring, self.rank, rels)
    }

    /// True if every relation is homogeneous with all basis elements in
    /// degree zero, over a ring with homogeneous relations.
    pub fn is_graded(&self) -> bool {
        self.ring.is_graded() && self.relations.iter().all(|v| homogeneous_vector(v))
    }

    /// Relations of `M^copies` (block diagonal), in `R^(copies * rank)`,
    /// with the copy index varying slowest.
    pub fn block_relations(&self, copies: usize) -> Vec<Vector> {
        let mut out = Vec::with_capacity(copies * self.relations.len());
        for c in 0..copies {
            for r in &self.relations {
                let mut v = vec![self.ring.zero(); copies * self.rank];
                v[c * self.rank..(c + 1) * self.rank].clone_from_slice(r);
                out.push(v);
            }
        }
        out
    }
}

/// All nonzero entries homogeneous of one common degree.
pub fn homogeneous_vector(v: &[Poly]) -> bool {
    let mut deg = None;
    for p in v.iter().filter(|p| !p.is_zero()) {
        if !p.is_homogeneous() {
            return false;
        }
        let d = p.total_degree();
        if deg.is_some() && deg != d {
            return false;
        }
        deg = d;
    }
    true
}
