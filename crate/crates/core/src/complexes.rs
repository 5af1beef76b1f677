//! Finite free complexes, Koszul complexes, power chain maps, homology
//! vanishing with certificates, free resolutions and Ext.

use cmlab_algebra::{AlgebraError, ModuleGb, Poly, PresentedRing, Result, SyzygyGb, Vector};

use crate::module::Module;

/// Matrix over the ring, stored as columns: column `j` is the image of the
/// `j`-th basis vector of the source.
pub type Matrix = Vec<Vector>;

fn is_zero_vec(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// `matrix * v`, reduced in the ring.
pub fn apply(ring: &PresentedRing, matrix: &Matrix, rows: usize, v: &[Poly]) -> Vector {
    let mut out = vec![ring.zero(); rows];
    for (col, c) in matrix.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(col) {
            if !e.is_zero() {
                *o = o.add(&e.mul(c));
            }
        }
    }
    ring.reduce_vector(&out)
}

fn transpose(matrix: &Matrix, rows: usize) -> Matrix {
    (0..rows)
        .map(|r| matrix.iter().map(|col| col[r].clone()).collect())
        .collect()
}

/// `matrix ⊗ id_s`, with the original row index varying slowest.
fn expand(ring: &PresentedRing, matrix: &Matrix, rows: usize, s: usize) -> Matrix {
    if s == 1 {
        return matrix.clone();
    }
    let mut out = Vec::with_capacity(matrix.len() * s);
    for col in matrix {
        for k in 0..s {
            let mut v = vec![ring.zero(); rows * s];
            for (r, e) in col.iter().enumerate() {
                v[r * s + k] = e.clone();
            }
            out.push(v);
        }
    }
    out
}

/// `0 <- F_0 <- F_1 <- ... <- F_top` with `diffs[k] = d_{k+1} : F_{k+1} -> F_k`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: PresentedRing,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl FreeComplex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(ring: &PresentedRing, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(AlgebraError::Invalid(
                "a complex needs one differential between consecutive ranks".into(),
            ));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.len() != ranks[k + 1] || d.iter().any(|c| c.len() != ranks[k]) {
                return Err(AlgebraError::Invalid(format!(
                    "differential {} has the wrong shape",
                    k + 1
                )));
            }
        }
        let diffs = diffs
            .into_iter()
            .map(|d| d.iter().map(|c| ring.reduce_vector(c)).collect())
            .collect();
        let c = FreeComplex {
            ring: ring.clone(),
            ranks,
            diffs,
        };
        if let Some(k) = c.first_nonzero_composite() {
            return Err(AlgebraError::Invalid(format!("d_{k} ∘ d_{} is not zero", k + 1)));
        }
        Ok(c)
    }

    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// Highest degree stored.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Highest degree with a nonzero module.
    pub fn length(&self) -> usize {
        self.ranks.iter().rposition(|&r| r > 0).unwrap_or(0)
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= top`.
    pub fn differential(&self, i: usize) -> Option<&Matrix> {
        if i == 0 {
            return None;
        }
        self.diffs.get(i - 1)
    }

    /// Degree `k` with `d_k ∘ d_{k+1} != 0`, if any.
    pub fn first_nonzero_composite(&self) -> Option<usize> {
        for k in 1..self.diffs.len() {
            let dk = &self.diffs[k - 1];
            for col in &self.diffs[k] {
                if !is_zero_vec(&apply(&self.ring, dk, self.ranks[k - 1], col)) {
                    return Some(k);
                }
            }
        }
        None
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.first_nonzero_composite().is_none()
    }

    /// Homology of `C ⊗ M` in degree `i`.
    pub fn homology_is_zero(&self, i: usize, m: &Module) -> Result<HomologyVerdict> {
        let s = m.rank();
        let here = self.rank(i);
        let outgoing = self
            .differential(i)
            .map(|d| (expand(&self.ring, d, self.rank(i - 1), s), self.rank(i - 1) * s));
        let incoming = self
            .differential(i + 1)
            .map(|d| expand(&self.ring, d, here, s))
            .unwrap_or_default();
        let rel_next = if i == 0 {
            Vec::new()
        } else {
            m.block_relations(self.rank(i - 1))
        };
        let mut v = subquotient_is_zero(
            &self.ring,
            here * s,
            &incoming,
            outgoing.as_ref().map(|(d, r)| (d, *r)),
            &m.block_relations(here),
            &rel_next,
        )?;
        v.degree = i;
        Ok(v)
    }
}

/// Why a homology module is (non)zero.
#[derive(Clone, Debug)]
pub enum HomologyCertificate {
    /// Every cycle generator with its coefficients on the boundary
    /// generators (modulo the module relations).
    Vanishes { lifts: Vec<Lift> },
    /// A cycle whose normal form modulo the boundaries is nonzero.
    NonZero { cycle: Vector, normal_form: Vector },
}

#[derive(Clone, Debug)]
pub struct Lift {
    pub cycle: Vector,
    pub coefficients: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct HomologyVerdict {
    pub degree: usize,
    pub is_zero: bool,
    pub certificate: HomologyCertificate,
}

/// Generators of the cycles `{z in R^here : out(z) in rel_next}`.
fn cycles(
    ring: &PresentedRing,
    here: usize,
    outgoing: Option<(&Matrix, usize)>,
    rel_next: &[Vector],
) -> Result<Vec<Vector>> {
    match outgoing {
        None => Ok((0..here)
            .map(|k| {
                let mut v = vec![ring.zero(); here];
                v[k] = ring.one();
                v
            })
            .collect()),
        Some((d, rows)) => {
            if here == 0 {
                return Ok(Vec::new());
            }
            let syz = SyzygyGb::compute(ring.field(), d, rel_next, rows, ring.order(), ring.relation_gb())?;
            Ok(syz.syzygies())
        }
    }
}

/// Decides whether `ker(outgoing) / (im(incoming) + rel_here)` vanishes,
/// where the kernel is taken modulo `rel_next`.
fn subquotient_is_zero(
    ring: &PresentedRing,
    here: usize,
    incoming: &Matrix,
    outgoing: Option<(&Matrix, usize)>,
    rel_here: &[Vector],
    rel_next: &[Vector],
) -> Result<HomologyVerdict> {
    let zs = cycles(ring, here, outgoing, rel_next)?;
    let boundary = SyzygyGb::compute(ring.field(), incoming, rel_here, here, ring.order(), ring.relation_gb())?;
    let mut lifts = Vec::with_capacity(zs.len());
    for z in zs {
        match boundary.lift(&z) {
            Some(coefficients) => lifts.push(Lift { cycle: z, coefficients }),
            None => {
                let normal_form = ring.reduce_vector(&boundary.reduce_image(&z));
                return Ok(HomologyVerdict {
                    degree: 0,
                    is_zero: false,
                    certificate: HomologyCertificate::NonZero { cycle: z, normal_form },
                });
            }
        }
    }
    Ok(HomologyVerdict {
        degree: 0,
        is_zero: true,
        certificate: HomologyCertificate::Vanishes { lifts },
    })
}

/// Koszul complex of a sequence, with basis of degree `i` indexed by the
/// `i`-subsets of positions in increasing lexicographic order.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    seq: Vec<Poly>,
    complex: FreeComplex,
    bases: Vec<Vec<Vec<usize>>>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl KoszulComplex {
    pub fn new(ring: &PresentedRing, seq: &[Poly]) -> Self {
        let l = seq.len();
        let seq: Vec<Poly> = seq.iter().map(|x| ring.reduce(x)).collect();
        let bases: Vec<Vec<Vec<usize>>> = (0..=l).map(|i| subsets(l, i)).collect();
        let ranks = bases.iter().map(Vec::len).collect();
        let mut diffs = Vec::with_capacity(l);
        for i in 1..=l {
            let lower = &bases[i - 1];
            let mut d = Vec::with_capacity(bases[i].len());
            for s in &bases[i] {
                let mut col = vec![ring.zero(); lower.len()];
                for (pos, &j) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&t| t != j).collect();
                    let row = lower.iter().position(|t| *t == rest).expect("subset");
                    col[row] = if pos % 2 == 0 { seq[j].clone() } else { seq[j].neg() };
                }
                d.push(col);
            }
            diffs.push(d);
        }
        let complex = FreeComplex {
            ring: ring.clone(),
            ranks,
            diffs,
        };
        debug_assert!(complex.d_squared_is_zero());
        KoszulComplex { seq, complex, bases }
    }

    pub fn sequence(&self) -> &[Poly] {
        &self.seq
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn basis(&self, i: usize) -> &[Vec<usize>] {
        &self.bases[i]
    }

    pub fn homology_is_zero(&self, i: usize, m: &Module) -> Result<HomologyVerdict> {
        self.complex.homology_is_zero(i, m)
    }
}

/// Per-degree maps between two complexes over the same ring.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    maps: Vec<Matrix>,
}

impl ChainMap {
    /// Checks shapes and that the maps commute with the differentials.
    pub fn new(source: FreeComplex, target: FreeComplex, maps: Vec<Matrix>) -> Result<Self> {
        if maps.len() != source.ranks.len().min(target.ranks.len()) {
            return Err(AlgebraError::Invalid(
                "chain map has the wrong number of degrees".into(),
            ));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.len() != source.rank(i) || f.iter().any(|c| c.len() != target.rank(i)) {
                return Err(AlgebraError::Invalid(format!(
                    "chain map degree {i} has the wrong shape"
                )));
            }
        }
        let m = ChainMap { source, target, maps };
        if let Some(i) = m.first_noncommuting_degree() {
            return Err(AlgebraError::Invalid(format!("chain map does not commute with d_{i}")));
        }
        Ok(m)
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn map(&self, i: usize) -> &Matrix {
        &self.maps[i]
    }

    pub fn first_noncommuting_degree(&self) -> Option<usize> {
        let ring = &self.source.ring;
        for i in 1..self.maps.len() {
            let (Some(ds), Some(dt)) = (self.source.differential(i), self.target.differential(i)) else {
                continue;
            };
            for (k, col) in ds.iter().enumerate() {
                // d_t(f_i(e_k)) versus f_{i-1}(d_s(e_k)).
                let a = apply(ring, dt, self.target.rank(i - 1), &self.maps[i][k]);
                let b = apply(ring, &self.maps[i - 1], self.target.rank(i - 1), col);
                let diff: Vector = a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect();
                if !is_zero_vec(&ring.reduce_vector(&diff)) {
                    return Some(i);
                }
            }
        }
        None
    }

    pub fn commutes(&self) -> bool {
        self.first_noncommuting_degree().is_none()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        let ring = &self.source.ring;
        let n = self.maps.len().min(first.maps.len());
        let maps = (0..n)
            .map(|i| {
                first.maps[i]
                    .iter()
                    .map(|col| apply(ring, &self.maps[i], self.target.rank(i), col))
                    .collect()
            })
            .collect();
        ChainMap::new(first.source.clone(), self.target.clone(), maps)
    }
}

fn powers(ring: &PresentedRing, x: &[Poly], e: u32) -> Vec<Poly> {
    x.iter().map(|p| ring.reduce(&p.pow(e))).collect()
}

/// `K(x^m) -> K(x^n)` multiplying `e_S` by the product of `x_j^(m-n)`
/// over `j` in `S`.
pub fn koszul_power_map(ring: &PresentedRing, x: &[Poly], m: u32, n: u32) -> Result<ChainMap> {
    if n == 0 || m < n {
        return Err(AlgebraError::Invalid("power map needs m >= n >= 1".into()));
    }
    let src = KoszulComplex::new(ring, &powers(ring, x, m));
    let tgt = KoszulComplex::new(ring, &powers(ring, x, n));
    let gaps = powers(ring, x, m - n);
    let mut maps = Vec::with_capacity(x.len() + 1);
    for i in 0..=x.len() {
        let basis = src.basis(i);
        let cols = basis
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let mut col = vec![ring.zero(); basis.len()];
                let mut f = ring.one();
                for &j in s {
                    f = ring.mul(&f, &gaps[j]);
                }
                col[k] = f;
                col
            })
            .collect();
        maps.push(cols);
    }
    ChainMap::new(src.complex, tgt.complex, maps)
}

/// Whether `H_i(x^m) -> H_i(x^n)` is zero.
#[derive(Clone, Debug)]
pub struct InducedMapVerdict {
    pub is_zero: bool,
    /// A cycle of `K(x^m)` whose image is not a boundary.
    pub witness: Option<Vector>,
    /// Number of cycle generators checked.
    pub checked: usize,
}

pub fn induced_zero_on_homology(
    ring: &PresentedRing,
    x: &[Poly],
    m: u32,
    n: u32,
    i: usize,
) -> Result<InducedMapVerdict> {
    let phi = koszul_power_map(ring, x, m, n)?;
    let src = phi.source();
    let tgt = phi.target();
    let outgoing = src.differential(i).map(|d| (d, src.rank(i - 1)));
    let zs = cycles(ring, src.rank(i), outgoing, &[])?;
    let incoming = tgt.differential(i + 1).cloned().unwrap_or_default();
    let bgb = ModuleGb::compute(&incoming, tgt.rank(i), ring.order(), ring.relation_gb())?;
    let checked = zs.len();
    for z in zs {
        let image = apply(ring, phi.map(i), tgt.rank(i), &z);
        if !bgb.contains(&image) {
            return Ok(InducedMapVerdict {
                is_zero: false,
                witness: Some(z),
                checked,
            });
        }
    }
    Ok(InducedMapVerdict {
        is_zero: true,
        witness: None,
        checked,
    })
}

/// Presentation of the submodule of `R^rank` generated by `gens`.
#[derive(Clone, Debug)]
pub struct SubmodulePresentation {
    pub rank: usize,
    pub generators: Vec<Vector>,
    pub syzygies: Vec<Vector>,
}

impl SubmodulePresentation {
    pub fn new(ring: &PresentedRing, rank: usize, generators: Vec<Vector>) -> Result<Self> {
        let syzygies = if generators.is_empty() {
            Vec::new()
        } else {
            SyzygyGb::compute(ring.field(), &generators, &[], rank, ring.order(), ring.relation_gb())?.syzygies()
        };
        Ok(SubmodulePresentation {
            rank,
            generators,
            syzygies,
        })
    }

    /// Every syzygy maps the generators to zero.
    pub fn syzygies_annihilate(&self, ring: &PresentedRing) -> bool {
        self.syzygies
            .iter()
            .all(|s| is_zero_vec(&apply(ring, &self.generators, self.rank, s)))
    }
}

/// A free resolution, possibly truncated.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: FreeComplex,
    /// The last syzygy module is zero, so the complex is a full resolution.
    pub complete: bool,
    /// Generators were pruned to minimal ones by graded Nakayama.
    pub minimal: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.complex.length()
    }
}

fn vector_degree(v: &[Poly], shifts: &[u32]) -> u32 {
    v.iter()
        .zip(shifts)
        .filter(|(p, _)| !p.is_zero())
        .map(|(p, s)| p.total_degree().unwrap_or(0) + s)
        .max()
        .unwrap_or(0)
}

/// Keeps, in order of degree, each generator not in the span of the ones
/// kept so far. For homogeneous data this leaves a minimal generating set.
fn minimalize(ring: &PresentedRing, gens: Vec<Vector>, rank: usize, shifts: &[u32]) -> Result<Vec<Vector>> {
    let mut gens: Vec<Vector> = gens.into_iter().filter(|v| !is_zero_vec(v)).collect();
    gens.sort_by_key(|v| vector_degree(v, shifts));
    let mut kept: Vec<Vector> = Vec::new();
    for g in gens {
        let gb = ModuleGb::compute(&kept, rank, ring.order(), ring.relation_gb())?;
        if !gb.contains(&g) {
            kept.push(g);
        }
    }
    Ok(kept)
}

/// Resolution of `m` by iterated syzygies, at most `max_length` steps.
/// Graded input is resolved minimally.
pub fn free_resolution(m: &Module, max_length: usize) -> Result<Resolution> {
    let ring = m.ring();
    let graded = m.is_graded();
    let mut ranks = vec![m.rank()];
    let mut diffs: Vec<Matrix> = Vec::new();
    let mut shifts: Vec<u32> = vec![0; m.rank()];
    let mut gens: Vec<Vector> = m.relations().to_vec();
    loop {
        let rank = *ranks.last().expect("nonempty");
        gens = if graded {
            minimalize(ring, gens, rank, &shifts)?
        } else {
            gens.into_iter().filter(|v| !is_zero_vec(v)).collect()
        };
        if gens.is_empty() {
            return Ok(Resolution {
                complex: FreeComplex::new(ring, ranks, diffs)?,
                complete: true,
                minimal: graded,
            });
        }
        if diffs.len() == max_length {
            return Ok(Resolution {
                complex: FreeComplex::new(ring, ranks, diffs)?,
                complete: false,
                minimal: graded,
            });
        }
        let next_shifts: Vec<u32> = gens.iter().map(|g| vector_degree(g, &shifts)).collect();
        let syz = SyzygyGb::compute(ring.field(), &gens, &[], rank, ring.order(), ring.relation_gb())?.syzygies();
        ranks.push(gens.len());
        diffs.push(gens);
        shifts = next_shifts;
        gens = syz;
    }
}

/// Whether `Ext^i(R / I^n, M)` vanishes.
pub fn ext_is_zero(i: usize, ideal: &cmlab_algebra::Ideal, n: u32, m: &Module) -> Result<HomologyVerdict> {
    let quotient = Module::cyclic(&ideal.power(n));
    let res = free_resolution(&quotient, i + 1)?;
    ext_from_resolution(&res, i, m)
}

/// `Ext^i(N, M)` from a resolution of `N` that reaches degree `i + 1` (or
/// is complete).
pub fn ext_from_resolution(res: &Resolution, i: usize, m: &Module) -> Result<HomologyVerdict> {
    let c = &res.complex;
    let ring = c.ring();
    if !res.complete && c.top() < i + 1 {
        return Err(AlgebraError::Invalid(format!("resolution too short for Ext^{i}")));
    }
    let s = m.rank();
    let here = c.rank(i);
    // δ^i = transpose(d_{i+1}) : M^{r_i} -> M^{r_{i+1}}.
    let outgoing = c
        .differential(i + 1)
        .map(|d| (expand(ring, &transpose(d, here), c.rank(i + 1), s), c.rank(i + 1) * s));
    let incoming = if i == 0 {
        Vec::new()
    } else {
        match c.differential(i) {
            Some(d) => expand(ring, &transpose(d, c.rank(i - 1)), here, s),
            None => Vec::new(),
        }
    };
    let rel_next = m.block_relations(c.rank(i + 1));
    let mut v = subquotient_is_zero(
        ring,
        here * s,
        &incoming,
        outgoing.as_ref().map(|(d, r)| (d, *r)),
        &m.block_relations(here),
        &rel_next,
    )?;
    v.degree = i;
    Ok(v)
}

/// Projective dimension of a graded module over a polynomial ring, or the
/// reason it could not be determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveDimension {
    Known(usize),
    Unknown(String),
}

pub fn projective_dimension_graded(m: &Module) -> Result<ProjectiveDimension> {
    if !m.ring().is_polynomial_ring() {
        return Ok(ProjectiveDimension::Unknown("not over a polynomial ring".into()));
    }
    if !m.is_graded() {
        return Ok(ProjectiveDimension::Unknown("module is not graded".into()));
    }
    let res = free_resolution(m, m.ring().nvars() + 1)?;
    if !res.complete {
        return Ok(ProjectiveDimension::Unknown("resolution did not terminate".into()));
    }
    Ok(ProjectiveDimension::Known(res.length()))
}

impl FreeComplex {
    /// Annihilator of the homology of `C ⊗ M` in degree `i`: the
    /// intersection of `(B : z)` over cycle generators `z`.
    pub fn homology_annihilator(&self, i: usize, m: &Module) -> Result<cmlab_algebra::Ideal> {
        let ring = &self.ring;
        let s = m.rank();
        let here = self.rank(i) * s;
        let outgoing = self
            .differential(i)
            .map(|d| (expand(ring, d, self.rank(i - 1), s), self.rank(i - 1) * s));
        let rel_next = if i == 0 {
            Vec::new()
        } else {
            m.block_relations(self.rank(i - 1))
        };
        let zs = cycles(ring, here, outgoing.as_ref().map(|(d, r)| (d, *r)), &rel_next)?;
        let mut untracked = self
            .differential(i + 1)
            .map(|d| expand(ring, d, self.rank(i), s))
            .unwrap_or_default();
        untracked.extend(m.block_relations(self.rank(i)));
        let mut ann = ring.unit_ideal();
        for z in zs {
            let syz = SyzygyGb::compute(
                ring.field(),
                std::slice::from_ref(&z),
                &untracked,
                here,
                ring.order(),
                ring.relation_gb(),
            )?;
            let colon = ring.ideal(syz.syzygies().into_iter().map(|v| v[0].clone()).collect());
            ann = ann.intersection(&colon)?;
        }
        Ok(ann)
    }
}
