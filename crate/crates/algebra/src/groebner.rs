//! Buchberger's algorithm for submodules of free modules `k[x]^r`.
//!
//! Vectors are compared position-over-term with position 0 the largest, so
//! the leading term of a vector sits in its first nonzero component. Ideals
//! are the rank-one case. Quotient rings `k[x]/J` are handled by adding
//! `J * e_k` for every position as extra generators.

use std::cmp::Ordering;

use crate::budget::Meter;
use crate::error::Result;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

/// An element of a free module, one polynomial per position.
pub type Vector = Vec<Poly>;

pub fn zero_vector(rank: usize, order: MonomialOrder) -> Vector {
    vec![Poly::zero(order); rank]
}

pub fn is_zero_vector(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// Leading position, monomial and coefficient.
pub fn vector_lead(v: &[Poly]) -> Option<(usize, Monomial, Scalar)> {
    v.iter()
        .enumerate()
        .find_map(|(i, p)| p.leading_term().map(|(m, c)| (i, *m, c.clone())))
}

/// Orders leading terms position-over-term, position 0 largest.
pub fn cmp_lead(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

fn mask(m: &Monomial) -> u32 {
    let mut k = 0u32;
    for (i, &e) in m.exponents().iter().enumerate().take(MAX_VARS) {
        if e > 0 {
            k |= 1 << i;
        }
    }
    k
}

fn vector_degree(v: &[Poly]) -> u32 {
    v.iter().filter_map(Poly::total_degree).max().unwrap_or(0)
}

fn scale_vector(v: &[Poly], c: &Scalar) -> Vector {
    v.iter().map(|p| p.scale(c)).collect()
}

fn monic_vector(v: Vector) -> Vector {
    match vector_lead(&v) {
        Some((_, _, c)) if !c.is_one() => scale_vector(&v, &c.inv().expect("nonzero")),
        _ => v,
    }
}

#[derive(Clone, Debug)]
struct Elem {
    v: Vector,
    pos: usize,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    relation: bool,
}

impl Elem {
    fn new(v: Vector, sugar: u32, relation: bool) -> Self {
        let v = monic_vector(v);
        let (pos, lm, _) = vector_lead(&v).expect("nonzero vector");
        Elem {
            mask: mask(&lm),
            v,
            pos,
            lm,
            sugar,
            relation,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reducer set: elements indexed by leading position.
#[derive(Clone, Debug)]
struct Reducers {
    rank: usize,
    order: MonomialOrder,
    elems: Vec<Elem>,
    by_pos: Vec<Vec<usize>>,
}

impl Reducers {
    fn new(rank: usize, order: MonomialOrder) -> Self {
        Reducers {
            rank,
            order,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); rank],
        }
    }

    fn find(&self, pos: usize, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mk = mask(m);
        self.by_pos[pos].iter().copied().find(|&k| {
            Some(k) != skip && {
                let e = &self.elems[k];
                e.mask & !mk == 0 && e.lm.divides(m)
            }
        })
    }

    /// Reduces every term of `v`. `skip` excludes one element (used when
    /// tail-reducing an element against its siblings).
    fn reduce_full(&self, mut v: Vector, skip: Option<usize>, tick: &mut dyn FnMut() -> Result<()>) -> Result<Vector> {
        let mut rem: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); self.rank];
        while let Some((pos, m, c)) = vector_lead(&v) {
            if let Some(k) = self.find(pos, &m, skip) {
                let g = &self.elems[k];
                let q = g.lm.quotient_of(&m).expect("divides");
                for (idx, comp) in g.v.iter().enumerate().skip(pos) {
                    if !comp.is_zero() {
                        v[idx] = v[idx].sub_mul_term(&c, &q, comp);
                    }
                }
                tick()?;
            } else {
                let t = v[pos].pop_leading().expect("nonzero");
                rem[pos].push(t);
            }
        }
        Ok(rem
            .into_iter()
            .map(|mut terms| {
                terms.reverse();
                Poly::from_terms(terms, self.order)
            })
            .collect())
    }

    /// Reduces leading terms only, and only while the leading position is
    /// below `split`. Returns the partially reduced vector.
    fn reduce_top_below(&self, mut v: Vector, split: usize, tick: &mut dyn FnMut() -> Result<()>) -> Result<Vector> {
        loop {
            let Some((pos, m, c)) = vector_lead(&v) else {
                return Ok(v);
            };
            if pos >= split {
                return Ok(v);
            }
            let Some(k) = self.find(pos, &m, None) else {
                return Ok(v);
            };
            let g = &self.elems[k];
            let q = g.lm.quotient_of(&m).expect("divides");
            for (idx, comp) in g.v.iter().enumerate().skip(pos) {
                if !comp.is_zero() {
                    v[idx] = v[idx].sub_mul_term(&c, &q, comp);
                }
            }
            tick()?;
        }
    }
}

/// Buchberger state with Gebauer-Möller pair management.
struct Engine {
    red: Reducers,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    meter: Meter,
}

impl Engine {
    fn new(rank: usize, order: MonomialOrder) -> Self {
        Engine {
            red: Reducers::new(rank, order),
            active: Vec::new(),
            pairs: Vec::new(),
            meter: Meter::start(),
        }
    }

    /// Adds the quotient relations `J * e_k` at each position in `positions`;
    /// `relations` must already be a Gröbner basis of `J`.
    fn add_relations(&mut self, relations: &[Poly], positions: std::ops::Range<usize>) {
        let order = self.red.order;
        for k in positions {
            for r in relations {
                let mut v = zero_vector(self.red.rank, order);
                v[k] = r.with_order(order);
                let e = Elem::new(v, r.total_degree().unwrap_or(0), true);
                self.push(e);
            }
        }
    }

    fn push(&mut self, e: Elem) -> usize {
        let idx = self.red.elems.len();
        self.red.by_pos[e.pos].push(idx);
        self.red.elems.push(e);
        self.active.push(true);
        idx
    }

    fn reduce(&mut self, v: Vector) -> Result<Vector> {
        let meter = &mut self.meter;
        self.red.reduce_full(v, None, &mut || meter.tick())
    }

    /// Reduces `v` and, if it survives, inserts it with pair updates.
    fn insert(&mut self, v: Vector, sugar: u32) -> Result<()> {
        let v = self.reduce(v)?;
        if is_zero_vector(&v) {
            return Ok(());
        }
        let sugar = sugar.max(vector_degree(&v));
        let e = Elem::new(v, sugar, false);
        self.update(e);
        Ok(())
    }

    fn update(&mut self, h: Elem) {
        let order = self.red.order;
        let rank_one = self.red.rank == 1;
        let hpos = h.pos;
        let hlm = h.lm;
        let hsugar = h.sugar;
        let t = self.red.elems.len();

        let mut fresh: Vec<(Pair, bool)> = self.red.by_pos[hpos]
            .iter()
            .filter(|&&i| self.active[i])
            .map(|&i| {
                let g = &self.red.elems[i];
                let lcm = g.lm.lcm(&hlm);
                let sugar = (g.sugar + lcm.degree() - g.lm.degree()).max(hsugar + lcm.degree() - hlm.degree());
                let coprime = rank_one && g.lm.is_coprime(&hlm);
                (
                    Pair {
                        i,
                        j: t,
                        pos: hpos,
                        lcm,
                        sugar,
                    },
                    coprime,
                )
            })
            .collect();

        // Chain criterion on the existing pairs.
        let elems = &self.red.elems;
        self.pairs.retain(|p| {
            if p.pos != hpos || !hlm.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lm.lcm(&hlm);
            let lj = elems[p.j].lm.lcm(&hlm);
            p.lcm == li || p.lcm == lj
        });

        // Drop new pairs whose lcm is a proper multiple of another new lcm.
        let lcms: Vec<Monomial> = fresh.iter().map(|(p, _)| p.lcm).collect();
        fresh.retain(|(p, _)| !lcms.iter().any(|l| *l != p.lcm && l.divides(&p.lcm)));

        // Among equal lcms keep one; drop the whole class if the product
        // criterion applies to any member.
        fresh.sort_by(|a, b| order.cmp(&a.0.lcm, &b.0.lcm).then(a.0.i.cmp(&b.0.i)));
        let mut kept = Vec::new();
        let mut k = 0;
        while k < fresh.len() {
            let mut end = k + 1;
            while end < fresh.len() && fresh[end].0.lcm == fresh[k].0.lcm {
                end += 1;
            }
            if !fresh[k..end].iter().any(|(_, coprime)| *coprime) {
                kept.push(fresh[k].0.clone());
            }
            k = end;
        }

        // Older elements whose leading term is now redundant leave the basis.
        for &i in &self.red.by_pos[hpos] {
            if self.active[i] && hlm.divides(&self.red.elems[i].lm) {
                self.active[i] = false;
            }
        }
        self.push(h);
        self.pairs.extend(kept);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.red.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| b.pos.cmp(&a.pos))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let gi = &self.red.elems[p.i];
        let gj = &self.red.elems[p.j];
        let qi = gi.lm.quotient_of(&p.lcm).expect("lcm");
        let qj = gj.lm.quotient_of(&p.lcm).expect("lcm");
        let one = gi.v[gi.pos].leading_coefficient().unwrap().field().one();
        gi.v.iter()
            .zip(gj.v.iter())
            .map(|(a, b)| a.mul_term(&one, &qi).sub_mul_term(&one, &qj, b))
            .collect()
    }

    fn run(&mut self) -> Result<()> {
        while let Some(p) = self.next_pair() {
            self.meter.tick()?;
            let s = self.spoly(&p);
            self.insert(s, p.sugar)?;
        }
        Ok(())
    }

    /// Interreduces the active elements into the reduced basis.
    fn finish(mut self) -> Result<Reducers> {
        let order = self.red.order;
        let rank = self.red.rank;
        let live: Vec<usize> = (0..self.red.elems.len()).filter(|&i| self.active[i]).collect();
        let mut pruned = Reducers::new(rank, order);
        for &i in &live {
            pruned.by_pos[self.red.elems[i].pos].push(pruned.elems.len());
            pruned.elems.push(self.red.elems[i].clone());
        }
        let mut out = Reducers::new(rank, order);
        let meter = &mut self.meter;
        let mut reduced = Vec::with_capacity(pruned.elems.len());
        for k in 0..pruned.elems.len() {
            let e = &pruned.elems[k];
            let mut tail = e.v.clone();
            let lead = tail[e.pos].pop_leading().expect("nonzero");
            let mut tail = pruned.reduce_full(tail, Some(k), &mut || meter.tick())?;
            tail[e.pos] = tail[e.pos].add(&Poly::term(lead.1, lead.0, order));
            reduced.push(Elem::new(tail, e.sugar, e.relation));
        }
        reduced.sort_by(|a, b| cmp_lead(order, (b.pos, &b.lm), (a.pos, &a.lm)));
        for e in reduced {
            out.by_pos[e.pos].push(out.elems.len());
            out.elems.push(e);
        }
        Ok(out)
    }
}

/// A reduced Gröbner basis of a submodule of `k[x]^rank` (plus quotient
/// relations), usable for normal forms and membership.
#[derive(Clone, Debug)]
pub struct ModuleGb {
    red: Reducers,
}

impl ModuleGb {
    /// Computes the reduced basis of `gens + J * k[x]^rank`, where
    /// `relations` is a Gröbner basis of `J` in the same order.
    pub fn compute(gens: &[Vector], rank: usize, order: MonomialOrder, relations: &[Poly]) -> Result<Self> {
        let mut eng = Engine::new(rank, order);
        eng.add_relations(relations, 0..rank);
        for g in gens {
            debug_assert_eq!(g.len(), rank);
            let g: Vector = g.iter().map(|p| p.with_order(order)).collect();
            let s = vector_degree(&g);
            eng.insert(g, s)?;
            eng.run()?;
        }
        Ok(ModuleGb { red: eng.finish()? })
    }

    /// Ideal convenience wrapper.
    pub fn ideal(gens: &[Poly], order: MonomialOrder, relations: &[Poly]) -> Result<Self> {
        let gens: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::compute(&gens, 1, order, relations)
    }

    pub fn rank(&self) -> usize {
        self.red.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.red.order
    }

    /// Basis vectors, largest leading term first.
    pub fn basis(&self) -> Vec<Vector> {
        self.red.elems.iter().map(|e| e.v.clone()).collect()
    }

    /// Rank-one basis as polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        self.red.elems.iter().map(|e| e.v[0].clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.red.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.red.elems.is_empty()
    }

    /// Leading positions and monomials.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.red.elems.iter().map(|e| (e.pos, e.lm)).collect()
    }

    pub fn reduce(&self, v: &[Poly]) -> Vector {
        let v: Vector = v.iter().map(|p| p.with_order(self.red.order)).collect();
        self.red
            .reduce_full(v, None, &mut || Ok(()))
            .expect("unmetered reduction")
    }

    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        self.reduce(std::slice::from_ref(p)).pop().expect("rank one")
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// True if the module is everything (some basis element is a unit
    /// vector at every position).
    pub fn is_full(&self) -> bool {
        (0..self.red.rank).all(|k| self.red.by_pos[k].iter().any(|&i| self.red.elems[i].lm.is_one()))
    }
}

/// Gröbner data for the map `R^s -> R^rank / U` sending `e_i` to
/// `tracked[i]`, where `R = k[x]/J` and `U` is generated by `untracked`.
///
/// Gives the kernel of the map (relative syzygies) and lifts of image
/// elements back to coefficient vectors.
#[derive(Clone, Debug)]
pub struct SyzygyGb {
    red: Reducers,
    rank: usize,
    cols: usize,
    relations: Vec<Poly>,
}

impl SyzygyGb {
    pub fn compute(
        field: Field,
        tracked: &[Vector],
        untracked: &[Vector],
        rank: usize,
        order: MonomialOrder,
        relations: &[Poly],
    ) -> Result<Self> {
        let cols = tracked.len();
        let total = rank + cols;
        let mut eng = Engine::new(total, order);
        eng.add_relations(relations, 0..total);
        for u in untracked {
            debug_assert_eq!(u.len(), rank);
            let mut v: Vector = u.iter().map(|p| p.with_order(order)).collect();
            v.resize(total, Poly::zero(order));
            let s = vector_degree(&v);
            eng.insert(v, s)?;
            eng.run()?;
        }
        let one = Poly::constant(field.one(), order);
        for (i, t) in tracked.iter().enumerate() {
            debug_assert_eq!(t.len(), rank);
            let mut v: Vector = t.iter().map(|p| p.with_order(order)).collect();
            v.resize(total, Poly::zero(order));
            v[rank + i] = one.clone();
            let s = vector_degree(&v);
            eng.insert(v, s)?;
            eng.run()?;
        }
        Ok(SyzygyGb {
            red: eng.finish()?,
            rank,
            cols,
            relations: relations.to_vec(),
        })
    }

    /// Generators of `{a in R^s : sum a_i tracked_i in U}`, with entries in
    /// normal form modulo `J` and trivial (all-zero in `R`) vectors removed.
    pub fn syzygies(&self) -> Vec<Vector> {
        let order = self.red.order;
        let jgb = Reducers::relations_only(&self.relations, order);
        let mut out = Vec::new();
        for e in &self.red.elems {
            if e.pos < self.rank || e.relation {
                continue;
            }
            let v: Vector = e.v[self.rank..].iter().map(|p| jgb.reduce_poly(p)).collect();
            if !is_zero_vector(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Coefficients `a` with `z = sum a_i tracked_i` modulo `U` and `J`, or
    /// `None` if `z` is not in the image.
    pub fn lift(&self, z: &[Poly]) -> Option<Vec<Poly>> {
        let order = self.red.order;
        let mut v: Vector = z.iter().map(|p| p.with_order(order)).collect();
        v.resize(self.rank + self.cols, Poly::zero(order));
        let r = self
            .red
            .reduce_top_below(v, self.rank, &mut || Ok(()))
            .expect("unmetered reduction");
        if !is_zero_vector(&r[..self.rank]) {
            return None;
        }
        let jgb = Reducers::relations_only(&self.relations, order);
        Some(r[self.rank..].iter().map(|p| jgb.reduce_poly(&p.neg())).collect())
    }

    /// Normal form of `z` modulo the image plus `U` (first `rank` entries).
    pub fn reduce_image(&self, z: &[Poly]) -> Vector {
        let order = self.red.order;
        let mut v: Vector = z.iter().map(|p| p.with_order(order)).collect();
        v.resize(self.rank + self.cols, Poly::zero(order));
        // Only basis elements led in the first `rank` positions matter;
        // reducing the full vector and discarding the tail is equivalent
        // because those elements never touch leading positions past `rank`.
        let mut r = self
            .red
            .reduce_full(v, None, &mut || Ok(()))
            .expect("unmetered reduction");
        r.truncate(self.rank);
        r
    }
}

impl Reducers {
    fn relations_only(relations: &[Poly], order: MonomialOrder) -> ModuleGbView {
        let mut r = Reducers::new(1, order);
        for p in relations {
            let e = Elem::new(vec![p.with_order(order)], 0, true);
            r.by_pos[0].push(r.elems.len());
            r.elems.push(e);
        }
        ModuleGbView(r)
    }
}

struct ModuleGbView(Reducers);

impl ModuleGbView {
    fn reduce_poly(&self, p: &Poly) -> Poly {
        self.0
            .reduce_full(vec![p.clone()], None, &mut || Ok(()))
            .expect("unmetered reduction")
            .pop()
            .expect("rank one")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use crate::scalar::Field;

    fn ring(names: &[&str], order: MonomialOrder) -> PolyRing {
        PolyRing::new(Field::Rational, names, order).unwrap()
    }

    #[test]
    fn lex_example() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gens = vec![r.parse("x*y - 1").unwrap(), r.parse("y^2 - 1").unwrap()];
        let gb = ModuleGb::ideal(&gens, r.order(), &[]).unwrap();
        let shown: Vec<String> = gb.polys().iter().map(|p| r.format(p)).collect();
        assert_eq!(shown, ["x - y", "y^2 - 1"]);
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let gb = ModuleGb::ideal(&[r.zero()], r.order(), &[]).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn syzygies_of_koszul_pair() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let x = r.var(0);
        let y = r.var(1);
        let s = SyzygyGb::compute(r.field(), &[vec![x.clone()], vec![y.clone()]], &[], 1, r.order(), &[]).unwrap();
        let syz = s.syzygies();
        assert_eq!(syz.len(), 1);
        // (y, -x) up to scaling
        let v = &syz[0];
        let check = v[0].mul(&x).add(&v[1].mul(&y));
        assert!(check.is_zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn lift_expresses_members() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let g = [r.parse("x^2").unwrap(), r.parse("x*y + y^2").unwrap()];
        let tracked: Vec<Vector> = g.iter().map(|p| vec![p.clone()]).collect();
        let s = SyzygyGb::compute(r.field(), &tracked, &[], 1, r.order(), &[]).unwrap();
        let z = r.parse("x^3 + 2*x*y^2 + 2*y^3").unwrap();
        let a = s.lift(std::slice::from_ref(&z)).unwrap();
        let back = a[0].mul(&g[0]).add(&a[1].mul(&g[1]));
        assert_eq!(back, z);
        assert!(s.lift(&[r.parse("x").unwrap()]).is_none());
    }
}
