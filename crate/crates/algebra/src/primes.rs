//! Minimal primes by recursive splitting.
//!
//! Work happens on the preimage `I + J` in the ambient polynomial ring. A
//! branch is split whenever a Gröbner basis element factors, or when a
//! primality check finds a reducible minimal polynomial. A branch with only
//! irreducible basis elements is certified prime by reducing to a
//! zero-dimensional ideal over `k(U)` (U a maximal independent set) and
//! checking that a linear form has an irreducible minimal polynomial of
//! full degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dimension::{mask_vars, maximal_independent_set};
use crate::error::{AlgebraError, Result};
use crate::factor;
use crate::groebner::ModuleGb;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::poly::Poly;
use crate::presented::{Ideal, PresentedRing};

/// Largest number of ambient variables accepted.
pub const MAX_PRIME_VARS: usize = 6;
/// Largest generator degree accepted.
pub const MAX_PRIME_DEGREE: u32 = 6;
/// Linear forms tried before giving up on a primality certificate.
pub const PRIMALITY_ATTEMPTS: usize = 12;
const MAX_BRANCHES: usize = 5_000;

enum Verdict {
    Prime,
    Split(Vec<Poly>),
    Replace(Poly),
    Saturate(Poly),
}

/// Minimal primes over `ideal`, as ideals of its ring, sorted by their
/// printed generators.
pub fn minimal_primes(ideal: &Ideal) -> Result<Vec<Ideal>> {
    let ring = ideal.ring();
    if ring.nvars() > MAX_PRIME_VARS {
        return Err(AlgebraError::GuardExceeded(format!(
            "minimal primes support at most {MAX_PRIME_VARS} variables"
        )));
    }
    let mut gens: Vec<Poly> = ring.relations().to_vec();
    gens.extend(ideal.generators().iter().cloned());
    if let Some(d) = gens.iter().filter_map(Poly::total_degree).max() {
        if d > MAX_PRIME_DEGREE {
            return Err(AlgebraError::GuardExceeded(format!(
                "minimal primes support generators of degree at most {MAX_PRIME_DEGREE}"
            )));
        }
    }
    let poly_ring = PresentedRing::polynomial(ring.ambient().clone());
    let mut work = vec![poly_ring.ideal(gens)];
    let mut found: Vec<Ideal> = Vec::new();
    let mut steps = 0;
    while let Some(q) = work.pop() {
        steps += 1;
        if steps > MAX_BRANCHES {
            return Err(AlgebraError::GuardExceeded(
                "minimal prime search branched too often".into(),
            ));
        }
        if q.is_unit()? {
            continue;
        }
        let mut pruned = false;
        for p in &found {
            if q.contains_ideal(p)? {
                pruned = true;
                break;
            }
        }
        if pruned {
            continue;
        }
        match classify(&q)? {
            Verdict::Prime => {
                let p = poly_ring.ideal(q.groebner_basis()?);
                found.retain(|f| !f.contains_ideal(&p).unwrap_or(false));
                found.push(p);
            }
            Verdict::Split(parts) => {
                for f in parts.into_iter().rev() {
                    work.push(q.with_generator(&f));
                }
            }
            Verdict::Replace(f) => work.push(q.with_generator(&f)),
            Verdict::Saturate(h) => {
                work.push(q.with_generator(&h));
                work.push(q.saturation(&h)?);
            }
        }
    }
    // Final minimality pass.
    let mut minimal: Vec<Ideal> = Vec::new();
    for (i, p) in found.iter().enumerate() {
        let mut keep = true;
        for (j, other) in found.iter().enumerate() {
            if i != j && p.contains_ideal(other)? && !(other.contains_ideal(p)? && j > i) {
                keep = false;
                break;
            }
        }
        if keep {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<Ideal> = minimal
        .into_iter()
        .map(|p| ring.ideal(p.groebner_basis().expect("already computed")))
        .collect();
    out.sort_by_key(|p| p.format());
    out.dedup_by_key(|p| p.format());
    Ok(out)
}

fn classify(q: &Ideal) -> Result<Verdict> {
    let gb = q.groebner_basis()?;
    for g in &gb {
        if g.is_constant() {
            continue;
        }
        let fs = factor::factor(g)?;
        if fs.len() > 1 {
            return Ok(Verdict::Split(fs.into_iter().map(|(f, _)| f).collect()));
        }
        if fs[0].1 > 1 {
            return Ok(Verdict::Replace(fs[0].0.clone()));
        }
    }
    if gb.len() == 1 || gb.iter().all(|g| g.total_degree() == Some(1)) {
        return Ok(Verdict::Prime);
    }
    certify(q, &gb)
}

/// Relabels variables (`perm[i]` is the new index of variable `i`) and
/// sorts for `order`.
fn relabel(p: &Poly, perm: &[usize], order: MonomialOrder) -> Poly {
    Poly::from_terms(
        p.terms().iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect(),
        order,
    )
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Coefficient of the largest power product in the first `split` variables,
/// as a polynomial in the remaining ones.
fn leading_coefficient_in_block(p: &Poly, split: usize) -> Poly {
    let (lm, _) = p.leading_term().expect("nonzero");
    let head = |m: &Monomial| m.exponents()[..split].to_vec();
    let key = head(lm);
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| head(m) == key)
        .map(|(m, c)| {
            let mut ex = *m.exponents();
            for e in ex.iter_mut().take(split) {
                *e = 0;
            }
            (Monomial::from_exponents(&ex), c.clone())
        })
        .collect();
    Poly::from_terms(terms, p.order())
}

fn certify(q: &Ideal, gb: &[Poly]) -> Result<Verdict> {
    let ring = q.ring();
    let n = ring.nvars();
    let field = ring.field();
    let base_order = ring.order();
    let leads: Vec<Monomial> = gb.iter().map(|g| *g.leading_monomial().unwrap()).collect();
    let u_mask = maximal_independent_set(&leads, n).expect("proper ideal");
    let u_vars = mask_vars(u_mask);
    let x_vars: Vec<usize> = (0..n).filter(|v| u_mask & (1 << v) == 0).collect();
    let nx = x_vars.len();

    // New layout: X' first, then t (elimination variable), then U.
    let mut perm = vec![0usize; n];
    for (k, &v) in x_vars.iter().enumerate() {
        perm[v] = k;
    }
    for (k, &v) in u_vars.iter().enumerate() {
        perm[v] = nx + 1 + k;
    }
    let back = {
        let mut full = perm.clone();
        full.push(nx); // t, never mapped back
        inverse(&full)
    };
    let block = MonomialOrder::Block { split: nx };
    let gens: Vec<Poly> = gb.iter().map(|g| relabel(g, &perm, block)).collect();
    let bgb = ModuleGb::ideal(&gens, block, &[])?.polys();

    // Saturate by the product of leading coefficients over k[U].
    let mut h = Poly::constant(field.one(), block);
    for g in &bgb {
        let c = leading_coefficient_in_block(g, nx);
        if !c.is_constant() {
            h = h.mul(&c);
        }
    }
    if !h.is_constant() {
        let h_back = restrict_back(&h, &back, n, base_order).expect("h lies in k[U]");
        let sat = q.saturation(&h_back)?;
        if !sat.equals(q)? {
            return Ok(Verdict::Saturate(h_back));
        }
    }

    // Dimension of K[X'] / Q over K = k(U).
    let x_leads: Vec<Monomial> = bgb
        .iter()
        .map(|g| {
            let mut ex = *g.leading_monomial().unwrap().exponents();
            for e in ex.iter_mut().skip(nx) {
                *e = 0;
            }
            Monomial::from_exponents(&ex)
        })
        .collect();
    let d = count_standard(&x_leads, nx);
    if d == 1 {
        return Ok(Verdict::Prime);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x0707_2024);
    for attempt in 0..PRIMALITY_ATTEMPTS {
        let coeffs: Vec<i64> = (0..nx)
            .map(|i| {
                if attempt == 0 {
                    1
                } else if attempt == 1 {
                    i as i64 + 1
                } else {
                    rng.gen_range(1..=97)
                }
            })
            .collect();
        // ell in the relabelled layout.
        let mut ell = Poly::zero(block);
        for (k, &c) in coeffs.iter().enumerate() {
            ell = ell.add(&Poly::var(k, field, block).scale(&field.from_i64(c)));
        }
        let t = Poly::var(nx, field, block);
        let mut sys = bgb.clone();
        sys.push(t.sub(&ell));
        let elim = ModuleGb::ideal(&sys, block, &[])?.polys();
        // Keep the part free of X', moved to [t, U] with t dominant.
        let tu_order = MonomialOrder::Block { split: 1 };
        let free: Vec<Poly> = elim
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| (0..nx).all(|v| m.exp(v) == 0)))
            .map(|g| drop_leading_vars(g, nx, tu_order))
            .collect();
        let tu_gb = ModuleGb::ideal(&free, tu_order, &[])?.polys();
        let Some(mu) = tu_gb
            .iter()
            .filter(|g| g.degree_in(0) > 0)
            .min_by_key(|g| g.degree_in(0))
        else {
            continue;
        };
        let fs = factor::factor(mu)?;
        let t_factors: Vec<&(Poly, u32)> = fs.iter().filter(|(f, _)| f.degree_in(0) > 0).collect();
        let to_base = |f: &Poly| -> Poly {
            // [t, U] layout -> original variables, with t replaced by ell.
            let mut images = Vec::with_capacity(1 + u_vars.len());
            let ell_orig = {
                let mut e = Poly::zero(base_order);
                for (k, &c) in coeffs.iter().enumerate() {
                    e = e.add(&Poly::var(x_vars[k], field, base_order).scale(&field.from_i64(c)));
                }
                e
            };
            images.push(ell_orig);
            for &v in &u_vars {
                images.push(Poly::var(v, field, base_order));
            }
            f.substitute(&images, base_order)
        };
        // Factors of lower degree than the minimal polynomial, and factors
        // in k[U] alone, never lie in Q, so every branch grows.
        if t_factors.len() >= 2 {
            return Ok(Verdict::Split(fs.iter().map(|(f, _)| to_base(f)).collect()));
        }
        let (mf, mult) = t_factors[0];
        if *mult > 1 {
            return Ok(Verdict::Replace(to_base(mf)));
        }
        if mf.degree_in(0) as usize == d {
            return Ok(Verdict::Prime);
        }
    }
    Err(AlgebraError::PrimalityUndecided {
        attempts: PRIMALITY_ATTEMPTS,
    })
}

/// Removes the first `k` variables (which must not occur) by shifting the
/// rest down.
fn drop_leading_vars(p: &Poly, k: usize, order: MonomialOrder) -> Poly {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[k..]), c.clone()))
        .collect();
    Poly::from_terms(terms, order)
}

/// Maps a polynomial in the relabelled layout (no `t`) back to the
/// original variables.
fn restrict_back(p: &Poly, back: &[usize], n: usize, order: MonomialOrder) -> Option<Poly> {
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut ex = [0u16; MAX_VARS];
        for (i, &b) in back.iter().enumerate() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            if b >= n {
                return None;
            }
            ex[b] = e;
        }
        terms.push((Monomial::from_exponents(&ex), c.clone()));
    }
    Some(Poly::from_terms(terms, order))
}

/// Number of monomials in the first `nvars` variables outside the monomial
/// ideal generated by `leads` (which must be zero-dimensional there).
fn count_standard(leads: &[Monomial], nvars: usize) -> usize {
    // Bound each exponent by the pure powers present.
    let mut bound = vec![u16::MAX; nvars];
    for m in leads {
        let supp: Vec<usize> = m.support().collect();
        if supp.len() == 1 && supp[0] < nvars {
            bound[supp[0]] = bound[supp[0]].min(m.exp(supp[0]));
        }
    }
    let mut count = 0;
    let mut ex = vec![0u16; nvars];
    loop {
        let mono = Monomial::from_exponents(&ex);
        if !leads.iter().any(|l| l.divides(&mono)) {
            count += 1;
        }
        // Odometer over the box.
        let mut i = 0;
        loop {
            if i == nvars {
                return count;
            }
            ex[i] += 1;
            if ex[i] < bound[i] {
                break;
            }
            ex[i] = 0;
            i += 1;
        }
    }
}
