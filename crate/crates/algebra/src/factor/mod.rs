//! Factorization of multivariate polynomials over `Q` and `GF(p)`.
//!
//! Univariate inputs go straight to the modular (prime field) or Zassenhaus
//! (rational) factorizers. Multivariate inputs use Kronecker substitution
//! `x_i -> t^(D_i)`: the univariate image is factored and sub-multisets of
//! its irreducible factors are mapped back and trial-divided, smallest
//! first, so every divisor found is irreducible.

pub mod fp;
pub mod zx;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

use fp::{Fp, Up};
use zx::Zp;

/// Largest Kronecker image degree attempted.
pub const MAX_IMAGE_DEGREE: usize = 1024;
/// Largest number of recombination candidates tried.
pub const MAX_CANDIDATES: usize = 200_000;

/// Exact quotient `f / g`, or `None` if `g` does not divide `f`.
pub fn div_exact(f: &Poly, g: &Poly) -> Option<Poly> {
    let order = f.order();
    let (gm, gc) = g.leading_term().expect("nonzero divisor");
    let ginv = gc.inv().ok()?;
    let mut r = f.clone();
    let mut q = Vec::new();
    while let Some((m, c)) = r.leading_term() {
        let t = gm.quotient_of(m)?;
        let k = c * &ginv;
        r = r.sub_mul_term(&k, &t, g);
        q.push((t, k));
    }
    Some(Poly::from_terms(q, order))
}

/// Normalizes a factor: monic for prime fields, primitive integer with
/// positive leading coefficient over the rationals.
pub fn normalize(p: &Poly) -> Poly {
    match p.field() {
        Some(Field::Rational) => {
            let order = p.order();
            let (_, coeffs) = integer_coefficients(p);
            let g = coeffs.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
            let lc_neg = coeffs.last().is_some_and(|c| c < &BigInt::zero());
            let g = if lc_neg { -g } else { g };
            Poly::from_terms(
                p.terms()
                    .iter()
                    .zip(coeffs)
                    .map(|((m, _), c)| (*m, Field::Rational.from_bigint(&(c / &g))))
                    .collect(),
                order,
            )
        }
        _ => p.monic(),
    }
}

/// Scales a rational polynomial to integer coefficients (in term order).
fn integer_coefficients(p: &Poly) -> (BigInt, Vec<BigInt>) {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.as_rational().expect("rational").denom());
    }
    let coeffs = p
        .terms()
        .iter()
        .map(|(_, c)| {
            let q = c.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    (den, coeffs)
}

/// Irreducible factors with multiplicities, normalized as in
/// [`normalize`] and sorted. Constant factors are dropped.
pub fn factor(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    if p.is_zero() {
        return Err(AlgebraError::Invalid("cannot factor zero".into()));
    }
    let field = p.field().expect("nonzero");
    let order = p.order();
    let mut out: Vec<(Poly, u32)> = Vec::new();

    // Monomial content.
    let mut content = [u16::MAX; crate::monomial::MAX_VARS];
    for (m, _) in p.terms() {
        for (v, c) in content.iter_mut().enumerate() {
            *c = (*c).min(m.exp(v));
        }
    }
    let content_mono = Monomial::from_exponents(&content);
    let mut rest = p.clone();
    if !content_mono.is_one() {
        rest = rest.map_monomials(|m| content_mono.quotient_of(m).expect("content divides"));
        for v in content_mono.support() {
            out.push((Poly::var(v, field, order), content_mono.exp(v) as u32));
        }
    }

    let vars = rest.variables();
    if vars.len() == 1 {
        out.extend(factor_univariate(&rest, vars[0])?);
    } else if vars.len() > 1 {
        out.extend(factor_kronecker(&rest, &vars)?);
    }

    let mut merged: BTreeMap<String, (Poly, u32)> = BTreeMap::new();
    for (f, m) in out {
        let f = normalize(&f);
        let key = format!("{:?}", f);
        merged.entry(key).and_modify(|e| e.1 += m).or_insert((f, m));
    }
    let mut res: Vec<(Poly, u32)> = merged.into_values().collect();
    res.sort_by(|a, b| {
        let oa = a.0.leading_monomial().unwrap();
        let ob = b.0.leading_monomial().unwrap();
        order.cmp(oa, ob).then_with(|| a.1.cmp(&b.1))
    });
    Ok(res)
}

/// Product of the distinct irreducible factors.
pub fn squarefree_part(p: &Poly) -> Result<Poly> {
    let field = p.field().expect("nonzero");
    let mut acc = Poly::constant(field.one(), p.order());
    for (f, _) in factor(p)? {
        acc = acc.mul(&f);
    }
    Ok(acc)
}

fn to_dense_fp(p: &Poly, var: usize, modulus: u32) -> Up {
    let n = p.degree_in(var) as usize;
    let mut v = vec![0u64; n + 1];
    for (m, c) in p.terms() {
        v[m.exp(var) as usize] = c.residue().expect("prime field") as u64;
    }
    Fp::new(modulus as u64).trim(v)
}

fn to_dense_z(p: &Poly, var: usize) -> Zp {
    let (_, coeffs) = integer_coefficients(p);
    let n = p.degree_in(var) as usize;
    let mut v = vec![BigInt::zero(); n + 1];
    for ((m, _), c) in p.terms().iter().zip(coeffs) {
        v[m.exp(var) as usize] = c;
    }
    zx::trim(v)
}

fn from_dense(coeffs: impl Iterator<Item = Scalar>, var: usize, order: crate::MonomialOrder) -> Poly {
    let terms = coeffs
        .enumerate()
        .map(|(i, c)| (Monomial::var_pow(var, i as u16), c))
        .collect();
    Poly::from_terms(terms, order)
}

fn factor_univariate(p: &Poly, var: usize) -> Result<Vec<(Poly, u32)>> {
    let order = p.order();
    let field = p.field().expect("nonzero");
    Ok(match field {
        Field::Prime(q) => {
            let f = Fp::new(q as u64);
            let (_, fs) = f.factor(&to_dense_fp(p, var, q));
            fs.into_iter()
                .map(|(g, m)| {
                    let coeffs = g.into_iter().map(|c| field.from_i64(c as i64));
                    (from_dense(coeffs, var, order), m)
                })
                .collect()
        }
        Field::Rational => {
            let (_, fs) = zx::factor(&to_dense_z(p, var));
            fs.into_iter()
                .map(|(g, m)| {
                    let coeffs = g.into_iter().map(|c| field.from_bigint(&c));
                    (from_dense(coeffs, var, order), m)
                })
                .collect()
        }
    })
}

/// Univariate factors of the image, as `(coefficients in the field, mult)`.
fn image_factors(img: &Poly, field: Field) -> Vec<(Poly, u32)> {
    match field {
        Field::Prime(q) => {
            let f = Fp::new(q as u64);
            let (_, fs) = f.factor(&to_dense_fp(img, 0, q));
            fs.into_iter()
                .map(|(g, m)| {
                    let c = g.into_iter().map(|c| field.from_i64(c as i64));
                    (from_dense(c, 0, img.order()), m)
                })
                .collect()
        }
        Field::Rational => {
            let (_, fs) = zx::factor(&to_dense_z(img, 0));
            fs.into_iter()
                .map(|(g, m)| {
                    let c = g.into_iter().map(|c| field.from_bigint(&c));
                    (from_dense(c, 0, img.order()), m)
                })
                .collect()
        }
    }
}

fn factor_kronecker(p: &Poly, vars: &[usize]) -> Result<Vec<(Poly, u32)>> {
    let order = p.order();
    let field = p.field().expect("nonzero");
    let degs: Vec<usize> = vars.iter().map(|&v| p.degree_in(v) as usize).collect();
    let mut radix = Vec::with_capacity(vars.len());
    let mut span = 1usize;
    for &d in &degs {
        radix.push(span);
        span = span
            .checked_mul(d + 1)
            .filter(|&s| s <= MAX_IMAGE_DEGREE + 1)
            .ok_or_else(|| AlgebraError::GuardExceeded("polynomial too large to factor".into()))?;
    }
    let forward = |q: &Poly| -> Poly {
        let terms = q
            .terms()
            .iter()
            .map(|(m, c)| {
                let e: usize = vars.iter().zip(&radix).map(|(&v, &r)| m.exp(v) as usize * r).sum();
                (Monomial::var_pow(0, e as u16), c.clone())
            })
            .collect();
        Poly::from_terms(terms, order)
    };
    let backward = |u: &Poly| -> Option<Poly> {
        let mut terms = Vec::with_capacity(u.len());
        for (m, c) in u.terms() {
            let mut e = m.exp(0) as usize;
            if e >= span {
                return None;
            }
            let mut ex = [0u16; crate::monomial::MAX_VARS];
            for k in (0..vars.len()).rev() {
                ex[vars[k]] = (e / radix[k]) as u16;
                e %= radix[k];
            }
            terms.push((Monomial::from_exponents(&ex), c.clone()));
        }
        Some(Poly::from_terms(terms, order))
    };

    let image = forward(p);
    let pieces = image_factors(&image, field);
    let mut avail: Vec<u32> = pieces.iter().map(|(_, m)| *m).collect();
    let mut f = p.clone();
    let mut out = Vec::new();
    let mut tried = 0usize;
    let mut k = 1u32;
    loop {
        let total: u32 = avail.iter().sum();
        if 2 * k > total {
            break;
        }
        let mut found = false;
        let mut counts = vec![0u32; pieces.len()];
        while next_multiset(&mut counts, &avail, k) {
            tried += 1;
            if tried > MAX_CANDIDATES {
                return Err(AlgebraError::GuardExceeded("too many factor recombinations".into()));
            }
            let mut cand = Poly::constant(field.one(), order);
            for (i, &c) in counts.iter().enumerate() {
                for _ in 0..c {
                    cand = cand.mul(&pieces[i].0);
                }
            }
            let Some(g) = backward(&cand) else {
                continue;
            };
            if g.is_constant() {
                continue;
            }
            if let Some(q) = div_exact(&f, &g) {
                out.push((g, 1));
                f = q;
                for (a, c) in avail.iter_mut().zip(&counts) {
                    *a -= c;
                }
                found = true;
                break;
            }
        }
        if !found {
            k += 1;
        }
    }
    if !f.is_constant() {
        out.push((f, 1));
    }
    Ok(out)
}

/// Steps `counts` to the next vector with `counts <= avail` componentwise
/// and sum `k`, in a fixed order. Starting from all zeros yields the first.
fn next_multiset(counts: &mut [u32], avail: &[u32], k: u32) -> bool {
    let n = counts.len();
    if n == 0 {
        return false;
    }
    // Fill `counts[i..]` greedily from the left with `rem` units.
    fn fill(counts: &mut [u32], avail: &[u32], from: usize, mut rem: u32) -> bool {
        for j in from..counts.len() {
            let take = rem.min(avail[j]);
            counts[j] = take;
            rem -= take;
        }
        rem == 0
    }
    if counts.iter().all(|&c| c == 0) {
        return fill(counts, avail, 0, k);
    }
    // Find the rightmost position i (not last) that can give one unit to
    // a later position, then refill the suffix greedily.
    let mut suffix: u32 = counts[n - 1];
    for i in (0..n - 1).rev() {
        if counts[i] > 0 {
            let capacity: u32 = avail[i + 1..].iter().sum();
            if suffix < capacity {
                counts[i] -= 1;
                let rem = suffix + 1;
                if fill(counts, avail, i + 1, rem) {
                    return true;
                }
                counts[i] += 1;
            }
        }
        suffix += counts[i];
    }
    false
}
