//! Dense univariate polynomials over the integers: square-free
//! decomposition and Zassenhaus factorization (modular factoring, Hensel
//! lifting, subset recombination).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::{Fp, Up};
use crate::scalar::is_prime;

/// Coefficients, constant term first; no trailing zeros.
pub type Zp = Vec<BigInt>;

pub fn trim(mut a: Zp) -> Zp {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub fn content(a: &Zp) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive(a: &Zp) -> Zp {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub fn mul(a: &Zp, b: &Zp) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

fn sub(a: &Zp, b: &Zp) -> Zp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn derivative(a: &Zp) -> Zp {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// `a / b` if `b` divides `a` exactly over the integers.
pub fn div_exact(a: &Zp, b: &Zp) -> Option<Zp> {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &Zp, b: &Zp) -> Zp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        r = r.iter().map(|c| c * &lb).collect();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r = trim(r);
        if r.len() > db + shift + 1 {
            unreachable!("pseudo-division did not cancel leading term");
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd(a: &Zp, b: &Zp) -> Zp {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(&prem(&a, &b));
        a = b;
        b = r;
    }
    primitive(&a)
}

/// Yun's square-free decomposition of a primitive polynomial.
pub fn squarefree(a: &Zp) -> Vec<(Zp, u32)> {
    let mut out = Vec::new();
    if a.len() <= 1 {
        return out;
    }
    let b = derivative(a);
    let c = gcd(a, &b);
    let mut w = div_exact(a, &c).expect("gcd divides");
    let mut y = div_exact(&b, &c).expect("gcd divides derivative");
    let mut z = sub(&y, &derivative(&w));
    let mut i = 1;
    while w.len() > 1 {
        let g = gcd(&w, &z);
        if g.len() > 1 {
            out.push((g.clone(), i));
        }
        w = div_exact(&w, &g).expect("gcd divides");
        y = div_exact(&z, &g).expect("gcd divides");
        z = sub(&y, &derivative(&w));
        i += 1;
    }
    out
}

fn reduce_mod_p(a: &Zp, p: u64) -> Up {
    let pb = BigInt::from(p);
    let v: Up = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("small residue"))
        .collect();
    Fp::new(p).trim(v)
}

fn lift_up(a: &Up) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce_mod(a: &Zp, m: &BigInt) -> Zp {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &Zp, m: &BigInt) -> Zp {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f = g h (mod p)` to `f = G H (mod p^k)` with `G`, `H` monic.
/// `f` must be monic modulo `p^k`.
fn hensel_pair(f: &Zp, g: &Up, h: &Up, fp: &Fp, k: u32) -> (Zp, Zp) {
    let p = BigInt::from(fp.p);
    let (_, s, t) = fp.ext_gcd(g, h);
    let mut big_g = lift_up(g);
    let mut big_h = lift_up(h);
    let mut pj = p.clone();
    for _ in 1..k {
        let next = &pj * &p;
        let err = reduce_mod(&sub(f, &mul(&big_g, &big_h)), &next);
        let e: Zp = err.iter().map(|c| c / &pj).collect();
        let e = reduce_mod_p(&e, fp.p);
        let a = fp.rem(&fp.mul_poly(&t, &e), g);
        let b = fp.rem(&fp.mul_poly(&s, &e), h);
        let da: Zp = lift_up(&a).into_iter().map(|c| c * &pj).collect();
        let db: Zp = lift_up(&b).into_iter().map(|c| c * &pj).collect();
        big_g = reduce_mod(&add(&big_g, &da), &next);
        big_h = reduce_mod(&add(&big_h, &db), &next);
        pj = next;
    }
    (big_g, big_h)
}

fn add(a: &Zp, b: &Zp) -> Zp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

/// Picks a prime not dividing the leading coefficient with `f mod p`
/// square-free, preferring the fewest modular factors among a few tries.
fn choose_prime(f: &Zp) -> (u64, Vec<Up>) {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<Up>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p += 1;
        if !is_prime(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let a = reduce_mod_p(f, p);
        if a.len() != f.len() {
            continue;
        }
        if fp.gcd(&a, &fp.derivative(&a)).len() != 1 {
            continue;
        }
        tried += 1;
        let (_, fs) = fp.factor(&a);
        let fs: Vec<Up> = fs.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.expect("a suitable prime exists")
}

/// Irreducible factors of a primitive square-free polynomial with positive
/// leading coefficient, sorted by degree then coefficients.
pub fn factor_squarefree(f: &Zp) -> Vec<Zp> {
    if f.len() <= 2 {
        return vec![f.clone()];
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let fp = Fp::new(p);
    let n = f.len() - 1;
    let lc = f.last().unwrap().clone();
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * isqrt_ceil(&norm_sq) * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    // Monic image of f modulo p^k.
    let lc_inv = BigInt::from_biguint(
        Sign::Plus,
        lc.mod_floor(&pk)
            .to_biguint()
            .unwrap()
            .modinv(&pk.to_biguint().unwrap())
            .unwrap_or_else(BigUint::zero),
    );
    let mut current = reduce_mod(&f.iter().map(|c| c * &lc_inv).collect(), &pk);
    let mut lifted = Vec::with_capacity(modular.len());
    for i in 0..modular.len() - 1 {
        let mut rest: Up = vec![1];
        for g in &modular[i + 1..] {
            rest = fp.mul_poly(&rest, g);
        }
        let (g, h) = hensel_pair(&current, &modular[i], &rest, &fp, k);
        lifted.push(g);
        current = h;
    }
    lifted.push(current);
    recombine(f, lifted, &pk)
}

fn recombine(f: &Zp, mut lifted: Vec<Zp>, pk: &BigInt) -> Vec<Zp> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let mut cand: Zp = vec![lc];
            for &i in &idx {
                cand = reduce_mod(&mul(&cand, &lifted[i]), pk);
            }
            let cand = primitive(&symmetric(&cand, pk));
            if let Some(q) = div_exact(&f, &cand) {
                out.push(cand);
                f = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factors a nonzero integer polynomial: returns the signed content and
/// primitive irreducible factors with multiplicities.
pub fn factor(a: &Zp) -> (BigInt, Vec<(Zp, u32)>) {
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    let prim = primitive(a);
    let mut out = Vec::new();
    for (g, m) in squarefree(&prim) {
        for h in factor_squarefree(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
    (c, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Zp {
        trim(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn expand(c: &BigInt, fs: &[(Zp, u32)]) -> Zp {
        let mut acc = vec![c.clone()];
        for (g, m) in fs {
            for _ in 0..*m {
                acc = mul(&acc, g);
            }
        }
        acc
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // x^4 - 10 x^2 + 1 is irreducible over Q but splits mod every prime.
        let f = z(&[1, 0, -10, 0, 1]);
        let (_, fs) = factor(&f);
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn splits_products() {
        let a = z(&[-1, 0, 2]); // 2x^2 - 1
        let b = z(&[3, 1]); // x + 3
        let c = z(&[1, 1, 1]); // x^2 + x + 1
        let f = mul(&mul(&mul(&a, &b), &b), &c);
        let f: Zp = f.iter().map(|x| x * 6).collect();
        let (cont, fs) = factor(&f);
        assert_eq!(cont, BigInt::from(6));
        assert_eq!(expand(&cont, &fs), f);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(b, 2)));
    }

    #[test]
    fn cyclotomic_split() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let (_, fs) = factor(&z(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(fs.len(), 4);
    }
}
