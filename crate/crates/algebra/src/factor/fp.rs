//! Dense univariate polynomials over `GF(p)` and their factorization
//! (square-free decomposition, distinct-degree and Cantor-Zassenhaus
//! equal-degree splitting).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::pow_mod;

/// Coefficients, constant term first; no trailing zeros.
pub type Up = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn trim(&self, mut a: Up) -> Up {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &Up) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn add_poly(&self, a: &Up, b: &Up) -> Up {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(r)
    }

    pub fn sub_poly(&self, a: &Up, b: &Up) -> Up {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(r)
    }

    pub fn scale(&self, a: &Up, c: u64) -> Up {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn mul_poly(&self, a: &Up, b: &Up) -> Up {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % self.p;
            }
        }
        self.trim(r)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &Up, b: &Up) -> (Up, Up) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let mut r = a.clone();
        let db = b.len() - 1;
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &Up, b: &Up) -> Up {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &Up) -> Up {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn gcd(&self, a: &Up, b: &Up) -> Up {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &Up, b: &Up) -> (Up, Up, Up) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(&lc) => {
                let inv = self.inv(lc);
                (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
            }
        }
    }

    pub fn derivative(&self, a: &Up) -> Up {
        let r = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        self.trim(r)
    }

    pub fn powmod(&self, base: &Up, exp: &BigUint, m: &Up) -> Up {
        let mut acc: Up = self.rem(&vec![1], m);
        let base = self.rem(base, m);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul_poly(&acc, &acc), m);
            if exp.bit(i) {
                acc = self.rem(&self.mul_poly(&acc, &base), m);
            }
        }
        acc
    }

    /// `a(x)^(1/p)` for `a` whose exponents are all multiples of `p`.
    fn pth_root(&self, a: &Up) -> Up {
        let p = self.p as usize;
        a.iter().step_by(p).copied().collect()
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
    /// `a = prod g^m`, each `g` square-free and monic.
    pub fn squarefree(&self, a: &Up) -> Vec<(Up, u32)> {
        let mut out = Vec::new();
        if a.len() <= 1 {
            return out;
        }
        let d = self.derivative(a);
        if d.is_empty() {
            for (g, m) in self.squarefree(&self.pth_root(a)) {
                out.push((g, m * self.p as u32));
            }
            return out;
        }
        let mut c = self.gcd(a, &d);
        let mut w = self.divrem(a, &c).0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let fac = self.divrem(&w, &y).0;
            if fac.len() > 1 {
                out.push((self.monic(&fac), i));
            }
            i += 1;
            w = y;
            c = self.divrem(&c, &w).0;
        }
        if c.len() > 1 {
            for (g, m) in self.squarefree(&self.pth_root(&c)) {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a square-free monic polynomial.
    pub fn distinct_degree(&self, a: &Up) -> Vec<(Up, usize)> {
        let mut out = Vec::new();
        let mut f = a.clone();
        let x: Up = vec![0, 1];
        let mut h = self.rem(&x, &f);
        let p = BigUint::from(self.p);
        let mut i = 1;
        while f.len() > 2 * i {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub_poly(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
            i += 1;
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    pub fn equal_degree(&self, a: &Up, d: usize, rng: &mut ChaCha8Rng) -> Vec<Up> {
        let n = a.len() - 1;
        if n == d {
            return vec![a.clone()];
        }
        let exp = if self.p == 2 {
            BigUint::zero()
        } else {
            (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1
        };
        loop {
            let r: Up = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if r.len() < 2 {
                continue;
            }
            let mut g = self.gcd(&r, a);
            if g.len() == 1 {
                let b = if self.p == 2 {
                    // Trace map r + r^2 + ... + r^(2^(d-1)).
                    let mut t = r.clone();
                    let mut acc = r.clone();
                    for _ in 1..d {
                        t = self.rem(&self.mul_poly(&t, &t), a);
                        acc = self.add_poly(&acc, &t);
                    }
                    acc
                } else {
                    let b = self.powmod(&r, &exp, a);
                    self.sub_poly(&b, &vec![1])
                };
                g = self.gcd(&b, a);
            }
            if g.len() > 1 && g.len() < a.len() {
                let h = self.divrem(a, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Irreducible factors of a monic square-free polynomial, sorted.
    pub fn factor_squarefree(&self, a: &Up, rng: &mut ChaCha8Rng) -> Vec<Up> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(a) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort();
        out
    }

    /// Complete factorization of a nonzero polynomial: leading coefficient
    /// and monic irreducible factors with multiplicities.
    pub fn factor(&self, a: &Up) -> (u64, Vec<(Up, u32)>) {
        let lc = *a.last().expect("nonzero");
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let mut out = Vec::new();
        for (g, m) in self.squarefree(&self.monic(a)) {
            for h in self.factor_squarefree(&g, &mut rng) {
                out.push((h, m));
            }
        }
        out.sort();
        (lc, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(f: &Fp, lc: u64, fs: &[(Up, u32)]) -> Up {
        let mut acc = vec![lc];
        for (g, m) in fs {
            for _ in 0..*m {
                acc = f.mul_poly(&acc, g);
            }
        }
        acc
    }

    #[test]
    fn factors_multiply_back() {
        let f = Fp::new(7);
        // (x+1)^2 (x^2+1) (x^3+x+1) over GF(7)
        let a = f.mul_poly(&f.mul_poly(&vec![1, 1], &vec![1, 1]), &vec![1, 0, 1]);
        let a = f.mul_poly(&a, &vec![1, 1, 0, 1]);
        let a = f.scale(&a, 3);
        let (lc, fs) = f.factor(&a);
        assert_eq!(expand(&f, lc, &fs), a);
        assert!(fs.iter().all(|(g, _)| *g.last().unwrap() == 1));
    }

    #[test]
    fn frobenius_power_is_handled() {
        let f = Fp::new(3);
        // x^3 + 1 = (x + 1)^3 in characteristic 3
        let (_, fs) = f.factor(&vec![1, 0, 0, 1]);
        assert_eq!(fs, vec![(vec![1, 1], 3)]);
    }

    #[test]
    fn characteristic_two() {
        let f = Fp::new(2);
        // x^4 + x = x (x + 1) (x^2 + x + 1)
        let (_, fs) = f.factor(&vec![0, 1, 0, 0, 1]);
        assert_eq!(fs.len(), 3);
        assert_eq!(expand(&f, 1, &fs), vec![0, 1, 0, 0, 1]);
    }

    #[test]
    fn extended_gcd_identity() {
        let f = Fp::new(101);
        let a = vec![3, 0, 1, 5];
        let b = vec![7, 2, 9];
        let (g, s, t) = f.ext_gcd(&a, &b);
        let lhs = f.add_poly(&f.mul_poly(&s, &a), &f.mul_poly(&t, &b));
        assert_eq!(lhs, g);
    }
}
