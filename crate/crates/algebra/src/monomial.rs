//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

/// Hard cap on the number of ring variables.
pub const MAX_VARS: usize = 16;

/// A power product `x_0^{e_0} ... x_{n-1}^{e_{n-1}}`; unused slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        let mut m = Self::one();
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u32).sum();
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Degree in the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    /// Indices of variables occurring in the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = other.exps[i] - self.exps[i];
        }
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].max(other.exps[i]);
            deg += *e as u32;
        }
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].min(other.exps[i]);
            deg += *e as u32;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = e.checked_mul(k).expect("exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg * k as u32,
        }
    }

    /// Relabels variables: variable `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, &p) in perm.iter().enumerate() {
            exps[p] = self.exps[i];
        }
        Monomial { exps, deg: self.deg }
    }

    /// Shifts variable indices by `offset` (used when embedding into a ring
    /// with extra leading variables).
    pub fn shifted(&self, offset: usize) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        exps[offset..].copy_from_slice(&self.exps[..MAX_VARS - offset]);
        debug_assert!(self.exps[MAX_VARS - offset..].iter().all(|&e| e == 0));
        Monomial { exps, deg: self.deg }
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Admissible monomial orders. Variable 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Elimination order: grevlex on variables `0..split`, ties broken by
    /// grevlex on the remaining variables.
    Block {
        split: usize,
    },
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| revlex(a, b, 0, MAX_VARS)),
            MonomialOrder::Block { split } => {
                let da = a.partial_degree(0..split);
                let db = b.partial_degree(0..split);
                da.cmp(&db)
                    .then_with(|| revlex(a, b, 0, split))
                    .then_with(|| (a.deg - da).cmp(&(b.deg - db)))
                    .then_with(|| revlex(a, b, split, MAX_VARS))
            }
        }
    }

    /// True if every monomial involving a variable below `split` is larger
    /// than every monomial free of them.
    pub fn eliminates(&self, split: usize) -> bool {
        match *self {
            MonomialOrder::Lex => true,
            MonomialOrder::GrevLex => split == 0,
            MonomialOrder::Block { split: s } => s >= split,
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

#[inline]
fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
