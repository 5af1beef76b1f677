//! Krull dimension from leading monomials.
//!
//! `dim k[x]/I` equals the size of a largest set `S` of variables such that
//! no leading monomial of a Gröbner basis of `I` involves only variables in
//! `S`.

use crate::monomial::Monomial;

fn support_mask(m: &Monomial) -> u32 {
    m.support().fold(0, |acc, v| acc | (1 << v))
}

/// True if no leading monomial is supported inside `set`.
pub fn is_independent(leads: &[Monomial], set: u32) -> bool {
    leads.iter().all(|m| support_mask(m) & !set != 0)
}

/// Dimension of `k[x_0..x_{n-1}] / I` given the leading monomials of a
/// Gröbner basis of `I`; `None` when `I` is the unit ideal.
pub fn dimension(leads: &[Monomial], nvars: usize) -> Option<usize> {
    if leads.iter().any(Monomial::is_one) {
        return None;
    }
    Some(maximal_independent_set(leads, nvars).map_or(0, |s| s.count_ones() as usize))
}

/// A largest independent set, as a bit mask over variables. Among sets of
/// the largest size the one with the smallest mask value wins.
pub fn maximal_independent_set(leads: &[Monomial], nvars: usize) -> Option<u32> {
    if leads.iter().any(Monomial::is_one) {
        return None;
    }
    let masks: Vec<u32> = leads.iter().map(support_mask).collect();
    let mut best: Option<u32> = None;
    for set in 0u32..(1u32 << nvars) {
        if masks.iter().all(|&m| m & !set != 0) {
            match best {
                Some(b) if b.count_ones() >= set.count_ones() => {}
                _ => best = Some(set),
            }
        }
    }
    best
}

/// Variables of a mask, ascending.
pub fn mask_vars(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}
