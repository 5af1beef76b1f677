//! The subring `D = k + x k[x,y]` of `S = k[x,y]`, truncated at a total
//! degree bound. `D` is spanned by monomials, as are `xyD` and `xyS`, so
//! colons by monomials are computed one monomial at a time.

use cmlab_algebra::{AlgebraError, Field, Poly, PolyRing, Result};

pub const COLON_IDENTITIES: &str = "subring-colon-identities";

#[derive(Clone, Debug)]
pub struct SubringModel {
    bound: u32,
    ring: PolyRing,
}

/// Exponents `(i, j)` of `x^i y^j`.
type Exps = (u32, u32);

fn d_monomial((i, j): Exps) -> bool {
    i >= 1 || j == 0
}

fn xyd_monomial((i, j): Exps) -> bool {
    // xy * x^a y^b with x^a y^b in D.
    i >= 1 && j >= 1 && d_monomial((i - 1, j - 1))
}

fn xys_monomial((i, j): Exps) -> bool {
    i >= 1 && j >= 1
}

impl SubringModel {
    pub fn new(bound: u32) -> Result<Self> {
        if bound < 4 {
            return Err(AlgebraError::Invalid("the degree bound must be at least 4".into()));
        }
        let ring = PolyRing::grevlex(Field::Rational, &["x", "y"])?;
        Ok(SubringModel { bound, ring })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    fn exps(p: &Poly) -> impl Iterator<Item = Exps> + '_ {
        p.terms().iter().map(|(m, _)| (m.exp(0) as u32, m.exp(1) as u32))
    }

    /// Every monomial free of `x` is constant.
    pub fn in_d(&self, f: &Poly) -> bool {
        Self::exps(f).all(d_monomial)
    }

    pub fn in_xyd(&self, f: &Poly) -> bool {
        Self::exps(f).all(xyd_monomial)
    }

    pub fn in_xys(&self, f: &Poly) -> bool {
        Self::exps(f).all(xys_monomial)
    }

    fn monomials(&self) -> Vec<Exps> {
        (0..=self.bound)
            .flat_map(|d| (0..=d).rev().map(move |i| (i, d - i)))
            .collect()
    }

    pub fn monomial(&self, (i, j): Exps) -> Poly {
        self.ring.var(0).pow(i).mul(&self.ring.var(1).pow(j))
    }

    /// Monomials of `(xyD :_D x^k)` of degree at most the bound.
    pub fn colon_by_x_power(&self, k: u32) -> Vec<Exps> {
        self.monomials()
            .into_iter()
            .filter(|&e| d_monomial(e) && xyd_monomial((e.0 + k, e.1)))
            .collect()
    }

    pub fn colon_identities(&self) -> ColonCertificate {
        let xys: Vec<Exps> = self.monomials().into_iter().filter(|&e| xys_monomial(e)).collect();
        let colon_x = self.colon_by_x_power(1);
        let colon_x2 = self.colon_by_x_power(2);
        let witness = self.ring.parse("x*y^2").expect("fixed text");
        let x = self.ring.var(0);
        let below = self.monomials().into_iter().filter(|e| e.0 + e.1 < self.bound);
        let mut m_kills = true;
        let mut x_xys = true;
        for e in below {
            let xm = self.monomial((e.0 + 1, e.1));
            m_kills &= self.in_d(&xm);
            if xys_monomial(e) {
                x_xys &= self.in_xyd(&xm);
            }
        }
        ColonCertificate {
            bound: self.bound,
            colon_x_equals_xys: colon_x == xys,
            colon_x2_equals_xys: colon_x2 == xys,
            monomials_checked: xys.len(),
            witness: self.ring.format(&witness),
            witness_in_xys: self.in_xys(&witness),
            witness_outside_xyd: !self.in_xyd(&witness),
            witness_times_x_in_xyd: self.in_xyd(&witness.mul(&x)),
            x_s_inside_d: m_kills,
            x_xys_inside_xyd: x_xys,
        }
    }
}

/// `(xyD : x) = xyS = (xyD : x^2)` up to the bound, with the zero-divisor
/// witness `xy^2` and `xS` inside `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonCertificate {
    pub bound: u32,
    pub colon_x_equals_xys: bool,
    pub colon_x2_equals_xys: bool,
    pub monomials_checked: usize,
    pub witness: String,
    pub witness_in_xys: bool,
    pub witness_outside_xyd: bool,
    /// `x` is a zero-divisor on `D / xyD`.
    pub witness_times_x_in_xyd: bool,
    /// `m (S / D) = 0` with `m = xS`.
    pub x_s_inside_d: bool,
    pub x_xys_inside_xyd: bool,
}

impl ColonCertificate {
    pub fn holds(&self) -> bool {
        self.colon_x_equals_xys
            && self.colon_x2_equals_xys
            && self.witness_in_xys
            && self.witness_outside_xyd
            && self.witness_times_x_in_xyd
            && self.x_s_inside_d
            && self.x_xys_inside_xyd
    }
}

pub fn subring_colon_identities(bound: u32) -> Result<ColonCertificate> {
    Ok(SubringModel::new(bound)?.colon_identities())
}
