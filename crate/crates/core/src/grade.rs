//! Polynomial grade through Koszul homology, classical grade through Ext,
//! Čech vanishing profiles and the Hochster non-zero-divisor test.

use std::fmt;

use cmlab_algebra::{AlgebraError, Height, Ideal, Poly, PresentedRing, Result};

use crate::complexes::{ext_from_resolution, free_resolution, HomologyVerdict, KoszulComplex};
use crate::module::Module;

/// A nonnegative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

impl Grade {
    pub fn finite(self) -> Option<usize> {
        match self {
            Grade::Finite(n) => Some(n),
            Grade::Infinite => None,
        }
    }
}

impl From<Height> for Grade {
    fn from(h: Height) -> Self {
        match h {
            Height::Finite(n) => Grade::Finite(n),
            Height::Infinite => Grade::Infinite,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(n) => write!(f, "{n}"),
            Grade::Infinite => write!(f, "infinity"),
        }
    }
}

/// Which characterization produced a grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    /// Count of vanishing Koszul homology from the top.
    Koszul,
    /// Least nonvanishing `Ext^i(R/I, M)`.
    Ext,
    /// Least nonvanishing Čech cohomology index.
    Cech,
    /// A model rule, named by its citation tag.
    Model(String),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Koszul => write!(f, "koszul"),
            Route::Ext => write!(f, "ext"),
            Route::Cech => write!(f, "cech"),
            Route::Model(tag) => write!(f, "model:{tag}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeValue {
    pub value: Grade,
    pub route: Route,
}

/// Koszul-route grade with the homology verdicts that decided it, listed
/// from the top degree down.
#[derive(Clone, Debug)]
pub struct KoszulGrade {
    pub value: Grade,
    pub verdicts: Vec<HomologyVerdict>,
}

/// `sup { k : H_{l-i}(x; M) = 0 for i < k }`, infinite when every Koszul
/// homology module vanishes.
pub fn koszul_grade(ring: &PresentedRing, x: &[Poly], m: &Module) -> Result<KoszulGrade> {
    let k = KoszulComplex::new(ring, x);
    let l = x.len();
    let mut verdicts = Vec::new();
    for j in 0..=l {
        let v = k.homology_is_zero(l - j, m)?;
        let zero = v.is_zero;
        verdicts.push(v);
        if !zero {
            return Ok(KoszulGrade {
                value: Grade::Finite(j),
                verdicts,
            });
        }
    }
    Ok(KoszulGrade {
        value: Grade::Infinite,
        verdicts,
    })
}

pub fn p_grade(ring: &PresentedRing, x: &[Poly], m: &Module) -> Result<GradeValue> {
    Ok(GradeValue {
        value: koszul_grade(ring, x, m)?.value,
        route: Route::Koszul,
    })
}

/// Verdict for one Čech cohomology index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CechVerdict {
    Vanishes,
    NonZero,
    Undetermined,
}

impl fmt::Display for CechVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CechVerdict::Vanishes => "vanishes",
            CechVerdict::NonZero => "nonzero",
            CechVerdict::Undetermined => "undetermined",
        })
    }
}

/// Verdicts for `H^i_x(M)`, `0 <= i <= l`. Indices past `l` vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingProfile {
    pub grade: Grade,
    pub entries: Vec<CechVerdict>,
}

impl VanishingProfile {
    pub fn from_grade(grade: Grade, length: usize) -> Self {
        let entries = (0..=length)
            .map(|i| match grade {
                Grade::Infinite => CechVerdict::Vanishes,
                Grade::Finite(g) if i < g => CechVerdict::Vanishes,
                Grade::Finite(g) if i == g => CechVerdict::NonZero,
                Grade::Finite(_) => CechVerdict::Undetermined,
            })
            .collect();
        VanishingProfile { grade, entries }
    }

    pub fn at(&self, i: usize) -> CechVerdict {
        self.entries.get(i).copied().unwrap_or(CechVerdict::Vanishes)
    }
}

pub fn cech_vanishing_profile(ring: &PresentedRing, x: &[Poly], m: &Module) -> Result<VanishingProfile> {
    let g = koszul_grade(ring, x, m)?.value;
    Ok(VanishingProfile::from_grade(g, x.len()))
}

/// Least `i` with `Ext^i(R/I, M) != 0`; infinite when `IM = M`.
pub fn classical_grade(ideal: &Ideal, m: &Module) -> Result<GradeValue> {
    let l = ideal.generators().len();
    let value = if m.quotient_by(ideal.generators()).is_zero()? {
        Grade::Infinite
    } else {
        let res = free_resolution(&Module::cyclic(ideal), l + 1)?;
        let mut found = None;
        for i in 0..=l {
            if !ext_from_resolution(&res, i, m)?.is_zero {
                found = Some(i);
                break;
            }
        }
        // IM != M bounds the grade by the number of generators.
        Grade::Finite(
            found.ok_or_else(|| AlgebraError::Invalid("no nonvanishing Ext below the generator count".into()))?,
        )
    };
    Ok(GradeValue {
        value,
        route: Route::Ext,
    })
}

/// `R[t]` for a fresh variable, with the relations of `R`.
pub fn polynomial_extension(ring: &PresentedRing) -> Result<(PresentedRing, usize)> {
    let names = ring.names();
    let mut name = "t".to_string();
    let mut k = 0;
    while names.contains(&name) {
        k += 1;
        name = format!("t{k}");
    }
    let amb = ring.ambient().extended(&[name], ring.order())?;
    let rels = ring.relations().iter().map(|p| amb.import(p)).collect();
    Ok((PresentedRing::new(amb, rels)?, names.len()))
}

/// The element `x_1 + x_2 t + ... + x_l t^(l-1)` of `R[t]`.
#[derive(Clone, Debug)]
pub struct HochsterTest {
    pub extension: PresentedRing,
    pub element: Poly,
    /// `(0 : I) = 0` in `R`.
    pub annihilator_is_zero: bool,
    /// The element is a non-zero-divisor on `R[t]`.
    pub is_nonzerodivisor: bool,
}

pub fn hochster_element(ring: &PresentedRing, x: &[Poly]) -> Result<(PresentedRing, Poly)> {
    let (ext, t) = polynomial_extension(ring)?;
    let amb = ext.ambient();
    let tv = amb.var(t);
    let mut h = amb.zero();
    let mut tp = amb.one();
    for xi in x {
        h = h.add(&amb.import(xi).mul(&tp));
        tp = tp.mul(&tv);
    }
    let h = ext.reduce(&h);
    Ok((ext, h))
}

pub fn hochster_test(ring: &PresentedRing, x: &[Poly]) -> Result<HochsterTest> {
    let (extension, element) = hochster_element(ring, x)?;
    let ideal = ring.ideal(x.to_vec());
    let annihilator_is_zero = ring.zero_ideal().colon_ideal(&ideal)?.is_zero();
    let is_nonzerodivisor = extension.zero_ideal().colon(&element)?.is_zero();
    Ok(HochsterTest {
        extension,
        element,
        annihilator_is_zero,
        is_nonzerodivisor,
    })
}

/// `p-grade(m, R)` for a maximal ideal given by generators.
pub fn p_depth(ring: &PresentedRing, maximal: &[Poly]) -> Result<GradeValue> {
    p_grade(ring, maximal, &Module::ring_module(ring))
}

/// Polynomial grade of `(x)` on `M_p`, from the supports of the Koszul
/// homology: `H_i(x; M)_p = 0` exactly when `ann H_i` is not inside `p`.
pub fn localized_p_grade(ring: &PresentedRing, x: &[Poly], m: &Module, prime: &Ideal) -> Result<Grade> {
    let k = KoszulComplex::new(ring, x);
    let l = x.len();
    for j in 0..=l {
        let ann = k.complex().homology_annihilator(l - j, m)?;
        if prime.contains_ideal(&ann)? {
            return Ok(Grade::Finite(j));
        }
    }
    Ok(Grade::Infinite)
}

/// Depth of `M_p` over `R_p`, with `p` given by generators.
pub fn localized_p_depth(ring: &PresentedRing, m: &Module, prime: &Ideal) -> Result<Grade> {
    localized_p_grade(ring, prime.generators(), m, prime)
}
