//! Descendant variables of a target, the small phase space, and the ring of Schur
//! Q-functions with its Hopf structure.
//!
//! The level-`k` descendant of a basis class `z_i` is the variable `t_{k,i}` of degree
//! `|z_i| - 2k`. For the point target the descendants of the unit are matched with the
//! polynomial generators `t_k` of the Landweber-Novikov algebra, which sit in homological
//! degree `2k`; under this matching degrees change sign.

mod dims;
pub mod schurq;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::poly::{Monomial, Poly};
use crate::exactalg::{parse_terms, ParseError};

pub use dims::{large_phase_dims, LargePhaseDims};
pub use schurq::{
    odd_partitions, schur_q, schur_q_coproduct, schur_q_via_power_sums, strict_partitions,
    SchurQElement, SchurQTensor, StrictPartition,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DescendError {
    #[error("invalid profile: {0}")]
    Profile(String),
    #[error("basis index {index} is out of range for a profile with {len} classes")]
    BadIndex { index: usize, len: usize },
    #[error("the Landweber-Novikov identification needs the point profile (one class of degree 0)")]
    NotPointProfile,
    #[error("malformed term: {0}")]
    Malformed(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0} is not in the span of the Schur Q-functions")]
    NotInSpan(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Degrees of the basis classes `z_0, z_1, ...` of the target, with its lattice data.
/// `z_0` is the fundamental class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetProfile {
    pub degrees: Vec<i64>,
    #[serde(default)]
    pub lattice_rank: usize,
    #[serde(default)]
    pub c1: Vec<i64>,
    #[serde(default)]
    pub dimension: u32,
}

impl TargetProfile {
    pub fn new(degrees: Vec<i64>) -> Result<Self, DescendError> {
        let p = TargetProfile { degrees, lattice_rank: 0, c1: Vec::new(), dimension: 0 };
        p.validate()?;
        Ok(p)
    }

    /// A single class of degree 0.
    pub fn point() -> Self {
        TargetProfile { degrees: vec![0], lattice_rank: 0, c1: Vec::new(), dimension: 0 }
    }

    fn validate(&self) -> Result<(), DescendError> {
        if self.degrees.is_empty() {
            return Err(DescendError::Profile("at least the class z_0 is required".into()));
        }
        if self.c1.len() != self.lattice_rank {
            return Err(DescendError::Profile(format!(
                "c1 has {} entries but the lattice rank is {}",
                self.c1.len(),
                self.lattice_rank
            )));
        }
        Ok(())
    }

    pub fn from_json(src: &str) -> Result<Self, DescendError> {
        let p: TargetProfile =
            serde_json::from_str(src).map_err(|e| DescendError::Json(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_point(&self) -> bool {
        self.degrees == [0]
    }

    pub fn class_degree(&self, i: usize) -> Result<i64, DescendError> {
        self.degrees
            .get(i)
            .copied()
            .ok_or(DescendError::BadIndex { index: i, len: self.degrees.len() })
    }
}

/// The descendant `t_{k,i}`. Ordered by `(i, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DescendantVariable {
    pub i: usize,
    pub k: u32,
}

impl DescendantVariable {
    pub fn new(k: u32, i: usize) -> Self {
        DescendantVariable { i, k }
    }

    pub fn degree(&self, profile: &TargetProfile) -> Result<i64, DescendError> {
        Ok(profile.class_degree(self.i)? - 2 * self.k as i64)
    }
}

impl fmt::Display for DescendantVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{{{},{}}}", self.k, self.i)
    }
}

/// All `t_{k,i}` with `|deg| <= bound`, sorted by `(i, k)`.
pub fn enumerate_descendants(profile: &TargetProfile, bound: u32) -> Vec<DescendantVariable> {
    let bound = bound as i64;
    let mut out = Vec::new();
    for (i, &d) in profile.degrees.iter().enumerate() {
        let mut k = 0u32;
        while d - 2 * k as i64 >= -bound {
            if (d - 2 * k as i64).abs() <= bound {
                out.push(DescendantVariable::new(k, i));
            }
            k += 1;
        }
    }
    out
}

/// One term `t_{k,i} c^k z_i` of the degree-zero class, with the degree declared for
/// `t_{k,i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZTerm {
    pub k: u32,
    pub i: usize,
    #[serde(rename = "deg")]
    pub declared_degree: i64,
}

/// The formal sum `z = sum t_{k,i} c^k z_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZClass {
    pub terms: Vec<ZTerm>,
}

impl ZClass {
    pub fn from_json(src: &str) -> Result<Self, DescendError> {
        serde_json::from_str(src).map_err(|e| DescendError::Json(e.to_string()))
    }

    /// Every term with its degree set from the profile.
    pub fn generic(profile: &TargetProfile, bound: u32) -> Self {
        ZClass {
            terms: enumerate_descendants(profile, bound)
                .into_iter()
                .map(|v| ZTerm {
                    k: v.k,
                    i: v.i,
                    declared_degree: v.degree(profile).expect("enumerated from the profile"),
                })
                .collect(),
        }
    }
}

/// Whether every term of `z` is homogeneous of degree zero: the declared degree of `t_{k,i}`
/// must cancel the degree `2k - |z_i|` of `c^k z_i`.
pub fn check_z_degree(z: &ZClass, profile: &TargetProfile) -> Result<bool, DescendError> {
    for term in &z.terms {
        let d = profile.class_degree(term.i)?;
        if term.declared_degree + 2 * term.k as i64 - d != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub type DescendantPoly = Poly<DescendantVariable>;

/// Parses sums of products of `t_{k,i}`.
pub fn parse_descendant_poly(src: &str) -> Result<DescendantPoly, DescendError> {
    let mut p = Poly::zero();
    for term in parse_terms(src)? {
        let mut powers = Vec::new();
        for (atom, e) in &term.factors {
            if atom.name != "t" || atom.subscript.len() != 2 {
                return Err(ParseError::at(src, atom.pos, "expected a variable t_{k,i}").into());
            }
            if *e < 0 {
                return Err(ParseError::at(src, atom.pos, "negative exponent").into());
            }
            let v = DescendantVariable::new(atom.subscript[0] as u32, atom.subscript[1] as usize);
            powers.push((v, *e as u32));
        }
        p.add_term(Monomial::from_powers(powers), term.coeff);
    }
    Ok(p)
}

pub fn display_descendant_poly(p: &DescendantPoly) -> String {
    p.display_with(|v| v.to_string())
}

/// Sets `t_{k,i} = 0` whenever `k > 0` and `i > 0`.
pub fn small_phase_specialize(p: &DescendantPoly) -> DescendantPoly {
    p.retain(|m| m.powers().iter().all(|(v, _)| v.k == 0 || v.i == 0))
}

/// A polynomial generator `t_k` of the Landweber-Novikov algebra, of degree `2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LnGenerator(pub u32);

impl LnGenerator {
    pub fn degree(self) -> i64 {
        2 * self.0 as i64
    }
}

impl fmt::Display for LnGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{}", self.0)
    }
}

/// `t_{k,0} -> t_k`. The level-0 descendant maps to the unit-level generator `t_0`.
pub fn ln_identify(profile: &TargetProfile, k: u32) -> Result<LnGenerator, DescendError> {
    if !profile.is_point() {
        return Err(DescendError::NotPointProfile);
    }
    Ok(LnGenerator(k))
}

/// Multiplicative extension of [`ln_identify`] to monomials.
pub fn ln_identify_monomial(
    profile: &TargetProfile,
    m: &Monomial<DescendantVariable>,
) -> Result<Monomial<LnGenerator>, DescendError> {
    let powers = m
        .powers()
        .iter()
        .map(|(v, e)| {
            if v.i != 0 {
                return Err(DescendError::BadIndex { index: v.i, len: 1 });
            }
            Ok((ln_identify(profile, v.k)?, *e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Monomial::from_powers(powers))
}

/// Total degree of a descendant monomial.
pub fn monomial_degree(profile: &TargetProfile, m: &Monomial<DescendantVariable>) -> Result<i64, DescendError> {
    m.powers()
        .iter()
        .map(|(v, e)| Ok(v.degree(profile)? * *e as i64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;
    use proptest::prelude::*;

    fn t(k: u32, i: usize) -> DescendantVariable {
        DescendantVariable::new(k, i)
    }

    #[test]
    fn point_profile_descendants() {
        let p = TargetProfile::point();
        let vars = enumerate_descendants(&p, 6);
        assert_eq!(vars, vec![t(0, 0), t(1, 0), t(2, 0), t(3, 0)]);
        let degs: Vec<i64> = vars.iter().map(|v| v.degree(&p).unwrap()).collect();
        assert_eq!(degs, vec![0, -2, -4, -6]);
    }

    #[test]
    fn profile_with_a_degree_two_class() {
        let p = TargetProfile::new(vec![0, 2]).unwrap();
        let vars = enumerate_descendants(&p, 2);
        assert!(vars.contains(&t(0, 1)));
        assert!(vars.contains(&t(1, 1)));
        assert_eq!(t(0, 1).degree(&p).unwrap(), 2);
        assert_eq!(t(1, 1).degree(&p).unwrap(), 0);
        for v in enumerate_descendants(&p, 0) {
            assert_eq!(v.degree(&p).unwrap(), 0);
        }
        let mut sorted = vars.clone();
        sorted.sort();
        assert_eq!(vars, sorted);
    }

    #[test]
    fn z_degree_checks() {
        let p = TargetProfile::new(vec![0, 2, 4]).unwrap();
        let z = ZClass::generic(&p, 6);
        assert!(check_z_degree(&z, &p).unwrap());
        let mut bad = z.clone();
        bad.terms[1].declared_degree += 2;
        assert!(!check_z_degree(&bad, &p).unwrap());
        assert!(check_z_degree(&ZClass::default(), &p).unwrap());
        let malformed = ZClass { terms: vec![ZTerm { k: 0, i: 5, declared_degree: 0 }] };
        assert_eq!(check_z_degree(&malformed, &p), Err(DescendError::BadIndex { index: 5, len: 3 }));
    }

    #[test]
    fn specialization_examples() {
        let p = parse_descendant_poly("t_{2,1}*t_{0,0}").unwrap();
        assert!(small_phase_specialize(&p).is_zero());
        let p = parse_descendant_poly("t_{3,0}*t_{0,2}").unwrap();
        assert_eq!(small_phase_specialize(&p), p);
        let c = Poly::constant(int(7));
        assert_eq!(small_phase_specialize(&c), c);
        let p = parse_descendant_poly("t_{1,1} + 2*t_{0,1}^2 - t_{4,0}").unwrap();
        assert_eq!(display_descendant_poly(&small_phase_specialize(&p)), display_descendant_poly(&parse_descendant_poly("2*t_{0,1}^2 - t_{4,0}").unwrap()));
    }

    #[test]
    fn landweber_novikov_identification() {
        let p = TargetProfile::point();
        assert_eq!(ln_identify(&p, 1).unwrap(), LnGenerator(1));
        assert_eq!(ln_identify(&p, 1).unwrap().degree(), 2);
        assert_eq!(ln_identify(&p, 0).unwrap(), LnGenerator(0));
        let m = Monomial::from_powers([(t(2, 0), 1), (t(3, 0), 1)]);
        let img = ln_identify_monomial(&p, &m).unwrap();
        assert_eq!(img, Monomial::from_powers([(LnGenerator(2), 1), (LnGenerator(3), 1)]));
        let q = TargetProfile::new(vec![0, 2]).unwrap();
        assert_eq!(ln_identify(&q, 1), Err(DescendError::NotPointProfile));
    }

    #[test]
    fn profile_json() {
        let src = r#"{"degrees":[0,2,4],"lattice_rank":1,"c1":[3],"dimension":2}"#;
        let p = TargetProfile::from_json(src).unwrap();
        assert_eq!(p.degrees, vec![0, 2, 4]);
        assert_eq!(TargetProfile::from_json(&p.to_json()).unwrap(), p);
        assert!(TargetProfile::from_json(r#"{"degrees":[]}"#).is_err());
        assert!(TargetProfile::from_json(r#"{"degrees":[0],"lattice_rank":2,"c1":[1]}"#).is_err());
    }

    fn descendant_poly() -> impl Strategy<Value = DescendantPoly> {
        prop::collection::vec((0u32..3, 0usize..3, 0u32..3, -5i64..6), 0..5).prop_map(|ts| {
            Poly::from_terms(ts.into_iter().map(|(k, i, e, c)| {
                (Monomial::from_powers([(t(k, i), e)]), int(c))
            }))
        })
    }

    proptest! {
        #[test]
        fn specialization_is_a_ring_map(a in descendant_poly(), b in descendant_poly()) {
            let s = small_phase_specialize;
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        }

        #[test]
        fn identification_preserves_degree(ks in prop::collection::vec((0u32..6, 1u32..3), 0..4)) {
            let p = TargetProfile::point();
            let m = Monomial::from_powers(ks.iter().map(|&(k, e)| (t(k, 0), e)));
            let img = ln_identify_monomial(&p, &m).unwrap();
            let ln_deg: i64 = img.powers().iter().map(|(g, e)| g.degree() * *e as i64).sum();
            prop_assert_eq!(ln_deg, -monomial_degree(&p, &m).unwrap());
            // injective on exponents
            prop_assert_eq!(img.total_degree(), m.total_degree());
        }
    }
}
