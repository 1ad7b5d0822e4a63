//! The rational Novikov ring `Q[H x Z]`: Laurent polynomials `sum c_{alpha,k} alpha (x) v^k` over a
//! lattice `H = Z^r`, graded by `deg v = 2` and `deg alpha = 2 <c1, alpha>`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{factorial, format_rational, serde_text, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("lattice rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("c1 covector has rank {covector}, lattice has rank {lattice}")]
    CovectorRank { covector: usize, lattice: usize },
    #[error("malformed Novikov element: {0}")]
    Json(String),
}

/// Point of the lattice `H = Z^r`; addition is the group law.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeElement(pub Vec<i64>);

impl LatticeElement {
    pub fn zero(rank: usize) -> Self {
        LatticeElement(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn pairing(&self, covector: &[i64]) -> i64 {
        self.0.iter().zip(covector).map(|(a, b)| a * b).sum()
    }
}

impl Add for &LatticeElement {
    type Output = LatticeElement;
    fn add(self, rhs: &LatticeElement) -> LatticeElement {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// `coeff * alpha (x) v^vpow`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NovikovMonomial {
    pub alpha: LatticeElement,
    #[serde(rename = "v")]
    pub vpow: i64,
    #[serde(rename = "c", with = "serde_text")]
    pub coeff: Rational,
}

/// Cohomological degree `2 vpow + 2 <c1, alpha>`.
pub fn degree(m: &NovikovMonomial, c1: &[i64]) -> Result<i64, NovikovError> {
    if c1.len() != m.alpha.rank() {
        return Err(NovikovError::CovectorRank {
            covector: c1.len(),
            lattice: m.alpha.rank(),
        });
    }
    Ok(2 * m.vpow + 2 * m.alpha.pairing(c1))
}

/// Finite element of the Novikov ring. When `truncation` is `Some(n)`, every power `v^k` with
/// `k >= n` is discarded, modelling a truncated Laurent series in `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NovikovElement {
    rank: usize,
    truncation: Option<i64>,
    terms: BTreeMap<(LatticeElement, i64), Rational>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncation: Option<i64>,
    terms: Vec<NovikovMonomial>,
}

impl NovikovElement {
    pub fn zero(rank: usize) -> Self {
        NovikovElement {
            rank,
            truncation: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(LatticeElement::zero(rank), 0, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::monomial(LatticeElement::zero(rank), 0, c)
    }

    pub fn monomial(alpha: LatticeElement, vpow: i64, coeff: Rational) -> Self {
        let mut e = Self::zero(alpha.rank());
        e.add_term(alpha, vpow, coeff);
        e
    }

    /// `0 (x) v^k`.
    pub fn v_pow(rank: usize, k: i64) -> Self {
        Self::monomial(LatticeElement::zero(rank), k, Rational::one())
    }

    pub fn with_truncation(mut self, order: Option<i64>) -> Self {
        self.truncation = order;
        if let Some(n) = order {
            self.terms.retain(|(_, k), _| *k < n);
        }
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = NovikovMonomial> + '_ {
        self.terms.iter().map(|((a, k), c)| NovikovMonomial {
            alpha: a.clone(),
            vpow: *k,
            coeff: c.clone(),
        })
    }

    pub fn coeff(&self, alpha: &LatticeElement, vpow: i64) -> Rational {
        self.terms
            .get(&(alpha.clone(), vpow))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, alpha: LatticeElement, vpow: i64, coeff: Rational) {
        debug_assert_eq!(alpha.rank(), self.rank);
        if coeff.is_zero() || self.truncation.is_some_and(|n| vpow >= n) {
            return;
        }
        let key = (alpha, vpow);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), NovikovError> {
        if self.rank != other.rank {
            return Err(NovikovError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    fn joint_truncation(&self, other: &Self) -> Option<i64> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = NovikovElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((a, k), x) in &self.terms {
            out.add_term(a.clone(), *k, x * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// The common degree of all terms, or `None` if the element is zero or inhomogeneous.
    pub fn homogeneous_degree(&self, c1: &[i64]) -> Result<Option<i64>, NovikovError> {
        let mut deg = None;
        for m in self.terms() {
            let d = degree(&m, c1)?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Ok(None),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ElementJson {
            rank: self.rank,
            truncation: self.truncation,
            terms: self.terms().collect(),
        })
        .expect("serializable")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("valid json")
    }

    pub fn from_json(src: &str) -> Result<Self, NovikovError> {
        let v: serde_json::Value =
            serde_json::from_str(src).map_err(|e| NovikovError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, NovikovError> {
        let raw: ElementJson =
            serde_json::from_value(v.clone()).map_err(|e| NovikovError::Json(e.to_string()))?;
        let mut out = NovikovElement::zero(raw.rank).with_truncation(raw.truncation);
        for m in raw.terms {
            if m.alpha.rank() != raw.rank {
                return Err(NovikovError::RankMismatch(raw.rank, m.alpha.rank()));
            }
            out.add_term(m.alpha, m.vpow, m.coeff);
        }
        Ok(out)
    }
}

pub fn nov_add(a: &NovikovElement, b: &NovikovElement) -> Result<NovikovElement, NovikovError> {
    a.check_rank(b)?;
    let mut out = a.clone().with_truncation(a.joint_truncation(b));
    for ((alpha, k), c) in &b.terms {
        out.add_term(alpha.clone(), *k, c.clone());
    }
    Ok(out)
}

/// Convolution product `(alpha (x) v^i)(beta (x) v^j) = (alpha + beta) (x) v^(i+j)`.
pub fn nov_mul(a: &NovikovElement, b: &NovikovElement) -> Result<NovikovElement, NovikovError> {
    a.check_rank(b)?;
    let mut out = NovikovElement::zero(a.rank).with_truncation(a.joint_truncation(b));
    for ((a1, k1), c1) in &a.terms {
        for ((a2, k2), c2) in &b.terms {
            out.add_term(a1 + a2, k1 + k2, c1 * c2);
        }
    }
    Ok(out)
}

/// The divided power `v_(k) = v^k / k!`.
pub fn divided_power(k: u32, rank: usize) -> NovikovElement {
    let c = Rational::new(BigInt::one(), factorial(k as u64));
    NovikovElement::monomial(LatticeElement::zero(rank), k as i64, c)
}

impl fmt::Display for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|m| {
                let alpha: Vec<String> = m.alpha.0.iter().map(|x| x.to_string()).collect();
                format!("{}*[{}]v^{}", format_rational(&m.coeff), alpha.join(","), m.vpow)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};
    use proptest::prelude::*;

    fn mono(alpha: &[i64], v: i64, c: i64) -> NovikovElement {
        NovikovElement::monomial(LatticeElement(alpha.to_vec()), v, int(c))
    }

    #[test]
    fn additive_identity_and_inverse() {
        let a = mono(&[1, 0], 1, 1);
        assert_eq!(nov_add(&a, &NovikovElement::zero(2)).unwrap(), a);
        assert!(nov_add(&a, &a.neg()).unwrap().is_zero());
        let b = mono(&[0, 1], 2, 1);
        let two = nov_add(&mono(&[1, 0], 2, 1), &b).unwrap();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn convolution_rule() {
        let p = nov_mul(&mono(&[1, 0], 1, 1), &mono(&[0, 1], 2, 1)).unwrap();
        assert_eq!(p, mono(&[1, 1], 3, 1));
        let unit = nov_mul(&mono(&[0, 0], -1, 1), &mono(&[0, 0], 1, 1)).unwrap();
        assert_eq!(unit, NovikovElement::one(2));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let e = nov_mul(&mono(&[1], 0, 1), &mono(&[1, 0], 0, 1)).unwrap_err();
        assert_eq!(e, NovikovError::RankMismatch(1, 2));
        assert!(nov_add(&mono(&[1], 0, 1), &mono(&[1, 0], 0, 1)).is_err());
    }

    #[test]
    fn degree_rule() {
        let m = |a: &[i64], v| NovikovMonomial {
            alpha: LatticeElement(a.to_vec()),
            vpow: v,
            coeff: int(1),
        };
        assert_eq!(degree(&m(&[0], 3), &[5]).unwrap(), 6);
        assert_eq!(degree(&m(&[2], 3), &[1]).unwrap(), 10);
        assert_eq!(degree(&m(&[1], 1), &[-1]).unwrap(), 0);
        assert!(degree(&m(&[1, 1], 1), &[-1]).is_err());
    }

    #[test]
    fn divided_powers() {
        assert_eq!(divided_power(0, 1), NovikovElement::one(1));
        assert_eq!(
            divided_power(2, 1),
            NovikovElement::monomial(LatticeElement::zero(1), 2, rat(1, 2))
        );
        let lhs = nov_mul(&divided_power(1, 1), &divided_power(2, 1)).unwrap();
        assert_eq!(lhs, divided_power(3, 1).scale(&int(3)));
    }

    #[test]
    fn truncation_drops_high_powers() {
        let a = nov_add(&mono(&[0], 1, 1), &mono(&[0], 0, 1))
            .unwrap()
            .with_truncation(Some(3));
        let sq = nov_mul(&a, &a).unwrap();
        assert_eq!(sq.coeff(&LatticeElement(vec![0]), 2), int(1));
        let cube = nov_mul(&sq, &a.clone().with_truncation(Some(2))).unwrap();
        assert_eq!(cube.truncation(), Some(2));
        assert_eq!(cube.coeff(&LatticeElement(vec![0]), 1), int(3));
        assert_eq!(cube.len(), 2);
    }

    #[test]
    fn json_shape() {
        let a = NovikovElement::monomial(LatticeElement(vec![1, -2]), 3, rat(-5, 7));
        assert_eq!(
            a.to_json(),
            r#"{"rank":2,"terms":[{"alpha":[1,-2],"v":3,"c":"-5/7"}]}"#
        );
        assert!(NovikovElement::from_json(r#"{"rank":2,"terms":[{"alpha":[1],"v":0,"c":"1"}]}"#).is_err());
    }

    fn element(rank: usize) -> impl Strategy<Value = NovikovElement> {
        prop::collection::vec(
            (prop::collection::vec(-2i64..3, rank), -3i64..4, -6i64..7, 1i64..4),
            0..4,
        )
        .prop_map(move |ts| {
            ts.into_iter().fold(NovikovElement::zero(rank), |acc, (a, v, n, d)| {
                nov_add(&acc, &NovikovElement::monomial(LatticeElement(a), v, rat(n, d))).unwrap()
            })
        })
    }

    /// Homogeneous element of degree `2 * half`: only the `v` exponent varies with `alpha`.
    fn homogeneous(c1: Vec<i64>, half: i64) -> impl Strategy<Value = NovikovElement> {
        let rank = c1.len();
        prop::collection::vec((prop::collection::vec(-2i64..3, rank), 1i64..5), 1..4).prop_map(
            move |ts| {
                ts.into_iter().fold(NovikovElement::zero(rank), |acc, (a, c)| {
                    let alpha = LatticeElement(a);
                    let v = half - alpha.pairing(&c1);
                    nov_add(&acc, &NovikovElement::monomial(alpha, v, int(c))).unwrap()
                })
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in element(2), b in element(2), c in element(2)) {
            let ab = nov_mul(&a, &b).unwrap();
            prop_assert_eq!(nov_mul(&ab, &c).unwrap(), nov_mul(&a, &nov_mul(&b, &c).unwrap()).unwrap());
            prop_assert_eq!(&ab, &nov_mul(&b, &a).unwrap());
            let lhs = nov_mul(&a, &nov_add(&b, &c).unwrap()).unwrap();
            let rhs = nov_add(&ab, &nov_mul(&a, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn grading_is_additive(h1 in -3i64..4, h2 in -3i64..4,
                               a in homogeneous(vec![1, -1], 0), b in homogeneous(vec![1, -1], 0)) {
            let c1 = [1, -1];
            let shift = |x: &NovikovElement, h: i64| nov_mul(x, &NovikovElement::v_pow(2, h)).unwrap();
            let (a, b) = (shift(&a, h1), shift(&b, h2));
            let da = a.homogeneous_degree(&c1).unwrap().unwrap();
            let db = b.homogeneous_degree(&c1).unwrap().unwrap();
            let p = nov_mul(&a, &b).unwrap();
            if !p.is_zero() {
                prop_assert_eq!(p.homogeneous_degree(&c1).unwrap(), Some(da + db));
            }
        }

        #[test]
        fn json_round_trip(a in element(3)) {
            prop_assert_eq!(NovikovElement::from_json(&a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn divided_power_law_to_ten() {
        for i in 0..=10u32 {
            for j in 0..=10u32 {
                let lhs = nov_mul(&divided_power(i, 1), &divided_power(j, 1)).unwrap();
                let c = Rational::from_integer(crate::exactalg::rational::binomial((i + j) as u64, i as u64));
                assert_eq!(lhs, divided_power(i + j, 1).scale(&c));
            }
        }
    }
}
