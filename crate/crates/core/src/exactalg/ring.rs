use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use super::laurent::Laurent;
use super::novikov::{nov_add, nov_mul, NovikovElement};
use super::rational::{parse_rational, Rational};

/// Exact commutative coefficient ring.
///
/// Constants are produced relative to an existing value (`zero_like`, `one_like`) because some
/// rings carry shape data, e.g. the lattice rank of a Novikov element.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync {
    /// Tag used in structured-text files.
    const NAME: &'static str;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    /// Exact quotient when `rhs` divides `self` in this ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn from_json(v: &serde_json::Value) -> Result<Self, String>;
    fn to_json(&self) -> serde_json::Value;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

fn json_str(v: &serde_json::Value) -> Result<&str, String> {
    v.as_str()
        .ok_or_else(|| format!("expected a string coefficient, got {v}"))
}

impl Ring for Rational {
    const NAME: &'static str = "Q";

    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        parse_rational(json_str(v)?).map_err(|e| e.to_string())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl Ring for Laurent {
    const NAME: &'static str = "laurent_q";

    fn zero_like(&self) -> Self {
        Laurent::zero()
    }
    fn one_like(&self) -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        Laurent::exact_div(self, rhs)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        Laurent::parse(json_str(v)?).map_err(|e| e.to_string())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

/// Elements inside one Frobenius structure share their lattice rank, so the panics below mark
/// a broken construction invariant rather than a recoverable input error.
impl Ring for NovikovElement {
    const NAME: &'static str = "novikov";

    fn zero_like(&self) -> Self {
        NovikovElement::zero(self.rank()).with_truncation(self.truncation())
    }
    fn one_like(&self) -> Self {
        NovikovElement::one(self.rank()).with_truncation(self.truncation())
    }
    fn is_zero(&self) -> bool {
        NovikovElement::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        nov_add(self, rhs).expect("Novikov operands share lattice rank")
    }
    fn minus(&self, rhs: &Self) -> Self {
        nov_add(self, &rhs.neg()).expect("Novikov operands share lattice rank")
    }
    fn times(&self, rhs: &Self) -> Self {
        nov_mul(self, rhs).expect("Novikov operands share lattice rank")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    /// Only division by units (single terms) is supported.
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.rank() != self.rank() || rhs.len() != 1 || rhs.truncation().is_some() {
            return None;
        }
        let m = rhs.terms().next()?;
        let inv_alpha = super::novikov::LatticeElement(m.alpha.0.iter().map(|x| -x).collect());
        let inv = NovikovElement::monomial(inv_alpha, -m.vpow, m.coeff.recip());
        nov_mul(self, &inv).ok()
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        NovikovElement::from_json_value(v).map_err(|e| e.to_string())
    }
    fn to_json(&self) -> serde_json::Value {
        self.to_json_value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::novikov::LatticeElement;
    use crate::exactalg::rational::rat;

    #[test]
    fn novikov_unit_division() {
        let u = NovikovElement::monomial(LatticeElement(vec![1, 2]), 3, rat(2, 3));
        let x = NovikovElement::monomial(LatticeElement(vec![0, 1]), -1, rat(5, 1));
        let q = x.times(&u).exact_div(&u).unwrap();
        assert_eq!(q, x);
        let two_terms = u.plus(&x);
        assert!(x.exact_div(&two_terms).is_none());
    }

    #[test]
    fn json_coefficients() {
        let l = Laurent::from_json(&serde_json::json!("q^2 - 1/2")).unwrap();
        assert_eq!(Laurent::from_json(&l.to_json()).unwrap(), l);
        assert!(Rational::from_json(&serde_json::json!(3)).is_err());
    }
}
