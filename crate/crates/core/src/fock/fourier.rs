use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactalg::Rational;

/// Finite combination `sum c_n a_n` of the basis of the complexified antiperiodic loop space.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FourierPolynomial {
    coeffs: BTreeMap<i64, Rational>,
}

impl FourierPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(n: i64) -> Self {
        Self::from_coeffs([(n, Rational::from_integer(1.into()))])
    }

    pub fn from_coeffs(cs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut f = Self::zero();
        for (n, c) in cs {
            f.add_term(n, c);
        }
        f
    }

    pub fn add_term(&mut self, n: i64, c: Rational) {
        let slot = self.coeffs.entry(n).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }
}

/// The skew form with `B(a_n, a_m) = (2m+1) delta_{n+m+1, 0}`, extended bilinearly.
pub fn pairing_b(f: &FourierPolynomial, g: &FourierPolynomial) -> Rational {
    let mut acc = Rational::zero();
    for (n, c) in f.coeffs() {
        let m = -n - 1;
        if let Some(d) = g.coeffs.get(&m) {
            acc += c * d * Rational::from_integer((2 * m + 1).into());
        }
    }
    acc
}
