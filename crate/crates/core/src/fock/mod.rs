//! The twisted-boson Fock space as a polynomial algebra `Q[T_0, ..., T_N]`.
//!
//! Two coordinate systems are used: `T_n`, the coordinate dual to the creation mode
//! `a_{-n-1}`, and `t_n`, the coordinate dual to `Z^{-n-1} (dZ)^{1/2}`. They differ by the
//! double factorial `t_n = (2n+1)!! T_n`.
//!
//! Oscillators are normalised as
//!
//! * `a_n = d/dT_n` for `n >= 0` (annihilation),
//! * `a_{-n-1} = (2n+1) T_n` (multiplication, creation),
//!
//! so that `[a_m, a_{-n-1}] = (2n+1) delta_{mn}`. With this choice the quadratic Virasoro
//! generators act by `L_k T_n = (n - k + 1/2) T_{n-k}` for `0 < k <= n`.
//!
//! Everything is computed inside an explicit truncation `N`; producing a variable with
//! index above `N` is an error, never a silent drop.

mod fourier;
mod ops;

use std::fmt;

use num_bigint::BigInt;

use crate::exactalg::poly::{Monomial, Poly};
use crate::exactalg::rational::{double_factorial, Rational};
use crate::exactalg::{parse_terms, ParseError};

pub use fourier::{pairing_b, FourierPolynomial};
pub use ops::{
    apply_oscillator, bracket, central_term, virasoro_l, virasoro_l0_unshifted,
    virasoro_l_ordered, witt_v, FactorOrder, FockOperator,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("result involves T_{index}, beyond the truncation bound N = {bound}")]
    TruncationOverflow { index: usize, bound: usize },
    #[error("variable index {index} exceeds truncation bound N = {bound}")]
    IndexBeyondBound { index: usize, bound: usize },
    #[error("[L_{m}, L_-{m}] - {two_m} L_0 is not scalar: {witness}", two_m = 2 * m)]
    NonScalar { m: u64, witness: String },
    #[error("truncation N = {bound} is too small to probe the central term at m = {m}")]
    InsufficientTruncation { m: u64, bound: usize },
    #[error("cannot mix T and t variables in one polynomial")]
    MixedBasis,
    #[error("invalid operator '{0}' (expected L:k, v:k or a:n)")]
    BadOperator(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Which coordinates a [`FockPolynomial`] is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FockBasis {
    /// `T_n`, dual to the creation operator `a_{-n-1}`.
    Oscillator,
    /// `t_n = (2n+1)!! T_n`, dual to `Z^{-n-1} (dZ)^{1/2}`.
    Laurent,
}

impl FockBasis {
    pub fn prefix(self) -> &'static str {
        match self {
            FockBasis::Oscillator => "T",
            FockBasis::Laurent => "t",
        }
    }
}

/// A polynomial in `T_0..T_N` (or `t_0..t_N`) with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FockPolynomial {
    basis: FockBasis,
    bound: usize,
    poly: Poly<usize>,
}

impl FockPolynomial {
    pub fn new(basis: FockBasis, bound: usize, poly: Poly<usize>) -> Result<Self, FockError> {
        if let Some(index) = poly.max_var().filter(|&v| v > bound) {
            return Err(FockError::IndexBeyondBound { index, bound });
        }
        Ok(FockPolynomial { basis, bound, poly })
    }

    /// Wraps a result, reporting any variable beyond the bound as an overflow.
    pub(crate) fn checked(basis: FockBasis, bound: usize, poly: Poly<usize>) -> Result<Self, FockError> {
        Self::new(basis, bound, poly).map_err(|e| match e {
            FockError::IndexBeyondBound { index, bound } => {
                FockError::TruncationOverflow { index, bound }
            }
            other => other,
        })
    }

    pub fn one(basis: FockBasis, bound: usize) -> Self {
        FockPolynomial {
            basis,
            bound,
            poly: Poly::one(),
        }
    }

    pub fn var(basis: FockBasis, index: usize, bound: usize) -> Result<Self, FockError> {
        Self::new(basis, bound, Poly::var(index))
    }

    pub fn monomial(
        basis: FockBasis,
        bound: usize,
        powers: impl IntoIterator<Item = (usize, u32)>,
    ) -> Result<Self, FockError> {
        Self::new(
            basis,
            bound,
            Poly::term(Monomial::from_powers(powers), Rational::from_integer(1.into())),
        )
    }

    /// Parses `c*T_i^e*...` sums (or the same with `t_i`). A constant defaults to the `T` basis.
    pub fn parse(src: &str, bound: usize) -> Result<Self, FockError> {
        let mut basis = None;
        let mut poly = Poly::zero();
        for term in parse_terms(src)? {
            let mut powers = Vec::new();
            for (atom, e) in &term.factors {
                let b = match atom.name.as_str() {
                    "T" => FockBasis::Oscillator,
                    "t" => FockBasis::Laurent,
                    other => {
                        return Err(ParseError::at(
                            src,
                            atom.pos,
                            format!("unknown variable '{other}' (expected T_i or t_i)"),
                        )
                        .into())
                    }
                };
                if atom.subscript.len() != 1 {
                    return Err(ParseError::at(src, atom.pos, "expected a single index").into());
                }
                if *e < 0 {
                    return Err(ParseError::at(src, atom.pos, "negative exponent").into());
                }
                if basis.is_some_and(|x| x != b) {
                    return Err(FockError::MixedBasis);
                }
                basis = Some(b);
                powers.push((atom.subscript[0] as usize, *e as u32));
            }
            poly.add_term(Monomial::from_powers(powers), term.coeff);
        }
        Self::new(basis.unwrap_or(FockBasis::Oscillator), bound, poly)
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn poly(&self) -> &Poly<usize> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FockPolynomial {
            poly: self.poly.scale(c),
            ..self.clone()
        }
    }

    /// Same element expressed in `target` coordinates.
    pub fn in_basis(&self, target: FockBasis) -> Self {
        basis_change(self, target)
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.in_basis(self.basis);
        FockPolynomial {
            poly: &self.poly + &other.poly,
            bound: self.bound.max(other.bound),
            basis: self.basis,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FockError> {
        let other = other.in_basis(self.basis);
        let bound = self.bound.max(other.bound);
        Self::checked(self.basis, bound, &self.poly * &other.poly)
    }
}

impl fmt::Display for FockPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = self.basis.prefix();
        f.write_str(&self.poly.display_with(|n| format!("{prefix}_{n}")))
    }
}

/// `(2n+1)!!` as a rational.
pub fn basis_scale(n: usize) -> Rational {
    Rational::from_integer(double_factorial(2 * n as i64 + 1))
}

/// Rewrites `p` in the `target` coordinates using `t_n = (2n+1)!! T_n`. The round trip is the
/// identity; converting into the basis `p` already uses is a no-op.
pub fn basis_change(p: &FockPolynomial, target: FockBasis) -> FockPolynomial {
    if p.basis == target {
        return p.clone();
    }
    let poly = p.poly.substitute(|&n| {
        let s = basis_scale(n);
        let c = match target {
            // t_n -> (2n+1)!! T_n
            FockBasis::Oscillator => s,
            // T_n -> t_n / (2n+1)!!
            FockBasis::Laurent => Rational::new(BigInt::from(1), s.to_integer()),
        };
        Poly::var(n).scale(&c)
    });
    FockPolynomial {
        basis: target,
        bound: p.bound,
        poly,
    }
}

/// All monomials `T_{n_1}^{e_1} ... ` with weight `sum (n_i + 1) e_i <= max_weight`, the constant
/// included. These are indexed by partitions of integers up to `max_weight`.
pub fn monomials_up_to_weight(
    basis: FockBasis,
    max_weight: usize,
    bound: usize,
) -> Result<Vec<FockPolynomial>, FockError> {
    fn rec(
        remaining: usize,
        max_part: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut parts = Vec::new();
    rec(max_weight, max_weight, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|ps| FockPolynomial::monomial(basis, bound, ps.into_iter().map(|p| (p - 1, 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_change_examples() {
        let t3 = FockPolynomial::parse("t_3", 5).unwrap();
        let big_t = basis_change(&t3, FockBasis::Oscillator);
        assert_eq!(big_t.to_string(), "105*T_3");
        let t0 = FockPolynomial::parse("t_0", 5).unwrap();
        assert_eq!(basis_change(&t0, FockBasis::Oscillator).to_string(), "T_0");
        let back = basis_change(&FockPolynomial::parse("105*T_3", 5).unwrap(), FockBasis::Laurent);
        assert_eq!(back.to_string(), "t_3");
    }

    #[test]
    fn basis_round_trip_to_twenty() {
        for n in 0..=20 {
            let p = FockPolynomial::var(FockBasis::Laurent, n, 20).unwrap();
            let q = basis_change(&p, FockBasis::Oscillator);
            assert_eq!(q.poly().coeff(&Monomial::var(n)), basis_scale(n));
            assert_eq!(basis_change(&q, FockBasis::Laurent), p);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            FockPolynomial::parse("T_1*t_2", 4),
            Err(FockError::MixedBasis)
        ));
        assert!(matches!(
            FockPolynomial::parse("T_9", 4),
            Err(FockError::IndexBeyondBound { index: 9, bound: 4 })
        ));
        assert!(matches!(
            FockPolynomial::parse("x_1", 4),
            Err(FockError::Parse(_))
        ));
    }

    #[test]
    fn weight_enumeration_counts_partitions() {
        let ms = monomials_up_to_weight(FockBasis::Oscillator, 8, 8).unwrap();
        // 1 + p(1) + ... + p(8)
        assert_eq!(ms.len(), 1 + 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22);
        assert!(ms.contains(&FockPolynomial::parse("T_0^8", 8).unwrap()));
        assert!(ms.contains(&FockPolynomial::parse("T_7", 8).unwrap()));
        assert_eq!(ms[0], FockPolynomial::one(FockBasis::Oscillator, 8));
    }
}
