//! Laurent polynomials `Q[q, q^-1]` in a single formal coupling variable.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::expr::{parse_terms, ParseError};
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    /// exponent -> nonzero coefficient
    terms: BTreeMap<i64, Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// The coupling variable `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut l = Laurent::zero();
        l.add_term(e, c);
        l
    }

    pub fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Single-term elements are exactly the units of `Q[q, q^-1]`.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Laurent::zero();
        for (e, k) in &self.terms {
            out.add_term(*e, k * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Laurent::one(), |acc, _| acc.mul(self))
    }

    /// Exact quotient, or `None` when `o` does not divide `self` in `Q[q, q^-1]`.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        // Strip the unit parts q^lo; o | self iff the normalised polynomials divide in Q[q].
        let lo_o = *o.terms.keys().next()?;
        let lo_s = *self.terms.keys().next()?;
        let num = self.mul(&Laurent::q_pow(-lo_s));
        let den = o.mul(&Laurent::q_pow(-lo_o));
        let (&deg_d, lead_d) = den.terms.iter().next_back()?;
        let mut rem = num;
        let mut quot = Laurent::zero();
        while let Some((&deg_r, lead_r)) = rem.terms.iter().next_back() {
            if deg_r < deg_d {
                return None;
            }
            let t = Laurent::monomial(lead_r / lead_d, deg_r - deg_d);
            rem = rem.sub(&t.mul(&den));
            quot = quot.add(&t);
        }
        Some(quot.mul(&Laurent::q_pow(lo_s - lo_o)))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut out = Laurent::zero();
        for t in parse_terms(src)? {
            let mut e = 0;
            for (atom, k) in &t.factors {
                if atom.name != "q" || !atom.subscript.is_empty() {
                    return Err(ParseError::at(
                        src,
                        atom.pos,
                        format!("unknown variable '{}' (expected q)", atom.name),
                    ));
                }
                e += k;
            }
            out.add_term(e, t.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest power first reads naturally for series in q.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".into(),
                k => format!("q^{k}"),
            };
            match (abs.is_one(), var.is_empty()) {
                (true, false) => f.write_str(&var)?,
                (_, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{var}")?,
            }
        }
        Ok(())
    }
}
