//! Exact arithmetic: rationals, sparse polynomials, Laurent polynomials in a coupling
//! variable, and the graded Novikov ring with divided powers.

pub mod expr;
pub mod laurent;
pub mod novikov;
pub mod poly;
pub mod rational;
pub mod ring;

pub use expr::{parse_terms, Atom, ParseError, ParsedTerm};
pub use laurent::Laurent;
pub use novikov::{
    degree, divided_power, nov_add, nov_mul, LatticeElement, NovikovElement, NovikovError,
    NovikovMonomial,
};
pub use poly::{Monomial, Poly};
pub use rational::{int, parse_rational, rat, Rational};
pub use ring::Ring;
