//! Exact computational algebra for two-dimensional topological field theories and their
//! coefficient rings.
//!
//! * [`exactalg`]: rationals, sparse polynomials and the graded Novikov ring.
//! * [`fock`]: the twisted-boson Fock space with oscillators, Virasoro generators `L_k` and
//!   the Witt / Landweber-Novikov derivations `v_k`.
//! * [`frobenius`]: finite-rank commutative Frobenius algebras, including the rank-one
//!   point theory `x * y = q x y`.
//! * [`tft`]: stable graphs, gluing arithmetic and the amplitude evaluator.
//! * [`descend`]: descendant variables of the large phase space and Schur Q-functions.
//!
//! No floating point is used anywhere.

pub mod descend;
pub mod exactalg;
pub mod fock;
pub mod frobenius;
pub mod tft;

pub use exactalg::{Laurent, NovikovElement, Poly, Rational, Ring};
