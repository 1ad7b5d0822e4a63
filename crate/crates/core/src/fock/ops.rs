use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::{FockBasis, FockError, FockPolynomial};
use crate::exactalg::poly::{Monomial, Poly};
use crate::exactalg::rational::{rat, Rational};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `a_n` on a raw polynomial in the `T` coordinates, without truncation checks.
fn osc_raw(n: i64, p: &Poly<usize>) -> Poly<usize> {
    if n >= 0 {
        p.derivative(&(n as usize))
    } else {
        let m = (-n - 1) as usize;
        p.mul_monomial(&Monomial::var(m), &int(2 * m as i64 + 1))
    }
}

/// Applies the oscillator `a_n`: `d/dT_n` for `n >= 0`, multiplication by `(2m+1) T_m` for
/// `n = -m-1 < 0`.
pub fn apply_oscillator(n: i64, p: &FockPolynomial) -> Result<FockPolynomial, FockError> {
    let p = p.in_basis(FockBasis::Oscillator);
    FockPolynomial::checked(FockBasis::Oscillator, p.bound, osc_raw(n, &p.poly))
}

/// Order of the two oscillator factors inside each summand of `L_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorOrder {
    /// `a_{k-n-1} a_n`: `a_n` acts first.
    AsWritten,
    /// `a_n a_{k-n-1}`.
    Swapped,
}

/// `L_k = 1/4 sum_{n in Z} a_{k-n-1} a_n` (`k != 0`), or
/// `L_0 = 1/2 sum_{n >= 0} a_{-n-1} a_n + 1/16`.
pub fn virasoro_l(k: i64, p: &FockPolynomial) -> Result<FockPolynomial, FockError> {
    virasoro_l_ordered(k, p, FactorOrder::AsWritten)
}

/// [`virasoro_l`] with an explicit factor order. For `k != 0` the two factors commute, so both
/// orders agree; for `k = 0` the order is ignored and the normal-ordered form is used.
pub fn virasoro_l_ordered(
    k: i64,
    p: &FockPolynomial,
    order: FactorOrder,
) -> Result<FockPolynomial, FockError> {
    let p = p.in_basis(FockBasis::Oscillator);
    let raw = if k == 0 {
        let shift = p.poly.scale(&rat(1, 16));
        &l0_number_part(&p.poly) + &shift
    } else {
        // Outside this window every summand vanishes on p: an annihilator would have to hit an
        // index above the highest variable present.
        let top = p.poly.max_var().map_or(-1, |v| v as i64);
        let mut acc = Poly::zero();
        for n in (k - 1 - top)..=top.max(-1) {
            let term = match order {
                FactorOrder::AsWritten => osc_raw(k - n - 1, &osc_raw(n, &p.poly)),
                FactorOrder::Swapped => osc_raw(n, &osc_raw(k - n - 1, &p.poly)),
            };
            acc = &acc + &term;
        }
        acc.scale(&rat(1, 4))
    };
    FockPolynomial::checked(FockBasis::Oscillator, p.bound, raw)
}

fn l0_number_part(p: &Poly<usize>) -> Poly<usize> {
    let top = p.max_var().map_or(-1, |v| v as i64);
    let mut acc = Poly::zero();
    for n in 0..=top {
        acc = &acc + &osc_raw(-n - 1, &osc_raw(n, p));
    }
    acc.scale(&rat(1, 2))
}

/// `L_0` without the vacuum shift, i.e. the `k = 0` instance of `L_k T_n = (n-k+1/2) T_{n-k}`.
pub fn virasoro_l0_unshifted(p: &FockPolynomial) -> FockPolynomial {
    let p = p.in_basis(FockBasis::Oscillator);
    FockPolynomial {
        poly: l0_number_part(&p.poly),
        ..p
    }
}

/// The Witt / Landweber-Novikov derivation `v_k`, determined by `v_k t_n = (n-k+1) t_{n-k}` for
/// `n >= k` and `0` otherwise. The result is in `t` coordinates.
pub fn witt_v(k: u64, p: &FockPolynomial) -> FockPolynomial {
    let p = p.in_basis(FockBasis::Laurent);
    let k = k as usize;
    let mut acc = Poly::zero();
    for n in p.poly.vars() {
        if n < k {
            continue;
        }
        let image = Poly::var(n - k).scale(&int((n - k + 1) as i64));
        acc = &acc + &(&p.poly.derivative(&n) * &image);
    }
    FockPolynomial {
        poly: acc,
        ..p
    }
}

/// Operator label accepted by the command line: `a:n`, `L:k` or `v:k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FockOperator {
    Oscillator(i64),
    Virasoro(i64),
    Witt(u64),
}

impl FockOperator {
    pub fn apply(&self, p: &FockPolynomial) -> Result<FockPolynomial, FockError> {
        match *self {
            FockOperator::Oscillator(n) => apply_oscillator(n, p),
            FockOperator::Virasoro(k) => virasoro_l(k, p),
            FockOperator::Witt(k) => Ok(witt_v(k, p)),
        }
    }
}

impl FromStr for FockOperator {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FockError::BadOperator(s.to_string());
        let (kind, idx) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "a" => Ok(FockOperator::Oscillator(idx.parse().map_err(|_| bad())?)),
            "L" => Ok(FockOperator::Virasoro(idx.parse().map_err(|_| bad())?)),
            "v" => Ok(FockOperator::Witt(idx.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockOperator::Oscillator(n) => write!(f, "a:{n}"),
            FockOperator::Virasoro(k) => write!(f, "L:{k}"),
            FockOperator::Witt(k) => write!(f, "v:{k}"),
        }
    }
}

/// `[A, B] p = A(B p) - B(A p)`, returned in the coordinates of `p`.
pub fn bracket(
    a: FockOperator,
    b: FockOperator,
    p: &FockPolynomial,
) -> Result<FockPolynomial, FockError> {
    let ab = a.apply(&b.apply(p)?)?;
    let ba = b.apply(&a.apply(p)?)?;
    Ok(ab.sub(&ba).in_basis(p.basis()))
}

/// Measures the scalar `lambda(m)` with `([L_m, L_-m] - 2m L_0) p = lambda(m) p`, probing the
/// vacuum and every one-particle state `T_j` that fits inside the truncation.
pub fn central_term(m: u64, bound: usize) -> Result<Rational, FockError> {
    if m == 0 || (m as usize) > bound + 1 {
        return Err(FockError::InsufficientTruncation { m, bound });
    }
    let mi = m as i64;
    let defect = |p: &FockPolynomial| -> Result<FockPolynomial, FockError> {
        let comm = bracket(FockOperator::Virasoro(mi), FockOperator::Virasoro(-mi), p)?;
        Ok(comm.sub(&virasoro_l(0, p)?.scale(&int(2 * mi))))
    };
    let vacuum = FockPolynomial::one(FockBasis::Oscillator, bound);
    let out = defect(&vacuum)?;
    let lambda = out.poly().coeff(&Monomial::one());
    if out.poly().len() > 1 || (out.poly().len() == 1 && lambda.is_zero()) {
        return Err(FockError::NonScalar {
            m,
            witness: format!("on 1: {out}"),
        });
    }
    for j in 0..=bound.saturating_sub(m as usize) {
        if j + m as usize > bound {
            break;
        }
        let p = FockPolynomial::var(FockBasis::Oscillator, j, bound)?;
        let got = defect(&p)?;
        let want = p.scale(&lambda);
        if got != want {
            return Err(FockError::NonScalar {
                m,
                witness: format!("on T_{j}: got {got}, expected {want}"),
            });
        }
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::monomials_up_to_weight;

    fn t(src: &str, n: usize) -> FockPolynomial {
        FockPolynomial::parse(src, n).unwrap()
    }

    #[test]
    fn oscillator_examples() {
        assert_eq!(apply_oscillator(2, &t("T_2", 4)).unwrap().to_string(), "1");
        assert_eq!(apply_oscillator(-3, &t("1", 4)).unwrap().to_string(), "5*T_2");
        assert!(matches!(
            apply_oscillator(-6, &t("T_1", 4)),
            Err(FockError::TruncationOverflow { index: 5, bound: 4 })
        ));
    }

    #[test]
    fn heisenberg_relations() {
        let states = monomials_up_to_weight(FockBasis::Oscillator, 5, 8).unwrap();
        for m in 0..5i64 {
            for n in 0..5i64 {
                for p in &states {
                    let a = FockOperator::Oscillator(m);
                    let c = FockOperator::Oscillator(-n - 1);
                    let got = bracket(a, c, p).unwrap();
                    let want = if m == n { p.scale(&int(2 * n + 1)) } else { p.scale(&int(0)) };
                    assert_eq!(got, want, "m={m} n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn virasoro_examples() {
        assert_eq!(virasoro_l(5, &t("T_7", 8)).unwrap().to_string(), "5/2*T_2");
        assert!(virasoro_l(3, &t("T_1", 8)).unwrap().is_zero());
        assert_eq!(virasoro_l(0, &t("1", 8)).unwrap().to_string(), "1/16");
        // both readings at k = 0
        assert_eq!(virasoro_l(0, &t("T_3", 8)).unwrap(), t("57/16*T_3", 8));
        assert_eq!(virasoro_l0_unshifted(&t("T_3", 8)), t("7/2*T_3", 8));
    }

    #[test]
    fn virasoro_lowering_needs_room() {
        assert!(matches!(
            virasoro_l(-3, &t("T_2", 3)),
            Err(FockError::TruncationOverflow { .. })
        ));
        assert!(virasoro_l(-3, &t("T_2", 5)).is_ok());
    }

    #[test]
    fn factor_orders_agree_away_from_zero() {
        let states = monomials_up_to_weight(FockBasis::Oscillator, 6, 12).unwrap();
        for k in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            for p in &states {
                assert_eq!(
                    virasoro_l_ordered(k, p, FactorOrder::AsWritten).unwrap(),
                    virasoro_l_ordered(k, p, FactorOrder::Swapped).unwrap()
                );
            }
        }
    }

    #[test]
    fn virasoro_is_not_a_derivation() {
        // L_1 (T_0^2) = 1/2 comes from the second-order part 1/4 a_0 a_0
        let p = t("T_0", 6);
        let lhs = virasoro_l(1, &p.mul(&p).unwrap()).unwrap();
        assert_eq!(lhs, t("1/2", 6));
        let rhs = virasoro_l(1, &p).unwrap().mul(&p).unwrap().scale(&int(2));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_v(2, &t("t_5", 6)).to_string(), "4*t_3");
        assert!(witt_v(4, &t("t_2", 6)).is_zero());
        assert_eq!(witt_v(1, &t("t_2*t_3", 6)), t("2*t_1*t_3 + 3*t_2^2", 6));
    }

    #[test]
    fn witt_from_t_coordinates() {
        // T_5 = t_5 / 11!!; v_2 t_5 = 4 t_3 = 4 * 7!! T_3
        let got = witt_v(2, &t("T_5", 6)).in_basis(FockBasis::Oscillator);
        assert_eq!(got, t("4*105/10395*T_3", 6));
    }

    #[test]
    fn operator_labels() {
        assert_eq!("L:-3".parse::<FockOperator>().unwrap(), FockOperator::Virasoro(-3));
        assert_eq!("v:2".parse::<FockOperator>().unwrap(), FockOperator::Witt(2));
        assert_eq!("a:0".parse::<FockOperator>().unwrap(), FockOperator::Oscillator(0));
        assert!("v:-1".parse::<FockOperator>().is_err());
        assert!("L3".parse::<FockOperator>().is_err());
    }

    #[test]
    fn bracket_examples() {
        for n in 0..=20usize {
            let p = FockPolynomial::var(FockBasis::Laurent, n, 20).unwrap();
            let got = bracket(FockOperator::Witt(1), FockOperator::Witt(2), &p).unwrap();
            assert_eq!(got, witt_v(3, &p).scale(&int(-1)));
        }
        for n in 0..=10usize {
            let p = FockPolynomial::var(FockBasis::Oscillator, n, 16).unwrap();
            let got = bracket(FockOperator::Virasoro(1), FockOperator::Virasoro(2), &p).unwrap();
            assert_eq!(got, virasoro_l(3, &p).unwrap().scale(&int(-1)));
        }
    }

    #[test]
    fn central_term_rejects_tiny_truncation() {
        assert!(matches!(
            central_term(5, 2),
            Err(FockError::InsufficientTruncation { .. })
        ));
    }

    /// Values measured by `central_term`, frozen after the first run.
    #[test]
    fn central_values_are_frozen() {
        let measured: Vec<Rational> = (1..=6).map(|m| central_term(m, 12).unwrap()).collect();
        let frozen = [rat(0, 1), rat(1, 2), rat(2, 1), rat(5, 1), rat(10, 1), rat(35, 2)];
        assert_eq!(measured, frozen);
    }

    /// Lagrange interpolation through m = 1..4, evaluated at m = 5 and 6.
    #[test]
    fn central_values_fit_one_cubic() {
        let pts: Vec<(i64, Rational)> = (1..=4).map(|m| (m, central_term(m as u64, 12).unwrap())).collect();
        let interp = |x: i64| -> Rational {
            let mut acc = Rational::zero();
            for (i, (xi, yi)) in pts.iter().enumerate() {
                let mut w = yi.clone();
                for (j, (xj, _)) in pts.iter().enumerate() {
                    if i != j {
                        w *= rat(x - xj, xi - xj);
                    }
                }
                acc += w;
            }
            acc
        };
        assert_eq!(interp(5), central_term(5, 12).unwrap());
        assert_eq!(interp(6), central_term(6, 12).unwrap());
    }
}
