use proptest::prelude::*;

use qcob::exactalg::rational::{int, rat};
use qcob::fock::{
    apply_oscillator, basis_change, bracket, virasoro_l, witt_v, FockBasis, FockOperator, FockPolynomial,
};
use qcob::Poly;

const BOUND: usize = 14;

/// Random polynomial in variables of index below 5, written in the given coordinates.
fn poly(prefix: &'static str) -> impl Strategy<Value = FockPolynomial> {
    let factor = (0usize..5, 1u32..3);
    let term = (-6i64..7, 1i64..4, prop::collection::vec(factor, 0..3));
    prop::collection::vec(term, 1..4).prop_map(move |terms| {
        let src: Vec<String> = terms
            .into_iter()
            .map(|(a, b, fs)| {
                let mut s = format!("{}", rat(a, b));
                for (i, e) in fs {
                    s.push_str(&format!("*{prefix}_{i}^{e}"));
                }
                s
            })
            .collect();
        let basis = if prefix == "t" { FockBasis::Laurent } else { FockBasis::Oscillator };
        // constants parse in T coordinates; relabel so every sample lives in `basis`
        FockPolynomial::parse(&src.join(" + ").replace("+ -", "- "), BOUND)
            .unwrap()
            .in_basis(basis)
    })
}

fn zero(basis: FockBasis) -> FockPolynomial {
    FockPolynomial::new(basis, BOUND, Poly::zero()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witt_fields_are_derivations(p in poly("t"), q in poly("t"), k in 0u64..5) {
        let lhs = witt_v(k, &p.mul(&q).unwrap());
        let rhs = witt_v(k, &p).mul(&q).unwrap().add(&p.mul(&witt_v(k, &q)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn witt_brackets_close(p in poly("t"), j in 0u64..5, k in 0u64..5) {
        let lhs = bracket(FockOperator::Witt(j), FockOperator::Witt(k), &p).unwrap();
        prop_assert_eq!(lhs, witt_v(j + k, &p).scale(&int(j as i64 - k as i64)));
    }

    #[test]
    fn virasoro_brackets_close(p in poly("T"), m in -3i64..4, n in -3i64..4) {
        prop_assume!(m + n != 0);
        let lhs = bracket(FockOperator::Virasoro(m), FockOperator::Virasoro(n), &p).unwrap();
        prop_assert_eq!(lhs, virasoro_l(m + n, &p).unwrap().scale(&int(m - n)));
    }

    #[test]
    fn heisenberg_relations(p in poly("T"), m in 0i64..5, n in 0i64..5) {
        let lhs = bracket(FockOperator::Oscillator(m), FockOperator::Oscillator(-n - 1), &p).unwrap();
        let want = if m == n { p.scale(&int(2 * n + 1)) } else { zero(FockBasis::Oscillator) };
        prop_assert_eq!(lhs, want);
    }

    #[test]
    fn oscillator_orderings_commute_away_from_minus_one(p in poly("T"), k in 1i64..6, j in 0i64..5) {
        // a_{k-j-1} and a_j commute whenever their indices do not sum to -1
        let a = apply_oscillator(k - j - 1, &apply_oscillator(j, &p).unwrap()).unwrap();
        let b = apply_oscillator(j, &apply_oscillator(k - j - 1, &p).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn basis_change_round_trips(p in poly("t")) {
        let big = basis_change(&p, FockBasis::Oscillator);
        prop_assert_eq!(big.basis(), FockBasis::Oscillator);
        prop_assert_eq!(basis_change(&big, FockBasis::Laurent), p);
    }

    #[test]
    fn witt_fields_agree_in_both_coordinates(p in poly("T"), k in 0u64..5) {
        let via_t = witt_v(k, &basis_change(&p, FockBasis::Laurent));
        prop_assert_eq!(witt_v(k, &p), via_t);
    }
}

#[test]
fn virasoro_generators_are_not_derivations() {
    let p = FockPolynomial::parse("T_0", BOUND).unwrap();
    let lhs = virasoro_l(-1, &p.mul(&p).unwrap()).unwrap();
    let l = virasoro_l(-1, &p).unwrap();
    let leibniz = l.mul(&p).unwrap().add(&p.mul(&l).unwrap());
    assert_ne!(lhs, leibniz);
}
