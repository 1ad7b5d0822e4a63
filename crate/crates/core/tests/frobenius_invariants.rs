use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcob::exactalg::rational::rat;
use qcob::frobenius::{quantum_point, samples, FrobeniusData};
use qcob::{Laurent, Rational};

fn random_data(seed: u64) -> FrobeniusData<Rational> {
    samples::random_frobenius(&mut ChaCha8Rng::seed_from_u64(seed), 3)
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..6, 1i64..4).prop_map(|(a, b)| rat(a, b)), len)
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-4i64..5, -6i64..7, 1i64..4), 0..4).prop_map(|ts| {
        let mut l = Laurent::zero();
        for (e, a, b) in ts {
            l.add_term(e, rat(a, b));
        }
        l
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn samples_validate_and_partitions_agree_on_basis_tuples(seed in any::<u64>()) {
        let d = random_data(seed);
        prop_assert!(d.validate().passed(), "{}", d.validate());
        let r = d.rank();
        for i in 0..r.pow(4) {
            let idx = [i / r.pow(3), (i / r.pow(2)) % r, (i / r) % r, i % r];
            let e = idx.map(|j| d.basis_vector(j));
            let p = d.associator_partitions([&e[0], &e[1], &e[2], &e[3]]).unwrap();
            prop_assert!(p[0] == p[1] && p[1] == p[2], "{:?} at {:?}", p, idx);
        }
    }

    #[test]
    fn partitions_agree_on_arbitrary_inputs(seed in any::<u64>(), xs in prop::collection::vec(vector(3), 4)) {
        let d = random_data(seed);
        let x: Vec<Vec<Rational>> = xs.into_iter().map(|v| v[..d.rank()].to_vec()).collect();
        let p = d.associator_partitions([&x[0], &x[1], &x[2], &x[3]]).unwrap();
        prop_assert_eq!(&p[0], &p[1]);
        prop_assert_eq!(&p[1], &p[2]);
    }

    #[test]
    fn copairing_inverts_the_gram_matrix(seed in any::<u64>()) {
        let d = random_data(seed);
        let g = d.gram();
        let inv = d.copairing().unwrap().inverse;
        let r = d.rank();
        for i in 0..r {
            for k in 0..r {
                let s: Rational = (0..r).map(|j| &g[i][j] * &inv[j][k]).sum();
                let want = if i == k { Rational::one() } else { Rational::zero() };
                prop_assert_eq!(s, want);
            }
        }
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let d = random_data(seed);
        prop_assert_eq!(FrobeniusData::<Rational>::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn rescaling_is_multiplicative(x in laurent(), y in laurent()) {
        let d = quantum_point();
        let (x, y) = (vec![x], vec![y]);
        let lhs = d.rescale_iso(&d.star(&x, &y)).unwrap();
        let rhs = d.dot(&d.rescale_iso(&x).unwrap(), &d.rescale_iso(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_powers_of_one(k in 1u32..11) {
        let d = quantum_point();
        prop_assert_eq!(d.star_power(&[Laurent::one()], k).unwrap(), vec![Laurent::q_pow(k as i64 - 1)]);
    }
}
