use qcob::descend::schurq::power_sum;
use qcob::descend::{schur_q, schur_q_coproduct, strict_partitions, SchurQElement, SchurQTensor};
use qcob::exactalg::poly::{Monomial, Poly};
use qcob::exactalg::Rational;

fn basis_upto(n: u32) -> Vec<Vec<u32>> {
    (0..=n).flat_map(strict_partitions).collect()
}

fn tensor_of(elem: &SchurQElement) -> SchurQTensor {
    let mut t = SchurQTensor::zero(1);
    for (l, c) in elem.terms() {
        t.add_term(vec![l.clone()], c.clone());
    }
    t
}

#[test]
fn alternating_products_vanish() {
    for n in 1..=10u32 {
        let mut acc = SchurQElement::zero();
        for s in 0..=n {
            let term = SchurQElement::q(n - s).mul(&SchurQElement::q(s));
            let sign = if s % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&term.scale(&Rational::from_integer(sign.into())));
        }
        assert!(acc.is_zero(), "n={n}: {acc}");
    }
}

#[test]
fn alternating_products_vanish_as_polynomials() {
    // independent of the strict-partition basis: expand in 5 variables
    for n in 1..=6u32 {
        let mut acc = Poly::<usize>::zero();
        for s in 0..=n {
            let term = &schur_q(n - s, 5) * &schur_q(s, 5);
            acc = if s % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        assert!(acc.is_zero(), "n={n}");
    }
}

#[test]
fn coproduct_matches_two_alphabets() {
    // Q_r(x u y) = sum_i Q_i(x) Q_{r-i}(y), with x = variables 0..m and y = m..2m
    let m = 3usize;
    for r in 0..=5u32 {
        let lhs = schur_q(r, 2 * m);
        let mut rhs = Poly::zero();
        for (key, c) in schur_q_coproduct(r).terms() {
            let part = |l: &Vec<u32>| l.first().copied().unwrap_or(0);
            let x = schur_q(part(&key[0]), m);
            let y = schur_q(part(&key[1]), m).substitute(|&v| Poly::var(v + m));
            rhs = &rhs + &(&x * &y).scale(c);
        }
        assert_eq!(lhs, rhs, "r={r}");
    }
}

#[test]
fn coproduct_is_coassociative_to_degree_eight() {
    for lambda in basis_upto(8) {
        let d = SchurQElement::basis(lambda.clone()).unwrap().coproduct();
        assert_eq!(d.coproduct_at(0), d.coproduct_at(1), "{lambda:?}");
    }
}

#[test]
fn coproduct_is_multiplicative_to_degree_eight() {
    let all = basis_upto(8);
    for a in &all {
        for b in &all {
            let (na, nb): (u32, u32) = (a.iter().sum(), b.iter().sum());
            if na + nb > 8 {
                continue;
            }
            let qa = SchurQElement::basis(a.clone()).unwrap();
            let qb = SchurQElement::basis(b.clone()).unwrap();
            let lhs = qa.mul(&qb).coproduct();
            let rhs = qa.coproduct().mul(&qb.coproduct());
            assert_eq!(lhs, rhs, "{a:?} {b:?}");
        }
    }
}

#[test]
fn counit_law() {
    // (eps (x) id) Delta = id, with eps picking the coefficient of Q_empty
    for lambda in basis_upto(7) {
        let q = SchurQElement::basis(lambda.clone()).unwrap();
        let mut left = SchurQElement::zero();
        for (key, c) in q.coproduct().terms() {
            if key[0].is_empty() {
                left.add_term(key[1].clone(), c.clone());
            }
        }
        assert_eq!(tensor_of(&left), tensor_of(&q));
    }
}

#[test]
fn q_lambda_span_matches_strict_partition_count() {
    // in 10 variables the Q_lambda with |lambda| = n are linearly independent
    for n in 0..=6u32 {
        let polys: Vec<Poly<usize>> = strict_partitions(n)
            .into_iter()
            .map(|l| {
                SchurQElement::basis(l)
                    .unwrap()
                    .to_power_sums()
                    .substitute(|&k| power_sum(k, n as usize))
            })
            .collect();
        let monos: Vec<Monomial<usize>> = {
            let mut ms: Vec<_> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
            ms.sort();
            ms.dedup();
            ms
        };
        let rows: Vec<Vec<Rational>> = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
        assert_eq!(rank(rows), strict_partitions(n).len(), "n={n}");
    }
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    use num_traits::Zero;
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}
