//! Random and deliberately broken Frobenius data over `Q`, for property tests and the
//! verification suites.

use rand::Rng;

use super::{linalg, FrobeniusData, StructureConstants};
use crate::exactalg::rational::int;
use crate::exactalg::Rational;

/// Shape of the underlying commutative algebra before the change of basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseAlgebra {
    /// `Q^r` with idempotent basis.
    Semisimple(usize),
    /// `Q[x]/(x^r)`.
    Local(usize),
    /// `Q x Q[x]/(x^2)`.
    Mixed,
}

impl BaseAlgebra {
    pub fn rank(self) -> usize {
        match self {
            BaseAlgebra::Semisimple(r) | BaseAlgebra::Local(r) => r,
            BaseAlgebra::Mixed => 3,
        }
    }
}

fn zeros(r: usize) -> StructureConstants<Rational> {
    vec![vec![vec![int(0); r]; r]; r]
}

fn nonzero<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Product, trace and unit of the base algebra in its standard basis, with a random
/// nondegenerate trace.
fn base<G: Rng + ?Sized>(
    rng: &mut G,
    kind: BaseAlgebra,
) -> (StructureConstants<Rational>, Vec<Rational>, Vec<Rational>) {
    let r = kind.rank();
    let mut c = zeros(r);
    let mut unit = vec![int(0); r];
    let trace: Vec<Rational>;
    match kind {
        BaseAlgebra::Semisimple(_) => {
            for i in 0..r {
                c[i][i][i] = int(1);
                unit[i] = int(1);
            }
            trace = (0..r).map(|_| int(nonzero(rng, 4))).collect();
        }
        BaseAlgebra::Local(_) => {
            for i in 0..r {
                for j in 0..r - i {
                    c[i][j][i + j] = int(1);
                }
            }
            unit[0] = int(1);
            // the socle coefficient must be nonzero
            trace = (0..r)
                .map(|i| int(if i + 1 == r { nonzero(rng, 4) } else { rng.gen_range(-4..=4) }))
                .collect();
        }
        BaseAlgebra::Mixed => {
            // basis e, f, x with e^2 = e, f^2 = f, fx = x, x^2 = 0
            c[0][0][0] = int(1);
            c[1][1][1] = int(1);
            c[1][2][2] = int(1);
            c[2][1][2] = int(1);
            unit[0] = int(1);
            unit[1] = int(1);
            trace = vec![int(nonzero(rng, 4)), int(rng.gen_range(-4..=4)), int(nonzero(rng, 4))];
        }
    }
    (c, trace, unit)
}

fn random_invertible<G: Rng + ?Sized>(rng: &mut G, r: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    loop {
        let p: Vec<Vec<Rational>> = (0..r)
            .map(|_| (0..r).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        if let Some(q) = linalg::inverse(&p, &int(0)) {
            return (p, q);
        }
    }
}

/// Rewrites product, trace and unit in the basis `w_a = sum_i p[a][i] z_i`.
fn change_basis(
    c: &StructureConstants<Rational>,
    trace: &[Rational],
    unit: &[Rational],
    p: &[Vec<Rational>],
    q: &[Vec<Rational>],
) -> (StructureConstants<Rational>, Vec<Rational>, Vec<Rational>) {
    let r = trace.len();
    let mut out = zeros(r);
    for a in 0..r {
        for b in 0..r {
            for i in 0..r {
                for j in 0..r {
                    let w = &p[a][i] * &p[b][j];
                    if w == int(0) {
                        continue;
                    }
                    for k in 0..r {
                        if c[i][j][k] == int(0) {
                            continue;
                        }
                        for d in 0..r {
                            out[a][b][d] += &w * &c[i][j][k] * &q[k][d];
                        }
                    }
                }
            }
        }
    }
    let tr = (0..r)
        .map(|a| (0..r).map(|i| &p[a][i] * &trace[i]).sum())
        .collect();
    let u = (0..r)
        .map(|d| (0..r).map(|i| &unit[i] * &q[i][d]).sum())
        .collect();
    (out, tr, u)
}

/// Random valid data of the given shape, written in a random integral basis. With `twisted`,
/// the quantum product becomes `x * y = u x y` for a random invertible `u`, while the
/// bilinear form keeps the untwisted product.
pub fn random_frobenius_of<G: Rng + ?Sized>(
    rng: &mut G,
    kind: BaseAlgebra,
    twisted: bool,
) -> FrobeniusData<Rational> {
    let r = kind.rank();
    let (c, trace, unit) = base(rng, kind);
    let (p, q) = random_invertible(rng, r);
    let (c, trace, unit) = change_basis(&c, &trace, &unit, &p, &q);
    let names = (1..=r).map(|i| format!("z{i}")).collect();
    let plain = FrobeniusData::new(names, c.clone(), trace)
        .and_then(|d| d.with_unit(unit.clone()))
        .expect("well-formed");
    if !twisted {
        return plain;
    }
    let u = loop {
        let u: Vec<Rational> = (0..r).map(|_| int(rng.gen_range(-3..=3))).collect();
        let cols: Vec<Vec<Rational>> = (0..r).map(|j| plain.star(&u, &plain.basis_vector(j))).collect();
        let m: Vec<Vec<Rational>> = (0..r).map(|i| (0..r).map(|j| cols[j][i].clone()).collect()).collect();
        if linalg::determinant(&m, &int(0)) != int(0) {
            break u;
        }
    };
    let mut twisted_c = zeros(r);
    for i in 0..r {
        for j in 0..r {
            let zij = plain.star(&plain.basis_vector(i), &plain.basis_vector(j));
            twisted_c[i][j] = plain.star(&u, &zij);
        }
    }
    let data = FrobeniusData::new(plain.basis_names().to_vec(), twisted_c, plain.trace_covector().to_vec())
        .and_then(|d| d.with_pairing_product(c))
        .and_then(|d| d.with_unit(unit))
        .expect("well-formed");
    // 1 * y = 1 gives y = u^{-1}, the unit of the twisted product
    let star_unit = data.star_unit_candidate().expect("u is invertible");
    data.with_unit(star_unit).expect("rank matches")
}

/// Random valid data of rank `1..=max_rank`.
pub fn random_frobenius<G: Rng + ?Sized>(rng: &mut G, max_rank: usize) -> FrobeniusData<Rational> {
    let r = rng.gen_range(1..=max_rank.max(1));
    let kind = match (r, rng.gen_range(0..3)) {
        (3, 2) => BaseAlgebra::Mixed,
        (_, 0) | (1, _) => BaseAlgebra::Semisimple(r),
        (_, 1) => BaseAlgebra::Local(r),
        _ => BaseAlgebra::Semisimple(r),
    };
    let twisted = rng.gen_bool(0.5);
    random_frobenius_of(rng, kind, twisted)
}

/// Adds `delta` to `c[i][j][k]` and `c[j][i][k]`, keeping the product commutative.
pub fn perturb(data: &FrobeniusData<Rational>, i: usize, j: usize, k: usize, delta: Rational) -> FrobeniusData<Rational> {
    let mut c = data.product().clone();
    c[i][j][k] += &delta;
    if i != j {
        c[j][i][k] += &delta;
    }
    let mut out = FrobeniusData::new(data.basis_names().to_vec(), c, data.trace_covector().to_vec())
        .expect("same shape");
    if let Some(p) = data.pairing_product() {
        out = out.with_pairing_product(p.clone()).expect("same shape");
    }
    out
}

/// `Q[Z/2]` with `e * e` changed from `e` to `e + g`: commutative, nondegenerate, not
/// associative (`(e e) g = e + g` while `e (e g) = g`).
pub fn perturbed_group_algebra() -> FrobeniusData<Rational> {
    perturb(&super::group_algebra_z2(), 0, 0, 1, int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::Axiom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_samples_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let d = random_frobenius(&mut rng, 3);
            let rep = d.validate();
            assert!(rep.passed(), "{rep}\n{}", d.to_json());
            let cop = d.copairing().unwrap();
            let g = d.gram();
            let r = d.rank();
            for i in 0..r {
                for k in 0..r {
                    let s: Rational = (0..r).map(|j| &g[i][j] * &cop.inverse[j][k]).sum();
                    assert_eq!(s, if i == k { int(1) } else { int(0) });
                }
            }
        }
    }

    #[test]
    fn every_shape_validates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in [
            BaseAlgebra::Semisimple(1),
            BaseAlgebra::Semisimple(3),
            BaseAlgebra::Local(2),
            BaseAlgebra::Local(3),
            BaseAlgebra::Mixed,
        ] {
            for twisted in [false, true] {
                let d = random_frobenius_of(&mut rng, kind, twisted);
                assert!(d.validate().passed(), "{kind:?} twisted={twisted}");
            }
        }
    }

    #[test]
    fn perturbation_breaks_associativity_only() {
        let d = perturbed_group_algebra();
        let rep = d.validate();
        assert!(!rep.check(Axiom::Associativity).unwrap().passed);
        assert!(rep.check(Axiom::Commutativity).unwrap().passed);
        assert!(rep.check(Axiom::Nondegeneracy).unwrap().passed);
        let e = d.basis_vector(0);
        let g = d.basis_vector(1);
        assert_eq!(d.star(&d.star(&e, &e), &g), vec![int(1), int(1)]);
        assert_eq!(d.star(&e, &d.star(&e, &g)), vec![int(0), int(1)]);
    }
}
