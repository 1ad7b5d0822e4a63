//! Named verification suites and the certificate they produce.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use qcob::descend::{
    large_phase_dims, small_phase_specialize, strict_partitions, DescendantVariable, SchurQElement,
    TargetProfile,
};
use qcob::exactalg::novikov::{divided_power, nov_add, nov_mul, LatticeElement};
use qcob::exactalg::rational::{binomial, double_factorial, int, rat};
use qcob::fock::{
    basis_change, bracket, central_term, monomials_up_to_weight, virasoro_l, witt_v, FockBasis,
    FockOperator, FockPolynomial,
};
use qcob::frobenius::{quantum_point, samples, FrobeniusData};
use qcob::tft::{catalog, dimension, glue, random_stable_graph, self_glue, CurveType, LegMode, Tft};
use qcob::{Laurent, NovikovElement, Poly, Rational};

use crate::report::{CliError, Report};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    All,
    Virasoro,
    Witt,
    Closure,
    Basis,
    Point,
    Assoc,
    Gluing,
    Catalog,
    Arithmetic,
    Novikov,
    Schurq,
}

const SUITES: [Suite; 11] = [
    Suite::Virasoro,
    Suite::Witt,
    Suite::Closure,
    Suite::Basis,
    Suite::Point,
    Suite::Assoc,
    Suite::Gluing,
    Suite::Catalog,
    Suite::Arithmetic,
    Suite::Novikov,
    Suite::Schurq,
];

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest mode index in the Fock-space tables.
    #[arg(long = "N", default_value_t = 12)]
    bound: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random graphs in the gluing suite.
    #[arg(long, default_value_t = 100)]
    graphs: usize,
    /// Random decompositions per graph.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Random Frobenius algebras in the associator suite.
    #[arg(long, default_value_t = 20)]
    algebras: usize,
    /// Largest genus in the catalog suite.
    #[arg(long, default_value_t = 3)]
    max_genus: u32,
    /// Also write the JSON certificate to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl VerifyArgs {
    fn canonical_parameters(&self) -> String {
        format!(
            "N={};seed={};graphs={};trials={};algebras={};max_genus={}",
            self.bound, self.seed, self.graphs, self.trials, self.algebras, self.max_genus
        )
    }
}

type Outcome = Result<(), String>;

struct Check {
    suite: &'static str,
    id: String,
    statement: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

fn check(
    suite: &'static str,
    id: impl Into<String>,
    statement: impl Into<String>,
    run: impl Fn() -> Outcome + Send + Sync + 'static,
) -> Check {
    Check { suite, id: id.into(), statement: statement.into(), run: Box::new(run) }
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteRecord {
    pub name: String,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub engine: String,
    pub parameters: String,
    pub input_digests: BTreeMap<String, String>,
    pub suites: Vec<SuiteRecord>,
    pub passed: bool,
}

impl Certificate {
    fn render_text(&self) -> String {
        let mut out = format!("qcob {} verification certificate\n", self.engine);
        let _ = writeln!(out, "parameters: {}", self.parameters);
        for (name, digest) in &self.input_digests {
            let _ = writeln!(out, "sha256({name}) = {digest}");
        }
        for suite in &self.suites {
            let failed = suite.checks.iter().filter(|c| c.status == Status::Fail).count();
            let _ = writeln!(out, "suite {}: {} checks, {failed} failed", suite.name, suite.checks.len());
            for c in &suite.checks {
                let tag = if c.status == Status::Pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  {tag} {}: {}", c.id, c.statement);
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "       witness: {w}");
                }
            }
        }
        out.push_str(if self.passed { "result: all checks passed" } else { "result: FAILED" });
        out
    }
}

fn t_var(basis: FockBasis, n: usize, bound: usize) -> FockPolynomial {
    FockPolynomial::var(basis, n, bound).expect("index within bound")
}

fn zero(basis: FockBasis, bound: usize) -> FockPolynomial {
    FockPolynomial::new(basis, bound, Poly::zero()).expect("zero polynomial")
}

fn virasoro_checks(n_max: usize) -> Vec<Check> {
    (1..=n_max.max(1))
        .map(|k| {
            check(
                "virasoro",
                format!("virasoro.L{k}"),
                format!("L_{k} T_n = (n - {k} + 1/2) T_(n-{k}) for {k} <= n <= {n_max}, and 0 for n < {k}"),
                move || {
                    for n in 0..=n_max {
                        let got = virasoro_l(k as i64, &t_var(FockBasis::Oscillator, n, n_max)).map_err(err)?;
                        let want = if k <= n {
                            t_var(FockBasis::Oscillator, n - k, n_max).scale(&rat(2 * (n as i64 - k as i64) + 1, 2))
                        } else {
                            zero(FockBasis::Oscillator, n_max)
                        };
                        ensure(got == want, || format!("L_{k} T_{n} = {got}"))?;
                    }
                    Ok(())
                },
            )
        })
        .collect()
}

fn witt_checks(n_max: usize) -> Vec<Check> {
    let mut out: Vec<Check> = (0..=6usize)
        .map(|k| {
            check("witt", format!("witt.v{k}"), format!("v_{k} t_n = (n - {k} + 1) t_(n-{k}) for n <= {n_max}"), move || {
                for n in 0..=n_max {
                    let got = witt_v(k as u64, &t_var(FockBasis::Laurent, n, n_max));
                    let want = if k <= n {
                        t_var(FockBasis::Laurent, n - k, n_max).scale(&int((n - k + 1) as i64))
                    } else {
                        zero(FockBasis::Laurent, n_max)
                    };
                    ensure(got == want, || format!("v_{k} t_{n} = {got}"))?;
                }
                Ok(())
            })
        })
        .collect();
    for j in 0..=6u64 {
        out.push(check(
            "witt",
            format!("witt.bracket.v{j}"),
            format!("[v_{j}, v_k] = ({j} - k) v_({j}+k) on t_n for k <= 6, n <= {n_max}"),
            move || {
                for k in 0..=6u64 {
                    for n in 0..=n_max {
                        let p = t_var(FockBasis::Laurent, n, n_max);
                        let lhs = bracket(FockOperator::Witt(j), FockOperator::Witt(k), &p).map_err(err)?;
                        let rhs = witt_v(j + k, &p).scale(&int(j as i64 - k as i64));
                        ensure(lhs == rhs, || format!("[v_{j}, v_{k}] t_{n} = {lhs}"))?;
                    }
                }
                Ok(())
            },
        ));
    }
    out
}

const CLOSURE_BOUND: usize = 16;

fn closure_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for m in -4i64..=4 {
        out.push(check(
            "closure",
            format!("closure.m{m}"),
            format!("[L_{m}, L_n] = ({m} - n) L_({m}+n) on monomials of weight <= 8, |n| <= 4, n != {}", -m),
            move || {
                let states = monomials_up_to_weight(FockBasis::Oscillator, 8, CLOSURE_BOUND).map_err(err)?;
                for n in (-4i64..=4).filter(|n| m + n != 0) {
                    for p in &states {
                        let lhs = bracket(FockOperator::Virasoro(m), FockOperator::Virasoro(n), p).map_err(err)?;
                        let rhs = virasoro_l(m + n, p).map_err(err)?.scale(&int(m - n));
                        ensure(lhs == rhs, || format!("[L_{m}, L_{n}] {p} = {lhs}, expected {rhs}"))?;
                    }
                }
                Ok(())
            },
        ));
    }
    out.push(check(
        "closure",
        "closure.central",
        "[L_m, L_-m] - 2m L_0 is scalar; its value is the cubic through m = 1..4, confirmed at m = 5",
        || {
            let states = monomials_up_to_weight(FockBasis::Oscillator, 8, CLOSURE_BOUND).map_err(err)?;
            let mut values = Vec::new();
            for m in 1..=5i64 {
                let l = central_term(m as u64, CLOSURE_BOUND).map_err(err)?;
                for p in &states {
                    let comm = bracket(FockOperator::Virasoro(m), FockOperator::Virasoro(-m), p).map_err(err)?;
                    let defect = comm.sub(&virasoro_l(0, p).map_err(err)?.scale(&int(2 * m)));
                    ensure(defect == p.scale(&l), || format!("m = {m}: defect on {p} is {defect}"))?;
                }
                values.push(l);
            }
            // Lagrange interpolation through m = 1..4, evaluated at 5
            let mut predicted = Rational::zero();
            for i in 0..4i64 {
                let mut w = values[i as usize].clone();
                for j in (0..4i64).filter(|&j| j != i) {
                    w *= rat(4 - j, i - j);
                }
                predicted += w;
            }
            ensure(predicted == values[4], || format!("cubic predicts {predicted} at m = 5, measured {}", values[4]))
        },
    ));
    out
}

fn basis_checks(n_max: usize) -> Vec<Check> {
    let mut out = vec![check("basis", "basis.t3", "t_3 = 105 T_3", || {
        let t3 = basis_change(&t_var(FockBasis::Laurent, 3, 3), FockBasis::Oscillator);
        ensure(t3.to_string() == "105*T_3", || format!("t_3 = {t3}"))
    })];
    out.push(check(
        "basis",
        "basis.round-trip",
        format!("t_n = (2n+1)!! T_n and the change of coordinates round-trips for n <= {n_max}"),
        move || {
            for n in 0..=n_max {
                let t = t_var(FockBasis::Laurent, n, n_max);
                let big = basis_change(&t, FockBasis::Oscillator);
                let s = Rational::from_integer(double_factorial(2 * n as i64 + 1));
                ensure(big == t_var(FockBasis::Oscillator, n, n_max).scale(&s), || format!("t_{n} = {big}"))?;
                ensure(basis_change(&big, FockBasis::Laurent) == t, || format!("round trip fails at n = {n}"))?;
            }
            Ok(())
        },
    ));
    out
}

fn point_checks() -> Vec<Check> {
    let mut out = vec![check("point", "point.square", "1 * 1 = q in the quantum point theory", || {
        let d = quantum_point();
        let one = vec![Laurent::one()];
        ensure(d.star(&one, &one) == vec![Laurent::q()], || format!("1 * 1 = {}", d.star(&one, &one)[0]))
    })];
    for g in 1..=5u32 {
        out.push(check(
            "point",
            format!("point.power{}", 2 * g),
            format!("1^(*{}) = q^{} and phi sends it to q^{}", 2 * g, 2 * g - 1, 2 * g),
            move || {
                let d = quantum_point();
                let p = d.star_power(&[Laurent::one()], 2 * g).map_err(err)?;
                ensure(p == vec![Laurent::q_pow(2 * g as i64 - 1)], || format!("got {}", p[0]))?;
                let phi = d.rescale_iso(&p).map_err(err)?;
                ensure(phi == vec![Laurent::q_pow(2 * g as i64)], || format!("phi gives {}", phi[0]))
            },
        ));
    }
    out.push(check("point", "point.iso", "phi(x) = q x is a ring isomorphism onto the ordinary product", || {
        let d = quantum_point();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let mut sample = || {
                let mut l = Laurent::zero();
                for _ in 0..4 {
                    l.add_term(rng.gen_range(-4..=4), rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
                }
                vec![l]
            };
            let (x, y) = (sample(), sample());
            let lhs = d.rescale_iso(&d.star(&x, &y)).map_err(err)?;
            let rhs = d.dot(&d.rescale_iso(&x).map_err(err)?, &d.rescale_iso(&y).map_err(err)?);
            ensure(lhs == rhs, || format!("phi(x * y) != phi(x) phi(y) at x = {}, y = {}", x[0], y[0]))?;
        }
        let inv = d.rescale_iso(&[Laurent::q_pow(-1)]).map_err(err)?;
        ensure(inv == vec![Laurent::one()], || "q^-1 is not the preimage of 1".into())
    }));
    out
}

fn partitions_agree(d: &FrobeniusData<Rational>) -> Result<Option<String>, String> {
    let r = d.rank();
    let e: Vec<Vec<Rational>> = (0..r).map(|i| d.basis_vector(i)).collect();
    for i in 0..r.pow(4) {
        let idx = [i / r.pow(3), (i / r.pow(2)) % r, (i / r) % r, i % r];
        let p = d.associator_partitions(idx.map(|j| e[j].as_slice())).map_err(err)?;
        if !(p[0] == p[1] && p[1] == p[2]) {
            return Ok(Some(format!("basis tuple {idx:?}: {}, {}, {}", p[0], p[1], p[2])));
        }
    }
    Ok(None)
}

fn assoc_checks(algebras: usize, seed: u64) -> Vec<Check> {
    let mut out: Vec<Check> = (0..algebras)
        .map(|i| {
            check(
                "assoc",
                format!("assoc.random{i}"),
                "random Frobenius algebra of rank <= 3 validates and its partition contractions agree",
                move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i as u64);
                    let d = samples::random_frobenius(&mut rng, 3);
                    let report = d.validate();
                    ensure(report.passed(), || report.to_string())?;
                    match partitions_agree(&d)? {
                        None => Ok(()),
                        Some(w) => Err(w),
                    }
                },
            )
        })
        .collect();
    out.push(check("assoc", "assoc.perturbed", "the perturbed group algebra is detected as non-associative", || {
        let d = samples::perturbed_group_algebra();
        ensure(!d.validate().passed(), || "perturbation validates".into())?;
        ensure(partitions_agree(&d)?.is_some(), || "partition contractions agree".into())
    }));
    out
}

fn gluing_checks(graphs: usize, trials: usize, seed: u64) -> Vec<Check> {
    (0..graphs)
        .map(|i| {
            check(
                "gluing",
                format!("gluing.graph{i}"),
                format!("random stable graph evaluates identically under {trials} random decompositions"),
                move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
                    rng.set_stream(i as u64);
                    let frob = samples::random_frobenius(&mut rng, 3);
                    let tft = Tft::new(frob).map_err(err)?;
                    let graph = random_stable_graph(&mut rng, 3, 4, 6);
                    let report = tft.check_gluing_invariance(&graph, trials, &mut rng).map_err(err)?;
                    match report.discrepancy {
                        None => Ok(()),
                        Some(w) => Err(format!("{graph}: trial {} expected {}, found {}", w.trial, w.expected, w.found)),
                    }
                },
            )
        })
        .collect()
}

fn catalog_checks(max_genus: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for g in 0..=max_genus {
        for n in 0..=4u32 {
            let t = CurveType::new(g, n);
            if !t.is_stable() {
                continue;
            }
            out.push(check(
                "catalog",
                format!("catalog.g{g}n{n}"),
                format!("every stable graph of type {t} evaluates to q^{} in the quantum point theory", t.euler()),
                move || {
                    let tft = Tft::new(quantum_point()).map_err(err)?;
                    let want = Laurent::q_pow(t.euler());
                    for graph in catalog(t, LegMode::Unlabelled).map_err(err)? {
                        let amp = tft.evaluate(&graph).map_err(err)?;
                        ensure(amp.data() == [want.clone()], || format!("{graph} evaluates to {}", amp.data()[0]))?;
                    }
                    Ok(())
                },
            ));
        }
    }
    out
}

fn arithmetic_checks() -> Vec<Check> {
    let ct = CurveType::new;
    let mut out = vec![
        check("arithmetic", "arithmetic.glue", "gluing (1,5) and (2,7) along 3 pairs gives (5,6)", move || {
            let t = glue(ct(1, 5), ct(2, 7), 3).map_err(err)?;
            ensure(t == ct(5, 6), || format!("got {t}"))
        }),
        check("arithmetic", "arithmetic.dim", "dimension(0,3) = 0 and dimension(2,0) = 3", move || {
            ensure(dimension(ct(0, 3)) == 0 && dimension(ct(2, 0)) == 3, || "dimension formula".into())
        }),
    ];
    for g in 0..=2u32 {
        for n in 2..=4u32 {
            let t = ct(g, n);
            if !t.is_stable() {
                continue;
            }
            out.push(check(
                "arithmetic",
                format!("arithmetic.self-glue.g{g}n{n}"),
                format!("self-gluing any graph of type {t} adds one genus and removes two legs"),
                move || {
                    for graph in catalog(t, LegMode::Labelled).map_err(err)? {
                        for i in 0..n {
                            for j in (i + 1)..n {
                                let got = graph.glue_legs(i as usize, j as usize).map_err(err)?.curve_type();
                                let want = self_glue(t, (i, j)).map_err(err)?;
                                ensure(got == want && want == ct(g + 1, n - 2), || {
                                    format!("{graph} glued at ({i},{j}) has type {got}")
                                })?;
                            }
                        }
                    }
                    Ok(())
                },
            ));
        }
    }
    out
}

fn novikov_checks(seed: u64) -> Vec<Check> {
    vec![
        check("novikov", "novikov.divided-powers", "v_(i) v_(j) = C(i+j, i) v_(i+j) for i, j <= 10", || {
            for i in 0..=10u32 {
                for j in 0..=10u32 {
                    let lhs = nov_mul(&divided_power(i, 2), &divided_power(j, 2)).map_err(err)?;
                    let c = Rational::from_integer(binomial((i + j) as u64, i as u64));
                    ensure(lhs == divided_power(i + j, 2).scale(&c), || format!("v_({i}) v_({j}) = {lhs}"))?;
                }
            }
            Ok(())
        }),
        check("novikov", "novikov.grading", "degrees add under multiplication of homogeneous elements", move || {
            let c1 = [2i64, -1, 3];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut homogeneous = |deg: i64| {
                let mut e = NovikovElement::zero(3);
                for _ in 0..rng.gen_range(1..4) {
                    let alpha: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
                    let pair: i64 = alpha.iter().zip(&c1).map(|(a, b)| a * b).sum();
                    let coeff = rat(rng.gen_range(1..9), rng.gen_range(1..4));
                    let term = NovikovElement::monomial(LatticeElement(alpha), deg / 2 - pair, coeff);
                    e = nov_add(&e, &term).expect("same rank");
                }
                e
            };
            for step in 0..200i64 {
                let (da, db) = (2 * (step % 11 - 5), 2 * ((step * 7) % 11 - 5));
                let (a, b) = (homogeneous(da), homogeneous(db));
                let p = nov_mul(&a, &b).map_err(err)?;
                if !p.is_zero() {
                    let d = p.homogeneous_degree(&c1).map_err(err)?;
                    ensure(d == Some(da + db), || format!("deg({a} * {b}) = {d:?}"))?;
                }
            }
            Ok(())
        }),
    ]
}

fn schurq_checks() -> Vec<Check> {
    let q = SchurQElement::q;
    let mut out = vec![check("schurq", "schurq.square", "Q_1^2 = 2 Q_2", move || {
        let lhs = q(1).mul(&q(1));
        ensure(lhs == q(2).scale(&int(2)), || format!("Q_1^2 = {lhs}"))
    })];
    out.push(check("schurq", "schurq.alternating", "sum over r + s = n of (-1)^s Q_r Q_s vanishes for 1 <= n <= 10", move || {
        for n in 1..=10u32 {
            let mut acc = SchurQElement::zero();
            for s in 0..=n {
                let sign = if s % 2 == 0 { Rational::one() } else { -Rational::one() };
                acc = acc.add(&q(n - s).mul(&q(s)).scale(&sign));
            }
            ensure(acc.is_zero(), || format!("n = {n}: {acc}"))?;
        }
        Ok(())
    }));
    for n in 0..=8u32 {
        out.push(check("schurq", format!("schurq.coassoc.deg{n}"), format!("coproduct is coassociative in degree {n}"), move || {
            for lambda in strict_partitions(n) {
                let d = SchurQElement::basis(lambda.clone()).map_err(err)?.coproduct();
                ensure(d.coproduct_at(0) == d.coproduct_at(1), || format!("fails at {lambda:?}"))?;
            }
            Ok(())
        }));
    }
    out.push(check("schurq", "schurq.dims", "graded dimension in degree n is the number of strict partitions of n, n <= 10", || {
        let dims = large_phase_dims(&TargetProfile::point(), 10).map_err(err)?;
        for n in 0..=10u32 {
            let strict = strict_partitions(n).len() as u128;
            ensure(dims.hopf[n as usize] == strict, || format!("degree {n}: {} vs {strict}", dims.hopf[n as usize]))?;
        }
        Ok(())
    }));
    out.push(check("schurq", "schurq.specialize", "small-phase specialization kills exactly t_{k,i} with k, i > 0", || {
        for k in 0..=5u32 {
            for i in 0..=5usize {
                let killed = small_phase_specialize(&Poly::var(DescendantVariable::new(k, i))).is_zero();
                ensure(killed == (k > 0 && i > 0), || format!("t_{{{k},{i}}}"))?;
            }
        }
        Ok(())
    }));
    out
}

fn checks_for(suite: Suite, args: &VerifyArgs) -> Vec<Check> {
    match suite {
        Suite::All => SUITES.iter().flat_map(|&s| checks_for(s, args)).collect(),
        Suite::Virasoro => virasoro_checks(args.bound),
        Suite::Witt => witt_checks(args.bound),
        Suite::Closure => closure_checks(),
        Suite::Basis => basis_checks(args.bound),
        Suite::Point => point_checks(),
        Suite::Assoc => assoc_checks(args.algebras, args.seed),
        Suite::Gluing => gluing_checks(args.graphs, args.trials, args.seed),
        Suite::Catalog => catalog_checks(args.max_genus),
        Suite::Arithmetic => arithmetic_checks(),
        Suite::Novikov => novikov_checks(args.seed),
        Suite::Schurq => schurq_checks(),
    }
}

pub fn certify(args: &VerifyArgs) -> Certificate {
    let checks = checks_for(args.suite, args);
    // indexed parallel collect keeps the construction order
    let outcomes: Vec<Outcome> = checks
        .par_iter()
        .map(|c| {
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (c.run)()))
                .unwrap_or_else(|_| Err("check panicked".into()))
        })
        .collect();
    let mut suites: Vec<SuiteRecord> = Vec::new();
    for (c, outcome) in checks.iter().zip(outcomes) {
        let record = CheckRecord {
            id: c.id.clone(),
            statement: c.statement.clone(),
            status: if outcome.is_ok() { Status::Pass } else { Status::Fail },
            witness: outcome.err(),
        };
        match suites.last_mut() {
            Some(s) if s.name == c.suite => s.checks.push(record),
            _ => suites.push(SuiteRecord { name: c.suite.to_string(), checks: vec![record] }),
        }
    }
    let parameters = args.canonical_parameters();
    let mut input_digests = BTreeMap::new();
    input_digests.insert("parameters".to_string(), hex::encode(Sha256::digest(parameters.as_bytes())));
    let passed = suites.iter().all(|s| s.checks.iter().all(|c| c.status == Status::Pass));
    Certificate { engine: env!("CARGO_PKG_VERSION").to_string(), parameters, input_digests, suites, passed }
}

pub fn run(args: VerifyArgs) -> Result<Report, CliError> {
    let cert = certify(&args);
    let json = serde_json::to_value(&cert).expect("serialisable");
    if let Some(path) = &args.out {
        let body = serde_json::to_string_pretty(&json).expect("serialisable");
        std::fs::write(path, body + "\n").map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    Ok(Report::check(cert.render_text(), json, cert.passed))
}
