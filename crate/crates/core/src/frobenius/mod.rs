//! Finite-rank commutative Frobenius algebras over an exact coefficient ring.
//!
//! Two products are carried side by side. The *quantum* product `*` is the one the field
//! theory's three-point vertices use. The *ordinary* product `.` composed with the trace gives
//! the bilinear form `b(x, y) = Tr(x . y)` used to contract glued points. For a classical
//! Frobenius algebra the two coincide; for the point theory `x * y = q x y` they do not.
//!
//! The three-point vertex is `tau(x, y, z) = b(x * y, z)`.

mod json;
pub mod linalg;
pub mod samples;

use std::fmt;

use crate::exactalg::{Laurent, Rational, Ring};

pub use json::{load_any, AnyFrobenius};

/// Coordinates in the basis `z_1..z_r`.
pub type Element<R> = Vec<R>;

/// Structure constants `c[i][j][k]` with `z_i z_j = sum_k c[i][j][k] z_k`.
pub type StructureConstants<R> = Vec<Vec<Vec<R>>>;

type BinaryOp<'a, R> = dyn Fn(&[R], &[R]) -> Element<R> + 'a;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FrobError {
    #[error("malformed Frobenius data: {0}")]
    Shape(String),
    #[error("bilinear form is degenerate (Gram determinant is zero)")]
    Degenerate,
    #[error("Gram determinant {0} is not a unit, so the copairing is not defined over the ring")]
    CopairingNotIntegral(String),
    #[error("Frobenius data failed validation: {0}")]
    Invalid(String),
    #[error("expected rank-one data, got rank {0}")]
    NotRankOne(usize),
    #[error("{0} is not invertible in the coefficient ring")]
    NotInvertible(String),
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("no unit element was supplied")]
    NoUnit,
    #[error("coefficient ring mismatch: file declares '{found}', expected '{expected}'")]
    RingMismatch { expected: String, found: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusData<R> {
    basis: Vec<String>,
    product: StructureConstants<R>,
    pairing_product: Option<StructureConstants<R>>,
    trace: Vec<R>,
    unit: Option<Element<R>>,
}

/// Inverse Gram matrix `b^{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Copairing<R> {
    pub inverse: Vec<Vec<R>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Commutativity,
    Associativity,
    OrdinaryCommutativity,
    OrdinaryAssociativity,
    PairingSymmetry,
    Nondegeneracy,
    Invariance,
    Unit,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Commutativity => "commutativity of *",
            Axiom::Associativity => "associativity of *",
            Axiom::OrdinaryCommutativity => "commutativity of the ordinary product",
            Axiom::OrdinaryAssociativity => "associativity of the ordinary product",
            Axiom::PairingSymmetry => "symmetry of b",
            Axiom::Nondegeneracy => "nondegeneracy of b",
            Axiom::Invariance => "invariance b(x*y, z) = b(x, y*z)",
            Axiom::Unit => "unit for *",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// Basis indices and mismatching values on failure.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{status}  {}", c.axiom)?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_tensor<R>(name: &str, t: &StructureConstants<R>, r: usize) -> Result<(), FrobError> {
    let ok = t.len() == r && t.iter().all(|row| row.len() == r && row.iter().all(|c| c.len() == r));
    if ok {
        Ok(())
    } else {
        Err(FrobError::Shape(format!("{name} must be an {r}x{r}x{r} array")))
    }
}

fn apply_product<R: Ring>(c: &StructureConstants<R>, x: &[R], y: &[R], like: &R) -> Element<R> {
    let r = x.len();
    let mut out = vec![like.zero_like(); r];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let w = xi.times(yj);
            for (k, ck) in c[i][j].iter().enumerate() {
                if !ck.is_zero() {
                    out[k] = out[k].plus(&w.times(ck));
                }
            }
        }
    }
    out
}

impl<R: Ring> FrobeniusData<R> {
    pub fn new(
        basis: Vec<String>,
        product: StructureConstants<R>,
        trace: Vec<R>,
    ) -> Result<Self, FrobError> {
        let r = basis.len();
        if r == 0 {
            return Err(FrobError::Shape("rank must be positive".into()));
        }
        check_tensor("product", &product, r)?;
        if trace.len() != r {
            return Err(FrobError::Shape(format!("trace must have {r} entries")));
        }
        Ok(FrobeniusData {
            basis,
            product,
            pairing_product: None,
            trace,
            unit: None,
        })
    }

    /// Uses a separate ordinary product for the bilinear form.
    pub fn with_pairing_product(mut self, c: StructureConstants<R>) -> Result<Self, FrobError> {
        check_tensor("pairing_product", &c, self.rank())?;
        self.pairing_product = Some(c);
        Ok(self)
    }

    pub fn with_unit(mut self, unit: Element<R>) -> Result<Self, FrobError> {
        if unit.len() != self.rank() {
            return Err(FrobError::Shape(format!("unit must have {} entries", self.rank())));
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn product(&self) -> &StructureConstants<R> {
        &self.product
    }

    pub fn pairing_product(&self) -> Option<&StructureConstants<R>> {
        self.pairing_product.as_ref()
    }

    pub fn trace_covector(&self) -> &[R] {
        &self.trace
    }

    pub fn unit(&self) -> Option<&Element<R>> {
        self.unit.as_ref()
    }

    /// A ring element used to produce constants.
    pub fn like(&self) -> &R {
        &self.trace[0]
    }

    pub fn zero(&self) -> Element<R> {
        vec![self.like().zero_like(); self.rank()]
    }

    pub fn basis_vector(&self, i: usize) -> Element<R> {
        let mut v = self.zero();
        v[i] = self.like().one_like();
        v
    }

    pub fn star(&self, x: &[R], y: &[R]) -> Element<R> {
        apply_product(&self.product, x, y, self.like())
    }

    pub fn dot(&self, x: &[R], y: &[R]) -> Element<R> {
        apply_product(self.pairing_product.as_ref().unwrap_or(&self.product), x, y, self.like())
    }

    pub fn tr(&self, x: &[R]) -> R {
        x.iter()
            .zip(&self.trace)
            .fold(self.like().zero_like(), |acc, (a, t)| acc.plus(&a.times(t)))
    }

    /// `b(x, y) = Tr(x . y)`.
    pub fn pairing(&self, x: &[R], y: &[R]) -> R {
        self.tr(&self.dot(x, y))
    }

    /// The three-point vertex `tau(x, y, z) = b(x * y, z)`.
    pub fn triple(&self, x: &[R], y: &[R], z: &[R]) -> R {
        self.pairing(&self.star(x, y), z)
    }

    pub fn gram(&self) -> Vec<Vec<R>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.pairing(&self.basis_vector(i), &self.basis_vector(j)))
                    .collect()
            })
            .collect()
    }

    pub fn gram_determinant(&self) -> R {
        linalg::determinant(&self.gram(), self.like())
    }

    /// Inverse of the Gram matrix. Nondegeneracy is decided over the fraction field; the
    /// copairing itself must live in the ring.
    pub fn copairing(&self) -> Result<Copairing<R>, FrobError> {
        let det = self.gram_determinant();
        if det.is_zero() {
            return Err(FrobError::Degenerate);
        }
        linalg::inverse(&self.gram(), self.like())
            .map(|inverse| Copairing { inverse })
            .ok_or_else(|| FrobError::CopairingNotIntegral(det.to_string()))
    }

    /// Checks every axiom on all basis tuples and reports a witness for each failure.
    pub fn validate(&self) -> ValidationReport {
        let r = self.rank();
        let e: Vec<Element<R>> = (0..r).map(|i| self.basis_vector(i)).collect();
        let mut checks = Vec::new();
        let show = |v: &[R]| {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(", "))
        };

        let mut commutative = |name: Axiom, f: &BinaryOp<'_, R>| {
            let mut w = None;
            'outer: for i in 0..r {
                for j in (i + 1)..r {
                    let (a, b) = (f(&e[i], &e[j]), f(&e[j], &e[i]));
                    if a != b {
                        w = Some(format!("i={i} j={j}: {} vs {}", show(&a), show(&b)));
                        break 'outer;
                    }
                }
            }
            checks.push(AxiomCheck { axiom: name, passed: w.is_none(), witness: w });
        };
        commutative(Axiom::Commutativity, &|x, y| self.star(x, y));
        if self.pairing_product.is_some() {
            commutative(Axiom::OrdinaryCommutativity, &|x, y| self.dot(x, y));
        }

        let mut associative = |name: Axiom, f: &BinaryOp<'_, R>| {
            let mut w = None;
            'outer: for i in 0..r {
                for j in 0..r {
                    let ij = f(&e[i], &e[j]);
                    for k in 0..r {
                        let lhs = f(&ij, &e[k]);
                        let rhs = f(&e[i], &f(&e[j], &e[k]));
                        if lhs != rhs {
                            w = Some(format!(
                                "i={i} j={j} k={k}: {} vs {}",
                                show(&lhs),
                                show(&rhs)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            checks.push(AxiomCheck { axiom: name, passed: w.is_none(), witness: w });
        };
        associative(Axiom::Associativity, &|x, y| self.star(x, y));
        if self.pairing_product.is_some() {
            associative(Axiom::OrdinaryAssociativity, &|x, y| self.dot(x, y));
        }

        let gram = self.gram();
        let mut w = None;
        'sym: for i in 0..r {
            for j in (i + 1)..r {
                if gram[i][j] != gram[j][i] {
                    w = Some(format!("b({i},{j}) = {} vs b({j},{i}) = {}", gram[i][j], gram[j][i]));
                    break 'sym;
                }
            }
        }
        checks.push(AxiomCheck { axiom: Axiom::PairingSymmetry, passed: w.is_none(), witness: w });

        let det = linalg::determinant(&gram, self.like());
        checks.push(AxiomCheck {
            axiom: Axiom::Nondegeneracy,
            passed: !det.is_zero(),
            witness: det.is_zero().then(|| "Gram determinant is 0".to_string()),
        });

        let mut w = None;
        'inv: for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let lhs = self.pairing(&self.star(&e[i], &e[j]), &e[k]);
                    let rhs = self.pairing(&e[i], &self.star(&e[j], &e[k]));
                    if lhs != rhs {
                        w = Some(format!("i={i} j={j} k={k}: {lhs} vs {rhs}"));
                        break 'inv;
                    }
                }
            }
        }
        checks.push(AxiomCheck { axiom: Axiom::Invariance, passed: w.is_none(), witness: w });

        if let Some(u) = &self.unit {
            let w = (0..r).find_map(|i| {
                let got = self.star(u, &e[i]);
                (got != e[i]).then(|| format!("u * z_{i} = {}", show(&got)))
            });
            checks.push(AxiomCheck { axiom: Axiom::Unit, passed: w.is_none(), witness: w });
        }
        ValidationReport { checks }
    }

    fn require_valid(&self) -> Result<(), FrobError> {
        match self.validate().first_failure() {
            None => Ok(()),
            Some(c) => Err(FrobError::Invalid(format!(
                "{} fails{}",
                c.axiom,
                c.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default()
            ))),
        }
    }

    /// `x * x * ... * x` (`k` factors, left-associated).
    pub fn star_power(&self, x: &[R], k: u32) -> Result<Element<R>, FrobError> {
        if k == 0 {
            return Err(FrobError::ZeroPower);
        }
        self.require_valid()?;
        let mut acc = x.to_vec();
        for _ in 1..k {
            acc = self.star(&acc, x);
        }
        Ok(acc)
    }

    /// The isomorphism `phi(x) = (c / d) x` from `(A, *)` to `(A, .)` for rank-one data with
    /// `z * z = c z` and `z . z = d z`; for the point theory this is `phi(x) = q x`.
    pub fn rescale_iso(&self, x: &[R]) -> Result<Element<R>, FrobError> {
        if self.rank() != 1 {
            return Err(FrobError::NotRankOne(self.rank()));
        }
        let c = &self.product[0][0][0];
        let d = self
            .pairing_product
            .as_ref()
            .map_or_else(|| c.clone(), |p| p[0][0][0].clone());
        let factor = c
            .exact_div(&d)
            .ok_or_else(|| FrobError::NotInvertible(d.to_string()))?;
        Ok(vec![x[0].times(&factor)])
    }

    /// Solves `u * y = u` for `y`, where `u` is the supplied unit; returns `y`, the candidate
    /// unit `(u *)^{-1}(u)` of the quantum product.
    pub fn star_unit_candidate(&self) -> Result<Element<R>, FrobError> {
        let u = self.unit.as_ref().ok_or(FrobError::NoUnit)?;
        let r = self.rank();
        // column j of the matrix is u * z_j
        let cols: Vec<Element<R>> = (0..r).map(|j| self.star(u, &self.basis_vector(j))).collect();
        let m: Vec<Vec<R>> = (0..r).map(|i| (0..r).map(|j| cols[j][i].clone()).collect()).collect();
        let inv = linalg::inverse(&m, self.like())
            .ok_or_else(|| FrobError::NotInvertible("the operator u * -".into()))?;
        Ok((0..r)
            .map(|i| {
                (0..r).fold(self.like().zero_like(), |acc, j| acc.plus(&inv[i][j].times(&u[j])))
            })
            .collect())
    }

    /// Whether `y * z_i = z_i` for every basis vector.
    pub fn is_star_unit(&self, y: &[R]) -> bool {
        (0..self.rank()).all(|i| {
            let e = self.basis_vector(i);
            self.star(y, &e) == e
        })
    }

    /// The three ways of splitting four inputs into two pairs, `{12|34}`, `{13|24}`, `{14|23}`:
    /// two three-point vertices joined through the copairing.
    pub fn associator_partitions(&self, x: [&[R]; 4]) -> Result<[R; 3], FrobError> {
        let cop = self.copairing()?;
        let r = self.rank();
        let e: Vec<Element<R>> = (0..r).map(|i| self.basis_vector(i)).collect();
        let glue = |a: &[R], b: &[R], c: &[R], d: &[R]| -> R {
            let mut acc = self.like().zero_like();
            for i in 0..r {
                let left = self.triple(a, b, &e[i]);
                if left.is_zero() {
                    continue;
                }
                for j in 0..r {
                    let w = &cop.inverse[i][j];
                    if w.is_zero() {
                        continue;
                    }
                    acc = acc.plus(&left.times(w).times(&self.triple(&e[j], c, d)));
                }
            }
            acc
        };
        Ok([
            glue(x[0], x[1], x[2], x[3]),
            glue(x[0], x[2], x[1], x[3]),
            glue(x[0], x[3], x[1], x[2]),
        ])
    }
}

/// Rank-one data `z * z = q z`, `z . z = z`, `Tr(z) = 1` over an arbitrary ring.
pub fn point_theory<R: Ring>(q: R) -> FrobeniusData<R> {
    let one = q.one_like();
    FrobeniusData::new(vec!["1".into()], vec![vec![vec![q]]], vec![one.clone()])
        .and_then(|d| d.with_pairing_product(vec![vec![vec![one.clone()]]]))
        .and_then(|d| d.with_unit(vec![one]))
        .expect("well-formed rank-one data")
}

/// The quantum product of a point over `Q[q, q^-1]`: `x * y = q x y`.
pub fn quantum_point() -> FrobeniusData<Laurent> {
    // The supplied unit is the ordinary unit 1, which is not a *-unit (1 * 1 = q); validation
    // of the point theory therefore carries no unit axiom.
    let mut d = point_theory(Laurent::q());
    d.unit = None;
    d
}

/// `Q[Z/2]` with basis `{e, g}` and trace picking the coefficient of the identity.
pub fn group_algebra_z2() -> FrobeniusData<Rational> {
    let i = |n: i64| Rational::from_integer(n.into());
    let product = vec![
        vec![vec![i(1), i(0)], vec![i(0), i(1)]],
        vec![vec![i(0), i(1)], vec![i(1), i(0)]],
    ];
    FrobeniusData::new(vec!["e".into(), "g".into()], product, vec![i(1), i(0)])
        .and_then(|d| d.with_unit(vec![i(1), i(0)]))
        .expect("well-formed")
}
