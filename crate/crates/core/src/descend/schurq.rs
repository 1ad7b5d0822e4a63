//! Schur Q-functions.
//!
//! `Q_r` is defined by `prod_i (1 + x_i u) / (1 - x_i u) = sum_r Q_r u^r`. The same series is
//! `exp(2 sum_{k odd} p_k u^k / k)` in the power sums `p_k`, so the ring they generate is
//! the polynomial ring in the odd power sums. Elements are stored in the basis `Q_lambda`,
//! `lambda` a strict partition; products and coproducts go through the power-sum basis, where
//! every `p_k` is primitive.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::DescendError;
use crate::exactalg::poly::{Monomial, Poly};
use crate::exactalg::rational::int;
use crate::exactalg::Rational;

/// Distinct positive parts in decreasing order.
pub type StrictPartition = Vec<u32>;

/// Strict partitions of `n`, largest first part first.
pub fn strict_partitions(n: u32) -> Vec<StrictPartition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` into odd parts, in decreasing order of parts.
pub fn odd_partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let mut part = max.min(n);
        if part.is_multiple_of(2) {
            part = part.saturating_sub(1);
        }
        while part >= 1 {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
            if part < 2 {
                break;
            }
            part -= 2;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `Q_r(x_0, ..., x_{m-1})` from the product formula, using
/// `(1 + x u) / (1 - x u) = 1 + 2 sum_{j >= 1} x^j u^j`.
pub fn schur_q(r: u32, num_vars: usize) -> Poly<usize> {
    let r = r as usize;
    // series[j] is the coefficient of u^j
    let mut series: Vec<Poly<usize>> = vec![Poly::zero(); r + 1];
    series[0] = Poly::one();
    for var in 0..num_vars {
        let mut next: Vec<Poly<usize>> = vec![Poly::zero(); r + 1];
        for (a, s) in series.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for j in 0..=(r - a) {
                let factor = if j == 0 {
                    Poly::one()
                } else {
                    Poly::term(Monomial::from_powers([(var, j as u32)]), int(2))
                };
                next[a + j] = &next[a + j] + &(s * &factor);
            }
        }
        series = next;
    }
    series.swap_remove(r)
}

/// `p_k(x_0, ..., x_{m-1})`.
pub fn power_sum(k: u32, num_vars: usize) -> Poly<usize> {
    Poly::from_terms((0..num_vars).map(|i| (Monomial::from_powers([(i, k)]), Rational::one())))
}

/// Rewrites a polynomial in power sums (`p_k` is variable `k`) in `m` variables.
pub fn power_sums_in_variables(p: &Poly<u32>, num_vars: usize) -> Poly<usize> {
    p.substitute(|&k| power_sum(k, num_vars))
}

/// `Q_r` as a polynomial in the power sums, from `r Q_r = sum_{k odd} 2 p_k Q_{r-k}`.
pub fn schur_q_via_power_sums(r: u32) -> Poly<u32> {
    let mut qs: Vec<Poly<u32>> = vec![Poly::one()];
    for n in 1..=r {
        let mut acc = Poly::zero();
        for k in (1..=n).step_by(2) {
            acc = &acc + &(&Poly::var(k) * &qs[(n - k) as usize]).scale(&int(2));
        }
        qs.push(acc.scale(&Rational::new(1.into(), n.into())));
    }
    qs.swap_remove(r as usize)
}

/// `Q_lambda` in power sums, by Pfaffian expansion along the first part with
/// `Q_{(a,b)} = Q_a Q_b + 2 sum_{i=1}^{b} (-1)^i Q_{a+i} Q_{b-i}`.
fn q_lambda_power_sums(lambda: &[u32]) -> Poly<u32> {
    fn pair(a: u32, b: u32) -> Poly<u32> {
        let mut acc = &schur_q_via_power_sums(a) * &schur_q_via_power_sums(b);
        for i in 1..=b {
            let sign = if i % 2 == 0 { 2 } else { -2 };
            acc = &acc + &(&schur_q_via_power_sums(a + i) * &schur_q_via_power_sums(b - i)).scale(&int(sign));
        }
        acc
    }
    match lambda.len() {
        0 => Poly::one(),
        1 => schur_q_via_power_sums(lambda[0]),
        2 => pair(lambda[0], lambda[1]),
        _ => {
            let mut parts = lambda.to_vec();
            if parts.len() % 2 == 1 {
                parts.push(0);
            }
            let mut acc = Poly::zero();
            for j in 1..parts.len() {
                let rest: Vec<u32> = parts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != 0 && k != j)
                    .map(|(_, &p)| p)
                    .filter(|&p| p > 0)
                    .collect();
                let term = &pair(parts[0], parts[j]) * &q_lambda_power_sums(&rest);
                // (-1)^{j+1} with 0-based j
                acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn odd_monomial(parts: &[u32]) -> Monomial<u32> {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    Monomial::from_powers(counts)
}

fn monomial_weight(m: &Monomial<u32>) -> u32 {
    m.powers().iter().map(|(k, e)| k * e).sum()
}

/// Solves `a x = b` exactly for square invertible `a`.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Per-degree change of basis from power-sum monomials to `Q_lambda`.
struct DegreeBasis {
    partitions: Vec<StrictPartition>,
    monomials: Vec<Monomial<u32>>,
    /// `matrix[row][col]`: coefficient of monomial `row` in `Q_{partitions[col]}`.
    matrix: Vec<Vec<Rational>>,
}

fn degree_basis(n: u32) -> std::sync::Arc<DegreeBasis> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<DegreeBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("cache lock").get(&n) {
        return b.clone();
    }
    let partitions = strict_partitions(n);
    let monomials: Vec<Monomial<u32>> = odd_partitions(n).iter().map(|p| odd_monomial(p)).collect();
    let expansions: Vec<Poly<u32>> = partitions.iter().map(|l| q_lambda_power_sums(l)).collect();
    let matrix = monomials
        .iter()
        .map(|m| expansions.iter().map(|e| e.coeff(m)).collect())
        .collect();
    let b = std::sync::Arc::new(DegreeBasis { partitions, monomials, matrix });
    cache.lock().expect("cache lock").insert(n, b.clone());
    b
}

/// A rational combination of `Q_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurQElement {
    terms: BTreeMap<StrictPartition, Rational>,
}

fn is_strict(lambda: &[u32]) -> bool {
    lambda.iter().all(|&p| p > 0) && lambda.windows(2).all(|w| w[0] > w[1])
}

impl SchurQElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Vec::new()).expect("empty partition is strict")
    }

    /// `Q_lambda`; `lambda` must be strict.
    pub fn basis(lambda: StrictPartition) -> Result<Self, DescendError> {
        if !is_strict(&lambda) {
            return Err(DescendError::Malformed(format!("{lambda:?} is not a strict partition")));
        }
        let mut e = Self::zero();
        e.add_term(lambda, Rational::one());
        Ok(e)
    }

    /// `Q_r`.
    pub fn q(r: u32) -> Self {
        Self::basis(if r == 0 { Vec::new() } else { vec![r] }).expect("strict")
    }

    pub fn add_term(&mut self, lambda: StrictPartition, c: Rational) {
        let slot = self.terms.entry(lambda.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StrictPartition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &[u32]) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (l, d) in &self.terms {
            out.add_term(l.clone(), d * c);
        }
        out
    }

    pub fn to_power_sums(&self) -> Poly<u32> {
        let mut acc = Poly::zero();
        for (l, c) in &self.terms {
            acc = &acc + &q_lambda_power_sums(l).scale(c);
        }
        acc
    }

    /// Inverse of [`Self::to_power_sums`]; fails if `p` involves even power sums.
    pub fn from_power_sums(p: &Poly<u32>) -> Result<Self, DescendError> {
        let mut by_degree: BTreeMap<u32, Vec<(&Monomial<u32>, &Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            if m.powers().iter().any(|(k, _)| k % 2 == 0) {
                return Err(DescendError::NotInSpan(
                    p.display_with(|k| format!("p_{k}")),
                ));
            }
            by_degree.entry(monomial_weight(m)).or_default().push((m, c));
        }
        let mut out = Self::zero();
        for (n, terms) in by_degree {
            let basis = degree_basis(n);
            let rhs: Vec<Rational> = basis
                .monomials
                .iter()
                .map(|m| {
                    terms
                        .iter()
                        .find(|(t, _)| *t == m)
                        .map_or_else(Rational::zero, |(_, c)| (*c).clone())
                })
                .collect();
            let x = solve(basis.matrix.clone(), rhs).expect("Q_lambda form a basis");
            for (l, c) in basis.partitions.iter().zip(x) {
                out.add_term(l.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_power_sums(&(&self.to_power_sums() * &other.to_power_sums()))
            .expect("products of odd power sums stay in the span")
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Coproduct computed from primitivity of the power sums.
    pub fn coproduct(&self) -> SchurQTensor {
        let mut out = SchurQTensor::zero(2);
        for (l, c) in &self.terms {
            for (key, d) in coproduct_of_basis(l).terms() {
                out.add_term(key.clone(), d * c);
            }
        }
        out
    }
}

impl fmt::Display for SchurQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let sym = partition_symbol(l);
                if c.is_one() {
                    sym
                } else if sym == "1" {
                    c.to_string()
                } else {
                    format!("{c}*{sym}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

fn partition_symbol(l: &[u32]) -> String {
    if l.is_empty() {
        "1".into()
    } else {
        let ps: Vec<String> = l.iter().map(u32::to_string).collect();
        format!("Q_{{{}}}", ps.join(","))
    }
}

fn coproduct_of_basis(lambda: &[u32]) -> SchurQTensor {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, SchurQTensor>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(lambda) {
        return t.clone();
    }
    // p_k -> p_k (x) 1 + 1 (x) p_k
    let split: Poly<(u8, u32)> = q_lambda_power_sums(lambda)
        .substitute(|&k| &Poly::var((0u8, k)) + &Poly::var((1u8, k)));
    let mut grouped: BTreeMap<Monomial<u32>, Poly<u32>> = BTreeMap::new();
    for (m, c) in split.terms() {
        let left = Monomial::from_powers(m.powers().iter().filter(|(v, _)| v.0 == 0).map(|(v, e)| (v.1, *e)));
        let right = Monomial::from_powers(m.powers().iter().filter(|(v, _)| v.0 == 1).map(|(v, e)| (v.1, *e)));
        grouped.entry(left).or_insert_with(Poly::zero).add_term(right, c.clone());
    }
    let mut out = SchurQTensor::zero(2);
    for (left, right) in grouped {
        let l = SchurQElement::from_power_sums(&Poly::term(left, Rational::one())).expect("odd");
        let r = SchurQElement::from_power_sums(&right).expect("odd");
        for (a, c) in l.terms() {
            for (b, d) in r.terms() {
                out.add_term(vec![a.clone(), b.clone()], c * d);
            }
        }
    }
    cache.lock().expect("cache lock").insert(lambda.to_vec(), out.clone());
    out
}

/// A rational combination of `Q_{lambda_1} (x) ... (x) Q_{lambda_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurQTensor {
    arity: usize,
    terms: BTreeMap<Vec<StrictPartition>, Rational>,
}

impl SchurQTensor {
    pub fn zero(arity: usize) -> Self {
        SchurQTensor { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, key: Vec<StrictPartition>, c: Rational) {
        debug_assert_eq!(key.len(), self.arity);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<StrictPartition>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies the coproduct to tensor factor `pos`.
    pub fn coproduct_at(&self, pos: usize) -> SchurQTensor {
        let mut out = SchurQTensor::zero(self.arity + 1);
        for (key, c) in &self.terms {
            for (pair, d) in coproduct_of_basis(&key[pos]).terms() {
                let mut k = key[..pos].to_vec();
                k.extend(pair.iter().cloned());
                k.extend(key[pos + 1..].iter().cloned());
                out.add_term(k, c * d);
            }
        }
        out
    }

    /// Factorwise product.
    pub fn mul(&self, other: &SchurQTensor) -> SchurQTensor {
        assert_eq!(self.arity, other.arity, "tensor arities differ");
        let mut out = SchurQTensor::zero(self.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut partial = vec![(Vec::new(), ca * cb)];
                for (la, lb) in ka.iter().zip(kb) {
                    let prod = SchurQElement::basis(la.clone())
                        .expect("strict")
                        .mul(&SchurQElement::basis(lb.clone()).expect("strict"));
                    let mut next = Vec::new();
                    for (k, c) in &partial {
                        for (l, d) in prod.terms() {
                            let mut k2: Vec<StrictPartition> = k.clone();
                            k2.push(l.clone());
                            next.push((k2, c * d));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, c);
                }
            }
        }
        out
    }
}

impl fmt::Display for SchurQTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let sym: Vec<String> = k.iter().map(|l| partition_symbol(l)).collect();
                let sym = sym.join(" (x) ");
                if c.is_one() {
                    sym
                } else {
                    format!("{c}*{sym}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `sum_{i=0}^{r} Q_i (x) Q_{r-i}`.
pub fn schur_q_coproduct(r: u32) -> SchurQTensor {
    let sym = |i: u32| if i == 0 { Vec::new() } else { vec![i] };
    let mut out = SchurQTensor::zero(2);
    for i in 0..=r {
        out.add_term(vec![sym(i), sym(r - i)], Rational::one());
    }
    out
}
