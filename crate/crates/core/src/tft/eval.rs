use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;

pub use super::network::Amplitude;
use super::catalog::random_pants_decomposition;
use super::graph::StableGraph;
use super::network::{Contractor, Node};
use super::{CurveType, TftError};
use crate::exactalg::Ring;
use crate::frobenius::{Element, FrobeniusData};

/// Evaluator for one set of Frobenius data. Vertex tensors are cached per `(g, n)`.
pub struct Tft<R: Ring> {
    frob: FrobeniusData<R>,
    copairing: Vec<Vec<R>>,
    edge_factor: Option<R>,
    triple: Amplitude<R>,
    cache: Mutex<HashMap<(u32, usize), Amplitude<R>>>,
}

/// A trial whose amplitude disagrees with the reference evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub trial: usize,
    pub index: Vec<usize>,
    pub expected: String,
    pub found: String,
    /// The pants decomposition used in the failing trial, as graph JSON.
    pub decomposition: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport<R> {
    pub trials: usize,
    pub reference: Amplitude<R>,
    pub discrepancy: Option<Discrepancy>,
}

impl<R> InvarianceReport<R> {
    pub fn is_invariant(&self) -> bool {
        self.discrepancy.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PantsProductReport<R> {
    pub g: u32,
    pub h: u32,
    /// `e_g * e_h`, including the factors of the two joining edges.
    pub product: Element<R>,
    /// `e_{g+h}`.
    pub expected: Element<R>,
}

impl<R: PartialEq> PantsProductReport<R> {
    pub fn holds(&self) -> bool {
        self.product == self.expected
    }
}

/// The canonical decomposition of a `(g, n)` vertex: a chain of `n + g - 2` pants with legs
/// on the first free slots and a one-holed torus (a pants with a self-loop) on each of the
/// last `g` free slots.
fn left_comb(t: CurveType) -> Result<StableGraph, TftError> {
    t.require_stable()?;
    let legs: Vec<String> = (0..t.n).map(|i| format!("l{i}")).collect();
    let mut vertices: Vec<(u32, Vec<String>)> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let tadpole = |slot: String, j: u32, vertices: &mut Vec<(u32, Vec<String>)>, edges: &mut Vec<(String, String)>| {
        let h = |k: u32| format!("t{j}_{k}");
        vertices.push((0, vec![h(0), h(1), h(2)]));
        edges.push((h(1), h(2)));
        edges.push((slot, h(0)));
    };
    match (t.g, t.n) {
        (1, 1) => {
            vertices.push((0, vec![legs[0].clone(), "a".into(), "b".into()]));
            edges.push(("a".into(), "b".into()));
        }
        (2, 0) => {
            vertices.push((0, vec!["c".into(), "a0".into(), "b0".into()]));
            edges.push(("a0".into(), "b0".into()));
            tadpole("c".into(), 0, &mut vertices, &mut edges);
        }
        (g, n) => {
            let k = (n + g - 2) as usize;
            let slot = |i: usize, j: usize| format!("s{i}_{j}");
            for i in 0..k {
                vertices.push((0, vec![slot(i, 0), slot(i, 1), slot(i, 2)]));
                if i + 1 < k {
                    edges.push((slot(i, 2), slot(i + 1, 0)));
                }
            }
            let mut free = vec![slot(0, 0)];
            free.extend((0..k).map(|i| slot(i, 1)));
            free.push(slot(k - 1, 2));
            // rename the first n free slots to the leg names
            for (i, leg) in legs.iter().enumerate() {
                for v in vertices.iter_mut() {
                    for h in v.1.iter_mut() {
                        if *h == free[i] {
                            *h = leg.clone();
                        }
                    }
                }
            }
            for (j, f) in free[n as usize..].iter().enumerate() {
                tadpole(f.clone(), j as u32, &mut vertices, &mut edges);
            }
        }
    }
    StableGraph::new(vertices, edges, legs)
}

impl<R: Ring> Tft<R> {
    /// Fails when the bilinear form has no copairing over the ring.
    pub fn new(frob: FrobeniusData<R>) -> Result<Self, TftError> {
        let copairing = frob.copairing()?.inverse;
        let r = frob.rank();
        let e: Vec<Element<R>> = (0..r).map(|i| frob.basis_vector(i)).collect();
        let triple = Amplitude::from_fn(r, 3, |i| frob.triple(&e[i[0]], &e[i[1]], &e[i[2]]));
        Ok(Tft {
            frob,
            copairing,
            edge_factor: None,
            triple,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Multiplies every contracted edge by `factor` (for example `v^d` over the Novikov ring).
    pub fn with_edge_factor(mut self, factor: R) -> Self {
        self.edge_factor = Some(factor);
        self.cache.lock().expect("cache lock").clear();
        self
    }

    pub fn frob(&self) -> &FrobeniusData<R> {
        &self.frob
    }

    pub fn copairing(&self) -> &[Vec<R>] {
        &self.copairing
    }

    fn contractor(&self) -> Contractor<'_, R> {
        Contractor {
            copairing: &self.copairing,
            edge_factor: self.edge_factor.as_ref(),
            like: self.frob.like(),
        }
    }

    fn contract_pants<G: Rng + ?Sized>(&self, pants: &StableGraph, rng: Option<&mut G>) -> Amplitude<R> {
        debug_assert!(pants.is_pants_decomposition());
        let nodes = pants
            .vertices()
            .iter()
            .map(|v| Node { axes: v.halfedges.clone(), amp: self.triple.clone() })
            .collect();
        self.contractor().contract(nodes, pants.edges(), pants.legs(), rng)
    }

    /// Amplitude of a single genus-`g` vertex with `n` legs, from the canonical decomposition.
    pub fn vertex_tensor(&self, g: u32, n: usize) -> Result<Amplitude<R>, TftError> {
        if let Some(a) = self.cache.lock().expect("cache lock").get(&(g, n)) {
            return Ok(a.clone());
        }
        let comb = left_comb(CurveType::new(g, n as u32))?;
        let amp = self.contract_pants::<rand::rngs::ThreadRng>(&comb, None);
        self.cache.lock().expect("cache lock").insert((g, n), amp.clone());
        Ok(amp)
    }

    /// Places a vertex tensor at every vertex and contracts all edges.
    pub fn evaluate(&self, graph: &StableGraph) -> Result<Amplitude<R>, TftError> {
        let nodes = graph
            .vertices()
            .iter()
            .map(|v| {
                Ok(Node {
                    axes: v.halfedges.clone(),
                    amp: self.vertex_tensor(v.genus, v.valence())?,
                })
            })
            .collect::<Result<Vec<_>, TftError>>()?;
        Ok(self
            .contractor()
            .contract::<rand::rngs::ThreadRng>(nodes, graph.edges(), graph.legs(), None))
    }

    /// Evaluates one random pants decomposition of `graph` in a random contraction order.
    pub fn evaluate_random<G: Rng + ?Sized>(&self, graph: &StableGraph, rng: &mut G) -> (StableGraph, Amplitude<R>) {
        let pants = random_pants_decomposition(graph, rng);
        let amp = self.contract_pants(&pants, Some(rng));
        (pants, amp)
    }

    /// Compares [`Self::evaluate`] against `trials` random re-decompositions.
    pub fn check_gluing_invariance<G: Rng + ?Sized>(
        &self,
        graph: &StableGraph,
        trials: usize,
        rng: &mut G,
    ) -> Result<InvarianceReport<R>, TftError> {
        let reference = self.evaluate(graph)?;
        for trial in 0..trials {
            let (pants, amp) = self.evaluate_random(graph, rng);
            if let Some(index) = reference.first_difference(&amp) {
                let discrepancy = Discrepancy {
                    trial,
                    expected: reference.get(&index).to_string(),
                    found: amp.get(&index).to_string(),
                    index,
                    decomposition: pants.to_json(),
                };
                return Ok(InvarianceReport { trials, reference, discrepancy: Some(discrepancy) });
            }
        }
        Ok(InvarianceReport { trials, reference, discrepancy: None })
    }

    /// The element `e_g` whose pairing with `x` is the one-leg genus-`g` amplitude at `x`.
    pub fn one_leg_element(&self, g: u32) -> Result<Element<R>, TftError> {
        let a = self.vertex_tensor(g, 1)?;
        let r = self.frob.rank();
        Ok((0..r)
            .map(|j| {
                (0..r).fold(self.frob.like().zero_like(), |acc, i| {
                    acc.plus(&a.data()[i].times(&self.copairing[i][j]))
                })
            })
            .collect())
    }

    /// Gluing two one-leg surfaces of genus `g` and `h` into a pair of pants gives the
    /// one-leg surface of genus `g + h`: checks `f^2 (e_g * e_h) = e_{g+h}` where `f` is the
    /// edge factor.
    pub fn pants_product_check(&self, g: u32, h: u32) -> Result<PantsProductReport<R>, TftError> {
        let mut product = self.frob.star(&self.one_leg_element(g)?, &self.one_leg_element(h)?);
        if let Some(f) = &self.edge_factor {
            let f2 = f.times(f);
            product = product.iter().map(|x| x.times(&f2)).collect();
        }
        Ok(PantsProductReport { g, h, product, expected: self.one_leg_element(g + h)? })
    }

    /// Closed amplitudes `(g, Z_g)` for `2 <= g <= max_genus`, the coefficients of
    /// `sum_g Z_g x^g`.
    pub fn vacuum_series(&self, max_genus: u32) -> Result<Vec<(u32, R)>, TftError> {
        (2..=max_genus)
            .map(|g| {
                let a = self.vertex_tensor(g, 0)?;
                Ok((g, a.as_scalar().expect("no legs").clone()))
            })
            .collect()
    }
}

/// Convenience wrapper around [`Tft::vertex_tensor`].
pub fn vertex_tensor<R: Ring>(frob: &FrobeniusData<R>, g: u32, n: usize) -> Result<Amplitude<R>, TftError> {
    Tft::new(frob.clone())?.vertex_tensor(g, n)
}

/// Convenience wrapper around [`Tft::evaluate`].
pub fn evaluate<R: Ring>(graph: &StableGraph, frob: &FrobeniusData<R>) -> Result<Amplitude<R>, TftError> {
    Tft::new(frob.clone())?.evaluate(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Laurent, NovikovElement};
    use crate::frobenius::{group_algebra_z2, point_theory, quantum_point, samples};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(e: i64) -> Laurent {
        Laurent::q_pow(e)
    }

    #[test]
    fn left_combs_have_the_right_shape() {
        for g in 0..4 {
            for n in 0..5 {
                let t = CurveType::new(g, n);
                if !t.is_stable() {
                    assert!(left_comb(t).is_err());
                    continue;
                }
                let comb = left_comb(t).unwrap();
                assert!(comb.is_pants_decomposition());
                assert!(comb.is_connected());
                assert_eq!(comb.curve_type(), t);
                assert_eq!(comb.vertices().len() as i64, t.euler());
                assert_eq!(comb.edges().len() as i64, 3 * g as i64 - 3 + n as i64);
            }
        }
    }

    #[test]
    fn point_theory_vertex_tensors() {
        let tft = Tft::new(quantum_point()).unwrap();
        assert_eq!(tft.vertex_tensor(0, 3).unwrap().data(), &[q(1)]);
        assert_eq!(tft.vertex_tensor(0, 4).unwrap().data(), &[q(2)]);
        for g in 1..=4 {
            assert_eq!(tft.vertex_tensor(g, 1).unwrap().data(), &[q(2 * g as i64 - 1)]);
        }
        assert!(matches!(tft.vertex_tensor(1, 0), Err(TftError::Unstable { .. })));
    }

    #[test]
    fn point_theory_graph_examples() {
        let tft = Tft::new(quantum_point()).unwrap();
        let g21 = StableGraph::single_vertex(CurveType::new(2, 1)).unwrap();
        assert_eq!(tft.evaluate(&g21).unwrap().data(), &[q(3)]);
        let two = StableGraph::from_json(
            r#"{"vertices":[{"g":0,"halfedges":["a","b","x"]},{"g":0,"halfedges":["c","d","y"]}],
                "edges":[["x","y"]],"legs":["a","b","c","d"]}"#,
        )
        .unwrap();
        assert_eq!(tft.evaluate(&two).unwrap().data(), &[q(2)]);
        let tad = StableGraph::from_json(
            r#"{"vertices":[{"g":0,"halfedges":["a","b","c"]}],"edges":[["b","c"]],"legs":["a"]}"#,
        )
        .unwrap();
        assert_eq!(tft.evaluate(&tad).unwrap().data(), &[q(1)]);
    }

    #[test]
    fn pants_products() {
        let tft = Tft::new(quantum_point()).unwrap();
        let r = tft.pants_product_check(1, 1).unwrap();
        assert!(r.holds());
        assert_eq!(r.product, vec![q(3)]);
        let r = tft.pants_product_check(1, 2).unwrap();
        assert_eq!(r.product, vec![q(5)]);
        assert_eq!(r.product, tft.pants_product_check(2, 1).unwrap().product);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let tft = Tft::new(samples::random_frobenius(&mut rng, 3)).unwrap();
            for (g, h) in [(1, 1), (1, 2), (2, 1)] {
                assert!(tft.pants_product_check(g, h).unwrap().holds());
            }
        }
    }

    #[test]
    fn vacuum_series_of_the_point() {
        let tft = Tft::new(quantum_point()).unwrap();
        let z = tft.vacuum_series(4).unwrap();
        assert_eq!(z, vec![(2, q(2)), (3, q(4)), (4, q(6))]);
    }

    #[test]
    fn group_algebra_is_invariant() {
        let tft = Tft::new(group_algebra_z2()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (g, n) in [(0, 3), (0, 4), (1, 2), (2, 1)] {
            let graph = StableGraph::single_vertex(CurveType::new(g, n)).unwrap();
            assert!(tft.check_gluing_invariance(&graph, 10, &mut rng).unwrap().is_invariant());
        }
        // b has Gram matrix diag(1, 1), so the handle element is 2e
        let a = tft.vertex_tensor(1, 1).unwrap();
        assert_eq!(a.data(), &[crate::exactalg::rational::int(2), crate::exactalg::rational::int(0)]);
    }

    #[test]
    fn broken_data_produces_a_witness() {
        let tft = Tft::new(samples::perturbed_group_algebra()).unwrap();
        let graph = StableGraph::single_vertex(CurveType::new(0, 4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let report = tft.check_gluing_invariance(&graph, 30, &mut rng).unwrap();
        let d = report.discrepancy.expect("non-associative data is detected");
        assert_ne!(d.expected, d.found);
        assert!(StableGraph::from_json(&d.decomposition).unwrap().is_pants_decomposition());
    }

    #[test]
    fn single_pants_is_trivially_invariant() {
        let tft = Tft::new(samples::perturbed_group_algebra()).unwrap();
        let graph = StableGraph::single_vertex(CurveType::new(0, 3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(tft.check_gluing_invariance(&graph, 5, &mut rng).unwrap().is_invariant());
    }

    #[test]
    fn leg_permutation_permutes_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let frob = samples::random_frobenius_of(&mut rng, samples::BaseAlgebra::Local(2), true);
        let tft = Tft::new(frob).unwrap();
        let graph = StableGraph::from_json(
            r#"{"vertices":[{"g":0,"halfedges":["a","b","x"]},{"g":1,"halfedges":["c","y"]}],
                "edges":[["x","y"]],"legs":["a","b","c"]}"#,
        )
        .unwrap();
        let amp = tft.evaluate(&graph).unwrap();
        let perm = [2, 0, 1];
        let permuted = tft.evaluate(&graph.permute_legs(&perm).unwrap()).unwrap();
        assert_eq!(permuted, amp.transpose(&perm));
    }

    #[test]
    fn disjoint_union_is_a_tensor_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let tft = Tft::new(samples::random_frobenius(&mut rng, 3)).unwrap();
        let a = StableGraph::single_vertex(CurveType::new(1, 1)).unwrap();
        let b = StableGraph::single_vertex(CurveType::new(0, 3)).unwrap();
        let both = a.disjoint_union(&b);
        assert!(!both.is_connected());
        let amp = tft.evaluate(&both).unwrap();
        assert_eq!(amp, tft.evaluate(&a).unwrap().outer(&tft.evaluate(&b).unwrap()));
    }

    #[test]
    fn novikov_edge_factor_counts_all_edges() {
        let v = |k: i64| NovikovElement::v_pow(1, k);
        let frob = point_theory(NovikovElement::one(1));
        let d = 2;
        let tft = Tft::new(frob).unwrap().with_edge_factor(v(d));
        for (g, n) in [(0u32, 3usize), (0, 4), (1, 1), (2, 0), (1, 3)] {
            let edges = 3 * g as i64 - 3 + n as i64;
            assert_eq!(tft.vertex_tensor(g, n).unwrap().data(), &[v(d * edges)]);
        }
        let graph = StableGraph::single_vertex(CurveType::new(1, 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(tft.check_gluing_invariance(&graph, 5, &mut rng).unwrap().is_invariant());
        assert!(tft.pants_product_check(1, 1).unwrap().holds());
    }
}
