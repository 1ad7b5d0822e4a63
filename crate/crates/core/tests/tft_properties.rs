use qcob::exactalg::Laurent;
use qcob::frobenius::{quantum_point, samples};
use qcob::tft::{catalog, glue, random_stable_graph, self_glue, CurveType, LegMode, StableGraph, Tft};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn point_theory_closed_form_on_the_catalog() {
    let tft = Tft::new(quantum_point()).unwrap();
    for g in 0..=3u32 {
        for n in 0..=4u32 {
            let t = CurveType::new(g, n);
            if !t.is_stable() {
                continue;
            }
            let graphs = catalog(t, LegMode::Unlabelled).unwrap();
            for graph in &graphs {
                let amp = tft.evaluate(graph).unwrap();
                assert_eq!(amp.data(), &[Laurent::q_pow(t.euler())], "{graph}");
            }
            println!("({g}, {n}): {} graphs", graphs.len());
        }
    }
}

#[test]
fn random_graphs_are_decomposition_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..25 {
        let frob = samples::random_frobenius(&mut rng, 3);
        let tft = Tft::new(frob).unwrap();
        let graph = random_stable_graph(&mut rng, 3, 4, 6);
        let report = tft.check_gluing_invariance(&graph, 5, &mut rng).unwrap();
        assert!(report.is_invariant(), "{graph}: {:?}", report.discrepancy);
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn leg_permutation_permutes_tensor_factors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tft = Tft::new(samples::random_frobenius(&mut rng, 2)).unwrap();
        let graph = random_stable_graph(&mut rng, 2, 4, 4);
        let perm = random_permutation(&mut rng, graph.legs().len());
        let amp = tft.evaluate(&graph).unwrap();
        let permuted = tft.evaluate(&graph.permute_legs(&perm).unwrap()).unwrap();
        prop_assert_eq!(permuted, amp.transpose(&perm));
    }

    #[test]
    fn disjoint_unions_evaluate_to_tensor_products(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tft = Tft::new(samples::random_frobenius(&mut rng, 2)).unwrap();
        let a = random_stable_graph(&mut rng, 1, 2, 3);
        let b = random_stable_graph(&mut rng, 1, 2, 3);
        let union = a.disjoint_union(&b);
        prop_assert_eq!(union.components().len(), 2);
        let expected = tft.evaluate(&a).unwrap().outer(&tft.evaluate(&b).unwrap());
        prop_assert_eq!(tft.evaluate(&union).unwrap(), expected);
    }

    #[test]
    fn gluing_preserves_genus_bookkeeping(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_stable_graph(&mut rng, 3, 4, 6);
        let b = random_stable_graph(&mut rng, 3, 4, 6);
        for g in [&a, &b] {
            prop_assert_eq!(&StableGraph::from_json(&g.to_json()).unwrap(), g);
            let vertex_genus: u32 = g.vertices().iter().map(|v| v.genus).sum();
            prop_assert_eq!(g.total_genus(), vertex_genus + g.first_betti());
        }
        let (na, nb) = (a.legs().len() as u32, b.legs().len() as u32);
        if na >= 2 {
            let glued = a.glue_legs(0, 1).unwrap();
            prop_assert_eq!(glued.curve_type(), self_glue(a.curve_type(), (0, 1)).unwrap());
            let vertex_genus: u32 = glued.vertices().iter().map(|v| v.genus).sum();
            prop_assert_eq!(glued.total_genus(), vertex_genus + glued.first_betti());
        }
        let s = na.min(nb);
        if s >= 1 {
            let pairs: Vec<(usize, usize)> = (0..s as usize).map(|k| (k, k)).collect();
            let glued = a.glue_with(&b, &pairs).unwrap();
            prop_assert!(glued.is_connected());
            prop_assert_eq!(glued.curve_type(), glue(a.curve_type(), b.curve_type(), s).unwrap());
        }
    }
}
