//! Enumeration of stable graphs up to isomorphism and random graph generation.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use super::graph::StableGraph;
use super::{CurveType, TftError};

/// Whether legs are distinguishable when comparing graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LegMode {
    Labelled,
    Unlabelled,
}

fn rank_signatures(sigs: &[Vec<u32>]) -> Vec<u32> {
    let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(&s).expect("present") as u32)
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// An isomorphism invariant that determines the graph: equal keys mean isomorphic graphs.
///
/// Vertices are coloured by genus, loops and legs, the colouring is refined by neighbour
/// colours, and the key is the smallest encoding over orderings that respect the colours.
pub fn canonical_key(graph: &StableGraph, mode: LegMode) -> Vec<u32> {
    let nv = graph.vertices().len();
    let owner = graph.vertex_of();
    let mut adj = vec![vec![0u32; nv]; nv];
    for &(a, b) in graph.edges() {
        let (u, v) = (owner[a], owner[b]);
        adj[u][v] += 1;
        if u != v {
            adj[v][u] += 1;
        }
    }
    let mut legs = vec![0u32; nv];
    for (i, &h) in graph.legs().iter().enumerate() {
        legs[owner[h]] += match mode {
            LegMode::Labelled => 1 << i,
            LegMode::Unlabelled => 1,
        };
    }
    let label: Vec<[u32; 3]> = (0..nv)
        .map(|v| [graph.vertices()[v].genus, legs[v], graph.vertices()[v].valence() as u32])
        .collect();

    let mut colors = rank_signatures(
        &(0..nv).map(|v| vec![label[v][0], label[v][1], label[v][2], adj[v][v]]).collect::<Vec<_>>(),
    );
    loop {
        let sigs: Vec<Vec<u32>> = (0..nv)
            .map(|v| {
                let mut nb: Vec<(u32, u32)> = (0..nv)
                    .filter(|&u| u != v && adj[v][u] > 0)
                    .map(|u| (colors[u], adj[v][u]))
                    .collect();
                nb.sort();
                let mut s = vec![colors[v]];
                s.extend(nb.into_iter().flat_map(|(c, m)| [c, m]));
                s
            })
            .collect();
        let refined = rank_signatures(&sigs);
        let count = |c: &[u32]| c.iter().max().map_or(0, |m| m + 1);
        let done = count(&refined) == count(&colors);
        colors = refined;
        if done {
            break;
        }
    }

    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for v in 0..nv {
        classes.entry(colors[v]).or_default().push(v);
    }
    let class_perms: Vec<Vec<Vec<usize>>> = classes.values().map(|c| permutations(c)).collect();

    let encode = |order: &[usize]| -> Vec<u32> {
        let mut key = vec![nv as u32, graph.legs().len() as u32];
        for &v in order {
            key.extend_from_slice(&label[v]);
        }
        for p in 0..nv {
            for q in p..nv {
                key.push(adj[order[p]][order[q]]);
            }
        }
        key
    };

    let mut best: Option<Vec<u32>> = None;
    let mut choice = vec![0usize; class_perms.len()];
    loop {
        let order: Vec<usize> = class_perms
            .iter()
            .zip(&choice)
            .flat_map(|(ps, &c)| ps[c].iter().copied())
            .collect();
        let key = encode(&order);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < class_perms[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    best.unwrap_or_default()
}

/// Every connected stable graph of type `t`, one per isomorphism class, ordered by number of
/// vertices. Built by repeatedly degenerating the single-vertex graph.
pub fn catalog(t: CurveType, mode: LegMode) -> Result<Vec<StableGraph>, TftError> {
    let start = StableGraph::single_vertex(t)?;
    let mut seen: HashMap<Vec<u32>, StableGraph> = HashMap::new();
    seen.insert(canonical_key(&start, mode), start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for v in 0..g.vertices().len() {
                for d in g.degenerations(v) {
                    let h = g.degenerate(v, &d)?;
                    let key = canonical_key(&h, mode);
                    if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
                        slot.insert(h.clone());
                        next.push(h);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<(Vec<u32>, StableGraph)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// Degenerates a uniformly chosen non-pants vertex in a uniformly chosen way; `None` once
/// every vertex is a pair of pants.
pub fn random_degeneration<G: Rng + ?Sized>(graph: &StableGraph, rng: &mut G) -> Option<StableGraph> {
    let open: Vec<usize> = (0..graph.vertices().len())
        .filter(|&v| {
            let vert = &graph.vertices()[v];
            !(vert.genus == 0 && vert.valence() == 3)
        })
        .collect();
    if open.is_empty() {
        return None;
    }
    let v = open[rng.gen_range(0..open.len())];
    let ds = graph.degenerations(v);
    let d = &ds[rng.gen_range(0..ds.len())];
    Some(graph.degenerate(v, d).expect("degenerations are stable"))
}

/// Degenerates at random until every vertex is a pair of pants.
pub fn random_pants_decomposition<G: Rng + ?Sized>(graph: &StableGraph, rng: &mut G) -> StableGraph {
    let mut g = graph.clone();
    while let Some(h) = random_degeneration(&g, rng) {
        g = h;
    }
    g
}

/// A random connected stable graph with total genus at most `max_genus`, at most `max_legs`
/// legs and at most `max_vertices` vertices.
pub fn random_stable_graph<G: Rng + ?Sized>(
    rng: &mut G,
    max_genus: u32,
    max_legs: u32,
    max_vertices: usize,
) -> StableGraph {
    let types: Vec<CurveType> = (0..=max_genus)
        .flat_map(|g| (0..=max_legs).map(move |n| CurveType::new(g, n)))
        .filter(|t| t.is_stable())
        .collect();
    assert!(!types.is_empty(), "no stable type within the bounds");
    let t = types[rng.gen_range(0..types.len())];
    let cap = (t.euler() as usize).min(max_vertices.max(1));
    let target = rng.gen_range(1..=cap);
    let mut g = StableGraph::single_vertex(t).expect("stable");
    // self-loops do not add vertices, so also stop after a random number of steps
    let steps = rng.gen_range(0..=(3 * t.g + t.n) as usize);
    for _ in 0..steps {
        if g.vertices().len() >= target {
            break;
        }
        match random_degeneration(&g, rng) {
            Some(h) if h.vertices().len() <= max_vertices => g = h,
            _ => break,
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn count(g: u32, n: u32, mode: LegMode) -> usize {
        catalog(CurveType::new(g, n), mode).unwrap().len()
    }

    #[test]
    fn known_strata_counts() {
        use LegMode::*;
        assert_eq!(count(0, 3, Labelled), 1);
        assert_eq!(count(1, 1, Labelled), 2);
        assert_eq!(count(1, 2, Labelled), 5);
        assert_eq!(count(2, 0, Labelled), 7);
        assert_eq!(count(3, 0, Labelled), 42);
        assert_eq!(count(0, 4, Labelled), 4);
        assert_eq!(count(0, 4, Unlabelled), 2);
        assert_eq!(count(0, 5, Labelled), 26);
    }

    #[test]
    fn key_ignores_names_and_vertex_order() {
        let a = StableGraph::from_json(
            r#"{"vertices":[{"g":0,"halfedges":["a","b","x"]},{"g":1,"halfedges":["y","c"]}],
                "edges":[["x","y"]],"legs":["a","b","c"]}"#,
        )
        .unwrap();
        let b = StableGraph::from_json(
            r#"{"vertices":[{"g":1,"halfedges":["q","p"]},{"g":0,"halfedges":["r","s","t"]}],
                "edges":[["t","q"]],"legs":["r","s","p"]}"#,
        )
        .unwrap();
        assert_eq!(canonical_key(&a, LegMode::Labelled), canonical_key(&b, LegMode::Labelled));
        let c = a.permute_legs(&[2, 1, 0]).unwrap();
        assert_ne!(canonical_key(&a, LegMode::Labelled), canonical_key(&c, LegMode::Labelled));
        assert_eq!(canonical_key(&a, LegMode::Unlabelled), canonical_key(&c, LegMode::Unlabelled));
    }

    #[test]
    fn catalog_graphs_have_the_requested_type() {
        for (g, n) in [(1, 2), (2, 1), (0, 5)] {
            let t = CurveType::new(g, n);
            for graph in catalog(t, LegMode::Unlabelled).unwrap() {
                assert!(graph.is_connected());
                assert_eq!(graph.curve_type(), t);
            }
        }
    }

    #[test]
    fn random_graphs_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let g = random_stable_graph(&mut rng, 3, 4, 6);
            assert!(g.is_connected());
            assert!(g.total_genus() <= 3);
            assert!(g.legs().len() <= 4);
            assert!(g.vertices().len() <= 6);
            let p = random_pants_decomposition(&g, &mut rng);
            assert!(p.is_pants_decomposition());
            assert_eq!(p.curve_type(), g.curve_type());
        }
    }
}
