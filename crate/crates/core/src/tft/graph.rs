use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CurveType, TftError};

/// Index of a half-edge in [`StableGraph::half_edge_name`].
pub type HalfEdge = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphVertex {
    pub genus: u32,
    pub halfedges: Vec<HalfEdge>,
}

impl GraphVertex {
    pub fn valence(&self) -> usize {
        self.halfedges.len()
    }

    pub fn curve_type(&self) -> CurveType {
        CurveType::new(self.genus, self.halfedges.len() as u32)
    }
}

/// One way to make a vertex more degenerate by one node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Degeneration {
    /// Replace `(g, n)` by `(g - 1, n + 2)` with a self-loop.
    SelfLoop,
    /// Replace `(g, n)` by two vertices joined by an edge: one of genus `genus` carrying
    /// `halfedges`, the other carrying the rest.
    Split { genus: u32, halfedges: Vec<HalfEdge> },
}

/// Dual graph of a nodal curve: genus-labelled vertices, edges for nodes, legs for marked
/// points. Disconnected graphs are allowed.
///
/// Equality compares the named form (vertex genera and half-edge names, edges, legs, all in
/// order), so it agrees with equality of the JSON serialisation.
#[derive(Debug, Clone)]
pub struct StableGraph {
    vertices: Vec<GraphVertex>,
    edges: Vec<(HalfEdge, HalfEdge)>,
    legs: Vec<HalfEdge>,
    names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    g: u32,
    halfedges: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    legs: Vec<String>,
}

impl PartialEq for StableGraph {
    fn eq(&self, other: &Self) -> bool {
        let same = |a: &HalfEdge, b: &HalfEdge| self.names[*a] == other.names[*b];
        let same_all = |a: &[HalfEdge], b: &[HalfEdge]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| same(x, y));
        self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(v, w)| v.genus == w.genus && same_all(&v.halfedges, &w.halfedges))
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(&other.edges).all(|((a, b), (c, d))| same(a, c) && same(b, d))
            && same_all(&self.legs, &other.legs)
    }
}

impl Eq for StableGraph {}

fn graph_err(msg: impl Into<String>) -> TftError {
    TftError::Graph(msg.into())
}

impl StableGraph {
    /// Builds and validates a graph from named half-edges.
    pub fn new(
        vertices: Vec<(u32, Vec<String>)>,
        edges: Vec<(String, String)>,
        legs: Vec<String>,
    ) -> Result<Self, TftError> {
        let mut names = Vec::new();
        let mut ids = HashMap::new();
        let mut verts = Vec::new();
        for (genus, hs) in vertices {
            let mut halfedges = Vec::new();
            for h in hs {
                if ids.contains_key(&h) {
                    return Err(graph_err(format!("half-edge '{h}' appears twice")));
                }
                ids.insert(h.clone(), names.len());
                halfedges.push(names.len());
                names.push(h);
            }
            verts.push(GraphVertex { genus, halfedges });
        }
        let lookup = |h: &String| {
            ids.get(h)
                .copied()
                .ok_or_else(|| graph_err(format!("unknown half-edge '{h}'")))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, TftError>>()?;
        let legs = legs.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
        let g = StableGraph { vertices: verts, edges, legs, names };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), TftError> {
        let mut used = vec![false; self.names.len()];
        for &(a, b) in &self.edges {
            if a == b {
                return Err(graph_err(format!("edge joins '{}' to itself", self.names[a])));
            }
            for h in [a, b] {
                if std::mem::replace(&mut used[h], true) {
                    return Err(graph_err(format!("half-edge '{}' is used twice", self.names[h])));
                }
            }
        }
        for &h in &self.legs {
            if std::mem::replace(&mut used[h], true) {
                return Err(graph_err(format!(
                    "leg '{}' is already paired or listed twice",
                    self.names[h]
                )));
            }
        }
        if let Some(h) = used.iter().position(|u| !u) {
            return Err(graph_err(format!(
                "half-edge '{}' is neither in an edge nor a leg",
                self.names[h]
            )));
        }
        for v in &self.vertices {
            v.curve_type().require_stable()?;
        }
        Ok(())
    }

    /// One vertex of type `(g, n)` with legs `l0, l1, ...`.
    pub fn single_vertex(t: CurveType) -> Result<Self, TftError> {
        t.require_stable()?;
        let legs: Vec<String> = (0..t.n).map(|i| format!("l{i}")).collect();
        StableGraph::new(vec![(t.g, legs.clone())], vec![], legs)
    }

    pub fn from_json(src: &str) -> Result<Self, TftError> {
        let j: GraphJson = serde_json::from_str(src).map_err(|e| TftError::Json(e.to_string()))?;
        StableGraph::new(
            j.vertices.into_iter().map(|v| (v.g, v.halfedges)).collect(),
            j.edges,
            j.legs,
        )
    }

    pub fn to_json(&self) -> String {
        let name = |h: &HalfEdge| self.names[*h].clone();
        let j = GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson { g: v.genus, halfedges: v.halfedges.iter().map(name).collect() })
                .collect(),
            edges: self.edges.iter().map(|(a, b)| (name(a), name(b))).collect(),
            legs: self.legs.iter().map(name).collect(),
        };
        serde_json::to_string(&j).expect("serialisable")
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(HalfEdge, HalfEdge)] {
        &self.edges
    }

    pub fn legs(&self) -> &[HalfEdge] {
        &self.legs
    }

    pub fn half_edge_name(&self, h: HalfEdge) -> &str {
        &self.names[h]
    }

    pub fn num_half_edges(&self) -> usize {
        self.names.len()
    }

    /// Vertex index owning each half-edge.
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.names.len()];
        for (v, vert) in self.vertices.iter().enumerate() {
            for &h in &vert.halfedges {
                owner[h] = v;
            }
        }
        owner
    }

    /// Connected components as lists of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let owner = self.vertex_of();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, owner[a]), find(&mut parent, owner[b]));
            parent[ra] = rb;
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = HashMap::new();
        for v in 0..self.vertices.len() {
            let r = find(&mut parent, v);
            let i = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[i].push(v);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// First Betti number `E - V + (components)`.
    pub fn first_betti(&self) -> u32 {
        (self.edges.len() + self.components().len() - self.vertices.len()) as u32
    }

    /// Vertex genera plus loops.
    pub fn total_genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum::<u32>() + self.first_betti()
    }

    /// Arithmetic type of the whole curve. For a disconnected graph the genus counts each
    /// component's genus, so this is the connected type only when [`Self::is_connected`].
    pub fn curve_type(&self) -> CurveType {
        CurveType::new(self.total_genus(), self.legs.len() as u32)
    }

    pub fn is_pants_decomposition(&self) -> bool {
        self.vertices.iter().all(|v| v.genus == 0 && v.valence() == 3)
    }

    fn fresh_name(&self, taken: &HashSet<&str>, hint: usize) -> String {
        let mut k = hint;
        loop {
            let s = format!("h{k}");
            if !taken.contains(s.as_str()) {
                return s;
            }
            k += 1;
        }
    }

    /// Appends two new half-edges joined by an edge.
    fn new_edge(&mut self) -> (HalfEdge, HalfEdge) {
        let taken: HashSet<&str> = self.names.iter().map(String::as_str).collect();
        let a_name = self.fresh_name(&taken, self.names.len());
        let mut taken = taken;
        taken.insert(&a_name);
        let b_name = self.fresh_name(&taken, self.names.len() + 1);
        let a = self.names.len();
        self.names.push(a_name);
        self.names.push(b_name);
        self.edges.push((a, a + 1));
        (a, a + 1)
    }

    /// Every degeneration of vertex `v` whose result is stable.
    pub fn degenerations(&self, v: usize) -> Vec<Degeneration> {
        let vert = &self.vertices[v];
        let mut out = Vec::new();
        if vert.genus > 0 {
            out.push(Degeneration::SelfLoop);
        }
        let hs = &vert.halfedges;
        let n = hs.len();
        for mask in 0u64..(1 << n) {
            let chosen: Vec<HalfEdge> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| hs[i]).collect();
            let rest = n - chosen.len();
            for g1 in 0..=vert.genus {
                let first = CurveType::new(g1, chosen.len() as u32 + 1);
                let second = CurveType::new(vert.genus - g1, rest as u32 + 1);
                if first.is_stable() && second.is_stable() {
                    out.push(Degeneration::Split { genus: g1, halfedges: chosen.clone() });
                }
            }
        }
        out
    }

    /// Applies a degeneration at vertex `v`. A split keeps index `v` for the part carrying
    /// `halfedges` and appends the other part.
    pub fn degenerate(&self, v: usize, d: &Degeneration) -> Result<StableGraph, TftError> {
        let mut g = self.clone();
        match d {
            Degeneration::SelfLoop => {
                if g.vertices[v].genus == 0 {
                    return Err(graph_err("a genus-0 vertex has no self-loop degeneration"));
                }
                let (a, b) = g.new_edge();
                let vert = &mut g.vertices[v];
                vert.genus -= 1;
                vert.halfedges.extend([a, b]);
            }
            Degeneration::Split { genus, halfedges } => {
                let old = g.vertices[v].clone();
                if *genus > old.genus || halfedges.iter().any(|h| !old.halfedges.contains(h)) {
                    return Err(graph_err("split does not match the vertex"));
                }
                let (a, b) = g.new_edge();
                let mut first = halfedges.clone();
                first.push(a);
                let mut second: Vec<HalfEdge> =
                    old.halfedges.iter().copied().filter(|h| !halfedges.contains(h)).collect();
                second.push(b);
                g.vertices[v] = GraphVertex { genus: *genus, halfedges: first };
                g.vertices.push(GraphVertex { genus: old.genus - genus, halfedges: second });
            }
        }
        g.validate()?;
        Ok(g)
    }

    /// Side-by-side union; the legs of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &StableGraph) -> StableGraph {
        let off = self.names.len();
        let mut g = self.clone();
        let taken: HashSet<String> = self.names.iter().cloned().collect();
        for name in &other.names {
            let mut n = name.clone();
            while taken.contains(&n) {
                n.push('\'');
            }
            g.names.push(n);
        }
        g.vertices.extend(other.vertices.iter().map(|v| GraphVertex {
            genus: v.genus,
            halfedges: v.halfedges.iter().map(|h| h + off).collect(),
        }));
        g.edges.extend(other.edges.iter().map(|(a, b)| (a + off, b + off)));
        g.legs.extend(other.legs.iter().map(|h| h + off));
        g
    }

    /// Reorders legs so that new leg `i` is old leg `perm[i]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<StableGraph, TftError> {
        let mut seen = vec![false; self.legs.len()];
        if perm.len() != self.legs.len() || perm.iter().any(|&p| p >= seen.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(graph_err("not a permutation of the legs"));
        }
        let mut g = self.clone();
        g.legs = perm.iter().map(|&p| self.legs[p]).collect();
        Ok(g)
    }

    /// Joins legs `i` and `j` into an edge.
    pub fn glue_legs(&self, i: usize, j: usize) -> Result<StableGraph, TftError> {
        if i == j || i >= self.legs.len() || j >= self.legs.len() {
            return Err(graph_err(format!("legs {i} and {j} cannot be glued")));
        }
        let mut g = self.clone();
        g.edges.push((self.legs[i], self.legs[j]));
        g.legs = self
            .legs
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, h)| *h)
            .collect();
        Ok(g)
    }

    /// Glues leg `pairs[k].0` of `self` to leg `pairs[k].1` of `other` for every `k`.
    pub fn glue_with(&self, other: &StableGraph, pairs: &[(usize, usize)]) -> Result<StableGraph, TftError> {
        let n = self.legs.len();
        let mut g = self.disjoint_union(other);
        let mut glued = Vec::new();
        for &(a, b) in pairs {
            if a >= n || b >= other.legs.len() {
                return Err(graph_err(format!("no leg pair ({a}, {b})")));
            }
            glued.push((g.legs[a], g.legs[n + b]));
        }
        let drop: HashSet<HalfEdge> = glued.iter().flat_map(|&(a, b)| [a, b]).collect();
        if drop.len() != 2 * pairs.len() {
            return Err(graph_err("a leg is glued twice"));
        }
        g.edges.extend(glued);
        g.legs.retain(|h| !drop.contains(h));
        Ok(g)
    }
}

impl fmt::Display for StableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tft::{glue, self_glue};

    #[test]
    fn json_round_trip_and_genus() {
        let src = r#"{"vertices":[{"g":1,"halfedges":["a","b"]},{"g":0,"halfedges":["c","d","x"]}],
                      "edges":[["a","c"],["b","d"]],"legs":["x"]}"#;
        let g = StableGraph::from_json(src).unwrap();
        assert_eq!(g.total_genus(), 2);
        assert_eq!(g.first_betti(), 1);
        assert_eq!(g.curve_type(), CurveType::new(2, 1));
        assert_eq!(StableGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_graphs() {
        let bad = [
            // unstable vertex
            r#"{"vertices":[{"g":0,"halfedges":["a","b"]}],"legs":["a","b"]}"#,
            // dangling half-edge
            r#"{"vertices":[{"g":0,"halfedges":["a","b","c"]}],"legs":["a","b"]}"#,
            // half-edge used twice
            r#"{"vertices":[{"g":1,"halfedges":["a","b"]}],"edges":[["a","b"]],"legs":["a"]}"#,
            // unknown half-edge
            r#"{"vertices":[{"g":1,"halfedges":["a"]}],"legs":["z"]}"#,
            // repeated name
            r#"{"vertices":[{"g":1,"halfedges":["a"]},{"g":1,"halfedges":["a"]}],"legs":["a"]}"#,
        ];
        for src in bad {
            assert!(
                matches!(StableGraph::from_json(src), Err(TftError::Graph(_) | TftError::Unstable { .. })),
                "{src}"
            );
        }
        assert!(matches!(StableGraph::from_json("[1]"), Err(TftError::Json(_))));
    }

    #[test]
    fn degenerations_preserve_type() {
        let g = StableGraph::single_vertex(CurveType::new(2, 2)).unwrap();
        for d in g.degenerations(0) {
            let h = g.degenerate(0, &d).unwrap();
            assert_eq!(h.curve_type(), g.curve_type());
            assert!(h.is_connected());
        }
        let pants = StableGraph::single_vertex(CurveType::new(0, 3)).unwrap();
        assert!(pants.degenerations(0).is_empty());
    }

    #[test]
    fn leg_gluing_matches_type_arithmetic() {
        let a = StableGraph::single_vertex(CurveType::new(1, 5)).unwrap();
        let b = StableGraph::single_vertex(CurveType::new(2, 7)).unwrap();
        let glued = a.glue_with(&b, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(glued.curve_type(), glue(a.curve_type(), b.curve_type(), 3).unwrap());
        assert_eq!(glued.curve_type(), CurveType::new(5, 6));
        let p = StableGraph::single_vertex(CurveType::new(0, 3)).unwrap();
        let loop_ = p.glue_legs(0, 2).unwrap();
        assert_eq!(loop_.curve_type(), self_glue(p.curve_type(), (0, 2)).unwrap());
    }
}
