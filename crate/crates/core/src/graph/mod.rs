//! Coloured graphs: the combinatorial input of a coloured Gaussian graphical
//! model.
//!
//! Vertices are labelled `1..=n` in the public API. Colour ids are canonical:
//! vertex colours are numbered `1..=dv` in order of first appearance over
//! vertices `1..=n`, edge colours continue with `dv+1..=d` in order of first
//! appearance over edges sorted lexicographically. Colour id `k` is the
//! variable λ_k of the coloured adjacency matrix.

mod family;
mod io;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, RatMatrix, SymPolyMatrix};
use crate::error::{Error, Result};

pub use family::{Family, FamilySpec};
pub use io::{GraphJson, JsonEdge, JsonVertex};

/// Unordered vertex pair `{i, j}` with `i <= j`, 1-based. `i == j` denotes a
/// diagonal position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair(pub usize, pub usize);

impl Pair {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Pair(a, b)
        } else {
            Pair(b, a)
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.0 == self.1
    }
}

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Simple undirected graph with a vertex partition and an edge partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    n: usize,
    /// `vertex_colour[v - 1]`, canonical ids `1..=dv`.
    vertex_colour: Vec<usize>,
    /// Edge `(i, j)` with `i < j` → canonical edge colour id `dv+1..=d`.
    edges: BTreeMap<(usize, usize), usize>,
    num_vertex_colours: usize,
    num_colours: usize,
}

impl ColouredGraph {
    /// Validates and canonicalizes. Colour labels are arbitrary keys; vertex
    /// and edge labels must be disjoint.
    pub fn new<V, E>(n: usize, vertex_labels: &[V], edges: &[(usize, usize, E)]) -> Result<Self>
    where
        V: Eq + std::hash::Hash + Clone + std::fmt::Debug,
        E: Eq + std::hash::Hash + Clone + std::fmt::Debug + PartialEq<V>,
    {
        if n == 0 {
            return Err(Error::Validation(
                "graph must have at least one vertex".into(),
            ));
        }
        if vertex_labels.len() != n {
            return Err(Error::Validation(format!(
                "{} vertex colours given for {n} vertices (every vertex needs exactly one)",
                vertex_labels.len()
            )));
        }
        let mut edge_map: BTreeMap<(usize, usize), E> = BTreeMap::new();
        for (u, v, c) in edges {
            let (u, v) = (*u, *v);
            if u == v {
                return Err(Error::Validation(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Validation(format!(
                    "edge ({u},{v}) references a vertex outside 1..={n}"
                )));
            }
            let key = (u.min(v), u.max(v));
            if edge_map.insert(key, c.clone()).is_some() {
                return Err(Error::Validation(format!(
                    "duplicate edge ({},{})",
                    key.0, key.1
                )));
            }
        }
        for c in edge_map.values() {
            if let Some(v) = vertex_labels.iter().find(|v| c == *v) {
                return Err(Error::Validation(format!(
                    "colour {v:?} used on both a vertex and an edge"
                )));
            }
        }
        let mut vmap: HashMap<V, usize> = HashMap::new();
        let vertex_colour: Vec<usize> = vertex_labels
            .iter()
            .map(|l| {
                let next = vmap.len() + 1;
                *vmap.entry(l.clone()).or_insert(next)
            })
            .collect();
        let dv = vmap.len();
        let mut emap: HashMap<E, usize> = HashMap::new();
        let edges: BTreeMap<(usize, usize), usize> = edge_map
            .into_iter()
            .map(|(k, l)| {
                let next = dv + emap.len() + 1;
                (k, *emap.entry(l).or_insert(next))
            })
            .collect();
        Ok(ColouredGraph {
            n,
            vertex_colour,
            num_vertex_colours: dv,
            num_colours: dv + emap.len(),
            edges,
        })
    }

    /// Uniform colouring of an uncoloured edge set: one vertex colour, one
    /// edge colour (if there are edges).
    pub fn uniform(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labelled: Vec<(usize, usize, u8)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        Self::new(n, &vec![0u8; n], &labelled)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of colours `d` (vertex plus edge colours).
    pub fn num_colours(&self) -> usize {
        self.num_colours
    }

    pub fn num_vertex_colours(&self) -> usize {
        self.num_vertex_colours
    }

    pub fn num_edge_colours(&self) -> usize {
        self.num_colours - self.num_vertex_colours
    }

    /// Canonical colour id of vertex `v` (1-based).
    pub fn vertex_colour(&self, v: usize) -> usize {
        self.vertex_colour[v - 1]
    }

    /// Edges `(i, j, colour)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edge colour of `{u, v}`, `None` for non-edges (and for `u == v`).
    pub fn edge_colour(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    /// The colour at a pair position: vertex colour on the diagonal, edge
    /// colour off it, 0 for non-edges.
    pub fn pair_colour(&self, p: Pair) -> usize {
        if p.is_diagonal() {
            self.vertex_colour(p.0)
        } else {
            self.edge_colour(p.0, p.1).unwrap_or(0)
        }
    }

    /// One vertex colour and at most one edge colour.
    pub fn is_uniform(&self) -> bool {
        self.num_vertex_colours == 1 && self.num_edge_colours() <= 1
    }

    /// `n×n` symmetric matrix over λ₁..λ_d: `λ_{colour(i)}` on the diagonal,
    /// `λ_{colour(i,j)}` at edges, zero elsewhere.
    pub fn coloured_adjacency(&self) -> SymPolyMatrix {
        let d = self.num_colours;
        let mut a = SymPolyMatrix::zeros(self.n, d);
        for v in 1..=self.n {
            a.set(v - 1, v - 1, MultiPoly::var(d, self.vertex_colour(v) - 1));
        }
        for (i, j, c) in self.edges() {
            a.set(i - 1, j - 1, MultiPoly::var(d, c - 1));
        }
        a
    }

    /// 0/1 adjacency of the underlying uncoloured graph.
    pub fn uncoloured_adjacency(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.n, self.n);
        for (i, j, _) in self.edges() {
            m[(i - 1, j - 1)] = crate::algebra::rat(1);
            m[(j - 1, i - 1)] = crate::algebra::rat(1);
        }
        m
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for (i, j, _) in self.edges() {
            uf.union(i - 1, j - 1);
        }
        uf.classes()
            .into_iter()
            .map(|c| c.into_iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Component index of every vertex (0-based component ids, 1-based
    /// vertices mapped through `v - 1`).
    pub fn component_of(&self) -> Vec<usize> {
        let mut id = vec![0; self.n];
        for (k, comp) in self.connected_components().iter().enumerate() {
            for &v in comp {
                id[v - 1] = k;
            }
        }
        id
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// All pairs `(i, j)`, `i < j`, that are not edges.
    pub fn complement_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if !self.edges.contains_key(&(i, j)) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// The graph with vertex `v` renamed to `perm[v - 1]` (1-based images),
    /// colours recanonicalized.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        assert_eq!(perm.len(), self.n);
        let mut labels = vec![0; self.n];
        for v in 1..=self.n {
            labels[perm[v - 1] - 1] = self.vertex_colour(v);
        }
        let edges: Vec<(usize, usize, usize)> = self
            .edges()
            .map(|(i, j, c)| (perm[i - 1], perm[j - 1], c))
            .collect();
        Self::new(self.n, &labels, &edges)
    }

    /// Restricted-growth encoding of the colouring: the canonical vertex
    /// colour list followed by edge colours (0 = non-edge) over all pairs
    /// `i < j`. Equal keys iff equal graphs.
    pub fn canonical_key(&self) -> Vec<usize> {
        let mut key = self.vertex_colour.clone();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                key.push(self.edge_colour(i, j).unwrap_or(0));
            }
        }
        key
    }
}

/// Disjoint-set forest over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so class order is stable
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    /// Classes as sorted member lists, ordered by least member.
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn example_2_4() -> ColouredGraph {
        ColouredGraph::new(
            4,
            &["a", "b", "c", "c"],
            &[(1, 3, "e"), (1, 4, "e"), (3, 4, "e")],
        )
        .unwrap()
    }

    #[test]
    fn example_2_4_has_four_colours() {
        let g = example_2_4();
        assert_eq!(g.num_colours(), 4);
        assert_eq!(g.num_vertex_colours(), 3);
        assert_eq!(g.connected_components(), vec![vec![1, 3, 4], vec![2]]);
    }

    #[test]
    fn example_2_4_adjacency_blocks() {
        let a = example_2_4().coloured_adjacency();
        for j in [1, 3, 4] {
            assert!(a.get(1, j - 1).is_zero());
        }
        assert_eq!(a.get(2, 3), &MultiPoly::var(4, 3));
        assert_eq!(a.get(1, 1), &MultiPoly::var(4, 1));
    }

    #[test]
    fn single_vertex() {
        let g = ColouredGraph::new::<&str, &str>(1, &["x"], &[]).unwrap();
        assert_eq!(g.num_colours(), 1);
        assert_eq!(g.coloured_adjacency().get(0, 0), &MultiPoly::var(1, 0));
    }

    #[test]
    fn validation_errors() {
        let loop_err = ColouredGraph::new(2, &["a", "a"], &[(2, 2, "e")]).unwrap_err();
        assert!(matches!(loop_err, Error::Validation(ref m) if m.contains("loop")));
        let dup = ColouredGraph::new(2, &["a", "a"], &[(1, 2, "e"), (2, 1, "f")]).unwrap_err();
        assert!(matches!(dup, Error::Validation(ref m) if m.contains("duplicate")));
        let shared = ColouredGraph::new(2, &["a", "a"], &[(1, 2, "a")]).unwrap_err();
        assert!(matches!(shared, Error::Validation(ref m) if m.contains("both")));
        let missing = ColouredGraph::new::<&str, &str>(3, &["a", "a"], &[]).unwrap_err();
        assert!(matches!(missing, Error::Validation(_)));
    }

    #[test]
    fn colour_names_do_not_matter() {
        let g1 = ColouredGraph::new(3, &["p", "q", "p"], &[(1, 2, "x"), (2, 3, "y")]).unwrap();
        let g2 = ColouredGraph::new(3, &["z", "w", "z"], &[(2, 3, "k"), (1, 2, "m")]).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn components_of_edgeless_graph() {
        let g = ColouredGraph::uniform(3, &[]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn complement_of_c5_and_k33() {
        let c5 = FamilySpec::cycle(5).build().unwrap();
        let expected: BTreeSet<_> = [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]
            .into_iter()
            .collect();
        assert_eq!(c5.complement_pairs(), expected);
        // brute force: within-part pairs of the parity split
        let k33 = FamilySpec::complete_bipartite(3, 3).build().unwrap();
        let within: BTreeSet<_> = (1..=6)
            .flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
            .filter(|(i, j)| i % 2 == j % 2)
            .collect();
        assert_eq!(k33.complement_pairs(), within);
        let k4 = FamilySpec::complete(4).build().unwrap();
        assert!(k4.complement_pairs().is_empty());
    }

    #[test]
    fn adjacency_at_all_ones_is_adjacency_plus_identity() {
        let g = FamilySpec::petersen().build().unwrap();
        let ones = vec![rat(1); g.num_colours()];
        let evaluated = g.coloured_adjacency().eval(&ones);
        let adj = g.uncoloured_adjacency();
        for i in 0..10 {
            for j in 0..10 {
                let expected = &adj[(i, j)] + if i == j { rat(1) } else { rat(0) };
                assert_eq!(evaluated[i][j], expected);
            }
        }
    }
}
