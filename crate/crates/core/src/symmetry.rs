//! Colour-preserving automorphisms, their orbits on vertices and on unordered
//! vertex pairs, and the binomial linear forms the orbits induce.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{LinearForm, PairSpace};
use crate::graph::{ColouredGraph, Pair, UnionFind};
use crate::Limits;

/// A vertex permutation, stored 0-based; [`Permutation::image`] is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From 1-based images. Fails unless the images are a bijection on `1..=n`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::Validation(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Permutation(images.iter().map(|v| v - 1).collect()))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn apply_pair(&self, p: Pair) -> Pair {
        Pair::new(self.image(p.0), self.image(p.1))
    }

    /// `(self ∘ other)(v) = self(other(v))`
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// True iff vertex colours, edge colours and non-edges are all preserved.
    pub fn preserves(&self, g: &ColouredGraph) -> bool {
        PairSpace::new(g.n())
            .pairs()
            .all(|p| g.pair_colour(self.apply_pair(p)) == g.pair_colour(p))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted: `(1 2)(3 5)`, `()` for identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut v = start;
            let mut first = true;
            while !seen[v] {
                seen[v] = true;
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{}", v + 1)?;
                v = self.0[v];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Backtracking over vertex images, pruned by a per-vertex signature
/// (vertex colour, sorted incident edge colours) and by pairwise colour
/// consistency with already-placed vertices.
struct Search<'a> {
    n: usize,
    colour: Vec<Vec<usize>>,
    signature: Vec<(usize, Vec<usize>)>,
    nodes: u64,
    limits: &'a Limits,
}

impl<'a> Search<'a> {
    fn new(g: &ColouredGraph, limits: &'a Limits) -> Result<Self> {
        let n = g.n();
        if n > limits.max_n {
            return Err(Error::ResourceCap(format!(
                "automorphism search on n = {n} exceeds the cap max_n = {}",
                limits.max_n
            )));
        }
        let colour: Vec<Vec<usize>> = (1..=n)
            .map(|i| (1..=n).map(|j| g.pair_colour(Pair::new(i, j))).collect())
            .collect();
        let signature = (0..n)
            .map(|i| {
                let mut inc: Vec<usize> =
                    (0..n).filter(|&j| j != i).map(|j| colour[i][j]).collect();
                inc.sort_unstable();
                (colour[i][i], inc)
            })
            .collect();
        Ok(Search {
            n,
            colour,
            signature,
            nodes: 0,
            limits,
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_search_nodes {
            return Err(Error::ResourceCap(format!(
                "automorphism search exceeded {} nodes",
                self.limits.max_search_nodes
            )));
        }
        Ok(())
    }

    fn consistent(&self, image: &[usize], k: usize, v: usize) -> bool {
        self.signature[k] == self.signature[v]
            && (0..k).all(|w| self.colour[k][w] == self.colour[v][image[w]])
    }

    /// Extends `image[0..k]` to full automorphisms; `visit` returns `false`
    /// to stop the search. Returns `Ok(false)` if stopped early.
    fn extend(
        &mut self,
        image: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        self.tick()?;
        let k = image.len();
        if k == self.n {
            return Ok(visit(image));
        }
        for v in 0..self.n {
            if used[v] || !self.consistent(image, k, v) {
                continue;
            }
            used[v] = true;
            image.push(v);
            let go_on = self.extend(image, used, visit)?;
            image.pop();
            used[v] = false;
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Some automorphism fixing `0..k` pointwise and sending `k` to `v`.
    fn find_with_prefix(&mut self, k: usize, v: usize) -> Result<Option<Permutation>> {
        let mut image: Vec<usize> = (0..k).collect();
        if !self.consistent(&image, k, v) {
            return Ok(None);
        }
        let mut used = vec![false; self.n];
        for &w in &image {
            used[w] = true;
        }
        used[v] = true;
        image.push(v);
        let mut found = None;
        self.extend(&mut image, &mut used, &mut |img| {
            found = Some(Permutation(img.to_vec()));
            false
        })?;
        Ok(found)
    }
}

/// Every colour-preserving automorphism, in lexicographic order of image
/// lists (identity first).
pub fn automorphisms(g: &ColouredGraph, limits: &Limits) -> Result<Vec<Permutation>> {
    let mut search = Search::new(g, limits)?;
    let mut out = Vec::new();
    let mut overflow = false;
    let cap = limits.max_group_elements;
    search.extend(&mut Vec::new(), &mut vec![false; g.n()], &mut |img| {
        if out.len() == cap {
            overflow = true;
            return false;
        }
        out.push(Permutation(img.to_vec()));
        true
    })?;
    if overflow {
        return Err(Error::ResourceCap(format!(
            "automorphism group has more than {cap} elements; use generators instead"
        )));
    }
    Ok(out)
}

/// A generating set of Aut(G) together with the group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub n: usize,
    pub generators: Vec<Permutation>,
    pub order: u128,
}

impl AutomorphismGroup {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn pair_orbits(&self) -> PairOrbitPartition {
        pair_orbits(&self.generators, self.n)
    }

    /// Orbits on vertices, each sorted, ordered by least member.
    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for g in &self.generators {
            for v in 0..self.n {
                uf.union(v, g.0[v]);
            }
        }
        uf.classes()
            .into_iter()
            .map(|c| c.into_iter().map(|v| v + 1).collect())
            .collect()
    }
}

/// Generators of Aut(G) along the base `1, 2, …, n`.
///
/// For each base point `k` (deepest first) the orbit of `k` under the
/// pointwise stabilizer of `1..k-1` is completed by searching for one
/// automorphism per missing image. The generators found at all levels
/// generate the whole group and the order is the product of the orbit sizes.
pub fn automorphism_group(g: &ColouredGraph, limits: &Limits) -> Result<AutomorphismGroup> {
    let n = g.n();
    let mut search = Search::new(g, limits)?;
    let mut generators: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for k in (0..n).rev() {
        let mut orbit = orbit_of(k, &generators, n);
        for v in k + 1..n {
            if orbit[v] {
                continue;
            }
            if let Some(p) = search.find_with_prefix(k, v)? {
                generators.push(p);
                orbit = orbit_of(k, &generators, n);
            }
        }
        order *= orbit.iter().filter(|&&b| b).count() as u128;
    }
    Ok(AutomorphismGroup {
        n,
        generators,
        order,
    })
}

fn orbit_of(k: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[k] = true;
    let mut stack = vec![k];
    while let Some(v) = stack.pop() {
        for g in gens {
            let w = g.0[v];
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Partition of the `C(n+1, 2)` unordered pairs (diagonal included) into
/// orbits. Orbits are sorted internally and ordered by representative, the
/// lexicographically least pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOrbitPartition {
    pub n: usize,
    pub orbits: Vec<Vec<Pair>>,
}

impl PairOrbitPartition {
    /// Number of orbits, `s`.
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn representative(&self, k: usize) -> Pair {
        self.orbits[k][0]
    }

    /// Orbit index of every pair, indexed by [`PairSpace::index`].
    pub fn orbit_index(&self) -> Vec<usize> {
        let space = PairSpace::new(self.n);
        let mut idx = vec![0; space.len()];
        for (k, orbit) in self.orbits.iter().enumerate() {
            for &p in orbit {
                idx[space.index(p)] = k;
            }
        }
        idx
    }
}

/// Orbits of the group generated by `perms` on unordered pairs
/// `{i, j} ↦ {σ(i), σ(j)}`. Passing either generators or the full element
/// list gives the same partition.
pub fn pair_orbits(perms: &[Permutation], n: usize) -> PairOrbitPartition {
    let space = PairSpace::new(n);
    let mut uf = UnionFind::new(space.len());
    for g in perms {
        assert_eq!(g.n(), n);
        for p in space.pairs() {
            uf.union(space.index(p), space.index(g.apply_pair(p)));
        }
    }
    PairOrbitPartition {
        n,
        orbits: uf
            .classes()
            .into_iter()
            .map(|c| c.into_iter().map(|i| space.pair(i)).collect())
            .collect(),
    }
}

/// `x_rep − x_q` for every orbit and every non-representative member `q`.
/// These are linearly independent and number `C(n+1, 2) − s`.
pub fn symmetry_forms(orbits: &PairOrbitPartition) -> Vec<LinearForm> {
    orbits
        .orbits
        .iter()
        .flat_map(|orbit| {
            let rep = orbit[0];
            orbit[1..]
                .iter()
                .map(move |&q| LinearForm::difference(orbits.n, rep, q))
        })
        .collect()
}
