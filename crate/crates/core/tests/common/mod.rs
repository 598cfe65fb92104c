#![allow(dead_code)]

use proptest::prelude::*;
use recip_core::algebra::{rat, RatMatrix, Rational};
use recip_core::{ColouredGraph, LinearForm, PairSpace};

/// Vertex labels, then `(u, v, edge label)` triples, with at most `vc`
/// vertex colours and `ec` edge colours.
pub fn coloured_graph(max_n: usize, vc: usize, ec: usize) -> impl Strategy<Value = ColouredGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        (
            proptest::collection::vec(0..vc, n),
            proptest::collection::vec(proptest::option::of(0..ec), m),
        )
            .prop_map(move |(vcol, ecol)| build(n, &vcol, &pairs, &ecol))
    })
}

pub fn uniform_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = ColouredGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .zip(bits)
                .filter_map(|(p, b)| b.then_some(p))
                .collect();
            ColouredGraph::uniform(n, &edges).unwrap()
        })
    })
}

pub fn build(
    n: usize,
    vcol: &[usize],
    pairs: &[(usize, usize)],
    ecol: &[Option<usize>],
) -> ColouredGraph {
    let labels: Vec<String> = vcol.iter().map(|c| format!("v{c}")).collect();
    let edges: Vec<(usize, usize, String)> = pairs
        .iter()
        .zip(ecol)
        .filter_map(|(&(u, v), c)| c.map(|c| (u, v, format!("e{c}"))))
        .collect();
    ColouredGraph::new(n, &labels, &edges).unwrap()
}

/// `A(λ)` at an integer point, built straight from the colour ids.
pub fn adjacency_at(g: &ColouredGraph, point: &[i64]) -> RatMatrix {
    let n = g.n();
    let mut m = RatMatrix::zeros(n, n);
    for v in 1..=n {
        m[(v - 1, v - 1)] = rat(point[g.vertex_colour(v) - 1]);
    }
    for (u, v, c) in g.edges() {
        m[(u - 1, v - 1)] = rat(point[c - 1]);
        m[(v - 1, u - 1)] = rat(point[c - 1]);
    }
    m
}

/// Inverse by Gauss-Jordan on `[M | I]`, or `None` if singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = rat(1);
    }
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// Linear forms vanishing on `A(λ)⁻¹` at the given points: the kernel of
/// the evaluation matrix with one row per point and one column per pair.
pub fn evaluation_kernel(g: &ColouredGraph, points: &[Vec<i64>]) -> Vec<LinearForm> {
    let space = PairSpace::new(g.n());
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .filter_map(|p| inverse(&adjacency_at(g, p)))
        .map(|inv| {
            space
                .pairs()
                .map(|p| inv[(p.0 - 1, p.1 - 1)].clone())
                .collect()
        })
        .collect();
    assert!(!rows.is_empty(), "every sample point was singular");
    RatMatrix::from_rows(space.len(), rows)
        .unwrap()
        .kernel_basis()
        .into_iter()
        .map(|v| LinearForm::from_coeffs(g.n(), v))
        .collect()
}
