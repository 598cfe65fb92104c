//! Degree-one and degree-two parts of the ideal of the reciprocal variety.
//!
//! A homogeneous form in the `x_{ij}` vanishes on every inverse `A(λ)⁻¹`
//! exactly when it vanishes on the adjugate `adj A(λ)`, since the two differ
//! by the unit `det A(λ)`. Every computation here is therefore a kernel of
//! an exact coefficient matrix over the λ-monomials of adjugate entries.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{
    adjugate, echelon_basis, Monomial, MultiPoly, RatMatrix, Rational, SymPolyMatrix,
};
use crate::error::{Error, Result};
use crate::forms::{LinearForm, PairSpace, QuadraticForm};
use crate::graph::{ColouredGraph, Pair};
use crate::Limits;

/// The adjugate parametrization `x_{ij} = adj A(λ)_{ij}` of a coloured graph.
#[derive(Clone, Debug)]
pub struct Parametrization {
    n: usize,
    adj: SymPolyMatrix,
    det: MultiPoly,
}

impl Parametrization {
    pub fn new(g: &ColouredGraph, limits: &Limits) -> Result<Self> {
        if g.n() > limits.max_n {
            return Err(Error::ResourceCap(format!(
                "adjugate of a {n}-vertex graph exceeds max_n = {}",
                limits.max_n,
                n = g.n()
            )));
        }
        let (adj, det) = adjugate(&g.coloured_adjacency());
        if det.is_zero() {
            return Err(Error::Invariant(
                "coloured adjacency matrix is identically singular".into(),
            ));
        }
        Ok(Parametrization { n: g.n(), adj, det })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjugate(&self) -> &SymPolyMatrix {
        &self.adj
    }

    pub fn determinant(&self) -> &MultiPoly {
        &self.det
    }

    pub fn entry(&self, p: Pair) -> &MultiPoly {
        self.adj.get(p.0 - 1, p.1 - 1)
    }

    pub fn space(&self) -> PairSpace {
        PairSpace::new(self.n)
    }

    pub fn contains_linear(&self, f: &LinearForm) -> bool {
        assert_eq!(f.n(), self.n, "form and graph disagree on n");
        f.substitute(&self.adj).is_zero()
    }

    pub fn contains_quadratic(&self, q: &QuadraticForm) -> bool {
        assert_eq!(q.n(), self.n, "form and graph disagree on n");
        q.substitute(&self.adj).is_zero()
    }

    /// All linear forms vanishing on the parametrization.
    pub fn linear_part(&self) -> IdealPart {
        let basis = polynomial_kernel(self.adj.upper_entries())
            .into_iter()
            .map(|v| LinearForm::from_coeffs(self.n, v))
            .collect::<Vec<_>>();
        IdealPart {
            degree: 1,
            dimension: basis.len(),
            basis,
        }
    }

    /// Degree-two part, computed in the coordinate ring of the linear part.
    ///
    /// Writing the linear part in reduced echelon form with pivots on the
    /// lexicographically largest variables leaves `f` free variables `y`,
    /// and `S / (I₁)` is the polynomial ring in `y`. Hence
    /// `I₂ = (S₁·I₁)₂ ⊕ K` where `K` is the space of quadrics in `y` that
    /// vanish on the parametrization, `dim (S₁·I₁)₂ = C(N+1,2) − C(f+1,2)`,
    /// and `K` is exactly a complement of `(S₁·I₁)₂`.
    pub fn quadratic_part(&self, linear: &IdealPart) -> QuadraticPart {
        let reduction = LinearReduction::new(self.n, &linear.basis);
        let free = &reduction.free;
        let entries: Vec<&MultiPoly> = free.iter().map(|&a| &self.adj.upper_entries()[a]).collect();
        let mut monomials = Vec::new();
        let mut images = Vec::new();
        for i in 0..free.len() {
            for j in i..free.len() {
                monomials.push((free[i], free[j]));
                images.push(entries[i].mul(entries[j]));
            }
        }
        let representatives: Vec<QuadraticForm> = polynomial_kernel(&images)
            .into_iter()
            .map(|v| {
                let mut q = QuadraticForm::zero(self.n);
                for (&(a, b), c) in monomials.iter().zip(v) {
                    q.add_index_term(a, b, c);
                }
                q.normalized()
            })
            .collect();
        let big_n = self.space().len();
        let f = free.len();
        let products_dim = big_n * (big_n + 1) / 2 - f * (f + 1) / 2;
        QuadraticPart {
            full_dim: products_dim + representatives.len(),
            minimal_count: representatives.len(),
            products_dim,
            free_variables: free.iter().map(|&a| self.space().pair(a)).collect(),
            representatives,
        }
    }

    /// Every linear form in the ideal supported on one or two variables, up
    /// to scalar and canonically normalized, in pair order.
    ///
    /// `x_p` is in the ideal iff `adj_p ≡ 0`; for nonzero entries
    /// `c₁x_p + c₂x_q` is in the ideal iff `adj_p` and `adj_q` are
    /// proportional, which fixes `(c₁ : c₂)`.
    pub fn binomial_forms(&self) -> Vec<LinearForm> {
        let space = self.space();
        let entries = self.adj.upper_entries();
        let mut out = Vec::new();
        let mut classes: HashMap<MultiPoly, Vec<usize>> = HashMap::new();
        for (a, e) in entries.iter().enumerate() {
            if e.is_zero() {
                out.push(LinearForm::var(self.n, space.pair(a)));
            } else {
                classes.entry(e.monic()).or_default().push(a);
            }
        }
        let lead = |p: &MultiPoly| p.leading_term().expect("nonzero entry").1.clone();
        for members in classes.values() {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    // adj_a = α·m, adj_b = β·m  ⇒  β x_a − α x_b vanishes
                    let (alpha, beta) = (lead(&entries[a]), lead(&entries[b]));
                    let mut coeffs = vec![Rational::zero(); space.len()];
                    coeffs[a] = beta;
                    coeffs[b] = -alpha;
                    out.push(LinearForm::from_coeffs(self.n, coeffs).normalized());
                }
            }
        }
        out.sort_by_key(form_key);
        out
    }
}

fn form_key(f: &LinearForm) -> Vec<(usize, Rational)> {
    let space = f.space();
    f.terms()
        .map(|(p, c)| (space.index(p), c.clone()))
        .collect()
}

/// `x_{ij}` for every pair split across connected components.
pub fn component_zero_forms(g: &ColouredGraph) -> Vec<LinearForm> {
    let comp = g.component_of();
    PairSpace::new(g.n())
        .pairs()
        .filter(|p| comp[p.0 - 1] != comp[p.1 - 1])
        .map(|p| LinearForm::var(g.n(), p))
        .collect()
}

/// A homogeneous part of the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPart {
    pub degree: u8,
    pub basis: Vec<LinearForm>,
    pub dimension: usize,
}

impl IdealPart {
    pub fn coefficient_rows(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|f| f.coeffs().to_vec()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticPart {
    /// `dim I₂`.
    pub full_dim: usize,
    /// `dim I₂ − dim (S₁·I₁)₂`.
    pub minimal_count: usize,
    /// `dim (S₁·I₁)₂`.
    pub products_dim: usize,
    /// Variables left free by the linear part; representatives use only these.
    pub free_variables: Vec<Pair>,
    pub representatives: Vec<QuadraticForm>,
}

/// Elimination of the linear part: each pivot variable is written in terms
/// of the free variables.
#[derive(Clone, Debug)]
pub struct LinearReduction {
    n: usize,
    /// Pair indices of the free variables, increasing.
    pub free: Vec<usize>,
    /// `pivot index -> Σ c · x_free`.
    substitution: BTreeMap<usize, Vec<(usize, Rational)>>,
}

impl LinearReduction {
    pub fn new(n: usize, basis: &[LinearForm]) -> Self {
        let len = PairSpace::new(n).len();
        // reversed columns put pivots on the lexicographically largest pairs
        let rows: Vec<Vec<Rational>> = basis
            .iter()
            .map(|f| f.coeffs().iter().rev().cloned().collect())
            .collect();
        let mut substitution = BTreeMap::new();
        let mut is_pivot = vec![false; len];
        if !rows.is_empty() {
            let (r, pivots) = RatMatrix::from_rows(len, rows)
                .expect("uniform rows")
                .rref();
            for (row, &pc) in pivots.iter().enumerate() {
                let p = len - 1 - pc;
                is_pivot[p] = true;
                let expr = (0..len)
                    .filter(|&c| c != pc && !r[(row, c)].is_zero())
                    .map(|c| (len - 1 - c, -r[(row, c)].clone()))
                    .collect();
                substitution.insert(p, expr);
            }
        }
        LinearReduction {
            n,
            free: (0..len).filter(|&a| !is_pivot[a]).collect(),
            substitution,
        }
    }

    fn reduce_var(&self, a: usize) -> Vec<(usize, Rational)> {
        match self.substitution.get(&a) {
            Some(expr) => expr.clone(),
            None => vec![(a, Rational::from_integer(1.into()))],
        }
    }

    /// The unique quadric in the free variables congruent to `q` modulo
    /// `(S₁·I₁)₂`. Not normalized, so that congruence classes can be compared.
    pub fn reduce_quadric(&self, q: &QuadraticForm) -> QuadraticForm {
        assert_eq!(q.n(), self.n);
        let mut out = QuadraticForm::zero(self.n);
        for ((a, b), c) in q.index_terms() {
            for (x, cx) in self.reduce_var(a) {
                for (y, cy) in self.reduce_var(b) {
                    out.add_index_term(x.min(y), x.max(y), c * &cx * &cy);
                }
            }
        }
        out
    }

    /// Reduces a linear form to the free variables; zero iff the form lies in
    /// the eliminated span.
    pub fn reduce_linear(&self, f: &LinearForm) -> LinearForm {
        let mut coeffs = vec![Rational::zero(); PairSpace::new(self.n).len()];
        for (a, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, cx) in self.reduce_var(a) {
                coeffs[x] += c * &cx;
            }
        }
        LinearForm::from_coeffs(self.n, coeffs)
    }
}

/// Kernel of the map `e_k ↦ polys[k]` into the λ-polynomials, as coefficient
/// vectors in reduced echelon form.
fn polynomial_kernel(polys: &[impl std::borrow::Borrow<MultiPoly>]) -> Vec<Vec<Rational>> {
    let mut rows: BTreeMap<&Monomial, Vec<Rational>> = BTreeMap::new();
    let cols = polys.len();
    for (k, p) in polys.iter().enumerate() {
        for (m, c) in p.borrow().terms() {
            rows.entry(m)
                .or_insert_with(|| vec![Rational::zero(); cols])[k] = c.clone();
        }
    }
    if rows.is_empty() {
        // every entry vanishes: the whole space is the kernel
        let identity: Vec<Vec<Rational>> = (0..cols)
            .map(|k| {
                let mut v = vec![Rational::zero(); cols];
                v[k] = Rational::from_integer(1.into());
                v
            })
            .collect();
        return echelon_basis(cols, identity);
    }
    RatMatrix::from_rows(cols, rows.into_values().collect())
        .expect("uniform rows")
        .kernel_basis()
}

/// True iff every form of `sub` lies in the span of `sup`.
pub fn span_contains(n: usize, sup: &[LinearForm], sub: &[LinearForm]) -> bool {
    let len = PairSpace::new(n).len();
    let rows = |fs: &[LinearForm]| fs.iter().map(|f| f.coeffs().to_vec()).collect::<Vec<_>>();
    let base = rank_of(len, rows(sup));
    let mut all = rows(sup);
    all.extend(rows(sub));
    rank_of(len, all) == base
}

/// True iff the two lists span the same subspace.
pub fn same_span(n: usize, a: &[LinearForm], b: &[LinearForm]) -> bool {
    span_contains(n, a, b) && span_contains(n, b, a)
}

pub(crate) fn rank_of(cols: usize, rows: Vec<Vec<Rational>>) -> usize {
    if rows.is_empty() {
        0
    } else {
        RatMatrix::from_rows(cols, rows)
            .expect("uniform rows")
            .rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn ex24() -> ColouredGraph {
        ColouredGraph::new(
            4,
            &["a", "b", "c", "c"],
            &[(1, 3, "e"), (1, 4, "e"), (3, 4, "e")],
        )
        .unwrap()
    }

    fn forms(n: usize, text: &[&str]) -> Vec<LinearForm> {
        text.iter()
            .map(|t| LinearForm::parse(t, n).unwrap())
            .collect()
    }

    fn param(g: &ColouredGraph) -> Parametrization {
        Parametrization::new(g, &Limits::default()).unwrap()
    }

    #[test]
    fn example_2_4_linear_part() {
        let p = param(&ex24());
        let l = p.linear_part();
        assert_eq!(l.dimension, 5);
        assert!(same_span(
            4,
            &l.basis,
            &forms(4, &["x33 - x44", "x13 - x14", "x12", "x23", "x24"])
        ));
    }

    #[test]
    fn example_2_4_binomials() {
        let p = param(&ex24());
        let got: Vec<String> = p.binomial_forms().iter().map(|f| f.to_string()).collect();
        assert_eq!(got, ["x12", "x13 - x14", "x23", "x24", "x33 - x44"]);
    }

    #[test]
    fn component_zeros() {
        let got: Vec<String> = component_zero_forms(&ex24())
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(got, ["x12", "x23", "x24"]);
        let edgeless = ColouredGraph::uniform(3, &[]).unwrap();
        assert_eq!(component_zero_forms(&edgeless).len(), 3);
        assert!(component_zero_forms(&FamilySpec::cycle(5).build().unwrap()).is_empty());
    }

    #[test]
    fn c5_linear_part_has_twelve_forms() {
        let p = param(&FamilySpec::cycle(5).build().unwrap());
        assert_eq!(p.linear_part().dimension, 12);
    }

    #[test]
    fn membership() {
        let c4 = param(&FamilySpec::cycle(4).build().unwrap());
        assert!(!c4.contains_linear(&LinearForm::parse("x11 - x12", 4).unwrap()));
        assert!(c4.contains_linear(&LinearForm::zero(4)));
        assert!(
            c4.contains_quadratic(&QuadraticForm::parse("x13^2 - 2*x12^2 + x13*x11", 4).unwrap())
        );
    }

    #[test]
    fn quadratic_counts_for_small_cycles() {
        for (n, expected) in [(3, 0), (4, 1), (5, 1)] {
            let p = param(&FamilySpec::cycle(n).build().unwrap());
            let q = p.quadratic_part(&p.linear_part());
            assert_eq!(q.minimal_count, expected, "C_{n}");
        }
    }

    #[test]
    fn c4_representative_uses_free_variables() {
        let p = param(&FamilySpec::cycle(4).build().unwrap());
        let q = p.quadratic_part(&p.linear_part());
        let names: Vec<String> = q
            .free_variables
            .iter()
            .map(|&v| PairSpace::new(4).var_name(v))
            .collect();
        assert_eq!(names, ["x11", "x12", "x13"]);
        assert_eq!(
            q.representatives[0].to_string(),
            "x11*x13 - 2*x12^2 + x13^2"
        );
    }

    #[test]
    fn reduction_is_zero_on_linear_products() {
        let p = param(&FamilySpec::cycle(5).build().unwrap());
        let l = p.linear_part();
        let red = LinearReduction::new(5, &l.basis);
        let q = QuadraticForm::product(&l.basis[0], &LinearForm::var(5, Pair(2, 4)));
        assert!(red.reduce_quadric(&q).is_zero());
        assert!(red.reduce_linear(&l.basis[3]).is_zero());
    }

    #[test]
    fn max_n_is_enforced() {
        let g = FamilySpec::cycle(6).build().unwrap();
        let limits = Limits {
            max_n: 5,
            ..Limits::default()
        };
        assert!(matches!(
            Parametrization::new(&g, &limits),
            Err(Error::ResourceCap(_))
        ));
    }
}
