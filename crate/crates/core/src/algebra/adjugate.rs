use std::collections::HashMap;

use super::{MultiPoly, Rational};

/// Symmetric n×n matrix of polynomials; only the upper triangle is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPolyMatrix {
    n: usize,
    nvars: usize,
    upper: Vec<MultiPoly>,
}

/// Dense (not necessarily symmetric) polynomial matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub n: usize,
    pub entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n + j]
    }

    /// True iff the matrix equals `scalar * I`.
    pub fn is_scalar_identity(&self, scalar: &MultiPoly) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e == scalar
                } else {
                    e.is_zero()
                }
            })
        })
    }
}

impl SymPolyMatrix {
    pub fn zeros(n: usize, nvars: usize) -> Self {
        SymPolyMatrix {
            n,
            nvars,
            upper: vec![MultiPoly::zero(nvars); n * (n + 1) / 2],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!(
            j < self.n,
            "index ({i},{j}) out of range for n = {}",
            self.n
        );
        // row-major upper triangle
        i * self.n - i * (i + 1) / 2 + j
    }

    /// 0-based access; `get(i, j) == get(j, i)`.
    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.upper[self.slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.nvars(), self.nvars);
        let s = self.slot(i, j);
        self.upper[s] = p;
    }

    /// Entries of the upper triangle in row-major order, i.e. the pair order
    /// (1,1), (1,2), …, (1,n), (2,2), …
    pub fn upper_entries(&self) -> &[MultiPoly] {
        &self.upper
    }

    pub fn mul(&self, other: &SymPolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = MultiPoly::zero(self.nvars);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        PolyMatrix { n, entries }
    }

    /// Substitutes `point` for the variables.
    pub fn eval(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }
}

/// Memoized Laplace expansion over (row set, column set) bitmasks.
struct MinorCache<'a> {
    a: &'a SymPolyMatrix,
    memo: HashMap<(u32, u32), MultiPoly>,
}

impl MinorCache<'_> {
    fn det(&mut self, rows: u32, cols: u32) -> MultiPoly {
        if rows == 0 {
            return MultiPoly::one(self.a.nvars);
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest_rows = rows & (rows - 1);
        let mut acc = MultiPoly::zero(self.a.nvars);
        let mut pos = 0usize;
        let mut bits = cols;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let entry = self.a.get(r, c);
            if !entry.is_zero() {
                let minor = self.det(rest_rows, cols & !(1 << c));
                if !minor.is_zero() {
                    let term = entry.mul(&minor);
                    if pos.is_multiple_of(2) {
                        acc.add_assign(&term);
                    } else {
                        acc.add_assign(&term.neg());
                    }
                }
            }
            pos += 1;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

/// Adjugate and determinant of a symmetric polynomial matrix, so that
/// `A · adj(A) = det(A) · I` holds exactly.
///
/// Minors are shared between cofactors through a (row-mask, column-mask)
/// cache; Laplace expansion always proceeds along the smallest remaining row.
/// Callers are expected to enforce a size cap (2ⁿ minors per row set).
pub fn adjugate(a: &SymPolyMatrix) -> (SymPolyMatrix, MultiPoly) {
    let n = a.n;
    assert!(
        (1..32).contains(&n),
        "adjugate supports 1 ≤ n < 32, got {n}"
    );
    let full: u32 = (1u32 << n) - 1;
    let mut cache = MinorCache {
        a,
        memo: HashMap::new(),
    };
    let det = cache.det(full, full);
    let mut adj = SymPolyMatrix::zeros(n, a.nvars);
    for i in 0..n {
        for j in i..n {
            // adj(i, j) = (-1)^{i+j} · minor with row j and column i deleted.
            let m = cache.det(full & !(1 << j), full & !(1 << i));
            adj.set(i, j, if (i + j) % 2 == 0 { m } else { m.neg() });
        }
    }
    (adj, det)
}
