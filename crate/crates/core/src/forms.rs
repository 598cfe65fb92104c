//! Linear and quadratic forms in the entries `x_{ij}` (`i <= j`) of a
//! symmetric matrix.
//!
//! Canonical normalization: coprime integer coefficients, with the coefficient
//! of the lexicographically least variable (or monomial) positive. Text form
//! lists terms in that same order, e.g. `x11 - x22` or
//! `x11*x14 - 2*x12*x13 + x13*x14`. For `n >= 10` variables print as `x1_10`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{normalize_integral, rat, MultiPoly, Rational, SymPolyMatrix};
use crate::error::{Error, Result};
use crate::graph::Pair;

/// Indexing of unordered pairs `(i, j)`, `1 <= i <= j <= n`, in lexicographic
/// order: `(1,1), (1,2), …, (1,n), (2,2), …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairSpace {
    n: usize,
}

impl PairSpace {
    pub fn new(n: usize) -> Self {
        PairSpace { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C(n+1, 2)`
    pub fn len(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn index(&self, p: Pair) -> usize {
        let (a, b) = (p.0 - 1, p.1 - 1);
        debug_assert!(a <= b && b < self.n);
        a * self.n - a * (a + 1) / 2 + b
    }

    pub fn pair(&self, mut idx: usize) -> Pair {
        for a in 0..self.n {
            let row = self.n - a;
            if idx < row {
                return Pair(a + 1, a + 1 + idx);
            }
            idx -= row;
        }
        panic!("pair index out of range for n = {}", self.n);
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        (1..=self.n).flat_map(move |i| (i..=self.n).map(move |j| Pair(i, j)))
    }

    pub fn var_name(&self, p: Pair) -> String {
        if self.n <= 9 {
            format!("x{}{}", p.0, p.1)
        } else {
            format!("x{}_{}", p.0, p.1)
        }
    }
}

/// `Σ c_{ij} x_{ij}` over the pairs of an `n`-vertex graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    n: usize,
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        LinearForm {
            n,
            coeffs: vec![Rational::zero(); PairSpace::new(n).len()],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), PairSpace::new(n).len());
        LinearForm { n, coeffs }
    }

    pub fn from_terms(n: usize, terms: &[(Pair, i64)]) -> Self {
        let space = PairSpace::new(n);
        let mut f = Self::zero(n);
        for &(p, c) in terms {
            f.coeffs[space.index(p)] += rat(c);
        }
        f
    }

    pub fn var(n: usize, p: Pair) -> Self {
        Self::from_terms(n, &[(p, 1)])
    }

    /// `x_p − x_q`
    pub fn difference(n: usize, p: Pair, q: Pair) -> Self {
        Self::from_terms(n, &[(p, 1), (q, -1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> PairSpace {
        PairSpace::new(self.n)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, p: Pair) -> &Rational {
        &self.coeffs[self.space().index(p)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in pair order.
    pub fn terms(&self) -> impl Iterator<Item = (Pair, &Rational)> + '_ {
        let space = self.space();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (space.pair(i), c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Canonical scaling; a zero form is left untouched.
    pub fn normalized(mut self) -> Self {
        normalize_integral(self.coeffs.iter_mut());
        self
    }

    /// `Σ c_{ij} · adj_{ij}`
    pub fn substitute(&self, adj: &SymPolyMatrix) -> MultiPoly {
        let mut acc = MultiPoly::zero(adj.nvars());
        for (p, c) in self.terms() {
            acc.add_scaled(adj.get(p.0 - 1, p.1 - 1), c);
        }
        acc
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let space = PairSpace::new(n);
        let mut f = Self::zero(n);
        for (c, vars) in parse_polynomial(text, n)? {
            match vars.as_slice() {
                [p] => f.coeffs[space.index(*p)] += c,
                [] if c.is_zero() => {}
                _ => {
                    return Err(Error::parse(
                        1,
                        format!(
                            "`{text}` is not a linear form (term of degree {})",
                            vars.len()
                        ),
                    ))
                }
            }
        }
        Ok(f)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space();
        write_terms(f, self.terms().map(|(p, c)| (space.var_name(p), c)))
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Σ c_{pq} x_p x_q` over pairs of pair-indices `p <= q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    n: usize,
    terms: BTreeMap<(usize, usize), Rational>,
}

impl QuadraticForm {
    pub fn zero(n: usize) -> Self {
        QuadraticForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> PairSpace {
        PairSpace::new(self.n)
    }

    pub fn add_term(&mut self, p: Pair, q: Pair, c: Rational) {
        let space = self.space();
        let (a, b) = (space.index(p), space.index(q));
        self.add_index_term(a.min(b), a.max(b), c);
    }

    pub(crate) fn add_index_term(&mut self, a: usize, b: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn product(f: &LinearForm, g: &LinearForm) -> Self {
        assert_eq!(f.n, g.n);
        let mut q = Self::zero(f.n);
        for (p1, c1) in f.terms() {
            for (p2, c2) in g.terms() {
                q.add_term(p1, p2, c1 * c2);
            }
        }
        q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms `((p, q), c)` with `p <= q` in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Pair, Pair, &Rational)> + '_ {
        let space = self.space();
        self.terms
            .iter()
            .map(move |(&(a, b), c)| (space.pair(a), space.pair(b), c))
    }

    pub fn index_terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn normalized(mut self) -> Self {
        normalize_integral(self.terms.values_mut());
        self
    }

    /// `Σ c_{pq} · adj_p · adj_q`
    pub fn substitute(&self, adj: &SymPolyMatrix) -> MultiPoly {
        let mut acc = MultiPoly::zero(adj.nvars());
        for (p, q, c) in self.terms() {
            let prod = adj.get(p.0 - 1, p.1 - 1).mul(adj.get(q.0 - 1, q.1 - 1));
            acc.add_scaled(&prod, c);
        }
        acc
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut f = Self::zero(n);
        for (c, vars) in parse_polynomial(text, n)? {
            match vars.as_slice() {
                [p, q] => f.add_term(*p, *q, c),
                [] if c.is_zero() => {}
                _ => {
                    return Err(Error::parse(
                        1,
                        format!(
                            "`{text}` is not a quadratic form (term of degree {})",
                            vars.len()
                        ),
                    ))
                }
            }
        }
        Ok(f)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space();
        write_terms(
            f,
            self.terms().map(|(p, q, c)| {
                let name = if p == q {
                    format!("{}^2", space.var_name(p))
                } else {
                    format!("{}*{}", space.var_name(p), space.var_name(q))
                };
                (name, c)
            }),
        )
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Rational)>,
{
    let mut first = true;
    for (name, c) in terms {
        let abs = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        write!(f, "{name}")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Parses `±c*x12*x34 ± …` into `(coefficient, variables)` terms. Accepts
/// `x12`, `x_{12}`, `x1_10`, `x_{1,10}`, `x[1,10]`, `^k` and `^{k}` powers,
/// rational coefficients `a/b` and implicit products such as `2x_{12}x_{13}`;
/// whitespace is ignored.
fn parse_polynomial(text: &str, n: usize) -> Result<Vec<(Rational, Vec<Pair>)>> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: String| Error::parse(1, format!("in `{text}`: {msg}"));
    if s.is_empty() {
        return Err(err("empty form".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    while pos < s.len() {
        let mut coeff = Rational::one();
        match s[pos] {
            '+' => pos += 1,
            '-' => {
                coeff = -coeff;
                pos += 1;
            }
            _ if pos > 0 => return Err(err(format!("expected `+` or `-` at offset {pos}"))),
            _ => {}
        }
        let mut vars = Vec::new();
        let mut expect_factor = true;
        while pos < s.len() && s[pos] != '+' && s[pos] != '-' {
            if !expect_factor {
                // juxtaposition multiplies: `2x12`, `x13x11`
                if s[pos] == 'x' {
                    expect_factor = true;
                    continue;
                }
                if s[pos] != '*' {
                    return Err(err(format!("expected `*` at offset {pos}")));
                }
                pos += 1;
                expect_factor = true;
                continue;
            }
            if s[pos].is_ascii_digit() {
                let (num, next) = read_number(&s, pos);
                pos = next;
                let mut value = Rational::from_integer(num.into());
                if pos < s.len() && s[pos] == '/' {
                    let (den, next) = read_number(&s, pos + 1);
                    if next == pos + 1 || den == 0 {
                        return Err(err("bad denominator".into()));
                    }
                    pos = next;
                    value /= Rational::from_integer(den.into());
                }
                coeff *= value;
            } else if s[pos] == 'x' {
                let (p, next) = read_variable(&s, pos + 1, n).map_err(&err)?;
                pos = next;
                let mut power = 1;
                if pos < s.len() && s[pos] == '^' {
                    let braced = s.get(pos + 1) == Some(&'{');
                    let start = pos + 1 + braced as usize;
                    let (e, mut next) = read_number(&s, start);
                    if next == start {
                        return Err(err("missing exponent".into()));
                    }
                    if braced {
                        if s.get(next) != Some(&'}') {
                            return Err(err("expected `}` closing exponent".into()));
                        }
                        next += 1;
                    }
                    power = e;
                    pos = next;
                }
                for _ in 0..power {
                    vars.push(p);
                }
            } else {
                return Err(err(format!("unexpected `{}` at offset {pos}", s[pos])));
            }
            expect_factor = false;
        }
        if expect_factor {
            return Err(err("dangling operator".into()));
        }
        terms.push((coeff, vars));
    }
    Ok(terms)
}

fn read_number(s: &[char], mut pos: usize) -> (u64, usize) {
    let mut v: u64 = 0;
    while pos < s.len() && s[pos].is_ascii_digit() {
        v = v * 10 + s[pos].to_digit(10).unwrap() as u64;
        pos += 1;
    }
    (v, pos)
}

fn read_variable(
    s: &[char],
    mut pos: usize,
    n: usize,
) -> std::result::Result<(Pair, usize), String> {
    if pos < s.len() && s[pos] == '_' {
        pos += 1;
    }
    let (i, j) = if pos < s.len() && (s[pos] == '{' || s[pos] == '[') {
        let close = if s[pos] == '{' { '}' } else { ']' };
        let (i, p1) = read_number(s, pos + 1);
        if p1 == pos + 3 && s.get(p1) == Some(&close) {
            // `x_{13}`: two single-digit indices
            pos = p1 + 1;
            (
                s[p1 - 2].to_digit(10).unwrap() as usize,
                s[p1 - 1].to_digit(10).unwrap() as usize,
            )
        } else {
            if p1 >= s.len() || s[p1] != ',' {
                return Err("expected `,` or two digits inside variable index".into());
            }
            let (j, p2) = read_number(s, p1 + 1);
            if p2 >= s.len() || s[p2] != close {
                return Err(format!("expected `{close}` closing variable index"));
            }
            pos = p2 + 1;
            (i as usize, j as usize)
        }
    } else {
        let start = pos;
        while pos < s.len() && s[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos < s.len() && s[pos] == '_' {
            let (i, _) = read_number(s, start);
            let (j, p2) = read_number(s, pos + 1);
            pos = p2;
            (i as usize, j as usize)
        } else if pos - start == 2 {
            (
                s[start].to_digit(10).unwrap() as usize,
                s[start + 1].to_digit(10).unwrap() as usize,
            )
        } else {
            return Err("variable needs two single-digit indices or an explicit separator".into());
        }
    };
    if i == 0 || j == 0 || i > n || j > n {
        return Err(format!("variable x({i},{j}) outside 1..={n}"));
    }
    Ok((Pair::new(i, j), pos))
}
