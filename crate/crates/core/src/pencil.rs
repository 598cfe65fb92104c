//! Uniform coloured graphs: the linear space is the pencil spanned by the
//! identity and the adjacency matrix, so its invariants depend only on the
//! number `r` of distinct adjacency eigenvalues.

use std::fmt;

use serde::Serialize;

use crate::algebra::{charpoly, squarefree_decomposition};
use crate::error::{Error, Result};
use crate::graph::ColouredGraph;

/// One tuple of Jordan block sizes per distinct eigenvalue. For a pencil with
/// `A₁ = I` and symmetric `A₂` every block has size one, so a tuple is
/// determined by its length, the eigenvalue multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreSymbol {
    /// Tuples sorted by decreasing length.
    pub tuples: Vec<Vec<u32>>,
}

impl SegreSymbol {
    /// Number of distinct eigenvalues.
    pub fn parts(&self) -> usize {
        self.tuples.len()
    }

    pub fn size(&self) -> usize {
        self.tuples
            .iter()
            .map(|t| t.iter().sum::<u32>() as usize)
            .sum()
    }

    /// Multiplicity of each distinct eigenvalue, decreasing.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.tuples.iter().map(Vec::len).collect()
    }
}

impl fmt::Display for SegreSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tuples
            .iter()
            .map(|t| match t.len() {
                1 => "1".to_string(),
                k => format!("1_{k}"),
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn require_uniform(g: &ColouredGraph) -> Result<()> {
    if g.is_uniform() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "pencil analysis needs a uniform colouring (1 vertex colour, at most 1 edge colour); got {} vertex and {} edge colours",
            g.num_vertex_colours(),
            g.num_edge_colours()
        )))
    }
}

/// Segre symbol from the squarefree decomposition of the adjacency
/// characteristic polynomial: a factor of degree `k` and multiplicity `m`
/// contributes `k` tuples `(1, …, 1)` of length `m`.
pub fn segre_symbol(g: &ColouredGraph) -> Result<SegreSymbol> {
    require_uniform(g)?;
    let (_, factors) = squarefree_decomposition(&charpoly(&g.uncoloured_adjacency()))?;
    let mut tuples = Vec::new();
    for f in &factors {
        for _ in 0..f.factor.degree().unwrap_or(0) {
            tuples.push(vec![1; f.multiplicity as usize]);
        }
    }
    tuples.sort_by_key(|t| std::cmp::Reverse(t.len()));
    Ok(SegreSymbol { tuples })
}

/// Pencil invariants in terms of `r`. Only `r` is computed; the remaining
/// fields are the closed-form values for pencils.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilProperties {
    pub n: usize,
    pub r: usize,
    /// Degree of the reciprocal variety, `r − 1`.
    pub deg_reciprocal: usize,
    /// ML degree, `r − 1`.
    pub mld: usize,
    /// Reciprocal ML degree, `2r − 3`; undefined for `r = 1`.
    pub rmld: Option<usize>,
    /// `C(n+1, 2) − r`.
    pub n_linear: usize,
    /// `C(r−1, 2)`.
    pub n_quadratic: usize,
    /// Always true: the degree fields are formula values, not computed.
    pub from_closed_form: bool,
}

impl PencilProperties {
    pub fn from_r(n: usize, r: usize) -> Self {
        assert!(r >= 1 && r <= n);
        PencilProperties {
            n,
            r,
            deg_reciprocal: r - 1,
            mld: r - 1,
            rmld: (r >= 2).then(|| 2 * r - 3),
            n_linear: n * (n + 1) / 2 - r,
            n_quadratic: (r - 1) * r.saturating_sub(2) / 2,
            from_closed_form: true,
        }
    }
}

pub fn pencil_properties(g: &ColouredGraph) -> Result<PencilProperties> {
    let segre = segre_symbol(g)?;
    Ok(PencilProperties::from_r(g.n(), segre.parts()))
}
