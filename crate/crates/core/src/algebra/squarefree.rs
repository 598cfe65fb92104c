use super::{Rational, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeFactor {
    /// Monic, squarefree, coprime to every other factor.
    pub factor: UniPoly,
    pub multiplicity: u32,
}

/// Yun's squarefree decomposition over Q: `p = c · Π qᵢ^{mᵢ}` with monic
/// squarefree pairwise-coprime `qᵢ`, multiplicities strictly increasing.
/// Returns the content `c` and the factors.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<(Rational, Vec<SquarefreeFactor>)> {
    let content = p.leading_coeff().cloned().ok_or_else(|| {
        Error::Unsupported("squarefree decomposition of the zero polynomial".into())
    })?;
    let f = p.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok((content, out));
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut b = f.exact_div(&g).expect("gcd divides f");
    let mut c = df.exact_div(&g).expect("gcd divides f'");
    let mut d = c.sub(&b.derivative());
    let mut mult = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree() != Some(0) {
            out.push(SquarefreeFactor {
                factor: a.clone(),
                multiplicity: mult,
            });
        }
        b = b.exact_div(&a).expect("Yun step divides exactly");
        if b.degree() == Some(0) {
            break;
        }
        c = d.exact_div(&a).expect("Yun step divides exactly");
        d = c.sub(&b.derivative());
        mult += 1;
    }
    Ok((content, out))
}

/// Number of distinct complex roots: the summed degree of the squarefree factors.
pub fn distinct_root_count(p: &UniPoly) -> Result<usize> {
    let (_, factors) = squarefree_decomposition(p)?;
    Ok(factors.iter().map(|f| f.factor.degree().unwrap_or(0)).sum())
}
