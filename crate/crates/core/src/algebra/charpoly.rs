use super::{RatMatrix, UniPoly};

/// `det(t·I − M)` by fraction-free (Bareiss) elimination over Q[t].
///
/// Every leading principal minor of `tI − M` is the (monic) characteristic
/// polynomial of a principal submatrix, so no pivot is ever zero and every
/// Bareiss division is exact.
pub fn charpoly(m: &RatMatrix) -> UniPoly {
    assert_eq!(m.rows(), m.cols(), "charpoly needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return UniPoly::one();
    }
    let mut a: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = UniPoly::constant(-m[(i, j)].clone());
                    if i == j {
                        c.add(&UniPoly::t())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone()
}
