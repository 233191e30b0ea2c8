//! Symmetric bilinear forms: exact signature by congruence diagonalisation.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::matrix::RatMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

/// Signature of a symmetric matrix via symmetric Gaussian elimination.
///
/// Each step applies the same elementary operation to rows and columns, so
/// the form only changes by congruence and Sylvester's law applies.
pub fn signature(s: &RatMatrix) -> Result<Signature> {
    if !s.is_square() {
        return Err(Error::InvalidForm(format!(
            "{}x{} matrix is not square",
            s.rows(),
            s.cols()
        )));
    }
    if !s.is_symmetric() {
        return Err(Error::InvalidForm("matrix is not symmetric".into()));
    }
    let n = s.rows();
    let mut m = s.clone();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut k = 0;
    while k < n {
        if m[(k, k)].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                swap_sym(&mut m, k, p);
            } else if let Some(p) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                // m_kk = m_pp = 0, m_kp != 0: e_k += e_p gives 2 m_kp on the diagonal
                add_sym(&mut m, k, p);
            } else if let Some((i, j)) = (k + 1..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[(i, j)].is_zero())
            {
                swap_sym(&mut m, k, i);
                add_sym(&mut m, k, j);
            } else {
                // remaining block is identically zero
                sig.zero += n - k;
                break;
            }
        }
        let d = m[(k, k)].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let f = &m[(i, k)] / &d;
            for j in k..n {
                let x = &f * &m[(k, j)];
                m[(i, j)] -= x;
            }
            for j in k..n {
                let x = &f * &m[(j, k)];
                m[(j, i)] -= x;
            }
        }
        k += 1;
    }
    Ok(sig)
}

fn swap_sym(m: &mut RatMatrix, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for i in 0..n {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// Row and column `a` += row and column `b`.
fn add_sym(m: &mut RatMatrix, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let x = m[(b, j)].clone();
        m[(a, j)] += x;
    }
    for i in 0..n {
        let x = m[(i, b)].clone();
        m[(i, a)] += x;
    }
}

/// Gram matrix `Bᵀ P C` of the pairing `P` on the column bases `B`, `C`.
pub fn gram(pairing: &RatMatrix, left: &RatMatrix, right: &RatMatrix) -> RatMatrix {
    &(&left.transpose() * pairing) * right
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat::rat;

    fn sig(p: usize, n: usize, z: usize) -> Signature {
        Signature {
            positive: p,
            negative: n,
            zero: z,
        }
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&RatMatrix::identity(3)).unwrap(), sig(3, 0, 0));
        let h = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&h).unwrap(), sig(1, 1, 0));
        let d = RatMatrix::diagonal(&[rat(2), rat(-3), rat(0)]);
        assert_eq!(signature(&d).unwrap(), sig(1, 1, 1));
    }

    #[test]
    fn zero_diagonal_needs_pair_search() {
        // zero first row and column, hyperbolic pair further down
        let m = RatMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 2], &[0, 2, 0]]);
        assert_eq!(signature(&m).unwrap(), sig(1, 1, 1));
        assert_eq!(signature(&RatMatrix::zeros(2, 2)).unwrap(), sig(0, 0, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            signature(&RatMatrix::zeros(2, 3)),
            Err(Error::InvalidForm(_))
        ));
        let a = RatMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        assert!(matches!(signature(&a), Err(Error::InvalidForm(_))));
    }
}
