//! Quotients `whole / sub` of subspaces of a common `Q^n`.

use crate::error::{Error, Result};
use crate::ratlin::{quotient_map, RatMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub whole: Subspace,
    pub sub: Subspace,
    /// `n x dim`: vectors of `whole` whose classes form a basis.
    pub reps: RatMatrix,
    /// `dim x n`: class coordinates, valid on `whole`.
    pub proj: RatMatrix,
}

impl Quotient {
    pub fn new(whole: Subspace, sub: Subspace) -> Result<Self> {
        if !whole.contains(&sub)? {
            return Err(Error::Consistency("quotient by a subspace not contained in the whole".into()));
        }
        let n = whole.ambient_dim();
        let q = quotient_map(n, &sub)?;
        let mut chosen = Vec::new();
        let mut images = RatMatrix::zeros(q.rows(), 0);
        for v in whole.basis_vectors() {
            let cand = images.hstack(&RatMatrix::column_vector(&q.apply(&v)));
            if cand.rank() > images.cols() {
                images = cand;
                chosen.push(v);
            }
        }
        let reps = RatMatrix::from_columns(n, &chosen);
        let proj = if chosen.is_empty() {
            RatMatrix::zeros(0, n)
        } else {
            &images.left_inverse()? * &q
        };
        Ok(Quotient {
            whole,
            sub,
            reps,
            proj,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// `true` if `m` carries `whole` into `target.whole` and `sub` into
    /// `target.sub`.
    pub fn descends(&self, m: &RatMatrix, target: &Quotient) -> Result<bool> {
        Ok(target.whole.contains(&self.whole.image_under(m)?)?
            && target.sub.contains(&self.sub.image_under(m)?)?)
    }

    /// Matrix of the map induced by `m`, or `None` if it does not descend.
    pub fn induced(&self, m: &RatMatrix, target: &Quotient) -> Result<Option<RatMatrix>> {
        if !self.descends(m, target)? {
            return Ok(None);
        }
        Ok(Some(&(&target.proj * m) * &self.reps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    #[test]
    fn plane_mod_line() {
        let whole = Subspace::coordinate(3, &[0, 1]);
        let sub = Subspace::coordinate(3, &[0]);
        let q = Quotient::new(whole, sub).unwrap();
        assert_eq!(q.dim(), 1);
        // e0 + 5 e1 has class 5 times the class of e1
        let v = vec![rat(1), rat(5), rat(0)];
        let c = q.proj.apply(&v);
        let back = q.reps.apply(&c);
        assert_eq!(back[1], rat(5));
    }

    #[test]
    fn rejects_non_nested() {
        let whole = Subspace::coordinate(2, &[0]);
        let sub = Subspace::coordinate(2, &[1]);
        assert!(Quotient::new(whole, sub).is_err());
    }

    #[test]
    fn induced_requires_descent() {
        let a = Quotient::new(Subspace::full(2), Subspace::coordinate(2, &[0])).unwrap();
        let swap = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.induced(&swap, &a).unwrap(), None);
        let id = RatMatrix::identity(2);
        assert_eq!(a.induced(&id, &a).unwrap().unwrap(), RatMatrix::identity(1));
    }
}
