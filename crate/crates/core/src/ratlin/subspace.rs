//! Subspaces of `Q^n` in canonical form.
//!
//! The basis is kept in reduced column echelon form, so two subspaces are
//! equal exactly when their bases are equal.

use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
    /// Coordinate carrying the leading one of each basis column.
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::zeros(ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of the columns of `m` (not required to be independent).
    pub fn span(m: &RatMatrix) -> Self {
        let r = m.transpose().rref();
        let k = r.pivots.len();
        let rows: Vec<usize> = (0..k).collect();
        let cols: Vec<usize> = (0..m.rows()).collect();
        Subspace {
            ambient: m.rows(),
            basis: r.matrix.submatrix(&rows, &cols).transpose(),
            pivots: r.pivots,
        }
    }

    pub fn span_vectors(ambient: usize, vs: &[Vec<Rat>]) -> Self {
        Self::span(&RatMatrix::from_columns(ambient, vs))
    }

    /// Subspace spanned by the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Rat>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            })
            .collect();
        Self::span_vectors(ambient, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.columns()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        // With the basis in column echelon form, the pivot coordinates of v
        // determine the only possible combination.
        let coeffs: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.basis.apply(&coeffs).as_slice() == v
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let coeffs: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.basis.apply(&coeffs).as_slice() == v).then_some(coeffs)
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        // (x, y) with U x = W y
        let joint = self.basis.hstack(&-&other.basis);
        let ker = kernel(&joint);
        let a = self.dim();
        let rows: Vec<usize> = (0..a).collect();
        let coeffs = ker.basis.select_rows(&rows);
        Ok(Subspace::span(&(&self.basis * &coeffs)))
    }

    /// Image of this subspace under `map` (`map.cols() == ambient`).
    pub fn image_under(&self, map: &RatMatrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map with {} columns applied to a subspace of Q^{}",
                map.cols(),
                self.ambient
            )));
        }
        Ok(Subspace::span(&(map * &self.basis)))
    }

    /// `{v in self : map v in target}`.
    pub fn preimage_within(&self, map: &RatMatrix, target: &Subspace) -> Result<Subspace> {
        let q = quotient_map(target.ambient_dim(), target)?;
        let composed = &(&q * map) * &self.basis;
        let k = kernel(&composed);
        Ok(Subspace::span(&(&self.basis * k.basis())))
    }
}

/// `{v : M v = 0}`.
pub fn kernel(m: &RatMatrix) -> Subspace {
    let n = m.cols();
    let r = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut vs = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (row, &p) in r.pivots.iter().enumerate() {
            v[p] = -r.matrix[(row, f)].clone();
        }
        vs.push(v);
    }
    Subspace::span_vectors(n, &vs)
}

/// Column space of `M`.
pub fn image(m: &RatMatrix) -> Subspace {
    Subspace::span(m)
}

pub fn intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

pub fn subspace_sum(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.sum(w)
}

/// `true` iff `w ⊆ u`.
pub fn contains(u: &Subspace, w: &Subspace) -> Result<bool> {
    u.contains(w)
}

/// A surjection `Q^ambient -> Q^(ambient - dim U)` whose kernel is exactly `U`.
///
/// Rows are indexed by the non-pivot coordinates of the canonical basis of
/// `U`; on such a coordinate `j` the map is `v_j - sum_r U[j][r] v_{p_r}`.
pub fn quotient_map(ambient: usize, u: &Subspace) -> Result<RatMatrix> {
    if u.ambient_dim() != ambient {
        return Err(Error::DimensionMismatch(format!(
            "subspace of Q^{} quotiented in Q^{ambient}",
            u.ambient_dim()
        )));
    }
    let mut is_pivot = vec![false; ambient];
    for &p in &u.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ambient).filter(|&j| !is_pivot[j]).collect();
    let mut q = RatMatrix::zeros(free.len(), ambient);
    for (row, &j) in free.iter().enumerate() {
        q[(row, j)] = Rat::one();
        for (r, &p) in u.pivots.iter().enumerate() {
            let x = &u.basis[(j, r)];
            if !x.is_zero() {
                q[(row, p)] = -x.clone();
            }
        }
    }
    Ok(q)
}
