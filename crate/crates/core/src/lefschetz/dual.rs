//! A three-term complex with a nondegenerate pairing on its middle term,
//! compared with its dual through that pairing.
//!
//! For `<x, y> = xᵀ P y` on `V2`, a functional `φ` on `V2` is identified
//! with `P^{-T} φ`. Hence `g* = P^{-T} gᵀ : V3* -> V2` and
//! `f* = fᵀ Pᵀ : V2 -> V1*`; `Im g*` is the left orthogonal of `Ker g` and
//! `Ker f*` the right orthogonal of `Im f`.

use rand::Rng;
use serde::Serialize;

use super::quotient::Quotient;
use crate::error::{Error, Result};
use crate::ratlin::{format_rat, image, kernel, rat, Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTriple {
    /// `V1 -> V2`.
    pub f: RatMatrix,
    /// `V2 -> V3`.
    pub g: RatMatrix,
    /// Nondegenerate form on `V2`.
    pub pairing: RatMatrix,
}

impl DualTriple {
    pub fn new(f: RatMatrix, g: RatMatrix, pairing: RatMatrix) -> Result<Self> {
        let v2 = pairing.rows();
        if !pairing.is_square() || f.rows() != v2 || g.cols() != v2 {
            return Err(Error::DimensionMismatch(format!(
                "f is {}x{}, g is {}x{}, pairing is {}x{}",
                f.rows(),
                f.cols(),
                g.rows(),
                g.cols(),
                pairing.rows(),
                pairing.cols()
            )));
        }
        if pairing.rank() != v2 {
            return Err(Error::InvalidInput("pairing on V2 is degenerate".into()));
        }
        if !(&g * &f).is_zero() {
            return Err(Error::InvalidComplex("g o f != 0".into()));
        }
        Ok(DualTriple { f, g, pairing })
    }

    pub fn g_star(&self) -> Result<RatMatrix> {
        Ok(&self.pairing.transpose().inverse()? * &self.g.transpose())
    }

    pub fn f_star(&self) -> RatMatrix {
        &self.f.transpose() * &self.pairing.transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualComplexReport {
    /// `Im f ⊆ Im g*`.
    pub hypothesis: bool,
    pub dim_cohomology: usize,
    pub dim_dual_cohomology: usize,
    /// Rank of the induced map; `None` when the hypothesis fails.
    pub rank: Option<usize>,
    pub iso: bool,
    /// `Ker g ∩ Im g* ⊆ Im f`.
    pub criterion: bool,
    /// A vector of `(Ker g ∩ Im g*) \ Im f`.
    pub witness: Option<Vec<String>>,
}

/// Compares `Ker g / Im f` with `Ker f* / Im g*` through the identity of `V2`.
///
/// Fails with a consistency error if the hypothesis holds and the induced
/// map is an isomorphism exactly when the criterion fails.
pub fn lemma_dual_complex(t: &DualTriple) -> Result<DualComplexReport> {
    let n = t.pairing.rows();
    let im_f = image(&t.f);
    let ker_g = kernel(&t.g);
    let im_gs = image(&t.g_star()?);
    let ker_fs = kernel(&t.f_star());
    let hypothesis = im_gs.contains(&im_f)?;
    let dim_cohomology = ker_g.dim() - im_f.dim();
    let dim_dual_cohomology = ker_fs.dim() - im_gs.dim();

    let meet = ker_g.intersect(&im_gs)?;
    let criterion = im_f.contains(&meet)?;
    let witness = meet
        .basis_vectors()
        .into_iter()
        .find(|v| !im_f.contains_vector(v))
        .map(|v| v.iter().map(format_rat).collect());

    let (rank, iso) = if hypothesis {
        let src = Quotient::new(ker_g, im_f)?;
        let dst = Quotient::new(ker_fs, im_gs)?;
        let m = src
            .induced(&RatMatrix::identity(n), &dst)?
            .ok_or_else(|| Error::Consistency("identity of V2 does not descend".into()))?;
        let r = m.rank();
        let iso = r == src.dim() && r == dst.dim();
        if iso != criterion {
            return Err(Error::Consistency(format!(
                "induced map iso = {iso} but criterion = {criterion}"
            )));
        }
        (Some(r), iso)
    } else {
        (None, false)
    };
    Ok(DualComplexReport {
        hypothesis,
        dim_cohomology,
        dim_dual_cohomology,
        rank,
        iso,
        criterion,
        witness,
    })
}

fn small(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-2..=2))
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RatMatrix {
    let data = (0..rows * cols).map(|_| small(rng)).collect();
    RatMatrix::from_vec(rows, cols, data).expect("shape")
}

/// A random triple with `g o f = 0` and `Im f ⊆ Im g*`, all dimensions at
/// most `max_dim`.
///
/// `Im f` is drawn inside `Ker g ∩ Im g*`: half of the time it is all of it,
/// otherwise a random span of part of it, so both outcomes of the criterion
/// occur.
pub fn random_dual_triple(rng: &mut impl Rng, max_dim: usize) -> DualTriple {
    let v2 = rng.gen_range(1..=max_dim.max(1));
    let v1 = rng.gen_range(0..=max_dim);
    let v3 = rng.gen_range(0..=max_dim);
    let pairing = loop {
        let p = random_matrix(rng, v2, v2);
        if p.rank() == v2 {
            break p;
        }
    };
    let g = random_matrix(rng, v3, v2);
    let ker_g = kernel(&g);
    let im_gs = image(&(&pairing.transpose().inverse().expect("invertible") * &g.transpose()));
    let meet = ker_g.intersect(&im_gs).expect("same ambient");
    let basis = meet.basis().clone();
    let full = rng.gen_bool(0.5);
    let mut f = RatMatrix::zeros(v2, v1);
    if basis.cols() > 0 && v1 > 0 {
        let keep = if full { basis.cols() } else { rng.gen_range(0..basis.cols()) };
        let coeffs = random_matrix(rng, keep, v1);
        let cols: Vec<usize> = (0..keep).collect();
        f = &basis.select_columns(&cols) * &coeffs;
    }
    DualTriple::new(f, g, pairing).expect("constructed valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_middle_line() {
        let t = DualTriple::new(
            RatMatrix::zeros(1, 0),
            RatMatrix::zeros(0, 1),
            RatMatrix::identity(1),
        )
        .unwrap();
        let r = lemma_dual_complex(&t).unwrap();
        assert!(r.hypothesis && r.iso && r.criterion);
        assert_eq!((r.dim_cohomology, r.dim_dual_cohomology), (1, 1));
    }

    #[test]
    fn hyperbolic_projection_is_not_iso() {
        let t = DualTriple::new(
            RatMatrix::zeros(2, 0),
            RatMatrix::from_i64(&[&[1, 0]]),
            RatMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        )
        .unwrap();
        // g*(1) = e2
        assert_eq!(t.g_star().unwrap(), RatMatrix::from_i64(&[&[0], &[1]]));
        let r = lemma_dual_complex(&t).unwrap();
        assert!(r.hypothesis);
        assert!(!r.iso && !r.criterion);
        assert_eq!(r.rank, Some(0));
        assert_eq!((r.dim_cohomology, r.dim_dual_cohomology), (1, 1));
        assert_eq!(r.witness, Some(vec!["0".to_string(), "1".to_string()]));
    }

    #[test]
    fn rejects_bad_input() {
        let degenerate = DualTriple::new(
            RatMatrix::zeros(2, 0),
            RatMatrix::zeros(0, 2),
            RatMatrix::from_i64(&[&[1, 1], &[1, 1]]),
        );
        assert!(matches!(degenerate, Err(Error::InvalidInput(_))));
        let not_complex = DualTriple::new(
            RatMatrix::identity(1),
            RatMatrix::identity(1),
            RatMatrix::identity(1),
        );
        assert!(matches!(not_complex, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn random_triples_meet_hypothesis() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = [false; 2];
        for _ in 0..60 {
            let t = random_dual_triple(&mut rng, 6);
            let r = lemma_dual_complex(&t).unwrap();
            assert!(r.hypothesis);
            seen[r.iso as usize] = true;
        }
        assert_eq!(seen, [true, true]);
    }
}
