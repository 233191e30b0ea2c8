//! Nilpotent operators, monodromy filtrations and comparison of
//! filtrations up to shift.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlin::{format_rat, kernel, quotient_map, RatMatrix, Subspace};

/// A nilpotent endomorphism together with its nilpotency index `e`
/// (smallest `e` with `N^e = 0`; `e = 1` for the zero map, `e = 0` only
/// on the zero space).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOp {
    matrix: RatMatrix,
    index: usize,
}

impl NilpotentOp {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidOperator(format!(
                "{}x{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let d = matrix.rows();
        if d == 0 {
            return Ok(NilpotentOp { matrix, index: 0 });
        }
        let mut power = matrix.clone();
        let mut e = 1;
        while !power.is_zero() {
            if e >= d {
                return Err(Error::InvalidOperator("matrix is not nilpotent".into()));
            }
            power = &matrix * &power;
            e += 1;
        }
        Ok(NilpotentOp { matrix, index: e })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn nilpotency_index(&self) -> usize {
        self.index
    }
}

/// Increasing filtration of `Q^ambient_dim`, stored by its jumps.
///
/// `steps` holds the zero sentinel at the lowest index and then one entry
/// per index where the subspace grows; the last entry is the full space.
/// Lookups between stored indices resolve to the nearest lower step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    ambient: usize,
    center: i64,
    steps: BTreeMap<i64, Subspace>,
}

impl Filtration {
    /// Builds from an increasing sequence `(index, subspace)` with strictly
    /// increasing indices, starting at the zero subspace and ending at the
    /// full space. Repeated steps are collapsed.
    pub fn from_steps(ambient: usize, center: i64, seq: Vec<(i64, Subspace)>) -> Result<Self> {
        let mut steps = BTreeMap::new();
        let mut prev: Option<(i64, Subspace)> = None;
        for (i, s) in seq {
            if s.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "step {i} lives in Q^{}, filtration in Q^{ambient}",
                    s.ambient_dim()
                )));
            }
            match &prev {
                None => {
                    if !s.is_zero() {
                        // insert the sentinel just below the first step
                        steps.insert(i - 1, Subspace::zero(ambient));
                    }
                    steps.insert(i, s.clone());
                }
                Some((pi, ps)) => {
                    if i <= *pi {
                        return Err(Error::InvalidInput("step indices must increase".into()));
                    }
                    if !s.contains(ps)? {
                        return Err(Error::InvalidInput(format!(
                            "filtration is not increasing at index {i}"
                        )));
                    }
                    if s != *ps {
                        steps.insert(i, s.clone());
                    }
                }
            }
            prev = Some((i, s));
        }
        match prev {
            None => {
                steps.insert(center - 1, Subspace::zero(ambient));
                steps.insert(center, Subspace::full(ambient));
            }
            Some((i, s)) if !s.is_full() => {
                steps.insert(i + 1, Subspace::full(ambient));
            }
            _ => {}
        }
        Ok(Filtration {
            ambient,
            center,
            steps,
        })
    }

    /// `{0} ⊂ V` with the jump at `index`.
    pub fn trivial(ambient: usize, center: i64, index: i64) -> Self {
        Filtration::from_steps(
            ambient,
            center,
            vec![(index - 1, Subspace::zero(ambient)), (index, Subspace::full(ambient))],
        )
        .expect("trivial filtration")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn center(&self) -> i64 {
        self.center
    }

    pub fn steps(&self) -> impl Iterator<Item = (i64, &Subspace)> {
        self.steps.iter().map(|(i, s)| (*i, s))
    }

    /// Lowest stored index (the zero sentinel).
    pub fn lowest(&self) -> i64 {
        *self.steps.keys().next().expect("nonempty filtration")
    }

    /// Index at which the filtration reaches the full space.
    pub fn highest(&self) -> i64 {
        *self.steps.keys().next_back().expect("nonempty filtration")
    }

    pub fn at(&self, index: i64) -> Subspace {
        match self.steps.range(..=index).next_back() {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.ambient),
        }
    }

    pub fn graded_dim(&self, index: i64) -> usize {
        self.at(index).dim() - self.at(index - 1).dim()
    }

    /// Re-indexes every step by `shift`.
    pub fn shifted(&self, shift: i64) -> Filtration {
        Filtration {
            ambient: self.ambient,
            center: self.center + shift,
            steps: self.steps.iter().map(|(i, s)| (i + shift, s.clone())).collect(),
        }
    }

    /// Applies an invertible change of basis to every step.
    pub fn transformed(&self, t: &RatMatrix) -> Result<Filtration> {
        let steps = self
            .steps
            .iter()
            .map(|(i, s)| Ok((*i, s.image_under(t)?)))
            .collect::<Result<_>>()?;
        Ok(Filtration {
            ambient: self.ambient,
            center: self.center,
            steps,
        })
    }

    pub fn to_json(&self) -> Vec<FiltrationStepJson> {
        self.steps
            .iter()
            .map(|(i, s)| FiltrationStepJson {
                index: *i,
                basis: s
                    .basis_vectors()
                    .iter()
                    .map(|v| v.iter().map(format_rat).collect())
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FiltrationStepJson {
    pub index: i64,
    pub basis: Vec<Vec<String>>,
}

/// The monodromy filtration of `n` centred at `center`:
/// `M_{center+k} = Σ_{i-j=k, i,j>=0} (Ker N^{i+1} ∩ Im N^j)`.
pub fn monodromy_filtration(n: &NilpotentOp, center: i64) -> Filtration {
    let d = n.dim();
    let e = n.nilpotency_index();
    if e <= 1 {
        return Filtration::trivial(d, center, center);
    }
    // kernels[i] = Ker N^{i+1}, images[j] = Im N^j
    let mut kernels = Vec::with_capacity(e);
    let mut images = Vec::with_capacity(e);
    let mut power = RatMatrix::identity(d);
    for _ in 0..e {
        images.push(Subspace::span(&power));
        power = n.matrix() * &power;
        kernels.push(kernel(&power));
    }
    let e = e as i64;
    let mut seq = Vec::new();
    for k in -e..e {
        let mut acc = Subspace::zero(d);
        for j in 0..e {
            let i = j + k;
            if i < 0 || i >= e {
                continue;
            }
            let piece = kernels[i as usize]
                .intersect(&images[j as usize])
                .expect("same ambient");
            acc = acc.sum(&piece).expect("same ambient");
        }
        seq.push((center + k, acc));
    }
    Filtration::from_steps(d, center, seq).expect("monodromy filtration is increasing")
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ShiftCheck {
    pub index: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GradedIsoCheck {
    pub r: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub holds: bool,
}

/// Outcome of checking `N M_i ⊆ M_{i-2}` for every index and
/// `N^r : Gr_{c+r} ≅ Gr_{c-r}` for every `r >= 0`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MonodromyAxiomReport {
    pub lowers_by_two: Vec<ShiftCheck>,
    pub graded_isos: Vec<GradedIsoCheck>,
}

impl MonodromyAxiomReport {
    pub fn passes(&self) -> bool {
        self.lowers_by_two.iter().all(|c| c.holds) && self.graded_isos.iter().all(|c| c.holds)
    }
}

pub fn verify_monodromy_axioms(n: &NilpotentOp, f: &Filtration) -> Result<MonodromyAxiomReport> {
    if n.dim() != f.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator on Q^{} and filtration of Q^{}",
            n.dim(),
            f.ambient_dim()
        )));
    }
    let c = f.center();
    let lo = f.lowest();
    let hi = f.highest();
    let mut lowers_by_two = Vec::new();
    for i in lo..=hi + 2 {
        let holds = f.at(i - 2).contains(&f.at(i).image_under(n.matrix())?)?;
        lowers_by_two.push(ShiftCheck { index: i, holds });
    }
    let reach = (hi - c).max(c - lo).max(0);
    let mut graded_isos = Vec::new();
    for r in 0..=reach {
        let source = f.at(c + r);
        let target_floor = f.at(c - r - 1);
        let source_dim = f.graded_dim(c + r);
        let target_dim = f.graded_dim(c - r);
        let q = quotient_map(f.ambient_dim(), &target_floor)?;
        let nr = n.matrix().pow(r as usize);
        let rank = (&(&q * &nr) * source.basis()).rank();
        // rank of the induced map on Gr_{c+r}: M_{c+r-1} lands in
        // M_{c-r-1} whenever the first axiom holds
        let rank = rank.saturating_sub(
            (&(&q * &nr) * f.at(c + r - 1).basis()).rank(),
        );
        graded_isos.push(GradedIsoCheck {
            r,
            source_dim,
            target_dim,
            rank,
            holds: source_dim == target_dim && rank == source_dim,
        });
    }
    Ok(MonodromyAxiomReport {
        lowers_by_two,
        graded_isos,
    })
}

/// `true` iff `M_i = W_{w+i}` for every index `i`.
pub fn compare_shifted(m: &Filtration, w: &Filtration, shift: i64) -> Result<bool> {
    if m.ambient_dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "filtrations of Q^{} and Q^{}",
            m.ambient_dim(),
            w.ambient_dim()
        )));
    }
    let lo = m.lowest().min(w.lowest() - shift);
    let hi = m.highest().max(w.highest() - shift);
    Ok((lo..=hi).all(|i| m.at(i) == w.at(shift + i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    fn jordan(size: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(size, size);
        for i in 0..size.saturating_sub(1) {
            m[(i, i + 1)] = rat(1);
        }
        m
    }

    #[test]
    fn zero_operator_gives_trivial_filtration() {
        let n = NilpotentOp::new(RatMatrix::zeros(3, 3)).unwrap();
        assert_eq!(n.nilpotency_index(), 1);
        let m = monodromy_filtration(&n, 0);
        assert!(m.at(-1).is_zero());
        assert!(m.at(0).is_full());
        assert!(verify_monodromy_axioms(&n, &m).unwrap().passes());
    }

    #[test]
    fn jordan_two_block() {
        let n = NilpotentOp::new(jordan(2)).unwrap();
        let m = monodromy_filtration(&n, 0);
        let im = Subspace::span(n.matrix());
        assert!(m.at(-2).is_zero());
        assert_eq!(m.at(-1), im);
        assert_eq!(m.at(0), im);
        assert!(m.at(1).is_full());
        assert!(verify_monodromy_axioms(&n, &m).unwrap().passes());
    }

    #[test]
    fn jordan_three_block() {
        let n = NilpotentOp::new(jordan(3)).unwrap();
        let m = monodromy_filtration(&n, 0);
        let dims: Vec<usize> = (-3..=2).map(|i| m.at(i).dim()).collect();
        assert_eq!(dims, vec![0, 1, 1, 2, 2, 3]);
        let gr: Vec<usize> = (-2..=2).map(|i| m.graded_dim(i)).collect();
        assert_eq!(gr, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn trivial_filtration_fails_for_jordan_block() {
        let n = NilpotentOp::new(jordan(2)).unwrap();
        let f = Filtration::trivial(2, 0, 0);
        let report = verify_monodromy_axioms(&n, &f).unwrap();
        assert!(!report.passes());
        // N M_0 = Im N is not inside M_{-2} = 0
        assert!(!report.lowers_by_two.iter().find(|c| c.index == 0).unwrap().holds);
    }

    #[test]
    fn rejects_non_nilpotent() {
        assert!(matches!(
            NilpotentOp::new(RatMatrix::identity(2)),
            Err(Error::InvalidOperator(_))
        ));
        assert!(NilpotentOp::new(RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn compare_shifted_examples() {
        let a = Filtration::trivial(2, 0, 0);
        assert!(compare_shifted(&a, &a, 0).unwrap());
        let w = a.shifted(3);
        assert!(compare_shifted(&a, &w, 3).unwrap());
        // M jumps at -1, W jumps at w rather than w - 1
        let m = Filtration::trivial(1, 0, -1);
        let w = Filtration::trivial(1, 3, 3);
        assert!(!compare_shifted(&m, &w, 3).unwrap());
        assert!(compare_shifted(&m, &Filtration::trivial(2, 0, 0), 0).is_err());
    }

    #[test]
    fn lookups_between_jumps() {
        let n = NilpotentOp::new(jordan(3)).unwrap();
        let m = monodromy_filtration(&n, 5);
        assert!(m.at(-100).is_zero());
        assert!(m.at(100).is_full());
        assert_eq!(m.at(3), m.at(4));
        assert_eq!(m.to_json().first().unwrap().basis.len(), 0);
    }
}
