use std::collections::BTreeMap;

use serde::Serialize;

use super::WeightComplex;
use crate::error::{Error, Result};
use crate::filtration::{compare_shifted, monodromy_filtration, Filtration, NilpotentOp};
use crate::ratlin::{image, kernel, quotient_map, RatMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Term {
    pub i: i64,
    pub j: i64,
    pub dim: usize,
    /// `E1 dim x dim`: cycles whose classes form a basis of `E2^{i,j}`.
    pub reps: RatMatrix,
    /// `dim x E1 dim`: class coordinates of a cycle.
    pub coords: RatMatrix,
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Page {
    pub n: usize,
    pub terms: BTreeMap<(i64, i64), E2Term>,
    /// Induced `N : E2^{i,j} -> E2^{i+2,j-2}` keyed by source.
    pub nop: BTreeMap<(i64, i64), RatMatrix>,
}

impl E2Page {
    pub fn dim(&self, i: i64, j: i64) -> usize {
        self.terms.get(&(i, j)).map_or(0, |t| t.dim)
    }

    pub fn n_at(&self, i: i64, j: i64) -> RatMatrix {
        self.nop
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim(i + 2, j - 2), self.dim(i, j)))
    }

    /// Induced `N^r : E2^{-r,w+r} -> E2^{r,w-r}`.
    pub fn n_power(&self, r: i64, w: i64) -> RatMatrix {
        let mut out = RatMatrix::identity(self.dim(-r, w + r));
        for step in 0..r {
            out = &self.n_at(-r + 2 * step, w + r - 2 * step) * &out;
        }
        out
    }

    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.terms.iter().map(|(&k, t)| (k, t.dim)).collect()
    }
}

/// `E2^{i,j} = Ker d1^{i,j} / Im d1^{i-1,j}` with explicit representatives.
pub fn build_e2(page: &WeightComplex) -> Result<E2Page> {
    page.check_d_squared()?;
    let mut terms = BTreeMap::new();
    for (&(i, j), t) in &page.terms {
        let cycles = kernel(&page.d1_at(i, j));
        let boundaries = image(&page.d1_at(i - 1, j));
        if !cycles.contains(&boundaries)? {
            return Err(Error::Consistency(format!("Im d1 not in Ker d1 at ({i}, {j})")));
        }
        let q = quotient_map(t.dim, &boundaries)?;
        let mut chosen: Vec<Vec<crate::ratlin::Rat>> = Vec::new();
        let mut images = RatMatrix::zeros(q.rows(), 0);
        for z in cycles.basis_vectors() {
            let qz = RatMatrix::column_vector(&q.apply(&z));
            let cand = images.hstack(&qz);
            if cand.rank() > images.cols() {
                images = cand;
                chosen.push(z);
            }
        }
        let dim = chosen.len();
        let reps = RatMatrix::from_columns(t.dim, &chosen);
        let coords = if dim == 0 {
            RatMatrix::zeros(0, t.dim)
        } else {
            &images.left_inverse()? * &q
        };
        terms.insert(
            (i, j),
            E2Term {
                i,
                j,
                dim,
                reps,
                coords,
                cycles,
                boundaries,
            },
        );
    }
    let mut nop = BTreeMap::new();
    for (&(i, j), src) in &terms {
        let Some(dst) = terms.get(&(i + 2, j - 2)) else { continue };
        let n1 = page.n_at(i, j);
        let maps_cycles = dst.cycles.contains(&src.cycles.image_under(&n1)?)?;
        let maps_bounds = dst.boundaries.contains(&src.boundaries.image_under(&n1)?)?;
        if !maps_cycles || !maps_bounds {
            return Err(Error::Consistency(format!(
                "N does not descend to E2 at ({i}, {j})"
            )));
        }
        nop.insert((i, j), &(&dst.coords * &n1) * &src.reps);
    }
    Ok(E2Page {
        n: page.n,
        terms,
        nop,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WmcEntry {
    pub r: i64,
    pub w: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WmcVerdict {
    pub entries: Vec<WmcEntry>,
    pub overall: bool,
}

impl WmcVerdict {
    /// Conjunction of the entries with abutment degree `w`.
    pub fn holds_at(&self, w: i64) -> bool {
        self.entries.iter().filter(|e| e.w == w).all(|e| e.iso)
    }
}

/// `N^r : E2^{-r,w+r} -> E2^{r,w-r}` for every `r` in `[0, n]` and `w` in
/// `[0, 2n]`; `r = 0` is the identity.
pub fn check_wmc(e2: &E2Page) -> WmcVerdict {
    let n = e2.n as i64;
    let mut entries = Vec::new();
    for w in 0..=2 * n {
        for r in 0..=n {
            let m = e2.n_power(r, w);
            let (source_dim, target_dim) = (e2.dim(-r, w + r), e2.dim(r, w - r));
            let rank = m.rank();
            entries.push(WmcEntry {
                r,
                w,
                source_dim,
                target_dim,
                rank,
                iso: source_dim == target_dim && rank == source_dim,
            });
        }
    }
    let overall = entries.iter().all(|e| e.iso);
    WmcVerdict { entries, overall }
}

/// Blocks `E2^{i,j}` with `i + j = w`, by increasing `j`.
fn graded_blocks(e2: &E2Page, w: i64) -> Vec<((i64, i64), usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for j in 0..=2 * e2.n as i64 {
        let d = e2.dim(w - j, j);
        if d > 0 {
            out.push(((w - j, j), off, d));
            off += d;
        }
    }
    out
}

/// `W_a = ⊕_{j <= a} E2^{w-j,j}` on `V_w`, centred at `w`.
pub fn weight_filtration_graded(e2: &E2Page, w: i64) -> Filtration {
    let blocks = graded_blocks(e2, w);
    let total: usize = blocks.iter().map(|b| b.2).sum();
    let mut steps = Vec::new();
    let mut upto = 0;
    for &((_, j), _, d) in &blocks {
        upto += d;
        let idx: Vec<usize> = (0..upto).collect();
        steps.push((j, Subspace::coordinate(total, &idx)));
    }
    if steps.is_empty() {
        return Filtration::trivial(0, w, w);
    }
    Filtration::from_steps(total, w, steps).expect("increasing coordinate flags")
}

/// Block `N` on `V_w = ⊕_{i+j=w} E2^{i,j}`, in the order of
/// [`weight_filtration_graded`].
pub fn graded_operator(e2: &E2Page, w: i64) -> RatMatrix {
    let blocks = graded_blocks(e2, w);
    let total: usize = blocks.iter().map(|b| b.2).sum();
    let mut m = RatMatrix::zeros(total, total);
    for &((i, j), col, _) in &blocks {
        if let Some(&(_, row, _)) = blocks.iter().find(|b| b.0 == (i + 2, j - 2)) {
            m.set_block(row, col, &e2.n_at(i, j));
        }
    }
    m
}

/// `M_k = W_{w+k}` on `V_w`, with `M` the monodromy filtration of the
/// block operator centred at 0.
pub fn compare_monodromy_vs_weight(e2: &E2Page, w: i64) -> Result<bool> {
    let op = NilpotentOp::new(graded_operator(e2, w))?;
    let m = monodromy_filtration(&op, 0);
    let wf = weight_filtration_graded(e2, w);
    compare_shifted(&m, &wf, w)
}
