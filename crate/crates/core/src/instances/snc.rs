//! Assembly of a datum from the pieces of a simple normal crossing divisor.
//!
//! A piece is one connected component of some `X_I = ∩_{i in I} X_i`. A face
//! is the restriction from a piece over `I \ {i_p}` to a piece over `I`;
//! the Čech sign `(-1)^p` is applied here, so face matrices are plain
//! pullbacks. Gysin maps are the pairing adjoints of the restrictions.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ratlin::{Rat, RatMatrix};
use crate::strata::{gysin_from_restriction, SemistableDatum, StratumLevel, TransferMaps};

#[derive(Clone, Debug)]
pub struct Piece {
    /// Sorted component indices.
    pub subset: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub pairings: BTreeMap<usize, RatMatrix>,
    pub lefschetz: BTreeMap<usize, RatMatrix>,
}

#[derive(Clone, Debug)]
struct Face {
    from: usize,
    to: usize,
    degree: usize,
    matrix: RatMatrix,
}

#[derive(Clone, Debug)]
pub struct SncBuilder {
    n: usize,
    pieces: Vec<Piece>,
    faces: Vec<Face>,
    ample: Option<Vec<Rat>>,
}

impl SncBuilder {
    pub fn new(n: usize) -> Self {
        SncBuilder {
            n,
            pieces: Vec::new(),
            faces: Vec::new(),
            ample: None,
        }
    }

    /// Adds a piece and returns its id.
    pub fn piece(&mut self, piece: Piece) -> usize {
        self.pieces.push(piece);
        self.pieces.len() - 1
    }

    /// Pullback `H^degree(from) -> H^degree(to)`.
    pub fn face(&mut self, from: usize, to: usize, degree: usize, matrix: RatMatrix) -> &mut Self {
        self.faces.push(Face {
            from,
            to,
            degree,
            matrix,
        });
        self
    }

    /// Overrides the ample class; by default it is `L(1)` on level 1.
    pub fn ample(&mut self, class: Vec<Rat>) -> &mut Self {
        self.ample = Some(class);
        self
    }

    pub fn build(&self) -> Result<SemistableDatum> {
        let n = self.n;
        // level -> piece ids in insertion order
        let mut by_level: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (id, p) in self.pieces.iter().enumerate() {
            let t = p.subset.len();
            if t == 0 || t > n + 1 {
                return Err(Error::InvalidInput(format!("piece {id} has {t} components")));
            }
            if p.subset.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("piece {id}: subset not sorted")));
            }
            let d = n + 1 - t;
            if p.cohomology.len() != 2 * d + 1 {
                return Err(Error::InvalidInput(format!(
                    "piece {id}: {} degrees for dimension {d}",
                    p.cohomology.len()
                )));
            }
            by_level.entry(t).or_default().push(id);
        }
        // offset of each piece in its level, per degree
        let mut offset: Vec<Vec<usize>> = vec![Vec::new(); self.pieces.len()];
        let mut levels = BTreeMap::new();
        for (&t, ids) in &by_level {
            let d = n + 1 - t;
            let mut cohomology = vec![0; 2 * d + 1];
            let mut component_blocks = vec![Vec::new(); 2 * d + 1];
            for (c, &id) in ids.iter().enumerate() {
                let p = &self.pieces[id];
                offset[id] = cohomology.clone();
                for s in 0..=2 * d {
                    cohomology[s] += p.cohomology[s];
                    component_blocks[s].extend(std::iter::repeat(c).take(p.cohomology[s]));
                }
            }
            let mut pairings = BTreeMap::new();
            let mut lefschetz = BTreeMap::new();
            for s in 0..=2 * d {
                let mut pm = RatMatrix::zeros(cohomology[s], cohomology[2 * d - s]);
                let mut lm = RatMatrix::zeros(
                    cohomology.get(s + 2).copied().unwrap_or(0),
                    cohomology[s],
                );
                for &id in ids {
                    let p = &self.pieces[id];
                    let (hs, hd) = (p.cohomology[s], p.cohomology[2 * d - s]);
                    if hs > 0 || hd > 0 {
                        let block = p.pairings.get(&s).ok_or_else(|| {
                            Error::InvalidInput(format!("piece {id}: no pairing in degree {s}"))
                        })?;
                        if block.shape() != (hs, hd) {
                            return Err(Error::InvalidInput(format!(
                                "piece {id}: pairing in degree {s} has the wrong shape"
                            )));
                        }
                        pm.set_block(offset[id][s], offset[id][2 * d - s], block);
                    }
                    if s + 2 <= 2 * d && p.cohomology[s] > 0 && p.cohomology[s + 2] > 0 {
                        let block = p.lefschetz.get(&s).ok_or_else(|| {
                            Error::InvalidInput(format!("piece {id}: no L in degree {s}"))
                        })?;
                        if block.shape() != (p.cohomology[s + 2], p.cohomology[s]) {
                            return Err(Error::InvalidInput(format!(
                                "piece {id}: L in degree {s} has the wrong shape"
                            )));
                        }
                        lm.set_block(offset[id][s + 2], offset[id][s], block);
                    }
                }
                if pm.rows() > 0 || pm.cols() > 0 {
                    pairings.insert(s, pm);
                }
                if s + 2 <= 2 * d && lm.rows() > 0 && lm.cols() > 0 {
                    lefschetz.insert(s, lm);
                }
            }
            levels.insert(
                t,
                StratumLevel {
                    level: t,
                    components: ids.len(),
                    cohomology,
                    pairings,
                    lefschetz,
                    component_blocks,
                },
            );
        }
        let h = |t: usize, s: usize| levels.get(&t).map_or(0, |l: &StratumLevel| l.h(s));

        let mut restriction: BTreeMap<(usize, usize), RatMatrix> = BTreeMap::new();
        for f in &self.faces {
            let (a, b) = (&self.pieces[f.from], &self.pieces[f.to]);
            if b.subset.len() != a.subset.len() + 1 || !a.subset.iter().all(|x| b.subset.contains(x)) {
                return Err(Error::InvalidInput(format!(
                    "face {} -> {} is not a codimension-one inclusion",
                    f.from, f.to
                )));
            }
            let p = b.subset.iter().position(|x| !a.subset.contains(x)).unwrap();
            let t = a.subset.len();
            let s = f.degree;
            if f.matrix.shape() != (b.cohomology.get(s).copied().unwrap_or(0), a.cohomology.get(s).copied().unwrap_or(0)) {
                return Err(Error::InvalidInput(format!(
                    "face {} -> {} in degree {s} has the wrong shape",
                    f.from, f.to
                )));
            }
            let m = restriction
                .entry((t, s))
                .or_insert_with(|| RatMatrix::zeros(h(t + 1, s), h(t, s)));
            let signed = if p % 2 == 0 { f.matrix.clone() } else { -&f.matrix };
            m.add_block(offset[f.to][s], offset[f.from][s], &signed);
        }
        restriction.retain(|_, m| m.rows() > 0 && m.cols() > 0);

        let mut gysin = BTreeMap::new();
        for (&t, _) in levels.range(2..) {
            if !levels.contains_key(&(t - 1)) {
                continue;
            }
            let e = 2 * (n + 1 - t);
            let pair = |t: usize, s: usize| levels[&t].pairings.get(&s).cloned();
            for s in 0..=e {
                let src = h(t, e - s);
                let dst = h(t - 1, e - s + 2);
                if src == 0 || dst == 0 {
                    continue;
                }
                let rho = restriction
                    .get(&(t - 1, s))
                    .cloned()
                    .unwrap_or_else(|| RatMatrix::zeros(h(t, s), h(t - 1, s)));
                let (Some(p_low), Some(p_high)) = (pair(t - 1, s), pair(t, s)) else {
                    return Err(Error::InvalidInput(format!(
                        "missing pairing for the adjoint at level {t}, degree {s}"
                    )));
                };
                let tau = gysin_from_restriction(&rho, &p_low, &p_high)?;
                gysin.insert((t, e - s), tau);
            }
        }

        let mut datum = SemistableDatum {
            n,
            m: by_level.get(&1).map_or(0, |v| v.len()),
            levels,
            transfers: TransferMaps { restriction, gysin },
            ample_class: Vec::new(),
        };
        datum.ample_class = match &self.ample {
            Some(a) => a.clone(),
            None => datum.lefschetz(1, 0).apply(&datum.unit_class()),
        };
        datum.check_structure()?;
        Ok(datum)
    }
}
