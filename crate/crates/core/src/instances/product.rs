//! `X × Y` for a datum `X` and a smooth `Y` with even cohomology only.
//!
//! The intersection pattern is that of `X`; every stratum is multiplied by
//! `Y`. With `Y` concentrated in even degrees the Künneth sign in the cup
//! pairing is trivial, so pairings are Kronecker products.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ratlin::RatMatrix;
use crate::strata::{SemistableDatum, StratumLevel, TransferMaps};

/// Künneth blocks of degree `s`: `(a, b, offset)` with `a + b = s`.
fn blocks(hx: &[usize], hy: &[usize], s: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for a in 0..hx.len() {
        if a > s || s - a >= hy.len() {
            continue;
        }
        let b = s - a;
        let dim = hx[a] * hy[b];
        if dim > 0 {
            out.push((a, b, off));
            off += dim;
        }
    }
    out
}

fn total(hx: &[usize], hy: &[usize], s: usize) -> usize {
    (0..hx.len())
        .filter(|&a| a <= s && s - a < hy.len())
        .map(|a| hx[a] * hy[s - a])
        .sum()
}

fn find(b: &[(usize, usize, usize)], a: usize, bb: usize) -> Option<usize> {
    b.iter().find(|x| x.0 == a && x.1 == bb).map(|x| x.2)
}

pub fn product_with_smooth(x: &SemistableDatum, y: &SemistableDatum) -> Result<SemistableDatum> {
    let yl = match (y.levels.len(), y.levels.get(&1)) {
        (1, Some(l)) if l.components == 1 => l,
        _ => return Err(Error::InvalidInput("second factor must be smooth and connected".into())),
    };
    if yl.cohomology.iter().enumerate().any(|(s, &h)| s % 2 == 1 && h > 0) {
        return Err(Error::InvalidInput("second factor must have even cohomology only".into()));
    }
    let e = y.n;
    let hy = &yl.cohomology;
    let n = x.n + e;
    let mut levels = BTreeMap::new();
    for (&t, xl) in &x.levels {
        let dx = x.stratum_dim(t).unwrap();
        let hx = &xl.cohomology;
        let dd = dx + e;
        let cohomology: Vec<usize> = (0..=2 * dd).map(|s| total(hx, hy, s)).collect();
        let mut pairings = BTreeMap::new();
        let mut lefschetz = BTreeMap::new();
        let mut component_blocks = Vec::new();
        for s in 0..=2 * dd {
            let bs = blocks(hx, hy, s);
            let partner = blocks(hx, hy, 2 * dd - s);
            let mut p = RatMatrix::zeros(cohomology[s], cohomology[2 * dd - s]);
            let mut comp = Vec::new();
            for &(a, b, off) in &bs {
                if let Some(col) = find(&partner, 2 * dx - a, 2 * e - b) {
                    p.set_block(off, col, &x.pairing(t, a).kron(&y.pairing(1, b)));
                }
                for &c in &xl.component_blocks[a] {
                    comp.extend(std::iter::repeat(c).take(hy[b]));
                }
            }
            component_blocks.push(comp);
            if p.rows() > 0 || p.cols() > 0 {
                pairings.insert(s, p);
            }
            if s + 2 <= 2 * dd && cohomology[s] > 0 && cohomology[s + 2] > 0 {
                let up = blocks(hx, hy, s + 2);
                let mut l = RatMatrix::zeros(cohomology[s + 2], cohomology[s]);
                for &(a, b, off) in &bs {
                    let ia = RatMatrix::identity(hx[a]);
                    let ib = RatMatrix::identity(hy[b]);
                    if let Some(row) = find(&up, a + 2, b) {
                        l.add_block(row, off, &x.lefschetz(t, a).kron(&ib));
                    }
                    if let Some(row) = find(&up, a, b + 2) {
                        l.add_block(row, off, &ia.kron(&y.lefschetz(1, b)));
                    }
                }
                lefschetz.insert(s, l);
            }
        }
        levels.insert(
            t,
            StratumLevel {
                level: t,
                components: xl.components,
                cohomology,
                pairings,
                lefschetz,
                component_blocks,
            },
        );
    }

    let h = |t: usize| levels.get(&t).map(|l: &StratumLevel| l.cohomology.clone());
    let hxs = |t: usize| x.levels.get(&t).map(|l| l.cohomology.clone()).unwrap_or_default();
    let mut transfers = TransferMaps::default();
    for (&(t, a), rho) in &x.transfers.restriction {
        let (hs, ht) = (hxs(t), hxs(t + 1));
        for b in (0..hy.len()).filter(|&b| hy[b] > 0) {
            let s = a + b;
            let (src, dst) = (blocks(&hs, hy, s), blocks(&ht, hy, s));
            let (Some(col), Some(row)) = (find(&src, a, b), find(&dst, a, b)) else { continue };
            let m = transfers.restriction.entry((t, s)).or_insert_with(|| {
                RatMatrix::zeros(h(t + 1).map_or(0, |c| c[s]), h(t).map_or(0, |c| c[s]))
            });
            m.add_block(row, col, &rho.kron(&RatMatrix::identity(hy[b])));
        }
    }
    for (&(t, a), tau) in &x.transfers.gysin {
        let (hs, ht) = (hxs(t), hxs(t - 1));
        for b in (0..hy.len()).filter(|&b| hy[b] > 0) {
            let s = a + b;
            let (src, dst) = (blocks(&hs, hy, s), blocks(&ht, hy, s + 2));
            let (Some(col), Some(row)) = (find(&src, a, b), find(&dst, a + 2, b)) else { continue };
            let m = transfers.gysin.entry((t, s)).or_insert_with(|| {
                RatMatrix::zeros(h(t - 1).map_or(0, |c| c[s + 2]), h(t).map_or(0, |c| c[s]))
            });
            m.add_block(row, col, &tau.kron(&RatMatrix::identity(hy[b])));
        }
    }

    let mut out = SemistableDatum {
        n,
        m: x.m,
        levels,
        transfers,
        ample_class: Vec::new(),
    };
    out.ample_class = out.lefschetz(1, 0).apply(&out.unit_class());
    out.check_structure()?;
    Ok(out)
}
