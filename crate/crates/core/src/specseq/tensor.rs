//! Bigraded tensor product of weight complexes.

use std::collections::BTreeMap;

use super::{E1Term, WeightComplex};
use crate::error::{Error, Result};
use crate::ratlin::{Rat, RatMatrix};

/// `Q` placed at `(0, 0)`: the unit for [`tensor_product`].
pub fn point_complex() -> WeightComplex {
    let mut c = super::abstract_complex(0, &[(0, 0, 1)]);
    c.pairings.insert((0, 0), RatMatrix::identity(1));
    c
}

/// Blocks of the product term `(i, j)`: factor positions with their offset.
type Layout = Vec<((i64, i64), (i64, i64), usize)>;

fn layout(p: &WeightComplex, q: &WeightComplex, i: i64, j: i64) -> Layout {
    let mut out = Vec::new();
    let mut off = 0;
    for (&(i1, j1), t1) in &p.terms {
        let key = (i - i1, j - j1);
        if let Some(t2) = q.terms.get(&key) {
            let d = t1.dim * t2.dim;
            if d > 0 {
                out.push(((i1, j1), key, off));
                off += d;
            }
        }
    }
    out
}

/// Block of a product map from the source block `(a, b)` to the target
/// block `(a2, b2)`, if any.
fn find(l: &Layout, a: (i64, i64), b: (i64, i64)) -> Option<usize> {
    l.iter().find(|x| x.0 == a && x.1 == b).map(|x| x.2)
}

/// `d1 = d1 ⊗ 1 + (-1)^{i1} 1 ⊗ d1` and `N = N ⊗ 1 + 1 ⊗ N`, blocks
/// ordered lexicographically by the first factor's `(i, j)`.
///
/// When both factors carry E1 pairings the product carries their Kronecker
/// product; `d1` and `N` stay self-adjoint for it.
pub fn tensor_product(p: &WeightComplex, q: &WeightComplex) -> Result<WeightComplex> {
    let n = p.n + q.n;
    let mut terms = BTreeMap::new();
    let mut layouts = BTreeMap::new();
    for &(i1, j1) in p.terms.keys() {
        for &(i2, j2) in q.terms.keys() {
            let (i, j) = (i1 + i2, j1 + j2);
            if layouts.contains_key(&(i, j)) {
                continue;
            }
            let l = layout(p, q, i, j);
            let dim: usize = l
                .iter()
                .map(|(a, b, _)| p.dim(a.0, a.1) * q.dim(b.0, b.1))
                .sum();
            if dim > 0 {
                terms.insert(
                    (i, j),
                    E1Term {
                        i,
                        j,
                        dim,
                        summands: Vec::new(),
                    },
                );
                layouts.insert((i, j), l);
            }
        }
    }

    let one = Rat::from_integer(1.into());
    let minus = -one.clone();
    let mut d1 = BTreeMap::new();
    let mut nop = BTreeMap::new();
    for (&(i, j), src) in &layouts {
        if let Some(dst) = layouts.get(&(i + 1, j)) {
            let mut m = RatMatrix::zeros(terms[&(i + 1, j)].dim, terms[&(i, j)].dim);
            for &(a, b, col) in src {
                let ia = RatMatrix::identity(p.dim(a.0, a.1));
                let ib = RatMatrix::identity(q.dim(b.0, b.1));
                if let Some(row) = find(dst, (a.0 + 1, a.1), b) {
                    m.add_block(row, col, &p.d1_at(a.0, a.1).kron(&ib));
                }
                if let Some(row) = find(dst, a, (b.0 + 1, b.1)) {
                    let s = if a.0.rem_euclid(2) == 0 { &one } else { &minus };
                    m.add_block(row, col, &ia.kron(&q.d1_at(b.0, b.1)).scale(s));
                }
            }
            d1.insert((i, j), m);
        }
        if let Some(dst) = layouts.get(&(i + 2, j - 2)) {
            let mut m = RatMatrix::zeros(terms[&(i + 2, j - 2)].dim, terms[&(i, j)].dim);
            for &(a, b, col) in src {
                let ia = RatMatrix::identity(p.dim(a.0, a.1));
                let ib = RatMatrix::identity(q.dim(b.0, b.1));
                if let Some(row) = find(dst, (a.0 + 2, a.1 - 2), b) {
                    m.add_block(row, col, &p.n_at(a.0, a.1).kron(&ib));
                }
                if let Some(row) = find(dst, a, (b.0 + 2, b.1 - 2)) {
                    m.add_block(row, col, &ia.kron(&q.n_at(b.0, b.1)));
                }
            }
            nop.insert((i, j), m);
        }
    }

    let mut pairings = BTreeMap::new();
    if !p.pairings.is_empty() && !q.pairings.is_empty() {
        let (n1, n2) = (2 * p.n as i64, 2 * q.n as i64);
        for (&(i, j), src) in &layouts {
            let Some(dual) = layouts.get(&(-i, 2 * n as i64 - j)) else { continue };
            let mut m = RatMatrix::zeros(terms[&(i, j)].dim, terms[&(-i, 2 * n as i64 - j)].dim);
            for &(a, b, row) in src {
                let (da, db) = ((-a.0, n1 - a.1), (-b.0, n2 - b.1));
                let (Some(pa), Some(pb)) = (p.pairings.get(&a), q.pairings.get(&b)) else { continue };
                if let Some(col) = find(dual, da, db) {
                    m.set_block(row, col, &pa.kron(pb));
                }
            }
            pairings.insert((i, j), m);
        }
    }

    let out = WeightComplex {
        n,
        terms,
        d1,
        nop,
        pairings,
    };
    out.check_d_squared()?;
    if let Some((i, j)) = out.first_noncommuting() {
        return Err(Error::Consistency(format!("product N d1 != d1 N at ({i}, {j})")));
    }
    if let Some((r, w)) = out.first_non_iso() {
        return Err(Error::Consistency(format!(
            "product N^{r} not an isomorphism at w = {w}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_is_a_unit() {
        let mut c = super::super::abstract_complex(1, &[(-1, 2, 1), (1, 0, 1)]);
        c.nop.insert((-1, 2), RatMatrix::identity(1));
        let p = tensor_product(&point_complex(), &c).unwrap();
        for (&(i, j), t) in &c.terms {
            assert_eq!(p.dim(i, j), t.dim, "({i}, {j})");
        }
        assert_eq!(p.n, c.n);
    }
}
