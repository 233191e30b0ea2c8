//! Hand-audited instances.
//!
//! `normal_cone` is the degeneration of a threefold into `X1 = P^1 x P^2`
//! and `X2 = P_S(O + O(f2))` glued along `S = P^1 x P^1`, embedded in `X1`
//! as `P^1 x line` and in `X2` as the negative section. Bases:
//! `H^2(X1) = (x, y)`, `H^4(X1) = (xy, y^2)`; `H^2(X2) = (f1, f2, σ)`,
//! `H^4(X2) = (f1 f2, σ f1, σ f2)`; `H^2(S) = (f1, f2)`. The ample class is
//! `x + y` on `X1` and `f1 + 2 f2 + σ` on `X2`; both restrict to `f1 + f2`.
//!
//! `triangle_surface` is three copies of `F1 = Bl_pt P^2` meeting pairwise
//! along lines and in one triple point. On each copy the two double curves
//! are `e` and `h - e`, so the triple point formula holds on every line.
//! Its product with `P^1` is the one toy where `Im τ_0` meets primitive
//! `H^2`: on `F1 x P^1` the class `2e - h` is primitive.

use std::collections::BTreeMap;

use super::{gen_ngon, gen_smooth, product_with_smooth, Piece, SncBuilder};
use crate::error::Result;
use crate::ratlin::RatMatrix;
use crate::strata::SemistableDatum;

pub const TOY_NAMES: [&str; 4] = ["ngon3_x_p1p1", "normal_cone", "ngon4_x_p2", "triangle_x_p1"];

fn m(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(rows)
}

fn threefold_piece(
    subset: Vec<usize>,
    h2: usize,
    p2: RatMatrix,
    l0: RatMatrix,
    l2: RatMatrix,
    l4: RatMatrix,
) -> Piece {
    Piece {
        subset,
        cohomology: vec![1, 0, h2, 0, h2, 0, 1],
        pairings: BTreeMap::from([
            (0, m(&[&[1]])),
            (2, p2.clone()),
            (4, p2.transpose()),
            (6, m(&[&[1]])),
        ]),
        lefschetz: BTreeMap::from([(0, l0), (2, l2), (4, l4)]),
    }
}

fn surface_piece(subset: Vec<usize>, p2: RatMatrix, l0: RatMatrix, l2: RatMatrix) -> Piece {
    let h2 = p2.rows();
    Piece {
        subset,
        cohomology: vec![1, 0, h2, 0, 1],
        pairings: BTreeMap::from([(0, m(&[&[1]])), (2, p2), (4, m(&[&[1]]))]),
        lefschetz: BTreeMap::from([(0, l0), (2, l2)]),
    }
}

pub fn normal_cone() -> Result<SemistableDatum> {
    let mut b = SncBuilder::new(3);
    let x1 = b.piece(threefold_piece(
        vec![0],
        2,
        m(&[&[0, 1], &[1, 0]]),
        m(&[&[1], &[1]]),
        m(&[&[1, 1], &[0, 1]]),
        m(&[&[1, 1]]),
    ));
    let x2 = b.piece(threefold_piece(
        vec![1],
        3,
        m(&[&[0, 0, 1], &[0, 1, 0], &[1, -1, 0]]),
        m(&[&[1], &[2], &[1]]),
        m(&[&[2, 1, 0], &[1, 0, 1], &[0, 1, 1]]),
        m(&[&[1, 1, 1]]),
    ));
    let s = b.piece(surface_piece(
        vec![0, 1],
        m(&[&[0, 1], &[1, 0]]),
        m(&[&[1], &[1]]),
        m(&[&[1, 1]]),
    ));
    b.face(x1, s, 0, m(&[&[1]]))
        .face(x1, s, 2, RatMatrix::identity(2))
        .face(x1, s, 4, m(&[&[1, 0]]))
        .face(x2, s, 0, m(&[&[1]]))
        .face(x2, s, 2, m(&[&[1, 0, 0], &[0, 1, -1]]))
        .face(x2, s, 4, m(&[&[1, -1, 0]]));
    b.build()
}

pub fn triangle_surface() -> Result<SemistableDatum> {
    let mut b = SncBuilder::new(2);
    let f1 = |i: usize| {
        surface_piece(
            vec![i],
            m(&[&[1, 0], &[0, -1]]),
            m(&[&[2], &[-1]]),
            m(&[&[2, 1]]),
        )
    };
    let a: Vec<usize> = (0..3).map(|i| b.piece(f1(i))).collect();
    let lines: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 2)];
    let l: Vec<usize> = lines
        .iter()
        .map(|&(i, j)| b.piece(Piece::rational_curve(vec![i, j], 1)))
        .collect();
    let pt = b.piece(Piece::point(vec![0, 1, 2]));
    // restriction of (h, e) to a double curve of class e, resp. h - e
    let on_e = m(&[&[0, -1]]);
    let on_h_minus_e = m(&[&[1, 1]]);
    let classes = [
        (a[0], l[0], &on_e),
        (a[1], l[0], &on_h_minus_e),
        (a[0], l[1], &on_h_minus_e),
        (a[2], l[1], &on_e),
        (a[1], l[2], &on_e),
        (a[2], l[2], &on_h_minus_e),
    ];
    for (from, to, r2) in classes {
        b.face(from, to, 0, m(&[&[1]]));
        b.face(from, to, 2, r2.clone());
    }
    for &li in &l {
        b.face(li, pt, 0, m(&[&[1]]));
    }
    b.build()
}

/// The shipped threefolds, by name.
pub fn toy_threefolds() -> Result<Vec<(String, SemistableDatum)>> {
    let p1p1 = gen_smooth(2, &[1, 0, 2, 0, 1])?;
    let p2 = gen_smooth(2, &[1, 0, 1, 0, 1])?;
    let p1 = gen_smooth(1, &[1, 0, 1])?;
    Ok(vec![
        (TOY_NAMES[0].into(), product_with_smooth(&gen_ngon(3)?, &p1p1)?),
        (TOY_NAMES[1].into(), normal_cone()?),
        (TOY_NAMES[2].into(), product_with_smooth(&gen_ngon(4)?, &p2)?),
        (TOY_NAMES[3].into(), product_with_smooth(&triangle_surface()?, &p1)?),
    ])
}
