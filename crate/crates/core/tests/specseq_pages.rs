use std::collections::BTreeMap;

use wss_core::instances::{corpus, gen_chain, gen_ngon, gen_smooth, mutate};
use wss_core::ratlin::{rat, RatMatrix};
use wss_core::specseq::{
    abstract_complex, build_e2, check_wmc, compare_monodromy_vs_weight, tensor_product,
    to_weight_complex, weight_filtration_graded, E2Page, WeightComplex,
};
use wss_core::strata::Axiom;
use wss_core::Error;

type Dims = BTreeMap<(i64, i64), usize>;

/// Rank of a small integer matrix by fraction-free elimination.
fn int_rank(mut a: Vec<Vec<i128>>) -> usize {
    let mut rank = 0;
    let cols = a.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (x, y) = (a[rank][c], a[r][c]);
                for k in 0..cols {
                    a[r][k] = a[r][k] * x - a[rank][k] * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// E2 dimensions of a curve degeneration from its dual graph: the rows are
/// `H^0(vertices) -> H^0(edges)` and `H^0(edges) -> H^2(vertices)`, both the
/// signed incidence matrix up to transpose.
fn graph_oracle(vertices: usize, edges: &[(usize, usize)]) -> Dims {
    let inc: Vec<Vec<i128>> = edges
        .iter()
        .map(|&(a, b)| (0..vertices).map(|v| if v == a { 1 } else if v == b { -1 } else { 0 }).collect())
        .collect();
    let rank = int_rank(inc);
    let (v, e) = (vertices, edges.len());
    BTreeMap::from([
        ((0, 0), v - rank),
        ((1, 0), e - rank),
        ((-1, 2), e - rank),
        ((0, 2), v - rank),
    ])
}

fn nonzero(e2: &E2Page) -> Dims {
    e2.dims().into_iter().filter(|&(_, d)| d > 0).collect()
}

fn convolve(a: &Dims, b: &Dims) -> Dims {
    let mut out = Dims::new();
    for (&(i1, j1), &d1) in a {
        for (&(i2, j2), &d2) in b {
            *out.entry((i1 + i2, j1 + j2)).or_insert(0) += d1 * d2;
        }
    }
    out.retain(|_, d| *d > 0);
    out
}

fn page(d: wss_core::Result<wss_core::strata::SemistableDatum>) -> WeightComplex {
    to_weight_complex(&d.unwrap()).unwrap()
}

/// The weight-one row of the curve page as a complex with zero `d1`.
fn curve_h1() -> WeightComplex {
    let mut c = abstract_complex(1, &[(-1, 2, 1), (1, 0, 1)]);
    c.nop.insert((-1, 2), RatMatrix::identity(1));
    c
}

#[test]
fn ngon_sweep_matches_cycle_graph() {
    for n in 3..=12 {
        let e2 = build_e2(&page(gen_ngon(n))).unwrap();
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        let oracle = graph_oracle(n, &edges);
        assert_eq!(nonzero(&e2), oracle, "ngon {n}");
        assert_eq!(oracle.values().copied().collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        let v = check_wmc(&e2);
        assert!(v.overall);
        assert_eq!(e2.n_power(1, 1).rank(), 1);
    }
}

#[test]
fn chain_matches_path_graph() {
    for n in 2..=8 {
        let e2 = build_e2(&page(gen_chain(n))).unwrap();
        let edges: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
        let mut oracle = graph_oracle(n, &edges);
        oracle.retain(|_, d| *d > 0);
        assert_eq!(nonzero(&e2), oracle, "chain {n}");
        assert_eq!(e2.dim(1, 0), 0);
        assert!(check_wmc(&e2).overall);
    }
}

#[test]
fn smooth_page_is_one_column() {
    let p = page(gen_smooth(3, &[1, 0, 1, 0, 1, 0, 1]));
    for (&(i, _), t) in &p.terms {
        assert!(i == 0 || t.dim == 0);
    }
    let e2 = build_e2(&p).unwrap();
    for j in 0..=6 {
        assert_eq!(e2.dim(0, j), usize::from(j % 2 == 0));
    }
}

#[test]
fn ngon_e1_terms() {
    for n in [3, 7] {
        let p = page(gen_ngon(n));
        assert_eq!(p.dim(-1, 2), n);
        assert_eq!(p.dim(0, 2), n);
        assert_eq!(p.dim(0, 0), n);
        assert_eq!(p.dim(1, 0), n);
        assert_eq!(p.dim(-2, 4), 0);
        assert_eq!(p.dim(-2, 2), 0);
    }
}

#[test]
fn unvalidated_datum_is_rejected() {
    let m = mutate(&gen_ngon(4).unwrap(), Axiom::Adjunction, 3).unwrap();
    assert!(matches!(to_weight_complex(&m.datum), Err(Error::Unvalidated(_))));
}

#[test]
fn euler_characteristic_is_conserved() {
    let mut pages: Vec<(String, WeightComplex)> = corpus()
        .unwrap()
        .into_iter()
        .map(|(k, d)| (k, to_weight_complex(&d).unwrap()))
        .collect();
    let c = page(gen_ngon(3));
    pages.push(("square".into(), tensor_product(&c, &c).unwrap()));
    for (name, p) in pages {
        let e2 = build_e2(&p).unwrap();
        for j in p.j_range() {
            let chi = |f: &dyn Fn(i64) -> usize| -> i64 {
                p.i_range().map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * f(i) as i64).sum()
            };
            assert_eq!(chi(&|i| p.dim(i, j)), chi(&|i| e2.dim(i, j)), "{name} row {j}");
        }
    }
}

/// `<d x, y> = <x, d y>` with `P(i, j)` pairing `E1^{i,j}` against
/// `E1^{-i,2n-j}`; likewise for `N`.
#[test]
fn operators_are_self_adjoint_for_e1_pairings() {
    let c = page(gen_ngon(3));
    let mut pages: Vec<(String, WeightComplex)> = corpus()
        .unwrap()
        .into_iter()
        .map(|(k, d)| (k, to_weight_complex(&d).unwrap()))
        .collect();
    pages.push(("square".into(), tensor_product(&c, &c).unwrap()));
    for (name, p) in pages {
        let n2 = 2 * p.n as i64;
        for &(i, j) in p.terms.keys() {
            let Some(a) = p.pairings.get(&(i, j)) else { continue };
            if let Some(c) = p.pairings.get(&(i + 1, j)) {
                let lhs = &p.d1_at(i, j).transpose() * c;
                let rhs = a * &p.d1_at(-i - 1, n2 - j);
                assert_eq!(lhs, rhs, "{name}: d1 at ({i}, {j})");
            }
            if let Some(c) = p.pairings.get(&(i + 2, j - 2)) {
                let lhs = &p.n_at(i, j).transpose() * c;
                let rhs = a * &p.n_at(-i - 2, n2 - j + 2);
                assert_eq!(lhs, rhs, "{name}: N at ({i}, {j})");
            }
        }
    }
}

#[test]
fn square_of_ngon_matches_kunneth() {
    let c = page(gen_ngon(3));
    let curve = nonzero(&build_e2(&c).unwrap());
    let e2 = build_e2(&tensor_product(&c, &c).unwrap()).unwrap();
    assert_eq!(nonzero(&e2), convolve(&curve, &curve));
    // weights 0, 2, 4 of H^2(E x E)
    assert_eq!((e2.dim(2, 0), e2.dim(0, 2), e2.dim(-2, 4)), (1, 4, 1));
    assert!(check_wmc(&e2).overall);

    let h1 = build_e2(&tensor_product(&curve_h1(), &curve_h1()).unwrap()).unwrap();
    assert_eq!((h1.dim(2, 0), h1.dim(0, 2), h1.dim(-2, 4)), (1, 2, 1));
    assert!(check_wmc(&h1).overall);
}

#[test]
fn cube_of_h1_row() {
    let h = curve_h1();
    let cube = tensor_product(&tensor_product(&h, &h).unwrap(), &h).unwrap();
    let e2 = build_e2(&cube).unwrap();
    let dims: Vec<usize> = [(3, 0), (1, 2), (-1, 4), (-3, 6)].iter().map(|&(i, j)| e2.dim(i, j)).collect();
    assert_eq!(dims, vec![1, 3, 3, 1]);
    let w = weight_filtration_graded(&e2, 3);
    let cumulative: Vec<usize> = (0..=6).map(|a| w.at(a).dim()).collect();
    assert_eq!(cumulative, vec![1, 1, 4, 4, 7, 7, 8]);
    let v = check_wmc(&e2);
    assert!(v.overall);
    assert_eq!(e2.n_power(3, 3).rank(), 1);
    assert_eq!(e2.n_power(1, 3).rank(), 3);
}

#[test]
fn products_of_curves_pass() {
    for a in 3..=6 {
        for b in 3..=6 {
            let p = tensor_product(&page(gen_ngon(a)), &page(gen_ngon(b))).unwrap();
            let e2 = build_e2(&p).unwrap();
            let v = check_wmc(&e2);
            assert!(v.overall, "{a} x {b}");
            for w in 0..=4 {
                assert_eq!(compare_monodromy_vs_weight(&e2, w).unwrap(), v.holds_at(w));
            }
        }
    }
}

#[test]
fn broken_n_is_detected() {
    let mut h = curve_h1();
    h.nop.insert((-1, 2), RatMatrix::zeros(1, 1));
    let e2 = build_e2(&h).unwrap();
    assert!(!check_wmc(&e2).holds_at(1));
    assert!(!compare_monodromy_vs_weight(&e2, 1).unwrap());
    h.nop.insert((-1, 2), RatMatrix::from_vec(1, 1, vec![rat(2)]).unwrap());
    assert!(check_wmc(&build_e2(&h).unwrap()).overall);
}

/// The E1 grid of a threefold, as `(level, degree)` summands; levels 1..4
/// are `A, B, C, D`.
const THREEFOLD_GRID: &[((i64, i64), &[(usize, usize)])] = &[
    ((-3, 6), &[(4, 0)]),
    ((-2, 6), &[(3, 2)]),
    ((-1, 6), &[(2, 4)]),
    ((0, 6), &[(1, 6)]),
    ((-2, 5), &[(3, 1)]),
    ((-1, 5), &[(2, 3)]),
    ((0, 5), &[(1, 5)]),
    ((-2, 4), &[(3, 0)]),
    ((-1, 4), &[(2, 2), (4, 0)]),
    ((0, 4), &[(1, 4), (3, 2)]),
    ((1, 4), &[(2, 4)]),
    ((-1, 3), &[(2, 1)]),
    ((0, 3), &[(1, 3), (3, 1)]),
    ((1, 3), &[(2, 3)]),
    ((-1, 2), &[(2, 0)]),
    ((0, 2), &[(1, 2), (3, 0)]),
    ((1, 2), &[(2, 2), (4, 0)]),
    ((2, 2), &[(3, 2)]),
    ((0, 1), &[(1, 1)]),
    ((1, 1), &[(2, 1)]),
    ((2, 1), &[(3, 1)]),
    ((0, 0), &[(1, 0)]),
    ((1, 0), &[(2, 0)]),
    ((2, 0), &[(3, 0)]),
    ((3, 0), &[(4, 0)]),
];

#[test]
fn threefold_summands_follow_the_grid() {
    let d = wss_core::instances::toy_threefolds().unwrap().pop().unwrap().1;
    let p = to_weight_complex(&d).unwrap();
    let present = |t: usize| d.levels.contains_key(&t);
    for &((i, j), expected) in THREEFOLD_GRID {
        let want: Vec<(usize, usize)> = expected.iter().copied().filter(|&(t, _)| present(t)).collect();
        let got: Vec<(usize, usize)> = p
            .term(i, j)
            .map(|t| t.summands.iter().map(|s| (s.level, s.degree)).collect())
            .unwrap_or_default();
        assert_eq!(got, want, "E1^{{{i},{j}}}");
        let dim: usize = want.iter().map(|&(t, s)| d.h(t, s as i64)).sum();
        assert_eq!(p.dim(i, j), dim);
    }
    for (&(i, j), t) in &p.terms {
        if t.dim > 0 {
            assert!(THREEFOLD_GRID.iter().any(|&(k, _)| k == (i, j)), "unexpected E1^{{{i},{j}}}");
        }
    }
}
