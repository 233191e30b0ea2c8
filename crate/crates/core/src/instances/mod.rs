//! Instance generators, the shipped toy threefolds and the mutation harness.

mod mutate;
mod product;
mod snc;
mod toys;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratlin::{rat, Rat, RatMatrix};
use crate::specseq::{build_e1, install_n, tensor_product, WeightComplex};
use crate::strata::SemistableDatum;

pub use mutate::{
    candidate_sites, is_applicable, mutate, perturb, survey, Applicability, MatrixKind, Mutation, Site,
};
pub use product::product_with_smooth;
pub use snc::{Piece, SncBuilder};
pub use toys::{toy_threefolds, triangle_surface, TOY_NAMES};

impl Piece {
    pub fn point(subset: Vec<usize>) -> Piece {
        Piece {
            subset,
            cohomology: vec![1],
            pairings: BTreeMap::from([(0, RatMatrix::identity(1))]),
            lefschetz: BTreeMap::new(),
        }
    }

    /// `P^1` on which the ample class has the given degree.
    pub fn rational_curve(subset: Vec<usize>, degree: i64) -> Piece {
        Piece {
            subset,
            cohomology: vec![1, 0, 1],
            pairings: BTreeMap::from([(0, RatMatrix::identity(1)), (2, RatMatrix::identity(1))]),
            lefschetz: BTreeMap::from([(0, RatMatrix::from_i64(&[&[degree]]))]),
        }
    }
}

/// Sign of the Hodge-Riemann form on the primitive part in degree `k`.
fn hr_sign(k: usize) -> i64 {
    if (k / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_profile(n: usize, betti: &[usize]) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidProfile(m));
    if betti.len() != 2 * n + 1 {
        return bad(format!("{} Betti numbers for dimension {n}", betti.len()));
    }
    if betti[0] != 1 {
        return bad("h^0 must be 1 for a connected variety".into());
    }
    if (0..=2 * n).any(|s| betti[s] != betti[2 * n - s]) {
        return bad("Betti numbers are not symmetric".into());
    }
    if n % 2 == 1 && betti[n] % 2 == 1 {
        return bad(format!("odd middle Betti number h^{n} = {}", betti[n]));
    }
    if (0..n.saturating_sub(1)).any(|s| betti[s] > betti[s + 2]) {
        return bad("Betti numbers are not unimodal in each parity".into());
    }
    Ok(())
}

/// Pairings of a smooth variety with the given profile.
///
/// Below and at the middle, even degrees carry the diagonal Hodge-Riemann
/// signs of the primitive pieces, odd degrees the identity, and an odd
/// middle degree the standard symplectic form.
fn smooth_pairings(n: usize, betti: &[usize]) -> BTreeMap<usize, RatMatrix> {
    let mut low = BTreeMap::new();
    for s in 0..=n {
        let h = betti[s];
        let p = if s % 2 == 1 && s == n {
            let half = h / 2;
            let mut j = RatMatrix::zeros(h, h);
            for i in 0..half {
                j[(i, half + i)] = rat(1);
                j[(half + i, i)] = rat(-1);
            }
            j
        } else if s % 2 == 1 {
            RatMatrix::identity(h)
        } else {
            let entries: Vec<Rat> = (0..h)
                .map(|i| {
                    let k = (s % 2..=s).step_by(2).find(|&k| betti[k] > i).unwrap_or(s);
                    rat(hr_sign(k))
                })
                .collect();
            RatMatrix::diagonal(&entries)
        };
        low.insert(s, p);
    }
    let mut all = low.clone();
    for s in n + 1..=2 * n {
        let partner = &low[&(2 * n - s)];
        let p = if (2 * n - s) % 2 == 0 {
            partner.transpose()
        } else {
            -&partner.transpose()
        };
        all.insert(s, p);
    }
    all.retain(|&s, _| betti[s] > 0);
    all
}

/// `L` as coordinate inclusions below the middle and projections above.
fn standard_lefschetz(n: usize, betti: &[usize]) -> BTreeMap<usize, RatMatrix> {
    let mut out = BTreeMap::new();
    for s in 0..(2 * n).saturating_sub(1) {
        let (a, b) = (betti[s], betti[s + 2]);
        if a == 0 || b == 0 {
            continue;
        }
        let mut m = RatMatrix::zeros(b, a);
        for i in 0..a.min(b) {
            m[(i, i)] = rat(1);
        }
        out.insert(s, m);
    }
    out
}

fn smooth_from_parts(
    n: usize,
    betti: &[usize],
    lefschetz: BTreeMap<usize, RatMatrix>,
) -> Result<SemistableDatum> {
    let mut b = SncBuilder::new(n);
    b.piece(Piece {
        subset: vec![0],
        cohomology: betti.to_vec(),
        pairings: smooth_pairings(n, betti),
        lefschetz,
    });
    b.build()
}

/// A single smooth component with the given Betti profile.
pub fn gen_smooth(n: usize, betti: &[usize]) -> Result<SemistableDatum> {
    check_profile(n, betti)?;
    smooth_from_parts(n, betti, standard_lefschetz(n, betti))
}

/// As [`gen_smooth`] with a declared `L`; rejected unless hard Lefschetz
/// holds for it.
pub fn gen_smooth_with_lefschetz(
    n: usize,
    betti: &[usize],
    lefschetz: BTreeMap<usize, RatMatrix>,
) -> Result<SemistableDatum> {
    check_profile(n, betti)?;
    let d = smooth_from_parts(n, betti, lefschetz)?;
    for i in 1..=n {
        let li = d.lefschetz_power(1, n - i, i);
        if li.rank() != betti[n - i] {
            return Err(Error::InvalidProfile(format!(
                "declared L^{i} : H^{} -> H^{} has rank {}",
                n - i,
                n + i,
                li.rank()
            )));
        }
    }
    Ok(d)
}

fn graph_curve(vertices: usize, edges: &[(usize, usize)]) -> Result<SemistableDatum> {
    let mut b = SncBuilder::new(1);
    for v in 0..vertices {
        b.piece(Piece::rational_curve(vec![v], 1));
    }
    for &(u, v) in edges {
        let p = b.piece(Piece::point(vec![u, v]));
        b.face(u, p, 0, RatMatrix::identity(1));
        b.face(v, p, 0, RatMatrix::identity(1));
    }
    b.build()
}

/// Cycle of `n` rational curves, each meeting its two neighbours once.
pub fn gen_ngon(n: usize) -> Result<SemistableDatum> {
    if n < 3 {
        return Err(Error::Parameter(format!("ngon needs n >= 3, got {n}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    graph_curve(n, &edges)
}

/// Chain of `n` rational curves.
pub fn gen_chain(n: usize) -> Result<SemistableDatum> {
    if n < 2 {
        return Err(Error::Parameter(format!("chain needs n >= 2, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    graph_curve(n, &edges)
}

/// Names of the shipped instance files, without extension.
pub const CORPUS_NAMES: [&str; 8] = [
    "ngon3_x_p1p1",
    "normal_cone",
    "ngon4_x_p2",
    "triangle_x_p1",
    "triangle_surface",
    "ngon5",
    "chain3",
    "smooth_p1xp1",
];

/// The shipped instances rebuilt from their generators, in the order of
/// [`CORPUS_NAMES`].
pub fn corpus() -> Result<Vec<(String, SemistableDatum)>> {
    let mut out = toy_threefolds()?;
    out.push((CORPUS_NAMES[4].into(), triangle_surface()?));
    out.push((CORPUS_NAMES[5].into(), gen_ngon(5)?));
    out.push((CORPUS_NAMES[6].into(), gen_chain(3)?));
    out.push((CORPUS_NAMES[7].into(), gen_smooth(2, &[1, 0, 2, 0, 1])?));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Smooth { n: usize, betti: Vec<usize> },
    Ngon { n: usize },
    Chain { n: usize },
    /// Tensor product of the pages of the operands.
    Tensor { operands: Vec<GeneratorSpec> },
    /// An instance file.
    Custom { path: String },
    /// A shipped toy, by name.
    Toy { name: String },
}

#[derive(Clone, Debug)]
pub enum Generated {
    Datum(Box<SemistableDatum>),
    Complex(Box<WeightComplex>),
}

impl Generated {
    /// The weight complex, building it from a datum if needed.
    pub fn complex(&self) -> Result<WeightComplex> {
        match self {
            Generated::Datum(d) => install_n(build_e1(d)?),
            Generated::Complex(c) => Ok((**c).clone()),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    Ok(match spec {
        GeneratorSpec::Smooth { n, betti } => Generated::Datum(Box::new(gen_smooth(*n, betti)?)),
        GeneratorSpec::Ngon { n } => Generated::Datum(Box::new(gen_ngon(*n)?)),
        GeneratorSpec::Chain { n } => Generated::Datum(Box::new(gen_chain(*n)?)),
        GeneratorSpec::Custom { path } => {
            Generated::Datum(Box::new(crate::strata::load(path)?))
        }
        GeneratorSpec::Toy { name } => {
            let d = toy_threefolds()?
                .into_iter()
                .find(|(k, _)| k == name)
                .map(|(_, d)| d)
                .ok_or_else(|| Error::Parameter(format!("unknown toy `{name}`")))?;
            Generated::Datum(Box::new(d))
        }
        GeneratorSpec::Tensor { operands } => {
            if operands.is_empty() {
                return Err(Error::Parameter("tensor needs at least one operand".into()));
            }
            let mut acc = generate(&operands[0])?.complex()?;
            for op in &operands[1..] {
                acc = tensor_product(&acc, &generate(op)?.complex()?)?;
            }
            Generated::Complex(Box::new(acc))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hodge_riemann_signs_alternate_in_pairs() {
        assert_eq!((0..6).map(hr_sign).collect::<Vec<_>>(), vec![1, 1, -1, -1, 1, 1]);
    }

    #[test]
    fn profiles() {
        assert!(check_profile(2, &[1, 0, 3, 0, 1]).is_ok());
        assert!(check_profile(1, &[1, 1, 1]).is_err());
        assert!(check_profile(2, &[1, 0, 1, 0]).is_err());
        assert!(check_profile(2, &[2, 0, 2, 0, 2]).is_err());
        assert!(check_profile(2, &[1, 0, 2, 0, 2]).is_err());
    }
}
