use serde::Serialize;

use super::{E1Summand, E2Page, WeightComplex, WmcVerdict};

#[derive(Clone, Debug, Serialize)]
pub struct PageTermJson {
    pub i: i64,
    pub j: i64,
    pub dim: usize,
    pub summands: Vec<E1Summand>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapJson {
    pub i: i64,
    pub j: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct E2TermJson {
    pub i: i64,
    pub j: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageDump {
    pub pages: Vec<PageTermJson>,
    pub d1: Vec<MapJson>,
    pub n_op: Vec<MapJson>,
    pub e2: Vec<E2TermJson>,
    pub verdict: Option<WmcVerdict>,
}

pub fn page_dump(page: &WeightComplex, e2: Option<&E2Page>, verdict: Option<&WmcVerdict>) -> PageDump {
    let maps = |m: &std::collections::BTreeMap<(i64, i64), crate::ratlin::RatMatrix>| {
        m.iter()
            .filter(|(_, x)| x.rows() > 0 && x.cols() > 0)
            .map(|(&(i, j), x)| MapJson {
                i,
                j,
                matrix: x.to_strings(),
            })
            .collect()
    };
    PageDump {
        pages: page
            .terms
            .values()
            .map(|t| PageTermJson {
                i: t.i,
                j: t.j,
                dim: t.dim,
                summands: t.summands.clone(),
            })
            .collect(),
        d1: maps(&page.d1),
        n_op: maps(&page.nop),
        e2: e2
            .map(|e| {
                e.terms
                    .values()
                    .map(|t| E2TermJson {
                        i: t.i,
                        j: t.j,
                        dim: t.dim,
                    })
                    .collect()
            })
            .unwrap_or_default(),
        verdict: verdict.cloned(),
    }
}

/// `A, B, C, D` for the first four levels, `X(t)` beyond.
fn level_name(t: usize) -> String {
    match t {
        1..=4 => ((b'A' + (t - 1) as u8) as char).to_string(),
        _ => format!("X({t})"),
    }
}

/// Rows `j = 2n .. 0` top to bottom, columns `i = -n .. n`. Each cell lists
/// the nonzero summands as `H^s(level)`; abstract terms show their dimension.
pub fn render_grid(page: &WeightComplex) -> String {
    let n = page.n as i64;
    let mut cells: Vec<Vec<String>> = Vec::new();
    for j in (0..=2 * n).rev() {
        let mut row = vec![format!("j={j}")];
        for i in -n..=n {
            let cell = match page.term(i, j) {
                Some(t) if !t.summands.is_empty() => {
                    let parts: Vec<String> = t
                        .summands
                        .iter()
                        .filter(|s| s.dim > 0)
                        .map(|s| format!("H^{}({})", s.degree, level_name(s.level)))
                        .collect();
                    if parts.is_empty() {
                        "0".to_string()
                    } else {
                        parts.join(" + ")
                    }
                }
                Some(t) if t.dim > 0 => format!("Q^{}", t.dim),
                _ => "0".to_string(),
            };
            row.push(cell);
        }
        cells.push(row);
    }
    let mut header = vec![String::new()];
    header.extend((-n..=n).map(|i| format!("i={i}")));
    cells.push(header);
    let cols = cells[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &cells {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
    }
    out
}
