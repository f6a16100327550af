//! Castelnuovo-Mumford regularity: exact computation via Koszul homology
//! and closed-form prediction, plus checks reconciling the two.

mod koszul;
mod predict;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

pub use koszul::KoszulOracle;
pub use predict::{predict, Prediction, Rule};

use crate::binomial_edge::{binomial_edge_ideal, edge_binomial};
use crate::graph::{classify_tree, Graph};
use crate::ideal::IdealHandle;
use crate::poly::{FieldMode, Monomial, Polynomial};
use crate::{BeiError, Result};

/// Fallback cap on the deepest Betti diagonal `j - i` to compute before
/// giving up uncertified.
const DEFAULT_DIAGONAL_CAP: usize = 24;

/// Graded Betti numbers of `S/I` over an explicitly computed region.
/// Entries outside the computed region are unknown, not zero.
#[derive(Debug, Clone)]
pub struct BettiTable {
    pub field: FieldMode,
    entries: BTreeMap<(usize, u32), usize>,
    computed: BTreeSet<(usize, u32)>,
}

impl BettiTable {
    fn new(field: FieldMode) -> BettiTable {
        BettiTable { field, entries: BTreeMap::new(), computed: BTreeSet::new() }
    }

    fn set(&mut self, i: usize, j: u32, value: usize) {
        self.computed.insert((i, j));
        if value > 0 {
            self.entries.insert((i, j), value);
        }
    }

    /// `β_{i,j}` if `(i, j)` lies in the computed region.
    pub fn get(&self, i: usize, j: u32) -> Option<usize> {
        if self.computed.contains(&(i, j)) {
            Some(self.entries.get(&(i, j)).copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// Nonzero entries as `(i, j, β_{i,j})`, sorted.
    pub fn nonzero(&self) -> Vec<(usize, u32, usize)> {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v)).collect()
    }

    /// `max{j - i : β_{i,j} != 0}` over the computed region.
    pub fn observed_reg(&self) -> usize {
        self.entries
            .keys()
            .map(|&(i, j)| j as usize - i)
            .max()
            .unwrap_or(0)
    }

    /// Triangular text table: one column per homological degree `i`, one row
    /// per diagonal `d = j - i`; `.` marks a computed zero.
    pub fn render_text(&self) -> String {
        let imax = self.computed.iter().map(|&(i, _)| i).max().unwrap_or(0);
        let dmax = self
            .computed
            .iter()
            .map(|&(i, j)| j as usize - i)
            .max()
            .unwrap_or(0);
        let cell = |i: usize, d: usize| match self.get(i, (i + d) as u32) {
            Some(0) => ".".to_string(),
            Some(v) => v.to_string(),
            None => String::new(),
        };
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend((0..=imax).map(|i| i.to_string()));
        rows.push(header);
        let mut totals = vec!["total:".to_string()];
        totals.extend((0..=imax).map(|i| {
            let t: usize = (0..=dmax)
                .filter_map(|d| self.get(i, (i + d) as u32))
                .sum();
            t.to_string()
        }));
        rows.push(totals);
        for d in 0..=dmax {
            let mut row = vec![format!("{d}:")];
            row.extend((0..=imax).map(|i| cell(i, d)));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..=imax + 1)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap())
            .collect();
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
                    .collect::<Vec<_>>()
                    .join(" ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Result of a regularity computation: the observed value, whether the
/// diagonal-vanishing certificate succeeded, and the full computed table.
#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub observed_reg: usize,
    pub certified: bool,
    pub predicted: Option<Prediction>,
    pub table: BettiTable,
}

impl RegularityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let betti: Vec<serde_json::Value> = self
            .table
            .nonzero()
            .into_iter()
            .map(|(i, j, v)| json!([i, j, v]))
            .collect();
        json!({
            "betti": betti,
            "reg": self.observed_reg,
            "certified": self.certified,
            "field": self.table.field.to_string(),
            "predicted": self.predicted.as_ref().map(|p| json!({
                "value": p.value,
                "rule": p.rule,
            })),
        })
    }
}

/// Standard monomials of degree `d`: a basis of `(S/I)_d`.
pub fn std_monomials(ideal: &IdealHandle, d: u32) -> Result<Vec<Monomial>> {
    let mut o = KoszulOracle::new(ideal)?;
    Ok(o.std_monomials(d).as_ref().clone())
}

/// `dim_k (S/I)_d`.
pub fn hilbert_function(ideal: &IdealHandle, d: u32) -> Result<usize> {
    Ok(KoszulOracle::new(ideal)?.hilbert_function(d))
}

/// Betti numbers over the rectangle `i <= i_max`, `j <= j_max`.
pub fn betti_table(ideal: &IdealHandle, i_max: usize, j_max: u32) -> Result<BettiTable> {
    let mut o = KoszulOracle::new(ideal)?;
    let mut table = BettiTable::new(ideal.field());
    for i in 0..=i_max.min(o.nvars()) {
        for j in i as u32..=j_max {
            table.set(i, j, o.betti(i, j));
        }
    }
    Ok(table)
}

/// Computes `reg S/I` by diagonal deepening: Betti diagonals `j - i = d` are
/// computed for `d = 0, 1, ...` and all `i` up to the Hilbert-syzygy bound
/// (the number of variables). The result is certified once an entire
/// diagonal beyond the last nonzero one — and at least at the maximal
/// generator degree minus one, the a-priori lower bound for `reg` — comes
/// out zero. `hint` (a predicted value) only raises the diagonal cap.
pub fn regularity(ideal: &IdealHandle, hint: Option<usize>) -> Result<RegularityReport> {
    regularity_with_limits(ideal, hint, ideal.nvars(), None)
}

/// As `regularity`, with explicit caps on the homological degree and the
/// diagonal depth. Certification additionally requires `i_max` to reach the
/// Hilbert-syzygy bound; hitting the diagonal cap leaves the report
/// uncertified instead of failing.
pub fn regularity_with_limits(
    ideal: &IdealHandle,
    hint: Option<usize>,
    i_max: usize,
    d_cap: Option<usize>,
) -> Result<RegularityReport> {
    if ideal.is_unit_ideal() {
        return Err(BeiError::BadParameters(
            "regularity of the zero module is undefined".into(),
        ));
    }
    let mut oracle = KoszulOracle::new(ideal)?;
    let i_max = i_max.min(oracle.nvars());
    let d_cap = d_cap.unwrap_or(DEFAULT_DIAGONAL_CAP.max(hint.unwrap_or(0) + 2));
    let gen_floor = ideal
        .generators()
        .iter()
        .filter_map(Polynomial::total_degree)
        .max()
        .unwrap_or(1) as usize
        - 1;
    let mut table = BettiTable::new(ideal.field());
    let mut observed = 0usize;
    let mut certified = false;
    let mut d = 0usize;
    loop {
        let mut nonzero = false;
        for i in 0..=i_max {
            let b = oracle.betti(i, (i + d) as u32);
            table.set(i, (i + d) as u32, b);
            if b > 0 {
                nonzero = true;
            }
        }
        if nonzero {
            observed = d;
        } else if d > observed && d >= gen_floor && d >= 1 {
            certified = i_max >= oracle.nvars();
            break;
        }
        d += 1;
        if d > d_cap {
            break; // resource limit: report what was computed, uncertified
        }
    }
    Ok(RegularityReport { observed_reg: observed, certified, predicted: None, table })
}

/// A prediction checked against the Koszul oracle.
#[derive(Debug, Clone)]
pub struct TheoremCheck {
    pub prediction: Prediction,
    pub report: RegularityReport,
    pub matches: bool,
}

impl TheoremCheck {
    fn new(prediction: Prediction, mut report: RegularityReport) -> TheoremCheck {
        report.predicted = Some(prediction);
        let matches = report.observed_reg == prediction.value;
        TheoremCheck { prediction, report, matches }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "predicted": self.prediction.value,
            "rule": self.prediction.rule,
            "computed": self.report.observed_reg,
            "certified": self.report.certified,
            "match": self.matches,
            "field": self.report.table.field.to_string(),
        })
    }
}

/// Computes `reg S/J_G^s` for a tree in a d-sequence family and compares it
/// to the closed form `2s + i(G) - 1`.
pub fn power_regularity_check(g: &Graph, s: usize, field: FieldMode) -> Result<TheoremCheck> {
    if !classify_tree(g)?.is_dseq_family() {
        return Err(BeiError::NotClassified);
    }
    let prediction = predict(g, s)?;
    let ideal = binomial_edge_ideal(g, field)?.power(s);
    let report = regularity(&ideal, Some(prediction.value))?;
    Ok(TheoremCheck::new(prediction, report))
}

/// One path of a path forest attached to a complete graph: `edges` is the
/// path length in edges, `attach` an optional vertex of the complete graph
/// identified with one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSpec {
    pub edges: usize,
    pub attach: Option<usize>,
}

/// Parses a path-forest description: comma-separated entries `L` or `L@v`,
/// where `L` is a path length in edges and `v` a vertex of the complete
/// graph at which the path's first endpoint is attached.
pub fn parse_path_forest(spec: &str) -> Result<Vec<PathSpec>> {
    spec.split(',')
        .map(|entry| {
            let entry = entry.trim();
            let (len, attach) = match entry.split_once('@') {
                Some((l, v)) => {
                    let v = v
                        .parse::<usize>()
                        .map_err(|_| BeiError::Parse(format!("bad attach vertex in {entry:?}")))?;
                    (l, Some(v))
                }
                None => (entry, None),
            };
            let edges = len
                .parse::<usize>()
                .map_err(|_| BeiError::Parse(format!("bad path length in {entry:?}")))?;
            Ok(PathSpec { edges, attach })
        })
        .collect()
}

/// Verifies the product formula `reg S/(J_H J_{K_m}) = 2 + n`, where `H` is
/// a forest of paths with `n` edges in total, each path meeting the
/// complete graph `K_m` in at most one vertex, which must be a path
/// endpoint, and no two paths meeting it in the same vertex.
pub fn product_regularity_check(
    paths: &[PathSpec],
    m: usize,
    field: FieldMode,
) -> Result<TheoremCheck> {
    if m < 2 {
        return Err(BeiError::HypothesesViolated(
            "the complete graph needs at least 2 vertices".into(),
        ));
    }
    if paths.is_empty() || paths.iter().all(|p| p.edges == 0) {
        return Err(BeiError::HypothesesViolated(
            "the path forest needs at least one edge".into(),
        ));
    }
    let mut seen_attach = Vec::new();
    for p in paths {
        if p.edges == 0 {
            return Err(BeiError::HypothesesViolated("paths must have at least one edge".into()));
        }
        if let Some(v) = p.attach {
            if v < 1 || v > m {
                return Err(BeiError::HypothesesViolated(format!(
                    "attach vertex {v} is not a vertex of the complete graph"
                )));
            }
            if seen_attach.contains(&v) {
                return Err(BeiError::HypothesesViolated(format!(
                    "two paths attach at vertex {v}"
                )));
            }
            seen_attach.push(v);
        }
    }
    // vertices 1..=m carry the complete graph; path vertices follow
    let mut total = m;
    let mut path_edges: Vec<(usize, usize)> = Vec::new();
    for p in paths {
        let mut prev = match p.attach {
            Some(v) => v,
            None => {
                total += 1;
                total
            }
        };
        for _ in 0..p.edges {
            total += 1;
            path_edges.push((prev, total));
            prev = total;
        }
    }
    let n: usize = paths.iter().map(|p| p.edges).sum();
    let nv = 2 * total;
    let gens = |edges: &[(usize, usize)]| -> Vec<Polynomial> {
        edges
            .iter()
            .map(|&(a, b)| edge_binomial(a, b, total, field))
            .collect()
    };
    let km_edges: Vec<(usize, usize)> = (1..=m)
        .flat_map(|a| (a + 1..=m).map(move |b| (a, b)))
        .collect();
    let j_h = IdealHandle::new(nv, field, gens(&path_edges));
    let j_km = IdealHandle::new(nv, field, gens(&km_edges));
    let product = j_h.product(&j_km);
    let prediction = Prediction { value: 2 + n, rule: Rule::ProductPathsComplete };
    let report = regularity(&product, Some(prediction.value))?;
    Ok(TheoremCheck::new(prediction, report))
}
