//! Closed-form regularity predictions for the graph families with known
//! formulas. Each rule carries its hypotheses; `predict` applies the first
//! matching rule in a fixed precedence order and fails with `NoRuleApplies`
//! when none fits.

use serde::Serialize;

use crate::graph::{classify_tree, internal_vertex_count, Graph};
use crate::{BeiError, Result};

/// Which closed form produced a predicted regularity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// complete graph, any power 1: reg = 1
    Kn,
    /// star `K_{1,m}`, `m >= 2`: reg = 2
    Star,
    /// tree: reg = i(G) + 1 with i(G) the internal vertex count
    InternalVertices,
    /// complete graph with pendants at one vertex: reg = 2
    Cnm,
    /// tree whose edge binomials form a d-sequence, power `s`:
    /// reg = 2s + i(G) - 1
    TmHmPower,
    /// product of a path-forest ideal with a complete-graph ideal:
    /// reg = 2 + (edge count of the forest)
    ProductPathsComplete,
    /// disconnected graph: sum of the components' predictions
    GluingSum,
    /// path `P_n`, `n >= 3`, power `s`: reg = 2s + n - 3
    PathPower,
    /// star `K_{1,m}`, `m >= 3`, power `s`: reg = 2s
    StarPower,
}

/// A predicted regularity value together with the rule that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub value: usize,
    pub rule: Rule,
}

fn is_complete(g: &Graph) -> bool {
    g.n() >= 2 && g.num_edges() == g.n() * (g.n() - 1) / 2
}

/// `K_{1,m}` with `m >= 2`: returns `m`.
fn star_size(g: &Graph) -> Option<usize> {
    let m = g.n() - 1;
    if m >= 2 && g.is_tree() && (1..=g.n()).any(|v| g.degree(v) == m) {
        Some(m)
    } else {
        None
    }
}

fn is_path(g: &Graph) -> bool {
    g.is_tree() && (1..=g.n()).all(|v| g.degree(v) <= 2)
}

/// Detects a complete graph of size `n >= 3` with `m >= 1` pendant edges at
/// a single clique vertex; returns `(n, m)`.
fn cnm_shape(g: &Graph) -> Option<(usize, usize)> {
    if !g.is_connected() {
        return None;
    }
    let pendants: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) == 1).collect();
    let m = pendants.len();
    let n = g.n() - m;
    if n < 3 || m < 1 {
        return None;
    }
    let mut anchors: Vec<usize> = pendants.iter().map(|&v| g.neighbors(v)[0]).collect();
    anchors.dedup();
    if anchors.len() != 1 {
        return None;
    }
    let clique: Vec<usize> = (1..=g.n()).filter(|v| !pendants.contains(v)).collect();
    let complete = clique
        .iter()
        .enumerate()
        .all(|(i, &a)| clique[i + 1..].iter().all(|&b| g.has_edge(a, b)));
    (complete && g.num_edges() == n * (n - 1) / 2 + m).then_some((n, m))
}

/// Predicted `reg S/J_G^s`, from the first applicable closed form.
pub fn predict(g: &Graph, s: usize) -> Result<Prediction> {
    if s == 0 {
        return Err(BeiError::BadParameters("power must be at least 1".into()));
    }
    if g.num_edges() == 0 {
        return Err(BeiError::NoRuleApplies);
    }
    if s == 1 {
        if is_complete(g) {
            return Ok(Prediction { value: 1, rule: Rule::Kn });
        }
        if star_size(g).is_some() {
            return Ok(Prediction { value: 2, rule: Rule::Star });
        }
        if cnm_shape(g).is_some() {
            return Ok(Prediction { value: 2, rule: Rule::Cnm });
        }
        if g.is_tree() {
            let i = internal_vertex_count(g)?;
            return Ok(Prediction { value: i + 1, rule: Rule::InternalVertices });
        }
        if !g.is_connected() {
            let mut total = 0;
            for comp in g.component_vertex_sets() {
                if comp.len() == 1 {
                    continue; // isolated vertex contributes the zero ideal
                }
                total += predict(&induced(g, &comp), 1)?.value;
            }
            return Ok(Prediction { value: total, rule: Rule::GluingSum });
        }
        return Err(BeiError::NoRuleApplies);
    }
    // powers s >= 2
    if let Some(m) = star_size(g) {
        if m >= 3 {
            return Ok(Prediction { value: 2 * s, rule: Rule::StarPower });
        }
    }
    if is_path(g) && g.n() >= 3 {
        return Ok(Prediction { value: 2 * s + g.n() - 3, rule: Rule::PathPower });
    }
    if g.is_tree() && classify_tree(g)?.is_dseq_family() {
        let i = internal_vertex_count(g)?;
        return Ok(Prediction { value: 2 * s + i - 1, rule: Rule::TmHmPower });
    }
    Err(BeiError::NoRuleApplies)
}

/// The subgraph induced on `vertices`, relabeled to `1..=|vertices|`.
fn induced(g: &Graph, vertices: &[usize]) -> Graph {
    let mut label = vec![0usize; g.n() + 1];
    for (i, &v) in vertices.iter().enumerate() {
        label[v] = i + 1;
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| label[a] != 0 && label[b] != 0)
        .map(|&(a, b)| (label[a], label[b]))
        .collect();
    Graph::new(vertices.len(), edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs_predict_one() {
        for n in 2..=5 {
            let p = predict(&Graph::complete(n), 1).unwrap();
            assert_eq!((p.value, p.rule), (1, Rule::Kn));
        }
    }

    #[test]
    fn stars_predict_two() {
        let p = predict(&Graph::star(3), 1).unwrap();
        assert_eq!((p.value, p.rule), (2, Rule::Star));
    }

    #[test]
    fn trees_predict_internal_vertices_plus_one() {
        let p = predict(&Graph::path(5), 1).unwrap();
        assert_eq!((p.value, p.rule), (4, Rule::InternalVertices));
        // 6-vertex double star: 2 internal vertices
        let g = Graph::new(6, vec![(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)]).unwrap();
        let p = predict(&g, 1).unwrap();
        assert_eq!((p.value, p.rule), (3, Rule::InternalVertices));
    }

    #[test]
    fn pendant_clique_predicts_two() {
        let p = predict(&crate::graph::build_cnm(3, 2).unwrap(), 1).unwrap();
        assert_eq!((p.value, p.rule), (2, Rule::Cnm));
        let p = predict(&crate::graph::build_cnm(3, 1).unwrap(), 1).unwrap();
        assert_eq!((p.value, p.rule), (2, Rule::Cnm));
    }

    #[test]
    fn star_power_predicts_2s() {
        let p = predict(&Graph::star(4), 3).unwrap();
        assert_eq!((p.value, p.rule), (6, Rule::StarPower));
    }

    #[test]
    fn path_power_predicts_2s_plus_n_minus_3() {
        let p = predict(&Graph::path(5), 2).unwrap();
        assert_eq!((p.value, p.rule), (6, Rule::PathPower));
        // K_{1,2} is the 3-vertex path; the path rule takes precedence
        let p = predict(&Graph::star(2), 2).unwrap();
        assert_eq!((p.value, p.rule), (4, Rule::PathPower));
    }

    #[test]
    fn classified_tree_power_uses_internal_vertices() {
        // spider with degree sequence (3,2,1,1,1): i(G) = 2
        let g = Graph::new(5, vec![(1, 2), (1, 3), (1, 4), (4, 5)]).unwrap();
        let p = predict(&g, 2).unwrap();
        assert_eq!((p.value, p.rule), (5, Rule::TmHmPower));
    }

    #[test]
    fn disconnected_sums_components() {
        // triangle plus disjoint edge: 1 + 1
        let g = Graph::new(5, vec![(1, 2), (1, 3), (2, 3), (4, 5)]).unwrap();
        let p = predict(&g, 1).unwrap();
        assert_eq!((p.value, p.rule), (2, Rule::GluingSum));
    }

    #[test]
    fn no_rule_cases() {
        // unclassifiable tree at power 2
        let g = Graph::new(7, vec![(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (5, 7)]).unwrap();
        assert!(matches!(predict(&g, 2), Err(BeiError::NoRuleApplies)));
        // 4-cycle at power 1
        let c4 = Graph::new(4, vec![(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert!(matches!(predict(&c4, 1), Err(BeiError::NoRuleApplies)));
        // no edges
        let e = Graph::new(2, Vec::<(usize, usize)>::new()).unwrap();
        assert!(matches!(predict(&e, 1), Err(BeiError::NoRuleApplies)));
    }
}
