//! Labeled simple graphs, tree recognition, degree-sequence classification
//! into the d-sequence families, tree enumeration, and the graph deformations
//! the algebra needs (`G_e` closure, gluing at free vertices).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{BeiError, Result};

/// A labeled simple graph on vertices `1..=n`. Edges are stored normalized
/// (`i < j`, sorted); values are immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut normalized = Vec::new();
        let mut seen = HashSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(BeiError::Parse(format!("loop edge [{a},{b}]")));
            }
            if a < 1 || a > n || b < 1 || b > n {
                return Err(BeiError::Parse(format!(
                    "edge [{a},{b}] out of range for n={n}"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(BeiError::Parse(format!("duplicate edge [{},{}]", e.0, e.1)));
            }
            normalized.push(e);
        }
        normalized.sort_unstable();
        Ok(Graph { n, edges: normalized })
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    /// Star `K_{1,m}` with center 1 on `m + 1` vertices.
    pub fn star(m: usize) -> Graph {
        Graph::new(m + 1, (2..=m + 1).map(|v| (1, v))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut count = 0;
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Vertex sets of connected components, each sorted.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn from_json_str(s: &str) -> Result<Graph> {
        let raw: GraphJson =
            serde_json::from_str(s).map_err(|e| BeiError::Parse(e.to_string()))?;
        Graph::new(raw.n, raw.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn to_json_string(&self) -> String {
        let raw = GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&raw).expect("graph serialization")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Non-increasing sequence of vertex degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeSequence(pub Vec<usize>);

pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    let mut ds: Vec<usize> = (1..=g.n()).map(|v| g.degree(v)).collect();
    ds.sort_unstable_by(|a, b| b.cmp(a));
    DegreeSequence(ds)
}

/// Number of internal vertices of a tree: vertices of degree at least 2.
pub fn internal_vertex_count(g: &Graph) -> Result<usize> {
    if !g.is_tree() {
        return Err(BeiError::NotATree);
    }
    Ok((1..=g.n()).filter(|&v| g.degree(v) >= 2).count())
}

/// Verdict of the degree-sequence classification of a tree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "variant")]
pub enum Classification {
    P2,
    /// Subdivided star: center of degree `m`, branch lengths `s` (extra
    /// vertices per branch beyond the first).
    Tm { m: usize, center: usize, s: Vec<usize> },
    /// Center `k0` of degree `m` adjacent to a degree-3 vertex `k1`; branches
    /// `1..m-1` hang off `k0`, branches `m, m+1` off `k1`.
    Hm { m: usize, center: usize, co_center: usize, s: Vec<usize> },
    NoDSeqEdgeBinomials,
}

impl Classification {
    pub fn is_dseq_family(&self) -> bool {
        !matches!(self, Classification::NoDSeqEdgeBinomials)
    }

    /// `i(G)` implied by the classification.
    pub fn internal_vertices(&self) -> Option<usize> {
        match self {
            Classification::P2 => Some(0),
            Classification::Tm { s, .. } => Some(s.iter().sum::<usize>() + 1),
            Classification::Hm { s, .. } => Some(s.iter().sum::<usize>() + 2),
            Classification::NoDSeqEdgeBinomials => None,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Classification::P2 => "P2",
            Classification::Tm { .. } => "Tm",
            Classification::Hm { .. } => "Hm",
            Classification::NoDSeqEdgeBinomials => "NoDSeqEdgeBinomials",
        }
    }
}

/// Walk away from `center` through `first`; returns the number of vertices on
/// the branch (so branch length `s = count - 1`).
fn branch_vertex_count(adj: &[Vec<usize>], center: usize, first: usize) -> usize {
    let mut prev = center;
    let mut cur = first;
    let mut count = 1;
    loop {
        let next = adj[cur].iter().copied().find(|&w| w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
                count += 1;
            }
            None => return count,
        }
    }
}

/// Classify a tree by its degree sequence. Precedence: `P2`, then `Tm`, then
/// `Hm`; the patterns are mutually exclusive for `n >= 3`.
pub fn classify_tree(g: &Graph) -> Result<Classification> {
    if !g.is_tree() {
        return Err(BeiError::NotATree);
    }
    if g.n() < 2 {
        return Err(BeiError::BadParameters(
            "classification requires a tree on at least 2 vertices".into(),
        ));
    }
    if g.n() == 2 {
        return Ok(Classification::P2);
    }
    let degrees: Vec<usize> = (0..=g.n()).map(|v| if v == 0 { 0 } else { g.degree(v) }).collect();
    let m = *degrees.iter().max().unwrap();
    let adj = g.adjacency();

    // Tm: degree sequence (m, 2, ..., 1) or (m, 1, ..., 1)
    let others_small = |exclude: &[usize]| {
        (1..=g.n()).all(|v| exclude.contains(&v) || degrees[v] <= 2)
    };
    if m >= 2 {
        let center = (1..=g.n()).find(|&v| degrees[v] == m).unwrap();
        if others_small(&[center]) {
            let s: Vec<usize> = adj[center]
                .iter()
                .map(|&u| branch_vertex_count(&adj, center, u) - 1)
                .collect();
            return Ok(Classification::Tm { m, center, s });
        }
    }

    // Hm: degree sequence (m, 3, 2, ..., 1) or (m, 3, 1, ..., 1) with the
    // degree-m and degree-3 vertices adjacent
    if m >= 3 {
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for k0 in 1..=g.n() {
            if degrees[k0] != m {
                continue;
            }
            for &k1 in &adj[k0] {
                if degrees[k1] == 3 && k1 != k0 {
                    candidates.push((k0, k1));
                }
            }
        }
        for (k0, k1) in candidates {
            if others_small(&[k0, k1]) {
                let mut s: Vec<usize> = adj[k0]
                    .iter()
                    .filter(|&&u| u != k1)
                    .map(|&u| branch_vertex_count(&adj, k0, u) - 1)
                    .collect();
                s.extend(
                    adj[k1]
                        .iter()
                        .filter(|&&u| u != k0)
                        .map(|&u| branch_vertex_count(&adj, k1, u) - 1),
                );
                return Ok(Classification::Hm { m, center: k0, co_center: k1, s });
            }
        }
    }

    Ok(Classification::NoDSeqEdgeBinomials)
}

/// Edge ordering realizing the d-sequence for a classified tree: all edges
/// not incident to the center first (lexicographic), then the center edges,
/// with the center/co-center edge last in the `Hm` case.
pub fn canonical_dseq_order(c: &Classification, g: &Graph) -> Result<Vec<(usize, usize)>> {
    let (center, last): (usize, Option<(usize, usize)>) = match c {
        Classification::P2 => return Ok(g.edges().to_vec()),
        Classification::Tm { center, .. } => (*center, None),
        Classification::Hm { center, co_center, .. } => {
            let e = (*center.min(co_center), *center.max(co_center));
            (*center, Some(e))
        }
        Classification::NoDSeqEdgeBinomials => return Err(BeiError::NotClassified),
    };
    let mut order: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| a != center && b != center)
        .collect();
    let mut center_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| (a == center || b == center) && Some((a, b)) != last)
        .collect();
    center_edges.sort_unstable();
    order.extend(center_edges);
    if let Some(e) = last {
        order.push(e);
    }
    Ok(order)
}

/// `G_e` for `e = {i, j}` not in `E(G)`: adds all pairs within `N_G(i)` and
/// within `N_G(j)`.
pub fn ge_closure(g: &Graph, e: (usize, usize)) -> Result<Graph> {
    let (i, j) = e;
    if i < 1 || i > g.n() || j < 1 || j > g.n() || i == j {
        return Err(BeiError::BadParameters(format!(
            "edge [{i},{j}] invalid for n={}",
            g.n()
        )));
    }
    if g.has_edge(i, j) {
        return Err(BeiError::EdgePresent(i.min(j), i.max(j)));
    }
    let mut edges: HashSet<(usize, usize)> = g.edges().iter().copied().collect();
    for v in [i, j] {
        let nb = g.neighbors(v);
        for (a_idx, &a) in nb.iter().enumerate() {
            for &b in &nb[a_idx + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    Graph::new(g.n(), edges)
}

/// Decode a Pruefer sequence over `[1..=n]` of length `n - 2` into a tree.
pub fn prufer_decode(seq: &[usize], n: usize) -> Graph {
    assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut used = vec![false; n + 1];
    for &v in seq {
        let leaf = (1..=n).find(|&u| !used[u] && degree[u] == 1).unwrap();
        edges.push((leaf, v));
        used[leaf] = true;
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let mut rem = (1..=n).filter(|&u| !used[u] && degree[u] == 1);
    let a = rem.next().unwrap();
    let b = rem.next().unwrap();
    edges.push((a, b));
    Graph::new(n, edges).unwrap()
}

/// Stream of all `n^(n-2)` labeled trees on `n` vertices (Cayley).
pub fn labeled_trees(n: usize) -> Box<dyn Iterator<Item = Graph>> {
    assert!((1..=12).contains(&n), "labeled enumeration supports 1 <= n <= 12");
    if n == 1 {
        return Box::new(std::iter::once(Graph::new(1, Vec::new()).unwrap()));
    }
    if n == 2 {
        return Box::new(std::iter::once(Graph::new(2, vec![(1, 2)]).unwrap()));
    }
    let len = n - 2;
    let mut seq = vec![1usize; len];
    let mut done = false;
    Box::new(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let g = prufer_decode(&seq, n);
        // odometer increment over [1..=n]^len
        let mut k = len;
        loop {
            if k == 0 {
                done = true;
                break;
            }
            k -= 1;
            if seq[k] < n {
                seq[k] += 1;
                for s in seq[k + 1..].iter_mut() {
                    *s = 1;
                }
                break;
            }
        }
        Some(g)
    }))
}

/// One representative per isomorphism class, via AHU canonical-code dedup of
/// the labeled enumeration.
pub fn unlabeled_trees(n: usize) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in labeled_trees(n) {
        let code = canonical_code(&g);
        if seen.insert(code) {
            out.push(g);
        }
    }
    out
}

fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 1 {
        return vec![1];
    }
    let adj = g.adjacency();
    let mut size = vec![0usize; n + 1];
    let mut max_comp = vec![0usize; n + 1];
    // iterative post-order from vertex 1
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![0usize; n + 1];
    let mut stack = vec![1usize];
    let mut visited = vec![false; n + 1];
    visited[1] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    for &v in order.iter().rev() {
        size[v] = 1;
        for &w in &adj[v] {
            if w != parent[v] {
                size[v] += size[w];
                max_comp[v] = max_comp[v].max(size[w]);
            }
        }
        max_comp[v] = max_comp[v].max(n - size[v]);
    }
    let best = (1..=n).map(|v| max_comp[v]).min().unwrap();
    (1..=n).filter(|&v| max_comp[v] == best).collect()
}

fn rooted_code(adj: &[Vec<usize>], colors: &[u32], v: usize, parent: usize) -> String {
    let mut child_codes: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, colors, w, v))
        .collect();
    child_codes.sort();
    format!("({}{})", colors[v], child_codes.concat())
}

/// AHU canonical code of a tree rooted at its centroid(s); equal codes mean
/// isomorphic trees.
pub fn canonical_code(g: &Graph) -> String {
    canonical_code_colored(g, &vec![0; g.n() + 1])
}

/// Colored variant: equal codes mean isomorphic via a color-preserving map.
/// `colors` is indexed by vertex (slot 0 unused).
pub fn canonical_code_colored(g: &Graph, colors: &[u32]) -> String {
    assert!(g.is_tree());
    let adj = g.adjacency();
    let cs = centroids(g);
    match cs.as_slice() {
        [c] => rooted_code(&adj, colors, *c, 0),
        [c1, c2] => {
            let mut halves = [
                rooted_code(&adj, colors, *c1, *c2),
                rooted_code(&adj, colors, *c2, *c1),
            ];
            halves.sort();
            format!("[{}{}]", halves[0], halves[1])
        }
        _ => unreachable!("a tree has one or two centroids"),
    }
}

/// Group the edges of a tree into automorphism orbits, detected by marking an
/// edge's endpoints and comparing colored canonical codes.
pub fn edge_orbits(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let mut groups: Vec<(String, Vec<(usize, usize)>)> = Vec::new();
    for &(a, b) in g.edges() {
        let mut colors = vec![0u32; g.n() + 1];
        colors[a] = 1;
        colors[b] = 1;
        let code = canonical_code_colored(g, &colors);
        match groups.iter_mut().find(|(c, _)| *c == code) {
            Some((_, v)) => v.push((a, b)),
            None => groups.push((code, vec![(a, b)])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}

/// All maximal cliques (Bron-Kerbosch with pivoting). Desk scale: `n <= 32`.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    assert!(g.n() <= 32, "maximal_cliques supports n <= 32");
    let n = g.n();
    let mut adj = vec![0u64; n + 1];
    for &(a, b) in g.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let all: u64 = ((1..=n).fold(0u64, |acc, v| acc | (1 << v))) as u64;
    let mut out = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<Vec<usize>>) {
    if p == 0 && x == 0 {
        let clique: Vec<usize> = (0..64).filter(|&v| r & (1 << v) != 0).collect();
        out.push(clique);
        return;
    }
    // pivot: vertex of P ∪ X maximizing |P ∩ N(u)|
    let pivot = (0..64)
        .filter(|&v| (p | x) & (1 << v) != 0)
        .max_by_key(|&v| (p & adj[v]).count_ones())
        .unwrap();
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        candidates &= !bit;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Is `v` a free vertex (contained in exactly one maximal clique)?
pub fn is_free_vertex(g: &Graph, v: usize) -> bool {
    maximal_cliques(g)
        .iter()
        .filter(|c| c.contains(&v))
        .count()
        == 1
}

/// Glue two graphs by identifying a free vertex of each. The result keeps
/// `g1`'s labels and appends `g2`'s remaining vertices.
pub fn glue(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Graph> {
    if !is_free_vertex(g1, v1) {
        return Err(BeiError::NotFreeVertex(v1));
    }
    if !is_free_vertex(g2, v2) {
        return Err(BeiError::NotFreeVertex(v2));
    }
    let n = g1.n() + g2.n() - 1;
    let map = |v: usize| -> usize {
        if v == v2 {
            v1
        } else if v < v2 {
            g1.n() + v
        } else {
            g1.n() + v - 1
        }
    };
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(a, b)| (map(a), map(b))));
    Graph::new(n, edges)
}

/// The graph `C_{n,m}`: complete graph on `v_0..v_{n-1}` (labels `1..=n`)
/// with `m` pendant edges at `v_0` (labels `n+1..=n+m`).
pub fn build_cnm(n: usize, m: usize) -> Result<Graph> {
    if n < 3 || m < 1 {
        return Err(BeiError::BadParameters(format!(
            "C_{{n,m}} requires n >= 3 and m >= 1, got n={n}, m={m}"
        )));
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            edges.push((i, j));
        }
    }
    for k in 1..=m {
        edges.push((1, n + k));
    }
    Graph::new(n + m, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// G_1 of the T_m family: center of degree 5, branch lengths (1,1,0,1,0).
    fn g1() -> Graph {
        // center 1; branches: 2-3, 4-5, 6, 7-8, 9
        Graph::new(
            9,
            vec![
                (1, 2),
                (2, 3),
                (1, 4),
                (4, 5),
                (1, 6),
                (1, 7),
                (7, 8),
                (1, 9),
            ],
        )
        .unwrap()
    }

    /// G_2 of the H_m family: degree sequence (4,3,1,1,1,1,1), centers adjacent.
    fn g2() -> Graph {
        // k0 = 1 (degree 4), k1 = 2 (degree 3)
        Graph::new(7, vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (2, 7)]).unwrap()
    }

    /// Spider with two degree-3 vertices at distance 2.
    fn spider_distance_two() -> Graph {
        Graph::new(7, vec![(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (5, 7)]).unwrap()
    }

    #[test]
    fn degree_sequence_examples() {
        assert_eq!(degree_sequence(&Graph::star(4)).0, vec![4, 1, 1, 1, 1]);
        assert_eq!(degree_sequence(&g1()).0, vec![5, 2, 2, 2, 1, 1, 1, 1, 1]);
        assert_eq!(degree_sequence(&g2()).0, vec![4, 3, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn internal_vertex_count_examples() {
        assert_eq!(internal_vertex_count(&Graph::star(3)).unwrap(), 1);
        assert_eq!(internal_vertex_count(&Graph::path(5)).unwrap(), 3);
        assert_eq!(internal_vertex_count(&g1()).unwrap(), 4);
        assert!(matches!(
            internal_vertex_count(&Graph::complete(3)),
            Err(BeiError::NotATree)
        ));
    }

    #[test]
    fn classify_p2() {
        assert_eq!(classify_tree(&Graph::path(2)).unwrap(), Classification::P2);
    }

    #[test]
    fn classify_g1_as_t5() {
        match classify_tree(&g1()).unwrap() {
            Classification::Tm { m, center, s } => {
                assert_eq!(m, 5);
                assert_eq!(center, 1);
                let mut s_sorted = s.clone();
                s_sorted.sort_unstable();
                assert_eq!(s_sorted, vec![0, 0, 1, 1, 1]);
                assert_eq!(s.iter().sum::<usize>() + 1, 4); // i(G)
            }
            other => panic!("expected Tm, got {other:?}"),
        }
    }

    #[test]
    fn classify_g2_as_h4() {
        match classify_tree(&g2()).unwrap() {
            Classification::Hm { m, center, co_center, s } => {
                assert_eq!(m, 4);
                assert_eq!(center, 1);
                assert_eq!(co_center, 2);
                assert_eq!(s, vec![0, 0, 0, 0, 0]);
            }
            other => panic!("expected Hm, got {other:?}"),
        }
    }

    #[test]
    fn classify_spider_rejected() {
        assert_eq!(
            classify_tree(&spider_distance_two()).unwrap(),
            Classification::NoDSeqEdgeBinomials
        );
    }

    #[test]
    fn classify_paths_as_t2() {
        for n in 3..=6 {
            match classify_tree(&Graph::path(n)).unwrap() {
                Classification::Tm { m, s, .. } => {
                    assert_eq!(m, 2);
                    assert_eq!(s.iter().sum::<usize>() + 1, n - 2);
                }
                other => panic!("P_{n} should be Tm, got {other:?}"),
            }
        }
    }

    #[test]
    fn corollary_degree_patterns_rejected() {
        // two vertices of degree >= 4
        let mut edges = vec![(1, 2), (1, 3), (1, 4), (1, 5)];
        edges.extend([(5, 6), (5, 7), (5, 8)]);
        let g = Graph::new(8, edges).unwrap();
        assert_eq!(
            classify_tree(&g).unwrap(),
            Classification::NoDSeqEdgeBinomials
        );
        // three vertices of degree >= 3
        let g = Graph::new(
            10,
            vec![
                (1, 2),
                (1, 3),
                (1, 4),
                (4, 5),
                (4, 6),
                (6, 7),
                (6, 8),
                (8, 9),
                (9, 10),
            ],
        )
        .unwrap();
        assert_eq!(
            classify_tree(&g).unwrap(),
            Classification::NoDSeqEdgeBinomials
        );
    }

    #[test]
    fn canonical_order_star() {
        let g = Graph::star(3);
        let c = classify_tree(&g).unwrap();
        let order = canonical_dseq_order(&c, &g).unwrap();
        assert_eq!(order.len(), 3);
        assert!(order.iter().all(|e| g.edges().contains(e)));
    }

    #[test]
    fn canonical_order_hm_center_edge_last() {
        let g = g2();
        let c = classify_tree(&g).unwrap();
        let order = canonical_dseq_order(&c, &g).unwrap();
        assert_eq!(order.len(), 6);
        // the two k1-branch edges come first, then k0 edges, then {k0,k1}
        assert_eq!(&order[..2], &[(2, 6), (2, 7)]);
        assert_eq!(*order.last().unwrap(), (1, 2));
    }

    #[test]
    fn canonical_order_unclassified_errors() {
        let g = spider_distance_two();
        let c = classify_tree(&g).unwrap();
        assert!(matches!(
            canonical_dseq_order(&c, &g),
            Err(BeiError::NotClassified)
        ));
    }

    #[test]
    fn ge_closure_star_adds_leaf_pair() {
        // star center 1, leaves 2,3 plus isolated vertex 4; e = {1,4}
        let g = Graph::new(4, vec![(1, 2), (1, 3)]).unwrap();
        let ge = ge_closure(&g, (1, 4)).unwrap();
        assert!(ge.has_edge(2, 3));
        assert_eq!(ge.num_edges(), 3);
    }

    #[test]
    fn ge_closure_low_degree_identity() {
        // deg(i), deg(j) <= 1 in g ∪ e: G_e = G
        let g = Graph::new(4, vec![(1, 2)]).unwrap();
        let ge = ge_closure(&g, (2, 3)).unwrap();
        assert_eq!(ge, g);
        // disjoint supports
        let g = Graph::new(5, vec![(2, 3)]).unwrap();
        assert_eq!(ge_closure(&g, (4, 5)).unwrap(), g);
    }

    #[test]
    fn ge_closure_rejects_present_edge() {
        let g = Graph::path(3);
        assert!(matches!(
            ge_closure(&g, (1, 2)),
            Err(BeiError::EdgePresent(1, 2))
        ));
    }

    #[test]
    fn ge_closure_superset_invariant() {
        for g in unlabeled_trees(6) {
            for i in 1..=6 {
                for j in i + 1..=6 {
                    if g.has_edge(i, j) {
                        continue;
                    }
                    let ge = ge_closure(&g, (i, j)).unwrap();
                    for e in g.edges() {
                        assert!(ge.edges().contains(e));
                    }
                }
            }
        }
    }

    #[test]
    fn labeled_tree_counts_follow_cayley() {
        assert_eq!(labeled_trees(3).count(), 3);
        assert_eq!(labeled_trees(4).count(), 16);
        assert_eq!(labeled_trees(5).count(), 125);
    }

    #[test]
    fn unlabeled_tree_counts() {
        let expected = [1usize, 1, 1, 2, 3, 6, 11];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(unlabeled_trees(i + 1).len(), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn single_vertex_tree() {
        let ts = unlabeled_trees(1);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].n(), 1);
        assert!(ts[0].edges().is_empty());
    }

    #[test]
    fn glue_examples() {
        let p2 = Graph::path(2);
        let p3 = glue(&p2, 2, &p2, 1).unwrap();
        assert_eq!(canonical_code(&p3), canonical_code(&Graph::path(3)));

        let tri = Graph::complete(3);
        let g = glue(&tri, 1, &p2, 1).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.num_edges(), 4);

        // degree-2 path vertex is not free
        let p3g = Graph::path(3);
        assert!(matches!(
            glue(&p3g, 2, &p2, 1),
            Err(BeiError::NotFreeVertex(2))
        ));
    }

    #[test]
    fn maximal_cliques_examples() {
        let t = Graph::path(4);
        let cliques = maximal_cliques(&t);
        assert_eq!(cliques.len(), 3); // the edges

        let k4 = Graph::complete(4);
        assert_eq!(maximal_cliques(&k4), vec![vec![1, 2, 3, 4]]);

        let c32 = build_cnm(3, 2).unwrap();
        let cliques = maximal_cliques(&c32);
        assert_eq!(cliques, vec![vec![1, 2, 3], vec![1, 4], vec![1, 5]]);
    }

    #[test]
    fn build_cnm_examples() {
        let c32 = build_cnm(3, 2).unwrap();
        assert_eq!(c32.n(), 5);
        assert_eq!(c32.num_edges(), 5);
        let c31 = build_cnm(3, 1).unwrap();
        assert_eq!((c31.n(), c31.num_edges()), (4, 4));
        let c41 = build_cnm(4, 1).unwrap();
        assert_eq!((c41.n(), c41.num_edges()), (5, 7));
        assert!(build_cnm(2, 1).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = g2();
        let s = g.to_json_string();
        assert_eq!(Graph::from_json_str(&s).unwrap(), g);
        assert!(Graph::from_json_str(r#"{"n":3,"edges":[[1,1]]}"#).is_err());
        assert!(Graph::from_json_str(r#"{"n":3,"edges":[[1,2],[2,1]]}"#).is_err());
        assert!(Graph::from_json_str(r#"{"n":3,"edges":[[1,4]]}"#).is_err());
    }

    #[test]
    fn canonical_code_invariant_under_relabeling() {
        let g = g1();
        // relabel by the permutation v -> 10 - v
        let relabeled = Graph::new(
            9,
            g.edges().iter().map(|&(a, b)| (10 - a, 10 - b)),
        )
        .unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&relabeled));
    }

    #[test]
    fn edge_orbits_of_star_collapse() {
        let orbits = edge_orbits(&Graph::star(4));
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 4);
        let orbits = edge_orbits(&Graph::path(5));
        assert_eq!(orbits.len(), 2); // outer and inner edges
    }
}
