//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).

use std::process::Command;

use bei::binomial_edge::{binomial_edge_ideal, is_d_sequence};
use bei::graph::{
    build_cnm, canonical_dseq_order, classify_tree, glue, internal_vertex_count, Graph,
};
use bei::ideal::IdealHandle;
use bei::poly::FieldMode;
use bei::regularity::{
    parse_path_forest, power_regularity_check, product_regularity_check, regularity,
    KoszulOracle,
};

const FP: FieldMode = FieldMode::Fp(32003);
const Q: FieldMode = FieldMode::Q;

fn verdict(criterion: usize, what: &str, ok: bool) {
    println!(
        "criterion {criterion}: {} - {what}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {what}");
}

fn run_sweep(mode: &str, max_n: usize) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_bei"))
        .args([
            "sweep",
            "--max-n",
            &max_n.to_string(),
            "--mode",
            mode,
            "--field",
            "fp",
        ])
        .output()
        .expect("sweep runs");
    assert!(
        out.status.success(),
        "sweep {mode} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let last = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .last()
        .unwrap()
        .to_string();
    serde_json::from_str(&last).unwrap()
}

fn certified_reg(g: &Graph, field: FieldMode) -> (usize, bool) {
    let j = binomial_edge_ideal(g, field).unwrap();
    let r = regularity(&j, None).unwrap();
    (r.observed_reg, r.certified)
}

/// Classification into the d-sequence families coincides with exhaustive
/// ordering search on every unlabeled tree with at most 7 vertices.
#[test]
fn criterion_1_classification_matches_exhaustive_search() {
    let summary = run_sweep("dseq", 7);
    let s = &summary["summary"];
    let ok = s["mismatches"] == 0 && s["inconclusive"] == 0 && s["records"] == 24;
    verdict(
        1,
        "family classification = exhaustive d-sequence search on all 24 trees, n <= 7",
        ok,
    );
}

/// The bridge colon identity holds for every edge of every unlabeled tree
/// with at most 7 vertices (removing the edge and re-adding it as a bridge).
#[test]
fn criterion_2_bridge_colon_identity() {
    let summary = run_sweep("colon", 7);
    let s = &summary["summary"];
    let ok = s["mismatches"] == 0 && s["records"].as_u64().unwrap() > 100;
    verdict(
        2,
        "colon of the edge binomial equals the closure ideal for all bridge extensions, n <= 7",
        ok,
    );
}

/// Regularity baselines: complete graphs, stars, paths, and cliques with
/// pendant edges, certified over F_32003 and cross-checked over Q on the
/// instances with at most 8 ring variables.
#[test]
fn criterion_3_regularity_baselines() {
    let cases: Vec<(Graph, usize)> = vec![
        (Graph::complete(3), 1),
        (Graph::complete(4), 1),
        (Graph::star(2), 2),
        (Graph::star(3), 2),
        (Graph::path(3), 2),
        (Graph::path(4), 3),
        (Graph::path(5), 4),
        (build_cnm(3, 1).unwrap(), 2),
        (build_cnm(3, 2).unwrap(), 2),
    ];
    let mut ok = true;
    for (g, expected) in &cases {
        let (reg, certified) = certified_reg(g, FP);
        ok &= certified && reg == *expected;
        if 2 * g.n() <= 8 {
            let (reg_q, certified_q) = certified_reg(g, Q);
            ok &= certified_q && reg_q == *expected;
        }
    }
    verdict(
        3,
        "9 regularity baselines exact over F_32003, cross-checked over Q at <= 8 variables",
        ok,
    );
}

/// Second powers: reg S/J^2 matches 2s + i(G) - 1 for a star, two paths,
/// and the 5-vertex spider.
#[test]
fn criterion_4_second_powers() {
    let spider = Graph::new(5, vec![(1, 2), (1, 3), (1, 4), (4, 5)]).unwrap();
    let cases: Vec<(Graph, usize)> = vec![
        (Graph::star(3), 4),
        (Graph::path(3), 4),
        (Graph::path(4), 5),
        (spider, 5),
    ];
    let mut ok = true;
    for (g, expected) in &cases {
        let c = power_regularity_check(g, 2, FP).unwrap();
        ok &= c.matches && c.report.certified && c.prediction.value == *expected;
    }
    verdict(
        4,
        "reg S/J^2 = 2s + i(G) - 1 for star K_{1,3}, paths P_3/P_4, and the (3,2,1,1,1) spider",
        ok,
    );
}

/// Product ideals: reg S/(J_H J_{K_m}) = 2 + n for a disjoint edge with K_2
/// and a 2-edge path attached to K_3.
#[test]
fn criterion_5_product_ideals() {
    let c1 = product_regularity_check(&parse_path_forest("1").unwrap(), 2, FP).unwrap();
    let c2 = product_regularity_check(&parse_path_forest("2@1").unwrap(), 3, FP).unwrap();
    let ok = c1.matches
        && c1.report.certified
        && c1.report.observed_reg == 3
        && c2.matches
        && c2.report.certified
        && c2.report.observed_reg == 4;
    verdict(
        5,
        "product-ideal regularity 2 + n: disjoint edge with K_2 -> 3, path attached to K_3 -> 4",
        ok,
    );
}

/// The 6-vertex double-broom with adjacent degree-3 centers: regularity
/// equals the internal vertex count plus one and its canonical edge
/// ordering is a d-sequence.
#[test]
fn criterion_6_adjacent_centers_family() {
    let g = Graph::new(6, vec![(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
    let c = classify_tree(&g).unwrap();
    let (reg, certified) = certified_reg(&g, FP);
    let order = canonical_dseq_order(&c, &g).unwrap();
    let v = is_d_sequence(&g, &order, FP, None).unwrap();
    let ok = c.is_dseq_family()
        && certified
        && reg == 3
        && reg == internal_vertex_count(&g).unwrap() + 1
        && v.holds;
    verdict(
        6,
        "degree sequence (3,3,1,1,1,1) with adjacent centers: reg 3 and canonical d-sequence",
        ok,
    );
}

/// Cross-cutting properties: Groebner-basis uniqueness, colon membership,
/// Hilbert/Betti consistency, field independence, gluing additivity.
#[test]
fn criterion_7_property_suite() {
    let mut ok = true;

    // reduced Groebner bases are generator-order independent
    let j = binomial_edge_ideal(&Graph::star(3), Q).unwrap();
    let mut gens = j.generators().to_vec();
    gens.reverse();
    let j2 = IdealHandle::new(j.nvars(), Q, gens);
    ok &= *j.groebner(bei::poly::MonomialOrder::Lex) == *j2.groebner(bei::poly::MonomialOrder::Lex);

    // g in (I : f) iff g * f in I
    let g = Graph::new(4, vec![(1, 2), (1, 3)]).unwrap();
    let i = binomial_edge_ideal(&g, Q).unwrap();
    let f = bei::binomial_edge::edge_binomial(1, 4, 4, Q);
    let colon = i.colon_poly(&f).unwrap();
    for gen in colon.generators() {
        ok &= i.member(&gen.mul(&f));
    }

    // alternating Betti sums match the Hilbert-series numerator
    let j = binomial_edge_ideal(&Graph::path(3), Q).unwrap();
    let mut o = KoszulOracle::new(&j).unwrap();
    for deg in 0..=5u32 {
        let mut numerator: i64 = 0;
        for k in 0..=j.nvars().min(deg as usize) {
            let c = num_binomial(j.nvars(), k) as i64;
            let hf = o.hilbert_function(deg - k as u32) as i64;
            numerator += if k % 2 == 0 { c * hf } else { -c * hf };
        }
        let mut alt: i64 = 0;
        for i in 0..=j.nvars() {
            let b = o.betti(i, deg) as i64;
            alt += if i % 2 == 0 { b } else { -b };
        }
        ok &= alt == numerator;
    }

    // Betti tables agree over Q and F_32003 on an 8-variable instance
    let g = Graph::path(4);
    let (rq, cq) = certified_reg(&g, Q);
    let (rp, cp) = certified_reg(&g, FP);
    ok &= cq && cp && rq == rp;

    // gluing at free vertices adds regularities
    let glued = glue(&Graph::complete(3), 1, &Graph::path(2), 1).unwrap();
    let (reg, certified) = certified_reg(&glued, FP);
    ok &= certified && reg == 1 + 1;
    let glued = glue(&Graph::path(3), 1, &Graph::path(3), 1).unwrap();
    let (reg, certified) = certified_reg(&glued, FP);
    ok &= certified && reg == 2 + 2;

    verdict(
        7,
        "GB uniqueness, colon membership, Hilbert/Betti sums, field agreement, gluing additivity",
        ok,
    );
}

fn num_binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}
