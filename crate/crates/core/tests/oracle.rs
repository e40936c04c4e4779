use epos_core::expansions::{path_csf_e, spider4m_csf, spider_csf_e};
use epos_core::graph::{complete_graph, csf_subset_expansion, path_graph, spider_graph, Graph, DEFAULT_EDGE_BUDGET};
use epos_core::{EFunction, Partition};
use num_bigint::BigInt;

fn ef(terms: &[(&[usize], i64)]) -> EFunction {
    let mut f = EFunction::zero();
    for (p, c) in terms {
        f.add_parts(p, BigInt::from(*c));
    }
    f
}

pub fn spider_621_table() -> EFunction {
    ef(&[
        (&[10], 10),
        (&[9, 1], 17),
        (&[8, 2], 22),
        (&[8, 1, 1], 7),
        (&[7, 3], 11),
        (&[7, 2, 1], 24),
        (&[6, 4], 38),
        (&[6, 3, 1], 32),
        (&[6, 2, 2], 26),
        (&[6, 2, 1, 1], 5),
        (&[5, 5], 20),
        (&[5, 4, 1], 55),
        (&[5, 3, 2], 37),
        (&[5, 3, 1, 1], 16),
        (&[5, 2, 2, 1], 20),
        (&[4, 4, 2], 42),
        (&[4, 4, 1, 1], 9),
        (&[4, 3, 3], 1),
        (&[4, 3, 2, 1], 59),
        (&[4, 2, 2, 2], 22),
        (&[4, 2, 2, 1, 1], 3),
        (&[3, 3, 3, 1], 8),
        (&[3, 3, 2, 2], 9),
        (&[3, 3, 2, 1, 1], 8),
        (&[3, 2, 2, 2, 1], 9),
        (&[2, 2, 2, 2, 2], 2),
    ])
}

#[test]
fn spider_621_matches_table() {
    let table = spider_621_table();
    assert_eq!(table.len(), 26);
    let f = spider_csf_e(6, 2, 1).unwrap();
    assert_eq!(f, table);
    assert_eq!(spider4m_csf(1).unwrap(), table);
    assert!(f.is_e_positive());
    let oracle = csf_subset_expansion(&spider_graph(&[6, 2, 1]).unwrap(), DEFAULT_EDGE_BUDGET).unwrap();
    assert_eq!(oracle, table);
}

#[test]
fn paths_match_oracle() {
    for n in 1..=12 {
        let g = path_graph(n).unwrap();
        assert_eq!(path_csf_e(n).unwrap(), csf_subset_expansion(&g, DEFAULT_EDGE_BUDGET).unwrap(), "n = {}", n);
    }
}

#[test]
fn spiders_match_oracle() {
    let mut checked = 0;
    for a in 1..=10 {
        for b in 1..=a {
            for c in 1..=b {
                if a + b + c + 1 > 12 {
                    continue;
                }
                let g = spider_graph(&[a, b, c]).unwrap();
                let oracle = csf_subset_expansion(&g, DEFAULT_EDGE_BUDGET).unwrap();
                assert_eq!(spider_csf_e(a, b, c).unwrap(), oracle, "S({}, {}, {})", a, b, c);
                checked += 1;
            }
        }
    }
    assert!(checked > 40);
}

fn binomial(n: i64, r: usize) -> i64 {
    let mut acc = 1i64;
    for i in 0..r as i64 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `X_G(1^k)`: `e_r` becomes `C(k, r)`.
fn evaluate_at_ones(f: &EFunction, k: i64) -> BigInt {
    let mut total = BigInt::from(0);
    for (lambda, c) in f.terms() {
        let v: i64 = lambda.parts().iter().map(|&r| binomial(k, r)).product();
        total += c * v;
    }
    total
}

fn chromatic_polynomial(n: usize, edges: &[(usize, usize)], k: i64) -> i64 {
    // deletion-contraction on an edge list with vertex labels 0..n
    if edges.is_empty() {
        return k.pow(n as u32);
    }
    let (u, v) = edges[0];
    let rest = &edges[1..];
    let deleted = chromatic_polynomial(n, rest, k);
    let mut merged: Vec<(usize, usize)> = Vec::new();
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    for &(a, b) in rest {
        let (a, b) = (relabel(a), relabel(b));
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if !merged.contains(&e) {
            merged.push(e);
        }
    }
    deleted - chromatic_polynomial(n - 1, &merged, k)
}

#[test]
fn chromatic_polynomial_cross_check() {
    let mut graphs: Vec<Graph> = vec![
        complete_graph(4).unwrap(),
        path_graph(6).unwrap(),
        spider_graph(&[3, 2, 2]).unwrap(),
        Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
        Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
        Graph::new(8, vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5)]).unwrap(),
    ];
    // a few pseudo-random graphs on 7 and 8 vertices
    let mut seed = 0x2545_f491_4f6c_dd1du64;
    for n in [7usize, 8, 8] {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                if seed.is_multiple_of(3) && edges.len() < 14 {
                    edges.push((u, v));
                }
            }
        }
        graphs.push(Graph::new(n, edges).unwrap());
    }
    for g in &graphs {
        let x = csf_subset_expansion(g, DEFAULT_EDGE_BUDGET).unwrap();
        for k in 1..=4 {
            let expected = chromatic_polynomial(g.vertex_count(), g.edges(), k);
            assert_eq!(evaluate_at_ones(&x, k), BigInt::from(expected), "{:?} at k = {}", g, k);
        }
    }
}

#[test]
fn e_positivity_by_direct_expansion() {
    for m in 1..=4 {
        let f = spider4m_csf(m).unwrap();
        assert!(f.is_e_positive(), "m = {}", m);
        assert!(f.terms().all(|(p, _)| p.size() == 6 * m + 4));
    }
}

#[test]
fn top_term_of_spider() {
    let f = spider4m_csf(2).unwrap();
    assert_eq!(f.coeff(&Partition::new(vec![16]).unwrap()), BigInt::from(16));
}
