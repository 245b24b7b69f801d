//! Shared fixtures for the integration and acceptance tests.
#![allow(dead_code)]

use graphon::geometry::{Point, Polyline, Representation};
use graphon::Graph;
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

fn open(pts: &[(i64, i64)]) -> Polyline {
    Polyline::open(pts.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
}

fn closed(pts: &[(i64, i64)]) -> Polyline {
    Polyline::new(pts.iter().map(|&(x, y)| pt(x, y)).collect(), true).unwrap()
}

fn rep(sets: Vec<Vec<Polyline>>) -> Representation {
    Representation::new(sets, None).unwrap()
}

/// Hand-made degenerate configurations.
pub fn handmade_representations() -> Vec<(&'static str, Representation)> {
    let hexagon = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)];
    vec![
        (
            "crossing pair",
            rep(vec![vec![open(&[(0, 0), (2, 2)])], vec![open(&[(0, 2), (2, 0)])]]),
        ),
        (
            "three concurrent segments",
            rep(vec![
                vec![open(&[(0, 0), (2, 2)])],
                vec![open(&[(0, 2), (2, 0)])],
                vec![open(&[(1, 0), (1, 2)])],
            ]),
        ),
        (
            "touching hexagon sides",
            rep((0..6)
                .map(|i| vec![open(&[hexagon[i], hexagon[(i + 1) % 6]])])
                .collect()),
        ),
        (
            "collinear overlap chain",
            rep(vec![
                vec![open(&[(0, 0), (4, 0)])],
                vec![open(&[(2, 0), (6, 0)])],
                vec![open(&[(5, 0), (9, 0)])],
            ]),
        ),
        (
            "T junctions",
            rep(vec![
                vec![open(&[(0, 0), (6, 0)])],
                vec![open(&[(2, 0), (2, 3)])],
                vec![open(&[(4, 3), (4, 0)])],
                vec![open(&[(0, 3), (6, 3)])],
            ]),
        ),
        (
            "four lines through a point",
            rep(vec![
                vec![open(&[(-2, 0), (2, 0)])],
                vec![open(&[(0, -2), (0, 2)])],
                vec![open(&[(-2, -2), (2, 2)])],
                vec![open(&[(-2, 2), (2, -2)])],
            ]),
        ),
        (
            "tangent bends",
            rep(vec![
                vec![open(&[(0, 0), (2, 2), (4, 0)])],
                vec![open(&[(0, 4), (2, 2), (4, 4)])],
                vec![open(&[(0, 2), (1, 2)])],
            ]),
        ),
        (
            "triangles sharing corners and an edge",
            rep(vec![
                vec![closed(&[(0, 0), (3, 0), (0, 3)])],
                vec![closed(&[(3, 0), (6, 0), (3, 3)])],
                vec![closed(&[(0, 3), (3, 0), (3, 3)])],
                vec![open(&[(10, 10), (11, 10)])],
            ]),
        ),
        (
            "star sets",
            rep(vec![
                vec![
                    open(&[(0, 0), (4, 0)]),
                    open(&[(0, 0), (0, 4)]),
                    open(&[(0, 0), (-3, -3)]),
                ],
                vec![open(&[(2, -1), (2, 1)]), open(&[(2, 1), (6, 1)])],
                vec![open(&[(-1, 2), (1, 2)])],
                vec![open(&[(6, 6), (7, 7)])],
            ]),
        ),
        (
            "nested squares",
            rep(vec![
                vec![closed(&[(0, 0), (8, 0), (8, 8), (0, 8)])],
                vec![closed(&[(2, 2), (6, 2), (6, 6), (2, 6)])],
                vec![open(&[(4, 4), (4, 9)])],
                vec![open(&[(3, 3), (5, 5)])],
            ]),
        ),
        (
            "self-crossing polyline",
            rep(vec![
                vec![open(&[(0, 0), (4, 4), (4, 0), (0, 4)])],
                vec![open(&[(2, 0), (2, 5)])],
                vec![open(&[(5, 2), (7, 2)])],
            ]),
        ),
        (
            "identical segments",
            rep(vec![
                vec![open(&[(0, 0), (3, 1)])],
                vec![open(&[(0, 0), (3, 1)])],
                vec![open(&[(3, 1), (3, 5)])],
            ]),
        ),
    ]
}

/// Random polylines on a small integer grid, where collinear overlaps,
/// shared vertices and concurrent segments are frequent.
pub fn random_grid_representation(seed: u64) -> Representation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=7);
    let grid = 7;
    let mut sets = Vec::with_capacity(n);
    for _ in 0..n {
        let len = rng.random_range(2..=4);
        let mut pts: Vec<(i64, i64)> = Vec::new();
        while pts.len() < len {
            let p = (rng.random_range(0..grid), rng.random_range(0..grid));
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        let mut set = vec![open(&pts)];
        if rng.random_range(0..3) == 0 {
            // second piece hanging off a vertex of the first
            let base = pts[rng.random_range(0..pts.len())];
            let mut tip = base;
            while tip == base {
                tip = (rng.random_range(0..grid), rng.random_range(0..grid));
            }
            set.push(open(&[base, tip]));
        }
        sets.push(set);
    }
    rep(sets)
}

/// The fixed corpus: the hand-made cases followed by random grid cases.
pub fn geometry_corpus(size: usize) -> Vec<(String, Representation)> {
    let mut out: Vec<(String, Representation)> = handmade_representations()
        .into_iter()
        .map(|(n, r)| (n.to_string(), r))
        .collect();
    let mut seed = 0;
    while out.len() < size {
        out.push((format!("grid seed {seed}"), random_grid_representation(seed)));
        seed += 1;
    }
    out.truncate(size);
    out
}

/// Graph on `n` vertices whose edges are the set bits of `mask`, pairs
/// `(u, v)`, `u < v`, taken in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut c = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> c & 1 == 1 {
                edges.push((u, v));
            }
            c += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random graphs with `n` in the given range and edge probability `p` picked per graph.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, any::<u64>(), 0.0f64..=1.0).prop_map(|(n, seed, p)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Planarity of a graph with at most 6 vertices by direct search for the
/// obstructions that fit: `K_5`, `K_5` with one edge subdivided, `K_{3,3}`.
pub fn planar_small(g: &Graph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 6, "oracle only covers n <= 6");
    let e = |u: usize, v: usize| g.has_edge(u, v);
    for five in subsets(n, 5) {
        let missing: Vec<(usize, usize)> = five
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| five[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !e(a, b))
            .collect();
        match missing[..] {
            [] => return false,
            [(a, b)] => {
                if (0..n).any(|v| !five.contains(&v) && e(v, a) && e(v, b)) {
                    return false;
                }
            }
            _ => {}
        }
    }
    if n == 6 {
        for side in subsets(6, 3) {
            let other: Vec<usize> = (0..6).filter(|v| !side.contains(v)).collect();
            if side.iter().all(|&a| other.iter().all(|&b| e(a, b))) {
                return false;
            }
        }
    }
    true
}

/// Transitive orientation by backtracking over edge directions, pruning as
/// soon as two oriented arcs `a -> b -> c` lack a consistent `a -> c`.
pub fn transitively_orientable(g: &Graph) -> bool {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // arc[a][b]: Some(true) a -> b, Some(false) b -> a, None undecided
    let mut arc = vec![vec![None::<bool>; n]; n];
    fn ok(g: &Graph, arc: &[Vec<Option<bool>>], a: usize, b: usize) -> bool {
        // check every path through the new arc a -> b
        let n = arc.len();
        for c in 0..n {
            if arc[b][c] == Some(true) {
                if !g.has_edge(a, c) || arc[a][c] == Some(false) {
                    return false;
                }
            }
            if arc[c][a] == Some(true) {
                if !g.has_edge(c, b) || arc[c][b] == Some(false) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(g: &Graph, edges: &[(usize, usize)], i: usize, arc: &mut Vec<Vec<Option<bool>>>) -> bool {
        let Some(&(u, v)) = edges.get(i) else { return true };
        for (a, b) in [(u, v), (v, u)] {
            arc[a][b] = Some(true);
            arc[b][a] = Some(false);
            if ok(g, arc, a, b) && rec(g, edges, i + 1, arc) {
                return true;
            }
            arc[a][b] = None;
            arc[b][a] = None;
        }
        false
    }
    rec(g, &edges, 0, &mut arc)
}

/// Every arc set that orients each edge once and is transitive.
pub fn audit_orientation(g: &Graph, arcs: &[(usize, usize)]) -> bool {
    let n = g.vertex_count();
    let mut to = vec![vec![false; n]; n];
    for &(a, b) in arcs {
        if !g.has_edge(a, b) || to[a][b] || to[b][a] {
            return false;
        }
        to[a][b] = true;
    }
    arcs.len() == g.edge_count() && (0..n).all(|a| (0..n).all(|b| !to[a][b] || (0..n).all(|c| !to[b][c] || to[a][c])))
}

/// Pearson goodness-of-fit p-value of `observed` counts against the cell
/// probabilities `expected`. Cells of probability 0 must be empty and are
/// left out of the statistic.
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let total: u64 = observed.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0;
    for (&o, &p) in observed.iter().zip(expected) {
        if p == 0.0 {
            if o > 0 {
                return 0.0;
            }
            continue;
        }
        let e = p * total as f64;
        stat += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    if cells < 2 {
        return 1.0;
    }
    1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(stat)
}

/// Index of a labelled 3-vertex graph: bit 0 for `01`, bit 1 for `02`,
/// bit 2 for `12`.
pub fn three_vertex_code(g: &Graph) -> usize {
    g.has_edge(0, 1) as usize | (g.has_edge(0, 2) as usize) << 1 | (g.has_edge(1, 2) as usize) << 2
}
