mod common;

use common::{arb_graph, chi_square_p, graph_from_mask, three_vertex_code};
use graphon::graph::{make_special_graph, SpecialKind};
use graphon::graphon::{make_constant, make_wka, make_wstar, t_ind_exact, StepGraphon};
use graphon::sampling::{is_constructible, psi, sample_w_random, standard_witness, Claim};
use graphon::{Graph, Rational, SeedSpec};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

/// The product over pairs of `W` or `1 - W`, computed here from the block
/// values without the library's evaluation.
fn independent_psi(g: &Graph, w: &StepGraphon, blocks: &[usize]) -> Rational {
    let mut p = q(1, 1);
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            let x = w.values()[blocks[u]][blocks[v]].clone();
            p *= if g.has_edge(u, v) { x } else { q(1, 1) - x };
        }
    }
    p
}

/// Midpoint of each block, as a point in `[0, 1]`.
fn midpoints(w: &StepGraphon, blocks: &[usize]) -> Vec<f64> {
    let mut starts = vec![q(0, 1)];
    for m in w.measures() {
        let last = starts.last().unwrap().clone();
        starts.push(last + m);
    }
    blocks
        .iter()
        .map(|&b| ((&starts[b] + &starts[b + 1]) / q(2, 1)).to_f64().unwrap())
        .collect()
}

const VALUES: [(i64, i64); 4] = [(0, 1), (1, 2), (1, 3), (1, 1)];

fn arb_step() -> impl Strategy<Value = StepGraphon> {
    (1usize..=3)
        .prop_flat_map(|k| {
            (
                proptest::collection::vec(1i64..=3, k),
                proptest::collection::vec(0usize..4, k * k),
            )
        })
        .prop_map(|(weights, vals)| {
            let k = weights.len();
            let total: i64 = weights.iter().sum();
            let values = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let (p, d) = VALUES[vals[i.min(j) * k + i.max(j)]];
                            q(p, d)
                        })
                        .collect()
                })
                .collect();
            StepGraphon::new(weights.iter().map(|&w| q(w, total)).collect(), values).unwrap()
        })
}

#[test]
fn three_vertex_law_matches_induced_densities() {
    let ws = [
        make_wka(3, &q(1, 2)).unwrap(),
        make_wstar(3, 1).unwrap(),
        make_constant(&q(1, 3)).unwrap(),
        StepGraphon::new(
            vec![q(1, 4), q(3, 4)],
            vec![vec![q(1, 1), q(1, 5)], vec![q(1, 5), q(1, 2)]],
        )
        .unwrap(),
    ];
    for w in &ws {
        let expected: Vec<f64> = (0..8u64)
            .map(|code| {
                // graph_from_mask uses the same bit order as three_vertex_code
                t_ind_exact(&graph_from_mask(3, code), w).unwrap().to_f64().unwrap()
            })
            .collect();
        let mut counts = [0u64; 8];
        for s in 0..100_000u64 {
            counts[three_vertex_code(&sample_w_random(w, 3, SeedSpec::new(s)).0)] += 1;
        }
        let p = chi_square_p(&counts, &expected);
        assert!(p > 1e-3, "p = {p} for {}", w.to_text());
    }
}

#[test]
fn sampling_is_byte_reproducible() {
    let w = make_wka(4, &q(1, 2)).unwrap();
    let (g1, a1) = sample_w_random(&w, 300, SeedSpec::new(42));
    let (g2, a2) = sample_w_random(&w, 300, SeedSpec::new(42));
    assert_eq!(g1.to_text(), g2.to_text());
    assert_eq!(a1.to_text(), a2.to_text());
    let (g3, _) = sample_w_random(&w, 300, SeedSpec::new(43));
    assert_ne!(g1.to_text(), g3.to_text());
}

#[test]
fn sampled_graphs_have_positive_probability() {
    let w = make_wka(3, &q(1, 3)).unwrap();
    for s in 0..20 {
        let (g, a) = sample_w_random(&w, 25, SeedSpec::new(s));
        assert!(independent_psi(&g, &w, a.blocks()) > q(0, 1));
    }
}

#[test]
fn standard_witnesses_have_positive_probability() {
    let split = |k: usize| {
        // W^k_{1/2} with a second split group: blocks 0,1 and 2,3 split
        let m = vec![q(1, 2 * k as i64); 4]
            .into_iter()
            .chain(std::iter::repeat_n(q(1, k as i64), k - 2))
            .collect::<Vec<_>>();
        let n = m.len();
        let grp = |b: usize| {
            if b < 2 {
                0
            } else if b < 4 {
                1
            } else {
                b - 2
            }
        };
        let values = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if grp(i) != grp(j) {
                            q(1, 2)
                        } else if i == j {
                            q(1, 1)
                        } else {
                            q(0, 1)
                        }
                    })
                    .collect()
            })
            .collect();
        StepGraphon::new(m, values).unwrap()
    };
    let cases = [
        (
            Claim::EmptyDiagonal,
            4,
            make_wstar(4, 3).unwrap(),
            make_special_graph(SpecialKind::G, 5).unwrap(),
        ),
        (
            Claim::EmptyDiagonal,
            3,
            make_wstar(3, 2).unwrap(),
            make_special_graph(SpecialKind::G, 4).unwrap(),
        ),
        (
            Claim::TwoEmptyDiagonals,
            3,
            make_wstar(3, 1).unwrap(),
            make_special_graph(SpecialKind::B, 4).unwrap(),
        ),
        (
            Claim::TwoSplitGroups,
            4,
            split(4),
            make_special_graph(SpecialKind::H, 5).unwrap(),
        ),
        (
            Claim::TwoSplitGroups,
            2,
            split(2),
            make_special_graph(SpecialKind::B, 3).unwrap(),
        ),
    ];
    for (claim, r, w, want) in cases {
        let (g, a) = standard_witness(claim, r, &w).unwrap_or_else(|e| panic!("{claim:?} r={r}: {e}"));
        assert_eq!(g, want, "{claim:?} r={r}");
        assert!(independent_psi(&g, &w, a.blocks()) > q(0, 1), "{claim:?} r={r}");
        assert!(psi(&g, &w, &midpoints(&w, a.blocks())).unwrap() > q(0, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn constructible_iff_positive_density(g in arb_graph(0, 5), w in arb_step()) {
        let found = is_constructible(&g, &w).unwrap();
        prop_assert_eq!(found.is_some(), !t_ind_exact(&g, &w).unwrap().is_zero());
        if let Some(a) = found {
            prop_assert!(independent_psi(&g, &w, a.blocks()) > q(0, 1));
            prop_assert!(psi(&g, &w, &midpoints(&w, a.blocks())).unwrap() > q(0, 1));
        }
    }
}
