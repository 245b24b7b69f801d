//! Acceptance criteria. Each criterion runs under its own time budget and
//! prints one PASS or FAIL line; the process exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{chi_square_p, graph_from_mask, three_vertex_code};
use graphon::experiments::{run_degree_probe, run_density_probe, run_speed_census, CensusClass, GraphonSpec};
use graphon::geometry::{
    build_outerstring_from_cover, check_general_position, derive_k5_drawing, intersection_graph,
    k5_star_representation, normalize, Disk, Point,
};
use graphon::graph::{
    contains_induced, is_outerplanar, is_planar, make_basic, make_special_graph, membership_cts, BasicKind, SpecialKind,
};
use graphon::graphon::{
    cut_distance_bounds, density_fingerprint, edge_density, entropy, make_constant, make_wka, make_wstar, t_ind_exact,
};
use graphon::recognizers::{
    classify_string, find_clique_cover_with, is_incomparability, Certificate, ClassifyOptions, CoverOptions,
    CoverTarget, Verdict,
};
use graphon::sampling::{is_constructible, psi_blocks, sample_w_random, standard_witness, Claim};
use graphon::{quotient, Graph, Rational, SeedSpec};
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn entropy_identity() -> Outcome {
    let mut checked = 0;
    for k in 1..=6 {
        let want = 1.0 - 1.0 / k as f64;
        for s in 0..=k {
            let e = entropy(&make_wstar(k, s).map_err(|e| e.to_string())?);
            ensure!(
                (e - want).abs() < 1e-12,
                "entropy of W*({k},{s}) is {e}, expected {want}"
            );
            checked += 1;
        }
        for a in [q(0, 1), q(1, 4), q(1, 3), q(1, 2)] {
            let e = entropy(&make_wka(k, &a).map_err(|e| e.to_string())?);
            ensure!((e - want).abs() < 1e-12, "entropy of W^{k}_{a} is {e}, expected {want}");
            checked += 1;
        }
    }
    Ok(format!("{checked} graphons equal 1 - 1/k"))
}

fn density_formula() -> Outcome {
    let d4 = edge_density(&make_wka(4, &q(1, 2)).unwrap());
    let d3 = edge_density(&make_wka(3, &q(1, 2)).unwrap());
    ensure!(d4 == q(19, 32), "W^4_1/2 density {d4}");
    ensure!(d3 == q(11, 18), "W^3_1/2 density {d3}");
    Ok(format!("{d4} and {d3}"))
}

fn sampler_law() -> Outcome {
    let ws = [
        ("W^2_1/2", make_wka(2, &q(1, 2)).unwrap()),
        ("W*_2,1", make_wstar(2, 1).unwrap()),
        ("constant 1/2", make_constant(&q(1, 2)).unwrap()),
    ];
    let mut ps = Vec::new();
    for (name, w) in &ws {
        let expected: Vec<f64> = (0..8)
            .map(|m| t_ind_exact(&graph_from_mask(3, m), w).unwrap().to_f64().unwrap())
            .collect();
        let mut counts = [0u64; 8];
        for s in 0..100_000u64 {
            counts[three_vertex_code(&sample_w_random(w, 3, SeedSpec::new(s)).0)] += 1;
        }
        let p = chi_square_p(&counts, &expected);
        ensure!(p > 1e-3, "{name}: chi-square p = {p:.2e}");
        ps.push(format!("{name} p={p:.3}"));
    }
    Ok(ps.join(", "))
}

fn conjecture_probes() -> Outcome {
    let mut notes = Vec::new();
    for (spec, density, atoms) in [
        ("wka:4:1/2", 19.0 / 32.0, [(0.5, 0.25), (0.625, 0.75)]),
        ("wka:3:1/2", 11.0 / 18.0, [(0.5, 1.0 / 3.0), (2.0 / 3.0, 2.0 / 3.0)]),
    ] {
        let spec: GraphonSpec = spec.parse().unwrap();
        let dens = run_density_probe(&spec, 2000, 20, SeedSpec::new(2024)).map_err(|e| e.to_string())?;
        let mean = dens.value_f64("mean edge density").unwrap();
        ensure!(
            (mean - density).abs() <= 0.01,
            "{spec}: mean edge density {mean}, expected {density}"
        );
        let deg = run_degree_probe(&spec, 2000, 20, SeedSpec::new(2025), 0.05).map_err(|e| e.to_string())?;
        let rows: Vec<(f64, f64)> = deg
            .rows
            .iter()
            .filter_map(|r| {
                let atom = r.statistic.strip_prefix("mass near ")?;
                Some((graphon::graphon::parse_rational(atom)?.to_f64()?, r.value.as_f64()?))
            })
            .collect();
        for (atom, weight) in atoms {
            let Some(&(_, mass)) = rows.iter().find(|(a, _)| (a - atom).abs() < 1e-12) else {
                return Err(format!("{spec}: no degree atom at {atom}"));
            };
            ensure!(
                (mass - weight).abs() <= 0.03,
                "{spec}: mass {mass} near {atom}, expected {weight}"
            );
        }
        notes.push(format!("{spec} density {mean:.4}"));
    }
    Ok(notes.join(", "))
}

fn constructibility_obstruction() -> Outcome {
    let g5 = make_special_graph(SpecialKind::G, 5).unwrap();
    for a in [q(0, 1), q(1, 4), q(1, 2)] {
        let w = make_wka(4, &a).unwrap();
        let found = is_constructible(&g5, &w).map_err(|e| e.to_string())?;
        ensure!(found.is_none(), "G_5 constructible from W^4_{a}");
    }
    let w = make_wka(4, &q(1, 2)).unwrap();
    let k15 = Graph::complete(15);
    let wit = is_constructible(&k15, &w)
        .map_err(|e| e.to_string())?
        .ok_or("K_15 not constructible")?;
    ensure!(
        psi_blocks(&k15, &w, wit.blocks()).unwrap() > Rational::zero(),
        "K_15 witness has psi 0"
    );
    let (g, a) = standard_witness(Claim::EmptyDiagonal, 4, &make_wstar(4, 3).unwrap()).map_err(|e| e.to_string())?;
    let p = psi_blocks(&g, &make_wstar(4, 3).unwrap(), a.blocks()).unwrap();
    ensure!(p > Rational::zero(), "standard witness has psi 0");
    ensure!(g == g5, "standard witness is not G_5");
    Ok(format!("G_5 refuted for three values of a, witness psi {p}"))
}

fn covering_constructions() -> Outcome {
    let mut notes = Vec::new();
    for (k, target, bound) in [
        (4, CoverTarget::PlanarQuotient, 5usize),
        (3, CoverTarget::OuterplanarQuotient, 4usize),
    ] {
        let w = make_wka(k, &q(1, 2)).unwrap();
        let (g, a) = sample_w_random(&w, 300, SeedSpec::new(300 + k as u64));
        let opts = CoverOptions {
            hint: Some(a.partition(w.block_count())),
            ..CoverOptions::default()
        };
        let ev = find_clique_cover_with(&g, target, &opts);
        let Certificate::CliqueCover { partition, .. } = &ev.certificate else {
            return Err(format!("W^{k}: no cover found ({})", ev.verdict));
        };
        ensure!(partition.all_cliques(&g), "W^{k}: a part is not a clique");
        let parts: Vec<Vec<usize>> = partition.parts().iter().filter(|p| !p.is_empty()).cloned().collect();
        let quo = quotient(&g, &graphon::VertexPartition::new(300, parts).unwrap()).unwrap();
        let qn = quo.vertex_count();
        let missing = qn * (qn - 1) / 2 - quo.edge_count();
        ensure!(
            qn <= bound && (qn < bound || missing >= 1),
            "W^{k}: quotient has {qn} vertices, {missing} non-edges"
        );
        let ok = match target {
            CoverTarget::PlanarQuotient => is_planar(&quo),
            _ => is_outerplanar(&quo),
        };
        ensure!(ok, "W^{k}: quotient fails the planarity check");
        notes.push(format!("W^{k} quotient {qn} parts, {} edges", quo.edge_count()));
    }
    Ok(notes.join(", "))
}

fn forbidden_suite() -> Outcome {
    let g5 = make_special_graph(SpecialKind::G, 5).unwrap();
    let g4 = make_special_graph(SpecialKind::G, 4).unwrap();
    ensure!(contains_induced(&g5, &g5).unwrap().is_some(), "G_5 not found in itself");
    let opts = ClassifyOptions::default();
    let v5 = classify_string(&g5, &opts).verdict;
    ensure!(v5 == Verdict::NonMember, "classify_string(G_5) = {v5}");
    let v4 = classify_string(&g4, &opts).verdict;
    ensure!(v4 == Verdict::Member, "classify_string(G_4) = {v4}");
    let ev = find_clique_cover_with(&g4, CoverTarget::OuterplanarQuotient, &CoverOptions::default());
    ensure!(
        ev.verdict == Verdict::NonMember,
        "G_4 outerplanar cover search: {}",
        ev.verdict
    );
    ensure!(
        matches!(ev.certificate, Certificate::ExhaustiveSearch { .. }),
        "G_4 refutation is not exhaustive"
    );
    for (name, g) in [
        ("C_6", make_basic(BasicKind::Cycle, 6).unwrap()),
        ("G_3", make_special_graph(SpecialKind::G, 3).unwrap()),
    ] {
        let v = is_incomparability(&g).verdict;
        ensure!(v == Verdict::NonMember, "is_incomparability({name}) = {v}");
    }
    Ok("all six verdicts as expected".into())
}

fn geometry_equivalence() -> Outcome {
    let corpus = common::geometry_corpus(50);
    for (name, rep) in &corpus {
        let out = normalize(rep, SeedSpec::new(8)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            intersection_graph(&out) == intersection_graph(rep),
            "{name}: intersection graph changed"
        );
        let report = check_general_position(&out);
        ensure!(report.pass, "{name}: general position violations {report:?}");
    }
    let disk = Disk::new(Point::from_ints(0, 0), Rational::from_integer(16.into())).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut graphs = 0;
    for n in 1..=12 {
        for _ in 0..5 {
            let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..3)).collect();
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if labels[u] == labels[v] || rng.random_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let cover = membership_cts(&g, 3, 3)
                .unwrap()
                .ok_or("three cliques do not cover a C(3,3) graph")?;
            let rep = build_outerstring_from_cover(&g, &cover, &disk).map_err(|e| e.to_string())?;
            ensure!(
                intersection_graph(&rep) == g,
                "outer-string construction changed a graph on {n} vertices"
            );
            graphs += 1;
        }
    }
    let convex = [(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)].map(|(x, y)| Point::from_ints(x, y));
    let drawing = derive_k5_drawing(&k5_star_representation(&convex).unwrap()).map_err(|e| e.to_string())?;
    let pairs = drawing.crossing_pairs.len();
    ensure!(pairs == 5, "convex K_5 drawing has {pairs} crossing pairs");
    Ok(format!(
        "{} representations, {graphs} C(3,3) graphs, {pairs} crossing pairs",
        corpus.len()
    ))
}

fn census() -> Outcome {
    let r = run_speed_census(CensusClass::Incomparability, 6).map_err(|e| e.to_string())?;
    let c3 = r.value_f64("count n=3").unwrap();
    ensure!(c3 == 8.0, "count at n=3 is {c3}");
    let ex: Vec<f64> = (4..=6)
        .map(|n| r.value_f64(&format!("exponent n={n}")).unwrap())
        .collect();
    ensure!(ex[2] > 0.5 && ex[2] < 1.0, "exponent at n=6 is {}", ex[2]);
    ensure!(ex[0] > ex[1] && ex[1] > ex[2], "exponents {ex:?} do not decrease");
    Ok(format!("exponents n=4..6: {:.4} {:.4} {:.4}", ex[0], ex[1], ex[2]))
}

fn property_suite() -> Outcome {
    let ws = [
        make_wka(4, &q(1, 2)).unwrap(),
        make_wka(3, &q(1, 3)).unwrap(),
        make_wstar(3, 1).unwrap(),
        make_constant(&q(1, 3)).unwrap(),
    ];
    for w in &ws {
        for n in 0..=4usize {
            let total: Rational = (0..1u64 << (n * n.saturating_sub(1) / 2))
                .map(|m| t_ind_exact(&graph_from_mask(n, m), w).unwrap())
                .sum();
            ensure!(total.is_one(), "induced densities of order {n} sum to {total}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let g = graph_from_mask(rng.random_range(0..=11), rng.random());
        ensure!(g.complement().complement() == g, "complement is not an involution");
    }
    let third = density_fingerprint(&make_wka(4, &q(1, 3)).unwrap(), 4).unwrap();
    let two_thirds = density_fingerprint(&make_wka(4, &q(2, 3)).unwrap(), 4).unwrap();
    ensure!(third.entries == two_thirds.entries, "flip pair fingerprints differ");
    let quarter = density_fingerprint(&make_wka(4, &q(1, 4)).unwrap(), 4).unwrap();
    let half = density_fingerprint(&make_wka(4, &q(1, 2)).unwrap(), 4).unwrap();
    ensure!(
        !quarter.differences(&half).is_empty(),
        "W^4_1/4 and W^4_1/2 share fingerprints"
    );
    for w in &ws {
        let b = cut_distance_bounds(w, w, 3).unwrap();
        ensure!(
            b.lower.is_zero() && b.upper.is_zero(),
            "cut bounds on identical inputs are not 0"
        );
    }
    let flip = cut_distance_bounds(&make_wka(4, &q(1, 3)).unwrap(), &make_wka(4, &q(2, 3)).unwrap(), 3).unwrap();
    ensure!(flip.upper.is_zero(), "flip pair cut upper bound {}", flip.upper);
    Ok("all invariants hold".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("entropy identity", Duration::from_secs(1), entropy_identity),
        ("density formula", Duration::from_secs(1), density_formula),
        ("sampler law", Duration::from_secs(30), sampler_law),
        (
            "conjecture probes at desk scale",
            Duration::from_secs(120),
            conjecture_probes,
        ),
        (
            "constructibility obstruction",
            Duration::from_secs(600),
            constructibility_obstruction,
        ),
        (
            "covering constructions",
            Duration::from_secs(10),
            covering_constructions,
        ),
        ("forbidden-graph suite", Duration::from_secs(300), forbidden_suite),
        (
            "geometry oracle equivalence",
            Duration::from_secs(60),
            geometry_equivalence,
        ),
        ("census", Duration::from_secs(300), census),
        ("property suite", Duration::from_secs(60), property_suite),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > budget => Err(format!("took {took:.1?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(note) => println!("PASS criterion {}: {name} ({took:.2?}): {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
