//! Explicit constructions: outer-string representations from outerplanar
//! clique covers, and the drawing of `K_5` read off a representation of a
//! graph between `B_5` and `G_5`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use super::arrangement::Arrangement;
use super::predicates::{circle_point, rational_near, segment_contact, Contact, Point};
use super::{intersection_graph, Disk, Polyline, Representation};
use crate::error::{Error, Result};
use crate::graph::{outerplanar_cyclic_order, quotient, special_vertex_index, Graph, VertexPartition};
use crate::Rational;

/// Halvings of the chord offset tried before giving up.
const OFFSET_HALVINGS: usize = 40;

/// Outer-string representation of `g` from a clique cover with outerplanar
/// quotient. Parts get distinct points of the circle in a cyclic order in
/// which quotient edges are non-crossing chords. Every cross-part edge `xy`
/// gets a two-segment curve between the two part points, bent at `a_xy` by
/// its own offset along the chord's normal; `x` owns the half at its part
/// point and `y` the other half, meeting at `a_xy`. Vertices without
/// cross-part edges get a short inward stub at their part point.
pub fn build_outerstring_from_cover(g: &Graph, cover: &VertexPartition, disk: &Disk) -> Result<Representation> {
    let n = g.vertex_count();
    if cover.vertex_count() != n {
        return Err(Error::InvalidPartition(format!(
            "cover has {} vertices, graph has {n}",
            cover.vertex_count()
        )));
    }
    if !cover.all_cliques(g) {
        return Err(Error::InvalidPartition("cover parts must be cliques".into()));
    }
    let parts: Vec<Vec<usize>> = cover.parts().iter().filter(|p| !p.is_empty()).cloned().collect();
    let compact = VertexPartition::new(n, parts.clone())?;
    let q = quotient(g, &compact)?;
    let order = outerplanar_cyclic_order(&q)
        .ok_or_else(|| Error::InvalidPartition("quotient of the cover is not outerplanar".into()))?;
    let k = parts.len();
    let mut part_of = vec![0; n];
    for (i, p) in parts.iter().enumerate() {
        for &x in p {
            part_of[x] = i;
        }
    }
    let mut anchor = vec![disk.center.clone(); k];
    for (pos, &part) in order.iter().enumerate() {
        let theta = -std::f64::consts::PI + std::f64::consts::TAU * (pos as f64 + 0.5) / k as f64;
        let u = circle_point(&rational_near((theta / 2.0).tan()));
        anchor[part] = disk.center.add(&u.scale(&disk.radius));
    }

    // cross-part edges grouped by part pair, in edge order
    let mut chords: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> = Default::default();
    for (x, y) in g.edges() {
        let (a, b) = (part_of[x], part_of[y]);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let (x, y) = if a < b { (x, y) } else { (y, x) };
        chords.entry(key).or_default().push((x, y));
    }

    let mut tau = Rational::new(BigInt::one(), BigInt::from(8));
    for _ in 0..OFFSET_HALVINGS {
        let mut sets: Vec<Vec<Polyline>> = vec![Vec::new(); n];
        for (&(a, b), edges) in &chords {
            let (p, q) = (&anchor[a], &anchor[b]);
            let pq = p.to(q);
            let mid = p.add(&pq.scale(&Rational::new(BigInt::one(), BigInt::from(2))));
            let m = edges.len() as i64;
            for (s, &(x, y)) in edges.iter().enumerate() {
                let t = &tau * Rational::new(BigInt::from(2 * s as i64 + 1 - m), BigInt::from(2 * m));
                let bend = mid.add(&pq.perp().scale(&t));
                sets[x].push(Polyline::segment(p.clone(), bend.clone())?);
                sets[y].push(Polyline::segment(bend, q.clone())?);
            }
        }
        for x in 0..n {
            if sets[x].is_empty() {
                let p = &anchor[part_of[x]];
                let inward = p
                    .to(&disk.center)
                    .scale(&(&tau / Rational::from_integer(BigInt::from(4))));
                sets[x].push(Polyline::segment(p.clone(), p.add(&inward))?);
            }
        }
        let rep = Representation::new(sets, Some(disk.clone()))?;
        if intersection_graph(&rep) == *g {
            return Ok(rep);
        }
        tau = tau / Rational::from_integer(BigInt::from(2));
    }
    Err(Error::Geometry("no chord offset separated the connector curves".into()))
}

/// Two edges of the extracted `K_5` drawing with disjoint end vertices
/// that meet. Labels are the 1-based vertices of `K_5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingPair {
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// Distinct isolated common points.
    pub crossings: usize,
    /// The two curves share a piece of positive length.
    pub overlapping: bool,
}

impl CrossingPair {
    pub fn odd(&self) -> bool {
        self.crossings % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K5Drawing {
    /// `v_i` for `i = 1..=5`.
    pub vertices: Vec<Point>,
    /// `(i, j, e_ij)` for `i < j`.
    pub edges: Vec<(usize, usize, Vec<Point>)>,
    pub crossing_pairs: Vec<CrossingPair>,
}

fn segments_of(rep: &Representation, v: usize) -> Vec<(Point, Point)> {
    rep.segments_of(v)
        .into_iter()
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect()
}

/// Breadth-first path inside one set between two of its points.
fn path_within(segs: &[(Point, Point)], from: &Point, to: &Point) -> Option<Vec<Point>> {
    let arr = Arrangement::build(segs, &[from.clone(), to.clone()]);
    let parent = arr.bfs_parents(arr.node(from)?);
    let path = Arrangement::path(&parent, arr.node(to)?)?;
    Some(path.into_iter().map(|i| arr.nodes[i].clone()).collect())
}

fn first_contact(a: &[(Point, Point)], b: &[(Point, Point)]) -> Option<Point> {
    a.iter().find_map(|(p, q)| {
        b.iter().find_map(|(r, s)| match segment_contact(p, q, r, s) {
            Contact::None => None,
            Contact::Point(x) | Contact::Overlap(x, _) => Some(x),
        })
    })
}

/// Reads a drawing of `K_5` off a representation whose 15 sets are indexed
/// like the special graphs on `[5]` (singletons first, then pairs in
/// lexicographic order). Vertex `i` is the base point `v_i` of `A_i`; edge
/// `e_ij` runs inside `A_i` from `v_i` to a point `v_ij` of `A_i` and
/// `A_ij`, inside `A_ij` to `v_ji`, and inside `A_j` to `v_j`. Reports every
/// pair of independent edges that meet.
pub fn derive_k5_drawing(rep: &Representation) -> Result<K5Drawing> {
    if rep.vertex_count() != 15 {
        return Err(Error::Geometry(format!(
            "expected 15 sets indexed by the subsets of [5], found {}",
            rep.vertex_count()
        )));
    }
    let idx = |i: usize, j: usize| special_vertex_index(5, i, j).expect("labels in range");
    let segs: Vec<Vec<(Point, Point)>> = (0..15).map(|v| segments_of(rep, v)).collect();
    let base: Vec<Point> = (1..=5).map(|i| rep.set(idx(i, i))[0].points()[0].clone()).collect();
    let mut join = vec![vec![None; 6]; 6];
    for i in 1..=5 {
        for j in 1..=5 {
            if i != j {
                let p = first_contact(&segs[idx(i, i)], &segs[idx(i, j)])
                    .ok_or_else(|| Error::Geometry(format!("A_{i} and A_{{{i},{j}}} do not meet")))?;
                join[i][j] = Some(p);
            }
        }
    }
    let mut edges = Vec::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            let vij = join[i][j].as_ref().expect("filled above");
            let vji = join[j][i].as_ref().expect("filled above");
            let broken = || Error::Geometry(format!("no path for edge {i}{j}"));
            let mut curve = path_within(&segs[idx(i, i)], &base[i - 1], vij).ok_or_else(broken)?;
            curve.extend(path_within(&segs[idx(i, j)], vij, vji).ok_or_else(broken)?);
            curve.extend(path_within(&segs[idx(j, j)], vji, &base[j - 1]).ok_or_else(broken)?);
            curve.dedup();
            edges.push((i, j, curve));
        }
    }
    let mut crossing_pairs = Vec::new();
    for (a, (i, j, e)) in edges.iter().enumerate() {
        for (k, l, f) in &edges[a + 1..] {
            if [i, j].iter().any(|x| *x == k || *x == l) {
                continue;
            }
            let mut points = BTreeSet::new();
            let mut overlapping = false;
            for s in e.windows(2) {
                for t in f.windows(2) {
                    match segment_contact(&s[0], &s[1], &t[0], &t[1]) {
                        Contact::None => {}
                        Contact::Point(x) => {
                            points.insert(x);
                        }
                        Contact::Overlap(..) => overlapping = true,
                    }
                }
            }
            if !points.is_empty() || overlapping {
                crossing_pairs.push(CrossingPair {
                    first: (*i, *j),
                    second: (*k, *l),
                    crossings: points.len(),
                    overlapping,
                });
            }
        }
    }
    Ok(K5Drawing {
        vertices: base,
        edges,
        crossing_pairs,
    })
}

/// Representation of the subdivided straight-line `K_5` on five points:
/// `A_i` is the star of the first thirds of the edges at point `i`, and
/// `A_ij` the middle third of edge `ij`.
pub fn k5_star_representation(points: &[Point; 5]) -> Result<Representation> {
    let third = |i: usize, j: usize, num: i64| {
        let d = points[i].to(&points[j]);
        points[i].add(&d.scale(&Rational::new(BigInt::from(num), BigInt::from(3))))
    };
    let mut sets = vec![Vec::new(); 15];
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                sets[special_vertex_index(5, i + 1, i + 1).expect("in range")]
                    .push(Polyline::segment(points[i].clone(), third(i, j, 1))?);
            }
            if i < j {
                sets[special_vertex_index(5, i + 1, j + 1).expect("in range")] =
                    vec![Polyline::segment(third(i, j, 1), third(i, j, 2))?];
            }
        }
    }
    Representation::new(sets, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::predicates::orientation;
    use crate::graph::{make_basic, BasicKind};

    /// Straight-line crossings of K_5 equal the number of 4-subsets in
    /// convex position.
    fn convex_quadruples(p: &[Point; 5]) -> usize {
        let mut count = 0;
        for skip in 0..5 {
            let q: Vec<&Point> = (0..5).filter(|&i| i != skip).map(|i| &p[i]).collect();
            // a 4-set is convex iff no point lies inside the triangle of the others
            let inside = (0..4).any(|a| {
                let t: Vec<&Point> = (0..4).filter(|&b| b != a).map(|b| q[b]).collect();
                let o = [
                    orientation(t[0], t[1], q[a]),
                    orientation(t[1], t[2], q[a]),
                    orientation(t[2], t[0], q[a]),
                ];
                o.iter().all(|x| *x == o[0])
            });
            if !inside {
                count += 1;
            }
        }
        count
    }

    fn pts(v: [(i64, i64); 5]) -> [Point; 5] {
        v.map(|(x, y)| Point::from_ints(x, y))
    }

    #[test]
    fn k5_crossings_match_convex_quadruples() {
        for p in [
            pts([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]),
            pts([(0, 0), (12, 0), (12, 12), (0, 12), (4, 7)]),
            pts([(0, 0), (20, 0), (9, 17), (8, 5), (11, 6)]),
        ] {
            let d = derive_k5_drawing(&k5_star_representation(&p).unwrap()).unwrap();
            assert_eq!(d.crossing_pairs.len(), convex_quadruples(&p));
            assert!(d
                .crossing_pairs
                .iter()
                .all(|c| c.crossings == 1 && c.odd() && !c.overlapping));
        }
        let convex =
            derive_k5_drawing(&k5_star_representation(&pts([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)])).unwrap());
        assert_eq!(convex.unwrap().crossing_pairs.len(), 5);
    }

    #[test]
    fn k5_requires_incidences() {
        let p = pts([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]);
        let rep = k5_star_representation(&p).unwrap();
        let mut sets = rep.sets().to_vec();
        sets[special_vertex_index(5, 1, 2).unwrap()] =
            vec![Polyline::segment(Point::from_ints(100, 100), Point::from_ints(101, 100)).unwrap()];
        let rep = Representation::new(sets, None).unwrap();
        assert!(derive_k5_drawing(&rep).is_err());
    }

    #[test]
    fn outerstring_from_covers() {
        let disk = Disk::new(Point::from_ints(0, 0), Rational::from_integer(BigInt::from(10))).unwrap();
        let c6 = make_basic(BasicKind::Cycle, 6).unwrap();
        let cover = VertexPartition::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let rep = build_outerstring_from_cover(&c6, &cover, &disk).unwrap();
        assert_eq!(intersection_graph(&rep), c6);
        for v in 0..6 {
            assert!(rep
                .set(v)
                .iter()
                .any(|p| p.points().iter().any(|q| disk.on_boundary(q))));
        }

        let k2 = Graph::complete(2);
        let rep = build_outerstring_from_cover(&k2, &VertexPartition::singletons(2), &disk).unwrap();
        assert_eq!(intersection_graph(&rep), k2);

        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let rep = build_outerstring_from_cover(&g, &VertexPartition::singletons(3), &disk).unwrap();
        assert_eq!(intersection_graph(&rep), g);

        let k4 = Graph::complete(4);
        assert!(build_outerstring_from_cover(&k4, &VertexPartition::singletons(4), &disk).is_err());
        assert!(build_outerstring_from_cover(
            &c6,
            &VertexPartition::new(6, vec![vec![0, 2], vec![1, 3, 4, 5]]).unwrap(),
            &disk
        )
        .is_err());
    }
}
