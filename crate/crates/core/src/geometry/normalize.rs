//! Normalization of polygonal representations into simple curves in
//! general position.
//!
//! Pipeline, per call:
//!
//! 1. `eps` is a dyadic rational with `3 eps` at most the smallest distance
//!    between two disjoint sets.
//! 2. Every set `A_i` gets a base point `p_i` and every meeting pair a
//!    shared witness point `p_ij = p_ji`. At `p_ij` both sets receive a
//!    short stub in a fresh direction, so that near `p_ij` each of the two
//!    sets reaches a point the other one does not come close to.
//! 3. The connecting curve `C_i^j` is a breadth-first shortest path in the
//!    arrangement of `A_i` (its segments split at all mutual contacts) from
//!    `p_i` to the tip of its stub at `p_ij`. Breadth-first paths from one
//!    root share prefixes, so the union `T_i` of the `C_i^j` is a tree.
//! 4. Tree nodes other than `p_i` and the witness points are moved by a
//!    seeded dyadic offset of length below `s / 24`, where `s` is the
//!    smaller of `eps` and the local feature size of the trees (stub
//!    length, gaps between non-adjacent tree edges).
//! 5. `T_i` is thickened to half-width between `eta / 2` and `eta`, with
//!    `eta = s / 12 <= eps / 12`: at every node one corner point is placed
//!    inside each angle between consecutive tree edges.
//! 6. The boundary of the thickened tree is the Eulerian circuit of the
//!    doubled tree that, at every node, leaves along the next edge in
//!    counter-clockwise order. It never crosses itself, so joining the
//!    corners in circuit order gives a simple closed polygon `gamma_i`.
//! 7. `gamma_i` is cut open inside an interval of one of its edges that
//!    meets no other curve, on the edge halfway around the circuit from
//!    the first corner at `p_i`.
//!
//! The result is audited exactly: simple open curves, intersection graph
//! unchanged, general position. If the audit fails, the offsets are
//! redrawn and both the perturbation radius and `eta` are halved, up to
//! [`NORMALIZE_MAX_ATTEMPTS`] attempts.
//!
//! The outer variant roots every tree at a point of `A_i` on the disk
//! boundary and adds an antenna from there to a slightly larger circle;
//! instead of step 7 the cap around the antenna tip is replaced by two
//! points of that circle.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::RngExt;

use super::arrangement::Arrangement;
use super::predicates::{
    circle_point, dist2_point_segment, dist2_segments, dyadic_below_sqrt, orientation, point_on_segment, rotate,
    segment_contact, Contact, Point, Vector,
};
use super::{check_general_position, intersection_graph, Disk, Polyline, Representation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SeedSpec;
use crate::Rational;

/// Perturbation attempts before normalization gives up.
pub const NORMALIZE_MAX_ATTEMPTS: usize = 20;

/// Scales used by a successful normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizeStats {
    pub epsilon: Rational,
    /// Thickening scale of the successful attempt; never above `eps / 12`.
    pub eta: Rational,
    pub stub_length: Rational,
    /// Attempts used, the successful one included.
    pub attempts: usize,
}

pub fn normalize(rep: &Representation, seed: SeedSpec) -> Result<Representation> {
    normalize_with_stats(rep, seed).map(|(r, _)| r)
}

pub fn normalize_with_stats(rep: &Representation, seed: SeedSpec) -> Result<(Representation, NormalizeStats)> {
    Pipeline::new(rep, seed, None)?.run()
}

/// Every set must lie in `disk` and meet its boundary. The output carries
/// the enlarged disk on whose boundary all curve endpoints lie.
pub fn normalize_outer(rep: &Representation, disk: &Disk, seed: SeedSpec) -> Result<Representation> {
    Pipeline::new(rep, seed, Some(disk))?.run().map(|(r, _)| r)
}

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

struct Tree {
    coords: Vec<Point>,
    adj: Vec<Vec<usize>>,
    root: usize,
    fixed: Vec<bool>,
    /// Leaf at the antenna tip (outer mode).
    antenna: Option<usize>,
}

struct Pipeline<'a> {
    rep: &'a Representation,
    graph: Graph,
    seed: SeedSpec,
    eps: Rational,
    stub: Rational,
    /// `min(eps, local feature size of the trees)`; `eta` and the
    /// perturbation radius are fractions of it.
    scale: Rational,
    trees: Vec<Tree>,
    outer: Option<Disk>,
}

impl<'a> Pipeline<'a> {
    fn new(rep: &'a Representation, seed: SeedSpec, disk: Option<&Disk>) -> Result<Self> {
        let n = rep.vertex_count();
        let graph = intersection_graph(rep);
        let segs: Vec<Vec<(Point, Point)>> = (0..n)
            .map(|v| {
                rep.segments_of(v)
                    .into_iter()
                    .map(|(a, b)| (a.clone(), b.clone()))
                    .collect()
            })
            .collect();

        let roots: Vec<Point> = match disk {
            None => (0..n).map(|v| rep.set(v)[0].points()[0].clone()).collect(),
            Some(d) => {
                let mut roots = Vec::with_capacity(n);
                for v in 0..n {
                    let pts = rep.set(v).iter().flat_map(|p| p.points());
                    if let Some(p) = pts.clone().find(|p| !d.contains(p)) {
                        return Err(Error::Geometry(format!("set of vertex {v} leaves the disk at {p:?}")));
                    }
                    // a segment inside the disk can only touch the circle at an endpoint
                    let root = pts
                        .clone()
                        .find(|p| d.on_boundary(p))
                        .ok_or_else(|| Error::Geometry(format!("set of vertex {v} misses the disk boundary")))?;
                    roots.push(root.clone());
                }
                roots
            }
        };

        let eps = separation(&graph, &segs);

        // witness points
        let mut witness: BTreeMap<(usize, usize), Point> = BTreeMap::new();
        for (i, j) in graph.edges() {
            witness.insert((i, j), first_contact(&segs[i], &segs[j]).expect("adjacent sets meet"));
        }

        // stub length: half of eps, and small against the distance from each
        // witness point to the segments of the two sets that avoid it
        let mut mu2: Option<Rational> = None;
        let mut keep_min = |d: Rational| {
            if mu2.as_ref().is_none_or(|m| &d < m) {
                mu2 = Some(d);
            }
        };
        let distinct: BTreeSet<&Point> = witness.values().collect();
        let distinct: Vec<&Point> = distinct.into_iter().collect();
        for (a, p) in distinct.iter().enumerate() {
            for q in &distinct[a + 1..] {
                keep_min(p.dist2(q));
            }
        }
        for (&(i, j), p) in &witness {
            for (a, b) in segs[i].iter().chain(&segs[j]) {
                if !point_on_segment(p, a, b) {
                    keep_min(dist2_point_segment(p, a, b));
                }
            }
        }
        let half_eps = &eps / int(2);
        let stub = match mu2 {
            Some(m) => dyadic_below_sqrt(&m, 4).min(half_eps),
            None => half_eps,
        };

        // stub directions, avoiding every segment direction through the point
        let mut rng = seed.stream(0);
        let mut used: BTreeMap<Point, Vec<Vector>> = BTreeMap::new();
        let mut stubs: Vec<Vec<(Point, Point)>> = vec![Vec::new(); n];
        for (&(i, j), p) in &witness {
            for v in [i, j] {
                let forbidden: Vec<Vector> = segs
                    .iter()
                    .flatten()
                    .filter(|(a, b)| point_on_segment(p, a, b))
                    .map(|(a, b)| a.to(b))
                    .chain(used.get(p).into_iter().flatten().cloned())
                    .collect();
                let dir = loop {
                    let d = Vector(int(rng.random_range(-16..=16)), int(rng.random_range(-16..=16)));
                    if !d.is_zero() && forbidden.iter().all(|f| !f.cross(&d).is_zero()) {
                        break d;
                    }
                };
                let tip = p.add(&dir.unit_max().scale(&(&stub / int(2))));
                used.entry(p.clone()).or_default().push(dir);
                stubs[v].push((p.clone(), tip));
            }
        }

        let outer = disk.map(|d| Disk {
            center: d.center.clone(),
            radius: &d.radius + &eps,
        });

        let mut trees = Vec::with_capacity(n);
        for v in 0..n {
            let mut all = segs[v].clone();
            all.extend(stubs[v].iter().cloned());
            let mut targets: Vec<Point> = stubs[v].iter().map(|(_, t)| t.clone()).collect();
            let mut antenna = None;
            if let (Some(d), Some(big)) = (disk, &outer) {
                let unit = d.center.to(&roots[v]).scale(&(Rational::one() / &d.radius));
                let turn = circle_point(&(int(v as i64 + 1) * &eps / (int(64 * (n as i64 + 1)) * &big.radius)));
                let tip = big.center.add(&rotate(&unit, &turn).scale(&big.radius));
                all.push((roots[v].clone(), tip.clone()));
                targets.push(tip.clone());
                antenna = Some(tip);
            }
            let mut fixed_pts: Vec<Point> = witness
                .iter()
                .filter(|((i, j), _)| *i == v || *j == v)
                .map(|(_, p)| p.clone())
                .collect();
            fixed_pts.push(roots[v].clone());
            fixed_pts.extend(antenna.iter().cloned());
            trees.push(build_tree(&all, &roots[v], &targets, &fixed_pts, antenna.as_ref(), v)?);
        }

        // local feature size: stub length and the gaps between
        // non-adjacent edges of each tree
        let mut scale = eps.clone().min(stub.clone());
        for t in &trees {
            if let Some(f2) = t.feature2() {
                scale = scale.min(dyadic_below_sqrt(&f2, 1));
            }
        }

        Ok(Pipeline {
            rep,
            scale,
            graph,
            seed,
            eps,
            stub,
            trees,
            outer,
        })
    }

    fn run(&self) -> Result<(Representation, NormalizeStats)> {
        let n = self.rep.vertex_count();
        if n == 0 {
            let rep = Representation::new(Vec::new(), self.outer.clone())?;
            return Ok((rep, self.stats(&self.scale / int(12), 0)));
        }
        let mut reason = String::new();
        for attempt in 0..NORMALIZE_MAX_ATTEMPTS {
            let shrink = Rational::new(BigInt::one(), BigInt::one() << attempt);
            let eta = &self.scale / int(12) * &shrink;
            let rho = &self.scale / int(24) * &shrink;
            match self.attempt(attempt, &eta, &rho) {
                Ok(rep) => return Ok((rep, self.stats(eta, attempt + 1))),
                Err(why) => reason = why,
            }
        }
        Err(Error::PerturbationBudgetExhausted {
            attempts: NORMALIZE_MAX_ATTEMPTS,
            reason,
        })
    }

    fn stats(&self, eta: Rational, attempts: usize) -> NormalizeStats {
        NormalizeStats {
            epsilon: self.eps.clone(),
            eta,
            stub_length: self.stub.clone(),
            attempts,
        }
    }

    /// One perturb-thicken-cut round; `Err` carries the failed audit.
    fn attempt(&self, attempt: usize, eta: &Rational, rho: &Rational) -> std::result::Result<Representation, String> {
        let n = self.rep.vertex_count();
        let mut rng = self.seed.stream(1 + attempt as u64);
        let mut loops = Vec::with_capacity(n);
        for (v, tree) in self.trees.iter().enumerate() {
            let coords: Vec<Point> = tree
                .coords
                .iter()
                .zip(&tree.fixed)
                .map(|(p, &fixed)| {
                    if fixed {
                        p.clone()
                    } else {
                        let dx = rho * frac(rng.random_range(-1024..=1024), 2048);
                        let dy = rho * frac(rng.random_range(-1024..=1024), 2048);
                        p.add(&Vector(dx, dy))
                    }
                })
                .collect();
            let delta = eta * frac(n as i64 + 1 + v as i64, 2 * n as i64 + 2);
            loops.push(boundary_walk(tree, &coords, &delta)?);
        }

        let curves: Vec<Vec<Point>> = match &self.outer {
            None => {
                let mut closed = Vec::with_capacity(n);
                for (v, (corners, _)) in loops.into_iter().enumerate() {
                    let corners = drop_collinear(corners, true).ok_or(format!("degenerate boundary of vertex {v}"))?;
                    let poly = Polyline::new(corners, true).map_err(|e| e.to_string())?;
                    if !poly.is_simple() {
                        return Err(format!("thickened boundary of vertex {v} is not simple"));
                    }
                    closed.push(poly);
                }
                let mut curves = Vec::with_capacity(n);
                for v in 0..n {
                    curves.push(cut_open(&closed, v).ok_or(format!("no free cut point on vertex {v}"))?);
                }
                curves
            }
            Some(big) => {
                let mut curves = Vec::with_capacity(n);
                for (v, (corners, cap)) in loops.into_iter().enumerate() {
                    let cap = cap.expect("outer trees carry an antenna");
                    let tip = &self.trees[v].coords[self.trees[v].antenna.expect("antenna")];
                    let curve = anchor_to_circle(corners, cap, tip, big, &(eta / int(2)))
                        .ok_or(format!("degenerate anchored curve of vertex {v}"))?;
                    curves.push(curve);
                }
                curves
            }
        };

        let mut sets = Vec::with_capacity(n);
        for (v, pts) in curves.into_iter().enumerate() {
            let poly = Polyline::open(pts).map_err(|e| format!("vertex {v}: {e}"))?;
            if !poly.is_simple() {
                return Err(format!("curve of vertex {v} is not simple"));
            }
            if let Some(big) = &self.outer {
                let pts = poly.points();
                let last = pts.len() - 1;
                if !big.on_boundary(&pts[0]) || !big.on_boundary(&pts[last]) {
                    return Err(format!("curve of vertex {v} is not anchored on the circle"));
                }
                if !pts[1..last].iter().all(|p| big.in_interior(p)) {
                    return Err(format!("curve of vertex {v} leaves the enlarged disk"));
                }
            }
            sets.push(vec![poly]);
        }
        let out = Representation::new(sets, self.outer.clone()).map_err(|e| e.to_string())?;
        if intersection_graph(&out) != self.graph {
            return Err("intersection graph changed".into());
        }
        let report = check_general_position(&out);
        if !report.pass {
            return Err(format!("not in general position: {report:?}"));
        }
        Ok(out)
    }
}

/// Dyadic `eps` with `3 eps` at most the distance between any two
/// disjoint sets (or a third of the extent when no pair is disjoint).
fn separation(graph: &Graph, segs: &[Vec<(Point, Point)>]) -> Rational {
    let n = segs.len();
    let mut best: Option<Rational> = None;
    for u in 0..n {
        for v in u + 1..n {
            if graph.has_edge(u, v) {
                continue;
            }
            for (a, b) in &segs[u] {
                for (c, d) in &segs[v] {
                    let d2 = dist2_segments(a, b, c, d);
                    if best.as_ref().is_none_or(|m| &d2 < m) {
                        best = Some(d2);
                    }
                }
            }
        }
    }
    let d2 = best.unwrap_or_else(|| {
        let pts: Vec<&Point> = segs.iter().flatten().flat_map(|(a, b)| [a, b]).collect();
        let mut ext = Rational::zero();
        for p in &pts {
            for q in &pts {
                ext = ext.max(p.dist2(q));
            }
        }
        if ext.is_zero() {
            Rational::one()
        } else {
            ext
        }
    });
    dyadic_below_sqrt(&d2, 3)
}

fn first_contact(a: &[(Point, Point)], b: &[(Point, Point)]) -> Option<Point> {
    for (p, q) in a {
        for (r, s) in b {
            match segment_contact(p, q, r, s) {
                Contact::None => {}
                Contact::Point(x) | Contact::Overlap(x, _) => return Some(x),
            }
        }
    }
    None
}

impl Tree {
    /// Smallest squared distance between two tree edges without a common
    /// node.
    fn feature2(&self) -> Option<Rational> {
        let edges: Vec<(usize, usize)> = (0..self.adj.len())
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        let mut best: Option<Rational> = None;
        for (x, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[x + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let c2 = &self.coords;
                let d2 = dist2_segments(&c2[a], &c2[b], &c2[c], &c2[d]);
                if best.as_ref().is_none_or(|m| &d2 < m) {
                    best = Some(d2);
                }
            }
        }
        best
    }
}

/// Union of breadth-first paths from `root` to every target in the
/// arrangement of `segs`; without targets, one edge at the root.
fn build_tree(
    segs: &[(Point, Point)],
    root: &Point,
    targets: &[Point],
    fixed: &[Point],
    antenna: Option<&Point>,
    v: usize,
) -> Result<Tree> {
    let mut extra = vec![root.clone()];
    extra.extend(fixed.iter().cloned());
    let arr = Arrangement::build(segs, &extra);
    let r = arr.node(root).expect("root is interned");
    let parent = arr.bfs_parents(r);
    let mut ids: Vec<usize> = targets
        .iter()
        .map(|t| arr.node(t).expect("stub tips are segment endpoints"))
        .collect();
    if ids.is_empty() {
        let next = *arr.adj[r]
            .iter()
            .min()
            .ok_or_else(|| Error::Geometry(format!("set of vertex {v} has no segment at its base point")))?;
        ids.push(next);
    }
    let mut local: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut order = vec![r];
    local.insert(r, 0);
    for t in ids {
        let path = Arrangement::path(&parent, t)
            .ok_or_else(|| Error::Geometry(format!("set of vertex {v} is not connected")))?;
        for w in path.windows(2) {
            for &x in w {
                if !local.contains_key(&x) {
                    local.insert(x, order.len());
                    order.push(x);
                }
            }
            let (a, b) = (local[&w[0]], local[&w[1]]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let coords: Vec<Point> = order.iter().map(|&x| arr.nodes[x].clone()).collect();
    let mut adj = vec![Vec::new(); coords.len()];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let fixed_flags = coords.iter().map(|p| fixed.contains(p)).collect();
    let antenna = antenna.map(|t| coords.iter().position(|p| p == t).expect("antenna tip in tree"));
    Ok(Tree {
        coords,
        adj,
        root: 0,
        fixed: fixed_flags,
        antenna,
    })
}

/// Corners of the thickened tree in circuit order, and for outer trees the
/// index of the first of the two corners capping the antenna tip.
fn boundary_walk(
    tree: &Tree,
    coords: &[Point],
    delta: &Rational,
) -> std::result::Result<(Vec<Point>, Option<usize>), String> {
    let m = coords.len();
    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(m);
    for (v, nbrs) in tree.adj.iter().enumerate() {
        let mut nbrs = nbrs.clone();
        if nbrs.iter().any(|&w| coords[w] == coords[v]) {
            return Err("perturbation merged two tree nodes".into());
        }
        nbrs.sort_by(|&a, &b| coords[v].to(&coords[a]).angle_cmp(&coords[v].to(&coords[b])));
        rot.push(nbrs);
    }
    let start = (tree.root, rot[tree.root][0]);
    let mut dart = start;
    let mut corners = Vec::new();
    let mut cap = None;
    loop {
        let (v, w) = dart;
        let idx = rot[w].iter().position(|&x| x == v).expect("tree edges are symmetric");
        let next = rot[w][(idx + 1) % rot[w].len()];
        let c = &coords[w];
        let ua = c.to(&coords[v]).unit_max();
        if next == v {
            if Some(w) == tree.antenna {
                cap = Some(corners.len());
            }
            let n = ua.perp();
            corners.push(c.add(&n.plus(&ua.neg()).scale(delta)));
            corners.push(c.add(&n.neg().plus(&ua.neg()).scale(delta)));
        } else {
            let ub = c.to(&coords[next]).unit_max();
            let turn = ua.cross(&ub);
            let dir = if turn > Rational::zero() {
                ua.plus(&ub)
            } else if turn < Rational::zero() {
                ua.plus(&ub).neg()
            } else {
                ua.perp()
            };
            corners.push(c.add(&dir.unit_max().scale(delta)));
        }
        dart = (w, next);
        if dart == start {
            break;
        }
    }
    Ok((corners, cap))
}

/// Removes corners lying on the segment between their neighbours; `None`
/// when the polygon folds back on itself or repeats a point.
fn drop_collinear(mut pts: Vec<Point>, closed: bool) -> Option<Vec<Point>> {
    loop {
        let m = pts.len();
        if m < 3 {
            return if closed { None } else { Some(pts) };
        }
        let range = if closed { 0..m } else { 1..m - 1 };
        let mut removed = false;
        for i in range {
            let a = &pts[(i + m - 1) % m];
            let b = &pts[i];
            let c = &pts[(i + 1) % m];
            if a == b || b == c {
                return None;
            }
            if orientation(a, b, c) == std::cmp::Ordering::Equal {
                if point_on_segment(b, a, c) {
                    pts.remove(i);
                    removed = true;
                    break;
                }
                return None;
            }
        }
        if !removed {
            return Some(pts);
        }
    }
}

/// Opens the closed curve `v` inside a sub-interval of one of its edges
/// that no other curve meets, preferring the edge halfway around.
fn cut_open(closed: &[Polyline], v: usize) -> Option<Vec<Point>> {
    let pts = closed[v].points();
    let m = pts.len();
    let others: Vec<(&Point, &Point)> = closed
        .iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .flat_map(|(_, p)| p.segments())
        .collect();
    let half = m / 2;
    let order = (0..m).map(|k| {
        if k % 2 == 0 {
            (half + k / 2) % m
        } else {
            (half + m - k.div_ceil(2)) % m
        }
    });
    for s in order {
        let a = &pts[s];
        let b = &pts[(s + 1) % m];
        let ab = a.to(b);
        let len2 = ab.norm2();
        let mut ts = vec![Rational::zero(), Rational::one()];
        let mut blocked = false;
        for (c, d) in &others {
            match segment_contact(a, b, c, d) {
                Contact::None => {}
                Contact::Point(x) => ts.push(a.to(&x).dot(&ab) / &len2),
                Contact::Overlap(..) => blocked = true,
            }
        }
        if blocked {
            continue;
        }
        ts.sort();
        ts.dedup();
        let (lo, hi) = ts
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .max_by(|x, y| (&x.1 - &x.0).cmp(&(&y.1 - &y.0)))
            .expect("at least two parameters");
        let gap = &hi - &lo;
        let t1 = &lo + &gap / int(3);
        let t2 = &lo + &gap * frac(2, 3);
        let p1 = a.add(&ab.scale(&t1));
        let p2 = a.add(&ab.scale(&t2));
        let mut out = vec![p2];
        for k in 1..=m {
            out.push(pts[(s + k) % m].clone());
        }
        out.push(p1);
        return drop_collinear(out, false);
    }
    None
}

/// Replaces the two cap corners at the antenna tip by two points of the
/// enlarged circle on the matching sides and opens the curve there.
fn anchor_to_circle(corners: Vec<Point>, cap: usize, tip: &Point, big: &Disk, step: &Rational) -> Option<Vec<Point>> {
    let m = corners.len();
    let c1 = &corners[cap];
    let radial = big.center.to(tip);
    let unit = radial.scale(&(Rational::one() / &big.radius));
    let turn = circle_point(&(step / &big.radius));
    let back = Vector(turn.0.clone(), -&turn.1);
    let s_plus = big.center.add(&rotate(&unit, &turn).scale(&big.radius));
    let s_minus = big.center.add(&rotate(&unit, &back).scale(&big.radius));
    let side = |p: &Point| radial.cross(&tip.to(p)) > Rational::zero();
    let (s1, s2) = if side(c1) == side(&s_plus) {
        (s_plus, s_minus)
    } else {
        (s_minus, s_plus)
    };
    // walk: .. c1 c2 .. becomes s2 (after c2 ..) s1
    let mut out = vec![s2];
    for k in 2..m {
        out.push(corners[(cap + k) % m].clone());
    }
    out.push(s1);
    drop_collinear(out, false)
}
