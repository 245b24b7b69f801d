//! Polygonal string representations with exact rational coordinates.
//!
//! A [`Representation`] assigns to every graph vertex a connected union of
//! polylines. Everything here is decided with exact orientation tests;
//! floating point only appears in SVG output.

mod arrangement;
mod construct;
mod normalize;
mod predicates;

pub use construct::{build_outerstring_from_cover, derive_k5_drawing, k5_star_representation, CrossingPair, K5Drawing};
pub use normalize::{normalize, normalize_outer, normalize_with_stats, NormalizeStats, NORMALIZE_MAX_ATTEMPTS};
pub use predicates::{
    dist2_point_segment, dist2_segments, orientation, point_on_segment, segment_contact, segments_meet, Contact, Point,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;
use crate::graphon::parse_rational;
use crate::Rational;
use predicates::{boxes_meet, parallel};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyline {
    points: Vec<Point>,
    closed: bool,
}

impl Polyline {
    /// Consecutive points must differ; a closed polyline needs three or
    /// more pairwise distinct points.
    pub fn new(points: Vec<Point>, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Geometry("a polyline needs at least two points".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Geometry(format!("repeated consecutive point {:?}", w[0])));
        }
        if closed {
            let distinct: BTreeSet<&Point> = points.iter().collect();
            if points.len() < 3 || distinct.len() != points.len() {
                return Err(Error::Geometry(
                    "a closed polyline needs three or more distinct points".into(),
                ));
            }
        }
        Ok(Polyline { points, closed })
    }

    pub fn open(points: Vec<Point>) -> Result<Self> {
        Polyline::new(points, false)
    }

    pub fn segment(a: Point, b: Point) -> Result<Self> {
        Polyline::new(vec![a, b], false)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.points.len();
        let m = if self.closed { n } else { n - 1 };
        (0..m).map(move |i| (&self.points[i], &self.points[(i + 1) % n]))
    }

    /// No two segments meet except consecutive ones at their shared point.
    pub fn is_simple(&self) -> bool {
        let segs: Vec<_> = self.segments().collect();
        let m = segs.len();
        for s in 0..m {
            for t in s + 1..m {
                let (a, b) = segs[s];
                let (c, d) = segs[t];
                let contact = segment_contact(a, b, c, d);
                let shared = if t == s + 1 {
                    Some(b)
                } else if self.closed && s == 0 && t == m - 1 && m > 2 {
                    Some(a)
                } else {
                    None
                };
                let ok = match (&contact, shared) {
                    (Contact::None, _) => true,
                    (Contact::Point(x), Some(v)) => x == v,
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Disk {
    pub center: Point,
    pub radius: Rational,
}

impl Disk {
    pub fn new(center: Point, radius: Rational) -> Result<Self> {
        if radius <= Rational::from_integer(0.into()) {
            return Err(Error::Geometry("disk radius must be positive".into()));
        }
        Ok(Disk { center, radius })
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.center.dist2(p) <= &self.radius * &self.radius
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.center.dist2(p) == &self.radius * &self.radius
    }

    pub fn in_interior(&self, p: &Point) -> bool {
        self.center.dist2(p) < &self.radius * &self.radius
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    sets: Vec<Vec<Polyline>>,
    disk: Option<Disk>,
}

impl Representation {
    /// Every set must be non-empty and connected: the pieces, joined when
    /// they meet, form one component.
    pub fn new(sets: Vec<Vec<Polyline>>, disk: Option<Disk>) -> Result<Self> {
        for (v, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::Geometry(format!("set of vertex {v} is empty")));
            }
            if !pieces_connected(set) {
                return Err(Error::Geometry(format!("set of vertex {v} is not connected")));
            }
        }
        Ok(Representation { sets, disk })
    }

    pub fn vertex_count(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, v: usize) -> &[Polyline] {
        &self.sets[v]
    }

    pub fn sets(&self) -> &[Vec<Polyline>] {
        &self.sets
    }

    pub fn disk(&self) -> Option<&Disk> {
        self.disk.as_ref()
    }

    pub(crate) fn segments_of(&self, v: usize) -> Vec<(&Point, &Point)> {
        self.sets[v].iter().flat_map(|p| p.segments()).collect()
    }

    /// `disk cx,cy r` (optional), then per vertex `vertex ID PIECES`
    /// followed by one `open|closed x,y x,y ..` line per piece.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(d) = &self.disk {
            let _ = writeln!(s, "disk {} {}", d.center, d.radius);
        }
        for (v, set) in self.sets.iter().enumerate() {
            let _ = writeln!(s, "vertex {v} {}", set.len());
            for piece in set {
                s.push_str(if piece.closed { "closed" } else { "open" });
                for p in &piece.points {
                    let _ = write!(s, " {p}");
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Representation> {
        let mut disk = None;
        let mut sets: Vec<(usize, usize, Vec<Polyline>)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("disk") => {
                    if disk.is_some() || !sets.is_empty() {
                        return Err(parse_err(ln, "the disk line must come first and only once"));
                    }
                    let c = parse_point(tok.next().unwrap_or(""), ln)?;
                    let r = tok
                        .next()
                        .and_then(parse_rational)
                        .ok_or_else(|| parse_err(ln, "disk needs a radius"))?;
                    disk = Some(Disk::new(c, r).map_err(|e| parse_err(ln, e.to_string()))?);
                }
                Some("vertex") => {
                    let nums: Vec<usize> = tok
                        .map(|t| t.parse().map_err(|_| parse_err(ln, format!("bad number {t:?}"))))
                        .collect::<Result<_>>()?;
                    let [id, pieces] = nums[..] else {
                        return Err(parse_err(ln, "vertex line must be `vertex ID PIECES`"));
                    };
                    if id != sets.len() {
                        return Err(parse_err(ln, format!("expected vertex {}, found {id}", sets.len())));
                    }
                    sets.push((ln, pieces, Vec::new()));
                }
                Some(kind @ ("open" | "closed")) => {
                    let Some((_, _, pieces)) = sets.last_mut() else {
                        return Err(parse_err(ln, "piece before any vertex line"));
                    };
                    let pts = tok.map(|t| parse_point(t, ln)).collect::<Result<Vec<_>>>()?;
                    let piece = Polyline::new(pts, kind == "closed").map_err(|e| parse_err(ln, e.to_string()))?;
                    pieces.push(piece);
                }
                Some(other) => return Err(parse_err(ln, format!("unknown record {other:?}"))),
                None => unreachable!(),
            }
        }
        let mut out = Vec::with_capacity(sets.len());
        for (ln, announced, pieces) in sets {
            if pieces.len() != announced {
                return Err(parse_err(
                    ln,
                    format!("announced {announced} pieces, found {}", pieces.len()),
                ));
            }
            out.push(pieces);
        }
        Representation::new(out, disk)
    }

    /// Curves in per-vertex colours with intersection points marked.
    pub fn to_svg(&self) -> String {
        let mut pts: Vec<(f64, f64)> = self
            .sets
            .iter()
            .flatten()
            .flat_map(|p| p.points.iter().map(Point::to_f64))
            .collect();
        if let Some(d) = &self.disk {
            let (cx, cy) = d.center.to_f64();
            let r = num_traits::ToPrimitive::to_f64(&d.radius).unwrap_or(0.0);
            pts.extend([(cx - r, cy - r), (cx + r, cy + r)]);
        }
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if pts.is_empty() {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let size = 600.0;
        let pad = 20.0;
        let scale = (size - 2.0 * pad) / (x1 - x0).max(y1 - y0).max(1e-12);
        let map = |(x, y): (f64, f64)| (pad + (x - x0) * scale, size - pad - (y - y0) * scale);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        if let Some(d) = &self.disk {
            let (cx, cy) = map(d.center.to_f64());
            let r = num_traits::ToPrimitive::to_f64(&d.radius).unwrap_or(0.0) * scale;
            let _ = writeln!(
                s,
                r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="gray"/>"#
            );
        }
        let n = self.sets.len().max(1);
        for (v, set) in self.sets.iter().enumerate() {
            let hue = 360.0 * v as f64 / n as f64;
            for piece in set {
                let coords: Vec<String> = piece
                    .points
                    .iter()
                    .map(|p| {
                        let (x, y) = map(p.to_f64());
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let tag = if piece.closed { "polygon" } else { "polyline" };
                let _ = writeln!(
                    s,
                    r#"<{tag} points="{}" fill="none" stroke="hsl({hue:.0},70%,40%)" stroke-width="1.5"><title>vertex {v}</title></{tag}>"#,
                    coords.join(" ")
                );
            }
        }
        for p in contact_points(self).keys() {
            let (x, y) = map(p.to_f64());
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="black"/>"#);
        }
        s.push_str("</svg>\n");
        s
    }
}

fn parse_point(t: &str, ln: usize) -> Result<Point> {
    let (x, y) = t
        .split_once(',')
        .ok_or_else(|| parse_err(ln, format!("point {t:?} must be `x,y`")))?;
    match (parse_rational(x), parse_rational(y)) {
        (Some(x), Some(y)) => Ok(Point::new(x, y)),
        _ => Err(parse_err(ln, format!("bad point {t:?}"))),
    }
}

fn polylines_meet(p: &Polyline, q: &Polyline) -> bool {
    p.segments()
        .any(|(a, b)| q.segments().any(|(c, d)| segments_meet(a, b, c, d)))
}

fn pieces_connected(set: &[Polyline]) -> bool {
    let n = set.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && polylines_meet(&set[i], &set[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Bounding box of a set of segments.
fn bbox(segs: &[(&Point, &Point)]) -> Option<(Point, Point)> {
    let mut it = segs.iter().flat_map(|(a, b)| [*a, *b]);
    let first = it.next()?;
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for p in it {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    Some((lo, hi))
}

/// Edge `uv` iff the sets of `u` and `v` share a point.
pub fn intersection_graph(rep: &Representation) -> Graph {
    let n = rep.vertex_count();
    let segs: Vec<Vec<(&Point, &Point)>> = (0..n).map(|v| rep.segments_of(v)).collect();
    let boxes: Vec<_> = segs.iter().map(|s| bbox(s)).collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (Some((lu, hu)), Some((lv, hv))) = (&boxes[u], &boxes[v]) else {
                continue;
            };
            if !boxes_meet(lu, hu, lv, hv) {
                continue;
            }
            let meet = segs[u]
                .iter()
                .any(|(a, b)| segs[v].iter().any(|(c, d)| segments_meet(a, b, c, d)));
            if meet {
                g.add_edge(u, v).expect("vertices in range");
            }
        }
    }
    g
}

/// Audit of the general-position conditions between different vertices'
/// sets. Self-intersections of a single set are not counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionReport {
    /// Distinct isolated points shared by two or more sets.
    pub intersection_points: usize,
    /// Points shared by three or more sets.
    pub triple_points: usize,
    /// Shared points that are a break point or endpoint of one of the
    /// segments involved, so the crossing is not a clean transversal one.
    pub improper_crossings: usize,
    /// Pairs of segments from different sets that meet while parallel,
    /// including collinear overlaps (infinitely many common points).
    pub coincident_directions: usize,
    pub pass: bool,
}

struct ContactInfo {
    sets: BTreeSet<usize>,
    at_vertex: bool,
}

/// Shared isolated points, plus the count of parallel meeting pairs.
fn contacts(rep: &Representation) -> (BTreeMap<Point, ContactInfo>, usize) {
    let n = rep.vertex_count();
    let segs: Vec<Vec<(&Point, &Point)>> = (0..n).map(|v| rep.segments_of(v)).collect();
    let mut map: BTreeMap<Point, ContactInfo> = BTreeMap::new();
    let mut coincident = 0;
    for u in 0..n {
        for v in u + 1..n {
            for (a, b) in &segs[u] {
                for (c, d) in &segs[v] {
                    match segment_contact(a, b, c, d) {
                        Contact::None => {}
                        Contact::Overlap(..) => coincident += 1,
                        Contact::Point(x) => {
                            if parallel(a, b, c, d) {
                                coincident += 1;
                            }
                            let at_vertex = [a, b, c, d].iter().any(|p| ***p == x);
                            let e = map.entry(x).or_insert_with(|| ContactInfo {
                                sets: BTreeSet::new(),
                                at_vertex: false,
                            });
                            e.sets.insert(u);
                            e.sets.insert(v);
                            e.at_vertex |= at_vertex;
                        }
                    }
                }
            }
        }
    }
    (map, coincident)
}

fn contact_points(rep: &Representation) -> BTreeMap<Point, ContactInfo> {
    contacts(rep).0
}

pub fn check_general_position(rep: &Representation) -> PositionReport {
    let (map, coincident_directions) = contacts(rep);
    let triple_points = map.values().filter(|c| c.sets.len() >= 3).count();
    let improper_crossings = map.values().filter(|c| c.at_vertex).count();
    PositionReport {
        intersection_points: map.len(),
        triple_points,
        improper_crossings,
        coincident_directions,
        pass: triple_points == 0 && improper_crossings == 0 && coincident_directions == 0,
    }
}
