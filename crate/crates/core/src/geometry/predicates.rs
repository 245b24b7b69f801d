//! Exact predicates on rational points and segments.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }

    pub(crate) fn add(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.0, &self.y + &v.1)
    }

    pub(crate) fn to(&self, other: &Point) -> Vector {
        Vector(&other.x - &self.x, &other.y - &self.y)
    }

    pub fn dist2(&self, other: &Point) -> Rational {
        self.to(other).norm2()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// A displacement in the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Vector(pub Rational, pub Rational);

impl Vector {
    pub fn cross(&self, o: &Vector) -> Rational {
        &self.0 * &o.1 - &self.1 * &o.0
    }

    pub fn dot(&self, o: &Vector) -> Rational {
        &self.0 * &o.0 + &self.1 * &o.1
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, s: &Rational) -> Vector {
        Vector(&self.0 * s, &self.1 * s)
    }

    pub fn plus(&self, o: &Vector) -> Vector {
        Vector(&self.0 + &o.0, &self.1 + &o.1)
    }

    pub fn neg(&self) -> Vector {
        Vector(-&self.0, -&self.1)
    }

    /// Rotation by a quarter turn counter-clockwise.
    pub fn perp(&self) -> Vector {
        Vector(-&self.1, self.0.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    /// Scaled to max-norm 1, so its length lies in `[1, sqrt 2]`.
    pub fn unit_max(&self) -> Vector {
        let m = self.0.abs().max(self.1.abs());
        Vector(&self.0 / &m, &self.1 / &m)
    }

    /// `0` for directions in `[0, pi)`, `1` for `[pi, 2 pi)`.
    fn half(&self) -> u8 {
        if self.1.is_positive() || (self.1.is_zero() && self.0.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Counter-clockwise angular order starting at the positive x axis.
    pub fn angle_cmp(&self, o: &Vector) -> Ordering {
        self.half().cmp(&o.half()).then_with(|| {
            let c = self.cross(o);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }
}

/// Sign of the turn `a -> b -> c`: `Greater` for counter-clockwise.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    a.to(b).cross(&a.to(c)).cmp(&Rational::zero())
}

fn sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == Ordering::Equal && in_box(p, a, b)
}

fn in_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (x0, x1) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (y0, y1) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    x0 <= &p.x && &p.x <= x1 && y0 <= &p.y && &p.y <= y1
}

/// Axis-aligned bounding boxes of two segments overlap.
pub(crate) fn boxes_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let (ax0, ax1) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (cx0, cx1) = if c.x <= d.x { (&c.x, &d.x) } else { (&d.x, &c.x) };
    if ax1 < cx0 || cx1 < ax0 {
        return false;
    }
    let (ay0, ay1) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    let (cy0, cy1) = if c.y <= d.y { (&c.y, &d.y) } else { (&d.y, &c.y) };
    !(ay1 < cy0 || cy1 < ay0)
}

/// How two closed segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contact {
    None,
    Point(Point),
    /// Collinear overlap of positive length between the two points.
    Overlap(Point, Point),
}

pub fn segment_contact(a: &Point, b: &Point, c: &Point, d: &Point) -> Contact {
    if !boxes_meet(a, b, c, d) {
        return Contact::None;
    }
    let d1 = sign(orientation(c, d, a));
    let d2 = sign(orientation(c, d, b));
    let d3 = sign(orientation(a, b, c));
    let d4 = sign(orientation(a, b, d));
    if d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0 {
        // collinear: points on a line are ordered lexicographically
        let (lo1, hi1) = if a <= b { (a, b) } else { (b, a) };
        let (lo2, hi2) = if c <= d { (c, d) } else { (d, c) };
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return match lo.cmp(hi) {
            Ordering::Greater => Contact::None,
            Ordering::Equal => Contact::Point(lo.clone()),
            Ordering::Less => Contact::Overlap(lo.clone(), hi.clone()),
        };
    }
    if d1 * d2 > 0 || d3 * d4 > 0 {
        return Contact::None;
    }
    if d1 == 0 {
        return Contact::Point(a.clone());
    }
    if d2 == 0 {
        return Contact::Point(b.clone());
    }
    if d3 == 0 {
        return Contact::Point(c.clone());
    }
    if d4 == 0 {
        return Contact::Point(d.clone());
    }
    let r = a.to(b);
    let s = c.to(d);
    let t = a.to(c).cross(&s) / r.cross(&s);
    Contact::Point(a.add(&r.scale(&t)))
}

pub fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    segment_contact(a, b, c, d) != Contact::None
}

pub(crate) fn parallel(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    a.to(b).cross(&c.to(d)).is_zero()
}

pub fn dist2_point_segment(p: &Point, a: &Point, b: &Point) -> Rational {
    let ab = a.to(b);
    let len2 = ab.norm2();
    if len2.is_zero() {
        return p.dist2(a);
    }
    let t = a.to(p).dot(&ab) / &len2;
    if t <= Rational::zero() {
        p.dist2(a)
    } else if t >= Rational::one() {
        p.dist2(b)
    } else {
        p.dist2(&a.add(&ab.scale(&t)))
    }
}

pub fn dist2_segments(a: &Point, b: &Point, c: &Point, d: &Point) -> Rational {
    if segments_meet(a, b, c, d) {
        return Rational::zero();
    }
    [
        dist2_point_segment(a, c, d),
        dist2_point_segment(b, c, d),
        dist2_point_segment(c, a, b),
        dist2_point_segment(d, a, b),
    ]
    .into_iter()
    .min()
    .expect("four candidates")
}

/// `2^k` for the largest integer `k` with `(m 2^k)^2 <= d2`; `d2 > 0`.
pub(crate) fn dyadic_below_sqrt(d2: &Rational, m: u32) -> Rational {
    let m2 = Rational::from_integer(BigInt::from(m) * BigInt::from(m));
    let f = d2.to_f64().unwrap_or(1.0).max(f64::MIN_POSITIVE);
    let mut k = (f.sqrt() / m as f64).log2().floor() as i32;
    let pow = |k: i32| -> Rational {
        if k >= 0 {
            Rational::from_integer(BigInt::one() << k as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
        }
    };
    while &(&m2 * pow(k) * pow(k)) > d2 {
        k -= 1;
    }
    while &(&m2 * pow(k + 1) * pow(k + 1)) <= d2 {
        k += 1;
    }
    pow(k)
}

/// Rational point of the unit circle with half-angle tangent `t`.
pub(crate) fn circle_point(t: &Rational) -> Vector {
    let t2 = t * t;
    let den = Rational::one() + &t2;
    Vector((Rational::one() - &t2) / &den, (t + t) / den)
}

/// Rotation of a vector by the rational unit vector `(c, s)`.
pub(crate) fn rotate(v: &Vector, by: &Vector) -> Vector {
    Vector(&v.0 * &by.0 - &v.1 * &by.1, &v.0 * &by.1 + &v.1 * &by.0)
}

/// A rational close to `x`, with denominator `2^20`.
pub(crate) fn rational_near(x: f64) -> Rational {
    let den = 1i64 << 20;
    Rational::new(BigInt::from((x * den as f64).round() as i64), BigInt::from(den))
}
