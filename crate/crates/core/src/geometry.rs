//! Exact rational points, segments and the predicates every other module
//! consumes.
//!
//! Nothing in this module touches floating point. Coordinates are
//! arbitrary-precision rationals kept in lowest terms, so every orientation,
//! incidence and crossing question is decided exactly; a single misjudged
//! crossing would flip a parity downstream.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number (lowest terms, positive denominator).
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer {0:?}")]
    InvalidInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("denominator must be positive in {0:?}")]
    NegativeDenominator(String),
}

fn parse_integer(s: &str, whole: &str) -> Result<BigInt, RationalParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::InvalidInteger(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RationalParseError::InvalidInteger(whole.to_string()))
}

/// Parses a decimal integer (`"-12"`) or a fraction `"p/q"` with `q > 0`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(s, text)?)),
        Some((num, den)) => {
            let num = parse_integer(num.trim(), text)?;
            let den = parse_integer(den.trim(), text)?;
            if den.is_zero() {
                return Err(RationalParseError::ZeroDenominator(text.to_string()));
            }
            if den.is_negative() {
                return Err(RationalParseError::NegativeDenominator(text.to_string()));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact algebraic sign of a determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate segment: both endpoints are {0}")]
    DegenerateSegment(String),
    #[error("degenerate triangle: vertices {0}, {1}, {2} are collinear or repeated")]
    DegenerateTriangle(String, String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rat(x), rat(y))
    }

    pub fn origin() -> Self {
        Point2::new(Rational::zero(), Rational::zero())
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point2) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the cross product.
    pub fn cross(&self, o: &Point2) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn coords(&self) -> [&Rational; 2] {
        [&self.x, &self.y]
    }
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(rat(x), rat(y), rat(z))
    }

    pub fn origin() -> Self {
        Point3::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn scale(&self, k: &Rational) -> Point3 {
        Point3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn dot(&self, o: &Point3) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &Point3) -> Point3 {
        Point3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Drops coordinate `axis`, keeping the other two in order.
    pub fn drop_axis(&self, axis: usize) -> Point2 {
        match axis {
            0 => Point2::new(self.y.clone(), self.z.clone()),
            1 => Point2::new(self.x.clone(), self.z.clone()),
            _ => Point2::new(self.x.clone(), self.y.clone()),
        }
    }
}

impl Sub for &Point2 {
    type Output = Point2;
    fn sub(self, o: &Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Add for &Point2 {
    type Output = Point2;
    fn add(self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Point3 {
    type Output = Point3;
    fn sub(self, o: &Point3) -> Point3 {
        Point3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

impl Add for &Point3 {
    type Output = Point3;
    fn add(self, o: &Point3) -> Point3 {
        Point3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// `a + t (b - a)`
pub fn lerp2(a: &Point2, b: &Point2, t: &Rational) -> Point2 {
    a + &(b - a).scale(t)
}

/// `a + t (b - a)`
pub fn lerp3(a: &Point3, b: &Point3, t: &Rational) -> Point3 {
    a + &(b - a).scale(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment2 {
    pub p: Point2,
    pub q: Point2,
}

impl Segment2 {
    pub fn new(p: Point2, q: Point2) -> Result<Self, GeometryError> {
        if p == q {
            return Err(GeometryError::DegenerateSegment(p.to_string()));
        }
        Ok(Segment2 { p, q })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment3 {
    pub p: Point3,
    pub q: Point3,
}

impl Segment3 {
    pub fn new(p: Point3, q: Point3) -> Result<Self, GeometryError> {
        if p == q {
            return Err(GeometryError::DegenerateSegment(p.to_string()));
        }
        Ok(Segment3 { p, q })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle3 {
    pub a: Point3,
    pub b: Point3,
    pub c: Point3,
}

impl Triangle3 {
    pub fn new(a: Point3, b: Point3, c: Point3) -> Result<Self, GeometryError> {
        if (&b - &a).cross(&(&c - &a)).is_zero() {
            return Err(GeometryError::DegenerateTriangle(
                a.to_string(),
                b.to_string(),
                c.to_string(),
            ));
        }
        Ok(Triangle3 { a, b, c })
    }

    pub fn vertices(&self) -> [&Point3; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Sides `ab`, `bc`, `ca`.
    pub fn sides(&self) -> [Segment3; 3] {
        [
            Segment3 { p: self.a.clone(), q: self.b.clone() },
            Segment3 { p: self.b.clone(), q: self.c.clone() },
            Segment3 { p: self.c.clone(), q: self.a.clone() },
        ]
    }
}

pub fn orient2d_det(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (b - a).cross(&(c - a))
}

/// Sign of `det(b - a, c - a)`; zero iff the three points are collinear.
pub fn orient2d(a: &Point2, b: &Point2, c: &Point2) -> Sign {
    Sign::of(&orient2d_det(a, b, c))
}

pub fn orient3d_det(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Rational {
    (b - a).dot(&(c - a).cross(&(d - a)))
}

/// Sign of `det(b - a, c - a, d - a)`; zero iff the four points are coplanar.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    Sign::of(&orient3d_det(a, b, c, d))
}

/// No four of the points lie in one plane.
pub fn gp_points3(points: &[Point3]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if orient3d(&points[i], &points[j], &points[k], &points[l]).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// No three of the points lie on one line.
pub fn gp_points2(points: &[Point2]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient2d(&points[i], &points[j], &points[k]).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn collinear2(a: &Point2, b: &Point2, c: &Point2) -> bool {
    orient2d(a, b, c).is_zero()
}

pub fn collinear3(a: &Point3, b: &Point3, c: &Point3) -> bool {
    (b - a).cross(&(c - a)).is_zero()
}

/// `x` lies on the closed segment `pq`.
pub fn on_segment2(x: &Point2, p: &Point2, q: &Point2) -> bool {
    collinear2(p, q, x) && !(x - p).dot(&(x - q)).is_positive()
}

/// `x` lies on the closed segment `pq`.
pub fn on_segment3(x: &Point3, p: &Point3, q: &Point3) -> bool {
    collinear3(p, q, x) && !(x - p).dot(&(x - q)).is_positive()
}

/// How two closed planar segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contact2 {
    Disjoint,
    /// Transversal crossing interior to both; `s`, `t` are the parameters
    /// along the first and second segment.
    Cross { point: Point2, s: Rational, t: Rational },
    SharedEndpoint(Point2),
    /// An endpoint of one segment lies strictly inside the other.
    EndpointInterior(Point2),
    /// Collinear with a common piece of positive length.
    Overlap,
}

pub fn classify_contact2(s: &Segment2, t: &Segment2) -> Contact2 {
    let (p, q, r, w) = (&s.p, &s.q, &t.p, &t.q);
    let o1 = orient2d(p, q, r);
    let o2 = orient2d(p, q, w);
    let o3 = orient2d(r, w, p);
    let o4 = orient2d(r, w, q);

    if o1.is_zero() && o2.is_zero() {
        // Same supporting line: compare along an axis where pq is not flat.
        let axis = if p.x != q.x { 0 } else { 1 };
        let key = |pt: &Point2| pt.coords()[axis].clone();
        let (a0, a1) = minmax(key(p), key(q));
        let (b0, b1) = minmax(key(r), key(w));
        let lo = if a0 > b0 { a0 } else { b0 };
        let hi = if a1 < b1 { a1 } else { b1 };
        return if lo < hi {
            Contact2::Overlap
        } else if lo == hi {
            let touch = [p, q].into_iter().find(|e| key(e) == lo).cloned();
            Contact2::SharedEndpoint(touch.expect("touching collinear segments share an endpoint"))
        } else {
            Contact2::Disjoint
        };
    }

    for a in [p, q] {
        if a == r || a == w {
            return Contact2::SharedEndpoint(a.clone());
        }
    }
    if o1.is_zero() && on_segment2(r, p, q) {
        return Contact2::EndpointInterior(r.clone());
    }
    if o2.is_zero() && on_segment2(w, p, q) {
        return Contact2::EndpointInterior(w.clone());
    }
    if o3.is_zero() && on_segment2(p, r, w) {
        return Contact2::EndpointInterior(p.clone());
    }
    if o4.is_zero() && on_segment2(q, r, w) {
        return Contact2::EndpointInterior(q.clone());
    }
    let strictly_opposite = |a: Sign, b: Sign| !a.is_zero() && !b.is_zero() && a != b;
    if strictly_opposite(o1, o2) && strictly_opposite(o3, o4) {
        let d1 = q - p;
        let d2 = w - r;
        let denom = d1.cross(&d2);
        let rp = r - p;
        let sp = rp.cross(&d2) / &denom;
        let tp = rp.cross(&d1) / &denom;
        return Contact2::Cross { point: lerp2(p, q, &sp), s: sp, t: tp };
    }
    Contact2::Disjoint
}

fn minmax(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Outcome of intersecting two closed planar segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegIntersection2 {
    Empty,
    Point(Point2),
    /// Shared endpoint, collinear overlap, or an endpoint inside the other
    /// segment. A value, not an error: callers decide what it means.
    NonGeneric,
}

pub fn seg_intersect2(s: &Segment2, t: &Segment2) -> SegIntersection2 {
    match classify_contact2(s, t) {
        Contact2::Disjoint => SegIntersection2::Empty,
        Contact2::Cross { point, .. } => SegIntersection2::Point(point),
        _ => SegIntersection2::NonGeneric,
    }
}

/// Closed planar segments share at least one point.
pub fn segments_touch2(s: &Segment2, t: &Segment2) -> bool {
    !matches!(classify_contact2(s, t), Contact2::Disjoint)
}

/// First axis along which `v` has a nonzero component.
fn nonzero_axis(v: &Point3) -> Option<usize> {
    v.coords().iter().position(|c| !c.is_zero())
}

/// Closed spatial segments share at least one point.
pub fn segments_touch3(s: &Segment3, t: &Segment3) -> bool {
    let (p, q, r, w) = (&s.p, &s.q, &t.p, &t.q);
    if !orient3d(p, q, r, w).is_zero() {
        return false;
    }
    let pq = q - p;
    let mut normal = pq.cross(&(r - p));
    if normal.is_zero() {
        normal = pq.cross(&(w - p));
    }
    match nonzero_axis(&normal) {
        Some(axis) => segments_touch2(
            &Segment2 { p: p.drop_axis(axis), q: q.drop_axis(axis) },
            &Segment2 { p: r.drop_axis(axis), q: w.drop_axis(axis) },
        ),
        None => {
            // All four points on one line.
            let axis = nonzero_axis(&pq).expect("segment is not degenerate");
            let key = |pt: &Point3| pt.coords()[axis].clone();
            let (a0, a1) = minmax(key(p), key(q));
            let (b0, b1) = minmax(key(r), key(w));
            a0 <= b1 && b0 <= a1
        }
    }
}

/// `x` lies in the closed solid triangle.
pub fn point_in_triangle3(x: &Point3, t: &Triangle3) -> bool {
    if !orient3d(&t.a, &t.b, &t.c, x).is_zero() {
        return false;
    }
    let normal = (&t.b - &t.a).cross(&(&t.c - &t.a));
    let axis = nonzero_axis(&normal).expect("triangle is not degenerate");
    let (a, b, c, y) = (
        t.a.drop_axis(axis),
        t.b.drop_axis(axis),
        t.c.drop_axis(axis),
        x.drop_axis(axis),
    );
    let s = [orient2d(&a, &b, &y), orient2d(&b, &c, &y), orient2d(&c, &a, &y)];
    let has_pos = s.contains(&Sign::Positive);
    let has_neg = s.contains(&Sign::Negative);
    !(has_pos && has_neg)
}

/// Outcome of intersecting a segment with a solid (closed, filled) triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolidHit {
    Miss,
    /// Single transversal point interior to the triangle and the segment.
    Cross(Point3),
    /// The segment lies in the triangle's plane, touches the triangle's
    /// boundary, or has an endpoint in the solid triangle.
    NonGeneric,
}

impl SolidHit {
    /// `Some(0 | 1)`, or `None` for [`SolidHit::NonGeneric`].
    pub fn count(&self) -> Option<u32> {
        match self {
            SolidHit::Miss => Some(0),
            SolidHit::Cross(_) => Some(1),
            SolidHit::NonGeneric => None,
        }
    }
}

pub fn seg_hits_solid_triangle(s: &Segment3, t: &Triangle3) -> SolidHit {
    let d1 = orient3d_det(&t.a, &t.b, &t.c, &s.p);
    let d2 = orient3d_det(&t.a, &t.b, &t.c, &s.q);
    let (s1, s2) = (Sign::of(&d1), Sign::of(&d2));
    match (s1, s2) {
        (Sign::Zero, Sign::Zero) => SolidHit::NonGeneric,
        (Sign::Zero, _) => {
            if point_in_triangle3(&s.p, t) {
                SolidHit::NonGeneric
            } else {
                SolidHit::Miss
            }
        }
        (_, Sign::Zero) => {
            if point_in_triangle3(&s.q, t) {
                SolidHit::NonGeneric
            } else {
                SolidHit::Miss
            }
        }
        _ if s1 == s2 => SolidHit::Miss,
        _ => {
            let sides = [
                orient3d(&s.p, &s.q, &t.a, &t.b),
                orient3d(&s.p, &s.q, &t.b, &t.c),
                orient3d(&s.p, &s.q, &t.c, &t.a),
            ];
            let has_pos = sides.contains(&Sign::Positive);
            let has_neg = sides.contains(&Sign::Negative);
            if has_pos && has_neg {
                SolidHit::Miss
            } else if sides.iter().any(|x| x.is_zero()) {
                SolidHit::NonGeneric
            } else {
                let lambda = &d1 / (&d1 - &d2);
                SolidHit::Cross(lerp3(&s.p, &s.q, &lambda))
            }
        }
    }
}

/// Where the line `origin + t * dir` meets the segment `pq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum LineHit {
    None,
    /// `s` is the parameter along `pq` (in `[0, 1]`), `t` along the line.
    At { s: Rational, t: Rational },
    /// The segment lies on the line.
    Degenerate,
}

/// Intersects a line with a segment assumed coplanar with it.
pub(crate) fn line_hits_segment(origin: &Point3, dir: &Point3, p: &Point3, q: &Point3) -> LineHit {
    let u = (p - origin).cross(dir);
    let w = (q - p).cross(dir);
    let Some(k) = nonzero_axis(&w) else {
        return if u.is_zero() { LineHit::Degenerate } else { LineHit::None };
    };
    let s = -(u.coords()[k] / w.coords()[k]);
    if s.is_negative() || s > Rational::one() {
        return LineHit::None;
    }
    let x = &lerp3(p, q, &s) - origin;
    let kd = nonzero_axis(dir).expect("direction is nonzero");
    let t = x.coords()[kd] / dir.coords()[kd];
    LineHit::At { s, t }
}
