//! Spatial linking primitives: the linked-triangle predicate, the cone count
//! `|(A*a) ∩ b| mod 2` for closed spatial polygons, and the "higher"
//! relation seen from a viewpoint.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{
    collinear3, gp_points3, line_hits_segment, on_segment3, orient3d, point_in_triangle3,
    seg_hits_solid_triangle, segments_touch3, LineHit, Point3, Rational, Segment3, Sign, SolidHit,
    Triangle3,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PolylineError {
    #[error("a {kind} polyline needs at least {min} vertices, got {got}")]
    TooFewVertices { kind: &'static str, min: usize, got: usize },
    #[error("consecutive vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("vertex {0} is collinear with its neighbours")]
    CollinearCorner(usize),
    #[error("sides {0} and {1} intersect")]
    SelfIntersection(usize, usize),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("points are not in general position (four of them are coplanar)")]
    GeneralPositionViolation,
    #[error("apex is not in general position to the two polygons")]
    ApexNotGeneral,
    #[error("the two polygons intersect")]
    PolylinesNotDisjoint,
    #[error("both polygons must be closed")]
    NotClosed,
    #[error("degenerate viewpoint: the common ray hits an endpoint or both segments at one point")]
    NonGenericViewpoint,
}

/// A non-self-intersecting broken line in space, open or closed.
///
/// Every listed vertex is a genuine corner (no straight-through vertices),
/// so the side list is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpatialPolyline {
    vertices: Vec<Point3>,
    closed: bool,
}

impl SpatialPolyline {
    pub fn new(vertices: Vec<Point3>, closed: bool) -> Result<Self, PolylineError> {
        let n = vertices.len();
        let (kind, min) = if closed { ("closed", 3) } else { ("open", 2) };
        if n < min {
            return Err(PolylineError::TooFewVertices { kind, min, got: n });
        }
        let poly = SpatialPolyline { vertices, closed };
        let m = poly.side_count();
        for i in 0..m {
            let j = (i + 1) % n;
            if poly.vertices[i] == poly.vertices[j] {
                return Err(PolylineError::RepeatedVertex(i, j));
            }
        }
        let corners: Box<dyn Iterator<Item = usize>> = if closed {
            Box::new(0..n)
        } else {
            Box::new(1..n - 1)
        };
        for i in corners {
            let prev = &poly.vertices[(i + n - 1) % n];
            let next = &poly.vertices[(i + 1) % n];
            if collinear3(prev, &poly.vertices[i], next) {
                return Err(PolylineError::CollinearCorner(i));
            }
        }
        let sides = poly.sides();
        for i in 0..m {
            for j in i + 1..m {
                if poly.sides_adjacent(i, j) {
                    continue;
                }
                if segments_touch3(&sides[i], &sides[j]) {
                    return Err(PolylineError::SelfIntersection(i, j));
                }
            }
        }
        Ok(poly)
    }

    /// Drops straight-through vertices (collinear with both neighbours and
    /// between them) before validating.
    pub fn normalized(vertices: Vec<Point3>, closed: bool) -> Result<Self, PolylineError> {
        let mut vs = vertices;
        vs.dedup();
        if closed && vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        loop {
            let n = vs.len();
            let min = if closed { 3 } else { 2 };
            if n <= min {
                break;
            }
            let range: Vec<usize> = if closed { (0..n).collect() } else { (1..n - 1).collect() };
            let straight = range.into_iter().find(|&i| {
                let prev = &vs[(i + n - 1) % n];
                let next = &vs[(i + 1) % n];
                let v = &vs[i];
                collinear3(prev, v, next) && (v - prev).dot(&(next - v)).is_positive()
            });
            match straight {
                Some(i) => {
                    vs.remove(i);
                }
                None => break,
            }
        }
        SpatialPolyline::new(vs, closed)
    }

    pub fn closed(vertices: Vec<Point3>) -> Result<Self, PolylineError> {
        SpatialPolyline::new(vertices, true)
    }

    pub fn open(vertices: Vec<Point3>) -> Result<Self, PolylineError> {
        SpatialPolyline::new(vertices, false)
    }

    pub fn from_triangle(t: &Triangle3) -> Self {
        SpatialPolyline { vertices: vec![t.a.clone(), t.b.clone(), t.c.clone()], closed: true }
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn side_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    pub fn sides(&self) -> Vec<Segment3> {
        let n = self.vertices.len();
        (0..self.side_count())
            .map(|i| Segment3 { p: self.vertices[i].clone(), q: self.vertices[(i + 1) % n].clone() })
            .collect()
    }

    fn sides_adjacent(&self, i: usize, j: usize) -> bool {
        let m = self.side_count();
        i.abs_diff(j) == 1 || (self.closed && i.abs_diff(j) == m - 1)
    }

    pub fn translated(&self, offset: &Point3) -> Self {
        SpatialPolyline {
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
            closed: self.closed,
        }
    }
}

/// Whether two polylines share a point.
pub fn polylines_meet(a: &SpatialPolyline, b: &SpatialPolyline) -> bool {
    let bs = b.sides();
    a.sides().iter().any(|s| bs.iter().any(|t| segments_touch3(s, t)))
}

/// `t2` meets the solid triangle `t1` in exactly one point.
pub fn triangles_linked(t1: &Triangle3, t2: &Triangle3) -> Result<bool, LinkError> {
    Ok(hull_crossings(t1, t2)? == 1)
}

/// Number of points in which the sides of `t2` meet the solid triangle `t1`.
pub fn hull_crossings(t1: &Triangle3, t2: &Triangle3) -> Result<u32, LinkError> {
    let six: Vec<Point3> = t1.vertices().into_iter().chain(t2.vertices()).cloned().collect();
    if !gp_points3(&six) {
        return Err(LinkError::GeneralPositionViolation);
    }
    let mut hits = 0;
    for side in t2.sides() {
        hits += seg_hits_solid_triangle(&side, t1)
            .count()
            .expect("general position rules out degenerate contacts");
    }
    Ok(hits)
}

enum DoubleRay {
    None,
    /// The apex and both sides lie in one plane.
    Coplanar,
    /// The ray meets both sides; this is the farther of the two points.
    Far(Point3),
}

/// The single ray from `apex` (if any) that passes through both sides.
fn double_ray(apex: &Point3, s: &Segment3, t: &Segment3) -> DoubleRay {
    let n1 = (&s.p - apex).cross(&(&s.q - apex));
    let n2 = (&t.p - apex).cross(&(&t.q - apex));
    let dir = n1.cross(&n2);
    if dir.is_zero() {
        return DoubleRay::Coplanar;
    }
    let (h1, h2) = (
        line_hits_segment(apex, &dir, &s.p, &s.q),
        line_hits_segment(apex, &dir, &t.p, &t.q),
    );
    match (h1, h2) {
        (LineHit::At { s: s1, t: t1 }, LineHit::At { s: s2, t: t2 }) => {
            if Sign::of(&t1) != Sign::of(&t2) || t1 == t2 {
                return DoubleRay::None;
            }
            if t1.abs() > t2.abs() {
                DoubleRay::Far(crate::geometry::lerp3(&s.p, &s.q, &s1))
            } else {
                DoubleRay::Far(crate::geometry::lerp3(&t.p, &t.q, &s2))
            }
        }
        _ => DoubleRay::None,
    }
}

fn cone_triangles(apex: &Point3, a: &SpatialPolyline) -> Vec<Triangle3> {
    a.sides()
        .into_iter()
        .map(|s| Triangle3 { a: apex.clone(), b: s.p, c: s.q })
        .collect()
}

/// Whether `apex` is a usable cone point for counting `|(apex*a) ∩ b|`.
///
/// True iff
/// * no vertex of `b` lies on the cone `apex*a`;
/// * for every vertex `X` of `a`, and every point `X` of `a` whose segment
///   `apex X` passes through `a` again, the segment `apex X` misses `b`;
/// * additionally the apex is not collinear with any side of `a` and does
///   not span one plane with two sides of `a` (these configurations make
///   the cone fold onto itself along a whole sector).
pub fn apex_general_position(apex: &Point3, a: &SpatialPolyline, b: &SpatialPolyline) -> bool {
    let a_sides = a.sides();
    let b_sides = b.sides();
    if a_sides.iter().any(|s| collinear3(apex, &s.p, &s.q)) {
        return false;
    }
    if b_sides.iter().any(|t| on_segment3(apex, &t.p, &t.q)) {
        return false;
    }
    let cone = cone_triangles(apex, a);
    if b.vertices().iter().any(|w| cone.iter().any(|tri| point_in_triangle3(w, tri))) {
        return false;
    }
    let misses_b = |x: &Point3| {
        let ray = Segment3 { p: apex.clone(), q: x.clone() };
        !b_sides.iter().any(|t| segments_touch3(&ray, t))
    };
    if !a.vertices().iter().all(misses_b) {
        return false;
    }
    for i in 0..a_sides.len() {
        for j in i + 1..a_sides.len() {
            match double_ray(apex, &a_sides[i], &a_sides[j]) {
                DoubleRay::None => {}
                DoubleRay::Coplanar => return false,
                DoubleRay::Far(x) => {
                    if !misses_b(&x) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn coplanar_segment_touches_triangle(s: &Segment3, t: &Triangle3) -> bool {
    point_in_triangle3(&s.p, t)
        || point_in_triangle3(&s.q, t)
        || t.sides().iter().any(|side| segments_touch3(s, side))
}

/// `|(apex*a) ∩ b| mod 2` for disjoint closed spatial polygons.
pub fn linking_mod2_cone(
    a: &SpatialPolyline,
    b: &SpatialPolyline,
    apex: &Point3,
) -> Result<u8, LinkError> {
    if !a.is_closed() || !b.is_closed() {
        return Err(LinkError::NotClosed);
    }
    if polylines_meet(a, b) {
        return Err(LinkError::PolylinesNotDisjoint);
    }
    if !apex_general_position(apex, a, b) {
        return Err(LinkError::ApexNotGeneral);
    }
    let cone = cone_triangles(apex, a);
    let mut count = 0u32;
    for side in b.sides() {
        for tri in &cone {
            match seg_hits_solid_triangle(&side, tri) {
                SolidHit::Miss => {}
                SolidHit::Cross(_) => count += 1,
                SolidHit::NonGeneric => {
                    let coplanar = orient3d(&tri.a, &tri.b, &tri.c, &side.p).is_zero()
                        && orient3d(&tri.a, &tri.b, &tri.c, &side.q).is_zero();
                    if !coplanar || coplanar_segment_touches_triangle(&side, tri) {
                        return Err(LinkError::ApexNotGeneral);
                    }
                }
            }
        }
    }
    Ok((count % 2) as u8)
}

/// `a` is higher than `b` looking from `o`: some ray from `o` meets `a` at
/// `A` and `b` at `B` with `A != B` and `A` inside the segment `oB`, i.e. `a`
/// is the nearer of the two along that ray.
pub fn higher_central(o: &Point3, a: &Segment3, b: &Segment3) -> Result<bool, LinkError> {
    let na = (&a.p - o).cross(&(&a.q - o));
    let nb = (&b.p - o).cross(&(&b.q - o));
    if na.is_zero() || nb.is_zero() {
        return Err(LinkError::NonGenericViewpoint);
    }
    let dir = na.cross(&nb);
    if dir.is_zero() {
        return higher_coplanar(o, a, b, &na);
    }
    let (ha, hb) = (line_hits_segment(o, &dir, &a.p, &a.q), line_hits_segment(o, &dir, &b.p, &b.q));
    let (LineHit::At { s: sa, t: ta }, LineHit::At { s: sb, t: tb }) = (ha, hb) else {
        return Ok(false);
    };
    if Sign::of(&ta) != Sign::of(&tb) {
        return Ok(false);
    }
    let at_end = |s: &Rational| s.is_zero() || s.is_one();
    if at_end(&sa) || at_end(&sb) || ta == tb {
        return Err(LinkError::NonGenericViewpoint);
    }
    Ok(ta.abs() < tb.abs())
}

/// `higher_central` when `o`, `a` and `b` share a plane with normal `n`.
fn higher_coplanar(o: &Point3, a: &Segment3, b: &Segment3, n: &Point3) -> Result<bool, LinkError> {
    let side = |u: &Point3, v: &Point3| Sign::of(&n.dot(&u.cross(v)));
    let in_wedge = |r: &Point3, u1: &Point3, u2: &Point3| {
        let s0 = side(u1, u2);
        let s1 = side(u1, r);
        let s2 = side(r, u2);
        if s1.is_zero() {
            r.dot(u1).is_positive()
        } else if s2.is_zero() {
            r.dot(u2).is_positive()
        } else {
            s1 == s0 && s2 == s0
        }
    };
    let (ap, aq, bp, bq) = (&a.p - o, &a.q - o, &b.p - o, &b.q - o);
    let mut common: Vec<Point3> = Vec::new();
    for r in [&ap, &aq, &bp, &bq] {
        if in_wedge(r, &ap, &aq) && in_wedge(r, &bp, &bq) {
            let duplicate = common
                .iter()
                .any(|c| c.cross(r).is_zero() && c.dot(r).is_positive());
            if !duplicate {
                common.push(r.clone());
            }
        }
    }
    match common.len() {
        0 => Ok(false),
        1 => Err(LinkError::NonGenericViewpoint),
        _ => {
            let dir = &common[0] + &common[1];
            let hit = |s: &Segment3| match line_hits_segment(o, &dir, &s.p, &s.q) {
                LineHit::At { t, .. } => Ok(t),
                _ => Err(LinkError::NonGenericViewpoint),
            };
            let (ta, tb) = (hit(a)?, hit(b)?);
            if ta == tb {
                return Err(LinkError::NonGenericViewpoint);
            }
            Ok(ta < tb)
        }
    }
}

/// Number of sides of `other` that are higher than `e` looking from `apex`.
pub fn count_higher_sides(apex: &Point3, e: &Segment3, other: &Triangle3) -> Result<usize, LinkError> {
    let six = [
        apex.clone(),
        e.p.clone(),
        e.q.clone(),
        other.a.clone(),
        other.b.clone(),
        other.c.clone(),
    ];
    if !gp_points3(&six) {
        return Err(LinkError::GeneralPositionViolation);
    }
    let mut count = 0;
    for side in other.sides() {
        if higher_central(apex, &side, e)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Exactly one side of `other` is higher than `e` looking from `apex`; the
/// triangles `apex e` and `other` are then linked.
pub fn check_unique_higher_side(apex: &Point3, e: &Segment3, other: &Triangle3) -> Result<bool, LinkError> {
    Ok(count_higher_sides(apex, e, other)? == 1)
}
