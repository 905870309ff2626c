//! Graphs mapped into space or the plane with polyline edges.
//!
//! [`PLEmbedding`] is a piecewise-linear embedding of a graph in space and
//! [`PlanarDrawing`] a piecewise-linear map of a graph into the plane. Both
//! store, for each edge, the full route polyline oriented from the smaller
//! endpoint to the larger one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    classify_contact2, collinear2, collinear3, on_segment2, on_segment3, segments_touch3, Contact2,
    Point2, Point3, Rational, Segment2, Segment3,
};
use crate::graph::{Edge, Graph, Vertex};

/// Point types a graph can be mapped into.
pub trait Coord: Clone + PartialEq + Eq + Ord + fmt::Debug + fmt::Display {
    fn on_segment(&self, p: &Self, q: &Self) -> bool;
    /// Parameter of `self` along `pq`, assuming it lies on the segment.
    fn param_along(&self, p: &Self, q: &Self) -> Rational;
    /// `b` is collinear with `a`, `c` and strictly between them.
    fn straight_through(a: &Self, b: &Self, c: &Self) -> bool;
}

impl Coord for Point2 {
    fn on_segment(&self, p: &Self, q: &Self) -> bool {
        on_segment2(self, p, q)
    }

    fn param_along(&self, p: &Self, q: &Self) -> Rational {
        let d = q - p;
        (self - p).dot(&d) / d.dot(&d)
    }

    fn straight_through(a: &Self, b: &Self, c: &Self) -> bool {
        collinear2(a, b, c) && (b - a).dot(&(c - b)).is_positive()
    }
}

impl Coord for Point3 {
    fn on_segment(&self, p: &Self, q: &Self) -> bool {
        on_segment3(self, p, q)
    }

    fn param_along(&self, p: &Self, q: &Self) -> Rational {
        let d = q - p;
        (self - p).dot(&d) / d.dot(&d)
    }

    fn straight_through(a: &Self, b: &Self, c: &Self) -> bool {
        collinear3(a, b, c) && (b - a).dot(&(c - b)).is_positive()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("expected {expected} vertex positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error("route given for {0}, which is not an edge of the graph")]
    UnknownEdge(Edge),
    #[error("route of {0} does not start and end at its vertices' positions")]
    RouteEndpointMismatch(Edge),
    #[error("points do not lie on the route of {0} in order")]
    PointsNotOnRoute(Edge),
    #[error("vertex {0} cannot be smoothed (needs degree 2 and non-adjacent neighbours)")]
    NotSmoothable(Vertex),
}

/// A graph together with vertex positions and polyline edge routes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMap<P> {
    graph: Graph,
    positions: Vec<P>,
    routes: BTreeMap<Edge, Vec<P>>,
}

/// Piecewise-linear embedding of a graph in space.
pub type PLEmbedding = GraphMap<Point3>;

/// Piecewise-linear map of a graph into the plane.
pub type PlanarDrawing = GraphMap<Point2>;

impl<P: Coord> GraphMap<P> {
    /// Straight-line map.
    pub fn straight(graph: Graph, positions: Vec<P>) -> Result<Self, MapError> {
        GraphMap::with_interior(graph, positions, BTreeMap::new())
    }

    /// Map whose edge `e` bends at `interior[e]` (listed from `e.lo()` to
    /// `e.hi()`); edges missing from `interior` are straight.
    pub fn with_interior(
        graph: Graph,
        positions: Vec<P>,
        interior: BTreeMap<Edge, Vec<P>>,
    ) -> Result<Self, MapError> {
        if positions.len() != graph.vertex_count() {
            return Err(MapError::PositionCount { expected: graph.vertex_count(), got: positions.len() });
        }
        if let Some(e) = interior.keys().find(|e| !graph.has_edge(e.lo(), e.hi())) {
            return Err(MapError::UnknownEdge(*e));
        }
        let routes = graph
            .edges()
            .map(|e| {
                let mut r = vec![positions[e.lo()].clone()];
                r.extend(interior.get(&e).into_iter().flatten().cloned());
                r.push(positions[e.hi()].clone());
                (e, r)
            })
            .collect();
        Ok(GraphMap { graph, positions, routes })
    }

    /// Map from full routes (each starting at `e.lo()`'s position).
    pub fn with_routes(graph: Graph, positions: Vec<P>, routes: BTreeMap<Edge, Vec<P>>) -> Result<Self, MapError> {
        if positions.len() != graph.vertex_count() {
            return Err(MapError::PositionCount { expected: graph.vertex_count(), got: positions.len() });
        }
        for (e, r) in &routes {
            if !graph.has_edge(e.lo(), e.hi()) {
                return Err(MapError::UnknownEdge(*e));
            }
            if r.len() < 2 || r[0] != positions[e.lo()] || r[r.len() - 1] != positions[e.hi()] {
                return Err(MapError::RouteEndpointMismatch(*e));
            }
        }
        let mut full = routes;
        for e in graph.edges() {
            full.entry(e)
                .or_insert_with(|| vec![positions[e.lo()].clone(), positions[e.hi()].clone()]);
        }
        Ok(GraphMap { graph, positions, routes: full })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn positions(&self) -> &[P] {
        &self.positions
    }

    pub fn position(&self, v: Vertex) -> &P {
        &self.positions[v]
    }

    /// Route of `e`, from `e.lo()` to `e.hi()`.
    pub fn route(&self, e: Edge) -> &[P] {
        &self.routes[&e]
    }

    pub fn routes(&self) -> &BTreeMap<Edge, Vec<P>> {
        &self.routes
    }

    /// Bend points of `e`, excluding its endpoints.
    pub fn interior(&self, e: Edge) -> &[P] {
        let r = self.route(e);
        &r[1..r.len() - 1]
    }

    /// Route of `e` starting at vertex `v`.
    pub fn route_from(&self, e: Edge, v: Vertex) -> Vec<P> {
        let mut r = self.route(e).to_vec();
        if e.lo() != v {
            r.reverse();
        }
        r
    }

    pub fn side_count(&self, e: Edge) -> usize {
        self.route(e).len() - 1
    }

    pub fn side(&self, s: SideRef) -> (&P, &P) {
        let r = self.route(s.edge);
        (&r[s.side], &r[s.side + 1])
    }

    pub fn side_refs(&self) -> Vec<SideRef> {
        self.routes
            .iter()
            .flat_map(|(&edge, r)| (0..r.len() - 1).map(move |side| SideRef { edge, side }))
            .collect()
    }

    /// Applies `f` to every position and bend point.
    pub fn map_points<Q: Coord>(&self, f: impl Fn(&P) -> Q) -> GraphMap<Q> {
        GraphMap {
            graph: self.graph.clone(),
            positions: self.positions.iter().map(&f).collect(),
            routes: self.routes.iter().map(|(e, r)| (*e, r.iter().map(&f).collect())).collect(),
        }
    }

    /// Sub-map induced on `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[Vertex]) -> GraphMap<P> {
        let index = |v: Vertex| keep.iter().position(|&k| k == v);
        let mut graph = Graph::empty(keep.len());
        let mut routes = BTreeMap::new();
        for e in self.graph.edges() {
            if let (Some(a), Some(b)) = (index(e.lo()), index(e.hi())) {
                let ne = Edge::new(a, b);
                graph.insert_edge(ne);
                routes.insert(ne, self.route_from(e, keep[ne.lo()]));
            }
        }
        GraphMap { graph, positions: keep.iter().map(|&v| self.positions[v].clone()).collect(), routes }
    }

    /// Splits edge `e` at `points` (which must lie on its route, strictly
    /// inside and in order from `e.lo()`), adding one new vertex per point.
    pub fn subdivide(&self, e: Edge, points: &[P]) -> Result<Self, MapError> {
        if !self.graph.has_edge(e.lo(), e.hi()) {
            return Err(MapError::UnknownEdge(e));
        }
        let route = self.route(e);
        let m = route.len() - 1;
        let mut cuts: Vec<(usize, Rational)> = Vec::with_capacity(points.len());
        for x in points {
            let k = (0..m)
                .find(|&k| x.on_segment(&route[k], &route[k + 1]))
                .ok_or(MapError::PointsNotOnRoute(e))?;
            let t = x.param_along(&route[k], &route[k + 1]);
            let key = if t.is_one() && k + 1 < m { (k + 1, Rational::zero()) } else { (k, t) };
            cuts.push(key);
        }
        let first = (0, Rational::zero());
        let last = (m - 1, Rational::one());
        let ordered = cuts.windows(2).all(|w| w[0] < w[1]);
        if !ordered || cuts.iter().any(|c| *c == first || *c == last) {
            return Err(MapError::PointsNotOnRoute(e));
        }

        let mut pieces: Vec<Vec<P>> = Vec::new();
        let mut current = vec![route[0].clone()];
        let mut next_cut = 0;
        for k in 0..m {
            while next_cut < cuts.len() && cuts[next_cut].0 == k {
                let cut_point = points[next_cut].clone();
                if current.last() != Some(&cut_point) {
                    current.push(cut_point.clone());
                }
                pieces.push(std::mem::replace(&mut current, vec![cut_point]));
                next_cut += 1;
            }
            current.push(route[k + 1].clone());
        }
        pieces.push(current);

        let mut out = self.clone();
        out.graph.remove_edge(e);
        out.routes.remove(&e);
        let mut path = vec![e.lo()];
        for x in points {
            path.push(out.graph.add_vertex());
            out.positions.push(x.clone());
        }
        path.push(e.hi());
        for (i, mut piece) in pieces.into_iter().enumerate() {
            let (a, b) = (path[i], path[i + 1]);
            let ne = Edge::new(a, b);
            if ne.lo() != a {
                piece.reverse();
            }
            out.graph.insert_edge(ne);
            out.routes.insert(ne, piece);
        }
        Ok(out)
    }

    /// Inverse of subdivision at a degree-2 vertex `v`: its two edges merge
    /// into one, and vertex ids above `v` shift down by one.
    pub fn smooth(&self, v: Vertex) -> Result<Self, MapError> {
        let nbrs = self.graph.neighbors(v);
        if nbrs.len() != 2 || self.graph.has_edge(nbrs[0], nbrs[1]) {
            return Err(MapError::NotSmoothable(v));
        }
        let (a, b) = (nbrs[0], nbrs[1]);
        let mut joined = self.route_from(Edge::new(a, v), a);
        let tail = self.route_from(Edge::new(v, b), v);
        let at = joined.len() - 1;
        joined.extend(tail.into_iter().skip(1));
        if P::straight_through(&joined[at - 1], &joined[at], &joined[at + 1]) {
            joined.remove(at);
        }
        let mut out = self.clone();
        out.graph.remove_edge(Edge::new(a, v));
        out.graph.remove_edge(Edge::new(v, b));
        out.routes.remove(&Edge::new(a, v));
        out.routes.remove(&Edge::new(v, b));
        let ne = Edge::new(a, b);
        if ne.lo() != a {
            joined.reverse();
        }
        out.graph.insert_edge(ne);
        out.routes.insert(ne, joined);

        let shift = |x: Vertex| if x > v { x - 1 } else { x };
        out.graph.remove_vertex(v);
        out.positions.remove(v);
        out.routes = out
            .routes
            .into_iter()
            .map(|(e, r)| {
                let (lo, hi) = (shift(e.lo()), shift(e.hi()));
                (Edge::new(lo, hi), r)
            })
            .collect();
        Ok(out)
    }

    /// Smooths degree-2 vertices (highest id first) until none can be.
    pub fn smooth_all(&self) -> Self {
        let mut cur = self.clone();
        loop {
            let candidate = cur.graph.vertices().rev().find(|&v| {
                let n = cur.graph.neighbors(v);
                n.len() == 2 && !cur.graph.has_edge(n[0], n[1])
            });
            match candidate {
                Some(v) => cur = cur.smooth(v).expect("candidate is smoothable"),
                None => return cur,
            }
        }
    }
}

/// One side (segment) of one edge route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SideRef {
    pub edge: Edge,
    pub side: usize,
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge {}-{} side {}", self.edge.lo(), self.edge.hi(), self.side)
    }
}

/// Which of the two strands of a crossing passes over the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strand {
    First,
    Second,
}

/// Transversal intersection of sides of two distinct edge routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// The side with the smaller edge.
    pub first: SideRef,
    pub second: SideRef,
    pub point: Point2,
    /// Parameters of `point` along the first and second side.
    pub first_param: Rational,
    pub second_param: Rational,
    /// Over-strand, when the drawing came from a spatial projection.
    pub upper: Option<Strand>,
    /// The two edges share a graph vertex; such crossings do not enter the
    /// van Kampen sum.
    pub adjacent: bool,
}

impl Crossing {
    pub fn edges(&self) -> (Edge, Edge) {
        (self.first.edge, self.second.edge)
    }

    /// The over edge, if known.
    pub fn upper_edge(&self) -> Option<Edge> {
        self.upper.map(|s| match s {
            Strand::First => self.first.edge,
            Strand::Second => self.second.edge,
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EmbeddingViolation {
    #[error("vertices {0} and {1} have the same position")]
    CoincidentVertices(Vertex, Vertex),
    #[error("{0} has zero length")]
    DegenerateSide(SideRef),
    #[error("route of edge {edge} intersects itself at sides {first} and {second}")]
    RouteSelfIntersection { edge: Edge, first: usize, second: usize },
    #[error("{first} meets {second}")]
    RoutesMeet { first: SideRef, second: SideRef },
    #[error("vertex {vertex} lies on {at}")]
    VertexOnRoute { vertex: Vertex, at: SideRef },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DrawingViolation {
    #[error("vertices {0} and {1} have the same position")]
    CoincidentVertices(Vertex, Vertex),
    #[error("{0} has zero length")]
    DegenerateSide(SideRef),
    #[error("{} sides pass through {point}", sides.len())]
    TriplePoint { point: Point2, sides: Vec<SideRef> },
    #[error("a polyline vertex at {point} lies inside {at}")]
    VertexOnSide { point: Point2, at: SideRef },
    #[error("{first} and {second} share the vertex {point} illegally")]
    IllegalSharedVertex { first: SideRef, second: SideRef, point: Point2 },
    #[error("{first} and {second} overlap")]
    Overlap { first: SideRef, second: SideRef },
}

/// The graph vertex at which side `s` ends, if it is an end-side.
fn end_vertices<P: Coord>(m: &GraphMap<P>, s: SideRef) -> Vec<Vertex> {
    let last = m.side_count(s.edge) - 1;
    let mut out = Vec::new();
    if s.side == 0 {
        out.push(s.edge.lo());
    }
    if s.side == last {
        out.push(s.edge.hi());
    }
    out
}

fn common_end_vertex<P: Coord>(m: &GraphMap<P>, a: SideRef, b: SideRef) -> Option<Vertex> {
    let ea = end_vertices(m, a);
    end_vertices(m, b).into_iter().find(|v| ea.contains(v))
}

fn coincident_positions<P: Coord>(positions: &[P]) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            if positions[i] == positions[j] {
                out.push((i, j));
            }
        }
    }
    out
}

/// All violations of the embedding conditions: distinct vertex positions,
/// non-self-intersecting routes, routes of adjacent edges meeting only at
/// their common vertex, routes of disjoint edges disjoint, and no route
/// through a non-incident vertex.
pub fn validate_embedding(emb: &PLEmbedding) -> Vec<EmbeddingViolation> {
    let mut out: Vec<EmbeddingViolation> = coincident_positions(emb.positions())
        .into_iter()
        .map(|(u, v)| EmbeddingViolation::CoincidentVertices(u, v))
        .collect();
    let mut sides = Vec::new();
    for s in emb.side_refs() {
        let (p, q) = emb.side(s);
        if p == q {
            out.push(EmbeddingViolation::DegenerateSide(s));
        } else {
            sides.push((s, Segment3 { p: p.clone(), q: q.clone() }));
        }
    }
    for i in 0..sides.len() {
        for j in i + 1..sides.len() {
            let ((a, sa), (b, sb)) = (&sides[i], &sides[j]);
            if a.edge == b.edge {
                let bad = if a.side.abs_diff(b.side) == 1 {
                    // Adjacent sides share one route vertex; they may not fold back.
                    let (prev, mid, next) = if a.side < b.side { (&sa.p, &sa.q, &sb.q) } else { (&sb.p, &sb.q, &sa.q) };
                    collinear3(prev, mid, next) && (prev - mid).dot(&(next - mid)).is_positive()
                } else {
                    segments_touch3(sa, sb)
                };
                if bad {
                    out.push(EmbeddingViolation::RouteSelfIntersection {
                        edge: a.edge,
                        first: a.side,
                        second: b.side,
                    });
                }
                continue;
            }
            let bad = match common_end_vertex(emb, *a, *b) {
                Some(w) => {
                    let pw = emb.position(w);
                    let far = |s: &Segment3| if &s.p == pw { s.q.clone() } else { s.p.clone() };
                    let (x, y) = (far(sa), far(sb));
                    collinear3(pw, &x, &y) && (&x - pw).dot(&(&y - pw)).is_positive()
                }
                None => segments_touch3(sa, sb),
            };
            if bad {
                out.push(EmbeddingViolation::RoutesMeet { first: *a, second: *b });
            }
        }
    }
    for v in emb.graph().vertices() {
        for (s, seg) in &sides {
            if !s.edge.has(v) && on_segment3(emb.position(v), &seg.p, &seg.q) {
                out.push(EmbeddingViolation::VertexOnRoute { vertex: v, at: *s });
            }
        }
    }
    out
}

/// Single pass over all side pairs of a drawing: violations of general
/// position, and the crossings between distinct edges.
fn analyze_drawing(d: &PlanarDrawing) -> (Vec<DrawingViolation>, Vec<Crossing>) {
    let mut violations: Vec<DrawingViolation> = coincident_positions(d.positions())
        .into_iter()
        .map(|(u, v)| DrawingViolation::CoincidentVertices(u, v))
        .collect();
    let mut sides = Vec::new();
    for s in d.side_refs() {
        let (p, q) = d.side(s);
        if p == q {
            violations.push(DrawingViolation::DegenerateSide(s));
        } else {
            sides.push((s, Segment2 { p: p.clone(), q: q.clone() }));
        }
    }

    let mut crossings = Vec::new();
    let mut through: BTreeMap<Point2, BTreeSet<SideRef>> = BTreeMap::new();
    for i in 0..sides.len() {
        for j in i + 1..sides.len() {
            let ((a, sa), (b, sb)) = (&sides[i], &sides[j]);
            let contact = classify_contact2(sa, sb);
            let same_route_adjacent = a.edge == b.edge && a.side.abs_diff(b.side) == 1;
            let allowed_vertex = if same_route_adjacent {
                Some(if a.side < b.side { sa.q.clone() } else { sb.q.clone() })
            } else if a.edge != b.edge {
                common_end_vertex(d, *a, *b).map(|w| d.position(w).clone())
            } else {
                None
            };
            match contact {
                Contact2::Disjoint => {}
                Contact2::Cross { point, s, t } => {
                    let entry = through.entry(point.clone()).or_default();
                    entry.insert(*a);
                    entry.insert(*b);
                    if a.edge != b.edge {
                        crossings.push(Crossing {
                            first: *a,
                            second: *b,
                            point,
                            first_param: s,
                            second_param: t,
                            upper: None,
                            adjacent: a.edge.shares_vertex(b.edge),
                        });
                    }
                }
                Contact2::SharedEndpoint(point) => {
                    if allowed_vertex.as_ref() != Some(&point) {
                        violations.push(DrawingViolation::IllegalSharedVertex { first: *a, second: *b, point });
                    }
                }
                Contact2::EndpointInterior(point) => {
                    let at = if on_segment2(&point, &sa.p, &sa.q) && point != sa.p && point != sa.q { *a } else { *b };
                    violations.push(DrawingViolation::VertexOnSide { point, at });
                }
                Contact2::Overlap => violations.push(DrawingViolation::Overlap { first: *a, second: *b }),
            }
        }
    }
    for (point, set) in through {
        if set.len() >= 3 {
            violations.push(DrawingViolation::TriplePoint { point, sides: set.into_iter().collect() });
        }
    }
    for v in d.graph().vertices().filter(|&v| d.graph().degree(v) == 0) {
        for (s, seg) in &sides {
            if on_segment2(d.position(v), &seg.p, &seg.q) {
                violations.push(DrawingViolation::VertexOnSide { point: d.position(v).clone(), at: *s });
            }
        }
    }
    (violations, crossings)
}

/// All violations of general position for the routes of a planar map: no
/// three sides through one interior point, no polyline vertex inside a
/// side, and sides sharing a point only as consecutive sides of one route or
/// as end-sides at a common graph vertex.
pub fn validate_drawing(d: &PlanarDrawing) -> Vec<DrawingViolation> {
    analyze_drawing(d).0
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("drawing is not in general position: {}", .0.first().map(|v| v.to_string()).unwrap_or_default())]
pub struct DrawingNotGeneral(pub Vec<DrawingViolation>);

/// Every crossing between sides of distinct edges, exactly once, in
/// canonical order. Crossings of adjacent edges are included and flagged.
pub fn extract_crossings(d: &PlanarDrawing) -> Result<Vec<Crossing>, DrawingNotGeneral> {
    let (violations, crossings) = analyze_drawing(d);
    if violations.is_empty() {
        Ok(crossings)
    } else {
        Err(DrawingNotGeneral(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;
    use crate::graph::{complete_graph, Graph};

    fn p2(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn p3(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    fn moment_k6() -> PLEmbedding {
        let pts = (1..=6).map(|i| p3(i, i * i, i * i * i)).collect();
        GraphMap::straight(complete_graph(6), pts).unwrap()
    }

    fn pentagon_k5() -> PlanarDrawing {
        let pts = vec![p2(0, 2), p2(2, 1), p2(1, -2), p2(-1, -2), p2(-2, 1)];
        GraphMap::straight(complete_graph(5), pts).unwrap()
    }

    #[test]
    fn moment_curve_k6_is_an_embedding() {
        assert!(validate_embedding(&moment_k6()).is_empty());
    }

    #[test]
    fn crossing_routes_reported() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let pts = vec![p3(0, 0, 0), p3(2, 2, 0), p3(0, 2, 0), p3(2, 0, 0)];
        let emb = GraphMap::straight(g, pts).unwrap();
        let v = validate_embedding(&emb);
        assert_eq!(
            v,
            vec![EmbeddingViolation::RoutesMeet {
                first: SideRef { edge: Edge::new(0, 1), side: 0 },
                second: SideRef { edge: Edge::new(2, 3), side: 0 },
            }]
        );
    }

    #[test]
    fn route_through_vertex_reported() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let pts = vec![p3(0, 0, 0), p3(2, 2, 2), p3(1, 1, 1)];
        let emb = GraphMap::straight(g, pts).unwrap();
        assert!(validate_embedding(&emb)
            .contains(&EmbeddingViolation::VertexOnRoute { vertex: 2, at: SideRef { edge: Edge::new(0, 1), side: 0 } }));
    }

    #[test]
    fn adjacent_routes_folding_onto_each_other() {
        let g = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        let pts = vec![p3(0, 0, 0), p3(4, 0, 0), p3(0, 5, 0)];
        let mut interior = BTreeMap::new();
        interior.insert(Edge::new(0, 2), vec![p3(2, 0, 0)]);
        let emb = GraphMap::with_interior(g, pts, interior).unwrap();
        assert!(!validate_embedding(&emb).is_empty());
    }

    #[test]
    fn pentagon_drawing_has_five_disjoint_crossings() {
        let d = pentagon_k5();
        assert!(validate_drawing(&d).is_empty());
        let cs = extract_crossings(&d).unwrap();
        assert_eq!(cs.len(), 5);
        assert!(cs.iter().all(|c| !c.adjacent));
    }

    #[test]
    fn k4_with_inner_vertex_has_no_disjoint_crossings() {
        let pts = vec![p2(0, 0), p2(10, 0), p2(0, 10), p2(2, 3)];
        let d = GraphMap::straight(complete_graph(4), pts).unwrap();
        let cs = extract_crossings(&d).unwrap();
        assert!(cs.iter().all(|c| c.adjacent));
        assert!(cs.is_empty());
    }

    #[test]
    fn triple_point_detected() {
        let g = Graph::new(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let pts = vec![p2(-2, 0), p2(2, 0), p2(0, -2), p2(0, 2), p2(-2, -2), p2(2, 2)];
        let d = GraphMap::straight(g, pts).unwrap();
        let v = validate_drawing(&d);
        assert!(v.iter().any(|x| matches!(x, DrawingViolation::TriplePoint { sides, .. } if sides.len() == 3)));
        assert!(extract_crossings(&d).is_err());
    }

    #[test]
    fn vertex_on_non_incident_edge_detected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let pts = vec![p2(0, 0), p2(4, 0), p2(2, 0), p2(2, 5)];
        let d = GraphMap::straight(g, pts).unwrap();
        let v = validate_drawing(&d);
        assert!(v.iter().any(|x| matches!(x, DrawingViolation::VertexOnSide { .. })));
    }

    #[test]
    fn bend_points_meeting_is_illegal() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let pts = vec![p2(0, 0), p2(4, 0), p2(0, 4), p2(4, 4)];
        let mut interior = BTreeMap::new();
        interior.insert(Edge::new(0, 1), vec![p2(2, 2)]);
        interior.insert(Edge::new(2, 3), vec![p2(2, 2)]);
        let d = GraphMap::with_interior(g, pts, interior).unwrap();
        let v = validate_drawing(&d);
        assert!(v.iter().any(|x| matches!(x, DrawingViolation::IllegalSharedVertex { .. })));
    }

    #[test]
    fn self_crossing_route_is_allowed() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let pts = vec![p2(0, 0), p2(4, 4)];
        let mut interior = BTreeMap::new();
        interior.insert(Edge::new(0, 1), vec![p2(4, 0), p2(0, 4)]);
        let d = GraphMap::with_interior(g, pts, interior).unwrap();
        assert!(validate_drawing(&d).is_empty());
        assert!(extract_crossings(&d).unwrap().is_empty());
    }

    #[test]
    fn subdivide_and_smooth_round_trip() {
        let emb = moment_k6();
        let e = Edge::new(0, 5);
        let (a, b) = (emb.position(0).clone(), emb.position(5).clone());
        let mid = crate::geometry::lerp3(&a, &b, &ratio(1, 2));
        let sub = emb.subdivide(e, std::slice::from_ref(&mid)).unwrap();
        assert_eq!(sub.graph().vertex_count(), 7);
        assert_eq!(sub.graph().edge_count(), 16);
        assert_eq!(sub.position(6), &mid);
        assert!(validate_embedding(&sub).is_empty());
        let back = sub.smooth(6).unwrap();
        assert_eq!(back, emb);
        assert_eq!(sub.smooth_all(), emb);
    }

    #[test]
    fn subdivide_rejects_points_off_route() {
        let emb = moment_k6();
        let err = emb.subdivide(Edge::new(0, 1), &[p3(100, 100, 100)]);
        assert_eq!(err, Err(MapError::PointsNotOnRoute(Edge::new(0, 1))));
        // Out of order.
        let (a, b) = (emb.position(0).clone(), emb.position(1).clone());
        let x = crate::geometry::lerp3(&a, &b, &ratio(1, 3));
        let y = crate::geometry::lerp3(&a, &b, &ratio(2, 3));
        assert!(emb.subdivide(Edge::new(0, 1), &[y.clone(), x.clone()]).is_err());
        assert!(emb.subdivide(Edge::new(0, 1), &[x, y]).is_ok());
        // Endpoints are not interior.
        assert!(emb.subdivide(Edge::new(0, 1), &[a]).is_err());
    }

    #[test]
    fn subdivide_bent_route_at_bend_and_inside_sides() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let mut interior = BTreeMap::new();
        interior.insert(Edge::new(0, 1), vec![p3(4, 0, 0), p3(4, 4, 0)]);
        let emb = GraphMap::with_interior(g, vec![p3(0, 0, 0), p3(0, 4, 4)], interior).unwrap();
        let sub = emb.subdivide(Edge::new(0, 1), &[p3(2, 0, 0), p3(4, 0, 0), p3(4, 2, 0)]).unwrap();
        assert_eq!(sub.graph().edge_count(), 4);
        assert_eq!(sub.route(Edge::new(0, 2)), &[p3(0, 0, 0), p3(2, 0, 0)]);
        assert_eq!(sub.route(Edge::new(2, 3)), &[p3(2, 0, 0), p3(4, 0, 0)]);
        assert_eq!(sub.route(Edge::new(3, 4)), &[p3(4, 0, 0), p3(4, 2, 0)]);
        assert_eq!(sub.route(Edge::new(1, 4)), &[p3(0, 4, 4), p3(4, 4, 0), p3(4, 2, 0)]);
        let back = sub.smooth_all();
        assert_eq!(back, emb);
    }

    #[test]
    fn induced_relabels() {
        let emb = moment_k6();
        let sub = emb.induced(&[1, 3, 4]);
        assert_eq!(sub.graph().edge_count(), 3);
        assert_eq!(sub.position(0), emb.position(1));
        assert_eq!(sub.route(Edge::new(1, 2)), emb.route(Edge::new(3, 4)));
    }
}
