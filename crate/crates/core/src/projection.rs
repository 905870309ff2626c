//! Orthogonal and central projections of spatial embeddings to planar
//! diagrams with over/under data, and the crossing-parity numbers `lk`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{
    extract_crossings, validate_drawing, validate_embedding, Crossing, DrawingViolation, EmbeddingViolation,
    GraphMap, PLEmbedding, PlanarDrawing, Strand,
};
use crate::geometry::{gp_points2, lerp3, rat, Point2, Point3, Rational};
use crate::graph::{complete_graph, Cycle, Edge, Vertex};
use crate::rng::SplitMix64;

/// A projection direction: a primitive integer vector whose first nonzero
/// component is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 3]", into = "[i64; 3]")]
pub struct Direction3 {
    x: i64,
    y: i64,
    z: i64,
}

impl Direction3 {
    /// `None` for the zero vector.
    pub fn new(x: i64, y: i64, z: i64) -> Option<Self> {
        if x == 0 && y == 0 && z == 0 {
            return None;
        }
        let g = x.gcd(&y).gcd(&z);
        let (mut x, mut y, mut z) = (x / g, y / g, z / g);
        let first = [x, y, z].into_iter().find(|c| *c != 0).expect("nonzero");
        if first < 0 {
            (x, y, z) = (-x, -y, -z);
        }
        Some(Direction3 { x, y, z })
    }

    pub fn components(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn vector(&self) -> Point3 {
        Point3::from_ints(self.x, self.y, self.z)
    }

    /// Two vectors spanning the orthogonal complement: `u = d × e_k` for the
    /// axis `k` where `|d_k|` is smallest, and `w = d × u`.
    pub fn plane_basis(&self) -> (Point3, Point3) {
        let d = self.vector();
        let c = self.components();
        let k = (0..3).min_by_key(|&i| c[i].unsigned_abs()).expect("three axes");
        let mut e = [0, 0, 0];
        e[k] = 1;
        let u = d.cross(&Point3::from_ints(e[0], e[1], e[2]));
        let w = d.cross(&u);
        (u, w)
    }
}

impl TryFrom<[i64; 3]> for Direction3 {
    type Error = String;

    fn try_from(c: [i64; 3]) -> Result<Self, String> {
        Direction3::new(c[0], c[1], c[2]).ok_or_else(|| "direction must be nonzero".to_string())
    }
}

impl From<Direction3> for [i64; 3] {
    fn from(d: Direction3) -> Self {
        d.components()
    }
}

impl fmt::Display for Direction3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("embedding is invalid ({} violations)", .0.len())]
    EmbeddingInvalid(Vec<EmbeddingViolation>),
    #[error("no general-position direction found after {tries} tries")]
    SearchExhausted { tries: u64 },
    #[error("projection is not in general position ({} violations)", .0.len())]
    ProjectionNotGeneral(Vec<DrawingViolation>),
    #[error("apex is not strictly extremal along the separating direction")]
    ApexNotExtremal,
    #[error("the two edge sets share a vertex")]
    CyclesNotDisjoint,
    #[error("both strands of a crossing have the same height")]
    EqualHeights,
}

/// How a diagram was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum View {
    Orthogonal { direction: Direction3 },
    /// From `apex` onto the plane `normal · x = level`.
    Central { apex: Point3, normal: Direction3, level: Rational },
}

impl View {
    /// The larger height is the upper strand. For central views this is
    /// the nearer point to the apex along the common ray.
    pub fn height(&self, x: &Point3) -> Rational {
        match self {
            View::Orthogonal { direction } => x.dot(&direction.vector()),
            View::Central { normal, .. } => x.dot(&normal.vector()),
        }
    }

    fn project(&self, x: &Point3) -> Point2 {
        match self {
            View::Orthogonal { direction } => {
                let (u, w) = direction.plane_basis();
                Point2::new(x.dot(&u), x.dot(&w))
            }
            View::Central { apex, normal, level } => {
                let n = normal.vector();
                let top = apex.dot(&n);
                let s = (&top - level) / (&top - x.dot(&n));
                let y = apex + &(x - apex).scale(&s);
                let (u, w) = normal.plane_basis();
                Point2::new(y.dot(&u), y.dot(&w))
            }
        }
    }

    /// Parameter along the spatial side `pq` of the point whose image has
    /// parameter `tau` along the projected side.
    fn lift_param(&self, p: &Point3, q: &Point3, tau: &Rational) -> Rational {
        match self {
            View::Orthogonal { .. } => tau.clone(),
            View::Central { apex, normal, .. } => {
                let n = normal.vector();
                let top = apex.dot(&n);
                let dp = &top - p.dot(&n);
                let dq = &top - q.dot(&n);
                let num = tau * &dp;
                let den = (Rational::one() - tau) * dq + &num;
                num / den
            }
        }
    }
}

/// A planar diagram of a spatial embedding, with every crossing's upper
/// strand resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedDiagram {
    pub drawing: PlanarDrawing,
    pub source: PLEmbedding,
    pub view: View,
    pub crossings: Vec<Crossing>,
}

impl ProjectedDiagram {
    fn build(source: &PLEmbedding, view: View) -> Result<Self, ProjectionError> {
        let drawing = source.map_points(|x| view.project(x));
        let violations = validate_drawing(&drawing);
        if !violations.is_empty() {
            return Err(ProjectionError::ProjectionNotGeneral(violations));
        }
        let mut crossings = extract_crossings(&drawing).expect("drawing validated");
        for c in &mut crossings {
            let h1 = strand_height(source, &view, c.first, &c.first_param);
            let h2 = strand_height(source, &view, c.second, &c.second_param);
            c.upper = Some(match h1.cmp(&h2) {
                std::cmp::Ordering::Greater => Strand::First,
                std::cmp::Ordering::Less => Strand::Second,
                std::cmp::Ordering::Equal => return Err(ProjectionError::EqualHeights),
            });
        }
        Ok(ProjectedDiagram { drawing, source: source.clone(), view, crossings })
    }

    /// Spatial point of a crossing strand.
    pub fn lift(&self, c: &Crossing, strand: Strand) -> Point3 {
        let (s, tau) = match strand {
            Strand::First => (c.first, &c.first_param),
            Strand::Second => (c.second, &c.second_param),
        };
        let (p, q) = self.source.side(s);
        lerp3(p, q, &self.view.lift_param(p, q, tau))
    }
}

fn strand_height(source: &PLEmbedding, view: &View, s: crate::embedding::SideRef, tau: &Rational) -> Rational {
    let (p, q) = source.side(s);
    view.height(&lerp3(p, q, &view.lift_param(p, q, tau)))
}

/// Orthogonal projection along `d`.
pub fn project_orthogonal(emb: &PLEmbedding, d: Direction3) -> Result<ProjectedDiagram, ProjectionError> {
    ProjectedDiagram::build(emb, View::Orthogonal { direction: d })
}

/// Searches seeded random integer directions for one whose orthogonal
/// projection of `emb` is in general position. The sampling cube starts at
/// `[-8, 8]^3` and doubles every 32 tries; every sample counts as a try.
pub fn find_general_plane(emb: &PLEmbedding, seed: u64, max_tries: u64) -> Result<Direction3, ProjectionError> {
    let violations = validate_embedding(emb);
    if !violations.is_empty() {
        return Err(ProjectionError::EmbeddingInvalid(violations));
    }
    let mut rng = SplitMix64::new(seed);
    let mut bound = 8i64;
    let mut seen = BTreeSet::new();
    for tries in 0..max_tries {
        if tries > 0 && tries % 32 == 0 && bound < (1 << 40) {
            bound *= 2;
        }
        let (x, y, z) = (rng.range_i64(-bound, bound), rng.range_i64(-bound, bound), rng.range_i64(-bound, bound));
        let Some(d) = Direction3::new(x, y, z) else { continue };
        if !seen.insert(d) {
            continue;
        }
        if ProjectedDiagram::build(emb, View::Orthogonal { direction: d }).is_ok() {
            return Ok(d);
        }
    }
    Err(ProjectionError::SearchExhausted { tries: max_tries })
}

/// Central projection of `emb` from `apex` onto the plane orthogonal to
/// `normal` halfway (in `normal · x`) between the apex and the highest other
/// point. Every vertex and bend point must lie strictly below the apex.
pub fn project_central_diagram(
    emb: &PLEmbedding,
    apex: &Point3,
    normal: Direction3,
) -> Result<ProjectedDiagram, ProjectionError> {
    let n = normal.vector();
    let top = apex.dot(&n);
    let highest = emb
        .routes()
        .values()
        .flatten()
        .chain(emb.positions())
        .map(|x| x.dot(&n))
        .max()
        .unwrap_or_else(|| &top - rat(1));
    if highest >= top {
        return Err(ProjectionError::ApexNotExtremal);
    }
    let level = (top + highest) / rat(2);
    ProjectedDiagram::build(emb, View::Central { apex: apex.clone(), normal, level })
}

/// Straight-line drawing of the complete graph on `points` (with `apex`
/// removed if present) by central projection from `apex`.
pub fn project_central(points: &[Point3], apex: &Point3, normal: Direction3) -> Result<PlanarDrawing, ProjectionError> {
    let rest: Vec<Point3> = points.iter().filter(|p| *p != apex).cloned().collect();
    let emb = GraphMap::straight(complete_graph(rest.len()), rest).expect("one position per vertex");
    let n = normal.vector();
    let top = apex.dot(&n);
    if emb.positions().iter().any(|x| x.dot(&n) >= top) {
        return Err(ProjectionError::ApexNotExtremal);
    }
    let highest = emb.positions().iter().map(|x| x.dot(&n)).max().unwrap_or_else(|| &top - rat(1));
    let view = View::Central { apex: apex.clone(), normal, level: (top + highest) / rat(2) };
    let drawing = emb.map_points(|x| view.project(x));
    if !gp_points2(drawing.positions()) {
        return Err(ProjectionError::ProjectionNotGeneral(Vec::new()));
    }
    let violations = validate_drawing(&drawing);
    if !violations.is_empty() {
        return Err(ProjectionError::ProjectionNotGeneral(violations));
    }
    Ok(drawing)
}

fn vertex_set(edges: &[Edge]) -> BTreeSet<Vertex> {
    edges.iter().flat_map(|e| e.ends()).collect()
}

/// Parity of the crossings between the routes of `upper` and `lower` at
/// which a strand of `upper` passes over. The edge sets must be
/// vertex-disjoint.
pub fn lk_from_diagram(diag: &ProjectedDiagram, upper: &[Edge], lower: &[Edge]) -> Result<u8, ProjectionError> {
    let (a, b) = (vertex_set(upper), vertex_set(lower));
    if !a.is_disjoint(&b) {
        return Err(ProjectionError::CyclesNotDisjoint);
    }
    let ua: BTreeSet<Edge> = upper.iter().copied().collect();
    let lb: BTreeSet<Edge> = lower.iter().copied().collect();
    let count = diag
        .crossings
        .iter()
        .filter(|c| {
            let (e1, e2) = c.edges();
            let over = c.upper_edge().expect("projected crossings carry heights");
            let between = (ua.contains(&e1) && lb.contains(&e2)) || (ua.contains(&e2) && lb.contains(&e1));
            between && ua.contains(&over)
        })
        .count();
    Ok((count % 2) as u8)
}

/// `lk` of two vertex-disjoint cycles of the diagram's graph.
pub fn lk_cycles(diag: &ProjectedDiagram, upper: &Cycle, lower: &Cycle) -> Result<u8, ProjectionError> {
    lk_from_diagram(diag, &upper.edges(), &lower.edges())
}

/// Number of crossings between the routes of the two edge sets.
pub fn crossings_between(diag: &ProjectedDiagram, a: &[Edge], b: &[Edge]) -> usize {
    let sa: BTreeSet<Edge> = a.iter().copied().collect();
    let sb: BTreeSet<Edge> = b.iter().copied().collect();
    diag.crossings
        .iter()
        .filter(|c| {
            let (e1, e2) = c.edges();
            (sa.contains(&e1) && sb.contains(&e2)) || (sa.contains(&e2) && sb.contains(&e1))
        })
        .count()
}

/// `lk(e, e') + lk(e', e) ≡ |crossings of e and e'| (mod 2)`.
pub fn check_crossing_parity_identity(diag: &ProjectedDiagram, e: &[Edge], e2: &[Edge]) -> Result<bool, ProjectionError> {
    let lhs = lk_from_diagram(diag, e, e2)? + lk_from_diagram(diag, e2, e)?;
    Ok(lhs as usize % 2 == crossings_between(diag, e, e2) % 2)
}

/// Heights of the two strands of every crossing, keyed by crossing index.
pub fn crossing_heights(diag: &ProjectedDiagram) -> BTreeMap<usize, (Rational, Rational)> {
    diag.crossings
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let h1 = diag.view.height(&diag.lift(c, Strand::First));
            let h2 = diag.view.height(&diag.lift(c, Strand::Second));
            (i, (h1, h2))
        })
        .collect()
}

/// The direction obtained from an arbitrary nonzero rational vector.
pub fn direction_from_rational(v: &Point3) -> Option<Direction3> {
    if v.is_zero() {
        return None;
    }
    let lcm = v.coords().iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<i64> = v
        .coords()
        .iter()
        .map(|c| {
            let k = (*c * Rational::from_integer(lcm.clone())).to_integer();
            i64::try_from(k).ok()
        })
        .collect::<Option<_>>()?;
    Direction3::new(ints[0], ints[1], ints[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ratio, Segment3};
    use crate::graph::{complete_graph, Graph};
    use crate::linking::{higher_central, linking_mod2_cone, SpatialPolyline};
    use num_traits::Zero;

    fn p3(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    fn moment(n: i64) -> Vec<Point3> {
        (1..=n).map(|i| p3(i, i * i, i * i * i)).collect()
    }

    fn linked_pair() -> PLEmbedding {
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let pts = vec![p3(1, 1, 0), p3(-1, 2, 0), p3(-1, -2, 0), p3(0, 0, 2), p3(0, 0, -2), p3(5, 0, 1)];
        GraphMap::straight(g, pts).unwrap()
    }

    #[test]
    fn direction_canonical_form() {
        assert_eq!(Direction3::new(-2, 4, 6), Direction3::new(1, -2, -3));
        assert_eq!(Direction3::new(0, -3, 0).unwrap().components(), [0, 1, 0]);
        assert!(Direction3::new(0, 0, 0).is_none());
        let d = Direction3::new(3, -5, 7).unwrap();
        let (u, w) = d.plane_basis();
        assert!(u.dot(&d.vector()).is_zero() && w.dot(&d.vector()).is_zero() && u.dot(&w).is_zero());
        assert!(!u.is_zero() && !w.is_zero());
    }

    #[test]
    fn general_plane_for_moment_k6() {
        let emb = GraphMap::straight(complete_graph(6), moment(6)).unwrap();
        let d = find_general_plane(&emb, 0, 1000).unwrap();
        let diag = project_orthogonal(&emb, d).unwrap();
        assert!(validate_drawing(&diag.drawing).is_empty());
        assert_eq!(find_general_plane(&emb, 0, 1000).unwrap(), d);
        assert_eq!(
            find_general_plane(&emb, 0, 0),
            Err(ProjectionError::SearchExhausted { tries: 0 })
        );
    }

    #[test]
    fn parallel_segment_direction_rejected() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let emb = GraphMap::straight(g, vec![p3(0, 0, 0), p3(0, 0, 5)]).unwrap();
        let d = Direction3::new(0, 0, 1).unwrap();
        assert!(matches!(project_orthogonal(&emb, d), Err(ProjectionError::ProjectionNotGeneral(_))));
        let found = find_general_plane(&emb, 3, 100).unwrap();
        assert_ne!(found, d);
    }

    #[test]
    fn skew_segments_cross_with_definite_upper() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let emb = GraphMap::straight(g, vec![p3(-1, 0, 0), p3(1, 0, 0), p3(0, -1, 1), p3(0, 1, 1)]).unwrap();
        let diag = project_orthogonal(&emb, Direction3::new(0, 0, 1).unwrap()).unwrap();
        assert_eq!(diag.crossings.len(), 1);
        assert_eq!(diag.crossings[0].upper_edge(), Some(Edge::new(2, 3)));
        let (a, b) = ([Edge::new(0, 1)], [Edge::new(2, 3)]);
        assert_eq!(lk_from_diagram(&diag, &b, &a), Ok(1));
        assert_eq!(lk_from_diagram(&diag, &a, &b), Ok(0));
        assert_eq!(check_crossing_parity_identity(&diag, &a, &b), Ok(true));
        let far = project_orthogonal(&emb, Direction3::new(1, 1, 0).unwrap()).unwrap();
        assert!(far.crossings.is_empty());
    }

    #[test]
    fn concurrent_projection_rejected() {
        let g = Graph::new(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let pts = vec![p3(-1, 0, 0), p3(1, 0, 0), p3(0, -1, 1), p3(0, 1, 1), p3(-1, -1, 2), p3(1, 1, 2)];
        let emb = GraphMap::straight(g, pts).unwrap();
        assert!(matches!(
            project_orthogonal(&emb, Direction3::new(0, 0, 1).unwrap()),
            Err(ProjectionError::ProjectionNotGeneral(_))
        ));
    }

    #[test]
    fn linked_pair_has_lk_one_in_every_direction() {
        let emb = linked_pair();
        let (a, b) = (Cycle::new(vec![0, 1, 2]), Cycle::new(vec![3, 4, 5]));
        for seed in 0..5 {
            let d = find_general_plane(&emb, seed, 1000).unwrap();
            let diag = project_orthogonal(&emb, d).unwrap();
            assert_eq!(lk_cycles(&diag, &a, &b), Ok(1));
            assert_eq!(lk_cycles(&diag, &b, &a), Ok(1));
        }
        let pa = SpatialPolyline::closed(emb.positions()[0..3].to_vec()).unwrap();
        let pb = SpatialPolyline::closed(emb.positions()[3..6].to_vec()).unwrap();
        assert_eq!(linking_mod2_cone(&pa, &pb, &p3(3, 7, 11)), Ok(1));
    }

    #[test]
    fn overlapping_cycles_rejected() {
        let emb = linked_pair();
        let diag = project_orthogonal(&emb, find_general_plane(&emb, 0, 100).unwrap()).unwrap();
        assert_eq!(
            lk_from_diagram(&diag, &[Edge::new(0, 1)], &[Edge::new(1, 2)]),
            Err(ProjectionError::CyclesNotDisjoint)
        );
    }

    #[test]
    fn central_projection_of_moment_points() {
        let pts = moment(6);
        let apex = pts[5].clone();
        let d = project_central(&pts, &apex, Direction3::new(1, 0, 0).unwrap()).unwrap();
        assert_eq!(d.graph().vertex_count(), 5);
        assert!(gp_points2(d.positions()));
        assert_eq!(
            project_central(&pts, &pts[2], Direction3::new(1, 0, 0).unwrap()),
            Err(ProjectionError::ApexNotExtremal)
        );
    }

    #[test]
    fn central_projection_collinear_images_rejected() {
        // Three points on a plane through the apex project to a line.
        let apex = p3(0, 0, 10);
        let pts = vec![p3(1, 0, 0), p3(2, 0, 1), p3(3, 0, 3), p3(0, 1, 0), p3(1, 5, 2)];
        assert!(matches!(
            project_central(&pts, &apex, Direction3::new(0, 0, 1).unwrap()),
            Err(ProjectionError::ProjectionNotGeneral(_))
        ));
    }

    #[test]
    fn central_upper_matches_higher_central() {
        let pts = moment(6);
        let apex = pts[5].clone();
        let rest = pts[..5].to_vec();
        let emb = GraphMap::straight(complete_graph(5), rest.clone()).unwrap();
        let diag = project_central_diagram(&emb, &apex, Direction3::new(1, 0, 0).unwrap()).unwrap();
        let seg = |e: Edge| Segment3::new(rest[e.lo()].clone(), rest[e.hi()].clone()).unwrap();
        for (e1, e2) in emb.graph().disjoint_edge_pairs() {
            let crossing = diag.crossings.iter().find(|c| c.edges() == (e1, e2) || c.edges() == (e2, e1));
            let higher = higher_central(&apex, &seg(e1), &seg(e2)).unwrap();
            let expected = crossing.map(|c| c.upper_edge() == Some(e1)).unwrap_or(false);
            assert_eq!(higher, expected, "{e1} over {e2}");
        }
    }

    #[test]
    fn lifted_crossing_points_lie_on_a_common_ray() {
        let pts = moment(6);
        let apex = pts[5].clone();
        let emb = GraphMap::straight(complete_graph(5), pts[..5].to_vec()).unwrap();
        let diag = project_central_diagram(&emb, &apex, Direction3::new(1, 0, 0).unwrap()).unwrap();
        assert!(!diag.crossings.is_empty());
        for c in &diag.crossings {
            let a = diag.lift(c, Strand::First);
            let b = diag.lift(c, Strand::Second);
            assert!((&a - &apex).cross(&(&b - &apex)).is_zero());
            let (p, q) = diag.source.side(c.first);
            assert!(crate::geometry::on_segment3(&a, p, q));
        }
    }

    #[test]
    fn rational_direction_normalized() {
        let v = Point3::new(ratio(1, 2), ratio(-1, 3), rat(0));
        assert_eq!(direction_from_rational(&v), Direction3::new(3, -2, 0));
        assert_eq!(direction_from_rational(&Point3::origin()), None);
    }
}
