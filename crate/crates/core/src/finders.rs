//! Finders for linked cycles in spatial embeddings of `K6` and `K4,4`, and
//! a brute-force oracle over all disjoint cycle pairs.
//!
//! Each finder projects part of the embedding to the plane, computes the
//! numbers `lk(T_e, C_e)` for one family of cycle pairs indexed by the
//! edges `e` of a smaller graph, checks that they sum to the van Kampen
//! invariant of that smaller graph's drawing (which is 1), and returns the
//! first pair with `lk = 1`.

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{validate_embedding, GraphMap, PLEmbedding};
use crate::geometry::{gp_points3, Point3};
use crate::graph::{complete_graph, enumerate_disjoint_cycle_pairs, Cycle, Edge, Vertex};
use crate::linking::{apex_general_position, linking_mod2_cone, LinkError, SpatialPolyline};
use crate::projection::{
    find_general_plane, lk_from_diagram, project_central_diagram, project_orthogonal, Direction3,
    ProjectedDiagram, ProjectionError,
};
use crate::rng::SplitMix64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    LinearCentral,
    PlOrthogonal,
}

/// Two vertex-disjoint cycles and their mod-2 linking number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkReport {
    pub cycle1: Cycle,
    pub cycle2: Cycle,
    pub lk_value: u8,
    pub method: Method,
    pub oracle_confirmed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub edge: Edge,
    pub value: u8,
}

/// One of the sums from a finder, with its terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityLedger {
    pub label: String,
    pub entries: Vec<LedgerEntry>,
    pub total: u8,
    pub expected: u8,
}

impl ParityLedger {
    fn new(label: impl Into<String>, expected: u8, entries: Vec<LedgerEntry>) -> Self {
        let total = entries.iter().fold(0, |acc, x| acc ^ x.value);
        ParityLedger { label: label.into(), entries, total, expected }
    }

    pub fn holds(&self) -> bool {
        self.total == self.expected
    }
}

/// The plane the finder worked in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Projection {
    /// From the point with this vertex id, onto a plane orthogonal to the
    /// functional `normal`.
    Central { apex: Vertex, normal: Direction3 },
    Orthogonal { direction: Direction3 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub report: LinkReport,
    pub projection: Projection,
    pub ledgers: Vec<ParityLedger>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FinderError {
    #[error("points are not in general position (four of them are coplanar)")]
    GeneralPositionViolation,
    #[error("expected {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("embedding is invalid: {0}")]
    EmbeddingInvalid(String),
    #[error("embedded graph is not {0} (after smoothing degree-2 vertices)")]
    WrongGraph(&'static str),
    #[error("internal parity failure: {0}")]
    InternalParityFailure(String),
    #[error("no general-position apex found after {0} tries")]
    ApexSearchExhausted(u64),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

fn check_ledgers(ledgers: &[ParityLedger]) -> Result<(), FinderError> {
    match ledgers.iter().find(|l| !l.holds()) {
        Some(l) => Err(FinderError::InternalParityFailure(format!(
            "{} = {}, expected {}",
            l.label, l.total, l.expected
        ))),
        None => Ok(()),
    }
}

fn lk(diag: &ProjectedDiagram, upper: &[Edge], lower: &[Edge]) -> u8 {
    lk_from_diagram(diag, upper, lower).expect("finder pairs are disjoint")
}

/// A linear functional taking pairwise distinct values on `points`:
/// the first coordinate if its maximum is unique, otherwise a seeded
/// random integer functional.
fn separating_functional(points: &[Point3], seed: u64) -> Direction3 {
    let x = Direction3::new(1, 0, 0).expect("nonzero");
    let values: Vec<_> = points.iter().map(|p| p.x.clone()).collect();
    let max = values.iter().max().expect("nonempty");
    if values.iter().filter(|v| *v == max).count() == 1 {
        return x;
    }
    let mut rng = SplitMix64::new(seed);
    let mut bound = 8i64;
    for tries in 1u64.. {
        if tries % 64 == 0 && bound < (1 << 40) {
            bound *= 2;
        }
        let Some(d) =
            Direction3::new(rng.range_i64(-bound, bound), rng.range_i64(-bound, bound), rng.range_i64(-bound, bound))
        else {
            continue;
        };
        let v = d.vector();
        let mut vals: Vec<_> = points.iter().map(|p| p.dot(&v)).collect();
        vals.sort();
        vals.dedup();
        if vals.len() == points.len() {
            return d;
        }
    }
    unreachable!("generic functionals exist for distinct points")
}

/// Two linked triangles among six points in general position in space.
///
/// One point is made strictly extremal by a linear functional and the
/// other five are centrally projected from it. For each segment `e` on the
/// five, `lk(T_e, e)` counts the sides of the complementary triangle `T_e`
/// nearer to the apex than `e` at a crossing; their sum is odd, and an `e`
/// with odd count gives the linked pair (apex + `e`, `T_e`).
pub fn find_linked_triangles_linear(points: &[Point3], seed: u64) -> Result<Finding, FinderError> {
    if points.len() != 6 {
        return Err(FinderError::WrongPointCount { expected: 6, got: points.len() });
    }
    if !gp_points3(points) {
        return Err(FinderError::GeneralPositionViolation);
    }
    let normal = separating_functional(points, seed);
    let nv = normal.vector();
    let apex = (0..6).max_by_key(|&i| points[i].dot(&nv)).expect("six points");
    let rest: Vec<Vertex> = (0..6).filter(|&i| i != apex).collect();
    let emb = GraphMap::straight(complete_graph(5), rest.iter().map(|&i| points[i].clone()).collect())
        .expect("one position per vertex");
    let diag = project_central_diagram(&emb, &points[apex], normal)?;

    let mut entries = Vec::new();
    let mut first = None;
    for e in emb.graph().edges() {
        let tri: Vec<Vertex> = (0..5).filter(|&v| !e.has(v)).collect();
        let value = lk(&diag, &Cycle::new(tri.clone()).edges(), &[e]);
        let orig = Edge::new(rest[e.lo()], rest[e.hi()]);
        entries.push(LedgerEntry { edge: orig, value });
        if value == 1 && first.is_none() {
            first = Some((
                Cycle::new(vec![apex, orig.lo(), orig.hi()]),
                Cycle::new(tri.iter().map(|&v| rest[v]).collect()),
            ));
        }
    }
    let ledgers = vec![ParityLedger::new("sum lk(T_e, e)", 1, entries)];
    check_ledgers(&ledgers)?;
    let (cycle1, cycle2) = first.expect("odd sum has a nonzero term");
    Ok(Finding {
        report: LinkReport { cycle1, cycle2, lk_value: 1, method: Method::LinearCentral, oracle_confirmed: None },
        projection: Projection::Central { apex, normal },
        ledgers,
    })
}

fn validated_simple(emb: &PLEmbedding) -> Result<PLEmbedding, FinderError> {
    let violations = validate_embedding(emb);
    if let Some(v) = violations.first() {
        return Err(FinderError::EmbeddingInvalid(v.to_string()));
    }
    Ok(emb.smooth_all())
}

fn general_diagram(emb: &PLEmbedding, seed: u64, max_tries: u64) -> Result<(ProjectedDiagram, Direction3), FinderError> {
    let d = find_general_plane(emb, seed, max_tries)?;
    Ok((project_orthogonal(emb, d)?, d))
}

/// Two linked triangles in a piecewise-linear embedding of `K6`.
///
/// Vertex `A = 0` is set aside and the whole graph projected along a
/// general direction. For each edge `e = E1E2` of `K6 - A`, with `T_e` the
/// triangle on the other three vertices and `Ae` the triangle `A E1 E2`,
/// `lk(T_e, Ae) = lk(T_e, AE1) + lk(T_e, AE2) + lk(T_e, e)`. Grouping the
/// first two terms by vertex, `sum over e at v of lk(T_e, Av)` vanishes for
/// each `v`: the `T_e` are then the four triangles of `K5 - v`, which cover
/// each edge twice. Split by endpoint order alone the two sums need not
/// vanish. The last sum is the van Kampen invariant of the drawing of `K5`.
pub fn find_linked_cycles_k6(emb: &PLEmbedding, seed: u64, max_tries: u64) -> Result<Finding, FinderError> {
    let g = validated_simple(emb)?;
    if g.graph().vertex_count() != 6 || !g.graph().is_complete() {
        return Err(FinderError::WrongGraph("K6"));
    }
    let (diag, direction) = general_diagram(&g, seed, max_tries)?;
    let a = 0;
    let mut sums: [Vec<LedgerEntry>; 2] = Default::default();
    let mut stars: [Vec<LedgerEntry>; 5] = Default::default();
    let mut first = None;
    for e in g.graph().edges().filter(|e| !e.has(a)) {
        let (e1, e2) = (e.lo(), e.hi());
        let tri = Cycle::new((1..6).filter(|&v| !e.has(v)).collect());
        let ae = Cycle::new(vec![a, e1, e2]);
        let t = tri.edges();
        let parts = [lk(&diag, &t, &[Edge::new(a, e1)]), lk(&diag, &t, &[Edge::new(a, e2)]), lk(&diag, &t, &[e])];
        let whole = lk(&diag, &t, &ae.edges());
        if whole != parts.iter().fold(0, |x, y| x ^ y) {
            return Err(FinderError::InternalParityFailure(format!("lk(T_e, Ae) is not additive at e = {e}")));
        }
        sums[0].push(LedgerEntry { edge: e, value: whole });
        sums[1].push(LedgerEntry { edge: e, value: parts[2] });
        stars[e1 - 1].push(LedgerEntry { edge: e, value: parts[0] });
        stars[e2 - 1].push(LedgerEntry { edge: e, value: parts[1] });
        if whole == 1 && first.is_none() {
            first = Some((ae, tri));
        }
    }
    let [whole, ee] = sums;
    let mut ledgers = vec![ParityLedger::new("sum lk(T_e, Ae)", 1, whole)];
    for (i, entries) in stars.into_iter().enumerate() {
        ledgers.push(ParityLedger::new(format!("sum lk(T_e, A{}) over e at {}", i + 1, i + 1), 0, entries));
    }
    ledgers.push(ParityLedger::new("sum lk(T_e, e)", 1, ee));
    check_ledgers(&ledgers)?;
    let (cycle1, cycle2) = first.expect("odd sum has a nonzero term");
    Ok(Finding {
        report: LinkReport { cycle1, cycle2, lk_value: 1, method: Method::PlOrthogonal, oracle_confirmed: None },
        projection: Projection::Orthogonal { direction },
        ledgers,
    })
}

/// Two linked 4-cycles in a piecewise-linear embedding of `K4,4`.
///
/// `A` and `B` are the least vertices of the two parts (`A` in the part
/// containing vertex 0). For each edge `e = E1E2` of `K4,4 - A - B`, with
/// `E1` on `A`'s side, `ABe` is the cycle `A E2 E1 B` and `T_e` the 4-cycle
/// on the other four vertices. The sums of `lk(T_e, AB)`, `lk(T_e, AE2)`
/// and `lk(T_e, BE1)` vanish, leaving the van Kampen invariant of `K3,3`.
pub fn find_linked_cycles_k44(emb: &PLEmbedding, seed: u64, max_tries: u64) -> Result<Finding, FinderError> {
    let g = validated_simple(emb)?;
    let (p, q) = g.graph().complete_bipartite_parts(4).ok_or(FinderError::WrongGraph("K4,4"))?;
    let (p, q) = if p.contains(&0) { (p, q) } else { (q, p) };
    let (a, b) = (p[0], q[0]);
    let (diag, direction) = general_diagram(&g, seed, max_tries)?;
    let mut sums: [Vec<LedgerEntry>; 5] = Default::default();
    let mut first = None;
    for e in g.graph().edges().filter(|e| !e.has(a) && !e.has(b)) {
        let (e1, e2) = if p.contains(&e.lo()) { (e.lo(), e.hi()) } else { (e.hi(), e.lo()) };
        let ps: Vec<Vertex> = p[1..].iter().copied().filter(|&v| v != e1).collect();
        let qs: Vec<Vertex> = q[1..].iter().copied().filter(|&v| v != e2).collect();
        let square = Cycle::new(vec![ps[0], qs[0], ps[1], qs[1]]);
        let abe = Cycle::new(vec![a, e2, e1, b]);
        let t = square.edges();
        let parts = [
            lk(&diag, &t, &[Edge::new(a, b)]),
            lk(&diag, &t, &[Edge::new(a, e2)]),
            lk(&diag, &t, &[Edge::new(b, e1)]),
            lk(&diag, &t, &[e]),
        ];
        let whole = lk(&diag, &t, &abe.edges());
        if whole != parts.iter().fold(0, |x, y| x ^ y) {
            return Err(FinderError::InternalParityFailure(format!("lk(T_e, ABe) is not additive at e = {e}")));
        }
        for (sum, value) in sums.iter_mut().zip([whole, parts[0], parts[1], parts[2], parts[3]]) {
            sum.push(LedgerEntry { edge: e, value });
        }
        if whole == 1 && first.is_none() {
            first = Some((abe, square));
        }
    }
    let [whole, ab, ae2, be1, ee] = sums;
    let ledgers = vec![
        ParityLedger::new("sum lk(T_e, ABe)", 1, whole),
        ParityLedger::new("sum lk(T_e, AB)", 0, ab),
        ParityLedger::new("sum lk(T_e, AE2)", 0, ae2),
        ParityLedger::new("sum lk(T_e, BE1)", 0, be1),
        ParityLedger::new("sum lk(T_e, e)", 1, ee),
    ];
    check_ledgers(&ledgers)?;
    let (cycle1, cycle2) = first.expect("odd sum has a nonzero term");
    Ok(Finding {
        report: LinkReport { cycle1, cycle2, lk_value: 1, method: Method::PlOrthogonal, oracle_confirmed: None },
        projection: Projection::Orthogonal { direction },
        ledgers,
    })
}

/// The closed spatial polygon traced by a cycle's routes.
pub fn cycle_polygon(emb: &PLEmbedding, c: &Cycle) -> SpatialPolyline {
    let vs = c.vertices();
    let mut pts = Vec::new();
    for i in 0..vs.len() {
        let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
        let r = emb.route_from(Edge::new(u, v), u);
        pts.extend_from_slice(&r[..r.len() - 1]);
    }
    SpatialPolyline::normalized(pts, true).expect("cycle of a valid embedding is a simple polygon")
}

fn max_abs_coordinate(polys: &[&SpatialPolyline]) -> i64 {
    polys
        .iter()
        .flat_map(|p| p.vertices())
        .flat_map(|x| x.coords())
        .map(|c| i64::try_from(c.abs().ceil().to_integer()).unwrap_or(i64::MAX / 4))
        .max()
        .unwrap_or(0)
}

/// Samples integer apexes from a cube of half-side `2M + 8` (`M` the
/// largest coordinate), doubling every 64 rejections, until one is in
/// general position to both polygons.
pub fn sample_apex(
    a: &SpatialPolyline,
    b: &SpatialPolyline,
    rng: &mut SplitMix64,
    max_tries: u64,
) -> Result<Point3, FinderError> {
    let mut bound = max_abs_coordinate(&[a, b]).saturating_mul(2).saturating_add(8).min(1 << 40);
    for tries in 1..=max_tries {
        let apex = Point3::from_ints(
            rng.range_i64(-bound, bound),
            rng.range_i64(-bound, bound),
            rng.range_i64(-bound, bound),
        );
        if apex_general_position(&apex, a, b) {
            return Ok(apex);
        }
        if tries % 64 == 0 && bound < (1 << 40) {
            bound *= 2;
        }
    }
    Err(FinderError::ApexSearchExhausted(max_tries))
}

/// Mod-2 linking number of two disjoint cycles of `emb`, by the cone
/// count from a sampled apex.
pub fn linking_of_cycles(
    emb: &PLEmbedding,
    c1: &Cycle,
    c2: &Cycle,
    rng: &mut SplitMix64,
    max_tries: u64,
) -> Result<u8, FinderError> {
    let (a, b) = (cycle_polygon(emb, c1), cycle_polygon(emb, c2));
    let apex = sample_apex(&a, &b, rng, max_tries)?;
    Ok(linking_mod2_cone(&a, &b, &apex)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCount {
    pub pairs: usize,
    pub count: usize,
    pub linked: Vec<(Cycle, Cycle)>,
}

/// Counts linked pairs among all disjoint cycle pairs of the given lengths.
/// Pair `i` samples its apex from `SplitMix64::derive(seed, i)`.
pub fn oracle_count_linked_pairs(
    emb: &PLEmbedding,
    len1: usize,
    len2: usize,
    seed: u64,
    max_tries: u64,
) -> Result<OracleCount, FinderError> {
    if let Some(v) = validate_embedding(emb).first() {
        return Err(FinderError::EmbeddingInvalid(v.to_string()));
    }
    let pairs = enumerate_disjoint_cycle_pairs(emb.graph(), len1, len2);
    let values = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (c1, c2))| linking_of_cycles(emb, c1, c2, &mut SplitMix64::derive(seed, i as u64), max_tries))
        .collect::<Result<Vec<u8>, _>>()?;
    let linked: Vec<(Cycle, Cycle)> =
        pairs.iter().zip(&values).filter(|(_, v)| **v == 1).map(|(p, _)| p.clone()).collect();
    Ok(OracleCount { pairs: pairs.len(), count: linked.len(), linked })
}

/// Re-checks a report's pair with the cone count and records the verdict.
pub fn confirm_report(emb: &PLEmbedding, report: &mut LinkReport, seed: u64, max_tries: u64) -> Result<bool, FinderError> {
    let value = linking_of_cycles(emb, &report.cycle1, &report.cycle2, &mut SplitMix64::new(seed), max_tries)?;
    let ok = value == report.lk_value;
    report.oracle_confirmed = Some(ok);
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ratio, Triangle3};
    use crate::graph::complete_bipartite;
    use crate::linking::triangles_linked;

    fn p3(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    fn moment(n: i64) -> Vec<Point3> {
        (1..=n).map(|i| p3(i, i * i, i * i * i)).collect()
    }

    fn triangle(points: &[Point3], c: &Cycle) -> Triangle3 {
        let v = c.vertices();
        Triangle3::new(points[v[0]].clone(), points[v[1]].clone(), points[v[2]].clone()).unwrap()
    }

    /// Direct count over all 10 splits with the hull-crossing definition.
    fn hull_linked_count(points: &[Point3]) -> usize {
        enumerate_disjoint_cycle_pairs(&complete_graph(6), 3, 3)
            .iter()
            .filter(|(a, b)| triangles_linked(&triangle(points, a), &triangle(points, b)).unwrap())
            .count()
    }

    #[test]
    fn moment_curve_linear() {
        let pts = moment(6);
        let f = find_linked_triangles_linear(&pts, 0).unwrap();
        assert_eq!(f.report.method, Method::LinearCentral);
        assert!(f.ledgers.iter().all(ParityLedger::holds));
        assert!(triangles_linked(&triangle(&pts, &f.report.cycle1), &triangle(&pts, &f.report.cycle2)).unwrap());
        let emb = GraphMap::straight(complete_graph(6), pts.clone()).unwrap();
        let oracle = oracle_count_linked_pairs(&emb, 3, 3, 0, 10_000).unwrap();
        assert_eq!(oracle.pairs, 10);
        assert_eq!(oracle.count % 2, 1);
        assert_eq!(oracle.count, hull_linked_count(&pts));
        assert_eq!(oracle.count, 1);
        assert!(oracle.linked.contains(&(f.report.cycle1.clone(), f.report.cycle2.clone()))
            || oracle.linked.contains(&(f.report.cycle2.clone(), f.report.cycle1.clone())));
    }

    #[test]
    fn linked_pair_points_linear() {
        let pts = vec![p3(1, 1, 0), p3(-1, 2, 0), p3(-1, -2, 0), p3(0, 0, 2), p3(0, 0, -2), p3(5, 0, 1)];
        let f = find_linked_triangles_linear(&pts, 0).unwrap();
        assert!(triangles_linked(&triangle(&pts, &f.report.cycle1), &triangle(&pts, &f.report.cycle2)).unwrap());
    }

    #[test]
    fn tied_maximum_uses_sampled_functional() {
        let pts = vec![p3(5, 0, 0), p3(5, 1, 3), p3(0, 4, 1), p3(1, -3, 2), p3(2, 2, -4), p3(-3, 1, 1)];
        assert!(gp_points3(&pts));
        let f = find_linked_triangles_linear(&pts, 7).unwrap();
        assert!(matches!(f.projection, Projection::Central { normal, .. } if normal != Direction3::new(1, 0, 0).unwrap()));
        assert!(triangles_linked(&triangle(&pts, &f.report.cycle1), &triangle(&pts, &f.report.cycle2)).unwrap());
    }

    #[test]
    fn octahedron_rejected() {
        let pts = vec![p3(1, 0, 0), p3(-1, 0, 0), p3(0, 1, 0), p3(0, -1, 0), p3(0, 0, 1), p3(0, 0, -1)];
        assert_eq!(find_linked_triangles_linear(&pts, 0), Err(FinderError::GeneralPositionViolation));
    }

    #[test]
    fn k6_straight_agrees_with_linear() {
        let pts = moment(6);
        let emb = GraphMap::straight(complete_graph(6), pts.clone()).unwrap();
        let mut f = find_linked_cycles_k6(&emb, 0, 10_000).unwrap();
        assert!(f.ledgers.iter().all(ParityLedger::holds));
        assert!(confirm_report(&emb, &mut f.report, 1, 10_000).unwrap());
        assert_eq!(f.report.oracle_confirmed, Some(true));
        let linear = find_linked_triangles_linear(&pts, 0).unwrap();
        // The moment curve has a single linked pair, so both finders return it.
        let key = |r: &LinkReport| {
            let mut v = [r.cycle1.clone(), r.cycle2.clone()];
            v.sort();
            v
        };
        assert_eq!(key(&f.report), key(&linear.report));
    }

    #[test]
    fn k6_subdivided() {
        let pts = moment(6);
        let mut emb = GraphMap::straight(complete_graph(6), pts).unwrap();
        for e in complete_graph(6).edges() {
            let (a, b) = (emb.position(e.lo()).clone(), emb.position(e.hi()).clone());
            let mid = crate::geometry::lerp3(&a, &b, &ratio(1, 3));
            emb = emb.subdivide(e, &[mid]).unwrap();
        }
        assert_eq!(emb.graph().vertex_count(), 21);
        let mut f = find_linked_cycles_k6(&emb, 3, 10_000).unwrap();
        let simple = emb.smooth_all();
        assert!(confirm_report(&simple, &mut f.report, 0, 10_000).unwrap());
    }

    #[test]
    fn k6_invalid_embedding() {
        let mut pts = moment(6);
        pts[5] = p3(2, 4, 8);
        pts[4] = p3(1, 1, 1);
        let emb = GraphMap::straight(complete_graph(6), pts).unwrap();
        assert!(matches!(find_linked_cycles_k6(&emb, 0, 100), Err(FinderError::EmbeddingInvalid(_))));
    }

    fn k44_points() -> Vec<Point3> {
        let mut rng = SplitMix64::new(11);
        loop {
            let pts: Vec<Point3> =
                (0..8).map(|_| p3(rng.range_i64(-50, 50), rng.range_i64(-50, 50), rng.range_i64(-50, 50))).collect();
            if gp_points3(&pts) {
                return pts;
            }
        }
    }

    #[test]
    fn k44_straight() {
        let emb = GraphMap::straight(complete_bipartite(4, 4), k44_points()).unwrap();
        let mut f = find_linked_cycles_k44(&emb, 0, 10_000).unwrap();
        assert!(f.ledgers.iter().all(ParityLedger::holds));
        assert!(confirm_report(&emb, &mut f.report, 0, 10_000).unwrap());
        let other = find_linked_cycles_k44(&emb, 99, 10_000).unwrap();
        assert!(other.ledgers.iter().all(ParityLedger::holds));
        let o1 = oracle_count_linked_pairs(&emb, 4, 4, 0, 10_000).unwrap();
        let o2 = oracle_count_linked_pairs(&emb, 4, 4, 5, 10_000).unwrap();
        assert_eq!(o1.pairs, 18);
        assert_eq!(o1, o2);
    }

    #[test]
    fn k44_coplanar_points_invalid() {
        let mut pts = k44_points();
        // Edges 0-4 and 1-5 become crossing diagonals of a square.
        pts[0] = p3(0, 0, 0);
        pts[4] = p3(4, 4, 0);
        pts[1] = p3(4, 0, 0);
        pts[5] = p3(0, 4, 0);
        let emb = GraphMap::straight(complete_bipartite(4, 4), pts).unwrap();
        assert!(matches!(find_linked_cycles_k44(&emb, 0, 100), Err(FinderError::EmbeddingInvalid(_))));
    }

    #[test]
    fn wrong_graph_rejected() {
        let emb = GraphMap::straight(complete_graph(5), moment(5)).unwrap();
        assert_eq!(find_linked_cycles_k6(&emb, 0, 10), Err(FinderError::WrongGraph("K6")));
        assert_eq!(find_linked_cycles_k44(&emb, 0, 10), Err(FinderError::WrongGraph("K4,4")));
    }

    #[test]
    fn finding_serializes() {
        let f = find_linked_triangles_linear(&moment(6), 0).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"method\":\"linear-central\""));
        assert!(json.contains("\"kind\":\"central\""));
    }
}
