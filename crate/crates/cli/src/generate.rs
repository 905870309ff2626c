//! Seeded random instances.
//!
//! Every generator draws integer coordinates with `SplitMix64::range_i64`
//! in a fixed order and rejects samples that fail the relevant validator,
//! so output depends only on the kind, seed and bound.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use cgs_core::embedding::{validate_drawing, validate_embedding, GraphMap, PLEmbedding, PlanarDrawing};
use cgs_core::geometry::{gp_points2, gp_points3, lerp3, ratio, Point2, Point3};
use cgs_core::graph::{complete_bipartite, complete_graph, Edge, Graph, Vertex};
use cgs_core::rng::SplitMix64;
use thiserror::Error;

use crate::instance::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Coordinates are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub max_tries: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, bound: 1000, max_tries: 10_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// Six points in general position.
    K6Points,
    /// Straight-line `K4,4` on eight points in general position.
    K44Linear,
    /// `K6` near the moment curve with every edge bent into 2 to 4 sides.
    K6PlSubdivided,
    /// Straight-line `K5` drawing in general position.
    K5Drawing,
    /// Straight-line `K3,3` drawing in general position.
    K33Drawing,
    /// Two disjoint closed polygons (3 to 5 sides each), as an embedding
    /// of two disjoint cycles.
    PolygonPair,
}

impl GenKind {
    pub const ALL: [GenKind; 6] = [
        GenKind::K6Points,
        GenKind::K44Linear,
        GenKind::K6PlSubdivided,
        GenKind::K5Drawing,
        GenKind::K33Drawing,
        GenKind::PolygonPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::K6Points => "k6-points",
            GenKind::K44Linear => "k44-linear",
            GenKind::K6PlSubdivided => "k6-pl-subdivided",
            GenKind::K5Drawing => "k5-drawing",
            GenKind::K33Drawing => "k33-drawing",
            GenKind::PolygonPair => "polygon-pair",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GenKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = GenKind::ALL.iter().map(|k| k.name()).collect();
            format!("unknown kind {s:?} (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("no valid {kind} instance after {tries} tries")]
pub struct SearchExhausted {
    pub kind: String,
    pub tries: u64,
}

fn exhausted(kind: &str, tries: u64) -> SearchExhausted {
    SearchExhausted { kind: kind.to_string(), tries }
}

fn int3(rng: &mut SplitMix64, b: i64) -> Point3 {
    let (x, y, z) = (rng.range_i64(-b, b), rng.range_i64(-b, b), rng.range_i64(-b, b));
    Point3::from_ints(x, y, z)
}

fn int2(rng: &mut SplitMix64, b: i64) -> Point2 {
    let (x, y) = (rng.range_i64(-b, b), rng.range_i64(-b, b));
    Point2::from_ints(x, y)
}

/// `n` integer points in `[-b, b]^3`, no four coplanar.
pub fn gp_points3_sample(rng: &mut SplitMix64, n: usize, b: i64, max_tries: u64) -> Result<Vec<Point3>, SearchExhausted> {
    for _ in 0..max_tries {
        let pts: Vec<Point3> = (0..n).map(|_| int3(rng, b)).collect();
        if gp_points3(&pts) {
            return Ok(pts);
        }
    }
    Err(exhausted("points3", max_tries))
}

/// `n` integer points in `[-b, b]^2`, no three collinear.
pub fn gp_points2_sample(rng: &mut SplitMix64, n: usize, b: i64, max_tries: u64) -> Result<Vec<Point2>, SearchExhausted> {
    for _ in 0..max_tries {
        let pts: Vec<Point2> = (0..n).map(|_| int2(rng, b)).collect();
        if gp_points2(&pts) {
            return Ok(pts);
        }
    }
    Err(exhausted("points2", max_tries))
}

/// Straight-line drawing of `g` in general position.
pub fn straight_drawing(rng: &mut SplitMix64, g: &Graph, b: i64, max_tries: u64) -> Result<PlanarDrawing, SearchExhausted> {
    for _ in 0..max_tries {
        let pts = gp_points2_sample(rng, g.vertex_count(), b, max_tries)?;
        let d = GraphMap::straight(g.clone(), pts).expect("one position per vertex");
        if validate_drawing(&d).is_empty() {
            return Ok(d);
        }
    }
    Err(exhausted("drawing", max_tries))
}

fn random_bends(rng: &mut SplitMix64, edges: &[Edge], max_bends: u64, b: i64) -> BTreeMap<Edge, Vec<Point2>> {
    let mut out = BTreeMap::new();
    for &e in edges {
        let k = rng.below(max_bends + 1);
        if k > 0 {
            out.insert(e, (0..k).map(|_| int2(rng, b)).collect());
        }
    }
    out
}

/// Drawing of `g` whose edges bend at up to two random points each.
pub fn polyline_drawing(rng: &mut SplitMix64, g: &Graph, b: i64, max_tries: u64) -> Result<PlanarDrawing, SearchExhausted> {
    let edges: Vec<Edge> = g.edges().collect();
    for _ in 0..max_tries {
        let pts = gp_points2_sample(rng, g.vertex_count(), b, max_tries)?;
        let bends = random_bends(rng, &edges, 2, b);
        let d = GraphMap::with_interior(g.clone(), pts, bends).expect("bends on existing edges");
        if validate_drawing(&d).is_empty() {
            return Ok(d);
        }
    }
    Err(exhausted("polyline drawing", max_tries))
}

/// A drawing equal to `d` except on the star of `v`: `v` moves to a random
/// point and each of its edges gets up to one random bend.
pub fn move_star(
    rng: &mut SplitMix64,
    d: &PlanarDrawing,
    v: Vertex,
    b: i64,
    max_tries: u64,
) -> Result<PlanarDrawing, SearchExhausted> {
    let star: Vec<Edge> = d.graph().edges().filter(|e| e.has(v)).collect();
    for _ in 0..max_tries {
        let mut positions = d.positions().to_vec();
        positions[v] = int2(rng, b);
        let mut interior: BTreeMap<Edge, Vec<Point2>> =
            d.graph().edges().filter(|e| !e.has(v)).map(|e| (e, d.interior(e).to_vec())).collect();
        interior.extend(random_bends(rng, &star, 1, b));
        let moved = GraphMap::with_interior(d.graph().clone(), positions, interior).expect("same graph");
        if validate_drawing(&moved).is_empty() {
            return Ok(moved);
        }
    }
    Err(exhausted("star move", max_tries))
}

/// Two disjoint closed polylines (3 to 6 vertices each) in the plane, as a
/// drawing of two disjoint cycles on vertices `0..n1` and `n1..n1+n2`.
pub fn closed_pair_drawing(rng: &mut SplitMix64, b: i64, max_tries: u64) -> Result<PlanarDrawing, SearchExhausted> {
    for _ in 0..max_tries {
        let n1 = 3 + rng.below(4) as usize;
        let n2 = 3 + rng.below(4) as usize;
        let g = two_cycles(n1, n2);
        let pts: Vec<Point2> = (0..n1 + n2).map(|_| int2(rng, b)).collect();
        let d = GraphMap::straight(g, pts).expect("one position per vertex");
        if validate_drawing(&d).is_empty() {
            return Ok(d);
        }
    }
    Err(exhausted("closed pair", max_tries))
}

/// Disjoint cycles on `0..n1` and `n1..n1+n2`.
pub fn two_cycles(n1: usize, n2: usize) -> Graph {
    let edges = (0..n1).map(|i| (i, (i + 1) % n1)).chain((0..n2).map(|i| (n1 + i, n1 + (i + 1) % n2)));
    Graph::new(n1 + n2, edges).expect("two simple cycles")
}

/// Two disjoint spatial polygons with vertices in general position.
pub fn polygon_pair(rng: &mut SplitMix64, b: i64, max_tries: u64) -> Result<PLEmbedding, SearchExhausted> {
    for _ in 0..max_tries {
        let n1 = 3 + rng.below(3) as usize;
        let n2 = 3 + rng.below(3) as usize;
        let pts: Vec<Point3> = (0..n1 + n2).map(|_| int3(rng, b)).collect();
        if !gp_points3(&pts) {
            continue;
        }
        let emb = GraphMap::straight(two_cycles(n1, n2), pts).expect("one position per vertex");
        if validate_embedding(&emb).is_empty() {
            return Ok(emb);
        }
    }
    Err(exhausted("polygon pair", max_tries))
}

/// `K6` with vertices jittered off the curve `(20i, 4i², i³)` and every edge
/// split into 2 to 4 sides at jittered interior points. The bound is not
/// used; the shape is fixed up to jitter.
pub fn subdivided_k6(rng: &mut SplitMix64, max_tries: u64) -> Result<PLEmbedding, SearchExhausted> {
    let g = complete_graph(6);
    for _ in 0..max_tries {
        let base: Vec<Point3> = (1..=6i64)
            .map(|i| {
                let j = int3(rng, 3);
                &Point3::from_ints(20 * i, 4 * i * i, i * i * i) + &j
            })
            .collect();
        if !gp_points3(&base) {
            continue;
        }
        let mut interior = BTreeMap::new();
        for e in g.edges() {
            let k = 1 + rng.below(3) as i64;
            let (a, c) = (&base[e.lo()], &base[e.hi()]);
            let bends: Vec<Point3> = (1..=k).map(|j| &lerp3(a, c, &ratio(j, k + 1)) + &int3(rng, 2)).collect();
            interior.insert(e, bends);
        }
        let emb = GraphMap::with_interior(g.clone(), base, interior).expect("bends on existing edges");
        if validate_embedding(&emb).is_empty() {
            return Ok(emb);
        }
    }
    Err(exhausted("k6-pl-subdivided", max_tries))
}

/// One instance of `kind`, determined by `cfg`.
pub fn generate(kind: GenKind, cfg: &GenConfig) -> Result<Instance, SearchExhausted> {
    let mut rng = SplitMix64::new(cfg.seed);
    let (b, t) = (cfg.bound, cfg.max_tries);
    let out = match kind {
        GenKind::K6Points => Instance::Points3(gp_points3_sample(&mut rng, 6, b, t)?),
        GenKind::K44Linear => {
            let pts = gp_points3_sample(&mut rng, 8, b, t)?;
            Instance::Embedding(GraphMap::straight(complete_bipartite(4, 4), pts).expect("eight positions"))
        }
        GenKind::K6PlSubdivided => Instance::Embedding(subdivided_k6(&mut rng, t)?),
        GenKind::K5Drawing => Instance::Drawing(straight_drawing(&mut rng, &complete_graph(5), b, t)?),
        GenKind::K33Drawing => Instance::Drawing(straight_drawing(&mut rng, &complete_bipartite(3, 3), b, t)?),
        GenKind::PolygonPair => Instance::Embedding(polygon_pair(&mut rng, b, t)?),
    };
    Ok(out)
}
