//! The van Kampen invariant of planar maps.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::embedding::{extract_crossings, DrawingNotGeneral, PlanarDrawing};
use crate::geometry::{gp_points2, seg_intersect2, Point2, SegIntersection2, Segment2};
use crate::graph::{Edge, Vertex};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("points are not in general position (three of them are collinear)")]
    GeneralPositionViolation,
    #[error(transparent)]
    DrawingNotGeneral(#[from] DrawingNotGeneral),
    #[error("drawings are not comparable: {0}")]
    DrawingsNotComparable(String),
}

/// Parity of the number of crossing pairs among segments with disjoint
/// endpoints, over the complete graph on `points`.
pub fn van_kampen_points(points: &[Point2]) -> Result<u8, InvariantError> {
    if !gp_points2(points) {
        return Err(InvariantError::GeneralPositionViolation);
    }
    let n = points.len();
    let seg = |i: usize, j: usize| Segment2 { p: points[i].clone(), q: points[j].clone() };
    let mut count = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            for c in a + 1..n {
                for d in c + 1..n {
                    if c == b || d == b {
                        continue;
                    }
                    if let SegIntersection2::Point(_) = seg_intersect2(&seg(a, b), &seg(c, d)) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok((count % 2) as u8)
}

/// Parity of the number of crossings between routes of disjoint edges.
pub fn van_kampen_drawing(d: &PlanarDrawing) -> Result<u8, InvariantError> {
    let crossings = extract_crossings(d)?;
    Ok((crossings.iter().filter(|c| !c.adjacent).count() % 2) as u8)
}

/// The single vertex whose star contains every difference between `d1`
/// and `d2`, or `None` when the drawings are identical.
fn moved_vertex(d1: &PlanarDrawing, d2: &PlanarDrawing) -> Result<Option<Vertex>, InvariantError> {
    if d1.graph() != d2.graph() {
        return Err(InvariantError::DrawingsNotComparable("different graphs".into()));
    }
    let moved: Vec<Vertex> = d1.graph().vertices().filter(|&v| d1.position(v) != d2.position(v)).collect();
    let changed: Vec<Edge> = d1.graph().edges().filter(|&e| d1.route(e) != d2.route(e)).collect();
    if moved.len() > 1 {
        return Err(InvariantError::DrawingsNotComparable(format!("{} vertices moved", moved.len())));
    }
    let mut candidates: BTreeSet<Vertex> = match moved.first() {
        Some(&v) => [v].into(),
        None => match changed.first() {
            Some(e) => e.ends().into(),
            None => return Ok(None),
        },
    };
    for e in &changed {
        candidates.retain(|&v| e.has(v));
    }
    candidates
        .into_iter()
        .next()
        .map(Some)
        .ok_or_else(|| InvariantError::DrawingsNotComparable("changes span more than one vertex star".into()))
}

/// Whether two drawings of one graph that agree outside the star of a
/// single vertex have the same van Kampen invariant.
pub fn vk_invariance_probe(d1: &PlanarDrawing, d2: &PlanarDrawing) -> Result<bool, InvariantError> {
    moved_vertex(d1, d2)?;
    Ok(van_kampen_drawing(d1)? == van_kampen_drawing(d2)?)
}
