//! JSON instance files.
//!
//! ```json
//! {"kind": "points3", "points": [["1", "1", "1"], ["2", "4", "8"]]}
//! {"kind": "embedding",
//!  "graph": {"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]},
//!  "positions": [["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"]],
//!  "routes": [{"edge": [0, 1], "points": [["1/2", "-1", "3"]]}]}
//! ```
//!
//! Coordinates are rational strings (`"p"` or `"p/q"` with `q > 0`); plain
//! JSON integers are accepted too. `graph` defaults to the complete graph on
//! the positions, and edges without a route are straight. Route points are
//! the bend points only, listed from the smaller vertex to the larger.

use std::collections::BTreeMap;

use cgs_core::embedding::{GraphMap, PLEmbedding, PlanarDrawing};
use cgs_core::geometry::{format_rational, parse_rational, Point2, Point3, Rational};
use cgs_core::graph::{complete_graph, Edge, Graph};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Points3(Vec<Point3>),
    Points2(Vec<Point2>),
    Embedding(PLEmbedding),
    Drawing(PlanarDrawing),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Points3(_) => "points3",
            Instance::Points2(_) => "points2",
            Instance::Embedding(_) => "embedding",
            Instance::Drawing(_) => "drawing",
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

fn field(path: &str, message: impl Into<String>) -> InstanceError {
    InstanceError::Field { path: path.to_string(), message: message.into() }
}

fn get<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value, InstanceError> {
    obj.get(key).ok_or_else(|| field(path, format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InstanceError> {
    v.as_array().ok_or_else(|| field(path, "expected an array"))
}

fn index(v: &Value, path: &str) -> Result<usize, InstanceError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| field(path, "expected a non-negative integer"))
}

fn rational(v: &Value, path: &str) -> Result<Rational, InstanceError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(field(path, "expected a rational string such as \"3/4\" or an integer")),
    };
    parse_rational(&text).map_err(|e| field(path, e.to_string()))
}

fn coords(v: &Value, dim: usize, path: &str) -> Result<Vec<Rational>, InstanceError> {
    let a = array(v, path)?;
    if a.len() != dim {
        return Err(field(path, format!("expected {dim} coordinates, got {}", a.len())));
    }
    a.iter().enumerate().map(|(i, c)| rational(c, &format!("{path}[{i}]"))).collect()
}

trait FilePoint: Sized {
    const DIM: usize;
    fn from_coords(c: Vec<Rational>) -> Self;
    fn to_json(&self) -> Value;
}

impl FilePoint for Point3 {
    const DIM: usize = 3;
    fn from_coords(c: Vec<Rational>) -> Self {
        let [x, y, z]: [Rational; 3] = c.try_into().expect("three coordinates");
        Point3::new(x, y, z)
    }
    fn to_json(&self) -> Value {
        json!(self.coords().map(format_rational))
    }
}

impl FilePoint for Point2 {
    const DIM: usize = 2;
    fn from_coords(c: Vec<Rational>) -> Self {
        let [x, y]: [Rational; 2] = c.try_into().expect("two coordinates");
        Point2::new(x, y)
    }
    fn to_json(&self) -> Value {
        json!(self.coords().map(format_rational))
    }
}

fn point_list<P: FilePoint>(v: &Value, path: &str) -> Result<Vec<P>, InstanceError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| coords(p, P::DIM, &format!("{path}[{i}]")).map(P::from_coords))
        .collect()
}

fn parse_map<P: FilePoint + cgs_core::embedding::Coord>(root: &Value) -> Result<GraphMap<P>, InstanceError> {
    let positions: Vec<P> = point_list(get(root, "positions", "$")?, "positions")?;
    let graph = match root.get("graph") {
        None | Some(Value::Null) => complete_graph(positions.len()),
        Some(g) => {
            let n = index(get(g, "vertices", "graph")?, "graph.vertices")?;
            let mut pairs = Vec::new();
            for (i, e) in array(get(g, "edges", "graph")?, "graph.edges")?.iter().enumerate() {
                let path = format!("graph.edges[{i}]");
                let ends = array(e, &path)?;
                if ends.len() != 2 {
                    return Err(field(&path, "an edge has exactly two vertices"));
                }
                pairs.push((index(&ends[0], &format!("{path}[0]"))?, index(&ends[1], &format!("{path}[1]"))?));
            }
            Graph::new(n, pairs).map_err(|e| field("graph", e.to_string()))?
        }
    };
    let mut interior = BTreeMap::new();
    if let Some(routes) = root.get("routes").filter(|r| !r.is_null()) {
        for (i, r) in array(routes, "routes")?.iter().enumerate() {
            let path = format!("routes[{i}]");
            let ends = array(get(r, "edge", &path)?, &format!("{path}.edge"))?;
            if ends.len() != 2 {
                return Err(field(&format!("{path}.edge"), "an edge has exactly two vertices"));
            }
            let (u, v) = (index(&ends[0], &path)?, index(&ends[1], &path)?);
            if u == v || !graph.has_edge(u, v) {
                return Err(field(&format!("{path}.edge"), format!("[{u}, {v}] is not an edge of the graph")));
            }
            let mut pts: Vec<P> = point_list(get(r, "points", &path)?, &format!("{path}.points"))?;
            if u > v {
                pts.reverse();
            }
            if interior.insert(Edge::new(u, v), pts).is_some() {
                return Err(field(&format!("{path}.edge"), "duplicate route"));
            }
        }
    }
    GraphMap::with_interior(graph, positions, interior).map_err(|e| field("positions", e.to_string()))
}

/// Parses an instance file.
pub fn parse_instance(bytes: &[u8]) -> Result<Instance, InstanceError> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if !root.is_object() {
        return Err(field("$", "expected an object"));
    }
    let kind = get(&root, "kind", "$")?.as_str().ok_or_else(|| field("kind", "expected a string"))?;
    match kind {
        "points3" => Ok(Instance::Points3(point_list(get(&root, "points", "$")?, "points")?)),
        "points2" => Ok(Instance::Points2(point_list(get(&root, "points", "$")?, "points")?)),
        "embedding" => Ok(Instance::Embedding(parse_map(&root)?)),
        "drawing" => Ok(Instance::Drawing(parse_map(&root)?)),
        other => Err(field("kind", format!("unknown kind {other:?} (points3, points2, embedding, drawing)"))),
    }
}

fn emit_map<P: FilePoint + cgs_core::embedding::Coord>(kind: &str, m: &GraphMap<P>) -> Value {
    let edges: Vec<Value> = m.graph().edges().map(|e| json!([e.lo(), e.hi()])).collect();
    let routes: Vec<Value> = m
        .graph()
        .edges()
        .filter(|&e| !m.interior(e).is_empty())
        .map(|e| json!({"edge": [e.lo(), e.hi()], "points": m.interior(e).iter().map(P::to_json).collect::<Vec<_>>()}))
        .collect();
    let mut obj = json!({
        "kind": kind,
        "graph": {"vertices": m.graph().vertex_count(), "edges": edges},
        "positions": m.positions().iter().map(P::to_json).collect::<Vec<_>>(),
    });
    if !routes.is_empty() {
        obj["routes"] = Value::Array(routes);
    }
    obj
}

/// Instance as a JSON value.
pub fn instance_json(x: &Instance) -> Value {
    match x {
        Instance::Points3(p) => json!({"kind": "points3", "points": p.iter().map(Point3::to_json).collect::<Vec<_>>()}),
        Instance::Points2(p) => json!({"kind": "points2", "points": p.iter().map(Point2::to_json).collect::<Vec<_>>()}),
        Instance::Embedding(m) => emit_map("embedding", m),
        Instance::Drawing(m) => emit_map("drawing", m),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_instance(x: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&instance_json(x)).expect("values serialize");
    s.push('\n');
    s
}

pub fn point2_json(p: &Point2) -> Value {
    p.to_json()
}

pub fn point3_json(p: &Point3) -> Value {
    p.to_json()
}
