//! Navigation graphs over a floor plan and the path queries agents use.
//!
//! Two builders are provided: the visibility method, which keeps every
//! point pair whose connector lies inside the navigable face, and the pruned
//! Delaunay method, which triangulates the significant points and drops
//! every edge that crosses a wall or an obstacle.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    classify_segment_against_face, delaunay_triangulate, point_in_face, segment_intersection,
    FaceClass, FaceWithHoles, GeomError, Point2, Polygon, Segment, SegmentIntersection, GEOM_TOL,
    MIN_SEGMENT_LEN,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NavError {
    #[error("navigation point {0} lies outside the navigable face")]
    PointOutsideFace(usize),
    #[error("no path from vertex {src} to vertex {dst}")]
    NoPath { src: usize, dst: usize },
    #[error("nearest vertex is {distance:.3} m away, beyond the snap radius")]
    NoVertexInRange { distance: f64 },
    #[error("vertex id {0} is out of range")]
    BadVertexId(usize),
    #[error("vertex ids must be contiguous from 0; found {found} at position {index}")]
    NonContiguousIds { index: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexTag {
    Desk,
    Door,
    Corridor,
    RoomCenter,
    Access,
    Core,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NavVertex {
    pub id: usize,
    pub position: Point2,
    pub tag: VertexTag,
}

impl NavVertex {
    pub fn new(id: usize, position: Point2, tag: VertexTag) -> Self {
        NavVertex { id, position, tag }
    }
}

/// Weighted undirected graph; edge weights are Euclidean lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct NavGraph {
    vertices: Vec<NavVertex>,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl NavGraph {
    /// Builds a graph from vertex pairs. Pairs are normalized, deduplicated
    /// and weighted by distance; self-loops and zero-length pairs are dropped.
    pub fn from_pairs(
        vertices: Vec<NavVertex>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, NavError> {
        for (index, v) in vertices.iter().enumerate() {
            if v.id != index {
                return Err(NavError::NonContiguousIds { index, found: v.id });
            }
        }
        let n = vertices.len();
        let mut keyed: Vec<(usize, usize)> = Vec::new();
        for (a, b) in pairs {
            for id in [a, b] {
                if id >= n {
                    return Err(NavError::BadVertexId(id));
                }
            }
            if a != b {
                keyed.push((a.min(b), a.max(b)));
            }
        }
        keyed.sort_unstable();
        keyed.dedup();
        let mut edges = Vec::with_capacity(keyed.len());
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in keyed {
            let w = vertices[a].position.distance(vertices[b].position);
            if w <= MIN_SEGMENT_LEN {
                continue;
            }
            edges.push((a, b, w));
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(v, _)| v);
        }
        Ok(NavGraph {
            vertices,
            edges,
            adjacency,
        })
    }

    pub fn vertices(&self) -> &[NavVertex] {
        &self.vertices
    }

    /// Edges as `(a, b, weight)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, id: usize) -> &[(usize, f64)] {
        &self.adjacency[id]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, id: usize) -> Point2 {
        self.vertices[id].position
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency
            .get(a)
            .is_some_and(|l| l.binary_search_by_key(&b, |&(v, _)| v).is_ok())
    }
}

fn check_ids(points: &[NavVertex]) -> Result<(), NavError> {
    for (index, v) in points.iter().enumerate() {
        if v.id != index {
            return Err(NavError::NonContiguousIds { index, found: v.id });
        }
    }
    Ok(())
}

/// Visibility graph: a pair is joined when it is farther apart than
/// `tolerance` and its connector classifies as [`FaceClass::Valid`].
///
/// Pairs are evaluated in parallel; the edge set does not depend on the
/// number of worker threads.
pub fn build_visibility_graph(
    face: &FaceWithHoles,
    points: &[NavVertex],
    tolerance: f64,
) -> Result<NavGraph, NavError> {
    check_ids(points)?;
    for v in points {
        if !point_in_face(v.position, face).is_walkable() {
            return Err(NavError::PointOutsideFace(v.id));
        }
    }
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let (a, b) = (points[i].position, points[j].position);
            if a.distance(b) <= tolerance {
                return false;
            }
            match Segment::new(a, b) {
                Ok(s) => classify_segment_against_face(&s, face) == FaceClass::Valid,
                Err(_) => false,
            }
        })
        .collect();
    NavGraph::from_pairs(points.to_vec(), pairs)
}

/// Delaunay edges of `points` minus those that cross a barrier (properly or
/// collinearly) or an obstacle (proper crossing of an obstacle edge, or a
/// midpoint strictly inside the obstacle).
pub fn build_pruned_delaunay_graph(
    points: &[NavVertex],
    barriers: &[Segment],
    obstacles: &[Polygon],
) -> Result<NavGraph, NavError> {
    check_ids(points)?;
    let positions: Vec<Point2> = points.iter().map(|v| v.position).collect();
    let tris = delaunay_triangulate(&positions)?;
    let mut pairs: Vec<(usize, usize)> = tris
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let kept: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(a, b)| {
            let Ok(seg) = Segment::new(positions[a], positions[b]) else {
                return false;
            };
            !crosses_barrier(&seg, barriers) && !crosses_obstacle(&seg, obstacles)
        })
        .collect();
    NavGraph::from_pairs(points.to_vec(), kept)
}

/// Copy of `graph` without edges that cross a barrier or an obstacle, by the
/// same rules as [`build_pruned_delaunay_graph`].
pub fn prune_edges(
    graph: &NavGraph,
    barriers: &[Segment],
    obstacles: &[Polygon],
) -> Result<NavGraph, NavError> {
    let kept: Vec<(usize, usize)> = graph
        .edges()
        .par_iter()
        .filter(|&&(a, b, _)| {
            let Ok(seg) = Segment::new(graph.position(a), graph.position(b)) else {
                return false;
            };
            !crosses_barrier(&seg, barriers) && !crosses_obstacle(&seg, obstacles)
        })
        .map(|&(a, b, _)| (a, b))
        .collect();
    NavGraph::from_pairs(graph.vertices().to_vec(), kept)
}

/// Copy of `graph` keeping only edges that classify as valid against `face`.
pub fn retain_valid_edges(graph: &NavGraph, face: &FaceWithHoles) -> Result<NavGraph, NavError> {
    let kept: Vec<(usize, usize)> = graph
        .edges()
        .par_iter()
        .filter(|&&(a, b, _)| {
            Segment::new(graph.position(a), graph.position(b))
                .is_ok_and(|s| classify_segment_against_face(&s, face) == FaceClass::Valid)
        })
        .map(|&(a, b, _)| (a, b))
        .collect();
    NavGraph::from_pairs(graph.vertices().to_vec(), kept)
}

fn crosses_barrier(seg: &Segment, barriers: &[Segment]) -> bool {
    barriers
        .iter()
        .any(|w| segment_intersection(seg, w).is_crossing())
}

fn crosses_obstacle(seg: &Segment, obstacles: &[Polygon]) -> bool {
    let mid = seg.midpoint();
    obstacles.iter().any(|ob| {
        let crossing = ob.edges().any(|(a, b)| {
            Segment::new(a, b).is_ok_and(|e| {
                matches!(
                    segment_intersection(seg, &e),
                    SegmentIntersection::Proper(_)
                )
            })
        });
        crossing || (ob.contains_interior(mid) && ob.distance_to_boundary(mid) > GEOM_TOL)
    })
}

/// True when the straight line from `a` to `b` crosses a barrier. Touching a
/// barrier's endpoint does not count.
pub fn has_barrier_between(a: Point2, b: Point2, barriers: &[Segment]) -> bool {
    match Segment::new(a, b) {
        Ok(s) => crosses_barrier(&s, barriers),
        Err(_) => false,
    }
}

/// Polyline with arc-length parametrization.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    waypoints: Vec<Point2>,
    vertex_ids: Vec<usize>,
    length: f64,
}

impl Path {
    /// Builds a path; consecutive duplicate waypoints are collapsed.
    pub fn new(points: Vec<Point2>) -> Self {
        Self::with_ids(points.into_iter().map(|p| (p, usize::MAX)).collect())
    }

    fn with_ids(points: Vec<(Point2, usize)>) -> Self {
        let mut waypoints: Vec<Point2> = Vec::with_capacity(points.len());
        let mut vertex_ids = Vec::with_capacity(points.len());
        let mut length = 0.0;
        for (p, id) in points {
            if let Some(&last) = waypoints.last() {
                let d = last.distance(p);
                if d == 0.0 {
                    continue;
                }
                length += d;
            }
            waypoints.push(p);
            vertex_ids.push(id);
        }
        Path {
            waypoints,
            vertex_ids,
            length,
        }
    }

    pub fn single(p: Point2) -> Self {
        Path::new(vec![p])
    }

    pub fn waypoints(&self) -> &[Point2] {
        &self.waypoints
    }

    /// Graph vertex ids along the path, when it came from a graph search.
    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn start(&self) -> Point2 {
        self.waypoints[0]
    }

    pub fn end(&self) -> Point2 {
        *self.waypoints.last().unwrap()
    }
}

/// Point at arc length `d` from the start, clamped to the path's end.
pub fn point_at_distance(path: &Path, d: f64) -> Point2 {
    let w = &path.waypoints;
    if d <= 0.0 {
        return w[0];
    }
    if d >= path.length {
        return *w.last().unwrap();
    }
    let mut remaining = d;
    for pair in w.windows(2) {
        let seg = pair[0].distance(pair[1]);
        if remaining <= seg {
            return pair[0].lerp(pair[1], remaining / seg);
        }
        remaining -= seg;
    }
    *w.last().unwrap()
}

#[derive(Copy, Clone, PartialEq)]
struct State {
    cost: f64,
    id: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on (cost, id).
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.id.cmp(&self.id))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra shortest path. Among equal-cost routes the predecessor with the
/// smaller vertex id wins at every settle step.
pub fn shortest_path(graph: &NavGraph, src: usize, dst: usize) -> Result<Path, NavError> {
    let n = graph.len();
    for id in [src, dst] {
        if id >= n {
            return Err(NavError::BadVertexId(id));
        }
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(State { cost: 0.0, id: src });

    while let Some(State { cost, id: u }) = heap.pop() {
        if settled[u] || cost > dist[u] {
            continue;
        }
        settled[u] = true;
        if u == dst {
            break;
        }
        for &(v, w) in graph.neighbors(u) {
            if settled[v] {
                continue;
            }
            let next = cost + w;
            if next < dist[v] {
                dist[v] = next;
                pred[v] = u;
                heap.push(State { cost: next, id: v });
            } else if next == dist[v] && u < pred[v] {
                pred[v] = u;
            }
        }
    }
    if !settled[dst] {
        return Err(NavError::NoPath { src, dst });
    }
    let mut ids = vec![dst];
    while *ids.last().unwrap() != src {
        ids.push(pred[*ids.last().unwrap()]);
    }
    ids.reverse();
    Ok(Path::with_ids(
        ids.into_iter().map(|i| (graph.position(i), i)).collect(),
    ))
}

/// Id of the vertex closest to `p`; ties within 1e-12 m go to the smaller id.
pub fn nearest_vertex(graph: &NavGraph, p: Point2, snap_radius: f64) -> Result<usize, NavError> {
    let mut best: Option<(usize, f64)> = None;
    for v in graph.vertices() {
        let d = v.position.distance(p);
        match best {
            Some((_, bd)) if d >= bd - 1e-12 => {}
            _ => best = Some((v.id, d)),
        }
    }
    let (id, distance) = best.ok_or(NavError::NoVertexInRange {
        distance: f64::INFINITY,
    })?;
    if distance > snap_radius {
        return Err(NavError::NoVertexInRange { distance });
    }
    Ok(id)
}
