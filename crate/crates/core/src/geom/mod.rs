//! Planar geometry for floor plans: points, segments, polygons with holes,
//! containment and intersection predicates, miter offsetting and Delaunay
//! triangulation.
//!
//! Everything here is 2D; the floor elevation is implicit.

mod delaunay;
mod offset;
mod predicates;

pub use delaunay::{delaunay_triangulate, Triangle};
pub use offset::{offset_polygon, OffsetSide};
pub use predicates::{
    classify_segment_against_face, point_in_face, point_segment_distance, segment_intersection,
    Containment, FaceClass, SegmentIntersection,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used by every geometric predicate, in meters.
pub const GEOM_TOL: f64 = 1e-9;
/// Shortest admissible segment, in meters.
pub const MIN_SEGMENT_LEN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("non-finite coordinate ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("segment shorter than {MIN_SEGMENT_LEN} m")]
    DegenerateSegment,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("hole {0} is not strictly inside the outer boundary")]
    HoleOutside(usize),
    #[error("holes {0} and {1} overlap")]
    HolesOverlap(usize, usize),
    #[error("inward offset collapses the polygon")]
    OffsetCollapse,
    #[error("offset distance must be positive, got {0}")]
    BadOffsetDistance(f64),
    #[error("degenerate triangulation input: {0}")]
    DegenerateInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2 { x: v[0], y: v[1] }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        Point2::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }
}

/// Twice the signed area of triangle `abc`; positive when counter-clockwise.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Point2; 2]", into = "[Point2; 2]")]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl TryFrom<[Point2; 2]> for Segment {
    type Error = GeomError;
    fn try_from(v: [Point2; 2]) -> Result<Self, GeomError> {
        Segment::new(v[0], v[1])
    }
}

impl From<Segment> for [Point2; 2] {
    fn from(s: Segment) -> Self {
        [s.a, s.b]
    }
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Result<Self, GeomError> {
        for p in [a, b] {
            if !p.is_finite() {
                return Err(GeomError::NonFinite(p.x, p.y));
            }
        }
        if a.distance(b) <= MIN_SEGMENT_LEN {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn midpoint(&self) -> Point2 {
        self.a.lerp(self.b, 0.5)
    }

    pub fn at(&self, t: f64) -> Point2 {
        self.a.lerp(self.b, t)
    }
}

/// A simple, counter-clockwise polygon. Construction normalizes clockwise
/// input to counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "Vec<Point2>")]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl From<Polygon> for Vec<Point2> {
    fn from(p: Polygon) -> Self {
        p.vertices
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Point2>::deserialize(d)?;
        Polygon::new(v).map_err(serde::de::Error::custom)
    }
}

impl Polygon {
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self, GeomError> {
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite(p.x, p.y));
        }
        // A closing vertex equal to the first is accepted and dropped.
        if vertices.len() > 3 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        let area = signed_area(&vertices);
        if area.abs() <= GEOM_TOL {
            return Err(GeomError::ZeroArea);
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let poly = Polygon { vertices };
        if let Some((i, j)) = poly.first_self_intersection() {
            return Err(GeomError::SelfIntersecting(i, j));
        }
        Ok(poly)
    }

    /// Axis-aligned rectangle from two opposite corners.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self, GeomError> {
        Polygon::new(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Edges in order, `(v[i], v[i+1])`.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        bbox_of(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orient(
                self.vertices[i],
                self.vertices[(i + 1) % n],
                self.vertices[(i + 2) % n],
            ) >= -GEOM_TOL
        })
    }

    /// Even-odd containment of the open interior; boundary points are not
    /// resolved here (see [`point_in_face`]).
    pub fn contains_interior(&self, p: Point2) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn distance_to_boundary(&self, p: Point2) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    fn first_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.vertices.len();
        let v = &self.vertices;
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = (v[i], v[(i + 1) % n]);
                let (c, d) = (v[j], v[(j + 1) % n]);
                let Ok(s1) = Segment::new(a, b) else {
                    return Some((i, i));
                };
                let Ok(s2) = Segment::new(c, d) else {
                    return Some((j, j));
                };
                match segment_intersection(&s1, &s2) {
                    SegmentIntersection::None => {}
                    SegmentIntersection::Touch(_) if adjacent => {}
                    _ => return Some((i, j)),
                }
            }
        }
        None
    }
}

pub(crate) fn signed_area(v: &[Point2]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        s += v[i].cross(v[(i + 1) % n]);
    }
    0.5 * s
}

pub(crate) fn bbox_of(pts: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Navigable floor region: an outer boundary minus obstacle holes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FaceDoc", into = "FaceDoc")]
pub struct FaceWithHoles {
    outer: Polygon,
    holes: Vec<Polygon>,
}

impl FaceWithHoles {
    pub fn new(outer: Polygon, holes: Vec<Polygon>) -> Result<Self, GeomError> {
        for (i, h) in holes.iter().enumerate() {
            let strictly_inside =
                h.vertices().iter().all(|&p| {
                    outer.contains_interior(p) && outer.distance_to_boundary(p) > GEOM_TOL
                }) && !polygons_edges_cross(&outer, h);
            if !strictly_inside {
                return Err(GeomError::HoleOutside(i));
            }
        }
        for i in 0..holes.len() {
            for j in (i + 1)..holes.len() {
                if polygons_overlap(&holes[i], &holes[j]) {
                    return Err(GeomError::HolesOverlap(i, j));
                }
            }
        }
        Ok(FaceWithHoles { outer, holes })
    }

    pub fn without_holes(outer: Polygon) -> Self {
        FaceWithHoles {
            outer,
            holes: Vec::new(),
        }
    }

    pub fn outer(&self) -> &Polygon {
        &self.outer
    }

    pub fn holes(&self) -> &[Polygon] {
        &self.holes
    }

    /// Copy of this face with hole `index` removed.
    pub fn remove_hole(&self, index: usize) -> FaceWithHoles {
        let mut holes = self.holes.clone();
        holes.remove(index);
        FaceWithHoles {
            outer: self.outer.clone(),
            holes,
        }
    }

    /// Every boundary edge, outer first then holes in order.
    pub fn boundary_edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.outer
            .edges()
            .chain(self.holes.iter().flat_map(|h| h.edges()))
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        self.outer.bbox()
    }

    pub fn area(&self) -> f64 {
        self.outer.area() - self.holes.iter().map(Polygon::area).sum::<f64>()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceDoc {
    outer: Polygon,
    #[serde(default)]
    holes: Vec<Polygon>,
}

impl TryFrom<FaceDoc> for FaceWithHoles {
    type Error = GeomError;
    fn try_from(d: FaceDoc) -> Result<Self, GeomError> {
        FaceWithHoles::new(d.outer, d.holes)
    }
}

impl From<FaceWithHoles> for FaceDoc {
    fn from(f: FaceWithHoles) -> Self {
        FaceDoc {
            outer: f.outer,
            holes: f.holes,
        }
    }
}

fn polygons_edges_cross(p: &Polygon, q: &Polygon) -> bool {
    p.edges().any(|(a, b)| {
        q.edges()
            .any(|(c, d)| match (Segment::new(a, b), Segment::new(c, d)) {
                (Ok(s1), Ok(s2)) => {
                    !matches!(segment_intersection(&s1, &s2), SegmentIntersection::None)
                }
                _ => false,
            })
    })
}

fn polygons_overlap(p: &Polygon, q: &Polygon) -> bool {
    let crossing = p.edges().any(|(a, b)| {
        q.edges()
            .any(|(c, d)| match (Segment::new(a, b), Segment::new(c, d)) {
                (Ok(s1), Ok(s2)) => matches!(
                    segment_intersection(&s1, &s2),
                    SegmentIntersection::Proper(_) | SegmentIntersection::CollinearOverlap
                ),
                _ => false,
            })
    });
    crossing
        || p.vertices()
            .iter()
            .any(|&v| q.contains_interior(v) && q.distance_to_boundary(v) > GEOM_TOL)
        || q.vertices()
            .iter()
            .any(|&v| p.contains_interior(v) && p.distance_to_boundary(v) > GEOM_TOL)
}
