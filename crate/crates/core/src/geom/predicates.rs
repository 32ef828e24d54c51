use super::{FaceWithHoles, Point2, Segment, GEOM_TOL};

/// Where a point sits relative to a face with holes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Containment {
    Navigable,
    InHole,
    Outside,
    OnBoundary,
}

impl Containment {
    /// Navigable or on a boundary: the closed navigable region.
    pub fn is_walkable(self) -> bool {
        matches!(self, Containment::Navigable | Containment::OnBoundary)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    None,
    /// Interiors cross at a single point.
    Proper(Point2),
    /// Contact only at an endpoint of one of the segments.
    Touch(Point2),
    CollinearOverlap,
}

impl SegmentIntersection {
    /// Proper crossings and collinear overlaps; endpoint contact is not a crossing.
    pub fn is_crossing(&self) -> bool {
        matches!(
            self,
            SegmentIntersection::Proper(_) | SegmentIntersection::CollinearOverlap
        )
    }
}

/// Result of intersecting a segment with the closed navigable region of a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceClass {
    /// The whole segment lies in the region (boundary contact allowed).
    Valid,
    /// Empty or point-like intersection, or the segment leaves the face.
    Outside,
    /// The region cuts the segment into two or more pieces.
    Split,
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (p.sub(a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a.lerp(b, t))
}

pub fn point_in_face(p: Point2, face: &FaceWithHoles) -> Containment {
    if face
        .boundary_edges()
        .any(|(a, b)| point_segment_distance(p, a, b) <= GEOM_TOL)
    {
        return Containment::OnBoundary;
    }
    if !face.outer().contains_interior(p) {
        return Containment::Outside;
    }
    if face.holes().iter().any(|h| h.contains_interior(p)) {
        return Containment::InHole;
    }
    Containment::Navigable
}

/// Signed distance of `p` from the line through `s`, positive on the left.
fn line_distance(s: &Segment, p: Point2) -> f64 {
    s.b.sub(s.a).cross(p.sub(s.a)) / s.length()
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let dc = line_distance(s1, s2.a);
    let dd = line_distance(s1, s2.b);
    let da = line_distance(s2, s1.a);
    let db = line_distance(s2, s1.b);
    let small = |d: f64| d.abs() <= GEOM_TOL;

    if (small(dc) && small(dd)) || (small(da) && small(db)) {
        return collinear_overlap(s1, s2);
    }
    let same_side =
        |u: f64, v: f64| (u > GEOM_TOL && v > GEOM_TOL) || (u < -GEOM_TOL && v < -GEOM_TOL);
    if same_side(dc, dd) || same_side(da, db) {
        return SegmentIntersection::None;
    }

    // Contact at an endpoint: report the endpoint nearest the other line.
    let candidates = [(dc, s2.a), (dd, s2.b), (da, s1.a), (db, s1.b)];
    if let Some(&(_, p)) = candidates
        .iter()
        .filter(|(d, _)| small(*d))
        .min_by(|x, y| x.0.abs().total_cmp(&y.0.abs()))
    {
        return SegmentIntersection::Touch(p);
    }

    let r = s1.b.sub(s1.a);
    let s = s2.b.sub(s2.a);
    let t = s2.a.sub(s1.a).cross(s) / r.cross(s);
    SegmentIntersection::Proper(s1.at(t))
}

fn collinear_overlap(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    // Project s2's endpoints onto s1, in meters from s1.a.
    let len = s1.length();
    let dir = s1.b.sub(s1.a).scale(1.0 / len);
    let tc = s2.a.sub(s1.a).dot(dir);
    let td = s2.b.sub(s1.a).dot(dir);
    let lo = tc.min(td).max(0.0);
    let hi = tc.max(td).min(len);
    if hi - lo > GEOM_TOL {
        SegmentIntersection::CollinearOverlap
    } else if hi - lo >= -GEOM_TOL {
        SegmentIntersection::Touch(s1.a.add(dir.scale(0.5 * (lo + hi))))
    } else {
        SegmentIntersection::None
    }
}

/// Arc parameter of `p` projected onto `seg`, in `[0, 1]`.
fn param_on(seg: &Segment, p: Point2) -> f64 {
    let d = seg.b.sub(seg.a);
    (p.sub(seg.a).dot(d) / d.dot(d)).clamp(0.0, 1.0)
}

/// Classifies `seg` against the closed navigable region of `face`.
///
/// The segment is cut at every contact with a boundary edge; each induced
/// sub-segment is kept or dropped by testing its midpoint, and the kept
/// pieces are merged into maximal runs.
pub fn classify_segment_against_face(seg: &Segment, face: &FaceWithHoles) -> FaceClass {
    let mut cuts = vec![0.0, 1.0];
    for (a, b) in face.boundary_edges() {
        let Ok(edge) = Segment::new(a, b) else {
            continue;
        };
        match segment_intersection(seg, &edge) {
            SegmentIntersection::None => {}
            SegmentIntersection::Proper(p) | SegmentIntersection::Touch(p) => {
                cuts.push(param_on(seg, p))
            }
            SegmentIntersection::CollinearOverlap => {
                cuts.push(param_on(seg, a));
                cuts.push(param_on(seg, b));
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    let len = seg.length();
    cuts.dedup_by(|x, y| (*x - *y) * len <= GEOM_TOL);

    let mut runs = 0usize;
    let mut all_inside = true;
    let mut in_run = false;
    for w in cuts.windows(2) {
        if (w[1] - w[0]) * len <= GEOM_TOL {
            continue;
        }
        let mid = seg.at(0.5 * (w[0] + w[1]));
        if point_in_face(mid, face).is_walkable() {
            if !in_run {
                runs += 1;
                in_run = true;
            }
        } else {
            all_inside = false;
            in_run = false;
        }
    }
    match runs {
        0 => FaceClass::Outside,
        1 if all_inside => FaceClass::Valid,
        1 => FaceClass::Outside,
        _ => FaceClass::Split,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(p(ax, ay), p(bx, by)).unwrap()
    }

    fn square_with_hole() -> FaceWithHoles {
        FaceWithHoles::new(
            Polygon::rect(0.0, 0.0, 1.0, 1.0).unwrap(),
            vec![Polygon::rect(0.4, 0.4, 0.6, 0.6).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn containment_examples() {
        let plain = FaceWithHoles::without_holes(Polygon::rect(0.0, 0.0, 1.0, 1.0).unwrap());
        assert_eq!(point_in_face(p(0.5, 0.5), &plain), Containment::Navigable);
        assert_eq!(
            point_in_face(p(0.5, 0.5), &square_with_hole()),
            Containment::InHole
        );
        assert_eq!(point_in_face(p(2.0, 2.0), &plain), Containment::Outside);
        assert_eq!(point_in_face(p(1.0, 0.3), &plain), Containment::OnBoundary);
        assert_eq!(
            point_in_face(p(0.4, 0.5), &square_with_hole()),
            Containment::OnBoundary
        );
    }

    #[test]
    fn removing_a_hole_frees_its_points() {
        let f = square_with_hole();
        let q = p(0.45, 0.55);
        assert_eq!(point_in_face(q, &f), Containment::InHole);
        assert_eq!(point_in_face(q, &f.remove_hole(0)), Containment::Navigable);
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            segment_intersection(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.5, -1.0, 0.5, 1.0)),
            SegmentIntersection::Proper(p(0.5, 0.0))
        );
        assert_eq!(
            segment_intersection(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.0, 1.0, 1.0, 1.0)),
            SegmentIntersection::None
        );
        assert_eq!(
            segment_intersection(&seg(0.0, 0.0, 1.0, 0.0), &seg(1.0, 0.0, 1.0, 1.0)),
            SegmentIntersection::Touch(p(1.0, 0.0))
        );
        assert_eq!(
            segment_intersection(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.5, 0.0, 2.0, 0.0)),
            SegmentIntersection::CollinearOverlap
        );
        assert_eq!(
            segment_intersection(&seg(0.0, 0.0, 1.0, 0.0), &seg(1.0, 0.0, 2.0, 0.0)),
            SegmentIntersection::Touch(p(1.0, 0.0))
        );
        assert_eq!(
            segment_intersection(&seg(0.0, 0.0, 1.0, 0.0), &seg(1.5, 0.0, 2.0, 0.0)),
            SegmentIntersection::None
        );
        // T-junction: endpoint of the second lies on the interior of the first.
        assert_eq!(
            segment_intersection(&seg(0.0, 0.0, 1.0, 0.0), &seg(0.3, 0.0, 0.3, 1.0)),
            SegmentIntersection::Touch(p(0.3, 0.0))
        );
    }

    #[test]
    fn classification_examples() {
        let f = square_with_hole();
        assert_eq!(
            classify_segment_against_face(&seg(0.1, 0.1, 0.3, 0.1), &f),
            FaceClass::Valid
        );
        assert_eq!(
            classify_segment_against_face(&seg(0.1, 0.5, 0.9, 0.5), &f),
            FaceClass::Split
        );
        assert_eq!(
            classify_segment_against_face(&seg(2.0, 2.0, 3.0, 3.0), &f),
            FaceClass::Outside
        );
        // Inside the hole entirely.
        assert_eq!(
            classify_segment_against_face(&seg(0.45, 0.5, 0.55, 0.5), &f),
            FaceClass::Outside
        );
        // Running along the hole's edge counts as inside.
        assert_eq!(
            classify_segment_against_face(&seg(0.3, 0.4, 0.7, 0.4), &f),
            FaceClass::Valid
        );
    }
}
