use super::{signed_area, GeomError, Point2, Polygon, GEOM_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffsetSide {
    Inward,
    Outward,
}

/// Miter offset: every edge moves `distance` along its normal and adjacent
/// offset lines are intersected to form the new vertices.
///
/// Fails with [`GeomError::OffsetCollapse`] when the result would invert an
/// edge or self-intersect; no repair is attempted.
pub fn offset_polygon(
    poly: &Polygon,
    distance: f64,
    side: OffsetSide,
) -> Result<Polygon, GeomError> {
    if !(distance > 0.0 && distance.is_finite()) {
        return Err(GeomError::BadOffsetDistance(distance));
    }
    let sign = match side {
        OffsetSide::Inward => 1.0,
        OffsetSide::Outward => -1.0,
    };
    let v = poly.vertices();
    let n = v.len();
    let dirs: Vec<Point2> = (0..n)
        .map(|i| {
            let d = v[(i + 1) % n].sub(v[i]);
            d.scale(1.0 / d.dot(d).sqrt())
        })
        .collect();
    // Left normal of a counter-clockwise edge points into the polygon.
    let normal = |d: Point2| Point2::new(-d.y, d.x).scale(sign * distance);

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let d0 = dirs[(i + n - 1) % n];
        let d1 = dirs[i];
        let p0 = v[(i + n - 1) % n].add(normal(d0));
        let p1 = v[i].add(normal(d1));
        let denom = d0.cross(d1);
        if denom.abs() <= 1e-12 {
            out.push(p1);
        } else {
            let t = p1.sub(p0).cross(d1) / denom;
            out.push(p0.add(d0.scale(t)));
        }
    }

    if signed_area(&out) <= GEOM_TOL {
        return Err(GeomError::OffsetCollapse);
    }
    for i in 0..n {
        let e = out[(i + 1) % n].sub(out[i]);
        if e.dot(dirs[i]) <= 0.0 {
            return Err(GeomError::OffsetCollapse);
        }
    }
    Polygon::new(out).map_err(|_| GeomError::OffsetCollapse)
}
