//! Incremental Bowyer-Watson triangulation.
//!
//! The unbounded exterior is represented by ghost triangles that share a
//! single vertex at infinity, so no super-triangle is needed and hull edges
//! are never lost. A ghost triangle `(u, v, ∞)` "contains" a point in its
//! circumcircle when the point lies strictly outside the hull edge `u→v`,
//! or on that edge strictly between `u` and `v`.

use std::collections::{HashMap, HashSet};

use super::{orient, GeomError, Point2, GEOM_TOL};

/// Vertex indices of a counter-clockwise triangle.
pub type Triangle = [usize; 3];

const GHOST: usize = usize::MAX;

/// Delaunay triangulation of the convex hull of `points`.
///
/// Cocircular configurations are resolved by choosing, for every ambiguous
/// quadrilateral, the diagonal whose lower endpoint index is smaller. The
/// output is sorted, with each triangle rotated to start at its lowest index.
pub fn delaunay_triangulate(points: &[Point2]) -> Result<Vec<Triangle>, GeomError> {
    check_input(points)?;
    let mut mesh = Mesh::new(points);
    let (i0, i1, i2) = first_triangle(points)?;
    mesh.seed(i0, i1, i2);
    for k in 0..points.len() {
        if k != i0 && k != i1 && k != i2 {
            mesh.insert(k)?;
        }
    }
    let mut tris = mesh.real_triangles();
    enforce_tie_break(points, &mut tris);
    for t in tris.iter_mut() {
        let r = (0..3).min_by_key(|&i| t[i]).unwrap();
        t.rotate_left(r);
    }
    tris.sort_unstable();
    Ok(tris)
}

fn check_input(points: &[Point2]) -> Result<(), GeomError> {
    if points.len() < 3 {
        return Err(GeomError::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite(p.x, p.y));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if points[j].x - points[i].x > GEOM_TOL {
                break;
            }
            if points[i].distance(points[j]) <= GEOM_TOL {
                return Err(GeomError::DegenerateInput(format!(
                    "points {} and {} coincide",
                    i.min(j),
                    i.max(j)
                )));
            }
        }
    }
    Ok(())
}

fn first_triangle(points: &[Point2]) -> Result<(usize, usize, usize), GeomError> {
    let (a, b) = (0, 1);
    let ab = points[a].distance(points[b]);
    for c in 2..points.len() {
        let o = orient(points[a], points[b], points[c]);
        if o.abs() / ab > GEOM_TOL {
            return Ok(if o > 0.0 { (a, b, c) } else { (a, c, b) });
        }
    }
    Err(GeomError::DegenerateInput(
        "all points are collinear".into(),
    ))
}

/// Signed incircle determinant relative to `d`, with a scale for tolerances.
/// Positive when `d` is strictly inside the circumcircle of ccw `abc`.
fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> (f64, f64) {
    let (adx, ady) = (a.x - d.x, a.y - d.y);
    let (bdx, bdy) = (b.x - d.x, b.y - d.y);
    let (cdx, cdy) = (c.x - d.x, c.y - d.y);
    let det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    let m = [adx, ady, bdx, bdy, cdx, cdy]
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    (det, 1e-12 * m.powi(4))
}

/// Signed distance of `p` from the line `u→v`, positive on the left.
fn side(u: Point2, v: Point2, p: Point2) -> f64 {
    orient(u, v, p) / u.distance(v)
}

struct Mesh<'a> {
    pts: &'a [Point2],
    tris: Vec<Triangle>,
    alive: Vec<bool>,
    owner: HashMap<(usize, usize), usize>,
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [Point2]) -> Self {
        Mesh {
            pts,
            tris: Vec::new(),
            alive: Vec::new(),
            owner: HashMap::new(),
        }
    }

    fn add(&mut self, t: Triangle) {
        // Ghost triangles are stored as (u, v, GHOST).
        let t = match t.iter().position(|&v| v == GHOST) {
            Some(0) => [t[1], t[2], t[0]],
            Some(1) => [t[2], t[0], t[1]],
            _ => t,
        };
        let id = self.tris.len();
        for i in 0..3 {
            self.owner.insert((t[i], t[(i + 1) % 3]), id);
        }
        self.tris.push(t);
        self.alive.push(true);
    }

    fn kill(&mut self, id: usize) {
        self.alive[id] = false;
        let t = self.tris[id];
        for i in 0..3 {
            let key = (t[i], t[(i + 1) % 3]);
            if self.owner.get(&key) == Some(&id) {
                self.owner.remove(&key);
            }
        }
    }

    fn seed(&mut self, a: usize, b: usize, c: usize) {
        self.add([a, b, c]);
        self.add([b, a, GHOST]);
        self.add([c, b, GHOST]);
        self.add([a, c, GHOST]);
    }

    fn circumcircle_contains(&self, id: usize, k: usize) -> bool {
        let t = self.tris[id];
        let p = self.pts[k];
        if t[2] == GHOST {
            let (u, v) = (self.pts[t[0]], self.pts[t[1]]);
            let s = side(u, v, p);
            if s > GEOM_TOL {
                return true;
            }
            if s < -GEOM_TOL {
                return false;
            }
            let d = v.sub(u);
            let along = p.sub(u).dot(d) / d.dot(d).sqrt();
            along > GEOM_TOL && along < d.dot(d).sqrt() - GEOM_TOL
        } else {
            let (det, eps) = incircle(self.pts[t[0]], self.pts[t[1]], self.pts[t[2]], p);
            det > eps
        }
    }

    fn locate(&self, k: usize) -> Option<usize> {
        let p = self.pts[k];
        let real = (0..self.tris.len()).find(|&id| {
            let t = self.tris[id];
            self.alive[id]
                && t[2] != GHOST
                && (0..3).all(|i| side(self.pts[t[i]], self.pts[t[(i + 1) % 3]], p) >= -GEOM_TOL)
        });
        real.or_else(|| {
            (0..self.tris.len()).find(|&id| {
                let t = self.tris[id];
                self.alive[id]
                    && t[2] == GHOST
                    && side(self.pts[t[0]], self.pts[t[1]], p) > GEOM_TOL
            })
        })
    }

    fn insert(&mut self, k: usize) -> Result<(), GeomError> {
        let p = self.pts[k];
        let start = self
            .locate(k)
            .ok_or_else(|| GeomError::DegenerateInput(format!("cannot locate point {k}")))?;

        // Connected cavity of triangles whose circumcircle contains p.
        let mut cavity: HashSet<usize> = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(id) = stack.pop() {
            let t = self.tris[id];
            for i in 0..3 {
                if let Some(&nb) = self.owner.get(&(t[(i + 1) % 3], t[i])) {
                    if !cavity.contains(&nb) && self.circumcircle_contains(nb, k) {
                        cavity.insert(nb);
                        stack.push(nb);
                    }
                }
            }
        }

        // Grow the cavity until every real boundary edge is visible from p,
        // so the re-triangulation is star-shaped.
        let boundary = loop {
            let mut boundary = Vec::new();
            let mut grow = None;
            let mut ids: Vec<usize> = cavity.iter().copied().collect();
            ids.sort_unstable();
            for &id in &ids {
                let t = self.tris[id];
                for i in 0..3 {
                    let (u, v) = (t[i], t[(i + 1) % 3]);
                    let nb = self.owner.get(&(v, u)).copied();
                    if nb.is_some_and(|nb| cavity.contains(&nb)) {
                        continue;
                    }
                    if u != GHOST && v != GHOST && side(self.pts[u], self.pts[v], p) <= GEOM_TOL {
                        grow = Some(nb.ok_or_else(|| {
                            GeomError::DegenerateInput(format!("open cavity at point {k}"))
                        })?);
                        break;
                    }
                    boundary.push((u, v));
                }
                if grow.is_some() {
                    break;
                }
            }
            match grow {
                Some(nb) => {
                    cavity.insert(nb);
                }
                None => break boundary,
            }
        };

        let mut ids: Vec<usize> = cavity.into_iter().collect();
        ids.sort_unstable();
        for id in ids {
            self.kill(id);
        }
        for (u, v) in boundary {
            self.add([u, v, k]);
        }
        Ok(())
    }

    fn real_triangles(&self) -> Vec<Triangle> {
        self.tris
            .iter()
            .zip(&self.alive)
            .filter(|(t, &alive)| alive && !t.contains(&GHOST))
            .map(|(t, _)| *t)
            .collect()
    }
}

/// Flips cocircular diagonals toward the one with the smallest lower index.
/// Each flip strictly lowers the sum of per-edge minimum indices, so the loop
/// terminates.
fn enforce_tie_break(pts: &[Point2], tris: &mut [Triangle]) {
    loop {
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (id, t) in tris.iter().enumerate() {
            for i in 0..3 {
                owner.insert((t[i], t[(i + 1) % 3]), id);
            }
        }
        let mut flipped = false;
        'scan: for id in 0..tris.len() {
            for i in 0..3 {
                let t = tris[id];
                let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                let Some(&nb) = owner.get(&(b, a)) else {
                    continue;
                };
                let u = tris[nb];
                let j = (0..3).find(|&j| u[j] == b).unwrap();
                debug_assert_eq!(u[(j + 1) % 3], a);
                let d = u[(j + 2) % 3];
                if c.min(d) >= a.min(b) {
                    continue;
                }
                let (det, eps) = incircle(pts[a], pts[b], pts[c], pts[d]);
                if det.abs() > eps {
                    continue;
                }
                if orient(pts[a], pts[d], pts[c]) <= 0.0 || orient(pts[d], pts[b], pts[c]) <= 0.0 {
                    continue;
                }
                tris[id] = [a, d, c];
                tris[nb] = [d, b, c];
                flipped = true;
                break 'scan;
            }
        }
        if !flipped {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    /// Exhaustive empty-circumcircle scan, independent of the mesh code.
    fn empty_circumcircles(p: &[Point2], tris: &[Triangle]) -> bool {
        tris.iter().all(|t| {
            let (a, b, c) = (p[t[0]], p[t[1]], p[t[2]]);
            // Circumcenter by perpendicular bisectors.
            let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
            let a2 = a.x * a.x + a.y * a.y;
            let b2 = b.x * b.x + b.y * b.y;
            let c2 = c.x * c.x + c.y * c.y;
            let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
            let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
            let center = Point2::new(ux, uy);
            let r = center.distance(a);
            p.iter()
                .enumerate()
                .all(|(k, q)| t.contains(&k) || center.distance(*q) >= r - 1e-9 * r.max(1.0))
        })
    }

    fn hull_size(p: &[Point2]) -> usize {
        // Points on the hull boundary, collinear ones included.
        (0..p.len())
            .filter(|&i| {
                (0..p.len()).any(|j| {
                    j != i && {
                        let (a, b) = (p[i], p[j]);
                        let s: Vec<f64> = p.iter().map(|&q| orient(a, b, q)).collect();
                        s.iter().all(|&v| v >= -1e-9) || s.iter().all(|&v| v <= 1e-9)
                    }
                })
            })
            .count()
    }

    #[test]
    fn three_points_make_one_triangle() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(delaunay_triangulate(&p).unwrap(), vec![[0, 1, 2]]);
        let cw = pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(delaunay_triangulate(&cw).unwrap(), vec![[0, 2, 1]]);
    }

    #[test]
    fn square_with_center_fans_from_center() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)]);
        let t = delaunay_triangulate(&p).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|t| t.contains(&4)));
        assert!(empty_circumcircles(&p, &t));
    }

    #[test]
    fn cocircular_square_takes_lowest_index_diagonal() {
        // Insertion order would naturally pick either diagonal; the rule picks 0-2.
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(
            delaunay_triangulate(&p).unwrap(),
            vec![[0, 1, 2], [0, 2, 3]]
        );
        let q = pts(&[(1.0, 0.0), (0.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        // Diagonals are 0-3 and 1-2; 0-3 has the smaller low endpoint.
        let t = delaunay_triangulate(&q).unwrap();
        assert!(t.iter().all(|t| t.contains(&0) && t.contains(&3)));
    }

    #[test]
    fn regular_grid_satisfies_euler_relation() {
        let mut p = Vec::new();
        for j in 0..6 {
            for i in 0..7 {
                p.push(Point2::new(i as f64 * 0.5, j as f64 * 0.5));
            }
        }
        let t = delaunay_triangulate(&p).unwrap();
        let h = hull_size(&p);
        assert_eq!(t.len(), 2 * p.len() - 2 - h);
        assert!(empty_circumcircles(&p, &t));
    }

    #[test]
    fn random_points_pass_circumcircle_scan() {
        let mut rng = StdRng::seed_from_u64(20);
        let p: Vec<Point2> = (0..20)
            .map(|_| Point2::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)))
            .collect();
        let t = delaunay_triangulate(&p).unwrap();
        assert!(empty_circumcircles(&p, &t));
        assert_eq!(t.len(), 2 * p.len() - 2 - hull_size(&p));
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let line = pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        assert!(matches!(
            delaunay_triangulate(&line),
            Err(GeomError::DegenerateInput(_))
        ));
        let dup = pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        assert!(matches!(
            delaunay_triangulate(&dup),
            Err(GeomError::DegenerateInput(_))
        ));
        assert!(delaunay_triangulate(&pts(&[(0.0, 0.0), (1.0, 0.0)])).is_err());
    }

    #[test]
    fn collinear_prefix_then_offset_point() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (1.5, 1.0)]);
        let t = delaunay_triangulate(&p).unwrap();
        assert_eq!(t.len(), 3);
        assert!(empty_circumcircles(&p, &t));
    }
}
