//! Aerosol concentration on a masked uniform grid.
//!
//! The field obeys `∂C/∂t = D ∇²C − (λ + ach/3600) C` with zero flux across
//! blocked cells, walls and the domain edge. Diffusion is a 5-point explicit
//! stencil; decay and ventilation are applied as an exact exponential factor.
//! Emission is deposited into the cell holding the source, normalized by the
//! cell volume `h² H`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    point_in_face, segment_intersection, FaceWithHoles, Point2, Segment, SegmentIntersection,
};
use crate::schedule::{Activity, MaskType};

/// Fraction of the explicit stability limit `h² / (4 D)` allowed per step.
pub const STABILITY_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AerosolError {
    #[error("no open cell in the grid")]
    EmptyDomain,
    #[error("source at ({}, {}) falls in a blocked cell", .0.x, .0.y)]
    SourceInBlockedCell(Point2),
    #[error("point ({}, {}) is outside the grid", .0.x, .0.y)]
    OutOfBounds(Point2),
    #[error("time step {dt} s exceeds the stable limit {max} s")]
    UnstableStep { dt: f64, max: f64 },
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("invalid physics parameter: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Open,
    Blocked,
}

/// A value per activity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivityTable {
    pub resting: f64,
    pub talking: f64,
    pub talking_loudly: f64,
    pub walking: f64,
    pub moderate_exercise: f64,
    pub vigorous_exercise: f64,
}

impl ActivityTable {
    pub fn get(&self, a: Activity) -> f64 {
        match a {
            Activity::Resting => self.resting,
            Activity::Talking => self.talking,
            Activity::TalkingLoudly => self.talking_loudly,
            Activity::Walking => self.walking,
            Activity::ModerateExercise => self.moderate_exercise,
            Activity::VigorousExercise => self.vigorous_exercise,
        }
    }

    pub fn uniform(v: f64) -> Self {
        ActivityTable {
            resting: v,
            talking: v,
            talking_loudly: v,
            walking: v,
            moderate_exercise: v,
            vigorous_exercise: v,
        }
    }
}

/// A filtration efficiency per mask type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaskTable {
    pub no_mask: f64,
    pub cotton: f64,
    pub surgical: f64,
    pub n95: f64,
}

impl MaskTable {
    pub fn get(&self, m: MaskType) -> f64 {
        match m {
            MaskType::NoMask => self.no_mask,
            MaskType::Cotton => self.cotton,
            MaskType::Surgical => self.surgical,
            MaskType::N95 => self.n95,
        }
    }
}

/// Physical constants of a run. None of the defaults are measured values;
/// they are placeholders meant to be overridden per scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicsParams {
    /// Eddy diffusion coefficient, m²/s.
    pub diffusion: f64,
    /// Viral deactivation rate, 1/s.
    pub decay_rate: f64,
    /// Air changes per hour.
    pub ach: f64,
    /// Dose scale `d` in `P = 1 - exp(-dose / d)`, quanta.
    pub dose_threshold: f64,
    /// Emission rate of an infectious agent, quanta/s.
    pub emission: ActivityTable,
    /// Breathing rate, m³/s.
    pub breathing: ActivityTable,
    pub mask_exhale: MaskTable,
    pub mask_inhale: MaskTable,
    pub superspreader_factor: f64,
    /// Remove inhaled quanta from the field. Off by default; used for
    /// mass-balance bookkeeping.
    pub inhalation_sink: bool,
}

impl Default for PhysicsParams {
    fn default() -> Self {
        PhysicsParams {
            diffusion: 0.05,
            decay_rate: 1.7e-4,
            ach: 0.12,
            dose_threshold: 1.0,
            emission: ActivityTable {
                resting: 0.003,
                talking: 0.015,
                talking_loudly: 0.05,
                walking: 0.06,
                moderate_exercise: 0.08,
                vigorous_exercise: 0.15,
            },
            breathing: ActivityTable {
                resting: 1.5e-4,
                talking: 1.6e-4,
                talking_loudly: 1.7e-4,
                walking: 3.3e-4,
                moderate_exercise: 4.3e-4,
                vigorous_exercise: 8.6e-4,
            },
            mask_exhale: MaskTable {
                no_mask: 0.0,
                cotton: 0.4,
                surgical: 0.6,
                n95: 0.95,
            },
            mask_inhale: MaskTable {
                no_mask: 0.0,
                cotton: 0.3,
                surgical: 0.5,
                n95: 0.9,
            },
            superspreader_factor: 10.0,
            inhalation_sink: false,
        }
    }
}

impl PhysicsParams {
    /// Combined first-order loss rate, 1/s.
    pub fn loss_rate(&self) -> f64 {
        self.decay_rate + self.ach / 3600.0
    }

    /// Hard errors for out-of-range values; returns soft warnings.
    pub fn validate(&self) -> Result<Vec<String>, AerosolError> {
        let nonneg = [
            ("diffusion", self.diffusion),
            ("decay_rate", self.decay_rate),
            ("ach", self.ach),
        ];
        for (name, v) in nonneg {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(AerosolError::InvalidParams(format!(
                    "{name} = {v} must be >= 0"
                )));
            }
        }
        if !(self.dose_threshold > 0.0 && self.dose_threshold.is_finite()) {
            return Err(AerosolError::InvalidParams(format!(
                "dose_threshold = {} must be > 0",
                self.dose_threshold
            )));
        }
        for a in Activity::ALL {
            for (name, table) in [("emission", &self.emission), ("breathing", &self.breathing)] {
                let v = table.get(a);
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(AerosolError::InvalidParams(format!(
                        "{name}.{} = {v} must be >= 0",
                        a.as_str()
                    )));
                }
            }
        }
        for m in MaskType::ALL {
            for (name, table) in [
                ("mask_exhale", &self.mask_exhale),
                ("mask_inhale", &self.mask_inhale),
            ] {
                let v = table.get(m);
                if !(0.0..=1.0).contains(&v) {
                    return Err(AerosolError::InvalidParams(format!(
                        "{name} efficiency {v} outside [0, 1]"
                    )));
                }
            }
        }
        if !(self.superspreader_factor >= 1.0 && self.superspreader_factor.is_finite()) {
            return Err(AerosolError::InvalidParams(format!(
                "superspreader_factor = {} must be >= 1",
                self.superspreader_factor
            )));
        }
        let mut warnings = Vec::new();
        let e = &self.emission;
        let order = [
            (Activity::Walking, e.walking),
            (Activity::TalkingLoudly, e.talking_loudly),
            (Activity::Talking, e.talking),
            (Activity::Resting, e.resting),
        ];
        for w in order.windows(2) {
            if w[0].1 < w[1].1 {
                warnings.push(format!(
                    "emission rate for {} ({}) is below {} ({}); expected walking >= talking_loudly >= talking >= resting",
                    w[0].0.as_str(),
                    w[0].1,
                    w[1].0.as_str(),
                    w[1].1
                ));
            }
        }
        Ok(warnings)
    }

    /// Largest stable diffusion step for cell size `h`.
    pub fn max_stable_dt(&self, h: f64) -> f64 {
        if self.diffusion > 0.0 {
            STABILITY_FRACTION * h * h / (4.0 * self.diffusion)
        } else {
            f64::INFINITY
        }
    }
}

/// Marks a cell Open when its center is in the closed navigable region.
pub fn rasterize_mask(
    face: &FaceWithHoles,
    nx: usize,
    ny: usize,
    h: f64,
    origin: Point2,
) -> Result<Vec<CellKind>, AerosolError> {
    let mut mask = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let c = Point2::new(
                origin.x + (i as f64 + 0.5) * h,
                origin.y + (j as f64 + 0.5) * h,
            );
            mask.push(if point_in_face(c, face).is_walkable() {
                CellKind::Open
            } else {
                CellKind::Blocked
            });
        }
    }
    if !mask.contains(&CellKind::Open) {
        return Err(AerosolError::EmptyDomain);
    }
    Ok(mask)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    nx: usize,
    ny: usize,
    h: f64,
    origin: Point2,
    height: f64,
    mask: Vec<CellKind>,
    /// Wall between cell (i, j) and (i + 1, j).
    wall_east: Vec<bool>,
    /// Wall between cell (i, j) and (i, j + 1).
    wall_north: Vec<bool>,
    conc: Vec<f64>,
    scratch: Vec<f64>,
}

impl GridField {
    pub fn from_mask(
        nx: usize,
        ny: usize,
        h: f64,
        origin: Point2,
        height: f64,
        mask: Vec<CellKind>,
    ) -> Result<Self, AerosolError> {
        if nx == 0 || ny == 0 || mask.len() != nx * ny {
            return Err(AerosolError::BadGrid(format!(
                "{nx}x{ny} grid with {} mask cells",
                mask.len()
            )));
        }
        if !(h > 0.0 && h.is_finite()) || !(height > 0.0 && height.is_finite()) {
            return Err(AerosolError::BadGrid(format!("h = {h}, height = {height}")));
        }
        if !mask.contains(&CellKind::Open) {
            return Err(AerosolError::EmptyDomain);
        }
        Ok(GridField {
            nx,
            ny,
            h,
            origin,
            height,
            mask,
            wall_east: vec![false; nx * ny],
            wall_north: vec![false; nx * ny],
            conc: vec![0.0; nx * ny],
            scratch: vec![0.0; nx * ny],
        })
    }

    /// Grid covering the face's bounding box with square cells of size `h`.
    pub fn covering(face: &FaceWithHoles, h: f64, height: f64) -> Result<Self, AerosolError> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(AerosolError::BadGrid(format!("h = {h}")));
        }
        let (lo, hi) = face.bbox();
        // Snap to whole cells; the tiny slack absorbs rounding in w / h.
        let nx = (((hi.x - lo.x) / h) - 1e-9).ceil().max(1.0) as usize;
        let ny = (((hi.y - lo.y) / h) - 1e-9).ceil().max(1.0) as usize;
        let mask = rasterize_mask(face, nx, ny, h, lo)?;
        GridField::from_mask(nx, ny, h, lo, height, mask)
    }

    /// Closes every cell-to-cell link whose center connector touches a barrier.
    pub fn apply_barriers(&mut self, barriers: &[Segment]) {
        if barriers.is_empty() {
            return;
        }
        let blocked = |a: Point2, b: Point2| -> bool {
            let Ok(link) = Segment::new(a, b) else {
                return false;
            };
            barriers
                .iter()
                .any(|w| segment_intersection(&link, w) != SegmentIntersection::None)
        };
        for j in 0..self.ny {
            for i in 0..self.nx {
                let k = self.index(i, j);
                let c = self.cell_center(i, j);
                if i + 1 < self.nx && blocked(c, self.cell_center(i + 1, j)) {
                    self.wall_east[k] = true;
                }
                if j + 1 < self.ny && blocked(c, self.cell_center(i, j + 1)) {
                    self.wall_north[k] = true;
                }
            }
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> Point2 {
        self.origin
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn mask(&self) -> &[CellKind] {
        &self.mask
    }

    /// Row-major concentrations, row 0 at minimum y. Blocked cells are 0.
    pub fn concentrations(&self) -> &[f64] {
        &self.conc
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn is_open(&self, i: usize, j: usize) -> bool {
        self.mask[self.index(i, j)] == CellKind::Open
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.conc[self.index(i, j)]
    }

    pub fn set_value(&mut self, i: usize, j: usize, c: f64) {
        let k = self.index(i, j);
        if self.mask[k] == CellKind::Open {
            self.conc[k] = c.max(0.0);
        }
    }

    pub fn cell_center(&self, i: usize, j: usize) -> Point2 {
        Point2::new(
            self.origin.x + (i as f64 + 0.5) * self.h,
            self.origin.y + (j as f64 + 0.5) * self.h,
        )
    }

    /// Cell containing `p`; points on the far edges belong to the last cell.
    pub fn cell_of(&self, p: Point2) -> Option<(usize, usize)> {
        let fx = (p.x - self.origin.x) / self.h;
        let fy = (p.y - self.origin.y) / self.h;
        if !(fx >= 0.0 && fy >= 0.0 && fx <= self.nx as f64 && fy <= self.ny as f64) {
            return None;
        }
        Some((
            (fx as usize).min(self.nx - 1),
            (fy as usize).min(self.ny - 1),
        ))
    }

    /// Open cell whose center is closest to `p`; ties go to the lower index.
    pub fn nearest_open_cell(&self, p: Point2) -> (usize, usize) {
        let mut best = (0, 0);
        let mut best_d = f64::INFINITY;
        for j in 0..self.ny {
            for i in 0..self.nx {
                if self.is_open(i, j) {
                    let d = self.cell_center(i, j).distance(p);
                    if d < best_d {
                        best_d = d;
                        best = (i, j);
                    }
                }
            }
        }
        best
    }

    /// Total quanta held by the field, `Σ C h² H`.
    pub fn mass(&self) -> f64 {
        let vol = self.h * self.h * self.height;
        self.conc.iter().sum::<f64>() * vol
    }

    pub fn max_value(&self) -> f64 {
        self.conc.iter().copied().fold(0.0, f64::max)
    }

    /// Cell with the largest concentration; ties go to the lower index.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (k, &c) in self.conc.iter().enumerate() {
            if c > self.conc[best] {
                best = k;
            }
        }
        (best % self.nx, best / self.nx)
    }

    fn link_open(&self, i: usize, j: usize, di: isize, dj: isize) -> bool {
        let (ni, nj) = (i as isize + di, j as isize + dj);
        if ni < 0 || nj < 0 || ni >= self.nx as isize || nj >= self.ny as isize {
            return false;
        }
        let (ni, nj) = (ni as usize, nj as usize);
        if !self.is_open(ni, nj) {
            return false;
        }
        let wall = match (di, dj) {
            (1, 0) => self.wall_east[self.index(i, j)],
            (-1, 0) => self.wall_east[self.index(ni, nj)],
            (0, 1) => self.wall_north[self.index(i, j)],
            (0, -1) => self.wall_north[self.index(ni, nj)],
            _ => unreachable!("only axis neighbors are linked"),
        };
        !wall
    }

    /// Whether `(ti, tj)` is an open cell reachable from open cell `(i, j)`
    /// within one step, diagonals through either side neighbor.
    fn adjacent_reachable(&self, i: usize, j: usize, ti: usize, tj: usize) -> bool {
        let di = ti as isize - i as isize;
        let dj = tj as isize - j as isize;
        match (di, dj) {
            (0, 0) => self.is_open(i, j),
            (_, 0) | (0, _) => self.link_open(i, j, di, dj),
            _ => {
                let via_x = self.link_open(i, j, di, 0) && self.link_open(ti, j, 0, dj);
                let via_y = self.link_open(i, j, 0, dj) && self.link_open(i, tj, di, 0);
                via_x || via_y
            }
        }
    }
}

/// Adds `rate · dt` quanta to the cell containing `p`.
pub fn deposit_source(
    field: &mut GridField,
    p: Point2,
    rate: f64,
    dt: f64,
) -> Result<(), AerosolError> {
    let (i, j) = field.cell_of(p).ok_or(AerosolError::OutOfBounds(p))?;
    if !field.is_open(i, j) {
        return Err(AerosolError::SourceInBlockedCell(p));
    }
    deposit_into_cell(field, i, j, rate * dt);
    Ok(())
}

pub(crate) fn deposit_into_cell(field: &mut GridField, i: usize, j: usize, quanta: f64) {
    let k = field.index(i, j);
    field.conc[k] += quanta / (field.h * field.h * field.height);
}

/// Removes up to `quanta` from the cell holding `p` (or the nearest open
/// cell); returns the amount actually removed.
pub(crate) fn withdraw(field: &mut GridField, p: Point2, quanta: f64) -> f64 {
    let (i, j) = match field.cell_of(p) {
        Some((i, j)) if field.is_open(i, j) => (i, j),
        _ => field.nearest_open_cell(p),
    };
    let k = field.index(i, j);
    let vol = field.h * field.h * field.height;
    let taken = quanta.min(field.conc[k] * vol);
    field.conc[k] -= taken / vol;
    if field.conc[k] < 0.0 {
        field.conc[k] = 0.0;
    }
    taken
}

/// One explicit diffusion step followed by the exact decay factor.
pub fn step_field(
    field: &mut GridField,
    params: &PhysicsParams,
    dt: f64,
) -> Result<(), AerosolError> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(AerosolError::UnstableStep {
            dt,
            max: params.max_stable_dt(field.h),
        });
    }
    let max = params.max_stable_dt(field.h);
    if dt > max * (1.0 + 1e-12) {
        return Err(AerosolError::UnstableStep { dt, max });
    }
    let decay = (-params.loss_rate() * dt).exp();
    let r = params.diffusion * dt / (field.h * field.h);
    let nx = field.nx;

    let mut next = std::mem::take(&mut field.scratch);
    {
        let f: &GridField = field;
        next.par_chunks_mut(nx).enumerate().for_each(|(j, row)| {
            for (i, out) in row.iter_mut().enumerate() {
                let k = j * nx + i;
                if f.mask[k] == CellKind::Blocked {
                    *out = 0.0;
                    continue;
                }
                let c = f.conc[k];
                let mut lap = 0.0;
                // Closed links mirror the cell's own value: zero flux.
                for (di, dj) in [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)] {
                    if f.link_open(i, j, di, dj) {
                        let n = (j as isize + dj) as usize * nx + (i as isize + di) as usize;
                        lap += f.conc[n] - c;
                    }
                }
                *out = (c + r * lap) * decay;
            }
        });
    }
    field.scratch = std::mem::replace(&mut field.conc, next);
    Ok(())
}

/// Bilinear interpolation over the four surrounding cell centers, skipping
/// blocked cells and cells cut off from `p`'s own cell by a wall.
pub fn sample_field(field: &GridField, p: Point2) -> Result<f64, AerosolError> {
    let (hi, hj) = field.cell_of(p).ok_or(AerosolError::OutOfBounds(p))?;
    let fx = (p.x - field.origin.x) / field.h - 0.5;
    let fy = (p.y - field.origin.y) / field.h - 0.5;
    let i0 = fx.floor();
    let j0 = fy.floor();
    let tx = fx - i0;
    let ty = fy - j0;
    let home_open = field.is_open(hi, hj);

    let mut acc = 0.0;
    let mut wsum = 0.0;
    for (di, dj, w) in [
        (0, 0, (1.0 - tx) * (1.0 - ty)),
        (1, 0, tx * (1.0 - ty)),
        (0, 1, (1.0 - tx) * ty),
        (1, 1, tx * ty),
    ] {
        let ci = i0 as i64 + di;
        let cj = j0 as i64 + dj;
        if w == 0.0 || ci < 0 || cj < 0 || ci >= field.nx as i64 || cj >= field.ny as i64 {
            continue;
        }
        let (ci, cj) = (ci as usize, cj as usize);
        if !field.is_open(ci, cj) {
            continue;
        }
        if home_open && !field.adjacent_reachable(hi, hj, ci, cj) {
            continue;
        }
        acc += w * field.value(ci, cj);
        wsum += w;
    }
    if wsum > 0.0 {
        return Ok(acc / wsum);
    }
    let (i, j) = if home_open {
        (hi, hj)
    } else {
        field.nearest_open_cell(p)
    };
    Ok(field.value(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    fn open_grid(nx: usize, ny: usize, h: f64) -> GridField {
        GridField::from_mask(
            nx,
            ny,
            h,
            Point2::new(0.0, 0.0),
            3.0,
            vec![CellKind::Open; nx * ny],
        )
        .unwrap()
    }

    fn diffusion_only(d: f64) -> PhysicsParams {
        PhysicsParams {
            diffusion: d,
            decay_rate: 0.0,
            ach: 0.0,
            ..PhysicsParams::default()
        }
    }

    #[test]
    fn rasterize_unit_square() {
        let face = FaceWithHoles::without_holes(Polygon::rect(0.0, 0.0, 1.0, 1.0).unwrap());
        let m = rasterize_mask(&face, 10, 10, 0.1, Point2::new(0.0, 0.0)).unwrap();
        assert_eq!(m.iter().filter(|&&c| c == CellKind::Open).count(), 100);
    }

    #[test]
    fn rasterize_with_hole_blocks_centers_inside_it() {
        let face = FaceWithHoles::new(
            Polygon::rect(0.0, 0.0, 1.0, 1.0).unwrap(),
            vec![Polygon::rect(0.4, 0.4, 0.6, 0.6).unwrap()],
        )
        .unwrap();
        let m = rasterize_mask(&face, 10, 10, 0.1, Point2::new(0.0, 0.0)).unwrap();
        // Oracle: enumerate cell centers against the hole directly.
        let mut expected = Vec::new();
        for j in 0..10 {
            for i in 0..10 {
                let (x, y) = ((i as f64 + 0.5) * 0.1, (j as f64 + 0.5) * 0.1);
                if x > 0.4 && x < 0.6 && y > 0.4 && y < 0.6 {
                    expected.push(j * 10 + i);
                }
            }
        }
        let blocked: Vec<usize> = (0..100).filter(|&k| m[k] == CellKind::Blocked).collect();
        assert_eq!(blocked, expected);
        assert_eq!(blocked.len(), 4);
    }

    #[test]
    fn rasterize_far_away_face_is_empty() {
        let face = FaceWithHoles::without_holes(Polygon::rect(50.0, 50.0, 51.0, 51.0).unwrap());
        assert_eq!(
            rasterize_mask(&face, 10, 10, 0.1, Point2::new(0.0, 0.0)),
            Err(AerosolError::EmptyDomain)
        );
    }

    #[test]
    fn deposit_examples() {
        let mut f = GridField::from_mask(
            2,
            1,
            1.0,
            Point2::new(0.0, 0.0),
            3.0,
            vec![CellKind::Open, CellKind::Blocked],
        )
        .unwrap();
        deposit_source(&mut f, Point2::new(0.5, 0.5), 1.0, 1.0).unwrap();
        assert_eq!(f.value(0, 0), 1.0 / 3.0);
        let before = f.clone();
        deposit_source(&mut f, Point2::new(0.2, 0.2), 0.0, 1.0).unwrap();
        assert_eq!(f, before);
        assert_eq!(
            deposit_source(&mut f, Point2::new(1.5, 0.5), 1.0, 1.0),
            Err(AerosolError::SourceInBlockedCell(Point2::new(1.5, 0.5)))
        );
    }

    #[test]
    fn uniform_field_is_stationary() {
        let mut f = open_grid(8, 6, 0.5);
        for j in 0..6 {
            for i in 0..8 {
                f.set_value(i, j, 2.5);
            }
        }
        let p = diffusion_only(0.05);
        for _ in 0..50 {
            step_field(&mut f, &p, 1.0).unwrap();
        }
        assert!(f.concentrations().iter().all(|&c| c == 2.5));
    }

    #[test]
    fn decay_only_halves_exactly() {
        let mut f = open_grid(3, 3, 1.0);
        f.set_value(1, 1, 8.0);
        let p = PhysicsParams {
            diffusion: 0.0,
            decay_rate: std::f64::consts::LN_2,
            ach: 0.0,
            ..PhysicsParams::default()
        };
        step_field(&mut f, &p, 1.0).unwrap();
        assert_eq!(f.value(1, 1), 4.0);
    }

    #[test]
    fn impulse_conserves_mass_in_sealed_box() {
        let mut f = open_grid(9, 9, 0.5);
        f.set_value(4, 4, 1.0);
        let p = diffusion_only(0.05);
        let m0 = f.mass();
        for _ in 0..200 {
            step_field(&mut f, &p, 1.0).unwrap();
            assert!(((f.mass() - m0) / m0).abs() < 1e-12);
        }
    }

    #[test]
    fn unstable_step_is_rejected() {
        let mut f = open_grid(3, 3, 0.5);
        let p = diffusion_only(1.0);
        // Limit is 0.9 * 0.25 / 4 = 0.05625 s.
        assert!(matches!(
            step_field(&mut f, &p, 0.06),
            Err(AerosolError::UnstableStep { .. })
        ));
        assert!(step_field(&mut f, &p, 0.056).is_ok());
    }

    #[test]
    fn sampling_examples() {
        let mut f = open_grid(2, 2, 1.0);
        f.set_value(0, 0, 2.0);
        f.set_value(1, 0, 4.0);
        assert_eq!(sample_field(&f, Point2::new(0.5, 0.5)).unwrap(), 2.0);
        assert_eq!(
            sample_field(&f, Point2::new(3.0, 0.5)),
            Err(AerosolError::OutOfBounds(Point2::new(3.0, 0.5)))
        );

        let mut g = GridField::from_mask(
            2,
            2,
            1.0,
            Point2::new(0.0, 0.0),
            3.0,
            vec![
                CellKind::Open,
                CellKind::Open,
                CellKind::Blocked,
                CellKind::Blocked,
            ],
        )
        .unwrap();
        g.set_value(0, 0, 2.0);
        g.set_value(1, 0, 4.0);
        assert_eq!(sample_field(&g, Point2::new(1.0, 1.0)).unwrap(), 3.0);
    }

    #[test]
    fn walls_stop_diffusion_and_sampling() {
        let mut f = open_grid(4, 1, 1.0);
        let wall = Segment::new(Point2::new(2.0, -1.0), Point2::new(2.0, 2.0)).unwrap();
        f.apply_barriers(&[wall]);
        f.set_value(0, 0, 1.0);
        let p = diffusion_only(0.2);
        for _ in 0..100 {
            step_field(&mut f, &p, 1.0).unwrap();
        }
        assert_eq!(f.value(2, 0), 0.0);
        assert_eq!(f.value(3, 0), 0.0);
        assert!(f.value(1, 0) > 0.0);
        // Just left of the wall only the left cells are averaged.
        let s = sample_field(&f, Point2::new(1.9, 0.5)).unwrap();
        assert_eq!(s, f.value(1, 0));
    }

    #[test]
    fn emission_ordering_warning() {
        let mut p = PhysicsParams::default();
        assert!(p.validate().unwrap().is_empty());
        p.emission.resting = 1.0;
        assert!(!p.validate().unwrap().is_empty());
        p.mask_inhale.n95 = 1.5;
        assert!(p.validate().is_err());
    }
}
