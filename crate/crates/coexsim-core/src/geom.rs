//! Small geometric primitives: points, axis-aligned boxes and rectangles,
//! and the segment-intersection predicates the scenario and propagation
//! modules are built on.

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dist(self, o: Vec3) -> f64 {
        let (dx, dy, dz) = (self.x - o.x, self.y - o.y, self.z - o.z);
        libm::sqrt(dx * dx + dy * dy + dz * dz)
    }

    pub fn dist_2d(self, o: Vec3) -> f64 {
        let (dx, dy) = (self.x - o.x, self.y - o.y);
        libm::sqrt(dx * dx + dy * dy)
    }
}

/// Axis-aligned rectangle in the ground plane.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    pub fn contains_strict(&self, x: f64, y: f64) -> bool {
        x > self.x0 && x < self.x1 && y > self.y0 && y < self.y1
    }

    pub fn overlaps_strict(&self, o: &Rect) -> bool {
        self.x0 < o.x1 && o.x0 < self.x1 && self.y0 < o.y1 && o.y0 < self.y1
    }

    /// Euclidean distance from a point to the rectangle (0 inside).
    pub fn distance_to(&self, x: f64, y: f64) -> f64 {
        let dx = (self.x0 - x).max(0.0).max(x - self.x1);
        let dy = (self.y0 - y).max(0.0).max(y - self.y1);
        libm::sqrt(dx * dx + dy * dy)
    }

    /// True iff the 2-D segment a–b meets the *open* rectangle. Segments that
    /// only graze an edge or corner do not count, so boundary contact stays
    /// line-of-sight in the propagation classifier.
    pub fn segment_crosses_interior(&self, a: Vec3, b: Vec3) -> bool {
        if self.contains_strict(a.x, a.y) || self.contains_strict(b.x, b.y) {
            return true;
        }
        // Liang–Barsky clip against the closed rectangle, then test the
        // midpoint of the clipped span against the open interior.
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        for (p, q) in [
            (-dx, a.x - self.x0),
            (dx, self.x1 - a.x),
            (-dy, a.y - self.y0),
            (dy, self.y1 - a.y),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return false;
                }
                continue;
            }
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
            if t0 > t1 {
                return false;
            }
        }
        let tm = 0.5 * (t0 + t1);
        self.contains_strict(a.x + tm * dx, a.y + tm * dy)
    }
}

/// Axis-aligned 3-D box (an apartment).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Box3 {
    pub min: Vec3,
    pub max: Vec3,
}

impl Box3 {
    pub fn contains(&self, p: Vec3) -> bool {
        p.x >= self.min.x
            && p.x <= self.max.x
            && p.y >= self.min.y
            && p.y <= self.max.y
            && p.z >= self.min.z
            && p.z <= self.max.z
    }
}

/// Which coordinate a wall plane is normal to.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum WallAxis {
    X,
    Y,
}

/// A finite vertical wall: the plane `axis = coord` restricted to an extent
/// in the other horizontal coordinate and in z.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Wall {
    pub axis: WallAxis,
    pub coord: f64,
    /// extent in the in-plane horizontal coordinate (y for X-walls, x for Y-walls)
    pub h_lo: f64,
    pub h_hi: f64,
    pub z_lo: f64,
    pub z_hi: f64,
}

impl Wall {
    /// Strict crossing: the open segment a–b pierces the open wall rectangle.
    /// Running along the plane or touching its rim does not count.
    pub fn crossed_by(&self, a: Vec3, b: Vec3) -> bool {
        let (pa, pb, ha, hb) = match self.axis {
            WallAxis::X => (a.x, b.x, a.y, b.y),
            WallAxis::Y => (a.y, b.y, a.x, b.x),
        };
        let d = pb - pa;
        if d == 0.0 {
            return false;
        }
        let t = (self.coord - pa) / d;
        if t <= 0.0 || t >= 1.0 {
            return false;
        }
        let h = ha + t * (hb - ha);
        let z = a.z + t * (b.z - a.z);
        h > self.h_lo && h < self.h_hi && z > self.z_lo && z < self.z_hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vec3 {
        Vec3::new(x, y, 1.5)
    }

    #[test]
    fn segment_through_interior_crosses() {
        let r = Rect::new(10.0, 10.0, 20.0, 20.0);
        assert!(r.segment_crosses_interior(v(0.0, 15.0), v(30.0, 15.0)));
        assert!(r.segment_crosses_interior(v(15.0, 15.0), v(100.0, 15.0)));
    }

    #[test]
    fn grazing_edge_does_not_cross() {
        let r = Rect::new(10.0, 10.0, 20.0, 20.0);
        // collinear with the bottom edge
        assert!(!r.segment_crosses_interior(v(0.0, 10.0), v(30.0, 10.0)));
        // touching one corner only (anti-diagonal through (10,10))
        assert!(!r.segment_crosses_interior(v(0.0, 20.0), v(20.0, 0.0)));
        // fully outside
        assert!(!r.segment_crosses_interior(v(0.0, 9.0), v(30.0, 9.0)));
        // entering exactly at a corner but running through the interior
        // is still a crossing
        assert!(r.segment_crosses_interior(v(0.0, 0.0), v(30.0, 30.0)));
    }

    #[test]
    fn wall_crossing_is_strict() {
        let w = Wall {
            axis: WallAxis::X,
            coord: 10.0,
            h_lo: 0.0,
            h_hi: 10.0,
            z_lo: 0.0,
            z_hi: 3.0,
        };
        assert!(w.crossed_by(v(5.0, 5.0), v(15.0, 5.0)));
        // parallel in the plane
        assert!(!w.crossed_by(Vec3::new(10.0, 1.0, 1.0), Vec3::new(10.0, 9.0, 1.0)));
        // crosses the plane outside the wall's extent
        assert!(!w.crossed_by(v(5.0, 15.0), v(15.0, 15.0)));
        // endpoint on the plane → not a strict crossing
        assert!(!w.crossed_by(v(10.0, 5.0), v(15.0, 5.0)));
    }

    #[test]
    fn rect_distance() {
        let r = Rect::new(0.0, 0.0, 10.0, 10.0);
        assert_eq!(r.distance_to(5.0, 5.0), 0.0);
        assert_eq!(r.distance_to(13.0, 14.0), 5.0);
    }
}
