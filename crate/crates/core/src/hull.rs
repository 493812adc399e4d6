//! Convex hull of control points and the signed containment margin of a
//! sampled curve.

/// Relative tolerance for orientation tests.
const ORIENT_TOL: f64 = 1e-12;

type Point = (f64, f64);

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn dist(a: Point, b: Point) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    dist(p, (a.0 + t * dx, a.1 + t * dy))
}

/// Coordinate scale of a point set, at least 1.
fn extent(points: &[Point]) -> f64 {
    points
        .iter()
        .fold(1.0_f64, |acc, p| acc.max(p.0.abs()).max(p.1.abs()))
}

/// Convex hull in counter-clockwise order (monotone chain). Points within
/// `1e-12 * scale` of a hull edge are dropped, so a collinear set collapses
/// to its two extreme points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let tol = ORIENT_TOL * extent(&pts);

    let turns_left = |o: Point, a: Point, b: Point| cross(o, a, b) > tol * dist(o, b);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Hull of a point set, prepared for repeated margin queries.
#[derive(Debug, Clone)]
pub struct Hull {
    vertices: Vec<Point>,
    tol: f64,
}

impl Hull {
    pub fn new(points: &[Point]) -> Self {
        Self {
            vertices: convex_hull(points),
            tol: ORIENT_TOL * extent(points),
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// True when the hull has positive area.
    pub fn is_proper(&self) -> bool {
        self.vertices.len() >= 3
    }

    /// Signed distance from `p` to the hull boundary, positive inside.
    /// For a degenerate hull (segment or point) this is minus the distance
    /// to that segment.
    pub fn signed_distance(&self, p: Point) -> f64 {
        let v = &self.vertices;
        match v.len() {
            0 => f64::NEG_INFINITY,
            1 => -dist(p, v[0]),
            2 => -segment_distance(p, v[0], v[1]),
            n => {
                let mut inside = f64::INFINITY;
                let mut outside = false;
                for i in 0..n {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    let d = cross(a, b, p) / dist(a, b);
                    if d < 0.0 {
                        outside = true;
                        break;
                    }
                    inside = inside.min(d);
                }
                if !outside {
                    return inside;
                }
                -(0..n)
                    .map(|i| segment_distance(p, v[i], v[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// O(log n) test for points strictly inside the hull by more than the
    /// orientation tolerance. `false` means "not certainly inside".
    fn certainly_inside(&self, p: Point) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return false;
        }
        let margin = |a: Point, b: Point| cross(a, b, p) > self.tol * dist(a, b);
        if !margin(v[0], v[1]) || !margin(v[n - 1], v[0]) {
            return false;
        }
        // Find the fan wedge v[0], v[k], v[k+1] containing p.
        let (mut lo, mut hi) = (1, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if cross(v[0], v[mid], p) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        margin(v[lo], v[lo + 1])
    }

    /// Minimum signed distance over `samples` (positive = all inside).
    pub fn margin(&self, samples: &[Point]) -> f64 {
        let mut best = f64::INFINITY;
        for &p in samples {
            if best <= 0.0 && self.certainly_inside(p) {
                continue;
            }
            best = best.min(self.signed_distance(p));
        }
        best
    }
}

/// Minimal signed margin of `samples` with respect to the convex hull of
/// `control` (positive = inside).
pub fn hull_check(control: &[Point], samples: &[Point]) -> f64 {
    Hull::new(control).margin(samples)
}
