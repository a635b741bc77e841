//! Small planar/spatial helpers shared by every stage of the pipeline.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use nalgebra::{Vector2, Vector3};

pub type V2 = Vector2<f64>;
pub type V3 = Vector3<f64>;

#[inline]
pub fn v2(x: f64, y: f64) -> V2 {
    V2::new(x, y)
}

#[inline]
pub fn cross2(a: V2, b: V2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Counterclockwise angle from `from` to `to`, in `[0, 2π)`.
pub fn angle_ccw(from: V2, to: V2) -> f64 {
    let a = cross2(from, to).atan2(from.dot(&to));
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Signed angle from `from` to `to`, in `(-π, π]`.
pub fn angle_signed(from: V2, to: V2) -> f64 {
    cross2(from, to).atan2(from.dot(&to))
}

pub fn rotate(v: V2, angle: f64) -> V2 {
    let (s, c) = angle.sin_cos();
    v2(c * v.x - s * v.y, s * v.x + c * v.y)
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_tau(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_pi(a: f64) -> f64 {
    let r = wrap_tau(a);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Orientation-preserving planar isometry `p ↦ R p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Iso2 {
    pub cos: f64,
    pub sin: f64,
    pub t: V2,
}

impl Iso2 {
    pub const IDENTITY: Iso2 = Iso2 {
        cos: 1.0,
        sin: 0.0,
        t: V2::new(0.0, 0.0),
    };

    pub fn new(angle: f64, t: V2) -> Self {
        let (sin, cos) = angle.sin_cos();
        Iso2 { cos, sin, t }
    }

    pub fn translation(t: V2) -> Self {
        Iso2 { t, ..Self::IDENTITY }
    }

    /// The isometry taking segment `(sa, sb)` onto `(ta, tb)`. Lengths are
    /// assumed equal; only the direction of `tb - ta` is used.
    pub fn from_segments(sa: V2, sb: V2, ta: V2, tb: V2) -> Self {
        let ds = (sb - sa).normalize();
        let dt = (tb - ta).normalize();
        let cos = ds.dot(&dt);
        let sin = cross2(ds, dt);
        let n = (cos * cos + sin * sin).sqrt();
        let (cos, sin) = (cos / n, sin / n);
        let r = v2(cos * sa.x - sin * sa.y, sin * sa.x + cos * sa.y);
        Iso2 { cos, sin, t: ta - r }
    }

    #[inline]
    pub fn apply_vec(&self, v: V2) -> V2 {
        v2(self.cos * v.x - self.sin * v.y, self.sin * v.x + self.cos * v.y)
    }

    #[inline]
    pub fn apply(&self, p: V2) -> V2 {
        self.apply_vec(p) + self.t
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &Iso2) -> Iso2 {
        Iso2 {
            cos: self.cos * inner.cos - self.sin * inner.sin,
            sin: self.sin * inner.cos + self.cos * inner.sin,
            t: self.apply(inner.t),
        }
    }

    pub fn inverse(&self) -> Iso2 {
        let inv = Iso2 {
            cos: self.cos,
            sin: -self.sin,
            t: V2::zeros(),
        };
        Iso2 {
            t: -inv.apply_vec(self.t),
            ..inv
        }
    }

    pub fn angle(&self) -> f64 {
        self.sin.atan2(self.cos)
    }
}

/// Signed area (positive for counterclockwise).
pub fn polygon_area(pts: &[V2]) -> f64 {
    let n = pts.len();
    let mut a = 0.0;
    for i in 0..n {
        a += cross2(pts[i], pts[(i + 1) % n]);
    }
    0.5 * a
}

pub fn polygon_area_3d(pts: &[V3]) -> f64 {
    let n = pts.len();
    let mut acc = V3::zeros();
    for i in 0..n {
        acc += pts[i].cross(&pts[(i + 1) % n]);
    }
    0.5 * acc.norm()
}

/// Closest point to `p` on segment `ab`, with its parameter in `[0, 1]`.
pub fn closest_on_segment(p: V2, a: V2, b: V2) -> (V2, f64) {
    let d = b - a;
    let len2 = d.norm_squared();
    if len2 == 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(&d) / len2).clamp(0.0, 1.0);
    (a + d * t, t)
}

/// Clips segment `ab` to the half-plane `{p : cross(dir, p - origin) >= 0}`.
fn clip_halfplane(a: V2, b: V2, origin: V2, dir: V2) -> Option<(V2, V2)> {
    let fa = cross2(dir, a - origin);
    let fb = cross2(dir, b - origin);
    if fa < 0.0 && fb < 0.0 {
        return None;
    }
    if fa >= 0.0 && fb >= 0.0 {
        return Some((a, b));
    }
    let t = fa / (fa - fb);
    let m = a + (b - a) * t;
    if fa < 0.0 {
        Some((m, b))
    } else {
        Some((a, m))
    }
}

/// Clips segment `ab` to the closed cone with apex `apex` spanned
/// counterclockwise from `lo` to `hi` (opening angle below π).
pub fn clip_to_cone(a: V2, b: V2, apex: V2, lo: V2, hi: V2) -> Option<(V2, V2)> {
    let (a, b) = clip_halfplane(a, b, apex, lo)?;
    let (a, b) = clip_halfplane(a, b, apex, -hi)?;
    Some((a, b))
}

/// Intersection of segments `p0p1` and `q0q1` in floating point: returns
/// the parameters `(s, t)` along each when they meet (closed segments).
/// Collinear overlaps return `None`.
pub fn segment_intersection(p0: V2, p1: V2, q0: V2, q1: V2, eps: f64) -> Option<(f64, f64)> {
    let r = p1 - p0;
    let s = q1 - q0;
    let den = cross2(r, s);
    let scale = r.norm() * s.norm();
    if den.abs() <= 1e-14 * scale {
        return None;
    }
    let qp = q0 - p0;
    let t = cross2(qp, s) / den;
    let u = cross2(qp, r) / den;
    let et = eps / r.norm().max(f64::MIN_POSITIVE);
    let eu = eps / s.norm().max(f64::MIN_POSITIVE);
    if t >= -et && t <= 1.0 + et && u >= -eu && u <= 1.0 + eu {
        Some((t.clamp(0.0, 1.0), u.clamp(0.0, 1.0)))
    } else {
        None
    }
}

/// Exact predicates on coordinates snapped to an integer grid.
pub mod exact {
    use super::*;

    /// Snaps coordinates to a grid of `unit` length and evaluates
    /// predicates in `i128`.
    #[derive(Debug, Clone, Copy)]
    pub struct Grid {
        unit: f64,
    }

    pub type IPoint = (i64, i64);

    impl Grid {
        /// Grid with cell size `1e-12 × extent`.
        pub fn for_points(pts: &[V2]) -> Grid {
            let mut lo = v2(f64::INFINITY, f64::INFINITY);
            let mut hi = v2(f64::NEG_INFINITY, f64::NEG_INFINITY);
            for p in pts {
                lo = lo.inf(p);
                hi = hi.sup(p);
            }
            let mut extent = (hi - lo).norm();
            for p in pts {
                extent = extent.max(p.x.abs()).max(p.y.abs());
            }
            Grid {
                unit: 1e-12 * extent.max(1e-300),
            }
        }

        pub fn snap(&self, p: V2) -> IPoint {
            ((p.x / self.unit).round() as i64, (p.y / self.unit).round() as i64)
        }
    }

    pub fn orient(a: IPoint, b: IPoint, c: IPoint) -> Ordering {
        let abx = (b.0 - a.0) as i128;
        let aby = (b.1 - a.1) as i128;
        let acx = (c.0 - a.0) as i128;
        let acy = (c.1 - a.1) as i128;
        (abx * acy - aby * acx).cmp(&0)
    }

    fn on_segment(a: IPoint, b: IPoint, p: IPoint) -> bool {
        p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
    }

    /// True when closed segments `ab` and `cd` share at least one point.
    pub fn segments_touch(a: IPoint, b: IPoint, c: IPoint, d: IPoint) -> bool {
        let o1 = orient(a, b, c);
        let o2 = orient(a, b, d);
        let o3 = orient(c, d, a);
        let o4 = orient(c, d, b);
        if o1 != Ordering::Equal && o2 != Ordering::Equal && o1 != o2 && o3 != Ordering::Equal && o4 != Ordering::Equal && o3 != o4 {
            return true;
        }
        (o1 == Ordering::Equal && on_segment(a, b, c))
            || (o2 == Ordering::Equal && on_segment(a, b, d))
            || (o3 == Ordering::Equal && on_segment(c, d, a))
            || (o4 == Ordering::Equal && on_segment(c, d, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn iso_from_segments_maps_endpoints() {
        let sa = v2(0.3, -1.0);
        let sb = v2(2.0, 0.5);
        let ta = v2(5.0, 5.0);
        let len = (sb - sa).norm();
        let tb = ta + rotate(v2(len, 0.0), 1.1);
        let iso = Iso2::from_segments(sa, sb, ta, tb);
        assert_relative_eq!((iso.apply(sa) - ta).norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((iso.apply(sb) - tb).norm(), 0.0, epsilon = 1e-12);
        let back = iso.inverse().after(&iso);
        assert_relative_eq!((back.apply(v2(3.0, 4.0)) - v2(3.0, 4.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn cone_clip() {
        let (a, b) = clip_to_cone(v2(-2.0, 1.0), v2(2.0, 1.0), V2::zeros(), v2(1.0, 1.0), v2(-1.0, 1.0)).unwrap();
        assert_relative_eq!(a.x, -1.0, epsilon = 1e-12);
        assert_relative_eq!(b.x, 1.0, epsilon = 1e-12);
        assert!(clip_to_cone(v2(-2.0, -1.0), v2(2.0, -1.0), V2::zeros(), v2(1.0, 1.0), v2(-1.0, 1.0)).is_none());
    }

    #[test]
    fn exact_touching() {
        use exact::*;
        assert!(segments_touch((0, 0), (10, 10), (0, 10), (10, 0)));
        assert!(segments_touch((0, 0), (10, 0), (10, 0), (20, 5)));
        assert!(!segments_touch((0, 0), (10, 0), (0, 1), (10, 1)));
        assert!(segments_touch((0, 0), (10, 0), (5, 0), (20, 0)));
        assert!(!segments_touch((0, 0), (10, 0), (11, 0), (20, 0)));
    }

    #[test]
    fn angles() {
        assert_relative_eq!(angle_ccw(v2(1.0, 0.0), v2(0.0, -1.0)), 1.5 * PI, epsilon = 1e-15);
        assert_relative_eq!(wrap_pi(3.0 * PI / 2.0), -PI / 2.0, epsilon = 1e-15);
    }
}
