//! Parametrized interferometer paths, all over t in [0, 1].

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec3::Vec3;

/// Straight segment from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraightSegment<T> {
    start: Vec3<T>,
    end: Vec3<T>,
}

impl<T: Scalar> StraightSegment<T> {
    pub fn new(start: Vec3<T>, end: Vec3<T>) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::invalid("segment endpoints must be finite"));
        }
        if start == end {
            return Err(Error::invalid("segment endpoints must be distinct"));
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> Vec3<T> {
        self.start
    }

    pub fn end(&self) -> Vec3<T> {
        self.end
    }
}

/// Circular arc in a plane parallel to the xy-plane, centered at `center`,
/// swept from `angle_start` to `angle_end` (radians, counterclockwise
/// positive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularArc<T> {
    center: Vec3<T>,
    radius: T,
    angle_start: T,
    angle_end: T,
}

impl<T: Scalar> CircularArc<T> {
    pub fn new(center: Vec3<T>, radius: T, angle_start: T, angle_end: T) -> Result<Self> {
        if !center.is_finite() || !angle_start.is_finite() || !angle_end.is_finite() {
            return Err(Error::invalid("arc parameters must be finite"));
        }
        if !radius.is_finite() || radius <= T::zero() {
            return Err(Error::invalid("radius must be positive"));
        }
        if angle_start == angle_end {
            return Err(Error::invalid("arc sweep must be nonzero"));
        }
        Ok(Self {
            center,
            radius,
            angle_start,
            angle_end,
        })
    }

    /// Full counterclockwise circle of given radius around `center`.
    pub fn full_circle(center: Vec3<T>, radius: T) -> Result<Self> {
        Self::new(center, radius, T::zero(), T::two() * T::PI())
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    fn sweep(&self) -> T {
        self.angle_end - self.angle_start
    }
}

/// Piecewise-straight path through at least two vertices. The parameter is
/// uniform in segment index, so corner k of n sits at t = k/n.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<T> {
    vertices: Vec<Vec3<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn new(vertices: Vec<Vec3<T>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::invalid("polyline needs at least two vertices"));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("polyline vertices must be finite"));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(
                "consecutive polyline vertices must be distinct",
            ));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vec3<T>] {
        &self.vertices
    }

    fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Tagged family of paths accepted by the quadrature and phase layers.
#[derive(Debug, Clone, PartialEq)]
pub enum PathSpec<T> {
    Segment(StraightSegment<T>),
    Arc(CircularArc<T>),
    Polyline(Polyline<T>),
}

impl<T: Scalar> From<StraightSegment<T>> for PathSpec<T> {
    fn from(s: StraightSegment<T>) -> Self {
        PathSpec::Segment(s)
    }
}

impl<T: Scalar> From<CircularArc<T>> for PathSpec<T> {
    fn from(a: CircularArc<T>) -> Self {
        PathSpec::Arc(a)
    }
}

impl<T: Scalar> From<Polyline<T>> for PathSpec<T> {
    fn from(p: Polyline<T>) -> Self {
        PathSpec::Polyline(p)
    }
}

fn check_param<T: Scalar>(t: T) -> Result<()> {
    if !t.is_finite() || t < T::zero() || t > T::one() {
        return Err(Error::domain("path parameter must lie in [0, 1]"));
    }
    Ok(())
}

impl<T: Scalar> PathSpec<T> {
    pub fn point_at(&self, t: T) -> Result<Vec3<T>> {
        check_param(t)?;
        Ok(match self {
            PathSpec::Segment(s) => s.start + (s.end - s.start) * t,
            PathSpec::Arc(a) => {
                let phi = a.angle_start + a.sweep() * t;
                a.center + Vec3::new(phi.cos(), phi.sin(), T::zero()) * a.radius
            }
            PathSpec::Polyline(p) => {
                let (k, local) = p.locate(t);
                p.vertices[k] + (p.vertices[k + 1] - p.vertices[k]) * local
            }
        })
    }

    /// Derivative of `point_at` with respect to t. At a polyline corner the
    /// right-hand segment wins.
    pub fn tangent_at(&self, t: T) -> Result<Vec3<T>> {
        check_param(t)?;
        Ok(match self {
            PathSpec::Segment(s) => s.end - s.start,
            PathSpec::Arc(a) => {
                let phi = a.angle_start + a.sweep() * t;
                Vec3::new(-phi.sin(), phi.cos(), T::zero()) * (a.radius * a.sweep())
            }
            PathSpec::Polyline(p) => {
                let (k, _) = p.locate(t);
                let n = T::from_usize(p.segment_count()).expect("segment count fits scalar");
                (p.vertices[k + 1] - p.vertices[k]) * n
            }
        })
    }

    /// Interior parameters where the tangent may jump; quadrature splits here.
    pub fn breakpoints(&self) -> Vec<T> {
        match self {
            PathSpec::Segment(_) | PathSpec::Arc(_) => Vec::new(),
            PathSpec::Polyline(p) => {
                let n = T::from_usize(p.segment_count()).expect("segment count fits scalar");
                (1..p.segment_count())
                    .map(|k| T::from_usize(k).expect("vertex index fits scalar") / n)
                    .collect()
            }
        }
    }

    /// Same geometry traversed the other way: point_at(t) of the reversal
    /// equals point_at(1 - t) of the original.
    pub fn reversed(&self) -> Self {
        match self {
            PathSpec::Segment(s) => PathSpec::Segment(StraightSegment {
                start: s.end,
                end: s.start,
            }),
            PathSpec::Arc(a) => PathSpec::Arc(CircularArc {
                center: a.center,
                radius: a.radius,
                angle_start: a.angle_end,
                angle_end: a.angle_start,
            }),
            PathSpec::Polyline(p) => {
                let mut vertices = p.vertices.clone();
                vertices.reverse();
                PathSpec::Polyline(Polyline { vertices })
            }
        }
    }

    /// Analytic arc length.
    pub fn length(&self) -> T {
        match self {
            PathSpec::Segment(s) => (s.end - s.start).norm(),
            PathSpec::Arc(a) => a.radius * a.sweep().abs(),
            PathSpec::Polyline(p) => {
                let mut sum = T::zero();
                for w in p.vertices.windows(2) {
                    sum = sum + (w[1] - w[0]).norm();
                }
                sum
            }
        }
    }
}

impl<T: Scalar> Polyline<T> {
    /// Segment index and local parameter for a global t in [0, 1].
    fn locate(&self, t: T) -> (usize, T) {
        let n = self.segment_count();
        let nf = T::from_usize(n).expect("segment count fits scalar");
        let scaled = t * nf;
        let mut k = scaled.floor().to_usize().unwrap_or(0);
        if k >= n {
            k = n - 1;
        }
        let kf = T::from_usize(k).expect("vertex index fits scalar");
        (k, scaled - kf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg() -> PathSpec<f64> {
        StraightSegment::new(Vec3::new(-30.0, 8.0, 0.0), Vec3::new(30.0, 8.0, 0.0))
            .unwrap()
            .into()
    }

    #[test]
    fn segment_interpolates_linearly() {
        let path = seg();
        assert_eq!(path.point_at(0.0).unwrap(), Vec3::new(-30.0, 8.0, 0.0));
        assert_eq!(path.point_at(0.5).unwrap(), Vec3::new(0.0, 8.0, 0.0));
        assert_eq!(path.point_at(1.0).unwrap(), Vec3::new(30.0, 8.0, 0.0));
        assert_eq!(path.tangent_at(0.25).unwrap(), Vec3::new(60.0, 0.0, 0.0));
    }

    #[test]
    fn arc_midpoint_sits_on_the_axis() {
        let arc: PathSpec<f64> = CircularArc::new(Vec3::zero(), 10.0, 0.0, core::f64::consts::PI)
            .unwrap()
            .into();
        let mid = arc.point_at(0.5).unwrap();
        assert!((mid - Vec3::new(0.0, 10.0, 0.0)).norm() < 1e-14);
        // Tangent at the start points along +y with speed r * sweep.
        let t0 = arc.tangent_at(0.0).unwrap();
        assert!((t0 - Vec3::new(0.0, 10.0 * core::f64::consts::PI, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn polyline_uses_right_hand_tangent_at_corners() {
        let p: PathSpec<f64> = Polyline::new(vec![
            Vec3::zero(),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 2.0, 0.0),
        ])
        .unwrap()
        .into();
        // Two segments; the corner sits at t = 0.5.
        assert_eq!(p.breakpoints(), vec![0.5]);
        assert_eq!(p.tangent_at(0.5).unwrap(), Vec3::new(0.0, 4.0, 0.0));
        assert_eq!(p.point_at(0.5).unwrap(), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(p.point_at(1.0).unwrap(), Vec3::new(1.0, 2.0, 0.0));
    }

    #[test]
    fn reversal_mirrors_the_parameter() {
        let paths: Vec<PathSpec<f64>> = vec![
            seg(),
            CircularArc::new(Vec3::new(1.0, 0.0, 0.0), 2.0, -0.5, 2.0)
                .unwrap()
                .into(),
            Polyline::new(vec![
                Vec3::zero(),
                Vec3::new(1.0, 1.0, 0.0),
                Vec3::new(3.0, 1.0, -1.0),
            ])
            .unwrap()
            .into(),
        ];
        for path in paths {
            let rev = path.reversed();
            for k in 0..=8 {
                let t = k as f64 / 8.0;
                let a = path.point_at(t).unwrap();
                let b = rev.point_at(1.0 - t).unwrap();
                assert!((a - b).norm() <= 1e-14 * (a.norm() + 1.0));
            }
            assert_eq!(path.length(), rev.length());
        }
    }

    #[test]
    fn parameters_outside_unit_interval_are_domain_errors() {
        let path = seg();
        assert!(path.point_at(-0.001).is_err());
        assert!(path.point_at(1.001).is_err());
        assert!(path.tangent_at(f64::NAN).is_err());
    }

    #[test]
    fn degenerate_constructions_are_rejected() {
        let p = Vec3::new(1.0, 2.0, 3.0);
        assert!(StraightSegment::new(p, p).is_err());
        assert!(CircularArc::new(Vec3::<f64>::zero(), 0.0, 0.0, 1.0).is_err());
        assert!(CircularArc::new(Vec3::<f64>::zero(), -2.0, 0.0, 1.0).is_err());
        assert!(CircularArc::new(Vec3::<f64>::zero(), 1.0, 0.7, 0.7).is_err());
        assert!(Polyline::new(vec![p]).is_err());
        assert!(Polyline::new(vec![p, p]).is_err());
    }

    #[test]
    fn analytic_lengths_are_exact_for_simple_shapes() {
        assert_eq!(seg().length(), 60.0);
        let arc: PathSpec<f64> = CircularArc::full_circle(Vec3::zero(), 10.0).unwrap().into();
        assert!((arc.length() - 20.0 * core::f64::consts::PI).abs() < 1e-13);
    }
}
