//! Closed interpolating splines as cubic Bézier chains.
//!
//! A closed curve through n points becomes n cubic segments using the
//! uniform Catmull-Rom construction: segment i runs from P_i to P_{i+1}
//! with control points
//!
//! ```text
//! C1 = P_i     + (1 - tension) * (P_{i+1} - P_{i-1}) / 6
//! C2 = P_{i+1} - (1 - tension) * (P_{i+2} - P_i)     / 6
//! ```
//!
//! indices cyclic. Tension 0 is the classic interpolating spline with C1
//! continuity at every junction; as tension approaches 1 the segments
//! flatten toward straight chords.

use crate::resolve::AbsPoint;
use thiserror::Error;

/// One cubic Bézier segment: endpoints `p0`/`p3`, control points `c1`/`c2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BezierSegment {
    pub p0: AbsPoint,
    pub c1: AbsPoint,
    pub c2: AbsPoint,
    pub p3: AbsPoint,
}

impl BezierSegment {
    /// Evaluates the cubic at parameter `t` in [0, 1] (Bernstein form).
    pub fn eval(&self, t: f64) -> AbsPoint {
        let u = 1.0 - t;
        let b0 = u * u * u;
        let b1 = 3.0 * u * u * t;
        let b2 = 3.0 * u * t * t;
        let b3 = t * t * t;
        AbsPoint::new(
            b0 * self.p0.x + b1 * self.c1.x + b2 * self.c2.x + b3 * self.p3.x,
            b0 * self.p0.y + b1 * self.c1.y + b2 * self.c2.y + b3 * self.p3.y,
        )
    }
}

/// An ordered run of cubic segments sharing endpoints; when closed, the
/// last segment ends exactly where the first begins.
#[derive(Clone, Debug, PartialEq)]
pub struct BezierChain {
    segments: Vec<BezierSegment>,
    closed: bool,
}

impl BezierChain {
    /// Builds a chain, checking that consecutive segments share endpoints
    /// exactly (and cyclically when closed).
    pub fn new(segments: Vec<BezierSegment>, closed: bool) -> Result<Self, SplineError> {
        if segments.is_empty() {
            return Err(SplineError::EmptyChain);
        }
        let n = segments.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            let end = segments[i].p3;
            let start = segments[(i + 1) % n].p0;
            if end != start {
                return Err(SplineError::DisjointSegments { index: i });
            }
        }
        Ok(BezierChain { segments, closed })
    }

    pub fn segments(&self) -> &[BezierSegment] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SplineError {
    #[error("closed spline needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("consecutive duplicate point at index {index}")]
    DuplicatePoint { index: usize },
    #[error("point at index {index} is not finite")]
    NonFinitePoint { index: usize },
    #[error("segments {index} and {} do not share an endpoint", index + 1)]
    DisjointSegments { index: usize },
    #[error("chain has no segments")]
    EmptyChain,
}

/// Fits a closed spline through `points` in order, one cubic segment per
/// point. `tension` in [0, 1) scales the tangent magnitudes; 0 gives the
/// plain interpolating curve.
pub fn closed_spline(points: &[AbsPoint], tension: f64) -> Result<BezierChain, SplineError> {
    debug_assert!((0.0..1.0).contains(&tension), "tension must be in [0, 1)");
    let n = points.len();
    if n < 3 {
        return Err(SplineError::TooFewPoints(n));
    }
    for (index, point) in points.iter().enumerate() {
        if !point.is_finite() {
            return Err(SplineError::NonFinitePoint { index });
        }
    }
    for index in 0..n {
        if points[index] == points[(index + 1) % n] {
            return Err(SplineError::DuplicatePoint { index });
        }
    }
    let scale = (1.0 - tension) / 6.0;
    let segments = (0..n)
        .map(|i| {
            let prev = points[(i + n - 1) % n];
            let p0 = points[i];
            let p3 = points[(i + 1) % n];
            let after = points[(i + 2) % n];
            BezierSegment {
                p0,
                c1: p0 + (p3 - prev) * scale,
                c2: p3 - (after - p0) * scale,
                p3,
            }
        })
        .collect();
    Ok(BezierChain { segments, closed: true })
}

/// Samples every segment at `samples_per_segment` uniform parameter steps.
///
/// Junction points are emitted once: a closed chain yields exactly
/// `segments * samples_per_segment` points, an open chain one more for the
/// final endpoint. The sample at t = 0 is the segment's start point,
/// bit-exact.
pub fn sample_chain(chain: &BezierChain, samples_per_segment: usize) -> Vec<AbsPoint> {
    assert!(samples_per_segment >= 1);
    let mut out = Vec::with_capacity(chain.len() * samples_per_segment + 1);
    for segment in chain.segments() {
        out.push(segment.p0);
        for j in 1..samples_per_segment {
            let t = j as f64 / samples_per_segment as f64;
            out.push(segment.eval(t));
        }
    }
    if !chain.closed {
        out.push(chain.segments().last().unwrap().p3);
    }
    out
}
