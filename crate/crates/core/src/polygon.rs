//! Exact Newton polygons.
//!
//! A [`NewtonPolygon`] is a lower-convex piecewise-linear function stored as
//! its vertex list. Vertices are kept in canonical form: strictly increasing
//! `x`, and no vertex lies on the segment joining its neighbours, so two
//! polygons are equal as functions iff their vertex lists are equal.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::twist::TwistData;

pub type Point = (Rational, Rational);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Point>,
}

/// Outcome of comparing `A >= B` pointwise on a range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceReport {
    pub dominates: bool,
    /// Checked abscissae where `A(x) < B(x)`.
    pub violations: Vec<Rational>,
    /// Checked abscissae where `A(x) = B(x)`.
    pub contacts: Vec<Rational>,
    /// Every abscissa examined: integers and vertices of either polygon in range.
    pub checked: Vec<Rational>,
}

impl DominanceReport {
    pub fn touches_at(&self, x: &Rational) -> bool {
        self.contacts.contains(x)
    }

    /// True when `A = B` at every checked point.
    pub fn coincide(&self) -> bool {
        self.contacts.len() == self.checked.len()
    }
}

// (b - a) x (c - a) in the plane; positive means a left turn.
fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

impl NewtonPolygon {
    /// Lower convex hull of a point cloud. Points sharing an abscissa are
    /// collapsed to the lowest one.
    pub fn lower_hull(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup_by(|later, earlier| later.0 == earlier.0);
        let mut hull: Vec<Point> = Vec::with_capacity(pts.len());
        for pt in pts {
            while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &pt).is_positive() {
                hull.pop();
            }
            hull.push(pt);
        }
        Ok(Self { vertices: hull })
    }

    /// Polygon starting at `(0, 0)` whose segment `[n, n + 1]` has slope `slopes[n]`.
    pub fn from_slopes(slopes: &[Rational]) -> Result<Self> {
        if let Some(index) = slopes.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::NonConvexSlopes { index: index + 1 });
        }
        let mut vertices = alloc::vec![(int(0), int(0))];
        let mut y = int(0);
        for (n, s) in slopes.iter().enumerate() {
            y += s;
            let pt = (int(n as i64 + 1), y.clone());
            // drop the previous breakpoint when it is collinear
            if n > 0 && slopes[n - 1] == *s {
                vertices.pop();
            }
            vertices.push(pt);
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn start(&self) -> &Rational {
        &self.vertices[0].0
    }

    pub fn end(&self) -> &Rational {
        &self.vertices[self.vertices.len() - 1].0
    }

    /// Slopes between consecutive vertices; strictly increasing.
    pub fn slopes(&self) -> Vec<Rational> {
        self.vertices
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    /// Slope on each unit segment `[n, n + 1]` of an integer domain starting at 0.
    pub fn unit_slopes(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut n = int(0);
        while &n < self.end() {
            let next = &n + int(1);
            out.push(self.eval(&next).expect("in domain") - self.eval(&n).expect("in domain"));
            n = next;
        }
        out
    }

    /// Value at `x`, or `None` outside the domain.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        if x < self.start() || x > self.end() {
            return None;
        }
        let idx = self.vertices.partition_point(|v| &v.0 < x);
        let (x1, y1) = &self.vertices[idx];
        if x1 == x {
            return Some(y1.clone());
        }
        let (x0, y0) = &self.vertices[idx - 1];
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }

    /// Multiply all ordinates by `c >= 0`.
    pub fn scale(&self, c: &Rational) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::NegativeScale);
        }
        if c.is_zero() {
            let vertices = alloc::vec![
                (self.start().clone(), int(0)),
                (self.end().clone(), int(0)),
            ];
            let mut vertices = vertices;
            vertices.dedup();
            return Ok(Self { vertices });
        }
        let vertices = self.vertices.iter().map(|(x, y)| (x.clone(), y * c)).collect();
        Ok(Self { vertices })
    }

    /// Restrict to `[lo, hi]`, which must lie in the domain.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Result<Self> {
        let ylo = self.eval(lo).ok_or(Error::DomainMismatch)?;
        let yhi = self.eval(hi).ok_or(Error::DomainMismatch)?;
        let mut pts = alloc::vec![(lo.clone(), ylo)];
        pts.extend(self.vertices.iter().filter(|v| &v.0 > lo && &v.0 < hi).cloned());
        pts.push((hi.clone(), yhi));
        Self::lower_hull(&pts)
    }

    /// Pointwise comparison `self >= other` on `[lo, hi]`.
    ///
    /// The difference of two piecewise-linear functions is linear between the
    /// union of their breakpoints, so checking those (plus the integers, for the
    /// contact list) decides dominance exactly.
    pub fn compare(&self, other: &Self, lo: &Rational, hi: &Rational) -> Result<DominanceReport> {
        if lo > hi {
            return Err(Error::DomainMismatch);
        }
        for poly in [self, other] {
            if lo < poly.start() || hi > poly.end() {
                return Err(Error::DomainMismatch);
            }
        }
        let mut xs: BTreeSet<Rational> = BTreeSet::new();
        xs.insert(lo.clone());
        xs.insert(hi.clone());
        let mut n = lo.ceil();
        while &n <= hi {
            xs.insert(n.clone());
            n += int(1);
        }
        for v in self.vertices.iter().chain(other.vertices.iter()) {
            if &v.0 >= lo && &v.0 <= hi {
                xs.insert(v.0.clone());
            }
        }
        let mut report = DominanceReport {
            dominates: true,
            violations: Vec::new(),
            contacts: Vec::new(),
            checked: Vec::new(),
        };
        for x in xs {
            let a = self.eval(&x).expect("checked domain");
            let b = other.eval(&x).expect("checked domain");
            if a < b {
                report.dominates = false;
                report.violations.push(x.clone());
            } else if a == b {
                report.contacts.push(x.clone());
            }
            report.checked.push(x);
        }
        Ok(report)
    }
}

/// The arithmetic polygon on `[0, n_max]`: slope `ω(n)` on `[n, n + 1]`.
///
/// Non-monotone slopes are reported as [`Error::NonConvexSlopes`] rather than
/// silently hulled.
pub fn arithmetic_polygon(td: &TwistData, n_max: u64) -> Result<NewtonPolygon> {
    let slopes: Vec<Rational> = (0..n_max).map(|n| td.omega(n)).collect();
    NewtonPolygon::from_slopes(&slopes)
}

/// The infinite twisted Hodge polygon on `[0, n_max]`, with slopes
/// `(u_0 + ... + u_{b-1}) / (b d (p - 1)) + l / d`.
pub fn hodge_polygon(td: &TwistData, n_max: u64) -> NewtonPolygon {
    let base = crate::arith::rat(
        td.digit_sum_period() as i64,
        (td.b as u64 * td.d * (td.p - 1)) as i64,
    );
    let slopes: Vec<Rational> = (0..n_max)
        .map(|l| &base + crate::arith::rat(l as i64, td.d as i64))
        .collect();
    NewtonPolygon::from_slopes(&slopes).expect("Hodge slopes increase")
}
