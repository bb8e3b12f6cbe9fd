//! Newton polygons of `φ`-expansions.

use super::InductiveVal;
use crate::arith::{Rat, Val};
use crate::error::Result;
use crate::poly::Poly;

/// A side of the lower hull, from abscissa `start` to `start + length`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub slope: Rat,
    pub start: usize,
    pub length: usize,
    /// Ordinate at `start`.
    pub height: Rat,
}

impl Side {
    pub fn end(&self) -> usize {
        self.start + self.length
    }

    /// Denominator of the slope.
    pub fn ramification(&self) -> usize {
        num_traits::ToPrimitive::to_usize(&self.slope.denom()).expect("small denominator")
    }

    /// Number of lattice segments, the degree of the side's residual polynomial.
    pub fn degree(&self) -> usize {
        self.length / self.ramification()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// `(s, μ(a_s))` for every nonzero coefficient.
    pub points: Vec<(usize, Val)>,
    pub hull: Vec<(usize, Rat)>,
    /// Sorted by increasing slope.
    pub sides: Vec<Side>,
}

impl NewtonPolygon {
    pub fn from_points(points: Vec<(usize, Val)>) -> NewtonPolygon {
        let finite: Vec<(usize, Rat)> =
            points.iter().filter_map(|(s, v)| v.finite().map(|r| (*s, r.clone()))).collect();
        let mut hull: Vec<(usize, Rat)> = Vec::new();
        for (s, v) in finite {
            // keep the lowest point per abscissa
            if let Some(last) = hull.last() {
                if last.0 == s {
                    if v < last.1 {
                        hull.pop();
                    } else {
                        continue;
                    }
                }
            }
            while hull.len() >= 2 {
                let (s1, v1) = &hull[hull.len() - 2];
                let (s2, v2) = &hull[hull.len() - 1];
                // drop the middle point unless it lies strictly below the chord
                let lhs = &(v2 - v1) * &Rat::from_int((s - s1) as i64);
                let rhs = &(&v - v1) * &Rat::from_int((s2 - s1) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((s, v));
        }
        let sides = hull
            .windows(2)
            .map(|w| {
                let (s1, v1) = &w[0];
                let (s2, v2) = &w[1];
                Side {
                    slope: &(v2 - v1) / &Rat::from_int((s2 - s1) as i64),
                    start: *s1,
                    length: s2 - s1,
                    height: v1.clone(),
                }
            })
            .collect();
        NewtonPolygon { points, hull, sides }
    }

    /// Sides of slope strictly below `-threshold`.
    pub fn principal_part(&self, threshold: &Val) -> Vec<Side> {
        self.sides
            .iter()
            .filter(|s| match threshold {
                Val::NegInf => true,
                Val::PosInf => false,
                Val::Finite(t) => s.slope < -t,
            })
            .cloned()
            .collect()
    }

    /// A single side of slope `lambda`.
    pub fn one_sided(&self, lambda: &Rat) -> bool {
        self.sides.len() == 1 && &self.sides[0].slope == lambda
    }

    pub fn length(&self) -> usize {
        match (self.hull.first(), self.hull.last()) {
            (Some(a), Some(b)) => b.0 - a.0,
            _ => 0,
        }
    }
}

impl InductiveVal {
    /// Polygon of the points `(s, μ(a_s))` over the `φ`-expansion of `f`.
    pub fn newton_polygon(&self, phi: &Poly, f: &Poly) -> Result<NewtonPolygon> {
        let exp = f.phi_expansion(phi)?;
        let points = exp.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(s, a)| (s, self.value(a))).collect();
        Ok(NewtonPolygon::from_points(points))
    }
}
