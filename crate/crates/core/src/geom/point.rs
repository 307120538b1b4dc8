use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};

/// A point of R^d with exact rational coordinates.
///
/// The derived order is lexicographic on coordinates; it is the canonical
/// point order used by every deterministic construction in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    pub fn dot(&self, v: &[Rational]) -> Rational {
        dot(&self.0, v)
    }

    /// Average of a nonempty point list; a relative-interior point of its hull.
    pub fn centroid(points: &[Point]) -> Point {
        let n = rational::int(points.len() as i64);
        let dim = points[0].dim();
        let mut acc = vec![rational::zero(); dim];
        for p in points {
            for (a, c) in acc.iter_mut().zip(&p.0) {
                *a += c;
            }
        }
        Point(acc.into_iter().map(|a| a / &n).collect())
    }

    /// Affine combination `sum w_i p_i`; weights are not required to sum to one.
    pub fn combination(points: &[Point], weights: &[Rational]) -> Point {
        let dim = points[0].dim();
        let mut acc = vec![rational::zero(); dim];
        for (p, w) in points.iter().zip(weights) {
            for (a, c) in acc.iter_mut().zip(&p.0) {
                *a += c * w;
            }
        }
        Point(acc)
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(rational::format_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| rational::parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(Point)
    }
}
