use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::point::Point;
use super::polytope::Polytope;
use super::position::affinely_independent;
use super::GeomError;

/// A nondegenerate geometric simplex; vertices are kept in lexicographic order.
#[derive(Clone)]
pub struct GeomSimplex {
    vertices: Vec<Point>,
    poly: OnceLock<Polytope>,
}

impl GeomSimplex {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, GeomError> {
        let first = vertices.first().ok_or(GeomError::EmptyPointSet)?;
        let d = first.dim();
        if let Some(p) = vertices.iter().find(|p| p.dim() != d) {
            return Err(GeomError::DimensionMismatch { expected: d, found: p.dim() });
        }
        vertices.sort();
        if !affinely_independent(&vertices) {
            return Err(GeomError::Degenerate(format!("{vertices:?} are affinely dependent")));
        }
        Ok(GeomSimplex { vertices, poly: OnceLock::new() })
    }

    pub(crate) fn new_unchecked(mut vertices: Vec<Point>) -> Self {
        vertices.sort();
        GeomSimplex { vertices, poly: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Codimension-one faces, each obtained by dropping one vertex.
    pub fn facets(&self) -> Vec<GeomSimplex> {
        if self.vertices.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|skip| {
                let vs = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                GeomSimplex { vertices: vs, poly: OnceLock::new() }
            })
            .collect()
    }

    pub fn polytope(&self) -> &Polytope {
        self.poly.get_or_init(|| Polytope::hull_unchecked(self.vertices.clone()))
    }

    pub fn barycenter(&self) -> Point {
        Point::centroid(&self.vertices)
    }
}

impl PartialEq for GeomSimplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}
impl Eq for GeomSimplex {}
impl Hash for GeomSimplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state)
    }
}
impl PartialOrd for GeomSimplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GeomSimplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl std::fmt::Debug for GeomSimplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Simplex{:?}", self.vertices)
    }
}

impl Serialize for GeomSimplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeomSimplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<Point>::deserialize(d)?;
        GeomSimplex::new(vs).map_err(serde::de::Error::custom)
    }
}
