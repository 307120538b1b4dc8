//! Mod-2 chains of geometric simplices and of polytopes.
//!
//! A chain is a finite *set* of simplices: inserting a simplex that is
//! already present removes it, so symmetric difference is chain addition.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geom::{
    intersect_polytopes, placing_triangulation, refine_arrangement, refine_arrangement_with_origins,
    GeomError, GeomSimplex, Point, Polytope, DEFAULT_ARRANGEMENT_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("expected a {expected}-simplex, found dimension {found}")]
    SimplexDim { expected: usize, found: usize },
    #[error("expected ambient dimension {expected}, found {found}")]
    Ambient { expected: usize, found: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    ambient: usize,
    simplices: BTreeSet<GeomSimplex>,
}

impl Chain {
    pub fn empty(dim: usize, ambient: usize) -> Self {
        Chain { dim, ambient, simplices: BTreeSet::new() }
    }

    pub fn from_simplices<I>(dim: usize, ambient: usize, simplices: I) -> Result<Self, ChainError>
    where
        I: IntoIterator<Item = GeomSimplex>,
    {
        let mut c = Chain::empty(dim, ambient);
        for s in simplices {
            c.toggle(s)?;
        }
        Ok(c)
    }

    /// Builds a chain from raw vertex lists, validating each simplex.
    pub fn from_vertex_lists(dim: usize, ambient: usize, lists: Vec<Vec<Point>>) -> Result<Self, ChainError> {
        let simplices = lists
            .into_iter()
            .map(GeomSimplex::new)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_simplices(dim, ambient, simplices)
    }

    /// Adds `s` mod 2: present simplices are removed.
    pub fn toggle(&mut self, s: GeomSimplex) -> Result<(), ChainError> {
        if s.dim() != self.dim {
            return Err(ChainError::SimplexDim { expected: self.dim, found: s.dim() });
        }
        if s.ambient_dim() != self.ambient {
            return Err(ChainError::Ambient { expected: self.ambient, found: s.ambient_dim() });
        }
        if !self.simplices.remove(&s) {
            self.simplices.insert(s);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeomSimplex> {
        self.simplices.iter()
    }

    pub fn contains(&self, s: &GeomSimplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn symmetric_difference(&self, other: &Chain) -> Chain {
        assert_eq!((self.dim, self.ambient), (other.dim, other.ambient));
        Chain {
            dim: self.dim,
            ambient: self.ambient,
            simplices: self.simplices.symmetric_difference(&other.simplices).cloned().collect(),
        }
    }

    pub fn vertices(&self) -> BTreeSet<Point> {
        self.simplices.iter().flat_map(|s| s.vertices().iter().cloned()).collect()
    }

    /// Faces of codimension one lying in an odd number of simplices. There
    /// are no (-1)-simplices, so a 0-chain has empty boundary.
    pub fn boundary(&self) -> Chain {
        let dim = self.dim.saturating_sub(1);
        let mut out = Chain::empty(dim, self.ambient);
        if self.dim == 0 {
            return out;
        }
        for s in &self.simplices {
            for f in s.facets() {
                if !out.simplices.remove(&f) {
                    out.simplices.insert(f);
                }
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_empty()
    }

    /// A pair of simplices whose intersection is not their common face.
    pub fn simpliciality_witness(&self) -> Option<(GeomSimplex, GeomSimplex)> {
        let all: Vec<&GeomSimplex> = self.simplices.iter().collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                if !meet_in_common_face(a, b) {
                    return Some(((*a).clone(), (*b).clone()));
                }
            }
        }
        None
    }

    pub fn is_simplicial(&self) -> bool {
        self.simpliciality_witness().is_none()
    }

    pub fn polytopes(&self) -> Vec<Polytope> {
        self.simplices.iter().map(|s| s.polytope().clone()).collect()
    }

    /// The simplices as a polytope chain of the same dimension.
    pub fn to_polytope_chain(&self) -> PolytopeChain {
        PolytopeChain { dim: self.dim, ambient: self.ambient, cells: self.polytopes() }
    }
}

pub(crate) fn meet_in_common_face(a: &GeomSimplex, b: &GeomSimplex) -> bool {
    let common: Vec<Point> = a.vertices().iter().filter(|v| b.vertices().contains(v)).cloned().collect();
    match intersect_polytopes(a.polytope(), b.polytope()) {
        None => true,
        Some(x) => !common.is_empty() && x == Polytope::hull_unchecked(common),
    }
}

pub fn vertices_of(c: &Chain) -> BTreeSet<Point> {
    c.vertices()
}

pub fn boundary(c: &Chain) -> Chain {
    c.boundary()
}

pub fn is_cycle(c: &Chain) -> bool {
    c.is_cycle()
}

pub fn is_simplicial(c: &Chain) -> bool {
    c.is_simplicial()
}

/// Whether two chains cover the same points an odd number of times.
pub fn same_mod2_support(a: &Chain, b: &Chain) -> Result<bool, GeomError> {
    let mut ps = a.polytopes();
    let split = ps.len();
    ps.extend(b.polytopes());
    let cells = refine_arrangement_with_origins(&ps, 2 * DEFAULT_ARRANGEMENT_CAP)?;
    Ok(cells.iter().all(|(_, origins)| {
        let in_a = origins.iter().filter(|&&o| o < split).count();
        let in_b = origins.len() - in_a;
        in_a % 2 == in_b % 2
    }))
}

/// A finite set of polytopes of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeChain {
    pub dim: usize,
    pub ambient: usize,
    pub cells: Vec<Polytope>,
}

impl PolytopeChain {
    pub fn new(dim: usize, ambient: usize, cells: Vec<Polytope>) -> Result<Self, ChainError> {
        for c in &cells {
            if c.affine_dim() != dim {
                return Err(ChainError::SimplexDim { expected: dim, found: c.affine_dim() });
            }
            if c.ambient_dim() != ambient {
                return Err(ChainError::Ambient { expected: ambient, found: c.ambient_dim() });
            }
        }
        Ok(PolytopeChain { dim, ambient, cells })
    }
}

/// `([P:s], [P:s]^inc)` mod 2: how many cells have `s` as a face, and how
/// many contain `s` in their relative boundary.
pub fn incidence_counts(p: &PolytopeChain, s: &Polytope) -> Result<(u8, u8), ChainError> {
    if p.dim == 0 || s.affine_dim() + 1 != p.dim {
        return Err(ChainError::SimplexDim { expected: p.dim.wrapping_sub(1), found: s.affine_dim() });
    }
    let face = p.cells.iter().filter(|t| s.is_face_of(t)).count();
    let inc = p.cells.iter().filter(|t| s.in_boundary_of(t)).count();
    Ok(((face % 2) as u8, (inc % 2) as u8))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LemmaError {
    #[error("hypothesis 1 fails for cells {first} and {second}: they meet in {intersection:?}")]
    Overlap { first: usize, second: usize, intersection: Polytope },
    #[error("hypothesis 2 fails at {cell:?}: it lies on the boundary of an odd number of cells {cells:?}")]
    OddBoundary { cell: Polytope, cells: Vec<usize> },
    #[error("assembled chain is not a cycle")]
    NotACycle,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Checks both hypotheses of the polytope cycle lemma on `p` and, when they
/// hold, returns a simplicial cycle supported on the union of `p`.
///
/// The second hypothesis ranges over every codimension-one polytope; it is
/// checked on the facets of the common refinement of `p`, which suffices
/// because any polytope with odd boundary incidence contains such a facet
/// with odd incidence.
pub fn lemma_eq_cycle(p: &PolytopeChain) -> Result<Chain, LemmaError> {
    let c = p.dim;
    for (i, a) in p.cells.iter().enumerate() {
        for (j, b) in p.cells.iter().enumerate().skip(i + 1) {
            let Some(x) = intersect_polytopes(a, b) else { continue };
            if x.affine_dim() >= c || !x.in_boundary_of(a) || !x.in_boundary_of(b) {
                return Err(LemmaError::Overlap { first: i, second: j, intersection: x });
            }
        }
    }
    let refined = refine_arrangement(&p.cells)?;
    if c > 0 {
        let walls: BTreeSet<Polytope> = refined.iter().flat_map(|r| r.facets()).collect();
        for w in walls {
            let cells: Vec<usize> = (0..p.cells.len()).filter(|&t| w.in_boundary_of(&p.cells[t])).collect();
            if cells.len() % 2 == 1 {
                return Err(LemmaError::OddBoundary { cell: w, cells });
            }
        }
    }
    let mut out = Chain::empty(c, p.ambient);
    for cell in &refined {
        for s in placing_triangulation(cell) {
            out.toggle(s)?;
        }
    }
    if !out.is_cycle() {
        return Err(LemmaError::NotACycle);
    }
    Ok(out)
}
