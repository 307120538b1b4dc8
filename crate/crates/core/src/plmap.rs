//! Maps that are linear on each simplex of a realized triangulation,
//! position predicates relative to chains, resimplicialization of chains,
//! and preimages of cycles.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::chain::{lemma_eq_cycle, Chain, ChainError, LemmaError, PolytopeChain};
use crate::complex::{AbstractComplex, ComplexError};
use crate::geom::{
    affine_dim, general_position_witness, intersect_polytopes, one, placing_triangulation,
    refine_arrangement_counted_capped, solve_affine, strong_general_position_witness, zero, GeomError,
    GeomSimplex, Halfspace, Point, Polytope, Rational, DEFAULT_ARRANGEMENT_CAP, DEFAULT_SGP_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlmapError {
    #[error("domain must carry a geometric realization")]
    NotRealized,
    #[error("domain is empty")]
    EmptyDomain,
    #[error("domain facets must all have dimension {0}")]
    NotPure(usize),
    #[error("domain facet {0:?} is degenerate in its realization")]
    DegenerateFacet(Vec<usize>),
    #[error("{found} images given for {expected} vertices")]
    ImageCount { expected: usize, found: usize },
    #[error("images have mixed dimensions")]
    MixedTarget,
    #[error("domain has no mark named {0:?}")]
    MissingMark(String),
    #[error("point {0:?} lies outside the realized domain")]
    OutsideDomain(Point),
    #[error("domain is not a closed manifold triangulation")]
    NotClosed,
    #[error("chain dimension {c} must be below the target dimension {d}")]
    DimensionOrder { c: usize, d: usize },
    #[error("chain lives in R^{found}, map targets R^{expected}")]
    TargetMismatch { expected: usize, found: usize },
    #[error("image of facet {facet:?} meets the chain boundary simplex {simplex:?}")]
    TouchesBoundary { facet: Vec<usize>, simplex: GeomSimplex },
    #[error("position check failed: {0:?}")]
    Position(PositionReport),
    #[error("general position fails after resimplicialization at {simplex:?}, witness {witness:?}")]
    Postcondition { simplex: GeomSimplex, witness: Vec<Point> },
    #[error("piece over facet {facet} and simplex {simplex} has dimension {found}, expected {expected}")]
    PieceDim { facet: usize, simplex: usize, found: usize, expected: usize },
    #[error("pieces {first} and {second} ({case}) meet in dimension {found}, bound {bound}, or not along boundaries")]
    CaseClaim { case: &'static str, first: usize, second: usize, found: usize, bound: i64 },
    #[error("cell {cell:?} is contained in {count} pieces ({kind})")]
    Parity { cell: Polytope, count: usize, kind: &'static str },
    #[error(transparent)]
    Lemma(#[from] LemmaError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `f: |T| -> R^d`, linear on every simplex of the realized domain `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLMap {
    domain: AbstractComplex,
    images: Vec<Point>,
    n: usize,
    d: usize,
    m: usize,
}

/// Barycentric coordinates of `x` with respect to affinely independent
/// `vertices`, if `x` lies on their affine hull.
pub fn barycentric(vertices: &[Point], x: &Point) -> Option<Vec<Rational>> {
    let k = vertices.len();
    let mut eqs: Vec<(Vec<Rational>, Rational)> = (0..x.dim())
        .map(|i| (vertices.iter().map(|v| v[i].clone()).collect(), x[i].clone()))
        .collect();
    eqs.push((vec![one(); k], one()));
    let sol = solve_affine(&eqs, k)?;
    sol.basis.is_empty().then_some(sol.particular)
}

impl PLMap {
    pub fn new(domain: AbstractComplex, images: Vec<Point>) -> Result<Self, PlmapError> {
        let real = domain.realization().ok_or(PlmapError::NotRealized)?;
        if domain.facets().is_empty() {
            return Err(PlmapError::EmptyDomain);
        }
        if images.len() != domain.vertex_count() {
            return Err(PlmapError::ImageCount { expected: domain.vertex_count(), found: images.len() });
        }
        let n = domain.dim();
        if !domain.is_pure() {
            return Err(PlmapError::NotPure(n));
        }
        for f in domain.facets() {
            let pts: Vec<Point> = f.iter().map(|&v| real[v].clone()).collect();
            if affine_dim(&pts)? != n {
                return Err(PlmapError::DegenerateFacet(f.clone()));
            }
        }
        let d = images.first().map(Point::dim).unwrap_or(0);
        if images.iter().any(|p| p.dim() != d) {
            return Err(PlmapError::MixedTarget);
        }
        let m = domain.ambient_dim().unwrap_or(0);
        Ok(PLMap { domain, images, n, d, m })
    }

    /// The inclusion of a realized complex into its own ambient space.
    pub fn inclusion(domain: AbstractComplex) -> Result<Self, PlmapError> {
        let images = domain.realization().ok_or(PlmapError::NotRealized)?.to_vec();
        PLMap::new(domain, images)
    }

    pub fn domain(&self) -> &AbstractComplex {
        &self.domain
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn realized(&self, face: &[usize]) -> Vec<Point> {
        let r = self.domain.realization().expect("checked at construction");
        face.iter().map(|&v| r[v].clone()).collect()
    }

    fn imaged(&self, face: &[usize]) -> Vec<Point> {
        face.iter().map(|&v| self.images[v].clone()).collect()
    }

    pub fn evaluate(&self, x: &Point) -> Result<Point, PlmapError> {
        for f in self.domain.facets() {
            if let Some(l) = barycentric(&self.realized(f), x) {
                if l.iter().all(|t| !t.is_negative()) {
                    return Ok(Point::combination(&self.imaged(f), &l));
                }
            }
        }
        Err(PlmapError::OutsideDomain(x.clone()))
    }

    /// Images of the vertices that some facet uses.
    pub fn vertex_images(&self) -> Vec<Point> {
        self.domain.used_vertices().into_iter().map(|v| self.images[v].clone()).collect()
    }

    /// Image of the `k`-faces as a chain; degenerate images are an error.
    pub fn image_chain(&self, k: usize) -> Result<Chain, PlmapError> {
        let simplices = self
            .domain
            .faces(k)
            .iter()
            .map(|f| GeomSimplex::new(self.imaged(f)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Chain::from_simplices(k, self.d, simplices)?)
    }

    /// Image of each facet, as the convex hull of its vertex images.
    pub fn facet_images(&self) -> Vec<Polytope> {
        self.domain.facets().iter().map(|f| Polytope::hull_unchecked(self.imaged(f))).collect()
    }

    /// Image of a marked subcomplex of the domain, as a chain of its
    /// top-dimensional faces.
    pub fn mark_image(&self, name: &str) -> Result<Chain, PlmapError> {
        let sub = self.domain.mark(name).ok_or_else(|| PlmapError::MissingMark(name.to_string()))?;
        let k = sub.dim();
        let simplices = sub
            .faces(k)
            .iter()
            .map(|f| GeomSimplex::new(self.imaged(f)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Chain::from_simplices(k, self.d, simplices)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositionKind {
    General,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionReport {
    pub kind: PositionKind,
    pub holds: bool,
    /// A violating point set when `holds` is false.
    pub witness: Option<Vec<Point>>,
}

impl PositionReport {
    fn ok(kind: PositionKind) -> Self {
        PositionReport { kind, holds: true, witness: None }
    }

    fn fail(kind: PositionKind, witness: Vec<Point>) -> Self {
        PositionReport { kind, holds: false, witness: Some(witness) }
    }
}

/// Position of the point set `w` relative to the chain `c`.
pub fn position_of_points(
    w: &[Point],
    c: &Chain,
    kind: PositionKind,
    cap: usize,
) -> Result<PositionReport, GeomError> {
    let d = c.ambient();
    match kind {
        PositionKind::Strong => {
            let vc = c.vertices();
            if let Some(p) = w.iter().find(|p| vc.contains(p)) {
                return Ok(PositionReport::fail(kind, vec![p.clone()]));
            }
            let mut all: Vec<Point> = w.to_vec();
            all.extend(vc);
            if let Some(dup) = all.iter().duplicates().next() {
                return Ok(PositionReport::fail(kind, vec![dup.clone()]));
            }
            Ok(match strong_general_position_witness(&all, d, cap)? {
                None => PositionReport::ok(kind),
                Some(blocks) => {
                    let pts = blocks.iter().flatten().map(|&i| all[i].clone()).collect();
                    PositionReport::fail(kind, pts)
                }
            })
        }
        PositionKind::General => {
            for s in c.iter() {
                if let Some(v) = s.vertices().iter().find(|v| w.contains(v)) {
                    return Ok(PositionReport::fail(kind, vec![v.clone()]));
                }
                let mut all = s.vertices().to_vec();
                all.extend(w.iter().cloned());
                if let Some(dup) = all.iter().duplicates().next() {
                    return Ok(PositionReport::fail(kind, vec![dup.clone()]));
                }
                if let Some(idx) = general_position_witness(&all, d)? {
                    return Ok(PositionReport::fail(kind, idx.iter().map(|&i| all[i].clone()).collect()));
                }
            }
            Ok(PositionReport::ok(kind))
        }
    }
}

pub fn position_wrt_chain(f: &PLMap, c: &Chain, kind: PositionKind) -> Result<PositionReport, GeomError> {
    position_of_points(&f.vertex_images(), c, kind, DEFAULT_SGP_CAP)
}

/// Replaces `c` by a simplicial chain with the same mod-2 support such that
/// `u` is in general position with respect to it. Requires `u` to be in
/// strong general position with respect to `c`.
pub fn resimplicialize(c: &Chain, u: &[Point]) -> Result<Chain, PlmapError> {
    resimplicialize_capped(c, u, DEFAULT_SGP_CAP)
}

pub fn resimplicialize_capped(c: &Chain, u: &[Point], cap: usize) -> Result<Chain, PlmapError> {
    let pre = position_of_points(u, c, PositionKind::Strong, cap)?;
    if !pre.holds {
        return Err(PlmapError::Position(pre));
    }
    let out = if c.is_simplicial() {
        c.clone()
    } else {
        let cells = refine_arrangement_counted_capped(&c.polytopes(), DEFAULT_ARRANGEMENT_CAP)?;
        let mut out = Chain::empty(c.dim(), c.ambient());
        for (cell, count) in cells {
            if count % 2 == 1 {
                for s in placing_triangulation(&cell) {
                    out.toggle(s)?;
                }
            }
        }
        out
    };
    let post = position_of_points(u, &out, PositionKind::General, cap)?;
    if !post.holds {
        let witness = post.witness.unwrap_or_default();
        let simplex = out
            .iter()
            .find(|s| {
                position_of_points(u, &Chain::from_simplices(c.dim(), c.ambient(), [(*s).clone()]).unwrap(), PositionKind::General, cap)
                    .map(|r| !r.holds)
                    .unwrap_or(true)
            })
            .cloned()
            .expect("some simplex fails");
        return Err(PlmapError::Postcondition { simplex, witness });
    }
    Ok(out)
}

/// One polytope `γ ∩ f⁻¹(σ)` of the preimage.
#[derive(Clone, Debug)]
pub struct Piece {
    pub facet: usize,
    pub simplex: usize,
    pub cell: Polytope,
    lambda: Polytope,
}

#[derive(Clone, Debug)]
pub struct PreimageReport {
    pub cycle: Chain,
    pub resimplicialized: Chain,
    pub pieces: Vec<Piece>,
    pub piece_dim: usize,
    pub wall_cells: usize,
    pub interior_cells: usize,
}

/// `γ ∩ f⁻¹(σ)` in barycentric coordinates of `γ`.
fn lambda_piece(images: &[Point], sigma: &Polytope) -> Option<Polytope> {
    let k = images.len();
    let rep = sigma.hrep();
    let pull = |a: &[Rational]| -> Vec<Rational> {
        images.iter().map(|w| w.coords().iter().zip(a).map(|(x, y)| x * y).sum()).collect()
    };
    let mut eqs: Vec<(Vec<Rational>, Rational)> = rep.equations.iter().map(|(a, b)| (pull(a), b.clone())).collect();
    eqs.push((vec![one(); k], one()));
    let mut ineqs: Vec<Halfspace> = rep.facets.iter().map(|h| Halfspace::new(pull(&h.normal), h.offset.clone())).collect();
    for i in 0..k {
        let mut e = vec![zero(); k];
        e[i] = -one();
        ineqs.push(Halfspace::new(e, zero()));
    }
    Polytope::from_hrep(k, &eqs, &ineqs)
}

pub fn preimage_cycle(f: &PLMap, c: &Chain) -> Result<Chain, PlmapError> {
    Ok(preimage_cycle_with_report(f, c)?.cycle)
}

/// The preimage pipeline with its intermediate data. Every structural claim
/// the construction relies on is checked and reported on failure.
pub fn preimage_cycle_with_report(f: &PLMap, c: &Chain) -> Result<PreimageReport, PlmapError> {
    let (n, d, cd) = (f.n, f.d, c.dim());
    if cd >= d {
        return Err(PlmapError::DimensionOrder { c: cd, d });
    }
    if c.ambient() != d {
        return Err(PlmapError::TargetMismatch { expected: d, found: c.ambient() });
    }
    if !f.domain.is_closed_pseudomanifold() {
        return Err(PlmapError::NotClosed);
    }
    let facets = f.domain.facets();
    let images = f.facet_images();
    for s in c.boundary().iter() {
        for (fi, img) in images.iter().enumerate() {
            if intersect_polytopes(img, s.polytope()).is_some() {
                return Err(PlmapError::TouchesBoundary { facet: facets[fi].clone(), simplex: s.clone() });
            }
        }
    }
    let cprime = resimplicialize(c, &f.vertex_images())?;
    let simplices: Vec<&GeomSimplex> = cprime.iter().collect();

    let expected = (cd + n).checked_sub(d);
    let mut pieces = Vec::new();
    for (gi, g) in facets.iter().enumerate() {
        let wimg = f.imaged(g);
        let vreal = f.realized(g);
        for (si, s) in simplices.iter().enumerate() {
            if !images[gi].bbox_overlaps(s.polytope()) {
                continue;
            }
            let Some(lambda) = lambda_piece(&wimg, s.polytope()) else { continue };
            if Some(lambda.affine_dim()) != expected {
                return Err(PlmapError::PieceDim {
                    facet: gi,
                    simplex: si,
                    found: lambda.affine_dim(),
                    expected: expected.unwrap_or(0),
                });
            }
            let pts = lambda.vertices().iter().map(|l| Point::combination(&vreal, l.coords())).collect();
            pieces.push(Piece { facet: gi, simplex: si, cell: Polytope::hull_unchecked(pts), lambda });
        }
    }
    let k = expected.unwrap_or(0);
    if pieces.is_empty() {
        return Ok(PreimageReport {
            cycle: Chain::empty(k, f.m),
            resimplicialized: cprime,
            pieces,
            piece_dim: k,
            wall_cells: 0,
            interior_cells: 0,
        });
    }

    check_case_claims(&pieces, k)?;
    let (wall_cells, interior_cells) = audit_parity(&pieces, k)?;

    let p = PolytopeChain::new(k, f.m, pieces.iter().map(|p| p.cell.clone()).collect())?;
    let cycle = lemma_eq_cycle(&p)?;
    Ok(PreimageReport { cycle, resimplicialized: cprime, pieces, piece_dim: k, wall_cells, interior_cells })
}

fn check_case_claims(pieces: &[Piece], k: usize) -> Result<(), PlmapError> {
    for (i, s) in pieces.iter().enumerate() {
        for (j, t) in pieces.iter().enumerate().skip(i + 1) {
            let Some(x) = intersect_polytopes(&s.cell, &t.cell) else { continue };
            let (case, bound) = match (s.facet == t.facet, s.simplex == t.simplex) {
                (true, _) => ("same facet", k as i64 - 1),
                (false, true) => ("same simplex", k as i64 - 1),
                (false, false) => ("different facet and simplex", k as i64 - 2),
            };
            let found = x.affine_dim();
            if found as i64 > bound || !x.in_boundary_of(&s.cell) || !x.in_boundary_of(&t.cell) {
                return Err(PlmapError::CaseClaim { case, first: i, second: j, found, bound });
            }
        }
    }
    Ok(())
}

/// Counts the pieces containing each codimension-one face of each piece.
/// Faces inside a codimension-one face of the domain must be shared by
/// exactly two pieces, all others by an even number.
fn audit_parity(pieces: &[Piece], k: usize) -> Result<(usize, usize), PlmapError> {
    if k == 0 {
        return Ok((0, 0));
    }
    let mut seen = BTreeSet::new();
    let (mut walls, mut interior) = (0, 0);
    for s in pieces {
        let lfacets = s.lambda.facets();
        let cfacets = s.cell.facets();
        for (lf, cf) in lfacets.iter().zip(cfacets) {
            if !seen.insert(cf.clone()) {
                continue;
            }
            let on_wall = (0..lf.ambient_dim()).any(|i| lf.vertices().iter().all(|v| v[i].is_zero()));
            let count = pieces.iter().filter(|t| t.cell.bbox_overlaps(&cf) && t.cell.contains_polytope(&cf)).count();
            if on_wall {
                walls += 1;
                if count != 2 {
                    return Err(PlmapError::Parity { cell: cf, count, kind: "wall" });
                }
            } else {
                interior += 1;
                if count % 2 == 1 {
                    return Err(PlmapError::Parity { cell: cf, count, kind: "interior" });
                }
            }
        }
    }
    Ok((walls, interior))
}
