//! Convex polytopes held by their extreme points, with a lazily derived
//! half-space description used for membership, faces and intersections.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::linalg::{null_space, rank, rref, solve_affine, AffineFlat};
use super::point::{dot, Point};
use super::rational::Rational;
use super::GeomError;

/// `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    /// `normal . x - offset`; nonpositive inside.
    pub fn slack(&self, p: &Point) -> Rational {
        dot(&self.normal, p.coords()) - &self.offset
    }

    pub fn flipped(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset.clone(),
        }
    }

    /// Positive rescaling making the leading nonzero coefficient `+-1`.
    fn normalized(&self) -> Halfspace {
        match self.normal.iter().find(|x| !x.is_zero()) {
            Some(lead) => {
                let s = lead.abs();
                Halfspace {
                    normal: self.normal.iter().map(|x| x / &s).collect(),
                    offset: &self.offset / &s,
                }
            }
            None => self.clone(),
        }
    }
}

/// Equations of the affine hull plus one inequality per facet. Facet normals
/// are zero outside the hull's pivot coordinates, which makes each facet
/// hyperplane a canonical function of the polytope.
#[derive(Clone, Debug)]
pub struct HRep {
    pub equations: Vec<(Vec<Rational>, Rational)>,
    pub facets: Vec<Halfspace>,
}

#[derive(Clone)]
pub struct Polytope {
    vertices: Vec<Point>,
    affine_dim: usize,
    ambient_dim: usize,
    hrep: OnceLock<Arc<HRep>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}
impl Eq for Polytope {}
impl Hash for Polytope {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state)
    }
}
impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl std::fmt::Debug for Polytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polytope[dim {}]{:?}", self.affine_dim, self.vertices)
    }
}

impl Polytope {
    /// Convex hull of a nonempty point set; interior and repeated points are
    /// discarded.
    pub fn from_points(points: Vec<Point>) -> Result<Polytope, GeomError> {
        let first = points.first().ok_or(GeomError::EmptyPointSet)?;
        let ambient = first.dim();
        for p in &points {
            if p.dim() != ambient {
                return Err(GeomError::DimensionMismatch { expected: ambient, found: p.dim() });
            }
        }
        Ok(Self::hull_unchecked(points))
    }

    pub(crate) fn hull_unchecked(mut points: Vec<Point>) -> Polytope {
        points.sort();
        points.dedup();
        let ambient = points[0].dim();
        let flat = AffineFlat::hull(&points);
        let k = flat.dim();
        if k == 0 {
            let hrep = HRep { equations: flat.equations(), facets: Vec::new() };
            return Self::assemble(points, 0, ambient, hrep);
        }
        // Projection onto the pivot coordinates of the direction space is
        // injective on the hull, so facets can be found in R^k.
        let mut dirs: Vec<Vec<Rational>> =
            points[1..].iter().map(|p| (p - &points[0]).into_coords()).collect();
        let pivots = rref(&mut dirs, ambient);
        let local: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| pivots.iter().map(|&j| p[j].clone()).collect())
            .collect();
        let mut facets = BTreeSet::new();
        for subset in (0..local.len()).combinations(k) {
            let base = &local[subset[0]];
            let rows: Vec<Vec<Rational>> = subset[1..]
                .iter()
                .map(|&i| local[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            if rank(&rows) != k - 1 {
                continue;
            }
            let a = null_space(&rows, k).pop().expect("one-dimensional normal space");
            let b = dot(&a, base);
            let (mut pos, mut neg) = (false, false);
            for y in &local {
                match (dot(&a, y) - &b).cmp(&Rational::zero()) {
                    Ordering::Greater => pos = true,
                    Ordering::Less => neg = true,
                    Ordering::Equal => {}
                }
            }
            let h = match (pos, neg) {
                (true, true) => continue,
                (false, _) => Halfspace::new(a, b),
                (true, false) => Halfspace::new(a, b).flipped(),
            };
            facets.insert(h.normalized());
        }
        let facets: Vec<Halfspace> = facets.into_iter().collect();
        let extreme: Vec<Point> = points
            .iter()
            .zip(&local)
            .filter(|(_, y)| {
                let tight: Vec<Vec<Rational>> = facets
                    .iter()
                    .filter(|h| dot(&h.normal, y) == h.offset)
                    .map(|h| h.normal.clone())
                    .collect();
                rank(&tight) == k
            })
            .map(|(p, _)| p.clone())
            .collect();
        let lifted = facets
            .into_iter()
            .map(|h| {
                let mut normal = vec![Rational::zero(); ambient];
                for (c, &j) in h.normal.into_iter().zip(&pivots) {
                    normal[j] = c;
                }
                Halfspace::new(normal, h.offset)
            })
            .collect();
        let hrep = HRep { equations: flat.equations(), facets: lifted };
        Self::assemble(extreme, k, ambient, hrep)
    }

    fn assemble(vertices: Vec<Point>, affine_dim: usize, ambient_dim: usize, hrep: HRep) -> Polytope {
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(hrep));
        Polytope { vertices, affine_dim, ambient_dim, hrep: cell }
    }

    /// The polytope `{x : eqs, ineqs}`; `None` when empty. The region must be
    /// bounded.
    pub fn from_hrep(
        ambient: usize,
        equations: &[(Vec<Rational>, Rational)],
        inequalities: &[Halfspace],
    ) -> Option<Polytope> {
        let sol = solve_affine(equations, ambient)?;
        let e = sol.basis.len();
        let base = Point::new(sol.particular.clone());
        // inequalities in the parameters t of x = base + basis . t
        let mut reduced = BTreeSet::new();
        for h in inequalities {
            let coeffs: Vec<Rational> = sol.basis.iter().map(|v| dot(&h.normal, v)).collect();
            let rhs = &h.offset - dot(&h.normal, base.coords());
            if coeffs.iter().all(|c| c.is_zero()) {
                if rhs.is_negative() {
                    return None;
                }
                continue;
            }
            reduced.insert(Halfspace::new(coeffs, rhs).normalized());
        }
        let reduced: Vec<Halfspace> = reduced.into_iter().collect();
        let to_ambient = |t: &[Rational]| {
            let mut x = sol.particular.clone();
            for (v, tv) in sol.basis.iter().zip(t) {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += vi * tv;
                }
            }
            Point::new(x)
        };
        if e == 0 {
            return Some(Self::hull_unchecked(vec![base]));
        }
        let mut found = BTreeSet::new();
        for subset in (0..reduced.len()).combinations(e) {
            let eqs: Vec<(Vec<Rational>, Rational)> = subset
                .iter()
                .map(|&i| (reduced[i].normal.clone(), reduced[i].offset.clone()))
                .collect();
            let Some(s) = solve_affine(&eqs, e) else { continue };
            if !s.basis.is_empty() {
                continue;
            }
            let t = s.particular;
            if reduced.iter().all(|h| dot(&h.normal, &t) <= h.offset) {
                found.insert(t);
            }
        }
        if found.is_empty() {
            return None;
        }
        Some(Self::hull_unchecked(found.iter().map(|t| to_ambient(t)).collect()))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.affine_dim + 1
    }

    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            let p = Self::hull_unchecked(self.vertices.clone());
            p.hrep.get().expect("set by construction").clone()
        })
    }

    pub fn affine_hull(&self) -> AffineFlat {
        AffineFlat::from_equations(self.ambient_dim, &self.hrep().equations).expect("consistent")
    }

    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices)
    }

    pub fn bbox(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (i, c) in v.coords().iter().enumerate() {
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        (lo, hi)
    }

    pub fn bbox_overlaps(&self, other: &Polytope) -> bool {
        let (alo, ahi) = self.bbox();
        let (blo, bhi) = other.bbox();
        (0..self.ambient_dim).all(|i| alo[i] <= bhi[i] && blo[i] <= ahi[i])
    }

    fn on_hull(&self, p: &Point) -> bool {
        self.hrep().equations.iter().all(|(a, b)| dot(a, p.coords()) == *b)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.on_hull(p) && self.hrep().facets.iter().all(|h| !h.slack(p).is_positive())
    }

    pub fn contains_in_relint(&self, p: &Point) -> bool {
        if self.affine_dim == 0 {
            return *p == self.vertices[0];
        }
        self.on_hull(p) && self.hrep().facets.iter().all(|h| h.slack(p).is_negative())
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Indices of facets whose hyperplane passes through `p`.
    pub fn tight_facets(&self, p: &Point) -> Vec<usize> {
        self.hrep()
            .facets
            .iter()
            .enumerate()
            .filter(|(_, h)| h.slack(p).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `self` is a (possibly improper) face of `tau`: the smallest face
    /// of `tau` containing a relative-interior point of `self` has exactly
    /// `self`'s vertices.
    pub fn is_face_of(&self, tau: &Polytope) -> bool {
        if !self.vertices.iter().all(|v| tau.vertices.binary_search(v).is_ok()) {
            return false;
        }
        let tight = tau.tight_facets(&self.centroid());
        let facets = &tau.hrep().facets;
        let face: Vec<&Point> = tau
            .vertices
            .iter()
            .filter(|v| tight.iter().all(|&i| facets[i].slack(v).is_zero()))
            .collect();
        face.len() == self.vertices.len()
    }

    /// Whether `self` lies in the relative boundary of `tau`.
    pub fn in_boundary_of(&self, tau: &Polytope) -> bool {
        tau.affine_dim > 0 && tau.contains_polytope(self) && !tau.tight_facets(&self.centroid()).is_empty()
    }

    pub fn facets(&self) -> Vec<Polytope> {
        self.hrep()
            .facets
            .iter()
            .map(|h| {
                Self::hull_unchecked(self.vertices.iter().filter(|v| h.slack(v).is_zero()).cloned().collect())
            })
            .collect()
    }

    pub fn intersect(&self, other: &Polytope) -> Option<Polytope> {
        intersect_polytopes(self, other)
    }

    pub fn clip(&self, h: &Halfspace) -> Option<Polytope> {
        if self.vertices.iter().all(|v| !h.slack(v).is_positive()) {
            return Some(self.clone());
        }
        let rep = self.hrep();
        let mut ineqs = rep.facets.clone();
        ineqs.push(h.clone());
        Polytope::from_hrep(self.ambient_dim, &rep.equations, &ineqs)
    }

    /// Splits along the hyperplane `normal . x = offset` when it meets the
    /// relative interior with vertices strictly on both sides.
    pub fn split(&self, h: &Halfspace) -> Option<(Polytope, Polytope)> {
        let (mut pos, mut neg) = (false, false);
        for v in &self.vertices {
            match h.slack(v).cmp(&Rational::zero()) {
                Ordering::Greater => pos = true,
                Ordering::Less => neg = true,
                Ordering::Equal => {}
            }
        }
        if !(pos && neg) {
            return None;
        }
        let below = self.clip(h)?;
        let above = self.clip(&h.flipped())?;
        Some((below, above))
    }
}

/// Exact intersection of two polytopes in a common ambient space.
pub fn intersect_polytopes(a: &Polytope, b: &Polytope) -> Option<Polytope> {
    assert_eq!(a.ambient_dim, b.ambient_dim, "ambient dimensions differ");
    if a == b {
        return Some(a.clone());
    }
    if !a.bbox_overlaps(b) {
        return None;
    }
    let (ra, rb) = (a.hrep(), b.hrep());
    let mut eqs = ra.equations.clone();
    eqs.extend(rb.equations.iter().cloned());
    let mut ineqs = ra.facets.clone();
    ineqs.extend(rb.facets.iter().cloned());
    Polytope::from_hrep(a.ambient_dim, &eqs, &ineqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    fn poly(xs: &[&[i64]]) -> Polytope {
        Polytope::from_points(xs.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
    }

    fn unit_square() -> Polytope {
        poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let p = Polytope::from_points(vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[2, 0]),
            Point::from_ints(&[0, 2]),
            Point::from_ints(&[2, 2]),
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[1, 0]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.affine_dim(), 2);
        assert_eq!(p.hrep().facets.len(), 4);
        let seg = poly(&[&[0, 0, 0], &[1, 1, 1], &[3, 3, 3]]);
        assert_eq!(seg.vertices().len(), 2);
        assert_eq!(seg.affine_dim(), 1);
    }

    #[test]
    fn square_intersect_shifted_square() {
        let a = unit_square();
        let b = Polytope::from_points(
            a.vertices().iter().map(|v| v + &Point::new(vec![rat(1, 2), int(0)])).collect(),
        )
        .unwrap();
        let c = intersect_polytopes(&a, &b).unwrap();
        let expected = Polytope::from_points(vec![
            Point::new(vec![rat(1, 2), int(0)]),
            Point::new(vec![int(1), int(0)]),
            Point::new(vec![rat(1, 2), int(1)]),
            Point::new(vec![int(1), int(1)]),
        ])
        .unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.affine_dim(), 2);
    }

    #[test]
    fn disjoint_segments_and_identity() {
        let s = poly(&[&[0, 0], &[1, 0]]);
        let t = poly(&[&[0, 1], &[1, 2]]);
        assert!(intersect_polytopes(&s, &t).is_none());
        let tri = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 1]]);
        assert_eq!(intersect_polytopes(&tri, &tri).unwrap(), tri);
    }

    #[test]
    fn crossing_segments_meet_in_a_point() {
        let s = poly(&[&[0, 0], &[2, 2]]);
        let t = poly(&[&[0, 2], &[2, 0]]);
        let x = intersect_polytopes(&s, &t).unwrap();
        assert_eq!(x.affine_dim(), 0);
        assert_eq!(x.vertices(), &[Point::from_ints(&[1, 1])]);
    }

    #[test]
    fn skew_triangles_in_r4_meet_in_a_point() {
        let a = poly(&[&[0, 0, 0, 0], &[4, 0, 0, 0], &[0, 4, 0, 0]]);
        let b = poly(&[&[1, 1, -1, -1], &[1, 1, 3, 0], &[1, 1, 0, 3]]);
        let x = intersect_polytopes(&a, &b).unwrap();
        assert_eq!(x.vertices(), &[Point::from_ints(&[1, 1, 0, 0])]);
    }

    #[test]
    fn faces_and_boundary() {
        let sq = unit_square();
        let bottom = poly(&[&[0, 0], &[1, 0]]);
        let half = Polytope::from_points(vec![Point::from_ints(&[0, 0]), Point::new(vec![rat(1, 2), int(0)])]).unwrap();
        let diag = poly(&[&[0, 0], &[1, 1]]);
        assert!(bottom.is_face_of(&sq));
        assert!(sq.is_face_of(&sq));
        assert!(!half.is_face_of(&sq));
        assert!(half.in_boundary_of(&sq));
        assert!(!diag.is_face_of(&sq));
        assert!(!diag.in_boundary_of(&sq));
        assert!(poly(&[&[1, 1]]).is_face_of(&sq));
        assert!(!poly(&[&[1, 1]]).in_boundary_of(&poly(&[&[1, 1]])));
        assert_eq!(sq.facets().len(), 4);
    }

    #[test]
    fn split_square_by_diagonal() {
        let sq = unit_square();
        let h = Halfspace::new(vec![int(1), int(-1)], int(0));
        let (a, b) = sq.split(&h).unwrap();
        assert!(a.is_simplex() && b.is_simplex());
        let edge = Halfspace::new(vec![int(1), int(0)], int(1));
        assert!(sq.split(&edge).is_none());
    }

    #[test]
    fn relint_membership() {
        let tri = poly(&[&[0, 0], &[4, 0], &[0, 4]]);
        assert!(tri.contains_in_relint(&Point::from_ints(&[1, 1])));
        assert!(!tri.contains_in_relint(&Point::from_ints(&[2, 0])));
        assert!(tri.contains(&Point::from_ints(&[2, 0])));
        assert!(!tri.contains(&Point::from_ints(&[3, 3])));
    }
}
