//! Abstract simplicial complexes, staircase products, sphere and torus
//! gadgets, and deleted products.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

use crate::chain::{Chain, ChainError};
use crate::geom::{GeomError, GeomSimplex, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} out of range for a complex on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("empty facet")]
    EmptyFacet,
    #[error("realization has {found} points for {expected} vertices")]
    RealizationSize { expected: usize, found: usize },
    #[error("complex has no geometric realization")]
    NotRealized,
    #[error("realization points have mixed dimensions")]
    MixedAmbient,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// A finite simplicial complex on vertices `0..vertex_count`, stored by its
/// maximal faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
    realization: Option<Vec<Point>>,
    marks: BTreeMap<String, Vec<Vec<usize>>>,
}

fn maximal(mut faces: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for f in faces.iter_mut() {
        f.sort_unstable();
        f.dedup();
    }
    faces.sort();
    faces.dedup();
    let sets: Vec<BTreeSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
    let keep: Vec<bool> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| !sets.iter().enumerate().any(|(j, t)| i != j && t.len() > s.len() && s.is_subset(t)))
        .collect();
    faces.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect()
}

impl AbstractComplex {
    /// Builds a complex from generating faces; non-maximal ones are dropped.
    pub fn new(vertex_count: usize, faces: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        for f in &faces {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, count: vertex_count });
            }
        }
        Ok(AbstractComplex { vertex_count, facets: maximal(faces), realization: None, marks: BTreeMap::new() })
    }

    pub fn with_realization(mut self, points: Vec<Point>) -> Result<Self, ComplexError> {
        if points.len() != self.vertex_count {
            return Err(ComplexError::RealizationSize { expected: self.vertex_count, found: points.len() });
        }
        if points.iter().map(Point::dim).dedup().count() > 1 {
            return Err(ComplexError::MixedAmbient);
        }
        self.realization = Some(points);
        Ok(self)
    }

    pub fn with_mark(mut self, name: &str, faces: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let sub = AbstractComplex::new(self.vertex_count, faces)?;
        self.marks.insert(name.to_string(), sub.facets);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn realization(&self) -> Option<&[Point]> {
        self.realization.as_deref()
    }

    pub fn ambient_dim(&self) -> Option<usize> {
        self.realization.as_ref().and_then(|r| r.first()).map(Point::dim)
    }

    pub fn marks(&self) -> &BTreeMap<String, Vec<Vec<usize>>> {
        &self.marks
    }

    pub fn mark(&self, name: &str) -> Option<AbstractComplex> {
        let faces = self.marks.get(name)?;
        Some(AbstractComplex {
            vertex_count: self.vertex_count,
            facets: faces.clone(),
            realization: self.realization.clone(),
            marks: BTreeMap::new(),
        })
    }

    /// Dimension of the largest facet; an empty complex has dimension 0.
    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).dedup().count() <= 1
    }

    /// All `k`-faces, sorted.
    pub fn faces(&self, k: usize) -> Vec<Vec<usize>> {
        let set: BTreeSet<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| f.len() > k)
            .flat_map(|f| f.iter().copied().combinations(k + 1))
            .collect();
        set.into_iter().collect()
    }

    /// Every face, sorted by dimension and then lexicographically.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        (0..=self.dim()).flat_map(|k| self.faces(k)).collect()
    }

    pub fn simplex_count(&self) -> usize {
        self.face_vector().iter().sum()
    }

    pub fn face_vector(&self) -> Vec<usize> {
        if self.facets.is_empty() {
            return Vec::new();
        }
        (0..=self.dim()).map(|k| self.faces(k).len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Vertices that appear in some facet.
    pub fn used_vertices(&self) -> BTreeSet<usize> {
        self.facets.iter().flatten().copied().collect()
    }

    /// The same complex on its used vertices, renumbered in order.
    pub fn compacted(&self) -> AbstractComplex {
        let used: Vec<usize> = self.used_vertices().into_iter().collect();
        let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let relabel = |f: &Vec<usize>| f.iter().map(|v| index[v]).collect::<Vec<_>>();
        AbstractComplex {
            vertex_count: used.len(),
            facets: self.facets.iter().map(relabel).collect(),
            realization: self.realization.as_ref().map(|r| used.iter().map(|&v| r[v].clone()).collect()),
            marks: self
                .marks
                .iter()
                .map(|(k, fs)| (k.clone(), fs.iter().map(relabel).collect()))
                .collect(),
        }
    }

    /// Every `(n-1)`-face lies in exactly two facets, all of dimension `n`.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        if self.facets.is_empty() || !self.is_pure() {
            return false;
        }
        let n = self.dim();
        if n == 0 {
            return self.facets.len() % 2 == 0;
        }
        let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in &self.facets {
            for r in f.iter().copied().combinations(n) {
                *count.entry(r).or_default() += 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    pub fn point_of(&self, v: usize) -> Result<&Point, ComplexError> {
        self.realization.as_ref().map(|r| &r[v]).ok_or(ComplexError::NotRealized)
    }

    /// The realized `k`-faces as a chain.
    pub fn chain(&self, k: usize) -> Result<Chain, ComplexError> {
        let r = self.realization.as_ref().ok_or(ComplexError::NotRealized)?;
        let ambient = self.ambient_dim().unwrap_or(0);
        let simplices = self
            .faces(k)
            .into_iter()
            .map(|f| GeomSimplex::new(f.iter().map(|&v| r[v].clone()).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Chain::from_simplices(k, ambient, simplices)?)
    }

    /// Disjoint union; the vertices of `other` are shifted past ours and
    /// marks of `other` get `prefix` prepended.
    pub fn disjoint_union(&self, other: &AbstractComplex, prefix: &str) -> AbstractComplex {
        let shift = self.vertex_count;
        let moved = |fs: &Vec<Vec<usize>>| fs.iter().map(|f| f.iter().map(|v| v + shift).collect()).collect();
        let mut marks = self.marks.clone();
        for (k, fs) in &other.marks {
            marks.insert(format!("{prefix}{k}"), moved(fs));
        }
        let realization = match (&self.realization, &other.realization) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        let mut facets = self.facets.clone();
        facets.extend(moved(&other.facets));
        facets.sort();
        AbstractComplex { vertex_count: shift + other.vertex_count, facets, realization, marks }
    }

    /// Applies a vertex map and re-reduces to maximal faces. Collapsed
    /// faces shrink rather than vanish.
    pub fn relabel(&self, map: &[usize], vertex_count: usize) -> AbstractComplex {
        let apply = |fs: &Vec<Vec<usize>>| maximal(fs.iter().map(|f| f.iter().map(|&v| map[v]).collect()).collect());
        AbstractComplex {
            vertex_count,
            facets: apply(&self.facets),
            realization: None,
            marks: self.marks.iter().map(|(k, fs)| (k.clone(), apply(fs))).collect(),
        }
    }
}

/// Whether two complexes agree up to renaming vertices (unused vertices
/// are ignored). Exhaustive search, intended for small gadgets.
pub fn is_isomorphic(a: &AbstractComplex, b: &AbstractComplex) -> bool {
    let (a, b) = (a.compacted(), b.compacted());
    if a.vertex_count != b.vertex_count || a.face_vector() != b.face_vector() {
        return false;
    }
    let target: BTreeSet<Vec<usize>> = b.facets.iter().cloned().collect();
    let n = a.vertex_count;
    // facets of `a` that become fully assigned once vertex i is placed
    let ready: Vec<Vec<&Vec<usize>>> =
        (0..n).map(|i| a.facets.iter().filter(|f| f.iter().max() == Some(&i)).collect()).collect();
    fn search(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ready: &[Vec<&Vec<usize>>],
        target: &BTreeSet<Vec<usize>>,
    ) -> bool {
        if i == map.len() {
            return true;
        }
        for v in 0..map.len() {
            if used[v] {
                continue;
            }
            map[i] = v;
            let ok = ready[i].iter().all(|f| {
                let mut img: Vec<usize> = f.iter().map(|&x| map[x]).collect();
                img.sort_unstable();
                target.contains(&img)
            });
            if ok {
                used[v] = true;
                if search(i + 1, map, used, ready, target) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    search(0, &mut vec![0; n], &mut vec![false; n], &ready, &target)
}

/// `∂Δ^{n+1}`: all `n`-faces on `n + 2` vertices.
pub fn boundary_sphere(n: usize) -> AbstractComplex {
    let facets = (0..n + 2).combinations(n + 1).collect();
    AbstractComplex::new(n + 2, facets).expect("indices in range")
}

/// Staircase triangulation of `|A| × |B|`. Vertex `(a, b)` gets index
/// `a * |V(B)| + b`; vertex orders are the index orders.
pub fn staircase_product(a: &AbstractComplex, b: &AbstractComplex) -> AbstractComplex {
    let nb = b.vertex_count;
    let mut cells = Vec::new();
    for fa in &a.facets {
        for fb in &b.facets {
            let (i, j) = (fa.len() - 1, fb.len() - 1);
            // a staircase is the set of steps taken in the first factor
            for steps in (0..i + j).combinations(i) {
                let (mut s, mut t) = (0, 0);
                let mut cell = vec![fa[0] * nb + fb[0]];
                for k in 0..i + j {
                    if steps.contains(&k) {
                        s += 1;
                    } else {
                        t += 1;
                    }
                    cell.push(fa[s] * nb + fb[t]);
                }
                cells.push(cell);
            }
        }
    }
    let mut out = AbstractComplex::new(a.vertex_count * nb, cells).expect("indices in range");
    if let (Some(ra), Some(rb)) = (&a.realization, &b.realization) {
        let pts = ra
            .iter()
            .flat_map(|p| rb.iter().map(move |q| Point::new(p.coords().iter().chain(q.coords()).cloned().collect())))
            .collect();
        out.realization = Some(pts);
    }
    out
}

/// `∂Δ^{l+1} × ∂Δ^{l+1}` with meridian `m = ∂Δ × {v₀}` and parallel
/// `p = {v₀} × ∂Δ` marked.
pub fn torus_gadget(l: usize) -> AbstractComplex {
    let s = boundary_sphere(l);
    let n = s.vertex_count;
    let m = s.facets.iter().map(|f| f.iter().map(|&a| a * n).collect()).collect();
    let p = s.facets.clone();
    staircase_product(&s, &s).with_mark("m", m).unwrap().with_mark("p", p).unwrap()
}

/// A cell `σ × τ` of a deleted product, with `σ ∩ τ = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductCell {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl ProductCell {
    pub fn bidim(&self) -> (usize, usize) {
        (self.left.len() - 1, self.right.len() - 1)
    }

    pub fn dim(&self) -> usize {
        self.left.len() + self.right.len() - 2
    }

    pub fn swapped(&self) -> ProductCell {
        ProductCell { left: self.right.clone(), right: self.left.clone() }
    }

    /// Codimension-one faces: drop one vertex from a positive-dimensional
    /// factor.
    pub fn facets(&self) -> Vec<ProductCell> {
        let drop = |s: &Vec<usize>| -> Vec<Vec<usize>> {
            if s.len() < 2 {
                return Vec::new();
            }
            (0..s.len()).map(|i| [&s[..i], &s[i + 1..]].concat()).collect()
        };
        let mut out: Vec<ProductCell> =
            drop(&self.left).into_iter().map(|l| ProductCell { left: l, right: self.right.clone() }).collect();
        out.extend(drop(&self.right).into_iter().map(|r| ProductCell { left: self.left.clone(), right: r }));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletedProduct {
    cells: Vec<ProductCell>,
    involution: Vec<usize>,
}

impl DeletedProduct {
    pub fn cells(&self) -> &[ProductCell] {
        &self.cells
    }

    /// `involution()[i]` is the index of the swap of cell `i`.
    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn index_of(&self, c: &ProductCell) -> Option<usize> {
        self.cells.binary_search(c).ok()
    }

    pub fn census(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for c in &self.cells {
            *out.entry(c.bidim()).or_default() += 1;
        }
        out
    }

    pub fn count(&self, i: usize, j: usize) -> usize {
        self.census().get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.involution.iter().enumerate().all(|(i, &j)| i != j && self.involution[j] == i)
    }
}

/// All ordered pairs of disjoint nonempty faces of `k`, sorted.
pub fn deleted_product(k: &AbstractComplex) -> DeletedProduct {
    let faces = k.simplices();
    let mut cells: Vec<ProductCell> = faces
        .iter()
        .cartesian_product(faces.iter())
        .filter(|(s, t)| s.iter().all(|v| !t.contains(v)))
        .map(|(s, t)| ProductCell { left: s.clone(), right: t.clone() })
        .collect();
    cells.sort();
    let involution = cells
        .iter()
        .map(|c| cells.binary_search(&c.swapped()).expect("swap closed"))
        .collect();
    DeletedProduct { cells, involution }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn spheres() {
        let s0 = boundary_sphere(0);
        assert_eq!((s0.vertex_count(), s0.facets().len(), s0.dim()), (2, 2, 0));
        assert_eq!(boundary_sphere(1).face_vector(), vec![3, 3]);
        let s2 = boundary_sphere(2);
        assert_eq!(s2.face_vector(), vec![4, 6, 4]);
        assert_eq!(s2.euler_characteristic(), 2);
        for n in 0..5 {
            assert!(boundary_sphere(n).is_closed_pseudomanifold());
            assert_eq!(boundary_sphere(n).euler_characteristic(), 1 + (-1i64).pow(n as u32));
        }
    }

    #[test]
    fn construction_drops_non_maximal() {
        let k = AbstractComplex::new(3, vec![vec![0, 1, 2], vec![1, 0], vec![2]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
        assert!(AbstractComplex::new(2, vec![vec![0, 2]]).is_err());
        assert!(AbstractComplex::new(2, vec![vec![]]).is_err());
    }

    #[test]
    fn products() {
        let e = AbstractComplex::new(2, vec![vec![0, 1]]).unwrap();
        let sq = staircase_product(&e, &e);
        assert_eq!(sq.facets(), &[vec![0, 1, 3], vec![0, 2, 3]]);
        let c = boundary_sphere(1);
        let t = staircase_product(&c, &c);
        assert_eq!(t.face_vector(), vec![9, 27, 18]);
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_closed_pseudomanifold());
        let pt = AbstractComplex::new(1, vec![vec![0]]).unwrap();
        let same = staircase_product(&c, &pt);
        assert_eq!(same, c);
        let tri = AbstractComplex::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(staircase_product(&tri, &e).facets().len(), binom(3, 2));
        let s2 = boundary_sphere(2);
        assert_eq!(staircase_product(&s2, &c).euler_characteristic(), 0);
        assert_eq!(staircase_product(&s2, &s2).euler_characteristic(), 4);
    }

    #[test]
    fn tori() {
        let t = torus_gadget(1);
        assert_eq!(t.face_vector(), vec![9, 27, 18]);
        let m = t.mark("m").unwrap();
        let p = t.mark("p").unwrap();
        assert!(is_isomorphic(&m, &boundary_sphere(1)));
        assert!(is_isomorphic(&p, &boundary_sphere(1)));
        let meet: Vec<usize> = m.used_vertices().intersection(&p.used_vertices()).copied().collect();
        assert_eq!(meet, vec![0]);
        let t2 = torus_gadget(2);
        assert_eq!(t2.dim(), 4);
        assert_eq!(t2.facets().len(), 16 * binom(4, 2));
        assert!(is_isomorphic(&t2.mark("m").unwrap(), &boundary_sphere(2)));
        assert!(is_isomorphic(&t2.mark("p").unwrap(), &boundary_sphere(2)));
        assert!(t2.is_closed_pseudomanifold());
    }

    #[test]
    fn isomorphism_rejects() {
        let path = AbstractComplex::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!is_isomorphic(&path, &boundary_sphere(1)));
        let relabelled = AbstractComplex::new(3, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert!(is_isomorphic(&path, &relabelled));
    }

    fn census_oracle(v: usize, i: usize, j: usize) -> usize {
        // ordered disjoint pairs of faces in the full simplex on v vertices
        binom(v, i + 1) * binom(v - i - 1, j + 1)
    }

    #[test]
    fn deleted_products() {
        let dp = deleted_product(&boundary_sphere(1));
        assert_eq!(dp.count(0, 0), 6);
        assert_eq!(dp.count(0, 1) + dp.count(1, 0), 6);
        assert_eq!(dp.cells().len(), 12);
        assert!(dp.is_fixed_point_free());

        let dp3 = deleted_product(&boundary_sphere(2));
        assert_eq!(dp3.count(0, 0), census_oracle(4, 0, 0));
        assert_eq!(dp3.count(0, 1) + dp3.count(1, 0), 24);
        assert_eq!(dp3.count(0, 2) + dp3.count(2, 0), 8);
        assert_eq!(dp3.count(1, 1), 6);
        assert_eq!(dp3.count(1, 2) + dp3.count(2, 1) + dp3.count(2, 2), 0);

        let edge = AbstractComplex::new(2, vec![vec![0, 1]]).unwrap();
        let dpe = deleted_product(&edge);
        assert_eq!(dpe.cells().len(), 2);
        assert!(dpe.cells().iter().all(|c| c.dim() == 0));
    }

    #[test]
    fn census_matches_oracle_on_spheres() {
        for n in 1..4 {
            let dp = deleted_product(&boundary_sphere(n));
            for ((i, j), c) in dp.census() {
                assert_eq!(c, census_oracle(n + 2, i, j));
                assert_eq!(c, dp.count(j, i));
            }
        }
    }
}
