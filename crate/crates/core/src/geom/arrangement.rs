//! Common refinement of a family of polytopes into a polyhedral complex.
//!
//! Every cell remembers the input it came from and the hyperplanes that cut
//! it, so it equals its input intersected with one closed side of each of
//! its cuts. When two cells meet in something other than a common face, each
//! is split by the defining hyperplanes of the other (affine hull equations,
//! facet hyperplanes, cuts). Afterwards each lies on one side of every
//! hyperplane defining the other, which makes their intersection a face of
//! both. Cuts are always drawn from the finite family of input hulls and
//! facets, so the loop terminates.

use std::collections::BTreeSet;

use super::linalg::normalize_hyperplane;
use super::polytope::{intersect_polytopes, Halfspace, Polytope};
use super::GeomError;

/// Input count accepted by [`refine_arrangement`].
pub const DEFAULT_ARRANGEMENT_CAP: usize = 512;
const CELL_CAP: usize = 50_000;

struct Cell {
    poly: Polytope,
    origin: usize,
    cuts: Vec<Halfspace>,
}

fn hyperplane(normal: &[crate::geom::Rational], offset: &crate::geom::Rational) -> Halfspace {
    let (n, o) = normalize_hyperplane(normal, offset);
    Halfspace::new(n, o)
}

fn defining_hyperplanes(input: &Polytope) -> Vec<Halfspace> {
    let rep = input.hrep();
    rep.equations
        .iter()
        .map(|(a, b)| hyperplane(a, b))
        .chain(rep.facets.iter().map(|h| hyperplane(&h.normal, &h.offset)))
        .collect()
}

/// Refined cells with the number of inputs covering each one.
pub fn refine_arrangement_counted(ps: &[Polytope]) -> Result<Vec<(Polytope, usize)>, GeomError> {
    refine_arrangement_counted_capped(ps, DEFAULT_ARRANGEMENT_CAP)
}

pub fn refine_arrangement_counted_capped(
    ps: &[Polytope],
    cap: usize,
) -> Result<Vec<(Polytope, usize)>, GeomError> {
    Ok(refine_arrangement_with_origins(ps, cap)?
        .into_iter()
        .map(|(p, o)| (p, o.len()))
        .collect())
}

/// Refined cells with the indices of the inputs containing each one.
pub fn refine_arrangement_with_origins(
    ps: &[Polytope],
    cap: usize,
) -> Result<Vec<(Polytope, BTreeSet<usize>)>, GeomError> {
    if ps.len() > cap {
        return Err(GeomError::CapExceeded { what: "arrangement inputs", limit: cap, found: ps.len() });
    }
    if let Some(first) = ps.first() {
        let d = first.ambient_dim();
        if let Some(p) = ps.iter().find(|p| p.ambient_dim() != d) {
            return Err(GeomError::DimensionMismatch { expected: d, found: p.ambient_dim() });
        }
    }
    let base: Vec<Vec<Halfspace>> = ps.iter().map(defining_hyperplanes).collect();
    let mut cells: Vec<Cell> = ps
        .iter()
        .enumerate()
        .map(|(i, p)| Cell { poly: p.clone(), origin: i, cuts: Vec::new() })
        .collect();
    loop {
        let mut pending: Vec<BTreeSet<Halfspace>> = vec![BTreeSet::new(); cells.len()];
        let mut dirty = false;
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                let (a, b) = (&cells[i].poly, &cells[j].poly);
                let Some(x) = intersect_polytopes(a, b) else { continue };
                if x.is_face_of(a) && x.is_face_of(b) {
                    continue;
                }
                dirty = true;
                let def_b = base[cells[j].origin].iter().chain(&cells[j].cuts).cloned();
                pending[i].extend(def_b);
                let def_a = base[cells[i].origin].iter().chain(&cells[i].cuts).cloned();
                pending[j].extend(def_a);
            }
        }
        if !dirty {
            break;
        }
        let mut next = Vec::with_capacity(cells.len());
        for (cell, hs) in cells.into_iter().zip(pending) {
            let mut pieces = vec![cell];
            for h in &hs {
                let mut split = Vec::with_capacity(pieces.len());
                for piece in pieces {
                    match piece.poly.split(h) {
                        Some((lo, hi)) => {
                            let mut cuts = piece.cuts.clone();
                            cuts.push(h.clone());
                            split.push(Cell { poly: lo, origin: piece.origin, cuts: cuts.clone() });
                            split.push(Cell { poly: hi, origin: piece.origin, cuts });
                        }
                        None => split.push(piece),
                    }
                }
                pieces = split;
            }
            next.extend(pieces);
        }
        if next.len() > CELL_CAP {
            return Err(GeomError::CapExceeded { what: "arrangement cells", limit: CELL_CAP, found: next.len() });
        }
        cells = next;
    }
    let mut grouped: Vec<(Polytope, BTreeSet<usize>)> = Vec::new();
    cells.sort_by(|a, b| a.poly.cmp(&b.poly));
    for c in cells {
        match grouped.last_mut() {
            Some((p, origins)) if *p == c.poly => {
                origins.insert(c.origin);
            }
            _ => grouped.push((c.poly, BTreeSet::from([c.origin]))),
        }
    }
    Ok(grouped)
}

/// Cells of the common refinement: relatively open-disjoint, pairwise meeting
/// in common faces, and covering exactly the union of the inputs.
pub fn refine_arrangement(ps: &[Polytope]) -> Result<Vec<Polytope>, GeomError> {
    Ok(refine_arrangement_counted(ps)?.into_iter().map(|(p, _)| p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn poly(xs: &[&[i64]]) -> Polytope {
        Polytope::from_points(xs.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn disjoint_triangles_unchanged() {
        let a = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let b = poly(&[&[3, 0], &[4, 0], &[3, 1]]);
        let cells = refine_arrangement(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(cells, vec![a, b]);
    }

    #[test]
    fn crossing_segments_give_four_pieces() {
        let a = poly(&[&[0, 0], &[2, 2]]);
        let b = poly(&[&[0, 2], &[2, 0]]);
        let cells = refine_arrangement(&[a, b]).unwrap();
        assert_eq!(cells.len(), 4);
        let mid = Point::from_ints(&[1, 1]);
        assert!(cells.iter().all(|c| c.vertices().contains(&mid)));
    }

    #[test]
    fn overlapping_collinear_segments() {
        let a = poly(&[&[0], &[2]]);
        let b = poly(&[&[1], &[3]]);
        let cells = refine_arrangement_counted(&[a, b]).unwrap();
        let expect = vec![
            (poly(&[&[0], &[1]]), 1),
            (poly(&[&[1], &[2]]), 2),
            (poly(&[&[2], &[3]]), 1),
        ];
        assert_eq!(cells, expect);
    }

    #[test]
    fn t_junction_is_resolved() {
        let big = poly(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        let low = poly(&[&[2, 0], &[3, 0], &[2, 1], &[3, 1]]);
        let high = poly(&[&[2, 1], &[3, 1], &[2, 2], &[3, 2]]);
        let cells = refine_arrangement(&[big, low, high]).unwrap();
        assert_eq!(cells.len(), 4);
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                if let Some(x) = intersect_polytopes(a, b) {
                    assert!(x.is_face_of(a) && x.is_face_of(b));
                }
            }
        }
    }

    #[test]
    fn crossing_triangles_in_r3() {
        let a = poly(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0]]);
        let b = poly(&[&[1, 1, -1], &[1, 1, 3], &[3, -2, 1]]);
        let cells = refine_arrangement(&[a, b]).unwrap();
        assert!(cells.len() > 2);
        for (i, x) in cells.iter().enumerate() {
            for y in &cells[i + 1..] {
                if let Some(z) = intersect_polytopes(x, y) {
                    assert!(z.is_face_of(x) && z.is_face_of(y), "{x:?} {y:?} {z:?}");
                }
            }
        }
    }
}
