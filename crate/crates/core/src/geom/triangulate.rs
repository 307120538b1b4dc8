use std::cmp::Ordering;

use super::point::Point;
use super::polytope::Polytope;
use super::simplex::GeomSimplex;

/// Deterministic triangulation of a polytope driven by a total order on its
/// vertices: the order-minimal vertex is coned over the triangulations of the
/// facets that avoid it, recursively.
///
/// The restriction to any face is the triangulation of that face under the
/// induced order, so polytopes sharing a face triangulate it identically.
pub fn placing_triangulation_by<F>(p: &Polytope, order: &F) -> Vec<GeomSimplex>
where
    F: Fn(&Point, &Point) -> Ordering,
{
    let mut out = Vec::new();
    pull(p, order, &mut out);
    out.into_iter().map(GeomSimplex::new_unchecked).collect()
}

/// Triangulation under the canonical lexicographic point order.
pub fn placing_triangulation(p: &Polytope) -> Vec<GeomSimplex> {
    placing_triangulation_by(p, &|a: &Point, b: &Point| a.cmp(b))
}

fn pull<F>(p: &Polytope, order: &F, out: &mut Vec<Vec<Point>>)
where
    F: Fn(&Point, &Point) -> Ordering,
{
    if p.is_simplex() {
        out.push(p.vertices().to_vec());
        return;
    }
    let apex = p
        .vertices()
        .iter()
        .min_by(|a, b| order(a, b))
        .expect("nonempty polytope")
        .clone();
    for facet in p.facets() {
        if facet.vertices().contains(&apex) {
            continue;
        }
        let mut sub = Vec::new();
        pull(&facet, order, &mut sub);
        for mut s in sub {
            s.push(apex.clone());
            out.push(s);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::intersect_polytopes;

    fn poly(xs: &[&[i64]]) -> Polytope {
        Polytope::from_points(xs.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn simplices_are_fixed() {
        let seg = poly(&[&[0, 0], &[3, 1]]);
        assert_eq!(placing_triangulation(&seg).len(), 1);
        let tri = poly(&[&[0, 0], &[3, 1], &[1, 5]]);
        let t = placing_triangulation(&tri);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].vertices(), tri.vertices());
    }

    #[test]
    fn square_split_through_minimal_vertex() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let t = placing_triangulation(&sq);
        assert_eq!(t.len(), 2);
        let origin = Point::from_ints(&[0, 0]);
        let far = Point::from_ints(&[1, 1]);
        for s in &t {
            assert!(s.vertices().contains(&origin) && s.vertices().contains(&far));
        }
    }

    #[test]
    fn cube_triangulation_is_a_valid_complex() {
        let cube = poly(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1],
            &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ]);
        let t = placing_triangulation(&cube);
        // pulling from a corner of the 3-cube: 3 far facets x 2 triangles
        assert_eq!(t.len(), 6);
        for (i, a) in t.iter().enumerate() {
            assert_eq!(a.dim(), 3);
            for b in &t[i + 1..] {
                let common: Vec<Point> =
                    a.vertices().iter().filter(|v| b.vertices().contains(v)).cloned().collect();
                let x = intersect_polytopes(a.polytope(), b.polytope());
                match x {
                    None => assert!(common.is_empty()),
                    Some(x) => assert_eq!(x, Polytope::from_points(common).unwrap()),
                }
            }
        }
    }

    #[test]
    fn other_minimal_vertex_uses_other_diagonal() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        // minimal vertex under this order is (1, 0)
        let order = |a: &Point, b: &Point| (-a[0].clone(), a[1].clone()).cmp(&(-b[0].clone(), b[1].clone()));
        let t = placing_triangulation_by(&sq, &order);
        assert_eq!(t.len(), 2);
        for s in &t {
            assert!(s.vertices().contains(&Point::from_ints(&[1, 0])));
            assert!(s.vertices().contains(&Point::from_ints(&[0, 1])));
        }
    }
}
