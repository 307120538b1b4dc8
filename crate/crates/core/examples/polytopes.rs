//! Polytope intersection, arrangement refinement and triangulation.

use pltopo::geom::{intersect_polytopes, placing_triangulation, refine_arrangement, Point, Polytope};

fn poly(pts: &[[i64; 2]]) -> Polytope {
    Polytope::from_points(pts.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
}

pub fn run_example() {
    let a = poly(&[[0, 0], [4, 0], [0, 4]]);
    let b = poly(&[[1, 1], [5, 1], [1, 5], [5, 5]]);
    let meet = intersect_polytopes(&a, &b).unwrap();
    println!("triangle ∩ square = {:?}", meet.vertices());

    let cells = refine_arrangement(&[a.clone(), b.clone()]).unwrap();
    println!("arrangement of the two has {} cells", cells.len());

    let hex = poly(&[[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]]);
    let tri = placing_triangulation(&hex);
    println!("hexagon triangulated into {} triangles", tri.len());
    for s in &tri {
        println!("  {:?}", s.vertices());
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
