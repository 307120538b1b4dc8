//! Turning a polytope cycle into a simplicial cycle.

use pltopo::chain::{lemma_eq_cycle, LemmaError, PolytopeChain};
use pltopo::geom::{Point, Polytope};

fn cell(pts: &[[i64; 2]]) -> Polytope {
    Polytope::from_points(pts.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
}

pub fn run_example() {
    // the six square faces of a cube form a polytope 2-cycle
    let faces: Vec<Polytope> = (0..3)
        .flat_map(|axis| {
            [0, 1].map(|side| {
                let pts = (0..4)
                    .map(|i| {
                        let mut c = [0i64; 3];
                        c[axis] = side;
                        c[(axis + 1) % 3] = i & 1;
                        c[(axis + 2) % 3] = i >> 1;
                        Point::from_ints(&c)
                    })
                    .collect();
                Polytope::from_points(pts).unwrap()
            })
        })
        .collect();
    let cube = PolytopeChain::new(2, 3, faces).unwrap();
    let surface = lemma_eq_cycle(&cube).unwrap();
    println!("cube faces -> simplicial 2-cycle with {} triangles (cycle: {})", surface.len(), surface.is_cycle());

    let edges = |list: &[[[i64; 2]; 2]]| {
        PolytopeChain::new(1, 2, list.iter().map(|s| cell(s)).collect()).unwrap()
    };
    let open = edges(&[[[0, 0], [1, 0]], [[1, 0], [1, 1]], [[1, 1], [0, 1]]]);
    match lemma_eq_cycle(&open) {
        Err(LemmaError::OddBoundary { cell, cells }) => println!("open path: odd corner {:?} in cells {cells:?}", cell.vertices()),
        other => println!("unexpected: {other:?}"),
    }
    let overlap = edges(&[[[0, 0], [2, 0]], [[1, 0], [3, 0]]]);
    if let Err(e) = lemma_eq_cycle(&overlap) {
        println!("overlapping segments: {e}");
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
