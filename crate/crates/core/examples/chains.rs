//! Mod-2 chains: boundaries, cycles and the simplicial check.

use pltopo::chain::Chain;
use pltopo::geom::Point;

fn p(x: i64, y: i64) -> Point {
    Point::from_ints(&[x, y])
}

pub fn run_example() {
    let square = Chain::from_vertex_lists(
        2,
        2,
        vec![vec![p(0, 0), p(2, 0), p(2, 2)], vec![p(0, 0), p(2, 2), p(0, 2)]],
    )
    .unwrap();
    let rim = square.boundary();
    println!("two triangles -> boundary of {} edges, cycle: {}", rim.len(), rim.is_cycle());
    assert_eq!(rim.len(), 4);
    assert!(rim.boundary().is_empty());

    // adding a simplex twice removes it
    let mut c = rim.clone();
    let first = rim.iter().next().unwrap().clone();
    c.toggle(first.clone()).unwrap();
    println!("after toggling one edge: {} edges, cycle: {}", c.len(), c.is_cycle());
    c.toggle(first).unwrap();
    assert_eq!(c, rim);

    let crossing = Chain::from_vertex_lists(1, 2, vec![vec![p(0, 0), p(2, 2)], vec![p(0, 2), p(2, 0)]]).unwrap();
    println!("crossing diagonals simplicial: {}", crossing.is_simplicial());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
