//! Mod-2 linking numbers through cones.

use pltopo::chain::Chain;
use pltopo::geom::{GeomSimplex, Point};
use pltopo::link::{linking_mod2, linking_mod2_traced};

fn triangle(pts: [[i64; 3]; 3]) -> Chain {
    let s = GeomSimplex::new(pts.iter().map(|c| Point::from_ints(c)).collect()).unwrap();
    Chain::from_simplices(1, 3, s.facets()).unwrap()
}

pub fn run_example() {
    let x = triangle([[-4, -2, 0], [4, -2, 0], [0, 4, 0]]);
    let y = triangle([[1, 0, -3], [-1, 1, 3], [2, 9, 1]]);
    let (lk, t) = linking_mod2_traced(&x, &y).unwrap();
    println!("hopf pair: lk = {lk} (apex #{t})");
    let far = triangle([[41, 0, -3], [39, 1, 3], [42, 9, 1]]);
    println!("moved away: lk = {}", linking_mod2(&x, &far).unwrap());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
