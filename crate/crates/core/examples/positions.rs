//! General and strong general position of rational point sets.

use pltopo::geom::{in_general_position, in_strong_general_position, strong_general_position_witness, Point, Rational};
use pltopo::random;

pub fn run_example() {
    let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
    let pt = |x: Rational, y: Rational| Point::new(vec![x, y]);
    // three diameters of the unit circle meeting at the origin
    let diameters = vec![
        pt(q(1, 1), q(0, 1)),
        pt(q(-1, 1), q(0, 1)),
        pt(q(3, 5), q(4, 5)),
        pt(q(-3, 5), q(-4, 5)),
        pt(q(0, 1), q(1, 1)),
        pt(q(0, 1), q(-1, 1)),
    ];
    println!("diameters: general {}, strong {}",
        in_general_position(&diameters, 2).unwrap(),
        in_strong_general_position(&diameters, 2).unwrap());
    let blocks = strong_general_position_witness(&diameters, 2, 12).unwrap().unwrap();
    println!("offending blocks: {blocks:?}");

    let mut r = random::rng(7);
    let good = (0..50)
        .filter(|_| in_strong_general_position(&random::points(&mut r, 6, 2, -10, 10, 97), 2).unwrap())
        .count();
    println!("random 6-point sets in strong general position: {good}/50");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
